"""Sparse linear combinations of basis labels.

A combination is a ``dict`` from label to a nonzero exact coefficient.  The
helpers here never store zeros.
"""

from fractions import Fraction


def add_into(acc, vec, coeff=1):
    """acc += coeff * vec, in place."""
    if not coeff:
        return acc
    for k, x in vec.items():
        nv = acc.get(k, 0) + coeff * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def add_term(acc, key, coeff):
    nv = acc.get(key, 0) + coeff
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def scale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * x for k, x in vec.items()}


def combine(*pairs):
    """combine((c1, v1), (c2, v2), ...) -> c1*v1 + c2*v2 + ..."""
    out = {}
    for c, v in pairs:
        add_into(out, v, c)
    return out


def normalize(x):
    """Integral Fractions become ints; keeps arithmetic on the fast path."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def clean(vec):
    out = {}
    for k, x in vec.items():
        if type(x) is int:
            if x:
                out[k] = x
        elif x:
            out[k] = normalize(x)
    return out
