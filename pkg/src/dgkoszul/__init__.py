"""Exact dg-algebra engine: cobar and bar constructions, twisted extensions,
Koszul duality between comodules and modules, Cotor, Ext, Coext and their
spectral sequences over the rationals."""

__version__ = "0.1.0"
