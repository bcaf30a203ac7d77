"""Exact computation with 2-adic Hilbert symbols, metaplectic covering
tori and Iwahori-Matsumoto Hecke algebras."""

__version__ = "0.1.0"
