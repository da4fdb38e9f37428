"""Finite relational groupoids, their L2-reductions and convolution algebras.

Functions on a carrier are dicts ``{label: value}``.  Values may be ints,
``Fraction``, ``"p/q"`` strings, floats (taken exactly) or ``(re, im)``
pairs.  Results come back as ``{label: (Fraction, Fraction)}`` with zero
entries left out.
"""

from ._core import (
    Definition,
    Error,
    LabelError,
    NotInvariant,
    ParseError,
    QuotientError,
    associativity,
    check_axioms,
    check_haar,
    classify,
    convolve,
    corpus,
    corpus_names,
    format_function,
    involution,
    reduce,
    reduced_norm,
)

__all__ = [
    "Definition",
    "Error",
    "LabelError",
    "NotInvariant",
    "ParseError",
    "QuotientError",
    "associativity",
    "check_axioms",
    "check_haar",
    "classify",
    "convolve",
    "corpus",
    "corpus_names",
    "format_function",
    "involution",
    "load",
    "parse",
    "reduce",
    "reduced_norm",
]

load = Definition.load
parse = Definition.parse
