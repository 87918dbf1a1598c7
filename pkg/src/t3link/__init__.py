"""Invariants of links in the 3-torus from combinatorial diagrams."""

from .diagram import Diagram, builtin_example, parse_diagram, serialize_diagram
from .invariants import alexander_polynomial, twisted_alexander
from .presentation import build_presentation, first_homology, tietze_simplify

__all__ = [
    "Diagram",
    "alexander_polynomial",
    "build_presentation",
    "builtin_example",
    "first_homology",
    "parse_diagram",
    "serialize_diagram",
    "tietze_simplify",
    "twisted_alexander",
]
