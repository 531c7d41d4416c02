"""Machine checks for killers of cable knot groups.

Free group words, the cable space group and its killer certificates, finite
presentations with Smith normal form, Todd-Coxeter coset enumeration, knot
group builders and the inequivalence case analysis.
"""
from .words import Alphabet, Word, parse_word
from .cable_space import CableElement, CableParams, make_params
from .fpres import Presentation, h1_invariants, parse_presentation
from .coset_enum import enumerate_cosets, is_trivial_quotient
from .knots import build, killer_test, parse_knotspec

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Word", "parse_word",
    "CableElement", "CableParams", "make_params",
    "Presentation", "h1_invariants", "parse_presentation",
    "enumerate_cosets", "is_trivial_quotient",
    "build", "killer_test", "parse_knotspec",
]
