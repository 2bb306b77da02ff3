"""Exact rewriting engine for the stabilizer ZX-calculus.

Diagrams are boundary-ordered open multigraphs of Z/X spiders, Hadamard boxes
and star nodes; evaluation is exact tensor contraction over Z[omega, 1/sqrt2];
the two rewrite systems (the legacy twelve-rule set and the simplified
eight-rule set) are certified sound by exhaustive bounded instantiation, and
every derivation of the source development replays as a checked proof script.
"""

from .ring import ExactMatrix, Phase, RingElem, from_phase, normalize
from .diagram import Diagram, HBox, Star, XSpider, ZSpider
from .semantics import interpret, interpret_compositional

__all__ = [
    "Diagram",
    "ExactMatrix",
    "HBox",
    "Phase",
    "RingElem",
    "Star",
    "XSpider",
    "ZSpider",
    "from_phase",
    "interpret",
    "interpret_compositional",
    "normalize",
]
