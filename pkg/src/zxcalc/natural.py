"""The doubling interpretation: diagrams n -> m to diagrams 2n -> 2m.

Every wire splits into two strands; every spider becomes an angle-free pair of
copies, one of each colour, with the first strand kept by the copy of the
spider's own colour; an H box swaps the two strands.  Spiders whose phase is
an odd multiple of pi/2 additionally get a wire between their two copies and a
root-two scalar pair (a green dot wired to a red dot) - the scalar component
is forced by exactness: fusing two odd spiders must agree with the even
encoding, which fixes the square of the per-spider scalar to 2.  Phases alpha
and alpha+pi encode identically.

The translation is node-local, so it is homomorphic over tensor and compose by
construction.  The star generator has no doubling and is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import (
    Diagram,
    HBox,
    Star,
    XSpider,
    ZSpider,
    splice_junctions,
)
from .ring import Phase
from .rules import RewriteRule
from .semantics import interpret

End = tuple[str, int]


def natural(d: Diagram) -> Diagram:
    """The doubled diagram; raises ValueError on star nodes."""
    if any(isinstance(k, Star) for k in d.nodes.values()):
        raise ValueError("the doubling interpretation is undefined on star nodes")

    out = Diagram()
    copy_a: dict[int, int] = {}
    copy_b: dict[int, int] = {}
    hboxes: list[int] = []
    for v in sorted(d.nodes):
        kind = d.nodes[v]
        if isinstance(kind, HBox):
            hboxes.append(v)
            continue
        own = ZSpider(Phase(0)) if isinstance(kind, ZSpider) else XSpider(Phase(0))
        other = XSpider(Phase(0)) if isinstance(kind, ZSpider) else ZSpider(Phase(0))
        copy_a[v] = out.add_node(own)
        copy_b[v] = out.add_node(other)
        if kind.phase.is_odd():
            out.add_edge(("n", copy_a[v]), ("n", copy_b[v]))
            g = out.add_node(ZSpider(Phase(0)))
            r = out.add_node(XSpider(Phase(0)))
            out.add_edge(("n", g), ("n", r))

    port_a: dict[int, int] = {}
    port_b: dict[int, int] = {}
    for p in d.inputs:
        port_a[p] = out.add_input()
        port_b[p] = out.add_input()
    for p in d.outputs:
        port_a[p] = out.add_output()
        port_b[p] = out.add_output()

    # junctions realise the strand crossing at each H box
    junctions: dict[tuple[int, int, int, str], int] = {}
    njunc = 0
    for h in hboxes:
        ends = d.node_ends(h)
        if len(ends) != 2:  # pragma: no cover - diagram invariant
            raise ValueError("H box degree must be 2")
        (i1, s1), (i2, s2) = ends
        for first, second in (("a", "b"), ("b", "a")):
            junctions[(i1, s1, h, first)] = njunc
            junctions[(i2, s2, h, second)] = njunc
            njunc += 1

    def point(edge_idx: int, side: int, strand: str) -> End:
        tag, i = d.edges[edge_idx][side]
        if tag == "b":
            return ("b", (port_a if strand == "a" else port_b)[i])
        if i in copy_a:
            return ("n", (copy_a if strand == "a" else copy_b)[i])
        return ("j", junctions[(edge_idx, side, i, strand)])

    strand_edges: list[tuple[End, End]] = []
    for idx in range(len(d.edges)):
        for strand in ("a", "b"):
            strand_edges.append((point(idx, 0, strand), point(idx, 1, strand)))

    spliced, extra_loops = splice_junctions(strand_edges, njunc)
    out.edges.extend(spliced)
    out.loops = 2 * d.loops + extra_loops
    out.validate()
    return out


@dataclass
class NaturalReport:
    rule: str
    variant: str
    instantiations: int = 0
    sound: bool = True
    failure: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "variant": self.variant,
            "instantiations": self.instantiations,
            "natural_sound": self.sound,
            "failure": self.failure,
        }


def check_natural_soundness(
    rules: list[RewriteRule], max_arity: int = 2
) -> list[NaturalReport]:
    """For each rule, compare the exact interpretations of the doubled sides
    over every bounded instantiation.  Star-free rules only."""
    import itertools

    out = []
    for rule in rules:
        rep = NaturalReport(rule.name, rule.variant)
        avars = sorted(rule.arity_vars())
        pvars = sorted(rule.phase_vars())
        for avals in itertools.product(range(max_arity + 1), repeat=len(avars)):
            arities = dict(zip(avars, avals))
            done = False
            for pvals in itertools.product(range(4), repeat=len(pvars)):
                phases = dict(zip(pvars, pvals))
                lhs = natural(rule.lhs.instantiate(arities, phases))
                rhs = natural(rule.rhs.instantiate(arities, phases))
                rep.instantiations += 1
                if interpret(lhs) != interpret(rhs):
                    rep.sound = False
                    rep.failure = {"arities": arities, "phases": phases}
                    done = True
                    break
            if done:
                break
        out.append(rep)
    return out
