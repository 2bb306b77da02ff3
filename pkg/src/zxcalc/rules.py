"""Schematic rewrite rules and the three shipped rule systems.

A pattern is a diagram whose spiders may carry phase *expressions* (a signed
sum of phase variables plus a constant offset) and ellipsis leg groups binding
"zero or more wires"; a leg group may route each bound wire through a chain of
concrete nodes (the colour-change rule threads every leg through an H box).

Rule sets:
  * fig1_rules            - the legacy twelve-rule system (with the star),
  * fig3_rules            - the simplified eight-rule system,
  * fig1_starfree_iv_rules - the legacy system star-purged, (SR) replaced by
                             the inverse rule (IV).

Transcriptions are certified by `validate_rule`: every instantiation of every
arity variable up to a bound and every phase variable over Z4 must give the
same exact matrix on both sides.  A mis-drawn rule cannot pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from . import diagram as dg
from .diagram import Diagram, HBox, NodeKind, Star, XSpider, ZSpider
from .ring import Phase
from .semantics import interpret

End = tuple[str, int]


@dataclass(frozen=True)
class PhaseExpr:
    """sign-weighted sum of phase variables plus an offset, all mod 4.

    The single-variable form (sign, variable, offset) covers (K1)/(K2); the
    spider rule's alpha+beta forces the general sum.
    """

    terms: tuple[tuple[int, str], ...] = ()
    offset: int = 0

    def evaluate(self, binding: dict[str, int]) -> Phase:
        v = self.offset
        for sign, var in self.terms:
            v += sign * binding[var]
        return Phase(v)

    def variables(self) -> set[str]:
        return {v for _, v in self.terms}

    def solve(self, target: int, binding: dict[str, int]) -> Optional[dict[str, int]]:
        """Extend `binding` so the expression evaluates to `target`, if possible.

        At most one unbound variable is solved for; with none, the binding is
        checked.  Returns the extended binding or None.
        """
        free = [(s, v) for s, v in self.terms if v not in binding]
        if len(free) > 1:
            return None
        acc = self.offset + sum(s * binding[v] for s, v in self.terms if v in binding)
        if not free:
            return dict(binding) if acc % 4 == target % 4 else None
        sign, var = free[0]
        value = (sign * (target - acc)) % 4  # sign is +-1 so sign == 1/sign
        out = dict(binding)
        out[var] = value
        return out


def pconst(k: int) -> PhaseExpr:
    return PhaseExpr((), k % 4)


def pvar(name: str, sign: int = 1, offset: int = 0) -> PhaseExpr:
    return PhaseExpr(((sign, name),), offset % 4)


def psum(*names: str) -> PhaseExpr:
    return PhaseExpr(tuple((1, n) for n in names), 0)


Via = tuple[str, int]  # ("H", 0) | ("Z", phase) | ("X", phase)


@dataclass(frozen=True)
class EllipsisGroup:
    var: str
    via: tuple[Via, ...] = ()
    is_output: bool = True


@dataclass(frozen=True)
class PSpider:
    color: str  # "Z" | "X"
    phase: PhaseExpr = pconst(0)
    groups: tuple[EllipsisGroup, ...] = ()


@dataclass(frozen=True)
class PBox:
    kind: str  # "H" | "*"


PNode = object  # PSpider | PBox


def _via_node(v: Via) -> NodeKind:
    tag, ph = v
    if tag == "H":
        return HBox()
    if tag == "Z":
        return ZSpider(Phase(ph))
    if tag == "X":
        return XSpider(Phase(ph))
    raise ValueError(f"bad via kind {tag!r}")


def _via_swap(v: Via) -> Via:
    tag, ph = v
    return ("X", ph) if tag == "Z" else ("Z", ph) if tag == "X" else v


class Pattern:
    """One side of a schematic rule: nodes, edges, an ordered interface."""

    def __init__(self) -> None:
        self.nodes: dict[int, PNode] = {}
        self.edges: list[tuple[End, End]] = []
        self.ports: list[int] = []  # interface, in declared order
        self.port_is_output: dict[int, bool] = {}
        self._next = 0

    def add(self, node: PNode) -> int:
        v = self._next
        self._next += 1
        self.nodes[v] = node
        return v

    def port(self, *, output: bool = True) -> int:
        p = self._next
        self._next += 1
        self.ports.append(p)
        self.port_is_output[p] = output
        return p

    def edge(self, x: End, y: End) -> None:
        self.edges.append((x, y))

    # -- meta operations ------------------------------------------------------

    def color_swap(self) -> Pattern:
        out = self._shallow()
        for v, n in self.nodes.items():
            if isinstance(n, PSpider):
                out.nodes[v] = replace(
                    n,
                    color="X" if n.color == "Z" else "Z",
                    groups=tuple(
                        replace(g, via=tuple(_via_swap(w) for w in g.via))
                        for g in n.groups
                    ),
                )
        return out

    def flip(self) -> Pattern:
        out = self._shallow()
        out.port_is_output = {p: not b for p, b in self.port_is_output.items()}
        for v, n in self.nodes.items():
            if isinstance(n, PSpider):
                out.nodes[v] = replace(
                    n,
                    groups=tuple(replace(g, is_output=not g.is_output) for g in n.groups),
                )
        return out

    def _shallow(self) -> Pattern:
        out = Pattern()
        out.nodes = dict(self.nodes)
        out.edges = list(self.edges)
        out.ports = list(self.ports)
        out.port_is_output = dict(self.port_is_output)
        out._next = self._next
        return out

    # -- variables ------------------------------------------------------------

    def phase_vars(self) -> set[str]:
        out: set[str] = set()
        for n in self.nodes.values():
            if isinstance(n, PSpider):
                out |= n.phase.variables()
        return out

    def arity_vars(self) -> set[str]:
        return {
            g.var
            for n in self.nodes.values()
            if isinstance(n, PSpider)
            for g in n.groups
        }

    def spider_groups(self) -> Iterator[tuple[int, EllipsisGroup]]:
        for v, n in self.nodes.items():
            if isinstance(n, PSpider):
                for g in n.groups:
                    yield v, g

    # -- instantiation ----------------------------------------------------------

    def instantiate(self, arities: dict[str, int], phases: dict[str, int]) -> Diagram:
        d = Diagram()
        nmap: dict[int, int] = {}
        for v in sorted(self.nodes):
            n = self.nodes[v]
            if isinstance(n, PSpider):
                kind: NodeKind = (
                    ZSpider(n.phase.evaluate(phases))
                    if n.color == "Z"
                    else XSpider(n.phase.evaluate(phases))
                )
            elif isinstance(n, PBox):
                kind = HBox() if n.kind == "H" else Star()
            else:  # pragma: no cover
                raise TypeError(f"bad pattern node {n!r}")
            nmap[v] = d.add_node(kind)

        pmap: dict[int, int] = {}
        for p in self.ports:
            pmap[p] = d.add_output() if self.port_is_output[p] else d.add_input()

        def conv(e: End) -> End:
            return ("n", nmap[e[1]]) if e[0] == "n" else ("b", pmap[e[1]])

        for x, y in self.edges:
            d.add_edge(conv(x), conv(y))

        # ellipsis legs, grouped by variable name across the whole side
        for v, g in sorted(self.spider_groups(), key=lambda t: (t[1].var, t[0])):
            for _ in range(arities[g.var]):
                prev: End = ("n", nmap[v])
                for via in g.via:
                    w = d.add_node(_via_node(via))
                    d.add_edge(prev, ("n", w))
                    prev = ("n", w)
                q = d.add_output() if g.is_output else d.add_input()
                d.add_edge(prev, ("b", q))
        return d


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Pattern
    rhs: Pattern
    variant: str = "plain"  # plain | cs | ud | cs.ud

    @property
    def full_name(self) -> str:
        return self.name if self.variant == "plain" else f"{self.name}.{self.variant}"

    def color_swap(self) -> RewriteRule:
        tag = {"plain": "cs", "cs": "plain", "ud": "cs.ud", "cs.ud": "ud"}[self.variant]
        return RewriteRule(self.name, self.lhs.color_swap(), self.rhs.color_swap(), tag)

    def flip(self) -> RewriteRule:
        tag = {"plain": "ud", "ud": "plain", "cs": "cs.ud", "cs.ud": "cs"}[self.variant]
        return RewriteRule(self.name, self.lhs.flip(), self.rhs.flip(), tag)

    def arity_vars(self) -> set[str]:
        return self.lhs.arity_vars() | self.rhs.arity_vars()

    def phase_vars(self) -> set[str]:
        return self.lhs.phase_vars() | self.rhs.phase_vars()


# -- pattern-pair isomorphism (for variant dedup) --------------------------------


def _pattern_label(n: PNode, rename: dict[str, str] | None = None) -> tuple:
    if isinstance(n, PBox):
        return ("box", n.kind)
    assert isinstance(n, PSpider)
    r = rename or {}
    terms = tuple(sorted((s, r.get(v, v)) for s, v in n.phase.terms))
    groups = tuple(
        sorted((r.get(g.var, g.var), g.via, g.is_output) for g in n.groups)
    )
    return ("spider", n.color, terms, n.phase.offset, groups)


def _pattern_iso(p1: Pattern, p2: Pattern, rename: dict[str, str]) -> bool:
    """Isomorphism of pattern graphs with variables renamed by `rename`."""
    if len(p1.nodes) != len(p2.nodes) or len(p1.edges) != len(p2.edges):
        return False
    in1 = [p for p in p1.ports if not p1.port_is_output[p]]
    out1 = [p for p in p1.ports if p1.port_is_output[p]]
    in2 = [p for p in p2.ports if not p2.port_is_output[p]]
    out2 = [p for p in p2.ports if p2.port_is_output[p]]
    if len(in1) != len(in2) or len(out1) != len(out2):
        return False
    lab1 = {v: _pattern_label(n, rename) for v, n in p1.nodes.items()}
    lab2 = {v: _pattern_label(n) for v, n in p2.nodes.items()}
    if sorted(lab1.values()) != sorted(lab2.values()):
        return False
    pmap = dict(zip(in1, in2))
    pmap.update(zip(out1, out2))
    order = sorted(p1.nodes)
    used: set[int] = set()
    nmap: dict[int, int] = {}

    def norm(edges, endf):
        return sorted(
            tuple(sorted((endf(x), endf(y)))) for x, y in edges
        )

    def search(i: int) -> bool:
        if i == len(order):
            def f1(e: End) -> End:
                return ("n", nmap[e[1]]) if e[0] == "n" else ("b", pmap[e[1]])

            return norm(p1.edges, f1) == norm(p2.edges, lambda e: e)

        v = order[i]
        for w in sorted(p2.nodes):
            if w in used or lab2[w] != lab1[v]:
                continue
            nmap[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del nmap[v]
            used.discard(w)
        return False

    return search(0)


def _rule_iso(r1: RewriteRule, r2: RewriteRule) -> bool:
    """Rules equal up to a consistent renaming of their variables."""
    vars1 = sorted(r1.phase_vars() | {f"#{a}" for a in r1.arity_vars()})
    vars2 = sorted(r2.phase_vars() | {f"#{a}" for a in r2.arity_vars()})
    if len(vars1) != len(vars2):
        return False
    pv1, av1 = sorted(r1.phase_vars()), sorted(r1.arity_vars())
    pv2, av2 = sorted(r2.phase_vars()), sorted(r2.arity_vars())
    if len(pv1) != len(pv2) or len(av1) != len(av2):
        return False
    for perm_p in itertools.permutations(pv2):
        for perm_a in itertools.permutations(av2):
            rename = dict(zip(pv1, perm_p))
            rename.update(zip(av1, perm_a))
            if _pattern_iso(r1.lhs, r2.lhs, rename) and _pattern_iso(
                r1.rhs, r2.rhs, rename
            ):
                return True
    return False


def variants(rule: RewriteRule) -> list[RewriteRule]:
    """The rule with its colour-swapped and upside-down images, deduplicated.

    Duplicates are removed up to pattern isomorphism with consistent variable
    renaming, which is what makes some rules "symmetric under the operations".
    """
    cands = [rule, rule.color_swap(), rule.flip(), rule.color_swap().flip()]
    out: list[RewriteRule] = []
    for c in cands:
        if not any(_rule_iso(c, kept) for kept in out):
            out.append(c)
    return out


# -- validation --------------------------------------------------------------


@dataclass
class RuleReport:
    rule: str
    variant: str
    instantiations: int = 0
    passed: bool = True
    failure: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "variant": self.variant,
            "instantiations": self.instantiations,
            "passed": self.passed,
            "failure": self.failure,
        }


def validate_rule(rule: RewriteRule, max_arity: int = 3) -> RuleReport:
    """Exact soundness check over every bounded instantiation.

    Every arity variable ranges over 0..max_arity and every phase variable
    over Z4; the two sides must give equal exact matrices each time.
    """
    report = RuleReport(rule.name, rule.variant)
    avars = sorted(rule.arity_vars())
    pvars = sorted(rule.phase_vars())
    for avals in itertools.product(range(max_arity + 1), repeat=len(avars)):
        arities = dict(zip(avars, avals))
        for pvals in itertools.product(range(4), repeat=len(pvars)):
            phases = dict(zip(pvars, pvals))
            lhs = rule.lhs.instantiate(arities, phases)
            rhs = rule.rhs.instantiate(arities, phases)
            report.instantiations += 1
            if interpret(lhs) != interpret(rhs):
                report.passed = False
                report.failure = {"arities": arities, "phases": phases}
                return report
    return report


def empty_side_census(rules: list[RewriteRule]) -> list[str]:
    """Names of rules with a syntactically empty LHS or RHS."""

    def is_empty(p: Pattern) -> bool:
        return not p.nodes and not p.edges and not p.ports

    return [r.name for r in rules if is_empty(r.lhs) or is_empty(r.rhs)]


def catalogue_json(rules: list[RewriteRule]) -> list[dict]:
    return [
        {
            "name": r.name,
            "variant": r.variant,
            "arity_variables": sorted(r.arity_vars()),
            "phase_variables": sorted(r.phase_vars()),
            "lhs_nodes": len(r.lhs.nodes),
            "rhs_nodes": len(r.rhs.nodes),
        }
        for r in rules
    ]


# -- the rule catalogue ---------------------------------------------------------
#
# Scalar gadget conventions used below:
#   * g(p) / r(p): a zero-legged green / red dot, value 1 + e^{i p pi/2};
#   * the "root-two pair": a green dot wired to a red dot, value sqrt(2);
#   * the "inverse gadget": two phase-free green spiders joined by three
#     H-carrying wires, value 1/sqrt(2) (the star-free replacement of the star).


def _gdot(p: Pattern, phase: PhaseExpr | int) -> int:
    e = phase if isinstance(phase, PhaseExpr) else pconst(phase)
    return p.add(PSpider("Z", e))


def _rdot(p: Pattern, phase: PhaseExpr | int) -> int:
    e = phase if isinstance(phase, PhaseExpr) else pconst(phase)
    return p.add(PSpider("X", e))


def _root2_pair(p: Pattern) -> None:
    g = _gdot(p, 0)
    r = _rdot(p, 0)
    p.edge(("n", g), ("n", r))


def _inverse_gadget(p: Pattern) -> None:
    za = p.add(PSpider("Z"))
    zb = p.add(PSpider("Z"))
    for _ in range(3):
        h = p.add(PBox("H"))
        p.edge(("n", za), ("n", h))
        p.edge(("n", h), ("n", zb))


def _rule_s1() -> RewriteRule:
    lhs = Pattern()
    a = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A", is_output=False),)))
    b = lhs.add(PSpider("Z", pvar("b"), (EllipsisGroup("B"),)))
    lhs.edge(("n", a), ("n", b))
    rhs = Pattern()
    rhs.add(
        PSpider(
            "Z",
            psum("a", "b"),
            (EllipsisGroup("A", is_output=False), EllipsisGroup("B")),
        )
    )
    return RewriteRule("S1", lhs, rhs)


def _rule_s1prime() -> RewriteRule:
    lhs = Pattern()
    a = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    lhs.edge(("n", a), ("n", a))
    rhs = Pattern()
    rhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    return RewriteRule("S1'", lhs, rhs)


def _rule_s3(name: str) -> RewriteRule:
    lhs = Pattern()
    z = lhs.add(PSpider("Z"))
    p0 = lhs.port()
    p1 = lhs.port()
    lhs.edge(("n", z), ("b", p0))
    lhs.edge(("n", z), ("b", p1))
    rhs = Pattern()
    q0 = rhs.port()
    q1 = rhs.port()
    rhs.edge(("b", q0), ("b", q1))
    return RewriteRule(name, lhs, rhs)


def _rule_sr() -> RewriteRule:
    lhs = Pattern()
    lhs.add(PBox("*"))
    _gdot(lhs, 0)
    return RewriteRule("SR", lhs, Pattern())


def _rule_b1() -> RewriteRule:
    lhs = Pattern()
    xa = _rdot(lhs, 0)
    zc = _gdot(lhs, 0)
    p0 = lhs.port()
    p1 = lhs.port()
    lhs.edge(("n", xa), ("n", zc))
    lhs.edge(("n", zc), ("b", p0))
    lhs.edge(("n", zc), ("b", p1))
    _root2_pair(lhs)
    rhs = Pattern()
    x0 = _rdot(rhs, 0)
    x1 = _rdot(rhs, 0)
    q0 = rhs.port()
    q1 = rhs.port()
    rhs.edge(("n", x0), ("b", q0))
    rhs.edge(("n", x1), ("b", q1))
    return RewriteRule("B1", lhs, rhs)


def _b2_lhs(p: Pattern) -> None:
    i0 = p.port(output=False)
    i1 = p.port(output=False)
    o0 = p.port()
    o1 = p.port()
    xm = _rdot(p, 0)
    zc = _gdot(p, 0)
    p.edge(("b", i0), ("n", xm))
    p.edge(("b", i1), ("n", xm))
    p.edge(("n", xm), ("n", zc))
    p.edge(("n", zc), ("b", o0))
    p.edge(("n", zc), ("b", o1))


def _b2_rhs(p: Pattern) -> None:
    i0 = p.port(output=False)
    i1 = p.port(output=False)
    o0 = p.port()
    o1 = p.port()
    za = _gdot(p, 0)
    zb = _gdot(p, 0)
    xc = _rdot(p, 0)
    xd = _rdot(p, 0)
    p.edge(("b", i0), ("n", za))
    p.edge(("b", i1), ("n", zb))
    p.edge(("n", za), ("n", xc))
    p.edge(("n", za), ("n", xd))
    p.edge(("n", zb), ("n", xc))
    p.edge(("n", zb), ("n", xd))
    p.edge(("n", xc), ("b", o0))
    p.edge(("n", xd), ("b", o1))


def _rule_b2() -> RewriteRule:
    lhs = Pattern()
    _b2_lhs(lhs)
    rhs = Pattern()
    _b2_rhs(rhs)
    _root2_pair(rhs)
    return RewriteRule("B2", lhs, rhs)


def _rule_b2prime() -> RewriteRule:
    lhs = Pattern()
    _b2_lhs(lhs)
    _root2_pair(lhs)
    rhs = Pattern()
    _b2_rhs(rhs)
    _gdot(rhs, 0)
    return RewriteRule("B2'", lhs, rhs)


def _rule_k1() -> RewriteRule:
    lhs = Pattern()
    i0 = lhs.port(output=False)
    zs = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    xp = _rdot(lhs, 2)
    lhs.edge(("b", i0), ("n", xp))
    lhs.edge(("n", xp), ("n", zs))
    _gdot(lhs, pvar("a", sign=-1))
    rhs = Pattern()
    q0 = rhs.port(output=False)
    zs2 = rhs.add(
        PSpider("Z", pvar("a", sign=-1), (EllipsisGroup("A", via=(("X", 2),)),))
    )
    rhs.edge(("b", q0), ("n", zs2))
    _gdot(rhs, pvar("a"))
    return RewriteRule("K1", lhs, rhs)


def _rule_k2() -> RewriteRule:
    lhs = Pattern()
    i0 = lhs.port(output=False)
    o0 = lhs.port()
    xa = lhs.add(PSpider("X", pvar("a")))
    zp = _gdot(lhs, 2)
    lhs.edge(("b", i0), ("n", xa))
    lhs.edge(("n", xa), ("n", zp))
    lhs.edge(("n", zp), ("b", o0))
    _gdot(lhs, pvar("a", sign=-1))
    rhs = Pattern()
    q0 = rhs.port(output=False)
    q1 = rhs.port()
    zp2 = _gdot(rhs, 2)
    xa2 = rhs.add(PSpider("X", pvar("a", sign=-1)))
    rhs.edge(("b", q0), ("n", zp2))
    rhs.edge(("n", zp2), ("n", xa2))
    rhs.edge(("n", xa2), ("b", q1))
    _gdot(rhs, pvar("a"))
    return RewriteRule("K2", lhs, rhs)


def _zxz_chain(p: Pattern) -> None:
    i0 = p.port(output=False)
    o0 = p.port()
    z1 = p.add(PSpider("Z", pconst(1)))
    x1 = p.add(PSpider("X", pconst(1)))
    z2 = p.add(PSpider("Z", pconst(1)))
    p.edge(("b", i0), ("n", z1))
    p.edge(("n", z1), ("n", x1))
    p.edge(("n", x1), ("n", z2))
    p.edge(("n", z2), ("b", o0))


def _h_lhs(p: Pattern) -> None:
    i0 = p.port(output=False)
    o0 = p.port()
    h = p.add(PBox("H"))
    p.edge(("b", i0), ("n", h))
    p.edge(("n", h), ("b", o0))


def _rule_eu() -> RewriteRule:
    lhs = Pattern()
    _h_lhs(lhs)
    rhs = Pattern()
    _zxz_chain(rhs)
    rhs.add(PBox("*"))
    _gdot(rhs, 3)
    _root2_pair(rhs)
    return RewriteRule("EU", lhs, rhs)


def _rule_eu_starfree() -> RewriteRule:
    lhs = Pattern()
    _h_lhs(lhs)
    rhs = Pattern()
    _zxz_chain(rhs)
    _inverse_gadget(rhs)
    _inverse_gadget(rhs)
    _gdot(rhs, 3)
    _root2_pair(rhs)
    return RewriteRule("EU", lhs, rhs)


def _rule_euprime() -> RewriteRule:
    lhs = Pattern()
    _h_lhs(lhs)
    _gdot(lhs, 1)
    rhs = Pattern()
    _zxz_chain(rhs)
    _root2_pair(rhs)
    return RewriteRule("EU'", lhs, rhs)


def _rule_h() -> RewriteRule:
    lhs = Pattern()
    lhs.add(
        PSpider(
            "X",
            pvar("a"),
            (EllipsisGroup("A", is_output=False), EllipsisGroup("B")),
        )
    )
    rhs = Pattern()
    rhs.add(
        PSpider(
            "Z",
            pvar("a"),
            (
                EllipsisGroup("A", via=(("H", 0),), is_output=False),
                EllipsisGroup("B", via=(("H", 0),)),
            ),
        )
    )
    return RewriteRule("H", lhs, rhs)


def _cut_rule(name: str, cut_color: str) -> RewriteRule:
    lhs = Pattern()
    _gdot(lhs, 2)
    i0 = lhs.port(output=False)
    o0 = lhs.port()
    lhs.edge(("b", i0), ("b", o0))
    rhs = Pattern()
    _gdot(rhs, 2)
    q0 = rhs.port(output=False)
    q1 = rhs.port()
    ca = rhs.add(PSpider(cut_color))
    cb = rhs.add(PSpider(cut_color))
    rhs.edge(("b", q0), ("n", ca))
    rhs.edge(("n", cb), ("b", q1))
    return RewriteRule(name, lhs, rhs)


def _rule_zs() -> RewriteRule:
    lhs = Pattern()
    _gdot(lhs, 2)
    _gdot(lhs, pvar("a"))
    rhs = Pattern()
    _gdot(rhs, 2)
    return RewriteRule("ZS", lhs, rhs)


def _rule_iv() -> RewriteRule:
    lhs = Pattern()
    _root2_pair(lhs)
    _inverse_gadget(lhs)
    return RewriteRule("IV", lhs, Pattern())


def _rule_ivprime() -> RewriteRule:
    lhs = Pattern()
    _gdot(lhs, 0)
    _inverse_gadget(lhs)
    _inverse_gadget(lhs)
    return RewriteRule("IV'", lhs, Pattern())


def fig1_rules() -> list[RewriteRule]:
    """The legacy rule system: twelve rules, with the star generator."""
    return [
        _rule_s1(),
        _rule_s1prime(),
        _rule_s3("S3"),
        _rule_sr(),
        _rule_b1(),
        _rule_b2(),
        _rule_k1(),
        _rule_k2(),
        _rule_eu(),
        _rule_h(),
        _cut_rule("ZO", "X"),
        _rule_zs(),
    ]


def fig3_rules() -> list[RewriteRule]:
    """The simplified rule system: eight rules, star-free."""
    return [
        _rule_s1(),
        _rule_s3("S3'"),
        _rule_b1(),
        _rule_b2prime(),
        _rule_euprime(),
        _rule_h(),
        _rule_ivprime(),
        _cut_rule("ZO'", "Z"),
    ]


def fig1_starfree_iv_rules() -> list[RewriteRule]:
    """Figure 1 star-purged: (SR) dropped, star occurrences replaced by the
    inverse gadget, plus the inverse rule (IV)."""
    return [
        _rule_s1(),
        _rule_s1prime(),
        _rule_s3("S3"),
        _rule_b1(),
        _rule_b2(),
        _rule_k1(),
        _rule_k2(),
        _rule_eu_starfree(),
        _rule_h(),
        _cut_rule("ZO", "X"),
        _rule_zs(),
        _rule_iv(),
    ]


RULESETS = {
    "fig1": fig1_rules,
    "fig3": fig3_rules,
    "fig1-iv": fig1_starfree_iv_rules,
}
