"""Pattern matching and rule application on diagrams, plus simplification.

Matching is rule-schema-generic: one matcher executes every rule and every
generated variant.  A match binds pattern nodes injectively to host nodes,
phase variables to phases, and each ellipsis group to the set-complement of
the explicitly matched legs on its spider; a spider without an ellipsis must
match its full degree exactly.  Matching ignores which side of the boundary a
wire end sits on (the topology meta-rule), so upside-down variants behave
identically to their originals.

Reverse applications that split spiders are underdetermined (a phase sum and
a leg bipartition must be chosen); such steps take explicit bindings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .diagram import Diagram, HBox, NodeKind, Star, XSpider, ZSpider
from .ring import Phase
from .rules import (
    EllipsisGroup,
    Pattern,
    PBox,
    PSpider,
    RewriteRule,
    _via_node,
    pconst,
    pvar,
    psum,
)

End = tuple[str, int]


def _fingerprint(d: Diagram) -> tuple:
    return (
        tuple(sorted(d.nodes.items(), key=lambda t: t[0])),
        tuple(d.edges),
        tuple(d.inputs),
        tuple(d.outputs),
        d.loops,
    )


@dataclass
class Match:
    pattern: Pattern
    nodes: dict[int, int]  # pattern node -> host node
    phases: dict[str, int]
    port_attach: dict[int, tuple[int, int]]  # pattern port -> (host edge, kept side)
    legs: dict[str, list[tuple[int, int]]]  # ellipsis var -> ends to rewire
    consumed_edges: list[int]
    via_nodes: list[int]
    stamp: tuple = ()

    def consumed_nodes(self) -> list[int]:
        return sorted(set(self.nodes.values()) | set(self.via_nodes))

    def anchor_scope(self, host: Diagram) -> set:
        """What an anchor may name: consumed nodes (ints) plus the endpoints
        of consumed edges - nodes as ints, boundary ports as ("port", id) -
        so wire-level steps can be pinned down."""
        scope: set = set(self.consumed_nodes())
        for i in self.consumed_edges:
            for end in host.edges[i]:
                if end[0] == "n":
                    scope.add(end[1])
                else:
                    scope.add(("port", end[1]))
        return scope

    def key(self) -> tuple:
        return (
            tuple(self.consumed_nodes()),
            tuple(sorted(self.consumed_edges)),
            tuple(sorted(e for ends in self.legs.values() for e in ends)),
            tuple(sorted(self.phases.values())),
            tuple(sorted(self.port_attach.values())),
        )


class MatchError(ValueError):
    pass


def _spider_kind(n: PSpider) -> type:
    return ZSpider if n.color == "Z" else XSpider


def _host_phase(kind: NodeKind) -> Optional[int]:
    if isinstance(kind, (ZSpider, XSpider)):
        return kind.phase.value
    return None


def _compatible(pn, kind: NodeKind) -> bool:
    if isinstance(pn, PBox):
        return isinstance(kind, HBox) if pn.kind == "H" else isinstance(kind, Star)
    if isinstance(pn, PSpider):
        return isinstance(kind, _spider_kind(pn))
    return False


def find_matches(
    pattern: Pattern,
    host: Diagram,
    *,
    bindings: Optional[dict] = None,
    anchor: Optional[Sequence[int]] = None,
) -> list[Match]:
    """All matches of `pattern` in `host`, deduplicated and in a stable order.

    `bindings` may pre-assign phase variables (ints) and ellipsis leg groups
    (lists of neighbouring endpoints) for underdetermined reverse matches.
    `anchor` restricts to matches whose consumed nodes include the given ids.
    """
    bindings = dict(bindings or {})
    phase_seed = {k: v % 4 for k, v in bindings.items() if isinstance(v, int)}
    leg_seed = {k: v for k, v in bindings.items() if not isinstance(v, int)}

    pnodes = sorted(pattern.nodes)
    explicit: dict[int, int] = {v: 0 for v in pnodes}
    pair_count: dict[tuple[End, End], int] = {}
    node_port_edges: dict[int, list[tuple[int, int]]] = {}  # pnode -> [(pedge, port)]
    floating: list[tuple[int, int, int]] = []  # (pedge, port_x, port_y)
    for i, (x, y) in enumerate(pattern.edges):
        for e in (x, y):
            if e[0] == "n":
                explicit[e[1]] += 1
        if x[0] == "n" and y[0] == "n":
            k = tuple(sorted((x, y)))
            pair_count[k] = pair_count.get(k, 0) + 1
        elif x[0] == "b" and y[0] == "b":
            floating.append((i, x[1], y[1]))
        else:
            n, b = (x, y) if x[0] == "n" else (y, x)
            node_port_edges.setdefault(n[1], []).append((i, b[1]))

    groups: dict[int, tuple[EllipsisGroup, ...]] = {
        v: n.groups
        for v, n in pattern.nodes.items()
        if isinstance(n, PSpider) and n.groups
    }

    order = sorted(
        pnodes,
        key=lambda v: (
            isinstance(pattern.nodes[v], PSpider),
            -explicit[v],
            v,
        ),
    )

    host_node_ends: dict[int, list[tuple[int, int]]] = {
        v: host.node_ends(v) for v in host.nodes
    }

    results: list[Match] = []
    seen_keys: set[tuple] = set()

    def assign_edges(nmap: dict[int, int], phases: dict[str, int]) -> None:
        consumed: list[int] = []
        # node-node pattern edges: take the first c host edges between images
        for (x, y), c in sorted(pair_count.items()):
            u, v = nmap[x[1]], nmap[y[1]]
            cand = [
                i
                for i, (a, b) in enumerate(host.edges)
                if i not in consumed
                and tuple(sorted((a, b))) == tuple(sorted((("n", u), ("n", v))))
            ]
            if len(cand) < c:
                return
            consumed.extend(cand[:c])

        # node-port pattern edges: pick remaining host ends at the node
        port_attach: dict[int, tuple[int, int]] = {}
        used_ends: dict[int, set[tuple[int, int]]] = {}
        for u in pnodes:
            img = nmap[u]
            taken = {
                (i, s)
                for i, s in host_node_ends[img]
                if i in consumed
            }
            used_ends[u] = set(taken)
        ok = True
        for u, pes in sorted(node_port_edges.items()):
            img = nmap[u]
            remaining = [
                (i, s) for i, s in host_node_ends[img] if (i, s) not in used_ends[u]
            ]
            remaining.sort()
            if len(remaining) < len(pes):
                return
            for (pedge, port), (i, s) in zip(sorted(pes, key=lambda t: t[1]), remaining):
                far_end = host.edges[i][1 - s]
                if far_end[0] == "n" and far_end[1] in nmap.values():
                    ok = False
                    break
                port_attach[port] = (i, 1 - s)
                consumed.append(i)
                used_ends[u].add((i, s))
            if not ok:
                break
        if not ok:
            return

        # ellipsis legs: the complement, walked through any via chain
        legs: dict[str, list[tuple[int, int]]] = {}
        via_nodes: list[int] = []
        via_edges: list[int] = []
        for u in pnodes:
            img = nmap[u]
            leftovers = [
                (i, s)
                for i, s in host_node_ends[img]
                if (i, s) not in used_ends[u] and i not in consumed
            ]
            gs = groups.get(u, ())
            if not gs:
                if leftovers:
                    return
                continue
            # distribute leftovers: explicit leg bindings first, rest to the
            # first group (any split instantiates the same schematic rule)
            gs_sorted = sorted(gs, key=lambda g: g.var)
            assigned: dict[str, list[tuple[int, int]]] = {g.var: [] for g in gs_sorted}
            rest = list(leftovers)
            for g in gs_sorted:
                if g.var in leg_seed:
                    want = list(leg_seed[g.var])
                    for spec in want:
                        found = None
                        for i, s in rest:
                            far = host.edges[i][1 - s]
                            if far == spec:
                                found = (i, s)
                                break
                        if found is None:
                            return
                        rest.remove(found)
                        assigned[g.var].append(found)
            primary = gs_sorted[0]
            for g in gs_sorted:
                if g.var not in leg_seed and g is not primary:
                    pass
            free_target = next(
                (g for g in gs_sorted if g.var not in leg_seed), None
            )
            if rest and free_target is None:
                return
            if free_target is not None:
                assigned[free_target.var].extend(rest)
                rest = []

            for g in gs_sorted:
                ends: list[tuple[int, int]] = []
                for i, s in assigned[g.var]:
                    cur = (i, s)
                    bad = False
                    for via in g.via:
                        e_idx, side = cur
                        far = host.edges[e_idx][1 - side]
                        if far[0] != "n":
                            bad = True
                            break
                        w = far[1]
                        if (
                            w in nmap.values()
                            or w in via_nodes
                            or not _via_matches(host.nodes[w], via)
                        ):
                            bad = True
                            break
                        nxt = [
                            (j, t)
                            for j, t in host_node_ends[w]
                            if j != e_idx and j not in consumed and j not in via_edges
                        ]
                        if len(nxt) != 1:
                            bad = True
                            break
                        via_nodes.append(w)
                        via_edges.append(e_idx)
                        cur = nxt[0]
                    if bad:
                        return
                    ends.append(cur)
                legs.setdefault(g.var, []).extend(ends)

        consumed_all = consumed + via_edges

        # floating wire edges: any distinct unconsumed host edges not touching
        # the match interior
        interior = set(nmap.values()) | set(via_nodes)

        def edge_ok(i: int) -> bool:
            if i in consumed_all:
                return False
            a, b = host.edges[i]
            for e in (a, b):
                if e[0] == "n" and e[1] in interior:
                    return False
            return True

        float_opts = [i for i in range(len(host.edges)) if edge_ok(i)]
        for combo in itertools.permutations(float_opts, len(floating)):
            pa = dict(port_attach)
            for (pedge, px, py), i in zip(floating, combo):
                pa[px] = (i, 0)
                pa[py] = (i, 1)
            m = Match(
                pattern=pattern,
                nodes=dict(nmap),
                phases=dict(phases),
                port_attach=pa,
                legs={k: list(v) for k, v in legs.items()},
                consumed_edges=sorted(set(consumed_all) | set(combo)),
                via_nodes=list(via_nodes),
                stamp=_fingerprint(host),
            )
            if anchor is not None and not set(anchor) <= m.anchor_scope(host):
                continue
            k = m.key()
            if k not in seen_keys:
                seen_keys.add(k)
                results.append(m)

    def backtrack(i: int, nmap: dict[int, int], phases: dict[str, int]) -> None:
        if i == len(order):
            assign_edges(nmap, phases)
            return
        u = order[i]
        pn = pattern.nodes[u]
        for w in sorted(host.nodes):
            if w in nmap.values():
                continue
            kind = host.nodes[w]
            if not _compatible(pn, kind):
                continue
            deg = len(host_node_ends[w])
            new_phases = phases
            if isinstance(pn, PSpider):
                if pn.groups:
                    if deg < explicit[u]:
                        continue
                elif deg != explicit[u]:
                    continue
                hp = _host_phase(kind)
                solved = pn.phase.solve(hp, phases)
                if solved is None:
                    continue
                new_phases = solved
            else:
                if deg != explicit[u]:
                    continue
            nmap[u] = w
            backtrack(i + 1, nmap, new_phases)
            del nmap[u]

    backtrack(0, {}, dict(phase_seed))
    results.sort(key=lambda m: m.key())
    return results


def _via_matches(kind: NodeKind, via: tuple[str, int]) -> bool:
    tag, ph = via
    if tag == "H":
        return isinstance(kind, HBox)
    if tag == "Z":
        return isinstance(kind, ZSpider) and kind.phase.value == ph % 4
    if tag == "X":
        return isinstance(kind, XSpider) and kind.phase.value == ph % 4
    return False


def apply_rule(
    rule: RewriteRule,
    direction: str,
    match: Match,
    host: Diagram,
    *,
    bindings: Optional[dict] = None,
) -> Diagram:
    """Replace the matched side of `rule` by the other side.

    `direction` "L2R" means `match` located the LHS and the RHS is glued in;
    "R2L" the reverse.  Extra `bindings` supply values for target-side
    variables that the source side leaves unbound.
    """
    if direction not in ("L2R", "R2L"):
        raise ValueError(f"bad direction {direction!r}")
    source = rule.lhs if direction == "L2R" else rule.rhs
    target = rule.rhs if direction == "L2R" else rule.lhs
    if match.pattern is not source:
        raise ValueError("match does not belong to the chosen rule side")
    if match.stamp != _fingerprint(host):
        raise ValueError("stale match: the diagram changed since matching")

    phases = dict(match.phases)
    for k, v in (bindings or {}).items():
        if isinstance(v, int):
            phases.setdefault(k, v % 4)
    missing = {
        v for n in target.nodes.values() if isinstance(n, PSpider)
        for v in n.phase.variables()
    } - set(phases)
    if missing:
        raise MatchError(f"unbound phase variables for target side: {sorted(missing)}")

    out = host.copy()
    consumed_nodes = set(match.consumed_nodes())
    consumed_edges = set(match.consumed_edges)

    # instantiate target skeleton
    tmap: dict[int, int] = {}
    for v in sorted(target.nodes):
        n = target.nodes[v]
        if isinstance(n, PSpider):
            kind: NodeKind = (
                ZSpider(n.phase.evaluate(phases))
                if n.color == "Z"
                else XSpider(n.phase.evaluate(phases))
            )
        else:
            kind = HBox() if n.kind == "H" else Star()
        tmap[v] = out.add_node(kind)

    # interface: positions pair up source and target ports
    if len(source.ports) != len(target.ports):
        raise MatchError("rule sides disagree on interface arity")
    attach_for: dict[int, End] = {}
    for sp, tp in zip(source.ports, target.ports):
        e, side = match.port_attach[sp]
        attach_for[tp] = host.edges[e][side]

    def conv(e: End) -> End:
        return ("n", tmap[e[1]]) if e[0] == "n" else attach_for[e[1]]

    new_edges = [(conv(x), conv(y)) for x, y in target.edges]

    # ellipsis legs: rewire surviving ends onto their target carriers
    rewire: dict[tuple[int, int], End] = {}
    target_groups: dict[str, tuple[int, EllipsisGroup]] = {}
    for v, n in target.nodes.items():
        if isinstance(n, PSpider):
            for g in n.groups:
                target_groups[g.var] = (v, g)
    for var, ends in match.legs.items():
        if var not in target_groups:
            raise MatchError(f"target side drops ellipsis variable {var!r}")
        carrier, g = target_groups[var]
        for e_idx, side in ends:
            prev: End = ("n", tmap[carrier])
            for via in g.via:
                w = out.add_node(_via_node(via))
                new_edges.append((prev, ("n", w)))
                prev = ("n", w)
            rewire[(e_idx, side)] = prev

    edges: list[tuple[End, End]] = []
    for i, (x, y) in enumerate(out.edges):
        if i in consumed_edges:
            continue
        nx = rewire.get((i, 0), x)
        ny = rewire.get((i, 1), y)
        edges.append((nx, ny))
    edges.extend(new_edges)

    for v in consumed_nodes:
        del out.nodes[v]
    out.edges = edges
    out.validate()
    return out


# -- simplification -----------------------------------------------------------


def _rule_hh() -> RewriteRule:
    lhs = Pattern()
    p0 = lhs.port(output=False)
    p1 = lhs.port()
    h1 = lhs.add(PBox("H"))
    h2 = lhs.add(PBox("H"))
    lhs.edge(("b", p0), ("n", h1))
    lhs.edge(("n", h1), ("n", h2))
    lhs.edge(("n", h2), ("b", p1))
    rhs = Pattern()
    q0 = rhs.port(output=False)
    q1 = rhs.port()
    rhs.edge(("b", q0), ("b", q1))
    return RewriteRule("HH", lhs, rhs)


def _rule_hloop() -> RewriteRule:
    lhs = Pattern()
    z = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    h = lhs.add(PBox("H"))
    lhs.edge(("n", z), ("n", h))
    lhs.edge(("n", h), ("n", z))
    g = lhs.add(PSpider("Z"))
    r = lhs.add(PSpider("X"))
    lhs.edge(("n", g), ("n", r))
    rhs = Pattern()
    rhs.add(PSpider("Z", pvar("a", offset=2), (EllipsisGroup("A"),)))
    return RewriteRule("HLOOP", lhs, rhs)


def _rule_hopf_generic() -> RewriteRule:
    lhs = Pattern()
    z = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    x = lhs.add(PSpider("X", pvar("b"), (EllipsisGroup("B"),)))
    lhs.edge(("n", z), ("n", x))
    lhs.edge(("n", z), ("n", x))
    lhs.add(PSpider("Z"))
    rhs = Pattern()
    rhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A"),)))
    rhs.add(PSpider("X", pvar("b"), (EllipsisGroup("B"),)))
    return RewriteRule("HOPF", lhs, rhs)


def _rule_zs_generic(color: str) -> RewriteRule:
    lhs = Pattern()
    lhs.add(PSpider("Z", pconst(2)))
    lhs.add(PSpider(color, pvar("a")))
    rhs = Pattern()
    rhs.add(PSpider("Z", pconst(2)))
    return RewriteRule(f"ZS{color}", lhs, rhs)


def _simplify_rules() -> list[RewriteRule]:
    from .rules import _rule_s1, _rule_s1prime, _rule_s3, _rule_ivprime

    base = [
        _rule_s1(),
        _rule_s1().color_swap(),
        _rule_s1prime(),
        _rule_s1prime().color_swap(),
        _rule_s3("ID"),
        _rule_s3("ID").color_swap(),
        _rule_hh(),
        _rule_hloop(),
        _rule_hloop().color_swap(),
        _rule_hopf_generic(),
        _rule_hopf_generic().color_swap(),
        _rule_ivprime(),
        _rule_zs_generic("Z"),
        _rule_zs_generic("X"),
    ]
    return base


_SIMPLIFY_CACHE: list[RewriteRule] | None = None


def _is_zero_dot(kind: NodeKind) -> bool:
    return isinstance(kind, (ZSpider, XSpider)) and kind.phase.value == 2


def _zero_collapse(d: Diagram) -> Optional[Diagram]:
    """If a zero-valued scalar dot is present, rewrite to the canonical zero
    diagram of the same shape (pi-dot plus one cut dot per boundary port)."""
    has_zero = any(
        _is_zero_dot(k) and d.degree(v) == 0 for v, k in d.nodes.items()
    )
    if not has_zero:
        return None
    canonical = (
        len(d.nodes) == 1 + len(d.inputs) + len(d.outputs)
        and len(d.edges) == len(d.inputs) + len(d.outputs)
        and d.loops == 0
    )
    if canonical:
        return None
    out = Diagram()
    pi = out.add_node(ZSpider(Phase(2)))
    assert pi >= 0
    for _ in d.inputs:
        v = out.add_node(ZSpider(Phase(0)))
        out.add_edge(("b", out.add_input()), ("n", v))
    for _ in d.outputs:
        v = out.add_node(ZSpider(Phase(0)))
        out.add_edge(("n", v), ("b", out.add_output()))
    return out


def _measure(d: Diagram) -> tuple[int, int, int]:
    scalars = sum(1 for v in d.nodes if d.degree(v) == 0)
    return (len(d.nodes), len(d.edges), scalars)


def simplify(d: Diagram, strategy: str = "default") -> Diagram:
    """Repeatedly apply interpretation-preserving shrinking rewrites.

    The default strategy runs spider fusion, self-loop and Hadamard-loop
    removal, identity elimination, H-H cancellation, Hopf disconnection,
    scalar cancellation and zero absorption to a fixpoint; termination is
    guaranteed by the (nodes, edges, scalar count) measure, which every step
    strictly decreases.
    """
    if strategy != "default":
        raise ValueError(f"unknown strategy {strategy!r}")
    global _SIMPLIFY_CACHE
    if _SIMPLIFY_CACHE is None:
        _SIMPLIFY_CACHE = _simplify_rules()

    cur = d.copy()
    zc = _zero_collapse(cur)
    if zc is not None:
        return zc
    while True:
        progress = False
        for rule in _SIMPLIFY_CACHE:
            ms = find_matches(rule.lhs, cur)
            if not ms:
                continue
            nxt = apply_rule(rule, "L2R", ms[0], cur)
            assert _measure(nxt) < _measure(cur), rule.name
            cur = nxt
            progress = True
            break
        if not progress:
            return cur
