"""Boundary-ordered open multigraphs of spiders, Hadamard boxes and stars.

Wires are edges, not nodes: the swap, cup, cap and identity generators exist
only as boundary wirings, so "only the topology matters" holds definitionally.
Closed loops (circles with no endpoint) cannot live in an edge multiset and are
tracked by an explicit counter; each contributes a scalar factor 2.

Endpoints are tagged tuples: ("n", node_id) or ("b", port_id).  Every boundary
port occurs in exactly one edge end.  Spiders may carry self-loops and parallel
edges; an H box has degree exactly 2 and a star degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .ring import Phase


@dataclass(frozen=True)
class ZSpider:
    phase: Phase


@dataclass(frozen=True)
class XSpider:
    phase: Phase


@dataclass(frozen=True)
class HBox:
    pass


@dataclass(frozen=True)
class Star:
    pass


NodeKind = Union[ZSpider, XSpider, HBox, Star]

End = tuple[str, int]  # ("n", node_id) | ("b", port_id)


def _kind_key(kind: NodeKind) -> tuple:
    if isinstance(kind, ZSpider):
        return ("Z", kind.phase.value)
    if isinstance(kind, XSpider):
        return ("X", kind.phase.value)
    if isinstance(kind, HBox):
        return ("H",)
    return ("*",)


class Diagram:
    def __init__(self) -> None:
        self.nodes: dict[int, NodeKind] = {}
        self.edges: list[tuple[End, End]] = []
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self.loops: int = 0
        self._next_node = 0
        self._next_port = 0

    # -- construction ---------------------------------------------------------

    def add_node(self, kind: NodeKind) -> int:
        v = self._next_node
        self._next_node += 1
        self.nodes[v] = kind
        return v

    def add_port(self) -> int:
        p = self._next_port
        self._next_port += 1
        return p

    def add_edge(self, x: End, y: End) -> None:
        self.edges.append((x, y))

    def add_input(self) -> int:
        p = self.add_port()
        self.inputs.append(p)
        return p

    def add_output(self) -> int:
        p = self.add_port()
        self.outputs.append(p)
        return p

    def copy(self) -> Diagram:
        d = Diagram()
        d.nodes = dict(self.nodes)
        d.edges = list(self.edges)
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d.loops = self.loops
        d._next_node = self._next_node
        d._next_port = self._next_port
        return d

    # -- queries --------------------------------------------------------------

    def arity(self) -> tuple[int, int]:
        return len(self.inputs), len(self.outputs)

    def node_ends(self, v: int) -> list[tuple[int, int]]:
        """Edge ends incident to node v, as (edge index, side) pairs."""
        out = []
        for i, (x, y) in enumerate(self.edges):
            if x == ("n", v):
                out.append((i, 0))
            if y == ("n", v):
                out.append((i, 1))
        return out

    def degree(self, v: int) -> int:
        return len(self.node_ends(v))

    def port_end(self, p: int) -> Optional[tuple[int, int]]:
        for i, (x, y) in enumerate(self.edges):
            if x == ("b", p):
                return (i, 0)
            if y == ("b", p):
                return (i, 1)
        return None

    def neighbours(self, v: int) -> Iterator[End]:
        for i, side in self.node_ends(v):
            yield self.edges[i][1 - side]

    def validate(self) -> None:
        """Raise ValueError on any broken structural invariant."""
        ports = set(self.inputs) | set(self.outputs)
        if len(self.inputs) + len(self.outputs) != len(ports):
            raise ValueError("duplicate boundary port")
        seen: dict[int, int] = {}
        for x, y in self.edges:
            for tag, i in (x, y):
                if tag == "n":
                    if i not in self.nodes:
                        raise ValueError(f"edge references missing node {i}")
                elif tag == "b":
                    if i not in ports:
                        raise ValueError(f"edge references missing port {i}")
                    seen[i] = seen.get(i, 0) + 1
                else:
                    raise ValueError(f"bad endpoint tag {tag!r}")
        for v, kind in self.nodes.items():
            if isinstance(kind, HBox) and self.degree(v) != 2:
                raise ValueError(f"H box {v} has degree {self.degree(v)}")
            if isinstance(kind, Star) and self.degree(v) != 0:
                raise ValueError(f"star {v} has degree {self.degree(v)}")
        for p in ports:
            if seen.get(p, 0) != 1:
                raise ValueError(f"port {p} occurs in {seen.get(p, 0)} edge ends")
        if self.loops < 0:
            raise ValueError("negative loop counter")

    # -- equality up to iso -----------------------------------------------------

    def __repr__(self) -> str:
        n, m = self.arity()
        return (
            f"Diagram({n}->{m}, {len(self.nodes)} nodes, "
            f"{len(self.edges)} edges, loops={self.loops})"
        )


# -- generator constructors ---------------------------------------------------


def empty() -> Diagram:
    return Diagram()


def z_spider(n: int, m: int, phase: Phase | int = 0) -> Diagram:
    return _spider(ZSpider(_phase(phase)), n, m)


def x_spider(n: int, m: int, phase: Phase | int = 0) -> Diagram:
    return _spider(XSpider(_phase(phase)), n, m)


def _phase(p: Phase | int) -> Phase:
    return p if isinstance(p, Phase) else Phase(p)


def _spider(kind: NodeKind, n: int, m: int) -> Diagram:
    if n < 0 or m < 0:
        raise ValueError("negative arity")
    d = Diagram()
    v = d.add_node(kind)
    for _ in range(n):
        d.add_edge(("b", d.add_input()), ("n", v))
    for _ in range(m):
        d.add_edge(("n", v), ("b", d.add_output()))
    return d


def hadamard() -> Diagram:
    d = Diagram()
    v = d.add_node(HBox())
    d.add_edge(("b", d.add_input()), ("n", v))
    d.add_edge(("n", v), ("b", d.add_output()))
    return d


def star() -> Diagram:
    d = Diagram()
    d.add_node(Star())
    return d


def wire() -> Diagram:
    d = Diagram()
    d.add_edge(("b", d.add_input()), ("b", d.add_output()))
    return d


def swap() -> Diagram:
    d = Diagram()
    i0, i1 = d.add_input(), d.add_input()
    o0, o1 = d.add_output(), d.add_output()
    d.add_edge(("b", i0), ("b", o1))
    d.add_edge(("b", i1), ("b", o0))
    return d


def cup() -> Diagram:
    """epsilon : 2 -> 0."""
    d = Diagram()
    d.add_edge(("b", d.add_input()), ("b", d.add_input()))
    return d


def cap() -> Diagram:
    """eta : 0 -> 2."""
    d = Diagram()
    d.add_edge(("b", d.add_output()), ("b", d.add_output()))
    return d


# -- structural operators -----------------------------------------------------


def _relabel(d: Diagram, node_off: int, port_off: int) -> Diagram:
    out = Diagram()
    out.nodes = {v + node_off: k for v, k in d.nodes.items()}
    out.edges = [
        (
            (x[0], x[1] + (node_off if x[0] == "n" else port_off)),
            (y[0], y[1] + (node_off if y[0] == "n" else port_off)),
        )
        for x, y in d.edges
    ]
    out.inputs = [p + port_off for p in d.inputs]
    out.outputs = [p + port_off for p in d.outputs]
    out.loops = d.loops
    out._next_node = d._next_node + node_off
    out._next_port = d._next_port + port_off
    return out


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Disjoint union; boundary lists concatenate (d1 first)."""
    a = d1.copy()
    b = _relabel(d2, a._next_node, a._next_port)
    a.nodes.update(b.nodes)
    a.edges.extend(b.edges)
    a.inputs.extend(b.inputs)
    a.outputs.extend(b.outputs)
    a.loops += b.loops
    a._next_node = b._next_node
    a._next_port = b._next_port
    return a


def splice_junctions(
    edges: list[tuple[End, End]], junctions: int
) -> tuple[list[tuple[End, End]], int]:
    """Eliminate ("j", k) pseudo-endpoints, each incident to exactly two edge
    ends, splicing wires through; returns the edges and the closed-loop count.
    """
    edges = list(edges)
    loops = 0
    for j in range(junctions):
        jend = ("j", j)
        inc = [
            (i, side)
            for i, e in enumerate(edges)
            for side in (0, 1)
            if e[side] == jend
        ]
        assert len(inc) == 2, "junction must have exactly two incident ends"
        (i1, s1), (i2, s2) = inc
        if i1 == i2:
            # both ends of one edge meet at this junction: a closed loop
            edges.pop(i1)
            loops += 1
            continue
        far1 = edges[i1][1 - s1]
        far2 = edges[i2][1 - s2]
        for i in sorted((i1, i2), reverse=True):
            edges.pop(i)
        edges.append((far1, far2))
    return edges, loops


def compose(d2: Diagram, d1: Diagram) -> Diagram:
    """Sequential composition d2 o d1 (outputs of d1 glued to inputs of d2)."""
    if len(d1.outputs) != len(d2.inputs):
        raise ValueError(
            f"arity mismatch in composition: {len(d1.outputs)} outputs "
            f"vs {len(d2.inputs)} inputs"
        )
    a = d1.copy()
    b = _relabel(d2, a._next_node, a._next_port)

    glue = {}  # port -> junction id
    for j, (o, i) in enumerate(zip(a.outputs, b.inputs)):
        glue[o] = j
        glue[i] = j

    def conv(e: End) -> End:
        if e[0] == "b" and e[1] in glue:
            return ("j", glue[e[1]])
        return e

    edges, extra = splice_junctions(
        [(conv(x), conv(y)) for x, y in a.edges + b.edges], len(glue) // 2
    )
    loops = a.loops + b.loops + extra

    out = Diagram()
    out.nodes = {**a.nodes, **b.nodes}
    out.edges = edges
    out.inputs = list(a.inputs)
    out.outputs = list(b.outputs)
    out.loops = loops
    out._next_node = b._next_node
    out._next_port = b._next_port
    return out


def color_swap(d: Diagram) -> Diagram:
    """Exchange Z and X on every spider; everything else untouched."""
    out = d.copy()
    for v, kind in out.nodes.items():
        if isinstance(kind, ZSpider):
            out.nodes[v] = XSpider(kind.phase)
        elif isinstance(kind, XSpider):
            out.nodes[v] = ZSpider(kind.phase)
    return out


def flip(d: Diagram) -> Diagram:
    """Upside-down flip: exchange the input and output lists (orders kept)."""
    out = d.copy()
    out.inputs, out.outputs = list(d.outputs), list(d.inputs)
    return out


# -- isomorphism --------------------------------------------------------------


def _adjacency(d: Diagram) -> dict[End, dict[End, int]]:
    adj: dict[End, dict[End, int]] = {}
    for x, y in d.edges:
        adj.setdefault(x, {}).setdefault(y, 0)
        adj[x][y] += 1
        if x != y:
            adj.setdefault(y, {}).setdefault(x, 0)
            adj[y][x] += 1
    return adj


def iso_eq(d1: Diagram, d2: Diagram) -> bool:
    """Boundary-order-preserving isomorphism of open multigraphs.

    Backtracking search; diagrams in this engine stay small.
    """
    if d1.loops != d2.loops:
        return False
    if len(d1.inputs) != len(d2.inputs) or len(d1.outputs) != len(d2.outputs):
        return False
    if len(d1.nodes) != len(d2.nodes) or len(d1.edges) != len(d2.edges):
        return False
    if sorted(map(_kind_key, d1.nodes.values())) != sorted(
        map(_kind_key, d2.nodes.values())
    ):
        return False

    # boundary ports map positionally
    pmap = dict(zip(d1.inputs, d2.inputs))
    pmap.update(zip(d1.outputs, d2.outputs))

    adj1, adj2 = _adjacency(d1), _adjacency(d2)

    def signature(d: Diagram, adj, v: int) -> tuple:
        kind = _kind_key(d.nodes[v])
        deg = sum(adj.get(("n", v), {}).values())
        bnd = sorted(
            w[1] for w in adj.get(("n", v), {}) if w[0] == "b"
        )  # port ids differ; count only
        return (kind, deg, len(bnd))

    sig1 = {v: signature(d1, adj1, v) for v in d1.nodes}
    sig2 = {v: signature(d2, adj2, v) for v in d2.nodes}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False

    order = sorted(d1.nodes, key=lambda v: (sig1[v], v))
    used: set[int] = set()
    nmap: dict[int, int] = {}

    def end_map(e: End) -> Optional[End]:
        if e[0] == "b":
            q = pmap.get(e[1])
            return None if q is None else ("b", q)
        w = nmap.get(e[1])
        return None if w is None else ("n", w)

    def consistent(v: int, w: int) -> bool:
        # every already-determined neighbourhood count must match
        for nb, cnt in adj1.get(("n", v), {}).items():
            mapped = ("n", w) if nb == ("n", v) else end_map(nb)
            if mapped is not None:
                if adj2.get(("n", w), {}).get(mapped, 0) != cnt:
                    return False
        for nb, cnt in adj2.get(("n", w), {}).items():
            if nb[0] == "b":
                # must correspond to a port neighbour of v with same count
                inv = {q: p for p, q in pmap.items()}
                p = inv.get(nb[1])
                if p is None or adj1.get(("n", v), {}).get(("b", p), 0) != cnt:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            # full edge-multiset check
            def emap(e: tuple[End, End]) -> tuple:
                a, b = end_map(e[0]), end_map(e[1])
                return tuple(sorted((a, b)))

            m1 = sorted(emap(e) for e in d1.edges)
            m2 = sorted(tuple(sorted(e)) for e in d2.edges)
            return m1 == m2

        v = order[i]
        for w in sorted(d2.nodes):
            if w in used or sig2[w] != sig1[v]:
                continue
            if not consistent(v, w):
                continue
            nmap[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del nmap[v]
            used.discard(w)
        return False

    return search(0)
