"""The standard interpretation: exact tensor contraction over the open graph.

Each node becomes a small tensor with one leg per incident edge end (a Z
spider of degree d has entry 1 at the all-zeros index and e^{i*alpha} at the
all-ones index; an X spider is the Z tensor with an H contracted onto every
leg; a plain edge is the 2-dimensional identity metric).  Contraction order is
a greedy min-degree heuristic; each closed loop multiplies the result by 2.

`interpret_compositional` evaluates a generator-expression tree purely by the
tensor/compose clauses and serves as an independent oracle for `interpret`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import ring
from .diagram import Diagram, HBox, NodeKind, Star, XSpider, ZSpider
from . import diagram as dg
from .ring import ExactMatrix, Phase, RingElem, from_phase

_H_MATRIX = [
    [ring.INV_SQRT2, ring.INV_SQRT2],
    [ring.INV_SQRT2, -ring.INV_SQRT2],
]


def _h_array() -> np.ndarray:
    h = np.empty((2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            h[i, j] = _H_MATRIX[i][j]
    return h


def _z_tensor(degree: int, phase: Phase) -> np.ndarray:
    t = np.full((2,) * degree, ring.ZERO, dtype=object)
    if degree == 0:
        t[()] = ring.ONE + from_phase(phase)
    else:
        t[(0,) * degree] = ring.ONE
        t[(1,) * degree] = from_phase(phase)
    return t


def node_tensor(kind: NodeKind, degree: int) -> np.ndarray:
    if isinstance(kind, ZSpider):
        return _z_tensor(degree, kind.phase)
    if isinstance(kind, XSpider):
        t = _z_tensor(degree, kind.phase)
        h = _h_array()
        for _ in range(degree):
            t = np.tensordot(t, h, axes=([0], [0]))
        return t
    if isinstance(kind, HBox):
        if degree != 2:
            raise ValueError(f"H box must have degree 2, got {degree}")
        return _h_array()
    if isinstance(kind, Star):
        if degree != 0:
            raise ValueError(f"star must have degree 0, got {degree}")
        t = np.empty((), dtype=object)
        t[()] = ring.HALF
        return t
    raise TypeError(f"unknown node kind {kind!r}")


def _trace_dups(t: np.ndarray, legs: list[int]) -> tuple[np.ndarray, list[int]]:
    """Trace out any leg label occurring twice (self-loops)."""
    while True:
        seen: dict[int, int] = {}
        pair = None
        for pos, e in enumerate(legs):
            if e in seen:
                pair = (seen[e], pos)
                break
            seen[e] = pos
        if pair is None:
            return t, legs
        i, j = pair
        t = np.asarray(np.trace(t, axis1=i, axis2=j), dtype=object)
        legs = [e for pos, e in enumerate(legs) if pos not in (i, j)]


def interpret(d: Diagram) -> ExactMatrix:
    """2^|outputs| x 2^|inputs| exact matrix of the diagram."""
    port_leg: dict[int, int] = {}
    tensors: list[tuple[np.ndarray, list[int]]] = []
    next_leg = 0

    def fresh() -> int:
        nonlocal next_leg
        next_leg += 1
        return next_leg - 1

    node_legs: dict[int, list[int]] = {v: [] for v in d.nodes}
    ident = np.full((2, 2), ring.ZERO, dtype=object)
    ident[0, 0] = ident[1, 1] = ring.ONE

    for x, y in d.edges:
        e = fresh()
        for end in (x, y):
            if end[0] == "n":
                node_legs[end[1]].append(e)
        if x[0] == "b" and y[0] == "b":
            # explicit identity metric so each port owns one leg
            e2 = fresh()
            tensors.append((ident.copy(), [e, e2]))
            port_leg[x[1]] = e
            port_leg[y[1]] = e2
        elif x[0] == "b":
            port_leg[x[1]] = e
        elif y[0] == "b":
            port_leg[y[1]] = e

    for v, kind in d.nodes.items():
        t = node_tensor(kind, len(node_legs[v]))
        t, legs = _trace_dups(t, node_legs[v])
        tensors.append((t, legs))

    # greedy pairwise contraction over shared legs
    while True:
        best = None
        for i in range(len(tensors)):
            for j in range(i + 1, len(tensors)):
                shared = set(tensors[i][1]) & set(tensors[j][1])
                if shared:
                    size = len(tensors[i][1]) + len(tensors[j][1]) - 2 * len(shared)
                    if best is None or size < best[0]:
                        best = (size, i, j, shared)
        if best is None:
            break
        _, i, j, shared = best
        t1, l1 = tensors[i]
        t2, l2 = tensors[j]
        ax1 = [l1.index(e) for e in sorted(shared)]
        ax2 = [l2.index(e) for e in sorted(shared)]
        t = np.tensordot(t1, t2, axes=(ax1, ax2))
        legs = [e for e in l1 if e not in shared] + [e for e in l2 if e not in shared]
        tensors[i] = (t, legs)
        tensors.pop(j)

    # outer product of the disconnected components
    total = np.empty((), dtype=object)
    total[()] = ring.ONE
    legs: list[int] = []
    for t, l in tensors:
        total = np.tensordot(total, t, axes=0)
        legs = legs + l

    for _ in range(d.loops):
        total = np.asarray(total * ring.TWO, dtype=object)

    want = [port_leg[p] for p in d.outputs] + [port_leg[p] for p in d.inputs]
    perm = [legs.index(e) for e in want]
    if perm:
        total = total.transpose(perm)
    m, n = len(d.outputs), len(d.inputs)
    flat = total.reshape(2**m * 2**n) if total.ndim else total.reshape(1)
    data = [
        [flat[r * 2**n + c] for c in range(2**n)] for r in range(2**m)
    ]
    return ExactMatrix(2**m, 2**n, data)


# -- compositional oracle -------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """A single generator: one of z, x, h, star, wire, swap, cup, cap, empty."""

    kind: str
    n: int = 0
    m: int = 0
    phase: int = 0


@dataclass(frozen=True)
class Tens:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Comp:
    after: "Expr"
    before: "Expr"


Expr = Union[Gen, Tens, Comp]

_GEN_ARITY = {
    "h": (1, 1),
    "star": (0, 0),
    "wire": (1, 1),
    "swap": (2, 2),
    "cup": (2, 0),
    "cap": (0, 2),
    "empty": (0, 0),
}


def expr_arity(e: Expr) -> tuple[int, int]:
    if isinstance(e, Gen):
        if e.kind in ("z", "x"):
            return (e.n, e.m)
        return _GEN_ARITY[e.kind]
    if isinstance(e, Tens):
        a, b = expr_arity(e.left)
        c, d = expr_arity(e.right)
        return (a + c, b + d)
    a, b = expr_arity(e.before)
    c, d = expr_arity(e.after)
    if b != c:
        raise ValueError(f"composition arity mismatch: {b} vs {c}")
    return (a, d)


def _z_matrix(n: int, m: int, phase: int) -> ExactMatrix:
    if n == 0 and m == 0:
        return ExactMatrix(1, 1, [[ring.ONE + from_phase(phase)]])
    mat = ring.zero_matrix(2**m, 2**n)
    mat.data[0][0] = ring.ONE
    mat.data[2**m - 1][2**n - 1] = from_phase(phase)
    return mat


def _h_exact() -> ExactMatrix:
    return ExactMatrix(2, 2, [row[:] for row in _H_MATRIX])


def _h_pow(k: int) -> ExactMatrix:
    out = ExactMatrix(1, 1, [[ring.ONE]])
    for _ in range(k):
        out = ring.tensor(out, _h_exact())
    return out


def gen_matrix(g: Gen) -> ExactMatrix:
    if g.kind == "z":
        return _z_matrix(g.n, g.m, g.phase)
    if g.kind == "x":
        return ring.matmul(
            ring.matmul(_h_pow(g.m), _z_matrix(g.n, g.m, g.phase)), _h_pow(g.n)
        )
    if g.kind == "h":
        return _h_exact()
    if g.kind == "star":
        return ExactMatrix(1, 1, [[ring.HALF]])
    if g.kind == "wire":
        return ring.identity(2)
    if g.kind == "swap":
        mat = ring.zero_matrix(4, 4)
        for a in range(2):
            for b in range(2):
                mat.data[b * 2 + a][a * 2 + b] = ring.ONE
        return mat
    if g.kind == "cup":
        return ExactMatrix(1, 4, [[ring.ONE, ring.ZERO, ring.ZERO, ring.ONE]])
    if g.kind == "cap":
        return ExactMatrix(4, 1, [[ring.ONE], [ring.ZERO], [ring.ZERO], [ring.ONE]])
    if g.kind == "empty":
        return ExactMatrix(1, 1, [[ring.ONE]])
    raise ValueError(f"unknown generator {g.kind!r}")


def interpret_compositional(e: Expr) -> ExactMatrix:
    """Evaluate an expression tree by the compositional clauses alone."""
    expr_arity(e)  # raise early on ill-typed trees
    if isinstance(e, Gen):
        return gen_matrix(e)
    if isinstance(e, Tens):
        return ring.tensor(interpret_compositional(e.left), interpret_compositional(e.right))
    return ring.matmul(interpret_compositional(e.after), interpret_compositional(e.before))


def expr_diagram(e: Expr) -> Diagram:
    """The open-graph form of an expression tree (for oracle cross-checks)."""
    if isinstance(e, Gen):
        if e.kind == "z":
            return dg.z_spider(e.n, e.m, e.phase)
        if e.kind == "x":
            return dg.x_spider(e.n, e.m, e.phase)
        return {
            "h": dg.hadamard,
            "star": dg.star,
            "wire": dg.wire,
            "swap": dg.swap,
            "cup": dg.cup,
            "cap": dg.cap,
            "empty": dg.empty,
        }[e.kind]()
    if isinstance(e, Tens):
        return dg.tensor(expr_diagram(e.left), expr_diagram(e.right))
    return dg.compose(expr_diagram(e.after), expr_diagram(e.before))
