import random

import pytest

from zxcalc import diagram as dg
from zxcalc import ring
from zxcalc.diagram import HBox, Star, XSpider, ZSpider
from zxcalc.ring import ExactMatrix, Phase, RingElem, matmul, tensor
from zxcalc.semantics import (
    Comp,
    Gen,
    Tens,
    expr_diagram,
    interpret,
    interpret_compositional,
    node_tensor,
)

from conftest import random_diagram, random_expr


H = interpret(dg.hadamard())


def hpow(k):
    out = ExactMatrix(1, 1, [[ring.ONE]])
    for _ in range(k):
        out = tensor(out, H)
    return out


def transpose(m):
    return ExactMatrix(
        m.cols, m.rows, [[m.data[r][c] for r in range(m.rows)] for c in range(m.cols)]
    )


def test_hadamard_matrix():
    assert H.data[0][0] == ring.INV_SQRT2
    assert H.data[1][1] == -ring.INV_SQRT2
    assert matmul(H, H) == ring.identity(2)


def test_star_and_empty():
    assert interpret(dg.star()).data[0][0] == ring.HALF
    assert interpret(dg.empty()).data[0][0] == ring.ONE


def test_z_spider_diag():
    m = interpret(dg.z_spider(1, 1, 1))
    assert m.data[0][0] == ring.ONE and m.data[1][1] == ring.I_UNIT
    assert m.data[0][1] == ring.ZERO and m.data[1][0] == ring.ZERO


def test_x_state_half_turn_quarter():
    # sqrt2 e^{i pi/4} (cos(pi/4), -i sin(pi/4)) = (w, -w^3)
    m = interpret(dg.x_spider(0, 1, 1))
    assert m.data[0][0] == ring.OMEGA
    assert m.data[1][0] == RingElem(0, 0, 0, -1)


def test_node_tensor_degree_errors():
    with pytest.raises(ValueError, match="degree 2"):
        node_tensor(HBox(), 3)
    with pytest.raises(ValueError, match="degree 0"):
        node_tensor(Star(), 1)


def test_cap_cup_vectors():
    cap = interpret(dg.cap())
    assert [e for row in cap.data for e in row] == [
        ring.ONE,
        ring.ZERO,
        ring.ZERO,
        ring.ONE,
    ]
    assert interpret(dg.cup()) == transpose(cap)


def test_inverse_gadget_value():
    # two phase-free green spiders joined by three H wires evaluate to 1/sqrt2
    from zxcalc.diagram import Diagram

    d = Diagram()
    a = d.add_node(ZSpider(Phase(0)))
    b = d.add_node(ZSpider(Phase(0)))
    for _ in range(3):
        h = d.add_node(HBox())
        d.add_edge(("n", a), ("n", h))
        d.add_edge(("n", h), ("n", b))
    assert interpret(d).data[0][0] == ring.INV_SQRT2
    # and the doubled gadget gives 1/2, the star scalar
    assert interpret(dg.tensor(d, d)).data[0][0] == ring.HALF


def test_compositional_oracle_basics():
    assert interpret_compositional(Comp(Gen("h"), Gen("h"))) == ring.identity(2)
    cap = interpret_compositional(Gen("cap"))
    assert [e for row in cap.data for e in row] == [
        ring.ONE,
        ring.ZERO,
        ring.ZERO,
        ring.ONE,
    ]
    assert interpret_compositional(Gen("empty")).data[0][0] == ring.ONE


def test_oracle_agreement_1000_random_expressions():
    rng = random.Random(11)
    for _ in range(1000):
        e = random_expr(rng, 3)
        d = expr_diagram(e)
        d.validate()
        assert interpret(d) == interpret_compositional(e)


def test_flip_is_transpose_and_color_swap_is_h_conjugation():
    rng = random.Random(12)
    for _ in range(500):
        d = random_diagram(rng, 6)
        m = interpret(d)
        assert interpret(dg.flip(d)) == transpose(m)
        want = matmul(matmul(hpow(len(d.outputs)), m), hpow(len(d.inputs)))
        assert interpret(dg.color_swap(d)) == want


def test_contraction_order_independent():
    # interpret twice under different node id orders (relabelled copies)
    from zxcalc.dsl import compact

    rng = random.Random(13)
    for _ in range(100):
        d = random_diagram(rng, 6)
        assert interpret(d) == interpret(compact(d))
        assert interpret(d) == interpret(dg.tensor(d, dg.empty()))


def test_tensor_compose_functorial():
    rng = random.Random(14)
    for _ in range(100):
        a, b = random_diagram(rng, 4), random_diagram(rng, 4)
        assert interpret(dg.tensor(a, b)) == tensor(interpret(a), interpret(b))
        g = dg.z_spider(len(a.outputs), rng.randint(0, 2), rng.randint(0, 3))
        assert interpret(dg.compose(g, a)) == matmul(interpret(g), interpret(a))
