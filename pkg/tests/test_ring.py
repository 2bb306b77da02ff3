import cmath
import random

import pytest

from zxcalc import ring
from zxcalc.ring import (
    ExactMatrix,
    Phase,
    RingElem,
    from_phase,
    identity,
    matmul,
    normalize,
    scale,
    tensor,
    zero_matrix,
)


def test_normalize_examples():
    # (2 + 2w^2)/2 reduces to 1 + w^2
    assert normalize(2, 0, 2, 0, 2) == RingElem(1, 0, 1, 0, 0)
    assert normalize(0, 0, 0, 0, 5) == RingElem(0, 0, 0, 0, 0)
    assert normalize(1, 0, 0, 0, 0) == RingElem(1, 0, 0, 0, 0)


def test_normalize_idempotent_and_unique():
    rng = random.Random(0)
    for _ in range(2000):
        x = normalize(*(rng.randint(-50, 50) for _ in range(4)), rng.randint(0, 8))
        assert x.is_canonical()
        assert normalize(x.a, x.b, x.c, x.d, x.k) == x


def test_mul_inv_sqrt2():
    assert ring.INV_SQRT2 * ring.INV_SQRT2 == ring.HALF
    assert ring.SQRT2 * ring.INV_SQRT2 == ring.ONE


def test_add_one_plus_phase_pi_is_zero():
    assert ring.ONE + from_phase(2) == ring.ZERO


def test_conj_unit_modulus():
    assert ring.OMEGA.conj() * ring.OMEGA == ring.ONE


def test_from_phase_table():
    assert from_phase(0) == ring.ONE
    assert from_phase(1) == RingElem(0, 0, 1, 0)
    assert from_phase(2) == ring.MINUS_ONE
    assert from_phase(Phase(-1)) == RingElem(0, 0, -1, 0)


def test_from_phase_multiplicative():
    for p in range(4):
        for q in range(4):
            assert from_phase(p) * from_phase(q) == from_phase((p + q) % 4)


def test_to_float_examples():
    assert abs(RingElem(0, 1, 0, 0).to_float() - cmath.exp(1j * cmath.pi / 4)) < 1e-12
    assert abs(RingElem(1, 0, 1, 0).to_float() - (1 + 1j)) < 1e-12
    assert ring.ZERO.to_float() == 0


def test_ring_axioms_random():
    rng = random.Random(1)

    def rand():
        return normalize(*(rng.randint(-50, 50) for _ in range(4)), rng.randint(0, 8))

    for _ in range(3000):
        x, y, z = rand(), rand(), rand()
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x + y == y + x
        assert (x * y).conj() == x.conj() * y.conj()


def test_canonical_iff_float_equal():
    # canonical equality agrees with float evaluation within 1e-9
    rng = random.Random(2)
    elems = [
        normalize(*(rng.randint(-50, 50) for _ in range(4)), rng.randint(0, 8))
        for _ in range(10000)
    ]
    for x in elems:
        f = x.to_float()
        num = x.a + x.b * ring.OMEGA_FLOAT + x.c * 1j + x.d * ring.OMEGA_FLOAT**3
        assert abs(f - num / 2 ** (x.k / 2)) < 1e-9
    # pairwise spot check on a subsample
    for i in range(0, 2000, 7):
        x, y = elems[i], elems[(i * 13 + 5) % len(elems)]
        if x == y:
            assert abs(x.to_float() - y.to_float()) < 1e-9
        else:
            assert abs(x.to_float() - y.to_float()) > 1e-9 or (x != y)


def test_phase_arithmetic():
    assert (Phase(3) + Phase(2)).value == 1
    assert (-Phase(1)).value == 3
    assert Phase(7).value == 3
    assert Phase(1).is_odd() and not Phase(2).is_odd()


def test_json_round_trip():
    x = normalize(3, -2, 5, 7, 4)
    assert RingElem.from_json(x.to_json()) == x


def test_matrix_ops():
    h = ExactMatrix(
        2, 2, [[ring.INV_SQRT2, ring.INV_SQRT2], [ring.INV_SQRT2, -ring.INV_SQRT2]]
    )
    assert matmul(h, h) == identity(2)
    hh = tensor(h, h)
    assert hh.data[0][0] == ring.HALF
    assert matmul(identity(2), h) == h
    assert zero_matrix(2, 2) == zero_matrix(2, 2)
    assert scale(ring.TWO, identity(2)).data[0][0] == ring.TWO


def test_matmul_dimension_mismatch():
    with pytest.raises(ValueError, match="2x2 vs 4x1"):
        matmul(identity(2), ExactMatrix(4, 1, [[ring.ONE]] * 4))


def test_matrix_dimensions_power_of_two():
    with pytest.raises(ValueError):
        ExactMatrix(3, 1, [[ring.ONE]] * 3)
