"""Exact arithmetic in Z[omega, 1/sqrt(2)] with omega = exp(i*pi/4).

Every scalar produced by stabilizer diagrams lives in this ring, so matrix
equality is decided exactly; floats appear only in the `to_float` cross-check.

An element is (a + b*omega + c*omega^2 + d*omega^3) / sqrt(2)^k with integer
coefficients (arbitrary precision) and k >= 0.  omega^4 = -1 is the only
reduction identity; the canonical form has k = 0 or a numerator not divisible
by sqrt(2).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

OMEGA_FLOAT = cmath.exp(1j * cmath.pi / 4)


@dataclass(frozen=True)
class Phase:
    """An angle that is a multiple of pi/2, stored in units of pi/2 mod 4."""

    value: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % 4)

    def __add__(self, other: Phase | int) -> Phase:
        return Phase(self.value + (other.value if isinstance(other, Phase) else other))

    def __neg__(self) -> Phase:
        return Phase(-self.value)

    def __sub__(self, other: Phase | int) -> Phase:
        return self + (-other if isinstance(other, int) else -other.value)

    def is_odd(self) -> bool:
        """True for +-pi/2, i.e. the phases whose doubled encoding is linked."""
        return self.value % 2 == 1

    def __str__(self) -> str:
        return str(self.value)


def _div_sqrt2(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int] | None:
    """One exact division of the numerator by sqrt(2), or None if not divisible.

    sqrt(2) = omega - omega^3, so x/sqrt(2) = ((b-d) + (a+c)w + (b+d)w^2 + (c-a)w^3)/2.
    """
    e0, e1, e2, e3 = b - d, a + c, b + d, c - a
    if e0 % 2 or e1 % 2 or e2 % 2 or e3 % 2:
        return None
    return e0 // 2, e1 // 2, e2 // 2, e3 // 2


@dataclass(frozen=True)
class RingElem:
    a: int
    b: int
    c: int
    d: int
    k: int = 0

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"negative denominator exponent: {self.k}")

    # -- canonical form -----------------------------------------------------

    def is_canonical(self) -> bool:
        if (self.a, self.b, self.c, self.d) == (0, 0, 0, 0):
            return self.k == 0
        return self.k == 0 or _div_sqrt2(self.a, self.b, self.c, self.d) is None

    def is_zero(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (0, 0, 0, 0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: RingElem | int) -> RingElem:
        other = _coerce(other)
        x, y = self, other
        # align denominators by multiplying the smaller-k numerator by sqrt(2)
        while x.k < y.k:
            x = RingElem(*_mul_sqrt2(x.a, x.b, x.c, x.d), x.k + 1)
        while y.k < x.k:
            y = RingElem(*_mul_sqrt2(y.a, y.b, y.c, y.d), y.k + 1)
        return normalize(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, x.k)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-_coerce(other))

    def __rsub__(self, other: RingElem | int) -> RingElem:
        return _coerce(other) + (-self)

    def __mul__(self, other: RingElem | int) -> RingElem:
        o = _coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return normalize(
            a1 * a2 - b1 * d2 - c1 * c2 - d1 * b2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + b1 * b2 + c1 * a2 - d1 * d2,
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
            self.k + o.k,
        )

    __rmul__ = __mul__

    def conj(self) -> RingElem:
        """Complex conjugate: omega -> omega^-1 = -omega^3."""
        return RingElem(self.a, -self.d, -self.c, -self.b, self.k)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conversions ----------------------------------------------------------

    def to_float(self) -> complex:
        num = self.a + self.b * OMEGA_FLOAT + self.c * 1j + self.d * OMEGA_FLOAT**3
        return num / (2 ** (self.k / 2))

    def to_json(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "k": self.k}

    @staticmethod
    def from_json(obj: dict[str, int]) -> RingElem:
        return normalize(obj["a"], obj["b"], obj["c"], obj["d"], obj["k"])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for coef, sym in zip((self.a, self.b, self.c, self.d), ("", "w", "w2", "w3")):
            if coef:
                terms.append(f"{coef}{sym}" if sym else str(coef))
        s = "+".join(terms).replace("+-", "-")
        return f"({s})/r2^{self.k}" if self.k else f"({s})" if len(terms) > 1 else s


def _coerce(x: RingElem | int) -> RingElem:
    if isinstance(x, RingElem):
        return x
    if isinstance(x, int):
        return RingElem(x, 0, 0, 0, 0)
    return NotImplemented


def _mul_sqrt2(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    return b - d, a + c, b + d, c - a


def normalize(a: int, b: int, c: int, d: int, k: int) -> RingElem:
    """Unique canonical representative of (a + bw + cw^2 + dw^3)/sqrt(2)^k."""
    if k < 0:
        raise ValueError(f"negative denominator exponent: {k}")
    if (a, b, c, d) == (0, 0, 0, 0):
        return RingElem(0, 0, 0, 0, 0)
    while k > 0:
        quo = _div_sqrt2(a, b, c, d)
        if quo is None:
            break
        a, b, c, d = quo
        k -= 1
    return RingElem(a, b, c, d, k)


ZERO = RingElem(0, 0, 0, 0)
ONE = RingElem(1, 0, 0, 0)
TWO = RingElem(2, 0, 0, 0)
MINUS_ONE = RingElem(-1, 0, 0, 0)
I_UNIT = RingElem(0, 0, 1, 0)
OMEGA = RingElem(0, 1, 0, 0)
SQRT2 = RingElem(0, 1, 0, -1)
INV_SQRT2 = normalize(0, 1, 0, -1, 2)  # reduces to (1,0,0,0)/sqrt2
HALF = RingElem(1, 0, 0, 0, 2)

_PHASE_TABLE = (ONE, I_UNIT, MINUS_ONE, RingElem(0, 0, -1, 0))


def from_phase(p: Phase | int) -> RingElem:
    """exp(i * p * pi/2) as a ring element (i = omega^2)."""
    v = p.value if isinstance(p, Phase) else p % 4
    return _PHASE_TABLE[v]


# -- exact matrices ---------------------------------------------------------


class ExactMatrix:
    """Dense matrix of RingElem; dimensions are powers of two."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[RingElem]]):
        if rows & (rows - 1) or cols & (cols - 1) or rows < 1 or cols < 1:
            raise ValueError(f"dimensions must be powers of two, got {rows}x{cols}")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("data shape does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.data = data

    def __getitem__(self, idx: tuple[int, int]) -> RingElem:
        return self.data[idx[0]][idx[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):  # pragma: no cover - matrices are not dict keys
        return NotImplemented

    def to_json(self) -> list[list[dict[str, int]]]:
        return [[e.to_json() for e in row] for row in self.data]

    def to_complex(self) -> list[list[complex]]:
        return [[e.to_float() for e in row] for row in self.data]

    def __str__(self) -> str:
        return "\n".join("  ".join(str(e) for e in row) for row in self.data)


def zero_matrix(rows: int, cols: int) -> ExactMatrix:
    return ExactMatrix(rows, cols, [[ZERO] * cols for _ in range(rows)])


def identity(n: int) -> ExactMatrix:
    m = zero_matrix(n, n)
    for i in range(n):
        m.data[i][i] = ONE
    return m


def matmul(m: ExactMatrix, n: ExactMatrix) -> ExactMatrix:
    if m.cols != n.rows:
        raise ValueError(
            f"inner dimensions differ: {m.rows}x{m.cols} vs {n.rows}x{n.cols}"
        )
    out = zero_matrix(m.rows, n.cols)
    for i in range(m.rows):
        for j in range(n.cols):
            acc = ZERO
            for t in range(m.cols):
                acc = acc + m.data[i][t] * n.data[t][j]
            out.data[i][j] = acc
    return out


def tensor(m: ExactMatrix, n: ExactMatrix) -> ExactMatrix:
    out = zero_matrix(m.rows * n.rows, m.cols * n.cols)
    for i in range(m.rows):
        for j in range(m.cols):
            mij = m.data[i][j]
            for p in range(n.rows):
                for q in range(n.cols):
                    out.data[i * n.rows + p][j * n.cols + q] = mij * n.data[p][q]
    return out


def scale(s: RingElem, m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(m.rows, m.cols, [[s * e for e in row] for row in m.data])


def eq(m: ExactMatrix, n: ExactMatrix) -> bool:
    return m == n
