"""Triangular fuzzy numbers: membership, function-principle arithmetic and
graded mean integration (GMIR) defuzzification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from fuzzyeoq.errors import FuzzyOrderingError

BinaryOp = Literal["add", "sub", "mul", "div"]


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Immutable triple ``(low, peak, high)`` with ``low <= peak <= high``.

    A degenerate triple ``(d, d, d)`` stands for the crisp value ``d``.
    """

    low: float
    peak: float
    high: float

    def __post_init__(self):
        if not self.low <= self.peak:
            raise FuzzyOrderingError(
                f"low <= peak violated: low={self.low!r}, peak={self.peak!r}"
            )
        if not self.peak <= self.high:
            raise FuzzyOrderingError(
                f"peak <= high violated: peak={self.peak!r}, high={self.high!r}"
            )

    @classmethod
    def crisp(cls, value: float) -> TriangularFuzzyNumber:
        return cls(value, value, value)

    @classmethod
    def from_list(cls, values: Sequence[float]) -> TriangularFuzzyNumber:
        if len(values) != 3:
            raise FuzzyOrderingError(
                f"a triangular fuzzy number needs exactly 3 values, got {len(values)}"
            )
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def to_list(self) -> list[float]:
        return [self.low, self.peak, self.high]

    @property
    def is_crisp(self) -> bool:
        return self.low == self.peak == self.high

    def __iter__(self):
        return iter((self.low, self.peak, self.high))

    def __add__(self, other):
        return fp_binary("add", self, other)

    def __sub__(self, other):
        return fp_binary("sub", self, other)

    def __mul__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return fp_binary("mul", self, other)
        return fp_scale(self, other)

    def __rmul__(self, k):
        return fp_scale(self, k)

    def __truediv__(self, other):
        return fp_binary("div", self, other)


def tfn_new(low: float, peak: float, high: float) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(low, peak, high)


def membership(v: TriangularFuzzyNumber, x: float) -> float:
    """Membership grade of ``x`` in ``v``.

    Ramps linearly up on [low, peak] and down on [peak, high]. A collapsed
    side (low == peak or peak == high) has grade 1 at the shared point.
    """
    if x < v.low or x > v.high:
        return 0.0
    if x == v.peak:
        return 1.0
    if x < v.peak:
        return (x - v.low) / (v.peak - v.low)
    return (v.high - x) / (v.high - v.peak)


def gmir(v: TriangularFuzzyNumber) -> float:
    """Graded mean integration representation, ``(low + 4 peak + high) / 6``."""
    return (v.low + 4.0 * v.peak + v.high) / 6.0


def fp_scale(v: TriangularFuzzyNumber, k: float) -> TriangularFuzzyNumber:
    if k >= 0:
        return TriangularFuzzyNumber(k * v.low, k * v.peak, k * v.high)
    return TriangularFuzzyNumber(k * v.high, k * v.peak, k * v.low)


def fp_binary(
    kind: BinaryOp, a: TriangularFuzzyNumber, b: TriangularFuzzyNumber
) -> TriangularFuzzyNumber:
    """Function-principle arithmetic on two triples.

    ``mul`` and ``div`` are only defined for positive operands (``low > 0``).
    ``div`` is componentwise and can produce an unordered triple; that raises
    rather than being silently sorted.
    """
    if kind == "add":
        return TriangularFuzzyNumber(a.low + b.low, a.peak + b.peak, a.high + b.high)
    if kind == "sub":
        return TriangularFuzzyNumber(a.low - b.high, a.peak - b.peak, a.high - b.low)
    if kind not in ("mul", "div"):
        raise ValueError(f"unknown fuzzy operation {kind!r}")
    for name, operand in (("left", a), ("right", b)):
        if operand.low <= 0:
            raise ValueError(
                f"{kind} requires positive triangular fuzzy numbers; "
                f"{name} operand has low={operand.low!r}"
            )
    if kind == "mul":
        return TriangularFuzzyNumber(a.low * b.low, a.peak * b.peak, a.high * b.high)
    try:
        return TriangularFuzzyNumber(a.low / b.low, a.peak / b.peak, a.high / b.high)
    except FuzzyOrderingError as exc:
        raise FuzzyOrderingError(f"non-TFN result from componentwise div: {exc}") from None
