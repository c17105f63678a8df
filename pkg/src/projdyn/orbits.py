"""Forward iteration, cycle detection and primitive-period certificates."""
from __future__ import annotations

from dataclasses import dataclass

from .core import PolynomialMap, ProjectivePoint, evaluate, point_to_json
from .errors import DimensionMismatch, HeightBoundExceeded, NotPeriodic, PeriodDivides

DEFAULT_MAX_BITS = 10**6


@dataclass(frozen=True)
class PeriodicReturn:
    period: int


@dataclass(frozen=True)
class PreperiodicCycle:
    tail: int
    cycle: int


@dataclass(frozen=True)
class Exhausted:
    iterations: int
    reason: str = "max_iters"  # or "height"


@dataclass(frozen=True)
class OrbitRecord:
    start: ProjectivePoint
    points: tuple
    outcome: object


@dataclass(frozen=True)
class PeriodCertificate:
    period: int
    orbit: tuple

    def to_json(self) -> dict:
        return {"period": self.period, "orbit": [point_to_json(p) for p in self.orbit]}


def _step(phi, point, step, max_bits):
    image = evaluate(phi, point)
    if max_bits is not None:
        bits = image.height_bits()
        if bits > max_bits:
            raise HeightBoundExceeded(step, bits, max_bits)
    return image


def _check(phi, point):
    if phi.dimension != point.dimension:
        raise DimensionMismatch(
            f"map on P^{phi.dimension} applied to a point of P^{point.dimension}")


def iterate(phi: PolynomialMap, point: ProjectivePoint, n: int,
            max_bits: int | None = DEFAULT_MAX_BITS) -> ProjectivePoint:
    if n < 1:
        raise ValueError("n must be a positive integer")
    _check(phi, point)
    for step in range(1, n + 1):
        point = _step(phi, point, step, max_bits)
    return point


def detect_orbit(phi: PolynomialMap, point: ProjectivePoint, max_iters: int = 500,
                 max_bits: int | None = DEFAULT_MAX_BITS) -> OrbitRecord:
    """Iterate until the start recurs, an earlier point recurs, or the budget runs out.

    The first return to the start is the primitive period, so no divisor check
    is needed.  Runaway heights end the search as ``Exhausted(k, "height")``.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    _check(phi, point)
    points = [point]
    index = {point: 0}
    current = point
    for step in range(1, max_iters + 1):
        try:
            current = _step(phi, current, step, max_bits)
        except HeightBoundExceeded:
            return OrbitRecord(point, tuple(points), Exhausted(step - 1, "height"))
        seen = index.get(current)
        if seen == 0:
            return OrbitRecord(point, tuple(points), PeriodicReturn(step))
        if seen is not None:
            return OrbitRecord(point, tuple(points), PreperiodicCycle(seen, step - seen))
        index[current] = step
        points.append(current)
    return OrbitRecord(point, tuple(points), Exhausted(max_iters))


def assert_primitive_period(phi: PolynomialMap, point: ProjectivePoint, n: int,
                            max_bits: int | None = DEFAULT_MAX_BITS) -> PeriodCertificate:
    """Certify that ``point`` has primitive period exactly ``n``.

    Raises NotPeriodic when phi^n(P) != P and PeriodDivides(k) for the least
    k < n with phi^k(P) == P.
    """
    if n < 1:
        raise ValueError("period must be a positive integer")
    _check(phi, point)
    orbit = [point]
    current = point
    first_return = None
    for step in range(1, n + 1):
        current = _step(phi, current, step, max_bits)
        if current == point and first_return is None:
            first_return = step
        if step < n:
            orbit.append(current)
    if current != point:
        raise NotPeriodic(n)
    if first_return < n:
        raise PeriodDivides(first_return, n)
    return PeriodCertificate(n, tuple(orbit))
