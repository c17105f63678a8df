"""Splicing two polynomial maps into one on the product of their affine charts.

For phi1 on P^N and phi2 on P^M the spliced map on P^(N+M) acts as phi1 on
the first N affine coordinates and as phi2 on the next M, sharing the last
variable.  A point built from an n-periodic and an m-periodic point then has
primitive period lcm(n, m).
"""
from __future__ import annotations

from math import lcm

from .core import PolynomialMap, ProjectivePoint
from .errors import DegreeMismatch, DimensionMismatch, NotInChart


def product_map(phi1: PolynomialMap, phi2: PolynomialMap) -> PolynomialMap:
    if phi1.degree != phi2.degree:
        raise DegreeMismatch(f"degrees {phi1.degree} and {phi2.degree} differ")
    N, M = phi1.dimension, phi2.dimension
    total = N + M
    left = list(range(N)) + [total]
    right = [N + v for v in range(M)] + [total]
    forms = [f.relabel(total, left) for f in phi1.coordinates[:-1]]
    forms += [f.relabel(total, right) for f in phi2.coordinates[:-1]]
    return PolynomialMap.from_forms(forms)


def product_point(p1: ProjectivePoint, p2: ProjectivePoint) -> ProjectivePoint:
    if p1[-1] == 0 or p2[-1] == 0:
        raise NotInChart("both points must have last coordinate 1")
    return ProjectivePoint(tuple(p1.coords[:-1]) + tuple(p2.coords[:-1]) + (1,))


def combined_period(n: int, m: int) -> int:
    if n < 1 or m < 1:
        raise ValueError("periods must be positive")
    return lcm(n, m)


def split_map(psi: PolynomialMap, N: int) -> tuple:
    """Undo :func:`product_map`: recover the factors on P^N and P^(dim - N).

    Raises DimensionMismatch when a coordinate mixes variables of both blocks.
    """
    total = psi.dimension
    M = total - N
    if not 1 <= N < total:
        raise DimensionMismatch(f"cannot split P^{total} at {N}")
    left_vars = set(range(N)) | {total}
    right_vars = set(range(N, total)) | {total}
    left_back = {v: v for v in range(N)} | {total: N}
    right_back = {N + v: v for v in range(M)} | {total: M}

    def restrict(form, allowed, back, dim):
        mapping = [back.get(v, 0) for v in range(total + 1)]
        for mono, _ in form.terms:
            if any(e and v not in allowed for v, e in enumerate(mono)):
                raise DimensionMismatch("coordinate form mixes the two blocks")
        return form.relabel(dim, mapping)

    phi1 = [restrict(f, left_vars, left_back, N) for f in psi.coordinates[:N]]
    phi2 = [restrict(f, right_vars, right_back, M) for f in psi.coordinates[N:total]]
    return PolynomialMap.from_forms(phi1), PolynomialMap.from_forms(phi2)
