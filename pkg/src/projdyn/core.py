"""Exact rational forms, polynomial maps and projective points.

Every number is a :class:`fractions.Fraction`; nothing here ever rounds.

Monomials are exponent tuples ``(e_0, ..., e_N)``.  The canonical order is
graded reverse lexicographic with ``x_N > ... > x_0``; for monomials of one
degree that is exactly ascending order of the exponent tuples, so
``sorted(monomials)`` lists them largest first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .errors import AllZero, DimensionMismatch, IndeterminatePoint, InvalidMap

Monomial = tuple  # tuple[int, ...]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def format_fraction(q: Fraction) -> str:
    return str(q)


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given degree, in canonical (descending) order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort()
    return out


def monomial_str(mono: Monomial, names: Sequence[str] | None = None) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if e == 0:
            continue
        name = names[idx] if names else f"x{idx}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class HomogeneousForm:
    """Degree-``degree`` form in ``dimension + 1`` variables, stored sparsely."""

    dimension: int
    degree: int
    terms: tuple  # ((monomial, Fraction), ...) in canonical order, no zeros

    def __post_init__(self):
        seen = set()
        for mono, coeff in self.terms:
            if len(mono) != self.dimension + 1:
                raise DimensionMismatch(
                    f"monomial {mono} has {len(mono)} slots, expected {self.dimension + 1}")
            if sum(mono) != self.degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} is not of degree {self.degree}")
            if coeff == 0:
                raise ValueError("zero coefficients must not be stored")
            if mono in seen:
                raise ValueError(f"duplicate monomial {mono}")
            seen.add(mono)

    @classmethod
    def from_terms(cls, dimension: int, degree: int, terms) -> "HomogeneousForm":
        """Build from a mapping or iterable of (monomial, coefficient); merges repeats."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            acc[mono] = acc.get(mono, Fraction(0)) + to_fraction(coeff)
        clean = tuple(sorted((m, c) for m, c in acc.items() if c != 0))
        return cls(dimension, degree, clean)

    @classmethod
    def zero(cls, dimension: int, degree: int) -> "HomogeneousForm":
        return cls(dimension, degree, ())

    @classmethod
    def power(cls, dimension: int, var: int, degree: int) -> "HomogeneousForm":
        mono = [0] * (dimension + 1)
        mono[var] = degree
        return cls(dimension, degree, ((tuple(mono), Fraction(1)),))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return Fraction(0)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor) -> "HomogeneousForm":
        factor = to_fraction(factor)
        if factor == 0:
            return HomogeneousForm.zero(self.dimension, self.degree)
        return HomogeneousForm(self.dimension, self.degree,
                               tuple((m, c * factor) for m, c in self.terms))

    def times_monomial(self, mono: Monomial) -> "HomogeneousForm":
        if len(mono) != self.dimension + 1:
            raise DimensionMismatch("multiplier has the wrong number of variables")
        terms = tuple(sorted((tuple(a + b for a, b in zip(m, mono)), c)
                             for m, c in self.terms))
        return HomogeneousForm(self.dimension, self.degree + sum(mono), terms)

    def relabel(self, new_dimension: int, mapping: Sequence[int]) -> "HomogeneousForm":
        """Send variable ``x_v`` to ``x_{mapping[v]}`` inside a larger ambient space."""
        terms = []
        for mono, c in self.terms:
            e = [0] * (new_dimension + 1)
            for v, power in enumerate(mono):
                e[mapping[v]] += power
            terms.append((tuple(e), c))
        return HomogeneousForm.from_terms(new_dimension, self.degree, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.terms:
            body = monomial_str(mono)
            if c == 1:
                s = body
            elif c == -1:
                s = "-" + body
            else:
                s = f"{c}*{body}"
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")


def eval_form(form: HomogeneousForm, coords: Sequence) -> Fraction:
    if len(coords) != form.dimension + 1:
        raise DimensionMismatch(
            f"form in {form.dimension + 1} variables evaluated at {len(coords)} coordinates")
    total = Fraction(0)
    for mono, c in form.terms:
        term = c
        for x, e in zip(coords, mono):
            if e:
                term *= x ** e
                if not term:
                    break
        total += term
    return total


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^N, always stored with its last nonzero coordinate equal to 1.

    ``ProjectivePoint([2, 4])`` normalizes on construction to ``(1/2, 1)``.
    """

    coords: tuple

    def __post_init__(self):
        raw = tuple(to_fraction(x) for x in self.coords)
        for x in reversed(raw):
            if x != 0:
                pivot = x
                break
        else:
            raise AllZero("a projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", tuple(x / pivot for x in raw))

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, idx):
        return self.coords[idx]

    def height_bits(self) -> int:
        return max(max(abs(x.numerator).bit_length(), x.denominator.bit_length())
                   for x in self.coords)

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.coords) + "]"


def normalize(raw: Sequence) -> ProjectivePoint:
    return ProjectivePoint(tuple(raw))


@dataclass(frozen=True)
class PolynomialMap:
    """``[phi_0, ..., phi_{N-1}, x_N^d]`` on P^N."""

    dimension: int
    degree: int
    coordinates: tuple

    def __post_init__(self):
        coords = tuple(self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if len(coords) != self.dimension + 1:
            raise InvalidMap(f"expected {self.dimension + 1} coordinate forms, got {len(coords)}")
        for f in coords:
            if f.dimension != self.dimension or f.degree != self.degree:
                raise InvalidMap("coordinate form has the wrong dimension or degree")
        if coords[-1] != HomogeneousForm.power(self.dimension, self.dimension, self.degree):
            raise InvalidMap("last coordinate must be exactly x_N^d")

    @classmethod
    def from_forms(cls, forms: Sequence[HomogeneousForm]) -> "PolynomialMap":
        """Wrap ``N`` forms, appending ``x_N^d`` as the last coordinate."""
        forms = list(forms)
        if not forms:
            raise InvalidMap("need at least one form")
        n, d = forms[0].dimension, forms[0].degree
        if len(forms) == n + 1:
            return cls(n, d, tuple(forms))
        return cls(n, d, tuple(forms) + (HomogeneousForm.power(n, n, d),))

    @classmethod
    def from_coefficients(cls, dimension: int, coeffs: Mapping) -> "PolynomialMap":
        """Quadratic map from ``{(i, j, k): c_i(j, k)}`` with ``j <= k``; coordinate N fixed."""
        n = dimension
        buckets: list[list] = [[] for _ in range(n)]
        for (i, j, k), c in coeffs.items():
            if not (0 <= i < n and 0 <= j <= k <= n):
                raise InvalidMap(f"bad coefficient index {(i, j, k)}")
            e = [0] * (n + 1)
            e[j] += 1
            e[k] += 1
            buckets[i].append((tuple(e), c))
        forms = [HomogeneousForm.from_terms(n, 2, b) for b in buckets]
        return cls.from_forms(forms)

    def coefficients(self) -> dict:
        """Inverse of :meth:`from_coefficients` for quadratic maps (nonzero entries only)."""
        if self.degree != 2:
            raise InvalidMap("coefficient indexing c_i(j,k) is defined for quadratic maps")
        out = {}
        for i, f in enumerate(self.coordinates[:-1]):
            for mono, c in f.terms:
                idx = [v for v, e in enumerate(mono) for _ in range(e)]
                out[(i, idx[0], idx[1])] = c
        return out

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.coordinates) + "]"


def evaluate(phi: PolynomialMap, point: ProjectivePoint) -> ProjectivePoint:
    if point.dimension != phi.dimension:
        raise DimensionMismatch(
            f"map on P^{phi.dimension} applied to a point of P^{point.dimension}")
    values = [eval_form(f, point.coords) for f in phi.coordinates]
    if not any(values):
        raise IndeterminatePoint(f"every coordinate form vanishes at {point}")
    return ProjectivePoint(tuple(values))


@dataclass(frozen=True)
class AffineMapRecord:
    """Dehomogenized map: N polynomials in x_0..x_{N-1} (as exponent->coefficient dicts)."""

    dimension: int
    degree: int
    polynomials: tuple

    def evaluate(self, xs: Sequence) -> tuple:
        xs = [to_fraction(x) for x in xs]
        out = []
        for poly in self.polynomials:
            total = Fraction(0)
            for mono, c in poly.items():
                term = c
                for x, e in zip(xs, mono):
                    term *= x ** e
                total += term
            out.append(total)
        return tuple(out)


def dehomogenize(phi: PolynomialMap) -> AffineMapRecord:
    polys = []
    for f in phi.coordinates[:-1]:
        p: dict = {}
        for mono, c in f.terms:
            key = mono[:-1]
            p[key] = p.get(key, Fraction(0)) + c
        polys.append({m: c for m, c in sorted(p.items()) if c != 0})
    return AffineMapRecord(phi.dimension, phi.degree, tuple(polys))


def rehomogenize(record: AffineMapRecord) -> PolynomialMap:
    n, d = record.dimension, record.degree
    forms = []
    for poly in record.polynomials:
        terms = []
        for mono, c in poly.items():
            if sum(mono) > d:
                raise InvalidMap("affine polynomial exceeds the recorded degree")
            terms.append((tuple(mono) + (d - sum(mono),), c))
        forms.append(HomogeneousForm.from_terms(n, d, terms))
    return PolynomialMap.from_forms(forms)


# -- serialization ----------------------------------------------------------

def form_to_json(form: HomogeneousForm) -> list:
    return [{"exponents": list(m), "coefficient": format_fraction(c)} for m, c in form.terms]


def map_to_json(phi: PolynomialMap) -> dict:
    return {
        "dimension": phi.dimension,
        "degree": phi.degree,
        "coordinates": [form_to_json(f) for f in phi.coordinates],
    }


def map_from_json(data: Mapping) -> PolynomialMap:
    try:
        n = int(data["dimension"])
        d = int(data["degree"])
        forms = []
        for coord in data["coordinates"]:
            terms = [(tuple(t["exponents"]), to_fraction(t["coefficient"])) for t in coord]
            forms.append(HomogeneousForm.from_terms(n, d, terms))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidMap(f"malformed map data: {exc}") from exc
    return PolynomialMap(n, d, tuple(forms))


def point_to_json(point: ProjectivePoint) -> dict:
    return {"coords": [format_fraction(x) for x in point.coords]}


def point_from_json(data) -> ProjectivePoint:
    if isinstance(data, Mapping):
        data = data["coords"]
    return ProjectivePoint(tuple(to_fraction(x) for x in data))


def parse_point(text: str) -> ProjectivePoint:
    """Parse ``"0,0,1"``, ``"[0, 1/2, 1]"`` or a JSON point object."""
    text = text.strip()
    if text.startswith("{"):
        return point_from_json(json.loads(text))
    text = text.strip("[]()")
    return ProjectivePoint(tuple(to_fraction(x) for x in text.split(",") if x.strip()))


def dumps(obj) -> str:
    """Canonical JSON text used for every file the library writes."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
