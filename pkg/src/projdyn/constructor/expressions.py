"""Affine-linear expressions in the unknown map coefficients c_i(j, k)."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ..core import to_fraction
from ..errors import NonlinearDependence


class CoefficientId(NamedTuple):
    """c_i(j, k): coefficient of x_j x_k (j <= k) in coordinate i."""

    i: int
    j: int
    k: int

    def __str__(self):
        return f"c{self.i}({self.j},{self.k})"

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k}


def all_coefficient_ids(N: int) -> list:
    return [CoefficientId(i, j, k)
            for i in range(N) for j in range(N + 1) for k in range(j, N + 1)]


class CoefficientExpression:
    """``constant + sum(coeff * unknown)``; never holds a product of unknowns."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0, terms=None):
        self.constant = to_fraction(constant)
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def var(cls, cid: CoefficientId) -> "CoefficientExpression":
        return cls(0, {cid: Fraction(1)})

    def is_constant(self) -> bool:
        return not self.terms

    @property
    def value(self) -> Fraction:
        if self.terms:
            raise NonlinearDependence(f"expression {self} still depends on unknowns")
        return self.constant

    def unknowns(self):
        return set(self.terms)

    def coefficient(self, cid) -> Fraction:
        return self.terms.get(cid, Fraction(0))

    def __add__(self, other):
        other = _lift(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return CoefficientExpression(self.constant + other.constant, terms)

    __radd__ = __add__

    def __neg__(self):
        return CoefficientExpression(-self.constant, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.terms and other.terms:
            raise NonlinearDependence(
                f"product of {self} and {other} is quadratic in unknown coefficients")
        if other.terms:
            self, other = other, self
        s = other.constant
        return CoefficientExpression(self.constant * s, {k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def substitute(self, cid, expr) -> "CoefficientExpression":
        a = self.terms.get(cid)
        if a is None:
            return self
        rest = CoefficientExpression(self.constant,
                                     {k: v for k, v in self.terms.items() if k != cid})
        return rest + _lift(expr) * a

    def solve_for(self, cid, target) -> "CoefficientExpression":
        """Expression for ``cid`` that makes ``self == target``."""
        a = self.terms.get(cid)
        if not a:
            raise ZeroDivisionError(f"{cid} does not occur in {self}")
        rest = CoefficientExpression(self.constant,
                                     {k: v for k, v in self.terms.items() if k != cid})
        return (_lift(target) - rest) * (1 / a)

    def __eq__(self, other):
        other = _lift(other)
        return self.constant == other.constant and self.terms == other.terms

    def __hash__(self):
        return hash((self.constant, frozenset(self.terms.items())))

    def __repr__(self):
        return f"CoefficientExpression({self})"

    def __str__(self):
        parts = [f"{v}*{k}" for k, v in sorted(self.terms.items())]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts).replace("+ -", "- ")


def _lift(x) -> CoefficientExpression:
    if isinstance(x, CoefficientExpression):
        return x
    return CoefficientExpression(x)


_NAME = r"(?:c\d+\(\d+,\d+\)|[abc])"
_TERM = re.compile(
    rf"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?({_NAME})?\s*")


def parse_coefficient_name(name: str, N: int) -> CoefficientId:
    """``c0(1,1)`` style names; on P^1 the letters a, b, c name c0(0,0), c0(0,1), c0(1,1)."""
    name = name.strip()
    if N == 1 and name in ("a", "b", "c"):
        return {"a": CoefficientId(0, 0, 0), "b": CoefficientId(0, 0, 1),
                "c": CoefficientId(0, 1, 1)}[name]
    m = re.fullmatch(r"c(\d+)\((\d+),(\d+)\)", name.replace(" ", ""))
    if not m:
        raise ValueError(f"unrecognized coefficient name {name!r}")
    i, j, k = map(int, m.groups())
    if j > k:
        j, k = k, j
    if not (0 <= i < N and k <= N):
        raise ValueError(f"coefficient {name} is out of range on P^{N}")
    return CoefficientId(i, j, k)


def parse_affine(text: str, N: int) -> CoefficientExpression:
    """Parse an affine expression such as ``1-a`` or ``-3/2*c0(0,0) + 2``."""
    text = text.replace(" ", "")
    pos = 0
    expr = CoefficientExpression(0)
    if not text:
        raise ValueError("empty expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and m.group(1) is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            expr = expr + CoefficientExpression.var(parse_coefficient_name(m.group(3), N)) * (sign * num)
        else:
            expr = expr + sign * num
        pos = m.end()
    return expr


def parse_choices(text: str, N: int) -> dict:
    """``"c=1,b:=1-a"`` -> {c0(1,1): 1, c0(0,1): 1 - c0(0,0)}."""
    out = {}
    for item in filter(None, (s.strip() for s in re.split(r",(?![^()]*\))", text))):
        if ":=" in item:
            name, rhs = item.split(":=", 1)
        elif "=" in item:
            name, rhs = item.split("=", 1)
        else:
            raise ValueError(f"choice {item!r} needs '=' or ':='")
        out[parse_coefficient_name(name, N)] = parse_affine(rhs, N)
    return out
