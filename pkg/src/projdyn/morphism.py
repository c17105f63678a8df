"""Morphism certificates via the Macaulay matrix in the critical degree.

For forms F_0..F_N of degrees d_i the critical degree is
``D = 1 + sum(d_i - 1)``.  The matrix has one column per monomial of degree D
and one row per product ``r * F_i`` with ``deg r = D - d_i``.  It has full
column rank exactly when every degree-D monomial lies in the ideal, i.e. when
the forms have no common zero in projective space.  We decide that by exact
rank; no resultant (gcd of maximal minors) is ever formed.

Orientation: rows are multiplier products, columns are monomials, so the
shape is ``(rows, columns)``; e.g. three quadrics on P^2 give 18 x 15.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import PolynomialMap, monomials
from .elimination import bareiss_rank, integer_rows, modular_rank
from .errors import DimensionMismatch, ProjdynError

# Primes for the fast path.  A full rank mod p is already an exact proof of
# full rank over Q; anything short of that falls through to Bareiss.
SCREEN_PRIMES = (2_147_483_647, 1_000_000_007)


@dataclass(frozen=True)
class MacaulayMatrix:
    degree: int                 # critical degree D
    columns: tuple              # monomials of degree D, canonical order
    rows: tuple                 # (form index i, multiplier monomial r)
    entries: tuple              # per row: {column index: Fraction}

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.columns))

    def dense(self) -> list:
        out = []
        for row in self.entries:
            line = [Fraction(0)] * len(self.columns)
            for c, v in row.items():
                line[c] = v
            out.append(line)
        return out


@dataclass(frozen=True)
class MorphismCertificate:
    decision: str               # "morphism" | "common_zero"
    rank: int
    columns: int
    rows: int
    elapsed_ms: float
    method: str = "bareiss"

    @property
    def is_morphism(self) -> bool:
        return self.decision == "morphism"

    def to_json(self) -> dict:
        return {
            "decision": self.decision,
            "rank": self.rank,
            "columns": self.columns,
            "rows": self.rows,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def expected_shape(degrees, dimension: int) -> tuple:
    D = 1 + sum(d - 1 for d in degrees)
    ncols = comb(dimension + D, D)
    nrows = sum(comb(dimension + D - d, D - d) for d in degrees)
    return nrows, ncols


def build_macaulay(forms) -> MacaulayMatrix:
    forms = list(forms)
    if not forms:
        raise DimensionMismatch("need at least one form")
    n = forms[0].dimension
    if any(f.dimension != n for f in forms):
        raise DimensionMismatch("all forms must live in the same number of variables")
    if len(forms) != n + 1:
        raise DimensionMismatch(f"need {n + 1} forms on P^{n}, got {len(forms)}")
    D = 1 + sum(f.degree - 1 for f in forms)
    columns = tuple(monomials(n + 1, D))
    col_index = {m: idx for idx, m in enumerate(columns)}
    rows = []
    entries = []
    for i, f in enumerate(forms):
        for r in monomials(n + 1, D - f.degree):
            rows.append((i, r))
            product = f.times_monomial(r)
            entries.append({col_index[m]: c for m, c in product.terms})
    return MacaulayMatrix(D, columns, tuple(rows), tuple(entries))


def macaulay_rank(matrix: MacaulayMatrix, screen: bool = True) -> tuple:
    """Exact rank and the method that settled it."""
    ints = integer_rows(matrix.entries)
    ncols = len(matrix.columns)
    if screen:
        for p in SCREEN_PRIMES:
            if modular_rank(ints, ncols, p) == ncols:
                return ncols, f"modular:{p}"
    return bareiss_rank(ints, ncols), "bareiss"


def forms_have_common_zero(forms, screen: bool = True) -> MorphismCertificate:
    t0 = time.perf_counter()
    M = build_macaulay(forms)
    rank, method = macaulay_rank(M, screen=screen)
    nrows, ncols = M.shape
    decision = "morphism" if rank == ncols else "common_zero"
    return MorphismCertificate(decision, rank, ncols, nrows,
                               (time.perf_counter() - t0) * 1000.0, method)


def is_morphism(phi: PolynomialMap, screen: bool = True) -> MorphismCertificate:
    """Decide exactly whether the coordinate forms of ``phi`` share a projective zero."""
    return forms_have_common_zero(phi.coordinates, screen=screen)


def sample_family_morphisms(N: int, trials: int, seed=0, period=None) -> dict:
    """Construct ``trials`` family members from distinct seeds and certify each."""
    from .constructor import RandomSource, construct, period_bound

    if trials < 0:
        raise ValueError("trials must be non-negative")
    if period is None:
        period = period_bound(N)
    report = {"dimension": N, "period": period, "trials": trials, "constructed": 0,
              "morphisms": 0, "common_zero": 0, "construction_failures": 0,
              "fraction": None, "samples": []}
    if trials == 0:
        return report
    for t in range(trials):
        sample_seed = f"{seed}/{t}"
        try:
            result = construct(N, period, RandomSource(sample_seed))
        except ProjdynError as exc:  # counted, not fatal
            report["construction_failures"] += 1
            report["samples"].append({"seed": sample_seed, "error": type(exc).__name__})
            continue
        cert = is_morphism(result.map)
        report["constructed"] += 1
        report["morphisms" if cert.is_morphism else "common_zero"] += 1
        report["samples"].append({"seed": sample_seed, "decision": cert.decision,
                                  "rank": cert.rank})
    if report["constructed"]:
        report["fraction"] = report["morphisms"] / report["constructed"]
    return report
