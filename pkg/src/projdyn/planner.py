"""Choosing block dimensions and periods to maximize the period of a spliced map.

A plan splits P^N into blocks of dimensions M_i (summing to N), asks block i
for a point of period n_i, and splices the blocks together, giving a point of
period lcm(n_i).  Any block dimension left over is filled with a period-1
padding block.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import lcm

from .constructor import RandomSource, construct, period_bound
from .core import ProjectivePoint
from .errors import ConstructionError, PlanInfeasible, ProjdynError
from .morphism import is_morphism
from .orbits import assert_primitive_period
from .products import product_map, product_point

EXHAUSTIVE_LIMIT = 12
DIRECT_MORPHISM_LIMIT = 5   # larger spliced maps are certified block by block
BLOCK_RETRIES = 20


@dataclass(frozen=True)
class ExtraPeriod:
    """A period on P^M beyond the construction bound, backed by a known witness."""

    dim: int
    period: int
    source: str | None = None

    @classmethod
    def parse(cls, text: str) -> "ExtraPeriod":
        parts = text.split(":", 2)
        if len(parts) < 2:
            raise ValueError(f"expected M:n[:SOURCE], got {text!r}")
        dim, period = int(parts[0]), int(parts[1])
        if dim < 1 or period < 1:
            raise ValueError("dimension and period must be positive")
        return cls(dim, period, parts[2] if len(parts) == 3 else None)


@dataclass(frozen=True)
class PeriodPlan:
    dimension: int
    blocks: tuple                       # ((M, n), ...), padding included
    achieved: int
    extra: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"blocks": [{"dim": m, "period": n} for m, n in self.blocks],
                "achieved": self.achieved}


def period_menu(M: int, extra=()) -> list:
    menu = set(range(1, period_bound(M) + 1))
    menu.update(e.period for e in extra if e.dim == M)
    return sorted(menu)


def _key(blocks, achieved):
    # larger period first, then fewer blocks, then the lexicographically smallest list
    return (-achieved, len(blocks), tuple(sorted(blocks)))


def _partitions(n, largest=None):
    """Partitions of every total 1..n into parts <= largest, as nonincreasing tuples."""
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        yield (first,)
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _exhaustive(N, extra):
    best = None
    for dims in _partitions(N):
        groups = {}
        for m in dims:
            groups[m] = groups.get(m, 0) + 1
        choices = []
        for m, count in groups.items():
            menu = [p for p in period_menu(m, extra) if p > 1]
            choices.append([(m, combo) for combo in combinations_with_replacement(menu, count)])
        best = _search_groups(choices, 0, [], 1, best)
    return best


def _search_groups(choices, idx, blocks, achieved, best):
    if idx == len(choices):
        cand = (tuple(sorted(blocks)), achieved)
        if best is None or _key(*cand) < _key(*best):
            return cand
        return best
    for m, combo in choices[idx]:
        value = achieved
        for p in combo:
            value = lcm(value, p)
        best = _search_groups(choices, idx + 1, blocks + [(m, p) for p in combo], value, best)
    return best


@lru_cache(maxsize=None)
def _best_blocks(N, extra):
    if N <= EXHAUSTIVE_LIMIT:
        return _exhaustive(N, extra)
    # beyond the exhaustive range: extend the best exhaustive plan block by
    # block, always taking the largest period gain per added dimension
    blocks, achieved = _best_blocks(EXHAUSTIVE_LIMIT, extra)
    blocks = list(blocks)
    left = N - EXHAUSTIVE_LIMIT
    while left > 0:
        pick = None
        for m in range(1, left + 1):
            for p in period_menu(m, extra):
                gain = (lcm(achieved, p) // achieved) ** (1 / m)
                if gain > 1 and (pick is None or gain > pick[0]):
                    pick = (gain, m, p)
        if pick is None:
            break
        _, m, p = pick
        blocks.append((m, p))
        achieved = lcm(achieved, p)
        left -= m
    best = (tuple(sorted(blocks)), achieved)
    single = max(period_menu(N, extra))
    if _key(((N, single),), single) < _key(*best):
        best = (((N, single),), single)
    prev = _best_blocks(N - 1, extra)
    if _key(*prev) < _key(*best):
        best = prev
    return best


def best_plan(N: int, extra=()) -> PeriodPlan:
    """Maximize the achievable period on P^N over block splittings.

    Exhaustive for N <= 12; beyond that a greedy extension that is still
    monotone in N.  ``extra`` adds witnessed periods to the per-dimension menu.
    """
    if N < 1:
        raise ValueError("dimension must be at least 1")
    extra = tuple(sorted(set(extra), key=lambda e: (e.dim, e.period, e.source or "")))
    blocks, achieved = _best_blocks(N, extra)
    used = sum(m for m, _ in blocks)
    if used < N:
        blocks = blocks + ((N - used, 1),)
    return PeriodPlan(N, tuple(blocks), achieved, extra)


# -- realization ------------------------------------------------------------

# Witnesses for periods above the bound that ship with the package.
BUILTIN_WITNESSES = {
    (2, 8): "fixture:ex2_p2_period8",
    (2, 9): "fixture:ex1_p2_period9",
}


def _origin(M):
    return ProjectivePoint(tuple([0] * M + [1]))


def _construct_block(M, n, seed, index):
    last = None
    for attempt in range(BLOCK_RETRIES):
        try:
            result = construct(M, n, RandomSource(f"{seed}/block{index}/{attempt}"))
        except ConstructionError as exc:
            last = exc
            continue
        if is_morphism(result.map).is_morphism:
            return result.map, result.point
        last = "no morphism among the sampled family members"
    raise PlanInfeasible(f"block {index} (P^{M}, period {n}) failed: {last}")


def _witness_block(M, n, extra, index):
    source = next((e.source for e in extra if e.dim == M and e.period == n and e.source), None)
    source = source or BUILTIN_WITNESSES.get((M, n))
    if source is None:
        raise PlanInfeasible(f"block {index}: period {n} on P^{M} exceeds the construction "
                             "bound and no witness map was given")
    from .fixtures import load_map_source

    phi, point, _ = load_map_source(source)
    point = point or _origin(M)
    if phi.dimension != M:
        raise PlanInfeasible(f"witness {source} lives on P^{phi.dimension}, expected P^{M}")
    try:
        assert_primitive_period(phi, point, n)
    except ProjdynError as exc:
        raise PlanInfeasible(f"witness {source} does not have period {n}: {exc}") from exc
    return phi, point


def realize_plan(plan: PeriodPlan, seed="plan") -> tuple:
    """Build, splice and certify every block; returns (map, point, certification)."""
    parts = []
    for index, (M, n) in enumerate(plan.blocks):
        if n <= period_bound(M):
            parts.append(_construct_block(M, n, seed, index))
        else:
            parts.append(_witness_block(M, n, plan.extra, index))
    phi, point = parts[0]
    for other, other_point in parts[1:]:
        phi = product_map(phi, other)
        point = product_point(point, other_point)
    try:
        cert = assert_primitive_period(phi, point, plan.achieved)
    except ProjdynError as exc:
        raise PlanInfeasible(f"spliced map failed period certification: {exc}") from exc
    if phi.dimension <= DIRECT_MORPHISM_LIMIT:
        mcert = is_morphism(phi)
        # no timing here, so realized plans serialize identically across runs
        morphism = {"method": "macaulay", "decision": mcert.decision, "rank": mcert.rank,
                    "columns": mcert.columns, "rows": mcert.rows}
        ok = mcert.is_morphism
    else:
        # a splice of morphisms is a morphism, so certifying each block suffices
        ok = all(is_morphism(p).is_morphism for p, _ in parts)
        morphism = {"method": "blockwise", "decision": "morphism" if ok else "common_zero"}
    if not ok:
        raise PlanInfeasible("spliced map is not a morphism")
    certification = {"period": cert.period, "morphism": morphism}
    return phi, point, certification
