"""Schedule executor: turns a schedule into a concrete certified map.

The working state keeps every solved coefficient as an affine expression in
the coefficients that are still open.  Orbit points are always concrete, so
each image coordinate is affine in the open coefficients and every step is a
single linear solve per coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..core import PolynomialMap, ProjectivePoint, point_to_json
from ..errors import (
    ForbiddenExhausted,
    PrimitivityFailure,
    RetryBudgetExhausted,
    ScheduleError,
    UnsolvableStep,
)
from ..orbits import PeriodCertificate, assert_primitive_period
from .expressions import CoefficientExpression, CoefficientId, all_coefficient_ids
from .schedule import Determined, Exact, Schedule, truncated_schedule
from .sources import EnumerationSource

DEFAULT_BUDGET = 1000
LOCAL_DRAWS = 64        # forbidden-value retries inside one step
LOCAL_BACKTRACKS = 16   # accepted draws tried at one step before backing up further

_RECOVERABLE = (UnsolvableStep, ForbiddenExhausted, PrimitivityFailure)


class DrawBudget:
    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self):
        if self.used >= self.limit:
            raise RetryBudgetExhausted(f"draw budget of {self.limit} exhausted")
        self.used += 1


@dataclass(frozen=True)
class ConstructionState:
    dimension: int
    subs: dict                  # CoefficientId -> expression in open coefficients
    point: tuple                # current orbit point, N+1 expressions (last is 1)
    step: int = 0
    orbit: tuple = ()           # concrete points visited so far, as Fraction tuples
    labels: dict = field(default_factory=dict)
    transcript: tuple = ()

    def value_of(self, cid) -> CoefficientExpression:
        expr = self.subs.get(cid)
        return expr if expr is not None else CoefficientExpression.var(cid)

    def open_coefficients(self):
        return [c for c in all_coefficient_ids(self.dimension) if c not in self.subs]

    def concrete_point(self) -> tuple:
        return tuple(x.value for x in self.point)


def _assign(subs: dict, cid, expr):
    for key, value in subs.items():
        subs[key] = value.substitute(cid, expr)
    subs[cid] = expr


def initial_state(N: int, choices=None) -> ConstructionState:
    """Start at [0, ..., 0, 1]; ``choices`` pins coefficients up front."""
    subs: dict = {}
    for cid, expr in (choices or {}).items():
        cid = CoefficientId(*cid)
        if not isinstance(expr, CoefficientExpression):
            expr = CoefficientExpression(expr)
        for other, value in subs.items():
            expr = expr.substitute(other, value)
        if cid in expr.terms:
            raise ScheduleError(f"choice for {cid} refers to itself")
        _assign(subs, cid, expr)
    start = tuple(CoefficientExpression(0) for _ in range(N)) + (CoefficientExpression(1),)
    origin = tuple(Fraction(0) for _ in range(N)) + (Fraction(1),)
    return ConstructionState(N, subs, start, 0, (origin,), {}, ())


def image_expressions(state: ConstructionState, point=None) -> list:
    """Affine coordinates 0..N-1 of phi(point) as expressions in open coefficients."""
    N = state.dimension
    point = state.point if point is None else point
    out = []
    for i in range(N):
        total = CoefficientExpression(0)
        for j in range(N + 1):
            for k in range(j, N + 1):
                weight = point[j] * point[k]
                if weight.is_constant() and weight.constant == 0:
                    continue
                total = total + weight * state.value_of(CoefficientId(i, j, k))
        out.append(total)
    return out


def _resolve(forbidden, labels):
    out = set()
    for f in forbidden:
        if isinstance(f, str):
            if f not in labels:
                raise ScheduleError(f"forbidden set refers to unknown label {f!r}")
            out.add(labels[f])
        else:
            out.add(f)
    return out


def _reduce(expr, subs):
    for cid in list(expr.terms):
        if cid in subs:
            expr = expr.substitute(cid, subs[cid])
    return expr


def _solve_exact(subs, expr, cid, target):
    a = expr.coefficient(cid)
    if a == 0:
        if expr.is_constant() and expr.constant == target:
            return
        raise UnsolvableStep(f"{cid} has zero multiplier in {expr}; cannot reach {target}")
    _assign(subs, cid, expr.solve_for(cid, target))


def solve_step(state: ConstructionState, step, source=None, attempt: int = 0,
               budget: DrawBudget | None = None,
               max_attempts: int = LOCAL_DRAWS) -> ConstructionState:
    """Advance the construction by one orbit point.

    Exact entries solve their coordinate for the step's coefficient.  A Free
    entry draws values (starting at ``attempt``) until its coordinate avoids
    the forbidden set.  Determined entries only read off the forced value.
    The accepted attempt index is stored in the transcript record.
    """
    source = source or EnumerationSource()
    N = state.dimension
    if len(step.pattern) != N:
        raise ScheduleError("pattern length does not match the dimension")
    subs = dict(state.subs)
    labels = dict(state.labels)
    exprs = image_expressions(state)
    values: list = [None] * N
    draws = []
    accepted = None
    step_no = state.step + 1

    for i, entry in enumerate(step.pattern):
        expr = _reduce(exprs[i], subs)
        if isinstance(entry, Determined):
            if not expr.is_constant():
                raise ScheduleError(
                    f"step {step_no}: coordinate {i} is not determined: {expr}")
            value = expr.constant
            if value in _resolve(entry.forbidden, labels):
                raise UnsolvableStep(
                    f"step {step_no}: forced coordinate {i} = {value} is excluded")
            values[i] = value
            if entry.label:
                labels[entry.label] = value
        elif isinstance(entry, Exact):
            _solve_exact(subs, expr, CoefficientId(i, *step.solve), entry.value)
            values[i] = entry.value

    for i, entry in step.free_entries():
        expr = _reduce(exprs[i], subs)
        cid = CoefficientId(i, *step.solve)
        forbidden = _resolve(entry.forbidden, labels)
        if expr.is_constant():
            # pinned by choices: nothing left to draw
            if expr.constant in forbidden:
                raise ForbiddenExhausted(
                    f"step {step_no}: pinned value {expr.constant} is excluded")
            value = expr.constant
        else:
            value = None
            for a in range(attempt, attempt + max_attempts):
                if budget is not None:
                    budget.spend()
                drawn = source.draw(step_no, a)
                draws.append(drawn)
                if entry.mode == "coefficient":
                    if set(expr.terms) != {cid}:
                        raise ScheduleError(
                            f"step {step_no}: coordinate {i} is not a function of {cid}: {expr}")
                    candidate = expr.substitute(cid, drawn).constant
                else:
                    candidate = drawn
                if candidate in forbidden:
                    continue
                if entry.mode == "coefficient":
                    _assign(subs, cid, CoefficientExpression(drawn))
                else:
                    _solve_exact(subs, expr, cid, candidate)
                value, accepted = candidate, a
                break
            if value is None:
                raise ForbiddenExhausted(
                    f"step {step_no}: no admissible draw in {max_attempts} attempts")
        values[i] = value
        labels[entry.label] = value

    concrete = tuple(values) + (Fraction(1),)
    record = {
        "step": step_no,
        "pattern": step.to_json()["pattern"],
        "solved": [list(c) for c in step.solved_ids()],
        "draws": [str(d) for d in draws],
        "accepted_attempt": accepted,
        "point": [str(x) for x in concrete],
    }
    return replace(
        state,
        subs=subs,
        point=tuple(CoefficientExpression(x) for x in concrete),
        step=step_no,
        orbit=state.orbit + (concrete,),
        labels=labels,
        transcript=state.transcript + (record,),
    )


@dataclass(frozen=True)
class ConstructionResult:
    map: PolynomialMap
    point: ProjectivePoint
    period: int
    certificate: PeriodCertificate
    schedule: Schedule
    transcript: tuple
    source: dict
    draws_used: int

    def to_json(self) -> dict:
        from ..core import map_to_json

        return {
            "map": map_to_json(self.map),
            "point": point_to_json(self.point),
            "period": self.period,
            "source": self.source,
            "draws_used": self.draws_used,
            "free_parameters": [c.to_json() for c in self.schedule.free_parameters],
            "transcript": list(self.transcript),
            "certification": self.certificate.to_json(),
        }


class _Search:
    def __init__(self, schedule, source, budget):
        self.steps = schedule.steps
        self.source = source
        self.budget = budget

    def run(self, idx, state):
        if idx == len(self.steps):
            return state
        step = self.steps[idx]
        closing = idx == len(self.steps) - 1
        drawable = bool(step.free_entries())
        attempt = 0
        backtracks = 0
        while True:
            new = solve_step(state, step, self.source, attempt, self.budget)
            accepted = new.transcript[-1]["accepted_attempt"]
            try:
                point = new.orbit[-1]
                if closing:
                    if point != new.orbit[0]:
                        raise ScheduleError("closing step does not return to the start")
                elif point in new.orbit[:-1]:
                    raise PrimitivityFailure(f"step {new.step} revisits an earlier point")
                return self.run(idx + 1, new)
            except _RECOVERABLE:
                if not drawable or accepted is None:
                    raise
                backtracks += 1
                if backtracks >= LOCAL_BACKTRACKS:
                    raise ForbiddenExhausted(f"step {new.step}: backtracking limit reached")
                attempt = accepted + 1


def finalize(state: ConstructionState, source) -> dict:
    """Fill coefficients the orbit never touched and return concrete values."""
    subs = dict(state.subs)
    for cid in all_coefficient_ids(state.dimension):
        if cid not in subs:
            _assign(subs, cid, CoefficientExpression(source.fill(cid)))
    return {cid: expr.value for cid, expr in subs.items()}


def construct(N: int, period: int, source=None, choices=None,
              budget: int = DEFAULT_BUDGET) -> ConstructionResult:
    """Build a degree-2 polynomial map on P^N where [0,..,0,1] has primitive period ``period``.

    Raises PeriodOutOfRange above the construction bound and
    RetryBudgetExhausted / ForbiddenExhausted when no admissible draws are
    found.  The returned map is always certified by direct iteration.
    """
    source = source or EnumerationSource()
    schedule = truncated_schedule(N, period)
    draws = DrawBudget(budget)
    state = initial_state(N, choices)
    final = _Search(schedule, source, draws).run(0, state)
    values = finalize(final, source)
    phi = PolynomialMap.from_coefficients(N, values)
    base = ProjectivePoint(final.orbit[0])
    try:
        cert = assert_primitive_period(phi, base, period)
    except Exception as exc:
        raise PrimitivityFailure(f"constructed map failed certification: {exc}") from exc
    transcript = []
    for rec in final.transcript:
        rec = dict(rec)
        rec["solved"] = [{"i": i, "j": j, "k": k, "value": str(values[CoefficientId(i, j, k)])}
                         for i, j, k in rec["solved"]]
        transcript.append(rec)
    describe = getattr(source, "describe", lambda: {"kind": type(source).__name__})
    return ConstructionResult(phi, base, period, cert, schedule, tuple(transcript),
                              describe(), draws.used)
