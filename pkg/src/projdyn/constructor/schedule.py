"""Orbit-forcing schedules for the base point [0, ..., 0, 1].

A schedule is a list of steps.  Step t maps the (t-1)-st orbit point to the
t-th one.  It names the coefficient set ``c_i(j, k), i = 0..N-1`` that is
solved at that step (``solve``) and gives one pattern entry per affine
coordinate of the image:

* ``Exact(v)``       the coordinate must equal v;
* ``Free(label)``    the coordinate takes some value K outside ``forbidden``;
  the value is reached by drawing the coefficient ``c_i(j, k)`` itself
  (``mode="coefficient"``) or by drawing K and solving for it
  (``mode="value"``);
* ``Determined``     nothing is solved; the coordinate is already forced.

``forbidden`` may mention the label of an earlier Free/Determined entry; it
is resolved to that entry's value at run time.  The last coordinate of every
orbit point is 1 and is not part of the pattern.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..core import to_fraction
from ..errors import InvalidDimension, PeriodOutOfRange, ScheduleError
from .expressions import CoefficientId


@dataclass(frozen=True)
class Exact:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", to_fraction(self.value))

    def to_json(self):
        return {"exact": str(self.value)}


@dataclass(frozen=True)
class Free:
    label: str
    forbidden: tuple = ()
    mode: str = "coefficient"

    def __post_init__(self):
        if self.mode not in ("coefficient", "value"):
            raise ValueError(f"unknown Free mode {self.mode!r}")
        object.__setattr__(self, "forbidden", tuple(
            f if isinstance(f, str) else to_fraction(f) for f in self.forbidden))

    def to_json(self):
        return {"free": self.label, "mode": self.mode,
                "forbidden": [str(f) for f in self.forbidden]}


@dataclass(frozen=True)
class Determined:
    label: str | None = None
    forbidden: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(
            f if isinstance(f, str) else to_fraction(f) for f in self.forbidden))

    def to_json(self):
        out = {"determined": self.label}
        if self.forbidden:
            out["forbidden"] = [str(f) for f in self.forbidden]
        return out


@dataclass(frozen=True)
class Step:
    solve: tuple | None          # (j, k) or None for a determined step
    pattern: tuple

    def free_entries(self):
        return [(i, e) for i, e in enumerate(self.pattern) if isinstance(e, Free)]

    def solved_ids(self):
        if self.solve is None:
            return []
        j, k = self.solve
        return [CoefficientId(i, j, k) for i in range(len(self.pattern))]

    def to_json(self):
        return {"solve": list(self.solve) if self.solve else None,
                "pattern": [e.to_json() for e in self.pattern]}


@dataclass(frozen=True)
class Schedule:
    dimension: int
    steps: tuple
    period: int | None = None                    # None for partial schedules
    free_parameters: tuple = field(default=())

    def __post_init__(self):
        for t, step in enumerate(self.steps, 1):
            if len(step.pattern) != self.dimension:
                raise ScheduleError(f"step {t} has {len(step.pattern)} entries, "
                                    f"expected {self.dimension}")
            if len(step.free_entries()) > 1:
                raise ScheduleError(f"step {t} has more than one free entry")
            if step.solve is None and any(not isinstance(e, Determined) for e in step.pattern):
                raise ScheduleError(f"step {t} solves nothing but is not fully determined")
            if step.solve is not None and any(isinstance(e, Determined) for e in step.pattern):
                raise ScheduleError(f"step {t} mixes solving with determined entries")
        solved = [s.solve for s in self.steps if s.solve is not None]
        if len(solved) != len(set(solved)):
            raise ScheduleError("a coefficient set is solved twice")
        if self.period is not None and self.period != len(self.steps):
            raise ScheduleError("schedule length must equal the target period")

    def solved_sets(self):
        return [s.solve for s in self.steps if s.solve is not None]

    def to_json(self):
        return {
            "dimension": self.dimension,
            "period": self.period,
            "free_parameters": [str(c) for c in self.free_parameters],
            "steps": [s.to_json() for s in self.steps],
        }


def free_parameters_of(steps) -> tuple:
    """Coefficients drawn directly from the parameter source, in step order."""
    out = []
    for step in steps:
        for i, entry in step.free_entries():
            if entry.mode == "coefficient":
                out.append(CoefficientId(i, *step.solve))
    return tuple(out)


def period_bound(N: int) -> int:
    """Largest period the construction reaches on P^N (3 on P^1, 7 on P^2)."""
    if N < 1:
        raise InvalidDimension("dimension must be at least 1")
    if N == 1:
        return 3
    if N == 2:
        return 7
    return (N + 1) * (N + 2) // 2 + (N - 1) // 2


def _pattern(N, default, overrides):
    entries = [default] * N
    for idx, entry in overrides.items():
        entries[idx] = entry
    return tuple(entries)


def _point(N, ones):
    return tuple(Exact(1 if idx in ones else 0) for idx in range(N))


def _close(N, solve):
    return Step(solve, tuple(Exact(0) for _ in range(N)))


def warmup_schedule() -> Schedule:
    """P^1: [0,1] -> [K1,1] -> [K2,1] -> [0,1], solving c, then b, then a."""
    steps = (
        Step((1, 1), (Free("K1", (0,), mode="value"),)),
        Step((0, 1), (Free("K2", (0, "K1"), mode="value"),)),
        _close(1, (0, 0)),
    )
    return Schedule(1, steps, 3)


def window_schedule(N: int) -> Schedule:
    """Images of [0..0,1] through every 0/1 window, ending at [1, ..., 1].

    Windows of width w = 1..N slide from slot 0 to slot N - w.  The step
    leaving window {s..s+w-1} solves c(s, N) when w == 1 and c(s, s+w-1)
    otherwise; the very first step solves c(N, N).
    """
    if N < 2:
        raise InvalidDimension("the 0/1-window schedule needs N >= 2")
    windows = [(s, w) for w in range(1, N + 1) for s in range(N - w + 1)]
    steps = []
    source = None
    for s, w in windows:
        if source is None:
            solve = (N, N)
        else:
            s0, w0 = source
            solve = (s0, N) if w0 == 1 else (s0, s0 + w0 - 1)
        steps.append(Step(solve, _point(N, set(range(s, s + w)))))
        source = (s, w)
    return Schedule(N, tuple(steps))


def _extension_n2():
    steps = [
        Step((0, 1), (Exact(0), Free("K(0,1)", (0, 1)))),
        Step((1, 1), (Exact(0), Free("K(1,1)", (0, 1, "K(0,1)")))),
        Step(None, (Determined("k0", (0, 1)), Determined("k1"))),
        _close(2, (0, 0)),
    ]
    return steps


def _extension_n3plus(N):
    one, zero = Exact(1), Exact(0)
    lab = lambda a, b: f"K({a},{b})"  # noqa: E731
    steps = []

    # [1..1] -> [0, K, 1..1]
    steps.append(Step((0, N - 1), _pattern(N, one, {0: zero, 1: Free(lab(0, N - 1), (0, 1))})))
    # -> [K, 1..1, 0]
    steps.append(Step((1, 1), _pattern(N, one, {0: Free(lab(1, 1), (0, 1)), N - 1: zero})))
    # -> [0, K', 1..1]
    steps.append(Step((0, 0), _pattern(N, one, {0: zero,
                                                1: Free(lab(0, 0), (0, 1, lab(0, N - 1)))})))
    # forced image [k_0, 1..1, k_{N-1}]; k_{N-1} feeds the next linear step
    det = [Determined(f"k{idx}") for idx in range(N)]
    det[N - 1] = Determined(f"k{N - 1}", (0, 1))
    steps.append(Step(None, tuple(det)))

    if N == 3:
        steps.append(_close(N, (2, 2)))
        return steps

    def k_shape(m, entry):
        # [0..0, K at m, 1..1, 0]
        entries = [zero] * m + [entry] + [one] * (N - 2 - m) + [zero]
        return tuple(entries)

    steps.append(Step((N - 1, N - 1), k_shape(2, Free(lab(N - 1, N - 1), (0, 1)))))
    prev_label = lab(N - 1, N - 1)
    remaining = list(range(2, N - 1))      # diagonal sets still open: c(2,2)..c(N-2,N-2)
    m = 2
    while True:
        # at a K-shaped point with K in slot m, linear in c(m, m) == remaining[0]
        if len(remaining) == 1:
            steps.append(_close(N, (m, m)))
            break
        steps.append(Step((m, m), k_shape(m, Free(lab(m, m), (0, 1, prev_label)))))
        det = [Determined(f"u{m}_{idx}") for idx in range(N)]
        det[m + 1] = Determined(f"u{m}_{m + 1}", (0, 1))
        steps.append(Step(None, tuple(det)))
        remaining.pop(0)
        a = remaining[0]                    # == m + 1, now linear in c(a, a)
        if len(remaining) == 1:
            steps.append(_close(N, (a, a)))
            break
        if len(remaining) == 2:
            # [0..0, K at N-2, 1] then close with c(N-2, N-2)
            entries = [zero] * (N - 2) + [Free(lab(a, a), (0, 1)), one]
            steps.append(Step((a, a), tuple(entries)))
            steps.append(_close(N, (N - 2, N - 2)))
            break
        steps.append(Step((a, a), k_shape(m + 2, Free(lab(a, a), (0, 1)))))
        prev_label = lab(a, a)
        remaining.pop(0)
        m += 2
    return steps


def extension_schedule(N: int) -> Schedule:
    """Full schedule reaching ``period_bound(N)`` for N >= 2."""
    if N < 2:
        raise InvalidDimension("the extended schedule needs N >= 2")
    base = window_schedule(N)
    tail = _extension_n2() if N == 2 else _extension_n3plus(N)
    steps = base.steps + tuple(tail)
    sched = Schedule(N, steps, len(steps), free_parameters_of(steps))
    if sched.period != period_bound(N):
        raise ScheduleError(f"schedule length {sched.period} != bound {period_bound(N)}")
    return sched


def full_schedule(N: int) -> Schedule:
    return warmup_schedule() if N == 1 else extension_schedule(N)


def truncated_schedule(N: int, period: int) -> Schedule:
    """Close the orbit after ``period`` steps.

    Keeps the first ``period - 1`` steps of the full schedule and closes with
    the set the full schedule would solve next.  When that next step is a
    determined one, the preceding step is retargeted to a point whose only
    non-0/1 entry sits in the slot of a still-open diagonal set, and the
    orbit closes by solving that set instead.
    """
    bound = period_bound(N)
    if not 1 <= period <= bound:
        raise PeriodOutOfRange(f"period {period} outside 1..{bound} for N={N}")
    full = full_schedule(N)
    if period == bound:
        return full
    steps = list(full.steps[:period])
    last = steps[-1]
    if last.solve is not None:
        steps[-1] = _close(N, last.solve)
    else:
        prev = steps[-2]
        solved = {s.solve for s in steps[:-1]}
        open_diag = [a for a in range(N) if (a, a) not in solved]
        if not open_diag:
            raise ScheduleError("no open diagonal set left to close the orbit")
        a = open_diag[0]
        entries = [Exact(0)] * N
        label = next(e.label for _, e in prev.free_entries()) if prev.free_entries() else f"K{a}"
        entries[a] = Free(label, (0, 1))
        steps[-2] = replace(prev, pattern=tuple(entries))
        steps[-1] = _close(N, (a, a))
    return Schedule(N, tuple(steps), period, free_parameters_of(steps))
