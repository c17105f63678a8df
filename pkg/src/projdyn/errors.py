"""Exception hierarchy shared by every projdyn module."""


class ProjdynError(Exception):
    """Base class for all library errors."""


# core

class AllZero(ProjdynError):
    """Every coordinate of a would-be projective point is zero."""


class IndeterminatePoint(ProjdynError):
    """All coordinate forms of a map vanish at the point."""


class DimensionMismatch(ProjdynError):
    pass


class InvalidMap(ProjdynError):
    """Map data violates the polynomial-map shape (last coordinate x_N^d)."""


# orbits

class OrbitError(ProjdynError):
    pass


class NotPeriodic(OrbitError):
    def __init__(self, n):
        super().__init__(f"point does not return to itself after {n} iterations")
        self.n = n


class PeriodDivides(OrbitError):
    def __init__(self, k, n):
        super().__init__(f"point returns after {k} < {n} iterations")
        self.k = k
        self.n = n


class HeightBoundExceeded(OrbitError):
    def __init__(self, step, bits, max_bits):
        super().__init__(
            f"coordinate height {bits} bits exceeds bound {max_bits} at step {step}")
        self.step = step
        self.bits = bits
        self.max_bits = max_bits


# constructor

class ConstructionError(ProjdynError):
    pass


class InvalidDimension(ConstructionError):
    pass


class PeriodOutOfRange(ConstructionError):
    pass


class NonlinearDependence(ConstructionError):
    """A symbolic coordinate would become quadratic in unknown coefficients."""


class UnsolvableStep(ConstructionError):
    """The unknown designated for a step has a zero multiplier."""


class ForbiddenExhausted(ConstructionError):
    """No admissible free-parameter draw was found within the local limit."""


class RetryBudgetExhausted(ConstructionError):
    """The global draw budget of a construction run is spent."""


class PrimitivityFailure(ConstructionError):
    """The forced orbit revisits an earlier point before closing."""


class ScheduleError(ConstructionError):
    """The schedule itself is inconsistent (a bug, not bad luck)."""


# morphism / products / planner / fixtures

class DegreeMismatch(ProjdynError):
    pass


class NotInChart(ProjdynError):
    pass


class PlanInfeasible(ProjdynError):
    pass


class UnknownFixture(ProjdynError, KeyError):
    pass
