"""Orbit-forcing construction of degree-2 maps with a prescribed period."""
from .engine import (
    ConstructionResult,
    ConstructionState,
    construct,
    image_expressions,
    initial_state,
    solve_step,
)
from .expressions import (
    CoefficientExpression,
    CoefficientId,
    all_coefficient_ids,
    parse_affine,
    parse_choices,
)
from .schedule import (
    Determined,
    Exact,
    Free,
    Schedule,
    Step,
    extension_schedule,
    full_schedule,
    window_schedule,
    period_bound,
    truncated_schedule,
    warmup_schedule,
)
from .sources import EnumerationSource, RandomSource, SequenceSource, make_source
