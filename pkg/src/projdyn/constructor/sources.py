"""Where free coefficients come from.

A parameter source answers ``draw(step, attempt)`` for Free entries and
``fill(cid)`` for coefficients the orbit never touches.  Every answer is a
pure function of its arguments, which is what makes constructions
reproducible bit for bit.
"""
from __future__ import annotations

import random
from fractions import Fraction

from ..errors import ForbiddenExhausted


def _fill_value(tag, cid) -> Fraction:
    rng = random.Random(f"{tag}/fill/{cid.i}/{cid.j}/{cid.k}")
    return Fraction(rng.randint(-9, 9), rng.randint(1, 3))


class EnumerationSource:
    """Draws 2, 3, 4, ... at every free step; the default source."""

    def __init__(self, start: int = 2):
        self.start = start

    def draw(self, step: int, attempt: int) -> Fraction:
        return Fraction(self.start + attempt)

    def fill(self, cid) -> Fraction:
        return _fill_value("enum", cid)

    def describe(self):
        return {"kind": "enumeration", "start": self.start}


class RandomSource:
    """Seeded small-height rationals: numerator in [-12, 12], denominator in 1..3."""

    def __init__(self, seed):
        self.seed = seed

    def draw(self, step: int, attempt: int) -> Fraction:
        rng = random.Random(f"{self.seed}/draw/{step}/{attempt}")
        return Fraction(rng.randint(-12, 12), rng.randint(1, 3))

    def fill(self, cid) -> Fraction:
        return _fill_value(self.seed, cid)

    def describe(self):
        return {"kind": "random", "seed": self.seed}


class SequenceSource:
    """Replays a fixed list of draws; used to pin down individual steps."""

    def __init__(self, values, fill_value=0):
        self.values = [Fraction(v) for v in values]
        self.fill_value = Fraction(fill_value)

    def draw(self, step: int, attempt: int) -> Fraction:
        if attempt >= len(self.values):
            raise ForbiddenExhausted(f"sequence source ran out after {len(self.values)} draws")
        return self.values[attempt]

    def fill(self, cid) -> Fraction:
        return self.fill_value

    def describe(self):
        return {"kind": "sequence", "values": [str(v) for v in self.values]}


def make_source(seed=None):
    """``None`` gives the enumeration source, anything else a seeded random one."""
    return EnumerationSource() if seed is None else RandomSource(seed)
