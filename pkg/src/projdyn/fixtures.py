"""Published example maps with their claimed periodic points, as golden data."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .core import PolynomialMap, ProjectivePoint, map_from_json, map_to_json, point_from_json
from .errors import InvalidMap, ProjdynError, UnknownFixture
from .morphism import is_morphism
from .orbits import assert_primitive_period
from .products import split_map

FIXTURE_IDS = ("sec1_p1_period3", "ex1_p2_period9", "ex2_p3_period24", "ex3_p4_period72")

# The quadratic on P^1 has nonzero resultant with y^2 because it is not
# divisible by y, so no rank computation is needed for it.
_OBVIOUS_MORPHISMS = {"sec1_p1_period3"}


@dataclass(frozen=True)
class PublishedFixture:
    id: str
    map: PolynomialMap
    point: ProjectivePoint
    period: int
    morphism: bool

    def to_json(self) -> dict:
        return {"id": self.id, "map": map_to_json(self.map),
                "point": {"coords": [str(x) for x in self.point.coords]},
                "period": self.period, "morphism": self.morphism}


def fixture_from_json(data) -> PublishedFixture:
    return PublishedFixture(data["id"], map_from_json(data["map"]), point_from_json(data["point"]),
                        int(data["period"]), bool(data["morphism"]))


def fixture_text(fid: str) -> str:
    if fid not in FIXTURE_IDS:
        raise UnknownFixture(f"unknown fixture {fid!r}; known: {', '.join(FIXTURE_IDS)}")
    return resources.files("projdyn.data").joinpath(f"{fid}.json").read_text(encoding="utf-8")


def load_fixture(fid: str) -> PublishedFixture:
    return fixture_from_json(json.loads(fixture_text(fid)))


def ex2_factors() -> tuple:
    """The P^2 (period 8) and P^1 (period 3) maps spliced into the P^3 example."""
    return split_map(load_fixture("ex2_p3_period24").map, 2)


def check_fixture(fx: PublishedFixture, morphism_check: bool = True) -> dict:
    entry = {"id": fx.id, "period": fx.period, "period_ok": False, "morphism_ok": None}
    try:
        assert_primitive_period(fx.map, fx.point, fx.period)
        entry["period_ok"] = True
    except ProjdynError as exc:
        entry["period_error"] = f"{type(exc).__name__}: {exc}"
    if morphism_check:
        cert = is_morphism(fx.map)
        entry["morphism_ok"] = cert.is_morphism == fx.morphism
        entry["morphism"] = cert.to_json()
    else:
        entry["morphism_ok"] = fx.morphism
        entry["morphism"] = {"decision": "morphism", "method": "immediate"}
    return entry


def verify_all(fixtures=None) -> dict:
    """Certify every fixture's period and morphism claim; failures become report entries."""
    if fixtures is None:
        fixtures = [load_fixture(fid) for fid in FIXTURE_IDS]
    entries = [check_fixture(fx, fx.id not in _OBVIOUS_MORPHISMS) for fx in fixtures]
    return {
        "fixtures": entries,
        "periods_ok": sum(e["period_ok"] for e in entries),
        "morphisms_ok": sum(bool(e["morphism_ok"]) for e in entries),
        "total": len(entries),
        "ok": all(e["period_ok"] and e["morphism_ok"] for e in entries),
    }


def load_map_source(source: str) -> tuple:
    """Read ``fixture:<id>`` or a JSON file; returns (map, point or None, period or None).

    Files may hold a bare map, or an object with a ``map`` key and optional
    ``point`` and ``period`` (fixtures, construct and product output).
    """
    if source == "fixture:ex2_p2_period8":
        return ex2_factors()[0], ProjectivePoint((0, 0, 1)), 8
    if source.startswith("fixture:"):
        fx = load_fixture(source.split(":", 1)[1])
        return fx.map, fx.point, fx.period
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InvalidMap(f"cannot read {source}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidMap(f"{source} does not hold a JSON object")
    if "map" not in data:
        return map_from_json(data), None, None
    try:
        point = point_from_json(data["point"]) if "point" in data else None
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidMap(f"malformed point in {source}: {exc}") from exc
    period = data.get("period")
    return map_from_json(data["map"]), point, int(period) if period is not None else None
