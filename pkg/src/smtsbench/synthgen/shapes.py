"""Characteristic-curve shape catalogue and curve generation.

Each cluster is described by a small DSL: a base level plus Gaussian peaks,
logistic steps and PV (solar generation) dips positioned on the 24 h day.
Component locations and widths are drawn uniformly from per-cluster ranges,
which is what produces the controlled within-cluster variation. The shipped
20-entry catalogue lives in ``data/shape_catalogue.json`` and is meant to be
human-editable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from ..core import CURVE_LEN
from ..errors import SpecOutOfBounds

HOURS_PER_DAY = 24.0
# hour value of each curve index (480 samples per day)
_HOUR_GRID = np.arange(CURVE_LEN) * (HOURS_PER_DAY / CURVE_LEN)

CLIP_MASS_TOLERANCE = 0.05


@dataclass(frozen=True)
class GaussianPeak:
    loc_range: tuple[float, float]
    scale_range: tuple[float, float]
    magnitude: float

    def draw(self, rng) -> np.ndarray:
        loc = rng.uniform(*self.loc_range)
        scale = rng.uniform(*self.scale_range)
        return self.magnitude * np.exp(-0.5 * ((_HOUR_GRID - loc) / scale) ** 2)


@dataclass(frozen=True)
class LogisticStep:
    loc_range: tuple[float, float]
    rate: float
    direction: str  # "up" | "down"
    magnitude: float = 1.0

    def draw(self, rng) -> np.ndarray:
        loc = rng.uniform(*self.loc_range)
        sign = 1.0 if self.direction == "up" else -1.0
        return self.magnitude / (1.0 + np.exp(-sign * self.rate * (_HOUR_GRID - loc)))


@dataclass(frozen=True)
class PVDip:
    loc_range: tuple[float, float]
    width_range: tuple[float, float]
    depth: float

    def draw(self, rng) -> np.ndarray:
        loc = rng.uniform(*self.loc_range)
        width = rng.uniform(*self.width_range)
        return -self.depth * np.exp(-0.5 * ((_HOUR_GRID - loc) / width) ** 2)


Component = GaussianPeak | LogisticStep | PVDip


@dataclass(frozen=True)
class ShapeSpec:
    cluster_id: int
    components: tuple[Component, ...]
    base: float = 0.0
    y0_mode: str = "low"  # "low" | "high"
    label: str = ""

    def with_components(self, components) -> "ShapeSpec":
        return ShapeSpec(self.cluster_id, tuple(components), self.base, self.y0_mode, self.label)


def gen_characteristic_curve(spec: ShapeSpec, rng, check_clip: bool = True) -> np.ndarray:
    """Draw one 480-point characteristic curve in [0, 1] from a ShapeSpec.

    Components are drawn in listed order so a fixed rng state reproduces the
    curve exactly. The summed curve is clipped to [0, 1]; losing more than
    5% of its mass to clipping signals a bad spec and raises SpecOutOfBounds.
    """
    curve = np.full(CURVE_LEN, spec.base, dtype=np.float64)
    for comp in spec.components:
        curve += comp.draw(rng)
    clipped = np.clip(curve, 0.0, 1.0)
    mass = np.abs(curve).sum()
    if check_clip and mass > 0.0:
        lost = np.abs(curve - clipped).sum() / mass
        if lost > CLIP_MASS_TOLERANCE:
            raise SpecOutOfBounds(
                f"cluster {spec.cluster_id}: {lost:.1%} of curve mass clipped"
            )
    return clipped


def _component_from_dict(d: dict) -> Component:
    kind = d["kind"]
    if kind == "gaussian_peak":
        return GaussianPeak(tuple(d["loc_range"]), tuple(d["scale_range"]), d["magnitude"])
    if kind == "logistic_step":
        return LogisticStep(tuple(d["loc_range"]), d["rate"], d["direction"], d.get("magnitude", 1.0))
    if kind == "pv_dip":
        return PVDip(tuple(d["loc_range"]), tuple(d["width_range"]), d["depth"])
    raise ValueError(f"unknown component kind {kind!r}")


def _spec_from_dict(d: dict) -> ShapeSpec:
    return ShapeSpec(
        cluster_id=d["cluster_id"],
        components=tuple(_component_from_dict(c) for c in d["components"]),
        base=d.get("base", 0.0),
        y0_mode=d.get("y0_mode", "low"),
        label=d.get("label", ""),
    )


_CATALOGUE_CACHE: dict[int, ShapeSpec] | None = None


def load_catalogue(path=None) -> dict[int, ShapeSpec]:
    """Load the 20-cluster shape catalogue (from ``path`` or package data)."""
    global _CATALOGUE_CACHE
    if path is None and _CATALOGUE_CACHE is not None:
        return _CATALOGUE_CACHE
    if path is None:
        text = resources.files("smtsbench.data").joinpath("shape_catalogue.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    entries = json.loads(text)
    catalogue = {e["cluster_id"]: _spec_from_dict(e) for e in entries}
    if path is None:
        _CATALOGUE_CACHE = catalogue
    return catalogue
