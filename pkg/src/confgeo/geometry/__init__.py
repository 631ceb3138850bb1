"""Model geometries and chart-level operations."""

from __future__ import annotations

import numpy as np

from .base import ChartPoint, MetricModel, TwoForm, levi_civita_symbol, wedge11
from .cp2 import CP2
from .eguchi_hanson import EguchiHanson
from .euler import left_invariant_fields, right_invariant_fields, sigma_forms
from .flat import Flat4
from .gibbons_hawking import (
    GibbonsHawking,
    eh_two_center_gh_data,
    flat_gh_data,
    gh_check,
    taub_nut_gh_data,
)
from .halfplane import HalfPlane
from .taub_nut import TaubNUT

__all__ = [
    "ChartPoint",
    "MetricModel",
    "TwoForm",
    "levi_civita_symbol",
    "wedge11",
    "sigma_forms",
    "left_invariant_fields",
    "right_invariant_fields",
    "Flat4",
    "HalfPlane",
    "TaubNUT",
    "EguchiHanson",
    "CP2",
    "GibbonsHawking",
    "flat_gh_data",
    "taub_nut_gh_data",
    "eh_two_center_gh_data",
    "make_model",
    "metric_at",
    "christoffel_at",
    "schouten_at",
    "sd_two_forms_at",
    "gh_check",
]

_MODEL_BUILDERS = {
    "flat4": lambda params: Flat4(),
    "half_plane": lambda params: HalfPlane(),
    "taub_nut": lambda params: TaubNUT(**params),
    "eguchi_hanson": lambda params: EguchiHanson(**params),
    "cp2": lambda params: CP2(),
    "gh_flat": lambda params: flat_gh_data(),
    "gh_taub_nut": lambda params: taub_nut_gh_data(**params),
    "gh_two_center": lambda params: eh_two_center_gh_data(**params),
}


def make_model(name: str, params: dict | None = None) -> MetricModel:
    """Build a model from its scenario name and parameter dict."""
    try:
        builder = _MODEL_BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown model {name!r}; known: {sorted(_MODEL_BUILDERS)}"
        ) from None
    return builder(dict(params or {}))


def _coords(model: MetricModel, p) -> np.ndarray:
    x = p.array if isinstance(p, ChartPoint) else np.asarray(p, dtype=float)
    model.assert_in_chart(x)
    return x


def metric_at(model: MetricModel, p) -> np.ndarray:
    return model.metric(_coords(model, p))


def christoffel_at(model: MetricModel, p) -> np.ndarray:
    return model.christoffel(_coords(model, p))


def schouten_at(model: MetricModel, p) -> np.ndarray:
    return model.schouten(_coords(model, p))


def sd_two_forms_at(model: MetricModel, p) -> list[TwoForm]:
    x = _coords(model, p)
    return [model.two_form(x, F) for F in model.sd_two_forms(x)]
