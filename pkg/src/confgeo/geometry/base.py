"""Chart-level geometry: metric models, orthonormal frames, duality.

Every model fixes a single coordinate chart and supplies closed-form
metric components together with their analytic first derivatives.
Christoffel symbols, Schouten tensors and Hodge duals are assembled
here from those components.  The finite-difference counterparts in
:mod:`confgeo.numdiff` are deliberately independent and serve as
oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..errors import DomainError, UnsupportedOperationError

__all__ = [
    "ChartPoint",
    "TwoForm",
    "MetricModel",
    "levi_civita_symbol",
    "wedge11",
]


def _parity(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def levi_civita_symbol(n: int) -> np.ndarray:
    """Totally antisymmetric symbol with ``eps[0,1,...,n-1] = +1``."""
    eps = np.zeros((n,) * n)
    for perm in permutations(range(n)):
        eps[perm] = _parity(perm)
    return eps


_LEVI = {n: levi_civita_symbol(n) for n in (2, 3, 4)}


def wedge11(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Components of the wedge of two one-forms, (a∧b)_ij = a_i b_j - a_j b_i."""
    return np.outer(a, b) - np.outer(b, a)


@dataclass(frozen=True)
class ChartPoint:
    """A point of a fixed coordinate chart."""

    chart_id: str
    coords: tuple

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class TwoForm:
    """Antisymmetric chart components plus a duality label (SD/ASD/mixed)."""

    components: np.ndarray
    duality: str = "mixed"

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float)
        if not np.allclose(c, -c.T, atol=0.0):
            raise ValueError("two-form components must be exactly antisymmetric")
        object.__setattr__(self, "components", c)


class MetricModel:
    """Base class for the chart geometries.

    Subclasses provide ``metric``, ``metric_derivs`` (analytic first
    derivatives, indexed ``dg[c,a,b] = d g_ab / d x^c``) and ``coframe``
    (rows are the legs of an orthonormal coframe, whose ordering fixes
    the orientation used by every Hodge star).
    """

    name: str = "abstract"
    chart_id: str = "abstract"
    dim: int = 4
    coord_names: tuple = ()
    angle_periods: dict = {}
    # Schouten tensor is einstein_constant * metric; None means the
    # operation is unsupported (the two-dimensional half-plane).
    einstein_constant = None
    hyper_kahler: bool = False
    # entries (coord index, lower, upper, description); None = unbounded
    chart_bounds: tuple = ()
    # interior box used when callers need random well-conditioned points
    sample_box: tuple = ()

    # ---- components supplied by subclasses ----------------------------

    def metric(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def metric_derivs(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def coframe(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def killing_fields(self) -> dict:
        """Map name -> callable(x) giving chart components of a Killing field."""
        return {}

    # ---- chart bookkeeping --------------------------------------------

    def point(self, *coords) -> ChartPoint:
        p = ChartPoint(self.chart_id, tuple(float(c) for c in coords))
        self.assert_in_chart(p.array)
        return p

    def chart_violation(self, x: np.ndarray):
        """Return (coord name, value, bound description) or None."""
        for idx, lo, hi, desc in self.chart_bounds:
            v = x[idx]
            if lo is not None and v <= lo:
                return self.coord_names[idx], float(v), desc
            if hi is not None and v >= hi:
                return self.coord_names[idx], float(v), desc
        return None

    def in_chart(self, x: np.ndarray) -> bool:
        return self.chart_violation(np.asarray(x, dtype=float)) is None

    def assert_in_chart(self, x: np.ndarray) -> None:
        bad = self.chart_violation(np.asarray(x, dtype=float))
        if bad is not None:
            name, value, desc = bad
            raise DomainError(name, value, desc)

    def random_point(self, rng: np.random.Generator) -> np.ndarray:
        box = np.asarray(self.sample_box, dtype=float)
        return rng.uniform(box[:, 0], box[:, 1])

    # ---- assembled objects ---------------------------------------------

    def inverse_metric(self, x: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self.metric(x))

    def christoffel(self, x: np.ndarray) -> np.ndarray:
        """Levi-Civita connection coefficients, indexed Gamma[a, b, c]."""
        dg = self.metric_derivs(x)
        sym = np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg
        return 0.5 * np.einsum("ad,dbc->abc", self.inverse_metric(x), sym)

    def schouten(self, x: np.ndarray) -> np.ndarray:
        if self.einstein_constant is None:
            raise UnsupportedOperationError(
                f"Schouten tensor is not defined for model {self.name!r} "
                "(dimension 2 has no Schouten normalization)"
            )
        return self.einstein_constant * self.metric(x)

    def frame(self, x: np.ndarray) -> np.ndarray:
        """Rows are the orthonormal frame vectors E_i, dual to coframe rows."""
        return np.linalg.inv(self.coframe(x)).T

    def to_frame(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Chart components of a vector -> frame components."""
        return self.coframe(x) @ np.asarray(v, dtype=float)

    def from_frame(self, x: np.ndarray, vf: np.ndarray) -> np.ndarray:
        """Frame components of a vector -> chart components."""
        return self.frame(x).T @ np.asarray(vf, dtype=float)

    def lower_index(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.metric(x) @ np.asarray(v, dtype=float)

    def raise_index(self, x: np.ndarray, w: np.ndarray) -> np.ndarray:
        return self.inverse_metric(x) @ np.asarray(w, dtype=float)

    def inner(self, x: np.ndarray, v: np.ndarray, w: np.ndarray) -> float:
        return float(np.asarray(v) @ self.metric(x) @ np.asarray(w))

    def volume_component(self, x: np.ndarray) -> float:
        """Signed coefficient of the volume form in chart coordinates.

        The sign records the chart's handedness relative to the frame
        ordering (which is declared positively oriented).
        """
        return float(np.linalg.det(self.coframe(x)))

    def sd_two_forms(self, x: np.ndarray) -> np.ndarray:
        """The distinguished self-dual basis built on the model's coframe.

        Returns a (3, n, n) stack.  Only meaningful for the hyper-Kahler
        models, where these forms are parallel.
        """
        if not self.hyper_kahler:
            raise UnsupportedOperationError(
                f"model {self.name!r} carries no parallel self-dual basis"
            )
        e1, e2, e3, e4 = self.coframe(x)
        return np.stack([
            wedge11(e1, e4) + wedge11(e2, e3),
            wedge11(e2, e4) + wedge11(e3, e1),
            wedge11(e3, e4) + wedge11(e1, e2),
        ])

    def hodge_star_2form(self, x: np.ndarray, F: np.ndarray) -> np.ndarray:
        """Hodge dual of a two-form, orientation set by the frame ordering."""
        if self.dim != 4:
            raise UnsupportedOperationError("two-form duality needs dimension 4")
        ginv = self.inverse_metric(x)
        Fup = ginv @ F @ ginv.T
        return 0.5 * self.volume_component(x) * np.einsum(
            "abcd,cd->ab", _LEVI[4], Fup
        )

    def duality_of(self, x: np.ndarray, F: np.ndarray, rtol: float = 1e-8) -> str:
        star = self.hodge_star_2form(x, F)
        scale = np.max(np.abs(F))
        if scale == 0.0:
            return "SD"
        if np.max(np.abs(star - F)) <= rtol * scale:
            return "SD"
        if np.max(np.abs(star + F)) <= rtol * scale:
            return "ASD"
        return "mixed"

    def two_form(self, x: np.ndarray, F: np.ndarray) -> TwoForm:
        return TwoForm(np.asarray(F, dtype=float), self.duality_of(x, F))

    def __repr__(self) -> str:  # pragma: no cover
        return f"<{type(self).__name__} {self.name}>"
