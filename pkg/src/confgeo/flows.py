"""Conformal geodesic flow, its Lorentz-force reduction, and closed forms.

The third-order conformal geodesic system is integrated as a first-order
system in (point, velocity, acceleration).  On Einstein backgrounds the
trace part of the curvature enters only through the constant multiplying
the metric, so the right-hand sides below never build curvature tensors.

Charged (Lorentz) flows replace the acceleration by the contraction of the
velocity with a fixed self-dual two-form; on hyper-Kahler models this is
an exact reduction of the conformal flow, and on the hyperbolic half-plane
it is the magnetic flow that plays the same role in two dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import DOP853, OdeSolution

from .errors import DomainError, UnsupportedOperationError
from .geometry import MetricModel
from .geometry.base import ChartPoint

__all__ = [
    "CGState",
    "LorentzState",
    "IntegratorConfig",
    "Trajectory",
    "TrajectorySample",
    "conformal_rhs",
    "acceleration_from_c",
    "lorentz_rhs",
    "integrate",
    "flat_circle",
    "halfplane_classify",
    "HalfPlaneRegime",
]

# Self-dual basis in orthonormal-frame components; frame indices need no
# raising so these constant matrices serve for both slots.
_FRAME_SD = np.zeros((3, 4, 4))
for _i, _pairs in enumerate((((0, 3), (1, 2)), ((1, 3), (2, 0)), ((2, 3), (0, 1)))):
    for _a, _b in _pairs:
        _FRAME_SD[_i, _a, _b] = 1.0
        _FRAME_SD[_i, _b, _a] = -1.0
del _i, _pairs, _a, _b


@dataclass
class CGState:
    """Point, unit velocity, and orthogonal acceleration of the third-order flow."""

    point: ChartPoint
    u: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        self.a = np.asarray(self.a, dtype=float)

    def constraint_residuals(self, model: MetricModel) -> tuple[float, float]:
        g = model.metric(self.point.array)
        return float(self.u @ g @ self.u - 1.0), float(self.u @ g @ self.a)

    def validate(self, model: MetricModel, tol: float = 1e-6) -> None:
        speed, ortho = self.constraint_residuals(model)
        if abs(speed) > tol:
            raise ValueError(f"velocity is not unit speed: g(u,u)-1 = {speed:.3e}")
        if abs(ortho) > tol:
            raise ValueError(f"acceleration not orthogonal: g(u,a) = {ortho:.3e}")


@dataclass
class LorentzState:
    """Point, unit velocity, and the constant level-set vector of the reduction.

    ``c`` holds the three components on the self-dual basis (for the
    half-plane only the last one is meaningful, acting as the magnetic
    strength).  ``e`` is its Euclidean length and is fixed at construction.
    """

    point: ChartPoint
    u: np.ndarray
    c: np.ndarray
    e: float = field(init=False)

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        if self.c.shape != (3,):
            raise ValueError("c must have three components")
        self.e = float(np.linalg.norm(self.c))

    def constraint_residuals(self, model: MetricModel) -> tuple[float]:
        g = model.metric(self.point.array)
        return (float(self.u @ g @ self.u - 1.0),)

    def validate(self, model: MetricModel, tol: float = 1e-6) -> None:
        (speed,) = self.constraint_residuals(model)
        if abs(speed) > tol:
            raise ValueError(f"velocity is not unit speed: g(u,u)-1 = {speed:.3e}")


@dataclass
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = np.inf
    dense_output: bool = False
    renormalize: bool = False

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class TrajectorySample:
    s: float
    point: ChartPoint
    u: np.ndarray
    a: Optional[np.ndarray]
    invariants: dict
    residuals: dict


@dataclass
class Trajectory:
    model_name: str
    rhs_kind: str
    s: np.ndarray
    y: np.ndarray  # one state row per sample
    invariants: dict
    residuals: dict
    stats: dict
    chart_id: str
    dim: int
    c: Optional[np.ndarray] = None
    interpolant: Optional[Callable] = None

    @property
    def complete(self) -> bool:
        return self.stats.get("status") == "finished"

    def sample(self, i: int) -> TrajectorySample:
        n = self.dim
        row = self.y[i]
        a = row[2 * n: 3 * n] if self.rhs_kind == "conformal" else None
        return TrajectorySample(
            s=float(self.s[i]),
            point=ChartPoint(self.chart_id, tuple(row[:n])),
            u=row[n: 2 * n],
            a=a,
            invariants={k: float(v[i]) for k, v in self.invariants.items()},
            residuals={k: float(v[i]) for k, v in self.residuals.items()},
        )

    @property
    def samples(self) -> list[TrajectorySample]:
        return [self.sample(i) for i in range(len(self.s))]

    def drift(self, name: str) -> float:
        vals = self.invariants[name]
        return float(np.max(vals) - np.min(vals))


def _coords(p) -> np.ndarray:
    if isinstance(p, ChartPoint):
        return p.array
    return np.asarray(p, dtype=float)


def _einstein_factor(model: MetricModel) -> float:
    lam = model.einstein_constant
    if lam is None:
        raise UnsupportedOperationError(
            f"{model.name}: the third-order flow needs the trace curvature "
            "normalization, undefined in two dimensions; use the magnetic flow")
    return float(lam)


def conformal_rhs(model: MetricModel, st: CGState):
    """Chart-component derivative of (point, u, a) for the third-order flow."""
    q = st.point.array
    dq, du, da = _conformal_rhs_split(model, q, st.u, st.a)
    return dq, du, da


def _conformal_rhs_split(model, q, u, a):
    lam = _einstein_factor(model)
    g = model.metric(q)
    G = model.christoffel(q)
    a_sq = a @ g @ a
    u_sq = u @ g @ u
    du = a - np.einsum("ijk,j,k->i", G, u, u)
    da = -(a_sq + lam * u_sq) * u + lam * u - np.einsum("ijk,j,k->i", G, u, a)
    return u.copy(), du, da


def _force_two_form(model: MetricModel, q: np.ndarray, c: np.ndarray) -> np.ndarray:
    if model.hyper_kahler:
        basis = model.sd_two_forms(q)
        return np.einsum("i,iab->ab", c, basis)
    if hasattr(model, "area_form"):
        return c[2] * model.area_form(q)
    raise UnsupportedOperationError(
        f"{model.name}: no self-dual basis and no area form; "
        "the reduced flow is undefined here")


def acceleration_from_c(model: MetricModel, p, u, c) -> np.ndarray:
    """Acceleration with prescribed self-dual charges, in chart components.

    In an orthonormal frame the contraction of the velocity with the charge
    two-form gives spatial part c x u - u4 c and fourth component u . c; the
    construction makes g(a,u) = 0 and g(a,a) = |c|^2 identities rather than
    approximations.
    """
    if not model.hyper_kahler:
        raise UnsupportedOperationError(
            f"{model.name}: prescribing self-dual charges needs a parallel "
            "self-dual basis")
    q = _coords(p)
    c = np.asarray(c, dtype=float)
    C = model.coframe(q)
    uf = C @ np.asarray(u, dtype=float)
    G = np.einsum("i,iab->ab", c, _FRAME_SD)
    af = uf @ G
    return np.linalg.solve(C, af)


def lorentz_rhs(model: MetricModel, st: LorentzState):
    """Chart-component derivative of (point, u) for the charged reduction."""
    q = st.point.array
    dq, du = _lorentz_rhs_split(model, q, st.u, st.c)
    return dq, du


def _lorentz_rhs_split(model, q, u, c):
    g = model.metric(q)
    ginv = model.inverse_metric(q)
    G = model.christoffel(q)
    F = _force_two_form(model, q, c)
    a = ginv @ (u @ F)
    du = a - np.einsum("ijk,j,k->i", G, u, u)
    return u.copy(), du


def _geodesic_rhs_split(model, q, u):
    G = model.christoffel(q)
    return u.copy(), -np.einsum("ijk,j,k->i", G, u, u)


def _pack_rhs(model: MetricModel, rhs_kind: str, c: Optional[np.ndarray]):
    """Vectorized right-hand side; trial points outside the chart return NaN
    so the adaptive stepper rejects and shrinks instead of crashing in the
    metric inversion."""
    n = model.dim

    if rhs_kind == "conformal":
        def split(y):
            dq, du, da = _conformal_rhs_split(model, y[:n], y[n:2 * n], y[2 * n:])
            return np.concatenate([dq, du, da])
        width = 3 * n
    elif rhs_kind == "lorentz":
        def split(y):
            dq, du = _lorentz_rhs_split(model, y[:n], y[n:], c)
            return np.concatenate([dq, du])
        width = 2 * n
    elif rhs_kind == "geodesic":
        def split(y):
            dq, du = _geodesic_rhs_split(model, y[:n], y[n:])
            return np.concatenate([dq, du])
        width = 2 * n
    else:
        raise ValueError(f"unknown rhs_kind {rhs_kind!r}")

    bad = np.full(width, np.nan)

    # Trial stages may legitimately poke past a chart bound; most metrics
    # continue finitely there, letting accepted endpoints cross so the exit
    # event can fire.  Only genuinely singular evaluations become NaN, which
    # the stepper treats as a rejected step.
    def fun(s, y):
        try:
            with np.errstate(all="ignore"):
                return split(y)
        except (np.linalg.LinAlgError, FloatingPointError, ZeroDivisionError):
            return bad

    return fun, width


def _default_invariants(model, rhs_kind, c):
    n = model.dim

    def a_of(y):
        if rhs_kind == "conformal":
            return y[2 * n: 3 * n]
        return acceleration_from_c(model, y[:n], y[n:2 * n], c) \
            if model.hyper_kahler else None

    def a_sq(s, y):
        q = y[:n]
        if rhs_kind == "lorentz" and not model.hyper_kahler:
            u = y[n:2 * n]
            g = model.metric(q)
            ginv = model.inverse_metric(q)
            F = _force_two_form(model, q, c)
            a = ginv @ (u @ F)
            return float(a @ g @ a)
        a = a_of(y)
        g = model.metric(q)
        return float(a @ g @ a)

    def u_sq(s, y):
        q, u = y[:n], y[n:2 * n]
        return float(u @ model.metric(q) @ u)

    if rhs_kind == "geodesic":
        return {"u_sq": u_sq}
    return {"a_sq": a_sq}


def _residual_fns(model, rhs_kind):
    n = model.dim

    def unit_speed(s, y):
        q, u = y[:n], y[n:2 * n]
        return float(u @ model.metric(q) @ u - 1.0)

    def orthogonality(s, y):
        q, u, a = y[:n], y[n:2 * n], y[2 * n:]
        return float(u @ model.metric(q) @ a)

    out = {"unit_speed": unit_speed}
    if rhs_kind == "conformal":
        out["orthogonality"] = orthogonality
    return out


def _project(model, rhs_kind, y):
    n = model.dim
    q = y[:n]
    g = model.metric(q)
    u = y[n:2 * n]
    u = u / np.sqrt(u @ g @ u)
    y = y.copy()
    y[n:2 * n] = u
    if rhs_kind == "conformal":
        a = y[2 * n:]
        a = a - (a @ g @ u) * u
        y[2 * n:] = a
    return y


_DOP853_STAGE_EVALS = 12  # function evaluations per attempted step


def integrate(model: MetricModel, rhs_kind: str, initial, s_span,
              cfg: Optional[IntegratorConfig] = None, *,
              n_samples: int = 201,
              invariant_fns: Optional[dict] = None) -> Trajectory:
    """Integrate one trajectory with dense output and chart-exit detection.

    The initial state must satisfy its constraints to 1e-9.  The chart box
    is checked after every accepted step; on exit the boundary crossing is
    bisected to 1e-10 in arclength and the trajectory is truncated there.
    Step-size underflow produces a partial trajectory whose stats carry a
    diagnostic instead of raising.
    """
    cfg = cfg or IntegratorConfig()
    s0, s1 = float(s_span[0]), float(s_span[1])
    if not s1 > s0:
        raise ValueError("s_span must be increasing")
    n = model.dim

    c = None
    if rhs_kind == "lorentz":
        if not isinstance(initial, LorentzState):
            raise TypeError("lorentz integration needs a LorentzState")
        initial.validate(model, tol=1e-9)
        c = initial.c.copy()
        y0 = np.concatenate([initial.point.array, initial.u])
    elif rhs_kind == "conformal":
        if not isinstance(initial, CGState):
            raise TypeError("conformal integration needs a CGState")
        initial.validate(model, tol=1e-9)
        y0 = np.concatenate([initial.point.array, initial.u, initial.a])
    elif rhs_kind == "geodesic":
        y0 = np.concatenate([initial.point.array, initial.u])
    else:
        raise ValueError(f"unknown rhs_kind {rhs_kind!r}")

    model.assert_in_chart(y0[:n])
    fun, _ = _pack_rhs(model, rhs_kind, c)

    ts = [s0]
    interps = []
    stats = {"steps": 0, "rejections": 0, "nfev": 0, "status": "running"}
    solver = DOP853(fun, s0, y0, s1, rtol=cfg.rel_tol, atol=cfg.abs_tol,
                    max_step=cfg.max_step)
    nfev_mark = solver.nfev
    s_end = s1
    exit_info = None
    stalled = 0

    while solver.status == "running":
        msg = solver.step()
        attempts = max(1, round((solver.nfev - nfev_mark) / _DOP853_STAGE_EVALS))
        if solver.status == "failed":
            stats["status"] = "step_failure"
            stats["diagnostic"] = msg or "step size underflow"
            s_end = solver.t_old if solver.t_old is not None else ts[-1]
            break
        stats["steps"] += 1
        stats["rejections"] += attempts - 1
        interp = solver.dense_output()
        nfev_mark = solver.nfev
        ts.append(solver.t)
        interps.append(interp)

        # Zeno guard: repeated microscopic progress means the flow is pinned
        # against a singular locus that steps cannot cross.
        if solver.t - solver.t_old < 1e-12 * max(1.0, abs(solver.t)):
            stalled += 1
            if stalled >= 25:
                stats["status"] = "step_failure"
                stats["diagnostic"] = "progress stalled near a singular locus"
                s_end = solver.t
                break
        else:
            stalled = 0

        if model.chart_violation(solver.y[:n]) is not None:
            lo, hi = solver.t_old, solver.t
            while hi - lo > 1e-10:
                mid = 0.5 * (lo + hi)
                if model.chart_violation(interp(mid)[:n]) is None:
                    lo = mid
                else:
                    hi = mid
            s_end = lo
            exit_info = model.chart_violation(interp(hi)[:n])
            stats["status"] = "chart_exit"
            break

        if cfg.renormalize:
            y_proj = _project(model, rhs_kind, solver.y)
            if solver.status == "running":
                h = solver.step_size
                solver = DOP853(fun, solver.t, y_proj, s1, rtol=cfg.rel_tol,
                                atol=cfg.abs_tol, max_step=cfg.max_step,
                                first_step=h)
                nfev_mark = solver.nfev

    if stats["status"] == "running":
        stats["status"] = "finished"
        s_end = solver.t
    stats["nfev"] = solver.nfev
    if exit_info is not None:
        stats["exit_info"] = exit_info

    if not interps:
        sol = None
        grid = np.array([s0])
        rows = y0[np.newaxis, :]
    else:
        sol = OdeSolution(ts, interps)
        grid = np.linspace(s0, s_end, n_samples)
        rows = sol(grid).T

    inv_fns = dict(_default_invariants(model, rhs_kind, c))
    if invariant_fns:
        inv_fns.update(invariant_fns)
    res_fns = _residual_fns(model, rhs_kind)

    invariants = {k: np.array([fn(s, row) for s, row in zip(grid, rows)])
                  for k, fn in inv_fns.items()}
    residuals = {k: np.array([fn(s, row) for s, row in zip(grid, rows)])
                 for k, fn in res_fns.items()}

    return Trajectory(
        model_name=model.name,
        rhs_kind=rhs_kind,
        s=grid,
        y=rows,
        invariants=invariants,
        residuals=residuals,
        stats=stats,
        chart_id=model.chart_id,
        dim=n,
        c=c,
        interpolant=sol if cfg.dense_output else None,
    )


def flat_circle(x0, v0, a0, s):
    """Position along the flat-space trajectory with constant speed and turning.

    The path is a circle of radius 1/|a0| through x0 with initial direction
    v0; a vanishing a0 degenerates to the straight line x0 + s v0.  ``s``
    may be a scalar or an array.
    """
    x0 = np.asarray(x0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    a0 = np.asarray(a0, dtype=float)
    s = np.asarray(s, dtype=float)
    mag = np.linalg.norm(a0)
    if mag == 0.0:
        return x0 + np.multiply.outer(s, v0)
    phase = mag * s
    return (x0
            + np.multiply.outer(np.sin(phase), v0) / mag
            + np.multiply.outer(1.0 - np.cos(phase), a0) / mag ** 2)


@dataclass(frozen=True)
class HalfPlaneRegime:
    regime: str
    radius: Optional[float]
    first_integral: float


def halfplane_classify(B: float) -> HalfPlaneRegime:
    """Regime of the magnetic flow on the hyperbolic half-plane.

    Weak fields (B < 1) give unbounded curves, B = 1 gives horocircles,
    and strong fields close up into circles of radius 1/B, the radius
    measured as the curvature reciprocal 1/|a| (equivalently the orbit's
    Euclidean radius over its Euclidean center height, (ymax - ymin) /
    (ymax + ymin)).  The first integral F(u, a) equals B^2 in every
    regime.
    """
    B = float(B)
    if B <= 0.0:
        raise DomainError("B", B, "magnetic strength must be positive")
    if B < 1.0:
        return HalfPlaneRegime("open_unbounded", None, B * B)
    if B == 1.0:
        return HalfPlaneRegime("horocircle", None, B * B)
    return HalfPlaneRegime("closed", 1.0 / B, B * B)
