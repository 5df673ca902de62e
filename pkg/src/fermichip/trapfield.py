"""Magnetostatics of chip wire traps.

Finite straight segments (Biot-Savart) plus uniform bias fields.  On top of
the field model: location of the trap minimum, bottom field B0, harmonic
frequencies per spin state from a finite-difference Hessian, trap depth from
an escape-ray search, and a least-squares Ioffe-Pritchard parameterization
(B0, B', B'') used by the RF-dressing module.

Positions are in metres, fields in tesla, currents in ampere.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .constants import GAUSS, K_B, MICROMETER, MU_0, SpinState, magnetic_moment

__all__ = [
    "WireSegment",
    "FieldModel",
    "AnalyticIPField",
    "CallableField",
    "IPTrapParams",
    "TrapMinimum",
    "TrapFrequencies",
    "TrapDepthReport",
    "SingularityError",
    "ConvergenceError",
    "SaddlePointError",
    "NotATrapError",
    "PoorFitWarning",
    "potential",
    "find_minimum",
    "trap_frequencies",
    "trap_depth",
    "ip_fit",
    "load_geometry",
    "save_geometry",
]

SINGULARITY_GUARD = 1e-6  # m, minimum approach to a segment axis


class SingularityError(ValueError):
    """Field requested within the singularity guard of a wire axis."""


class ConvergenceError(RuntimeError):
    """Minimum search did not converge to the requested gradient norm."""


class SaddlePointError(RuntimeError):
    """Search converged to a critical point that is not a minimum of |B|."""


class NotATrapError(RuntimeError):
    """Potential Hessian has a non-positive eigenvalue at the minimum."""


class PoorFitWarning(UserWarning):
    """Ioffe-Pritchard fit residual above the reporting threshold."""


@dataclass(frozen=True)
class WireSegment:
    """Straight wire from a to b (m) carrying signed current (A, along a -> b)."""

    a: tuple[float, float, float]
    b: tuple[float, float, float]
    current: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if np.linalg.norm(b - a) <= 0:
            raise ValueError("segment endpoints coincide")
        object.__setattr__(self, "a", tuple(a))
        object.__setattr__(self, "b", tuple(b))

    def field(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        a = np.asarray(self.a)
        b = np.asarray(self.b)
        u = b - a
        u = u / np.linalg.norm(u)
        pa = r - a
        pb = r - b
        pa_u = pa @ u
        pb_u = pb @ u
        rho_vec = pa - pa_u[..., None] * u
        # Clamp the radial distance at a sub-guard floor: keeps |B| a huge but
        # finite repulsive wall on the axis instead of overflowing (guarded
        # evaluations raise before ever getting this close).
        rho2 = np.maximum(np.sum(rho_vec**2, axis=-1), (0.25 * SINGULARITY_GUARD) ** 2)
        na = np.maximum(np.linalg.norm(pa, axis=-1), 0.25 * SINGULARITY_GUARD)
        nb = np.maximum(np.linalg.norm(pb, axis=-1), 0.25 * SINGULARITY_GUARD)
        factor = MU_0 * self.current / (4.0 * np.pi) * (pa_u / na - pb_u / nb) / rho2
        return factor[..., None] * np.cross(np.broadcast_to(u, rho_vec.shape), rho_vec)

    def line_distance(self, r: np.ndarray) -> np.ndarray:
        """Distance from r to the infinite axis through the segment."""
        r = np.asarray(r, dtype=float)
        a = np.asarray(self.a)
        u = np.asarray(self.b) - a
        u = u / np.linalg.norm(u)
        pa = r - a
        rho_vec = pa - (pa @ u)[..., None] * u
        return np.linalg.norm(rho_vec, axis=-1)

    def translated(self, offset) -> "WireSegment":
        off = np.asarray(offset, dtype=float)
        return WireSegment(tuple(np.asarray(self.a) + off), tuple(np.asarray(self.b) + off), self.current)


@dataclass
class FieldModel:
    """Wire segments plus a uniform bias field; optionally gravity and a chip plane.

    gravity: acceleration vector (m/s^2) or None (off, the default).
    chip_plane: (normal, offset) such that points with normal . r > offset lie
    beyond the chip surface (escape rays are truncated there).
    """

    segments: list[WireSegment] = field(default_factory=list)
    bias: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gravity: tuple[float, float, float] | None = None
    chip_plane: tuple[tuple[float, float, float], float] | None = None

    def field(self, r, guard: float = SINGULARITY_GUARD) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if guard > 0 and self.segments:
            d = self.min_line_distance(r)
            if np.any(d < guard):
                raise SingularityError(
                    f"field evaluated within {guard*1e6:.3g} um of a wire axis"
                )
        out = np.broadcast_to(np.asarray(self.bias, dtype=float), r.shape).copy()
        for seg in self.segments:
            out += seg.field(r)
        return out

    def min_line_distance(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if not self.segments:
            return np.full(r.shape[:-1], np.inf)
        return np.min([seg.line_distance(r) for seg in self.segments], axis=0)

    def beyond_chip(self, r) -> np.ndarray:
        if self.chip_plane is None:
            r = np.asarray(r, dtype=float)
            return np.zeros(r.shape[:-1], dtype=bool)
        normal, offset = self.chip_plane
        return np.asarray(r, dtype=float) @ np.asarray(normal, dtype=float) > offset

    def translated(self, offset) -> "FieldModel":
        return replace(
            self,
            segments=[s.translated(offset) for s in self.segments],
            chip_plane=None
            if self.chip_plane is None
            else (
                self.chip_plane[0],
                self.chip_plane[1]
                + float(np.asarray(self.chip_plane[0], dtype=float) @ np.asarray(offset, dtype=float)),
            ),
        )


@dataclass
class AnalyticIPField:
    """Quadratic Ioffe-Pritchard field, Maxwell-consistent, longitudinal axis = local y.

    B_x = B' x - (B''/2) x y,  B_z = -B' z - (B''/2) y z,
    B_y = B0 + (B''/2) (y^2 - (x^2 + z^2)/2),
    expressed in the frame with columns of `axes` as local basis vectors.
    """

    b0: float
    b_prime: float
    b_double_prime: float = 0.0
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    axes: np.ndarray | None = None
    gravity: tuple[float, float, float] | None = None
    chip_plane: None = None

    def field(self, r, guard: float = 0.0) -> np.ndarray:
        r = np.asarray(r, dtype=float) - np.asarray(self.center, dtype=float)
        if self.axes is not None:
            r = r @ np.asarray(self.axes, dtype=float)
        x, y, z = r[..., 0], r[..., 1], r[..., 2]
        bp, bpp = self.b_prime, self.b_double_prime
        bx = bp * x - 0.5 * bpp * x * y
        bz = -bp * z - 0.5 * bpp * y * z
        by = self.b0 + 0.5 * bpp * (y**2 - 0.5 * (x**2 + z**2))
        out = np.stack([bx, by, bz], axis=-1)
        if self.axes is not None:
            out = out @ np.asarray(self.axes, dtype=float).T
        return out

    def min_line_distance(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.full(r.shape[:-1], np.inf)

    def beyond_chip(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.zeros(r.shape[:-1], dtype=bool)


@dataclass
class CallableField:
    """Adapter giving any r -> B callable the field-model interface."""

    fn: object
    gravity: tuple[float, float, float] | None = None
    chip_plane: None = None

    def field(self, r, guard: float = 0.0) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(r, dtype=float)), dtype=float)

    def min_line_distance(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.full(r.shape[:-1], np.inf)

    def beyond_chip(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.zeros(r.shape[:-1], dtype=bool)


def potential(model, state: SpinState, r, guard: float = SINGULARITY_GUARD) -> np.ndarray:
    """Zeeman potential m_F g_F mu_B |B(r)|, plus gravity if the model carries it."""
    r = np.asarray(r, dtype=float)
    try:
        b = model.field(r, guard=guard)
    except TypeError:
        b = model.field(r)
    u = magnetic_moment(state) * np.linalg.norm(b, axis=-1)
    g = getattr(model, "gravity", None)
    if g is not None:
        u = u - state.species.mass * (r @ np.asarray(g, dtype=float))
    return u


def _field_norm(model, r) -> float:
    r = np.asarray(r, dtype=float)
    try:
        b = model.field(r, guard=0.0)
    except TypeError:
        b = model.field(r)
    return float(np.linalg.norm(b))


def _grad_richardson(f, x0: np.ndarray, h: float) -> np.ndarray:
    def grad(hh):
        g = np.empty(3)
        for i in range(3):
            e = np.zeros(3)
            e[i] = hh
            g[i] = (f(x0 + e) - f(x0 - e)) / (2.0 * hh)
        return g

    return (4.0 * grad(h / 2.0) - grad(h)) / 3.0


def _hessian_fd(f, x0: np.ndarray, h: float, richardson: bool = True) -> np.ndarray:
    def hess(hh):
        f0 = f(x0)
        out = np.empty((3, 3))
        steps = [np.array([hh if k == i else 0.0 for k in range(3)]) for i in range(3)]
        for i in range(3):
            out[i, i] = (f(x0 + steps[i]) - 2.0 * f0 + f(x0 - steps[i])) / hh**2
        for i in range(3):
            for j in range(i + 1, 3):
                val = (
                    f(x0 + steps[i] + steps[j])
                    - f(x0 + steps[i] - steps[j])
                    - f(x0 - steps[i] + steps[j])
                    + f(x0 - steps[i] - steps[j])
                ) / (4.0 * hh**2)
                out[i, j] = out[j, i] = val
        return out

    if not richardson:
        return hess(h)
    return (4.0 * hess(h / 2.0) - hess(h)) / 3.0


@dataclass(frozen=True)
class TrapMinimum:
    position: np.ndarray
    b0: float                 # T
    zero_minimum: bool
    grad_norm: float          # |grad |B|| at the returned point, T/m


def find_minimum(
    model,
    seed,
    grad_tol: float = 1e-10,
    zero_field_tol: float = 1e-9,
    newton_step: float = 1e-7,
) -> TrapMinimum:
    """Locate a local minimum of |B| near `seed`.

    Deterministic for a fixed seed: strictly descending gradient steps on
    |B|^2 followed by damped Newton polish (|B|^2 stays smooth through
    zero-field minima).  Raises ConvergenceError if the |grad |B|| criterion
    cannot be met and SaddlePointError if the Hessian at the critical point
    is indefinite.
    """
    seed = np.asarray(seed, dtype=float)

    def phi(r):
        try:
            b = model.field(r, guard=0.0)
        except TypeError:
            b = model.field(r)
        return float(b @ b)

    # Strictly descending gradient stage keeps the search inside the seed's
    # basin (chip traps can have deeper field zeros elsewhere).
    x = seed.copy()
    h = newton_step
    step_len = 1e-6
    fx = phi(x)
    for _ in range(400):
        g = _grad_richardson(phi, x, h)
        gn = np.linalg.norm(g)
        if gn == 0.0:
            break
        direction = -g / gn
        while step_len > 1e-13:
            trial = x + step_len * direction
            ft = phi(trial)
            if ft < fx:
                x, fx = trial, ft
                step_len *= 1.4
                break
            step_len *= 0.5
        else:
            break

    # Damped Newton polish on grad phi.
    for _ in range(80):
        g = _grad_richardson(phi, x, h)
        hess = _hessian_fd(phi, x, h)
        try:
            step = np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        scale = 1.0
        moved = False
        for _ in range(30):
            trial = x - scale * step
            if phi(trial) <= fx + 1e-18:
                x = trial
                fx = phi(x)
                moved = True
                break
            scale *= 0.5
        if not moved or np.linalg.norm(scale * step) < 1e-14:
            break

    b0 = _field_norm(model, x)
    zero = b0 < zero_field_tol
    if zero:
        grad_norm = float("nan")
    else:
        gb = _grad_richardson(lambda r: _field_norm(model, r), x, h / 10.0)
        grad_norm = float(np.linalg.norm(gb))
        if grad_norm > grad_tol:
            raise ConvergenceError(
                f"|grad |B|| = {grad_norm:.3e} T/m exceeds tolerance {grad_tol:.1e}; "
                f"bracket state: position {x}, B0 = {b0:.6e} T"
            )
        hb = _hessian_fd(lambda r: _field_norm(model, r), x, h)
        eigs = np.linalg.eigvalsh(hb)
        scale = max(abs(eigs).max(), 1e-30)
        if eigs.min() < -1e-6 * scale:
            raise SaddlePointError(
                f"critical point at {x} is not a minimum (|B| Hessian eigenvalues {eigs})"
            )
    return TrapMinimum(position=x, b0=b0, zero_minimum=zero, grad_norm=grad_norm)


@dataclass(frozen=True)
class TrapFrequencies:
    omega: np.ndarray   # rad/s, ascending
    axes: np.ndarray    # columns are the corresponding principal directions


def _hessian_step(model, r0: np.ndarray) -> float:
    # Base step h = max(1e-8 m, 1e-4 * B0/B'), with B' estimated from the
    # transverse curvature of |B|^2 (H = 2 B'^2 there).
    b0 = _field_norm(model, r0)

    def phi(r):
        b = model.field(r)
        return float(b @ b)

    h_probe = _hessian_fd(phi, r0, 1e-7, richardson=False)
    lam = np.linalg.eigvalsh(h_probe)
    b_prime = math.sqrt(max(lam.max(), 0.0) / 2.0)
    if b_prime <= 0 or b0 <= 0:
        return 1e-8
    return min(max(1e-8, 1e-4 * b0 / b_prime), 1e-5)


def _hessian_fd_directional(f, x0, axes, steps, richardson=True):
    """Central-difference Hessian expressed in an orthonormal direction basis,
    with an independent step per direction (soft axes need much larger steps
    than stiff ones to stay above the cancellation noise floor)."""

    def hess(scale):
        f0 = f(x0)
        out = np.empty((3, 3))
        vecs = [axes[:, i] * steps[i] * scale for i in range(3)]
        for i in range(3):
            out[i, i] = (f(x0 + vecs[i]) - 2.0 * f0 + f(x0 - vecs[i])) / (steps[i] * scale) ** 2
        for i in range(3):
            for j in range(i + 1, 3):
                val = (
                    f(x0 + vecs[i] + vecs[j])
                    - f(x0 + vecs[i] - vecs[j])
                    - f(x0 - vecs[i] + vecs[j])
                    + f(x0 - vecs[i] - vecs[j])
                ) / (4.0 * steps[i] * steps[j] * scale**2)
                out[i, j] = out[j, i] = val
        return out

    g = hess(1.0)
    if richardson:
        g = (4.0 * hess(0.5) - g) / 3.0
    return axes @ g @ axes.T


def trap_frequencies(model, state: SpinState, r0, step: float | None = None) -> TrapFrequencies:
    """Harmonic frequencies sqrt(eigenvalues(Hessian U)/M) at the minimum r0.

    Central finite differences with one level of Richardson extrapolation.
    A probe pass at the base step finds the principal axes and curvature
    scales of |B|; the Hessian of the potential is then recomputed with a
    per-axis step balancing truncation against roundoff.  Raises
    NotATrapError on a non-positive eigenvalue.
    """
    r0 = np.asarray(r0, dtype=float)
    h0 = step if step is not None else _hessian_step(model, r0)

    def phi(r):
        try:
            b = model.field(r, guard=0.0)
        except TypeError:
            b = model.field(r)
        return float(b @ b)

    def u(r):
        return float(potential(model, state, r, guard=0.0))

    b0 = _field_norm(model, r0)
    h_phi = _hessian_fd(phi, r0, h0)
    lam_phi, axes = np.linalg.eigh(h_phi)
    # curvature of |B| along axis i is lam_phi_i / (2 B0); optimal step ~
    # eps^(1/6) sqrt(field scale / curvature)
    steps = np.empty(3)
    for i in range(3):
        if lam_phi[i] > 0 and b0 > 0:
            steps[i] = 2.2e-3 * 2.0 * b0 / math.sqrt(lam_phi[i])
        else:
            steps[i] = h0
    steps = np.clip(steps, 1e-9, 1e-4)

    hess = _hessian_fd_directional(u, r0, axes, steps)
    lam, vec = np.linalg.eigh(hess)
    if lam.min() <= 0:
        raise NotATrapError(f"potential Hessian eigenvalues {lam} include a non-positive value")
    omega = np.sqrt(lam / state.species.mass)
    return TrapFrequencies(omega=omega, axes=vec)


_RAY_DIRECTIONS = np.array(
    [
        (i, j, k)
        for i in (-1, 0, 1)
        for j in (-1, 0, 1)
        for k in (-1, 0, 1)
        if (i, j, k) != (0, 0, 0)
    ],
    dtype=float,
)
_RAY_DIRECTIONS /= np.linalg.norm(_RAY_DIRECTIONS, axis=1)[:, None]


@dataclass(frozen=True)
class TrapDepthReport:
    depth: float                      # J
    temperature_equiv: float          # depth / k_B, K
    escape_direction: np.ndarray
    excluded_directions: list         # rays still rising at truncation


def _ray_barrier(model, state, r0, direction, u0, ray_length, samples):
    s = np.geomspace(1e-7, ray_length, samples)
    pts = r0[None, :] + s[:, None] * direction[None, :]
    keep = ~model.beyond_chip(pts)
    pts = pts[keep]
    if len(pts) < 8:
        return None  # immediately truncated; no escape information this way
    u = np.full(len(pts), np.inf)
    dist = model.min_line_distance(pts)
    ok = dist >= SINGULARITY_GUARD
    if ok.any():
        safe_pts = pts[ok]
        try:
            bfield = model.field(safe_pts, guard=0.0)
        except TypeError:
            bfield = model.field(safe_pts)
        uu = magnetic_moment(state) * np.linalg.norm(bfield, axis=-1)
        g = getattr(model, "gravity", None)
        if g is not None:
            uu = uu - state.species.mass * (safe_pts @ np.asarray(g, dtype=float))
        u[ok] = uu
    finite = np.isfinite(u)
    if not finite.any():
        return np.inf, False
    u_max = float(np.max(u[finite]))
    barrier = u_max - u0
    if np.isinf(u).any():
        return barrier if barrier > 0 else np.inf, False  # wire in the way: huge wall
    i80 = int(0.8 * len(u))
    tail_rise = u[-1] - u[i80]
    still_rising = (np.argmax(u) >= len(u) - 2) and tail_rise > 0.05 * max(u_max - u0, 1e-300)
    return barrier, still_rising


def trap_depth(
    model,
    state: SpinState,
    r0,
    ray_length: float | None = None,
    samples: int = 500,
    refine_rounds: int = 2,
) -> TrapDepthReport:
    """Lowest escape barrier: min over ray directions of (max U along ray - U(r0)).

    26-direction grid plus angular refinement around the weakest ray.  Rays whose
    potential is still rising at truncation have no barrier inside the search
    range and are excluded (reported in the result).
    """
    r0 = np.asarray(r0, dtype=float)
    if ray_length is None:
        if getattr(model, "segments", None):
            far = max(
                np.linalg.norm(np.asarray(p) - r0)
                for seg in model.segments
                for p in (seg.a, seg.b)
            )
            ray_length = max(5e-3, 10.0 * far)
        else:
            ray_length = 5e-3
    u0 = float(potential(model, state, r0, guard=0.0))

    excluded = []
    best = (np.inf, None)
    for d in _RAY_DIRECTIONS:
        res = _ray_barrier(model, state, r0, d, u0, ray_length, samples)
        if res is None:
            continue
        barrier, rising = res
        if rising:
            excluded.append(d)
            continue
        if barrier < best[0]:
            best = (barrier, d)

    if best[1] is None:
        return TrapDepthReport(np.inf, np.inf, np.zeros(3), excluded)

    # refine directions around the weakest ray
    d = best[1]
    width = 0.45
    for _ in range(refine_rounds):
        t1 = np.cross(d, [0.0, 0.0, 1.0])
        if np.linalg.norm(t1) < 1e-8:
            t1 = np.cross(d, [0.0, 1.0, 0.0])
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(d, t1)
        for a in np.linspace(-width, width, 7):
            for b in np.linspace(-width, width, 7):
                dd = d + a * t1 + b * t2
                dd /= np.linalg.norm(dd)
                res = _ray_barrier(model, state, r0, dd, u0, ray_length, samples)
                if res is None:
                    continue
                barrier, rising = res
                if not rising and barrier < best[0]:
                    best = (barrier, dd)
        d = best[1]
        width /= 3.0

    depth = max(best[0], 0.0)
    return TrapDepthReport(depth, depth / K_B, best[1], excluded)


@dataclass(frozen=True)
class IPTrapParams:
    """Ioffe-Pritchard parameterization near the minimum.

    Along each transverse axis |B|(s) = sqrt(B0^2 + B'^2 s^2); along the soft
    axis |B|(s) = B0 + B'' s^2 / 2.
    """

    b0: float                # T
    b_prime: float           # T/m
    b_double_prime: float    # T/m^2
    center: np.ndarray
    axes: np.ndarray         # columns: [transverse1, transverse2, longitudinal]
    residual_rms: float      # of |B| over the transverse fit windows, T
    transverse_trapping: bool = True


def ip_fit(model, r0, residual_threshold: float = 0.01) -> IPTrapParams:
    """Least-squares IP parameterization of |B| around the minimum r0.

    Fits B^2 = B0^2 + B'^2 s^2 (linear in s^2) over |s| <= 0.2 B0/B' on each
    transverse principal axis, and B = B0 + B'' s^2/2 along the soft axis.
    Warns with PoorFitWarning if the |B| residual RMS exceeds
    residual_threshold * B0.
    """
    r0 = np.asarray(r0, dtype=float)
    b0 = _field_norm(model, r0)

    def phi(r):
        b = model.field(r)
        return float(b @ b)

    hess = _hessian_fd(phi, r0, max(1e-8, 1e-5 * max(b0, 1e-6)), richardson=False)
    lam, vec = np.linalg.eigh(hess)
    # soft (longitudinal) axis first eigenvalue; transverse are the two stiff ones
    soft_axis = vec[:, 0]
    trans_axes = [vec[:, 1], vec[:, 2]]
    bp_est = math.sqrt(max(lam[1:].mean(), 0.0) / 2.0)
    if bp_est * max(b0, 1e-12) == 0 or bp_est < 1e-6:
        return IPTrapParams(b0, 0.0, 0.0, r0, vec, 0.0, transverse_trapping=False)

    window = 0.2 * b0 / bp_est
    s = np.linspace(-window, window, 41)
    resid_sq = []
    bp_fits = []
    b0_fits = []
    for axis in trans_axes:
        pts = r0[None, :] + s[:, None] * axis[None, :]
        bmag = np.linalg.norm(model.field(pts), axis=-1)
        coeff = np.polyfit(s**2, bmag**2, 1)
        bp2, b02 = coeff[0], coeff[1]
        model_b = np.sqrt(np.maximum(b02 + bp2 * s**2, 0.0))
        resid_sq.extend((bmag - model_b) ** 2)
        bp_fits.append(math.sqrt(max(bp2, 0.0)))
        b0_fits.append(math.sqrt(max(b02, 0.0)))
    residual = math.sqrt(float(np.mean(resid_sq)))
    if residual > residual_threshold * b0:
        warnings.warn(
            f"IP fit residual RMS {residual:.3e} T exceeds {residual_threshold:.0%} of B0",
            PoorFitWarning,
        )

    pts = r0[None, :] + s[:, None] * soft_axis[None, :]
    bmag = np.linalg.norm(model.field(pts), axis=-1)
    bpp = 2.0 * np.polyfit(s**2, bmag, 1)[0]

    axes = np.column_stack([trans_axes[0], trans_axes[1], soft_axis])
    return IPTrapParams(
        b0=float(np.mean(b0_fits)),
        b_prime=float(np.mean(bp_fits)),
        b_double_prime=float(bpp),
        center=r0,
        axes=axes,
        residual_rms=residual,
    )


def save_geometry(path, model: FieldModel, seed=None, description: str = "") -> None:
    doc = {
        "description": description,
        "segments": [
            {
                "start_um": [p / MICROMETER for p in seg.a],
                "end_um": [p / MICROMETER for p in seg.b],
                "current_a": seg.current,
            }
            for seg in model.segments
        ],
        "bias_gauss": [b / GAUSS for b in model.bias],
    }
    if model.chip_plane is not None:
        normal, offset = model.chip_plane
        doc["chip_plane"] = {"normal": list(normal), "offset_um": offset / MICROMETER}
    if seed is not None:
        doc["seed_um"] = [p / MICROMETER for p in np.asarray(seed, dtype=float)]
    Path(path).write_text(json.dumps(doc, indent=2))


def load_geometry(path) -> tuple[FieldModel, np.ndarray | None]:
    """Read a geometry file; returns (model, suggested minimum seed or None)."""
    doc = json.loads(Path(path).read_text())
    segments = [
        WireSegment(
            tuple(np.asarray(s["start_um"], dtype=float) * MICROMETER),
            tuple(np.asarray(s["end_um"], dtype=float) * MICROMETER),
            float(s["current_a"]),
        )
        for s in doc.get("segments", [])
    ]
    bias = tuple(np.asarray(doc.get("bias_gauss", [0.0, 0.0, 0.0]), dtype=float) * GAUSS)
    chip_plane = None
    if "chip_plane" in doc:
        cp = doc["chip_plane"]
        chip_plane = (tuple(cp["normal"]), float(cp["offset_um"]) * MICROMETER)
    model = FieldModel(segments=segments, bias=bias, chip_plane=chip_plane)
    seed = None
    if "seed_um" in doc:
        seed = np.asarray(doc["seed_um"], dtype=float) * MICROMETER
    return model, seed
