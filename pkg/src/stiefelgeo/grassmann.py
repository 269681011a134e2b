"""Subspaces as a quotient of frames: horizontal calculus and geodesics.

A p-dimensional subspace is a frame up to right multiplication by an
orthogonal p x p matrix; the oriented variant quotients by rotations only.
Tangent vectors split into vertical directions x z (z skew), which move
along the fiber, and horizontal ones with x^T v = 0.  Horizontal geodesics
of the frame manifold project to geodesics of the quotient, so log and
distance reduce to: align the target representative inside its fiber,
shoot in the frame manifold, and keep the velocity horizontal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvariantViolation,
    NoConvergence,
    NotHorizontal,
    OrientationMismatch,
    OrientedUnsupported,
    ParseError,
    ResolutionTooCoarse,
    ShapeMismatch,
    TooFewSamples,
)
from .matcore import frobenius, matrix_from_json, matrix_to_json, polar_project, svd_factor
from .stiefel import (
    ShootingConfig,
    StiefelPoint,
    TangentVector,
    _exp_arrays,
    _lm_shoot,
    _orthonormal_completion,
    _pack,
    _project_raw,
    _restart_starts,
    _solve_reduced,
    _velocities_from_params,
    frame_from_json,
    frame_to_json,
    reduce_to_span,
)

_PROJECTOR_TOL = 1e-9
_ROTATION_TOL = 1e-8
_FIBER_TOL = 1e-8
_HORIZONTAL_TOL = 1e-8
_GAP_GUARD = 0.5


@dataclass(frozen=True, eq=False)
class GrassmannPoint:
    """A subspace, stored through one representative frame.

    ``oriented`` selects the oriented quotient (rotation fibers) instead of
    the full orthogonal one.  Representatives are gauge: two points are the
    same subspace iff their column-span projectors coincide, and in the
    oriented case iff the aligning rotation additionally has positive
    determinant.
    """

    representative: StiefelPoint
    oriented: bool = False

    @property
    def ambient_dim(self) -> int:
        return self.representative.ambient_dim

    @property
    def frame_dim(self) -> int:
        return self.representative.frame_dim

    def same_point(self, other: "GrassmannPoint", tol: float = _PROJECTOR_TOL) -> bool:
        """Span (and orientation, if flagged) equality of two points."""
        if self.oriented != other.oriented:
            raise OrientationMismatch("cannot compare oriented with unoriented")
        a = self.representative.x
        b = other.representative.x
        if a.shape != b.shape:
            return False
        if frobenius(a @ a.T - b @ b.T) > tol:
            return False
        if self.oriented:
            u, _, v = svd_factor(a.T @ b)
            if np.linalg.det(u @ v.T) <= 0:
                return False
        return True


@dataclass(frozen=True, eq=False)
class RotationPath:
    """Orthogonal p x p gauge samples g(t_i) on a uniform grid."""

    samples: tuple

    def __post_init__(self):
        samples = tuple(np.asarray(g, dtype=float) for g in self.samples)
        if not samples:
            raise InvariantViolation("rotation path needs at least one sample")
        p = samples[0].shape[0]
        for g in samples:
            if g.shape != (p, p):
                raise ShapeMismatch("rotation samples must share one square shape")
            if frobenius(g.T @ g - np.eye(p)) > _ROTATION_TOL:
                raise InvariantViolation("rotation sample drifted off orthogonality")
        object.__setattr__(self, "samples", samples)


def horizontal_project(x: StiefelPoint, v: TangentVector) -> TangentVector:
    """Remove the fiber (vertical) component: h = v - x (x^T v).

    The result satisfies x^T h = 0, stays tangent, and the projection is
    idempotent.  Vertical vectors x z with z skew map to zero.
    """
    if v.base.x.shape != x.x.shape or not np.array_equal(v.base.x, x.x):
        raise ShapeMismatch("tangent vector is not based at the given frame")
    return TangentVector(x, v.v - x.x @ (x.x.T @ v.v))


def horizontalize_path(
    samples: list[StiefelPoint],
) -> tuple[list[StiefelPoint], RotationPath]:
    """Gauge-transform a frame path so its velocity is horizontal throughout.

    Solves g' = -(x^T x') g with g(0) = I by classical RK4 on the sample
    grid; x' comes from central differences (one-sided second order at the
    ends) and the midpoint coefficient is the average of the two endpoint
    coefficients.  Each step is followed by a polar re-orthogonalization of
    g, which otherwise dominates the drift.  The output path x(t) g(t) never
    gets longer than the input, with equality when the input was already
    horizontal (then g stays at the identity).
    """
    if len(samples) < 3:
        raise TooFewSamples(f"need >= 3 samples, got {len(samples)}")
    xs = np.stack([s.x for s in samples])
    k = len(samples)
    gaps = np.sqrt(((xs[1:] - xs[:-1]) ** 2).sum(axis=(1, 2)))
    if gaps.max() >= _GAP_GUARD:
        raise ResolutionTooCoarse(
            f"largest sample gap {gaps.max():.3f} >= {_GAP_GUARD}; refine the path"
        )
    h = 1.0 / (k - 1)
    xdot = np.empty_like(xs)
    xdot[1:-1] = (xs[2:] - xs[:-2]) / (2 * h)
    xdot[0] = (-3 * xs[0] + 4 * xs[1] - xs[2]) / (2 * h)
    xdot[-1] = (3 * xs[-1] - 4 * xs[-2] + xs[-3]) / (2 * h)
    coeff = -np.matmul(xs.transpose(0, 2, 1), xdot)
    p = xs.shape[2]
    g = np.eye(p)
    gs = [g]
    for i in range(k - 1):
        f0 = coeff[i]
        f1 = coeff[i + 1]
        fm = (f0 + f1) / 2
        k1 = f0 @ g
        k2 = fm @ (g + (h / 2) * k1)
        k3 = fm @ (g + (h / 2) * k2)
        k4 = f1 @ (g + h * k3)
        g = g + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        g = polar_project(g)
        gs.append(g)
    out = [StiefelPoint(xs[i] @ gs[i]) for i in range(k)]
    return out, RotationPath(tuple(gs))


def principal_angle_distance(x: GrassmannPoint, y: GrassmannPoint) -> float:
    """Subspace distance from principal angles, sqrt(sum arccos(sigma_i)^2).

    Independent of the geodesic solver: only one SVD of x^T y.  Defined for
    unoriented points; the singular values are clamped to [0, 1] before the
    arccos to guard against floating-point overshoot.
    """
    if x.oriented or y.oriented:
        raise OrientedUnsupported("principal angles compare unoriented subspaces")
    a = x.representative.x
    b = y.representative.x
    if a.shape != b.shape:
        raise ShapeMismatch(f"frame shapes differ: {a.shape} vs {b.shape}")
    sigma = np.linalg.svd(a.T @ b, compute_uv=False)
    theta = np.arccos(np.clip(sigma, 0.0, 1.0))
    return float(np.sqrt((theta * theta).sum()))


def _align_fiber(x: np.ndarray, y: np.ndarray, oriented: bool) -> np.ndarray:
    """Gauge g minimizing ||x - y g||_F over the structure group.

    Orthogonal Procrustes on y^T x; in the oriented case the smallest
    singular direction is sign-flipped whenever the unconstrained optimum
    has negative determinant (determinant-constrained Procrustes).
    """
    u, _, v = svd_factor(y.T @ x)
    if oriented and np.linalg.det(u @ v.T) < 0:
        u = u.copy()
        u[:, -1] = -u[:, -1]
    return u @ v.T


def grassmann_log(
    x: GrassmannPoint, y: GrassmannPoint, cfg: ShootingConfig | None = None
) -> TangentVector:
    """Horizontal velocity h at the representative of x reaching the fiber of y.

    Steps: (a) Procrustes-align y's representative inside its fiber to x;
    (b) shoot for the frame-manifold log between the aligned pair; (c) drop
    the vertical component; (d) re-shoot over horizontal velocities only,
    starting from that projection, and accept when the endpoint lands in
    y's fiber (projector residual <= 1e-8).
    """
    cfg = cfg or ShootingConfig()
    if x.oriented != y.oriented:
        raise OrientationMismatch("both points must carry the same orientation flag")
    xf = x.representative
    yf = y.representative
    if xf.x.shape != yf.x.shape:
        raise ShapeMismatch(f"frame shapes differ: {xf.x.shape} vs {yf.x.shape}")
    gauge = _align_fiber(xf.x, yf.x, x.oriented)
    aligned = StiefelPoint(polar_project(yf.x @ gauge))
    reduction = reduce_to_span(xf, aligned)
    xr = reduction.reduced_x.x
    yr = reduction.reduced_y.x
    comp = _orthonormal_completion(xr)
    p = xr.shape[1]

    from .stiefel import _initial_theta

    starts = _restart_starts(_initial_theta(xr, yr, comp), p, comp.shape[1], cfg)
    candidates, best_residual = _solve_reduced(xr, yr, comp, cfg, starts)
    if not candidates:
        raise NoConvergence(
            f"fiber-aligned shooting failed; best endpoint residual {best_residual:.3e}",
            best_residual=best_residual,
        )
    v_red = candidates[0][2]
    h_red = v_red - xr @ (xr.T @ v_red)

    # Re-shoot with the velocity constrained to the horizontal subspace:
    # parameters are only the normal components b, the skew block stays 0.
    theta_h = comp.T @ h_red
    theta, cost = _lm_shoot(
        _pack(np.zeros((p, p)), theta_h), xr, yr, _HorizontalComp(comp), cfg
    )
    if cost > cfg.residual_tol:
        raise NoConvergence(
            f"horizontal polish did not converge: endpoint residual {cost:.3e}",
            best_residual=cost,
        )
    h_final = _velocities_from_params(theta[None], xr, _HorizontalComp(comp))[0]
    h_ambient = reduction.basis @ h_final
    endpoint = _exp_arrays(xf.x, h_ambient, 1.0)[0]
    fiber_residual = frobenius(endpoint @ endpoint.T - yf.x @ yf.x.T)
    if fiber_residual > _FIBER_TOL:
        raise NoConvergence(
            f"endpoint missed the target fiber: projector residual {fiber_residual:.3e}",
            best_residual=fiber_residual,
        )
    if x.oriented:
        u, _, v = svd_factor(endpoint.T @ yf.x)
        if np.linalg.det(u @ v.T) <= 0:
            raise NoConvergence(
                "endpoint reached the subspace with reversed orientation",
                best_residual=fiber_residual,
            )
    return TangentVector(xf, h_ambient)


class _HorizontalComp:
    """Masks the skew block of the velocity parametrization.

    Wraps the orthonormal completion so that _velocities_from_params sees
    the same b-part while the a-part contributes nothing; together with a
    zero skew start this confines LM to horizontal velocities.
    """

    def __init__(self, comp: np.ndarray):
        self._comp = comp
        self.shape = comp.shape

    def __matmul__(self, other):
        return self._comp @ other

    @property
    def T(self):
        return self._comp.T


def grassmann_exp(
    x: GrassmannPoint, h: TangentVector, t: float
) -> GrassmannPoint:
    """Project the frame geodesic along a horizontal velocity to the quotient.

    Horizontal initial data keeps the whole frame geodesic horizontal, so
    its projection is a quotient geodesic.
    """
    xf = x.representative
    if h.base.x.shape != xf.x.shape or not np.array_equal(h.base.x, xf.x):
        raise ShapeMismatch("velocity is not based at the representative of x")
    vertical = frobenius(xf.x.T @ h.v)
    if vertical > _HORIZONTAL_TOL:
        raise NotHorizontal(
            f"||x^T h|| = {vertical:.3e} > {_HORIZONTAL_TOL:.0e}; project first"
        )
    from .stiefel import stiefel_exp

    point, _ = stiefel_exp(xf, h, t)
    return GrassmannPoint(representative=point, oriented=x.oriented)


def grassmann_distance(
    x: GrassmannPoint, y: GrassmannPoint, cfg: ShootingConfig | None = None
) -> float:
    """Quotient distance: norm of the horizontal log velocity.

    Zero exactly when the two points coincide as subspaces (with matching
    orientation, if flagged), and invariant under changing either
    representative within its fiber.
    """
    return float(frobenius(grassmann_log(x, y, cfg).v))


# --- serialization ------------------------------------------------------------


def grassmann_to_json(x: GrassmannPoint) -> dict:
    return {
        "oriented": bool(x.oriented),
        "representative": frame_to_json(x.representative),
    }


def grassmann_from_json(obj) -> GrassmannPoint:
    if not isinstance(obj, dict) or "representative" not in obj:
        raise ParseError("Grassmann JSON must be an object with 'representative'")
    oriented = obj.get("oriented", False)
    if not isinstance(oriented, bool):
        raise ParseError("'oriented' must be a boolean")
    return GrassmannPoint(
        representative=frame_from_json(obj["representative"]), oriented=oriented
    )


def rotation_path_to_json(path: RotationPath) -> list:
    return [matrix_to_json(g) for g in path.samples]


def rotation_path_from_json(obj) -> RotationPath:
    if not isinstance(obj, list):
        raise ParseError("rotation path JSON must be a list of matrices")
    return RotationPath(tuple(matrix_from_json(g) for g in obj))
