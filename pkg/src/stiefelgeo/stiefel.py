"""Orthonormal p-frames: points, tangents, geodesics, log map and distance.

A point is an n x p matrix x with x^T x = I, carrying the metric
tr(u^T v) inherited from the ambient matrix space.  Geodesics have a
closed form driven by the exponential of a 2p x 2p block matrix, and a
geodesic through two frames never leaves the span of the endpoint columns.
That confinement is what makes the boundary-value solver cheap: every
two-point problem is reduced to ambient dimension at most 2p before any
optimization starts, regardless of how large n is.

All objects are immutable and all operations pure.  Restarted shooting is
deterministic: candidates are ranked by (velocity norm, restart index), so
a parallel execution would have to return the same winner as the
sequential one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AmbientTooSmall,
    InvariantViolation,
    NoConvergence,
    NotAnIsometry,
    ParseError,
    ShapeMismatch,
    TooFewSamples,
)
from .matcore import (
    frobenius,
    matrix_exp,
    matrix_from_json,
    matrix_to_json,
    orthonormalize,
    polar_project,
)

_ORTH_TOL = 1e-10
_SKEW_TOL = 1e-10
_RANK_TOL = 1e-10
_POLISH_TRIGGER = 5e-12


# --- domain types -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StiefelPoint:
    """Orthonormal p-frame in ambient dimension n, stored as an n x p matrix."""

    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 2:
            raise InvariantViolation(f"frame must be 2-d, got shape {x.shape}")
        n, p = x.shape
        if p < 1 or n < p:
            raise InvariantViolation(f"frame shape {x.shape} needs n >= p >= 1")
        if not np.all(np.isfinite(x)):
            raise InvariantViolation("frame has non-finite entries")
        residual = frobenius(x.T @ x - np.eye(p))
        if residual > _ORTH_TOL:
            raise InvariantViolation(
                f"frame not orthonormal: ||x^T x - I|| = {residual:.3e} > {_ORTH_TOL:.0e}"
            )
        x = x.copy()
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def ambient_dim(self) -> int:
        return self.x.shape[0]

    @property
    def frame_dim(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Tangent matrix v at a base frame x; x^T v must be skew-symmetric."""

    base: StiefelPoint
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        if v.shape != self.base.x.shape:
            raise ShapeMismatch(
                f"tangent shape {v.shape} != base shape {self.base.x.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise InvariantViolation("tangent has non-finite entries")
        xv = self.base.x.T @ v
        residual = frobenius(xv + xv.T)
        if residual > _SKEW_TOL:
            raise InvariantViolation(
                f"x^T v not skew: ||x^T v + v^T x|| = {residual:.3e} > {_SKEW_TOL:.0e}"
            )
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def norm(self) -> float:
        return frobenius(self.v)


@dataclass(frozen=True, eq=False)
class GeodesicCoeffs:
    """Constant coefficient pair of the geodesic equation: A skew, S sym PSD."""

    A: np.ndarray
    S: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        S = np.asarray(self.S, dtype=float)
        if frobenius(A + A.T) > _SKEW_TOL:
            raise InvariantViolation("A is not skew-symmetric")
        if frobenius(S - S.T) > _SKEW_TOL:
            raise InvariantViolation("S is not symmetric")
        if np.linalg.eigvalsh((S + S.T) / 2).min() < -1e-10:
            raise InvariantViolation("S has an eigenvalue below -1e-10")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "S", S)


def geodesic_coeffs(v: TangentVector) -> GeodesicCoeffs:
    """Coefficients A = x^T v and S = v^T v of the geodesic shot along v."""
    return GeodesicCoeffs(A=v.base.x.T @ v.v, S=v.v.T @ v.v)


@dataclass(frozen=True, eq=False)
class SubspaceReduction:
    """Orthonormal basis of span(cols x, cols y) plus both frames in that basis."""

    basis: np.ndarray
    reduced_x: StiefelPoint
    reduced_y: StiefelPoint

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        m = basis.shape[1]
        if frobenius(basis.T @ basis - np.eye(m)) > _ORTH_TOL:
            raise InvariantViolation("reduction basis not orthonormal")
        if self.reduced_x.ambient_dim != m or self.reduced_y.ambient_dim != m:
            raise ShapeMismatch("reduced frames do not live in the basis dimension")
        object.__setattr__(self, "basis", basis)

    @property
    def effective_dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class ShootingConfig:
    """Knobs of the boundary-value solver; one seed drives all randomness."""

    max_iterations: int = 200
    residual_tol: float = 1e-10
    restarts: int = 8
    rng_seed: int = 0
    fd_step: float = 1e-7

    def __post_init__(self):
        if self.max_iterations < 1 or self.restarts < 1:
            raise InvariantViolation("max_iterations and restarts must be >= 1")
        if self.residual_tol <= 0 or self.fd_step <= 0:
            raise InvariantViolation("residual_tol and fd_step must be positive")
        if self.rng_seed < 0:
            raise InvariantViolation("rng_seed must be non-negative")

    def rng(self) -> np.random.Generator:
        # Philox: counter-based, so identical config means identical streams.
        return np.random.Generator(np.random.Philox(self.rng_seed))


@dataclass(frozen=True, eq=False)
class LogResult:
    """Outcome of the shooting solver behind stiefel_log.

    ``multiple_minima`` flags that two converged restarts had norms within
    1e-6 of each other but directions differing by more than 1e-3, i.e. the
    endpoint pair sits at or near a cut point and the returned geodesic is
    one of several of (numerically) equal length.
    """

    tangent: TangentVector
    endpoint_residual: float
    converged_restarts: int
    multiple_minima: bool

    @property
    def norm(self) -> float:
        return self.tangent.norm


# --- closed-form exponential -------------------------------------------------


def _exp_many(x: np.ndarray, vs: np.ndarray, t: float):
    """Geodesic points/velocities at time t for a batch of velocities at x.

    x is (n, p); vs is (B, n, p).  Returns two (B, n, p) stacks.  Pure
    closed form, no polish: the caller decides whether to re-project.
    """
    B, n, p = vs.shape
    a = np.matmul(x.T, vs)
    s = np.matmul(vs.transpose(0, 2, 1), vs)
    block = np.zeros((B, 2 * p, 2 * p))
    block[:, :p, :p] = a
    block[:, :p, p:] = -s
    block[:, p:, :p] = np.eye(p)
    block[:, p:, p:] = a
    e = matrix_exp(t * block)
    xv = np.concatenate((np.broadcast_to(x, (B, n, p)), vs), axis=2)
    pq = np.matmul(xv, e)
    back = matrix_exp(-t * a)
    points = np.matmul(pq[:, :, :p], back)
    velocities = np.matmul(pq[:, :, p:], back)
    return points, velocities


def _exp_arrays(x: np.ndarray, v: np.ndarray, t: float):
    pts, vels = _exp_many(x, v[None], t)
    return pts[0], vels[0]


def stiefel_exp(x: StiefelPoint, v: TangentVector, t: float) -> tuple[StiefelPoint, TangentVector]:
    """Evaluate the geodesic through x with initial velocity v at time t.

    With A = x^T v and S = v^T v, the pair (gamma(t) e^{At}, gamma'(t) e^{At})
    equals (x, v) times the exponential of t [[A, -S], [I, A]]; both blocks
    are then rotated back by e^{-At}.  Solutions exist for all t.  The point
    is re-polished by polar projection when its orthonormality residual
    exceeds 5e-12, and the Frobenius speed ||gamma'(t)|| equals ||v||.
    """
    _require_based(x, v)
    point, velocity = _exp_arrays(x.x, v.v, float(t))
    p = point.shape[1]
    if frobenius(point.T @ point - np.eye(p)) > _POLISH_TRIGGER:
        point = polar_project(point)
    out_point = StiefelPoint(point)
    return out_point, TangentVector(out_point, velocity)


def geodesic_sample(x: StiefelPoint, v: TangentVector, k: int) -> list[StiefelPoint]:
    """k geodesic samples at uniform times t_i = i/(k-1), i = 0..k-1."""
    if k < 2:
        raise InvariantViolation(f"geodesic_sample needs k >= 2, got {k}")
    _require_based(x, v)
    out = [x]
    for i in range(1, k):
        point, _ = stiefel_exp(x, v, i / (k - 1))
        out.append(point)
    return out


def geodesic_residual(samples: list[tuple[float, StiefelPoint]]) -> float:
    """Max norm of the geodesic-equation defect over the interior samples.

    Velocities and accelerations are estimated by central finite differences
    on the uniform grid, and the defect gamma'' + gamma (gamma'^T gamma') is
    measured in Frobenius norm.  Diagnostic: exact geodesics score at the
    level of the differencing error, O(h^2).
    """
    if len(samples) < 5:
        raise TooFewSamples(f"need >= 5 samples, got {len(samples)}")
    ts = np.array([t for t, _ in samples], dtype=float)
    gaps = np.diff(ts)
    h = gaps[0]
    if h <= 0 or np.any(np.abs(gaps - h) > 1e-9 * max(1.0, abs(h))):
        raise InvariantViolation("samples must be uniformly spaced in t")
    xs = np.stack([point.x for _, point in samples])
    worst = 0.0
    for i in range(1, len(samples) - 1):
        vel = (xs[i + 1] - xs[i - 1]) / (2 * h)
        acc = (xs[i + 1] - 2 * xs[i] + xs[i - 1]) / (h * h)
        worst = max(worst, frobenius(acc + xs[i] @ (vel.T @ vel)))
    return worst


# --- tangent projection -------------------------------------------------------


def project_tangent(x: StiefelPoint, m: np.ndarray) -> TangentVector:
    """Frobenius-orthogonal projection of an ambient matrix onto T_x.

    v = m - x sym(x^T m); the unique tangent minimizer of ||m - v||.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != x.x.shape:
        raise ShapeMismatch(f"matrix shape {m.shape} != frame shape {x.x.shape}")
    return TangentVector(x, _project_raw(x.x, m))


def _project_raw(x: np.ndarray, m: np.ndarray) -> np.ndarray:
    xm = x.T @ m
    return m - x @ ((xm + xm.T) / 2)


# --- span reduction -----------------------------------------------------------


def _greedy_independent(cols: np.ndarray, tol: float, base: np.ndarray | None = None):
    """Indices of a maximal independent column subset, greedy by residual norm.

    Columns already spanned by ``base`` (orthonormal) or by earlier picks
    are skipped once their residual drops to ``tol``.  Two projection passes
    per pivot keep the running complement numerically orthogonal.
    """
    work = np.array(cols, dtype=float)
    if base is not None:
        for _ in range(2):
            work -= base @ (base.T @ work)
    selected = []
    available = np.ones(work.shape[1], dtype=bool)
    while available.any():
        norms = np.where(available, np.sqrt((work * work).sum(axis=0)), -1.0)
        j = int(np.argmax(norms))
        if norms[j] <= tol:
            break
        q = work[:, j] / norms[j]
        selected.append(j)
        available[j] = False
        for _ in range(2):
            work -= np.outer(q, q @ work)
        work[:, j] = 0.0
    return selected


def reduce_to_span(x: StiefelPoint, y: StiefelPoint) -> SubspaceReduction:
    """Express both frames in an orthonormal basis of span(cols x, cols y).

    The basis comes from rank-revealing column selection at tolerance 1e-10
    followed by deterministic QR, so the effective dimension m <= 2p equals
    the numerical rank of [x | y].  Geodesic problems between x and y can be
    solved entirely inside this basis and lifted back afterwards.
    """
    _require_same_dims(x, y)
    cols = np.hstack((x.x, y.x))
    picks = _greedy_independent(cols, _RANK_TOL)
    basis = orthonormalize(cols[:, picks])
    reduced_x = polar_project(basis.T @ x.x)
    reduced_y = polar_project(basis.T @ y.x)
    for original, reduced, name in ((x.x, reduced_x, "x"), (y.x, reduced_y, "y")):
        err = frobenius(basis @ reduced - original)
        if err > 1e-9:
            raise InvariantViolation(
                f"reduction failed to reproduce {name}: residual {err:.3e}"
            )
    return SubspaceReduction(
        basis=basis,
        reduced_x=StiefelPoint(reduced_x),
        reduced_y=StiefelPoint(reduced_y),
    )


def _orthonormal_completion(b: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(b)."""
    n, k = b.shape
    if k == n:
        return np.zeros((n, 0))
    q = np.linalg.qr(b, mode="complete")[0]
    return q[:, k:]


def perturb_independent(x: StiefelPoint, y: StiefelPoint, eps: float) -> StiefelPoint:
    """Nudge y so the columns of [x | y] become linearly independent.

    If they already are, y is returned unchanged.  Otherwise the deficient
    columns y_i (those not picked by greedy selection against x) are
    replaced by cos(eps) y_i + sin(eps) r_i with r_i orthonormal vectors
    from the complement of span([x | y]), one per deficient column.  The
    output is again a frame, moves y by at most sqrt(k) * eps * (1 + eps),
    and makes rank([x | y~]) = 2p.
    """
    _require_same_dims(x, y)
    n, p = x.x.shape
    if n < 2 * p:
        raise AmbientTooSmall(f"ambient dim {n} < 2p = {2 * p}")
    if not (0.0 < eps < np.pi / 4):
        raise InvariantViolation(f"eps must lie in (0, pi/4), got {eps}")
    cols = np.hstack((x.x, y.x))
    span_picks = _greedy_independent(cols, _RANK_TOL)
    k = 2 * p - len(span_picks)
    if k == 0:
        return y
    span_basis = orthonormalize(cols[:, span_picks])
    complement = _orthonormal_completion(span_basis)
    r_vectors = complement[:, :k]
    kept = _greedy_independent(y.x, _RANK_TOL, base=x.x)
    deficient = sorted(set(range(p)) - set(kept))
    out = np.array(y.x)
    for r_index, col in enumerate(deficient):
        out[:, col] = np.cos(eps) * y.x[:, col] + np.sin(eps) * r_vectors[:, r_index]
    return StiefelPoint(out)


def embed_frame(
    x: StiefelPoint, target_dim: int, embedding: np.ndarray | None = None
) -> StiefelPoint:
    """Push a frame into a larger ambient space along an isometric embedding.

    The default embedding zero-pads: identity on the first n coordinates.
    Distances between embedded frames equal distances between the originals.
    """
    n = x.ambient_dim
    if target_dim < n:
        raise ShapeMismatch(f"target dim {target_dim} < ambient dim {n}")
    if embedding is None:
        embedding = np.zeros((target_dim, n))
        embedding[:n, :n] = np.eye(n)
    else:
        embedding = np.asarray(embedding, dtype=float)
        if embedding.shape != (target_dim, n):
            raise ShapeMismatch(
                f"embedding shape {embedding.shape} != ({target_dim}, {n})"
            )
        residual = frobenius(embedding.T @ embedding - np.eye(n))
        if residual > _ORTH_TOL:
            raise NotAnIsometry(
                f"embedding columns not orthonormal: residual {residual:.3e}"
            )
    return StiefelPoint(embedding @ x.x)


# --- shooting solver ----------------------------------------------------------


def _pack(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = a.shape[0]
    iu = np.triu_indices(p, k=1)
    return np.concatenate((a[iu], b.ravel()))


def _velocities_from_params(thetas: np.ndarray, xr: np.ndarray, comp: np.ndarray):
    """Map packed parameters (B, d) to tangent velocities (B, m, p) at xr."""
    B = thetas.shape[0]
    m, p = xr.shape
    n_skew = p * (p - 1) // 2
    iu = np.triu_indices(p, k=1)
    a = np.zeros((B, p, p))
    a[:, iu[0], iu[1]] = thetas[:, :n_skew]
    a -= a.transpose(0, 2, 1)
    vs = np.matmul(xr, a)
    if comp.shape[1] > 0:
        b = thetas[:, n_skew:].reshape(B, comp.shape[1], p)
        vs = vs + np.matmul(comp, b)
    return vs


def _shoot_residuals(thetas: np.ndarray, xr: np.ndarray, yr: np.ndarray, comp: np.ndarray):
    vs = _velocities_from_params(thetas, xr, comp)
    points, _ = _exp_many(xr, vs, 1.0)
    return (points - yr).reshape(thetas.shape[0], -1)


def _lm_shoot(theta0, xr, yr, comp, cfg: ShootingConfig):
    """Levenberg-Marquardt on the endpoint residual, forward-difference Jacobian.

    Returns (theta, residual_norm).  The Jacobian columns for one iteration
    are evaluated in a single batched exponential call.
    """
    theta = np.array(theta0, dtype=float)
    d = theta.size
    r = _shoot_residuals(theta[None], xr, yr, comp)[0]
    cost = float(np.linalg.norm(r))
    if d == 0:
        return theta, cost
    lam = 1e-3
    eye = np.eye(d)
    for _ in range(cfg.max_iterations):
        if cost <= cfg.residual_tol:
            break
        probes = theta[None] + cfg.fd_step * eye
        jac = (_shoot_residuals(probes, xr, yr, comp) - r).T / cfg.fd_step
        grad = jac.T @ r
        normal = jac.T @ jac
        accepted = False
        for _ in range(14):
            delta = np.linalg.solve(normal + lam * eye, -grad)
            trial = theta + delta
            r_new = _shoot_residuals(trial[None], xr, yr, comp)[0]
            cost_new = float(np.linalg.norm(r_new))
            if cost_new < cost:
                theta, r, cost = trial, r_new, cost_new
                lam = max(lam / 3.0, 1e-14)
                accepted = True
                break
            lam *= 10.0
            if lam > 1e13:
                break
        if not accepted:
            break
        if np.linalg.norm(delta) < 1e-15:
            break
    return theta, cost


def _restart_starts(theta0: np.ndarray, p: int, comp_cols: int, cfg: ShootingConfig):
    """Initial guess plus restarts-1 seeded perturbations of it.

    Each extra start scales the base velocity by a factor in [0.5, 2] and
    adds a random skew (rotational) component of norm at most 0.5.
    """
    rng = cfg.rng()
    n_skew = p * (p - 1) // 2
    starts = [theta0]
    for _ in range(cfg.restarts - 1):
        scale = rng.uniform(0.5, 2.0)
        theta = scale * theta0
        if n_skew > 0:
            z = rng.standard_normal((p, p))
            skew = (z - z.T) / 2
            size = frobenius(skew)
            if size > 0:
                skew *= rng.uniform(0.0, 0.5) / size
            iu = np.triu_indices(p, k=1)
            theta = theta.copy()
            theta[:n_skew] += skew[iu]
        starts.append(theta)
    return starts


def _solve_reduced(xr, yr, comp, cfg: ShootingConfig, starts):
    """Run LM from every start; collect converged candidates.

    Returns (candidates, best_residual) where each candidate is a tuple
    (velocity_norm, start_index, velocity, residual) and candidates is
    sorted by (velocity_norm, start_index).
    """
    candidates = []
    best_residual = np.inf
    for index, theta0 in enumerate(starts):
        theta, cost = _lm_shoot(theta0, xr, yr, comp, cfg)
        best_residual = min(best_residual, cost)
        if cost <= cfg.residual_tol:
            v = _velocities_from_params(theta[None], xr, comp)[0]
            candidates.append((frobenius(v), index, v, cost))
    candidates.sort(key=lambda c: (c[0], c[1]))
    return candidates, best_residual


def _initial_theta(xr, yr, comp):
    v0 = _project_raw(xr, yr - xr)
    a0 = xr.T @ v0
    a0 = (a0 - a0.T) / 2
    b0 = comp.T @ v0
    return _pack(a0, b0)


def stiefel_log_result(
    x: StiefelPoint, y: StiefelPoint, cfg: ShootingConfig | None = None
) -> LogResult:
    """Shooting solution of the two-point geodesic problem, with diagnostics.

    The problem is reduced to span(cols x, cols y) (dimension m <= 2p),
    velocities are parametrized as x a + x_perp b with a skew so tangency
    holds by construction, and Levenberg-Marquardt drives the endpoint onto
    y.  The first start is the tangent projection of y - x; the remaining
    cfg.restarts - 1 starts are seeded perturbations of it.  Among converged
    starts the smallest-norm velocity wins, ties broken by restart index.

    Note: the search space is the span of the endpoint columns.  A pair
    whose connecting geodesics all need directions outside that span (for
    p = 1, exact antipodes) is reported as NoConvergence; callers who want
    the generic-position behaviour can perturb with perturb_independent
    first.
    """
    cfg = cfg or ShootingConfig()
    _require_same_dims(x, y)
    reduction = reduce_to_span(x, y)
    xr = reduction.reduced_x.x
    yr = reduction.reduced_y.x
    comp = _orthonormal_completion(xr)
    p = xr.shape[1]
    starts = _restart_starts(_initial_theta(xr, yr, comp), p, comp.shape[1], cfg)
    candidates, best_residual = _solve_reduced(xr, yr, comp, cfg, starts)
    if not candidates:
        raise NoConvergence(
            f"no restart reached residual {cfg.residual_tol:.1e}; "
            f"best endpoint residual {best_residual:.3e}",
            best_residual=best_residual,
        )
    best_norm, _, best_v, best_cost = candidates[0]
    multiple = False
    if best_norm > 1e-9:
        unit = best_v / best_norm
        for other_norm, _, other_v, _ in candidates[1:]:
            if abs(other_norm - best_norm) <= 1e-6:
                if frobenius(other_v / other_norm - unit) > 1e-3:
                    multiple = True
                    break
    tangent = TangentVector(x, reduction.basis @ best_v)
    return LogResult(
        tangent=tangent,
        endpoint_residual=best_cost,
        converged_restarts=len(candidates),
        multiple_minima=multiple,
    )


def stiefel_log(
    x: StiefelPoint, y: StiefelPoint, cfg: ShootingConfig | None = None
) -> TangentVector:
    """Minimal-norm velocity v with exp_x(v, 1) = y, found by shooting."""
    return stiefel_log_result(x, y, cfg).tangent


def stiefel_distance(
    x: StiefelPoint, y: StiefelPoint, cfg: ShootingConfig | None = None
) -> float:
    """Geodesic distance: the Frobenius norm of the minimal log velocity."""
    return stiefel_log_result(x, y, cfg).norm


# --- serialization ------------------------------------------------------------


def frame_to_json(x: StiefelPoint) -> dict:
    return {
        "ambient_dim": x.ambient_dim,
        "frame_dim": x.frame_dim,
        "matrix": matrix_to_json(x.x),
    }


def frame_from_json(obj) -> StiefelPoint:
    if not isinstance(obj, dict):
        raise ParseError("frame JSON must be an object")
    for key in ("ambient_dim", "frame_dim", "matrix"):
        if key not in obj:
            raise ParseError(f"frame JSON missing key '{key}'")
    m = matrix_from_json(obj["matrix"])
    if m.shape != (obj["ambient_dim"], obj["frame_dim"]):
        raise ParseError(
            f"frame JSON dims {(obj['ambient_dim'], obj['frame_dim'])} "
            f"!= matrix shape {m.shape}"
        )
    return StiefelPoint(m)


def tangent_to_json(v: TangentVector) -> dict:
    return {
        "ambient_dim": v.base.ambient_dim,
        "frame_dim": v.base.frame_dim,
        "matrix": matrix_to_json(v.v),
        "base": frame_to_json(v.base),
    }


def tangent_from_json(obj) -> TangentVector:
    if not isinstance(obj, dict) or "base" not in obj or "matrix" not in obj:
        raise ParseError("tangent JSON must be an object with 'base' and 'matrix'")
    base = frame_from_json(obj["base"])
    return TangentVector(base, matrix_from_json(obj["matrix"]))


# --- shared argument checks -----------------------------------------------------


def _require_same_dims(x: StiefelPoint, y: StiefelPoint):
    if x.x.shape != y.x.shape:
        raise ShapeMismatch(f"frame shapes differ: {x.x.shape} vs {y.x.shape}")


def _require_based(x: StiefelPoint, v: TangentVector):
    if v.base is not x and not np.array_equal(v.base.x, x.x):
        raise ShapeMismatch("tangent vector is not based at the given frame")
