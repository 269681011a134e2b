"""Dense linear-algebra kernels: orthonormalization, SVD, matrix exponential.

Matrices are plain two dimensional float64 numpy arrays.  Everything here is
a pure function; nothing mutates its inputs, so all operations are safe to
call concurrently.  The hot-path matrices elsewhere in the package are at
most 2p x 2p for small p, so no blocked or sparse formats are used.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    ConvergenceFailure,
    InvariantViolation,
    ParseError,
    RankDeficient,
    ShapeMismatch,
)

# Frobenius-norm threshold below which a single degree-13 Pade evaluation is
# accurate to machine precision; larger inputs are repeatedly halved first.
_THETA_13 = 5.371920351148152

# Numerator/denominator coefficients of the degree-13 Pade approximant.
_PADE13_B = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)

_RANK_RATIO = 1e-12


def orthonormalize(m: np.ndarray) -> np.ndarray:
    """Orthonormal basis for the column span of ``m``.

    Householder QR with the sign convention diag(R) >= 0, which makes the
    result a deterministic function of the input bits.

    Raises
    ------
    RankDeficient
        If the smallest singular value of ``m`` is at most 1e-12 times the
        largest, i.e. the columns are numerically dependent.
    """
    m = _as_matrix(m, "orthonormalize")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= _RANK_RATIO * sv[0]:
        ratio = 0.0 if sv[0] == 0.0 else float(sv[-1] / sv[0])
        raise RankDeficient(
            f"columns numerically dependent: singular value ratio {ratio:.3e} "
            f"<= {_RANK_RATIO:.0e}"
        )
    q, r = np.linalg.qr(m)
    signs = np.sign(np.diag(r)).copy()
    signs[signs == 0.0] = 1.0
    return q * signs


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a degree-13 Pade step.

    Accepts a single (k, k) matrix or a stack (..., k, k); the exponential is
    taken slice-wise.  Relative accuracy is at machine level for any finite
    input; the squaring count grows with log2 of the Frobenius norm.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ShapeMismatch(f"matrix_exp needs square input, got shape {m.shape}")
    a = m.reshape((-1,) + m.shape[-2:])
    norms = np.sqrt(np.einsum("bij,bij->b", a, a))
    squarings = np.zeros(a.shape[0], dtype=np.int64)
    big = norms > _THETA_13
    if np.any(big):
        squarings[big] = np.ceil(np.log2(norms[big] / _THETA_13)).astype(np.int64)
    scaled = a / np.exp2(squarings)[:, None, None]
    r = _pade13(scaled)
    for step in range(int(squarings.max(initial=0))):
        live = squarings > step
        r[live] = r[live] @ r[live]
    return r.reshape(m.shape)


def _pade13(a: np.ndarray) -> np.ndarray:
    b = _PADE13_B
    ident = np.eye(a.shape[-1])
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * ident
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * ident
    )
    return np.linalg.solve(v - u, v + u)


def svd_factor(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin singular value decomposition m = U diag(sigma) V^T.

    Returns
    -------
    (U, sigma, V) with orthonormal columns in U and V and sigma sorted
    non-increasing and non-negative.

    Raises
    ------
    ConvergenceFailure
        If the underlying iterative solver fails to converge within its
        iteration cap.
    """
    m = _as_matrix(m, "svd_factor")
    try:
        u, s, vt = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return u, s, vt.T


def polar_project(m: np.ndarray) -> np.ndarray:
    """Nearest matrix with orthonormal columns, in Frobenius norm.

    The orthogonal polar factor U V^T of the SVD.  Used to polish frames
    that have drifted slightly off orthonormality.
    """
    u, _, v = svd_factor(m)
    return u @ v.T


def _as_matrix(m, who: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ShapeMismatch(f"{who} needs a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvariantViolation(f"{who}: input has non-finite entries")
    return m


# --- JSON matrix format -----------------------------------------------------
#
# {"rows": int, "cols": int, "data": [row-major doubles]}
#
# Floats are emitted with Python's shortest round-tripping repr, so a
# write/read cycle is bit exact.


def matrix_to_json(m: np.ndarray) -> dict:
    """Encode a matrix as the shared JSON object format."""
    m = _as_matrix(m, "matrix_to_json")
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [float(x) for x in m.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Decode the shared JSON object format back into a matrix."""
    if not isinstance(obj, dict):
        raise ParseError(f"matrix JSON must be an object, got {type(obj).__name__}")
    try:
        rows = obj["rows"]
        cols = obj["cols"]
        data = obj["data"]
    except KeyError as exc:
        raise ParseError(f"matrix JSON missing key {exc}") from exc
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ParseError("matrix JSON rows/cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(
            f"matrix JSON data length {len(data) if isinstance(data, list) else '?'} "
            f"!= rows*cols = {rows * cols}"
        )
    try:
        m = np.array(data, dtype=float).reshape(rows, cols)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"matrix JSON data not numeric: {exc}") from exc
    if not np.all(np.isfinite(m)):
        raise InvariantViolation("matrix JSON contains non-finite entries")
    return m


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm, as a plain float."""
    return float(math.sqrt(np.sum(np.square(m))))
