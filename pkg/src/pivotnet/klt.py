"""Eigen model over events and construction of the decision variable.

The matrix rows are treated as realizations of K correlated per-event
variables. Rather than forming the K x K event covariance (K can be large,
e.g. 1200 events for 10 actors), the model diagonalizes the R x R Gram
matrix of centered rows and maps its eigenvectors back to event space, so
the cost is O(R^2 K + R^3). The eigensolver is a cyclic Jacobi iteration,
which is exactly symmetric and deterministic across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegenerateMatrixError, InputError
from .ingest import ParticipationMatrix

#: Stop sweeping once the off-diagonal Frobenius norm falls below this.
JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100
#: Eigenvalues below this fraction of the largest are clamped to zero.
EIGENVALUE_CLAMP = 1e-12

DV_METHODS = ("klt", "column-mean")


def jacobi_eigh(a: np.ndarray, tol: float = JACOBI_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a symmetric matrix with cyclic Jacobi rotations.

    Returns ``(eigenvalues, vectors)`` with eigenvalues sorted nonincreasing
    and eigenvectors as the corresponding columns, so that
    ``a == vectors @ diag(eigenvalues) @ vectors.T`` up to round-off.

    Raises :class:`ConvergenceError` if the off-diagonal Frobenius norm is
    still >= ``tol`` after ``max_sweeps`` full sweeps.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a[0].copy(), v

    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # Smaller root of t^2 + 2t*theta - 1 = 0; stable for |theta| >> 1.
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta != 0.0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        raise ConvergenceError(
            f"Jacobi off-diagonal norm {_off_diagonal_norm(a):.3e} is still >= {tol:.1e} "
            f"after {max_sweeps} sweeps"
        )

    eigenvalues = np.diagonal(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.linalg.norm(off))


@dataclass(frozen=True)
class KltModel:
    """Eigen decomposition of the per-event sample covariance.

    ``components`` holds one orthonormal length-K basis vector per row, one
    row per strictly positive eigenvalue. ``eigenvalues`` is padded with
    zeros up to min(R-1, K) entries so the spectrum length is predictable,
    and ``variance_fractions[m-1]`` is the fraction of total variance
    captured by the top m components.
    """

    mean: np.ndarray
    eigenvalues: np.ndarray
    components: np.ndarray
    variance_fractions: np.ndarray

    @property
    def n_components(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True)
class DecisionVariable:
    """Length-K reference vector against which participation is compared.

    ``method`` records how it was built; ``retained`` is the number of eigen
    components used (0 for the column-mean baseline) and ``beta`` the
    variance fraction that selected them.
    """

    dv: np.ndarray
    method: str
    retained: int
    beta: float

    def __post_init__(self) -> None:
        dv = np.asarray(self.dv, dtype=float).copy()
        dv.setflags(write=False)
        object.__setattr__(self, "dv", dv)

    def __len__(self) -> int:
        return len(self.dv)


def as_dv_vector(dv) -> np.ndarray:
    """Accept a DecisionVariable or any 1-D array-like and return the vector."""
    if isinstance(dv, DecisionVariable):
        return dv.dv
    return np.asarray(dv, dtype=float)


def fit(m: ParticipationMatrix) -> KltModel:
    """Fit the eigen model via the R x R Gram matrix of centered rows.

    Raises :class:`DegenerateMatrixError` when R = 1: the sample covariance
    (divisor R-1) is undefined, so callers must fall back to the
    column-mean decision variable.
    """
    r, k = m.n_actors, m.n_events
    if r < 2:
        raise DegenerateMatrixError(
            "eigen model needs at least 2 actors; use the column-mean method"
        )
    mean = m.values.mean(axis=0)
    centered = m.values - mean
    gram = centered @ centered.T / (r - 1)

    eigenvalues, vectors = jacobi_eigh(gram)

    # Centering makes at least one Gram eigenvalue structurally zero, and the
    # covariance rank is also capped by K.
    n_max = min(r - 1, k)
    eigenvalues = eigenvalues[:n_max]
    largest = eigenvalues[0] if n_max else 0.0
    eigenvalues = np.where(eigenvalues > EIGENVALUE_CLAMP * max(largest, 0.0), eigenvalues, 0.0)
    rank = int(np.count_nonzero(eigenvalues))

    components = np.zeros((rank, k))
    for c in range(rank):
        direction = centered.T @ vectors[:, c]
        direction /= np.sqrt((r - 1) * eigenvalues[c])
        # Deterministic sign: the largest-magnitude entry is positive.
        anchor = np.argmax(np.abs(direction))
        if direction[anchor] < 0:
            direction = -direction
        components[c] = direction

    total = eigenvalues.sum()
    if total > 0:
        fractions = np.minimum(np.cumsum(eigenvalues) / total, 1.0)
        fractions[rank - 1:] = 1.0
    else:
        fractions = np.zeros(n_max)

    return KltModel(mean=mean, eigenvalues=eigenvalues, components=components,
                    variance_fractions=fractions)


def select_components(model: KltModel, beta: float) -> int:
    """Smallest component count whose cumulative variance fraction reaches beta.

    Returns 0 when the spectrum is all zero (no variance to capture), and at
    least 1 otherwise.
    """
    if not 0.0 <= beta <= 1.0:
        raise InputError(f"beta must lie in [0, 1], got {beta}")
    if model.n_components == 0:
        return 0
    reached = np.nonzero(model.variance_fractions >= beta)[0]
    return int(reached[0]) + 1


def reconstruct(m: ParticipationMatrix, model: KltModel, n_components: int) -> np.ndarray:
    """Rank-limited reconstruction of every actor row (R x K array)."""
    if not 0 <= n_components <= model.n_components:
        raise InputError(
            f"n_components must lie in [0, {model.n_components}], got {n_components}"
        )
    basis = model.components[:n_components]
    scores = (m.values - model.mean) @ basis.T
    return model.mean + scores @ basis


def decision_variable(m: ParticipationMatrix, method: str = "klt",
                      beta: float = 0.95) -> DecisionVariable:
    """Build the decision variable aggregating all actors' participation.

    ``column-mean`` takes the per-event mean over actors directly. ``klt``
    fits the eigen model, keeps the top components per ``beta``, reconstructs
    every actor row from them and averages the reconstructions per event.
    Because reconstruction preserves the column means (the component scores
    average to zero), both methods agree numerically; they differ in
    provenance metadata and in the per-actor reconstructions available for
    diagnostics.
    """
    if method not in DV_METHODS:
        raise InputError(f"unknown method {method!r}, expected one of {DV_METHODS}")
    if not 0.0 <= beta <= 1.0:
        raise InputError(f"beta must lie in [0, 1], got {beta}")
    if method == "column-mean":
        return DecisionVariable(dv=m.values.mean(axis=0), method=method, retained=0, beta=beta)
    model = fit(m)
    retained = select_components(model, beta)
    recon = reconstruct(m, model, retained)
    return DecisionVariable(dv=recon.mean(axis=0), method=method, retained=retained, beta=beta)


def write_eigen_tsv(model: KltModel, path) -> None:
    """Dump the spectrum as TSV: index, eigenvalue, cumulative_fraction."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("index\teigenvalue\tcumulative_fraction\n")
        for idx, (value, fraction) in enumerate(
                zip(model.eigenvalues, model.variance_fractions), start=1):
            handle.write(f"{idx}\t{value!r}\t{fraction!r}\n")
