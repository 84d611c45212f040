"""Dense complex matrix helpers: Schur form, spectra, eigenspaces, inverses.

Everything here works on square complex128 ndarrays of modest size (the
package targets dimensions up to about a dozen), so exact SVD-based rank
and condition decisions are affordable everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NonConvergence, NonFinite, Singular

# Singular values below RANK_TOL * sigma_max count as zero.
RANK_TOL = 1e-8
# Relative eigenvalue clustering tolerance (scaled by max(1, ||M||_F)).
CLUSTER_TOL = 1e-7
# invert() refuses condition numbers beyond this.
COND_LIMIT = 1e12

EPS = float(np.finfo(np.float64).eps)


def as_matrix(m, dimension: int | None = None) -> np.ndarray:
    """Validate and return a square complex128 matrix.

    Raises DimensionMismatch for non-square input, NonFinite for NaN/inf
    entries. `dimension`, when given, pins the expected size.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if dimension is not None and a.shape[0] != dimension:
        raise DimensionMismatch(f"expected {dimension}x{dimension}, got {a.shape[0]}x{a.shape[1]}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise NonFinite("matrix has non-finite entries")
    return a


def frobenius(m) -> float:
    return float(np.linalg.norm(m))


@dataclass(frozen=True)
class Spectrum:
    """Clustered eigenvalues of a matrix.

    eigenvalues: tuple of (value, algebraic multiplicity), sorted by
    ascending modulus, ties by ascending argument in [0, 2*pi).
    """

    eigenvalues: tuple[tuple[complex, int], ...]
    cluster_tolerance: float

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.eigenvalues])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.eigenvalues)

    @property
    def total_multiplicity(self) -> int:
        return sum(k for _, k in self.eigenvalues)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.values)


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal column basis of a subspace of C^m.

    associated_eigenvalue is None for aggregate subspaces (direct sums).
    """

    matrix: np.ndarray
    associated_eigenvalue: complex | None = None

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]

    @property
    def ambient_dimension(self) -> int:
        return self.matrix.shape[0]


def schur_decompose(m) -> tuple[np.ndarray, np.ndarray]:
    """Unitary Q and upper-triangular T with m = Q T Q^H.

    Entries of T below the diagonal that survive the QR sweep with
    magnitude under 1e-12 * ||m||_F are zeroed.
    """
    a = as_matrix(m)
    try:
        t, q = scipy.linalg.schur(a, output="complex")
    except scipy.linalg.LinAlgError as exc:  # QR iteration failed to converge
        raise NonConvergence(str(exc)) from exc
    floor = 1e-12 * max(1.0, frobenius(a))
    t = np.triu(t, k=0) + np.where(np.abs(np.tril(t, k=-1)) < floor, 0.0, np.tril(t, k=-1))
    return q, t


def eigenvalues(m, cluster_tol: float | None = None) -> Spectrum:
    """Clustered spectrum of m via the Schur diagonal.

    Eigenvalues closer than cluster_tol * max(1, ||m||_F) are merged
    (single linkage) and reported with summed multiplicity at the cluster
    mean. Default cluster_tol is CLUSTER_TOL.
    """
    a = as_matrix(m)
    tol = CLUSTER_TOL if cluster_tol is None else float(cluster_tol)
    _, t = schur_decompose(a)
    raw = np.diagonal(t).copy()
    thresh = tol * max(1.0, frobenius(a))

    n = len(raw)
    # single-linkage components under the merge threshold
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(raw[i] - raw[j]) <= thresh:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(complex(raw[i]))

    clustered = [(sum(g) / len(g), len(g)) for g in groups.values()]
    clustered.sort(key=lambda vk: (abs(vk[0]), np.angle(vk[0]) % (2.0 * np.pi)))
    return Spectrum(tuple(clustered), tol)


def spectral_radius(m) -> float:
    """max |lambda| over the spectrum; 0.0 for the zero matrix."""
    spec = eigenvalues(m)
    if len(spec.eigenvalues) == 0:
        return 0.0
    return float(np.max(spec.moduli))


def generalized_eigenspace(m, eigenvalue: complex, multiplicity: int,
                           rank_tol: float | None = None) -> SubspaceBasis:
    """Orthonormal basis of ker (m - eigenvalue*I)^multiplicity.

    The numerical kernel (singular values under rank_tol * sigma_max) must
    have dimension exactly `multiplicity`; otherwise DimensionMismatch.
    """
    a = as_matrix(m)
    dim = a.shape[0]
    if not (1 <= multiplicity <= dim):
        raise DimensionMismatch(f"multiplicity {multiplicity} out of range for dimension {dim}")
    tol = RANK_TOL if rank_tol is None else float(rank_tol)

    k = np.linalg.matrix_power(a - eigenvalue * np.eye(dim), multiplicity)
    _, s, vh = np.linalg.svd(k)
    smax = s[0] if len(s) else 0.0
    if smax == 0.0:
        kernel_dim = dim
    else:
        kernel_dim = int(np.sum(s < tol * smax))
    if kernel_dim != multiplicity:
        raise DimensionMismatch(
            f"kernel of (M - {eigenvalue}I)^{multiplicity} has numerical dimension "
            f"{kernel_dim}, expected {multiplicity}")
    basis = vh[dim - multiplicity:].conj().T
    return SubspaceBasis(np.ascontiguousarray(basis), complex(eigenvalue))


def condition_number(m) -> float:
    """Exact 2-norm condition number via SVD; inf when singular."""
    a = as_matrix(m)
    if a.shape[0] == 0:
        return 1.0
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def invert(m, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """Inverse via partially pivoted LU; Singular if cond_2 exceeds cond_limit."""
    a = as_matrix(m)
    kappa = condition_number(a)
    if not np.isfinite(kappa) or kappa > cond_limit:
        raise Singular(f"condition number {kappa:.3e} exceeds limit {cond_limit:.3e}")
    try:
        return np.linalg.solve(a, np.eye(a.shape[0], dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise Singular(str(exc)) from exc
