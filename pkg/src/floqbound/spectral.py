"""Unit-circle spectral analysis of a one-period map.

A one-period map L is classified by where its eigenvalue moduli sit
relative to 1: all below (stable), all above (expansive), both sides but
none on the circle (dichotomic), at least one certified on the circle
(non-dichotomic). Eigenvalues whose modulus falls inside the circle_tol
band but cannot be certified as genuinely unimodular yield Indeterminate
rather than a silent bucket.

The splitting collects generalized eigenspaces by modulus: X1 (inside the
unit disc), X2 (outside), and the circle band. When the band is empty the
spectral projector P onto X1 along X2 exists; it is the projector the
boundedness machinery uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotDichotomic, Singular
from .linalg import (RANK_TOL, Spectrum, SubspaceBasis, as_matrix, condition_number,
                     eigenvalues, frobenius, generalized_eigenspace, invert)

CIRCLE_TOL = 1e-6
# residual floor for certifying a band eigenvalue as genuinely unimodular
CERT_TOL = 1e-8

STABLE = "stable"
EXPANSIVE = "expansive"
DICHOTOMIC = "dichotomic"
NON_DICHOTOMIC = "non-dichotomic"
INDETERMINATE = "indeterminate"

CIRCLE_FREE = (STABLE, EXPANSIVE, DICHOTOMIC)


@dataclass(frozen=True)
class DichotomyVerdict:
    classification: str
    circle_tol: float
    spectrum: Spectrum
    band: tuple[complex, ...]  # eigenvalues with | |v|-1 | <= circle_tol
    certification_residual: float | None  # best sigma_min(L - v_hat I) / scale over band

    @property
    def circle_free(self) -> bool:
        return self.classification in CIRCLE_FREE


def classify(L, circle_tol: float = CIRCLE_TOL, cluster_tol: float | None = None) -> DichotomyVerdict:
    """Dichotomy classification of the one-period map L.

    Band eigenvalues are re-checked with a residual certificate: v is
    accepted as on-circle only if sigma_min(L - (v/|v|) I) is tiny relative
    to max(1, ||L||_F). Uncertified band members give Indeterminate.
    """
    a = as_matrix(L)
    spec = eigenvalues(a, cluster_tol)
    moduli = spec.moduli
    scale = max(1.0, frobenius(a))
    band = [v for v, _ in spec.eigenvalues if abs(abs(v) - 1.0) <= circle_tol]

    cert_residual = None
    if band:
        eye = np.eye(a.shape[0], dtype=np.complex128)
        residuals = []
        for v in band:
            v_hat = v / abs(v)
            smin = float(np.linalg.svd(a - v_hat * eye, compute_uv=False)[-1])
            residuals.append(smin / scale)
        cert_residual = min(residuals)
        if cert_residual <= CERT_TOL:
            cls = NON_DICHOTOMIC
        else:
            cls = INDETERMINATE
        return DichotomyVerdict(cls, circle_tol, spec, tuple(complex(v) for v in band),
                                cert_residual)

    if np.all(moduli < 1.0 - circle_tol):
        cls = STABLE
    elif np.all(moduli > 1.0 + circle_tol):
        cls = EXPANSIVE
    else:
        cls = DICHOTOMIC
    return DichotomyVerdict(cls, circle_tol, spec, (), None)


def _stack_bases(bases: list[SubspaceBasis], ambient: int) -> np.ndarray:
    if not bases:
        return np.zeros((ambient, 0), dtype=np.complex128)
    return np.hstack([b.matrix for b in bases])


@dataclass(frozen=True)
class SpectralSplit:
    """Generalized eigenspace decomposition of C^m, grouped by modulus."""

    matrix: np.ndarray
    spectrum: Spectrum
    eigenspaces: tuple[SubspaceBasis, ...]  # one per distinct eigenvalue
    eta: int  # number of distinct eigenvalues inside the unit disc
    x1: SubspaceBasis  # direct sum of eigenspaces with |v| < 1 - tol
    x2: SubspaceBasis  # direct sum of eigenspaces with |v| > 1 + tol
    circle_band: tuple[tuple[complex, int], ...]
    circle_tol: float

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def basis_matrix(self) -> np.ndarray:
        """Columns of all eigenspace bases in spectrum order (an m x m basis)."""
        return _stack_bases(list(self.eigenspaces), self.dimension)


def spectral_split(L, circle_tol: float = CIRCLE_TOL, cluster_tol: float | None = None,
                   rank_tol: float | None = None) -> SpectralSplit:
    a = as_matrix(L)
    m = a.shape[0]
    spec = eigenvalues(a, cluster_tol)
    spaces = []
    for v, k in spec.eigenvalues:
        spaces.append(generalized_eigenspace(a, v, k, rank_tol))
    total = sum(s.dimension for s in spaces)
    if total != m:
        raise DimensionMismatch(f"eigenspace dimensions sum to {total}, expected {m}")
    stacked = _stack_bases(spaces, m)
    svals = np.linalg.svd(stacked, compute_uv=False)
    if svals[-1] < (RANK_TOL if rank_tol is None else rank_tol) * svals[0]:
        raise DimensionMismatch("generalized eigenspaces do not form a direct sum numerically")

    inside, outside, band = [], [], []
    for (v, k), basis in zip(spec.eigenvalues, spaces):
        r = abs(v)
        if r < 1.0 - circle_tol:
            inside.append(basis)
        elif r > 1.0 + circle_tol:
            outside.append(basis)
        else:
            band.append((complex(v), k))
    x1 = SubspaceBasis(_stack_bases(inside, m))
    x2 = SubspaceBasis(_stack_bases(outside, m))
    return SpectralSplit(a, spec, tuple(spaces), len(inside), x1, x2, tuple(band), circle_tol)


def spectral_projection(split: SpectralSplit) -> np.ndarray:
    """Projector onto X1 along X2. Requires an empty circle band."""
    if split.circle_band:
        raise NotDichotomic(
            f"{len(split.circle_band)} eigenvalue(s) within {split.circle_tol} of the unit circle")
    m = split.dimension
    v = np.hstack([split.x1.matrix, split.x2.matrix])
    if v.shape != (m, m):
        raise DimensionMismatch("X1 and X2 do not span the ambient space")
    d1 = split.x1.dimension
    selector = np.zeros((m, m), dtype=np.complex128)
    selector[:d1, :d1] = np.eye(d1)
    return v @ selector @ invert(v)


@dataclass(frozen=True)
class ProjectionReport:
    projector: np.ndarray
    idempotency_residual: float
    monodromy_commutation: float
    forward_commutation: float  # max over sampled mu; nan if not sampled
    adjoint_commutation: float
    sampled_mus: tuple[float, ...]
    x1_dimension: int
    x2_dimension: int


def _commutation(p: np.ndarray, x: np.ndarray) -> float:
    return frobenius(p @ x - x @ p) / max(1.0, frobenius(x))


def dichotomy_projection(split: SpectralSplit, propagation=None,
                         mus: tuple[float, ...] | None = None) -> ProjectionReport:
    """Spectral projector with its defining residuals.

    With a propagation, commutation against the one-period forced maps is
    sampled at `mus` (default {0, pi/q, 2*pi/q, 1}).
    """
    p = spectral_projection(split)
    idem = frobenius(p @ p - p)
    mono = _commutation(p, split.matrix)
    fwd = adj = float("nan")
    sampled: tuple[float, ...] = ()
    if propagation is not None:
        q = propagation.system.period
        if mus is None:
            mus = (0.0, math.pi / q, 2.0 * math.pi / q, 1.0)
        sampled = tuple(dict.fromkeys(float(u) for u in mus))
        fwd = adj = 0.0
        for u in sampled:
            phi_q, psi_q = propagation.forced_period_maps(u)
            fwd = max(fwd, _commutation(p, phi_q))
            adj = max(adj, _commutation(p, psi_q))
    return ProjectionReport(p, idem, mono, fwd, adj, sampled,
                            split.x1.dimension, split.x2.dimension)


@dataclass(frozen=True)
class InvertibilityReport:
    verdict: str  # "invertible" | "singular"
    condition: float
    sigma_min: float
    sigma_max: float

    @property
    def invertible(self) -> bool:
        return self.verdict == "invertible"


def invertibility_check(m, cond_limit: float = 1e12, scale: float | None = None) -> InvertibilityReport:
    """SVD-based invertibility verdict.

    `scale` supplies an external magnitude for matrices that should be
    O(scale) when healthy: a matrix whose largest singular value is far
    below it (under RANK_TOL * scale) is singular for all practical
    purposes even if its internal condition number is modest, e.g. a
    forced one-period map that vanishes analytically and is pure
    integrator noise numerically.
    """
    a = as_matrix(m)
    dim = a.shape[0]
    s = np.linalg.svd(a, compute_uv=False)
    smax = float(s[0]) if dim else 0.0
    smin = float(s[-1]) if dim else 0.0
    eps = float(np.finfo(np.float64).eps)
    cond = smax / smin if smin > 0 else float("inf")
    floor = dim * eps * smax
    if scale is not None:
        floor = max(floor, RANK_TOL * max(smax, float(scale)))
    singular = smin <= floor or cond > cond_limit
    return InvertibilityReport("singular" if singular else "invertible", cond, smin, smax)


@dataclass(frozen=True)
class GrowthComponent:
    eigenvalue: complex
    multiplicity: int
    present: bool  # z has a component in this eigenspace
    degree: int | None  # fitted polynomial degree, <= multiplicity - 1
    fitted_modulus: float | None
    norms: np.ndarray  # ||L^n y_j|| for n = 0..N


@dataclass(frozen=True)
class GrowthProfile:
    components: tuple[GrowthComponent, ...]
    residuals: np.ndarray  # || L^n z - sum_j L^n y_j || / max(||L^n z||, tiny)
    n_powers: int


def _fit_component(norms: np.ndarray, multiplicity: int) -> tuple[int, float]:
    """Fit log||L^n y|| ~ n log(rho) + d log(n) + c + e/n with integer d.

    Both the degree selection and the modulus slope use only the tail half
    of the power range: early powers carry the lower-order terms of the
    polynomial prefactor, which otherwise bias d downward and leak into the
    exponential rate. The 1/n regressor absorbs the leading correction that
    a nonzero constant term leaves in the log after the n^d factor is
    divided out.
    """
    n = np.arange(1, len(norms))
    y = np.log(norms[1:])
    tail = n >= max(2, len(norms) // 2)
    nt = n[tail].astype(float)
    yt = y[tail]
    design = np.column_stack([np.ones_like(nt), nt, 1.0 / nt])
    best = None
    for d in range(multiplicity):
        target = yt - d * np.log(nt)
        coeff, *_ = np.linalg.lstsq(design, target, rcond=None)
        res = float(np.sum((target - design @ coeff) ** 2))
        if best is None or res < best[0]:
            best = (res, d, float(math.exp(coeff[1])))
    return best[1], best[2]


def growth_profile(split: SpectralSplit, z, n_powers: int = 50) -> GrowthProfile:
    """Power growth of z through the eigenspace decomposition.

    z is decomposed as a sum of generalized eigenvector components y_j;
    each component's ||L^n y_j|| follows |v_j|^n times a polynomial in n of
    degree < multiplicity. Residuals compare L^n z against the recombined
    components at every power.
    """
    a = split.matrix
    m = split.dimension
    zvec = np.asarray(z, dtype=np.complex128)
    if zvec.shape != (m,):
        raise DimensionMismatch(f"z must be a {m}-vector")
    basis = split.basis_matrix()
    coords = np.linalg.solve(basis, zvec)

    parts = []
    offset = 0
    for space in split.eigenspaces:
        d = space.dimension
        parts.append(space.matrix @ coords[offset:offset + d])
        offset += d

    zcur = zvec.copy()
    pcur = [p.copy() for p in parts]
    norms = np.zeros((len(parts), n_powers + 1))
    residuals = np.zeros(n_powers + 1)
    tiny = 1e-300
    for n in range(n_powers + 1):
        for j, p in enumerate(pcur):
            norms[j, n] = np.linalg.norm(p)
        recomposed = np.sum(pcur, axis=0)
        residuals[n] = np.linalg.norm(zcur - recomposed) / max(np.linalg.norm(zcur), tiny)
        if n < n_powers:
            zcur = a @ zcur
            pcur = [a @ p for p in pcur]

    components = []
    scale = max(np.linalg.norm(zvec), tiny)
    for (v, k), space, row in zip(split.spectrum.eigenvalues, split.eigenspaces, norms):
        present = row[0] > 1e-12 * scale
        if not present or abs(v) == 0.0 or np.any(row[1:] <= 0.0):
            components.append(GrowthComponent(complex(v), k, present, None, None, row))
            continue
        degree, modulus = _fit_component(row, k)
        components.append(GrowthComponent(complex(v), k, present, degree, modulus, row))
    return GrowthProfile(tuple(components), residuals, n_powers)


def decay_horizon(split: SpectralSplit, target: float = 1e-8, cap: int = 400) -> int:
    """Smallest N with |v_min(X2)|^{-N} <= target (capped)."""
    outside = [abs(v) for v, _ in split.spectrum.eigenvalues if abs(v) > 1.0 + split.circle_tol]
    if not outside:
        return 0
    vmin = min(outside)
    n = int(math.ceil(-math.log(target) / math.log(vmin)))
    return max(1, min(n, cap))


def inverse_decay_check(L, x, n_powers: int) -> np.ndarray:
    """||L^{-n} x|| for n = 0..n_powers (x should live in the expanding part)."""
    a = as_matrix(L)
    xv = np.asarray(x, dtype=np.complex128)
    if xv.shape != (a.shape[0],):
        raise DimensionMismatch(f"x must be a {a.shape[0]}-vector")
    if condition_number(a) > 1e12:
        raise Singular("one-period map is not invertible; cannot iterate backwards")
    a_inv = invert(a)
    out = np.zeros(n_powers + 1)
    cur = xv.copy()
    out[0] = np.linalg.norm(cur)
    for n in range(1, n_powers + 1):
        cur = a_inv @ cur
        out[n] = np.linalg.norm(cur)
    return out
