"""Fundamental solutions and the evolution family of a periodic system.

The forward fundamental solution Phi solves X' = A(t) X, X(0) = I; the
inverse solution solves X' = -X A(t), X(0) = I and equals Phi(t)^{-1}.
The two-parameter family U(t, s) = Phi(t) Phi(s)^{-1} propagates states
from time s to time t. Long horizons never integrate past one period:
Phi(n q + r) = Phi(r) L^n with L the one-period map (monodromy), so only
[0, q] is ever integrated and powers of L do the rest.

Forced integrals are computed as augmented ODEs, not quadrature:

* forward:  X' = A(t) X + e^{i mu t} C, X(0) = 0, giving
  int_0^t U(t,s) e^{i mu s} C ds
* adjoint:  Y' = -Y A(t) + e^{i mu t} C, Y(0) = 0, giving
  int_0^t V(t,s) e^{i mu s} C ds with V(t,s) = U(t,s)^{-1}

A vector c on the adjoint side rides on the full matrix problem (the row
equation does not close over a single column), then applies Y(t) to c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NonFinite, Singular, StepLimitExceeded, ValidationError
from .linalg import as_matrix, condition_number, frobenius, invert
from .systems import PeriodicSystem

METHOD_RK4 = "rk4"
METHOD_DOPRI = "dopri"

# Fixed-step default resolution: period / 2000. The floor below rejects
# settings coarser than period / 50, where 4th order is no longer a given.
DEFAULT_STEPS_PER_PERIOD = 2000
MIN_STEPS_PER_PERIOD = 50


@dataclass(frozen=True)
class IntegratorSettings:
    method: str = METHOD_RK4
    step: float | None = None  # absolute RK4 step; None = period / 2000
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 5_000_000

    def __post_init__(self):
        if self.method not in (METHOD_RK4, METHOD_DOPRI):
            raise ValidationError(f"method must be '{METHOD_RK4}' or '{METHOD_DOPRI}'")
        if self.step is not None and not (self.step > 0 and math.isfinite(self.step)):
            raise ValidationError("step must be finite and > 0")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValidationError("tolerances must be > 0")
        if self.max_steps < 1:
            raise ValidationError("max_steps must be >= 1")

    def step_for(self, period: float) -> float:
        h = self.step if self.step is not None else period / DEFAULT_STEPS_PER_PERIOD
        if h > period / MIN_STEPS_PER_PERIOD:
            raise ValidationError(
                f"step {h} too coarse: need at least {MIN_STEPS_PER_PERIOD} steps per period")
        return h


def _check_finite(y: np.ndarray, context: str) -> None:
    if not (np.all(np.isfinite(y.real)) and np.all(np.isfinite(y.imag))):
        raise NonFinite(f"non-finite state during {context}")


def _rk4_sampled(field, y0: np.ndarray, t0: float, sample_times, h: float,
                 max_steps: int, context: str) -> list[np.ndarray]:
    """Fixed-step RK4 from t0, returning the state at each sample time.

    Sample times must be non-decreasing. Each segment is subdivided so the
    step never exceeds h and sample times are hit exactly.
    """
    y = np.array(y0, dtype=np.complex128)
    t = float(t0)
    out = []
    used = 0
    for ts in sample_times:
        seg = float(ts) - t
        if seg < 0:
            raise ValidationError("sample times must be non-decreasing")
        if seg > 0:
            n = max(1, int(math.ceil(seg / h - 1e-12)))
            used += n
            if used > max_steps:
                raise StepLimitExceeded(f"{context}: more than {max_steps} steps")
            hh = seg / n
            half = 0.5 * hh
            for k in range(n):
                k1 = field(t, y)
                k2 = field(t + half, y + half * k1)
                k3 = field(t + half, y + half * k2)
                k4 = field(t + hh, y + hh * k3)
                y = y + (hh / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
                t += hh
            t = float(ts)
        _check_finite(y, context)
        out.append(y.copy())
    return out


def _dopri_sampled(field, y0: np.ndarray, t0: float, sample_times,
                   settings: IntegratorSettings, context: str) -> list[np.ndarray]:
    shape = y0.shape
    times = [float(ts) for ts in sample_times]
    out: list[np.ndarray | None] = [None] * len(times)
    todo = []
    for i, ts in enumerate(times):
        if ts == t0:
            out[i] = np.array(y0, dtype=np.complex128)
        else:
            todo.append((i, ts))
    if todo:
        def flat_field(t, yflat):
            return field(t, yflat.reshape(shape)).ravel()

        sol = solve_ivp(flat_field, (t0, todo[-1][1]), np.asarray(y0, dtype=np.complex128).ravel(),
                        method="RK45", t_eval=[ts for _, ts in todo],
                        rtol=settings.rel_tol, atol=settings.abs_tol)
        if not sol.success:
            raise StepLimitExceeded(f"{context}: adaptive integration failed: {sol.message}")
        for col, (i, _) in enumerate(todo):
            y = sol.y[:, col].reshape(shape)
            _check_finite(y, context)
            out[i] = y
    return out  # type: ignore[return-value]


def _integrate_sampled(field, y0, t0, sample_times, period, settings, context):
    if settings.method == METHOD_DOPRI:
        return _dopri_sampled(field, y0, t0, sample_times, settings, context)
    h = settings.step_for(period)
    return _rk4_sampled(field, y0, t0, sample_times, h, settings.max_steps, context)


def _reduce_period(t: float, q: float) -> tuple[int, float]:
    """t = n*q + r with integer n and r in [0, q)."""
    n = math.floor(t / q)
    r = t - n * q
    if r >= q:
        n += 1
        r -= q
    if r < 0.0:
        n -= 1
        r += q
    return n, r


def _matrix_power(m: np.ndarray, n: int) -> np.ndarray:
    try:
        return np.linalg.matrix_power(m, n)
    except np.linalg.LinAlgError as exc:
        raise Singular(f"cannot raise singular matrix to power {n}") from exc


class Propagation:
    """Cached propagator for one system under fixed integrator settings."""

    def __init__(self, system: PeriodicSystem, settings: IntegratorSettings | None = None):
        self.system = system
        self.settings = settings if settings is not None else IntegratorSettings()
        if self.settings.method == METHOD_RK4:
            self.settings.step_for(system.period)  # fail fast on a too-coarse step
        self._phi: dict[float, np.ndarray] = {}
        self._phi_inv: dict[float, np.ndarray] = {}
        self._forced: dict[tuple, dict[float, np.ndarray]] = {}
        self._growth: tuple[float, float] | None = None
        self._eye = np.eye(system.dimension, dtype=np.complex128)

    # -- homogeneous flow ------------------------------------------------

    def _field_forward(self):
        sysm = self.system
        return lambda t, y: sysm.matrix_at(t) @ y

    def _field_adjoint(self):
        sysm = self.system
        return lambda t, y: -(y @ sysm.matrix_at(t))

    def _phi_at(self, r: float) -> np.ndarray:
        """Phi(r) for r in [0, q], cached."""
        r = float(r)
        got = self._phi.get(r)
        if got is None:
            if r == 0.0:
                got = self._eye.copy()
            else:
                got = _integrate_sampled(self._field_forward(), self._eye, 0.0, [r],
                                         self.system.period, self.settings,
                                         "fundamental solution")[0]
            self._phi[r] = got
        return got

    def _phi_inv_at(self, r: float) -> np.ndarray:
        r = float(r)
        got = self._phi_inv.get(r)
        if got is None:
            got = invert(self._phi_at(r))
            self._phi_inv[r] = got
        return got

    def state_grid(self, r_values) -> dict[float, np.ndarray]:
        """Phi at several offsets in [0, q], one integration pass."""
        wanted = sorted({float(r) for r in r_values})
        missing = [r for r in wanted if r not in self._phi]
        if missing:
            vals = _integrate_sampled(self._field_forward(), self._eye, 0.0, missing,
                                      self.system.period, self.settings, "fundamental solution")
            for r, v in zip(missing, vals):
                self._phi[r] = v
        return {r: self._phi[r] for r in wanted}

    @property
    def monodromy(self) -> np.ndarray:
        """One-period map L = U(q, 0). Singular error if not invertible."""
        q = self.system.period
        if q not in self._phi:
            self._phi_at(q)
        L = self._phi[q]
        if condition_number(L) > 1e12:
            raise Singular("one-period map is numerically singular")
        return L

    def monodromy_power(self, n: int) -> np.ndarray:
        if n == 0:
            return self._eye.copy()
        return _matrix_power(self.monodromy, n)

    def fundamental(self, t: float) -> np.ndarray:
        """Phi(t) for any real t, via period reduction."""
        n, r = _reduce_period(float(t), self.system.period)
        phi_r = self._phi_at(r)
        if n == 0:
            return phi_r.copy()
        return phi_r @ self.monodromy_power(n)

    def inverse_fundamental(self, t: float) -> np.ndarray:
        """Phi(t)^{-1} integrated from its own ODE X' = -X A(t)."""
        n, r = _reduce_period(float(t), self.system.period)
        if r == 0.0:
            w = self._eye.copy()
        else:
            w = _integrate_sampled(self._field_adjoint(), self._eye, 0.0, [r],
                                   self.system.period, self.settings,
                                   "inverse fundamental solution")[0]
        if n == 0:
            return w
        return self.monodromy_power(-n) @ w

    def evolution(self, t: float, s: float) -> np.ndarray:
        """U(t, s) = Phi(t) Phi(s)^{-1} for any real t, s."""
        q = self.system.period
        nt, rt = _reduce_period(float(t), q)
        ns, rs = _reduce_period(float(s), q)
        u = self._phi_at(rt)
        if nt != ns:
            u = u @ self.monodromy_power(nt - ns)
        return u @ self._phi_inv_at(rs)

    # -- forced integrals -------------------------------------------------

    def forced_forward(self, mu: float, c, t: float) -> np.ndarray:
        """int_0^t U(t,s) e^{i mu s} c ds for a vector or matrix c."""
        return self.forced_forward_grid(mu, c, [t])[0]

    def forced_forward_grid(self, mu: float, c, t_values) -> list[np.ndarray]:
        sysm = self.system
        c_arr = np.asarray(c, dtype=np.complex128)
        mu = float(mu)

        def field(t, y):
            return sysm.matrix_at(t) @ y + np.exp(1j * mu * t) * c_arr

        y0 = np.zeros_like(c_arr)
        return _integrate_sampled(field, y0, 0.0, t_values, sysm.period, self.settings,
                                  "forward forced integral")

    def forced_adjoint(self, mu: float, c, t: float) -> np.ndarray:
        """int_0^t V(t,s) e^{i mu s} c ds with V = U^{-1}."""
        return self.forced_adjoint_grid(mu, c, [t])[0]

    def forced_adjoint_grid(self, mu: float, c, t_values) -> list[np.ndarray]:
        sysm = self.system
        c_arr = np.asarray(c, dtype=np.complex128)
        mu = float(mu)
        vector = c_arr.ndim == 1
        forcing = self._eye if vector else c_arr

        def field(t, y):
            return -(y @ sysm.matrix_at(t)) + np.exp(1j * mu * t) * forcing

        y0 = np.zeros((sysm.dimension, sysm.dimension), dtype=np.complex128)
        mats = _integrate_sampled(field, y0, 0.0, t_values, sysm.period, self.settings,
                                  "adjoint forced integral")
        if vector:
            return [m @ c_arr for m in mats]
        return mats

    def forced_grid_matrices(self, mu: float, side: str, r_values) -> dict[float, np.ndarray]:
        """Matrix forced integrals at several offsets, cached per (mu, side)."""
        key = (float(mu), side)
        cache = self._forced.setdefault(key, {})
        wanted = sorted({float(r) for r in r_values})
        missing = [r for r in wanted if r not in cache]
        if missing:
            if side == "forward":
                vals = self.forced_forward_grid(mu, self._eye, missing)
            else:
                vals = self.forced_adjoint_grid(mu, self._eye, missing)
            for r, v in zip(missing, vals):
                cache[r] = v
        return {r: cache[r] for r in wanted}

    def forced_period_maps(self, mu: float) -> tuple[np.ndarray, np.ndarray]:
        """(forward, adjoint) one-period forced maps at frequency mu."""
        q = self.system.period
        fwd = self.forced_grid_matrices(mu, "forward", [q])[q]
        adj = self.forced_grid_matrices(mu, "adjoint", [q])[q]
        return fwd, adj

    # -- derived quantities ------------------------------------------------

    def growth_constants(self, grid: int = 20) -> tuple[float, float]:
        """(M, omega) with ||U(t,s)|| <= M e^{omega (t-s)} on a [0,q]^2 grid.

        Least-squares fit of log||U|| against (t-s), then M inflated so the
        bound holds at every sampled pair; M >= 1 always.
        """
        if self._growth is not None and grid == 20:
            return self._growth
        q = self.system.period
        nodes = np.linspace(0.0, q, grid)
        phis = self.state_grid(nodes)
        invs = {r: invert(phis[r]) for r in phis}
        dts, logs = [], []
        for i, t in enumerate(nodes):
            for s in nodes[: i + 1]:
                u = phis[float(t)] @ invs[float(s)]
                dts.append(t - s)
                logs.append(math.log(max(np.linalg.norm(u, 2), 1e-300)))
        dts = np.asarray(dts)
        logs = np.asarray(logs)
        coeffs = np.polynomial.polynomial.polyfit(dts, logs, 1)
        omega = float(coeffs[1])
        log_m = float(np.max(logs - omega * dts))
        m_const = max(1.0, math.exp(log_m))
        result = (m_const, omega)
        if grid == 20:
            self._growth = result
        return result

    def commutation_residual(self, sample_pairs=None) -> float:
        """max over (t,s) of ||Phi(t)Phi(s)^{-1} - Phi(s)^{-1}Phi(t)|| (normalized).

        Zero exactly when the flow matrices commute (constant A always
        qualifies); a large value marks adjoint-side formulas as conditional.
        """
        q = self.system.period
        if sample_pairs is None:
            nodes = np.linspace(0.0, q, 5)
            sample_pairs = [(float(t), float(s)) for t in nodes for s in nodes if t != s]
        offsets = {r for pair in sample_pairs for r in pair}
        self.state_grid([_reduce_period(r, q)[1] for r in offsets])
        worst = 0.0
        for t, s in sample_pairs:
            phi_t = self.fundamental(t)
            phi_s_inv = invert(self.fundamental(s))
            ab = phi_t @ phi_s_inv
            ba = phi_s_inv @ phi_t
            denom = max(1.0, frobenius(ab))
            worst = max(worst, frobenius(ab - ba) / denom)
        return worst


# -- one-shot wrappers ----------------------------------------------------


def fundamental_solution(system: PeriodicSystem, t: float,
                         settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).fundamental(t)


def inverse_fundamental(system: PeriodicSystem, t: float,
                        settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).inverse_fundamental(t)


def evolution(system: PeriodicSystem, t: float, s: float,
              settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).evolution(t, s)


def monodromy(system: PeriodicSystem,
              settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).monodromy


def forced_integral_forward(system: PeriodicSystem, mu: float, c, t: float,
                            settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).forced_forward(mu, c, t)


def forced_integral_adjoint(system: PeriodicSystem, mu: float, c, t: float,
                            settings: IntegratorSettings | None = None) -> np.ndarray:
    return Propagation(system, settings).forced_adjoint(mu, c, t)


def commutation_residual(system: PeriodicSystem, sample_pairs=None,
                         settings: IntegratorSettings | None = None) -> float:
    return Propagation(system, settings).commutation_residual(sample_pairs)


def growth_constants(system: PeriodicSystem,
                     settings: IntegratorSettings | None = None) -> tuple[float, float]:
    return Propagation(system, settings).growth_constants()
