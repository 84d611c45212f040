"""Acceptance battery: nine headline checks, one printed verdict line each.

Every test collects its sub-checks into a failure list and ends by printing
a single "[PASS] n name" or "[FAIL] n name" line before asserting, so a
plain ``pytest tests/test_acceptance.py -v -s`` reads as a scorecard.
Tolerances here are contractual; do not loosen them to make a run green.
"""

import json
import math
import time

import numpy as np

from floqbound.cli import run
from floqbound.forced import (ForcingSpec, boundedness_probe, default_mu_grid,
                              eval_direct, eval_periodic_decomposition,
                              resolvent_partial_sum, uniform_bound_sweep)
from floqbound.harness import COUNTERPHASE_PROJECTOR, verify_power_growth
from floqbound.linalg import eigenvalues, frobenius
from floqbound.propagator import METHOD_RK4, IntegratorSettings, Propagation
from floqbound.spectral import (classify, dichotomy_projection,
                                invertibility_check, spectral_projection,
                                spectral_split)
from floqbound.systems import SIDE_ADJOINT, SIDE_FORWARD, builtin_system

SEED = 20260814

_props: dict[str, Propagation] = {}


def prop_for(name: str) -> Propagation:
    if name not in _props:
        _props[name] = Propagation(builtin_system(name))
    return _props[name]


def conclude(number: int, name: str, failures: list[str]) -> None:
    status = "FAIL" if failures else "PASS"
    print(f"[{status}] {number} {name}")
    assert not failures, f"{name}: " + "; ".join(failures)


def checker(failures: list[str]):
    def check(ok: bool, message: str) -> None:
        if not ok:
            failures.append(message)
    return check


def rel_drift(tail: np.ndarray) -> float:
    top = float(np.max(tail))
    if top == 0.0:
        return 0.0
    return float((np.max(tail) - np.min(tail)) / top)


def test_1_rotation_counterexample():
    failures: list[str] = []
    check = checker(failures)
    started = time.perf_counter()

    # fresh propagation so the timing covers every integration it needs
    prop = Propagation(builtin_system("rotation"))
    q = prop.system.period
    dim = prop.system.dimension
    eye = np.eye(dim)

    check(frobenius(prop.monodromy - eye) <= 1e-7, "monodromy differs from I")
    fwd, adj = prop.forced_period_maps(0.0)
    check(frobenius(fwd) <= 1e-7, f"forward zero-frequency map {frobenius(fwd):.2e}")
    check(frobenius(adj) <= 1e-7, f"adjoint zero-frequency map {frobenius(adj):.2e}")
    check(classify(prop.monodromy).classification == "non-dichotomic",
          "expected a non-dichotomic verdict")

    # mu = 0 and mu = 1 are the resonant points: e^{i mu q} = 1 is the
    # (double) monodromy eigenvalue. With inputs split by the circular-mode
    # projector (forward rides P b, adjoint (I - P) b) every probe stays
    # bounded even there, because the resonant forced maps annihilate
    # exactly those ranges; that is the whole point of this system.
    for mu in (0.0, 0.5, 1.0):
        for j in range(dim):
            for side in (SIDE_FORWARD, SIDE_ADJOINT):
                verdict = boundedness_probe(
                    prop, ForcingSpec(mu, eye[j], side),
                    COUNTERPHASE_PROJECTOR, n_periods=100)
                check(verdict.status == "bounded",
                      f"mu={mu} b=e{j + 1} {side}: {verdict.status}")

    elapsed = time.perf_counter() - started
    check(elapsed < 30.0, f"took {elapsed:.1f}s")
    conclude(1, "rotation counterexample reproduction", failures)


def test_2_dichotomy_forward_check():
    failures: list[str] = []
    check = checker(failures)
    prop = prop_for("hyperbolic-diag")

    check(classify(prop.monodromy).classification == "dichotomic",
          "expected a dichotomic verdict")
    split = spectral_split(prop.monodromy)
    report = dichotomy_projection(split, prop)
    check(frobenius(report.projector - np.diag([1.0, 0.0])) <= 1e-8,
          "projector is not diag(1, 0)")
    for label, value in (("idempotency", report.idempotency_residual),
                         ("monodromy", report.monodromy_commutation),
                         ("forward", report.forward_commutation),
                         ("adjoint", report.adjoint_commutation)):
        check(value <= 1e-8, f"{label} residual {value:.2e}")

    # one projector serves both sides: probes force with P b forward and
    # (I - P) b adjoint, the two halves of the stability statement
    p = report.projector
    for mu in (0.0, 0.5, 1.0, math.pi):
        for j in range(2):
            b = np.eye(2)[j]
            for side in (SIDE_FORWARD, SIDE_ADJOINT):
                verdict = boundedness_probe(
                    prop, ForcingSpec(mu, b, side), p, n_periods=100)
                check(verdict.status == "bounded",
                      f"mu={mu} b=e{j + 1} {side}: {verdict.status}")
                drift = rel_drift(verdict.per_period_sup[-50:])
                check(drift < 1e-3,
                      f"mu={mu} b=e{j + 1} {side}: drift {drift:.2e}")
    conclude(2, "dichotomy forward check", failures)


def test_3_resonant_growth_construction(tmp_path):
    failures: list[str] = []
    check = checker(failures)
    prop = prop_for("scalar-zero")

    period_map = prop.forced_period_maps(0.0)[0]
    check(invertibility_check(period_map).invertible,
          "zero-frequency period map not invertible")
    check(abs(period_map[0, 0] - 1.0) <= 1e-8,
          f"period map {period_map[0, 0]}, expected 1")

    verdict = boundedness_probe(
        prop, ForcingSpec(0.0, np.ones(1), SIDE_FORWARD), None, n_periods=100)
    check(verdict.status == "linear-growth", f"status {verdict.status}")
    check(abs(verdict.slope - 1.0) <= 1e-3,
          f"slope {verdict.slope}, expected the period 1 within 0.1%")

    out = tmp_path / "verify"
    code = run(["verify", "scalar-zero", "converse-dichotomy",
                "--out-dir", str(out)])
    check(code == 0, f"exit code {code}")
    report = json.loads((out / "report.json").read_text())
    check(report["overall"] == "pass", f"overall {report['overall']}")
    check(report["checks"][0]["conclusion"]["consistent"] is True,
          "report not marked consistent")
    conclude(3, "resonant growth construction", failures)


def test_4_sweep_grid_stability():
    failures: list[str] = []
    check = checker(failures)
    prop = prop_for("hyperbolic-diag")
    q = prop.system.period

    split = spectral_split(prop.monodromy)
    p = spectral_projection(split)
    b = np.ones(2)
    for side in (SIDE_FORWARD, SIDE_ADJOINT):
        estimates = []
        for points in (64, 128):
            sweep = uniform_bound_sweep(prop, b, p, side,
                                        mu_grid=default_mu_grid(q, points),
                                        n_periods=100)
            check(sweep.all_bounded, f"{side}/{points}: unbounded probe")
            estimates.append(sweep.k_estimate)
        coarse, fine = estimates
        change = abs(fine - coarse) / max(coarse, 1e-300)
        check(change < 0.05, f"{side}: refinement moved K by {change:.1%}")

    sweep = uniform_bound_sweep(prop_for("scalar-zero"), np.ones(1), None,
                                SIDE_FORWARD, n_periods=100)
    check(0.0 in sweep.unbounded_mus,
          f"mu=0 not flagged; unbounded set {sweep.unbounded_mus}")
    conclude(4, "uniform bound sweep stability", failures)


def test_5_forced_oracle_equivalence():
    failures: list[str] = []
    check = checker(failures)

    # augmented-ODE forced integrals vs direct quadrature of the kernel
    for name in ("rotation", "hyperbolic-diag", "scalar-zero",
                 "damped", "expansive"):
        prop = prop_for(name)
        q = prop.system.period
        t, mu = 0.25 * q, 0.3
        nodes = np.linspace(0.0, t, 2000)
        phis = prop.state_grid(nodes)
        inv_phis = {s: np.linalg.inv(phis[float(s)]) for s in nodes}

        kernel = np.array([inv_phis[s] * np.exp(1j * mu * s) for s in nodes])
        quad = prop.fundamental(t) @ np.trapezoid(kernel, nodes, axis=0)
        got = prop.forced_forward(mu, np.eye(prop.system.dimension), t)
        err = frobenius(got - quad) / frobenius(quad)
        check(err <= 1e-6, f"{name} forward: {err:.2e}")

        kernel = np.array([phis[float(s)] * np.exp(1j * mu * s) for s in nodes])
        quad = np.trapezoid(kernel, nodes, axis=0) @ inv_phis[t]
        got = prop.forced_adjoint(mu, np.eye(prop.system.dimension), t)
        err = frobenius(got - quad) / frobenius(quad)
        check(err <= 1e-6, f"{name} adjoint: {err:.2e}")

    # direct integration vs the periodic decomposition, 50 random points
    rng = np.random.default_rng(SEED)
    names = ("rotation", "hyperbolic-diag", "scalar-zero", "damped", "expansive")
    samples = 16
    for draw in range(25):
        prop = prop_for(names[draw % len(names)])
        q = prop.system.period
        dim = prop.system.dimension
        mu = float(rng.uniform(0.0, 2.0 * math.pi / q))
        periods = int(rng.integers(1, 31))
        side = SIDE_FORWARD if draw % 2 == 0 else SIDE_ADJOINT
        b = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        forcing = ForcingSpec(mu, b, side)
        trace = eval_direct(prop, forcing, None, periods,
                            samples_per_period=samples)
        for idx in rng.integers(0, len(trace.times), size=2):
            n, j = divmod(int(idx), samples)
            r = j * q / samples
            want = trace.values[int(idx)]
            got = eval_periodic_decomposition(prop, forcing, None, n, r)
            err = float(np.linalg.norm(got - want))
            tol = 1e-6 * (1.0 + trace.sup_norm)
            check(err <= tol,
                  f"draw {draw} ({prop.system.label}, mu={mu:.3f}, n={n}, "
                  f"r={r:.3f}, {side}): {err:.2e} > {tol:.2e}")
    conclude(5, "forced oracle equivalence", failures)


def test_6_geometric_sum_identity():
    failures: list[str] = []
    check = checker(failures)
    rng = np.random.default_rng(SEED)

    accepted = 0
    while accepted < 200:
        dim = int(rng.integers(1, 5))
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        z = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        gap = float(np.min(np.abs(np.linalg.eigvals(m) - z)))
        if gap < 0.05 * max(1.0, frobenius(m)):
            continue
        accepted += 1
        n = int(rng.integers(1, 21))

        brute = np.zeros_like(m)
        power = np.eye(dim, dtype=np.complex128)
        scale = 0.0
        for k in range(n):
            brute += z ** (n - 1 - k) * power
            scale += frobenius(power)
            power = m @ power
        closed = resolvent_partial_sum(m, z, n)
        err = frobenius(closed - brute)
        check(err <= 1e-8 * max(scale, 1.0),
              f"draw {accepted}: dim={dim} n={n} err {err:.2e}")
    conclude(6, "geometric sum identity", failures)


def test_7_integrator_order():
    failures: list[str] = []
    check = checker(failures)
    system = builtin_system("hyperbolic-diag")
    exact = np.diag([math.exp(-1.0), math.exp(1.0)])
    errors = [
        frobenius(Propagation(system, IntegratorSettings(METHOD_RK4, 1.0 / n)).monodromy
                  - exact)
        for n in (50, 100)
    ]
    ratio = errors[0] / errors[1]
    check(12.0 <= ratio <= 20.0, f"halving ratio {ratio:.2f} outside [12, 20]")
    conclude(7, "integrator order under step halving", failures)


def test_8_power_growth_suite():
    failures: list[str] = []
    check = checker(failures)
    report = verify_power_growth(seed=SEED)
    check(report.status == "pass", f"status {report.status}")
    check(report.artifacts["max_residual"] <= 1e-8,
          f"max residual {report.artifacts['max_residual']:.2e}")
    degree_caps = {"identity": 1, "jordan": 1, "diagonal": 0}
    for name, cap in degree_caps.items():
        info = report.artifacts["fixtures"][name]
        worst = max(info["degrees"], default=0)
        check(worst <= cap, f"{name}: fitted degree {worst} > {cap}")
    conclude(8, "matrix power growth suite", failures)


def test_9_spectral_suite():
    failures: list[str] = []
    check = checker(failures)

    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(1, 7))
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        total = complex(np.sum(eigenvalues(m).values))
        trace = complex(np.trace(m))
        worst = max(worst, abs(total - trace) / max(1.0, abs(trace)))
    check(worst <= 1e-9, f"worst eigenvalue-sum error {worst:.2e}")

    fixtures = [
        np.diag([0.5, 2.0]).astype(np.complex128),
        np.array([[2.0, 1.0], [0.0, 2.0]], dtype=np.complex128),
        np.diag([math.exp(-1.0), math.exp(1.0), 3.0]).astype(np.complex128),
        np.array([[0.5, 1.0], [0.0, 0.25]], dtype=np.complex128),
        prop_for("hyperbolic-diag").monodromy,
        prop_for("damped").monodromy,
        prop_for("expansive").monodromy,
    ]
    for i, m in enumerate(fixtures):
        split = spectral_split(m)
        basis = split.basis_matrix()
        check(np.linalg.matrix_rank(basis) == m.shape[0],
              f"fixture {i}: stable/expansive sum is rank deficient")
        p = spectral_projection(split)
        residual = frobenius(p @ p - p)
        check(residual <= 1e-9 * max(1.0, frobenius(p)),
              f"fixture {i}: idempotency residual {residual:.2e}")
    conclude(9, "spectral decomposition suite", failures)
