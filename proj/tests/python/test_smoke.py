#!/usr/bin/env python3
"""Smoke test of the python bindings.

Exercises the main operations end to end: spectra, transmission kernels
(direct and center-mediated), the analytic current decomposition, sweeps,
the covariance oracle, config parsing, and the exception mapping. Run with
PYTHONPATH pointing at the directory that holds the built package.
"""

import json
import math

import numpy as np

import photon_landauer as pl

checks = 0


def ok(cond, what):
    global checks
    checks += 1
    if not cond:
        raise AssertionError(what)


def flat_lead(side, band, coupling, allow_ir=False):
    return pl.LeadSpectrum.make(side, band[0], band[1], pl.DosModel.constant(1.0),
                                pl.CouplingModel.constant(coupling), allow_ir)


def main():
    ok(pl.__version__, "version string present")

    # --- direct transmission ---------------------------------------------------
    left = flat_lead(pl.Side.Left, (0.5, 1.5), 1.0)
    right = flat_lead(pl.Side.Right, (0.5, 1.5), 1.0)
    ok(abs(pl.transmission_trivial(1.0, 1.0, left, right) - math.pi / 8) < 1e-14,
       "unit-coupling transmission at (1,1) is pi/8")
    kernel = pl.TransmissionKernel.trivial(left, right)
    ok(kernel(1.0, 2.0) == 0.0, "kernel vanishes outside the band product")
    ok(kernel.coupling_scale == 1.0 and not kernel.has_center, "kernel metadata")
    ok(kernel.with_scale(0.0)(1.0, 1.0) == 0.0, "zero coupling scale kills the kernel")

    # --- analytic current: frozen benchmark -------------------------------------
    gap_kernel = pl.TransmissionKernel.trivial(flat_lead(pl.Side.Left, (0.5, 1.5), 0.1),
                                               flat_lead(pl.Side.Right, (2.0, 3.0), 1.0))
    problem = pl.TransportProblem.make(gap_kernel, pl.BathState.make(0.5),
                                       pl.BathState.make(0.5), pl.PumpDrive.make(1.6))
    b = pl.current_right(problem)
    ok(abs(b.j_right - 4.42386396043096102e-4) < 1e-9 * 4.4e-4,
       "frozen gapped benchmark value")
    ok(b.j_normal + b.j_anomalous == b.j_right, "decomposition is exact")
    ok(b.term3.value == 0.0, "pair term vanishes when the bands cannot split the pump")
    ok(b.converged, "quadrature converged")
    doc = json.loads(b.to_json())
    ok(doc["j_right"] == b.j_right, "json round-trip of the breakdown")

    # --- vacuum squeezing: pair term only, golden-rule rates --------------------
    vac_kernel = pl.TransmissionKernel.trivial(flat_lead(pl.Side.Left, (0.1, 1.0), 0.1),
                                               flat_lead(pl.Side.Right, (0.1, 1.0), 1.0))
    vac = pl.TransportProblem.make(vac_kernel, pl.BathState.make(1e-6),
                                   pl.BathState.make(1e-6), pl.PumpDrive.make(1.5))
    vb = pl.current_right(vac)
    t3_vac = 3.629310150506004e-3
    ok(abs(vb.j_right - t3_vac) < 1e-9 * t3_vac, "vacuum pair production rate")
    ok(vb.j_normal == 0.0, "no normal current from the vacuum")
    rates = pl.golden_rule_rates(vac)
    ok(abs(rates.creation.value - t3_vac) < 1e-9 * t3_vac, "creation rate at zero temperature")
    ok(rates.annihilation.value == 0.0, "no annihilation from the vacuum")

    # --- center-mediated kernel with numpy --------------------------------------
    spring = np.array([[1.0]])
    cm = pl.CenterModel.make(spring, [pl.CouplingModel.constant(1.0)],
                             [pl.CouplingModel.constant(1.0)], 1e-9)
    ok(cm.mode_count == 1 and cm.resonance_energies() == [1.0], "center metadata")
    g = np.asarray(pl.center_greens_retarded(2.0, cm))
    ok(g.shape == (1, 1) and np.iscomplexobj(g), "greens function is a complex matrix")
    ok(abs(g[0, 0].real - 1.0 / 3.0) < 1e-6, "single-mode greens value at omega=2")

    wide_l = flat_lead(pl.Side.Left, (0.5, 4.0), 1.0)
    wide_r = flat_lead(pl.Side.Right, (0.5, 4.0), 1.0)
    lam = np.asarray(pl.lambda_matrix(2.0, pl.Side.Left, wide_l, cm))
    ok(lam.shape == (1, 1) and abs(lam[0, 0] - 0.5) < 1e-14, "spectral weight rho lambda^2 / eps")

    ck = pl.TransmissionKernel.center(wide_l, wide_r, cm)
    ok(ck.has_center and ck.resonance_energies() == [1.0], "center kernel metadata")
    ok(abs(ck(2.0, 2.0) - math.pi / 288) < 1e-6 * (math.pi / 288),
       "single-mode center benchmark pi/288")
    ok(pl.transmission_center(2.0, 2.0, ck) == ck(2.0, 2.0), "kernel dispatch")

    tb = pl.Table2D([0.0, 1.0], [2.0, 3.0], [[1.0, 2.0], [3.0, 4.0]])
    ok(abs(tb(0.5, 2.5) - 2.5) < 1e-14, "bilinear pair-amplitude interpolation")

    # --- sweeps ------------------------------------------------------------------
    pts = pl.sweep(problem, pl.SweepAxis.CouplingScale, 0.5, 1.0, 3)
    ok(len(pts) == 3 and all(p.ok for p in pts), "sweep points all succeed")
    ok(abs(pts[0].breakdown.j_right - 0.25 * pts[2].breakdown.j_right)
       < 1e-9 * pts[2].breakdown.j_right, "quadratic coupling-scale law across the sweep")

    # --- covariance oracle -------------------------------------------------------
    opts = pl.OracleOptions()
    opts.modes_per_lead = 10
    system = pl.OracleSystem.discretize(problem, opts)
    ok(system.n_left == 10 and system.n_right == 10 and system.n_center == 0,
       "discretization mode counts")
    freqs = np.asarray(system.frequencies)
    ok(freqs.shape == (20,) and np.all(freqs > 0), "mode frequencies")
    vp = np.asarray(system.pump_coupling)
    ok(vp.shape == (20, 20) and np.allclose(vp, vp.T), "pump coupling block is symmetric")
    ks = np.asarray(system.spring_matrix(0.3))
    ok(ks.shape == (20, 20) and np.allclose(ks, ks.T), "time-dependent spring matrix")

    state = pl.initial_covariance(system)
    cov = np.asarray(state.cov)
    ok(cov.shape == (40, 40), "covariance matrix shape")
    ok(pl.physicality_margin(state) >= -1e-12, "thermal state is physical")
    occ = np.asarray(pl.mode_occupations(state, system))
    sides = pl.side_occupations(state, system)
    ok(abs(sides.left - occ[:10].sum()) < 1e-12 and abs(sides.right - occ[10:].sum()) < 1e-12,
       "side occupations sum the mode occupations")

    pl.propagate(state, system, 5.0)
    ok(5.0 <= state.time < 5.0 + system.dt, "propagation lands on the step grid at the target")
    ok(pl.physicality_margin(state) >= -1e-9, "propagated state stays physical")

    times = np.arange(10.0)
    fit = pl.measure_current(times, 7.0 + 0.25 * times)
    ok(abs(fit.value - 0.25) < 1e-12 and fit.samples == 10, "slope fit of occupation data")

    comp_opts = pl.OracleOptions()
    comp_opts.modes_per_lead = 10
    comp_opts.measure_cycles = 5
    comp_opts.adapt_window = False
    comp = pl.compare(problem, comp_opts)
    ok(comp.physicality_ok, "oracle comparison stays physical")
    ok(abs(comp.analytic.j_right - b.j_right) < 1e-12, "comparison reuses the analytic result")
    ok(math.isfinite(comp.simulated_j_right) and comp.relative_deviation < 1.0,
       "coarse oracle agrees with the analytic current")
    ok(json.loads(comp.to_json())["parameters"]["modes_per_lead"] == 10,
       "comparison json round-trip")

    # --- config parsing ------------------------------------------------------------
    cfg = {
        "pump_frequency": 1.6,
        "left": {"band": [0.5, 1.5], "coupling": {"model": "constant", "value": 0.1},
                 "temperature": 0.5},
        "right": {"band": [2.0, 3.0], "temperature": 0.5},
    }
    rc = pl.parse_config(json.dumps(cfg))
    ok(rc.problem.pump.frequency == 1.6, "parsed pump frequency")
    rb = pl.current_right(rc.problem)
    ok(abs(rb.j_right - b.j_right) < 1e-12 * abs(b.j_right), "parsed problem reproduces the benchmark")

    # --- exception mapping -----------------------------------------------------------
    try:
        pl.BathState.make(0.0)
        ok(False, "non-positive temperature must raise")
    except ValueError:
        pass
    # resonance eigenvalue 3 in a rotated basis, regulator below rounding noise
    c1, s1, c2, s2 = math.cos(0.3), math.sin(0.3), math.cos(0.7), math.sin(0.7)
    q = np.array([[c1, -s1, 0.0], [c2 * s1, c2 * c1, -s2], [s2 * s1, s2 * c1, c2]])
    spring = q @ np.diag([1.0, 3.0, 5.0]) @ q.T
    singular = pl.CenterModel.make(0.5 * (spring + spring.T),
                                   [pl.CouplingModel.constant(1.0)] * 3,
                                   [pl.CouplingModel.constant(1.0)] * 3, 1e-14)
    try:
        pl.center_greens_retarded(1.7320508075688772, singular)
        ok(False, "unresolvable resonance must raise")
    except RuntimeError:
        pass

    print(f"python_smoke: all {checks} checks passed")


if __name__ == "__main__":
    main()
