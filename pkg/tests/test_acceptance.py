"""Acceptance criteria, each at its stated tolerance.

Every test records one pass/fail line, collected in the terminal summary.
"""
import json
import math
import time

import numpy as np
import pytest

from lomo.grid import GridFunction, make_domain
from lomo.maximal import RadiusGrid
from lomo.multipliers import MultiplierSpec, SchrodingerSpec, bochner_riesz, t1_apply, t2_apply
from lomo.norms import SweepSpec, default_sweep, lorentz_morrey_sweep, lorentz_norm, morrey_norm
from lomo.verify import Corpus, checks
from lomo.cli import main

from acceptance_log import record
from oracles import dense_t1, dense_t2, naive_dft_multiplier

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def lemma21_reports():
    out = {}
    for dim, N in ((1, 256), (2, 64)):
        t0 = time.perf_counter()
        rep = checks.check_lemma21(Corpus(dim, seed=42), grid=N, pairs=100, pair_seed=7)
        out[dim] = (rep, time.perf_counter() - t0)
    return out


def test_criterion_01_exact_identities(lemma21_reports):
    errs = []
    runtime = 0.0
    for dim, (rep, dt) in lemma21_reports.items():
        errs.append(rep.constants["equimeasurability_rel_err"])
        errs.append(rep.constants["sup_over_sets_rel_err"])
        runtime += dt
    ok = max(errs) <= 1e-12 and runtime < 10.0
    record("1", ok, f"max rel err {max(errs):.2e} (tol 1e-12), 1D N=256 + 2D N=64, runtime {runtime:.2f}s (< 10s)")
    assert max(errs) <= 1e-12
    assert runtime < 10.0


def test_criterion_02_subadditivity(lemma21_reports):
    v = {dim: rep.constants["subadditivity_violations"] for dim, (rep, _) in lemma21_reports.items()}
    checked = sum(rep.details["breakpoints_checked"] for rep, _ in lemma21_reports.values())
    ok = all(x == 0 for x in v.values())
    record("2", ok, f"violations {v} over 100 pairs per dimension ({checked} breakpoints)")
    assert ok


def test_criterion_03_sandwich():
    t0 = time.perf_counter()
    rep = checks.check_sandwich(Corpus(1, seed=42), grids=(256, 512))
    dt = time.perf_counter() - t0
    c, C = rep.constants["c"], rep.constants["C"]
    ok = rep.verdict and 0 < c <= C < math.inf and max(rep.drift.values()) < 0.2 and dt < 60
    record("3", ok, f"c={c:.4f} C={C:.4f} drift c {rep.drift['c']:.3f} C {rep.drift['C']:.3f} (< 0.2), "
                    f"runtime {dt:.1f}s (< 60s)")
    assert ok


def test_criterion_04_lemma22():
    rows, ok = [], True
    for n, N in ((1, 256), (2, 32)):
        rep = checks.check_lemma22(Corpus(n, seed=42), grids=(N, 2 * N))
        for a in (n / 4, n / 2, 3 * n / 4):
            C = rep.constants[f"C_sup[a={a:g}]"]
            bound = n / (n - a) * 1.25
            ok &= C <= bound
            rows.append(f"n={n} a={a:g}: {C:.3f}<={bound:.3f}")
    record("4", ok, "; ".join(rows))
    assert ok


def test_criterion_05_lemma23():
    rep = checks.check_lemma23(Corpus(1, seed=42), grids=(256, 512))
    profiles = rep.parameters["radial_profiles"]
    keys = [k for k in rep.constants if k.startswith("c_radial")]
    lo = min(rep.constants[k] for k in keys)
    hi = max(v for k, v in rep.constants.items() if k.startswith("C_full"))
    ok = rep.verdict and lo > 0 and len(profiles) >= 10
    record("5", ok, f"C_full max {hi:.3f}, c_radial min {lo:.3f} on {len(profiles)} profiles, "
                    f"max drift {max(rep.drift.values()):.3f}")
    assert ok


def _coincidence_errors(dim, N, members):
    dom = make_domain(dim, 4.0, N)
    R = RadiusGrid.for_domain(dom)
    ps, lams, qs = (1.25, 2.0, 4.0), (0.0, dim / 2), (1.0, 2.0)
    morrey_params = [(p, p, lam) for p in ps for lam in lams]
    lorentz_params = [(p, q, 0.0) for p in ps for q in qs]
    worst_m, worst_l = 0.0, 0.0
    for f in Corpus(dim, seed=42).sample(dom)[:members]:
        base = default_sweep(f, R)
        # one extra radius covering the whole box so lam = 0 sees all of f
        sw = SweepSpec(base.centers, np.append(base.radii, dom.side * math.sqrt(dim)))
        res = lorentz_morrey_sweep(f, morrey_params + lorentz_params, sw)
        for (p, _, lam), r in zip(morrey_params, res):
            b = morrey_norm(f, p, lam, sw)
            worst_m = max(worst_m, abs(r.norm - b) / b)
        for (p, q, _), r in zip(lorentz_params, res[len(morrey_params):]):
            b = lorentz_norm(f, p, q)
            worst_l = max(worst_l, abs(r.norm - b) / b)
    return worst_m, worst_l


def test_criterion_06_theorem31():
    rep = checks.check_theorem31(Corpus(1, seed=42), grids=(256, 512))
    R = {k: v for k, v in rep.constants.items() if k.startswith("R[")}
    em1, el1 = _coincidence_errors(1, 256, 20)
    em2, el2 = _coincidence_errors(2, 32, 8)
    err = max(em1, el1, em2, el2)
    ok = rep.verdict and all(math.isfinite(v) for v in R.values()) and err <= 1e-12
    record("6", ok, f"max R {max(R.values()):.3f} over {len(R)} lattice points, max drift "
                    f"{max(rep.drift.values()):.3f}; coincidence rel err {err:.1e} (tol 1e-12)")
    assert ok


# pilot sweep for the frontier shift: drift is 4^|shift| in theory, so a
# 2x drift across sigma in [1/4, 4] needs |shift| >= 1/2
PILOT_SHIFTS = (0.15, 0.3, 0.45, 0.6)


@pytest.fixture(scope="module")
def frontier():
    dom = make_domain(1, 4.0, 512)
    base = checks.dilation_base()
    p, a, lam = 1.5, 0.25, 0.5
    inv_q = 1 / p - a / (1 - lam)

    def run(shift, tag):
        q = 1 / (inv_q + shift)
        return checks.check_theorem32_dilation(base, p, p, q, q, a, lam, domain=dom,
                                               enforce_hypotheses=False, check_id=tag)

    balanced = run(0.0, "balanced")
    pilot = {s: run(s, f"plus{s}") for s in PILOT_SHIFTS}
    # the whole admissible minus side: 1/q must stay positive
    minus = {s: run(-s, f"minus{s}") for s in (0.15, 0.16)}
    return balanced, pilot, minus


def test_criterion_07_frontier_balanced_and_plus(frontier):
    balanced, pilot, _ = frontier
    flat = balanced.drift["max_over_min"]
    drifts = {s: r.drift["max_over_min"] for s, r in pilot.items()}
    frozen = min(s for s, d in drifts.items() if d >= 2 and pilot[s].details["monotone"])
    assert frozen <= checks.PLUS_SHIFT
    plus = pilot[checks.PLUS_SHIFT]
    ok = balanced.verdict and flat < 2 and plus.verdict and plus.drift["max_over_min"] >= 2
    record("7", ok, f"balanced max/min {flat:.3f} (< 2); pilot drift "
                    + ", ".join(f"+{s:g}: {d:.2f}" for s, d in drifts.items())
                    + f"; frozen shift +{checks.PLUS_SHIFT:g} drifts {plus.drift['max_over_min']:.2f}x monotone")
    assert ok


@pytest.mark.xfail(strict=True, reason="a 2x drift needs |shift| >= 1/2 but 1/q = 1/6 on the balanced "
                                       "line, so no admissible minus shift reaches it")
def test_criterion_07_frontier_minus(frontier):
    _, _, minus = frontier
    d = {s: r.drift["max_over_min"] for s, r in minus.items()}
    ok = all(v >= 2 for v in d.values())
    record("7-minus", ok, "1/q shifted by " + ", ".join(f"-{s:g}: {v:.3f}x" for s, v in d.items())
                          + " (needs >= 2x; theoretical max 4^(1/6) = 1.26x)")
    assert ok


@pytest.fixture(scope="module")
def section4_report():
    return checks.check_section4(Corpus(1, seed=42))


def test_criterion_08_bochner_riesz(section4_report):
    dom = make_domain(1, 4.0, 64)
    worst = 0.0
    for f in Corpus(1, seed=42).sample(dom)[:10]:
        for delta, r in ((1.0, 0.05), (0.5, 0.2), (1.0, 0.4)):
            got = bochner_riesz(f, MultiplierSpec(delta, r, 1)).samples
            ref = naive_dft_multiplier(f.samples, 4.0, lambda xi: np.maximum(1 - r * r * xi * xi, 0) ** delta)
            worst = max(worst, np.max(np.abs(got - ref)) / max(1.0, np.max(np.abs(ref))))
    rep = section4_report
    keys = [k for k in rep.constants if k.startswith("C_BR")]
    stable = all(math.isfinite(rep.constants[k]) and rep.drift[k] < 0.25 for k in keys)
    ok = worst <= 1e-10 and stable
    record("8", ok, f"DFT oracle err {worst:.1e} (tol 1e-10); "
                    + ", ".join(f"{k}={rep.constants[k]:.3f} drift {rep.drift[k]:.3f}" for k in keys))
    assert ok


def test_criterion_09_schrodinger(section4_report):
    dom = make_domain(1, 4.0, 64)
    V_var = checks.smooth_potential(dom)
    V_const = GridFunction.constant(dom, 1.0)
    worst = 0.0
    for f in Corpus(1, seed=42).sample(dom)[:6]:
        for g, b in ((0.0, 0.5), (0.25, 0.75), (0.5, 1.0)):
            for V in (V_const, V_var):
                ref = dense_t1(f.samples, V.samples, dom.spacing, g, b)
                methods = ("fft", "dense") if V is V_const else ("dense",)
                for m in methods:
                    got = t1_apply(f, SchrodingerSpec(V, g, b), m).samples
                    worst = max(worst, np.max(np.abs(got - ref)) / max(1.0, np.max(np.abs(ref))))
                ref2 = dense_t2(f.samples, V.samples, dom.spacing, g, b)
                got2 = t2_apply(f, SchrodingerSpec(V, g, b, "t2")).samples
                worst = max(worst, np.max(np.abs(got2 - ref2)) / max(1.0, np.max(np.abs(ref2))))
    rep = section4_report
    keys = [k for k in rep.constants if k.startswith(("C_t1", "C_t2"))]
    stable = all(math.isfinite(rep.constants[k]) and rep.drift[k] < 0.25 for k in keys)
    collapse = rep.details["alpha_zero_cases"]
    has_collapse = any(k.startswith("C_t1[gamma=0.5,beta=0.5") for k in collapse) and \
        any(k.startswith("C_t2[gamma=0,beta=0.5") for k in collapse)
    ok = worst <= 1e-9 and stable and has_collapse and rep.verdict
    record("9", ok, f"oracle err {worst:.1e} (tol 1e-9); {len(keys)} lattice dominations, max C "
                    f"{max(rep.constants[k] for k in keys):.3f}, max drift {max(rep.drift[k] for k in keys):.3f}; "
                    f"alpha=0 collapse cases {len(collapse)}")
    assert ok


def test_criterion_10_determinism(tmp_path):
    report = tmp_path / "run.json"
    argv = ["verify", "--suite", "lemma21", "--suite", "sandwich", "--suite", "cond31",
            "--seed", "42", "--grid", "128", "--report", str(report)]
    texts = []
    for _ in range(2):
        main(argv)
        doc = json.loads(report.read_text())
        doc.pop("timestamp")
        texts.append(json.dumps(doc, indent=2, sort_keys=True).encode())
    ok = texts[0] == texts[1]
    record("10", ok, f"two runs, {len(texts[0])} bytes each outside the timestamp field, identical={ok}")
    assert ok
