"""Acceptance criteria, each run at its stated tolerance and time budget.

Every criterion prints one ``PASS``/``FAIL`` line. Run directly with
``python3 tests/test_acceptance.py`` for the summary alone.
"""
import time
from pathlib import Path

import mpmath as mp
import numpy as np
import pytest

from elastic_dtn import algebra as al
from elastic_dtn import harness as hn
from elastic_dtn import parametrix as pm
from elastic_dtn import quantizer as qz
from elastic_dtn import reference as rf
from elastic_dtn import symbol as sy
from elastic_dtn.core import ElasticMedium, Profile, constant_values, params_from_h_theta
from elastic_dtn.geometry import CotangentPoint, FlatChart, PlanarCurve

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _report(capsys, label, ok, detail, elapsed, budget):
    ok = ok and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}; runtime {elapsed:.2f}s (budget {budget:g}s)"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def criterion_1():
    rng = np.random.default_rng(0)
    res = hn.algebra_residuals(rng, 1000, [2, 3, 4, 5])
    worst = max(res["worst"].values())
    name = max(res["worst"], key=res["worst"].get)
    return worst <= 1e-11, f"algebra suite max relative residual {worst:.2e} ({name}) <= 1e-11"


def criterion_2():
    rng = np.random.default_rng(1)
    rep = sy.identity_checks(hn.identity_samples(rng, 500))
    floor = hn.glancing_scan()
    ok = rep.max_rel_515 <= 1e-12 and rep.max_rel_517 <= 1e-12 and floor > 0
    return ok, (f"identities {rep.max_rel_515:.2e}, {rep.max_rel_517:.2e} <= 1e-12; "
                f"scan min |r0 + rho_s rho_p| = {floor:.4f} > 0")


def criterion_3():
    rep = hn.run_oracle_halfspace(hn.load_config(CONFIGS / "oracle-halfspace.json"))
    chk = {c.name: c for c in rep.checks}
    n = int(chk["n_points"].value)
    worst = chk["max_rel_diff"].value
    media = {(r[1], r[2], r[3]) for r in rep.tables["grid"][1]}
    thetas = [r[4] for r in rep.tables["grid"][1]]
    ok = worst <= 1e-8 and n >= 200 and len(media) >= 3 and min(thetas) >= 0.1 and max(thetas) <= 1
    return ok, f"half-space oracle max relative difference {worst:.2e} <= 1e-8 over {n} points, {len(media)} media"


def criterion_4():
    rep = hn.run_converge_disk(hn.load_config(CONFIGS / "converge-disk.json"))
    chk = {c.name: c for c in rep.checks}
    s1, s2 = chk["slope_per_mode"].value, chk["slope_operator"].value
    r1, r2 = chk["theta2_ratio_per_mode"].value, chk["theta2_ratio_operator"].value
    ok = 0.9 <= s1 <= 1.5 and 0.9 <= s2 <= 1.5 and r1 <= 10 and r2 <= 10
    return ok, (f"slopes in h {s1:.3f} (per mode), {s2:.3f} (operator) in [0.9, 1.5]; "
                f"theta^2 ratios {r1:.2f}, {r2:.2f} <= 10")


def criterion_5():
    rep = hn.run_eikonal_residual(hn.load_config(CONFIGS / "eikonal-residual.json"))
    chk = {c.name: c for c in rep.checks}
    cols, rows = rep.tables["ratios"]
    iN, ir = cols.index("N"), cols.index("ratio")
    ok_ratio = all(2.0 ** (-r[iN] - 1) <= r[ir] <= 2.0 ** (-r[iN] + 1) for r in rows)
    n_pts = len({(r[1], r[2]) for r in rows})
    ok = ok_ratio and chk["phase_bounds_on_collar"].passed and chk["flat_relative_residual"].passed and n_pts >= 20
    return ok, (f"halving ratios within [2^-(N+1), 2^-(N-1)] for N in 4,6,8 at {n_pts} points: {ok_ratio}; "
                f"flat residual {chk['flat_relative_residual'].value:.1e} < 1e-15; "
                f"collar checks pass: {chk['phase_bounds_on_collar'].passed}")


def _cos_medium():
    n = Profile(value=lambda s: 1 + 0.1 * np.cos(s), grad=lambda s: -0.1 * np.sin(np.asarray(s, float)),
                normal=lambda s, o: np.stack([1 + 0.1 * np.cos(s), np.full(np.shape(s), 0.2)]))
    return ElasticMedium(Profile.const(1.0), Profile.const(2.0), n)


def criterion_6():
    rng = np.random.default_rng(6)
    const = ElasticMedium.constant(1.0, 2.0, 1.0)
    circle = PlanarCurve.circle(1.0)
    e57 = e58 = dual_m = dual_q = 0.0
    q_const = 0.0
    for k in range(100):
        p = params_from_h_theta(0.01, rng.uniform(0.1, 1.0))
        xi = rng.uniform(-3, 3)
        s = rng.uniform(0, 2 * np.pi)
        med = const if k % 2 == 0 else _cos_medium()
        pt = CotangentPoint.on_curve(circle, s, xi)
        amp = pm.amplitudes(p, med, circle, pt)
        a_s, a_p = amp.at(0.0)
        e57 = max(e57, al.maxnorm(a_s + a_p - np.eye(2)))
        e58 = max(e58, amp.polarization_residual(0.01))
        m, q = pm.boundary_dn_reduction(p, med, circle, pt)
        ref_m = sy.assemble_md(p, med, pt)
        ref_q = sy.q_symbol(p, med, pt) + pm.q_complement(p, med, pt)
        dual_m = max(dual_m, al.maxnorm(m - ref_m) / al.maxnorm(ref_m))
        dual_q = max(dual_q, al.maxnorm(q - ref_q) / al.maxnorm(ref_q))
        if med is const:
            q_const = max(q_const, al.maxnorm(sy.q_symbol(p, med, pt)))
    for _ in range(20):
        p = params_from_h_theta(0.01, rng.uniform(0.1, 1.0))
        pt = CotangentPoint.flat(rng.uniform(-3, 3, 2))
        m, _ = pm.boundary_dn_reduction(p, const, FlatChart(3), pt)
        ref_m = sy.assemble_md(p, const, pt)
        dual_m = max(dual_m, al.maxnorm(m - ref_m) / al.maxnorm(ref_m))
    ok = e57 <= 1e-12 and e58 <= 1e-10 and dual_m <= 1e-11 and dual_q <= 1e-11 and q_const == 0
    return ok, (f"sum identity {e57:.1e} <= 1e-12, polarization {e58:.1e} <= 1e-10, "
                f"dual path m {dual_m:.1e} and q {dual_q:.1e} <= 1e-11, constant-circle q = {q_const:g}")


def criterion_7():
    L = 2 * np.pi
    rng = np.random.default_rng(7)
    f = qz.FourierBoundaryData.random(40, 2, L, rng)
    out = qz.apply_to_data(qz.Multiplier(lambda xi: np.ones_like(xi)), f, 0.05, n_out=f.n_max)
    e_id = np.abs(out.coef - f.coef).max() / np.abs(f.coef).max()
    back = qz.FourierBoundaryData.analyze(f.synthesize(256), L, f.n_max)
    e_rt = np.abs(back.coef - f.coef).max() / np.abs(f.coef).max()
    e_diag = 0.0
    for n0 in (-13, 0, 5, 29):
        g = qz.FourierBoundaryData.single_mode(n0, [1.0, 2j], 40, L)
        w = qz.japanese(2 * np.pi * 0.05 * n0 / L) ** 3
        o = qz.apply_to_data(qz.Multiplier(lambda xi: qz.japanese(xi) ** 3), g, 0.05, n_out=40)
        e_diag = max(e_diag, np.abs(o.coef - w * g.coef).max() / w)
        e_diag = max(e_diag, abs(qz.hs_norm(g, 3, 0.05) - w * np.sqrt(5)) / (w * np.sqrt(5)))
    ok = e_id <= 1e-13 and e_rt <= 1e-12 and e_diag <= 1e-13
    return ok, f"identity {e_id:.1e} <= 1e-13, Parseval round trip {e_rt:.1e} <= 1e-12, diagonal action {e_diag:.1e}"


def _series_logderiv01():
    mp.mp.dps = 40
    j = lambda m: mp.nsum(lambda k: (-1) ** k / (mp.factorial(k) * mp.factorial(k + m) * 2 ** (2 * k + m)), [0, mp.inf])
    return complex(-j(1) / j(0))


def criterion_8():
    e_series = abs(rf.bessel_logderiv(0, 1.0) - _series_logderiv01())
    w = 500 + 5j
    g = rf.bessel_logderiv(np.arange(0, 12), w)
    nxt = 1 / (np.arange(0, 11) / w - g[:-1]) - np.arange(1, 12) / w
    e_rec = np.max(np.abs(nxt - g[1:]) / np.abs(g[1:]))
    mv = constant_values(1.0, 2.0, 1.0)
    off = 0.0
    for h in (1 / 8, 1 / 32, 1 / 128):
        for th in (0.2, 0.5, 1.0):
            dn = rf.disk_dn_mode(params_from_h_theta(h, th), mv, 1.0, 0)
            off = max(off, abs(dn[0, 1]), abs(dn[1, 0]))
    h, xi = 1 / 16, 1.0
    p = params_from_h_theta(h, 0.5)
    ref = rf.halfspace_dn_exact(p, mv, np.array([-xi])).dn
    radii = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
    err = [np.abs(rf.to_rotated_frame(rf.disk_dn_mode(p, mv, R, int(round(xi * R / h)))) - ref).max() for R in radii]
    slope = np.polyfit(np.log(radii), np.log(err), 1)[0]
    ok = e_series <= 1e-12 and e_rec <= 1e-12 and off <= 1e-12 and abs(slope + 1) <= 0.3
    return ok, (f"series oracle {e_series:.1e} <= 1e-12, recurrence {e_rec:.1e} <= 1e-12, "
                f"mode-0 off-diagonal {off:.1e} <= 1e-12, limit slope in R {slope:.3f} in -1 +/- 0.3")


CRITERIA = [
    ("1", criterion_1, 5.0),
    ("2", criterion_2, 5.0),
    ("3", criterion_3, 10.0),
    ("4", criterion_4, 120.0),
    ("5", criterion_5, 10.0),
    ("6", criterion_6, 10.0),
    ("7", criterion_7, 2.0),
    ("8", criterion_8, 10.0),
]


@pytest.mark.parametrize("label, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(label, fn, budget, capsys):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    assert _report(capsys, label, ok, detail, elapsed, budget), detail


if __name__ == "__main__":
    results = []
    for label, fn, budget in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = fn()
        results.append(_report(None, label, ok, detail, time.perf_counter() - t0, budget))
    raise SystemExit(0 if all(results) else 1)
