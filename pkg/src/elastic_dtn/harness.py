"""Experiment drivers with deterministic, machine-readable reports.

Every ``run_*`` function takes a config dict (see ``configs/`` for one
versioned example per experiment), returns a :class:`Report`, and never
writes files itself; :func:`write_report` does that.
"""
from __future__ import annotations

import csv
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import algebra as al
from . import eikonal as ek
from . import symbol as sy
from .core import ElasticMedium, Profile, constant_values, in_regime, params_from_h_theta
from .geometry import CotangentPoint, FlatChart, PlanarCurve
from .parametrix import u_pi_identity
from .quantizer import (FourierBoundaryData, FramedSymbol, _synth, apply_symbol, grid_size,
                        hs_norm, japanese, l2_norm_samples)
from .reference import FLIP, _orient, disk_dn_modes, halfspace_dn_exact

CONFIG_VERSION = 1


# --------------------------------------------------------------------------
# reporting

@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    note: str = ""


@dataclass
class Report:
    experiment: str
    config_hash: str
    seed: int
    checks: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    version: str = __version__
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, value, tol, passed=None, note="", upper=True):
        value = float(value)
        if passed is None:
            passed = value <= tol if upper else value >= tol
        self.checks.append(Check(name, value, float(tol), bool(passed), note))

    def summary(self) -> dict:
        return {
            "experiment": self.experiment,
            "version": self.version,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "passed": self.passed,
            "runtime_s": round(self.runtime_s, 3),
            "checks": [c.__dict__ for c in self.checks],
            "info": self.info,
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"{tag} {self.experiment}:{c.name} value={c.value:.3e} tol={c.tol:.3e} {c.note}".rstrip())
        return out


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def load_config(path) -> dict:
    with open(path) as fh:
        cfg = json.load(fh)
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    if cfg.get("version", CONFIG_VERSION) != CONFIG_VERSION:
        raise ValueError(f"unsupported config version {cfg.get('version')}")
    for th in cfg.get("theta", []):
        if not 0 < th <= 1:
            raise ValueError("theta values must lie in (0, 1]")
    hs = cfg.get("h", [])
    if any(h <= 0 for h in hs):
        raise ValueError("h values must be positive")
    if list(hs) != sorted(hs, reverse=True):
        raise ValueError("h grid must be decreasing")


def write_report(report: Report, out_dir) -> list[str]:
    """Write ``<experiment>.json`` and one CSV per table; return the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    js = os.path.join(out_dir, f"{report.experiment}.json")
    with open(js, "w") as fh:
        json.dump(report.summary(), fh, indent=2, default=float)
    paths.append(js)
    for name, (cols, rows) in report.tables.items():
        p = os.path.join(out_dir, f"{report.experiment}_{name}.csv")
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(cols)
            w.writerows(rows)
        paths.append(p)
    return paths


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(fn, items))


def _media(cfg) -> list:
    med = cfg.get("medium", {"mu": 1.0, "lam": 2.0, "n": 1.0})
    if isinstance(med, dict):
        med = [med]
    return [constant_values(m["mu"], m["lam"], m["n"]) for m in med]


def _rel(a, b) -> float:
    return al.maxnorm(a - b) / max(al.maxnorm(b), 1e-300)


def fit_slope(x, y, drop_first: bool = True) -> float:
    """OLS slope of ``log y`` against ``log x``; optionally drop the first point."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if drop_first:
        x, y = x[1:], y[1:]
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


# --------------------------------------------------------------------------
# algebra and identities

def _rand_c(rng, size, scale=1.0):
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def random_medium(rng) -> "object":
    mu = rng.uniform(0.3, 3.0)
    lam = rng.uniform(-0.9 * mu, 5.0)
    return constant_values(mu, lam, rng.uniform(0.3, 3.0))


def algebra_residuals(rng, n_samples: int, dims, convention: str = "standard") -> dict:
    """Max relative residual per identity over ``n_samples`` draws per dimension."""
    worst = {k: 0.0 for k in ("u0_xi", "z0_commute", "det_m", "conjugation", "inverse_d2",
                               "u_pi_identity", "det_w0")}
    info = {"conjugation_swapped_order": 0.0, "inverse_bound_C": 0.0}
    for d in dims:
        e1 = al.unit(0, d)
        for _ in range(n_samples):
            xi = _rand_c(rng, d, 3.0)
            u = al.u0_matrix(xi, convention)
            worst["u0_xi"] = max(worst["u0_xi"], al.maxnorm(u @ xi - al.sq(xi) * e1) / np.sum(np.abs(xi) ** 2))
            z = al.z0_matrix(xi)
            e11 = al.outer(e1, e1)
            worst["z0_commute"] = max(worst["z0_commute"], al.maxnorm(z @ e11 - e11 @ z) / al.maxnorm(z))
            eta = complex(_rand_c(rng, 1, 3.0)[0])
            num = np.linalg.det(al.m_matrix(xi, eta))
            ref = al.det_m(xi, eta)
            scale = (np.sum(np.abs(xi) ** 2) + abs(xi[0] * eta)) * abs(xi[0]) ** (d - 2)
            worst["det_m"] = max(worst["det_m"], abs(num - ref) / scale)
            # conjugation: real tangential part
            xr = xi.copy()
            xr[1:] = xr[1:].real
            xp = xr[1:].real
            r = np.linalg.norm(xp)
            m_full = al.m_matrix(xr, eta)
            inv = np.linalg.inv(m_full)
            if d >= 3:
                th = al.theta_chart(xp)
                red = np.zeros(d, dtype=complex)
                red[0], red[1] = xr[0], r
                inv_red = np.linalg.inv(al.m_matrix(red, eta))
                worst["conjugation"] = max(worst["conjugation"], _rel(th.T @ inv_red @ th, inv))
                info["conjugation_swapped_order"] = max(info["conjugation_swapped_order"], _rel(th @ inv_red @ th.T, inv))
            else:
                worst["inverse_d2"] = max(worst["inverse_d2"], _rel(al.invert_m(xr, eta), inv))
            info["inverse_bound_C"] = max(info["inverse_bound_C"], al.maxnorm(inv) / al.inverse_bound(xr, eta))
            # U Pi_p U^t identity with a random frame
            nu = rng.standard_normal(d)
            nu /= np.linalg.norm(nu)
            lam = al.lambda_frame(nu)
            xv = _rand_c(rng, d, 2.0)
            worst["u_pi_identity"] = max(worst["u_pi_identity"], u_pi_identity(xv, nu, lam))
            # det W0
            params = params_from_h_theta(0.01, rng.uniform(0.05, 1.0))
            mv = random_medium(rng)
            zeta = np.concatenate([[0.0], rng.uniform(-5, 5, d - 1)])
            r0 = float(zeta @ zeta)
            rs, rp = sy.rho_pair(params, mv, r0)
            w0, t = sy.w0_and_t(rs, rp, zeta=zeta)
            ref = (r0 + rs * rp) * rs ** (d - 2)
            worst["det_w0"] = max(worst["det_w0"], abs(np.linalg.det(w0) - ref) / abs(ref))
    return {"worst": worst, "info": info}


def identity_samples(rng, n_samples: int):
    out = []
    for _ in range(n_samples):
        params = params_from_h_theta(0.01, rng.uniform(0.01, 1.0))
        out.append((params, random_medium(rng), rng.uniform(0.0, 20.0)))
    return out


def glancing_scan(medium=(1.0, 2.0, 1.0), r0_max: float = 10.0, thetas=None, n_r0: int = 2001) -> float:
    """``min |r0 + rho_s rho_p|`` over a grid in ``r0`` and ``theta``."""
    mv = constant_values(*medium)
    thetas = np.linspace(0.05, 1.0, 20) if thetas is None else thetas
    r0 = np.linspace(0.0, r0_max, n_r0)
    best = np.inf
    for th in thetas:
        p = params_from_h_theta(0.01, float(th))
        best = min(best, float(np.min(sy.identity_residuals(p, mv, r0)[2])))
    return best


def run_verify_algebra(config: dict, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    rep = Report("verify-algebra", config_hash(config), seed)
    rng = np.random.default_rng(seed)
    n = int(config.get("n_samples", 1000))
    dims = config.get("dims", [2, 3, 4, 5])
    tol = float(config.get("tolerance", 1e-11))
    conv = config.get("convention", "standard")
    per_dim = max(1, n // len(dims)) if config.get("split_samples", False) else n
    res = algebra_residuals(rng, per_dim, dims, conv)
    for k, v in res["worst"].items():
        rep.add(k, v, tol)
    rep.info.update(res["info"])
    rep.info["convention"] = conv
    id_tol = float(config.get("identity_tolerance", 1e-12))
    rep_id = sy.identity_checks(identity_samples(rng, int(config.get("n_identity", 500))))
    rep.add("r0_rho_identity", rep_id.max_rel_515, id_tol)
    rep.add("k_rho_product_identity", rep_id.max_rel_517, id_tol)
    floor = glancing_scan(tuple(config.get("scan_medium", (1.0, 2.0, 1.0))))
    rep.add("min_abs_r0_plus_rho_s_rho_p", floor, 0.0, passed=floor > 0, note="scan floor, strictly positive")
    rep.info["sample_min_abs_D"] = rep_id.min_abs_d
    rep.runtime_s = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# half-space oracle

HALFSPACE_MEDIA = [
    {"mu": 1.0, "lam": 2.0, "n": 1.0},
    {"mu": 2.0, "lam": -1.0, "n": 0.5},
    {"mu": 0.5, "lam": 3.0, "n": 2.0},
]


def halfspace_grid(config: dict, rng) -> list:
    media = _media({"medium": config.get("medium", HALFSPACE_MEDIA)})
    thetas = config.get("theta", [0.1, 0.3, 0.6, 1.0])
    dims = config.get("dims", [2, 3])
    xi_max = float(config.get("xi_max", 10.0))
    per = int(config.get("points_per_cell", 10))
    pts = []
    for mv in media:
        for d in dims:
            for th in thetas:
                for j in range(per):
                    rad = xi_max * j / max(per - 1, 1)
                    direc = rng.standard_normal(d - 1)
                    direc /= np.linalg.norm(direc)
                    pts.append((mv, d, float(th), rad * direc))
    return pts


def run_oracle_halfspace(config: dict, seed: int = 0, threads: int = 1, orientation: str = "inward") -> Report:
    t0 = time.perf_counter()
    rep = Report("oracle-halfspace", config_hash(config), seed)
    rng = np.random.default_rng(seed)
    h = float(config.get("h", [1e-3])[0]) if isinstance(config.get("h"), list) else float(config.get("h", 1e-3))
    eps = float(config.get("eps", 0.01))
    pts = halfspace_grid(config, rng)

    def one(item):
        mv, d, th, xi = item
        p = params_from_h_theta(h, th)
        if not in_regime(h, th, eps):
            return None
        sol = halfspace_dn_exact(p, mv, xi, orientation)
        md = _orient(orientation) * sy.assemble_md(p, mv, CotangentPoint.flat(xi))
        rs, rp = sy.rho_pair(p, mv, float(xi @ xi))
        root_err = min(abs(sol.roots - rs).min(), 1.0) + min(abs(sol.roots - rp).min(), 1.0)
        return _rel(sol.dn, md), root_err / max(abs(rs), abs(rp))

    res = _pmap(one, pts, threads)
    rows = []
    skipped = 0
    for (mv, d, th, xi), r in zip(pts, res):
        if r is None:
            skipped += 1
            rows.append([d, mv.mu, mv.lam, mv.n, th, float(np.linalg.norm(xi)), "", "", 0])
            continue
        rows.append([d, mv.mu, mv.lam, mv.n, th, float(np.linalg.norm(xi)), r[0], r[1], 1])
    rel = [r[0] for r in res if r is not None]
    roots = [r[1] for r in res if r is not None]
    tol = float(config.get("tolerance", 1e-8))
    rep.add("max_rel_diff", max(rel), tol)
    rep.add("n_points", len(rel), float(config.get("min_points", 200)), upper=False)
    rep.add("root_crosscheck", max(roots), 1e-10)
    rep.info["skipped_out_of_regime"] = skipped
    rep.info["orientation"] = orientation
    rep.tables["grid"] = (["d", "mu", "lam", "n", "theta", "abs_xi", "rel_diff", "root_err", "in_regime"], rows)
    rep.runtime_s = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# disk convergence

def disk_frame_dn(params, mv, radius, modes, orientation="inward"):
    """Disk DN matrices in the rotated frame (normal, minus tangent)."""
    return FLIP @ disk_dn_modes(params, mv, radius, modes, orientation).dn @ FLIP


def per_mode_error(params, mv, radius: float, n_max: int, orientation="inward") -> tuple[float, float]:
    """``sup_n |DN(n) - m(xi_n)|_max / <xi_n>^3`` and the maximising ``xi``."""
    h = params.h
    n = np.arange(-n_max, n_max + 1)
    xi = h * n / radius
    dn = disk_frame_dn(params, mv, radius, n, orientation)
    m = _orient(orientation) * sy.m2_rotated_batch(params, mv, -xi)
    e = np.abs(dn - m).max(axis=(1, 2)) / japanese(xi) ** 3
    k = int(np.argmax(e))
    return float(e[k]), float(xi[k])


def operator_error(params, mv, curve: PlanarCurve, f: FourierBoundaryData, orientation="inward") -> float:
    """``||N f - Op_h(m) f||_{L2} / ||f||_{H_h^3}`` on a disk.

    The exact map acts per mode on the normal/tangential components
    ``Lambda f``; the symbol is quantized in Cartesian components.
    """
    h = params.h
    R = curve.radius
    m = grid_size(f.n_max + 2)
    s = f.grid(m)
    lam = curve.frame(s)
    g = np.einsum("kij,kj->ki", lam, f.synthesize(m))
    gd = FourierBoundaryData.analyze(g, curve.length, f.n_max + 1)
    dn = disk_frame_dn(params, mv, R, gd.modes, orientation)
    nf = _synth(np.einsum("kij,kj->ki", dn, gd.coef), gd.n_max, m, curve.length)
    nf = np.einsum("kji,kj->ki", lam, nf)
    sgn = _orient(orientation)
    sym = FramedSymbol(curve.frame, lambda x: sgn * sy.m2_rotated_batch(params, mv, -x))
    _, op = apply_symbol(sym, f, h, m)
    return l2_norm_samples(nf - op, curve.length) / hs_norm(f, 3, h)


def run_converge_disk(config: dict, seed: int = 0, threads: int = 1, orientation: str = "inward") -> Report:
    t0 = time.perf_counter()
    rep = Report("converge-disk", config_hash(config), seed)
    mv = _media(config)[0]
    R = float(config.get("geometry", {}).get("radius", 1.0))
    curve = PlanarCurve.circle(R)
    eps = float(config.get("eps", 0.01))
    hs = config.get("h", [2.0 ** -k for k in range(4, 10)])
    theta0 = float(config.get("theta_fixed", 0.5))
    h0 = float(config.get("h_fixed", 2.0 ** -6))
    thetas = config.get("theta", [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0])
    mode_factor = float(config.get("mode_factor", 8.0))
    band_factor = float(config.get("band_factor", 2.0))

    def measure(h, th):
        p = params_from_h_theta(h, th)
        nmax = int(np.ceil(mode_factor / h))
        e1, xi_at = per_mode_error(p, mv, R, nmax, orientation)
        band = int(np.ceil(band_factor / h))
        f = FourierBoundaryData.random(band, 2, curve.length, np.random.default_rng(seed), band)
        e2 = operator_error(p, mv, curve, f, orientation)
        return e1, xi_at, e2

    rows = []
    h_res = _pmap(lambda h: measure(h, theta0), hs, threads)
    for h, (e1, xa, e2) in zip(hs, h_res):
        rows.append([h, theta0, e1, xa, e2, int(in_regime(h, theta0, eps))])
    ok = [r for r in rows if r[5]]
    s1 = fit_slope([r[0] for r in ok], [r[2] for r in ok])
    s2 = fit_slope([r[0] for r in ok], [r[4] for r in ok])
    lo, hi = config.get("slope_window", [0.9, 1.5])
    rep.add("slope_per_mode", s1, lo, passed=lo <= s1 <= hi, note=f"window [{lo}, {hi}], largest h dropped")
    rep.add("slope_operator", s2, lo, passed=lo <= s2 <= hi, note=f"window [{lo}, {hi}], largest h dropped")
    th_rows = []
    t_res = _pmap(lambda th: measure(h0, th), thetas, threads)
    for th, (e1, xa, e2) in zip(thetas, t_res):
        th_rows.append([h0, th, e1, xa, e2, int(in_regime(h0, th, eps))])
    ok = [r for r in th_rows if r[5]]
    sc1 = [r[2] * r[1] ** 2 for r in ok]
    sc2 = [r[4] * r[1] ** 2 for r in ok]
    ratio_tol = float(config.get("theta_ratio_max", 10.0))
    rep.add("theta2_ratio_per_mode", max(sc1) / min(sc1), ratio_tol)
    rep.add("theta2_ratio_operator", max(sc2) / min(sc2), ratio_tol)
    rep.info["theta_fit_per_mode"] = fit_slope([r[1] for r in ok], [r[2] for r in ok], drop_first=False)
    rep.info["theta_fit_operator"] = fit_slope([r[1] for r in ok], [r[4] for r in ok], drop_first=False)
    rep.info["out_of_regime_theta"] = [r[1] for r in th_rows if not r[5]]
    cols = ["h", "theta", "err_per_mode", "xi_at_max", "err_operator", "in_regime"]
    rep.tables["h_sweep"] = (cols, rows)
    rep.tables["theta_sweep"] = (cols, th_rows)
    rep.runtime_s = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# eikonal residual

def _eikonal_medium(mspec) -> ElasticMedium:
    if mspec is None or mspec.get("kind", "constant") == "constant":
        mspec = mspec or {}
        return ElasticMedium.constant(mspec.get("mu", 1.0), mspec.get("lam", 2.0), mspec.get("n", 1.0))
    if mspec["kind"] == "density_cos":
        a = float(mspec.get("amplitude", 0.1))
        b = float(mspec.get("normal_slope", 0.0))
        n = Profile(value=lambda s: 1.0 + a * np.cos(s),
                    grad=lambda s: -a * np.sin(np.asarray(s, dtype=float)),
                    normal=lambda s, o: np.stack([1.0 + a * np.cos(s), np.full(np.shape(s), b)]))
        return ElasticMedium(Profile.const(mspec.get("mu", 1.0)), Profile.const(mspec.get("lam", 2.0)), n)
    raise ValueError(f"unknown medium kind {mspec['kind']!r}")


def eikonal_points(config: dict, rng) -> list:
    n_pts = int(config.get("n_points", 20))
    xi_lo, xi_hi = config.get("xi_range", [0.1, 3.0])
    thetas = config.get("theta", [0.05, 0.3, 1.0])
    xis = np.linspace(xi_lo, xi_hi, n_pts)
    ss = rng.uniform(0, 2 * np.pi, n_pts)
    return [(float(ss[i]), float(xis[i]), float(thetas[i % len(thetas)])) for i in range(n_pts)]


def run_eikonal_residual(config: dict, seed: int = 0, threads: int = 1) -> Report:
    t0 = time.perf_counter()
    rep = Report("eikonal-residual", config_hash(config), seed)
    rng = np.random.default_rng(seed)
    h = float(config.get("h", 0.01)) if not isinstance(config.get("h"), list) else float(config["h"][0])
    Ns = config.get("N", [4, 6, 8])
    delta = float(config.get("delta", 0.05))
    media = config.get("media", [{"kind": "constant"}])
    curve = PlanarCurve.circle(float(config.get("geometry", {}).get("radius", 1.0)))
    pts = eikonal_points(config, rng)
    rows, worst_lo, worst_hi = [], np.inf, 0.0
    bounds_ok = True
    min_delta = np.inf
    for mspec in media:
        med = _eikonal_medium(mspec)
        for s, xi, th in pts:
            p = params_from_h_theta(h, th)
            pt = CotangentPoint.on_curve(curve, s, xi)
            for b in ("s", "p"):
                for N in Ns:
                    ph = ek.solve_eikonal(p, med, curve, pt, b, N)
                    rho = ph.at_point()[1]
                    x1 = ek.collar_width(rho, delta) / 2
                    ratio, route = ek.halving_ratio(ph, x1)
                    scaled = ratio * 2.0 ** N
                    ok = 0.5 <= scaled <= 2.0
                    worst_lo = min(worst_lo, scaled)
                    worst_hi = max(worst_hi, scaled)
                    chk = ek.phase_checks(ph)
                    bounds_ok &= chk.passed or th < 0.05
                    min_delta = min(min_delta, chk.delta)
                    rows.append([mspec.get("kind", "constant"), s, xi, th, b, N, x1, ratio, route, int(ok),
                                 chk.delta, chk.min_im_ratio, chk.min_grad_ratio, int(chk.passed)])
    rep.add("halving_ratio_min_scaled", worst_lo, 0.5, upper=False, note="ratio * 2^N >= 1/2")
    rep.add("halving_ratio_max_scaled", worst_hi, 2.0, note="ratio * 2^N <= 2")
    rep.add("phase_bounds_on_collar", float(bounds_ok), 1.0, passed=bounds_ok, note=f"smallest reported delta {min_delta:g}")
    # flat constant medium
    flat_worst = 0.0
    med = ElasticMedium.constant(1.0, 2.0, 1.0)
    for s, xi, th in pts:
        p = params_from_h_theta(h, th)
        for d in (2, 3):
            pt = CotangentPoint.flat(np.full(d - 1, xi / np.sqrt(d - 1)))
            for b in ("s", "p"):
                ph = ek.solve_eikonal(p, med, FlatChart(d), pt, b, max(Ns))
                flat_worst = max(flat_worst, float(np.max(ek.relative_residual(ph, np.array([0.01, 0.05, 0.1])))))
    rep.add("flat_relative_residual", flat_worst, float(config.get("flat_tol", 1e-15)), passed=flat_worst < float(config.get("flat_tol", 1e-15)))
    rep.info["delta"] = delta
    rep.tables["ratios"] = (["medium", "s", "xi", "theta", "branch", "N", "x1", "ratio", "route", "ratio_ok",
                             "delta_found", "min_im_ratio", "min_grad_ratio", "phase_ok"], rows)
    rep.runtime_s = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# symbol dump

def symbol_dump(config: dict, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    rep = Report("symbol-dump", config_hash(config), seed)
    mv = _media(config)[0]
    R = float(config.get("geometry", {}).get("radius", 1.0))
    curve = PlanarCurve.circle(R)
    h = float(config.get("h", [0.01])[0]) if isinstance(config.get("h"), list) else float(config.get("h", 0.01))
    th = float(config.get("theta", [0.5])[0]) if isinstance(config.get("theta"), list) else float(config.get("theta", 0.5))
    p = params_from_h_theta(h, th)
    s_vals = curve.grid(int(config.get("n_s", 8)))
    xi_max = float(config.get("xi_max", 4.0))
    xi_vals = np.linspace(-xi_max, xi_max, int(config.get("n_xi", 17)))
    rows = sy.symbol_table(p, mv, curve, s_vals, xi_vals)
    # the two assembly paths must agree on every dumped row
    worst = 0.0
    for s in s_vals:
        for xi in xi_vals:
            pt = CotangentPoint.on_curve(curve, s, xi)
            worst = max(worst, _rel(sy.assemble_md(p, mv, pt, "assembled"), sy.assemble_md(p, mv, pt)))
    rep.add("assembly_paths_agree", worst, 1e-12)
    rep.tables["symbol"] = (sy.SYMBOL_COLUMNS, rows)
    rep.runtime_s = time.perf_counter() - t0
    return rep


EXPERIMENTS = {
    "verify-algebra": run_verify_algebra,
    "oracle-halfspace": run_oracle_halfspace,
    "converge-disk": run_converge_disk,
    "eikonal-residual": run_eikonal_residual,
    "symbol-dump": symbol_dump,
}
