"""Batch front end: config ingestion, command dispatch, reports.

One binary with subcommands; every run lands in a directory named by the
hash of (config, seed, calibration stamp) and writes a deterministic
report.json (wall times go to a timings.json sidecar so reports stay
byte-identical), CSV side files, and a certificate block that re-runs the
invariants touched by the command.  Exit codes: 0 pass, 2 certificate
failure, 3 budget exceeded, 4 invalid config.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from .bumps import Bump
from .models import (Amplitude, ModelError, default_amplitude,
                     model_from_config)
from .quadrature import BudgetExceeded

EXIT_OK = 0
EXIT_CERT = 2
EXIT_BUDGET = 3
EXIT_CONFIG = 4

COMMANDS = ("dh", "localize", "residue", "spexpand", "singular",
            "resolve-verify", "convergence")


class ConfigError(ValueError):
    def __init__(self, problems):
        self.problems = problems if isinstance(problems, list) else [
            problems]
        super().__init__("; ".join(self.problems))


@dataclass
class RunConfig:
    command: str
    model: Dict
    seed: int = 1
    tolerance: float = 1e-8
    mu_sweep: List[float] = field(default_factory=list)
    order: int = 1
    sigma: float = 0.0
    y_values: List[float] = field(default_factory=lambda: [0.5, 1.0, 2.0,
                                                           5.0])
    mc_samples: int = 1_000_000
    bins: int = 10
    eps_list: List[float] = field(default_factory=lambda: [0.2, 0.1, 0.05,
                                                           0.025])
    calibration: Optional[Dict] = None

    def validate(self):
        problems = []
        if self.command not in COMMANDS:
            problems.append(f"command: unknown {self.command!r}")
        if not isinstance(self.model, dict) or "kind" not in self.model:
            problems.append("model: must be an object with a 'kind'")
        if self.tolerance <= 0:
            problems.append("tolerance: must be positive")
        if self.mc_samples <= 0:
            problems.append("mc_samples: must be positive")
        if self.order < 1:
            problems.append("order: must be >= 1")
        if any(m <= 0 for m in self.mu_sweep):
            problems.append("mu_sweep: entries must be positive")
        if any(e <= 0 for e in self.eps_list):
            problems.append("eps_list: entries must be positive")
        if self.seed < 0:
            problems.append("seed: must be nonnegative")
        if problems:
            raise ConfigError(problems)
        return self

    def canonical(self) -> str:
        payload = {
            "command": self.command, "model": self.model,
            "seed": self.seed, "tolerance": self.tolerance,
            "mu_sweep": self.mu_sweep, "order": self.order,
            "sigma": self.sigma, "y_values": self.y_values,
            "mc_samples": self.mc_samples, "bins": self.bins,
            "eps_list": self.eps_list, "calibration": self.calibration,
        }
        return json.dumps(payload, sort_keys=True)

    def run_hash(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:12]


@dataclass
class Certificate:
    name: str
    value: float
    tolerance: float
    passed: bool
    oracle: str

    def to_dict(self):
        return {"name": self.name, "value": self.value,
                "tolerance": self.tolerance, "passed": bool(self.passed),
                "oracle": self.oracle}


@dataclass
class Report:
    command: str
    inputs_hash: str
    seed: int
    results: Dict
    certificates: List[Certificate]
    calibration: Optional[Dict]
    config_echo: Dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def to_json(self) -> str:
        return json.dumps({
            "command": self.command,
            "inputs_hash": self.inputs_hash,
            "seed": self.seed,
            "calibration": self.calibration,
            "results": self.results,
            "certificates": [c.to_dict() for c in self.certificates],
            "config": self.config_echo,
            "passed": self.passed,
        }, indent=2, sort_keys=True)


def _mu_sweep_from_string(s: str) -> List[float]:
    try:
        a, b, steps = s.split(":")
        a, b, steps = float(a), float(b), int(steps)
    except Exception:
        raise ConfigError([f"mu-sweep: cannot parse {s!r} as a:b:steps"])
    return list(np.geomspace(a, b, steps))


def _amplitude_from_config(model, cfg: RunConfig) -> Amplitude:
    bump_cfg = cfg.model.get("bump", {})
    return default_amplitude(model, bump_cfg)


# ---------------------------------------------------------------------------
# command implementations (each returns (results, certificates, files))


def _cmd_dh(model, cfg: RunConfig):
    from .localization import EquivariantForm, dh_measure
    from .oracles import mc_pushforward_sphere
    if cfg.model.get("kind") != "sphere":
        raise ConfigError(["model.kind: dh command ships for the sphere"])
    rho = EquivariantForm()
    U = dh_measure(model, rho)
    radius = float(model.radius)
    masses, edges = mc_pushforward_sphere(radius, cfg.mc_samples, cfg.seed,
                                          cfg.bins)
    exact_mass = float(U.mass())
    area = 4 * math.pi * radius ** 2
    certs = [Certificate("dh_total_mass_vs_area",
                         abs(exact_mass - area) / area, 0.01,
                         abs(exact_mass - area) / area <= 0.01,
                         "geometric area")]
    worst = 0.0
    for i in range(cfg.bins):
        mid = 0.5 * (edges[i] + edges[i + 1])
        width = edges[i + 1] - edges[i]
        dens = U.value_float((Fraction(mid).limit_denominator(10 ** 6),))
        rel = abs(dens * width - masses[i]) / (area / cfg.bins)
        worst = max(worst, rel)
    certs.append(Certificate("dh_bins_vs_monte_carlo", worst, 0.01,
                             worst <= 0.01,
                             f"MC pushforward ({cfg.mc_samples} samples)"))
    results = {"piecewise": U.to_json_dict(), "mass": exact_mass,
               "area": area, "mc_bin_worst_rel": worst}
    files = {"density.csv": U.sample_csv(-1.5 * radius, 1.5 * radius, 201)}
    return results, certs, files


def _cmd_localize(model, cfg: RunConfig):
    from .localization import (EquivariantForm, NoFixedPointsError, bv_sum)
    from .oracles import sphere_bv_oracle
    rho = EquivariantForm()
    rows = []
    certs = []
    try:
        for y in cfg.y_values:
            val = bv_sum(model, rho, y)
            if cfg.model.get("kind") == "sphere":
                orc = sphere_bv_oracle(float(model.radius), y)
            else:
                orc = complex("nan")
            err = abs(val - orc)
            rows.append({"y": y, "bv_re": val.real, "bv_im": val.imag,
                         "oracle_re": orc.real, "oracle_im": orc.imag,
                         "abs_err": err})
            certs.append(Certificate(f"bv_vs_oracle_y_{y:g}", err,
                                     cfg.tolerance, err <= cfg.tolerance,
                                     "1-d height quadrature"))
    except NoFixedPointsError as exc:
        return ({"note": str(exc), "route": "smeared_limit"}, [], {})
    csv = "y,bv_re,bv_im,oracle_re,oracle_im,abs_err\n" + "\n".join(
        f"{r['y']},{r['bv_re']!r},{r['bv_im']!r},{r['oracle_re']!r},"
        f"{r['oracle_im']!r},{r['abs_err']!r}" for r in rows) + "\n"
    return {"rows": rows}, certs, {"localize.csv": csv}


def _cmd_residue(model, cfg: RunConfig):
    from .localization import (EquivariantForm, NoFixedPointsError,
                               jk_residue, kirwan_integral,
                               pairing_constant, smeared_limit)
    results = {}
    certs = []
    kind = cfg.model.get("kind")
    if kind == "sphere":
        rho = EquivariantForm()
    elif kind == "cotangent-circle":
        pb = Bump(radius=1.0, order=6, kind="poly")
        rho = EquivariantForm(
            density=lambda pts: (np.cos(pts[0]) ** 2) * pb(pts[1]))
    else:
        raise ConfigError(["model.kind: residue ships for sphere and "
                           "cotangent-circle"])
    try:
        plus = float(jk_residue(model, rho, (1,)))
        minus = float(jk_residue(model, rho, (-1,)))
        results["residue_plus"] = plus
        results["residue_minus"] = minus
        certs.append(Certificate("residue_direction_independence",
                                 abs(plus - minus), 0.0,
                                 plus == minus, "exact chamber equality"))
        route = "fixed-point"
    except NoFixedPointsError as exc:
        results["note"] = str(exc)
        route = "smeared_limit"
    results["route"] = route
    sm = smeared_limit(model, rho, eps_list=cfg.eps_list)
    kw = kirwan_integral(model, rho)
    results["smeared"] = sm.extrapolated
    results["kirwan"] = kw
    rel = abs(sm.extrapolated - kw) / abs(kw)
    certs.append(Certificate("smeared_vs_kirwan", rel, 0.01, rel <= 0.01,
                             "two independent quadratures"))
    if route == "fixed-point":
        paired = float(results["residue_plus"]) * pairing_constant(model)
        rel2 = abs(paired - sm.extrapolated) / abs(sm.extrapolated)
        certs.append(Certificate("residue_pairing_vs_smeared", rel2, 0.01,
                                 rel2 <= 0.01, "calibrated pairing"))
    return results, certs, {}


_SPEXPAND_PHASES = ("fresnel", "saddle", "cubic", "cotangent-circle")


def _cmd_spexpand(model_cfg: Dict, cfg: RunConfig):
    from .mpoly import MPoly
    from .oscillatory import (BaseNode, CleanPhase, oscillatory_integral,
                              order_fit, sp_coefficients)
    kind = model_cfg.get("kind", "fresnel")
    if kind not in _SPEXPAND_PHASES:
        raise ConfigError([f"model.kind: spexpand supports "
                           f"{_SPEXPAND_PHASES}"])
    mus = cfg.mu_sweep or list(np.geomspace(1e-1, 1e-3, 5))
    bump = Bump(radius=20.0, order=4, kind="poly")
    if kind == "fresnel":
        psi = MPoly(1, {(2,): Fraction(1, 2)})
        domain = [(-20.0, 20.0)]
        phase_f = lambda s: 0.5 * np.asarray(s) ** 2
        amp_f = lambda s: bump(s)
        amp_poly = MPoly.constant(1, Fraction(1))
        rank = 1
    elif kind == "saddle":
        psi = MPoly(2, {(2, 0): Fraction(1, 2), (0, 2): Fraction(-1, 2)})
        domain = [(-2.5, 2.5), (-2.5, 2.5)]
        b2 = Bump(radius=2.5, order=6, kind="plateau", flat=0.5)
        phase_f = lambda s: 0.5 * (np.asarray(s)[0] ** 2 -
                                   np.asarray(s)[1] ** 2)
        amp_f = lambda s: b2(np.sqrt(np.asarray(s)[0] ** 2 +
                                     np.asarray(s)[1] ** 2))
        amp_poly = MPoly.constant(2, Fraction(1))
        rank = 2
        mus = cfg.mu_sweep or [0.1, 0.05, 0.02]
    elif kind == "cubic":
        psi = MPoly(1, {(2,): Fraction(1, 2), (3,): Fraction(1)})
        b1 = Bump(radius=0.25, order=8, kind="plateau", flat=0.5)
        domain = [(-0.25, 0.25)]
        phase_f = lambda s: 0.5 * np.asarray(s) ** 2 + np.asarray(s) ** 3
        amp_f = lambda s: b1(s)
        amp_poly = MPoly.constant(1, Fraction(1))
        rank = 1
        mus = cfg.mu_sweep or list(np.geomspace(10 ** -3.5, 10 ** -5, 4))
    else:
        return _spexpand_cotangent(cfg)
    phase = CleanPhase(rank=rank, psi0=0.0, nodes=[BaseNode(
        weight=1.0, psi_poly=psi, amp_poly=amp_poly)]).validate()
    exp = sp_coefficients(phase, cfg.order)
    rows = []
    for mu in mus:
        res = oscillatory_integral(phase_f, amp_f, mu, domain)
        pred = exp.evaluate(mu)
        rows.append({"mu": mu, "oracle_re": res.value.real,
                     "oracle_im": res.value.imag, "exp_re": pred.real,
                     "exp_im": pred.imag,
                     "error": abs(res.value - pred)})
    span = math.log10(max(mus) / min(mus))
    fit = order_fit([(r["mu"], max(r["error"], 1e-300)) for r in rows]) \
        if len(rows) >= 4 and span >= 2.0 else None
    target = rank / 2 + cfg.order
    certs = []
    if fit is not None:
        certs.append(Certificate(
            "remainder_exponent", fit.exponent, 0.25,
            abs(fit.exponent - target) <= 0.25 or fit.exact,
            f"order fit vs l/2+N = {target}"))
    if kind == "saddle":
        r = rows[-1]
        pred = complex(r["exp_re"], r["exp_im"])
        rel = r["error"] / abs(pred)
        certs.append(Certificate("expansion_matches_oracle", rel, 0.1,
                                 rel <= 0.1, "tensor quadrature"))
    if kind == "cubic" and cfg.order >= 2:
        # oracle fit of (I - leading)/mu^{3/2} extrapolated to mu = 0
        lead0 = exp.coefficients[0]
        scaled = []
        for r in rows:
            lead = (2 * math.pi * r["mu"]) ** 0.5 * complex(
                math.cos(math.pi / 4), math.sin(math.pi / 4)) * lead0
            val = complex(r["oracle_re"], r["oracle_im"]) - lead
            scaled.append(val / r["mu"] ** 1.5)
        a = np.stack([np.ones(len(mus)), np.asarray(mus)], axis=1)
        sol, *_ = np.linalg.lstsq(a, np.asarray(scaled), rcond=None)
        expected = math.sqrt(2 * math.pi) * complex(
            math.cos(math.pi / 4), math.sin(math.pi / 4)) * \
            exp.coefficients[1]
        rel = abs(sol[0] - expected) / abs(expected)
        certs.append(Certificate("q1_vs_oracle_fit", rel, 0.05,
                                 rel <= 0.05, "quadrature oracle fit"))
    results = {"coefficients": [[c.real, c.imag]
                                for c in exp.coefficients],
               "signature": exp.signature, "rank": exp.rank,
               "rows": rows,
               "fit": None if fit is None else
               {"exponent": fit.exponent, "log_power": fit.log_power}}
    csv = "mu,oracle_re,oracle_im,expansion_re,expansion_im,error\n" + \
        "\n".join(f"{r['mu']!r},{r['oracle_re']!r},{r['oracle_im']!r},"
                  f"{r['exp_re']!r},{r['exp_im']!r},{r['error']!r}"
                  for r in rows) + "\n"
    return results, certs, {"spexpand.csv": csv}


def _spexpand_cotangent(cfg: RunConfig):
    from .models import CotangentCircle
    from .resolution import singular_sweep
    model = CotangentCircle()
    mus = cfg.mu_sweep or list(np.geomspace(1e-2, 1e-4, 5))
    rep = singular_sweep(model, _cot_amp(), mus, sigma=cfg.sigma or 0.7)
    rows = [{"mu": r.mu, "oracle": r.oracle, "scaled": r.scaled,
             "leading": r.leading, "remainder": r.remainder}
            for r in rep.rows]
    certs = []
    if rep.fit_scaled:
        certs.append(Certificate(
            "remainder_exponent", rep.fit_scaled.exponent, 0.15,
            abs(rep.fit_scaled.exponent - 2.0) <= 0.15,
            "order fit of the scaled remainder"))
    results = {"rows": rows, "leading": rep.leading,
               "fit": None if rep.fit_scaled is None else
               {"exponent": rep.fit_scaled.exponent,
                "log_power": rep.fit_scaled.log_power}}
    return results, certs, {}


def _cot_amp(sigma: float = 0.7) -> Amplitude:
    """(1 + cos^2 theta) times a momentum profile curved at the level:
    the remainder of the regular-value expansion is then genuinely of
    second order."""
    p_bump = Bump(radius=1.6, order=6, kind="poly")
    return Amplitude(
        g_profile=Bump(radius=1.0, order=6, kind="poly"),
        density=lambda coords: (1.0 + np.cos(coords[0]) ** 2) *
        p_bump(coords[1] - sigma) * np.exp(-(coords[1] - sigma) ** 2))


def _cmd_singular(model, cfg: RunConfig):
    from .resolution import singular_sweep
    kind = cfg.model.get("kind")
    amp = _amplitude_from_config(model, cfg)
    if kind == "cotangent-circle":
        sigma = cfg.sigma or 0.7
        amp = _cot_amp(sigma)
    elif kind in ("linrot2", "linear-cotangent"):
        sigma = 0.0
    else:
        raise ConfigError(["model.kind: singular ships for linrot2 and "
                           "cotangent-circle"])
    mus = cfg.mu_sweep or list(np.geomspace(1e-2, 1e-4, 5))
    rep = singular_sweep(model, amp, mus, sigma=sigma)
    kappa = rep.kappa
    certs = []
    for r in rep.rows:
        if abs(r.mu - 1e-3) < 1e-12:
            rel = abs(r.scaled - rep.leading) / abs(rep.leading)
            certs.append(Certificate("scaled_vs_leading_at_mu_1e-3", rel,
                                     0.01, rel <= 0.01,
                                     "independent quadratures"))
    if not certs:
        last = rep.rows[-1]
        rel = abs(last.scaled - rep.leading) / abs(rep.leading)
        certs.append(Certificate("scaled_vs_leading_at_min_mu", rel, 0.01,
                                 rel <= 0.01, "independent quadratures"))
    if kind == "cotangent-circle" and rep.fit_scaled:
        # regular value: the normalized remainder is second order, no log
        certs.append(Certificate(
            "remainder_exponent", rep.fit_scaled.exponent, 0.15,
            abs(rep.fit_scaled.exponent - 2.0) <= 0.15, "order fit"))
        certs.append(Certificate(
            "remainder_log_power", rep.fit_scaled.log_power, 0.2,
            abs(rep.fit_scaled.log_power) <= 0.2, "order fit"))
    elif rep.fit:
        certs.append(Certificate(
            "remainder_exponent", rep.fit.exponent, 0.2,
            abs(rep.fit.exponent - (kappa + 1)) <= 0.2, "order fit"))
        certs.append(Certificate(
            "remainder_log_power", rep.fit.log_power, float(rep.lam - 1),
            rep.fit.log_power <= (rep.lam - 1) + 0.2, "order fit"))
    rows = [{"mu": r.mu, "oracle": r.oracle, "scaled": r.scaled,
             "leading": r.leading, "remainder": r.remainder}
            for r in rep.rows]
    csv = "mu,oracle,scaled,leading,remainder\n" + "\n".join(
        f"{r['mu']!r},{r['oracle']!r},{r['scaled']!r},{r['leading']!r},"
        f"{r['remainder']!r}" for r in rows) + "\n"
    results = {"rows": rows, "leading": rep.leading, "kappa": kappa,
               "lambda": rep.lam,
               "fit": None if rep.fit is None else
               {"exponent": rep.fit.exponent,
                "log_power": rep.fit.log_power},
               "fit_scaled": None if rep.fit_scaled is None else
               {"exponent": rep.fit_scaled.exponent,
                "log_power": rep.fit_scaled.log_power}}
    return results, certs, {"singular.csv": csv}


def _cmd_resolve_verify(model, cfg: RunConfig):
    from .resolution import resolution_certificate
    amp = _amplitude_from_config(model, cfg)
    cert = resolution_certificate(model, amp, seed=cfg.seed)
    d = cert.to_dict()
    certs = [
        Certificate("factorization_max_err", cert.factorization_max_err,
                    1e-12, cert.factorization_max_err <= 1e-12,
                    "momentum map vs chart factorization"),
        Certificate("crit_condition_mismatches",
                    float(cert.crit_mismatches), 0.0,
                    cert.crit_mismatches == 0, "gradient scan"),
        Certificate("min_transversal_eigenvalue",
                    cert.min_transversal_eig, 0.0,
                    cert.min_transversal_eig > 0.0, "adapted-frame FD"),
    ]
    if not math.isnan(cert.l_resolved):
        certs.append(Certificate("resolved_vs_direct", cert.rel_gap, 0.01,
                                 cert.rel_gap <= 0.01,
                                 "independent quadratures"))
    return d, certs, {}


def _cmd_convergence(model, cfg: RunConfig):
    from .oracles import fresnel_leading
    from .oscillatory import order_fit, oscillatory_integral
    bump = Bump(radius=20.0, order=4, kind="poly")
    mus = cfg.mu_sweep or [1e-1, 10 ** -1.5, 1e-2, 10 ** -2.5, 1e-3]
    rows = []
    worst = 0.0
    for mu in mus:
        res = oscillatory_integral(lambda s: 0.5 * np.asarray(s) ** 2,
                                   lambda s: bump(s), mu, [(-20.0, 20.0)])
        err = abs(res.value - fresnel_leading(mu))
        rows.append({"mu": mu, "error": err,
                     "bound": 0.05 * mu ** 1.5})
        worst = max(worst, err / (0.05 * mu ** 1.5))
    fit = order_fit([(r["mu"], r["error"]) for r in rows])
    certs = [
        Certificate("fresnel_error_within_bound", worst, 1.0,
                    worst <= 1.0, "closed form"),
        Certificate("fresnel_remainder_exponent", fit.exponent, 0.1,
                    abs(fit.exponent - 1.5) <= 0.1, "order fit"),
    ]
    csv = "mu,error,bound\n" + "\n".join(
        f"{r['mu']!r},{r['error']!r},{r['bound']!r}" for r in rows) + "\n"
    return ({"rows": rows, "fit": {"exponent": fit.exponent,
                                   "log_power": fit.log_power}},
            certs, {"convergence.csv": csv})


# ---------------------------------------------------------------------------


def run(cfg: RunConfig, out_dir: Path,
        calibrate_first: bool = False) -> int:
    try:
        cfg.validate()
        model = None
        if cfg.command not in ("spexpand", "convergence"):
            model = model_from_config(cfg.model)
    except (ConfigError, ModelError) as exc:
        problems = exc.problems if isinstance(exc, ConfigError) else [
            str(exc)]
        print("invalid config:", file=sys.stderr)
        for p in problems:
            print(f"  - {p}", file=sys.stderr)
        return EXIT_CONFIG

    if calibrate_first:
        from .localization import calibrate
        stamp = calibrate().to_dict()
        cfg.calibration = stamp
        (out_dir / "calibration.json").parent.mkdir(parents=True,
                                                    exist_ok=True)
        (out_dir / "calibration.json").write_text(
            json.dumps(stamp, indent=2, sort_keys=True))
    elif cfg.calibration is None and (out_dir / "calibration.json"
                                      ).exists():
        cfg.calibration = json.loads(
            (out_dir / "calibration.json").read_text())

    t0 = time.time()
    try:
        if cfg.command == "dh":
            results, certs, files = _cmd_dh(model, cfg)
        elif cfg.command == "localize":
            results, certs, files = _cmd_localize(model, cfg)
        elif cfg.command == "residue":
            results, certs, files = _cmd_residue(model, cfg)
        elif cfg.command == "spexpand":
            results, certs, files = _cmd_spexpand(cfg.model, cfg)
        elif cfg.command == "singular":
            results, certs, files = _cmd_singular(model, cfg)
        elif cfg.command == "resolve-verify":
            results, certs, files = _cmd_resolve_verify(model, cfg)
        else:
            results, certs, files = _cmd_convergence(model, cfg)
    except BudgetExceeded as exc:
        run_dir = out_dir / f"run-{cfg.run_hash()}"
        run_dir.mkdir(parents=True, exist_ok=True)
        (run_dir / "report.json").write_text(json.dumps(
            {"command": cfg.command, "status": "budget exceeded",
             "detail": str(exc)}, indent=2, sort_keys=True))
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ModelError) as exc:
        problems = exc.problems if isinstance(exc, ConfigError) else [
            str(exc)]
        print("invalid config:", file=sys.stderr)
        for p in problems:
            print(f"  - {p}", file=sys.stderr)
        return EXIT_CONFIG
    elapsed = time.time() - t0

    report = Report(command=cfg.command, inputs_hash=cfg.run_hash(),
                    seed=cfg.seed, results=results, certificates=certs,
                    calibration=cfg.calibration,
                    config_echo=json.loads(cfg.canonical()))
    run_dir = out_dir / f"run-{cfg.run_hash()}"
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "report.json").write_text(report.to_json())
    (run_dir / "timings.json").write_text(json.dumps(
        {"elapsed_seconds": elapsed}))
    for name, content in files.items():
        (run_dir / name).write_text(content)
    for c in certs:
        status = "pass" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: value={c.value:.6g} "
              f"tol={c.tolerance:g} ({c.oracle})")
    print(f"report: {run_dir / 'report.json'}")
    return EXIT_OK if report.passed else EXIT_CERT


def build_config(args) -> RunConfig:
    base: Dict = {}
    if args.config:
        try:
            base = json.loads(Path(args.config).read_text())
        except FileNotFoundError:
            raise ConfigError([f"config: file not found {args.config}"])
        except json.JSONDecodeError as exc:
            raise ConfigError([f"config: invalid JSON ({exc})"])
    model = base.get("model", {})
    if args.model:
        model = {"kind": args.model}
    if not model and args.command in ("spexpand", "convergence"):
        model = {"kind": "fresnel"}
    cfg = RunConfig(
        command=args.command,
        model=model,
        seed=args.seed if args.seed is not None else base.get("seed", 1),
        tolerance=args.tolerance or base.get("tolerance", 1e-8),
        mu_sweep=(_mu_sweep_from_string(args.mu_sweep) if args.mu_sweep
                  else base.get("mu", [])),
        order=args.order or base.get("order", 1),
        sigma=args.sigma if args.sigma is not None else base.get(
            "sigma", 0.0),
        y_values=base.get("y_values", [0.5, 1.0, 2.0, 5.0]),
        mc_samples=base.get("mc_samples", 1_000_000),
        bins=base.get("bins", 10),
        eps_list=base.get("eps", [0.2, 0.1, 0.05, 0.025]),
        calibration=base.get("calibration"),
    )
    return cfg


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="equiloc",
        description="equivariant localization and singular "
                    "stationary-phase verification runs")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON config document")
    parser.add_argument("--out", default="runs", help="output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--calibrate", action="store_true",
                        help="recompute the Fourier-constant calibration "
                             "stamp before running")
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--model", help="model kind shorthand")
    parser.add_argument("--order", type=int, default=None)
    parser.add_argument("--mu-sweep", help="a:b:steps geometric sweep")
    parser.add_argument("--sigma", type=float, default=None)
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print("invalid config:", file=sys.stderr)
        for p in exc.problems:
            print(f"  - {p}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg, Path(args.out), calibrate_first=args.calibrate)


if __name__ == "__main__":
    sys.exit(main())
