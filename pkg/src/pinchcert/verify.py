"""Seeded verification batteries behind the command-line `verify` subcommand.

Three suites:

* identities     - decomposition round-trip, norm orthogonality, the combined
                   gradient norm expansion, and the contracted Weitzenboeck
                   identity, on seeded random inputs;
* models         - every fixture's computed invariants against its known data;
* inequalities   - the quadratic-contraction bounds and their s-mixing on
                   positively-curved random tensors at the tightest
                   admissible eps.

Per-sample seeds are spawned deterministically from (seed, dim, index), so
identical configurations produce byte-identical JSON reports.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import inequalities, models, tensors

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 400
    dims: tuple = (3, 4, 5, 6)
    tol_identity: float = 1e-12
    tol_norm: float = 1e-10
    tol_ineq: float = 1e-9
    s_draws: int = 10

    def to_dict(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "dims": list(self.dims),
            "tol_identity": self.tol_identity,
            "tol_norm": self.tol_norm,
            "tol_ineq": self.tol_ineq,
            "s_draws": self.s_draws,
        }


def _sample_seed(seed, dim, index):
    return np.random.SeedSequence(entropy=seed, spawn_key=(dim, index))


def _split_counts(total, dims):
    base, extra = divmod(total, len(dims))
    return {d: base + (1 if i < extra else 0) for i, d in enumerate(dims)}


def run_identities(cfg):
    """Identity battery; every check is an equation, so slack is |difference|."""
    violations = []
    worst = {"roundtrip": 0.0, "norm_orthogonality": 0.0, "f_norm": 0.0,
             "weitzenboeck": 0.0}
    checks = 0
    counts = _split_counts(cfg.samples, cfg.dims)
    for dim in cfg.dims:
        for i in range(counts[dim]):
            ss = _sample_seed(cfg.seed, dim, i)
            rng = np.random.default_rng(ss)
            wit = f"identities/dim{dim}/sample{i}/seed{cfg.seed}"
            t = tensors.random_curvature(dim, ss)
            dec = tensors.decompose(t)
            back = tensors.recompose(dec)
            res = float(np.abs(back - t).max())
            worst["roundtrip"] = max(worst["roundtrip"], res)
            if res > cfg.tol_identity:
                violations.append(_identity_violation("roundtrip", res, dim, wit))
            riem2 = float(tensors.norm2(t))
            ric2 = float(tensors.norm2(tensors.ricci(t)))
            w2 = float(tensors.norm2(dec.weyl))
            r_scal = float(dec.scalar)
            res = abs(
                riem2 - w2 - 4 / (dim - 2) * ric2
                + 2 / ((dim - 1) * (dim - 2)) * r_scal * r_scal
            )
            worst["norm_orthogonality"] = max(worst["norm_orthogonality"], res)
            if res > cfg.tol_norm:
                violations.append(_identity_violation("norm_orthogonality", res, dim, wit))
            grad = inequalities.random_grad_ric(dim, rng)
            params = rng.uniform(-2.0, 2.0, size=5)
            direct, formula = inequalities.f_norm_identity(grad, *params)
            res = abs(direct - formula)
            worst["f_norm"] = max(worst["f_norm"], res)
            if res > cfg.tol_norm:
                violations.append(_identity_violation("f_norm", res, dim, wit))
            r = inequalities.random_traceless_sym(dim, rng)
            hess = inequalities.random_sym(dim, rng)
            coupling = rng.uniform(-2.0, 2.0)
            lhs, rhs = inequalities.weitzenboeck_contract(t, r, hess, coupling)
            res = abs(lhs - rhs)
            worst["weitzenboeck"] = max(worst["weitzenboeck"], res)
            if res > cfg.tol_identity:
                violations.append(_identity_violation("weitzenboeck", res, dim, wit))
            checks += 4
    return _summary("identities", cfg, checks, violations, worst)


def _identity_violation(name, residual, dim, witness):
    return inequalities.IneqReport(
        name=name, lhs=residual, rhs=0.0, slack=-residual,
        params={"n": dim, "eps": None, "s": None}, witness=witness,
    )


def run_models(cfg):
    """Fixture battery: computed invariants must match the known data."""
    violations = []
    checks = 0
    for m in models.all_fixtures():
        wit = f"models/{m.name}"

        def record(name, residual):
            violations.append(
                inequalities.IneqReport(
                    name=name, lhs=float(residual), rhs=0.0, slack=-float(residual),
                    params={"n": m.dim, "eps": None, "s": None}, witness=wit,
                )
            )

        try:
            tensors.validate_curvature(m.curvature, tol=0)
        except Exception:
            record("fixture_symmetries", 1.0)
        scal = tensors.scalar_curv(m.curvature)
        if Fraction(scal) != Fraction(m.known["scalar"]):
            record("fixture_scalar", abs(float(scal) - float(m.known["scalar"])))
        ric = np.asarray(tensors.ricci(m.curvature), dtype=float)
        eig = np.sort(np.linalg.eigvalsh(ric))
        expected = np.sort(np.array([float(x) for x in m.known["ricci_eigenvalues"]]))
        res = float(np.abs(eig - expected).max())
        if res > 1e-12:
            record("fixture_ricci_eigenvalues", res)
        dec = tensors.decompose(m.curvature)
        ric0 = tensors._max_abs(dec.traceless_ricci)
        if m.known["is_einstein"] != (ric0 <= 1e-12):
            record("fixture_einstein_flag", ric0)
        weyl = tensors._max_abs(dec.weyl)
        if m.known["weyl_zero"] != (weyl <= 1e-12):
            record("fixture_weyl_flag", weyl)
        sec_lo = float(Fraction(m.known["sec_range"][0]))
        sec_hi = float(Fraction(m.known["sec_range"][1]))
        found, _ = tensors.min_sectional(m.curvature, restarts=6, seed=cfg.seed)
        if abs(found - sec_lo) > 1e-9:
            record("fixture_min_sectional", abs(found - sec_lo))
        rng = np.random.default_rng(_sample_seed(cfg.seed, m.dim, 0))
        tf = np.asarray(m.curvature, dtype=float)
        for _ in range(200):
            basis, _ = np.linalg.qr(rng.standard_normal((m.dim, 2)))
            val = tensors.sectional(tf, basis[:, 0], basis[:, 1])
            if not sec_lo - 1e-9 <= val <= sec_hi + 1e-9:
                record("fixture_sec_range", max(sec_lo - val, val - sec_hi))
                break
        r_scal = float(scal)
        if r_scal > 0:
            eps = sec_lo / r_scal
            first = inequalities.quad_bound_first(tf, eps, sec_min=found, witness=wit)
            second = inequalities.quad_bound_second(tf, eps, sec_min=found, witness=wit)
            for rep in (first, second):
                if rep.violates(cfg.tol_ineq):
                    violations.append(rep)
            srng = np.random.default_rng(_sample_seed(cfg.seed, m.dim, 1))
            for s in srng.uniform(0.0, 1.0, size=cfg.s_draws):
                rep = inequalities.quad_bound_mixed(tf, eps, s, sec_min=found, witness=wit)
                if rep.violates(cfg.tol_ineq):
                    violations.append(rep)
            checks += 2 + cfg.s_draws
        checks += 7
    return _summary("models", cfg, checks, violations, worst=None)


def run_inequalities(cfg):
    """Randomized pinching battery at the tightest admissible eps per sample."""
    violations = []
    checks = 0
    worst_slack = np.inf
    counts = _split_counts(cfg.samples, cfg.dims)
    for dim in cfg.dims:
        produced = 0
        attempt = 0
        while produced < counts[dim]:
            ss = _sample_seed(cfg.seed, dim, attempt)
            attempt += 1
            t = tensors.random_curvature(dim, ss, sec_floor=0.05)
            sec_min, _ = tensors.min_sectional(
                t, restarts=4, tol=1e-10,
                seed=int(np.random.default_rng(ss).integers(2**31)),
            )
            r_scal = float(tensors.scalar_curv(t))
            if r_scal <= 0.0:
                continue
            produced += 1
            wit = f"inequalities/dim{dim}/sample{attempt - 1}/seed{cfg.seed}"
            eps = (sec_min - tensors.sec_safety_margin(sec_min)) / r_scal
            reports = [
                inequalities.quad_bound_first(t, eps, sec_min=sec_min, witness=wit),
                inequalities.quad_bound_second(t, eps, sec_min=sec_min, witness=wit),
            ]
            rng = np.random.default_rng(ss.spawn(1)[0])
            for s in rng.uniform(0.0, 1.0, size=cfg.s_draws):
                reports.append(
                    inequalities.quad_bound_mixed(t, eps, s, sec_min=sec_min, witness=wit)
                )
            for rep in reports:
                worst_slack = min(worst_slack, rep.slack)
                if rep.violates(cfg.tol_ineq):
                    violations.append(rep)
            checks += len(reports)
    worst = {"min_slack": (None if checks == 0 else worst_slack)}
    return _summary("inequalities", cfg, checks, violations, worst)


def run_suite(name, cfg):
    runners = {
        "identities": run_identities,
        "models": run_models,
        "inequalities": run_inequalities,
    }
    if name == "all":
        results = [runners[key](cfg) for key in ("identities", "models", "inequalities")]
        merged = {
            "schema_version": SCHEMA_VERSION,
            "suite": "all",
            "config": cfg.to_dict(),
            "checks": sum(r["checks"] for r in results),
            "violations": [v for r in results for v in r["violations"]],
            "suites": results,
        }
        merged["status"] = "pass" if not merged["violations"] else "fail"
        return merged
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}")
    return runners[name](cfg)


def _summary(suite, cfg, checks, violations, worst):
    out = {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "config": cfg.to_dict(),
        "checks": checks,
        "violations": [json.loads(v.to_json_line()) for v in violations],
        "status": "pass" if not violations else "fail",
    }
    if worst is not None:
        out["worst"] = worst
    return out


def report_json(result):
    return json.dumps(result, sort_keys=True, indent=2)


def report_human(result):
    lines = [f"suite: {result['suite']}  status: {result['status']}  checks: {result['checks']}"]
    if "worst" in result and result["worst"]:
        for key, val in sorted(result["worst"].items()):
            lines.append(f"  worst {key}: {val}")
    for sub in result.get("suites", []):
        lines.append(f"  [{sub['suite']}] status {sub['status']}, checks {sub['checks']}")
    for v in result["violations"]:
        lines.append(f"  VIOLATION {v['name']} slack {v['slack']} at {v['witness']}")
    return "\n".join(lines)
