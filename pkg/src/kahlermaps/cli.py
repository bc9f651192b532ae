"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed (the report is still
written), 2 usage or configuration error, 3 numerical failure.
"""

import argparse
import itertools
import sys

import numpy as np

from kahlermaps import __version__, domains
from kahlermaps.admissibility import ProbeParams, classify, geometric_grid, moment_sum, probe_boundary
from kahlermaps.calabi import resolvability, genconda_bridge
from kahlermaps.catalog import list_catalog, resolve
from kahlermaps.config import ConfigError, load_config
from kahlermaps.errors import NumericalError, PotentialSyntaxError, TooFewPoints
from kahlermaps.kahler import volume_density
from kahlermaps.lebrun import LebrunBody, verify_lebrun_claims
from kahlermaps.potentials import grad_potential
from kahlermaps.pullback import verify_pullback
from kahlermaps.reporting import build_report, render, rows_to_csv
from kahlermaps.space_forms import SpaceFormKind
from kahlermaps.special_maps import build_special_map, check_lemma_condition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_args_kv(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"--args expects key=value pairs, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        try:
            out[k] = float(v)
        except ValueError:
            out[k] = v
    return out


def _spec_and_domain(ns, cfg):
    params = _parse_args_kv(ns.args)
    if ns.potential == "lebrun":
        params.setdefault("tol", cfg.solver_tol)
    try:
        spec, dom = resolve(ns.potential, ns.dim, **params)
    except TypeError as exc:
        raise UsageError(f"bad --args for {ns.potential!r}: {exc}") from None
    name = getattr(ns, "domain", "default") or "default"
    if name != "default":
        try:
            dom = domains.get_domain(name, spec.dim)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif dom is None:
        dom = domains.full_space(spec.dim)
    return spec, dom


def _probe_params(cfg):
    return ProbeParams(t_grid=geometric_grid(), divergence_threshold=cfg.divergence_threshold, tol=cfg.limit_tol)


def _target_key(name):
    return SpaceFormKind.parse(name).value


def cmd_catalog(ns, cfg):
    results = [{"check": "catalog_entry", "status": "pass", **e} for e in list_catalog()]
    return results, [], EXIT_OK


def cmd_classify(ns, cfg):
    spec, dom = _spec_and_domain(ns, cfg)
    c = classify(spec, dom, n_samples=cfg.samples, seed=cfg.seed, params=_probe_params(cfg))
    targets = [_target_key(ns.target)] if ns.target else ["flat", "hyperbolic", "fubini_study"]
    d = c.to_dict()
    results = [d["cond0"], d["conda"], d["genconda"]]
    failed = False
    for t in targets:
        ray_key = "fubini_study" if t == "fubini_study" else "flat"
        good = "tends_to_1" if t == "fubini_study" else "diverges"
        per_ray = [r.to_dict() for r in c.rays]
        limit_ok = all(r[ray_key] == good for r in per_ray)
        results.append({"check": "gencondb", "target": t, "status": "pass" if limit_ok else "fail", "per_ray": per_ray})
        verdict = c.verdicts[t]
        immersion_check = c.conda if t == "fubini_study" else c.cond0
        ok = immersion_check.passed and c.genconda.passed and limit_ok and c.contains_origin
        failed |= not ok
        entry = {"check": "verdict", "target": t, "verdict": verdict, "status": "pass" if ok else "fail"}
        if not immersion_check.passed:
            entry["witness"] = immersion_check.witness
        results.append(entry)
    if dom.diagnostics:
        results.append({"check": "domain_diagnostics", "status": "pass", "diagnostics": dom.diagnostics})
    return results, ["cond0", "conda", "genconda", "gencondb"], EXIT_FAIL if failed else EXIT_OK


def cmd_verify(ns, cfg):
    spec, dom = _spec_and_domain(ns, cfg)
    m = build_special_map(spec, ns.target)
    pts = dom.sample_points(cfg.points, cfg.seed)
    tol = cfg.implicit_pullback_tol if isinstance(spec.body, LebrunBody) else cfg.pullback_tol
    report = verify_pullback(m, spec, pts, tol=tol)
    pb = {**report.to_dict(), "check": "pullback", "target": m.target.kind.value}
    lemma = [check_lemma_condition(m, spec, None, (z.real**2 + z.imag**2)).max_abs for z in pts]
    worst = int(np.argmax(lemma))
    lm = {
        "check": "symplecticity_condition",
        "status": "pass" if lemma[worst] <= cfg.lemma_tol else "fail",
        "max_residual": lemma[worst],
        "tolerance": cfg.lemma_tol,
        "witness": [float(v) for p in pts[worst] for v in (p.real, p.imag)],
    }
    label = "conda" if m.target.kind is SpaceFormKind.FUBINI_STUDY else "cond0"
    ok = pb["status"] == "pass" and lm["status"] == "pass"
    return [pb, lm], [label], EXIT_OK if ok else EXIT_FAIL


def cmd_lebrun(ns, cfg):
    rep = verify_lebrun_claims(
        ns.m,
        n_points=cfg.points,
        seed=cfg.seed,
        pullback_tol=cfg.implicit_pullback_tol,
        ricci_tol=cfg.ricci_tol,
        solver_tol=cfg.solver_tol,
        probe_params=_probe_params(cfg),
    )
    results = [{**c, "m": rep.m} for c in rep.checks]
    return results, ["cond0", "genconda", "gencondb"], EXIT_OK if rep.passed else EXIT_FAIL


def cmd_calabi(ns, cfg):
    spec, dom = _spec_and_domain(ns, cfg)
    r = resolvability(spec, ns.kind, cfg.degree)
    results = [r.to_dict()]
    if ns.bridge:
        results.append(genconda_bridge(spec, cfg.degree, n_samples=cfg.samples, seed=cfg.seed).to_dict())
    ok = all(x["status"] == "pass" for x in results)
    return results, ["genconda"], EXIT_OK if ok else EXIT_FAIL


def cmd_probe(ns, cfg):
    spec, dom = _spec_and_domain(ns, cfg)
    if ns.ray is not None:
        names = [r.name for r in dom.rays]
        if ns.ray in names:
            idx = names.index(ns.ray)
        elif ns.ray.isdigit() and int(ns.ray) < len(names):
            idx = int(ns.ray)
        else:
            raise UsageError(f"--ray must be an index below {len(names)} or one of {names}")
        dom = domains.DomainSpec(
            dom.name, dom.dim, dom.membership, dom.sampler, [dom.rays[idx]], dom.contains_origin, dom.meets_axes
        )
    results = []
    for r in probe_boundary(spec, dom, _probe_params(cfg)):
        results.append({"check": "gencondb", "status": "pass", **r.to_dict(), "t": r.t, "values": r.values})
    return results, ["gencondb"], EXIT_OK


def _grid(spec_text, n):
    parts = spec_text.split(",")
    if len(parts) == 1:
        parts = parts * n
    if len(parts) != n:
        raise UsageError(f"--grid needs 1 or {n} comma-separated start:stop:count ranges")
    axes = []
    for p in parts:
        try:
            a, b, k = p.split(":")
            axes.append(np.linspace(float(a), float(b), int(k)))
        except ValueError:
            raise UsageError(f"bad grid range {p!r}; expected start:stop:count") from None
        if np.any(axes[-1] < 0):
            raise UsageError("grid ranges are radial coordinates and must be nonnegative")
    return [np.array(x) for x in itertools.product(*axes)]


def cmd_emit(ns, cfg, out):
    spec, _ = resolve(ns.potential, ns.dim, **_parse_args_kv(ns.args))
    n = spec.dim
    cols = {"moment_sum": ["moment_sum"], "grad": [f"grad_{k + 1}" for k in range(n)], "volume": ["volume"]}
    header = [f"x{k + 1}" for k in range(n)] + cols[ns.quantity]
    rows, failures = [], 0
    for x in _grid(ns.grid, n):
        try:
            if ns.quantity == "moment_sum":
                vals = [moment_sum(spec, x)]
            elif ns.quantity == "grad":
                vals = list(grad_potential(spec, x))
            else:
                vals = [volume_density(spec, np.sqrt(x).astype(complex))]
        except NumericalError:
            vals = [float("nan")] * (len(header) - n)
            failures += 1
        rows.append(list(x) + [float(v) for v in vals])
    if failures:
        print(f"emit-samples: {failures} grid points could not be evaluated (nan)", file=sys.stderr)
    out(rows_to_csv(header, rows))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="kahlermaps", description="Special symplectic maps of rotation-invariant Kaehler potentials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--samples", type=int, help="sample count for pointwise checks")
    common.add_argument("--points", type=int, help="point count for verification")
    common.add_argument("--degree", type=int, help="truncation degree for series")
    for tol in ("pullback-tol", "implicit-pullback-tol", "solver-tol", "ricci-tol", "limit-tol", "lemma-tol", "divergence-threshold"):
        common.add_argument(f"--{tol}", type=float)
    pot = argparse.ArgumentParser(add_help=False)
    pot.add_argument("--potential", required=True, help="catalog name or expression in x1..xn, r2")
    pot.add_argument("--dim", type=int, default=2)
    pot.add_argument("--args", help="catalog parameters, e.g. m=1,p=3")
    dom = argparse.ArgumentParser(add_help=False)
    dom.add_argument("--domain", default="default", choices=["default", "full", "punctured", "ball"])

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="list built-in potentials")
    c = sub.add_parser("classify", parents=[common, pot, dom], help="check the admissibility conditions")
    c.add_argument("--target", choices=["flat", "hyp", "hyperbolic", "fs", "fubini_study"])
    v = sub.add_parser("verify", parents=[common, pot, dom], help="build a special map and verify its pullback")
    v.add_argument("--target", required=True, choices=["flat", "hyp", "hyperbolic", "fs", "fubini_study"])
    lb = sub.add_parser("lebrun", parents=[common], help="verify the LeBrun family claims")
    lb.add_argument("--m", type=float, required=True)
    ca = sub.add_parser("calabi", parents=[common, pot], help="truncated resolvability diagnostics")
    ca.add_argument("--kind", required=True, choices=["flat", "projective", "hyperbolic"])
    ca.add_argument("--bridge", action="store_true", help="also cross-check genconda by sampling")
    pr = sub.add_parser("probe", parents=[common, pot, dom], help="moment sums along boundary rays")
    pr.add_argument("--ray", help="ray name or index within the domain")
    em = sub.add_parser("emit-samples", parents=[common, pot], help="CSV of a quantity on a radial grid")
    em.add_argument("--quantity", required=True, choices=["moment_sum", "grad", "volume"])
    em.add_argument("--grid", required=True, help="start:stop:count, one range or one per coordinate")
    return p


COMMANDS = {
    "catalog": cmd_catalog,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "lebrun": cmd_lebrun,
    "calabi": cmd_calabi,
    "probe": cmd_probe,
}


def _config_from(ns):
    keys = ["seed", "format", "samples", "points", "degree", "pullback_tol", "implicit_pullback_tol",
            "solver_tol", "ricci_tol", "limit_tol", "lemma_tol", "divergence_threshold"]
    return load_config(ns.config, {k: getattr(ns, k) for k in keys})


def _writer(ns):
    def out(text):
        if ns.out:
            with open(ns.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    return out


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _writer(ns)
    try:
        cfg = _config_from(ns)
        if ns.command == "emit-samples":
            return cmd_emit(ns, cfg, out)
        results, refs, code = COMMANDS[ns.command](ns, cfg)
    except (UsageError, ConfigError, PotentialSyntaxError, TooFewPoints) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = build_report(ns.command, cfg, results, refs, __version__)
    out(render(report, cfg.format))
    return code


def cli_main(argv=None):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
