"""Acceptance criteria 1-7, each reported as one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import json
import os
import sys
import tempfile

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
from conftest import record_acceptance  # noqa: E402

from kahlermaps import catalog, domains  # noqa: E402
from kahlermaps.admissibility import check_pointwise, classify, moment_sum, probe_boundary  # noqa: E402
from kahlermaps.calabi import resolvability, genconda_bridge  # noqa: E402
from kahlermaps.cli import main as cli_main  # noqa: E402
from kahlermaps.lebrun import lebrun_forward, lebrun_jacobian, lebrun_solve, verify_lebrun_claims  # noqa: E402
from kahlermaps.potentials import eval_potential, grad_potential  # noqa: E402
from kahlermaps.pullback import verify_pullback  # noqa: E402
from kahlermaps.space_forms import cayley_inverse, cayley_map  # noqa: E402
from kahlermaps.special_maps import (  # noqa: E402
    build_special_map,
    cayley_special,
    check_lemma_condition,
)

SEED = 42


def _fmt(v):
    return f"{v:.2e}"


# 1 ------------------------------------------------------------------------


def test_criterion_1_cayley_identities():
    hyp, _ = catalog.hyperbolic()
    pts = domains.ball(2, 1.0, margin=0.95).sample_points(1000, SEED)
    trip = max(np.max(np.abs(cayley_inverse(cayley_map(z)) - z)) for z in pts)

    f = cayley_special(2)
    ball_pts = domains.ball(2, 1.0).sample_points(100, SEED)
    # f^*(omega_0) = omega_hyp on the ball
    r_hyp = verify_pullback(f, hyp, ball_pts, tol=1e-8)
    # f^*(omega_FS) = omega_0: the same profile aimed at the chart of CP^n
    flat, _ = catalog.flat()
    r_fs = verify_pullback(_cayley_into_fs(), flat, ball_pts, tol=1e-8)
    ok = trip <= 1e-12 and r_hyp.passed and r_fs.passed
    detail = f"round-trip {_fmt(trip)} (<=1e-12); f*w0-w_hyp {_fmt(r_hyp.max_residual)}, f*w_FS-w0 {_fmt(r_fs.max_residual)} (<=1e-8)"
    assert record_acceptance(1, ok, detail), detail


def _cayley_into_fs():
    # f as a special map of the flat ball into the chart of CP^n:
    # psi^2 = 1/(1 - s), with target potential log(1 + |w|^2)
    from kahlermaps.space_forms import TargetSpaceForm
    from kahlermaps.special_maps import SpecialMap

    base = cayley_special(2)
    return SpecialMap(2, base.sq_profile, "cayley->fs", TargetSpaceForm("fubini_study", 2))


# 2 ------------------------------------------------------------------------

SUITE_2 = [
    ("flat", {}),
    ("hyperbolic", {}),
    ("fubini_study", {}),
    ("reinhardt_exp", {}),
    ("reinhardt_power", {"p": 2.0}),
    ("log_potential", {"a": 1.0, "b": 1.0, "c": 0.0}),
    ("eguchi_hanson", {}),
]


def test_criterion_2_pullback_suite():
    worst_pb, worst_lemma, failures, n_pairs = 0.0, 0.0, [], 0
    for name, params in SUITE_2:
        spec, dom = catalog.get_entry(name).build(**params)
        checks = check_pointwise(spec, dom, 200, SEED)
        targets = []
        if checks["cond0"].passed:
            targets += ["flat", "hyperbolic"]
        if checks["conda"].passed:
            targets.append("fubini_study")
        pts = dom.sample_points(100, SEED)
        for t in targets:
            m = build_special_map(spec, t)
            rep = verify_pullback(m, spec, pts, tol=1e-8)
            lemma = max(check_lemma_condition(m, spec, None, np.abs(z) ** 2).max_abs for z in pts)
            n_pairs += 1
            worst_pb = max(worst_pb, rep.max_residual, rep.akl_asymmetry)
            worst_lemma = max(worst_lemma, lemma)
            if not rep.passed or lemma > 1e-9:
                failures.append(f"{name}->{t}")
    ok = not failures and n_pairs > 0
    detail = f"{n_pairs} spec/target pairs; worst pullback {_fmt(worst_pb)} (<=1e-8), worst lemma {_fmt(worst_lemma)} (<=1e-9)"
    if failures:
        detail += f"; failing: {', '.join(failures)}"
    assert record_acceptance(2, ok, detail), detail


# 3 ------------------------------------------------------------------------


def test_criterion_3_classification():
    notes, ok = [], True
    for name in ("reinhardt_exp", "reinhardt_power"):
        spec, dom = catalog.get_entry(name).build()
        v = classify(spec, dom).verdicts["flat"]
        ok &= v == "global_symplectomorphism"
        notes.append(f"{name}:{v}")
    for name in ("reinhardt_rational", "reinhardt_inverse_power"):
        spec, dom = catalog.get_entry(name).build()
        c = classify(spec, dom)
        edge = [r for r in c.rays if r.ray.startswith("edge")]
        bounded = bool(edge) and all(r.flat_verdict == "bounded" for r in edge)
        ok &= bounded and c.verdicts["flat"] not in ("global_symplectomorphism", "inconclusive")
        notes.append(f"{name}:edge {'bounded' if bounded else 'NOT bounded'}/{c.verdicts['flat']}")
    spec, dom = catalog.eguchi_hanson()
    xs = dom.sample_radial(200, SEED)
    all_above = all(moment_sum(spec, x) > 1.0 for x in xs)
    c = classify(spec, dom)
    ok &= all_above and c.conda.status == "fail"
    notes.append(f"eguchi_hanson: S>1 at {sum(moment_sum(spec, x) > 1 for x in xs)}/200")
    spec, dom = catalog.log_potential(1.0, 1.0, 0.0)
    v = classify(spec, dom).verdicts["flat"]
    ok &= v == "immersion"
    notes.append(f"log_potential:{v}")
    detail = "; ".join(notes)
    assert record_acceptance(3, ok, detail), detail


# 4 ------------------------------------------------------------------------


def test_criterion_4_lebrun_suite():
    xs = np.random.default_rng(SEED).uniform(0.0, 10.0, size=(1000, 2))
    ok, parts = True, []
    for m in (0.0, 0.1, 0.5, 1.0):
        coords = [lebrun_solve(x, m) for x in xs]
        trip = max(np.max(np.abs(lebrun_forward(c, m) - x)) for c, x in zip(coords, xs))
        det = max(abs(np.linalg.det(lebrun_jacobian(c, m)) - (1 + 2 * m * (c.U + c.V))) for c in coords)
        rep = verify_lebrun_claims(m, n_points=100, seed=SEED)
        by = {c["check"]: c for c in rep.checks}
        spec, dom = catalog.lebrun(m)
        rays = probe_boundary(spec, dom)
        diverging = all(r.flat_verdict == "diverges" and r.values[-1] > 1e6 for r in rays)
        good = (
            trip <= 1e-11
            and det <= 1e-12
            and by["volume_density"]["max_residual"] <= 1e-6
            and by["ricci_flat"]["max_residual"] <= 1e-4
            and by["moment_sum_identity"]["max_residual"] <= 1e-10
            and by["pullback"]["max_residual"] <= 1e-6
            and by["pullback"]["akl_asymmetry"] <= 1e-6
            and diverging
        )
        ok &= good
        parts.append(
            f"m={m:g}: trip {_fmt(trip)} det {_fmt(det)} vol {_fmt(by['volume_density']['max_residual'])} "
            f"ric {_fmt(by['ricci_flat']['max_residual'])} S {_fmt(by['moment_sum_identity']['max_residual'])} "
            f"pb {_fmt(by['pullback']['max_residual'])} rays {'diverge' if diverging else 'NOT all diverge'}"
        )
    detail = " | ".join(parts)
    assert record_acceptance(4, ok, detail), detail


# 5 ------------------------------------------------------------------------


def _unit_degree_one(report, tol=1e-10):
    return all(abs(v - (1.0 if sum(i) == 1 else 0.0)) <= tol for i, v in report.coefficients.items())


def test_criterion_5_calabi():
    flat, _ = catalog.flat()
    hyp, _ = catalog.hyperbolic()
    fs, _ = catalog.fubini_study()
    a = resolvability(flat, "flat", 8)
    c = resolvability(hyp, "hyperbolic", 8)
    b = resolvability(fs, "projective", 8)
    neg = resolvability(fs, "flat", 8)
    neg_at_2 = [v for i, v in neg.negative if i == (2, 0)]
    bridges = [genconda_bridge(s, 8).agreement for s in (flat, hyp)]
    ok = (
        _unit_degree_one(a)
        and _unit_degree_one(c)
        and _unit_degree_one(b)
        and bool(neg_at_2)
        and abs(neg_at_2[0] + 0.5) <= 1e-10
        and bridges == ["agree", "agree"]
    )
    detail = (
        f"a(flat), c(hyp), b(fs) unit on degree 1: {_unit_degree_one(a)}, {_unit_degree_one(c)}, {_unit_degree_one(b)}; "
        f"fs as flat: coefficient (2,0) = {neg_at_2[0] if neg_at_2 else 'none'}; genconda bridge {bridges}"
    )
    assert record_acceptance(5, ok, detail), detail


# 6 ------------------------------------------------------------------------

EXTRA_6 = [("reinhardt_rational", {"c": 2.0}), ("lebrun", {"m": 0.0}), ("lebrun", {"m": 0.1}), ("lebrun", {"m": 1.0})]


def test_criterion_6_gradient_oracle():
    entries = [(name, {}) for name in catalog.CATALOG] + EXTRA_6
    worst, worst_name = 0.0, ""
    for name, params in entries:
        spec, dom = catalog.get_entry(name).build(**params)
        for x in dom.sample_radial(100, SEED):
            g = grad_potential(spec, x)
            h = 1e-5
            fd = np.array(
                [(eval_potential(spec, x + h * e) - eval_potential(spec, x - h * e)) / (2 * h) for e in np.eye(spec.dim)]
            )
            rel = float(np.max(np.abs(g - fd)) / np.max(np.abs(g)))
            if rel > worst:
                worst, worst_name = rel, spec.name
    ok = worst <= 1e-6
    detail = f"{len(entries)} entries x 100 points; worst relative gap {_fmt(worst)} ({worst_name}) (<=1e-6)"
    assert record_acceptance(6, ok, detail), detail


# 7 ------------------------------------------------------------------------

COMMANDS_7 = [
    ["catalog"],
    ["classify", "--potential", "reinhardt_rational"],
    ["classify", "--potential", "eguchi_hanson", "--domain", "punctured", "--target", "fs"],
    ["verify", "--potential", "hyperbolic", "--target", "flat", "--points", "30"],
    ["lebrun", "--m", "0.5", "--points", "10"],
    ["calabi", "--potential", "fubini_study", "--kind", "flat", "--bridge"],
    ["probe", "--potential", "lebrun", "--args", "m=1"],
]


def test_criterion_7_determinism():
    mismatched = []
    with tempfile.TemporaryDirectory() as tmp:
        for k, argv in enumerate(COMMANDS_7):
            blobs = []
            for run in range(2):
                path = os.path.join(tmp, f"{k}_{run}.json")
                code = cli_main(argv + ["--seed", "7", "--out", path])
                with open(path, "rb") as fh:
                    blobs.append(fh.read())
                json.loads(blobs[-1])
                assert code in (0, 1), (argv, code)
            if blobs[0] != blobs[1]:
                mismatched.append(" ".join(argv))
    ok = not mismatched
    detail = f"{len(COMMANDS_7)} commands run twice; byte-identical JSON: {len(COMMANDS_7) - len(mismatched)}/{len(COMMANDS_7)}"
    assert record_acceptance(7, ok, detail), detail


if __name__ == "__main__":
    from conftest import ACCEPTANCE_LINES

    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            pass
    for k in sorted(ACCEPTANCE_LINES):
        print(ACCEPTANCE_LINES[k])
    sys.exit(0 if all("PASS" in v for v in ACCEPTANCE_LINES.values()) else 1)
