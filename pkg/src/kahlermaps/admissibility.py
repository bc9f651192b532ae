"""Sampling-based checks of the four admissibility conditions and classification.

Conditions, by label:

* ``cond0``     every dF/dx_k >= 0 (a flat or hyperbolic special map exists);
* ``conda``     cond0 and the moment sum S(x) = sum_j x_j dF/dx_j < 1
  (a Fubini-Study special map exists);
* ``genconda``  every dF/dx_k > 0 (needed for a global statement);
* ``gencondb``  S -> +infinity at the boundary (flat/hyperbolic) or S -> 1
  (Fubini-Study).

Pointwise passes only mean "no violation in the sample" and boundary limits
are sequence heuristics along the domain's rays.  Reports say so.
"""

from dataclasses import dataclass, field

import numpy as np

from kahlermaps._validation import check_radial
from kahlermaps.errors import NumericalError, RayExitsDomain
from kahlermaps.potentials import grad_potential

CONDITION_LABELS = ("cond0", "conda", "genconda", "gencondb")
TARGETS = ("flat", "hyperbolic", "fubini_study")

RAY_FLAT_VERDICTS = ("diverges", "bounded", "inconclusive")
RAY_FS_VERDICTS = ("tends_to_1", "other", "inconclusive")


def moment_sum(spec, x):
    """S(x) = sum_j dF/dx_j (x) * x_j."""
    x = check_radial(x, spec.dim)
    return float(np.dot(grad_potential(spec, x), x))


@dataclass
class CheckResult:
    """Outcome of one pointwise condition over a sample.

    ``witness`` is the first sampled radial point violating the condition,
    and ``detail`` names the violated inequality with its value there.
    """

    label: str
    status: str
    n_samples: int
    witness: list = None
    detail: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        out = {
            "check": self.label,
            "status": self.status,
            "n_samples": self.n_samples,
            "basis": "sampling (no violation found is not a proof)",
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["detail"] = self.detail
        return out


def _fail(label, n, x, detail):
    return CheckResult(label, "fail", n, [float(v) for v in x], detail)


def check_pointwise(spec, dom, n_samples=200, seed=42):
    """Evaluate cond0, conda and genconda at ``n_samples`` seeded points of ``dom``.

    Returns a dict label -> :class:`CheckResult`.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if dom.dim != spec.dim:
        raise ValueError("domain and potential have different dimensions")
    xs = dom.sample_radial(n_samples, seed)
    results = {}
    for x in xs:
        g = grad_potential(spec, x)
        S = float(np.dot(g, x))
        k = int(np.argmin(g))
        if "cond0" not in results and g[k] < 0.0:
            msg = f"dF/dx_{k + 1} = {g[k]!r} < 0"
            results["cond0"] = _fail("cond0", n_samples, x, msg)
        if "genconda" not in results and g[k] <= 0.0:
            results["genconda"] = _fail("genconda", n_samples, x, f"dF/dx_{k + 1} = {g[k]!r} <= 0")
        if "conda" not in results:
            if g[k] < 0.0:
                results["conda"] = _fail("conda", n_samples, x, f"dF/dx_{k + 1} = {g[k]!r} < 0")
            elif S >= 1.0:
                results["conda"] = _fail("conda", n_samples, x, f"moment sum S = {S!r} >= 1")
    for label in ("cond0", "conda", "genconda"):
        results.setdefault(label, CheckResult(label, "pass", n_samples))
    return {k: results[k] for k in ("cond0", "conda", "genconda")}


def geometric_grid(n_steps=40, ratio=0.5):
    """t_k = 1 - ratio^k for k = 1..n_steps, approaching 1 from below."""
    return 1.0 - ratio ** np.arange(1, n_steps + 1, dtype=float)


@dataclass
class ProbeParams:
    t_grid: np.ndarray = field(default_factory=geometric_grid)
    divergence_threshold: float = 1e6
    tol: float = 1e-4
    stable_steps: int = 3


@dataclass
class RayProbe:
    """Moment sums along one ray and the two limit verdicts drawn from them."""

    ray: str
    t: list
    values: list
    flat_verdict: str
    fs_verdict: str
    note: str = ""

    def to_dict(self):
        return {
            "ray": self.ray,
            "flat": self.flat_verdict,
            "fubini_study": self.fs_verdict,
            "n_evaluated": len(self.values),
            "last_t": self.t[-1] if self.t else None,
            "last_value": self.values[-1] if self.values else None,
            "note": self.note,
        }


def _increasing_tail(v, k):
    tail = v[-k:]
    return len(tail) == k and all(b > a for a, b in zip(tail, tail[1:]))


def _stable_tail(v, k, tol):
    if len(v) < k + 1:
        return False
    tail = v[-(k + 1):]
    scale = max(1.0, abs(tail[-1]))
    return all(abs(b - a) <= tol * scale for a, b in zip(tail, tail[1:]))


def _judge(values, params):
    k = params.stable_steps
    if len(values) < k + 1:
        return "inconclusive", "inconclusive"
    last = values[-1]
    diverging = _increasing_tail(values, k + 1) and last > params.divergence_threshold
    stable = _stable_tail(values, k, params.tol)

    if diverging:
        flat = "diverges"
    elif stable:
        flat = "bounded"
    else:
        flat = "inconclusive"

    gaps = [abs(v - 1.0) for v in values[-(k + 1):]]
    shrinking = all(b <= a for a, b in zip(gaps, gaps[1:]))
    if shrinking and gaps[-1] < params.tol:
        fs = "tends_to_1"
    elif diverging or (stable and gaps[-1] >= params.tol):
        fs = "other"
    else:
        fs = "inconclusive"
    return flat, fs


def probe_ray(spec, dom, ray, params=None):
    """Moment sums along ``ray`` on the t-grid, truncated at the first numerical failure."""
    params = params or ProbeParams()
    ts, vals, note = [], [], ""
    for t in params.t_grid:
        x = ray(t)
        if not dom.contains(x):
            raise RayExitsDomain(f"ray {ray.name} leaves {dom.name} at t = {t!r}, x = {x.tolist()}")
        try:
            S = moment_sum(spec, x)
        except (NumericalError, OverflowError) as exc:
            note = f"range exhausted at t = {t!r}: {exc}"
            break
        if not np.isfinite(S):
            note = f"range exhausted at t = {t!r}: non-finite moment sum"
            break
        ts.append(float(t))
        vals.append(S)
    flat, fs = _judge(vals, params)
    return RayProbe(ray.name, ts, vals, flat, fs, note)


def probe_boundary(spec, dom, params=None):
    """Probe every ray of ``dom``; results keep the domain's ray order."""
    if not dom.rays:
        raise ValueError("domain has no rays to probe")
    return [probe_ray(spec, dom, r, params) for r in dom.rays]


@dataclass
class Classification:
    """Pointwise checks, per-ray limits and a verdict per target space form."""

    cond0: CheckResult
    conda: CheckResult
    genconda: CheckResult
    rays: list
    verdicts: dict
    contains_origin: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def gencondb_flat(self):
        return {r.ray: r.flat_verdict for r in self.rays}

    @property
    def gencondb_fs(self):
        return {r.ray: r.fs_verdict for r in self.rays}

    def to_dict(self):
        return {
            "cond0": self.cond0.to_dict(),
            "conda": self.conda.to_dict(),
            "genconda": self.genconda.to_dict(),
            "gencondb": [r.to_dict() for r in self.rays],
            "contains_origin": self.contains_origin,
            "verdicts": dict(self.verdicts),
            "diagnostics": self.diagnostics,
        }


def _global_verdict(ray_verdicts, good, bad):
    # a single refuting ray settles it; otherwise uncertainty wins
    if any(v == bad for v in ray_verdicts):
        return "immersion"
    if all(v == good for v in ray_verdicts):
        return None
    return "inconclusive"


def verdicts_from(checks, rays, contains_origin):
    """Combine pointwise results and ray verdicts into per-target verdicts."""
    out = {}
    global_ok = contains_origin and checks["genconda"].passed

    if not checks["cond0"].passed:
        flat = "no_special_immersion"
    elif not global_ok:
        flat = "immersion"
    else:
        flat = _global_verdict([r.flat_verdict for r in rays], "diverges", "bounded") or "global_symplectomorphism"
    out["flat"] = flat
    # the hyperbolic map is the flat one followed by the inverse Cayley map
    out["hyperbolic"] = flat

    if not checks["conda"].passed:
        fs = "no_special_immersion"
    elif not global_ok:
        fs = "immersion"
    else:
        fs = _global_verdict([r.fs_verdict for r in rays], "tends_to_1", "other") or "projective_embedding"
    out["fubini_study"] = fs
    return out


def classify(spec, dom, n_samples=200, seed=42, params=None):
    """Classify (M, omega) against the three target space forms."""
    checks = check_pointwise(spec, dom, n_samples, seed)
    rays = probe_boundary(spec, dom, params)
    return Classification(
        cond0=checks["cond0"],
        conda=checks["conda"],
        genconda=checks["genconda"],
        rays=rays,
        verdicts=verdicts_from(checks, rays, dom.contains_origin),
        contains_origin=dom.contains_origin,
        diagnostics=dict(dom.diagnostics),
    )
