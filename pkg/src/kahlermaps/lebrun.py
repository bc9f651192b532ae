"""LeBrun's Ricci-flat family omega_m on C^2.

With U = u^2, V = v^2 the implicit coordinates are defined by

    x1 = exp(2m(U - V)) U,    x2 = exp(2m(V - U)) V,

and the radial potential is F_m = U + V + m (U^2 + V^2).  Everything here
works in (U, V); :class:`LebrunBody` exposes F_m as a potential body so the
generic machinery (Kaehler form, special maps, pullback checks) applies.
"""

import math
from dataclasses import dataclass

import numpy as np

from kahlermaps._validation import check_radial
from kahlermaps.ad import Dual, exp as ad_exp
from kahlermaps.errors import DomainError, SolveError
from kahlermaps.potentials import PotentialSpec
from kahlermaps.series import TruncatedSeries

# 2m|U - V| above this makes the naive starting point overflow-prone.
_EXPONENT_GUARD = 30.0


@dataclass(frozen=True)
class LebrunParams:
    m: float = 0.0

    def __post_init__(self):
        if not (self.m >= 0.0 and math.isfinite(self.m)):
            raise ValueError(f"LeBrun parameter must satisfy m >= 0, got {self.m!r}")


@dataclass(frozen=True)
class LebrunCoords:
    U: float
    V: float

    def __iter__(self):
        yield self.U
        yield self.V


def _params(p):
    return p if isinstance(p, LebrunParams) else LebrunParams(float(p))


def lebrun_forward(c, p):
    """The map G: (U, V) -> (x1, x2)."""
    m = _params(p).m
    U, V = (float(v) for v in c)
    if U < 0 or V < 0:
        raise DomainError("LeBrun coordinates must be nonnegative")
    try:
        e = math.exp(2 * m * (U - V))
        out = np.array([e * U, V * math.exp(2 * m * (V - U))])
    except OverflowError:
        raise DomainError(f"overflow evaluating G at (U, V) = ({U!r}, {V!r})") from None
    if not np.all(np.isfinite(out)):
        raise DomainError(f"overflow evaluating G at (U, V) = ({U!r}, {V!r})")
    return out


def lebrun_jacobian(c, p):
    """Jacobian of G with respect to (U, V); its determinant is 1 + 2m(U + V)."""
    m = _params(p).m
    U, V = c
    e, f = math.exp(2 * m * (U - V)), math.exp(2 * m * (V - U))
    return np.array(
        [
            [(1 + 2 * m * U) * e, -2 * m * U * e],
            [-2 * m * V * f, (1 + 2 * m * V) * f],
        ]
    )


def lebrun_jacobian_inverse(c, p):
    """Closed-form inverse of :func:`lebrun_jacobian`: rows are dU/dx and dV/dx."""
    m = _params(p).m
    U, V = c
    e, f = math.exp(2 * m * (U - V)), math.exp(2 * m * (V - U))
    det = 1 + 2 * m * (U + V)
    return np.array(
        [
            [(1 + 2 * m * V) * f, 2 * m * U * e],
            [2 * m * V * f, (1 + 2 * m * U) * e],
        ]
    ) / det


def _reduced_start(x, m):
    """Starting point from the scalar reduction in d = U - V.

    U = x1 exp(-2md) and V = x2 exp(2md), so d solves the strictly
    decreasing equation x1 exp(-2md) - x2 exp(2md) - d = 0.  Bisection runs
    to full precision because the exponents amplify any error in d.
    """
    x1, x2 = x

    def h(d):
        try:
            return x1 * math.exp(-2 * m * d) - x2 * math.exp(2 * m * d) - d
        except OverflowError:
            return math.inf if d < 0 else -math.inf

    # h(x1) <= 0 <= h(-x2) brackets the root.
    lo, hi = -x2, x1
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    d = 0.5 * (lo + hi)
    return x1 * math.exp(-2 * m * d), x2 * math.exp(2 * m * d)


def lebrun_solve(x, p, tol=1e-12, max_iter=100):
    """Invert G by Newton's method with the analytic Jacobian.

    Iterates are clamped to the closed positive quadrant, where det J_G >= 1.
    Convergence means ``max|G(U, V) - x| <= tol * max(1, max|x|)``; after that
    a few extra steps are taken while the residual keeps shrinking, so the
    result is accurate to rounding and varies smoothly with ``x``.

    Raises
    ------
    SolveError
        If the tolerance is not met within ``max_iter`` iterations.
    """
    x = check_radial(x, 2)
    m = _params(p).m
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m == 0.0:
        return LebrunCoords(float(x[0]), float(x[1]))
    scale = max(1.0, float(np.max(x)))
    if 2 * m * abs(x[0] - x[1]) > _EXPONENT_GUARD:
        U, V = _reduced_start(x, m)
    else:
        U, V = float(x[0]), float(x[1])

    def residual(U, V):
        return lebrun_forward((U, V), m) - x

    r = residual(U, V)
    err = float(np.max(np.abs(r)))
    converged_at = None
    for it in range(max_iter):
        if converged_at is None and err <= tol * scale:
            converged_at = it
        if converged_at is not None and (it - converged_at >= 3 or err == 0.0):
            break
        step = np.linalg.solve(lebrun_jacobian((U, V), m), r)
        lam = 1.0
        while True:
            Un, Vn = max(U - lam * step[0], 0.0), max(V - lam * step[1], 0.0)
            try:
                rn = residual(Un, Vn)
                errn = float(np.max(np.abs(rn)))
            except DomainError:
                errn = math.inf
            # Backtrack only while far from the root; near it the full step is quadratic.
            if errn < err or converged_at is not None or lam < 1e-12:
                break
            lam *= 0.5
        if converged_at is not None and errn >= err:
            break
        if not math.isfinite(errn):
            raise SolveError(f"LeBrun solve left the representable range at x = {x.tolist()}", err)
        U, V, r, err = Un, Vn, rn, errn
    if err > tol * scale:
        raise SolveError(f"LeBrun solve did not converge at x = {x.tolist()} after {max_iter} iterations", err)
    return LebrunCoords(U, V)


def lebrun_grad(x, p, tol=1e-12):
    """(dF/dx1, dF/dx2) = ((1 + 2mV) e^{2m(V-U)}, (1 + 2mU) e^{2m(U-V)})."""
    m = _params(p).m
    U, V = lebrun_solve(x, m, tol)
    return np.array(
        [(1 + 2 * m * V) * math.exp(2 * m * (V - U)), (1 + 2 * m * U) * math.exp(2 * m * (U - V))]
    )


def lebrun_hessian(x, p, tol=1e-12):
    """Hessian of F_m in x by a dual pass over the closed-form gradient.

    The tangents of U and V are the rows of the inverse Jacobian of G, which
    is the implicit-function derivative of the solve.
    """
    m = _params(p).m
    c = lebrun_solve(x, m, tol)
    Jinv = lebrun_jacobian_inverse(c, m)
    U, V = Dual(c.U, Jinv[0]), Dual(c.V, Jinv[1])
    g1 = (1 + 2 * m * V) * ad_exp(2 * m * (V - U))
    g2 = (1 + 2 * m * U) * ad_exp(2 * m * (U - V))
    H = np.stack([g1.tangent, g2.tangent])
    return 0.5 * (H + H.T)


def lebrun_map(z, p):
    """The explicit global symplectomorphism (C^2, omega_m) -> (C^2, omega_0)."""
    m = _params(p).m
    z = np.asarray(z, dtype=complex).reshape(2)
    U, V = lebrun_solve(np.abs(z) ** 2, m)
    return np.array(
        [
            math.sqrt(1 + 2 * m * V) * math.exp(m * (V - U)) * z[0],
            math.sqrt(1 + 2 * m * U) * math.exp(m * (U - V)) * z[1],
        ]
    )


def lebrun_moment_sum(x, p):
    """U + V + 4mUV, the closed form of sum_j x_j dF/dx_j."""
    m = _params(p).m
    U, V = lebrun_solve(x, m)
    return U + V + 4 * m * U * V


@dataclass(frozen=True)
class LebrunBody:
    m: float
    tol: float = 1e-12

    def value(self, x):
        U, V = lebrun_solve(x, self.m, self.tol)
        return U + V + self.m * (U * U + V * V)

    def gradient(self, x):
        return lebrun_grad(x, self.m, self.tol)

    def hessian(self, x):
        return lebrun_hessian(x, self.m, self.tol)

    def taylor(self, order, at=None):
        """Taylor series at the origin by series fixed-point iteration.

        U = x1 exp(-2m(U - V)), V = x2 exp(2m(U - V)) gains one correct
        degree per sweep when started from U = x1, V = x2.
        """
        if order.dim != 2:
            raise ValueError("the LeBrun potential lives on C^2")
        if at is not None and np.any(np.asarray(at) != 0):
            raise NotImplementedError("LeBrun Taylor series are only available at the origin")
        x1, x2 = TruncatedSeries.variables(order)
        U, V = x1, x2
        for _ in range(order.max_degree + 1):
            d = U - V
            U, V = x1 * (d * (-2 * self.m)).exp(), x2 * (d * (2 * self.m)).exp()
        return U + V + self.m * (U * U + V * V)

    def describe(self):
        return {"kind": "implicit_lebrun", "m": self.m}


def lebrun_potential(m, tol=1e-12):
    """The implicit potential spec of omega_m; ``tol`` is the solver tolerance."""
    p = _params(m)
    return PotentialSpec(2, LebrunBody(p.m, float(tol)), f"lebrun(m={p.m:g})", {"m": p.m})


@dataclass
class LebrunReport:
    m: float
    n_points: int
    seed: int
    checks: list

    @property
    def passed(self):
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self):
        return {"m": self.m, "n_points": self.n_points, "seed": self.seed, "checks": list(self.checks)}


def _check(name, errors, points, tol):
    errors = [float(e) for e in errors]
    worst = int(np.argmax(errors))
    out = {"check": name, "status": "pass" if errors[worst] <= tol else "fail",
           "max_residual": errors[worst], "tolerance": tol}
    if points is not None:
        out["witness"] = [float(v) for v in np.ravel(np.column_stack([points[worst].real, points[worst].imag]))]
    return out


def verify_lebrun_claims(
    p, n_points=100, seed=42, radius=2.0, pullback_tol=1e-6, ricci_tol=1e-4, solver_tol=1e-12, probe_params=None
):
    """Check the stated properties of omega_m at seeded points of the ball of ``radius``.

    (a) det h = 1 (same volume form as the flat metric), (b) Ricci form = 0,
    (c) sum_j x_j dF/dx_j = U + V + 4mUV, (d) the special map pulls omega_0
    back to omega_m, (e) the moment sum diverges along the probe rays.  Also
    reported: the solver round trip and det J_G = 1 + 2m(U + V).
    """
    from kahlermaps.admissibility import moment_sum, probe_boundary
    from kahlermaps.domains import full_space
    from kahlermaps.kahler import ricci_form, volume_density
    from kahlermaps.pullback import verify_pullback
    from kahlermaps.special_maps import build_special_map

    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    m = _params(p).m
    spec = lebrun_potential(m, solver_tol)
    dom = full_space(2, radius)
    pts = dom.sample_points(n_points, seed)
    xs = pts.real**2 + pts.imag**2

    coords = [lebrun_solve(x, m, solver_tol) for x in xs]
    trip = [np.max(np.abs(lebrun_forward(c, m) - x)) for c, x in zip(coords, xs)]
    det = [abs(np.linalg.det(lebrun_jacobian(c, m)) - (1 + 2 * m * (c.U + c.V))) for c in coords]
    vol = [abs(volume_density(spec, z) - 1.0) for z in pts]
    ric = [np.max(np.abs(ricci_form(spec, z))) for z in pts]
    msum = [abs(moment_sum(spec, x) - (c.U + c.V + 4 * m * c.U * c.V)) for c, x in zip(coords, xs)]
    special = build_special_map(spec, "flat")
    agree = [np.max(np.abs(lebrun_map(z, m) - special(z))) for z in pts]
    pb = verify_pullback(special, spec, pts, tol=pullback_tol)

    checks = [
        _check("solve_round_trip", trip, pts, 1e-11),
        _check("det_jacobian_identity", det, pts, 1e-12),
        _check("volume_density", vol, pts, 1e-6),
        _check("ricci_flat", ric, pts, ricci_tol),
        _check("moment_sum_identity", msum, pts, 1e-10),
        _check("explicit_map_matches_special_map", agree, pts, 1e-10),
        {**pb.to_dict(), "check": "pullback"},
    ]
    rays = probe_boundary(spec, dom, probe_params)
    checks.append(
        {
            "check": "gencondb",
            "status": "pass" if all(r.flat_verdict == "diverges" for r in rays) else "fail",
            "per_ray": [r.to_dict() for r in rays],
        }
    )
    return LebrunReport(m, n_points, seed, checks)
