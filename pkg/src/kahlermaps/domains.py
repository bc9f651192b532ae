"""Rotation-invariant domains M of C^n with seeded samplers and boundary rays.

A domain is described in radial coordinates x_j = |z_j|^2.  Each domain
carries a family of :class:`Ray` curves ``t -> x(t)``, ``t in [0, 1)``, that
approach the boundary of M (including ``||x|| -> infinity`` for unbounded
domains, reparametrised by ``s = t / (1 - t)``).  Boundary limits are probed
along these rays only, so any conclusion drawn from them is heuristic.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from kahlermaps import dsl
from kahlermaps.ad import Jet2

AXIS_HUG = 1e-3


@dataclass(frozen=True)
class Ray:
    name: str
    curve: Callable
    unbounded: bool = False

    def __call__(self, t):
        return np.asarray(self.curve(float(t)), dtype=float)


def _unbounded(t):
    return t / (1.0 - t)


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """A domain of C^n invariant under the torus action.

    Attributes
    ----------
    membership : callable
        Predicate on radial coordinates.
    sampler : callable
        ``sampler(rng, k)`` returns ``k`` interior points of C^n as a
        complex array of shape (k, n).
    rays : list of Ray
        Curves approaching the boundary.
    contains_origin, meets_axes
        Whether 0 is in M, and whether M meets each hyperplane z_j = 0.
    diagnostics : dict
        Precondition checks performed by the constructor.
    """

    name: str
    dim: int
    membership: Callable
    sampler: Callable
    rays: list
    contains_origin: bool
    meets_axes: tuple
    diagnostics: dict = field(default_factory=dict)

    def sample_points(self, k, seed=42):
        rng = np.random.default_rng(seed)
        return np.asarray(self.sampler(rng, k), dtype=complex)

    def sample_radial(self, k, seed=42):
        z = self.sample_points(k, seed)
        return z.real**2 + z.imag**2

    def contains(self, x):
        return bool(self.membership(np.asarray(x, dtype=float)))


def _random_phases(rng, moduli):
    theta = rng.uniform(0.0, 2 * np.pi, size=moduli.shape)
    return moduli * np.exp(1j * theta)


def _ball_points(rng, k, n, r_max, r_min=0.0):
    """Uniform points in the shell r_min <= |z| <= r_max of C^n = R^2n."""
    g = rng.normal(size=(k, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    u = rng.uniform(size=(k, 1))
    r = (r_min ** (2 * n) + u * (r_max ** (2 * n) - r_min ** (2 * n))) ** (1.0 / (2 * n))
    y = g * r
    return y[:, 0::2] + 1j * y[:, 1::2]


def _directions(n):
    """Diagonal and axis-hugging unit directions in the positive orthant."""
    dirs = {"diagonal": np.full(n, 1.0 / n)}
    if n > 1:
        for k in range(n):
            d = np.full(n, AXIS_HUG)
            d[k] = 1.0
            dirs[f"near_axis_{k + 1}"] = d / d.sum()
    else:
        dirs["axis_1"] = np.ones(1)
    return dirs


def _radial_rays(n, inward=False, outward=True, scale=1.0):
    rays = []
    for name, d in _directions(n).items():
        if outward:
            rays.append(Ray(f"{name}_to_infinity", lambda t, d=d: _unbounded(t) * d, True))
        if inward:
            rays.append(Ray(f"{name}_to_origin", lambda t, d=d: scale * (1.0 - t) * d))
    return rays


def full_space(n, radius=2.0):
    """C^n; samples uniform in the ball of the given radius."""
    return DomainSpec(
        name=f"C^{n}",
        dim=n,
        membership=lambda x: bool(np.all(x >= 0)),
        sampler=lambda rng, k: _ball_points(rng, k, n, radius),
        rays=_radial_rays(n),
        contains_origin=True,
        meets_axes=(True,) * n,
    )


def punctured_space(n, radius=2.0, r_min=0.1):
    """C^n minus the origin; rays go both to infinity and into the puncture."""
    return DomainSpec(
        name=f"C^{n}\\{{0}}",
        dim=n,
        membership=lambda x: bool(np.all(x >= 0) and np.sum(x) > 0),
        sampler=lambda rng, k: _ball_points(rng, k, n, radius, r_min),
        rays=_radial_rays(n, inward=True, scale=radius**2),
        contains_origin=False,
        meets_axes=(True,) * n,
    )


def ball(n, rho=1.0, margin=0.9):
    """The ball |z| < rho; samples stay within ``margin * rho``."""
    rays = [
        Ray(f"{name}_to_sphere", lambda t, d=d: t * rho**2 * d)
        for name, d in _directions(n).items()
    ]
    return DomainSpec(
        name=f"B^{n}({rho:g})",
        dim=n,
        membership=lambda x: bool(np.all(x >= 0) and np.sum(x) < rho**2),
        sampler=lambda rng, k: _ball_points(rng, k, n, margin * rho),
        rays=rays,
        contains_origin=True,
        meets_axes=(True,) * n,
    )


def _univariate(source):
    ast = dsl.parse_expression(source, 1)

    def F(x):
        return float(dsl.evaluate(ast, [float(x)]))

    def jet(x):
        out = dsl.evaluate(ast, Jet2.variables([x]))
        return out.value, float(out.grad[0]), float(out.hess[0, 0])

    return F, jet


def reinhardt_domain(
    F_source,
    x0=math.inf,
    edge_eps=(0.5,),
    fibers=None,
    sample_x1_max=2.0,
    sample_fill=0.5,
    check_samples=64,
    seed=42,
):
    """Complete Reinhardt domain {|z1|^2 < x0, |z2|^2 < F(|z1|^2)} in C^2.

    ``F_source`` is an expression in ``x1`` for a positive non-increasing
    function on [0, x0).  Rays:

    * fibre rays ``x1 = a`` fixed, ``x2 -> F(a)``;
    * edge curves ``x1 -> x0`` with ``x2 = eps * F(x1)`` for each ``eps``.

    The constructor also checks that A(x) = -x F'(x) / F(x) has A' > 0 on
    a seeded sample of [0, x0) (the Kaehler condition), recorded in
    ``diagnostics["A_prime"]``.
    """
    F, jet = _univariate(F_source)
    bounded = math.isfinite(x0)
    if fibers is None:
        fibers = (0.0, 0.5 * x0) if bounded else (0.0, 1.0, 5.0)

    def member(x):
        return bool(x[0] >= 0 and x[1] >= 0 and x[0] < x0 and x[1] < F(x[0]))

    def sampler(rng, k):
        top = sample_fill * (x0 if bounded else sample_x1_max)
        x1 = rng.uniform(0.0, top, size=k)
        x2 = rng.uniform(0.0, sample_fill, size=k) * np.array([F(v) for v in x1])
        return _random_phases(rng, np.sqrt(np.stack([x1, x2], axis=1)))

    rays = [Ray(f"fibre_x1={a:g}", lambda t, a=a: (a, t * F(a))) for a in fibers]
    for eps in edge_eps:
        if bounded:
            rays.append(Ray(f"edge_eps={eps:g}", lambda t, e=eps: (t * x0, e * F(t * x0))))
        else:
            rays.append(
                Ray(f"edge_eps={eps:g}", lambda t, e=eps: (_unbounded(t), e * F(_unbounded(t))), True)
            )

    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, 0.99 * x0 if bounded else sample_x1_max * 5, size=check_samples)
    worst = None
    for x in xs:
        f, f1, f2 = jet(x)
        a_prime = -(f1 + x * f2) / f + x * f1**2 / f**2
        if worst is None or a_prime < worst[1]:
            worst = (float(x), float(a_prime))
    diagnostics = {
        "A_prime": {
            "status": "pass" if worst[1] > 0 else "fail",
            "min_value": worst[1],
            "at_x": worst[0],
            "n_samples": check_samples,
        }
    }
    return DomainSpec(
        name=f"D_F[F={F_source}]",
        dim=2,
        membership=member,
        sampler=sampler,
        rays=rays,
        contains_origin=True,
        meets_axes=(True, True),
        diagnostics=diagnostics,
    )


def get_domain(name, n=2, **kw):
    """Built-in domains by name: ``full``, ``punctured``, ``ball``."""
    builders = {"full": full_space, "punctured": punctured_space, "ball": ball}
    try:
        return builders[name](n, **kw)
    except KeyError:
        raise ValueError(f"unknown domain {name!r}; choose from {sorted(builders)}") from None
