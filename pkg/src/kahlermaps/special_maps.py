"""Special maps z -> (psi_1(x) z_1, ..., psi_n(x) z_n), x_j = |z_j|^2.

A :class:`SpecialMap` is described by its *squared* profile, a function
taking n numbers (floats or :class:`~kahlermaps.ad.Dual`) to the n values
psi_k(x)^2.  Working with the square keeps everything smooth where psi_k
vanishes and lets the pullback verifier get d(psi_k^2)/dx_l by dual numbers.
"""

from dataclasses import dataclass
from numbers import Real
from typing import Callable

import numpy as np

from kahlermaps._validation import as_complex, check_radial, radial_of
from kahlermaps.ad import Dual
from kahlermaps.errors import DomainError, FSDenominator, NegativeRadicand
from kahlermaps.potentials import grad_potential, hess_potential
from kahlermaps.space_forms import SpaceFormKind, TargetSpaceForm


@dataclass(frozen=True, eq=False)
class SpecialMap:
    """A special map into a target space form.

    ``sq_profile`` maps a length-n sequence of numbers to the length-n list
    of squared profiles; it must accept both floats and Duals.
    """

    dim: int
    sq_profile: Callable
    label: str
    target: TargetSpaceForm

    def profile_sq(self, x):
        x = check_radial(x, self.dim)
        return np.array([float(v) for v in self.sq_profile(list(x))])

    def profile_sq_jacobian(self, x):
        """(psi^2, d psi_k^2 / d x_l) at ``x`` by forward-mode duals."""
        x = check_radial(x, self.dim)
        out = self.sq_profile(Dual.variables(x))
        n = self.dim
        vals = np.empty(n)
        jac = np.zeros((n, n))
        for k, v in enumerate(out):
            if isinstance(v, Dual):
                vals[k], jac[k] = v.value, v.tangent
            else:
                vals[k] = v
        return vals, jac

    def profile(self, x):
        sq = self.profile_sq(x)
        bad = np.flatnonzero(sq < 0.0)
        if bad.size:
            k = int(bad[0])
            raise NegativeRadicand(
                f"{self.label}: psi_{k + 1}^2 = {sq[k]!r} < 0 at x = {np.asarray(x).tolist()}"
            )
        return np.sqrt(sq)

    def __call__(self, z):
        return apply_special_map(self, z)


def apply_special_map(m, z):
    z = as_complex(z, m.dim)
    return m.profile(radial_of(z)) * z


def _lift_gradient(spec, xs):
    """Gradient of the potential at a vector of floats or Duals.

    For Dual input the Hessian pushes the tangents forward (chain rule), so
    the result carries d(grad)/d(seed) without nested differentiation.
    """
    if all(isinstance(v, Real) for v in xs):
        return list(grad_potential(spec, np.array(xs, dtype=float)))
    x0 = np.array([v.value for v in xs])
    T = np.stack([v.tangent for v in xs])
    g = grad_potential(spec, x0)
    H = hess_potential(spec, x0)
    return [Dual(g[k], H[k] @ T) for k in range(spec.dim)]


def build_special_map(spec, target):
    """The uniquely determined special symplectic map of ``spec`` into ``target``.

    With g_k = dF/dx_k and S = sum_j g_j x_j the squared profiles are
    g_k (flat), g_k / (1 + S) (hyperbolic) and g_k / (1 - S) (Fubini-Study).
    Failures surface on evaluation: :class:`NegativeRadicand` when some
    g_k < 0 and :class:`FSDenominator` when S >= 1 for the projective target.
    """
    if not isinstance(target, TargetSpaceForm):
        target = TargetSpaceForm(SpaceFormKind.parse(target), spec.dim)
    if target.dim != spec.dim:
        raise ValueError("target dimension differs from the potential's")
    kind = target.kind

    def sq_profile(xs):
        g = _lift_gradient(spec, xs)
        if kind is SpaceFormKind.FLAT:
            return g
        S = g[0] * xs[0]
        for gj, xj in zip(g[1:], xs[1:]):
            S = S + gj * xj
        if kind is SpaceFormKind.HYPERBOLIC:
            denom = 1.0 + S
        else:
            denom = 1.0 - S
            if float(getattr(denom, "value", denom)) <= 0.0:
                raise FSDenominator(
                    f"{spec.name}: moment sum {1.0 - float(getattr(denom, 'value', denom))!r} >= 1"
                )
        return [gk / denom for gk in g]

    return SpecialMap(spec.dim, sq_profile, f"{spec.name}->{kind.value}", target)


def identity_map(dim, target=SpaceFormKind.FLAT):
    return SpecialMap(dim, lambda xs: [1.0] * len(xs), "identity", TargetSpaceForm(target, dim))


def constant_map(values, target=SpaceFormKind.FLAT):
    """Componentwise scaling z_k -> values[k] z_k."""
    sq = [float(v) ** 2 for v in values]
    return SpecialMap(len(sq), lambda xs: list(sq), f"scale{tuple(values)}", TargetSpaceForm(target, len(sq)))


def _radial_sum(xs):
    s = xs[0]
    for v in xs[1:]:
        s = s + v
    return s


def cayley_special(dim):
    """The map f(z) = z / sqrt(1 - |z|^2) from the unit ball into flat C^n."""

    def sq(xs):
        s = _radial_sum(xs)
        if float(getattr(s, "value", s)) >= 1.0:
            raise DomainError("cayley map needs |z|^2 < 1")
        return [1.0 / (1.0 - s)] * len(xs)

    return SpecialMap(dim, sq, "cayley", TargetSpaceForm(SpaceFormKind.FLAT, dim))


def cayley_inverse_special(dim):
    """f^{-1}(z) = z / sqrt(1 + |z|^2), from C^n into the unit ball."""

    def sq(xs):
        return [1.0 / (1.0 + _radial_sum(xs))] * len(xs)

    return SpecialMap(dim, sq, "cayley_inverse", TargetSpaceForm(SpaceFormKind.HYPERBOLIC, dim))


def compose_special(outer, inner):
    """outer o inner; squared profile psi_out^2(psi_in^2 x) * psi_in^2(x)."""
    if outer.dim != inner.dim:
        raise ValueError("dimension mismatch in composition")

    def sq(xs):
        a = inner.sq_profile(xs)
        y = [ak * xk for ak, xk in zip(a, xs)]
        b = outer.sq_profile(y)
        return [bk * ak for bk, ak in zip(b, a)]

    return SpecialMap(outer.dim, sq, f"{outer.label}o{inner.label}", outer.target)


@dataclass(frozen=True)
class LemmaDiagnostic:
    """Residuals of psi_k^2 dXi/dx_k(Psi) = dF/dx_k + c_k / x_k.

    ``gamma`` holds psi_k^2 dXi/dx_k(Psi) and ``a`` holds gamma - dF/dx_k.
    """

    residuals: np.ndarray
    gamma: np.ndarray
    a: np.ndarray

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.residuals)))


def check_lemma_condition(m, spec, c, x):
    x = check_radial(x, m.dim)
    c = np.zeros(m.dim) if c is None else np.asarray(c, dtype=float).reshape(m.dim)
    if np.any((c != 0.0) & (x == 0.0)):
        raise DomainError("c_k / x_k is undefined on the axis x_k = 0")
    sq = m.profile_sq(x)
    gamma = sq * m.target.gradient(sq * x)
    a = gamma - grad_potential(spec, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = np.where(c != 0.0, c / np.where(x == 0.0, 1.0, x), 0.0)
    return LemmaDiagnostic(a - corr, gamma, a)


def generalized_constants(dim, values=None):
    """The c_k of the symplecticity condition; zero unless given."""
    c = np.zeros(dim) if values is None else np.asarray(values, dtype=float).reshape(dim)
    if not np.all(np.isfinite(c)):
        raise ValueError("constants must be finite")
    return c

