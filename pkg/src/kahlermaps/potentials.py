"""Rotation-invariant potentials Phi(z) = F(|z_1|^2, ..., |z_n|^2).

A :class:`PotentialSpec` wraps a *body* that knows how to produce the value,
gradient, Hessian and Taylor series of the radial function F.  Two bodies
exist: :class:`ExpressionBody` (an expression AST, differentiated by
forward-mode jets) and the implicit LeBrun body in :mod:`kahlermaps.lebrun`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from kahlermaps import dsl
from kahlermaps._validation import check_radial
from kahlermaps.ad import Dual, Jet2
from kahlermaps.errors import DomainError
from kahlermaps.series import TruncatedSeries


def _finite(v, what):
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{what} is not finite")
    return v


@dataclass(frozen=True)
class ExpressionBody:
    ast: object
    source: str

    def value(self, x):
        return float(dsl.evaluate(self.ast, [float(v) for v in x]))

    def gradient(self, x):
        out = dsl.evaluate(self.ast, Dual.variables(x))
        if isinstance(out, float):
            return np.zeros(len(x))
        return out.tangent.copy()

    def jet(self, x):
        out = dsl.evaluate(self.ast, Jet2.variables(x))
        if isinstance(out, float):
            return Jet2.constant(out, len(x))
        return out

    def hessian(self, x):
        h = self.jet(x).hess
        return 0.5 * (h + h.T)

    def taylor(self, order, at=None):
        out = dsl.evaluate(self.ast, TruncatedSeries.variables(order, at))
        if isinstance(out, float):
            return TruncatedSeries.constant(order, out)
        return out

    def describe(self):
        return {"kind": "expression", "source": self.source}


@dataclass(frozen=True, eq=False)
class PotentialSpec:
    """A rotation-invariant Kaehler potential on a domain of C^n.

    Parameters
    ----------
    dim : int
        Complex dimension n.
    body : object
        Provides ``value``, ``gradient``, ``hessian``, ``taylor`` and
        ``describe``; see :class:`ExpressionBody`.
    name : str
        Label used in reports.
    params : dict
        Catalog parameters, if any (informational).
    """

    dim: int
    body: object
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    def describe(self):
        return {"name": self.name, "dim": self.dim, "params": dict(self.params), **self.body.describe()}


def parse_potential(text, dim, name=None):
    """Parse a potential expression in ``x1..x{dim}`` and ``r2``."""
    ast = dsl.parse_expression(text, dim)
    return PotentialSpec(dim, ExpressionBody(ast, text), name or text)


def eval_potential(spec, x):
    x = check_radial(x, spec.dim)
    v = spec.body.value(x)
    if not math.isfinite(v):
        raise DomainError(f"potential {spec.name!r} is not finite at {x.tolist()}")
    return v


def grad_potential(spec, x):
    """Exact gradient dF/dx_k by forward-mode differentiation."""
    x = check_radial(x, spec.dim)
    return _finite(np.asarray(spec.body.gradient(x), dtype=float), "gradient")


def hess_potential(spec, x):
    """Symmetric Hessian d^2F/dx_k dx_l."""
    x = check_radial(x, spec.dim)
    return _finite(np.asarray(spec.body.hessian(x), dtype=float), "Hessian")
