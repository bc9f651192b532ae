"""Forward-mode automatic differentiation in x-space.

Two number types are provided:

* :class:`Dual` carries a value and a tangent *vector* (first order, any
  number of seed directions at once).
* :class:`Jet2` carries value, gradient and Hessian, propagated by the
  second-order chain rule.  Hessians are symmetric by construction.

The module-level functions :func:`log`, :func:`exp`, :func:`sqrt` and
:func:`power` accept plain floats as well as either jet type (and anything
else exposing ``.log()``, ``.exp()``, ``.pow()``, e.g. truncated series), so
one expression evaluator serves every arithmetic.
"""

import math
from numbers import Real

import numpy as np

from kahlermaps.errors import DomainError, NonDifferentiable


def _check_log(v):
    if not v > 0.0:
        raise DomainError(f"log of nonpositive value {v!r}")


def _check_div(v):
    if v == 0.0:
        raise DomainError("division by zero")


def _safe_exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        raise DomainError(f"exp overflow at {v!r}") from None


def _pow_value(a, p):
    if a < 0.0 and float(p) != int(p):
        raise DomainError(f"non-integer power {p!r} of negative value {a!r}")
    if a == 0.0 and p < 0:
        raise DomainError(f"negative power {p!r} of zero")
    try:
        return float(a**p)
    except OverflowError as exc:
        raise DomainError(str(exc)) from None


def _pow_derivs(a, p):
    """Value, first and second derivative of t -> t**p at t = a."""
    _pow_value(a, p)
    if a == 0.0:
        if p < 2 and p not in (0, 1):
            raise NonDifferentiable(f"power {p!r} is not twice differentiable at 0")
    try:
        v = a**p
        d1 = p * a ** (p - 1) if p != 0 else 0.0
        d2 = p * (p - 1) * a ** (p - 2) if p not in (0, 1) else 0.0
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(str(exc)) from None
    return float(v), float(d1), float(d2)


class _JetBase:
    __slots__ = ()

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __sub__(self, other):
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __truediv__(self, other):
        if isinstance(other, _JetBase):
            return self * other.reciprocal()
        _check_div(other)
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        return power(self, p)

    def reciprocal(self):
        _check_div(self.value)
        v = self.value
        return self._chain(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def log(self):
        _check_log(self.value)
        v = self.value
        return self._chain(math.log(v), 1.0 / v, -1.0 / v**2)

    def exp(self):
        e = _safe_exp(self.value)
        return self._chain(e, e, e)

    def sqrt(self):
        v = self.value
        if v < 0.0:
            raise DomainError(f"sqrt of negative value {v!r}")
        if v == 0.0:
            raise NonDifferentiable("sqrt is not differentiable at 0")
        s = math.sqrt(v)
        return self._chain(s, 0.5 / s, -0.25 / (s * v))

    def pow(self, p):
        return self._chain(*_pow_derivs(self.value, p))


class Dual(_JetBase):
    """Value plus tangent vector; first-order forward mode."""

    __slots__ = ("value", "tangent")

    def __init__(self, value, tangent):
        self.value = float(value)
        self.tangent = np.asarray(tangent, dtype=float)

    @classmethod
    def variables(cls, x):
        """Seed one Dual per coordinate with the identity tangent."""
        x = np.asarray(x, dtype=float)
        eye = np.eye(x.size)
        return [cls(v, eye[k]) for k, v in enumerate(x)]

    def _chain(self, f0, f1, f2=None):
        return Dual(f0, f1 * self.tangent)

    def __neg__(self):
        return Dual(-self.value, -self.tangent)

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value + other.value, self.tangent + other.tangent)
        return Dual(self.value + other, self.tangent)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.value * other.value,
                self.value * other.tangent + other.value * self.tangent,
            )
        return Dual(self.value * other, self.tangent * other)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.tangent!r})"


class Jet2(_JetBase):
    """Value, gradient and Hessian; second-order forward mode."""

    __slots__ = ("value", "grad", "hess")

    def __init__(self, value, grad, hess):
        self.value = float(value)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = np.asarray(hess, dtype=float)

    @classmethod
    def variables(cls, x):
        x = np.asarray(x, dtype=float)
        n = x.size
        eye = np.eye(n)
        zero = np.zeros((n, n))
        return [cls(v, eye[k], zero) for k, v in enumerate(x)]

    @classmethod
    def constant(cls, value, n):
        return cls(value, np.zeros(n), np.zeros((n, n)))

    def _chain(self, f0, f1, f2):
        g = self.grad
        return Jet2(f0, f1 * g, f1 * self.hess + f2 * np.outer(g, g))

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.value + other.value, self.grad + other.grad, self.hess + other.hess)
        return Jet2(self.value + other, self.grad, self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            a, b = self, other
            cross = np.outer(a.grad, b.grad)
            return Jet2(
                a.value * b.value,
                a.value * b.grad + b.value * a.grad,
                a.value * b.hess + b.value * a.hess + (cross + cross.T),
            )
        return Jet2(self.value * other, self.grad * other, self.hess * other)

    def __repr__(self):
        return f"Jet2({self.value!r}, grad={self.grad!r})"


def log(a):
    if isinstance(a, Real):
        _check_log(a)
        return math.log(a)
    return a.log()


def exp(a):
    if isinstance(a, Real):
        return _safe_exp(a)
    return a.exp()


def sqrt(a):
    if isinstance(a, Real):
        if a < 0.0:
            raise DomainError(f"sqrt of negative value {a!r}")
        return math.sqrt(a)
    return a.sqrt()


def power(a, b):
    """``a ** b`` for any supported number types.

    A real exponent uses the power rule directly; a non-constant exponent
    goes through ``exp(b * log(a))`` and therefore needs ``a > 0``.
    """
    if isinstance(b, Real):
        if isinstance(a, Real):
            return _pow_value(float(a), b)
        return a.pow(b)
    return exp(b * log(a))


def divide(a, b):
    if isinstance(b, Real):
        _check_div(b)
        return a / b
    if isinstance(a, Real) and not isinstance(b, Real):
        return b.reciprocal() * a
    return a / b
