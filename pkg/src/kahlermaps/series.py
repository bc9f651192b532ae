"""Truncated multivariate power series in x = (x_1, ..., x_n).

A :class:`TruncatedSeries` is a jet of arbitrary order: its arithmetic and
elementary functions act exactly on Taylor coefficients up to a fixed total
degree, so evaluating a potential expression on series variables yields its
Taylor expansion directly (no factorials, no sampling).
"""

import itertools
import math
from functools import cached_property
from numbers import Real

import numpy as np

from kahlermaps.errors import DomainError, NonDifferentiable


class MultiIndexOrder:
    """All multi-indices of total degree <= ``max_degree`` in ``dim`` variables.

    Indices are sorted by total degree; ties use graded lexicographic order
    with x_1 most significant, so (1, 0) precedes (0, 1).  ``indices[0]`` is
    always the zero index.
    """

    def __init__(self, dim, max_degree):
        if dim < 1 or max_degree < 0:
            raise ValueError("need dim >= 1 and max_degree >= 0")
        self.dim = int(dim)
        self.max_degree = int(max_degree)
        idx = []
        for deg in range(self.max_degree + 1):
            layer = [m for m in itertools.product(range(deg + 1), repeat=self.dim) if sum(m) == deg]
            idx.extend(sorted(layer, reverse=True))
        self.indices = tuple(idx)
        self._position = {m: k for k, m in enumerate(self.indices)}

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (
            isinstance(other, MultiIndexOrder)
            and other.dim == self.dim
            and other.max_degree == self.max_degree
        )

    def __hash__(self):
        return hash((self.dim, self.max_degree))

    def __repr__(self):
        return f"MultiIndexOrder(dim={self.dim}, max_degree={self.max_degree})"

    def position(self, index):
        return self._position[tuple(index)]

    def degree(self, k):
        return sum(self.indices[k])

    @cached_property
    def degrees(self):
        return np.array([sum(m) for m in self.indices])

    @cached_property
    def _product_table(self):
        left, right, out = [], [], []
        for i, a in enumerate(self.indices):
            for j, b in enumerate(self.indices):
                c = tuple(p + q for p, q in zip(a, b))
                k = self._position.get(c)
                if k is not None:
                    left.append(i)
                    right.append(j)
                    out.append(k)
        return np.array(left), np.array(right), np.array(out)


class TruncatedSeries:
    """Real coefficients over a :class:`MultiIndexOrder`, truncated at its degree."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (len(order),):
            raise ValueError(f"expected {len(order)} coefficients, got shape {coeffs.shape}")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, order, value):
        c = np.zeros(len(order))
        c[0] = value
        return cls(order, c)

    @classmethod
    def variables(cls, order, at=None):
        """Series of the coordinate functions x_k expanded about ``at`` (default 0)."""
        at = np.zeros(order.dim) if at is None else np.asarray(at, dtype=float)
        out = []
        for k in range(order.dim):
            c = np.zeros(len(order))
            c[0] = at[k]
            if order.max_degree >= 1:
                e = [0] * order.dim
                e[k] = 1
                c[order.position(e)] = 1.0
            out.append(cls(order, c))
        return out

    @property
    def value(self):
        return float(self.coeffs[0])

    def coefficient(self, index):
        return float(self.coeffs[self.order.position(index)])

    def as_dict(self):
        return {m: float(c) for m, c in zip(self.order.indices, self.coeffs)}

    def __repr__(self):
        terms = ", ".join(f"{m}: {c:.6g}" for m, c in self.as_dict().items() if c != 0.0)
        return f"TruncatedSeries({{{terms}}})"

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError("series over different multi-index orders")
            return other
        return TruncatedSeries.constant(self.order, float(other))

    def __neg__(self):
        return TruncatedSeries(self.order, -self.coeffs)

    def __add__(self, other):
        if isinstance(other, Real):
            c = self.coeffs.copy()
            c[0] += other
            return TruncatedSeries(self.order, c)
        return TruncatedSeries(self.order, self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return TruncatedSeries(self.order, self.coeffs * other)
        other = self._coerce(other)
        left, right, out = self.order._product_table
        c = np.zeros(len(self.order))
        np.add.at(c, out, self.coeffs[left] * other.coeffs[right])
        return TruncatedSeries(self.order, c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real):
            if other == 0.0:
                raise DomainError("division by zero")
            return self * (1.0 / other)
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        return self.pow(p)

    def _split(self):
        nil = self.coeffs.copy()
        a0 = nil[0]
        nil[0] = 0.0
        return a0, TruncatedSeries(self.order, nil)

    def _compose(self, derivs):
        """Sum_k derivs[k] * (self - a0)**k / k!, with derivs[k] = f^(k)(a0)."""
        _, h = self._split()
        out = TruncatedSeries.constant(self.order, derivs[0])
        term = TruncatedSeries.constant(self.order, 1.0)
        for k in range(1, self.order.max_degree + 1):
            term = term * h
            if not term.coeffs.any():
                break
            out = out + term * (derivs[k] / math.factorial(k))
        return out

    def reciprocal(self):
        return self.pow(-1)

    def exp(self):
        a0 = self.value
        try:
            e = math.exp(a0)
        except OverflowError:
            raise DomainError(f"exp overflow at {a0!r}") from None
        return self._compose([e] * (self.order.max_degree + 1))

    def log(self):
        a0 = self.value
        if not a0 > 0.0:
            raise DomainError(f"log of nonpositive value {a0!r}")
        d = [math.log(a0)]
        for k in range(1, self.order.max_degree + 1):
            d.append((-1) ** (k + 1) * math.factorial(k - 1) / a0**k)
        return self._compose(d)

    def pow(self, p):
        a0 = self.value
        if a0 == 0.0:
            if float(p) == int(p) and p >= 0:
                out = TruncatedSeries.constant(self.order, 1.0)
                for _ in range(int(p)):
                    out = out * self
                return out
            raise NonDifferentiable(f"power {p!r} of a series vanishing at its centre")
        if a0 < 0.0 and float(p) != int(p):
            raise DomainError(f"non-integer power {p!r} of negative value {a0!r}")
        d = []
        coef = 1.0
        for k in range(self.order.max_degree + 1):
            d.append(coef * a0 ** (p - k))
            coef *= p - k
        return self._compose(d)

    def sqrt(self):
        if self.value < 0.0:
            raise DomainError(f"sqrt of negative value {self.value!r}")
        return self.pow(0.5)
