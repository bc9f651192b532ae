"""The three complex space forms and the Cayley-type map between C H^n and C^n."""

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from kahlermaps._validation import as_complex, check_radial
from kahlermaps.errors import DomainError
from kahlermaps.potentials import parse_potential


class SpaceFormKind(enum.Enum):
    FLAT = "flat"
    HYPERBOLIC = "hyperbolic"
    FUBINI_STUDY = "fubini_study"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"hyp": cls.HYPERBOLIC, "fs": cls.FUBINI_STUDY, "projective": cls.FUBINI_STUDY}
        key = str(value).lower()
        return aliases.get(key) or cls(key)


_SOURCES = {
    SpaceFormKind.FLAT: "r2",
    SpaceFormKind.HYPERBOLIC: "-log(1 - r2)",
    SpaceFormKind.FUBINI_STUDY: "log(1 + r2)",
}


@dataclass(frozen=True)
class TargetSpaceForm:
    """C^n, the unit ball C H^n, or the affine chart Z_0 != 0 of C P^n."""

    kind: SpaceFormKind
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceFormKind.parse(self.kind))
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    @cached_property
    def potential(self):
        return parse_potential(_SOURCES[self.kind], self.dim, name=self.kind.value)

    def _s(self, y):
        y = check_radial(y, self.dim)
        s = float(np.sum(y))
        if self.kind is SpaceFormKind.HYPERBOLIC and s >= 1.0:
            raise DomainError(f"point with sum |z_j|^2 = {s!r} lies outside the unit ball")
        return s

    def gradient(self, y):
        s = self._s(y)
        if self.kind is SpaceFormKind.FLAT:
            c = 1.0
        elif self.kind is SpaceFormKind.HYPERBOLIC:
            c = 1.0 / (1.0 - s)
        else:
            c = 1.0 / (1.0 + s)
        return np.full(self.dim, c)

    def hessian(self, y):
        s = self._s(y)
        if self.kind is SpaceFormKind.FLAT:
            c = 0.0
        elif self.kind is SpaceFormKind.HYPERBOLIC:
            c = 1.0 / (1.0 - s) ** 2
        else:
            c = -1.0 / (1.0 + s) ** 2
        return np.full((self.dim, self.dim), c)


def target_potential_gradient(t, y):
    return t.gradient(y)


def cayley_map(z):
    """f(z) = z / sqrt(1 - |z|^2), a special diffeomorphism C H^n -> C^n."""
    z = as_complex(z)
    s = float(np.sum(np.abs(z) ** 2))
    if s >= 1.0:
        raise DomainError(f"cayley_map needs |z|^2 < 1, got {s!r}")
    return z / np.sqrt(1.0 - s)


def cayley_inverse(z):
    """f^{-1}(z) = z / sqrt(1 + |z|^2), defined on all of C^n."""
    z = as_complex(z)
    return z / np.sqrt(1.0 + float(np.sum(np.abs(z) ** 2)))
