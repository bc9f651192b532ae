"""Truncated-series diagnostics for Kaehler immersions into space forms.

For a rotation-invariant potential the diastasis at the origin is F(x) - F(0)
written as a power series in x_j = |z_j|^2; it has no pure holomorphic
terms.  The coefficient matrices of D, e^D - 1 and 1 - e^{-D} are then
diagonal, so their positivity reduces to the signs of the series
coefficients.  Rank statements are always "up to the truncation degree".
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from kahlermaps.admissibility import check_pointwise
from kahlermaps.domains import ball
from kahlermaps.errors import NonzeroConstantTerm, NotAnalyticAtOrigin, NumericalError
from kahlermaps.lebrun import LebrunBody
from kahlermaps.series import MultiIndexOrder, TruncatedSeries

IMPLICIT_TOL = 1e-6


class ResolvabilityKind(enum.Enum):
    FLAT = "flat"
    PROJECTIVE = "projective"
    HYPERBOLIC = "hyperbolic"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        return {"fs": cls.PROJECTIVE, "fubini_study": cls.PROJECTIVE, "hyp": cls.HYPERBOLIC}.get(key) or cls(key)


def _order(spec, order):
    if isinstance(order, MultiIndexOrder):
        if order.dim != spec.dim:
            raise ValueError("order dimension differs from the potential's")
        return order
    return MultiIndexOrder(spec.dim, int(order))


def diastasis_series(spec, order=8):
    """Taylor coefficients of F(x) - F(0) at x = 0 up to the order's degree."""
    order = _order(spec, order)
    try:
        s = spec.body.taylor(order)
    except (NumericalError, ZeroDivisionError, OverflowError) as exc:
        raise NotAnalyticAtOrigin(f"{spec.name} cannot be expanded at the origin: {exc}") from exc
    if not np.all(np.isfinite(s.coeffs)):
        raise NotAnalyticAtOrigin(f"{spec.name} has non-finite Taylor coefficients at the origin")
    coeffs = s.coeffs.copy()
    coeffs[0] = 0.0
    return TruncatedSeries(order, coeffs)


def _require_zero_constant(s):
    if s.value != 0.0:
        raise NonzeroConstantTerm(f"series has constant term {s.value!r}")


def series_exp_minus_one(s):
    """e^s - 1 truncated at the series' degree."""
    _require_zero_constant(s)
    return s.exp() - 1.0


def one_minus_series_exp_neg(s):
    """1 - e^{-s} truncated at the series' degree."""
    _require_zero_constant(s)
    return 1.0 - (-s).exp()


def series_log1p(s):
    """log(1 + s), the inverse of :func:`series_exp_minus_one`."""
    _require_zero_constant(s)
    return (1.0 + s).log()


@dataclass
class ResolvabilityReport:
    """Sign pattern of one coefficient family up to a truncation degree.

    ``rank_up_to_degree`` counts strictly positive coefficients; it is a lower
    bound on the rank seen by the truncation, never a statement about the
    infinite matrix.
    """

    kind: str
    degree: int
    coefficients: dict
    min_coefficient: float
    negative: list
    rank_up_to_degree: int
    degree_one_positive: bool
    tolerance: float
    implicit: bool = False

    @property
    def hypothesis_satisfied(self):
        return not self.negative and self.degree_one_positive

    def to_dict(self):
        return {
            "check": f"resolvability[{self.kind}]",
            "status": "pass" if self.hypothesis_satisfied else "fail",
            "degree": self.degree,
            "min_coefficient": self.min_coefficient,
            "negative": [{"index": list(i), "value": v} for i, v in self.negative],
            "rank_up_to_degree": self.rank_up_to_degree,
            "degree_one_positive": self.degree_one_positive,
            "tolerance": self.tolerance,
            "coefficients": {",".join(map(str, k)): v for k, v in self.coefficients.items()},
            "implicit_potential": self.implicit,
        }


def coefficient_family(spec, kind, order=8):
    kind = ResolvabilityKind.parse(kind)
    D = diastasis_series(spec, order)
    if kind is ResolvabilityKind.FLAT:
        return D
    if kind is ResolvabilityKind.PROJECTIVE:
        return series_exp_minus_one(D)
    return one_minus_series_exp_neg(D)


def resolvability(spec, kind, order=8, tol=1e-10):
    """Signs of a_j (flat), b_j (projective, e^D - 1) or c_j (hyperbolic, 1 - e^-D).

    Implicitly defined potentials are judged at the looser ``IMPLICIT_TOL``.
    """
    kind = ResolvabilityKind.parse(kind)
    series = coefficient_family(spec, kind, order)
    o = series.order
    implicit = isinstance(spec.body, LebrunBody)
    tol = max(tol, IMPLICIT_TOL) if implicit else tol
    pairs = list(zip(o.indices[1:], series.coeffs[1:].tolist()))
    negative = [(idx, v) for idx, v in pairs if v < -tol]
    positive = [v for _, v in pairs if v > tol]
    degree_one = [v for idx, v in pairs if sum(idx) == 1]
    return ResolvabilityReport(
        kind=kind.value,
        degree=o.max_degree,
        coefficients=dict(pairs),
        min_coefficient=min((v for _, v in pairs), default=0.0),
        negative=negative,
        rank_up_to_degree=len(positive),
        degree_one_positive=bool(degree_one) and all(v > tol for v in degree_one),
        tolerance=tol,
        implicit=implicit,
    )


@dataclass
class BridgeReport:
    """Resolvability of each kind, and the pointwise genconda cross-check."""

    reports: dict
    implies_genconda: bool
    genconda: object
    agreement: str
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "check": "resolvability_to_genconda",
            "status": "fail" if self.agreement == "disagree" else "pass",
            "kinds": {k: r.to_dict() for k, r in self.reports.items()},
            "implies_genconda": self.implies_genconda,
            "genconda": self.genconda.to_dict(),
            "agreement": self.agreement,
            "notes": list(self.notes),
        }


def genconda_bridge(spec, order=8, dom=None, n_samples=200, seed=42):
    """If some resolvability kind holds, genconda must hold; compare with sampling.

    The sampling domain defaults to the ball of radius 0.9 about the origin.
    A failing resolvability test makes no claim, since the condition is only
    sufficient.
    """
    reports = {k.value: resolvability(spec, k, order) for k in ResolvabilityKind}
    implied = any(r.hypothesis_satisfied for r in reports.values())
    dom = dom if dom is not None else ball(spec.dim, 0.9)
    gen = check_pointwise(spec, dom, n_samples, seed)["genconda"]
    notes = []
    if not implied:
        agreement = "no_claim"
        notes.append("no kind satisfied up to the truncation degree; the criterion is only sufficient")
    else:
        agreement = "agree" if gen.passed else "disagree"
    return BridgeReport(reports, implied, gen, agreement, notes)
