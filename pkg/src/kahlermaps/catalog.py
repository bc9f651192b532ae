"""Built-in potentials, each paired with the domain it lives on.

>>> from kahlermaps.catalog import get_entry
>>> spec, dom = get_entry("reinhardt_rational").build(c=2.0)
"""

import math
from dataclasses import dataclass, field
from typing import Callable

from kahlermaps import domains
from kahlermaps.lebrun import lebrun_potential
from kahlermaps.potentials import PotentialSpec, parse_potential


def _num(v):
    return repr(float(v))


def _named(source, dim, name, params):
    base = parse_potential(source, dim, name=name)
    return PotentialSpec(dim, base.body, name=name, params=dict(params))


# Reinhardt families: F(x1) as an expression, x0, and whether the edge curves
# can be followed far enough in double precision to say anything.
_REINHARDT = {
    "exp": (lambda p: "exp(-x1)", lambda p: math.inf, ()),
    "power": (lambda p: f"pow(1 - x1, {_num(p['p'])})", lambda p: 1.0, (0.5,)),
    "rational": (lambda p: f"{_num(p['c'])} / ({_num(p['c'])} + x1)", lambda p: math.inf, (0.5,)),
    "inverse_power": (lambda p: f"pow(1 + x1, -{_num(p['p'])})", lambda p: math.inf, (0.5,)),
}
_REINHARDT_DEFAULTS = {"exp": {}, "power": {"p": 2.0}, "rational": {"c": 1.0}, "inverse_power": {"p": 2.0}}


def reinhardt(family="exp", **params):
    """-log(F(x1) - x2) on the complete Reinhardt domain of F."""
    if family not in _REINHARDT:
        raise ValueError(f"unknown Reinhardt family {family!r}; choose from {sorted(_REINHARDT)}")
    p = {**_REINHARDT_DEFAULTS[family], **params}
    src_F, x0_of, eps = _REINHARDT[family]
    F = src_F(p)
    name = f"reinhardt_{family}" + "".join(f"({k}={v:g})" for k, v in sorted(p.items()))
    spec = _named(f"-log({F} - x2)", 2, name, {"family": family, **p})
    return spec, domains.reinhardt_domain(F, x0=x0_of(p), edge_eps=eps)


def log_potential(a=1.0, b=1.0, c=0.0):
    """a log(x1 + x2) + b (x1 + x2) + c on C^2 minus the origin."""
    src = f"{_num(a)} * log(r2) + {_num(b)} * r2 + {_num(c)}"
    spec = _named(src, 2, f"log_potential(a={a:g},b={b:g},c={c:g})", {"a": a, "b": b, "c": c})
    return spec, domains.punctured_space(2)


def eguchi_hanson():
    """Eguchi-Hanson potential in terms of r^2 = x1 + x2, on C^2 minus the origin."""
    src = "sqrt(r2*r2 + 1) + log(r2) - log(sqrt(r2*r2 + 1) + 1)"
    return _named(src, 2, "eguchi_hanson", {}), domains.punctured_space(2)


def flat(n=2):
    return _named("r2", int(n), "flat", {"n": int(n)}), domains.full_space(int(n))


def hyperbolic(n=2):
    return _named("-log(1 - r2)", int(n), "hyperbolic", {"n": int(n)}), domains.ball(int(n))


def fubini_study(n=2):
    return _named("log(1 + r2)", int(n), "fubini_study", {"n": int(n)}), domains.full_space(int(n))


def lebrun(m=0.5, tol=1e-12):
    return lebrun_potential(float(m), tol), domains.full_space(2)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable
    summary: str
    defaults: dict = field(default_factory=dict)

    def build(self, **params):
        """Return (PotentialSpec, DomainSpec) with ``params`` overriding the defaults."""
        return self.builder(**{**self.defaults, **params})


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("flat", flat, "|z|^2 on C^n", {"n": 2}),
        CatalogEntry("hyperbolic", hyperbolic, "-log(1 - |z|^2) on the unit ball", {"n": 2}),
        CatalogEntry("fubini_study", fubini_study, "log(1 + |z|^2) on C^n", {"n": 2}),
        CatalogEntry("reinhardt_exp", lambda **p: reinhardt("exp", **p), "F(x) = exp(-x)"),
        CatalogEntry("reinhardt_power", lambda **p: reinhardt("power", **p), "F(x) = (1 - x)^p", {"p": 2.0}),
        CatalogEntry("reinhardt_rational", lambda **p: reinhardt("rational", **p), "F(x) = c/(c + x)", {"c": 1.0}),
        CatalogEntry(
            "reinhardt_inverse_power", lambda **p: reinhardt("inverse_power", **p), "F(x) = (1 + x)^-p", {"p": 2.0}
        ),
        CatalogEntry("log_potential", log_potential, "a log r^2 + b r^2 + c", {"a": 1.0, "b": 1.0, "c": 0.0}),
        CatalogEntry("eguchi_hanson", eguchi_hanson, "Ricci-flat metric on C^2 minus 0"),
        CatalogEntry("lebrun", lebrun, "implicit Ricci-flat family on C^2", {"m": 0.5}),
    ]
}


def get_entry(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown catalog entry {name!r}; choose from {sorted(CATALOG)}") from None


def list_catalog():
    return [{"name": e.name, "summary": e.summary, "defaults": dict(e.defaults)} for e in CATALOG.values()]


def resolve(potential, dim=2, **params):
    """A catalog name or an expression; returns (spec, default domain or None)."""
    if potential in CATALOG:
        if "n" in CATALOG[potential].defaults:
            params.setdefault("n", dim)
        return CATALOG[potential].build(**params)
    return parse_potential(potential, dim), None
