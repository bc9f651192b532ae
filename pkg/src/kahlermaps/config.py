"""Run configuration: defaults, an optional key=value file, and flag overrides.

The file format is one ``key = value`` per line; ``#`` starts a comment.
Keys are the long flag names with dashes or underscores, e.g.::

    seed = 7
    pullback_tol = 1e-9
    points = 50
"""

from dataclasses import asdict, dataclass, fields, replace

from kahlermaps.errors import KahlerMapsError


class ConfigError(KahlerMapsError, ValueError):
    pass


FORMATS = ("json", "csv", "text")
_TOLERANCES = ("pullback_tol", "implicit_pullback_tol", "solver_tol", "ricci_tol", "limit_tol", "lemma_tol")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    pullback_tol: float = 1e-8
    implicit_pullback_tol: float = 1e-6
    solver_tol: float = 1e-12
    ricci_tol: float = 1e-4
    limit_tol: float = 1e-4
    lemma_tol: float = 1e-9
    divergence_threshold: float = 1e6
    points: int = 100
    samples: int = 200
    degree: int = 8
    format: str = "json"

    def __post_init__(self):
        for name in _TOLERANCES + ("divergence_threshold",):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)!r}")
        for name in ("points", "samples", "degree"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")

    def to_dict(self):
        return asdict(self)

    def tolerances(self):
        return {k: getattr(self, k) for k in _TOLERANCES}


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CASTS = {"int": int, "float": float, "str": str, int: int, float: float, str: str}


def _coerce(key, raw):
    cast = _CASTS[_TYPES[key]]
    try:
        return cast(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def parse_config_text(text):
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw)
    return out


def load_config(path=None, overrides=None):
    """Defaults, then the file at ``path``, then non-None ``overrides``."""
    values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = _coerce(k, v)
    return replace(RunConfig(), **values)
