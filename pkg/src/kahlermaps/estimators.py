"""scikit-learn style wrapper around special symplectic maps.

Samples are rows of interleaved real coordinates (Re z1, Im z1, ..., Re zn, Im zn).

>>> import numpy as np
>>> est = SpecialSymplecticMap("hyperbolic", target="flat").fit()
>>> est.transform(np.array([[0.6, 0.0, 0.0, 0.0]]))
array([[0.75, 0.  , 0.  , 0.  ]])
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from kahlermaps._validation import check_points, to_complex, to_real
from kahlermaps.catalog import resolve
from kahlermaps.pullback import verify_pullback
from kahlermaps.special_maps import build_special_map


class SpecialSymplecticMap(TransformerMixin, BaseEstimator):
    """The special symplectic map of a rotation-invariant potential into a space form.

    Parameters
    ----------
    potential : str
        Catalog name or potential expression.
    target : {"flat", "hyperbolic", "fubini_study"}
    dim : int
        Complex dimension, used for expressions and dimension-free catalog entries.
    potential_params : dict or None
        Catalog parameters (e.g. ``{"m": 1.0}`` for ``lebrun``).

    Attributes
    ----------
    spec_, map_ : the potential and the constructed map.
    n_features_in_ : int, equal to ``2 * dim``.
    """

    def __init__(self, potential="flat", target="flat", dim=2, potential_params=None):
        self.potential = potential
        self.target = target
        self.dim = dim
        self.potential_params = potential_params

    def fit(self, X=None, y=None):
        spec, _ = resolve(self.potential, int(self.dim), **(self.potential_params or {}))
        self.spec_ = spec
        self.map_ = build_special_map(spec, self.target)
        self.n_features_in_ = 2 * spec.dim
        if X is not None:
            check_points(X, spec.dim)
        return self

    def transform(self, X):
        check_is_fitted(self, "map_")
        X = check_points(X, self.spec_.dim)
        return np.stack([to_real(self.map_(z)) for z in to_complex(X)]) if len(X) else X.copy()

    def pullback_report(self, X, tol=1e-8):
        """Run the pullback verifier on the rows of ``X``."""
        check_is_fitted(self, "map_")
        X = check_points(X, self.spec_.dim)
        return verify_pullback(self.map_, self.spec_, list(to_complex(X)), tol=tol)

    def score(self, X, y=None):
        """Negative worst pullback residual, so larger is better."""
        return -self.pullback_report(X).max_residual
