import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from kahlermaps.estimators import SpecialSymplecticMap
from kahlermaps.space_forms import cayley_map


def test_params_round_trip():
    est = SpecialSymplecticMap("lebrun", target="hyperbolic", potential_params={"m": 1.0})
    assert est.get_params()["potential_params"] == {"m": 1.0}
    assert clone(est).get_params() == est.get_params()
    est.set_params(target="flat")
    assert est.target == "flat"


def test_transform_matches_cayley():
    X = np.array([[0.3, 0.1, -0.2, 0.4], [0.0, 0.0, 0.5, 0.0]])
    out = SpecialSymplecticMap("hyperbolic").fit(X).transform(X)
    for row, z in zip(out, X):
        w = cayley_map(z[0::2] + 1j * z[1::2])
        assert np.allclose(row[0::2] + 1j * row[1::2], w, atol=1e-15)
    assert out.shape == X.shape


def test_unfitted_and_bad_input():
    est = SpecialSymplecticMap()
    with pytest.raises(NotFittedError):
        est.transform(np.zeros((1, 4)))
    est.fit()
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        est.transform(np.array([[np.nan, 0, 0, 0]]))


def test_pipeline_and_score():
    X = np.random.default_rng(0).normal(scale=0.3, size=(8, 4))
    pipe = make_pipeline(SpecialSymplecticMap("fubini_study", target="flat"))
    assert pipe.fit_transform(X).shape == (8, 4)
    est = SpecialSymplecticMap("fubini_study", target="fubini_study").fit()
    assert est.score(X) >= -1e-8
    assert est.n_features_in_ == 4
