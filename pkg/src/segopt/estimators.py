"""Scikit-learn style wrappers around the functional core.

The fitted "data" is a segment family rather than a feature matrix; every
estimator accepts anything :func:`~segopt.validation.check_representation`
does.  ``predict`` returns a boolean membership mask aligned with the
segments of its argument.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .graph import build_graph
from .lower_bound import run_technique
from .normalize import make_favorable
from .oracles import clique_cover_number_trianglefree, exact_mis, fractional_independence
from .validation import check_representation, check_technique


def _mask(rep, ids) -> np.ndarray:
    return np.fromiter((s.id in ids for s in rep), dtype=bool, count=len(rep))


class FavorableNormalizer(TransformerMixin, BaseEstimator):
    """Transform a family into an equivalent favorable one.

    Normalization is stateless, so ``fit`` only validates and records the
    input size.
    """

    def fit(self, X, y=None):
        rep = check_representation(X)
        self.n_segments_in_ = len(rep)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_segments_in_")
        return make_favorable(check_representation(X))


class IndependentSetSolver(BaseEstimator):
    """Constructive lower bound: one technique or the best of all three."""

    def __init__(self, technique: str = "all"):
        self.technique = technique

    def fit(self, X, y=None):
        technique = check_technique(self.technique)
        rep = check_representation(X)
        self.result_ = run_technique(make_favorable(rep), technique)
        self.independent_set_ = self.result_.independent_set
        self.guarantee_ = self.result_.guarantee
        self.stats_ = self.result_.stats
        return self

    def predict(self, X):
        check_is_fitted(self, "independent_set_")
        return _mask(check_representation(X), self.independent_set_)

    def score(self, X, y=None) -> float:
        """Size of the fitted set restricted to the segments of *X*."""
        return float(self.predict(X).sum())


class ExactOracle(BaseEstimator):
    """Exact alpha with a witness set, plus theta and alpha* when requested."""

    def __init__(self, quantities=("alpha", "theta", "alpha_star"), budget: int | None = None):
        self.quantities = quantities
        self.budget = budget

    def fit(self, X, y=None):
        wanted = set(self.quantities)
        unknown = wanted - {"alpha", "theta", "alpha_star"}
        if unknown:
            raise ValueError(f"unknown quantities {sorted(unknown)}")
        g = build_graph(check_representation(X))
        self.independent_set_ = exact_mis(g, budget=self.budget) if "alpha" in wanted else None
        self.alpha_ = self.independent_set_.size if self.independent_set_ is not None else None
        self.theta_ = clique_cover_number_trianglefree(g).size if "theta" in wanted else None
        self.alpha_star_ = fractional_independence(g).value if "alpha_star" in wanted else None
        return self

    def predict(self, X):
        check_is_fitted(self, "alpha_")
        if self.independent_set_ is None:
            raise ValueError("predict needs 'alpha' among the fitted quantities")
        return _mask(check_representation(X), self.independent_set_)
