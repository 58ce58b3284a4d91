"""Scikit-learn style wrappers.

Each estimator treats one ideal as one sample. ``fit`` computes and stores
the per-ideal results, ``predict`` returns depths as an array, so the
computations drop into pipelines, ``clone`` and parameter grids.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .graph import build_graph, depth_by_theorem
from .homology import DEFAULT_MAX_VARS, depth_oracle
from .ideal import profile
from .sdepth import DEFAULT_BUDGET_MS, MAX_EXACT_ELEMENTS, sdepth_exact
from .validation import check_budget, check_field, check_ideals


class _IdealEstimator(BaseEstimator):
    def _compute(self, ideal):
        raise NotImplementedError

    def _value(self, result):
        raise NotImplementedError

    def fit(self, X, y=None):
        self.ideals_ = check_ideals(X)
        self.results_ = [self._compute(ideal) for ideal in self.ideals_]
        self.n_samples_fit_ = len(self.ideals_)
        return self

    def predict(self, X):
        return np.array(
            [self._value(self._compute(ideal)) for ideal in check_ideals(X)]
        )

    def fit_predict(self, X, y=None):
        self.fit(X)
        return np.array([self._value(r) for r in self.results_])

    def _check_fitted(self):
        if not hasattr(self, "results_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")


class TheoremDepth(_IdealEstimator):
    """Ideal depth read off the prime-sum graph.

    Ideals outside its reach (reduced bigsize 3 or more) predict ``-1``
    unless ``strict`` is set, in which case they raise.
    """

    def __init__(self, strict=False):
        self.strict = strict

    def _compute(self, ideal):
        verdict = depth_by_theorem(ideal)
        if self.strict and not verdict.applicable:
            raise ValueError(f"graph reading does not apply: {verdict.reason}")
        return verdict

    def _value(self, verdict):
        return verdict.ideal_depth if verdict.applicable else -1

    @property
    def verdicts_(self):
        self._check_fitted()
        return self.results_


class HomologicalDepth(_IdealEstimator):
    """Ideal depth from Hochster's formula over the chosen field."""

    def __init__(self, characteristic=0, max_vars=DEFAULT_MAX_VARS):
        self.characteristic = characteristic
        self.max_vars = max_vars

    def _compute(self, ideal):
        return depth_oracle(ideal, check_field(self.characteristic), max_vars=self.max_vars)

    def _value(self, result):
        return result.ideal_depth

    @property
    def betti_tables_(self):
        self._check_fitted()
        return [r.betti for r in self.results_]


class StanleyDepth(_IdealEstimator):
    """Exact Stanley depth with a verified interval-partition certificate."""

    def __init__(self, budget_ms=DEFAULT_BUDGET_MS, max_elements=MAX_EXACT_ELEMENTS):
        self.budget_ms = budget_ms
        self.max_elements = max_elements

    def _compute(self, ideal):
        return sdepth_exact(
            ideal, budget_ms=check_budget(self.budget_ms), max_elements=self.max_elements
        )

    def _value(self, result):
        return result.value

    @property
    def partitions_(self):
        self._check_fitted()
        return [r.partition for r in self.results_]


class ProfileTransformer(TransformerMixin, BaseEstimator):
    """Numeric features per ideal.

    Columns are ``n, s, h, v, t, size, bigsize, q, edges``, with ``q = 0``
    when every pair of primes covers the support.
    """

    feature_names = ("n", "s", "h", "v", "t", "size", "bigsize", "q", "edges")

    def fit(self, X, y=None):
        check_ideals(X)
        self.n_features_out_ = len(self.feature_names)
        return self

    def transform(self, X):
        rows = []
        for ideal in check_ideals(X):
            prof = profile(ideal)
            edges = len(build_graph(ideal).edges) if ideal.s > 1 else 0
            rows.append(
                [ideal.n, ideal.s, prof.h, prof.v, prof.t, prof.size, prof.bigsize, prof.q or 0, edges]
            )
        return np.array(rows, dtype=int)

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)
