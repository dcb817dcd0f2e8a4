"""scikit-learn style wrapper around the approximant construction."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .discrepancy import (ONE_SIDED_CAP, WeightedPointSet, one_sided_discrepancy_exact,
                          sampled_discrepancy)
from .exceptions import DimensionMismatch
from .geometry import PointSequence
from .chains import complete_family
from .pipeline import compute_params, construct_approximant, construct_homogeneous_fast
from .tverberg import tverberg_params


def check_points(X, dim: int | None = None) -> PointSequence:
    """Coerce ``X`` (PointSequence, nested lists, or a 2-D array of ints,
    exact floats, Fractions or "p/q" strings) to a PointSequence."""
    if isinstance(X, PointSequence):
        P = X
    else:
        if isinstance(X, np.ndarray):
            if X.ndim != 2:
                raise DimensionMismatch(f"expected a 2-D array, got shape {X.shape}")
            rows = X.tolist()
        else:
            rows = [list(r) for r in X]
        if not rows:
            raise ValueError("no points given")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise DimensionMismatch("rows have different lengths")
        P = PointSequence.from_coords(rows)
    if dim is not None and P.dim != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {P.dim}")
    return P


def check_epsilon(epsilon) -> Fraction:
    eps = Fraction(epsilon) if not isinstance(epsilon, float) else Fraction(epsilon).limit_denominator(10 ** 6)
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
    return eps


class OneSidedApproximator(BaseEstimator):
    """Fit a one-sided weak approximant A to a point set X.

    After ``fit``, ``approximant_`` holds A (points with multiplicities) and
    ``trace_`` every choice made while building it.  ``transform`` returns
    A as an object array of Fractions, one row per unit of multiplicity.
    ``score(X)`` is minus the one-sided discrepancy of A against X (exact
    for small X, a sampled lower bound otherwise).

    ``strategy="homogeneous"`` skips partitioning and requires X to be
    orientation homogeneous.  ``family="complete"`` uses every chain-value
    tuple over the t separators instead of the sparse layered family; it
    is larger but behaves far better at small t.
    """

    def __init__(self, epsilon="1/2", mode="empirical", t=8, u=1, target=None, gamma=None,
                 c=None, threshold=None, parts=None, strategy="general", family="layered", certify=False, seed=0):
        self.epsilon = epsilon
        self.mode = mode
        self.t = t
        self.u = u
        self.target = target
        self.gamma = gamma
        self.c = c
        self.threshold = threshold
        self.parts = parts
        self.strategy = strategy
        self.family = family
        self.certify = certify
        self.seed = seed

    def fit(self, X, y=None):
        P = check_points(X)
        eps = check_epsilon(self.epsilon)
        if self.family not in ("layered", "complete"):
            raise ValueError(f"unknown family {self.family!r}")
        F = None
        if self.family == "complete":
            F = complete_family(tverberg_params(P.dim)[1], self.t, eps / 2)
        if self.strategy == "homogeneous":
            if F is None:
                A, trace = construct_homogeneous_fast(P, eps, self.t, return_trace=True)
            else:
                A, trace = construct_homogeneous_fast(P, eps, family=F, return_trace=True)
            self.params_ = None
        elif self.strategy == "general":
            if self.mode == "guarantee":
                self.params_ = compute_params(P.dim, eps, "guarantee", c=self.c)
            else:
                self.params_ = compute_params(P.dim, eps, "empirical", t=self.t, u=self.u,
                                              target=self.target, c=self.c, gamma=self.gamma,
                                              threshold=self.threshold, parts=self.parts)
            A, trace = construct_approximant(P, eps, self.params_, self.seed, certify=self.certify,
                                             family=F)
        else:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        self.approximant_: WeightedPointSet = A
        self.trace_ = trace
        self.n_features_in_ = P.dim
        return self

    def _check_fitted(self):
        if not hasattr(self, "approximant_"):
            raise NotFittedError("call fit first")

    def transform(self, X=None):
        self._check_fitted()
        rows = [list(p) for p, w in self.approximant_.entries for _ in range(w)]
        return np.array(rows, dtype=object)

    def score(self, X, y=None, samples: int = 200):
        self._check_fitted()
        P = check_points(X, self.n_features_in_)
        if len(P) <= ONE_SIDED_CAP:
            return -one_sided_discrepancy_exact(P, self.approximant_).value
        return -sampled_discrepancy(P, self.approximant_, "halfspaces", samples, self.seed).value
