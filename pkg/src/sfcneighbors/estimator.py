"""scikit-learn style wrapper around table compilation and neighbor queries."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import ContractError
from .neighbor_engine import build_multilevel, find_neighbor, make_node, neighbor_multilevel
from .spec_model import builtin
from .table_gen import compile_spec


class NeighborFinder(TransformerMixin, BaseEstimator):
    """Answer batches of facet-neighbor queries for one curve.

    ``fit`` compiles the lookup tables; each row of ``X`` passed to
    ``predict``/``transform`` is ``(level, position, facet)``.

    Parameters
    ----------
    curve : str or BSpecification
        Builtin name such as ``"hilbert2d_global"`` or a specification object.
    depth : int
        Levels covered per table lookup (1 = single-level tables).
    strict : bool
        Refuse curves that fail a regularity clause.
    """

    def __init__(self, curve="hilbert2d_global", depth=1, strict=True):
        self.curve = curve
        self.depth = depth
        self.strict = strict

    def fit(self, X=None, y=None):
        spec = builtin(self.curve) if isinstance(self.curve, str) else self.curve
        self.spec_ = spec
        self.tables_ = compile_spec(spec, strict=self.strict)
        self.multilevel_ = build_multilevel(self.tables_, self.depth) if self.depth > 1 else None
        self.n_facets_ = self.tables_.facet_count
        return self

    def _queries(self, X):
        X = check_array(X, dtype=None, ensure_min_samples=0)
        if X.shape[1] != 3:
            raise ContractError(f"expected rows of (level, position, facet), got {X.shape[1]} columns")
        if X.dtype.kind not in "iu":
            # casting would truncate 1.5 to 1 without complaint
            if X.dtype.kind != "f" or not np.all(np.mod(X, 1) == 0):
                raise ContractError("queries must be integers")
        return X.astype(np.int64)

    def _one(self, level, position, facet):
        if self.multilevel_ is None:
            return find_neighbor(self.tables_, level, position, facet)
        node = make_node(self.tables_, level, position)
        w = neighbor_multilevel(self.multilevel_, node, facet)
        return (-1, -1) if w is None else (w.position, w.state)

    def transform(self, X):
        """Array of ``(neighbor position, neighbor state)``; ``-1`` where there is none."""
        check_is_fitted(self, "tables_")
        X = self._queries(X)
        out = np.empty((X.shape[0], 2), dtype=np.int64)
        for i, (level, position, facet) in enumerate(X.tolist()):
            out[i] = self._one(level, position, facet)
        return out

    def predict(self, X):
        """Neighbor positions, ``-1`` where there is none."""
        return self.transform(X)[:, 0]
