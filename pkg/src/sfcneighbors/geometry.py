"""Exact rational geometry: affine dimension, hulls, equivalence, intersections.

All computations use :class:`fractions.Fraction` or plain integers, never
floating point.  Point sets are internally rescaled to integer coordinates
(multiplying by the common denominator), which preserves every incidence
and dimension question asked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    ContractError,
    DegenerateHullError,
    DimensionMismatchError,
    ShapeError,
)

MAX_HULL_DIMENSION = 8

Point = tuple  # tuple of Fraction


def rational(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected so that no rounding can sneak in.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rational_matrix(rows) -> tuple:
    """Rows of rationals as a tuple of tuples."""
    return tuple(tuple(rational(x) for x in row) for row in rows)


@dataclass(frozen=True)
class PointMatrix:
    """A d x m matrix whose columns are points of R^d."""

    cols: tuple

    def __post_init__(self):
        cols = tuple(tuple(rational(x) for x in c) for c in self.cols)
        if not cols:
            raise ShapeError("a point matrix needs at least one column")
        d = len(cols[0])
        if d == 0 or any(len(c) != d for c in cols):
            raise DimensionMismatchError("all columns must share one dimension")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, rows) -> "PointMatrix":
        rows = rational_matrix(rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("ragged or empty row list")
        return cls(tuple(zip(*rows)))

    @property
    def dim(self) -> int:
        return len(self.cols[0])

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def rows(self) -> tuple:
        return tuple(zip(*self.cols))

    def transform(self, matrix) -> "PointMatrix":
        """Right multiplication ``Q @ M`` by a transition matrix given as rows."""
        if len(matrix) != self.ncols:
            raise ShapeError(
                f"matrix has {len(matrix)} rows, point matrix has {self.ncols} columns"
            )
        out = []
        for j in range(len(matrix[0])):
            weights = [(row[j], q) for row, q in zip(matrix, self.cols) if row[j]]
            out.append(
                tuple(sum((w * q[i] for w, q in weights), Fraction(0)) for i in range(self.dim))
            )
        return PointMatrix(tuple(out))

    __matmul__ = transform


@dataclass(frozen=True)
class AffineMap:
    """x -> A x + b with invertible A."""

    A: tuple
    b: tuple

    def __call__(self, point) -> tuple:
        return tuple(
            sum((a * x for a, x in zip(row, point)), Fraction(0)) + off
            for row, off in zip(self.A, self.b)
        )

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """The map ``self ∘ inner``."""
        A = _matmul(self.A, inner.A)
        b = tuple(v + w for v, w in zip(_matvec(self.A, inner.b), self.b))
        return AffineMap(A, b)

    def inverse(self) -> "AffineMap":
        inv = _inverse(self.A)
        return AffineMap(inv, tuple(-x for x in _matvec(inv, self.b)))

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        A = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
        return cls(A, tuple(Fraction(0) for _ in range(d)))


@dataclass(frozen=True)
class Halfspace:
    """Outward facet inequality ``normal . x <= offset`` plus the columns on it."""

    normal: tuple
    offset: Fraction
    indices: frozenset  # 1-based column indices lying on the hyperplane


# --- exact linear algebra on Fractions ------------------------------------


def _matmul(A, B):
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B))
        for row in A
    )


def _matvec(A, v):
    return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A)


def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rank(vectors) -> int:
    return len(_rref(vectors)[1]) if vectors else 0


def _nullspace(rows, ncols):
    """Basis of {x : rows x = 0}."""
    reduced, pivots = _rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def _solve(A, rhs):
    """Solve a square system; None when singular."""
    n = len(A)
    aug = [list(row) + [v] for row, v in zip(A, rhs)]
    reduced, pivots = _rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in reduced)


def _inverse(A):
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    reduced, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ContractError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def _int_det(m) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _normalize_plane(normal, offset):
    g = 0
    for x in normal:
        g = gcd(g, x)
    g = gcd(g, offset)
    if g > 1:
        return tuple(x // g for x in normal), offset // g
    return tuple(normal), offset


def _common_denominator(points) -> int:
    den = 1
    for p in points:
        for x in p:
            den = lcm(den, x.denominator)
    return den


def _scale(points, den):
    return [tuple(x.numerator * (den // x.denominator) for x in p) for p in points]


def _check_points(points) -> int:
    points = list(points)
    if not points:
        return -1
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionMismatchError("points of different dimensions")
    return d


def _affine_basis(points):
    """Indices of a greedy affine basis (first point, then rank-increasing)."""
    if not points:
        return []
    base = [0]
    echelon = []  # list of (pivot, row) with Fraction rows
    origin = points[0]
    for i in range(1, len(points)):
        v = [Fraction(x) for x in _sub(points[i], origin)]
        for pc, row in echelon:
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        pc = next((c for c, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        echelon.append((pc, [x * inv for x in v]))
        base.append(i)
    return base


def affine_dimension(points: Iterable[Sequence]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    pts = [tuple(rational(x) for x in p) for p in points]
    if _check_points(pts) == -1:
        return -1
    return len(_affine_basis(pts)) - 1


def is_transition_matrix(matrix) -> bool:
    """True iff the matrix is rectangular, non-empty and every column sums to 1."""
    try:
        rows = rational_matrix(matrix)
    except (TypeError, ValueError, ZeroDivisionError):
        return False
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        return False
    return all(sum(col) == 1 for col in zip(*rows))


# --- convex hulls ----------------------------------------------------------


def _facet_normal(vertices):
    """Integer normal of the hyperplane through k points of Z^k (cofactors)."""
    base = vertices[0]
    diffs = [_sub(v, base) for v in vertices[1:]]
    k = len(base)
    normal = []
    for m in range(k):
        minor = [[row[c] for c in range(k) if c != m] for row in diffs]
        normal.append((-1) ** m * _int_det(minor))
    return tuple(normal)


def _hull_planes(points):
    """Outward facet planes ``(normal, offset)`` of full-dimensional integer points.

    Incremental exact hull: start from an affine basis simplex, then add one
    point at a time, replacing the facets it sees strictly by a cone over the
    horizon.  Coplanar points are never "visible", so flat facets end up
    triangulated into coplanar pieces which are merged at the end.
    """
    k = len(points[0])
    if k == 1:
        values = [p[0] for p in points]
        return [((-1,), -min(values)), ((1,), max(values))]
    simplex = _affine_basis(points)
    if len(simplex) != k + 1:
        raise DegenerateHullError("point set is not full-dimensional")
    interior = tuple(sum(points[i][c] for i in simplex) for c in range(k))
    scale = k + 1

    facets = {}
    ridges = {}
    counter = [0]

    def add(verts):
        verts = tuple(sorted(verts))
        normal = _facet_normal([points[v] for v in verts])
        offset = _dot(normal, points[verts[0]])
        if _dot(normal, interior) > offset * scale:
            normal = tuple(-x for x in normal)
            offset = -offset
        fid = counter[0]
        counter[0] += 1
        facets[fid] = (verts, normal, offset)
        for ridge in combinations(verts, k - 1):
            ridges.setdefault(ridge, set()).add(fid)

    for omit in simplex:
        add([v for v in simplex if v != omit])

    in_simplex = set(simplex)
    for idx, p in enumerate(points):
        if idx in in_simplex:
            continue
        visible = {fid for fid, (_, n, c) in facets.items() if _dot(n, p) > c}
        if not visible:
            continue
        horizon = []
        for fid in visible:
            for ridge in combinations(facets[fid][0], k - 1):
                if any(other not in visible for other in ridges[ridge]):
                    horizon.append(ridge)
        for fid in visible:
            for ridge in combinations(facets[fid][0], k - 1):
                owners = ridges[ridge]
                owners.discard(fid)
                if not owners:
                    del ridges[ridge]
            del facets[fid]
        for ridge in horizon:
            add(ridge + (idx,))

    planes = {}
    for _, normal, offset in facets.values():
        key = _normalize_plane(normal, offset)
        planes[key] = None
    for normal, offset in planes:
        if any(_dot(normal, p) > offset for p in points):
            raise AssertionError("hull construction produced a non-supporting plane")
    return list(planes)


def _projection(points):
    """Affine coordinates of points inside their affine hull.

    Returns ``(origin, rows, inverse, coords)`` where ``coords[i]`` are the
    coordinates of point i in the basis of the greedy affine basis and
    ``inverse`` maps the selected ambient rows to coordinates.
    """
    basis = _affine_basis(points)
    origin = points[basis[0]]
    dirs = [_sub(points[i], origin) for i in basis[1:]]
    m = len(dirs)
    k = len(origin)
    if m == 0:
        return origin, [], (), [() for _ in points], basis
    # choose m ambient rows where the direction matrix is invertible
    transposed = [[Fraction(dirs[t][r]) for t in range(m)] for r in range(k)]
    _, pivots = _rref([list(col) for col in zip(*transposed)])
    rows = pivots[:m]
    square = tuple(tuple(transposed[r][t] for t in range(m)) for r in rows)
    inverse = _inverse(square)
    coords = [
        _matvec(inverse, tuple(Fraction(p[r] - origin[r]) for r in rows)) for p in points
    ]
    return origin, rows, inverse, coords, basis


def _hrep(points):
    """H-representation of conv(points) for integer points of any dimension.

    Returns ``(equalities, inequalities)`` as lists of integer
    ``(normal, offset)`` pairs: ``n.x == c`` and ``n.x <= c`` respectively.
    """
    k = len(points[0])
    basis = _affine_basis(points)
    m = len(basis) - 1
    if m == k:
        return [], _hull_planes(points)
    origin, rows, inverse, coords, _ = _projection(points)
    dirs = [_sub(points[i], origin) for i in basis[1:]]
    equalities = []
    for n in _nullspace([list(map(Fraction, d)) for d in dirs], k) if dirs else [
        tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)
    ]:
        den = _common_denominator([n])
        n_int = tuple(x.numerator * (den // x.denominator) for x in n)
        equalities.append(_normalize_plane(n_int, _dot(n_int, origin)))
    if m == 0:
        return equalities, []
    den = _common_denominator(coords)
    local = _scale(coords, den)
    inequalities = []
    for a, c in _hull_planes(local):
        # a . (den * inverse (x_rows - origin_rows)) <= c
        lifted = [Fraction(0)] * k
        for t, r in enumerate(rows):
            lifted[r] = den * sum((a[s] * inverse[s][t] for s in range(m)), Fraction(0))
        off = Fraction(c) + sum((lifted[r] * origin[r] for r in range(k)), Fraction(0))
        scale = _common_denominator([tuple(lifted) + (off,)])
        n_int = tuple(x.numerator * (scale // x.denominator) for x in lifted)
        off_int = off.numerator * (scale // off.denominator)
        inequalities.append(_normalize_plane(n_int, off_int))
    return equalities, inequalities


def _as_points(Q) -> list:
    if isinstance(Q, PointMatrix):
        return list(Q.cols)
    return [tuple(rational(x) for x in p) for p in Q]


def hull_halfspaces(Q) -> list:
    """Facet inequalities of a full-dimensional point set, sorted by index set."""
    return list(_hull_halfspaces(tuple(_as_points(Q))))


@lru_cache(maxsize=8192)
def _hull_halfspaces(pts) -> tuple:
    pts = list(pts)
    d = _check_points(pts)
    if d > MAX_HULL_DIMENSION:
        raise ContractError(f"hull enumeration is capped at dimension {MAX_HULL_DIMENSION}")
    if d == -1 or len(_affine_basis(pts)) != d + 1:
        raise DegenerateHullError("conv(Q) is not full-dimensional")
    den = _common_denominator(pts)
    ints = _scale(pts, den)
    out = []
    for normal, offset in _hull_planes(ints):
        idx = frozenset(i + 1 for i, p in enumerate(ints) if _dot(normal, p) == offset)
        out.append(Halfspace(normal, Fraction(offset, den), idx))
    out.sort(key=lambda h: sorted(h.indices))
    return tuple(out)


def hull_facets(Q) -> list:
    """Facet index sets (1-based column indices) of conv(Q), lexicographically sorted."""
    return [h.indices for h in hull_halfspaces(Q)]


def extreme_indices(points) -> list:
    """0-based indices of the points that are vertices of their convex hull."""
    pts = _as_points(points)
    if _check_points(pts) == -1:
        return []
    den = _common_denominator(pts)
    ints = _scale(pts, den)
    distinct = sorted(set(ints))
    if len(distinct) == 1:
        return list(range(len(pts)))
    vertices = set()
    for cand in distinct:
        others = [p for p in distinct if p != cand]
        if not _in_hrep(_hrep(others), cand):
            vertices.add(cand)
    return [i for i, p in enumerate(ints) if p in vertices]


def _in_hrep(hrep, p) -> bool:
    equalities, inequalities = hrep
    return all(_dot(n, p) == c for n, c in equalities) and all(
        _dot(n, p) <= c for n, c in inequalities
    )


def contains(outer, inner) -> bool:
    """True iff every point of ``inner`` lies in conv(``outer``)."""
    a, b = _as_points(outer), _as_points(inner)
    if _check_points(a + b) == -1:
        return True
    den = _common_denominator(a + b)
    a_int, b_int = _scale(a, den), _scale(b, den)
    hrep = _hrep(a_int)
    return all(_in_hrep(hrep, p) for p in b_int)


# --- equivalence -------------------------------------------------------------


def _complete_basis(vectors, d):
    """Extend independent vectors to a basis of Q^d with unit vectors."""
    out = [tuple(Fraction(x) for x in v) for v in vectors]
    for i in range(d):
        unit = tuple(Fraction(int(i == j)) for j in range(d))
        if _rank(out + [unit]) > len(out):
            out.append(unit)
        if len(out) == d:
            break
    return out


def matrix_pair_equivalence(Q1, R1, Q2, R2):
    """Find an invertible affine map taking (Q1|R1) columnwise onto (Q2|R2).

    ``R1``/``R2`` may be None for single-matrix equivalence.  Returns an
    :class:`AffineMap` or None.
    """
    if Q1.ncols != Q2.ncols:
        raise ShapeError("Q1 and Q2 have different column counts")
    r1 = R1.cols if R1 is not None else ()
    r2 = R2.cols if R2 is not None else ()
    if len(r1) != len(r2):
        raise ShapeError("R1 and R2 have different column counts")
    src = list(Q1.cols) + list(r1)
    dst = list(Q2.cols) + list(r2)
    d = Q1.dim
    if any(len(p) != d for p in src + dst):
        raise DimensionMismatchError("matrices do not share one ambient dimension")
    basis = _affine_basis(src)
    target = [dst[i] for i in basis]
    if len(_affine_basis(target)) != len(basis):
        return None
    src_dirs = [_sub(src[i], src[basis[0]]) for i in basis[1:]]
    dst_dirs = [_sub(dst[i], dst[basis[0]]) for i in basis[1:]]
    S = _complete_basis(src_dirs, d)
    T = _complete_basis(dst_dirs, d)
    # A S^T = T^T  (vectors as columns)
    s_cols = tuple(zip(*S))
    t_cols = tuple(zip(*T))
    A = _matmul(t_cols, _inverse(s_cols))
    b = _sub(dst[basis[0]], _matvec(A, src[basis[0]]))
    tau = AffineMap(A, b)
    if all(tau(p) == q for p, q in zip(src, dst)):
        return tau
    return None


# --- intersections -----------------------------------------------------------


def _bbox(points):
    return tuple(zip(*[(min(c), max(c)) for c in zip(*points)]))


def _bboxes_disjoint(a, b) -> bool:
    (alo, ahi), (blo, bhi) = _bbox(a), _bbox(b)
    return any(x > y for x, y in zip(alo, bhi)) or any(x > y for x, y in zip(blo, ahi))


def _vertices_of(equalities, inequalities, k, stop_at_full=True):
    """Enumerate basic feasible points of an integer constraint system."""
    eq_rows = [[Fraction(x) for x in n] + [Fraction(c)] for n, c in equalities]
    reduced, pivots = _rref(eq_rows) if eq_rows else ([], [])
    if k in pivots:
        return []  # inconsistent equalities
    eq_basis = [(row[:k], row[k]) for row in reduced]
    r = len(eq_basis)
    need = k - r
    ineqs = list(dict.fromkeys(inequalities))
    found = []
    seen = set()
    for subset in combinations(ineqs, need):
        A = [row for row, _ in eq_basis] + [tuple(map(Fraction, n)) for n, _ in subset]
        rhs = [c for _, c in eq_basis] + [Fraction(c) for _, c in subset]
        x = _solve(A, rhs)
        if x is None or x in seen:
            continue
        if all(_dot(n, x) == c for n, c in equalities) and all(
            _dot(n, x) <= c for n, c in ineqs
        ):
            seen.add(x)
            found.append(x)
            if stop_at_full and len(found) > k and len(_affine_basis(found)) == k + 1:
                break
    return found


def intersection_dimension(Q1, Q2) -> int:
    """dim(conv(Q1) ∩ conv(Q2)), -1 when empty."""
    a, b = _as_points(Q1), _as_points(Q2)
    if not a or not b:
        return -1
    if len(a[0]) != len(b[0]):
        raise DimensionMismatchError("point sets of different dimension")
    _check_points(a + b)
    if _bboxes_disjoint(a, b):
        return -1
    den = _common_denominator(a + b)
    a_int, b_int = _scale(a, den), _scale(b, den)
    e1, i1 = _hrep(a_int)
    e2, i2 = _hrep(b_int)
    verts = _vertices_of(e1 + e2, i1 + i2, len(a[0]))
    return affine_dimension(verts)


def _facet_halfspace(Q, facet):
    for h in hull_halfspaces(Q):
        if h.indices == frozenset(facet):
            return h
    raise ContractError(f"{sorted(facet)} is not a facet index set of the point matrix")


def intersection_equals_face(Q1, f1, Q2, f2) -> bool:
    """True iff conv(Q1) ∩ conv(Q2) equals facet f1 of Q1 and facet f2 of Q2."""
    h1 = _facet_halfspace(Q1, f1)
    _facet_halfspace(Q2, f2)
    face1 = [Q1.cols[i - 1] for i in sorted(f1)]
    face2 = [Q2.cols[i - 1] for i in sorted(f2)]
    if not (contains(face1, face2) and contains(face2, face1)):
        return False
    # the shared facet lies on h1's plane; Q2 must sit on the far side of it
    return all(_dot(h1.normal, q) >= h1.offset for q in Q2.cols)


def hyperplane_through(points, inside):
    """Rational ``(normal, offset)`` of the hyperplane spanned by ``points``.

    Oriented so that ``normal . inside <= offset``; ``points`` must span a
    hyperplane and ``inside`` must not lie on it.
    """
    d = len(points[0])
    dirs = [list(map(Fraction, _sub(p, points[0]))) for p in points[1:]]
    null = _nullspace(dirs, d) if dirs else []
    if len(null) != 1:
        raise ContractError("points do not span a hyperplane")
    normal = null[0]
    offset = _dot(normal, points[0])
    side = _dot(normal, inside)
    if side == offset:
        raise ContractError("reference point lies on the hyperplane")
    if side > offset:
        normal = tuple(-x for x in normal)
        offset = -offset
    return normal, offset
