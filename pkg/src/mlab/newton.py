"""Newton polyhedra of monomial ideals: facets, lattice volumes, closures.

The Newton polyhedron of a monomial ideal is conv(generators) + the
nonnegative orthant.  For an ideal primary to the maximal ideal the
complement inside the orthant is bounded, and all the geometry needed
elsewhere lives on the boundary: bounded facets (those with strictly
positive inner normal), their primitive normals and offsets, and their
lattice-normalized volumes.

Everything is exact.  Candidate facet normals come from generalized cross
products of generator differences (vectorized in int64 with guarded
magnitudes); acceptance, volumes and orderings are done in Python integers
and Fractions.

The lattice volume Lambda(F) of a bounded facet with primitive normal w is
computed simplex by simplex as |det(edge vectors, w)| / <w, w>, which is an
integer (the normalized (d-1)-volume: a primitive simplex counts 1).  The
covolume of the staircase complement is then

    covolume = (1/d!) * sum over bounded facets of offset * Lambda,

by coning each facet off the origin.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    GridInconsistent,
    IntegralityError,
    NotPrimary,
    ScaleLimit,
    UnboundedComplement,
    UnboundedFacet,
)
from ._poly import eval_multi, tensor_interpolate
from .monomials import (
    MonomialIdeal,
    _MAX_BOX,
    _pure_power_bounds,
    is_m_primary,
    unit_ideal,
)

# Entry bounds under which the int64 candidate enumeration cannot overflow
# (cross products are degree d-1 in the entries, offsets one degree more).
_ENTRY_GUARD = {1: 1 << 40, 2: 1 << 30, 3: 1 << 19, 4: 20_000}

# Subset enumeration budgets.
_MAX_POINTS_D3 = 260
_MAX_POINTS_D4 = 120


@dataclass(frozen=True)
class Facet:
    """A facet of a Newton polyhedron.

    normal   primitive integer inner normal (strictly positive iff bounded)
    offset   min of <normal, .> over the polyhedron
    bounded  True for the compact facets of the boundary
    vertices polyhedron vertices lying on the facet, lex sorted
    ridges   for dim 4 only: vertex sets of the 2-faces of the facet
    """

    normal: tuple[int, ...]
    offset: int
    bounded: bool
    vertices: tuple[tuple[int, ...], ...]
    ridges: tuple[tuple[tuple[int, ...], ...], ...] = field(default=())


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[Facet, ...]

    def bounded_facets(self) -> tuple[Facet, ...]:
        return tuple(f for f in self.facets if f.bounded)

    def contains(self, point) -> bool:
        """Membership of a rational point (facet inequalities, exact)."""
        p = [Fraction(x) for x in point]
        if len(p) != self.dim:
            raise DimensionMismatch(f"point {point} does not live in dim {self.dim}")
        if any(x < 0 for x in p):
            return False
        return all(
            sum(w * x for w, x in zip(f.normal, p)) >= f.offset for f in self.facets
        )


# ---------------------------------------------------------------------------
# exact small linear algebra


def _dot(a, b) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def _sub(a, b) -> tuple[int, ...]:
    return tuple(int(x) - int(y) for x, y in zip(a, b))


def _det2(r0, r1) -> int:
    return r0[0] * r1[1] - r0[1] * r1[0]


def _det3(r0, r1, r2) -> int:
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def _det4(r0, r1, r2, r3) -> int:
    total = 0
    rows = (r1, r2, r3)
    for col in range(4):
        rest = [tuple(r[c] for c in range(4) if c != col) for r in rows]
        minor = _det3(*rest)
        total += (-1) ** col * r0[col] * minor
    return total


def _matrix_rank(rows) -> int:
    """Exact rank over the rationals (tiny matrices only)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def _affine_dim(points) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    return _matrix_rank([_sub(p, p0) for p in pts[1:]])


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = math.gcd(g, abs(int(x)))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in vec)


# ---------------------------------------------------------------------------
# planar machinery (faces of dimension 2 in ambient dimension 3 or 4)


def _planar_coords(points) -> list[tuple[Fraction, Fraction]]:
    """Exact 2D coordinates of coplanar lattice points.

    Coordinates are taken against two independent difference vectors via the
    Gram matrix (Cramer's rule in Fractions); the input must be genuinely
    planar, which all callers guarantee.
    """
    pts = list(points)
    p0 = pts[0]
    diffs = [_sub(p, p0) for p in pts]
    d1 = next(d for d in diffs if any(d))
    d2 = None
    for d in diffs:
        if _dot(d1, d1) * _dot(d, d) != _dot(d1, d) ** 2:
            d2 = d
            break
    if d2 is None:
        raise ValueError("points are collinear, not planar")
    g11, g12, g22 = _dot(d1, d1), _dot(d1, d2), _dot(d2, d2)
    det = g11 * g22 - g12 * g12
    out = []
    for d in diffs:
        b1, b2 = _dot(d1, d), _dot(d2, d)
        s = Fraction(b1 * g22 - b2 * g12, det)
        t = Fraction(g11 * b2 - g12 * b1, det)
        out.append((s, t))
    return out


def _hull_cycle(coords) -> list[int]:
    """Indices of the convex hull of exact 2D points, counterclockwise."""
    order = sorted(range(len(coords)), key=lambda i: coords[i])

    def cross(o, a, b):
        return (coords[a][0] - coords[o][0]) * (coords[b][1] - coords[o][1]) - (
            coords[a][1] - coords[o][1]
        ) * (coords[b][0] - coords[o][0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _cycle_points(points) -> list[tuple[int, ...]]:
    coords = _planar_coords(points)
    pts = list(points)
    return [pts[i] for i in _hull_cycle(coords)]


def _polygon_lattice_area(points, normal) -> int:
    """Normalized lattice area of a polygon in a plane of R^3.

    Fan triangulation from one hull vertex; each triangle contributes
    |det(edge1, edge2, normal)| / <normal, normal>, an exact integer.
    """
    cycle = _cycle_points(points)
    ww = _dot(normal, normal)
    a0 = cycle[0]
    total = 0
    for b, c in zip(cycle[1:], cycle[2:]):
        det = abs(_det3(_sub(b, a0), _sub(c, a0), normal))
        q, r = divmod(det, ww)
        if r:
            raise IntegralityError("triangle determinant not divisible by <w,w>")
        total += q
    return total


def _segment_lattice_length(points) -> int:
    """Number of primitive steps between the extremes of collinear points."""
    pts = sorted(points)
    p0, p1 = pts[0], pts[-1]
    direction = _primitive(_sub(p1, p0))
    j = next(i for i, x in enumerate(direction) if x)
    ts = [(_sub(p, p0)[j]) // direction[j] for p in pts]
    return max(ts) - min(ts)


# ---------------------------------------------------------------------------
# candidate facet normals from point sets


def _np_primitive_positive(normals: np.ndarray) -> np.ndarray:
    """Canonicalize candidate normals: strictly positive and primitive."""
    if not len(normals):
        return normals.reshape(0, normals.shape[1] if normals.ndim == 2 else 0)
    neg = (normals <= 0).all(axis=1)
    normals = np.where(neg[:, None], -normals, normals)
    keep = (normals > 0).all(axis=1)
    normals = normals[keep]
    if not len(normals):
        return normals
    g = np.gcd.reduce(normals, axis=1)
    return normals // g[:, None]


def _cross_rows_d3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.stack(
        [
            a[:, 1] * b[:, 2] - a[:, 2] * b[:, 1],
            a[:, 2] * b[:, 0] - a[:, 0] * b[:, 2],
            a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0],
        ],
        axis=1,
    )


def _cross_rows_d4(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    def det3(c0, c1, c2):
        return (
            a[:, c0] * (b[:, c1] * c_[:, c2] - b[:, c2] * c_[:, c1])
            - a[:, c1] * (b[:, c0] * c_[:, c2] - b[:, c2] * c_[:, c0])
            + a[:, c2] * (b[:, c0] * c_[:, c1] - b[:, c1] * c_[:, c0])
        )

    c_ = c
    w0 = det3(1, 2, 3)
    w1 = -det3(0, 2, 3)
    w2 = det3(0, 1, 3)
    w3 = -det3(0, 1, 2)
    return np.stack([w0, w1, w2, w3], axis=1)


def _candidate_normals_d3(pts: np.ndarray) -> np.ndarray:
    """Strictly positive primitive normals supported by some generator triple.

    For each base point i, all pairs (j, k) above it are handled as one
    vectorized block: cross products of the differences, positivity and
    primitivity, then the cheap but decisive filter that the triple actually
    attains the minimum of its own normal (otherwise it supports no face).
    """
    n = len(pts)
    found = []
    for i in range(n - 2):
        rest = pts[i + 1 :]
        m = len(rest)
        jj, kk = np.triu_indices(m, k=1)
        if not len(jj):
            continue
        diffs1 = rest[jj] - pts[i]
        diffs2 = rest[kk] - pts[i]
        normals = _np_primitive_positive(_cross_rows_d3(diffs1, diffs2))
        if not len(normals):
            continue
        normals = np.unique(normals, axis=0)
        vals = normals @ pts.T
        base = normals @ pts[i]
        keep = vals.min(axis=1) == base
        if keep.any():
            found.append(normals[keep])
    if not found:
        return np.zeros((0, 3), dtype=np.int64)
    return np.unique(np.vstack(found), axis=0)


def _candidate_normals_d4(pts: np.ndarray) -> np.ndarray:
    n = len(pts)
    found = []
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            rest = pts[j + 1 :]
            m = len(rest)
            kk, ll = np.triu_indices(m, k=1)
            if not len(kk):
                continue
            d1 = np.broadcast_to(pts[j] - pts[i], (len(kk), 4))
            d2 = rest[kk] - pts[i]
            d3 = rest[ll] - pts[i]
            normals = _np_primitive_positive(_cross_rows_d4(d1, d2, d3))
            if not len(normals):
                continue
            normals = np.unique(normals, axis=0)
            vals = normals @ pts.T
            base = normals @ pts[i]
            keep = vals.min(axis=1) == base
            if keep.any():
                found.append(normals[keep])
    if not found:
        return np.zeros((0, 4), dtype=np.int64)
    return np.unique(np.vstack(found), axis=0)


def _prune_midpoints(pts: np.ndarray) -> np.ndarray:
    """Drop points that average two others (and hence are never vertices).

    g is discarded when a + b <= 2g for rows a, b with (a, b) != (g, g);
    one pass against the original array is sound because the witnesses a, b
    dominate g's cell regardless of whether they survive themselves.
    """
    n, d = pts.shape
    if n > 400:
        raise ScaleLimit(f"{n} generators is beyond the vertex-pruning budget")
    sums = (pts[:, None, :] + pts[None, :, :]).reshape(n * n, d)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        ok = (sums <= 2 * pts[i]).all(axis=1)
        ok[i * n + i] = False
        if ok.any():
            keep[i] = False
    return pts[keep]


# ---------------------------------------------------------------------------
# building the polyhedron


def _chain_vertices_2d(gens) -> list[tuple[int, ...]]:
    """Vertices of the staircase hull in the plane via a monotone chain.

    Minimal generators arrive lex sorted, so x increases and y strictly
    decreases; the convex positions are kept with exact cross products.
    """
    stack: list[tuple[int, ...]] = []
    for p in gens:
        while len(stack) >= 2:
            o, a = stack[-2], stack[-1]
            cross = _det2(_sub(a, o), _sub(p, o))
            # pop right turns and collinear middles; the staircase boundary
            # turns left at every true vertex when x increases
            if cross <= 0:
                stack.pop()
            else:
                break
        stack.append(p)
    return stack


def _polyhedron_from_points(dim: int, pts: np.ndarray) -> NewtonPolyhedron:
    """Assemble the full facet/vertex description from a spanning point set.

    The point set must contain every vertex of conv(points) + orthant and,
    along each axis, a point on the coordinate hyperplane attaining the
    minimum (m-primary staircases and their Minkowski sums both qualify).
    """
    guard = _ENTRY_GUARD[dim]
    if pts.max(initial=0) > guard:
        raise ScaleLimit(f"entries beyond {guard} overflow the dim-{dim} normal search")

    points = [tuple(int(x) for x in row) for row in np.unique(pts, axis=0)]

    if dim == 1:
        b = min(p[0] for p in points)
        v = (b,)
        facet = Facet((1,), b, True, (v,))
        return NewtonPolyhedron(1, (v,), (facet,))

    raw_facets: list[tuple[tuple[int, ...], int]] = []
    if dim == 2:
        verts = _chain_vertices_2d(sorted(points))
        for a, b in zip(verts, verts[1:]):
            w = _primitive((a[1] - b[1], b[0] - a[0]))
            raw_facets.append((w, _dot(w, a)))
    else:
        arr = np.array(points, dtype=np.int64)
        if dim == 3:
            if len(arr) > _MAX_POINTS_D3:
                raise ScaleLimit(f"{len(arr)} points exceed the dim-3 facet search budget")
            cands = _candidate_normals_d3(arr)
        else:
            arr = _prune_midpoints(arr)
            if len(arr) > _MAX_POINTS_D4:
                raise ScaleLimit(f"{len(arr)} points exceed the dim-4 facet search budget")
            cands = _candidate_normals_d4(arr)
        full = np.array(points, dtype=np.int64)
        for w_row in cands:
            w = tuple(int(x) for x in w_row)
            vals = full @ w_row
            offset = int(vals.min())
            active = [points[i] for i in np.flatnonzero(vals == offset)]
            if _affine_dim(active) == dim - 1:
                raw_facets.append((w, offset))

    # coordinate facets (always facets in dim >= 2, bounded or not)
    all_ineqs: list[tuple[tuple[int, ...], int, bool]] = [
        (w, off, True) for w, off in raw_facets
    ]
    for j in range(dim):
        w = tuple(1 if i == j else 0 for i in range(dim))
        off = min(p[j] for p in points)
        all_ineqs.append((w, off, False))

    # vertices: points whose active inequalities span full rank
    vertices = []
    active_map: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for p in points:
        active = [w for w, off, _ in all_ineqs if _dot(w, p) == off]
        if len(active) >= dim and _matrix_rank(active) == dim:
            vertices.append(p)
            active_map[p] = active
    vertices.sort()

    facets = []
    for w, off, bounded in all_ineqs:
        on_facet = tuple(v for v in vertices if _dot(w, v) == off)
        facets.append(Facet(w, off, bounded, on_facet))

    if dim == 4:
        facets = _attach_ridges(facets)

    facets.sort(key=lambda f: (not f.bounded, f.normal, f.offset))
    return NewtonPolyhedron(dim, tuple(vertices), tuple(facets))


def _attach_ridges(facets: list[Facet]) -> list[Facet]:
    """For dim 4, record each bounded facet's 2-faces (needed for volumes).

    A codimension-2 face lies on exactly two facets, so ridges are the
    pairwise facet intersections of affine dimension 2.
    """
    out = []
    for f in facets:
        if not f.bounded:
            out.append(f)
            continue
        mine = set(f.vertices)
        ridges = set()
        for g in facets:
            if g is f:
                continue
            common = tuple(sorted(mine & set(g.vertices)))
            if len(common) >= 3 and _affine_dim(common) == 2:
                ridges.add(common)
        out.append(Facet(f.normal, f.offset, f.bounded, f.vertices, tuple(sorted(ridges))))
    return out


@functools.lru_cache(maxsize=None)
def build_polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    """Newton polyhedron conv(gens) + orthant of an m-primary ideal."""
    if not is_m_primary(I):
        raise NotPrimary("ideal is not m-primary")
    if I.dim > 4:
        raise DimensionMismatch("polyhedra are supported up to dimension 4")
    return _polyhedron_from_points(I.dim, I.array())


def polyhedra_equal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Whether two ideals have the same Newton polyhedron."""
    if I.dim != J.dim:
        raise DimensionMismatch("cannot compare polyhedra across dimensions")
    a = build_polyhedron(I)
    b = build_polyhedron(J)
    fa = sorted((f.normal, f.offset) for f in a.bounded_facets())
    fb = sorted((f.normal, f.offset) for f in b.bounded_facets())
    return fa == fb


# ---------------------------------------------------------------------------
# lattice volumes


def facet_lattice_volume(facet: Facet) -> int:
    """Normalized lattice volume of a bounded facet (a positive integer)."""
    if not facet.bounded:
        raise UnboundedFacet(f"facet with normal {facet.normal} is unbounded")
    d = len(facet.normal)
    w = facet.normal
    if d == 1:
        return 1
    if d == 2:
        assert len(facet.vertices) == 2
        diff = _sub(facet.vertices[1], facet.vertices[0])
        return math.gcd(abs(diff[0]), abs(diff[1]))
    if d == 3:
        return _polygon_lattice_area(facet.vertices, w)
    # d == 4: cone the facet's 2-faces off its lex-least vertex
    apex = facet.vertices[0]
    ww = _dot(w, w)
    total = 0
    for ridge in facet.ridges:
        cycle = _cycle_points(ridge)
        r0 = cycle[0]
        for b, c in zip(cycle[1:], cycle[2:]):
            det = abs(_det4(_sub(r0, apex), _sub(b, apex), _sub(c, apex), w))
            q, r = divmod(det, ww)
            if r:
                raise IntegralityError("tetrahedron determinant not divisible by <w,w>")
            total += q
    return total


def _covolume_of(P: NewtonPolyhedron) -> Fraction:
    total = 0
    for f in P.bounded_facets():
        if f.offset:
            total += f.offset * facet_lattice_volume(f)
    return Fraction(total, math.factorial(P.dim))


def covolume(I: MonomialIdeal) -> Fraction:
    """Volume of the staircase complement (orthant minus the polyhedron)."""
    if not is_m_primary(I):
        raise UnboundedComplement("complement of the polyhedron has infinite volume")
    return _covolume_of(build_polyhedron(I))


# ---------------------------------------------------------------------------
# integral closures of powers


@functools.lru_cache(maxsize=None)
def integral_closure_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """Integral closure of I^n: the ideal of lattice points in n * NP(I).

    Minimal generators are found on a bounded grid: any minimal lattice
    point of the scaled polyhedron satisfies x_j <= max over bounded facets
    of ceil(n * offset / w_j), since otherwise dropping one from x_j stays
    inside every inequality.
    """
    if n < 0:
        raise ValueError("negative power of an ideal")
    if n == 0:
        return unit_ideal(I.dim)
    P = build_polyhedron(I)
    bounded = P.bounded_facets()
    dim = I.dim
    ks = []
    for j in range(dim):
        k = 0
        for f in bounded:
            k = max(k, -((-n * f.offset) // f.normal[j]))
        ks.append(k)
    shape = tuple(k + 1 for k in ks)
    size = 1
    for s in shape:
        size *= s
    if size > _MAX_BOX:
        raise ScaleLimit(f"closure grid of {size} cells is beyond the safe limit")
    idx = np.indices(shape, dtype=np.int64)
    inside = np.ones(shape, dtype=bool)
    for f in bounded:
        acc = np.zeros(shape, dtype=np.int64)
        for j in range(dim):
            acc += f.normal[j] * idx[j]
        inside &= acc >= n * f.offset
    dominated = np.zeros(shape, dtype=bool)
    for ax in range(dim):
        lo = [slice(None)] * dim
        hi = [slice(None)] * dim
        lo[ax] = slice(1, None)
        hi[ax] = slice(0, -1)
        dominated[tuple(lo)] |= inside[tuple(hi)]
    minimal = inside & ~dominated
    gens = tuple(tuple(int(x) for x in row) for row in np.argwhere(minimal))
    return MonomialIdeal(dim, gens)


# ---------------------------------------------------------------------------
# exact volumes of scaled Minkowski sums
#
# The polyhedron of a product of ideals is the Minkowski sum of their
# polyhedra, so covolumes of weighted sums n_1 NP(I_1) + ... + n_r NP(I_r)
# give the polyhedral side of every multiplicity of a product without ever
# minimalizing the product ideal.  Facet normals of a Minkowski sum lie in
# the common refinement of the summands' normal fans; in dimension <= 3
# that means: a facet normal of a summand, or (dim 3) a positive cross
# product of edge directions taken from two different summands, coordinate
# ray directions included.


def _edge_directions(P: NewtonPolyhedron) -> list[tuple[int, ...]]:
    """Primitive directions of all bounded edges, plus the coordinate rays."""
    active: dict[tuple[int, ...], list[tuple[int, ...]]] = {v: [] for v in P.vertices}
    for f in P.facets:
        for v in f.vertices:
            active[v].append(f.normal)
    dirs = set()
    verts = P.vertices
    for a, b in itertools.combinations(verts, 2):
        common = [w for w in active[a] if w in {tuple(x) for x in active[b]}]
        if len(common) >= P.dim - 1 and _matrix_rank(common) == P.dim - 1:
            d = _primitive(_sub(b, a))
            dirs.add(min(d, tuple(-x for x in d)))
    for j in range(P.dim):
        dirs.add(tuple(1 if i == j else 0 for i in range(P.dim)))
    return sorted(dirs)


@functools.lru_cache(maxsize=None)
def _minkowski_prep(ideals: tuple[MonomialIdeal, ...]):
    """Per-candidate support data for weighted covolumes of Minkowski sums.

    Returns (dim, candidates), where each candidate carries its normal, the
    per-summand support minimum, and the per-summand minimizing vertex
    tuples.  Acceptance (the weighted face is a facet) is decided here once:
    the normal fan of a positively weighted sum does not depend on the
    weights.
    """
    dims = {I.dim for I in ideals}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(dims)}")
    d = dims.pop()
    if d > 3:
        raise DimensionMismatch("candidate-normal Minkowski volumes stop at dim 3")
    for I in ideals:
        if not is_m_primary(I):
            raise UnboundedComplement("complement of the polyhedron has infinite volume")
    polys = [build_polyhedron(I) for I in ideals]

    normals: set[tuple[int, ...]] = set()
    if d == 1:
        normals.add((1,))
    else:
        for P in polys:
            for f in P.bounded_facets():
                normals.add(f.normal)
        if d == 3:
            dir_sets = [_edge_directions(P) for P in polys]
            for (i, di), (j, dj) in itertools.combinations(enumerate(dir_sets), 2):
                for u in di:
                    for v in dj:
                        cx = (
                            u[1] * v[2] - u[2] * v[1],
                            u[2] * v[0] - u[0] * v[2],
                            u[0] * v[1] - u[1] * v[0],
                        )
                        if not any(cx):
                            continue
                        if all(x <= 0 for x in cx):
                            cx = tuple(-x for x in cx)
                        if all(x > 0 for x in cx):
                            normals.add(_primitive(cx))

    candidates = []
    for w in sorted(normals):
        mins = []
        argmins = []
        for P in polys:
            vals = [_dot(w, v) for v in P.vertices]
            m = min(vals)
            mins.append(m)
            argmins.append(tuple(v for v, x in zip(P.vertices, vals) if x == m))
        # acceptance at unit weights settles it for every positive weight
        sums = sorted(
            {
                tuple(sum(c) for c in zip(*combo))
                for combo in itertools.product(*argmins)
            }
        )
        if _affine_dim(sums) == d - 1:
            candidates.append((w, tuple(mins), tuple(argmins)))
    return d, tuple(candidates)


@functools.lru_cache(maxsize=None)
def minkowski_covolume_value(
    ideals: tuple[MonomialIdeal, ...], weights: tuple[int, ...]
) -> Fraction:
    """Covolume of weights[0] * NP(ideals[0]) + ... , exactly."""
    if len(ideals) != len(weights):
        raise ValueError("one weight per ideal, please")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    if len({I.dim for I in ideals}) != 1:
        raise DimensionMismatch("mixed ambient dimensions in Minkowski sum")
    d = ideals[0].dim
    if d == 4:
        arrs = [np.array(build_polyhedron(I).vertices, dtype=np.int64) for I in ideals]
        acc = weights[0] * arrs[0]
        for w, arr in zip(weights[1:], arrs[1:]):
            acc = (acc[:, None, :] + w * arr[None, :, :]).reshape(-1, d)
            acc = np.unique(acc, axis=0)
        return _covolume_of(_polyhedron_from_points(d, acc))
    d, candidates = _minkowski_prep(ideals)
    total = 0
    for w, mins, argmins in candidates:
        offset = sum(n * m for n, m in zip(weights, mins))
        pts = sorted(
            {
                tuple(sum(n * x for n, x in zip(weights, col)) for col in zip(*combo))
                for combo in itertools.product(*argmins)
            }
        )
        if d == 1:
            lam = 1
        elif d == 2:
            lam = _segment_lattice_length(pts)
        else:
            lam = _polygon_lattice_area(pts, w)
        total += offset * lam
    return Fraction(total, math.factorial(d))


def weighted_covolume_coefficients(
    ideals: tuple[MonomialIdeal, ...], pattern: tuple[int, ...], arity: int
) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of n -> covolume(sum_i n_{pattern[i]} * NP(I_i)).

    The covolume of a positively weighted Minkowski sum is a homogeneous
    polynomial of degree d in the weights; it is recovered by exact
    interpolation on the grid {1..d+1}^arity, after which homogeneity and a
    shell point are checked (GridInconsistent otherwise).  Only the degree-d
    coefficients are returned.
    """
    if len(pattern) != len(ideals):
        raise ValueError("pattern must assign a weight slot to every ideal")
    if sorted(set(pattern)) != list(range(arity)):
        raise ValueError("pattern must use every slot in 0..arity-1")
    d = ideals[0].dim
    axes = [list(range(1, d + 2))] * arity
    values = {}
    for pt in itertools.product(*axes):
        weights = tuple(pt[s] for s in pattern)
        values[pt] = minkowski_covolume_value(ideals, weights)
    coeffs = tensor_interpolate(axes, values)
    if any(sum(v) != d for v in coeffs):
        raise GridInconsistent(
            f"weighted covolume is not homogeneous of degree {d}: {sorted(coeffs)}"
        )
    shell = (d + 2,) * arity
    direct = minkowski_covolume_value(ideals, tuple(shell[s] for s in pattern))
    if eval_multi(coeffs, shell) != direct:
        raise GridInconsistent("weighted covolume fails its validation point")
    return coeffs


def mixed_covolume(ideals: tuple[MonomialIdeal, ...]) -> dict[tuple[int, ...], Fraction]:
    """Degree-d coefficients of covolume(n_1 NP(I_1) + ... + n_r NP(I_r))."""
    r = len(ideals)
    return weighted_covolume_coefficients(ideals, tuple(range(r)), r)
