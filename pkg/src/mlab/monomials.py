"""Monomial ideals of k[x_1..x_d] as finite sets of exponent vectors.

An ideal generated by monomials is determined by the antichain of exponent
vectors of its minimal generators (its "staircase").  Everything in this
module is exact integer combinatorics on those vectors: minimalization,
products and powers, colengths (= number of standard monomials), coordinate
primes, and localization lengths.

Colengths are computed on a bool grid over the box cut out by the least pure
powers: generator cells are marked and a cumulative OR is swept along each
axis, dilating the marks into the whole upward-closed region.  The cost is
O(d * box volume) regardless of how many (possibly redundant) generators are
supplied, which lets the higher-level fitting code work with raw, never
minimalized spanning sets of large powers and products.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyGenerators,
    NotMinimalPrime,
    NotPrimary,
    ScaleLimit,
    UnitIdeal,
    ZeroImage,
)

# Exponents and lattice boxes beyond these thresholds would risk silent
# integer / memory trouble, so they are rejected loudly instead.
_MAX_ENTRY = 1 << 40
_MAX_BOX = 200_000_000

# Rough element budget for the blocked pairwise comparisons below.
_BLOCK_ELEMS = 8_000_000


@dataclass(frozen=True)
class MonomialIdeal:
    """The ideal of k[x_1..x_d] generated by the monomials x^g for g in gens.

    ``gens`` is stored lexicographically sorted.  Instances built through
    :func:`ideal` (or the arithmetic helpers) carry the unique minimal
    generating set; constructing the dataclass directly skips
    minimalization, which every computation here tolerates but equality
    comparison does not.
    """

    dim: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch(f"need at least one variable, got dim={self.dim}")
        if not self.gens:
            raise EmptyGenerators("a monomial ideal needs at least one generator")
        rows = []
        for g in self.gens:
            row = tuple(int(e) for e in g)
            if len(row) != self.dim:
                raise DimensionMismatch(
                    f"generator {row} does not live in {self.dim} variables"
                )
            for e in row:
                if e < 0:
                    raise ValueError(f"negative exponent in generator {row}")
                if e > _MAX_ENTRY:
                    raise ScaleLimit(f"exponent {e} exceeds the safe bound 2**40")
            rows.append(row)
        object.__setattr__(self, "gens", tuple(sorted(rows)))

    # ---- conveniences -----------------------------------------------------

    @property
    def is_unit(self) -> bool:
        return self.gens[0] == (0,) * self.dim

    def contains(self, exponent) -> bool:
        """Whether x^exponent lies in the ideal (is above some generator)."""
        e = tuple(int(v) for v in exponent)
        if len(e) != self.dim:
            raise DimensionMismatch(f"exponent {e} does not live in dim {self.dim}")
        return any(all(gj <= ej for gj, ej in zip(g, e)) for g in self.gens)

    def array(self) -> np.ndarray:
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.dim)

    def __mul__(self, other):
        return product(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __pow__(self, n):
        return power(self, n)


@dataclass(frozen=True)
class CoordinatePrime:
    """The prime ideal (x_j : j in variables) of k[x_1..x_d], 0-based."""

    dim: int
    variables: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(sorted({int(v) for v in self.variables}))
        if not vs:
            raise ValueError("a coordinate prime needs at least one variable")
        if vs[0] < 0 or vs[-1] >= self.dim:
            raise DimensionMismatch(f"variables {vs} out of range for dim {self.dim}")
        object.__setattr__(self, "variables", vs)


@dataclass(frozen=True)
class QuotientRingSpec:
    """A quotient R/Q together with the Krull dimension its fits should use."""

    dim: int
    quotient: MonomialIdeal | None
    quotient_dim: int

    @classmethod
    def from_quotient(cls, quotient: MonomialIdeal | None, dim: int | None = None):
        if quotient is None:
            if dim is None:
                raise ValueError("dim is required when there is no quotient ideal")
            return cls(dim, None, dim)
        primes = minimal_primes(quotient)
        codim = min(len(p.variables) for p in primes)
        return cls(quotient.dim, quotient, quotient.dim - codim)


# ---------------------------------------------------------------------------
# construction


def minimalize(gens, dim: int) -> tuple[tuple[int, ...], ...]:
    """Reduce a generating set to the unique minimal antichain, lex sorted.

    Vectors are grouped by total degree.  A vector can only be divisible by
    one of strictly smaller degree, so each degree layer is tested against
    the minimal vectors kept so far and never against itself.
    """
    rows = []
    for g in gens:
        row = tuple(int(e) for e in g)
        if len(row) != dim:
            raise DimensionMismatch(f"generator {row} does not live in {dim} variables")
        for e in row:
            if e < 0:
                raise ValueError(f"negative exponent in generator {row}")
            if e > _MAX_ENTRY:
                raise ScaleLimit(f"exponent {e} exceeds the safe bound 2**40")
        rows.append(row)
    if not rows:
        raise EmptyGenerators("a monomial ideal needs at least one generator")

    arr = np.unique(np.array(rows, dtype=np.int64), axis=0)
    degrees = arr.sum(axis=1)
    kept = None
    for deg in np.unique(degrees):
        layer = arr[degrees == deg]
        if kept is not None:
            layer = layer[~_dominated(layer, kept)]
        if len(layer):
            kept = layer if kept is None else np.vstack([kept, layer])
    kept = kept[np.lexsort(kept.T[::-1])]
    return tuple(tuple(int(x) for x in row) for row in kept)


def ideal(dim: int, gens) -> MonomialIdeal:
    """Build an ideal from any generating set, minimalizing it first."""
    return MonomialIdeal(dim, minimalize(gens, dim))


def unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, ((0,) * dim,))


def maximal_ideal(dim: int) -> MonomialIdeal:
    """The homogeneous maximal ideal m = (x_1, .., x_d)."""
    rows = []
    for j in range(dim):
        row = [0] * dim
        row[j] = 1
        rows.append(tuple(row))
    return MonomialIdeal(dim, tuple(rows))


def _dominated(points: np.ndarray, against: np.ndarray) -> np.ndarray:
    """Boolean mask: points[i] is componentwise >= some row of against."""
    n, d = points.shape
    out = np.zeros(n, dtype=bool)
    step = max(1, _BLOCK_ELEMS // max(1, against.shape[0] * d))
    for i in range(0, n, step):
        blk = points[i : i + step]
        out[i : i + step] = (against[None, :, :] <= blk[:, None, :]).all(-1).any(1)
    return out


# ---------------------------------------------------------------------------
# arithmetic


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.dim != J.dim:
        raise DimensionMismatch(f"cannot multiply ideals in dims {I.dim} and {J.dim}")
    pts = _fold_points(I.array(), J.array(), None)
    return ideal(I.dim, pts.tolist())


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.dim != J.dim:
        raise DimensionMismatch(f"cannot add ideals in dims {I.dim} and {J.dim}")
    return ideal(I.dim, I.gens + J.gens)


@functools.lru_cache(maxsize=None)
def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n with minimal generators; binary powering keeps the chain short."""
    if n < 0:
        raise ValueError("negative power of an ideal")
    if n == 0:
        return unit_ideal(I.dim)
    if n == 1:
        return I
    half = power(I, n // 2)
    out = product(half, half)
    if n % 2:
        out = product(out, I)
    return out


def _fold_points(pts: np.ndarray, gens: np.ndarray, clip) -> np.ndarray:
    """Deduplicated Minkowski sum pts + gens, optionally clipped to a box.

    ``clip``, when given, is the vector of largest coordinates to keep;
    callers rely on the clipped set still generating the same ideal because
    the pure-power corner points never stick out of their own box.
    """
    d = pts.shape[1]
    step = max(1, _BLOCK_ELEMS // max(1, gens.shape[0] * d))
    pieces = []
    for i in range(0, len(pts), step):
        blk = (pts[i : i + step, None, :] + gens[None, :, :]).reshape(-1, d)
        if clip is not None:
            blk = blk[(blk <= clip).all(axis=1)]
        pieces.append(np.unique(blk, axis=0))
    if len(pieces) == 1:
        return pieces[0]
    return np.unique(np.vstack(pieces), axis=0)


# ---------------------------------------------------------------------------
# colengths


def _pure_power_bounds(I: MonomialIdeal) -> tuple[int, ...]:
    """B_j = least b with x_j^b in the generating set; NotPrimary if absent.

    Any monomial generating set contains every minimal generator, so for an
    m-primary ideal the least pure powers are always found by scanning.
    """
    if I.is_unit:
        return (0,) * I.dim
    bounds = [0] * I.dim
    for g in I.gens:
        support = [j for j, e in enumerate(g) if e]
        if len(support) == 1:
            j = support[0]
            if bounds[j] == 0 or g[j] < bounds[j]:
                bounds[j] = g[j]
    if any(b == 0 for b in bounds):
        missing = [j for j, b in enumerate(bounds) if b == 0]
        raise NotPrimary(f"no pure power of variable(s) {missing}: ideal is not m-primary")
    return tuple(bounds)


def is_m_primary(I: MonomialIdeal) -> bool:
    try:
        _pure_power_bounds(I)
    except NotPrimary:
        return False
    return True


def _count_outside(points: np.ndarray, bounds: tuple[int, ...]) -> int:
    """Lattice points of the box prod_j [0, bounds_j) not above any row.

    Rows sticking out of the box never dominate a box point and are dropped.
    The surviving cells are dilated upward by a cumulative OR along each
    axis, and the complement is counted.
    """
    size = 1
    for b in bounds:
        size *= int(b)
    if size > _MAX_BOX:
        raise ScaleLimit(f"lattice box of {size} cells is beyond the safe limit")
    if size == 0:
        return 0
    pts = points[(points < np.array(bounds, dtype=np.int64)).all(axis=1)]
    grid = np.zeros(bounds, dtype=bool)
    if len(pts):
        grid[tuple(pts.T)] = True
        for ax in range(len(bounds)):
            np.logical_or.accumulate(grid, axis=ax, out=grid)
    return int(grid.size - np.count_nonzero(grid))


@functools.lru_cache(maxsize=None)
def colength(I: MonomialIdeal) -> int:
    """dim_k R/I, the number of monomials outside the ideal."""
    bounds = _pure_power_bounds(I)
    return _count_outside(I.array(), bounds)


# Raw (deduplicated but never minimalized) spanning sets of powers.  The
# cache keeps the largest power seen per ideal, so ascending sequences of
# colength evaluations extend it instead of starting over.
_POWER_POINTS: dict[tuple, tuple[int, np.ndarray]] = {}


def raw_power_points(I: MonomialIdeal, n: int) -> np.ndarray:
    """Exponent vectors spanning I^n, clipped to the box prod [0, n*B_j].

    Clipping is safe: a discarded vector has some coordinate beyond n*B_j
    and is therefore divisible by the pure power x_j^(n*B_j), which stays in
    the set.  The returned array is read-only and shared.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    bounds = np.array(_pure_power_bounds(I), dtype=np.int64)
    key = (I.dim, I.gens)
    cached = _POWER_POINTS.get(key)
    if cached is not None and cached[0] <= n:
        k, pts = cached
    else:
        k, pts = 1, np.unique(I.array(), axis=0)
    gens = I.array()
    while k < n:
        k += 1
        pts = _fold_points(pts, gens, k * bounds)
    if cached is None or n > cached[0]:
        pts.flags.writeable = False
        _POWER_POINTS[key] = (n, pts)
    return pts


@functools.lru_cache(maxsize=None)
def product_colength(ideals: tuple[MonomialIdeal, ...], exps: tuple[int, ...]) -> int:
    """ℓ(R / prod_i I_i^{e_i}) for m-primary factors, without minimalizing."""
    if len(ideals) != len(exps):
        raise ValueError("one exponent per ideal, please")
    if not ideals:
        raise EmptyGenerators("empty product")
    dims = {I.dim for I in ideals}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(dims)}")
    active = [(I, int(e)) for I, e in zip(ideals, exps) if e > 0]
    for _, e in zip(ideals, exps):
        if e < 0:
            raise ValueError("negative exponent in product")
    if not active:
        return 0
    pts = None
    bounds = None
    for I, e in active:
        B = np.array(_pure_power_bounds(I), dtype=np.int64)
        if pts is None:
            pts = np.asarray(raw_power_points(I, e))
            bounds = e * B
        else:
            gens = I.array()
            for _ in range(e):
                bounds = bounds + B
                pts = _fold_points(pts, gens, bounds)
    return _count_outside(pts, tuple(int(b) for b in bounds))


def power_colength(I: MonomialIdeal, n: int) -> int:
    """ℓ(R/I^n), the Hilbert–Samuel length at exponent n."""
    return product_colength((I,), (n,))


@functools.lru_cache(maxsize=None)
def sum_power_colength(Q: MonomialIdeal | None, I: MonomialIdeal, n: int) -> int:
    """ℓ(R/(Q + I^n)); Q may be any monomial ideal (or None), I m-primary."""
    if Q is None:
        return power_colength(I, n)
    if Q.dim != I.dim:
        raise DimensionMismatch(f"cannot add ideals in dims {Q.dim} and {I.dim}")
    if Q.is_unit:
        return 0
    bounds = n * np.array(_pure_power_bounds(I), dtype=np.int64)
    for g in Q.gens:
        support = [j for j, e in enumerate(g) if e]
        if len(support) == 1 and g[support[0]] < bounds[support[0]]:
            bounds[support[0]] = g[support[0]]
    pts = np.vstack([np.asarray(raw_power_points(I, n)), Q.array()])
    return _count_outside(pts, tuple(int(b) for b in bounds))


# ---------------------------------------------------------------------------
# coordinate primes


def minimal_primes(Q: MonomialIdeal) -> tuple[CoordinatePrime, ...]:
    """Minimal coordinate primes over a monomial ideal.

    (x_j : j in S) contains Q exactly when S meets the support of every
    generator, so the minimal primes are the minimal hitting sets of the
    generator supports; for d <= 4 exhaustive search is plenty.
    """
    if Q.is_unit:
        raise UnitIdeal("the unit ideal has no minimal primes")
    supports = [frozenset(j for j, e in enumerate(g) if e) for g in Q.gens]
    found: list[frozenset] = []
    for size in range(1, Q.dim + 1):
        for combo in itertools.combinations(range(Q.dim), size):
            S = frozenset(combo)
            if any(f <= S for f in found):
                continue
            if all(S & sup for sup in supports):
                found.append(S)
    found.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(CoordinatePrime(Q.dim, tuple(sorted(S))) for S in found)


def local_length_at(Q: MonomialIdeal, P: CoordinatePrime) -> int:
    """Length of R_P / Q R_P at a minimal prime P of Q.

    Inverting the variables outside P replaces each generator by its
    restriction to the P-coordinates; minimality of P makes the restricted
    ideal primary to the maximal ideal of the local ring, so the length is
    a finite colength in len(P.variables) variables.
    """
    if P.dim != Q.dim:
        raise DimensionMismatch(f"prime in dim {P.dim}, ideal in dim {Q.dim}")
    if P not in minimal_primes(Q):
        raise NotMinimalPrime(f"{P.variables} is not a minimal prime of the ideal")
    proj = ideal(len(P.variables), [tuple(g[j] for j in P.variables) for g in Q.gens])
    return colength(proj)


def restrict_to_prime(I: MonomialIdeal, P: CoordinatePrime) -> MonomialIdeal:
    """Image of I in R/P, a polynomial ring in the complementary variables.

    Generators whose support meets P map to zero and are dropped.
    """
    if P.dim != I.dim:
        raise DimensionMismatch(f"prime in dim {P.dim}, ideal in dim {I.dim}")
    pvars = set(P.variables)
    keep = [j for j in range(I.dim) if j not in pvars]
    if not keep:
        raise DimensionMismatch("P is the maximal ideal; R/P has no variables left")
    rows = [tuple(g[j] for j in keep) for g in I.gens if all(g[v] == 0 for v in pvars)]
    if not rows:
        raise ZeroImage("every generator of the ideal dies in R/P")
    return ideal(len(keep), rows)


def eliminate_variable(I: MonomialIdeal, j: int) -> MonomialIdeal:
    """Image of I under x_j -> 1, an ideal in one fewer variable."""
    if not 0 <= j < I.dim:
        raise DimensionMismatch(f"variable {j} out of range for dim {I.dim}")
    if I.dim == 1:
        raise DimensionMismatch("cannot eliminate the only variable")
    return ideal(I.dim - 1, [g[:j] + g[j + 1 :] for g in I.gens])
