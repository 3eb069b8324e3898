"""Rees valuations, degree functions, and the valuative view of closures.

For an m-primary monomial ideal the Rees valuations are the monomial
valuations attached to the bounded facets of the Newton polyhedron: facet
normal w gives v(x^a) = <w, a>, and v(I) is the facet offset.  Their
multiplicities d_i are the lattice volumes of the facets.  Three classical
identities tie this data to length computations, and everything here checks
them rather than assuming them:

  * sum_i d_i * w_i[j]   =  multiplicity of I on R/(x_j), for every j;
  * sum_i offset_i * d_i =  e(I);
  * the integral closure of I^n is exactly the set of monomials with
    v_i >= n * v_i(I) for every i, with no valuation redundant.

The degree function d_I(x^a) is likewise computed along three independent
routes (coordinate decomposition, direct length fit, valuation sum) and the
routes are compared instead of trusted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IdentityViolation, IntegralityError, ScaleLimit, UnitIdeal
from .hilbert import _integral_leading, _stable_fit, multiplicity, multiplicity_quotient
from .monomials import (
    MonomialIdeal,
    _MAX_BOX,
    _pure_power_bounds,
    ideal,
    is_m_primary,
    sum_power_colength,
)
from .newton import build_polyhedron, facet_lattice_volume, integral_closure_power

import math

# Irredundancy witnesses are searched up to this level; closures themselves
# are compared level by level up to the caller's n_max.
_WITNESS_LEVEL_CAP = 12


@dataclass(frozen=True)
class ReesValuation:
    """The monomial valuation v(x^a) = <normal, a>, with v(I) = offset."""

    normal: tuple[int, ...]
    offset: int

    def of(self, exponent) -> int:
        if len(exponent) != len(self.normal):
            raise DimensionMismatch(f"exponent {exponent} has the wrong arity")
        return sum(w * int(a) for w, a in zip(self.normal, exponent))


@dataclass(frozen=True)
class ReesSystem:
    dim: int
    valuations: tuple[ReesValuation, ...]
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class DegreeFunctionReport:
    value_coordinate: int
    value_direct: int
    value_valuation: int
    agree: bool

    @property
    def value(self) -> int:
        return self.value_direct


@dataclass(frozen=True)
class ValuationWitness:
    normal: tuple[int, ...]
    found: bool
    level: int | None
    exponent: tuple[int, ...] | None


@dataclass(frozen=True)
class ValuativeReport:
    levels: int
    closures_match: bool
    witnesses: tuple[ValuationWitness, ...]
    ok: bool


def valuation_of_monomial(v: ReesValuation, exponent) -> int:
    return v.of(exponent)


def rees_valuations(I: MonomialIdeal) -> tuple[ReesValuation, ...]:
    """The Rees valuations of a proper m-primary ideal, facet by facet."""
    if I.is_unit:
        raise UnitIdeal("the unit ideal has no Rees valuations")
    P = build_polyhedron(I)
    return tuple(ReesValuation(f.normal, f.offset) for f in P.bounded_facets())


@functools.lru_cache(maxsize=None)
def rees_coefficients(I: MonomialIdeal) -> ReesSystem:
    """Valuations with their multiplicities d_i, cross-checked against lengths.

    The d_i are facet lattice volumes; before returning they must reproduce
    the coordinate-hyperplane multiplicities and e(I) exactly.
    """
    if I.is_unit:
        raise UnitIdeal("the unit ideal has no Rees valuations")
    P = build_polyhedron(I)
    bounded = P.bounded_facets()
    vals = tuple(ReesValuation(f.normal, f.offset) for f in bounded)
    ds = tuple(facet_lattice_volume(f) for f in bounded)
    if any(d < 1 for d in ds):
        raise IntegralityError(f"facet volumes must be positive, got {ds}")
    dim = I.dim
    for j in range(dim):
        lhs = sum(d * v.normal[j] for v, d in zip(vals, ds))
        row = tuple(1 if i == j else 0 for i in range(dim))
        rhs = multiplicity_quotient(MonomialIdeal(dim, (row,)), I)
        if lhs != rhs:
            raise IdentityViolation(
                "valuation data disagrees with a coordinate-hyperplane multiplicity",
                {"variable": j, "valuation_sum": lhs, "length_fit": rhs, "gens": I.gens},
            )
    lhs = sum(v.offset * d for v, d in zip(vals, ds))
    rhs = multiplicity(I).value
    if lhs != rhs:
        raise IdentityViolation(
            "sum of offset * d over the valuations misses the multiplicity",
            {"valuation_sum": lhs, "multiplicity": rhs, "gens": I.gens},
        )
    return ReesSystem(dim, vals, ds)


# ---------------------------------------------------------------------------
# degree functions


def degree_function(I: MonomialIdeal, exponent) -> DegreeFunctionReport:
    """d_I(x^a) along three independent routes.

    value_coordinate  sum_j a_j * e(I; R/(x_j))   (degree is additive and
                      each variable contributes its hyperplane multiplicity)
    value_direct      normalized leading coefficient of the degree-(d-1)
                      polynomial n -> length(R/((x^a) + I^n))
    value_valuation   sum_i d_i * v_i(x^a)
    """
    a = tuple(int(x) for x in exponent)
    if len(a) != I.dim:
        raise DimensionMismatch(f"exponent {a} does not live in dim {I.dim}")
    if any(x < 0 for x in a):
        raise ValueError(f"negative exponent {a}")
    d = I.dim

    by_coord = 0
    for j, aj in enumerate(a):
        if aj:
            row = tuple(1 if i == j else 0 for i in range(d))
            by_coord += aj * multiplicity_quotient(MonomialIdeal(d, (row,)), I)

    Qa = MonomialIdeal(d, (a,))
    poly = _stable_fit(
        lambda n: sum_power_colength(Qa, I, n), d - 1, accept=_integral_leading(d - 1)
    )
    direct = poly.leading_coefficient(d - 1) * math.factorial(d - 1)
    if direct.denominator != 1 or direct < 0:
        raise IntegralityError(f"degree function value {direct} is not a nonnegative integer")
    direct = int(direct)

    system = rees_coefficients(I)
    by_val = sum(
        dcoef * v.of(a) for v, dcoef in zip(system.valuations, system.coefficients)
    )

    agree = by_coord == direct == by_val
    return DegreeFunctionReport(by_coord, direct, by_val, agree)


# ---------------------------------------------------------------------------
# valuative description of integral closures


def _ideal_from_inequalities(dim, constraints, box) -> MonomialIdeal:
    """Minimal generators of {a >= 0 : <w, a> >= t for all (w, t)} in a box.

    The box must contain every minimal generator; callers pass the
    pure-power box n*B, which always suffices.  This is a deliberately
    separate enumeration from the closure grid (full scan + antichain
    reduction), so the two can disagree if either is wrong.
    """
    shape = tuple(int(b) + 1 for b in box)
    size = 1
    for s in shape:
        size *= s
    if size > _MAX_BOX:
        raise ScaleLimit(f"valuation grid of {size} cells is beyond the safe limit")
    pts = np.indices(shape, dtype=np.int64).reshape(dim, -1).T
    mask = np.ones(len(pts), dtype=bool)
    for w, thr in constraints:
        mask &= pts @ np.array(w, dtype=np.int64) >= thr
    return ideal(dim, pts[mask])


def verify_valuative_representation(I: MonomialIdeal, n_max: int = 3) -> ValuativeReport:
    """Check closure(I^n) = {v_i >= n v_i(I)} for n <= n_max, plus witnesses.

    Irredundancy of valuation i is certified by a monomial satisfying every
    other valuation's bound at some level but violating i's; it suffices to
    scan the minimal generators of the relaxed ideal, since shrinking a
    violating monomial preserves the violation.
    """
    if I.is_unit:
        raise UnitIdeal("the unit ideal has no Rees valuations")
    if n_max < 1:
        raise ValueError("need at least one closure level")
    system = rees_coefficients(I)
    vals = system.valuations
    B = _pure_power_bounds(I)
    dim = I.dim

    closures_match = True
    for n in range(1, n_max + 1):
        geometric = integral_closure_power(I, n)
        cons = [(v.normal, n * v.offset) for v in vals]
        enumerated = _ideal_from_inequalities(dim, cons, tuple(n * b for b in B))
        if geometric != enumerated:
            closures_match = False
            break

    witnesses = []
    for i, vi in enumerate(vals):
        found = None
        for n in range(1, _WITNESS_LEVEL_CAP + 1):
            cons = [(v.normal, n * v.offset) for k, v in enumerate(vals) if k != i]
            relaxed = _ideal_from_inequalities(dim, cons, tuple(n * b for b in B))
            for g in relaxed.gens:
                if vi.of(g) < n * vi.offset:
                    found = (n, g)
                    break
            if found:
                break
        witnesses.append(
            ValuationWitness(
                vi.normal,
                found is not None,
                found[0] if found else None,
                found[1] if found else None,
            )
        )

    ok = closures_match and all(w.found for w in witnesses)
    return ValuativeReport(n_max, closures_match, tuple(witnesses), ok)
