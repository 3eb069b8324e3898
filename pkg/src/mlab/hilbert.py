"""Multiplicities from length sequences, verified against lattice volumes.

The normalized leading coefficient of n -> length(R/I^n) (degree d, the
ambient dimension) is the multiplicity; the complement volume of the Newton
polyhedron computes the same number geometrically.  Every public quantity
here is produced along both routes and compared exactly, so a bug in either
the combinatorics or the geometry surfaces as an IdentityViolation instead
of a wrong answer.

Fits are exact: a window of degree+1 consecutive lengths determines a
candidate polynomial by Lagrange interpolation over the rationals, the next
degree+1 values must reproduce exactly, and on failure the window base is
doubled (sequences of monomial ideals settle quickly in practice; the cap
exists for honesty, not because it is reached).
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ._poly import eval_multi, interp_1d, poly_eval, tensor_interpolate
from .errors import (
    DimensionMismatch,
    IdentityViolation,
    IntegralityError,
    NotPrimary,
    NotStabilized,
    WrongDimension,
)
from .monomials import (
    MonomialIdeal,
    QuotientRingSpec,
    colength,
    is_m_primary,
    maximal_ideal,
    power_colength,
    product_colength,
    sum_power_colength,
)
from .newton import covolume, minkowski_covolume_value, mixed_covolume, weighted_covolume_coefficients

_BASE_CAP = 64


@dataclass(frozen=True)
class LengthSequence:
    """Consecutive values of a length function, starting at ``base``."""

    base: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.base < 1:
            raise ValueError("length sequences start at exponent >= 1")
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("lengths are nonnegative")
        if any(b > a for a, b in zip(vals[1:], vals)):
            raise ValueError("length sequences of powers are nondecreasing")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class HilbertPolynomial:
    """An exact polynomial fit, remembering where it started validating."""

    arity: int
    coefficients: tuple[tuple[tuple[int, ...], Fraction], ...]
    stabilization_base: int

    @classmethod
    def from_dict(cls, arity, coeffs, base):
        items = tuple(sorted((tuple(k), Fraction(v)) for k, v in coeffs.items() if v != 0))
        return cls(arity, items, base)

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.coefficients)

    def evaluate(self, point) -> Fraction:
        if isinstance(point, int):
            point = (point,)
        if len(point) != self.arity:
            raise ValueError(f"expected {self.arity} coordinates")
        return eval_multi(self.as_dict(), point)

    def degree(self) -> int:
        return max((sum(k) for k, _ in self.coefficients), default=0)

    def leading_coefficient(self, degree: int) -> Fraction:
        """Coefficient of n^degree for univariate fits."""
        if self.arity != 1:
            raise ValueError("leading_coefficient is for univariate fits")
        return self.as_dict().get((degree,), Fraction(0))


@dataclass(frozen=True)
class MultiplicityResult:
    value: int
    path_fit: int
    path_polyhedral: int
    agree: bool


@dataclass(frozen=True)
class MixedMultiplicityTable:
    """All mixed multiplicities e(v), |v| = dim, of a tuple of ideals."""

    dim: int
    arity: int
    entries: tuple[tuple[tuple[int, ...], int], ...]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.entries)

    def entry(self, v: tuple[int, ...]) -> int:
        v = tuple(int(x) for x in v)
        if len(v) != self.arity or sum(v) != self.dim or any(x < 0 for x in v):
            raise ValueError(f"{v} is not a valid mixed index for dim {self.dim}")
        return self.as_dict()[v]


def _as_int(x: Fraction, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise IntegralityError(f"{what} should be an integer, got {x}")
    return int(x)


# ---------------------------------------------------------------------------
# exact univariate fitting


def hs_sequence(I: MonomialIdeal, base: int = 1, count: int | None = None) -> LengthSequence:
    """Lengths of R/I^n for n = base .. base+count-1."""
    if count is None:
        count = 2 * I.dim + 2
    if count < 1:
        raise ValueError("need at least one term")
    return LengthSequence(base, tuple(power_colength(I, n) for n in range(base, base + count)))


def fit_univariate(seq: LengthSequence, degree: int) -> HilbertPolynomial:
    """Fit a polynomial of the given degree to the window, validate the rest.

    The first degree+1 values pin down the candidate; every remaining value
    must match exactly, otherwise NotStabilized.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if len(seq) < degree + 2:
        raise ValueError(f"need at least {degree + 2} values to fit and validate")
    xs = list(range(seq.base, seq.base + degree + 1))
    coeffs = interp_1d(xs, seq.values[: degree + 1])
    for i in range(degree + 1, len(seq)):
        n = seq.base + i
        if poly_eval(coeffs, n) != seq.values[i]:
            raise NotStabilized(
                f"window at base {seq.base} fails validation at n={n}"
            )
    return HilbertPolynomial.from_dict(
        1, {(k,): c for k, c in enumerate(coeffs)}, seq.base
    )


def _stable_fit(
    values_at: Callable[[int], int],
    degree: int,
    cap: int = _BASE_CAP,
    probe_degree: int | None = None,
    accept: Callable[[HilbertPolynomial], bool] | None = None,
) -> HilbertPolynomial:
    """Doubling-base driver around fit_univariate.

    A window can match a polynomial that is not yet the asymptotic one; the
    optional ``accept`` predicate (e.g. "the normalized leading coefficient
    is a nonnegative integer") rejects such fits and forces a larger base.
    When the cap is exhausted and probe_degree is given, a higher-degree fit
    is attempted once to distinguish "not yet polynomial" from "polynomial
    of the wrong degree" (WrongDimension).
    """
    count = 2 * degree + 2
    base = 1
    while base <= cap:
        vals = tuple(values_at(n) for n in range(base, base + count))
        try:
            poly = fit_univariate(LengthSequence(base, vals), degree)
        except NotStabilized:
            base *= 2
            continue
        if accept is None or accept(poly):
            return poly
        base *= 2
    if probe_degree is not None and probe_degree > degree:
        probe_count = 2 * probe_degree + 2
        vals = tuple(values_at(n) for n in range(cap, cap + probe_count))
        try:
            big = fit_univariate(LengthSequence(cap, vals), probe_degree)
        except NotStabilized:
            big = None
        if big is not None and big.degree() > degree:
            raise WrongDimension(
                f"sequence grows with degree {big.degree()}, expected {degree}"
            )
    raise NotStabilized(f"no polynomial of degree {degree} within base cap {cap}")


# ---------------------------------------------------------------------------
# multiplicities


def _integral_leading(degree: int) -> Callable[[HilbertPolynomial], bool]:
    """Acceptance test: degree!-normalized leading coefficient in Z, >= 0."""
    fac = math.factorial(degree)

    def ok(poly: HilbertPolynomial) -> bool:
        c = poly.leading_coefficient(degree) * fac
        return c.denominator == 1 and c >= 0

    return ok


def multiplicity_fit(I: MonomialIdeal) -> int:
    """e(I) from the length sequence alone."""
    if not is_m_primary(I):
        raise NotPrimary("ideal is not m-primary")
    d = I.dim
    poly = _stable_fit(lambda n: power_colength(I, n), d, accept=_integral_leading(d))
    e = _as_int(poly.leading_coefficient(d) * math.factorial(d), "multiplicity")
    if e < 0:
        raise IntegralityError(f"negative multiplicity {e}")
    return e


def multiplicity_polyhedral(I: MonomialIdeal) -> int:
    """e(I) from the complement volume of the Newton polyhedron alone."""
    e = _as_int(covolume(I) * math.factorial(I.dim), "multiplicity")
    if e < 0:
        raise IntegralityError(f"negative multiplicity {e}")
    return e


@functools.lru_cache(maxsize=None)
def multiplicity(I: MonomialIdeal) -> MultiplicityResult:
    """e(I) along both routes; IdentityViolation if they ever disagree."""
    fit = multiplicity_fit(I)
    poly = multiplicity_polyhedral(I)
    if fit != poly:
        raise IdentityViolation(
            "multiplicity paths disagree",
            {"fit": fit, "polyhedral": poly, "gens": I.gens, "dim": I.dim},
        )
    return MultiplicityResult(fit, fit, poly, True)


def product_multiplicity(
    ideals: tuple[MonomialIdeal, ...], exps: tuple[int, ...]
) -> MultiplicityResult:
    """e(prod I_i^{e_i}) along both routes, without minimalizing the product.

    The fit route scales the exponent vector; the geometric route is the
    covolume of the weighted Minkowski sum of the polyhedra.
    """
    if len(ideals) != len(exps) or not ideals:
        raise ValueError("one exponent per ideal, please")
    if any(e < 0 for e in exps):
        raise ValueError("negative exponent in product")
    active = tuple((I, e) for I, e in zip(ideals, exps) if e > 0)
    if not active:
        res = MultiplicityResult(0, 0, 0, True)
        return res
    for I, _ in active:
        if not is_m_primary(I):
            raise NotPrimary("ideal is not m-primary")
    d = active[0][0].dim
    acts = tuple(I for I, _ in active)
    aexp = tuple(e for _, e in active)
    poly = _stable_fit(
        lambda n: product_colength(acts, tuple(n * e for e in aexp)),
        d,
        accept=_integral_leading(d),
    )
    fit = _as_int(poly.leading_coefficient(d) * math.factorial(d), "multiplicity")
    geo = _as_int(
        minkowski_covolume_value(acts, aexp) * math.factorial(d), "multiplicity"
    )
    if fit != geo:
        raise IdentityViolation(
            "product multiplicity paths disagree",
            {
                "fit": fit,
                "polyhedral": geo,
                "gens": tuple(I.gens for I in acts),
                "exps": aexp,
            },
        )
    return MultiplicityResult(fit, fit, geo, True)


@functools.lru_cache(maxsize=None)
def multiplicity_quotient(Q: MonomialIdeal | None, I: MonomialIdeal) -> int:
    """Multiplicity of I acting on R/Q (the ambient ring when Q is None).

    The fit degree is the Krull dimension of R/Q; a zero-dimensional
    quotient yields the eventual constant length.
    """
    if Q is None:
        return multiplicity(I).value
    if Q.dim != I.dim:
        raise DimensionMismatch(f"quotient in dim {Q.dim}, ideal in dim {I.dim}")
    if not is_m_primary(I):
        raise NotPrimary("ideal is not m-primary")
    spec = QuotientRingSpec.from_quotient(Q)
    D = spec.quotient_dim
    poly = _stable_fit(
        lambda n: sum_power_colength(Q, I, n),
        D,
        probe_degree=I.dim,
        accept=_integral_leading(D),
    )
    e = _as_int(poly.leading_coefficient(D) * math.factorial(D), "multiplicity")
    if e < 0:
        raise IntegralityError(f"negative multiplicity {e}")
    return e


# ---------------------------------------------------------------------------
# mixed multiplicities


def _fit_mixed_table(ideals: tuple[MonomialIdeal, ...]) -> dict[tuple[int, ...], int]:
    """e(v) for |v| = d from an exact multigraded interpolation of lengths.

    lengths of R/(I_1^{n_1} ... I_r^{n_r}) agree with a polynomial of degree
    <= d in each variable once all n_i are large; a (d+1)^r product grid
    pins it down and the corner-extended points validate it.
    """
    r = len(ideals)
    d = ideals[0].dim
    base = 1
    while base <= _BASE_CAP:
        axes = [list(range(base, base + d + 1))] * r
        values = {
            pt: product_colength(ideals, pt) for pt in itertools.product(*axes)
        }
        coeffs = tensor_interpolate(axes, values)
        checks = [tuple(base + d + 1 for _ in range(r))]
        for i in range(r):
            pt = [base] * r
            pt[i] = base + d + 1
            checks.append(tuple(pt))
        ok = all(
            eval_multi(coeffs, pt) == product_colength(ideals, pt) for pt in checks
        )
        if ok:
            # a window can validate against a pre-asymptotic polynomial;
            # fractional or negative top coefficients expose that, in which
            # case the base doubles like any other failed stabilization
            table = {}
            stable = True
            for v, c in coeffs.items():
                if sum(v) == d:
                    fac = 1
                    for x in v:
                        fac *= math.factorial(x)
                    e = c * fac
                    if e.denominator != 1 or e < 0:
                        stable = False
                        break
                    table[v] = int(e)
            if stable:
                # every index with |v| = d appears, possibly with coefficient 0
                for v in itertools.product(range(d + 1), repeat=r):
                    if sum(v) == d:
                        table.setdefault(v, 0)
                return table
        base *= 2
    raise NotStabilized(f"mixed lengths not polynomial within base cap {_BASE_CAP}")


@functools.lru_cache(maxsize=None)
def mixed_multiplicities(ideals: tuple[MonomialIdeal, ...]) -> MixedMultiplicityTable:
    """The table of mixed multiplicities along both routes, compared exactly."""
    r = len(ideals)
    if not 1 <= r <= 3:
        raise ValueError("mixed multiplicities support 1 to 3 ideals")
    dims = {I.dim for I in ideals}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(dims)}")
    d = dims.pop()
    for I in ideals:
        if not is_m_primary(I):
            raise NotPrimary("ideal is not m-primary")
    fit_table = _fit_mixed_table(ideals)
    cov = mixed_covolume(ideals)
    geo_table = {}
    for v in fit_table:
        fac = 1
        for x in v:
            fac *= math.factorial(x)
        geo_table[v] = _as_int(cov.get(v, Fraction(0)) * fac, f"mixed multiplicity e{v}")
    if fit_table != geo_table:
        raise IdentityViolation(
            "mixed multiplicity paths disagree",
            {
                "fit": sorted(fit_table.items()),
                "polyhedral": sorted(geo_table.items()),
                "gens": tuple(I.gens for I in ideals),
            },
        )
    for v, e in fit_table.items():
        if e < 0:
            raise IntegralityError(f"negative mixed multiplicity e{v} = {e}")
    return MixedMultiplicityTable(d, r, tuple(sorted(fit_table.items())))


def check_mixed_expansion(
    ideals: tuple[MonomialIdeal, ...], samples: tuple[tuple[int, ...], ...]
) -> bool:
    """e(prod I_i^{n_i}) = sum_v multinomial(d; v) e(v) n^v at the samples."""
    table = mixed_multiplicities(ideals)
    d = table.dim
    for n in samples:
        if len(n) != table.arity or any(x < 1 for x in n):
            raise ValueError(f"bad sample exponents {n}")
        lhs = product_multiplicity(ideals, tuple(n)).value
        rhs = 0
        for v, e in table.entries:
            coef = math.factorial(d)
            for x in v:
                coef //= math.factorial(x)
            term = coef * e
            for x, k in zip(n, v):
                term *= x**k
            rhs += term
        if lhs != rhs:
            return False
    return True


def check_multilinearity(
    I: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal | None = None
) -> bool:
    """e(IJ; K^[d-1]) = e(I; K^[d-1]) + e(J; K^[d-1]).

    The left side comes from the weighted covolume of NP(I) + NP(J) + NP(K)
    with the first two slots sharing a weight (the polyhedron of a product
    is the Minkowski sum, so the product ideal itself is never formed).
    """
    d = I.dim
    if K is None:
        K = maximal_ideal(d)
    if J.dim != d or K.dim != d:
        raise DimensionMismatch("multilinearity needs ideals in one ring")
    vmix = (1, d - 1)
    coeffs = weighted_covolume_coefficients((I, J, K), (0, 0, 1), 2)
    fac = math.factorial(d - 1)
    lhs = _as_int(coeffs.get(vmix, Fraction(0)) * fac, "mixed multiplicity")
    rhs = mixed_multiplicities((I, K)).entry(vmix) + mixed_multiplicities((J, K)).entry(vmix)
    return lhs == rhs
