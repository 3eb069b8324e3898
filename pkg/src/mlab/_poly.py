"""Exact polynomial interpolation over the rationals.

Small helpers shared by the fitting code: everything returns Fractions, no
floating point anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def interp_1d(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Ascending coefficients of the unique polynomial through (xs, ys).

    Lagrange expansion; len(xs) is tiny here (at most degree 5), so the
    quadratic cost is irrelevant.
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("xs and ys must have the same length")
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    coeffs = [Fraction(0)] * n
    for i in range(n):
        num = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul(num, [Fraction(-xs[j]), Fraction(1)])
            denom *= xs[i] - xs[j]
        weight = Fraction(ys[i]) / denom
        for k in range(len(num)):
            coeffs[k] += num[k] * weight
    return coeffs


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    """Horner evaluation of ascending coefficients at x."""
    total = Fraction(0)
    for c in reversed(list(coeffs)):
        total = total * x + c
    return total


def tensor_interpolate(
    axes: Sequence[Sequence[int]], values: Mapping[tuple, object]
) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of the multivariate polynomial through a product grid.

    ``axes[i]`` lists the sample coordinates along variable i and ``values``
    maps each point of the product grid to its sample.  One axis is peeled
    off at a time: along that axis every slice is a univariate interpolation
    whose coefficients become the new "values".  Zero coefficients are
    dropped from the result.
    """
    work: dict[tuple, Fraction] = {
        tuple(pt): Fraction(values[tuple(pt)]) for pt in itertools.product(*axes)
    }
    for ax in range(len(axes)):
        xs = list(axes[ax])
        pos = {x: i for i, x in enumerate(xs)}
        groups: dict[tuple, list] = {}
        for key, val in work.items():
            rest = key[:ax] + key[ax + 1 :]
            groups.setdefault(rest, [None] * len(xs))[pos[key[ax]]] = val
        work = {}
        for rest, ys in groups.items():
            for k, c in enumerate(interp_1d(xs, ys)):
                work[rest[:ax] + (k,) + rest[ax:]] = c
    return {k: v for k, v in work.items() if v != 0}


def eval_multi(coeffs: Mapping[tuple[int, ...], Fraction], point: Sequence) -> Fraction:
    total = Fraction(0)
    for exps, c in coeffs.items():
        term = Fraction(c)
        for e, x in zip(exps, point):
            term *= Fraction(x) ** e
        total += term
    return total
