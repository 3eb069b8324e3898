"""Shared strategies and slow-but-obviously-correct oracles.

The oracles here are deliberately naive (explicit loops over lattice boxes,
no numpy, no clever pruning) so that agreement with the library is evidence
rather than tautology.
"""

import itertools

from hypothesis import strategies as st

from mlab import ideal


def naive_pure_bounds(dim, gens):
    B = [None] * dim
    for g in gens:
        support = [j for j, e in enumerate(g) if e]
        if len(support) == 1:
            j = support[0]
            if B[j] is None or g[j] < B[j]:
                B[j] = g[j]
    assert all(b is not None for b in B), "oracle needs an m-primary ideal"
    return B


def naive_member(p, gens):
    return any(all(p[j] >= g[j] for j in range(len(p))) for g in gens)


def naive_colength(dim, gens):
    """Count monomials outside the ideal by walking the pure-power box."""
    B = naive_pure_bounds(dim, gens)
    return sum(
        1
        for p in itertools.product(*[range(b) for b in B])
        if not naive_member(p, gens)
    )


def naive_minimalize(gens):
    gens = sorted(set(map(tuple, gens)))
    out = []
    for g in gens:
        if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in gens):
            out.append(g)
    return out


def naive_power_points(gens, n):
    """All n-fold sums of generators: a spanning set of the n-th power."""
    sums = set()
    for combo in itertools.combinations_with_replacement(gens, n):
        sums.add(tuple(sum(col) for col in zip(*combo)))
    return sorted(sums)


@st.composite
def primary_ideals(draw, dim, max_exp=4, max_extras=3):
    """Random m-primary monomial ideals with small exponents."""
    gens = []
    for j in range(dim):
        b = draw(st.integers(min_value=1, max_value=max_exp))
        gens.append(tuple(b if i == j else 0 for i in range(dim)))
    extras = draw(
        st.lists(
            st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * dim),
            max_size=max_extras,
        )
    )
    gens.extend(row for row in extras if any(row))
    return ideal(dim, gens)
