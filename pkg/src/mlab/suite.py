"""Randomized cross-verification of every identity the library computes.

Each trial draws random ideals from a seeded generator and checks that
independently implemented routes to the same number actually agree: length
fits against lattice geometry, valuation data against coordinate
multiplicities, closures against valuation inequalities, mixed tables
against product expansions, and the quadratic inequalities that constrain
them.  A report is deterministic for a fixed seed: the body contains no
wall-clock data, so two runs with the same configuration are byte-identical.

Set MLAB_THREADS to parallelize trials; results are aggregated by trial
index, so threading never changes the report body.
"""

from __future__ import annotations

import concurrent.futures
import os
import random
import time
from dataclasses import dataclass

from .errors import MlabError, SchemaError
from .hilbert import (
    check_mixed_expansion,
    check_multilinearity,
    mixed_multiplicities,
    multiplicity,
    multiplicity_quotient,
)
from .monomials import (
    MonomialIdeal,
    ideal,
    local_length_at,
    minimal_primes,
    restrict_to_prime,
)
from .newton import integral_closure_power, polyhedra_equal
from .rees import degree_function, rees_coefficients, verify_valuative_representation

DEFAULT_TRIALS = {1: 50, 2: 50, 3: 25, 4: 5}
DEFAULT_MAX_EXPONENT = {1: 6, 2: 6, 3: 4, 4: 3}

# Expansion identities are spot-checked at these exponent vectors.
_EXPANSION_SAMPLES = ((1, 1), (2, 1), (1, 2))

_ELEMENTS_PER_TRIAL = 10


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 1
    dims: tuple[int, ...] = (1, 2, 3)
    trials: int | None = None
    max_exponent: int | None = None
    n_max: int = 3

    def __post_init__(self):
        if not set(self.dims) <= {1, 2, 3, 4}:
            raise SchemaError(f"dims must lie in 1..4, got {self.dims}", field="dims")
        if self.trials is not None and self.trials < 0:
            raise SchemaError("trials must be nonnegative", field="trials")
        if self.max_exponent is not None and self.max_exponent < 1:
            raise SchemaError("max_exponent must be positive", field="max_exponent")
        if self.n_max < 1:
            raise SchemaError("n_max must be at least 1", field="n_max")

    def trials_for(self, dim: int) -> int:
        if self.trials is not None:
            return self.trials
        return DEFAULT_TRIALS.get(dim, 5)

    def max_exponent_for(self, dim: int) -> int:
        if self.max_exponent is not None:
            return self.max_exponent
        return DEFAULT_MAX_EXPONENT.get(dim, 3)


@dataclass(frozen=True)
class CheckStats:
    name: str
    dim: int
    trials: int
    passed: int
    failed: int
    counterexamples: tuple[str, ...]


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    dims: tuple[int, ...]
    trials: tuple[tuple[int, int], ...]
    checks: tuple[CheckStats, ...]
    ok: bool
    timings: tuple[tuple[str, float], ...] = ()

    def to_dict(self) -> dict:
        """Report body; deliberately excludes timings so runs compare equal."""
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "trials": {str(d): n for d, n in self.trials},
            "checks": [
                {
                    "name": c.name,
                    "dim": c.dim,
                    "trials": c.trials,
                    "passed": c.passed,
                    "failed": c.failed,
                    "counterexamples": list(c.counterexamples),
                }
                for c in self.checks
            ],
            "ok": self.ok,
        }


@dataclass(frozen=True)
class TrialData:
    dim: int
    index: int
    subseed: int
    I: MonomialIdeal
    J: MonomialIdeal
    Q: MonomialIdeal | None
    elements: tuple[tuple[int, ...], ...]


def _subseed(seed: int, dim: int, t: int) -> int:
    return seed * 1_000_003 + dim * 10_007 + t


def random_ideal(dim: int, rng: random.Random, max_exponent: int) -> MonomialIdeal:
    """A random m-primary ideal: pure powers plus a few extra monomials."""
    gens = []
    for j in range(dim):
        b = rng.randint(1, max_exponent)
        gens.append(tuple(b if i == j else 0 for i in range(dim)))
    for _ in range(rng.randint(0, 2 * dim)):
        row = tuple(rng.randint(0, max_exponent) for _ in range(dim))
        if any(row):
            gens.append(row)
    return ideal(dim, gens)


def random_quotient(dim: int, rng: random.Random) -> MonomialIdeal:
    """A random proper monomial ideal with small squarefree-ish generators."""
    gens = []
    for _ in range(rng.randint(1, max(1, dim))):
        row = [0] * dim
        for v in rng.sample(range(dim), rng.randint(1, min(2, dim))):
            row[v] = 2 if rng.random() < 0.2 else 1
        gens.append(tuple(row))
    return ideal(dim, gens)


def _draw_trial(config: SuiteConfig, dim: int, t: int) -> TrialData:
    # All draws happen up front so the trial's inputs do not depend on which
    # checks are enabled.
    sub = _subseed(config.seed, dim, t)
    rng = random.Random(sub)
    mx = config.max_exponent_for(dim)
    I = random_ideal(dim, rng, mx)
    J = random_ideal(dim, rng, mx)
    Q = random_quotient(dim, rng)
    elements = tuple(
        tuple(rng.randint(0, mx) for _ in range(dim)) for _ in range(_ELEMENTS_PER_TRIAL)
    )
    return TrialData(dim, t, sub, I, J, Q, elements)


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, failure_detail)


def _c_mult_two_path(td: TrialData, config: SuiteConfig):
    multiplicity(td.I)
    multiplicity(td.J)
    return True, None


def _c_rees_system(td: TrialData, config: SuiteConfig):
    rees_coefficients(td.I)
    return True, None


def _c_degree_function(td: TrialData, config: SuiteConfig):
    for a in td.elements:
        rep = degree_function(td.I, a)
        if not rep.agree:
            return False, (
                f"element {a}: coordinate={rep.value_coordinate} "
                f"direct={rep.value_direct} valuation={rep.value_valuation}"
            )
    return True, None


def _c_valuative_closure(td: TrialData, config: SuiteConfig):
    rep = verify_valuative_representation(td.I, config.n_max)
    if not rep.ok:
        missing = [w.normal for w in rep.witnesses if not w.found]
        return False, f"closures_match={rep.closures_match} unwitnessed={missing}"
    return True, None


def _c_mixed_two_path(td: TrialData, config: SuiteConfig):
    table = mixed_multiplicities((td.I, td.J))
    d = td.dim
    corner_i = table.entry((d, 0))
    corner_j = table.entry((0, d))
    ei = multiplicity(td.I).value
    ej = multiplicity(td.J).value
    if corner_i != ei or corner_j != ej:
        return False, f"corners ({corner_i},{corner_j}) vs multiplicities ({ei},{ej})"
    return True, None


def _c_mixed_expansion(td: TrialData, config: SuiteConfig):
    if not check_mixed_expansion((td.I, td.J), _EXPANSION_SAMPLES):
        return False, f"expansion mismatch at {_EXPANSION_SAMPLES}"
    return True, None


def _c_mixed_multilinearity(td: TrialData, config: SuiteConfig):
    if not check_multilinearity(td.I, td.J):
        return False, "product slot failed to split additively"
    return True, None


def _c_associativity(td: TrialData, config: SuiteConfig):
    Q, I = td.Q, td.I
    if Q is None or Q.is_unit:
        return True, None
    total_fit = multiplicity_quotient(Q, I)
    primes = minimal_primes(Q)
    codim = min(len(p.variables) for p in primes)
    total_local = 0
    for P in primes:
        if len(P.variables) != codim:
            continue
        length = local_length_at(Q, P)
        if len(P.variables) == Q.dim:
            em = 1
        else:
            em = multiplicity(restrict_to_prime(I, P)).value
        total_local += length * em
    if total_fit != total_local:
        return False, f"fit {total_fit} vs local decomposition {total_local}"
    return True, None


def _c_minkowski(td: TrialData, config: SuiteConfig):
    table = mixed_multiplicities((td.I, td.J))
    e11 = table.entry((1, 1))
    ei = multiplicity(td.I).value
    ej = multiplicity(td.J).value
    if table.entry((2, 0)) != ei or table.entry((0, 2)) != ej:
        return False, "table corners disagree with pure multiplicities"
    if e11 * e11 > ei * ej:
        return False, f"e(I,J)^2={e11 * e11} exceeds e(I)e(J)={ei * ej}"
    return True, None


def _c_qstar(td: TrialData, config: SuiteConfig):
    I, J = td.I, td.J
    ei = multiplicity(I).value
    ej = multiplicity(J).value
    e11 = mixed_multiplicities((I, J)).entry((1, 1))
    q = ei - 2 * e11 + ej
    if q < 0:
        return False, f"q={q} is negative"
    same = polyhedra_equal(I, J)
    if (q == 0) != same:
        return False, f"q={q} but polyhedra_equal={same}"
    # The defect must vanish against the integral closure.
    Ibar = integral_closure_power(I, 1)
    ebar = multiplicity(Ibar).value
    cross = mixed_multiplicities((I, Ibar)).entry((1, 1))
    qbar = ei - 2 * cross + ebar
    if qbar != 0 or not polyhedra_equal(I, Ibar):
        return False, f"closure defect q={qbar}"
    return True, None


CHECK_ORDER = (
    "mult_two_path",
    "rees_system",
    "degree_function",
    "valuative_closure",
    "mixed_two_path",
    "mixed_expansion",
    "mixed_multilinearity",
    "associativity",
    "minkowski",
    "qstar",
)

_CHECK_FUNCS = {
    "mult_two_path": _c_mult_two_path,
    "rees_system": _c_rees_system,
    "degree_function": _c_degree_function,
    "valuative_closure": _c_valuative_closure,
    "mixed_two_path": _c_mixed_two_path,
    "mixed_expansion": _c_mixed_expansion,
    "mixed_multilinearity": _c_mixed_multilinearity,
    "associativity": _c_associativity,
    "minkowski": _c_minkowski,
    "qstar": _c_qstar,
}

# Checks restricted to particular dimensions (the quadratic inequality and
# the defect q* are two-variable statements).
_CHECK_DIMS = {"minkowski": (2,), "qstar": (2,)}

SUITE_GROUPS = {
    "all": CHECK_ORDER,
    "mult": ("mult_two_path",),
    "rees": ("rees_system", "degree_function", "valuative_closure"),
    "mixed": ("mixed_two_path", "mixed_expansion", "mixed_multilinearity"),
    "minkowski": ("minkowski", "qstar"),
    "assoc": ("associativity",),
}


def checks_for_suite(name: str):
    if name not in SUITE_GROUPS:
        raise SchemaError(f"unknown suite {name!r}; choose from {sorted(SUITE_GROUPS)}")
    return SUITE_GROUPS[name]


def check_associativity(Q: MonomialIdeal, I: MonomialIdeal) -> bool:
    """Length fit for I on R/Q vs the sum over top-dimensional primes of Q."""
    ok, _ = _c_associativity(TrialData(I.dim, 0, 0, I, I, Q, ()), SuiteConfig())
    return ok


def check_minkowski(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """The two-variable quadratic bound e(I,J)^2 <= e(I) e(J)."""
    ok, _ = _c_minkowski(TrialData(I.dim, 0, 0, I, J, None, ()), SuiteConfig())
    return ok


def check_qstar(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """q = e(I) - 2 e(I,J) + e(J) is >= 0, vanishing only on equal polyhedra."""
    ok, _ = _c_qstar(TrialData(I.dim, 0, 0, I, J, None, ()), SuiteConfig())
    return ok


def _applicable(name: str, dim: int) -> bool:
    dims = _CHECK_DIMS.get(name)
    return dims is None or dim in dims


def _run_trial(config: SuiteConfig, dim: int, t: int, names):
    td = _draw_trial(config, dim, t)
    prefix = f"seed={td.subseed} I={list(td.I.gens)} J={list(td.J.gens)} Q={list(td.Q.gens)}"
    out = {}
    for name in names:
        if not _applicable(name, dim):
            continue
        start = time.perf_counter()
        try:
            ok, detail = _CHECK_FUNCS[name](td, config)
        except MlabError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        out[name] = (ok, None if ok else f"{prefix}: {detail}", elapsed)
    return out


def _worker_count() -> int:
    raw = os.environ.get("MLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def run_suite(config: SuiteConfig | None = None, include=None) -> SuiteReport:
    config = config or SuiteConfig()
    names = tuple(include) if include is not None else CHECK_ORDER
    for name in names:
        if name not in _CHECK_FUNCS:
            raise SchemaError(f"unknown check {name!r}")

    counts: dict[tuple[str, int], list] = {}
    timings: dict[str, float] = {}

    def absorb(dim, results):
        for name, (ok, detail, elapsed) in results.items():
            key = (name, dim)
            stats = counts.setdefault(key, [0, 0, []])
            if ok:
                stats[0] += 1
            else:
                stats[1] += 1
                if len(stats[2]) < 3:
                    stats[2].append(detail)
            timings[name] = timings.get(name, 0.0) + elapsed

    workers = _worker_count()
    for dim in config.dims:
        T = config.trials_for(dim)
        if workers > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
                for results in pool.map(
                    lambda t: _run_trial(config, dim, t, names), range(T)
                ):
                    absorb(dim, results)
        else:
            for t in range(T):
                absorb(dim, _run_trial(config, dim, t, names))

    checks = []
    for name in names:
        for dim in config.dims:
            if (name, dim) not in counts:
                continue
            passed, failed, examples = counts[(name, dim)]
            checks.append(
                CheckStats(name, dim, passed + failed, passed, failed, tuple(examples))
            )
    ok = all(c.failed == 0 for c in checks)
    return SuiteReport(
        seed=config.seed,
        dims=tuple(config.dims),
        trials=tuple((d, config.trials_for(d)) for d in config.dims),
        checks=tuple(checks),
        ok=ok,
        timings=tuple(sorted(timings.items())),
    )


def run_file_checks(entries, seed: int = 1, n_max: int = 3, include=None) -> SuiteReport:
    """Run the battery on explicit ideals instead of random draws.

    ``entries`` is a list of (label, ideal, quotient_or_None).  Single-ideal
    checks run per entry; pair checks run over unordered pairs of entries
    with matching dimension; the associativity check runs on entries that
    carry quotient data.
    """
    enabled = set(include) if include is not None else set(CHECK_ORDER)
    counts: dict[tuple[str, int], list] = {}
    timings: dict[str, float] = {}

    def record(name, dim, ok, detail, elapsed):
        key = (name, dim)
        stats = counts.setdefault(key, [0, 0, []])
        if ok:
            stats[0] += 1
        else:
            stats[1] += 1
            if len(stats[2]) < 3:
                stats[2].append(detail)
        timings[name] = timings.get(name, 0.0) + elapsed

    def run(name, td, label):
        start = time.perf_counter()
        try:
            ok, detail = _CHECK_FUNCS[name](td, SuiteConfig(seed=seed, n_max=n_max))
        except MlabError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        record(name, td.dim, ok, None if ok else f"{label}: {detail}", time.perf_counter() - start)

    singles = ("mult_two_path", "rees_system", "degree_function", "valuative_closure")
    pairs = ("mixed_two_path", "mixed_expansion", "mixed_multilinearity", "minkowski", "qstar")

    for idx, (label, I, Q) in enumerate(entries):
        rng = random.Random(_subseed(seed, I.dim, idx))
        elements = tuple(
            tuple(rng.randint(0, 4) for _ in range(I.dim)) for _ in range(5)
        )
        td = TrialData(I.dim, idx, _subseed(seed, I.dim, idx), I, I, Q, elements)
        for name in singles:
            if name in enabled:
                run(name, td, label)
        if Q is not None and "associativity" in enabled:
            run("associativity", td, label)

    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            label_i, I, _ = entries[i]
            label_j, J, _ = entries[j]
            if I.dim != J.dim:
                continue
            td = TrialData(I.dim, i, _subseed(seed, I.dim, i), I, J, None, ())
            for name in pairs:
                if name in enabled and _applicable(name, I.dim):
                    run(name, td, f"{label_i},{label_j}")

    dims_seen = tuple(sorted({dim for (_, dim) in counts}))
    checks = []
    for name in CHECK_ORDER:
        for dim in dims_seen:
            if (name, dim) in counts:
                passed, failed, examples = counts[(name, dim)]
                checks.append(
                    CheckStats(name, dim, passed + failed, passed, failed, tuple(examples))
                )
    ok = all(c.failed == 0 for c in checks)
    return SuiteReport(
        seed=seed,
        dims=dims_seen,
        trials=tuple((d, sum(1 for _, e, _q in entries if e.dim == d)) for d in dims_seen),
        checks=tuple(checks),
        ok=ok,
        timings=tuple(sorted(timings.items())),
    )
