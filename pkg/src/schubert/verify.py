"""
Verification suites: the reproducible checks behind ``schubert verify``.

Each check returns a :class:`Check`.  A suite is a list of check thunks;
``run_suite`` evaluates them (optionally on a process pool) and assembles a
report whose order does not depend on scheduling.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import partial
from typing import Callable

from .complex import (
    FlaggedMap, build_complex, euler_characteristic, homology_ranks, term_ranks, verify_dd_zero,
)
from .functor import build_functor_image, graded_character
from .ideal import locus_membership, membership_by_minors, membership_by_rank, random_locus_point
from .linalg import Rationals, default_field
from .perm import Permutation, all_permutations, maximal_transition, weak_order_ideal
from .poly import SparsePoly, check_convolution_identity, double_schubert, substitute, uniform_assignment
from .superlabel import bsl_generating_function, enumerate_bsl

__all__ = [
    "Check", "SUITES", "run_suite", "REFERENCE_321_BSLS", "sample_s5",
    "random_dense_matrix", "random_test_matrices", "filtration_count", "marked_only_count",
    "unmarked_only_count",
]

REFERENCE_321_BSLS = ("1,1|2", "1,1|1'", "1,2'|2", "1',2'|1", "1,1'|2", "1',1|1'", "1',2'|2", "1',2'|1'")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, round(time.perf_counter() - t, 4))


# --- building blocks shared with the test-suite ------------------------------


def unmarked_only_count(w: Permutation) -> int:
    return sum(1 for T in enumerate_bsl(w) if all(l > 0 for l in T.entries))


def marked_only_count(w: Permutation) -> int:
    return sum(1 for T in enumerate_bsl(w) if all(l < 0 for l in T.entries))


def filtration_count(w: Permutation, degree: int | None = None) -> int:
    """``sum over v <=_W w`` of unmarked-only BSLs of ``v`` times marked-only BSLs of ``w v^{-1}``.

    With ``degree`` set, only ``v`` of that length contribute (the term rank).
    """
    total = 0
    for v in weak_order_ideal(w):
        if degree is not None and v.length != degree:
            continue
        total += unmarked_only_count(v) * marked_only_count(w * v.inverse())
    return total


def sample_s5(seed: int, k: int = 20) -> list[Permutation]:
    """``k`` seeded permutations of ``S_5``, always including ``54321``."""
    longest = Permutation.longest(5)
    rest = [w for w in all_permutations(5) if w != longest]
    return [longest] + random.Random(seed).sample(rest, k - 1)


def random_dense_matrix(rng: random.Random, n: int, bound: int = 10**6) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]


def random_test_matrices(seed: int, count: int = 200, n: int = 4) -> list[list[list[Fraction]]]:
    """Seeded matrices that land both on and off the degeneracy loci.

    Cycles through sparse ``{-1, 0, 1}`` matrices, low-rank products and
    random points of the locus of a random permutation.
    """
    rng = random.Random(seed)
    perms = all_permutations(n)
    out = []
    for k in range(count):
        kind = k % 3
        if kind == 0:
            M = [[Fraction(rng.choice((-1, 0, 0, 0, 1))) for _ in range(n)] for _ in range(n)]
        elif kind == 1:
            r = rng.randint(0, n - 1)
            A = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)]
            B = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
            M = [[Fraction(sum(A[i][t] * B[t][j] for t in range(r))) for j in range(n)]
                 for i in range(n)]
        else:
            M = random_locus_point(rng.choice(perms), rng, bound=3)
        out.append(M)
    return out


# --- individual checks --------------------------------------------------------


def check_321_product() -> tuple[bool, str]:
    n = 3
    x = lambda i: SparsePoly.x(i, n)
    y = lambda j: SparsePoly.y(j, n)
    product = (x(1) - y(1)) * (x(1) - y(2)) * (x(2) - y(1))
    got = double_schubert(Permutation.parse("321"))
    return got == product, str(got)


def check_bsl_lists() -> tuple[bool, str]:
    w3 = Permutation.parse("321")
    got = {T.serialize() for T in enumerate_bsl(w3)}
    n4 = len(enumerate_bsl(Permutation.parse("4321")))
    ok = got == set(REFERENCE_321_BSLS) and len(got) == 8 and n4 == 64
    return ok, f"321: {len(got)} labelings, 4321: {n4}"


def check_generating_function(w: Permutation) -> tuple[bool, str]:
    return bsl_generating_function(w) == double_schubert(w), str(w)


def check_convolution(w: Permutation) -> tuple[bool, str]:
    return check_convolution_identity(w), str(w)


def check_transition(w: Permutation) -> tuple[bool, str]:
    t = maximal_transition(w)
    n = w.n
    rhs = double_schubert(t.v) * (SparsePoly.x(t.alpha, n) - SparsePoly.y(w(t.beta), n))
    for psi in t.psis:
        rhs = rhs + double_schubert(psi)
    return rhs == double_schubert(w), f"{w}: v={t.v}, psis={[str(p) for p in t.psis]}"


def check_basis(w: Permutation) -> tuple[bool, str]:
    F = build_functor_image(w)  # raises on rank deficiency
    sch, _ = graded_character(F)
    return F.dimension == len(enumerate_bsl(w)) and sch == double_schubert(w), f"{w}: {F.dimension}"


def check_worked_complex(word: str, ranks: list[int]) -> tuple[bool, str]:
    C = build_complex(Permutation.parse(word), FlaggedMap.generic(4))
    return C.ranks == ranks and verify_dd_zero(C), f"{word}: {C.ranks}"


def check_dd_zero(w: Permutation) -> tuple[bool, str]:
    C = build_complex(w, FlaggedMap.generic(w.n))
    return verify_dd_zero(C), f"{w}: {C.ranks}"


def check_1423_letters(seed: int) -> tuple[bool, str]:
    # rank d1 = rank d2 = 3 at a random rational point
    w = Permutation.parse("1423")
    C = build_complex(w, FlaggedMap.generic(4))
    rng = random.Random(seed)
    S = C.specialize(FlaggedMap.from_matrix(random_dense_matrix(rng, 4)))
    r = [Rationals().rank([list(row) for row in d]) for d in S.differentials]
    return r == [3, 3], f"ranks {r}"


def check_identity_exactness(w: Permutation, field) -> tuple[bool, str]:
    C = build_complex(w, FlaggedMap.generic(w.n))
    h = homology_ranks(C, FlaggedMap.identity(w.n), field)
    return not any(h), f"{w} over {field}: h={h}"


def check_random_exactness(w: Permutation, seed: int) -> tuple[bool, str]:
    C = build_complex(w, FlaggedMap.generic(w.n))
    h: list[int] = []
    for attempt in range(2):
        rng = random.Random(f"{seed}:{w}:{attempt}")
        M = random_dense_matrix(rng, w.n)
        h = homology_ranks(C, FlaggedMap.from_matrix(M))
        off = not locus_membership(w, M)
        if not any(h) and off:
            return True, f"{w}: h={h}"
    return False, f"{w}: h={h}"


def check_on_locus_2413(seed: int) -> tuple[bool, str]:
    w = Permutation.parse("2413")
    M = random_locus_point(w, random.Random(seed))
    C = build_complex(w, FlaggedMap.generic(4))
    h = homology_ranks(C, FlaggedMap.from_matrix(M))
    return h[0] == 1 and locus_membership(w, M), f"h={h}"


def check_euler(w: Permutation) -> tuple[bool, str]:
    chi = euler_characteristic(term_ranks(w))
    at_minus_one = substitute(double_schubert(w), uniform_assignment(w.n, -1, -1))
    return chi == 0 and at_minus_one == 0, f"{w}: chi={chi}, S(-1,-1)={at_minus_one}"


def check_ideal_equivalence(seed: int, count: int = 200) -> tuple[bool, str]:
    mats = random_test_matrices(seed, count)
    hits = misses = 0
    for w in all_permutations(4):
        for M in mats:
            a = membership_by_rank(w, M)
            if a != membership_by_minors(w, M):
                return False, f"disagreement at {w}"
            hits += a
            misses += not a
    return True, f"{hits} on-locus and {misses} off-locus cases agree"


def check_filtration(w: Permutation) -> tuple[bool, str]:
    total = len(enumerate_bsl(w))
    ok = total == filtration_count(w)
    ranks = term_ranks(w)
    ok &= all(r == filtration_count(w, i) for i, r in enumerate(ranks))
    if not w.is_identity():
        t = maximal_transition(w)
        z = lambda u: len(enumerate_bsl(u))
        ok &= z(w) == 2 * z(t.v) + sum(z(p) for p in t.psis)
    return ok, f"{w}: {total} labelings, term ranks {ranks}"


# --- suites -------------------------------------------------------------------


def _worked_examples(seed: int) -> list[tuple[str, Callable]]:
    return [
        ("321 product", check_321_product),
        ("321 and 4321 labelings", check_bsl_lists),
        ("1423 complex ranks", partial(check_worked_complex, "1423", [3, 6, 3])),
        ("2413 complex ranks", partial(check_worked_complex, "2413", [2, 6, 6, 2])),
        ("1423 differential ranks", partial(check_1423_letters, seed)),
        ("2413 identity exactness", partial(check_identity_exactness, Permutation.parse("2413"), Rationals())),
        ("2413 on-locus cokernel", partial(check_on_locus_2413, seed)),
    ]


def _s4(seed: int) -> list[tuple[str, Callable]]:
    perms = all_permutations(4)
    nonid = perms[1:]
    prime = default_field()
    checks = []
    for w in perms:
        checks += [
            (f"generating function {w}", partial(check_generating_function, w)),
            (f"convolution identity {w}", partial(check_convolution, w)),
            (f"basis {w}", partial(check_basis, w)),
            (f"filtration {w}", partial(check_filtration, w)),
        ]
    for w in nonid:
        checks += [
            (f"d^2=0 {w}", partial(check_dd_zero, w)),
            (f"exact at identity over q {w}", partial(check_identity_exactness, w, Rationals())),
            (f"exact at identity over {prime} {w}", partial(check_identity_exactness, w, prime)),
            (f"exact at random point {w}", partial(check_random_exactness, w, seed)),
        ]
    checks.append(("ideal equivalence", partial(check_ideal_equivalence, seed)))
    return checks


def _s5(seed: int) -> list[tuple[str, Callable]]:
    checks = [(f"generating function {w}", partial(check_generating_function, w))
              for w in sample_s5(seed)]
    for w in all_permutations(5)[1:]:
        checks.append((f"transition {w}", partial(check_transition, w)))
        checks.append((f"euler characteristic {w}", partial(check_euler, w)))
    return checks


SUITES: dict[str, Callable[[int], list[tuple[str, Callable]]]] = {
    "paper-examples": _worked_examples,
    "s4": _s4,
    "s5": _s5,
}


def _run_one(item: tuple[str, Callable]) -> Check:
    name, fn = item
    return _timed(name, fn)


def run_suite(name: str, seed: int = 0, jobs: int = 1) -> dict:
    """Run a suite and return a JSON-ready report."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    items = SUITES[name](seed)
    t = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, items))
    else:
        results = [_run_one(item) for item in items]
    passed = sum(r.passed for r in results)
    return {
        "suite": name,
        "seed": seed,
        "passed": passed == len(results),
        "counts": {"pass": passed, "fail": len(results) - passed},
        "seconds": round(time.perf_counter() - t, 3),
        "checks": [asdict(r) for r in results],
    }
