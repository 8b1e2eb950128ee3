"""Property suite for the raising-operator calculus.

Checks, over stated finite ranges: signed composition sums collapse to
1/m!, the inversion expansion of the pair triangle matches the naive subset
expansion, the interval-run expansion agrees on all-ones vectors (in both
subset arities, which are reported separately rather than silently merged),
and the vanishing statements for truncated vectors and long first columns.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from coregrowth.dimensions import (
    composition_sum,
    evaluate_terms,
    long_column_vanishes,
    triangle_expand_intervals,
    triangle_expand_inversions,
    triangle_expand_naive,
    triangle_vanishes,
)
from coregrowth.partitions import enumerate_reduced_states, multiplicities
from coregrowth.reporting import THEOREM, Report


def verify_composition_sums(max_m: int) -> Report:
    bad = None
    for m in range(1, max_m + 1):
        if composition_sum(m) != Fraction(1, factorial(m)):
            bad = {"m": m, "sum": str(composition_sum(m))}
            break
    return Report("composition-sums", THEOREM, bad is None, {"max_m": max_m}, bad)


def verify_inversion_expansion(max_t: int, vectors: int, seed: int) -> Report:
    """Inversion terms equal the full 2^C(t,2) subset expansion pointwise."""
    rng = random.Random(seed)
    bad = None
    for t in range(2, max_t + 1):
        inv = triangle_expand_inversions(t)
        naive = triangle_expand_naive(t)
        for _ in range(vectors):
            vec = tuple(rng.randint(0, 6) for _ in range(t))
            if evaluate_terms(inv, vec) != evaluate_terms(naive, vec):
                bad = {"t": t, "vec": vec}
                break
        if bad:
            break
    return Report(
        "inversion-vs-naive-expansion",
        THEOREM,
        bad is None,
        {"max_t": max_t, "vectors": vectors},
        bad,
    )


def verify_interval_expansion(max_k: int) -> Report:
    """All three expansions agree (and equal 1) on the all-ones vector."""
    bad = None
    arities_agree = True
    for k in range(2, max_k + 1):
        ones = (1,) * (k - 1)
        by_inv = evaluate_terms(triangle_expand_inversions(k - 1), ones)
        by_short = evaluate_terms(triangle_expand_intervals(k, universe=k - 1), ones)
        by_full = evaluate_terms(triangle_expand_intervals(k, universe=k), ones)
        if by_short != by_full:
            arities_agree = False
        if not by_inv == by_short == 1:
            bad = {"k": k, "inversions": by_inv, "intervals": by_short, "full": by_full}
            break
    return Report(
        "interval-expansion-on-ones",
        THEOREM,
        bad is None,
        {"max_k": max_k, "subset_arities_agree": arities_agree},
        bad,
    )


def verify_vanishing(max_t: int, max_entry: int) -> Report:
    """Triangle evaluations vanish on both stated truncation regimes."""
    bad = None
    for t in range(1, max_t + 1):
        # truncation (0, ..., 0, m) with 1 <= m <= t
        for m in range(1, t + 1):
            for c in range(0, max_entry - m + 1):
                mu = (c,) * t + (c + m,)
                if not triangle_vanishes(mu, t):
                    bad = {"case": "staircase-tail", "t": t, "mu": mu}
                    break
            if bad:
                break
        if bad:
            break
        # non-zero truncation below the staircase
        for hat in _staircase_vectors(t, max_entry):
            for c in range(0, max_entry - max(hat) + 1):
                mu = tuple(h + c for h in hat)
                if not triangle_vanishes(mu, t):
                    bad = {"case": "below-staircase", "t": t, "mu": mu}
                    break
            if bad:
                break
        if bad:
            break
    return Report(
        "triangle-vanishing",
        THEOREM,
        bad is None,
        {"max_t": max_t, "max_entry": max_entry},
        bad,
    )


def _staircase_vectors(t: int, max_entry: int):
    """Non-zero vectors with first entry 0 and i-th entry at most i-1."""
    out = []

    def rec(prefix):
        if len(prefix) == t + 1:
            if any(prefix):
                out.append(tuple(prefix))
            return
        i = len(prefix) + 1
        for v in range(0, min(i - 1, max_entry) + 1):
            rec(prefix + [v])

    rec([0] if t >= 0 else [])
    return out


def verify_long_columns(max_k: int) -> Report:
    """Exhaustive vanishing for unit columns of height k-1 and k."""
    bad = None
    for k in range(2, max_k + 1):
        for state in enumerate_reduced_states(k):
            if multiplicities(state, k)[0] != k - 1:
                continue
            extended = tuple(sorted(state + (1,), reverse=True))
            if not long_column_vanishes(state, k):
                bad = {"k": k, "partition": state, "ones": k - 1}
                break
            if not long_column_vanishes(extended, k):
                bad = {"k": k, "partition": extended, "ones": k}
                break
        if bad:
            break
    return Report(
        "long-column-vanishing", THEOREM, bad is None, {"max_k": max_k}, bad
    )
