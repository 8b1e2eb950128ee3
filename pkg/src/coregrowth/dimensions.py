"""Two independent engines for the k-analog dimension of a bounded partition.

``strong_dim_tableaux`` counts marked chains of strong covers by a dynamic
program over (k+1)-cores: with weight (1, ..., 1) every step may mark any
connected component of its skew shape, so each cover contributes its
component count.

``strong_dim_raising`` expands the defining operator product

    prod_{i=1..len} prod_{j=i+1..k-parts_i+i} (1 - R_ij)

over exponent vectors of complete homogeneous functions; R_ij moves one unit
from entry j to entry i, and a vector with a negative entry contributes
coefficient zero.  Small index sets are expanded subset by subset, large ones
by a row-wise convolution that finalizes one entry at a time.

The triangle-operator helpers expose the same calculus as data: expansion of
the full pair triangle over permutation inversion sets, the 2^k interval-run
shortcut, signed composition sums, and the vanishing predicates used by the
property suite.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cache
from itertools import combinations, permutations
from math import comb, factorial

from coregrowth.partitions import (
    Parts,
    bounded_to_core,
    check_k_bounded,
    core_to_bounded,
    multiplicities,
)
from coregrowth.posets import cores_of_level, contains, skew_components

Pair = tuple[int, int]

DIMTABLE_FORMAT = "coregrowth.dimtable.v1"


def hook_dim(parts: Parts) -> int:
    """Standard Young tableau count via the hook length formula."""
    from coregrowth.partitions import hook_lengths

    n = sum(parts)
    d = factorial(n)
    for row in hook_lengths(parts):
        for h in row:
            d //= h
    return d


def h_coefficient(vec) -> int:
    """Multinomial coefficient of x_1...x_n in h_vec; zero off the cone."""
    total = 0
    for v in vec:
        if v < 0:
            return 0
        total += v
    out = factorial(total)
    for v in vec:
        out //= factorial(v)
    return out


def raising_apply(pairs, vec) -> tuple[int, ...]:
    """Apply a set of raising moves: +1 at i, -1 at j per pair (1-based)."""
    out = list(vec)
    for i, j in pairs:
        out[i - 1] += 1
        out[j - 1] -= 1
    return tuple(out)


def operator_windows(parts: Parts, k: int) -> list[range]:
    """Column window of the (1 - R_ij) factors of each row (1-based j)."""
    return [range(i + 2, k - parts[i] + i + 2) for i in range(len(parts))]


def _dim_by_subsets(parts: Parts, k: int) -> int:
    ell = len(parts)
    n = sum(parts)
    windows = [
        [j for j in w if j <= ell] for w in operator_windows(parts, k)
    ]  # targets past the last row stay zero and kill their terms
    row_choices = []
    for w in windows:
        choices = []
        for size in range(len(w) + 1):
            for sub in combinations(w, size):
                choices.append(sub)
        row_choices.append(choices)

    total = 0

    def rec(i: int, vec: list[int], sign: int):
        nonlocal total
        if i == ell:
            total += sign * h_coefficient(vec)
            return
        base = vec[i]
        for sub in row_choices[i]:
            v = base + len(sub)
            if v < 0:
                continue
            vec[i] = v
            for j in sub:
                vec[j - 1] -= 1
            rec(i + 1, vec, sign if len(sub) % 2 == 0 else -sign)
            for j in sub:
                vec[j - 1] += 1
        vec[i] = base

    rec(0, list(parts), 1)
    return total


def _dim_by_convolution(parts: Parts, k: int) -> int:
    """Row-by-row expansion; one entry is finalized per row.

    State: pending decrements for the next k-1 positions.  The partial
    multinomial telescopes through binomials, with the slots already used
    recoverable as (prefix sum of parts) + (pending decrements).
    """
    ell = len(parts)
    n = sum(parts)
    width = max(k - 1, 1)
    states: dict[tuple[int, ...], int] = {(0,) * width: 1}
    prefix = 0
    for i in range(1, ell + 1):
        lam = parts[i - 1]
        window = [j for j in range(i + 1, k - lam + i + 1) if j <= ell]
        subs = []
        for size in range(len(window) + 1):
            subs.extend(combinations(window, size))
        nxt: dict[tuple[int, ...], int] = {}
        for state, w in states.items():
            pending = sum(state)
            used = prefix + pending
            for sub in subs:
                v = lam - state[0] + len(sub)
                if v < 0:
                    continue
                coeff = comb(n - used, v)
                if coeff == 0:
                    continue
                w2 = w * coeff if len(sub) % 2 == 0 else -w * coeff
                new = list(state[1:]) + [0]
                for j in sub:
                    new[j - i - 1] += 1
                key = tuple(new)
                nxt[key] = nxt.get(key, 0) + w2
        states = {s: w for s, w in nxt.items() if w}
        prefix += lam
    return sum(w for s, w in states.items() if not any(s))


SUBSET_LIMIT = 22


@cache
def strong_dim_raising(parts: Parts, k: int, subset_limit: int = SUBSET_LIMIT) -> int:
    """Dimension via the raising-operator expansion."""
    parts = check_k_bounded(parts, k)
    if not parts:
        return 1
    t_size = sum(k - p for p in parts)
    if t_size <= subset_limit:
        return _dim_by_subsets(parts, k)
    return _dim_by_convolution(parts, k)


# --- tableau engine: DP over cores ---------------------------------------

class _DimTable:
    """Per-k dimension table over cores, grown level by level."""

    def __init__(self, k: int):
        self.k = k
        self.max_level = 0
        self.by_core: dict[Parts, int] = {(): 1}

    def extend(self, level: int) -> None:
        k = self.k
        for n in range(self.max_level + 1, level + 1):
            prev = cores_of_level(k, n - 1)
            dims = self.by_core
            for kappa in cores_of_level(k, n):
                total = 0
                for tau in prev:
                    if contains(kappa, tau):
                        total += skew_components(kappa, tau) * dims[tau]
                dims[kappa] = total
        self.max_level = max(self.max_level, level)


_TABLES: dict[int, _DimTable] = {}


def dimension_table(k: int, max_size: int) -> dict[Parts, int]:
    """Dimension of every (k+1)-core of bounded size up to ``max_size``."""
    table = _TABLES.setdefault(k, _DimTable(k))
    table.extend(max_size)
    return table.by_core


def strong_dim_tableaux(parts: Parts, k: int) -> int:
    """Dimension by the marked strong-chain dynamic program."""
    parts = check_k_bounded(parts, k)
    table = dimension_table(k, sum(parts))
    return table[bounded_to_core(parts, k)]


def strong_dim(parts: Parts, k: int, engine: str = "tableaux") -> int:
    if engine == "tableaux":
        return strong_dim_tableaux(parts, k)
    if engine == "raising":
        return strong_dim_raising(parts, k)
    raise ValueError(f"unknown engine {engine!r}")


def dimension_table_json(k: int, max_size: int) -> str:
    table = dimension_table(k, max_size)
    values = {
        ",".join(map(str, core_to_bounded(core, k))): str(d)
        for core, d in table.items()
        if sum(core_to_bounded(core, k)) <= max_size
    }
    return json.dumps(
        {"format": DIMTABLE_FORMAT, "k": k, "max_size": max_size, "values": values},
        sort_keys=True,
    )


def load_dimension_table(text: str) -> int:
    """Merge a serialized table into the in-memory cache; returns its k."""
    obj = json.loads(text)
    if obj.get("format") != DIMTABLE_FORMAT:
        raise ValueError(f"unsupported dimension table format: {obj.get('format')!r}")
    k = int(obj["k"])
    table = _TABLES.setdefault(k, _DimTable(k))
    for key, val in obj["values"].items():
        parts = tuple(int(x) for x in key.split(",")) if key else ()
        table.by_core[bounded_to_core(parts, k)] = int(val)
    table.max_level = max(table.max_level, int(obj["max_size"]))
    return k


# --- triangle operator calculus ------------------------------------------

def inversion_set(perm) -> frozenset[Pair]:
    """Inversions (i, j), i < j, of a permutation in one-line notation."""
    pos = {v: p for p, v in enumerate(perm)}
    n = len(perm)
    return frozenset(
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if pos[j] < pos[i]
    )


@cache
def triangle_expand_inversions(t: int) -> tuple[tuple[frozenset[Pair], int], ...]:
    """The full triangle over t entries as t! signed inversion sets."""
    if t < 1:
        raise ValueError("t must be positive")
    terms = []
    for perm in permutations(range(1, t + 1)):
        inv = inversion_set(perm)
        terms.append((inv, -1 if len(inv) % 2 else 1))
    return tuple(terms)


def triangle_expand_naive(t: int) -> list[tuple[frozenset[Pair], int]]:
    """All 2^binom(t,2) signed subsets of the pair triangle (test oracle)."""
    pairs = [(i, j) for i in range(1, t + 1) for j in range(i + 1, t + 1)]
    out = []
    for size in range(len(pairs) + 1):
        for sub in combinations(pairs, size):
            out.append((frozenset(sub), -1 if size % 2 else 1))
    return out


def interval_system(u: frozenset[int]) -> frozenset[Pair]:
    """Pairs of the interval product attached to a subset of starts.

    Greedy from the left: an interval opens at the least unused element of u
    and closes at the first index not in u; the product for interval [a, b]
    is R_{a,a+1} ... R_{a,b}.
    """
    pairs = []
    floor = 0
    for a in sorted(u):
        if a <= floor:
            continue
        b = a + 1
        while b in u:
            b += 1
        pairs.extend((a, j) for j in range(a + 1, b + 1))
        floor = b
    return frozenset(pairs)


def triangle_expand_intervals(k: int, universe: int | None = None) -> list[tuple[frozenset[Pair], int]]:
    """Interval-run expansion: one signed term per subset of the universe.

    ``universe`` defaults to k-1, matching the triangle on k-1 unit parts;
    passing k keeps the 2^k degenerate terms whose last interval reaches
    index k+1 (they vanish on zero-padded vectors).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if universe is None:
        universe = k - 1
    ground = list(range(1, universe + 1))
    out = []
    for size in range(len(ground) + 1):
        for sub in combinations(ground, size):
            out.append((interval_system(frozenset(sub)), -1 if size % 2 else 1))
    return out


def evaluate_terms(terms, vec, shift: int = 0) -> int:
    """Signed sum of h-coefficients after applying each operator set.

    ``shift`` relocates pair indices; the vector is zero-padded on demand.
    """
    vec = tuple(vec)
    top = len(vec)
    for pairs, _sign in terms:
        for _i, j in pairs:
            top = max(top, j + shift)
    base = vec + (0,) * (top - len(vec))
    total = 0
    for pairs, sign in terms:
        shifted = [(i + shift, j + shift) for i, j in pairs]
        total += sign * h_coefficient(raising_apply(shifted, base))
    return total


def compositions(m: int):
    """All 2^(m-1) compositions of m into positive parts."""
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            yield (first,) + rest


def composition_sum(m: int) -> Fraction:
    """Signed sum over compositions of 1/(c_1! ... c_t!); equals 1/m!."""
    if m < 1:
        raise ValueError("m must be positive")
    total = Fraction(0)
    for c in compositions(m):
        term = Fraction(1)
        for part in c:
            term /= factorial(part)
        total += term if (m - len(c)) % 2 == 0 else -term
    return total


def truncation(vec) -> tuple[int, ...]:
    """Subtract the minimum entry from every entry."""
    m = min(vec)
    return tuple(v - m for v in vec)


def triangle_value(vec) -> int:
    """Full triangle over all entries of ``vec``, evaluated via inversions."""
    return evaluate_terms(triangle_expand_inversions(len(vec)), vec)


def triangle_vanishes(vec, t: int | None = None) -> bool:
    """Whether the triangle evaluation of a non-negative vector is zero.

    The stated vanishing regimes: the truncation is (0, ..., 0, m) with
    1 <= m <= t, or it is non-zero with i-th entry at most i-1 throughout.
    """
    vec = tuple(vec)
    if t is not None and len(vec) != t + 1:
        raise ValueError(f"expected {t + 1} entries, got {len(vec)}")
    if any(v < 0 for v in vec):
        raise ValueError("entries must be non-negative")
    return triangle_value(vec) == 0


def long_column_vanishes(parts: Parts, k: int) -> bool:
    """Vanishing of triangle-after-moves terms for a long first column.

    Preconditions: l_1(parts) is k-1 or k.  For every subset X of the
    operator windows of the rows above the column of ones that moves a box
    out of some position past those rows, the composite evaluation (apply X,
    then the triangle over the unit block) must be zero.
    """
    parts = check_k_bounded(parts, k)
    ell = len(parts)
    t = multiplicities(parts, k)[0]
    if t not in (k - 1, k):
        raise ValueError("first-column multiplicity must be k-1 or k")
    s = ell - t
    if any(p < 2 for p in parts[:s]):
        raise ValueError("rows above the unit column must have at least two boxes")
    box = [
        (i, j)
        for i in range(1, s + 1)
        for j in range(i + 1, k - parts[i - 1] + i + 1)
    ]
    if len(box) > 20:
        raise ValueError("operator box too large for exhaustive expansion")
    triangle = triangle_expand_inversions(t)
    for size in range(1, len(box) + 1):
        for x in combinations(box, size):
            if not any(j >= s + 1 for _i, j in x):
                continue
            moved = raising_apply(x, parts)
            if evaluate_terms(triangle, moved, shift=s) != 0:
                return False
    return True
