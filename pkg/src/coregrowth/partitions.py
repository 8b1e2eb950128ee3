"""Partition primitives and the core/bounded dictionary.

Partitions are plain tuples of weakly decreasing positive ints, French
convention: row 1 is the bottom (longest) row, so the cell ``(i, j)``
(1-based) of ``parts`` has arm ``parts[i-1] - j`` and its leg counts the
shorter rows above.

An r-core is a partition with no hook of length r.  For r = k+1 the maps
``core_to_bounded`` / ``bounded_to_core`` translate between (k+1)-cores and
partitions with parts at most k.  ``reduce_rectangles`` projects a k-bounded
partition onto the finite state space of k! partitions whose multiplicity
vector satisfies l_i <= k-i.
"""

from __future__ import annotations

import json
from functools import cache
from math import factorial

Parts = tuple[int, ...]

EMPTY: Parts = ()


def check_partition(parts) -> Parts:
    """Coerce to a tuple and validate weakly decreasing positive parts."""
    t = tuple(int(x) for x in parts)
    if any(x < 1 for x in t) or any(a < b for a, b in zip(t, t[1:])):
        raise ValueError(f"not a partition: {parts!r}")
    return t


def is_k_bounded(parts: Parts, k: int) -> bool:
    return not parts or parts[0] <= k


def check_k_bounded(parts, k: int) -> Parts:
    t = check_partition(parts)
    if not is_k_bounded(t, k):
        raise ValueError(f"{t!r} is not {k}-bounded")
    return t


def conjugate(parts: Parts) -> Parts:
    """Transpose of the Young diagram."""
    if not parts:
        return EMPTY
    cols = [0] * parts[0]
    for p in parts:
        for j in range(p):
            cols[j] += 1
    return tuple(cols)


def hook_lengths(parts: Parts) -> list[list[int]]:
    """Hook length of every cell, row by row (row 1 first)."""
    conj = conjugate(parts)
    return [
        [(p - j - 1) + (conj[j] - i - 1) + 1 for j in range(p)]
        for i, p in enumerate(parts)
    ]


def is_core(parts: Parts, r: int) -> bool:
    """True iff no cell has hook length exactly r."""
    if r < 2:
        raise ValueError("core parameter must be at least 2")
    conj = conjugate(parts)
    for i, p in enumerate(parts):
        for j in range(p):
            if (p - j) + (conj[j] - i) - 1 == r:
                return False
    return True


def core_to_bounded(parts: Parts, k: int) -> Parts:
    """Row-wise count of cells with hook length below k+1.

    For a (k+1)-core this is the bijection onto k-bounded partitions
    (delete every cell of hook length > k+1, then left-justify).
    """
    conj = conjugate(parts)
    out = []
    for i, p in enumerate(parts):
        out.append(sum(1 for j in range(p) if (p - j) + (conj[j] - i) - 1 <= k))
    return tuple(out)


@cache
def bounded_to_core(parts: Parts, k: int) -> Parts:
    """Inverse of ``core_to_bounded``: inflate a k-bounded partition to its (k+1)-core.

    Rows are processed from the top (shortest) down.  Each row, together with
    all rows below it, is pushed right by the least shift that leaves every
    original cell of the row with hook length at most k; the legs only involve
    the rows above, which are already final, so the shift has a closed form.
    """
    parts = check_k_bounded(parts, k)
    above: list[int] = []  # final lengths of rows above, longest first
    finals: list[int] = []
    shift = 0
    for lam in reversed(parts):
        cur = lam + shift
        s = 0
        # cell c-th from the right needs leg <= k-c, i.e. column > above[k-c]
        for c in range(1, lam + 1):
            v = k - c
            if v < len(above):
                need = above[v] + c - cur
                if need > s:
                    s = need
        final = cur + s
        shift += s
        above.insert(0, final)
        finals.append(final)
    return tuple(reversed(finals))


@cache
def k_conjugate(parts: Parts, k: int) -> Parts:
    """Conjugation transported through the (k+1)-core picture; an involution."""
    return core_to_bounded(conjugate(bounded_to_core(parts, k)), k)


def multiplicities(parts: Parts, k: int) -> tuple[int, ...]:
    """Vector (l_1, ..., l_k): number of parts of each size."""
    l = [0] * k
    for p in parts:
        l[p - 1] += 1
    return tuple(l)


def parts_from_multiplicities(l) -> Parts:
    out = []
    for size in range(len(l), 0, -1):
        out.extend([size] * l[size - 1])
    return tuple(out)


def rectangle(i: int, k: int) -> Parts:
    """The k-rectangle with parts i repeated k-i+1 times."""
    if not 1 <= i <= k:
        raise ValueError(f"rectangle type {i} out of range for k={k}")
    return (i,) * (k - i + 1)


def rectangle_area(i: int, k: int) -> int:
    return i * (k - i + 1)


def reduce_rectangles(parts: Parts, k: int) -> tuple[Parts, tuple[int, ...]]:
    """Delete full k-rectangles from the part multiset until l_i <= k-i.

    Returns the reduced partition and the ledger (c_1, ..., c_k) of deleted
    rectangles per type.  Deletion acts on multiplicities, so order is moot.
    """
    l = list(multiplicities(check_k_bounded(parts, k), k))
    ledger = [0] * k
    for i in range(1, k + 1):
        block = k - i + 1
        ledger[i - 1] = l[i - 1] // block
        l[i - 1] %= block
    return parts_from_multiplicities(l), tuple(ledger)


def is_reduced(parts: Parts, k: int) -> bool:
    l = multiplicities(parts, k)
    return all(l[i - 1] <= k - i for i in range(1, k + 1))


def check_reduced(parts, k: int) -> Parts:
    t = check_k_bounded(parts, k)
    if not is_reduced(t, k):
        raise ValueError(f"{t!r} has a full k-rectangle for k={k}")
    return t


def complement(parts: Parts, k: int) -> Parts:
    """The involution l_i -> k-i-l_i on the reduced state space."""
    l = multiplicities(check_reduced(parts, k), k)
    return parts_from_multiplicities(tuple(k - i - l[i - 1] for i in range(1, k + 1)))


def factorial_index(parts: Parts, k: int) -> int:
    """Mixed-radix rank: sum of l_i * (k-i)!, a bijection onto 0..k!-1."""
    l = multiplicities(check_reduced(parts, k), k)
    return sum(l[i - 1] * factorial(k - i) for i in range(1, k + 1))


@cache
def enumerate_reduced_states(k: int) -> tuple[Parts, ...]:
    """All k! reduced states, ordered by factorial index."""
    if k < 1:
        raise ValueError("k must be positive")
    states: list[Parts] = []

    def fill(i: int, l: list[int]):
        if i > k:
            states.append(parts_from_multiplicities(l))
            return
        for v in range(k - i + 1):
            l[i - 1] = v
            fill(i + 1, l)
        l[i - 1] = 0

    fill(1, [0] * k)
    return tuple(states)


def maximal_state(k: int) -> Parts:
    """The largest reduced state, with l_i = k-i throughout."""
    return parts_from_multiplicities(tuple(k - i for i in range(1, k + 1)))


# --- JSON wire helpers -------------------------------------------------

def parts_to_json(parts: Parts) -> str:
    return json.dumps(list(parts))


def parts_from_json(text: str) -> Parts:
    return check_partition(json.loads(text)) if json.loads(text) else EMPTY


def core_to_json(parts: Parts, r: int) -> str:
    return json.dumps({"r": r, "parts": list(parts)})


def core_from_json(text: str) -> tuple[Parts, int]:
    obj = json.loads(text)
    parts = tuple(obj["parts"])
    if parts and not is_core(parts, obj["r"]):
        raise ValueError(f"{parts!r} is not a {obj['r']}-core")
    return parts, int(obj["r"])


def reduced_state_to_json(parts: Parts, k: int) -> str:
    return json.dumps(
        {"k": k, "parts": list(parts), "l": list(multiplicities(parts, k))}
    )


def reduced_state_from_json(text: str) -> tuple[Parts, int]:
    obj = json.loads(text)
    k = int(obj["k"])
    parts = check_reduced(tuple(obj["parts"]), k)
    if "l" in obj and tuple(obj["l"]) != multiplicities(parts, k):
        raise ValueError("multiplicity vector does not match parts")
    return parts, k
