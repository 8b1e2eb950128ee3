"""The finite k!-state Markov chain, solved exactly.

States are the reduced k-bounded partitions.  A move grows one column of the
state (a box addition that the weak order permits); if that completes a
k-rectangle the rectangle is deleted, so moves that remove and moves that
do not share one code path through ``reduce_rectangles``.  Rates are exact
rationals d(cover) / ((n+1) d(state)); each row sums to one.

``stationary`` solves pi P = pi over big rationals: dense exact Gaussian
elimination for small chains, a CRT/rational-reconstruction solve for large
ones.  Either way the result is verified exactly against the chain before it
is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial, gcd, isqrt
from typing import Callable

from coregrowth import dimensions
from coregrowth.partitions import (
    Parts,
    complement,
    enumerate_reduced_states,
    factorial_index,
    k_conjugate,
    multiplicities,
    rectangle_area,
    reduce_rectangles,
)
from coregrowth.posets import enumerate_bounded, weak_covers_bounded, weak_predecessors_bounded
from coregrowth.reporting import CONJECTURE, THEOREM, Report


@dataclass(frozen=True)
class Move:
    """One transition: grow ``column`` of ``source``, maybe drop a rectangle."""

    source: Parts
    column: int
    cover: Parts  # bounded partition before rectangle reduction
    target: Parts
    removed: int | None  # rectangle type deleted by this move, if any
    rate: Fraction


@dataclass
class MarkovChain:
    k: int
    states: tuple[Parts, ...]  # factorial-index order
    moves: list[list[Move]]  # per source state
    matrix: list[dict[int, Fraction]]  # sparse rows, aggregated over moves

    @property
    def size(self) -> int:
        return len(self.states)

    def state_index(self, parts: Parts) -> int:
        return factorial_index(parts, self.k)


@dataclass
class StationaryDistribution:
    chain: MarkovChain
    values: list[Fraction]  # aligned with chain.states

    @property
    def lcd(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in self.values), 1)

    def of(self, parts: Parts) -> Fraction:
        return self.values[self.chain.state_index(parts)]


def _grown_column(before: Parts, after: Parts) -> int:
    if len(after) > len(before):
        return 1
    for a, b in zip(before, after):
        if b != a:
            return b
    raise ValueError("cover equals state")


def build_chain(k: int, engine: str = "tableaux") -> MarkovChain:
    """Assemble the exact transition structure on all k! reduced states."""
    if k < 2:
        raise ValueError("the finite chain needs k >= 2")
    states = enumerate_reduced_states(k)
    if engine == "tableaux":
        max_size = max(sum(s) for s in states) + 1
        table = dimensions.dimension_table(k, max_size)
        from coregrowth.partitions import bounded_to_core

        dim: Callable[[Parts], int] = lambda p: table[bounded_to_core(p, k)]
    else:
        dim = lambda p: dimensions.strong_dim_raising(p, k)

    moves: list[list[Move]] = []
    matrix: list[dict[int, Fraction]] = []
    for src in states:
        n = sum(src)
        d_src = dim(src)
        row: dict[int, Fraction] = {}
        out = []
        for cover in weak_covers_bounded(src, k):
            target, ledger = reduce_rectangles(cover, k)
            removed = next((i + 1 for i, c in enumerate(ledger) if c), None)
            rate = Fraction(dim(cover), (n + 1) * d_src)
            out.append(
                Move(src, _grown_column(src, cover), cover, target, removed, rate)
            )
            ti = factorial_index(target, k)
            row[ti] = row.get(ti, Fraction(0)) + rate
        total = sum(m.rate for m in out)
        if total != 1:
            raise AssertionError(f"row of {src!r} sums to {total}, not 1")
        moves.append(out)
        matrix.append(row)
    return MarkovChain(k, states, moves, matrix)


def is_irreducible(chain: MarkovChain) -> bool:
    """Strong connectivity of the transition digraph."""
    n = chain.size
    fwd = [list(row) for row in chain.matrix]
    rev: list[list[int]] = [[] for _ in range(n)]
    for i, row in enumerate(chain.matrix):
        for j in row:
            rev[j].append(i)
    for adj in (fwd, rev):
        seen = {0}
        stack = [0]
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != n:
            return False
    return True


# --- exact linear solve ---------------------------------------------------

def _solve_fraction_gauss(chain: MarkovChain) -> list[Fraction]:
    """Dense exact elimination on (P^T - I) with a normalization row."""
    n = chain.size
    a = [[Fraction(0)] * (n + 1) for _ in range(n)]
    for j in range(n):
        a[0][j] = Fraction(1)  # sum pi = 1
    a[0][n] = Fraction(1)
    for i, row in enumerate(chain.matrix):
        for j, rate in row.items():
            if j == 0:
                continue  # balance at state 0 replaced by normalization
            a[j][i] += rate
    for j in range(1, n):
        a[j][j] -= 1
    for col in range(n):
        piv = max(
            range(col, n),
            key=lambda r: abs(a[r][col].numerator) if a[r][col] else -1,
        )
        if not a[piv][col]:
            raise AssertionError("singular stationary system; chain not irreducible?")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


_PRIMES = [2147483629, 2147483587, 2147483563, 2147483549, 2147483543, 2147483497]


def _solve_mod_p(chain: MarkovChain, p: int):
    """Solve the normalized stationary system over GF(p) with numpy."""
    import numpy as np

    n = chain.size
    a = np.zeros((n, n + 1), dtype=np.int64)
    a[0, :n] = 1
    a[0, n] = 1
    for i, row in enumerate(chain.matrix):
        for j, rate in row.items():
            if j == 0:
                continue
            num = rate.numerator % p
            den = rate.denominator % p
            if den == 0:
                return None
            a[j, i] = (a[j, i] + num * pow(den, -1, p)) % p
    for j in range(1, n):
        a[j, j] = (a[j, j] - 1) % p
    for col in range(n):
        piv = col + int(np.argmax(a[col:, col] != 0))
        if a[piv, col] == 0:
            return None
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        inv = pow(int(a[col, col]), -1, p)
        a[col] = (a[col] * inv) % p
        mask = a[:, col] != 0
        mask[col] = False
        if mask.any():
            a[mask] = (a[mask] - np.outer(a[mask, col], a[col])) % p
    return [int(x) for x in a[:, n]]


def _rational_reconstruct(residue: int, modulus: int) -> Fraction | None:
    """Smallest num/den with num, den <= sqrt(modulus/2) hitting the residue."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1 if s1 > 0 else -r1, abs(s1))


def _solve_crt(chain: MarkovChain) -> list[Fraction]:
    residues: list[list[int]] = []
    primes_used: list[int] = []
    for p in _PRIMES:
        sol = _solve_mod_p(chain, p)
        if sol is None:
            continue
        residues.append(sol)
        primes_used.append(p)
        if len(primes_used) < 2:
            continue
        combined = []
        for idx in range(chain.size):
            x, m = 0, 1
            for res, q in zip(residues, primes_used):
                t = ((res[idx] - x) * pow(m, -1, q)) % q
                x += m * t
                m *= q
            frac = _rational_reconstruct(x, m)
            if frac is None:
                break
            combined.append(frac)
        if len(combined) != chain.size:
            continue
        try:
            _verify_stationary(chain, combined)
        except AssertionError:
            continue  # modulus still too small; add another prime
        return combined
    raise AssertionError("stationary solve failed to reconstruct an exact solution")


def _verify_stationary(chain: MarkovChain, pi: list[Fraction]) -> None:
    if sum(pi) != 1:
        raise AssertionError("stationary vector does not sum to 1")
    if any(v <= 0 for v in pi):
        raise AssertionError("stationary vector has a non-positive entry")
    inflow = [Fraction(0)] * chain.size
    for i, row in enumerate(chain.matrix):
        for j, rate in row.items():
            inflow[j] += pi[i] * rate
    if inflow != pi:
        raise AssertionError("pi P != pi")


GAUSS_LIMIT = 150


def stationary(chain: MarkovChain) -> StationaryDistribution:
    """Exact stationary distribution, verified by direct multiplication."""
    if not is_irreducible(chain):
        raise AssertionError("chain is not irreducible")
    if chain.size <= GAUSS_LIMIT:
        pi = _solve_fraction_gauss(chain)
    else:
        pi = _solve_crt(chain)
    _verify_stationary(chain, pi)
    return StationaryDistribution(chain, pi)


# --- rectangle rates and the k-Plancherel family --------------------------

def rho_vector(chain: MarkovChain, pi: StationaryDistribution) -> list[Fraction]:
    """Long-run rate of creation (= removal) of each rectangle type."""
    out = [Fraction(0)] * chain.k
    for moves, p in zip(chain.moves, pi.values):
        for m in moves:
            if m.removed is not None:
                out[m.removed - 1] += p * m.rate
    return out


def rho(k: int, i: int) -> Fraction:
    """Rectangle rate of one type, from a fresh exact solve."""
    if not 1 <= i <= k:
        raise ValueError(f"rectangle type {i} out of range for k={k}")
    mc = build_chain(k)
    return rho_vector(mc, stationary(mc))[i - 1]


def k_plancherel(k: int, n: int) -> dict[Parts, Fraction]:
    """The measure w * d / n! on k-bounded partitions of n; sums to one."""
    out = {}
    for lam in enumerate_bounded(k, n):
        from coregrowth.posets import weak_dim

        out[lam] = Fraction(
            weak_dim(lam, k) * dimensions.strong_dim_tableaux(lam, k), factorial(n)
        )
    total = sum(out.values())
    if total != 1:
        raise AssertionError(f"measure sums to {total}, not 1")
    return out


# --- verifiers ------------------------------------------------------------

def verify_pieri_row_sums(chain: MarkovChain) -> Report:
    bad = [
        s
        for s, moves in zip(chain.states, chain.moves)
        if sum(m.rate for m in moves) != 1
    ]
    return Report(
        "pieri-row-sums", THEOREM, not bad, {"k": chain.k}, bad[0] if bad else None
    )


def verify_rate_one_over_k(chain: MarkovChain) -> Report:
    """Adding to column 1 when l_1 = k-1 must have rate exactly 1/k."""
    k = chain.k
    bad = None
    checked = 0
    for s, moves in zip(chain.states, chain.moves):
        if multiplicities(s, k)[0] != k - 1:
            continue
        checked += 1
        col1 = [m for m in moves if m.column == 1]
        if len(col1) != 1 or col1[0].rate != Fraction(1, k):
            bad = {"state": s, "moves": [(m.column, str(m.rate)) for m in moves]}
            break
    return Report(
        "column-one-rate-1/k", THEOREM, bad is None, {"k": k, "states": checked}, bad
    )


def verify_conjugation_symmetry(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    """P and pi are invariant under k-conjugation of states."""
    k = chain.k
    idx = {s: i for i, s in enumerate(chain.states)}
    conj = [idx[k_conjugate(s, k)] for s in chain.states]
    for i, row in enumerate(chain.matrix):
        mapped = {conj[j]: rate for j, rate in row.items()}
        if mapped != chain.matrix[conj[i]]:
            return Report(
                "conjugation-symmetry",
                THEOREM,
                False,
                {"k": k},
                {"state": chain.states[i]},
            )
    for i in range(chain.size):
        if pi.values[i] != pi.values[conj[i]]:
            return Report(
                "conjugation-symmetry",
                THEOREM,
                False,
                {"k": k},
                {"state": chain.states[i]},
            )
    return Report("conjugation-symmetry", THEOREM, True, {"k": k})


def verify_rho_symmetry(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    rho = rho_vector(chain, pi)
    ok = all(rho[i - 1] == rho[chain.k - i] for i in range(1, chain.k + 1))
    conserved = sum(
        rho[i - 1] * rectangle_area(i, chain.k) for i in range(1, chain.k + 1)
    )
    return Report(
        "rho-symmetry-and-box-flow",
        THEOREM,
        ok and conserved == 1,
        {"k": chain.k, "rho": [str(r) for r in rho], "area_flow": str(conserved)},
    )


def verify_complement(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    k = chain.k
    bad = None
    for s in chain.states:
        if pi.of(s) != pi.of(complement(s, k)):
            bad = {"state": s, "complement": complement(s, k)}
            break
    return Report("complement-symmetry", CONJECTURE, bad is None, {"k": k}, bad)


def mk_constant(k: int) -> int:
    out = 1
    for j in range(1, k + 1):
        out *= comb(2 * j, j)
    return out


def verify_lcd_and_mk(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    k = chain.k
    lcd = pi.lcd
    mk = mk_constant(k)
    numerators = {
        str(factorial_index(s, k)): str(pi.of(s) * mk) for s in chain.states
    }
    integral = all(pi.of(s) * mk == int(pi.of(s) * mk) for s in chain.states)
    return Report(
        "lcd-divides-Mk",
        CONJECTURE,
        mk % lcd == 0 and integral,
        {"k": k, "lcd": lcd, "Mk": mk, "A_table": numerators},
    )


def verify_minimum(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    """Minimum value, multiplicity 2^(k-1), and which l-pattern the minimizers fit."""
    k = chain.k
    predicted = Fraction((k + 1) * _prod_binom(k), mk_constant(k))
    mn = min(pi.values)
    argmin = [s for s in chain.states if pi.of(s) == mn]
    pattern_zero_or_max = all(
        all(l in (0, k - i) for i, l in enumerate(multiplicities(s, k), start=1))
        for s in argmin
    )
    pattern_zero_or_iminus1 = all(
        all(l in (0, i - 1) for i, l in enumerate(multiplicities(s, k), start=1))
        for s in argmin
    )
    ok = mn == predicted and len(argmin) == 2 ** (k - 1)
    return Report(
        "minimum-value",
        CONJECTURE,
        ok,
        {
            "k": k,
            "min": str(mn),
            "predicted": str(predicted),
            "multiplicity": len(argmin),
            "expected_multiplicity": 2 ** (k - 1),
            "minimizers_match_l_in_{0,k-i}": pattern_zero_or_max,
            "minimizers_match_l_in_{0,i-1}": pattern_zero_or_iminus1,
        },
        None if ok else {"minimizers": argmin},
    )


def _prod_binom(k: int) -> int:
    out = 1
    for j in range(1, k + 1):
        out *= comb(k, j)
    return out


def verify_position_of_k(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    """Pr[k sits at word position j] vs Pr[l_1 = j-1], per j."""
    from coregrowth.tasep import alpha_inv

    k = chain.k
    by_position = [Fraction(0)] * k
    by_ones = [Fraction(0)] * k
    for s in chain.states:
        word = alpha_inv(s, k)
        by_position[word.index(k)] += pi.of(s)
        by_ones[multiplicities(s, k)[0]] += pi.of(s)
    ok = by_position == by_ones
    return Report(
        "position-of-k",
        CONJECTURE,
        ok,
        {
            "k": k,
            "by_position": [str(x) for x in by_position],
            "by_ones": [str(x) for x in by_ones],
        },
    )


def verify_rho_conjecture(chain: MarkovChain, pi: StationaryDistribution) -> Report:
    k = chain.k
    rho = rho_vector(chain, pi)
    target = Fraction(1, comb(k + 2, 3))
    ok = all(r == target for r in rho)
    return Report(
        "rho-equals-1/C(k+2,3)",
        CONJECTURE,
        ok,
        {"k": k, "rho": [str(r) for r in rho], "target": str(target)},
    )


def verify_stationarity_identity(k: int, n: int) -> Report:
    """One-step invariance of the k-Plancherel family on the infinite chain."""
    bad = None
    for m in range(1, n + 1):
        measure = k_plancherel(k, m)
        prev = k_plancherel(k, m - 1)
        for lam, value in measure.items():
            inflow = Fraction(0)
            d_lam = dimensions.strong_dim_tableaux(lam, k)
            for mu in weak_predecessors_bounded(lam, k):
                inflow += prev[mu] * Fraction(
                    d_lam, m * dimensions.strong_dim_tableaux(mu, k)
                )
            if inflow != value:
                bad = {"n": m, "state": lam, "lhs": str(value), "rhs": str(inflow)}
                break
        if bad:
            break
    return Report(
        "plancherel-one-step-invariance", THEOREM, bad is None, {"k": k, "n": n}, bad
    )


def verify_normalization(k: int, n_max: int) -> Report:
    """Sum of w * d over k-bounded partitions of n equals n!."""
    bad = None
    from coregrowth.posets import weak_dim

    for n in range(1, n_max + 1):
        total = sum(
            weak_dim(lam, k) * dimensions.strong_dim_tableaux(lam, k)
            for lam in enumerate_bounded(k, n)
        )
        if total != factorial(n):
            bad = {"n": n, "total": total}
            break
    return Report(
        "cauchy-normalization", THEOREM, bad is None, {"k": k, "n_max": n_max}, bad
    )


# --- serialization ----------------------------------------------------------

def chain_to_json(
    chain: MarkovChain,
    pi: StationaryDistribution | None = None,
    reports: list[Report] | None = None,
) -> str:
    from coregrowth.tasep import alpha_inv, word_to_string

    k = chain.k
    payload = {
        "format": "coregrowth.chain.v1",
        "k": k,
        "states": [
            {
                "index": factorial_index(s, k),
                "parts": list(s),
                "l": list(multiplicities(s, k)),
                "word": word_to_string(alpha_inv(s, k)),
            }
            for s in chain.states
        ],
        "matrix": [
            {"from": i, "to": j, "rate": str(rate)}
            for i, row in enumerate(chain.matrix)
            for j, rate in sorted(row.items())
        ],
    }
    if pi is not None:
        payload["pi"] = {str(i): str(v) for i, v in enumerate(pi.values)}
        payload["lcd"] = pi.lcd
        payload["rho"] = [str(r) for r in rho_vector(chain, pi)]
    if reports is not None:
        payload["reports"] = [r.to_dict() for r in reports]
    return json.dumps(payload, indent=2, sort_keys=True)


def pi_csv(chain: MarkovChain, pi: StationaryDistribution) -> str:
    """CSV of the stationary vector keyed by factorial index."""
    lines = ["index,parts,numerator,denominator,value"]
    for i, s in enumerate(chain.states):
        v = pi.values[i]
        lines.append(
            '%d,"%s",%d,%d,%.12g'
            % (i, " ".join(map(str, s)), v.numerator, v.denominator, float(v))
        )
    return "\n".join(lines) + "\n"
