"""High-throughput simulation of the infinite growth process.

The k-rectangle factorization makes the infinite-chain rates equal the
finite-chain rates between reduced states (``verify_projection`` certifies
this at small sizes), so a trajectory is simulated in O(1) per step: the
reduced state moves by the exact finite rates while a ledger counts deleted
rectangles and a vector of per-residue bead frontiers tracks the growing
core.  The core boundary at step n is reconstructed from the frontiers
without ever materializing the million-row partition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from coregrowth import chain as chain_mod
from coregrowth import dimensions
from coregrowth.partitions import (
    Parts,
    bounded_to_core,
    check_reduced,
    factorial_index,
    multiplicities,
    parts_from_multiplicities,
    rectangle_area,
    reduce_rectangles,
)
from coregrowth.posets import enumerate_bounded, weak_covers_bounded
from coregrowth.reporting import THEOREM, Report


class ConfigError(ValueError):
    """Invalid run configuration."""


OUTPUT_KEYS = {"boundary_csv", "rho_csv", "occupancy_csv", "svg", "report_json"}


@dataclass
class SimConfig:
    k: int
    n: int
    seed: int = 0
    checkpoint_every: int = 0
    boundary_samples: int = 2000
    outputs: dict[str, str] = field(default_factory=dict)

    @staticmethod
    def from_json(text: str) -> "SimConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(obj) - {"k", "n", "seed", "checkpoint_every", "boundary_samples", "outputs"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key in ("k", "n"):
            if key not in obj:
                raise ConfigError(f"config key {key!r} is required")
        cfg = SimConfig(
            k=int(obj["k"]),
            n=int(obj["n"]),
            seed=int(obj.get("seed", 0)),
            checkpoint_every=int(obj.get("checkpoint_every", 0)),
            boundary_samples=int(obj.get("boundary_samples", 2000)),
            outputs=dict(obj.get("outputs", {})),
        )
        if cfg.k < 2:
            raise ConfigError("k must be at least 2")
        if cfg.n < 1:
            raise ConfigError("n must be positive")
        if cfg.checkpoint_every < 0 or cfg.boundary_samples < 2:
            raise ConfigError("checkpoint_every must be >= 0 and boundary_samples >= 2")
        bad = set(cfg.outputs) - OUTPUT_KEYS
        if bad:
            raise ConfigError(f"unknown output keys: {sorted(bad)} (known: {sorted(OUTPUT_KEYS)})")
        return cfg


@dataclass
class SimResult:
    config: SimConfig
    steps: int
    final_state: Parts
    ledger: tuple[int, ...]
    occupancy: np.ndarray  # visits per state, factorial-index order
    frontiers: tuple[int, ...]
    boundary: list[tuple[float, float]]
    rho_hat: np.ndarray
    checkpoints: list[tuple[int, int, tuple[int, ...]]]
    gamma: float
    sup_deviation: float
    mean_sq_deviation: float


def _sampling_tables(mc: chain_mod.MarkovChain):
    """Per-state cumulative thresholds, targets, columns and removal flags."""
    tables = []
    for moves in mc.moves:
        acc = 0.0
        rows = []
        for m in moves:
            acc += float(m.rate)
            rows.append((acc, factorial_index(m.target, mc.k), m.column, m.removed or 0))
        rows[-1] = (1.0 + 1e-12, *rows[-1][1:])  # guard the top bucket
        tables.append(rows)
        for m in moves:
            area = rectangle_area(m.removed, mc.k) if m.removed else 0
            assert sum(m.target) == sum(m.source) + 1 - area
    return tables


def initial_frontiers(k: int) -> list[int]:
    """Bead frontiers of the empty core: class c is full below c - (k+1)."""
    return [c - (k + 1) for c in range(k + 1)]


class Stepper:
    """One-transition-at-a-time view of a trajectory.

    Holds the same triple as the bulk runner: reduced state, rectangle
    ledger and bead frontiers, with one uniform draw consumed per step, so a
    Stepper with the same seed replays ``run_simulation`` exactly.
    """

    def __init__(self, k: int, seed: int = 0):
        self.k = k
        self._mc = chain_mod.build_chain(k)
        self._tables = _sampling_tables(self._mc)
        self._sizes = [sum(s) for s in self._mc.states]
        self.rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
        self.state_index = 0
        self.ledger = [0] * k
        self.frontiers = initial_frontiers(k)
        self._label_class = list(range(k + 1))
        self._class_label = list(range(1, k + 2))
        self.n = 0

    @property
    def reduced(self) -> Parts:
        return self._mc.states[self.state_index]

    def step(self) -> "Stepper":
        u = float(self.rng.random())
        for acc, target, column, removed in self._tables[self.state_index]:
            if u < acc:
                break
        self.state_index = target
        if removed:
            self.ledger[removed - 1] += 1
        c = self._label_class[column - 1]
        sigma = (c - 1) % (self.k + 1)
        other = self._class_label[sigma]
        self.frontiers[sigma], self.frontiers[c] = (
            self.frontiers[c] - 1,
            self.frontiers[sigma] + 1,
        )
        self._label_class[column - 1], self._label_class[other - 1] = sigma, c
        self._class_label[sigma], self._class_label[c] = column, other
        self.n += 1
        _assert_conserved(self.n, self._sizes[self.state_index], self.ledger, self.k)
        return self


def run_simulation(config: SimConfig) -> SimResult:
    k = config.k
    mc = chain_mod.build_chain(k)
    tables = _sampling_tables(mc)
    sizes = [sum(s) for s in mc.states]

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed)))
    state = 0
    ledger = [0] * k
    frontiers = initial_frontiers(k)
    label_class = list(range(k + 1))  # label i+1 sits at class label_class[i]
    class_label = list(range(1, k + 2))  # inverse map
    occupancy = np.zeros(len(mc.states), dtype=np.int64)
    checkpoints: list[tuple[int, int, tuple[int, ...]]] = []

    done = 0
    block = 65536
    while done < config.n:
        todo = min(block, config.n - done)
        for u in rng.random(todo):
            for acc, target, column, removed in tables[state]:
                if u < acc:
                    break
            state = target
            if removed:
                ledger[removed - 1] += 1
            c = label_class[column - 1]
            sigma = (c - 1) % (k + 1)
            other = class_label[sigma]
            frontiers[sigma], frontiers[c] = frontiers[c] - 1, frontiers[sigma] + 1
            label_class[column - 1], label_class[other - 1] = sigma, c
            class_label[sigma], class_label[c] = column, other
            occupancy[state] += 1
            done += 1
            if config.checkpoint_every and done % config.checkpoint_every == 0:
                _assert_conserved(done, sizes[state], ledger, k)
                checkpoints.append((done, state, tuple(ledger)))

    _assert_conserved(config.n, sizes[state], ledger, k)
    boundary = boundary_from_frontiers(frontiers, k, config.n, config.boundary_samples)
    gamma, sup_dev, mean_sq = compare_to_limit(boundary, k)
    return SimResult(
        config=config,
        steps=config.n,
        final_state=mc.states[state],
        ledger=tuple(ledger),
        occupancy=occupancy,
        frontiers=tuple(frontiers),
        boundary=boundary,
        rho_hat=np.array(ledger, dtype=float) / config.n,
        checkpoints=checkpoints,
        gamma=gamma,
        sup_deviation=sup_dev,
        mean_sq_deviation=mean_sq,
    )


def _assert_conserved(n: int, reduced_size: int, ledger, k: int) -> None:
    total = reduced_size + sum(
        c * rectangle_area(i + 1, k) for i, c in enumerate(ledger)
    )
    assert total == n, f"box conservation violated: {total} != {n}"


def spawn_seeds(seed: int, trajectories: int) -> list[int]:
    """Independent child seeds for parallel trajectories."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trajectories)]


# --- core reconstruction and boundaries ------------------------------------

def reconstruct_core(reduced: Parts, ledger, k: int, max_parts: int = 1_000_000) -> Parts:
    """Core of the un-reduced partition (reduced plus ledgered rectangles)."""
    reduced = check_reduced(reduced, k)
    l = list(multiplicities(reduced, k))
    for i, c in enumerate(ledger, start=1):
        l[i - 1] += c * (k - i + 1)
    if sum(l) > max_parts:
        raise MemoryError(
            f"reconstruction needs {sum(l)} rows; raise max_parts to allow it"
        )
    return bounded_to_core(parts_from_multiplicities(l), k)


def boundary(core: Parts, n: int) -> list[tuple[float, float]]:
    """Staircase vertices of the upper-right boundary, scaled by 1/n."""
    if not core:
        return [(0.0, 0.0)]
    pts = [(core[0] / n, 0.0)]
    i = 0
    while i < len(core):
        v = core[i]
        j = i
        while j < len(core) and core[j] == v:
            j += 1
        pts.append((v / n, j / n))
        nxt = core[j] if j < len(core) else 0
        pts.append((nxt / n, j / n))
        i = j
    return pts


def core_parts_from_frontiers(frontiers, k: int, max_parts: int = 500_000) -> Parts:
    """Explicit core rows encoded by a frontier vector (for cross-checks)."""
    r = k + 1
    top = max(frontiers)
    bottom = min(frontiers)
    parts = []
    vac_below = sum(
        1 for p in range(bottom + 1, top + 1) if frontiers[p % r] < p
    )
    for p in range(top, bottom, -1):
        if frontiers[p % r] >= p and vac_below > 0:
            parts.append(vac_below)
        if p - 1 > bottom and frontiers[(p - 1) % r] < p - 1:
            vac_below -= 1
        if len(parts) > max_parts:
            raise MemoryError("frontier spread too large for explicit rows")
    return tuple(parts)


def boundary_from_frontiers(frontiers, k: int, n: int, samples: int = 2000) -> list[tuple[float, float]]:
    """Exact sampled points on the core's staircase, scaled by 1/n.

    The bead count above a position is a closed form in the k+1 frontiers,
    so each sample costs O(k) regardless of the core size.
    """
    r = k + 1
    top = max(frontiers)
    bottom = min(frontiers)

    def above(x: int) -> int:
        return sum((g - x + r - 1) // r for g in frontiers if g > x)

    first_vac = next(p for p in range(bottom + 1, bottom + r + 2) if frontiers[p % r] < p)
    rows = above(first_vac - 1)  # rows with at least one vacancy below
    base = above(bottom)
    positions = sorted({bottom + (top - bottom) * t // (samples - 1) for t in range(samples)})
    pts = []
    for p in positions:
        x = (p - bottom) - (base - above(p))
        y = min(above(p), rows)
        pts.append((x / n, y / n))
    return sorted(set(pts))


# --- limit-curve comparison -------------------------------------------------

def limit_curve_vertices(k: int, gamma: float = 1.0) -> list[tuple[float, float]]:
    """Vertices of the conjectured piecewise-linear limit curve for k-cores."""
    return [
        (gamma * comb(i, 2), gamma * comb(k - i + 1, 2)) for i in range(1, k + 1)
    ]


def _distances_to_polyline(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    best = np.full(len(points), np.inf)
    for a, b in zip(vertices[:-1], vertices[1:]):
        d = b - a
        denom = float(d @ d)
        if denom == 0.0:
            dist = np.hypot(*(points - a).T)
        else:
            t = np.clip(((points - a) @ d) / denom, 0.0, 1.0)
            proj = a + np.outer(t, d)
            dist = np.hypot(*(points - proj).T)
        best = np.minimum(best, dist)
    return best


def compare_to_limit(boundary_pts, k: int) -> tuple[float, float, float]:
    """Fit the scale of the order-(k+1) limit curve; report deviations.

    Returns (gamma, sup distance, mean squared distance) of the boundary
    points to the fitted curve.  Both deviation metrics are reported because
    no convergence metric is canonical here.
    """
    pts = np.asarray(boundary_pts, dtype=float)
    if len(pts) == 0:
        raise ValueError("empty boundary")
    base = np.asarray(limit_curve_vertices(k + 1), dtype=float)

    def objective(gamma: float) -> float:
        return float(np.mean(_distances_to_polyline(pts, gamma * base) ** 2))

    extent = max(pts[:, 0].max(), pts[:, 1].max(), 1e-12)
    guess = extent / comb(k + 1, 2)
    lo, hi = guess / 4.0, guess * 4.0
    grid = np.linspace(lo, hi, 80)
    gamma = float(grid[int(np.argmin([objective(g) for g in grid]))])
    step = (hi - lo) / 79.0
    a, b = gamma - step, gamma + step
    for _ in range(70):  # golden-section refinement
        m1 = b - (b - a) * 0.6180339887498949
        m2 = a + (b - a) * 0.6180339887498949
        if objective(m1) <= objective(m2):
            b = m2
        else:
            a = m1
    gamma = (a + b) / 2.0
    dist = _distances_to_polyline(pts, gamma * base)
    return gamma, float(dist.max()), float(np.mean(dist**2))


def empirical_rho(k: int, n: int, seed: int) -> np.ndarray:
    """Ledger counts over n after an n-step seeded run."""
    return run_simulation(SimConfig(k=k, n=n, seed=seed)).rho_hat


# --- projection consistency --------------------------------------------------

def verify_projection(k: int, n_max: int) -> Report:
    """Infinite-chain rates equal finite-chain rates between reduced images."""
    mc = chain_mod.build_chain(k)
    moves_by_col = [
        {m.column: m for m in moves} for moves in mc.moves
    ]
    bad = None
    for n in range(n_max):
        for b in enumerate_bounded(k, n):
            d_b = dimensions.strong_dim_tableaux(b, k)
            reduced = reduce_rectangles(b, k)[0]
            table = moves_by_col[factorial_index(reduced, k)]
            for cover in weak_covers_bounded(b, k):
                col = 1 if len(cover) > len(b) else next(
                    y for x, y in zip(b, cover) if x != y
                )
                rate = Fraction(dimensions.strong_dim_tableaux(cover, k), (n + 1) * d_b)
                move = table.get(col)
                if (
                    move is None
                    or move.rate != rate
                    or move.target != reduce_rectangles(cover, k)[0]
                ):
                    bad = {"B": b, "cover": cover, "column": col, "rate": str(rate)}
                    break
            if bad:
                break
        if bad:
            break
    return Report("projection-consistency", THEOREM, bad is None, {"k": k, "n_max": n_max}, bad)


# --- output files -------------------------------------------------------------

def boundary_csv(points) -> str:
    lines = ["x,y"]
    lines.extend("%.12g,%.12g" % (x, y) for x, y in points)
    return "\n".join(lines) + "\n"


def rho_csv(result: SimResult) -> str:
    target = 1.0 / comb(result.config.k + 2, 3)
    lines = ["i,count,rho_hat,conjectured"]
    for i, c in enumerate(result.ledger, start=1):
        lines.append("%d,%d,%.12g,%.12g" % (i, c, c / result.steps, target))
    return "\n".join(lines) + "\n"


def occupancy_csv(result: SimResult, pi: chain_mod.StationaryDistribution | None = None) -> str:
    mc_states = chain_mod.build_chain(result.config.k).states
    lines = ["index,parts,visits,frequency" + (",pi" if pi else "")]
    for i, s in enumerate(mc_states):
        row = '%d,"%s",%d,%.12g' % (
            i,
            " ".join(map(str, s)),
            int(result.occupancy[i]),
            result.occupancy[i] / result.steps,
        )
        if pi:
            row += ",%.12g" % float(pi.values[i])
        lines.append(row)
    return "\n".join(lines) + "\n"


def overlay_svg(result: SimResult) -> str:
    """Boundary polyline with the fitted limit curve, as a standalone SVG."""
    k = result.config.k
    pts = result.boundary
    curve = [(result.gamma * x, result.gamma * y) for x, y in limit_curve_vertices(k + 1)]
    extent = max(max(x for x, _ in pts + curve), max(y for _, y in pts + curve)) * 1.05
    size = 640

    def svg_pts(seq):
        return " ".join(
            "%.2f,%.2f" % (x / extent * size, size - y / extent * size) for x, y in seq
        )

    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">\n'
        '<rect width="%d" height="%d" fill="white"/>\n'
        '<polyline points="%s" fill="none" stroke="#888" stroke-width="1"/>\n'
        '<polyline points="%s" fill="none" stroke="#c22" stroke-width="2" '
        'stroke-dasharray="6 3"/>\n'
        "<text x='8' y='16' font-size='12'>k=%d n=%d gamma=%.6g sup_dev=%.3g</text>\n"
        "</svg>\n"
        % (
            size,
            size,
            size,
            size,
            size,
            size,
            svg_pts(pts),
            svg_pts(curve),
            k,
            result.steps,
            result.gamma,
            result.sup_deviation,
        )
    )


def write_outputs(result: SimResult, pi=None) -> list[str]:
    written = []
    outs = result.config.outputs
    if "boundary_csv" in outs:
        _write(outs["boundary_csv"], boundary_csv(result.boundary))
        written.append(outs["boundary_csv"])
    if "rho_csv" in outs:
        _write(outs["rho_csv"], rho_csv(result))
        written.append(outs["rho_csv"])
    if "occupancy_csv" in outs:
        _write(outs["occupancy_csv"], occupancy_csv(result, pi))
        written.append(outs["occupancy_csv"])
    if "svg" in outs:
        _write(outs["svg"], overlay_svg(result))
        written.append(outs["svg"])
    if "report_json" in outs:
        payload = {
            "k": result.config.k,
            "n": result.steps,
            "seed": result.config.seed,
            "final_state": list(result.final_state),
            "ledger": list(result.ledger),
            "rho_hat": [float(x) for x in result.rho_hat],
            "gamma": result.gamma,
            "sup_deviation": result.sup_deviation,
            "mean_sq_deviation": result.mean_sq_deviation,
        }
        _write(outs["report_json"], json.dumps(payload, indent=2, sort_keys=True) + "\n")
        written.append(outs["report_json"])
    return written


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
