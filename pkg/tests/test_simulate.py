import math

import numpy as np
import pytest

from coregrowth.chain import build_chain, stationary
from coregrowth.partitions import EMPTY, bounded_to_core
from coregrowth.simulate import (
    ConfigError,
    SimConfig,
    boundary,
    boundary_csv,
    compare_to_limit,
    core_parts_from_frontiers,
    empirical_rho,
    initial_frontiers,
    limit_curve_vertices,
    occupancy_csv,
    overlay_svg,
    reconstruct_core,
    rho_csv,
    run_simulation,
    spawn_seeds,
    verify_projection,
    write_outputs,
)


def test_config_parsing():
    cfg = SimConfig.from_json('{"k": 3, "n": 100, "seed": 5}')
    assert (cfg.k, cfg.n, cfg.seed) == (3, 100, 5)
    with pytest.raises(ConfigError):
        SimConfig.from_json('{"k": 3}')
    with pytest.raises(ConfigError):
        SimConfig.from_json('{"k": 1, "n": 10}')
    with pytest.raises(ConfigError):
        SimConfig.from_json('{"k": 3, "n": 10, "outputs": {"bogus": "x"}}')
    with pytest.raises(ConfigError):
        SimConfig.from_json("not json")


def test_projection_consistency():
    assert verify_projection(3, 10).passed
    assert verify_projection(4, 8).passed


def test_reconstruct_core():
    assert reconstruct_core((3, 1), (0, 0, 0, 0), 4) == bounded_to_core((3, 1), 4)
    assert reconstruct_core((3, 1), (0, 0, 0, 1), 4) == (7, 3, 1)
    with pytest.raises(MemoryError):
        reconstruct_core(EMPTY, (10_000_000, 0, 0), 3, max_parts=100)


def test_boundary_staircase():
    assert boundary(EMPTY, 1) == [(0.0, 0.0)]
    assert boundary((2, 1), 1) == [
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
    ]


def test_initial_frontiers_are_empty_core():
    for k in (2, 3, 4):
        assert core_parts_from_frontiers(initial_frontiers(k), k) == EMPTY


def test_frontier_tracking_matches_explicit_reconstruction():
    for k, n, seed in ((3, 200, 1), (3, 357, 9), (4, 400, 2), (5, 250, 3)):
        result = run_simulation(SimConfig(k=k, n=n, seed=seed))
        reduced = result.final_state
        explicit = reconstruct_core(reduced, result.ledger, k)
        assert core_parts_from_frontiers(result.frontiers, k) == explicit


def test_boundary_from_frontiers_lies_on_staircase():
    k, n = 3, 150
    result = run_simulation(SimConfig(k=k, n=n, seed=4, boundary_samples=400))
    core = reconstruct_core(result.final_state, result.ledger, k)
    heights = [0] * (core[0] + 1) if core else [0]
    for x in range(core[0] + 1):
        heights[x] = sum(1 for p in core if p > x)
    for x_scaled, y_scaled in result.boundary:
        x = round(x_scaled * n)
        y = round(y_scaled * n)
        # a staircase point (x, y): y rows extend strictly past x
        assert 0 <= x <= core[0]
        assert heights[x] <= y <= (heights[x - 1] if x else len(core))


def test_determinism_and_seed_sensitivity():
    a = run_simulation(SimConfig(k=3, n=5000, seed=42, checkpoint_every=1000))
    b = run_simulation(SimConfig(k=3, n=5000, seed=42, checkpoint_every=1000))
    c = run_simulation(SimConfig(k=3, n=5000, seed=43))
    assert np.array_equal(a.occupancy, b.occupancy)
    assert a.ledger == b.ledger
    assert a.frontiers == b.frontiers
    assert a.checkpoints == b.checkpoints
    assert boundary_csv(a.boundary) == boundary_csv(b.boundary)
    assert not np.array_equal(a.occupancy, c.occupancy)


def test_empirical_rho_short_run():
    rho = empirical_rho(3, 30_000, seed=11)
    assert rho.shape == (3,)
    assert np.all(np.abs(rho - 0.1) < 0.02)


def test_occupancy_tracks_pi_roughly():
    mc = build_chain(3)
    pi = stationary(mc)
    result = run_simulation(SimConfig(k=3, n=50_000, seed=7))
    freq = result.occupancy / result.steps
    for i in range(6):
        p = float(pi.values[i])
        se = math.sqrt(p * (1 - p) / result.steps)
        assert abs(freq[i] - p) < 6 * se


def test_limit_curve_vertices():
    assert limit_curve_vertices(4) == [(0, 6), (1, 3), (3, 1), (6, 0)]


def test_compare_to_limit_symmetry():
    pts = [(0.0, 0.5), (0.1, 0.25), (0.3, 0.1), (0.5, 0.0)]
    swapped = [(y, x) for x, y in pts]
    g1, sup1, ms1 = compare_to_limit(pts, 3)
    g2, sup2, ms2 = compare_to_limit(swapped, 3)
    assert g1 == pytest.approx(g2, rel=1e-6)
    assert sup1 == pytest.approx(sup2, rel=1e-6)
    assert ms1 == pytest.approx(ms2, rel=1e-6)


def test_deviation_shrinks_with_n():
    devs = []
    for n in (2_000, 20_000, 200_000):
        result = run_simulation(SimConfig(k=3, n=n, seed=12))
        devs.append(result.sup_deviation)
    assert devs[2] < devs[0]


def test_two_seeds_agree_at_scale():
    a = run_simulation(SimConfig(k=3, n=60_000, seed=1, boundary_samples=300))
    b = run_simulation(SimConfig(k=3, n=60_000, seed=2, boundary_samples=300))
    xs = np.linspace(0.0, min(a.boundary[-1][0], b.boundary[-1][0]), 50)

    def interp(pts, x):
        arr = np.array(pts)
        return np.interp(x, arr[:, 0], arr[:, 1])

    gap = np.max(np.abs(interp(a.boundary, xs) - interp(b.boundary, xs)))
    assert gap < 0.05


def test_spawn_seeds_distinct():
    seeds = spawn_seeds(0, 4)
    assert len(set(seeds)) == 4


def test_output_files(tmp_path):
    cfg = SimConfig(
        k=3,
        n=2000,
        seed=3,
        outputs={
            "boundary_csv": str(tmp_path / "b.csv"),
            "rho_csv": str(tmp_path / "r.csv"),
            "occupancy_csv": str(tmp_path / "o.csv"),
            "svg": str(tmp_path / "s.svg"),
            "report_json": str(tmp_path / "rep.json"),
        },
    )
    result = run_simulation(cfg)
    pi = stationary(build_chain(3))
    written = write_outputs(result, pi)
    assert len(written) == 5
    assert (tmp_path / "b.csv").read_text().startswith("x,y")
    assert "conjectured" in (tmp_path / "r.csv").read_text()
    assert "pi" in (tmp_path / "o.csv").read_text().splitlines()[0]
    assert (tmp_path / "s.svg").read_text().startswith("<svg")
    assert rho_csv(result).count("\n") == 4
    assert occupancy_csv(result, pi).count("\n") == 7
    assert overlay_svg(result).endswith("</svg>\n")


def test_occupancy_matches_pi_k4_long_run():
    mc = build_chain(4)
    pi = stationary(mc)
    result = run_simulation(SimConfig(k=4, n=1_000_000, seed=5))
    freq = result.occupancy / result.steps
    for i in range(24):
        p = float(pi.values[i])
        se = math.sqrt(p * (1 - p) / result.steps)
        assert abs(freq[i] - p) <= 3 * se


def test_stepper_replays_bulk_runner():
    from coregrowth.simulate import Stepper

    bulk = run_simulation(SimConfig(k=3, n=500, seed=42))
    stepper = Stepper(3, seed=42)
    for _ in range(500):
        stepper.step()
    assert stepper.reduced == bulk.final_state
    assert tuple(stepper.ledger) == bulk.ledger
    assert tuple(stepper.frontiers) == bulk.frontiers
    assert stepper.n == 500
