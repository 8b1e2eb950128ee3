"""Command-line surface.

Exit codes: 0 when every hard (theorem-grade) assertion passed, 1 when a
theorem or structural invariant failed, 2 on usage or configuration errors.
Conjecture verdicts are findings and never affect the exit code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from coregrowth import chain as chain_mod
from coregrowth import dimensions, simulate, tasep
from coregrowth.partitions import (
    check_k_bounded,
    enumerate_reduced_states,
    factorial_index,
    is_reduced,
    multiplicities,
)
from coregrowth.posets import weak_dim
from coregrowth.reporting import Report, hard_failures

EXIT_OK = 0
EXIT_HARD_FAIL = 1
EXIT_USAGE = 2

CACHE_ENV = "COREGROWTH_CACHE"


@dataclass
class RunReport:
    command: str
    k: int | None
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    verifiers: list[dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "k": self.k,
                "inputs": self.inputs,
                "results": self.results,
                "verifiers": self.verifiers,
                "seconds": round(self.seconds, 3),
            },
            indent=2,
            sort_keys=True,
        )


def parse_partition(text: str):
    """Accept '2,1,1', '[2,1,1]' or '' for the empty partition."""
    text = text.strip().strip("[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse partition {text!r}") from exc


def _cache_dir(args) -> str | None:
    return args.cache or os.environ.get(CACHE_ENV)


def _load_dim_cache(k: int, cache: str | None) -> str | None:
    if not cache:
        return None
    path = os.path.join(cache, f"dimtable_k{k}.json")
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            dimensions.load_dimension_table(fh.read())
    return path


def _save_dim_cache(k: int, path: str | None) -> None:
    if not path:
        return
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    table = dimensions._TABLES.get(k)
    if table is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dimensions.dimension_table_json(k, table.max_level))


def cmd_dims(args) -> int:
    k = args.k
    cache_path = _load_dim_cache(k, _cache_dir(args))
    if args.all_reduced:
        targets = list(enumerate_reduced_states(k))
    else:
        try:
            targets = [check_k_bounded(args.partition, k)]
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    print(f"{'partition':>20} {'d^(k)':>12} {'w^(k)':>12} {'d_hook':>12}  sandwich")
    for lam in targets:
        d_strong = dimensions.strong_dim_tableaux(lam, k)
        d_weak = weak_dim(lam, k)
        d_hook = dimensions.hook_dim(lam)
        ok = d_weak <= d_hook <= d_strong
        flag = "w<=d<=d^(k)" if ok else "VIOLATED"
        if k >= sum(lam):
            flag += " (equality regime)" if d_weak == d_hook == d_strong else " (equality VIOLATED)"
        name = "(" + ",".join(map(str, lam)) + ")" if lam else "()"
        print(f"{name:>20} {d_strong:>12} {d_weak:>12} {d_hook:>12}  {flag}")
        if not ok:
            return EXIT_HARD_FAIL
    _save_dim_cache(k, cache_path)
    return EXIT_OK


def _assemble_chain(k: int):
    mc = chain_mod.build_chain(k)
    pi = chain_mod.stationary(mc)
    return mc, pi


def _theorem_reports(k: int, mc, pi) -> list[Report]:
    return [
        chain_mod.verify_pieri_row_sums(mc),
        chain_mod.verify_rate_one_over_k(mc),
        chain_mod.verify_conjugation_symmetry(mc, pi),
        chain_mod.verify_rho_symmetry(mc, pi),
        tasep.verify_tasep_equivalence(k),
        tasep.verify_rectangle_jump(k),
        simulate.verify_projection(k, 10),
        chain_mod.verify_stationarity_identity(k, 6),
        chain_mod.verify_normalization(k, 6),
    ]


def _conjecture_reports(k: int, mc, pi) -> list[Report]:
    return [
        chain_mod.verify_complement(mc, pi),
        chain_mod.verify_lcd_and_mk(mc, pi),
        chain_mod.verify_minimum(mc, pi),
        chain_mod.verify_position_of_k(mc, pi),
        chain_mod.verify_rho_conjecture(mc, pi),
    ]


def cmd_chain(args) -> int:
    k = args.k
    if not 2 <= k <= 6 and not args.force:
        print(
            f"error: k={k} outside the guarded range 2..6 (pass --force to override)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    t0 = time.perf_counter()
    cache_path = _load_dim_cache(k, _cache_dir(args))
    mc, pi = _assemble_chain(k)
    reports = _theorem_reports(k, mc, pi) + _conjecture_reports(k, mc, pi)
    _save_dim_cache(k, cache_path)
    print(f"chain on {mc.size} states, k={k}")
    print(f"lcd(pi) = {pi.lcd}")
    for i, s in enumerate(mc.states):
        name = "(" + ",".join(map(str, s)) + ")" if s else "()"
        print(f"  {i:>4} {name:>24}  pi = {pi.values[i]}")
    for r in reports:
        print(r.line())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(chain_mod.chain_to_json(mc, pi, reports))
        print(f"wrote {args.json}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(chain_mod.pi_csv(mc, pi))
        print(f"wrote {args.csv}")
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")
    return EXIT_HARD_FAIL if hard_failures(reports) else EXIT_OK


def cmd_simulate(args) -> int:
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                config = simulate.SimConfig.from_json(fh.read())
        else:
            if args.k is None or args.n is None:
                print("error: either --config or both --k and --n", file=sys.stderr)
                return EXIT_USAGE
            outputs = {}
            if args.csv:
                outputs["boundary_csv"] = args.csv
            if args.svg:
                outputs["svg"] = args.svg
            config = simulate.SimConfig(k=args.k, n=args.n, seed=args.seed, outputs=outputs)
    except (OSError, simulate.ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        result = simulate.run_simulation(config)
        pi = chain_mod.stationary(chain_mod.build_chain(config.k))
        written = simulate.write_outputs(result, pi)
    except AssertionError as exc:
        print(f"hard assertion failed: {exc}", file=sys.stderr)
        return EXIT_HARD_FAIL
    print(
        "k=%d n=%d seed=%d  gamma=%.6g sup_dev=%.4g mean_sq=%.4g"
        % (
            config.k,
            config.n,
            config.seed,
            result.gamma,
            result.sup_deviation,
            result.mean_sq_deviation,
        )
    )
    print("rho_hat:", " ".join("%.6g" % x for x in result.rho_hat))
    for path in written:
        print(f"wrote {path}")
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")
    return EXIT_OK


def cmd_verify(args) -> int:
    k = args.k
    t0 = time.perf_counter()
    report = RunReport(command="verify", k=k, inputs={"suite": args.suite})
    reports: list[Report] = []
    if args.suite in ("theorems", "conjectures", "all"):
        mc, pi = _assemble_chain(k)
        if args.suite in ("theorems", "all"):
            reports += _theorem_reports(k, mc, pi)
        if args.suite in ("conjectures", "all"):
            reports += _conjecture_reports(k, mc, pi)
    if args.suite in ("appendix", "all"):
        reports += appendix_reports(k)
    for r in reports:
        print(r.line())
    report.verifiers = [r.to_dict() for r in reports]
    report.seconds = time.perf_counter() - t0
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        print(f"wrote {args.json}")
    failed = hard_failures(reports)
    print(
        f"{len(reports)} checks, {sum(r.passed for r in reports)} passed, "
        f"{len(failed)} hard failures ({report.seconds:.2f}s)"
    )
    return EXIT_HARD_FAIL if failed else EXIT_OK


def appendix_reports(k: int) -> list[Report]:
    """Operator-calculus property checks (composition sums, expansions, vanishing)."""
    from coregrowth.verify_appendix import (
        verify_composition_sums,
        verify_interval_expansion,
        verify_inversion_expansion,
        verify_long_columns,
        verify_vanishing,
    )

    return [
        verify_composition_sums(12),
        verify_inversion_expansion(max_t=5, vectors=100, seed=20260810),
        verify_interval_expansion(max_k=8),
        verify_vanishing(max_t=5, max_entry=4),
        verify_long_columns(min(k, 4)),
    ]


def cmd_tasep(args) -> int:
    k = args.k
    try:
        if args.word:
            word = tasep.word_from_string(args.word)
            if len(word) != k + 1:
                raise ValueError(f"word has {len(word)} letters, expected {k + 1}")
            state = tasep.alpha(word)
        elif args.state is not None:
            state = tuple(args.state)
            if not is_reduced(state, k):
                raise ValueError(f"{state!r} is not a reduced state for k={k}")
            word = tasep.alpha_inv(state, k)
        else:
            print("error: provide --word or --state", file=sys.stderr)
            return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    name = "(" + ",".join(map(str, state)) + ")" if state else "()"
    print(f"state {name}   l = {multiplicities(state, k)}")
    print(f"word  {tasep.word_to_string(word)}")
    print(f"factorial index {factorial_index(state, k)}")
    for value, moved in tasep.jumps(word):
        target = tasep.alpha(moved)
        tname = "(" + ",".join(map(str, target)) + ")" if target else "()"
        print(
            f"jump of {value}: {tasep.word_to_string(moved)}  -> column {value}, state {tname}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coregrowth",
        description="Exact growth process on core partitions: dimensions, chain, TASEP, simulation.",
    )
    parser.add_argument("--cache", help="directory for dimension-table caches", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension table for a partition or all reduced states")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("partition", nargs="?", type=parse_partition, default=())
    p.add_argument("--all-reduced", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("chain", help="build and solve the finite chain exactly")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", help="write chain.json here")
    p.add_argument("--csv", help="write the stationary vector CSV here")
    p.add_argument("--force", action="store_true", help="lift the 2<=k<=6 guard")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("simulate", help="run the growth simulator")
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="boundary CSV path")
    p.add_argument("--svg", help="overlay SVG path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run a verifier suite")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--suite",
        choices=["theorems", "conjectures", "appendix", "all"],
        default="all",
    )
    p.add_argument("--json", help="write the run report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tasep", help="dump the state/word correspondence and jumps")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--word", help="word like 1-4-2-3-5")
    p.add_argument("--state", type=parse_partition, default=None)
    p.set_defaults(func=cmd_tasep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"hard assertion failed: {exc}", file=sys.stderr)
        return EXIT_HARD_FAIL


if __name__ == "__main__":
    sys.exit(main())
