"""Batch front end: instance files in, reports out.

Subcommands:
  compute   assemble the monodromy at infinity and run all checks
  bounds    admissible range table for the defect vector beta
  defect    linear-system defect of a rational point set
  zeta      zeta function of the top form
  oracle    cross-check the combinatorial power rule against matrix ranks

Exit codes: 0 success, 1 input error, 2 consistency-check failure.
With --json the output is machine-readable and byte-deterministic for
identical inputs, flags and seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from functools import lru_cache
from pathlib import Path

from .cyclic import cyclic_power
from .cyclo import UnitRoot
from .defect import ProjectivePointSet, defect_of_system, nodal_beta
from .infinity import (
    DEFAULT_ENUMERATE_CAP,
    InstanceError,
    assemble,
    beta_bounds,
    chi_vector,
    parse_problem,
    zeta_of_top_form,
)
from .jordan import JordanStructure
from .oracle import (
    DEFAULT_LEVEL_CAP,
    SpectrumNotCovered,
    verify_cyclic_agreement,
)


def _load_json(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON in {path}: {exc}") from exc


def _emit(args: argparse.Namespace, text: str, doc: object) -> None:
    if args.json:
        out = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_compute(args: argparse.Namespace) -> int:
    spec = parse_problem(_load_json(args.instance))
    report = assemble(spec, enumerate_cap=args.enumerate_cap)
    _emit(args, report.to_text(), report.to_json())
    return 2 if report.has_failures() else 0


def cmd_bounds(args: argparse.Namespace) -> int:
    spec = parse_problem(_load_json(args.instance))
    chi = chi_vector(spec.n, spec.d, spec.milnor_numbers())
    rows = []
    for s in range(spec.d):
        lower, upper = beta_bounds(spec, s)
        rows.append({"s": s, "eigenvalue": str(UnitRoot(s, spec.d)),
                     "lower": lower, "upper": upper})
    lines = [f"admissible beta ranges for n = {spec.n}, d = {spec.d}",
             f"chi = {chi}"]
    for row in rows:
        lines.append(f"  s = {row['s']} (eigenvalue {row['eigenvalue']}): "
                     f"{row['lower']}..{row['upper']}")
    doc = {"n": spec.n, "d": spec.d, "chi": chi, "bounds": rows}
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_zeta(args: argparse.Namespace) -> int:
    spec = parse_problem(_load_json(args.instance))
    zeta = zeta_of_top_form(spec)
    chi = chi_vector(spec.n, spec.d, spec.milnor_numbers())
    text = (f"zeta of the top form for n = {spec.n}, d = {spec.d}: {zeta}\n"
            f"chi = {chi}")
    doc = {"n": spec.n, "d": spec.d, "chi": chi,
           "zeta": zeta.to_json(), "zeta_display": str(zeta)}
    _emit(args, text, doc)
    return 0


def cmd_defect(args: argparse.Namespace) -> int:
    data = _load_json(args.points)
    if args.nodal is not None:
        n, d = args.nodal
        points = ProjectivePointSet.from_json(data, dim=n)
        beta = nodal_beta(points, n, d)
        text = f"beta = {beta}"
        doc = {"n": n, "d": d, "points": len(points), "beta": beta}
    else:
        points = ProjectivePointSet.from_json(data)
        value = defect_of_system(points, args.degree)
        text = (f"defect = {value} "
                f"(k = {len(points)} points, degree q = {args.degree})")
        doc = {"q": args.degree, "points": len(points), "defect": value}
    _emit(args, text, doc)
    return 0


@lru_cache(maxsize=None)
def _partitions(total: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    if max_part is None:
        max_part = total
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _roots_with_order_dividing(order: int) -> list[UnitRoot]:
    roots = {UnitRoot(num, den) for den in range(1, order + 1)
             if order % den == 0 for num in range(den)}
    return sorted(roots)


def _exhaustive_structures(roots: list[UnitRoot], max_dim: int):
    """Every Jordan structure of dimension 1..max_dim over the given roots."""
    def rec(idx: int, budget: int):
        if idx == len(roots):
            yield []
            return
        for weight in range(budget + 1):
            for part in _partitions(weight):
                for tail in rec(idx + 1, budget - weight):
                    head = [(roots[idx], size) for size in part]
                    yield head + tail
    for blocks in rec(0, max_dim):
        if blocks:
            yield JordanStructure.from_blocks(blocks)


def _random_structure(rng: random.Random, max_dim: int,
                      orders: list[int]) -> JordanStructure:
    remaining = rng.randint(1, max_dim)
    blocks = []
    while remaining:
        size = rng.randint(1, remaining)
        den = rng.choice(orders)
        blocks.append((UnitRoot(rng.randrange(den), den), size))
        remaining -= size
    return JordanStructure.from_blocks(blocks)


def cmd_oracle(args: argparse.Namespace) -> int:
    exhaustive = args.seed is None
    max_dim = args.max_dim if args.max_dim is not None else (4 if exhaustive else 6)
    max_m = args.max_m if args.max_m is not None else (3 if exhaustive else 5)
    if max_dim < 1 or max_m < 2:
        raise InstanceError("oracle needs --max-dim >= 1 and --max-m >= 2")
    cases = []
    if exhaustive:
        for structure in _exhaustive_structures(_roots_with_order_dividing(6),
                                                max_dim):
            for m in range(2, max_m + 1):
                cases.append((structure, m))
    else:
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            cases.append((_random_structure(rng, max_dim, [1, 2, 3, 4, 6, 12]),
                          rng.randint(2, max_m)))
    counterexamples = []
    for structure, m in cases:
        try:
            expected, actual = verify_cyclic_agreement(
                structure, m, level_cap=args.oracle_level_cap)
        except SpectrumNotCovered as exc:
            counterexamples.append((structure, m, cyclic_power(structure, m),
                                    None, str(exc)))
            continue
        if expected != actual:
            counterexamples.append((structure, m, expected, actual, None))
    lines = []
    if exhaustive:
        lines.append(
            f"oracle: exhaustive sweep, {len(cases)} comparisons "
            f"(dimension <= {max_dim}, eigenvalue orders dividing 6, "
            f"m in 2..{max_m})")
    else:
        lines.append(
            f"oracle: {args.trials} random trials, seed {args.seed} "
            f"(dimension <= {max_dim}, eigenvalue orders dividing 12, "
            f"m in 2..{max_m})")
    rows = []
    for structure, m, expected, actual, error in counterexamples:
        lines.append(f"counterexample at m = {m}:")
        lines.append(f"  structure: {json.dumps(structure.to_json())}")
        lines.append(f"  combinatorial rule: {json.dumps(expected.to_json())}")
        if actual is not None:
            lines.append(f"  matrix ranks:       {json.dumps(actual.to_json())}")
        if error is not None:
            lines.append(f"  matrix route failed: {error}")
        rows.append({
            "m": m,
            "structure": structure.to_json(),
            "expected": expected.to_json(),
            "actual": None if actual is None else actual.to_json(),
            "error": error,
        })
    lines.append("all comparisons agree" if not counterexamples else
                 f"{len(counterexamples)} disagreements found")
    doc = {
        "mode": "exhaustive" if exhaustive else "random",
        "max_dim": max_dim,
        "max_m": max_m,
        "seed": args.seed,
        "trials": None if exhaustive else args.trials,
        "comparisons": len(cases),
        "counterexamples": rows,
    }
    _emit(args, "\n".join(lines), doc)
    return 2 if counterexamples else 0


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON report")
    parser.add_argument("--output", metavar="PATH",
                        help="write the report to PATH instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moninf",
        description="exact Jordan structure of the monodromy at infinity")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute",
                       help="assemble the operator and run all checks")
    p.add_argument("instance", help="instance JSON document")
    p.add_argument("--enumerate-cap", type=int, default=DEFAULT_ENUMERATE_CAP,
                   help="maximum number of beta vectors in enumerate mode")
    _add_output_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="admissible beta range table")
    p.add_argument("instance", help="instance JSON document")
    _add_output_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("zeta", help="zeta function of the top form")
    p.add_argument("instance", help="instance JSON document")
    _add_output_flags(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("defect",
                       help="defect of a linear system through rational points")
    p.add_argument("points", help="JSON list of projective points")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degree", type=int, metavar="Q",
                       help="defect of the degree-Q system through the points")
    group.add_argument("--nodal", nargs=2, type=int, metavar=("N", "D"),
                       help="full beta vector for nodes in P^N, degree D")
    _add_output_flags(p)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("oracle",
                       help="compare the power rule against matrix ranks")
    p.add_argument("--max-dim", type=int, default=None,
                   help="largest structure dimension (default 4, or 6 with --seed)")
    p.add_argument("--max-m", type=int, default=None,
                   help="largest power m (default 3, or 5 with --seed)")
    p.add_argument("--seed", type=int, default=None,
                   help="switch to seeded random trials")
    p.add_argument("--trials", type=int, default=100,
                   help="number of random trials (with --seed)")
    p.add_argument("--oracle-level-cap", type=int, default=DEFAULT_LEVEL_CAP,
                   metavar="N", help="largest cyclotomic field level allowed")
    _add_output_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are input errors (exit 2 is reserved for check failures)
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
