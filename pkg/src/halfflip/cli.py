"""Command line front end: ``halfflip {generate,detect,factors,verify,backtrack}``.

Exit status: 0 success, 1 verification failure (or a half-flip found by
``detect``), 2 usage error, 3 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .detect import find_half_flip_brute, find_half_flip_fast
from .factors import (
    DEFAULT_MAX_MATERIAL,
    ResourceCapExceeded,
    factor_set_exact,
    image_factor_set,
    offset_profile,
)
from .proof import THEOREMS, verify_theorem
from .search import DEFAULT_MAX_LENGTH, DEFAULT_MAX_NODES, backtrack_longest
from .words import (
    BUILTIN_MORPHISMS,
    FixedPointSpec,
    MorphismError,
    UniformMorphism,
    apply_morphism,
    fixed_point_prefix,
    load_morphism,
    read_words,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
COMMANDS = ("generate", "detect", "factors", "verify", "backtrack")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    period_bound: int = 500
    min_period: int = 1
    prefix_length: int = 0
    distinct_halves: bool = False
    max_material: int = DEFAULT_MAX_MATERIAL
    max_nodes: int = DEFAULT_MAX_NODES
    max_length: int = DEFAULT_MAX_LENGTH
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command == "detect" and not (1 <= self.min_period <= self.period_bound):
            raise UsageError("need 1 <= --min-period <= --max-period")
        if self.min_period < 1:
            raise UsageError("--min-period must be positive")
        if self.period_bound < 0 or self.prefix_length < 0:
            raise UsageError("bounds must be non-negative")
        if min(self.max_material, self.max_nodes, self.max_length) < 1:
            raise UsageError("caps must be positive")
        if self.format not in ("json", "text"):
            raise UsageError("--format must be json or text")


def resolve_morphism(ref: str) -> UniformMorphism:
    if ref in BUILTIN_MORPHISMS:
        return BUILTIN_MORPHISMS[ref]
    if not Path(ref).is_file():
        raise UsageError(f"unknown morphism {ref!r}: not one of {sorted(BUILTIN_MORPHISMS)} nor a file")
    try:
        return load_morphism(ref)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid morphism file {ref}: {exc}") from exc


def _fixed_point(args) -> FixedPointSpec:
    try:
        return FixedPointSpec(resolve_morphism(args.morphism), args.seed)
    except MorphismError as exc:
        raise UsageError(str(exc)) from exc


def _image(args) -> UniformMorphism | None:
    return resolve_morphism(args.image) if args.image else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="halfflip", description="Half-flip avoidance toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    morph = argparse.ArgumentParser(add_help=False)
    morph.add_argument("--morphism", default="m", help="builtin name (m, f3, f2) or JSON file")
    morph.add_argument("--seed", type=int, default=0)
    morph.add_argument("--image", help="optional second morphism applied to the fixed point")
    morph.add_argument("--max-material", type=int, default=DEFAULT_MAX_MATERIAL)

    p = sub.add_parser("generate", parents=[common, morph], help="write a prefix of a (morphic) word")
    p.add_argument("--length", "-n", type=int, required=True)

    p = sub.add_parser("detect", parents=[common], help="look for half-flips in words from a file")
    p.add_argument("--file", required=True)
    p.add_argument("--min-period", type=int, default=1)
    p.add_argument("--max-period", type=int, default=500)
    p.add_argument("--distinct-halves", action="store_true")
    p.add_argument("--brute", action="store_true", help="use the reference detector")

    p = sub.add_parser("factors", parents=[common, morph], help="export an exact factor set")
    p.add_argument("--length", "-L", type=int, required=True)
    p.add_argument("--offsets", action="store_true", help="export the offset profile instead")

    p = sub.add_parser("verify", parents=[common], help="run a theorem pipeline")
    p.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    p.add_argument("--max-period", type=int, default=500)
    p.add_argument("--max-material", type=int, default=DEFAULT_MAX_MATERIAL)

    p = sub.add_parser("backtrack", parents=[common], help="longest half-flip-free words")
    p.add_argument("--alphabet", "-s", type=int, required=True)
    p.add_argument("--min-period", "-k", type=int, default=1)
    p.add_argument("--distinct-halves", action="store_true")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    p.add_argument("--canonical", action="store_true", help="full letter-permutation symmetry reduction")
    return parser


def config_from_args(args) -> RunConfig:
    max_nodes = getattr(args, "max_nodes", None)
    if max_nodes is None:
        max_nodes = int(os.environ.get("HALFFLIP_MAX_NODES", DEFAULT_MAX_NODES))
    return RunConfig(
        command=args.command,
        period_bound=getattr(args, "max_period", 500),
        min_period=getattr(args, "min_period", 1),
        prefix_length=getattr(args, "length", 0),
        distinct_halves=getattr(args, "distinct_halves", False),
        max_material=getattr(args, "max_material", DEFAULT_MAX_MATERIAL),
        max_nodes=max_nodes,
        max_length=getattr(args, "max_length", DEFAULT_MAX_LENGTH),
        output=args.output,
        format=args.format,
    )


def _generate(cfg: RunConfig, args) -> tuple[int, dict, str]:
    spec = _fixed_point(args)
    f = _image(args)
    n = cfg.prefix_length
    if f is None:
        word = fixed_point_prefix(spec, n)
    else:
        word = apply_morphism(f, fixed_point_prefix(spec, -(-n // f.q)))[:n]
    report = {"morphism": args.morphism, "seed": args.seed, "image": args.image,
              "length": n, "word": str(word)}
    return EXIT_OK, report, str(word) + "\n"


def _detect(cfg: RunConfig, args) -> tuple[int, dict, str]:
    try:
        words = read_words(args.file)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read words from {args.file}: {exc}") from exc
    find = find_half_flip_brute if args.brute else find_half_flip_fast
    results = []
    lines = []
    for i, w in enumerate(words):
        hit = find(w, cfg.min_period, cfg.period_bound, cfg.distinct_halves)
        results.append({"index": i, "length": len(w), "witness": hit.to_json() if hit else None})
        if hit:
            lines.append(f"word {i}: half-flip of period {hit.period}: uv={hit.uv} at {hit.pos_uv}, "
                         f"vu={hit.vu} at {hit.pos_vu}")
        else:
            lines.append(f"word {i}: absent")
    found = any(r["witness"] for r in results)
    report = {"file": str(args.file), "min_period": cfg.min_period, "max_period": cfg.period_bound,
              "distinct_halves": cfg.distinct_halves, "results": results,
              "status": "present" if found else "absent"}
    return (EXIT_FAILED if found else EXIT_OK), report, "\n".join(lines) + "\n"


def _factors(cfg: RunConfig, args) -> tuple[int, dict, str]:
    spec = _fixed_point(args)
    f = _image(args)
    L = cfg.prefix_length
    if L < 1:
        raise UsageError("--length must be positive")
    if args.offsets:
        profile = offset_profile(spec, f, L)
        report = profile.to_json()
        text = "".join(f"{x} {' '.join(map(str, r))}\n" for x, r in report["entries"].items())
        return EXIT_OK, report, text
    if f is None:
        S = factor_set_exact(spec, L, cfg.max_material)
    else:
        S = image_factor_set(spec, f, L, cfg.max_material)
    report = {"morphism": args.morphism, "image": args.image, "length": L, "exact": S.exact,
              "count": len(S), "factors": S.to_lines()}
    return EXIT_OK, report, S.to_text()


def _verify(cfg: RunConfig, args) -> tuple[int, dict, str]:
    report = verify_theorem(args.theorem, cfg.period_bound, cfg.max_material)
    return (EXIT_OK if report.overall else EXIT_FAILED), report.to_json(), report.summary()


def _backtrack(cfg: RunConfig, args) -> tuple[int, dict, str]:
    if not 1 <= args.alphabet <= 8:
        raise UsageError("--alphabet must lie in [1, 8]")
    res = backtrack_longest(args.alphabet, cfg.min_period, cfg.max_nodes, cfg.max_length,
                            cfg.distinct_halves, args.canonical)
    text = (f"s={res.alphabet_size} k={res.min_period} distinct_halves={res.distinct_halves}: "
            f"max_length={res.max_length} exhaustive={res.exhaustive} nodes={res.nodes_explored}\n"
            f"{res.extremal_word}\n")
    return (EXIT_OK if res.exhaustive else EXIT_CAP), res.to_json(), text


HANDLERS = {"generate": _generate, "detect": _detect, "factors": _factors,
            "verify": _verify, "backtrack": _backtrack}


def run(config: RunConfig, args) -> int:
    try:
        status, report, text = HANDLERS[config.command](config, args)
    except ResourceCapExceeded as exc:
        print(f"halfflip: {exc}", file=sys.stderr)
        return EXIT_CAP
    body = json.dumps(report, indent=2) + "\n" if config.format == "json" else text
    if config.output:
        Path(config.output).write_text(body)
    else:
        sys.stdout.write(body)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(config_from_args(args), args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"halfflip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
