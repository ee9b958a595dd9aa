"""Command-line front end.

Subcommands: convert, quotient, shift, circuits, census, poset, mobius,
conjectures, realize.  Exit codes: 0 for true/verified results, 1 for a
falsified check, 2 for errors, so the checks compose in shell scripts.

Expensive results (census rows, posets, Moebius values, conjecture runs)
are cached as canonical JSON under --cache-dir, keyed by a content hash of
the request; the environment variable POSITROID_CACHE_DIR overrides the
flag.  The census streams progress to stderr and checkpoints partial
results when a cache directory is available.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import poset as poset_mod
from .errors import NotAPositroid, ParseError, PositroidError
from .matroid import Matroid, realize_uniform, uniform, vandermonde_product
from .positroid import (
    DecoratedPermutation,
    GrassmannNecklace,
    bases_from_necklace,
    is_positroid,
    necklace_from_matroid,
    necklace_from_perm,
    perm_from_necklace,
    positroid_from_perm,
    smallest_containing_positroid,
)
from .shift import FreezeSet, predicted_circuits, shift_left, shift_right

CACHE_FORMAT_VERSION = 1


@dataclass
class RunConfig:
    n_cap: int = 10
    long_running: bool = False
    cache_dir: Optional[Path] = None
    output_format: str = "text"
    threads: int = 1

    def __post_init__(self):
        if self.n_cap > 16:
            raise ValueError(f"--n-cap is hard-capped at 16, got {self.n_cap}")


def canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


# -- caching -----------------------------------------------------------------


def _cache_file(cfg: RunConfig, payload: dict) -> Optional[Path]:
    if cfg.cache_dir is None:
        return None
    digest = hashlib.sha256(canonical_json(payload).encode()).hexdigest()[:16]
    parts = [str(payload["command"])]
    for key in ("n", "k"):
        if key in payload:
            parts.append(str(payload[key]))
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    return cfg.cache_dir / ("_".join(parts) + f"_{digest}.json")


def cached(cfg: RunConfig, payload: dict, compute):
    """Reuse the canonical JSON result for this request if present."""
    path = _cache_file(cfg, payload)
    if path is not None and path.exists():
        return json.loads(path.read_text())
    result = compute()
    if path is not None:
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json(result))
        tmp.replace(path)
    return result


# -- input parsing -------------------------------------------------------------


def _parse_perm(text: str) -> DecoratedPermutation:
    return DecoratedPermutation.from_string(text)


def _parse_json_payload(text: str, kind: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad {kind} JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{kind} JSON must be an object")
    return obj


def _parse_necklace(text: str) -> GrassmannNecklace:
    return GrassmannNecklace.from_json_obj(_parse_json_payload(text, "necklace"))


def _parse_bases(text: str) -> Matroid:
    return Matroid.from_json_obj(_parse_json_payload(text, "bases"))


# -- subcommands ----------------------------------------------------------------


def cmd_convert(cfg: RunConfig, args) -> int:
    source = args.source
    if source == "perm":
        perm = _parse_perm(args.input)
    elif source == "necklace":
        perm = perm_from_necklace(_parse_necklace(args.input))
    else:
        matroid = _parse_bases(args.input)
        if not is_positroid(matroid):
            envelope = smallest_containing_positroid(matroid)
            raise NotAPositroid(
                "bases are not a positroid; smallest containing positroid has "
                f"bases {envelope.to_json()}",
                envelope,
            )
        perm = perm_from_necklace(necklace_from_matroid(matroid))
    if args.target == "perm":
        if cfg.output_format == "json":
            print(canonical_json({"n": perm.n, "perm": str(perm)}))
        else:
            print(str(perm))
    elif args.target == "necklace":
        neck = necklace_from_perm(perm)
        if cfg.output_format == "json":
            print(canonical_json(neck.to_json_obj()))
        else:
            print(neck.to_json())
    else:
        matroid = positroid_from_perm(perm)
        if cfg.output_format == "json":
            print(canonical_json(matroid.to_json_obj()))
        else:
            print(matroid.to_json())
    return 0


def cmd_quotient(cfg: RunConfig, args) -> int:
    small = positroid_from_perm(_parse_perm(args.perm1))
    large = positroid_from_perm(_parse_perm(args.perm2))
    circuit_test = small.is_quotient(large)
    rank_test = small.is_quotient_by_rank(large)
    verdict = circuit_test and rank_test
    flags = []
    if verdict and small.k < large.k:
        flags = small.flags(large)
    obstructions = [] if verdict else small.quotient_obstructions(large)
    if cfg.output_format == "json":
        print(
            canonical_json(
                {
                    "quotient": verdict,
                    "circuit_test": circuit_test,
                    "rank_test": rank_test,
                    "flags": [[sorted(f.lower), sorted(f.upper)] for f in flags],
                    "obstructions": [sorted(c) for c in obstructions],
                }
            )
        )
    else:
        print(f"quotient: {'yes' if verdict else 'no'} "
              f"(circuit test {'yes' if circuit_test else 'no'}, "
              f"rank test {'yes' if rank_test else 'no'})")
        if flags:
            print(f"flags ({len(flags)}):")
            for f in flags:
                print(f"  {fmt_set(f.lower)} < {fmt_set(f.upper)}")
        if obstructions:
            print("uncoverable circuits:")
            for c in obstructions:
                print(f"  {fmt_set(c)}")
    return 0 if verdict else 1


def cmd_shift(cfg: RunConfig, args) -> int:
    perm = _parse_perm(args.perm)
    freeze = FreezeSet.parse(args.freeze, perm.n)
    move = shift_left if args.direction == "left" else shift_right
    result = move(perm, freeze)
    if cfg.output_format == "json":
        print(canonical_json({"n": result.n, "perm": str(result)}))
    else:
        print(str(result))
    return 0


def cmd_circuits(cfg: RunConfig, args) -> int:
    if args.perm:
        perm = _parse_perm(args.perm)
        circuits = sorted(positroid_from_perm(perm).circuits(), key=lambda c: (len(c), sorted(c)))
        if cfg.output_format == "json":
            print(canonical_json({"n": perm.n, "perm": str(perm),
                                  "circuits": [sorted(c) for c in circuits]}))
        else:
            print(f"n={perm.n} rank={perm.rank} circuits ({len(circuits)}):")
            for c in circuits:
                print(f"  {fmt_set(c)}")
        return 0
    k, n = args.uniform
    freeze = FreezeSet.parse(args.freeze, n)
    pred = predicted_circuits(k, n, freeze)
    shifted = shift_left(poset_mod.uniform_perm(k, n), freeze)
    actual = poset_mod.positroid_of(shifted).circuits()
    verified = pred.circuits == actual
    if cfg.output_format == "json":
        print(canonical_json({
            "n": n, "k": k, "freeze": sorted(freeze.elements), "perm": str(shifted),
            "small": [sorted(s) for s in pred.small_sets],
            "circuits": sorted((sorted(c) for c in pred.circuits), key=lambda c: (len(c), c)),
            "verified": verified,
        }))
    else:
        print(f"shift of rank-{k} uniform on [{n}] by {fmt_set(freeze.elements)}: {shifted}")
        print("small circuits: " + " ".join(str(c) for c in pred.small))
        print(f"circuits ({len(pred.circuits)} total); brute-force match: "
              f"{'yes' if verified else 'NO'}")
    return 0 if verified else 1


def _census_rows(cfg: RunConfig, n: int, ks: list[int]) -> list[dict]:
    rows = []
    for k in ks:
        payload = {"command": "census", "version": CACHE_FORMAT_VERSION, "n": n, "k": k}
        checkpoint = None
        if cfg.cache_dir is not None:
            cfg.cache_dir.mkdir(parents=True, exist_ok=True)
            checkpoint = str(cfg.cache_dir / f"census_{n}_{k}.checkpoint.json")

        def compute(k=k, checkpoint=checkpoint):
            progress = None
            if cfg.long_running:
                progress = lambda msg: print(msg, file=sys.stderr, flush=True)
            row = poset_mod.uniform_quotient_census(
                k, n, cap=cfg.n_cap, long_running=cfg.long_running,
                threads=cfg.threads, progress=progress, checkpoint=checkpoint,
            )
            return {
                "n": row.n, "k": row.k, "total": row.total,
                "characterized": row.characterized, "missing": row.missing,
                "witnesses": [str(w) for w in row.witnesses],
            }

        rows.append(cached(cfg, payload, compute))
    return rows


def cmd_census(cfg: RunConfig, args) -> int:
    n = args.n
    ks = [args.k] if args.k is not None else list(range(1, n + 1))
    rows = _census_rows(cfg, n, ks)
    if cfg.output_format == "json":
        print(canonical_json(rows))
    elif cfg.output_format == "csv":
        print("n,k,total,characterized,missing")
        for r in rows:
            print(f"{r['n']},{r['k']},{r['total']},{r['characterized']},{r['missing']}")
    else:
        for r in rows:
            print(f"n={r['n']} k={r['k']} total={r['total']} "
                  f"characterized={r['characterized']} missing={r['missing']}")
            for w in r["witnesses"]:
                print(f"  uncharacterized: {w}")
    return 0


def cmd_poset(cfg: RunConfig, args) -> int:
    payload = {"command": "poset", "version": CACHE_FORMAT_VERSION, "n": args.n}

    def compute():
        poset = poset_mod.build_poset(args.n, cap=cfg.n_cap)
        return poset_mod.poset_json_obj(poset)

    obj = cached(cfg, payload, compute)
    if cfg.output_format == "json":
        print(canonical_json(obj))
    elif cfg.output_format == "dot":
        elements = obj["elements"]
        ranks = {}
        for text in elements:
            p = DecoratedPermutation.from_string(text)
            ranks.setdefault(p.rank, []).append(text)
        lines = ["digraph quotients {", "  rankdir=BT;", "  node [shape=box];"]
        for k in sorted(ranks):
            names = " ".join(f'"{t}";' for t in ranks[k])
            lines.append("  { rank=same; " + names + " }")
        for lo, hi in obj["covers"]:
            lines.append(f'  "{elements[lo]}" -> "{elements[hi]}";')
        lines.append("}")
        print("\n".join(lines))
    elif cfg.output_format == "csv":
        print("lower,upper")
        for lo, hi in obj["covers"]:
            print(f"\"{obj['elements'][lo]}\",\"{obj['elements'][hi]}\"")
    else:
        sizes = {}
        for text in obj["elements"]:
            p = DecoratedPermutation.from_string(text)
            sizes[p.rank] = sizes.get(p.rank, 0) + 1
        size_list = [sizes.get(k, 0) for k in range(args.n + 1)]
        print(f"poset on [{args.n}]: {len(obj['elements'])} elements, "
              f"{len(obj['covers'])} covers, rank sizes {tuple(size_list)}")
    return 0


def cmd_mobius(cfg: RunConfig, args) -> int:
    payload = {"command": "mobius", "version": CACHE_FORMAT_VERSION, "n": args.n}

    def compute():
        return {"n": args.n, "mobius": poset_mod.mobius(poset_mod.build_poset(args.n, cap=cfg.n_cap))}

    obj = cached(cfg, payload, compute)
    if cfg.output_format == "json":
        print(canonical_json(obj))
    else:
        print(obj["mobius"])
    return 0


def cmd_conjectures(cfg: RunConfig, args) -> int:
    payload = {"command": "conjectures", "version": CACHE_FORMAT_VERSION, "n": args.n}

    def compute():
        poset = poset_mod.build_poset(args.n, cap=cfg.n_cap)
        containment = poset_mod.check_necklace_containment(poset)
        shifts = poset_mod.check_shift_conjecture(poset)
        orders = poset_mod.closure_vs_direct(poset)
        return {
            "n": args.n,
            "covers": len(poset.covers),
            "necklace_containment_violations": [[str(a), str(b)] for a, b in containment],
            "covers_without_shift_witness": [
                [str(a), str(b)] for a, b in shifts.covers_without_witness
            ],
            "covers_without_prefix_witness": [
                [str(a), str(b)] for a, b in shifts.covers_without_prefix_witness
            ],
            "rank_drop_shifts_not_covers": [
                [str(a), str(b)] for a, b, _ in shifts.shifts_not_covers
            ],
            "quotients_not_reachable_by_covers": [
                [str(a), str(b)] for a, b in orders.direct_not_closure
            ],
            "cover_closure_not_quotient": [
                [str(a), str(b)] for a, b in orders.closure_not_direct
            ],
        }

    obj = cached(cfg, payload, compute)
    clean = not obj["necklace_containment_violations"] and not obj["covers_without_shift_witness"]
    if cfg.output_format == "json":
        print(canonical_json(obj))
    else:
        print(f"conjecture checks on [{args.n}] ({obj['covers']} covers):")
        print(f"  necklace containment violations: "
              f"{len(obj['necklace_containment_violations'])}")
        print(f"  covers without a shift witness: "
              f"{len(obj['covers_without_shift_witness'])}")
        print(f"  covers whose witnesses all leave {{1..k}}: "
              f"{len(obj['covers_without_prefix_witness'])}")
        print(f"  rank-drop shifts that are not covers: "
              f"{len(obj['rank_drop_shifts_not_covers'])}")
        print(f"  quotient pairs not reachable through covers: "
              f"{len(obj['quotients_not_reachable_by_covers'])}")
        print(f"  cover-closure pairs that are not quotients: "
              f"{len(obj['cover_closure_not_quotient'])}")
    return 0 if clean else 1


def cmd_realize(cfg: RunConfig, args) -> int:
    n = args.n
    k = args.k
    points = [int(p) for p in args.points.split(",")] if args.points else list(range(1, n + 1))
    mat = realize_uniform(k, n, points)
    minors = mat.maximal_minors()
    if cfg.output_format == "json":
        print(canonical_json({
            "k": k, "n": n, "points": points,
            "matrix": [list(row) for row in mat.entries],
            "minors": {",".join(map(str, sorted(cols))): val for cols, val in minors.items()},
            "all_positive": all(v > 0 for v in minors.values()),
        }))
    else:
        print(f"rank-{k} realization of the uniform matroid on {n} points {points}:")
        for row in mat.entries:
            print("  " + " ".join(f"{x:>6}" for x in row))
        print(f"all {len(minors)} maximal minors positive: "
              f"{'yes' if all(v > 0 for v in minors.values()) else 'NO'}")
    return 0 if all(v > 0 for v in minors.values()) else 1


# -- wiring ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-cap", type=int, default=10,
                        help="size cap for exhaustive commands (max 16)")
    common.add_argument("--long-running", action="store_true",
                        help="allow census rows with n >= 9")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="directory for cached results and checkpoints")
    common.add_argument("--format", dest="output_format", default="text",
                        choices=["text", "json", "csv", "dot"])
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for the census")

    parser = argparse.ArgumentParser(
        prog="positroids",
        description="positroid conversions, quotient tests, censuses, and checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common],
                       help="convert between perm, necklace, and bases forms")
    p.add_argument("--from", dest="source", required=True,
                   choices=["perm", "necklace", "bases"])
    p.add_argument("--to", dest="target", required=True,
                   choices=["perm", "necklace", "bases"])
    p.add_argument("input", help="perm string or JSON payload")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("quotient", parents=[common],
                       help="test whether the first positroid is a quotient of the second")
    p.add_argument("perm1")
    p.add_argument("perm2")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("shift", parents=[common], help="apply a freeze/shift/decorate move")
    p.add_argument("perm")
    p.add_argument("freeze", help='frozen values, e.g. "1,2" or "9-1,6" ("" for none)')
    p.add_argument("--direction", "-d", choices=["left", "right"], default="left")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("circuits", parents=[common], help="circuits of a positroid")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", help="decorated permutation")
    group.add_argument("--uniform", nargs=2, type=int, metavar=("K", "N"),
                       help="predicted circuits of a shifted rank-K uniform on [N]")
    p.add_argument("--freeze", default="", help="frozen values for --uniform")
    p.set_defaults(func=cmd_circuits)

    p = sub.add_parser("census", parents=[common],
                       help="covers of uniform positroids vs the shift characterization")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?", default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("poset", parents=[common], help="build and export the quotient poset")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("mobius", parents=[common],
                       help="Moebius value of the full quotient-poset interval")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("conjectures", parents=[common],
                       help="run the necklace-containment and shift-witness checkers")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("realize", parents=[common],
                       help="exact matrix realization of a uniform matroid")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--points", default=None, help='comma-separated, default "1,2,...,n"')
    p.set_defaults(func=cmd_realize)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cache_dir = os.environ.get("POSITROID_CACHE_DIR") or args.cache_dir
        cfg = RunConfig(
            n_cap=args.n_cap,
            long_running=args.long_running,
            cache_dir=Path(cache_dir) if cache_dir else None,
            output_format=args.output_format,
            threads=args.threads,
        )
        return args.func(cfg, args)
    except PositroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
