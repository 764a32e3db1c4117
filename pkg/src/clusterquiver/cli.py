"""Command-line surface for the cluster algebra engine.

Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 infinite type
where finiteness is required, 5 cap exhausted / unknown verdict.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .classify import classify_finite_type, isomorphic, recognize_weight4_rank3
from .groups import (
    compute_rooted_group,
    coset_set,
    enumerate_rooted_loops,
    is_rooted_loop,
)
from .laurent import InexactDivisionError
from .quiver import QuiverInvariantError, ValuedQuiver, weight
from .quiverio import (
    QuiverFormatError,
    parse_quiver_file,
    pattern_dot,
    pattern_to_obj,
    quiver_dot,
    quiver_to_obj,
    write_json,
)
from .seeds import (
    CapExhaustedError,
    EqualityMode,
    FinitenessRequiredError,
    STRICT,
    SYMMETRIC,
    apply_word,
    enumerate_cluster_pattern,
    initial_seed,
    is_finite_type,
    seeds_equal,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_INFINITE = 4
EXIT_CAP = 5


def _load_quiver(source: str) -> ValuedQuiver:
    """A --quiver value is a catalog name or a path to a quiver file."""
    try:
        return catalog.get(source)
    except KeyError:
        pass
    return parse_quiver_file(source)


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise QuiverFormatError(
            f"word must be comma-separated integers, got {text!r}"
        ) from None


def _mode(args) -> EqualityMode:
    if args.mode == "strict":
        return STRICT
    return EqualityMode.symmetric(allow_sign=not args.no_sign)


def _add_common(p, word=False):
    p.add_argument("--quiver", required=True, help="catalog name or quiver file path")
    p.add_argument(
        "--mode", choices=["strict", "symmetric"], default="symmetric",
        help="seed equality mode (default symmetric)",
    )
    p.add_argument(
        "--no-sign", action="store_true",
        help="disallow global orientation flips in symmetric mode",
    )
    p.add_argument("--cap", type=int, default=100_000, help="node cap for enumerations")
    p.add_argument("--json", metavar="FILE", help="also write a JSON report")
    if word:
        p.add_argument(
            "--word", required=True,
            help="comma-separated vertices in application order, e.g. 1,2,1",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterquiver",
        description="Exact cluster algebra engine over valued quivers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="apply a mutation word to the initial seed")
    _add_common(p, word=True)

    p = sub.add_parser("explore", help="enumerate the cluster pattern")
    _add_common(p)
    p.add_argument("--dot", metavar="FILE", help="write the pattern in DOT form")

    p = sub.add_parser("finite", help="decide finite type")
    _add_common(p)

    p = sub.add_parser("classify", help="finite-type Dynkin label or obstruction")
    _add_common(p)
    p.add_argument(
        "--rank3-weight4", action="store_true",
        help="also run the rank-3 weight-4 class recognizer",
    )

    p = sub.add_parser("loops", help="enumerate rooted mutation loops")
    _add_common(p)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--max-count", type=int, default=50)

    p = sub.add_parser("group", help="compute the rooted mutation group")
    _add_common(p)

    p = sub.add_parser("cosets", help="cosets of the rooted mutation group")
    _add_common(p)

    p = sub.add_parser("iso", help="decide cluster algebra isomorphism")
    _add_common(p)
    p.add_argument("--quiver2", required=True, help="second quiver (name or path)")

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)

    p = sub.add_parser("export-dot", help="write a quiver in DOT form")
    p.add_argument("--quiver", required=True)
    p.add_argument("--out", metavar="FILE", help="output path (default stdout)")

    return parser


def _emit(args, obj: dict) -> None:
    if getattr(args, "json", None):
        write_json(obj, args.json)


def cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver)
    word = _parse_word(args.word)
    seed = initial_seed(q)
    trace = apply_word(seed, word)
    final = trace.final
    print(f"word: {','.join(map(str, word)) or '(empty)'}")
    print("produced:")
    for k, p in zip(word, trace.produced):
        print(f"  mu_{k}: {p.factored_str()}")
    print("final cluster:")
    for i, p in enumerate(final.cluster, start=1):
        print(f"  x{i} = {p.factored_str()}")
    print("final quiver edges:")
    for i, j, a, b in sorted(final.quiver.edges):
        print(f"  {i} -> {j}  ({a},{b})")
    witness = seeds_equal(seed, final, _mode(args))
    if witness:
        sigma, sign = witness
        print(f"rooted loop under {_mode(args).label()}: yes "
              f"(sigma={sigma.cycle_str()}, sign={'+' if sign > 0 else '-'})")
    else:
        print(f"rooted loop under {_mode(args).label()}: no")
    _emit(args, {
        "word": list(word),
        "produced": [p.to_obj() for p in trace.produced],
        "final_cluster": [p.to_obj() for p in final.cluster],
        "final_quiver": quiver_to_obj(final.quiver),
        "loop_witness": None if not witness else {
            "sigma": list(witness[0].images), "sign": witness[1]
        },
    })
    return EXIT_OK


def cmd_explore(args) -> int:
    q = _load_quiver(args.quiver)
    pattern = enumerate_cluster_pattern(initial_seed(q), _mode(args), args.cap)
    print(f"mode: {pattern.mode.label()}")
    print(f"nodes: {len(pattern)}{' (truncated)' if pattern.truncated else ''}")
    print(f"cluster variables: {len(pattern.variables)}")
    for p in pattern.variables:
        print(f"  {p.factored_str()}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(pattern_dot(pattern) + "\n")
    _emit(args, pattern_to_obj(pattern))
    return EXIT_CAP if pattern.truncated else EXIT_OK


def cmd_finite(args) -> int:
    q = _load_quiver(args.quiver)
    verdict = is_finite_type(initial_seed(q), cap=args.cap, mode=_mode(args))
    print(f"verdict: {verdict.kind}")
    if verdict.kind == "finite":
        print(f"nodes: {len(verdict.pattern)}")
        print(f"cluster variables: {len(verdict.pattern.variables)}")
    elif verdict.reason:
        print(verdict.reason)
    _emit(args, {
        "verdict": verdict.kind,
        "reason": verdict.reason,
        "nodes": None if not verdict.pattern else len(verdict.pattern),
        "variables": None if not verdict.pattern else len(verdict.pattern.variables),
    })
    if verdict.kind == "infinite":
        return EXIT_INFINITE
    if verdict.kind == "unknown":
        return EXIT_CAP
    return EXIT_OK


def cmd_classify(args) -> int:
    q = _load_quiver(args.quiver)
    report = classify_finite_type(initial_seed(q), cap=args.cap, mode=_mode(args))
    print(f"verdict: {report.verdict}")
    if report.dynkin_label:
        print(f"type: {report.dynkin_label}")
    if report.reason:
        print(report.reason)
    obj = report.to_obj()
    if args.rank3_weight4 and q.n == 3:
        label = recognize_weight4_rank3(q, cap=args.cap)
        print(f"rank-3 weight-4 class: {label or 'none'}")
        obj["rank3_weight4"] = label
    if q.n >= 3 and weight(q) >= 4:
        print(f"note: w(Q) = {weight(q)} >= 4; consult the weight-4 catalogs "
              "for rank > 3 structure")
    _emit(args, obj)
    if report.verdict == "infinite":
        return EXIT_INFINITE
    if report.verdict == "unknown":
        return EXIT_CAP
    return EXIT_OK


def cmd_loops(args) -> int:
    q = _load_quiver(args.quiver)
    seed = initial_seed(q)
    loops = enumerate_rooted_loops(
        seed, _mode(args), max_len=args.max_len, cap=args.cap
    )
    print(f"rooted loops up to length {args.max_len} ({_mode(args).label()}): "
          f"{len(loops)}")
    for loop in loops[: args.max_count]:
        sigma, sign = loop.witness
        print(f"  {','.join(map(str, loop.word))}  "
              f"sigma={sigma.cycle_str()} sign={'+' if sign > 0 else '-'} "
              f"|cluster set|={len(loop.cluster_set)}")
    _emit(args, {
        "count": len(loops),
        "loops": [
            {
                "word": list(l.word),
                "sigma": list(l.witness[0].images),
                "sign": l.witness[1],
                "cluster_set": sorted(p.factored_str() for p in l.cluster_set),
            }
            for l in loops[: args.max_count]
        ],
    })
    return EXIT_OK


def cmd_group(args) -> int:
    q = _load_quiver(args.quiver)
    group = compute_rooted_group(initial_seed(q), mode=_mode(args), cap=args.cap)
    print(f"mode: {group.mode.label()}")
    print(f"order: {group.order} (rank {group.rank})")
    print(f"converged: {group.converged}  commutative: {group.commutative}")
    shown = group.elements if group.elements else group.basis
    label = "elements" if group.elements else "basis elements"
    print(f"{label}:")
    for i, e in enumerate(shown[:32]):
        word = ",".join(map(str, e.word)) or "(empty)"
        print(f"  [{i}] word {word}  cluster set size {len(e.cluster_set)}")
    if len(shown) > 32:
        print(f"  ... {len(shown) - 32} more")
    _emit(args, group.to_obj())
    return EXIT_OK


def cmd_cosets(args) -> int:
    q = _load_quiver(args.quiver)
    cosets = coset_set(initial_seed(q), mode=_mode(args), cap=args.cap)
    print(f"mode: {cosets.pattern.mode.label()}")
    print(f"cosets: {len(cosets)}{'' if cosets.complete else ' (incomplete)'}")
    for i, w in enumerate(cosets.representatives[:32]):
        print(f"  node {i}: {','.join(map(str, w)) or '(empty)'}")
    if len(cosets) > 32:
        print(f"  ... {len(cosets) - 32} more")
    _emit(args, cosets.to_obj())
    return EXIT_OK if cosets.complete else EXIT_CAP


def cmd_iso(args) -> int:
    q1 = _load_quiver(args.quiver)
    q2 = _load_quiver(args.quiver2)
    report = isomorphic(
        initial_seed(q1), initial_seed(q2), cap=args.cap, mode=_mode(args)
    )
    print(f"isomorphic: {report.isomorphic}")
    print(f"route: {report.route}")
    if report.witness:
        node, sigma, sign = report.witness
        print(f"witness: pattern node {node}, sigma={sigma.cycle_str()}, "
              f"sign={'+' if sign > 0 else '-'}")
    if report.mismatches:
        print(f"mismatched invariants: {', '.join(report.mismatches)}")
    _emit(args, report.to_obj())
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    q = _load_quiver(args.quiver)
    text = quiver_dot(q)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


_COMMANDS = {
    "mutate": cmd_mutate,
    "explore": cmd_explore,
    "finite": cmd_finite,
    "classify": cmd_classify,
    "loops": cmd_loops,
    "group": cmd_group,
    "cosets": cmd_cosets,
    "iso": cmd_iso,
    "serve": cmd_serve,
    "export-dot": cmd_export_dot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (QuiverFormatError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (QuiverInvariantError, InexactDivisionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except FinitenessRequiredError as exc:
        print(f"infinite type: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except CapExhaustedError as exc:
        print(f"cap exhausted: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
