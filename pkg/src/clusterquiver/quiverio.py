"""Quiver/pattern file formats and DOT export.

The quiver file format is JSON with fields ``n``, ``edges`` (objects with
``from``, ``to`` and ``val: [d_ij, d_ji]``), optional ``symmetrizer`` and
optional ``frozen``.  When the symmetrizer is absent the minimal positive
one is inferred from the valuations; inconsistent valuations are rejected.
"""

from __future__ import annotations

import json
from typing import IO, Mapping

from .laurent import LaurentPoly
from .quiver import (
    QuiverInvariantError,
    SymmetrizerError,
    ValuedQuiver,
    build_quiver,
)
from .seeds import ClusterPattern, EqualityMode, Seed


class QuiverFormatError(ValueError):
    """Malformed quiver file: bad syntax or schema (not an invariant issue)."""


def quiver_from_obj(obj: Mapping) -> ValuedQuiver:
    """Validate and build a quiver from a parsed JSON object."""
    if not isinstance(obj, Mapping):
        raise QuiverFormatError("quiver object must be a mapping")
    if "n" not in obj:
        raise QuiverFormatError("missing field 'n'")
    try:
        n = int(obj["n"])
    except (TypeError, ValueError):
        raise QuiverFormatError("field 'n' must be an integer") from None
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise QuiverFormatError("field 'edges' must be a list")
    edges = []
    for e in raw_edges:
        if not isinstance(e, Mapping) or not {"from", "to", "val"} <= set(e):
            raise QuiverFormatError(
                "each edge needs fields 'from', 'to' and 'val: [d_ij, d_ji]'"
            )
        val = e["val"]
        if not isinstance(val, (list, tuple)) or len(val) != 2:
            raise QuiverFormatError("edge 'val' must be a pair")
        try:
            edges.append((int(e["from"]), int(e["to"]), int(val[0]), int(val[1])))
        except (TypeError, ValueError):
            raise QuiverFormatError("edge fields must be integers") from None
    symmetrizer = obj.get("symmetrizer")
    if symmetrizer is not None:
        if not isinstance(symmetrizer, (list, tuple)):
            raise QuiverFormatError("'symmetrizer' must be a list of integers")
        symmetrizer = tuple(int(d) for d in symmetrizer)
    frozen = obj.get("frozen", ())
    if not isinstance(frozen, (list, tuple)):
        raise QuiverFormatError("'frozen' must be a list of vertices")
    return build_quiver(n, edges, symmetrizer, tuple(int(v) for v in frozen))


def parse_quiver_file(source: str | IO) -> ValuedQuiver:
    """Parse a quiver from a path or a readable stream.

    Syntax and schema problems raise QuiverFormatError; structurally invalid
    quivers (loops, 2-cycles, bad valuations, inconsistent symmetrizer)
    raise QuiverInvariantError subclasses with distinct messages.
    """
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverFormatError(f"invalid JSON: {exc}") from exc
    return quiver_from_obj(obj)


def quiver_to_obj(q: ValuedQuiver) -> dict:
    return {
        "n": q.n,
        "edges": [
            {"from": i, "to": j, "val": [a, b]}
            for i, j, a, b in sorted(q.edges)
        ],
        "symmetrizer": list(q.symmetrizer),
        "frozen": sorted(q.frozen),
    }


def dump_quiver(q: ValuedQuiver, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(quiver_to_obj(q), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# DOT export


def quiver_dot(q: ValuedQuiver) -> str:
    """One node per vertex, labeled edges, frozen vertices boxed."""
    lines = ["digraph quiver {"]
    for v in range(1, q.n + 1):
        attrs = [f'label="{v}"']
        if v in q.frozen:
            attrs.append("shape=box")
            attrs.append("style=filled")
            attrs.append('fillcolor="lightgray"')
        lines.append(f"  v{v} [{', '.join(attrs)}];")
    for i, j, a, b in sorted(q.edges):
        lines.append(f'  v{i} -> v{j} [label="({a},{b})"];')
    lines.append("}")
    return "\n".join(lines)


def pattern_dot(pattern: ClusterPattern) -> str:
    """Nodes annotated with factored cluster display forms."""
    lines = ["digraph pattern {"]
    for u, seed in enumerate(pattern.nodes):
        cluster = ", ".join(p.factored_str() for p in seed.cluster)
        shape = "doublecircle" if u == pattern.root else "ellipse"
        lines.append(f'  n{u} [shape={shape}, label="{u}: {cluster}"];')
    seen = set()
    for u, k, v in pattern.edges:
        key = (min(u, v), k, max(u, v))
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  n{u} -> n{v} [label="{k}", dir=both];')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# pattern files


def pattern_to_obj(pattern: ClusterPattern) -> dict:
    return {
        "mode": {"kind": pattern.mode.kind, "allow_sign": pattern.mode.allow_sign},
        "truncated": pattern.truncated,
        "root": pattern.root,
        "nodes": [
            {
                "id": u,
                "word": list(pattern.words[u]),
                "cluster": [p.to_obj() for p in seed.cluster],
                "quiver": quiver_to_obj(seed.quiver),
            }
            for u, seed in enumerate(pattern.nodes)
        ],
        "edges": [list(e) for e in pattern.edges],
        "variables": [p.to_obj() for p in pattern.variables],
    }


def pattern_from_obj(obj: Mapping) -> ClusterPattern:
    mode = EqualityMode(obj["mode"]["kind"], obj["mode"]["allow_sign"])
    nodes = []
    words = []
    for node in obj["nodes"]:
        cluster = tuple(LaurentPoly.from_obj(p) for p in node["cluster"])
        nodes.append(Seed(cluster, quiver_from_obj(node["quiver"])))
        words.append(tuple(node["word"]))
    from .seeds import canonical_seed_key

    keys = [canonical_seed_key(s, mode) for s in nodes]
    edges = [tuple(e) for e in obj["edges"]]
    return ClusterPattern(
        mode, nodes, keys, edges, words, obj["truncated"], obj["root"]
    )


def write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


__all__ = [
    "QuiverFormatError",
    "QuiverInvariantError",
    "SymmetrizerError",
    "parse_quiver_file",
    "quiver_from_obj",
    "quiver_to_obj",
    "dump_quiver",
    "quiver_dot",
    "pattern_dot",
    "pattern_to_obj",
    "pattern_from_obj",
    "write_json",
]
