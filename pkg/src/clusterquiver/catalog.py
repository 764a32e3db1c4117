"""Named quivers used by the CLI, the tests and the documentation."""

from __future__ import annotations

from .quiver import ValuedQuiver, build_quiver, freeze


def _path(n: int, last_val: tuple[int, int] | None = None) -> ValuedQuiver:
    edges = [(i, i + 1, 1, 1) for i in range(1, n)]
    if last_val is not None:
        i, j, _, _ = edges[-1]
        edges[-1] = (i, j, last_val[0], last_val[1])
    return build_quiver(n, edges)


def _star(n: int) -> ValuedQuiver:
    return build_quiver(n, [(1, k, 1, 1) for k in range(2, n + 1)])


def rank7_frozen_example() -> ValuedQuiver:
    """Rank-7 quiver with vertices 4..7 frozen and mutable part {1, 2, 3}.

    The valuations force the minimal symmetrizer (3, 6, 9, 6, 2, 3, 3); its
    mutable part is proportional to (1, 2, 3).
    """
    q = build_quiver(
        7,
        [
            (3, 4, 2, 3),
            (3, 2, 2, 3),
            (2, 1, 1, 2),
            (7, 2, 2, 1),
            (6, 1, 1, 1),
            (1, 3, 6, 2),
            (1, 5, 2, 3),
        ],
    )
    return freeze(q, {1, 2, 3})


_BUILDERS = {
    "a1": lambda: build_quiver(1, []),
    "a2": lambda: _path(2),
    "a3": lambda: _path(3),
    "a4": lambda: _path(4),
    "b2": lambda: _path(2, (1, 2)),
    "b3": lambda: _path(3, (1, 2)),
    "c3": lambda: _path(3, (2, 1)),
    "g2": lambda: _path(2, (1, 3)),
    "d4": lambda: _star(4),
    "w4": lambda: build_quiver(2, [(1, 2, 2, 2)]),
    "cycle3": lambda: build_quiver(3, [(1, 2, 1, 1), (2, 3, 1, 1), (3, 1, 1, 1)]),
    "markov": lambda: build_quiver(
        3, [(1, 2, 2, 2), (2, 3, 2, 2), (3, 1, 2, 2)]
    ),
    "rank7frozen": rank7_frozen_example,
}


def names() -> list[str]:
    return sorted(_BUILDERS)


def get(name: str) -> ValuedQuiver:
    try:
        return _BUILDERS[name.lower()]()
    except KeyError:
        raise KeyError(
            f"unknown quiver name {name!r}; known: {', '.join(names())}"
        ) from None
