"""Named graphs used as reduction targets, forbidden minors, and test stock."""

from __future__ import annotations

from .core import SignedGraph

#: token -> builder, in CLI spelling
TARGET_NAMES = ("k2eq", "k3eq", "k4o")


def k2_eq() -> SignedGraph:
    """Two vertices joined by an even edge and an odd edge."""
    return SignedGraph.from_pairs(2, [(1, 2, False), (1, 2, True)])


def k3_eq() -> SignedGraph:
    """Three vertices, every pair joined by an even edge and an odd edge."""
    pairs = []
    for u, v in ((1, 2), (1, 3), (2, 3)):
        pairs.append((u, v, False))
        pairs.append((u, v, True))
    return SignedGraph.from_pairs(3, pairs)


def k4_odd() -> SignedGraph:
    """Complete graph on four vertices with every edge odd."""
    pairs = [(u, v, True) for u in range(1, 5) for v in range(u + 1, 5)]
    return SignedGraph.from_pairs(4, pairs)


def double_prism() -> SignedGraph:
    """Two even triangles joined by three parallel pairs, one odd edge per
    pair.  Twelve edges, six vertices."""
    pairs = [
        (1, 2, False), (2, 3, False), (1, 3, False),
        (4, 5, False), (5, 6, False), (4, 6, False),
        (1, 4, False), (1, 4, True),
        (2, 5, False), (2, 5, True),
        (3, 6, False), (3, 6, True),
    ]
    return SignedGraph.from_pairs(6, pairs)


def target(name: str) -> SignedGraph:
    if name == "k2eq":
        return k2_eq()
    if name == "k3eq":
        return k3_eq()
    if name == "k4o":
        return k4_odd()
    raise KeyError(name)


def cycle_graph(n: int, odd_count: int = 0) -> SignedGraph:
    """Cycle on n vertices with the first odd_count edges odd."""
    pairs = [(i, i % n + 1, i <= odd_count) for i in range(1, n + 1)]
    return SignedGraph.from_pairs(n, pairs)


def path_graph(n: int) -> SignedGraph:
    return SignedGraph.from_pairs(n, [(i, i + 1, False) for i in range(1, n)])
