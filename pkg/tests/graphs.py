"""Small graph builders shared by the test modules."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from qlap.graph.core import Graph

SAMPLES = Path(__file__).resolve().parents[1] / "graphs"


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def prism() -> Graph:
    return Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    )


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shifted = [(i + a.n, j + a.n) for i, j in b.edges]
    return Graph.from_edges(a.n + b.n, list(a.edges) + shifted)


def random_connected(n: int, seed: int, extra: float = 0.15) -> Graph:
    """Random spanning tree plus each remaining pair with probability `extra`."""

    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    edges = set()
    for pos in range(1, n):
        parent = order[int(rng.integers(0, pos))]
        u, v = int(order[pos]), int(parent)
        edges.add((min(u, v), max(u, v)))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra:
                edges.add((i, j))
    return Graph.from_edges(n, sorted(edges))


def frucht() -> Graph:
    """Cubic graph on 12 vertices whose only automorphism is the identity."""

    rim = [(i, (i + 1) % 12) for i in range(12)]
    chords = [(0, 7), (1, 11), (2, 10), (3, 5), (4, 9), (6, 8)]
    return Graph.from_edges(12, rim + chords)


def frobenius21() -> Graph:
    """
    Cayley graph of the order-21 group Z7 x| Z3 with generators (0, 1) and (1, 1).

    (x, y) is vertex x + 7y and (x1, y1)(x2, y2) = (x1 + 2^y1 x2, y1 + y2).
    The result is 4-regular and vertex-transitive.
    """

    def mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return ((a[0] + pow(2, a[1]) * b[0]) % 7, (a[1] + b[1]) % 3)

    edges = set()
    for x in range(7):
        for y in range(3):
            for s in ((0, 1), (1, 1)):
                hx, hy = mul((x, y), s)
                u, v = x + 7 * y, hx + 7 * hy
                edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(21, sorted(edges))


# Connected vertex-transitive graphs used across the bound checks.
def vertex_transitive_suite() -> dict[str, Graph]:
    suite = {f"C{n}": cycle(n) for n in range(4, 9)}
    suite.update({f"K{n}": complete(n) for n in range(3, 6)})
    suite["petersen"] = petersen()
    suite["prism"] = prism()
    return suite
