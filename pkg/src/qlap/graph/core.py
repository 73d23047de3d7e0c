from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Literal, Optional

import networkx as nx

from qlap.constants import DEFAULT_MAX_VERTICES

InputFormat = Literal["auto", "edges", "matrix"]


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, *, line: Optional[int] = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class LoopError(GraphError):
    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"Loop at vertex {vertex}; graphs must be loop-free")


class AsymmetryError(GraphError):
    def __init__(self, i: int, j: int) -> None:
        self.pair = (i, j)
        super().__init__(f"Adjacency matrix is not symmetric at ({i}, {j})")


class RangeError(GraphError):
    def __init__(self, index: int, n: int) -> None:
        self.index = index
        self.n = n
        super().__init__(f"Vertex index {index} out of range for n={n}")


class DisconnectedError(GraphError):
    def __init__(self, src: int, dst: int) -> None:
        self.pair = (src, dst)
        super().__init__(f"Graph is disconnected: no path from {src} to {dst}")


@dataclass(frozen=True)
class Graph:
    """
    Finite simple undirected graph on vertices 0..n-1.

    `adjacency` is the 0/1 matrix ε and `edges` the sorted list of unordered
    pairs (i, j) with i < j. Construct through `Graph.from_edges` unless you
    already hold a consistent matrix/edge pair.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("Graph needs at least one vertex")
        if len(self.adjacency) != self.n or any(len(row) != self.n for row in self.adjacency):
            raise GraphError(f"Adjacency matrix must be {self.n}x{self.n}")
        for i, row in enumerate(self.adjacency):
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise GraphError(f"Adjacency entry ({i}, {j}) must be 0 or 1, got {v!r}")
                if i == j and v:
                    raise LoopError(i)
                if v != self.adjacency[j][i]:
                    raise AsymmetryError(i, j)
        expected = tuple(
            (i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i][j]
        )
        if expected != self.edges:
            raise GraphError("Edge list is inconsistent with the adjacency matrix")
        nbrs = tuple(
            tuple(j for j in range(self.n) if self.adjacency[i][j]) for i in range(self.n)
        )
        object.__setattr__(self, "neighbors", nbrs)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise GraphError("Graph needs at least one vertex")
        rows = [[0] * n for _ in range(n)]
        for u, v in edges:
            for x in (u, v):
                if not 0 <= x < n:
                    raise RangeError(x, n)
            if u == v:
                raise LoopError(u)
            rows[u][v] = 1
            rows[v][u] = 1
        adjacency = tuple(tuple(r) for r in rows)
        pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j])
        return Graph(n=n, adjacency=adjacency, edges=pairs)

    def adjacent(self, i: int, j: int) -> bool:
        return self.adjacency[i][j] == 1

    @cached_property
    def as_networkx(self) -> nx.Graph:
        """Read-only networkx view; vertices 0..n-1, same edges."""

        view = nx.Graph()
        view.add_nodes_from(range(self.n))
        view.add_edges_from(self.edges)
        return nx.freeze(view)


def _check_vertex(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise RangeError(i, g.n)


def degree(g: Graph, i: int) -> int:
    _check_vertex(g, i)
    return len(g.neighbors[i])


def degrees(g: Graph) -> tuple[int, ...]:
    return tuple(len(nb) for nb in g.neighbors)


def volume(g: Graph) -> int:
    return sum(degrees(g))


def regular_degree(g: Graph) -> Optional[int]:
    ds = set(degrees(g))
    return ds.pop() if len(ds) == 1 else None


def bfs_distances(g: Graph, src: int) -> list[Optional[int]]:
    _check_vertex(g, src)
    reached = nx.single_source_shortest_path_length(g.as_networkx, src)
    return [reached.get(v) for v in range(g.n)]


def is_connected(g: Graph) -> bool:
    return nx.is_connected(g.as_networkx)


def require_connected(g: Graph) -> None:
    if is_connected(g):
        return
    reached = nx.node_connected_component(g.as_networkx, 0)
    raise DisconnectedError(0, min(v for v in range(g.n) if v not in reached))


def diameter(g: Graph) -> int:
    require_connected(g)
    return nx.diameter(g.as_networkx)


# --- parsing -----------------------------------------------------------------


def _data_lines(source: str) -> list[tuple[int, list[str]]]:
    out: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def _parse_int(token: str, *, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line=line) from None


def _looks_like_matrix(n: int, body: list[tuple[int, list[str]]]) -> bool:
    if n == 2 or len(body) != n:
        return False
    return all(len(toks) == n and all(t in ("0", "1") for t in toks) for _, toks in body)


def _parse_matrix(n: int, body: list[tuple[int, list[str]]]) -> Graph:
    if len(body) != n:
        raise ParseError(f"expected {n} matrix rows, got {len(body)}")
    rows: list[list[int]] = []
    for lineno, toks in body:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", line=lineno)
        row = []
        for t in toks:
            if t not in ("0", "1"):
                raise ParseError(f"matrix entries must be 0 or 1, got {t!r}", line=lineno)
            row.append(int(t))
        rows.append(row)
    for i in range(n):
        if rows[i][i]:
            raise LoopError(i)
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetryError(i, j)
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j]))


def _parse_edges(n: int, body: list[tuple[int, list[str]]]) -> Graph:
    edges: list[tuple[int, int]] = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise ParseError(f"expected 'u v', got {' '.join(toks)!r}", line=lineno)
        u = _parse_int(toks[0], line=lineno)
        v = _parse_int(toks[1], line=lineno)
        for x in (u, v):
            if not 0 <= x < n:
                raise RangeError(x, n)
        if u == v:
            raise LoopError(u)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def load_graph(
    source: str,
    fmt: InputFormat = "auto",
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> Graph:
    """
    Parse an edge-list or adjacency-matrix document.

    The first data line is n. An edge list follows with one `u v` pair per
    line (0-indexed, duplicates are idempotent); a matrix follows as n rows
    of n 0/1 tokens. `#` starts a comment. Documents declaring more than
    `max_vertices` vertices are rejected before anything is allocated.
    """

    lines = _data_lines(source)
    if not lines:
        raise ParseError("empty input")
    head_line, head = lines[0]
    if len(head) != 1:
        raise ParseError("first line must hold the vertex count n", line=head_line)
    n = _parse_int(head[0], line=head_line)
    if n < 1:
        raise ParseError("vertex count must be positive", line=head_line)
    if n > max_vertices:
        raise ParseError(
            f"vertex count {n} exceeds the limit of {max_vertices} (limits.max_vertices)",
            line=head_line,
        )
    body = lines[1:]
    if fmt == "matrix" or (fmt == "auto" and _looks_like_matrix(n, body)):
        return _parse_matrix(n, body)
    if fmt not in ("auto", "edges"):
        raise ParseError(f"unknown input format {fmt!r}")
    return _parse_edges(n, body)


def read_graph(
    path: Path, fmt: InputFormat = "auto", *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Graph:
    return load_graph(Path(path).read_text(encoding="utf-8"), fmt, max_vertices=max_vertices)
