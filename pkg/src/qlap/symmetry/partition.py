from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping

from networkx.utils import UnionFind


@dataclass(frozen=True)
class Partition:
    """
    A set partition of a finite ground set, kept in canonical form.

    `ground` names the ground set ("vertices", "directed-edges",
    "undirected-edges" or "paths:<alpha>"). Blocks are sorted internally and
    ordered by their smallest element, so two partitions of the same set are
    equal exactly when their `blocks` are.
    """

    ground: str
    blocks: tuple[tuple[Any, ...], ...]
    _index: dict[Any, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        index: dict[Any, int] = {}
        for bid, block in enumerate(canon):
            if not block:
                raise ValueError("partition blocks must be nonempty")
            for x in block:
                if x in index:
                    raise ValueError(f"element {x!r} appears in more than one block")
                index[x] = bid
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "_index", index)

    @staticmethod
    def from_labels(ground: str, labels: Mapping[Hashable, Hashable]) -> "Partition":
        groups: dict[Hashable, list[Any]] = {}
        for x, lab in labels.items():
            groups.setdefault(lab, []).append(x)
        return Partition(ground=ground, blocks=tuple(tuple(g) for g in groups.values()))

    @staticmethod
    def discrete(ground: str, elements: Iterable[Any]) -> "Partition":
        return Partition(ground=ground, blocks=tuple((x,) for x in elements))

    @property
    def elements(self) -> list[Any]:
        return sorted(self._index)

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def block_of(self, x: Any) -> int:
        return self._index[x]

    def block(self, x: Any) -> tuple[Any, ...]:
        return self.blocks[self._index[x]]

    def same_block(self, x: Any, y: Any) -> bool:
        return self._index[x] == self._index[y]

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def min_block_size(self) -> int:
        return min(self.block_sizes())

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside one block of other."""

        if set(self._index) != set(other._index):
            return False
        return all(len({other.block_of(x) for x in b}) == 1 for b in self.blocks)

    def map_elements(self, fn: Callable[[Any], Any], ground: str) -> "Partition":
        return Partition(ground=ground, blocks=tuple(tuple(fn(x) for x in b) for b in self.blocks))


def merge_orientations(directed: Partition) -> Partition:
    """
    Unordered edge classes from a partition of directed edges.

    Blocks holding (i, j) and (j, i) are merged; elements become (min, max).
    """

    uf = UnionFind(range(len(directed.blocks)))
    for block in directed.blocks:
        for i, j in block:
            uf.union(directed.block_of((i, j)), directed.block_of((j, i)))
    groups: dict[int, set[tuple[int, int]]] = {}
    for bid, block in enumerate(directed.blocks):
        root = uf[bid]
        for i, j in block:
            groups.setdefault(root, set()).add((min(i, j), max(i, j)))
    return Partition(
        ground="undirected-edges", blocks=tuple(tuple(g) for g in groups.values())
    )
