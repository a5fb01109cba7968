"""Explored portions of Schreier graphs."""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Mapping, Optional, Tuple

from app.models.action import GeneratorLetter, GroupWord, Point

FRONTIER = -1


class OrbitStatus(str, Enum):
    """Exploration outcome."""

    FINITE = "Finite"
    TRUNCATED = "Truncated"


@dataclass(frozen=True)
class OrbitGraph:
    """BFS exploration of the orbit of ``base``.

    ``edges[i][k]`` is the index of ``labels[k] . vertices[i]`` or FRONTIER
    when that point was left undiscovered by the budget or depth limit.
    Vertex order is BFS order.
    """

    base: Point
    vertices: Tuple[Point, ...]
    depths: Tuple[int, ...]
    edges: Tuple[Tuple[int, ...], ...]
    labels: Tuple[GroupWord, ...]
    parents: Tuple[Tuple[int, int], ...]
    status: OrbitStatus
    budget: int
    max_depth_limit: Optional[int]
    frontier_size: int
    index: Mapping[Point, int] = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_finite(self) -> bool:
        return self.status is OrbitStatus.FINITE

    @property
    def eccentricity(self) -> int:
        """Largest BFS depth reached from the base point."""
        return max(self.depths)

    def depth_of(self, point: Point) -> Optional[int]:
        i = self.index.get(point)
        return None if i is None else self.depths[i]

    def sphere_sizes(self) -> List[int]:
        counts = Counter(self.depths)
        return [counts[d] for d in range(self.eccentricity + 1)]

    def vertices_at(self, depth: int) -> List[int]:
        return [i for i, d in enumerate(self.depths) if d == depth]

    def label_path(self, vertex: int) -> List[int]:
        """Edge labels along the BFS tree from the base to ``vertex``, base first."""
        path = []
        while vertex != 0:
            parent, label = self.parents[vertex]
            path.append(label)
            vertex = parent
        path.reverse()
        return path

    def letter_path(self, vertex: int) -> Tuple[GeneratorLetter, ...]:
        """The tree path as letters in application order."""
        letters: List[GeneratorLetter] = []
        for label in self.label_path(vertex):
            letters.extend(self.labels[label].application_order())
        return tuple(letters)
