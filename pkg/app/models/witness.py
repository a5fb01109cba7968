"""Finite windows and the exact operators built on them."""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from scipy.sparse import csr_matrix

from app.models.action import Point


@dataclass(frozen=True)
class Window:
    """A finite point set with stable row indices."""

    points: Tuple[Point, ...]
    index: Dict[Point, int] = field(compare=False, repr=False)

    @classmethod
    def from_points(cls, points, sort_key=None) -> "Window":
        ordered = tuple(sorted(set(points), key=sort_key))
        return cls(points=ordered, index={p: i for i, p in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point: Point) -> bool:
        return point in self.index

    def row(self, point: Point) -> int:
        return self.index[point]


class OperatorRole:
    SOURCE_PROJECTION = "source_projection"
    TARGET_PROJECTION = "target_projection"
    PARTIAL_ISOMETRY = "partial_isometry"


@dataclass(frozen=True)
class WindowOperator:
    """A {0,1} integer matrix over a window."""

    role: str
    matrix: csr_matrix = field(compare=False)

    def entries(self) -> List[Tuple[int, int]]:
        """(row, col) of every 1-entry, row-major."""
        coo = self.matrix.tocoo()
        return sorted((int(r), int(c)) for r, c, v in zip(coo.row, coo.col, coo.data) if v)


@dataclass(frozen=True)
class Witness:
    """Projections onto source and target and the partial isometry between them.

    ``identities_exact`` records that V^T V and V V^T equal the diagonal
    indicators of ``safe_points`` and ``image_points``.
    """

    window: Window
    source_projection: WindowOperator
    target_projection: WindowOperator
    isometry: WindowOperator
    safe_points: Tuple[Point, ...]
    image_points: Tuple[Point, ...]
    source_points: Tuple[Point, ...]
    target_points: Tuple[Point, ...]
    identities_exact: bool


@dataclass(frozen=True)
class GapReport:
    rank_source: int
    rank_target: int
    rank_gap: int
    source_count: int
    target_count: int
    point_count_gap: int
    safe_count: int
    boundary_deficit: int
    flagged: bool


@dataclass(frozen=True)
class EmbeddingProfile:
    """Control sequences of a map f from {-n..n} into an orbit.

    ``forward[r]`` is the largest distance between images of points at
    most r apart (None when some such pair lies in different orbits);
    ``backward[rho]`` is the largest |x - y| over pairs whose images are
    at most rho apart.
    """

    radius: int
    forward: Tuple[Optional[int], ...]
    backward: Tuple[int, ...]
    injective: bool
    collision: Optional[Tuple[int, int]] = None
