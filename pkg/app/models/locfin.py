"""Local-finiteness reports and geodesic rays."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from app.models.action import GeneratorLetter, GroupWord, Point


class PointStatus(str, Enum):
    FINITE = "Finite"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PointResult:
    """Finite with the exact orbit size, or Unknown with the explored size and frontier."""

    base: Point
    status: PointStatus
    size: int
    frontier_size: int = 0
    eccentricity: Optional[int] = None


@dataclass(frozen=True)
class LocalFinitenessReport:
    results: Tuple[PointResult, ...]
    budget: int
    subgroup_generators: Optional[Tuple[GroupWord, ...]] = None

    @property
    def all_finite(self) -> bool:
        return all(r.status is PointStatus.FINITE for r in self.results)


@dataclass(frozen=True)
class GeodesicRay:
    """A path s_1, ..., s_N from ``base`` whose n-th point lies at distance n.

    ``certified_simple`` is set only after the N + 1 points have been
    recomputed and found pairwise distinct.
    """

    base: Point
    letters: Tuple[GeneratorLetter, ...]
    certified_simple: bool = False

    @property
    def length(self) -> int:
        return len(self.letters)


class Outcome(str, Enum):
    RAY = "ray"
    FINITE = "finite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Classification:
    """Window-scale dichotomy for one base point."""

    base: Point
    outcome: Outcome
    length: int
    ray: Optional[GeodesicRay] = None
    diameter: Optional[int] = None
    reason: Optional[str] = None
