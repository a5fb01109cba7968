"""Results of the finite equidecomposability oracles."""

from dataclasses import dataclass
from typing import Optional, Tuple

from app.models.action import GroupWord, Point
from app.models.certificate import FiniteCertificate


@dataclass(frozen=True)
class WitnessEdge:
    """b = word . a, with ``word`` the first witness found by BFS from a."""

    source: Point
    target: Point
    word: GroupWord


@dataclass(frozen=True)
class HallViolation:
    """A subset of one side whose neighborhood is smaller than itself."""

    side: str
    subset: Tuple[Point, ...]
    neighborhood: Tuple[Point, ...]

    @property
    def deficiency(self) -> int:
        return len(self.subset) - len(self.neighborhood)


@dataclass(frozen=True)
class MatchResult:
    certificate: Optional[FiniteCertificate]
    edges: Tuple[WitnessEdge, ...]
    matching_size: int
    max_word_len: int
    hall_violation: Optional[HallViolation] = None

    @property
    def found(self) -> bool:
        return self.certificate is not None
