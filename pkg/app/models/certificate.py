"""Equidecomposition certificates and verification reports."""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional, Tuple, Union

from app.models.action import GeneratorLetter, GroupWord, Point


@dataclass(frozen=True)
class Piece:
    """A piece A_i moved by the word w_i."""

    points: FrozenSet[Point]
    word: GroupWord


@dataclass(frozen=True)
class FiniteCertificate:
    """Finite partitions {A_i} of ``source`` with {w_i A_i} partitioning ``target``."""

    source: FrozenSet[Point]
    pieces: Tuple[Piece, ...]
    target: FrozenSet[Point]

    kind = "finite"


@dataclass(frozen=True)
class RayCertificate:
    """The A_s construction along a simple path s_1, s_2, ... from ``base``.

    Unrooted, the window is {s_n...s_1 x : 1 <= n <= N}; rooted, it also
    contains x itself (n = 0) and the certificate is the shift of a copy
    of the natural numbers onto itself minus its first point.
    """

    base: Point
    ray_letters: Tuple[GeneratorLetter, ...]
    rooted: bool = False

    kind = "ray"

    @property
    def length(self) -> int:
        return len(self.ray_letters)

    @property
    def start(self) -> int:
        """Index of the first window point, and of the point the target omits."""
        return 0 if self.rooted else 1


@dataclass(frozen=True)
class ExtendedCertificate:
    """``inner`` plus the complement of its source, fixed by the identity word."""

    inner: Union[FiniteCertificate, RayCertificate]
    rest_word: GroupWord = field(default_factory=GroupWord.identity)

    kind = "extended"


Certificate = Union[FiniteCertificate, RayCertificate, ExtendedCertificate]


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass(frozen=True)
class Violation:
    """One failed partition or image condition."""

    kind: str
    message: str
    points: Tuple[Point, ...] = ()
    pieces: Tuple[int, ...] = ()


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verifying a certificate, exactly, on finite data."""

    kind: str
    verdict: Verdict
    violations: Tuple[Violation, ...]
    checked_points: int
    depth: Optional[int] = None
    missing_points: Tuple[Point, ...] = ()
    unresolved_points: Tuple[Point, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS
