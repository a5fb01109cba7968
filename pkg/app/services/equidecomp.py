"""Exact verification and manipulation of equidecomposition certificates."""

import logging
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from app.errors import InvalidCertificate, NotProper, NotSimple
from app.models.action import ActionSpec, GeneratorLetter, GroupWord, Point
from app.models.certificate import (
    Certificate,
    ExtendedCertificate,
    FiniteCertificate,
    Piece,
    RayCertificate,
    Verdict,
    VerificationReport,
    Violation,
)
from app.services.actions import ActionService

logger = logging.getLogger(__name__)


def _check_partitions(
    spec: ActionSpec,
    source: Set[Point],
    pieces: Sequence[Tuple[Iterable[Point], GroupWord]],
    target: Set[Point],
) -> List[Violation]:
    """Check that the pieces partition ``source`` and their images partition ``target``."""
    violations: List[Violation] = []
    owner: Dict[Point, int] = {}
    image_owner: Dict[Point, int] = {}
    overlaps: Dict[Tuple[int, int], List[Point]] = defaultdict(list)
    image_overlaps: Dict[Tuple[int, int], List[Point]] = defaultdict(list)

    for i, (points, word) in enumerate(pieces):
        points = spec.sorted_points(points)
        outside = [p for p in points if p not in source]
        if outside:
            violations.append(
                Violation("piece_outside_source", f"piece {i} has points outside the source", tuple(outside), (i,))
            )
        images = []
        for point in points:
            if point in owner:
                overlaps[(owner[point], i)].append(point)
            else:
                owner[point] = i
            image = ActionService.apply(spec, word, point)
            images.append(image)
            if image in image_owner:
                image_overlaps[(image_owner[image], i)].append(image)
            else:
                image_owner[image] = i
        stray = spec.sorted_points(image for image in images if image not in target)
        if stray:
            violations.append(
                Violation("image_outside_target", f"image of piece {i} leaves the target", tuple(stray), (i,))
            )

    for (i, j), points in sorted(overlaps.items()):
        violations.append(Violation("piece_overlap", f"pieces {i} and {j} overlap", tuple(points), (i, j)))
    for (i, j), points in sorted(image_overlaps.items()):
        violations.append(
            Violation("image_overlap", f"images of pieces {i} and {j} overlap", tuple(spec.sorted_points(points)), (i, j))
        )
    uncovered = spec.sorted_points(p for p in source if p not in owner)
    if uncovered:
        violations.append(Violation("source_uncovered", "source points outside every piece", tuple(uncovered)))
    missed = spec.sorted_points(p for p in target if p not in image_owner)
    if missed:
        violations.append(Violation("target_uncovered", "target points outside every image", tuple(missed)))
    return violations


def _verdict(violations: Sequence[Violation]) -> Verdict:
    return Verdict.FAIL if violations else Verdict.PASS


class EquidecompService:
    """Certificates for equidecomposability, checked with exact set arithmetic."""

    @staticmethod
    def verify_finite(spec: ActionSpec, certificate: FiniteCertificate) -> VerificationReport:
        """Check both partition conditions; every violation is listed in the report."""
        violations = _check_partitions(
            spec,
            set(certificate.source),
            [(piece.points, piece.word) for piece in certificate.pieces],
            set(certificate.target),
        )
        return VerificationReport(
            kind=certificate.kind,
            verdict=_verdict(violations),
            violations=tuple(violations),
            checked_points=len(certificate.source),
        )

    @staticmethod
    def ray_points(spec: ActionSpec, certificate: RayCertificate) -> List[Point]:
        """p_0 = x, ..., p_N = s_N...s_1 x."""
        return ActionService.walk(spec, certificate.base, certificate.ray_letters)

    @staticmethod
    def check_simple(points: Sequence[Point]) -> None:
        first: Dict[Point, int] = {}
        for n, point in enumerate(points):
            if point in first:
                raise NotSimple(n, first[point])
            first[point] = n

    @staticmethod
    def ray_pieces(
        spec: ActionSpec, certificate: RayCertificate, points: Optional[Sequence[Point]] = None
    ) -> List[Tuple[GeneratorLetter, List[Point]]]:
        """A_s-window = {p_n : start <= n <= N-1, s_{n+1} = s} for every s in the closure."""
        if points is None:
            points = EquidecompService.ray_points(spec, certificate)
        letters = [spec.check_letter(letter) for letter in certificate.ray_letters]
        members: Dict[GeneratorLetter, List[Point]] = {letter: [] for letter in spec.closure}
        for n in range(certificate.start, certificate.length):
            members[letters[n]].append(points[n])
        return [(letter, members[letter]) for letter in spec.closure]

    @staticmethod
    def verify_ray(spec: ActionSpec, certificate: RayCertificate) -> VerificationReport:
        """Recompute the window, check simplicity and both window partitions.

        A Pass verifies the certificate to depth N: the pieces partition the
        window minus its last point and their images partition the window
        minus its first point.
        """
        if certificate.length < 2:
            raise InvalidCertificate("verify_ray: a ray certificate needs at least 2 letters")
        points = EquidecompService.ray_points(spec, certificate)
        EquidecompService.check_simple(points)

        start, last = certificate.start, certificate.length
        window = set(points[start:])
        pieces = [
            (members, GroupWord.of(letter))
            for letter, members in EquidecompService.ray_pieces(spec, certificate, points)
        ]
        violations = _check_partitions(spec, window - {points[last]}, pieces, window - {points[start]})
        return VerificationReport(
            kind=certificate.kind,
            verdict=_verdict(violations),
            violations=tuple(violations),
            checked_points=len(window),
            depth=last,
            missing_points=(points[start],),
            unresolved_points=(points[last],),
        )

    @staticmethod
    def extend_to_full_set(spec: ActionSpec, certificate: Certificate) -> ExtendedCertificate:
        """Add the complement of the source, fixed by the identity word.

        The extended certificate witnesses that the whole set is
        equidecomposable with the proper subset missing source minus target.
        """
        if isinstance(certificate, ExtendedCertificate):
            raise InvalidCertificate("extend_to_full_set: certificate is already extended")
        if isinstance(certificate, FiniteCertificate):
            if not certificate.target < certificate.source:
                raise NotProper(
                    "extend_to_full_set: target is not a proper subset of the source "
                    "(a verified finite certificate is a bijection, so |target| = |source|)"
                )
            report = EquidecompService.verify_finite(spec, certificate)
        else:
            report = EquidecompService.verify_ray(spec, certificate)
        if not report.passed:
            raise InvalidCertificate(
                f"extend_to_full_set: inner certificate fails verification ({len(report.violations)} violations)"
            )
        return ExtendedCertificate(inner=certificate)

    @staticmethod
    def verify_extended(
        spec: ActionSpec, certificate: ExtendedCertificate, window: Iterable[Point]
    ) -> VerificationReport:
        """Verify the inner certificate, then the extension on a finite window.

        Window points outside the inner source must be fixed by the rest
        word; the extended target on the window must omit exactly
        (source minus target) within the window.
        """
        inner = certificate.inner
        points_window = set(window)
        depth = None
        mapping: Dict[Point, Point] = {}
        unresolved: Set[Point] = set()
        if isinstance(inner, RayCertificate):
            inner_report = EquidecompService.verify_ray(spec, inner)
            points = EquidecompService.ray_points(spec, inner)
            known_source = set(points[inner.start:])
            known_target = set(points[inner.start + 1:])
            for n in range(inner.start, inner.length):
                mapping[points[n]] = points[n + 1]
            unresolved.add(points[inner.length])
            depth = inner.length
        else:
            inner_report = EquidecompService.verify_finite(spec, inner)
            known_source = set(inner.source)
            known_target = set(inner.target)
            for piece in inner.pieces:
                for point in piece.points:
                    mapping[point] = ActionService.apply(spec, piece.word, point)

        violations = list(inner_report.violations)
        if not certificate.rest_word.is_identity():
            violations.append(Violation("rest_not_identity", "the complement piece must carry the identity word"))
        rest = points_window - known_source
        moved = [p for p in rest if ActionService.apply(spec, certificate.rest_word, p) != p]
        if moved:
            violations.append(
                Violation("rest_not_fixed", "complement points moved by the rest word", tuple(spec.sorted_points(moved)))
            )

        extended_target = (known_target & points_window) | rest
        missing = points_window - extended_target
        expected_missing = (known_source - known_target) & points_window
        if missing != expected_missing:
            violations.append(
                Violation(
                    "missing_mismatch",
                    "extended target does not omit exactly source minus target",
                    tuple(spec.sorted_points(missing ^ expected_missing)),
                )
            )

        images: Dict[Point, Point] = {p: p for p in rest}
        for point in points_window & known_source:
            image = mapping.get(point)
            if image is None or image not in points_window:
                unresolved.add(point)
                continue
            if image in images:
                violations.append(
                    Violation("image_overlap", "two window points share an image", (images[image], point))
                )
            images[image] = point

        unresolved &= points_window
        if unresolved:
            logger.info(f"verify_extended: {len(unresolved)} boundary points have images outside the window")
        return VerificationReport(
            kind=certificate.kind,
            verdict=_verdict(violations),
            violations=tuple(violations),
            checked_points=len(points_window),
            depth=depth,
            missing_points=tuple(spec.sorted_points(missing)),
            unresolved_points=tuple(spec.sorted_points(unresolved)),
        )

    @staticmethod
    def verify(
        spec: ActionSpec, certificate: Certificate, window: Optional[Iterable[Point]] = None
    ) -> VerificationReport:
        if isinstance(certificate, FiniteCertificate):
            return EquidecompService.verify_finite(spec, certificate)
        if isinstance(certificate, RayCertificate):
            return EquidecompService.verify_ray(spec, certificate)
        if window is None:
            raise InvalidCertificate("verify: extended certificates are verified on a window")
        return EquidecompService.verify_extended(spec, certificate, window)

    @staticmethod
    def invert_finite(spec: ActionSpec, certificate: FiniteCertificate) -> FiniteCertificate:
        """The certificate for target ~ source: images become pieces, words are inverted."""
        pieces = tuple(
            Piece(
                points=frozenset(ActionService.image(spec, piece.word, piece.points)),
                word=piece.word.inverse(),
            )
            for piece in certificate.pieces
        )
        return FiniteCertificate(source=certificate.target, pieces=pieces, target=certificate.source)

    @staticmethod
    def group_by_word(
        assignment: Sequence[Tuple[Point, GroupWord]], source: FrozenSet[Point], target: FrozenSet[Point]
    ) -> FiniteCertificate:
        """One piece per distinct word, in first-use order."""
        groups: Dict[GroupWord, List[Point]] = {}
        for point, word in assignment:
            groups.setdefault(word, []).append(point)
        pieces = tuple(Piece(points=frozenset(points), word=word) for word, points in groups.items())
        return FiniteCertificate(source=source, pieces=pieces, target=target)
