"""Finite-window operator witnesses and embedding profiles.

A verified certificate acts on a window as a partial permutation V of the
window's basis; V^T V and V V^T are checked exactly against the diagonal
indicators of the points V is defined on and of their images. Points whose
image leaves the window (or is not determined by the certificate) are left
out of V and reported as the boundary deficit.
"""

import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix, diags

from app.errors import (
    BudgetTooSmall,
    InvalidBudget,
    InvalidCertificate,
    MetricBudgetExceeded,
    WindowDisjoint,
)
from app.models.action import ActionSpec, GroupWord, Point
from app.models.certificate import Certificate, ExtendedCertificate, RayCertificate
from app.models.locfin import GeodesicRay
from app.models.witness import EmbeddingProfile, GapReport, OperatorRole, Window, WindowOperator, Witness
from app.services.actions import ActionService
from app.services.equidecomp import EquidecompService
from app.services.orbits import OrbitService

logger = logging.getLogger(__name__)

# (source, target, image of each source point or None when undetermined)
WindowMap = Tuple[Set[Point], Set[Point], Dict[Point, Optional[Point]]]


def _inner_map(spec: ActionSpec, certificate) -> WindowMap:
    if isinstance(certificate, RayCertificate):
        points = EquidecompService.ray_points(spec, certificate)
        mapping: Dict[Point, Optional[Point]] = {
            points[n]: points[n + 1] for n in range(certificate.start, certificate.length)
        }
        mapping[points[certificate.length]] = None
        return set(points[certificate.start:]), set(points[certificate.start + 1:]), mapping
    mapping = {}
    for piece in certificate.pieces:
        for point in piece.points:
            mapping[point] = ActionService.apply(spec, piece.word, point)
    return set(certificate.source), set(certificate.target), mapping


def _window_map(spec: ActionSpec, certificate: Certificate, window: Window) -> WindowMap:
    if not isinstance(certificate, ExtendedCertificate):
        source, target, mapping = _inner_map(spec, certificate)
        return source & set(window.points), target & set(window.points), mapping
    source, target, mapping = _inner_map(spec, certificate.inner)
    points = set(window.points)
    rest = points - source
    mapping = dict(mapping)
    for point in rest:
        mapping[point] = point
    return points, (target & points) | rest, mapping


def _indicator(size: int, rows: Sequence[int]) -> csr_matrix:
    values = np.zeros(size, dtype=np.int64)
    values[list(rows)] = 1
    return diags(values, 0, shape=(size, size), format="csr", dtype=np.int64)


def _same(left: csr_matrix, right: csr_matrix) -> bool:
    return (left != right).nnz == 0


def _bfs_distances(spec: ActionSpec, source: Point, targets: Set[Point], budget: int) -> Dict[Point, Optional[int]]:
    """Schreier distances from ``source``; None for targets outside its orbit."""
    depth = 1
    while True:
        graph = OrbitService.orbit_bounded(spec, source, budget, max_depth=depth)
        found = {t: graph.depth_of(t) for t in targets}
        if all(d is not None for d in found.values()):
            return found
        if graph.is_finite:
            return found
        if graph.size >= budget:
            raise MetricBudgetExceeded(
                f"embedding_profile: distance from {source!r} exceeds the metric budget {budget}"
            )
        depth *= 2


class RoeWitnessService:
    """Exact window witnesses for certificates and uniform-embedding profiles."""

    @staticmethod
    def ball(spec: ActionSpec, base: Point, radius: int, budget: int) -> Window:
        """Orbit ball of ``radius`` around ``base``."""
        if radius < 0:
            raise InvalidBudget("ball: radius must be non-negative")
        graph = OrbitService.orbit_bounded(spec, base, budget, max_depth=radius)
        if not graph.is_finite and graph.size >= budget:
            raise BudgetTooSmall(f"ball: budget {budget} too small for radius {radius}")
        return Window.from_points(graph.vertices, sort_key=spec.action.sort_key)

    @staticmethod
    def build_witness(
        spec: ActionSpec, certificate: Certificate, window: Window, radius: Optional[int] = None
    ) -> Witness:
        """P_A, P_B and V on ``window`` for a certificate that passes verification."""
        report = EquidecompService.verify(spec, certificate, window.points)
        if not report.passed:
            raise InvalidCertificate(
                f"build_witness: certificate fails verification ({len(report.violations)} violations)"
            )
        ray = certificate.inner if isinstance(certificate, ExtendedCertificate) else certificate
        if isinstance(ray, RayCertificate) and radius is not None and radius > ray.length:
            logger.warning(
                f"build_witness: window radius {radius} exceeds ray length {ray.length}; "
                "ray points beyond the certificate are treated as outside the source"
            )

        source, target, mapping = _window_map(spec, certificate, window)
        if not source:
            raise WindowDisjoint("build_witness: source and window are disjoint")

        size = len(window)
        safe = [p for p in window.points if p in source and mapping.get(p) is not None and mapping[p] in window]
        images = [mapping[p] for p in safe]
        rows = [window.row(q) for q in images]
        cols = [window.row(p) for p in safe]
        isometry = csr_matrix(
            (np.ones(len(safe), dtype=np.int64), (rows, cols)), shape=(size, size), dtype=np.int64
        )
        source_projection = _indicator(size, [window.row(p) for p in source])
        target_projection = _indicator(size, [window.row(p) for p in target])

        exact = _same((isometry.T @ isometry).tocsr(), _indicator(size, cols)) and _same(
            (isometry @ isometry.T).tocsr(), _indicator(size, rows)
        )
        if not exact:
            logger.error("build_witness: partial isometry identities failed")
        logger.debug(f"build_witness: window {size}, source {len(source)}, safe {len(safe)}")
        return Witness(
            window=window,
            source_projection=WindowOperator(OperatorRole.SOURCE_PROJECTION, source_projection),
            target_projection=WindowOperator(OperatorRole.TARGET_PROJECTION, target_projection),
            isometry=WindowOperator(OperatorRole.PARTIAL_ISOMETRY, isometry),
            safe_points=tuple(safe),
            image_points=tuple(spec.sorted_points(images)),
            source_points=tuple(spec.sorted_points(source)),
            target_points=tuple(spec.sorted_points(target)),
            identities_exact=exact,
        )

    @staticmethod
    def finiteness_gap(witness: Witness) -> GapReport:
        """Rank and point-count gaps; a positive count gap with zero rank gap is flagged."""
        v = witness.isometry.matrix
        rank_source = int(np.count_nonzero((v.T @ v).diagonal()))
        rank_target = int(np.count_nonzero((v @ v.T).diagonal()))
        source_count = len(witness.source_points)
        target_count = len(witness.target_points)
        rank_gap = rank_source - rank_target
        point_gap = source_count - target_count
        return GapReport(
            rank_source=rank_source,
            rank_target=rank_target,
            rank_gap=rank_gap,
            source_count=source_count,
            target_count=target_count,
            point_count_gap=point_gap,
            safe_count=len(witness.safe_points),
            boundary_deficit=source_count - len(witness.safe_points),
            flagged=point_gap > 0 and rank_gap == 0,
        )

    @staticmethod
    def power_map(spec: ActionSpec, word: GroupWord, radius: int, base: Point) -> List[Point]:
        """f(m) = w^m . base for m = -radius..radius."""
        return [ActionService.apply(spec, word.power(m), base) for m in range(-radius, radius + 1)]

    @staticmethod
    def ray_map(spec: ActionSpec, ray: GeodesicRay, radius: int) -> List[Point]:
        """f(m) = p_{m + radius}; the ray must have at least 2 * radius letters."""
        if ray.length < 2 * radius:
            raise InvalidBudget(f"ray_map: ray of length {ray.length} is shorter than {2 * radius}")
        return ActionService.walk(spec, ray.base, ray.letters)[: 2 * radius + 1]

    @staticmethod
    def embedding_profile(spec: ActionSpec, images: Sequence[Point], metric_budget: int) -> EmbeddingProfile:
        """Forward and backward control of f: {-n..n} -> points, given as its 2n + 1 images."""
        if len(images) % 2 != 1:
            raise InvalidBudget("embedding_profile: expects the 2n + 1 images of -n..n")
        radius = len(images) // 2
        images = [spec.action.check_point(p) for p in images]
        action = spec.action

        distinct = list(dict.fromkeys(images))
        table: Dict[Tuple[Point, Point], Optional[int]] = {}
        if action.distance(distinct[0], distinct[0]) is not None:
            for p in distinct:
                for q in distinct:
                    table[(p, q)] = action.distance(p, q)
        else:
            targets = set(distinct)
            for p in distinct:
                for q, d in _bfs_distances(spec, p, targets, metric_budget).items():
                    table[(p, q)] = d

        span = 2 * radius
        by_gap: List[Optional[int]] = [0] * (span + 1)
        undefined = [False] * (span + 1)
        by_distance: Dict[int, int] = {0: 0}
        collision = None
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                d = table[(images[i], images[j])]
                gap = j - i
                if d is None:
                    undefined[gap] = True
                    continue
                by_gap[gap] = max(by_gap[gap], d)
                by_distance[d] = max(by_distance.get(d, 0), gap)
                if d == 0 and collision is None:
                    collision = (i - radius, j - radius)

        forward: List[Optional[int]] = []
        running = 0
        broken = False
        for r in range(span + 1):
            broken = broken or undefined[r]
            running = max(running, by_gap[r])
            forward.append(None if broken else running)

        backward: List[int] = []
        running = 0
        for rho in range(max(by_distance) + 1):
            running = max(running, by_distance.get(rho, 0))
            backward.append(running)

        return EmbeddingProfile(
            radius=radius,
            forward=tuple(forward),
            backward=tuple(backward),
            injective=collision is None,
            collision=collision,
        )
