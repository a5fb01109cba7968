"""Local-finiteness testing and geodesic ray extraction."""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from app.errors import BudgetTooSmall, InvalidBudget, InvalidCertificate, OrbitIsFinite
from app.models.action import ActionSpec, GeneratorLetter, GroupWord, Point
from app.models.certificate import RayCertificate
from app.models.locfin import (
    Classification,
    GeodesicRay,
    LocalFinitenessReport,
    Outcome,
    PointResult,
    PointStatus,
)
from app.services.actions import ActionService
from app.services.orbits import OrbitService

logger = logging.getLogger(__name__)


def _has_distance_oracle(spec: ActionSpec) -> bool:
    action = spec.action
    return action.self_action and action.word_length(action.identity()) is not None


def _oracle_ray(spec: ActionSpec, base: Point, length: int, budget: int) -> Tuple[GeneratorLetter, ...]:
    """Depth-first geodesic extension in closure order.

    A step is allowed only when it moves one unit further from ``base``,
    so the first complete path is the first geodesic in that order.
    """
    action = spec.action

    def candidates(point: Point, depth: int) -> Iterator[Tuple[GeneratorLetter, Point]]:
        found = []
        for letter in spec.closure:
            image = action.act(letter, point)
            if action.distance(base, image) == depth + 1:
                found.append((letter, image))
        return iter(found)

    path: List[GeneratorLetter] = []
    stack = [candidates(base, 0)]
    visited = 1
    while stack:
        if len(path) == length:
            return tuple(path)
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            if path:
                path.pop()
            continue
        visited += 1
        if visited > budget:
            raise BudgetTooSmall(f"find_geodesic_ray: budget {budget} exhausted at depth {len(path)}")
        letter, image = step
        path.append(letter)
        stack.append(candidates(image, len(path)))
    raise BudgetTooSmall(f"find_geodesic_ray: no geodesic of length {length} from {base!r}")


def _seeded_ray(
    spec: ActionSpec, base: Point, length: int, budget: int, rng: random.Random
) -> Tuple[GeneratorLetter, ...]:
    """A random geodesic prefix towards a random far endpoint.

    A random walk that prefers outward steps picks an endpoint at distance
    at least ``length``; the path then steps towards it along shuffled
    letters. Every prefix of a geodesic is geodesic, so no step dead-ends.
    """
    action = spec.action
    letters = list(spec.closure)

    far, depth, steps = base, 0, 0
    while depth < length:
        steps += 1
        if steps > budget:
            raise BudgetTooSmall(f"find_geodesic_ray: budget {budget} exhausted at depth {depth}")
        rng.shuffle(letters)
        moves = [(action.distance(base, image), image) for image in (action.act(s, far) for s in letters)]
        outward = [move for move in moves if move[0] > depth]
        depth, far = outward[0] if outward else moves[0]

    path: List[GeneratorLetter] = []
    point, remaining = base, depth
    while len(path) < length:
        rng.shuffle(letters)
        for letter in letters:
            image = action.act(letter, point)
            if action.distance(image, far) == remaining - 1:
                break
        path.append(letter)
        point, remaining = image, remaining - 1
    return tuple(path)


def _explored_ray(
    spec: ActionSpec, base: Point, length: int, budget: int, rng: Optional[random.Random]
) -> Tuple[GeneratorLetter, ...]:
    graph = OrbitService.orbit_bounded(spec, base, budget, max_depth=length)
    if graph.is_finite and graph.eccentricity < length:
        raise OrbitIsFinite(graph.eccentricity)
    far = graph.vertices_at(length)
    if not far:
        raise BudgetTooSmall(
            f"find_geodesic_ray: budget {budget} exhausted at depth {graph.eccentricity} before depth {length}"
        )
    vertex = far[0] if rng is None else rng.choice(far)
    return graph.letter_path(vertex)


class LocalFinitenessService:
    """Orbit finiteness at a budget, and the ray construction for infinite orbits."""

    @staticmethod
    def test_local_finiteness(
        spec: ActionSpec,
        base_points: Iterable[Point],
        budget: int,
        subgroup_words: Optional[Sequence[GroupWord]] = None,
        workers: int = 1,
    ) -> LocalFinitenessReport:
        """Finite(size) or Unknown for each base point; infiniteness is never claimed."""
        points = list(base_points)

        def explore(point: Point) -> PointResult:
            graph = OrbitService.orbit_bounded(spec, point, budget, generators=subgroup_words)
            if graph.is_finite:
                return PointResult(point, PointStatus.FINITE, graph.size, eccentricity=graph.eccentricity)
            return PointResult(point, PointStatus.UNKNOWN, graph.size, frontier_size=graph.frontier_size)

        if workers > 1 and len(points) > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(explore, points))
        else:
            results = [explore(point) for point in points]

        unknown = sum(1 for r in results if r.status is PointStatus.UNKNOWN)
        logger.info(f"test_local_finiteness: {len(results) - unknown} finite, {unknown} unknown at budget {budget}")
        return LocalFinitenessReport(
            results=tuple(results),
            budget=budget,
            subgroup_generators=tuple(subgroup_words) if subgroup_words is not None else None,
        )

    @staticmethod
    def find_geodesic_ray(
        spec: ActionSpec,
        base: Point,
        length: int,
        budget: int,
        seed: Optional[int] = None,
    ) -> GeodesicRay:
        """A geodesic path of ``length`` letters from ``base``.

        Without a seed the path is the first geodesic in closure order (the
        BFS-tree path to the first vertex at that depth); with a seed ties
        are broken by ``random.Random(seed)``. Raises OrbitIsFinite when the
        whole orbit lies closer than ``length`` and BudgetTooSmall when the
        budget ran out first.
        """
        if length < 2:
            raise InvalidBudget("find_geodesic_ray: length must be at least 2")
        if budget < 1:
            raise InvalidBudget("find_geodesic_ray: budget must be at least 1")
        base = spec.action.check_point(base)
        rng = random.Random(seed) if seed is not None else None
        if _has_distance_oracle(spec) and rng is not None:
            letters = _seeded_ray(spec, base, length, budget, rng)
        elif _has_distance_oracle(spec):
            letters = _oracle_ray(spec, base, length, budget)
        else:
            letters = _explored_ray(spec, base, length, budget, rng)

        points = ActionService.walk(spec, base, letters)
        simple = len(set(points)) == len(points)
        if not simple:
            logger.error(f"find_geodesic_ray: path from {base!r} revisits a point")
        return GeodesicRay(base=base, letters=letters, certified_simple=simple)

    @staticmethod
    def ray_to_certificate(spec: ActionSpec, ray: GeodesicRay, rooted: bool = False) -> RayCertificate:
        if not ray.certified_simple:
            raise InvalidCertificate("ray_to_certificate: ray is not certified simple")
        letters = tuple(spec.check_letter(letter) for letter in ray.letters)
        return RayCertificate(base=ray.base, ray_letters=letters, rooted=rooted)

    @staticmethod
    def classify(
        spec: ActionSpec, base: Point, length: int, budget: int, seed: Optional[int] = None
    ) -> Classification:
        """ray, finite (with diameter), or unknown when the budget decides nothing."""
        try:
            ray = LocalFinitenessService.find_geodesic_ray(spec, base, length, budget, seed=seed)
        except OrbitIsFinite as exc:
            return Classification(base, Outcome.FINITE, length, diameter=exc.diameter)
        except BudgetTooSmall as exc:
            return Classification(base, Outcome.UNKNOWN, length, reason=str(exc))
        return Classification(base, Outcome.RAY, length, ray=ray)
