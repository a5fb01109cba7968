"""Budgeted orbit and Schreier-graph exploration."""

import logging
from typing import Callable, List, Optional, Sequence, Set, Tuple

from app.errors import InvalidBudget, NotFinitePerm
from app.models.action import ActionSpec, GroupWord, Point
from app.models.orbit import FRONTIER, OrbitGraph, OrbitStatus

logger = logging.getLogger(__name__)


def _edge_labels(spec: ActionSpec, generators: Optional[Sequence[GroupWord]]) -> Tuple[GroupWord, ...]:
    if generators is None:
        return tuple(GroupWord.of(letter) for letter in spec.closure)
    labels: List[GroupWord] = []
    for word in generators:
        word = GroupWord(tuple(spec.check_letter(letter) for letter in word.letters))
        labels.append(word)
        inverse = word.inverse()
        if inverse != word:
            labels.append(inverse)
    return tuple(labels)


def _mover(spec: ActionSpec, word: GroupWord) -> Callable[[Point], Point]:
    act = spec.action.act
    order = word.application_order()
    if len(order) == 1:
        letter = order[0]
        return lambda point: act(letter, point)

    def move(point: Point) -> Point:
        for letter in order:
            point = act(letter, point)
        return point

    return move


class OrbitService:
    """Orbit exploration over the symmetric closure or explicit subgroup words."""

    @staticmethod
    def orbit_bounded(
        spec: ActionSpec,
        base: Point,
        budget: int,
        max_depth: Optional[int] = None,
        generators: Optional[Sequence[GroupWord]] = None,
    ) -> OrbitGraph:
        """Breadth-first exploration from ``base`` with at most ``budget`` vertices.

        Edges follow the symmetric closure in declaration order, or each of
        ``generators`` followed by its inverse. The result is Finite exactly
        when no edge leads to an undiscovered point.
        """
        if budget < 1:
            raise InvalidBudget("orbit_bounded: budget must be at least 1")
        if max_depth is not None and max_depth < 0:
            raise InvalidBudget("orbit_bounded: max_depth must be non-negative")
        labels = _edge_labels(spec, generators)
        movers = [_mover(spec, label) for label in labels]
        base = spec.action.check_point(base)

        vertices: List[Point] = [base]
        index = {base: 0}
        depths = [0]
        parents = [(FRONTIER, FRONTIER)]
        edges: List[Tuple[int, ...]] = []
        frontier: Set[Point] = set()

        i = 0
        while i < len(vertices):
            point = vertices[i]
            closed = max_depth is not None and depths[i] >= max_depth
            row = []
            for k, move in enumerate(movers):
                image = move(point)
                j = index.get(image)
                if j is None:
                    if closed or len(vertices) >= budget:
                        frontier.add(image)
                        row.append(FRONTIER)
                        continue
                    j = len(vertices)
                    vertices.append(image)
                    index[image] = j
                    depths.append(depths[i] + 1)
                    parents.append((i, k))
                row.append(j)
            edges.append(tuple(row))
            i += 1

        status = OrbitStatus.FINITE if not frontier else OrbitStatus.TRUNCATED
        if status is OrbitStatus.TRUNCATED:
            logger.debug(
                f"orbit_bounded: truncated at {len(vertices)} vertices "
                f"(budget {budget}, max_depth {max_depth}), frontier {len(frontier)}"
            )
        return OrbitGraph(
            base=base,
            vertices=tuple(vertices),
            depths=tuple(depths),
            edges=tuple(edges),
            labels=labels,
            parents=tuple(parents),
            status=status,
            budget=budget,
            max_depth_limit=max_depth,
            frontier_size=len(frontier),
            index=index,
        )

    @staticmethod
    def orbit_partition(
        spec: ActionSpec,
        budget: int,
        generators: Optional[Sequence[GroupWord]] = None,
    ) -> List[List[Point]]:
        """Partition a finite universe into orbits, each sorted, ordered by least point."""
        universe = spec.action.universe()
        if universe is None:
            raise NotFinitePerm(f"orbit_partition: family '{spec.family}' has no finite universe")
        seen: Set[Point] = set()
        orbits: List[List[Point]] = []
        for point in universe:
            if point in seen:
                continue
            graph = OrbitService.orbit_bounded(spec, point, budget, generators=generators)
            if not graph.is_finite:
                raise InvalidBudget(f"orbit_partition: budget {budget} too small for the orbit of {point}")
            seen.update(graph.vertices)
            orbits.append(spec.sorted_points(graph.vertices))
        return orbits
