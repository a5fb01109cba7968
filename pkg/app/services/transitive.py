"""Joining the orbits of a finite action with transpositions of representatives."""

import logging

from app.errors import InvalidBudget, NotFinitePerm
from app.models.action import ActionSpec, Generator
from app.services.families import FinitePermFamily, build_spec
from app.services.orbits import OrbitService

logger = logging.getLogger(__name__)


class TransitiveExtensionService:
    @staticmethod
    def extend_transitive(spec: ActionSpec, budget: int) -> ActionSpec:
        """Add the transpositions (y_1 y_i) of the orbit representatives y_1 < y_2 < ...

        Representatives are the least point of each orbit. The result acts
        transitively; this is checked with one bounded orbit exploration.
        A transitive spec is returned unchanged.
        """
        if spec.family != FinitePermFamily.name:
            raise NotFinitePerm(f"extend_transitive: family '{spec.family}' is not finite_perm")
        orbits = OrbitService.orbit_partition(spec, budget)
        representatives = [orbit[0] for orbit in orbits]
        if len(representatives) == 1:
            return spec

        size = spec.action.size
        names = {g.name for g in spec.generators}
        added = []
        first = representatives[0]
        for other in representatives[1:]:
            table = list(range(size))
            table[first], table[other] = other, first
            name = f"swap_{first}_{other}"
            suffix = 1
            while name in names:
                name = f"swap_{first}_{other}_{suffix}"
                suffix += 1
            names.add(name)
            added.append(Generator(name=name, table=tuple(table)))

        extended = build_spec(spec.family, spec.params, spec.generators + tuple(added))
        graph = OrbitService.orbit_bounded(extended, first, budget)
        if not graph.is_finite or graph.size != size:
            raise InvalidBudget(f"extend_transitive: budget {budget} too small to confirm transitivity")
        logger.info(f"extend_transitive: joined {len(orbits)} orbits with {len(added)} transpositions")
        return extended
