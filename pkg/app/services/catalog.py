"""Built-in example actions."""

from itertools import permutations
from typing import Dict, List, Tuple

from app.models.action import ActionSpec, Generator
from app.services.families import build_spec


def _compose(left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
    """left o right: apply ``right`` first."""
    return tuple(left[i] for i in right)


class CatalogService:
    """Constructors for the actions used in fixtures, docs and the self-test sweep."""

    @staticmethod
    def cyclic(n: int) -> ActionSpec:
        """Z/n by rotation i -> i + 1."""
        return build_spec("finite_perm", {"size": n}, [Generator("g", table=tuple((i + 1) % n for i in range(n)))])

    @staticmethod
    def s3_natural() -> ActionSpec:
        """S_3 on {0, 1, 2}: a 3-cycle r and a transposition t."""
        return build_spec(
            "finite_perm",
            {"size": 3},
            [Generator("r", table=(1, 2, 0)), Generator("t", table=(1, 0, 2))],
        )

    @staticmethod
    def s3_regular() -> ActionSpec:
        """S_3 acting on itself by left multiplication; points index the permutations in lexicographic order."""
        elements = list(permutations(range(3)))
        index = {perm: i for i, perm in enumerate(elements)}
        generators = []
        for name, perm in (("r", (1, 2, 0)), ("t", (1, 0, 2))):
            table = tuple(index[_compose(perm, element)] for element in elements)
            generators.append(Generator(name, table=table))
        return build_spec("finite_perm", {"size": 6}, generators)

    @staticmethod
    def two_triangles() -> ActionSpec:
        """Two disjoint 3-cycles on {0..5}."""
        return build_spec("finite_perm", {"size": 6}, [Generator("g", table=(1, 2, 0, 4, 5, 3))])

    @staticmethod
    def trivial(size: int) -> ActionSpec:
        """The trivial group on {0..size-1}."""
        return build_spec("finite_perm", {"size": size}, [])

    @staticmethod
    def integer_lattice(d: int) -> ActionSpec:
        return build_spec("z_d", {"d": d})

    @staticmethod
    def free_group(rank: int) -> ActionSpec:
        return build_spec("free_group_self", {"rank": rank})

    @staticmethod
    def lamplighter() -> ActionSpec:
        return build_spec("lamplighter_self", {})

    @staticmethod
    def finite_sweep() -> List[Tuple[str, ActionSpec]]:
        """Z/n for n <= 6 and both S_3 actions."""
        specs = [(f"cyclic_{n}", CatalogService.cyclic(n)) for n in range(1, 7)]
        specs.append(("s3_natural", CatalogService.s3_natural()))
        specs.append(("s3_regular", CatalogService.s3_regular()))
        return specs

    @staticmethod
    def infinite_families() -> Dict[str, ActionSpec]:
        return {
            "z1": CatalogService.integer_lattice(1),
            "z2": CatalogService.integer_lattice(2),
            "free2": CatalogService.free_group(2),
            "lamplighter": CatalogService.lamplighter(),
        }
