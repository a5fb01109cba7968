"""Built-in action families.

Each family fixes a canonical point form and evaluates single generator
letters on points. Self-action families (the group acting on itself by
left multiplication) also expose the group law and, where a closed form
exists, the word metric.
"""

import logging
from abc import ABC, abstractmethod
from bisect import insort
from typing import Any, ClassVar, Dict, List, Mapping, Optional, Sequence, Tuple, Type

from app.errors import InvalidPoint, InvalidSpec
from app.models.action import ActionSpec, Generator, GeneratorLetter, Point

logger = logging.getLogger(__name__)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ActionFamily(ABC):
    """Evaluation of one family's generators on canonical points."""

    name: ClassVar[str]
    self_action: ClassVar[bool] = False

    def __init__(self, params: Mapping[str, int], generators: Sequence[Generator]):
        self.params = dict(params)
        self.generators: Tuple[Generator, ...] = self._normalize(tuple(generators))
        letters: List[GeneratorLetter] = []
        for index in range(len(self.generators)):
            letters.append(GeneratorLetter(index))
            if not self.is_involution(index):
                letters.append(GeneratorLetter(index, True))
        self.closure: Tuple[GeneratorLetter, ...] = tuple(letters)

    @abstractmethod
    def _normalize(self, generators: Tuple[Generator, ...]) -> Tuple[Generator, ...]:
        """Validate parameters and generators; derive defaults."""

    @abstractmethod
    def act(self, letter: GeneratorLetter, point: Point) -> Point:
        """Apply one letter to a canonical point."""

    @abstractmethod
    def check_point(self, point: Point) -> Point:
        """Return ``point`` if canonical for this family, else raise InvalidPoint."""

    @abstractmethod
    def parse_point(self, raw: Any) -> Point:
        """Canonical point from its JSON form."""

    @abstractmethod
    def dump_point(self, point: Point) -> Any:
        """JSON form of a canonical point."""

    @abstractmethod
    def default_base(self) -> Point:
        """Base point used when none is given."""

    def sort_key(self, point: Point) -> Any:
        return point

    def is_involution(self, index: int) -> bool:
        return False

    def universe(self) -> Optional[List[Point]]:
        """All points, for finite universes."""
        return None

    # Group structure, self-action families only.

    def identity(self) -> Point:
        raise InvalidSpec(f"{self.name}: points are not group elements")

    def multiply(self, g: Point, h: Point) -> Point:
        raise InvalidSpec(f"{self.name}: points are not group elements")

    def invert(self, g: Point) -> Point:
        raise InvalidSpec(f"{self.name}: points are not group elements")

    def word_length(self, g: Point) -> Optional[int]:
        """Closed-form word length of ``g``, or None when only BFS can tell."""
        return None

    def distance(self, x: Point, y: Point) -> Optional[int]:
        """Schreier-graph distance from ``x`` to ``y`` when a closed form exists."""
        if not self.self_action:
            return None
        return self.word_length(self.multiply(y, self.invert(x)))


class FinitePermFamily(ActionFamily):
    """Permutations of {0, ..., size-1} given by tables."""

    name = "finite_perm"

    def _normalize(self, generators):
        size = self.params.get("size")
        if not _is_int(size) or size < 1:
            raise InvalidSpec("finite_perm: params.size must be a positive integer")
        self.size = size
        self._forward: List[Tuple[int, ...]] = []
        self._backward: List[Tuple[int, ...]] = []
        for generator in generators:
            table = generator.table
            if table is None or len(table) != size or sorted(table) != list(range(size)):
                raise InvalidSpec(f"finite_perm: generator '{generator.name}' is not a permutation of range({size})")
            inverse = [0] * size
            for i, image in enumerate(table):
                inverse[image] = i
            self._forward.append(tuple(table))
            self._backward.append(tuple(inverse))
        return generators

    def act(self, letter, point):
        table = self._backward[letter.index] if letter.inverse else self._forward[letter.index]
        return table[point]

    def check_point(self, point):
        if not _is_int(point) or not 0 <= point < self.size:
            raise InvalidPoint(f"finite_perm: {point!r} is not in range({self.size})")
        return point

    def parse_point(self, raw):
        return self.check_point(raw)

    def dump_point(self, point):
        return point

    def default_base(self):
        return 0

    def is_involution(self, index):
        return self._forward[index] == self._backward[index]

    def universe(self):
        return list(range(self.size))


class ZdFamily(ActionFamily):
    """Translations of Z^d; default generators are the standard basis."""

    name = "z_d"
    self_action = True

    def _normalize(self, generators):
        d = self.params.get("d")
        if not _is_int(d) or d < 1:
            raise InvalidSpec("z_d: params.d must be a positive integer")
        self.d = d
        if not generators:
            generators = tuple(
                Generator(name=f"e{i + 1}", vector=tuple(int(i == j) for j in range(d))) for i in range(d)
            )
        for generator in generators:
            vector = generator.vector
            if vector is None or len(vector) != d or not any(vector):
                raise InvalidSpec(f"z_d: generator '{generator.name}' needs a nonzero vector of length {d}")
        basis = {tuple(int(i == j) for j in range(d)) for i in range(d)}
        self._vectors = [g.vector for g in generators]
        self.standard = len(generators) == d and set(self._vectors) == basis
        return generators

    def act(self, letter, point):
        vector = self._vectors[letter.index]
        if letter.inverse:
            return tuple(p - v for p, v in zip(point, vector))
        return tuple(p + v for p, v in zip(point, vector))

    def check_point(self, point):
        if not isinstance(point, tuple) or len(point) != self.d or not all(_is_int(c) for c in point):
            raise InvalidPoint(f"z_d: {point!r} is not a {self.d}-tuple of integers")
        return point

    def parse_point(self, raw):
        if _is_int(raw) and self.d == 1:
            return (raw,)
        if not isinstance(raw, (list, tuple)):
            raise InvalidPoint(f"z_d: {raw!r} is not a list of {self.d} integers")
        return self.check_point(tuple(raw))

    def dump_point(self, point):
        return list(point)

    def default_base(self):
        return self.identity()

    def identity(self):
        return (0,) * self.d

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def word_length(self, g):
        if not self.standard:
            return None
        return sum(abs(a) for a in g)


class FreeGroupFamily(ActionFamily):
    """Free group of rank k acting on itself by left multiplication.

    Points are reduced words over ``a..z`` with upper case for inverses.
    """

    name = "free_group_self"
    self_action = True

    def _normalize(self, generators):
        rank = self.params.get("rank")
        if not _is_int(rank) or not 1 <= rank <= 26:
            raise InvalidSpec("free_group_self: params.rank must be between 1 and 26")
        if not generators:
            generators = tuple(Generator(name=chr(ord("a") + i)) for i in range(rank))
        names = [g.name for g in generators]
        if len(names) != rank or len(set(names)) != rank:
            raise InvalidSpec(f"free_group_self: expected {rank} distinct generators")
        for name in names:
            if len(name) != 1 or not ("a" <= name <= "z"):
                raise InvalidSpec(f"free_group_self: generator name '{name}' must be one lower-case letter")
        self._alphabet = set(names) | {n.upper() for n in names}
        self._order = {}
        for i, name in enumerate(names):
            self._order[name] = 2 * i
            self._order[name.upper()] = 2 * i + 1
        return generators

    def act(self, letter, point):
        char = self.generators[letter.index].name
        if letter.inverse:
            char = char.upper()
        if point and point[0] == char.swapcase():
            return point[1:]
        return char + point

    def check_point(self, point):
        if not isinstance(point, str) or any(c not in self._alphabet for c in point):
            raise InvalidPoint(f"free_group_self: {point!r} is not a word over the generators")
        for left, right in zip(point, point[1:]):
            if left == right.swapcase():
                raise InvalidPoint(f"free_group_self: {point!r} is not freely reduced")
        return point

    def parse_point(self, raw):
        return self.check_point(raw)

    def dump_point(self, point):
        return point

    def sort_key(self, point):
        return (len(point), [self._order[c] for c in point])

    def default_base(self):
        return ""

    def identity(self):
        return ""

    def multiply(self, g, h):
        cancel = 0
        while cancel < min(len(g), len(h)) and g[len(g) - 1 - cancel] == h[cancel].swapcase():
            cancel += 1
        return g[: len(g) - cancel] + h[cancel:]

    def invert(self, g):
        return g[::-1].swapcase()

    def word_length(self, g):
        return len(g)


class LamplighterFamily(ActionFamily):
    """Lamplighter group Z_2 wr Z acting on itself by left multiplication.

    Elements are (f, p) with f the finite set of lit lamps and p the
    position; (f, p)(g, q) = (f xor (g + p), p + q). Generator ``a`` is
    (0, 1) and translates the position and every lamp by +1; generator
    ``b`` is (delta_0, 0) and flips the lamp at the origin.
    """

    name = "lamplighter_self"
    self_action = True

    def _normalize(self, generators):
        if not generators:
            generators = (Generator(name="a"), Generator(name="b"))
        if len(generators) != 2 or generators[0].name == generators[1].name:
            raise InvalidSpec("lamplighter_self: expects exactly two generators (shift, flip)")
        return generators

    def act(self, letter, point):
        lamps, position = point
        if letter.index == 0:
            step = -1 if letter.inverse else 1
            return tuple(lamp + step for lamp in lamps), position + step
        if 0 in lamps:
            return tuple(lamp for lamp in lamps if lamp != 0), position
        lit = list(lamps)
        insort(lit, 0)
        return tuple(lit), position

    def is_involution(self, index):
        return index == 1

    def check_point(self, point):
        if (
            not isinstance(point, tuple)
            or len(point) != 2
            or not isinstance(point[0], tuple)
            or not _is_int(point[1])
            or not all(_is_int(lamp) for lamp in point[0])
            or any(a >= b for a, b in zip(point[0], point[0][1:]))
        ):
            raise InvalidPoint(f"lamplighter_self: {point!r} is not (strictly increasing lamps, position)")
        return point

    def parse_point(self, raw):
        if isinstance(raw, dict):
            if set(raw) != {"lamps", "position"}:
                raise InvalidPoint("lamplighter_self: expected keys 'lamps' and 'position'")
            lamps, position = raw["lamps"], raw["position"]
        elif isinstance(raw, (list, tuple)) and len(raw) == 2:
            lamps, position = raw
        else:
            raise InvalidPoint(f"lamplighter_self: cannot read point {raw!r}")
        if not isinstance(lamps, (list, tuple)):
            raise InvalidPoint("lamplighter_self: lamps must be a list")
        return self.check_point((tuple(lamps), position))

    def dump_point(self, point):
        return {"lamps": list(point[0]), "position": point[1]}

    def default_base(self):
        return self.identity()

    def identity(self):
        return ((), 0)

    def multiply(self, g, h):
        f, p = g
        lamps = set(f) ^ {lamp + p for lamp in h[0]}
        return tuple(sorted(lamps)), p + h[1]

    def invert(self, g):
        f, p = g
        return tuple(lamp - p for lamp in f), -p

    def word_length(self, g):
        lamps, position = g
        left = min(0, position, lamps[0] if lamps else 0)
        right = max(0, position, lamps[-1] if lamps else 0)
        return len(lamps) + 2 * (right - left) - abs(position)


FAMILIES: Dict[str, Type[ActionFamily]] = {
    FinitePermFamily.name: FinitePermFamily,
    ZdFamily.name: ZdFamily,
    FreeGroupFamily.name: FreeGroupFamily,
    LamplighterFamily.name: LamplighterFamily,
}


def build_spec(family: str, params: Mapping[str, int], generators: Sequence[Generator] = ()) -> ActionSpec:
    """Validate and assemble an ActionSpec for a built-in family."""
    family_cls = FAMILIES.get(family)
    if family_cls is None:
        raise InvalidSpec(f"build_spec: unknown family '{family}' (expected one of {sorted(FAMILIES)})")
    action = family_cls(params, generators)
    names = [g.name for g in action.generators]
    if len(set(names)) != len(names):
        raise InvalidSpec("build_spec: generator names must be distinct")
    logger.debug(f"Built {family} spec with {len(names)} generators, closure size {len(action.closure)}")
    return ActionSpec(family=family, params=dict(params), generators=action.generators, action=action)
