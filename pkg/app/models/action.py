"""Action specifications, generator letters and group words."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from app.errors import InvalidLetter

if TYPE_CHECKING:
    from app.services.families import ActionFamily

# Canonical point forms: int (finite_perm), tuple of ints (z_d),
# reduced str (free_group_self), (lamps tuple, position) (lamplighter_self).
Point = Hashable

INVERSE_SUFFIX = "^-1"


@dataclass(frozen=True, order=True)
class GeneratorLetter:
    """A generator or its inverse."""

    index: int
    inverse: bool = False

    def inverted(self) -> "GeneratorLetter":
        return GeneratorLetter(self.index, not self.inverse)


@dataclass(frozen=True)
class GroupWord:
    """A product s_n...s_1 of letters.

    ``letters`` is stored in product order, so ``letters[-1]`` is s_1 and
    acts first on a point.
    """

    letters: Tuple[GeneratorLetter, ...] = ()

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls(())

    @classmethod
    def of(cls, *letters: GeneratorLetter) -> "GroupWord":
        return cls(tuple(letters))

    @classmethod
    def from_path(cls, path: Iterable[GeneratorLetter]) -> "GroupWord":
        """Build the word whose action applies ``path`` left to right."""
        return cls(tuple(reversed(tuple(path))))

    def application_order(self) -> Tuple[GeneratorLetter, ...]:
        return tuple(reversed(self.letters))

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(letter.inverted() for letter in reversed(self.letters)))

    def power(self, exponent: int) -> "GroupWord":
        base = self if exponent >= 0 else self.inverse()
        return GroupWord(base.letters * abs(exponent))

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class Generator:
    """A named generator with its family data (permutation table or vector)."""

    name: str
    table: Optional[Tuple[int, ...]] = None
    vector: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class ActionSpec:
    """A finitely generated group action.

    Build instances with ``app.services.families.build_spec``; ``action``
    holds the family implementation that evaluates generators on points.
    """

    family: str
    params: Mapping[str, int]
    generators: Tuple[Generator, ...]
    action: "ActionFamily" = field(compare=False, repr=False)

    @property
    def closure(self) -> Tuple[GeneratorLetter, ...]:
        """Symmetric closure S in BFS visiting order."""
        return self.action.closure

    @property
    def is_finite(self) -> bool:
        return self.action.universe() is not None

    def check_letter(self, letter: GeneratorLetter) -> GeneratorLetter:
        """Validate ``letter`` and map it to its closure representative."""
        if not 0 <= letter.index < len(self.generators):
            raise InvalidLetter(
                f"apply: letter index {letter.index} out of range for {len(self.generators)} generators"
            )
        if letter.inverse and self.action.is_involution(letter.index):
            return GeneratorLetter(letter.index, False)
        return letter

    def letter_token(self, letter: GeneratorLetter) -> str:
        name = self.generators[letter.index].name
        return name + INVERSE_SUFFIX if letter.inverse else name

    def parse_letter(self, token: str) -> GeneratorLetter:
        inverse = token.endswith(INVERSE_SUFFIX)
        name = token[: -len(INVERSE_SUFFIX)] if inverse else token
        for index, generator in enumerate(self.generators):
            if generator.name == name:
                return self.check_letter(GeneratorLetter(index, inverse))
        raise InvalidLetter(f"parse_letter: unknown generator '{name}'")

    def parse_word(self, tokens: Sequence[str]) -> GroupWord:
        return GroupWord(tuple(self.parse_letter(token) for token in tokens))

    def word_tokens(self, word: GroupWord) -> list:
        return [self.letter_token(letter) for letter in word.letters]

    def parse_point(self, raw: Any) -> Point:
        return self.action.parse_point(raw)

    def dump_point(self, point: Point) -> Any:
        return self.action.dump_point(point)

    def sorted_points(self, points: Iterable[Point]) -> list:
        return sorted(points, key=self.action.sort_key)
