"""Word evaluation on points."""

from typing import Iterable, List, Sequence

from app.models.action import ActionSpec, GeneratorLetter, GroupWord, Point


class ActionService:
    """Evaluate group words on canonical points."""

    @staticmethod
    def apply(spec: ActionSpec, word: GroupWord, point: Point) -> Point:
        """Return (s_n...s_1) . point; s_1 (the last letter) acts first.

        Raises InvalidLetter for letters outside the spec and InvalidPoint
        for non-canonical points.
        """
        letters = [spec.check_letter(letter) for letter in word.letters]
        current = spec.action.check_point(point)
        for letter in reversed(letters):
            current = spec.action.act(letter, current)
        return current

    @staticmethod
    def walk(spec: ActionSpec, base: Point, path: Sequence[GeneratorLetter]) -> List[Point]:
        """Points p_0 = base, p_n = s_n...s_1 base along ``path`` (application order)."""
        letters = [spec.check_letter(letter) for letter in path]
        points = [spec.action.check_point(base)]
        for letter in letters:
            points.append(spec.action.act(letter, points[-1]))
        return points

    @staticmethod
    def image(spec: ActionSpec, word: GroupWord, points: Iterable[Point]) -> List[Point]:
        return [ActionService.apply(spec, word, point) for point in points]
