"""Action specifications and word evaluation."""

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.errors import InvalidLetter, InvalidPoint, InvalidSpec
from app.models.action import Generator, GeneratorLetter, GroupWord
from app.services.actions import ActionService
from app.services.catalog import CatalogService
from app.services.families import build_spec


class TestApply:
    """Test word evaluation on the built-in families."""

    def test_integer_translation(self, z1, word):
        """Test translation on the integers."""
        result = ActionService.apply(z1, word(z1, "e1", "e1", "e1^-1"), (5,))
        assert result == (6,)

    def test_free_reduction(self, free2, word):
        """Test free reduction on prepend."""
        assert ActionService.apply(free2, word(free2, "a"), "A") == ""

    def test_permutation_table(self, s3, word):
        """Test permutation tables."""
        assert ActionService.apply(s3, word(s3, "r"), 0) == 1

    def test_identity_word(self, lamplighter):
        """Test the empty word."""
        point = ((-1, 2), 1)
        assert ActionService.apply(lamplighter, GroupWord.identity(), point) == point

    def test_rightmost_letter_acts_first(self, lamplighter, word):
        """Test product order of words."""
        # b a: shift first, then flip the lamp at the origin
        assert ActionService.apply(lamplighter, word(lamplighter, "b", "a"), ((), 0)) == ((0,), 1)
        # a b: flip first, then shift the whole configuration
        assert ActionService.apply(lamplighter, word(lamplighter, "a", "b"), ((), 0)) == ((1,), 1)

    def test_lamplighter_flip_is_involution(self, lamplighter, word):
        """Test the lamplighter flip."""
        point = ((0, 3), -2)
        assert ActionService.apply(lamplighter, word(lamplighter, "b", "b"), point) == point

    def test_walk(self, z2):
        """Test points along a path."""
        e1, e2 = GeneratorLetter(0), GeneratorLetter(1)
        assert ActionService.walk(z2, (0, 0), [e1, e2, e2]) == [(0, 0), (1, 0), (1, 1), (1, 2)]

    def test_letter_out_of_range(self, z1):
        """Test letters outside the closure."""
        with pytest.raises(InvalidLetter):
            ActionService.apply(z1, GroupWord.of(GeneratorLetter(3)), (0,))

    @pytest.mark.parametrize(
        "spec_name,point",
        [("s3", 7), ("s3", True), ("z1", (1, 2)), ("free2", "aA"), ("free2", "c")],
    )
    def test_non_canonical_point(self, request, spec_name, point):
        """Test rejection of non-canonical points."""
        spec = request.getfixturevalue(spec_name)
        with pytest.raises(InvalidPoint):
            ActionService.apply(spec, GroupWord.identity(), point)

    def test_lamplighter_lamps_must_increase(self, lamplighter):
        """Test lamplighter lamp ordering."""
        with pytest.raises(InvalidPoint):
            ActionService.apply(lamplighter, GroupWord.identity(), ((2, 1), 0))


class TestActionSpec:
    """Test spec construction and letter parsing."""

    def test_closure_order(self, z2):
        """Test symmetric closure order."""
        assert z2.closure == (
            GeneratorLetter(0),
            GeneratorLetter(0, True),
            GeneratorLetter(1),
            GeneratorLetter(1, True),
        )

    def test_involutions_contribute_once(self, s3, lamplighter):
        """Test involutions in the closure."""
        assert s3.closure == (GeneratorLetter(0), GeneratorLetter(0, True), GeneratorLetter(1))
        assert lamplighter.closure == (GeneratorLetter(0), GeneratorLetter(0, True), GeneratorLetter(1))
        assert s3.parse_letter("t^-1") == GeneratorLetter(1)

    def test_parse_and_format_letters(self, z1):
        """Test letter parsing and formatting."""
        letter = z1.parse_letter("e1^-1")
        assert letter == GeneratorLetter(0, True)
        assert z1.letter_token(letter) == "e1^-1"

    def test_unknown_letter(self, z1):
        """Test unknown letter names."""
        with pytest.raises(InvalidLetter):
            z1.parse_letter("x")

    def test_unknown_family(self):
        """Test unknown families."""
        with pytest.raises(InvalidSpec):
            build_spec("heisenberg", {})

    def test_table_must_be_permutation(self):
        """Test table validation."""
        with pytest.raises(InvalidSpec):
            build_spec("finite_perm", {"size": 3}, [Generator("g", table=(0, 0, 1))])

    def test_duplicate_names(self):
        """Test duplicate generator names."""
        with pytest.raises(InvalidSpec):
            build_spec("finite_perm", {"size": 2}, [Generator("g", table=(1, 0)), Generator("g", table=(0, 1))])

    def test_custom_vectors_are_not_standard(self):
        """Test custom lattice vectors."""
        spec = build_spec("z_d", {"d": 1}, [Generator("two", vector=(2,)), Generator("three", vector=(3,))])
        assert spec.action.standard is False
        assert spec.action.distance((0,), (5,)) is None

    def test_bare_integer_point_in_dimension_one(self, z1, z2):
        """Test bare integer points."""
        assert z1.parse_point(4) == (4,)
        with pytest.raises(InvalidPoint):
            z2.parse_point(4)

    def test_lamplighter_point_json(self, lamplighter):
        """Test lamplighter point documents."""
        point = lamplighter.parse_point({"lamps": [-1, 2], "position": 3})
        assert point == ((-1, 2), 3)
        assert lamplighter.dump_point(point) == {"lamps": [-1, 2], "position": 3}


class TestGroupLaw:
    """Test multiplication, inversion and word length of self-action families."""

    def test_free_multiply_cancels(self, free2):
        """Test free group multiplication."""
        assert free2.action.multiply("ab", "Ba") == "aa"
        assert free2.action.invert("aB") == "bA"

    def test_lamplighter_inverse(self, lamplighter):
        """Test lamplighter inverses."""
        action = lamplighter.action
        g = ((-1, 2), 3)
        assert action.multiply(g, action.invert(g)) == action.identity()

    @pytest.mark.parametrize(
        "element,length",
        [(((), 0), 0), (((), 1), 1), (((0,), 0), 1), (((1,), 1), 2), (((-1,), 2), 5), (((0, 2), 0), 6)],
    )
    def test_lamplighter_word_length(self, lamplighter, element, length):
        """Test lamplighter word length."""
        assert lamplighter.action.word_length(element) == length

    def test_lattice_distance_is_l1(self, z2):
        """Test lattice distance."""
        assert z2.action.distance((1, -2), (-3, 4)) == 10


letters_free2 = st.lists(st.sampled_from(CatalogService.free_group(2).closure), max_size=15)
letters_lamp = st.lists(st.sampled_from(CatalogService.lamplighter().closure), max_size=15)


@given(path=letters_free2, start=letters_free2)
@hsettings(max_examples=100, deadline=None)
def test_inverse_word_round_trip_free_group(path, start):
    spec = CatalogService.free_group(2)
    point = ActionService.apply(spec, GroupWord.from_path(start), "")
    w = GroupWord.from_path(path)
    assert ActionService.apply(spec, w.inverse(), ActionService.apply(spec, w, point)) == point


@given(path=letters_lamp, start=letters_lamp)
@hsettings(max_examples=100, deadline=None)
def test_inverse_word_round_trip_lamplighter(path, start):
    spec = CatalogService.lamplighter()
    point = ActionService.apply(spec, GroupWord.from_path(start), ((), 0))
    w = GroupWord.from_path(path)
    image = ActionService.apply(spec, w, point)
    assert spec.action.check_point(image) == image
    assert ActionService.apply(spec, w.inverse(), image) == point


@given(path=letters_lamp)
@hsettings(max_examples=100, deadline=None)
def test_left_action_matches_group_law(path):
    spec = CatalogService.lamplighter()
    action = spec.action
    g = ActionService.apply(spec, GroupWord.from_path(path), ((), 0))
    x = ((-2, 1), 4)
    assert ActionService.apply(spec, GroupWord.from_path(path), x) == action.multiply(g, x)
