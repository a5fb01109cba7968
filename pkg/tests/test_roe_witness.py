"""Window operators, finiteness gaps and embedding profiles."""

import numpy as np
import pytest

from app.errors import BudgetTooSmall, InvalidBudget, InvalidCertificate, MetricBudgetExceeded, WindowDisjoint
from app.models.action import Generator, GeneratorLetter, GroupWord
from app.models.certificate import FiniteCertificate, Piece, RayCertificate
from app.models.locfin import GeodesicRay
from app.services.catalog import CatalogService
from app.services.equidecomp import EquidecompService
from app.services.families import build_spec
from app.services.locfin import LocalFinitenessService
from app.services.roe_witness import RoeWitnessService

E1 = GeneratorLetter(0)
E2 = GeneratorLetter(1)


class TestBall:
    """Test orbit balls."""

    def test_integer_ball(self, z1):
        """Test an integer ball."""
        window = RoeWitnessService.ball(z1, (0,), 3, 100)
        assert window.points == tuple((n,) for n in range(-3, 4))
        assert window.row((0,)) == 3
        assert (4,) not in window

    def test_finite_orbit_fits(self, cyclic5):
        """Test a small finite orbit."""
        assert len(RoeWitnessService.ball(cyclic5, 0, 10, 5)) == 5

    def test_budget_too_small(self, z2):
        """Test budget exhaustion."""
        with pytest.raises(BudgetTooSmall):
            RoeWitnessService.ball(z2, (0, 0), 10, 20)


class TestBuildWitness:
    """Test exact partial-isometry identities on windows."""

    def test_natural_shift(self, z1):
        """Test the natural shift."""
        cert = RayCertificate(base=(0,), ray_letters=(E1,) * 10, rooted=True)
        window = RoeWitnessService.ball(z1, (0,), 10, 1000)
        witness = RoeWitnessService.build_witness(z1, cert, window, radius=10)
        assert witness.identities_exact
        assert witness.safe_points == tuple((n,) for n in range(10))
        assert witness.image_points == tuple((n,) for n in range(1, 11))

        v = witness.isometry.matrix.toarray()
        assert v.dtype == np.int64
        assert v[window.row((1,)), window.row((0,))] == 1
        assert int(v.sum()) == 10

        gap = RoeWitnessService.finiteness_gap(witness)
        assert gap.rank_gap == 0
        assert gap.point_count_gap == 1
        assert gap.boundary_deficit == 1
        assert gap.flagged

    def test_projections(self, z1):
        """Test projections."""
        cert = RayCertificate(base=(0,), ray_letters=(E1,) * 4, rooted=True)
        window = RoeWitnessService.ball(z1, (0,), 4, 100)
        witness = RoeWitnessService.build_witness(z1, cert, window)
        source_rows = [r for r, _ in witness.source_projection.entries()]
        target_rows = [r for r, _ in witness.target_projection.entries()]
        assert source_rows == [window.row((n,)) for n in range(5)]
        assert target_rows == [window.row((n,)) for n in range(1, 5)]

    def test_identity_certificate(self, z1):
        """Test the identity certificate."""
        points = frozenset({(0,), (1,), (2,)})
        cert = FiniteCertificate(points, (Piece(points, GroupWord.identity()),), points)
        window = RoeWitnessService.ball(z1, (0,), 3, 100)
        witness = RoeWitnessService.build_witness(z1, cert, window)
        gap = RoeWitnessService.finiteness_gap(witness)
        assert witness.identities_exact
        assert witness.isometry.entries() == [(window.row(p), window.row(p)) for p in sorted(points)]
        assert gap.rank_gap == 0 and gap.point_count_gap == 0
        assert not gap.flagged

    def test_full_finite_window(self, cyclic5, word):
        """Test a full finite window."""
        points = frozenset(range(5))
        cert = FiniteCertificate(points, (Piece(points, word(cyclic5, "g")),), points)
        window = RoeWitnessService.ball(cyclic5, 0, 5, 100)
        witness = RoeWitnessService.build_witness(cyclic5, cert, window)
        gap = RoeWitnessService.finiteness_gap(witness)
        assert witness.identities_exact
        assert gap.safe_count == 5
        assert gap.boundary_deficit == 0
        assert gap.point_count_gap == 0

    def test_extended_lattice_ray(self, z2):
        """Test an extended lattice ray."""
        cert = RayCertificate(base=(0, 0), ray_letters=(E1, E2) * 5)
        ext = EquidecompService.extend_to_full_set(z2, cert)
        window = RoeWitnessService.ball(z2, (0, 0), 10, 10000)
        witness = RoeWitnessService.build_witness(z2, ext, window, radius=10)
        gap = RoeWitnessService.finiteness_gap(witness)
        assert witness.identities_exact
        assert gap.source_count == len(window)
        assert gap.point_count_gap == 1
        assert gap.boundary_deficit == 1
        assert gap.rank_gap == 0
        assert (1, 0) not in witness.target_points

    def test_failing_certificate(self, z1):
        """Test a failing certificate."""
        points = frozenset({(0,)})
        cert = FiniteCertificate(points, (Piece(points, GroupWord.of(E1)),), points)
        with pytest.raises(InvalidCertificate):
            RoeWitnessService.build_witness(z1, cert, RoeWitnessService.ball(z1, (0,), 2, 100))

    def test_window_disjoint(self, z1):
        """Test disjoint windows."""
        cert = RayCertificate(base=(100,), ray_letters=(E1,) * 5)
        with pytest.raises(WindowDisjoint):
            RoeWitnessService.build_witness(z1, cert, RoeWitnessService.ball(z1, (0,), 3, 100))


class TestEmbeddingProfile:
    """Test forward and backward control sequences."""

    def test_free_group_power_map(self, free2, word):
        """Test a free group power map."""
        images = RoeWitnessService.power_map(free2, word(free2, "a"), 5, "")
        assert images[0] == "AAAAA" and images[-1] == "aaaaa"
        profile = RoeWitnessService.embedding_profile(free2, images, 1000)
        assert profile.injective
        assert profile.forward == tuple(range(11))
        assert profile.backward == tuple(range(11))

    def test_finite_orbit_is_not_injective(self, cyclic5, word):
        """Test collisions on finite orbits."""
        images = RoeWitnessService.power_map(cyclic5, word(cyclic5, "g"), 3, 0)
        profile = RoeWitnessService.embedding_profile(cyclic5, images, 1000)
        assert not profile.injective
        assert profile.collision == (-3, 2)

    def test_constant_map(self, z1):
        """Test a constant map."""
        profile = RoeWitnessService.embedding_profile(z1, [(0,)] * 5, 100)
        assert profile.forward == (0, 0, 0, 0, 0)
        assert profile.backward == (4,)
        assert profile.collision == (-2, -1)

    def test_lamplighter_ray_map(self, lamplighter):
        """Test a lamplighter ray map."""
        ray = LocalFinitenessService.find_geodesic_ray(lamplighter, ((), 0), 20, 100000, seed=3)
        images = RoeWitnessService.ray_map(lamplighter, ray, 10)
        assert len(images) == 21
        profile = RoeWitnessService.embedding_profile(lamplighter, images, 1000)
        assert profile.injective
        for r, bound in enumerate(profile.forward):
            assert bound <= r

    def test_different_orbits(self, two_triangles):
        """Test images in different orbits."""
        profile = RoeWitnessService.embedding_profile(two_triangles, [0, 3, 1], 100)
        assert profile.forward[0] == 0
        assert profile.forward[1] is None
        assert profile.forward[2] is None

    def test_metric_budget(self):
        """Test the metric budget."""
        spec = build_spec("z_d", {"d": 1}, [Generator("two", vector=(2,)), Generator("three", vector=(3,))])
        with pytest.raises(MetricBudgetExceeded):
            RoeWitnessService.embedding_profile(spec, [(0,), (1000,), (0,)], 5)

    def test_bfs_metric_for_custom_generators(self):
        """Test BFS distances."""
        spec = build_spec("z_d", {"d": 1}, [Generator("two", vector=(2,)), Generator("three", vector=(3,))])
        profile = RoeWitnessService.embedding_profile(spec, [(0,), (1,), (5,)], 1000)
        assert profile.forward == (0, 2, 2)

    def test_ray_map_too_short(self, z1):
        """Test short rays."""
        ray = GeodesicRay((0,), (E1,) * 5, certified_simple=True)
        with pytest.raises(InvalidBudget):
            RoeWitnessService.ray_map(z1, ray, 3)

    def test_even_image_count(self, z1):
        """Test image counts."""
        with pytest.raises(InvalidBudget):
            RoeWitnessService.embedding_profile(z1, [(0,), (1,)], 10)

    @pytest.mark.parametrize("name", ["z1", "z2", "free2", "lamplighter"])
    def test_certified_rays_are_controlled(self, name):
        """Test forward control of rays."""
        spec = CatalogService.infinite_families()[name]
        base = spec.action.default_base()
        for seed in (None, 1, 2):
            ray = LocalFinitenessService.find_geodesic_ray(spec, base, 20, 100000, seed=seed)
            profile = RoeWitnessService.embedding_profile(spec, RoeWitnessService.ray_map(spec, ray, 10), 1000)
            assert profile.injective
            assert all(bound <= r for r, bound in enumerate(profile.forward))

    @pytest.mark.parametrize("name", ["z2", "free2", "lamplighter"])
    def test_doubling_radius_keeps_forward_bounds(self, name):
        """Test doubling the radius."""
        spec = CatalogService.infinite_families()[name]
        base = spec.action.default_base()
        ray = LocalFinitenessService.find_geodesic_ray(spec, base, 24, 100000, seed=5)
        small = RoeWitnessService.embedding_profile(spec, RoeWitnessService.ray_map(spec, ray, 6), 1000)
        large = RoeWitnessService.embedding_profile(spec, RoeWitnessService.ray_map(spec, ray, 12), 1000)
        for r, bound in enumerate(small.forward):
            assert large.forward[r] >= bound

    def test_doubling_power_map(self, free2, word):
        """Test doubling a power map."""
        w = word(free2, "a", "b")
        small = RoeWitnessService.embedding_profile(free2, RoeWitnessService.power_map(free2, w, 4, ""), 1000)
        large = RoeWitnessService.embedding_profile(free2, RoeWitnessService.power_map(free2, w, 8, ""), 1000)
        for r, bound in enumerate(small.forward):
            assert large.forward[r] >= bound
