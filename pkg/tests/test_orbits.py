"""Orbit exploration."""

import pytest

from app.errors import InvalidBudget, NotFinitePerm
from app.models.orbit import FRONTIER, OrbitStatus
from app.services.actions import ActionService
from app.services.catalog import CatalogService
from app.services.orbits import OrbitService


class TestOrbitBounded:
    """Test bounded BFS over the symmetric closure."""

    def test_cycle_of_five(self, cyclic5):
        """Test a five-cycle."""
        graph = OrbitService.orbit_bounded(cyclic5, 0, 100)
        assert graph.status is OrbitStatus.FINITE
        assert graph.vertices == (0, 1, 4, 2, 3)
        assert graph.depths == (0, 1, 1, 2, 2)
        assert graph.frontier_size == 0

    def test_integer_ball(self, z1):
        """Test an integer ball."""
        graph = OrbitService.orbit_bounded(z1, (0,), 500, max_depth=100)
        assert graph.status is OrbitStatus.TRUNCATED
        assert graph.size == 201
        assert set(graph.vertices) == {(n,) for n in range(-100, 101)}
        assert graph.frontier_size == 2

    def test_budget_truncation(self, z2):
        """Test budget truncation."""
        graph = OrbitService.orbit_bounded(z2, (0, 0), 50)
        assert graph.status is OrbitStatus.TRUNCATED
        assert graph.size == 50

    def test_lattice_depth_is_l1(self, z2):
        """Test lattice depths."""
        graph = OrbitService.orbit_bounded(z2, (0, 0), 10000, max_depth=10)
        for point, depth in zip(graph.vertices, graph.depths):
            assert depth == abs(point[0]) + abs(point[1])

    def test_lamplighter_spheres(self, lamplighter):
        """Test lamplighter spheres."""
        graph = OrbitService.orbit_bounded(lamplighter, ((), 0), 1000, max_depth=2)
        assert graph.sphere_sizes() == [1, 3, 6]

    def test_lamplighter_spheres_to_depth_four(self, lamplighter):
        """Test deeper lamplighter spheres."""
        graph = OrbitService.orbit_bounded(lamplighter, ((), 0), 10000, max_depth=4)
        assert graph.sphere_sizes() == [1, 3, 6, 12, 22]
        assert graph.size == 44

    def test_lamplighter_depth_is_word_length(self, lamplighter):
        """Test lamplighter depths."""
        graph = OrbitService.orbit_bounded(lamplighter, ((), 0), 100000, max_depth=6)
        for point, depth in zip(graph.vertices, graph.depths):
            assert lamplighter.action.word_length(point) == depth

    def test_edges_follow_apply(self, s3):
        """Test edges."""
        graph = OrbitService.orbit_bounded(s3, 0, 10)
        for i, row in enumerate(graph.edges):
            for k, j in enumerate(row):
                assert j != FRONTIER
                assert graph.vertices[j] == ActionService.apply(s3, graph.labels[k], graph.vertices[i])

    def test_every_vertex_has_one_edge_per_letter(self, two_triangles):
        """Test edge rows."""
        graph = OrbitService.orbit_bounded(two_triangles, 3, 10)
        assert all(len(row) == len(two_triangles.closure) for row in graph.edges)

    def test_tree_paths_are_geodesic(self, free2):
        """Test tree paths."""
        graph = OrbitService.orbit_bounded(free2, "", 1000, max_depth=3)
        for i, point in enumerate(graph.vertices):
            path = graph.letter_path(i)
            assert len(path) == graph.depths[i]
            assert ActionService.walk(free2, "", path)[-1] == point

    def test_subgroup_generators(self, z1, word):
        """Test subgroup generators."""
        graph = OrbitService.orbit_bounded(z1, (0,), 1000, generators=[word(z1, "e1", "e1")])
        assert graph.status is OrbitStatus.TRUNCATED
        assert graph.depth_of((2,)) == 1
        assert graph.depth_of((1,)) is None

    def test_finite_verdict_is_stable(self, s3):
        """Test the finite verdict."""
        graph = OrbitService.orbit_bounded(s3, 2, 100)
        again = OrbitService.orbit_bounded(s3, 2, 2 * graph.size)
        exact = OrbitService.orbit_bounded(s3, 2, graph.size)
        assert again.is_finite and again.size == graph.size
        assert exact.is_finite and exact.size == graph.size

    def test_eccentricity_of_cycle(self, cyclic12):
        """Test eccentricity."""
        assert OrbitService.orbit_bounded(cyclic12, 0, 100).eccentricity == 6

    def test_invalid_budget(self, z1):
        """Test invalid budgets."""
        with pytest.raises(InvalidBudget):
            OrbitService.orbit_bounded(z1, (0,), 0)


class TestOrbitPartition:
    """Test orbit partitions of finite universes."""

    def test_two_triangles(self, two_triangles):
        """Test two triangles."""
        assert OrbitService.orbit_partition(two_triangles, 100) == [[0, 1, 2], [3, 4, 5]]

    def test_trivial_action(self):
        """Test the trivial action."""
        assert OrbitService.orbit_partition(CatalogService.trivial(3), 100) == [[0], [1], [2]]

    @pytest.mark.parametrize("name,spec", CatalogService.finite_sweep())
    def test_orbits_partition_the_universe(self, name, spec):
        """Test the partition."""
        orbits = OrbitService.orbit_partition(spec, 100)
        points = [p for orbit in orbits for p in orbit]
        assert sorted(points) == spec.action.universe()
        for x in spec.action.universe():
            orbit = set(OrbitService.orbit_bounded(spec, x, 100).vertices)
            assert any(orbit == set(o) for o in orbits)

    def test_infinite_family(self, z1):
        """Test infinite families."""
        with pytest.raises(NotFinitePerm):
            OrbitService.orbit_partition(z1, 100)
