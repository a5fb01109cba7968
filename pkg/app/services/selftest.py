"""Exhaustive small-instance checks of the whole toolkit."""

import logging
from itertools import combinations
from typing import List, Optional

from app.config import Settings
from app.errors import EquidecompError, NotProper, OrbitIsFinite
from app.models.action import ActionSpec, GroupWord
from app.models.selftest import CheckResult, SelfTestReport
from app.services.actions import ActionService
from app.services.catalog import CatalogService
from app.services.equidecomp import EquidecompService
from app.services.locfin import LocalFinitenessService
from app.services.matching import MatchingService
from app.services.orbits import OrbitService
from app.services.roe_witness import RoeWitnessService

logger = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 5


class _Check:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: List[str] = []

    def record(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)

    def result(self) -> CheckResult:
        passed = not self.failures
        if not passed:
            logger.warning(f"selftest: {self.name} failed {len(self.failures)} of {self.cases} cases")
        return CheckResult(self.name, passed, self.cases, tuple(self.failures[:MAX_REPORTED_FAILURES]))


def _subsets(size: int):
    points = range(size)
    for k in range(size + 1):
        for subset in combinations(points, k):
            yield frozenset(subset)


def _diameter(spec: ActionSpec, budget: int) -> int:
    return max(OrbitService.orbit_bounded(spec, x, budget).eccentricity for x in spec.action.universe())


class SelfTestService:
    """Runs the named acceptance checks and reports case counts and first failures."""

    @staticmethod
    def run(settings: Settings, sweep: bool = True) -> SelfTestReport:
        checks = [SelfTestService.check_natural_shift(settings)]
        if sweep:
            checks.extend(SelfTestService.check_oracle_sweep(settings))
        checks.append(SelfTestService.check_ray_round_trips(settings))
        checks.append(SelfTestService.check_dichotomy(settings))
        checks.append(SelfTestService.check_embeddings(settings))
        report = SelfTestReport(tuple(checks))
        logger.info(f"selftest: {'pass' if report.passed else 'fail'} ({len(checks)} checks)")
        return report

    @staticmethod
    def check_natural_shift(settings: Settings, length: int = 50) -> CheckResult:
        check = _Check("natural_shift")
        spec = CatalogService.integer_lattice(1)
        ray = LocalFinitenessService.find_geodesic_ray(spec, (0,), length, settings.default_budget)
        certificate = LocalFinitenessService.ray_to_certificate(spec, ray)
        check.record(EquidecompService.verify_ray(spec, certificate).passed, "ray certificate fails verify_ray")

        rooted = LocalFinitenessService.ray_to_certificate(spec, ray, rooted=True)
        window = RoeWitnessService.ball(spec, (0,), length, settings.default_budget)
        witness = RoeWitnessService.build_witness(spec, rooted, window, radius=length)
        gap = RoeWitnessService.finiteness_gap(witness)
        check.record(witness.identities_exact, "partial isometry identities are not exact")
        check.record(
            witness.safe_points == tuple((n,) for n in range(length)),
            f"safe set is not 0..{length - 1}",
        )
        check.record(
            witness.image_points == tuple((n,) for n in range(1, length + 1)),
            f"image set is not 1..{length}",
        )
        check.record(gap.rank_gap == 0 and gap.point_count_gap == 1, f"unexpected gaps {gap}")
        return check.result()

    @staticmethod
    def check_oracle_sweep(settings: Settings) -> List[CheckResult]:
        """match_oracle against brute_force_pieces on every pair of subsets, plus the cardinality shadow."""
        agreement = _Check("oracle_equivalence")
        shadow = _Check("finite_cardinality")
        for name, spec in CatalogService.finite_sweep():
            size = spec.action.size
            diameter = _diameter(spec, settings.default_budget)
            subsets = list(_subsets(size))
            for source in subsets:
                for target in subsets:
                    for length in range(diameter + 1):
                        label = f"{name} A={sorted(source)} B={sorted(target)} L={length}"
                        matched = MatchingService.match_oracle(
                            spec, source, target, length, settings.default_budget
                        )
                        brute = MatchingService.brute_force_pieces(
                            spec, source, target, length, len(source), settings.brute_force_cap
                        )
                        agreement.record(matched.found == (brute is not None), f"{label}: oracles disagree")
                        for certificate in (matched.certificate, brute):
                            if certificate is None:
                                continue
                            passed = EquidecompService.verify_finite(spec, certificate).passed
                            agreement.record(passed, f"{label}: certificate fails verify_finite")
                            shadow.record(
                                not (passed and certificate.target < certificate.source),
                                f"{label}: verified certificate onto a proper subset",
                            )
                        if matched.certificate is not None and source:
                            try:
                                EquidecompService.extend_to_full_set(spec, matched.certificate)
                                shadow.record(False, f"{label}: extend_to_full_set accepted a finite certificate")
                            except NotProper:
                                shadow.record(True, "")
        return [agreement.result(), shadow.result()]

    @staticmethod
    def check_ray_round_trips(settings: Settings) -> CheckResult:
        check = _Check("ray_round_trip")
        max_length = settings.selftest_max_length
        for name, spec in CatalogService.infinite_families().items():
            base = spec.action.default_base()
            for i in range(settings.selftest_ray_count):
                length = 2 + (37 * i) % (max_length - 1)
                label = f"{name} seed={i} N={length}"
                try:
                    ray = LocalFinitenessService.find_geodesic_ray(
                        spec, base, length, settings.selftest_dichotomy_budget, seed=i
                    )
                    points = ActionService.walk(spec, base, ray.letters)
                    check.record(
                        ray.certified_simple and len(set(points)) == length + 1, f"{label}: ray is not simple"
                    )
                    certificate = LocalFinitenessService.ray_to_certificate(spec, ray)
                    check.record(EquidecompService.verify_ray(spec, certificate).passed, f"{label}: verify_ray fails")
                    extended = EquidecompService.extend_to_full_set(spec, certificate)
                    report = EquidecompService.verify_extended(spec, extended, points)
                    check.record(
                        report.passed and report.missing_points == (points[1],),
                        f"{label}: extended window target does not omit exactly s_1 x",
                    )
                except EquidecompError as exc:
                    check.record(False, f"{label}: {exc.code}: {exc}")
        return check.result()

    @staticmethod
    def check_dichotomy(settings: Settings, length: int = 100) -> CheckResult:
        check = _Check("dichotomy")
        for name, spec in CatalogService.finite_sweep():
            for x in spec.action.universe():
                diameter = OrbitService.orbit_bounded(spec, x, settings.default_budget).eccentricity
                beyond = max(2, diameter + 1)
                observed: Optional[int] = None
                try:
                    LocalFinitenessService.find_geodesic_ray(spec, x, beyond, settings.default_budget)
                except OrbitIsFinite as exc:
                    observed = exc.diameter
                check.record(observed == diameter, f"{name} x={x}: expected OrbitIsFinite({diameter}), got {observed}")
        for name, spec in CatalogService.infinite_families().items():
            base = spec.action.default_base()
            try:
                ray = LocalFinitenessService.find_geodesic_ray(
                    spec, base, length, settings.selftest_dichotomy_budget
                )
                check.record(ray.certified_simple and ray.length == length, f"{name}: ray of length {length} not simple")
            except EquidecompError as exc:
                check.record(False, f"{name}: {exc.code}: {exc}")
        return check.result()

    @staticmethod
    def check_embeddings(settings: Settings, radius: int = 20) -> CheckResult:
        check = _Check("embedding_profile")
        spec = CatalogService.free_group(2)
        a = GroupWord.of(spec.parse_letter("a"))
        images = RoeWitnessService.power_map(spec, a, radius, "")
        profile = RoeWitnessService.embedding_profile(spec, images, settings.metric_budget)
        check.record(profile.injective, "a^m is not injective")
        check.record(profile.forward == tuple(range(2 * radius + 1)), "forward control is not T_r = r")
        check.record(profile.backward == tuple(range(2 * radius + 1)), "backward control is not S_rho = rho")

        for name, finite in CatalogService.finite_sweep():
            size = finite.action.size
            word = GroupWord.of(finite.closure[0]) if finite.closure else GroupWord.identity()
            images = RoeWitnessService.power_map(finite, word, size, 0)
            profile = RoeWitnessService.embedding_profile(finite, images, settings.metric_budget)
            check.record(not profile.injective, f"{name}: map on {2 * size + 1} points reported injective")
        return check.result()
