"""Report documents written by the command-line front end."""

from dataclasses import asdict
from typing import Any, List, Optional

from pydantic import BaseModel

from app.models.action import ActionSpec
from app.models.certificate import VerificationReport
from app.models.locfin import Classification, LocalFinitenessReport
from app.models.matching import MatchResult
from app.models.orbit import OrbitGraph
from app.models.selftest import SelfTestReport
from app.models.witness import EmbeddingProfile, GapReport, Witness
from app.schemas.certificate import FiniteCertificateSchema, GeodesicRaySchema


def _dump(spec: ActionSpec, points) -> List[Any]:
    return [spec.dump_point(p) for p in points]


class VertexSchema(BaseModel):
    point: Any
    depth: int


class OrbitReportSchema(BaseModel):
    base: Any
    status: str
    size: int
    eccentricity: int
    frontier_size: int
    budget: int
    max_depth: Optional[int] = None
    sphere_sizes: List[int]
    vertices: List[VertexSchema]

    @classmethod
    def from_domain(cls, spec: ActionSpec, graph: OrbitGraph) -> "OrbitReportSchema":
        return cls(
            base=spec.dump_point(graph.base),
            status=graph.status.value,
            size=graph.size,
            eccentricity=graph.eccentricity,
            frontier_size=graph.frontier_size,
            budget=graph.budget,
            max_depth=graph.max_depth_limit,
            sphere_sizes=graph.sphere_sizes(),
            vertices=[VertexSchema(point=spec.dump_point(p), depth=d) for p, d in zip(graph.vertices, graph.depths)],
        )


class PointResultSchema(BaseModel):
    base: Any
    status: str
    size: int
    frontier_size: int
    eccentricity: Optional[int] = None


class LocalFinitenessReportSchema(BaseModel):
    budget: int
    all_finite: bool
    subgroup_generators: Optional[List[List[str]]] = None
    results: List[PointResultSchema]

    @classmethod
    def from_domain(cls, spec: ActionSpec, report: LocalFinitenessReport) -> "LocalFinitenessReportSchema":
        subgroup = None
        if report.subgroup_generators is not None:
            subgroup = [spec.word_tokens(word) for word in report.subgroup_generators]
        return cls(
            budget=report.budget,
            all_finite=report.all_finite,
            subgroup_generators=subgroup,
            results=[
                PointResultSchema(
                    base=spec.dump_point(r.base),
                    status=r.status.value,
                    size=r.size,
                    frontier_size=r.frontier_size,
                    eccentricity=r.eccentricity,
                )
                for r in report.results
            ],
        )


class ViolationSchema(BaseModel):
    kind: str
    message: str
    points: List[Any]
    pieces: List[int]


class VerificationReportSchema(BaseModel):
    kind: str
    verdict: str
    checked_points: int
    depth: Optional[int] = None
    missing_points: List[Any]
    unresolved_points: List[Any]
    violations: List[ViolationSchema]

    @classmethod
    def from_domain(cls, spec: ActionSpec, report: VerificationReport) -> "VerificationReportSchema":
        return cls(
            kind=report.kind,
            verdict=report.verdict.value,
            checked_points=report.checked_points,
            depth=report.depth,
            missing_points=_dump(spec, report.missing_points),
            unresolved_points=_dump(spec, report.unresolved_points),
            violations=[
                ViolationSchema(kind=v.kind, message=v.message, points=_dump(spec, v.points), pieces=list(v.pieces))
                for v in report.violations
            ],
        )


class EdgeSchema(BaseModel):
    source: Any
    target: Any
    word: List[str]


class HallViolationSchema(BaseModel):
    side: str
    subset: List[Any]
    neighborhood: List[Any]
    deficiency: int


class MatchReportSchema(BaseModel):
    found: bool
    max_word_len: int
    matching_size: int
    certificate: Optional[FiniteCertificateSchema] = None
    hall_violation: Optional[HallViolationSchema] = None
    edges: List[EdgeSchema]

    @classmethod
    def from_domain(cls, spec: ActionSpec, result: MatchResult) -> "MatchReportSchema":
        violation = None
        if result.hall_violation is not None:
            hall = result.hall_violation
            violation = HallViolationSchema(
                side=hall.side,
                subset=_dump(spec, hall.subset),
                neighborhood=_dump(spec, hall.neighborhood),
                deficiency=hall.deficiency,
            )
        certificate = None
        if result.certificate is not None:
            certificate = FiniteCertificateSchema.from_domain(spec, result.certificate)
        return cls(
            found=result.found,
            max_word_len=result.max_word_len,
            matching_size=result.matching_size,
            certificate=certificate,
            hall_violation=violation,
            edges=[
                EdgeSchema(source=spec.dump_point(e.source), target=spec.dump_point(e.target), word=spec.word_tokens(e.word))
                for e in result.edges
            ],
        )


class OperatorSchema(BaseModel):
    """Sparse coordinate list of the 1-entries."""

    role: str
    entries: List[List[int]]


class GapReportSchema(BaseModel):
    rank_source: int
    rank_target: int
    rank_gap: int
    source_count: int
    target_count: int
    point_count_gap: int
    safe_count: int
    boundary_deficit: int
    flagged: bool

    @classmethod
    def from_domain(cls, gap: GapReport) -> "GapReportSchema":
        return cls(**asdict(gap))


class WitnessReportSchema(BaseModel):
    window: List[Any]
    identities_exact: bool
    safe_set: List[Any]
    image_set: List[Any]
    source_projection: OperatorSchema
    target_projection: OperatorSchema
    isometry: OperatorSchema
    gap: GapReportSchema

    @classmethod
    def from_domain(cls, spec: ActionSpec, witness: Witness, gap: GapReport) -> "WitnessReportSchema":
        def operator(op) -> OperatorSchema:
            return OperatorSchema(role=op.role, entries=[list(entry) for entry in op.entries()])

        return cls(
            window=_dump(spec, witness.window.points),
            identities_exact=witness.identities_exact,
            safe_set=_dump(spec, witness.safe_points),
            image_set=_dump(spec, witness.image_points),
            source_projection=operator(witness.source_projection),
            target_projection=operator(witness.target_projection),
            isometry=operator(witness.isometry),
            gap=GapReportSchema.from_domain(gap),
        )


class EmbeddingProfileSchema(BaseModel):
    radius: int
    injective: bool
    collision: Optional[List[int]] = None
    forward: List[Optional[int]]
    backward: List[int]

    @classmethod
    def from_domain(cls, profile: EmbeddingProfile) -> "EmbeddingProfileSchema":
        return cls(
            radius=profile.radius,
            injective=profile.injective,
            collision=list(profile.collision) if profile.collision is not None else None,
            forward=list(profile.forward),
            backward=list(profile.backward),
        )


class ClassificationSchema(BaseModel):
    base: Any
    outcome: str
    length: int
    diameter: Optional[int] = None
    reason: Optional[str] = None
    ray: Optional[GeodesicRaySchema] = None

    @classmethod
    def from_domain(cls, spec: ActionSpec, result: Classification) -> "ClassificationSchema":
        return cls(
            base=spec.dump_point(result.base),
            outcome=result.outcome.value,
            length=result.length,
            diameter=result.diameter,
            reason=result.reason,
            ray=GeodesicRaySchema.from_domain(spec, result.ray) if result.ray is not None else None,
        )


class CheckResultSchema(BaseModel):
    name: str
    passed: bool
    cases: int
    failures: List[str]


class SelfTestReportSchema(BaseModel):
    passed: bool
    checks: List[CheckResultSchema]

    @classmethod
    def from_domain(cls, report: SelfTestReport) -> "SelfTestReportSchema":
        return cls(
            passed=report.passed,
            checks=[
                CheckResultSchema(name=c.name, passed=c.passed, cases=c.cases, failures=list(c.failures))
                for c in report.checks
            ],
        )


class BruteForceReportSchema(BaseModel):
    found: bool
    max_word_len: int
    max_pieces: int
    certificate: Optional[FiniteCertificateSchema] = None
