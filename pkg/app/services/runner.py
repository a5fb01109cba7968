"""Command dispatch for the command-line front end.

``CommandRunner.run`` turns a validated ``RunConfig`` into an exit code and
a report document. Verdicts map to exit 0 or 1; any toolkit error maps to
exit 2 with an error document.
"""

import json
import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from app.config import Settings
from app.errors import EquidecompError, InvalidBudget, OrbitIsFinite, ParseError
from app.models.action import ActionSpec, GroupWord, Point
from app.models.certificate import ExtendedCertificate, RayCertificate
from app.models.locfin import Outcome
from app.models.witness import Window
from app.schemas.action import ActionSpecSchema
from app.schemas.certificate import (
    ExtendedCertificateSchema,
    GeodesicRaySchema,
    RayCertificateSchema,
    certificate_adapter,
    certificate_from_domain,
)
from app.schemas.parsing import dump_document, load_json, parse_adapter, parse_model, read_json_file
from app.schemas.reports import (
    BruteForceReportSchema,
    ClassificationSchema,
    EmbeddingProfileSchema,
    LocalFinitenessReportSchema,
    MatchReportSchema,
    OrbitReportSchema,
    SelfTestReportSchema,
    VerificationReportSchema,
    WitnessReportSchema,
)
from app.services.actions import ActionService
from app.services.equidecomp import EquidecompService
from app.services.locfin import LocalFinitenessService
from app.services.matching import MatchingService
from app.services.orbits import OrbitService
from app.services.roe_witness import RoeWitnessService
from app.services.selftest import SelfTestService
from app.services.transitive import TransitiveExtensionService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

Command = Literal[
    "orbit",
    "locfin",
    "find-ray",
    "certify-ray",
    "classify",
    "verify",
    "match",
    "brute-pieces",
    "extend",
    "roe-witness",
    "embed-profile",
    "extend-transitive",
    "selftest",
]


class RunConfig(BaseModel):
    """One command invocation. Points, sets and words are JSON text as typed on the command line."""

    command: Command
    spec_path: Optional[str] = None
    budget: int = Field(default=100000, gt=0)
    length: int = Field(default=10, gt=0)
    max_word_len: int = Field(default=1, ge=0)
    max_pieces: Optional[int] = Field(default=None, gt=0)
    window_radius: int = Field(default=10, ge=0)
    radius: int = Field(default=10, ge=0)
    max_depth: Optional[int] = Field(default=None, ge=0)
    metric_budget: int = Field(default=100000, gt=0)
    output_format: Literal["json", "text"] = "json"
    base: List[str] = Field(default_factory=list)
    source: Optional[str] = None
    target: Optional[str] = None
    cert_path: Optional[str] = None
    ray_path: Optional[str] = None
    subgroup: Optional[str] = None
    word: Optional[str] = None
    seed: Optional[int] = None
    rooted: bool = False
    sweep: bool = True

    @classmethod
    def from_settings(cls, settings: Settings, **values: Any) -> "RunConfig":
        """Defaults from ``settings`` for every knob not given explicitly."""
        defaults = {
            "budget": settings.default_budget,
            "length": settings.default_ray_length,
            "max_word_len": settings.default_max_word_len,
            "window_radius": settings.default_window_radius,
            "metric_budget": settings.metric_budget,
        }
        defaults.update({k: v for k, v in values.items() if v is not None})
        return parse_model(cls, defaults, "options")


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    document: Union[BaseModel, Dict[str, Any]]

    def render(self, output_format: str = "json") -> str:
        data = self.document
        if isinstance(data, BaseModel):
            if output_format == "json":
                return dump_document(data)
            data = data.model_dump(mode="json", by_alias=True)
        if output_format == "json":
            return json.dumps(data, indent=2)
        return "\n".join(f"{key}: {json.dumps(value)}" for key, value in data.items())


def _json_arg(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _point_list(spec: ActionSpec, raw: Optional[str], name: str) -> List[Point]:
    if raw is None:
        raise ParseError(f"{name}: option is required", field=name)
    data = load_json(raw, name)
    if not isinstance(data, list):
        raise ParseError(f"{name}: expected a JSON list of points", field=name)
    return [spec.parse_point(p) for p in data]


def _word(spec: ActionSpec, raw: str) -> GroupWord:
    data = _json_arg(raw)
    tokens = data if isinstance(data, list) else str(data).replace(",", " ").split()
    return spec.parse_word([str(t) for t in tokens])


class CommandRunner:
    """Reads inputs, dispatches to the services and wraps the result."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self._handlers: Dict[str, Callable[[RunConfig], Tuple[int, Any]]] = {
            "orbit": self._orbit,
            "locfin": self._locfin,
            "find-ray": self._find_ray,
            "certify-ray": self._certify_ray,
            "classify": self._classify,
            "verify": self._verify,
            "match": self._match,
            "brute-pieces": self._brute_pieces,
            "extend": self._extend,
            "roe-witness": self._roe_witness,
            "embed-profile": self._embed_profile,
            "extend-transitive": self._extend_transitive,
            "selftest": self._selftest,
        }

    def run(self, config: RunConfig) -> RunResult:
        try:
            exit_code, document = self._handlers[config.command](config)
        except OrbitIsFinite as exc:
            logger.info(f"{config.command}: {exc}")
            return RunResult(EXIT_NEGATIVE, exc.to_dict())
        except EquidecompError as exc:
            logger.warning(f"{config.command} failed: {exc.code}: {exc}")
            return RunResult(EXIT_ERROR, exc.to_dict())
        return RunResult(exit_code, document)

    # Inputs

    def _spec(self, config: RunConfig) -> ActionSpec:
        if config.spec_path is None:
            raise ParseError("--spec is required", field="spec")
        data = read_json_file(config.spec_path)
        return parse_model(ActionSpecSchema, data, config.spec_path).to_domain()

    def _bases(self, spec: ActionSpec, config: RunConfig) -> List[Point]:
        return [spec.parse_point(_json_arg(raw)) for raw in config.base]

    def _base(self, spec: ActionSpec, config: RunConfig) -> Point:
        bases = self._bases(spec, config)
        return bases[0] if bases else spec.action.default_base()

    def _certificate(self, spec: ActionSpec, config: RunConfig):
        if config.cert_path is None:
            raise ParseError("--cert is required", field="cert")
        data = read_json_file(config.cert_path)
        return parse_adapter(certificate_adapter, data, config.cert_path).to_domain(spec)

    def _subgroup(self, spec: ActionSpec, config: RunConfig) -> Optional[List[GroupWord]]:
        if config.subgroup is None:
            return None
        data = load_json(config.subgroup, "subgroup")
        if not isinstance(data, list) or not all(isinstance(w, list) for w in data):
            raise ParseError("subgroup: expected a JSON list of words (lists of letters)", field="subgroup")
        return [spec.parse_word([str(t) for t in w]) for w in data]

    def _ray(self, spec: ActionSpec, config: RunConfig):
        if config.ray_path is None:
            raise ParseError("--ray is required", field="ray")
        ray = parse_model(GeodesicRaySchema, read_json_file(config.ray_path), config.ray_path).to_domain(spec)
        points = ActionService.walk(spec, ray.base, ray.letters)
        return replace(ray, certified_simple=len(set(points)) == len(points))

    def _window(self, spec: ActionSpec, base: Point, config: RunConfig) -> Window:
        return RoeWitnessService.ball(spec, base, config.window_radius, config.budget)

    # Commands

    def _orbit(self, config: RunConfig):
        spec = self._spec(config)
        graph = OrbitService.orbit_bounded(
            spec, self._base(spec, config), config.budget, config.max_depth, self._subgroup(spec, config)
        )
        return EXIT_OK, OrbitReportSchema.from_domain(spec, graph)

    def _locfin(self, config: RunConfig):
        spec = self._spec(config)
        bases = self._bases(spec, config) or spec.action.universe() or [spec.action.default_base()]
        report = LocalFinitenessService.test_local_finiteness(
            spec, bases, config.budget, self._subgroup(spec, config), workers=self.settings.workers
        )
        code = EXIT_OK if report.all_finite else EXIT_NEGATIVE
        return code, LocalFinitenessReportSchema.from_domain(spec, report)

    def _find_ray(self, config: RunConfig):
        spec = self._spec(config)
        ray = LocalFinitenessService.find_geodesic_ray(
            spec, self._base(spec, config), config.length, config.budget, seed=config.seed
        )
        return EXIT_OK, GeodesicRaySchema.from_domain(spec, ray)

    def _certify_ray(self, config: RunConfig):
        spec = self._spec(config)
        certificate = LocalFinitenessService.ray_to_certificate(spec, self._ray(spec, config), rooted=config.rooted)
        return EXIT_OK, RayCertificateSchema.from_domain(spec, certificate)

    def _classify(self, config: RunConfig):
        spec = self._spec(config)
        result = LocalFinitenessService.classify(
            spec, self._base(spec, config), config.length, config.budget, seed=config.seed
        )
        code = EXIT_NEGATIVE if result.outcome is Outcome.UNKNOWN else EXIT_OK
        return code, ClassificationSchema.from_domain(spec, result)

    def _verify(self, config: RunConfig):
        spec = self._spec(config)
        certificate = self._certificate(spec, config)
        window = None
        if isinstance(certificate, ExtendedCertificate):
            window = self._window(spec, self._certificate_base(spec, certificate, config), config).points
        report = EquidecompService.verify(spec, certificate, window)
        code = EXIT_OK if report.passed else EXIT_NEGATIVE
        return code, VerificationReportSchema.from_domain(spec, report)

    def _match(self, config: RunConfig):
        spec = self._spec(config)
        result = MatchingService.match_oracle(
            spec,
            _point_list(spec, config.source, "source"),
            _point_list(spec, config.target, "target"),
            config.max_word_len,
            config.budget,
            workers=self.settings.workers,
        )
        return (EXIT_OK if result.found else EXIT_NEGATIVE), MatchReportSchema.from_domain(spec, result)

    def _brute_pieces(self, config: RunConfig):
        spec = self._spec(config)
        source = _point_list(spec, config.source, "source")
        max_pieces = config.max_pieces if config.max_pieces is not None else max(1, len(set(source)))
        certificate = MatchingService.brute_force_pieces(
            spec,
            source,
            _point_list(spec, config.target, "target"),
            config.max_word_len,
            max_pieces,
            self.settings.brute_force_cap,
        )
        document = BruteForceReportSchema(
            found=certificate is not None,
            max_word_len=config.max_word_len,
            max_pieces=max_pieces,
            certificate=certificate_from_domain(spec, certificate) if certificate is not None else None,
        )
        return (EXIT_OK if certificate is not None else EXIT_NEGATIVE), document

    def _extend(self, config: RunConfig):
        spec = self._spec(config)
        extended = EquidecompService.extend_to_full_set(spec, self._certificate(spec, config))
        return EXIT_OK, ExtendedCertificateSchema.from_domain(spec, extended)

    def _certificate_base(self, spec: ActionSpec, certificate, config: RunConfig) -> Point:
        inner = certificate.inner if isinstance(certificate, ExtendedCertificate) else certificate
        if isinstance(inner, RayCertificate) and not config.base:
            return inner.base
        return self._base(spec, config)

    def _roe_witness(self, config: RunConfig):
        spec = self._spec(config)
        if config.cert_path is not None:
            certificate = self._certificate(spec, config)
            base = self._certificate_base(spec, certificate, config)
        else:
            base = self._base(spec, config)
            if config.window_radius < 2:
                raise InvalidBudget("roe-witness: a ray certificate needs --window-radius of at least 2")
            ray = LocalFinitenessService.find_geodesic_ray(spec, base, config.window_radius, config.budget)
            certificate = LocalFinitenessService.ray_to_certificate(spec, ray, rooted=True)
        window = self._window(spec, base, config)
        witness = RoeWitnessService.build_witness(spec, certificate, window, radius=config.window_radius)
        gap = RoeWitnessService.finiteness_gap(witness)
        code = EXIT_OK if witness.identities_exact else EXIT_NEGATIVE
        return code, WitnessReportSchema.from_domain(spec, witness, gap)

    def _embed_profile(self, config: RunConfig):
        spec = self._spec(config)
        if config.ray_path is not None:
            images = RoeWitnessService.ray_map(spec, self._ray(spec, config), config.radius)
        else:
            if config.word is None:
                raise ParseError("embed-profile: --word or --ray is required", field="word")
            images = RoeWitnessService.power_map(spec, _word(spec, config.word), config.radius, self._base(spec, config))
        profile = RoeWitnessService.embedding_profile(spec, images, config.metric_budget)
        return (EXIT_OK if profile.injective else EXIT_NEGATIVE), EmbeddingProfileSchema.from_domain(profile)

    def _extend_transitive(self, config: RunConfig):
        spec = self._spec(config)
        extended = TransitiveExtensionService.extend_transitive(spec, config.budget)
        return EXIT_OK, ActionSpecSchema.from_domain(extended)

    def _selftest(self, config: RunConfig):
        report = SelfTestService.run(self.settings, sweep=config.sweep)
        return (EXIT_OK if report.passed else EXIT_NEGATIVE), SelfTestReportSchema.from_domain(report)
