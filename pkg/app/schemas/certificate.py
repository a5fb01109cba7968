"""Certificate and geodesic-ray documents."""

from typing import Annotated, Any, List, Literal, Union

from pydantic import BaseModel, Field, TypeAdapter

from app.models.action import ActionSpec
from app.models.certificate import Certificate, ExtendedCertificate, FiniteCertificate, Piece, RayCertificate
from app.models.locfin import GeodesicRay
from app.services.equidecomp import EquidecompService


def _points(spec: ActionSpec, raw: List[Any]) -> frozenset:
    return frozenset(spec.parse_point(p) for p in raw)


def _dump_points(spec: ActionSpec, points) -> List[Any]:
    return [spec.dump_point(p) for p in spec.sorted_points(points)]


class PieceSchema(BaseModel):
    points: List[Any] = Field(..., alias="set")
    word: List[str] = Field(default_factory=list)

    class Config:
        populate_by_name = True


class FiniteCertificateSchema(BaseModel):
    kind: Literal["finite"] = "finite"
    source: List[Any]
    pieces: List[PieceSchema]
    target: List[Any]

    def to_domain(self, spec: ActionSpec) -> FiniteCertificate:
        pieces = tuple(Piece(points=_points(spec, p.points), word=spec.parse_word(p.word)) for p in self.pieces)
        return FiniteCertificate(source=_points(spec, self.source), pieces=pieces, target=_points(spec, self.target))

    @classmethod
    def from_domain(cls, spec: ActionSpec, certificate: FiniteCertificate) -> "FiniteCertificateSchema":
        return cls(
            source=_dump_points(spec, certificate.source),
            pieces=[
                PieceSchema(points=_dump_points(spec, p.points), word=spec.word_tokens(p.word))
                for p in certificate.pieces
            ],
            target=_dump_points(spec, certificate.target),
        )


class RayPieceSchema(BaseModel):
    """A_s restricted to the window; derived, ignored on input."""

    ray_letter: str
    points: List[Any] = Field(..., alias="set")

    class Config:
        populate_by_name = True


class RayCertificateSchema(BaseModel):
    kind: Literal["ray"] = "ray"
    base: Any
    ray_letters: List[str] = Field(..., min_length=1)
    rooted: bool = False
    pieces: List[RayPieceSchema] = Field(default_factory=list)

    def to_domain(self, spec: ActionSpec) -> RayCertificate:
        letters = tuple(spec.parse_letter(token) for token in self.ray_letters)
        return RayCertificate(base=spec.parse_point(self.base), ray_letters=letters, rooted=self.rooted)

    @classmethod
    def from_domain(cls, spec: ActionSpec, certificate: RayCertificate) -> "RayCertificateSchema":
        pieces = []
        if certificate.length >= 1:
            for letter, members in EquidecompService.ray_pieces(spec, certificate):
                pieces.append(RayPieceSchema(ray_letter=spec.letter_token(letter), points=_dump_points(spec, members)))
        return cls(
            base=spec.dump_point(certificate.base),
            ray_letters=[spec.letter_token(letter) for letter in certificate.ray_letters],
            rooted=certificate.rooted,
            pieces=pieces,
        )


InnerCertificateSchema = Annotated[
    Union[FiniteCertificateSchema, RayCertificateSchema], Field(discriminator="kind")
]


class ExtendedCertificateSchema(BaseModel):
    kind: Literal["extended"] = "extended"
    inner: InnerCertificateSchema
    rest_word: List[str] = Field(default_factory=list)

    def to_domain(self, spec: ActionSpec) -> ExtendedCertificate:
        return ExtendedCertificate(inner=self.inner.to_domain(spec), rest_word=spec.parse_word(self.rest_word))

    @classmethod
    def from_domain(cls, spec: ActionSpec, certificate: ExtendedCertificate) -> "ExtendedCertificateSchema":
        return cls(
            inner=certificate_from_domain(spec, certificate.inner),
            rest_word=spec.word_tokens(certificate.rest_word),
        )


CertificateSchema = Annotated[
    Union[FiniteCertificateSchema, RayCertificateSchema, ExtendedCertificateSchema],
    Field(discriminator="kind"),
]
certificate_adapter = TypeAdapter(CertificateSchema)


def certificate_from_domain(spec: ActionSpec, certificate: Certificate):
    if isinstance(certificate, FiniteCertificate):
        return FiniteCertificateSchema.from_domain(spec, certificate)
    if isinstance(certificate, RayCertificate):
        return RayCertificateSchema.from_domain(spec, certificate)
    return ExtendedCertificateSchema.from_domain(spec, certificate)


class GeodesicRaySchema(BaseModel):
    base: Any
    letters: List[str]
    length: int = 0
    certified_simple: bool = False

    def to_domain(self, spec: ActionSpec) -> GeodesicRay:
        return GeodesicRay(
            base=spec.parse_point(self.base),
            letters=tuple(spec.parse_letter(token) for token in self.letters),
            certified_simple=self.certified_simple,
        )

    @classmethod
    def from_domain(cls, spec: ActionSpec, ray: GeodesicRay) -> "GeodesicRaySchema":
        return cls(
            base=spec.dump_point(ray.base),
            letters=[spec.letter_token(letter) for letter in ray.letters],
            length=ray.length,
            certified_simple=ray.certified_simple,
        )
