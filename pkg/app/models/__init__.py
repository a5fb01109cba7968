"""Domain types."""

from app.models.action import ActionSpec, Generator, GeneratorLetter, GroupWord, Point
from app.models.certificate import (
    Certificate,
    ExtendedCertificate,
    FiniteCertificate,
    Piece,
    RayCertificate,
    Verdict,
    VerificationReport,
    Violation,
)
from app.models.locfin import Classification, GeodesicRay, LocalFinitenessReport, PointResult, PointStatus
from app.models.matching import HallViolation, MatchResult, WitnessEdge
from app.models.orbit import OrbitGraph, OrbitStatus
from app.models.witness import EmbeddingProfile, GapReport, Window, WindowOperator, Witness

__all__ = [
    "ActionSpec",
    "Generator",
    "GeneratorLetter",
    "GroupWord",
    "Point",
    "Certificate",
    "ExtendedCertificate",
    "FiniteCertificate",
    "Piece",
    "RayCertificate",
    "Verdict",
    "VerificationReport",
    "Violation",
    "Classification",
    "GeodesicRay",
    "LocalFinitenessReport",
    "PointResult",
    "PointStatus",
    "HallViolation",
    "MatchResult",
    "WitnessEdge",
    "OrbitGraph",
    "OrbitStatus",
    "EmbeddingProfile",
    "GapReport",
    "Window",
    "WindowOperator",
    "Witness",
]
