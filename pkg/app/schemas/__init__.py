"""JSON document schemas."""

from app.schemas.action import ActionSpecSchema, GeneratorSchema
from app.schemas.certificate import (
    ExtendedCertificateSchema,
    FiniteCertificateSchema,
    GeodesicRaySchema,
    RayCertificateSchema,
    certificate_adapter,
    certificate_from_domain,
)

__all__ = [
    "ActionSpecSchema",
    "GeneratorSchema",
    "ExtendedCertificateSchema",
    "FiniteCertificateSchema",
    "GeodesicRaySchema",
    "RayCertificateSchema",
    "certificate_adapter",
    "certificate_from_domain",
]
