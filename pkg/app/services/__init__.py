"""Toolkit services."""

from app.services.actions import ActionService
from app.services.catalog import CatalogService
from app.services.equidecomp import EquidecompService
from app.services.families import FAMILIES, build_spec
from app.services.locfin import LocalFinitenessService
from app.services.matching import MatchingService
from app.services.orbits import OrbitService
from app.services.roe_witness import RoeWitnessService
from app.services.transitive import TransitiveExtensionService

__all__ = [
    "ActionService",
    "CatalogService",
    "EquidecompService",
    "FAMILIES",
    "build_spec",
    "LocalFinitenessService",
    "MatchingService",
    "OrbitService",
    "RoeWitnessService",
    "TransitiveExtensionService",
]
