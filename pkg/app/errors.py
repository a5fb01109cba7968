"""Error types raised by the toolkit.

Every error is a ``ValueError`` carrying a stable ``code`` that the CLI
reports verbatim. Verification failures are not errors; they are listed
as violations inside a report.
"""

from typing import Optional


class EquidecompError(ValueError):
    """Base class for toolkit errors."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class InvalidSpec(EquidecompError):
    code = "invalid_spec"


class InvalidLetter(EquidecompError):
    code = "invalid_letter"


class InvalidPoint(EquidecompError):
    code = "invalid_point"


class InvalidBudget(EquidecompError):
    code = "invalid_budget"


class ParseError(EquidecompError):
    """Malformed input document; ``field`` names the offending location."""

    code = "parse_error"

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["field"] = self.field
        return data


class NotSimple(EquidecompError):
    """Two window points of a ray coincide: s_n...s_1 x == s_m...s_1 x."""

    code = "not_simple"

    def __init__(self, n: int, m: int):
        super().__init__(f"verify_ray: window points {m} and {n} coincide")
        self.n = n
        self.m = m

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["indices"] = [self.m, self.n]
        return data


class NotProper(EquidecompError):
    code = "not_proper"


class InvalidCertificate(EquidecompError):
    code = "invalid_certificate"


class BudgetExceeded(EquidecompError):
    code = "budget_exceeded"


class OrbitIsFinite(EquidecompError):
    """The base point's orbit is finite with eccentricity below the ray length."""

    code = "orbit_is_finite"

    def __init__(self, diameter: int):
        super().__init__(f"find_geodesic_ray: orbit is finite with diameter {diameter}")
        self.diameter = diameter

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["diameter"] = self.diameter
        return data


class BudgetTooSmall(EquidecompError):
    code = "budget_too_small"


class WindowDisjoint(EquidecompError):
    code = "window_disjoint"


class MetricBudgetExceeded(EquidecompError):
    code = "metric_budget_exceeded"


class NotFinitePerm(EquidecompError):
    code = "not_finite_perm"
