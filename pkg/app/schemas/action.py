"""ActionSpec document schema."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.models.action import ActionSpec, Generator
from app.services.families import build_spec


class GeneratorSchema(BaseModel):
    """One generator; ``table`` for finite_perm, ``vector`` for z_d."""

    name: str = Field(..., min_length=1)
    table: Optional[List[int]] = None
    vector: Optional[List[int]] = None

    def to_domain(self) -> Generator:
        return Generator(
            name=self.name,
            table=tuple(self.table) if self.table is not None else None,
            vector=tuple(self.vector) if self.vector is not None else None,
        )


class ActionSpecSchema(BaseModel):
    """{"family": ..., "params": {...}, "generators": [...]}"""

    family: str
    params: Dict[str, int] = Field(default_factory=dict)
    generators: List[GeneratorSchema] = Field(default_factory=list)

    def to_domain(self) -> ActionSpec:
        return build_spec(self.family, self.params, [g.to_domain() for g in self.generators])

    @classmethod
    def from_domain(cls, spec: ActionSpec) -> "ActionSpecSchema":
        generators = []
        for generator in spec.generators:
            generators.append(
                GeneratorSchema(
                    name=generator.name,
                    table=list(generator.table) if generator.table is not None else None,
                    vector=list(generator.vector) if generator.vector is not None else None,
                )
            )
        return cls(family=spec.family, params=dict(spec.params), generators=generators)
