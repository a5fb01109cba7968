"""Reading JSON documents into schemas with field-level error reporting."""

import json
from pathlib import Path
from typing import Any, Type, TypeVar, Union

from pydantic import BaseModel, TypeAdapter, ValidationError

from app.errors import ParseError

ModelT = TypeVar("ModelT", bound=BaseModel)


def _field_path(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"])


def load_json(raw: Union[str, bytes], source: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def read_json_file(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc.strerror})")
    return load_json(text, str(path))


def parse_model(model: Type[ModelT], data: Any, source: str) -> ModelT:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        path = _field_path(exc)
        raise ParseError(f"{source}: invalid field '{path}': {exc.errors()[0]['msg']}", field=path)


def parse_adapter(adapter: TypeAdapter, data: Any, source: str) -> Any:
    try:
        return adapter.validate_python(data)
    except ValidationError as exc:
        path = _field_path(exc)
        raise ParseError(f"{source}: invalid field '{path}': {exc.errors()[0]['msg']}", field=path)


def dump_document(document: BaseModel) -> str:
    """Deterministic JSON text for a report."""
    return json.dumps(document.model_dump(mode="json", by_alias=True), indent=2)
