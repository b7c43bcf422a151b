"""JSON and JSON-lines files backed by pydantic models."""

import json
from pathlib import Path
from typing import Iterable, List, Type, TypeVar

from pydantic import BaseModel, ValidationError

from vessel_bifurcation.infrastructure.exceptions import InvalidDataError

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_json(path: "Path | str", model: Type[ModelT]) -> ModelT:
    """
    Read one model from a JSON file.

    Raises:
        InvalidDataError: If the file is not valid JSON for ``model``
    """
    file = Path(path)
    try:
        return model.model_validate_json(file.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise InvalidDataError(f"invalid {model.__name__} in {file}: {e.error_count()} error(s)", data={"errors": e.errors()}) from e


def write_json(item: BaseModel, path: "Path | str") -> None:
    """Write one model as indented JSON."""
    Path(path).write_text(item.model_dump_json(indent=2, by_alias=True), encoding="utf-8")


def read_jsonl(path: "Path | str", model: Type[ModelT]) -> List[ModelT]:
    """
    Read one model per non-blank line.

    Raises:
        InvalidDataError: If a line does not parse
    """
    file = Path(path)
    items: List[ModelT] = []
    with file.open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                items.append(model.model_validate(json.loads(line)))
            except (json.JSONDecodeError, ValidationError) as e:
                raise InvalidDataError(f"{file}:{number}: invalid {model.__name__}", data={"line": line.strip()}) from e
    return items


def write_jsonl(items: Iterable[BaseModel], path: "Path | str") -> None:
    """Write one model per line."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for item in items:
            handle.write(item.model_dump_json(by_alias=True))
            handle.write("\n")
