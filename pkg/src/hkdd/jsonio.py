"""JSON wire formats for lattices, isometries, and polynomials.

Matrices are row-major lists of lists. Integers within the 53-bit range are
plain JSON numbers; anything larger is serialized as a decimal string so that
consumers without big integers still read the exact value.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import HkddError
from .lattice import GramLattice, make_lattice

_INT53 = 1 << 53


class InputParseError(HkddError):
    """Input file or payload does not match the documented JSON formats."""


def encode_int(x: int) -> int | str:
    return x if -_INT53 < x < _INT53 else str(x)


def decode_int(v) -> int:
    if isinstance(v, bool):
        raise InputParseError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError as exc:
            raise InputParseError(f"bad integer string {v!r}") from exc
    raise InputParseError(f"expected an integer, got {type(v).__name__}")


def encode_matrix(m: list[list[int]]) -> list[list[int | str]]:
    return [[encode_int(x) for x in row] for row in m]


def decode_matrix(obj) -> list[list[int]]:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputParseError("matrix must be a non-empty list of rows")
    return [[decode_int(x) for x in row] for row in obj]


def decode_coeffs(obj) -> list[int]:
    if not isinstance(obj, list):
        raise InputParseError("polynomial must be a list of coefficients")
    return [decode_int(x) for x in obj]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputParseError(f"{path}: top-level JSON object expected")
    return obj


def load_lattice(path: str | Path) -> GramLattice:
    """{"labels": [...], "gram": [[...]]}; labels are optional."""
    obj = _load(path)
    if "gram" not in obj:
        raise InputParseError(f'{path}: missing "gram"')
    gram = decode_matrix(obj["gram"])
    labels = obj.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(s, str) for s in labels)
    ):
        raise InputParseError(f'{path}: "labels" must be a list of strings')
    try:
        return make_lattice(gram, labels)
    except HkddError as exc:
        raise InputParseError(f"{path}: {exc}") from exc


def load_matrix(path: str | Path) -> list[list[int]]:
    """{"matrix": [[...]]}."""
    obj = _load(path)
    if "matrix" not in obj:
        raise InputParseError(f'{path}: missing "matrix"')
    return decode_matrix(obj["matrix"])
