"""Bundled demo fixtures: the rank-3 quartic-pair lattice, the two involution
matrices acting on it, and a handful of SL(2, Z) matrices keyed by trace."""

from __future__ import annotations

import json
from pathlib import Path

from .hyperkahler import Sl2Matrix
from .jsonio import load_lattice, load_matrix
from .lattice import GramLattice


def fixture_dir() -> Path:
    return Path(__file__).parent / "data"


def fixture_path(name: str) -> Path:
    p = fixture_dir() / name
    if not p.exists():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return p


def rank3_lattice() -> GramLattice:
    return load_lattice(fixture_path("rank3_lattice.json"))


def quartic_pair_lattice() -> GramLattice:
    return load_lattice(fixture_path("quartic_pair_lattice.json"))


def m1_matrix() -> list[list[int]]:
    return load_matrix(fixture_path("m1.json"))


def m2_matrix() -> list[list[int]]:
    return load_matrix(fixture_path("m2.json"))


def sl2_by_trace() -> dict[int, Sl2Matrix]:
    raw = json.loads(fixture_path("sl2_by_trace.json").read_text())
    out = {}
    for key, rows in raw.items():
        (a, b), (c, d) = rows
        out[int(key)] = Sl2Matrix(a, b, c, d)
    return out
