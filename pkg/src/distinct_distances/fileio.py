"""Readers for the flat-file inputs used by the CLI."""

from __future__ import annotations

from pathlib import Path

from .errors import DimensionMismatch, InvalidScalar
from .numeric import format_rational, parse_rational


def read_scalars(path) -> list:
    """One rational literal per line; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_rational(line))
        except InvalidScalar as exc:
            raise InvalidScalar(f"{path}:{lineno}: {exc}") from None
    return out


def read_points(path) -> list:
    """CSV with a ``dim=D`` header line followed by one point per row."""
    lines = [l.strip() for l in Path(path).read_text().splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("dim="):
        raise InvalidScalar(f"{path}: first line must be 'dim=D'")
    dim = int(lines[0].replace(" ", "")[4:])
    points = []
    for lineno, line in enumerate(lines[1:], 2):
        coords = [parse_rational(c) for c in line.split(",")]
        if len(coords) != dim:
            raise DimensionMismatch(f"{path}: row {lineno} has {len(coords)} coordinates, expected {dim}")
        points.append(tuple(coords))
    return points


def scalar_text(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return format_rational(x)
