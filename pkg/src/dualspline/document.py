"""JSON curve documents.

A document looks like::

    {
      "name": "pear",
      "degree": 5,
      "interior_knots": [{"t": "0.05", "mult": 1}, ...],
      "control_points": [[0.385, 0.845], ...]
    }

Knot positions are written as strings holding the shortest decimal that
round-trips (``"0.05"``); on input they may also be plain numbers or
fractions such as ``"1/20"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .spline_core import KnotVector, SplineCurve


class DocumentError(ValueError):
    """Input that is not a well-formed curve document."""


def parse_real(value) -> float:
    """Float from a JSON number or a decimal/fraction string."""
    if isinstance(value, bool):
        raise DocumentError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"cannot parse number {value!r}") from None
    raise DocumentError(f"expected a number, got {value!r}")


@dataclass
class CurveDocument:
    degree: int
    interior_knots: list[tuple[float, int]]
    control_points: list[list[float]]
    name: str | None = field(default=None)

    @classmethod
    def from_curve(cls, curve: SplineCurve, name: str | None = None) -> CurveDocument:
        return cls(
            degree=curve.degree,
            interior_knots=[(p, m) for p, m in curve.kv.interior],
            control_points=[[float(x) for x in row] for row in curve.control_points],
            name=name,
        )

    def to_curve(self) -> SplineCurve:
        """Validated curve; raises ``ValueError`` on inconsistent data."""
        if len({len(row) for row in self.control_points}) > 1:
            raise ValueError("control points have differing dimensions")
        kv = KnotVector(self.degree, tuple(self.interior_knots))
        return SplineCurve(kv, self.control_points)

    def to_json(self) -> dict:
        out = {}
        if self.name is not None:
            out["name"] = self.name
        out["degree"] = self.degree
        out["interior_knots"] = [{"t": repr(float(t)), "mult": int(m)} for t, m in self.interior_knots]
        out["control_points"] = [[float(x) for x in row] for row in self.control_points]
        return out

    @classmethod
    def from_json(cls, data) -> CurveDocument:
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        try:
            degree = data["degree"]
            knots = data.get("interior_knots", [])
            points = data["control_points"]
        except KeyError as exc:
            raise DocumentError(f"missing field {exc.args[0]!r}") from None
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise DocumentError("'degree' must be an integer")
        if not isinstance(knots, list) or not isinstance(points, list):
            raise DocumentError("'interior_knots' and 'control_points' must be lists")
        parsed_knots = []
        for entry in knots:
            if not isinstance(entry, dict) or "t" not in entry:
                raise DocumentError(f"bad knot entry {entry!r}")
            mult = entry.get("mult", 1)
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise DocumentError(f"bad multiplicity in {entry!r}")
            parsed_knots.append((parse_real(entry["t"]), mult))
        parsed_points = []
        for row in points:
            if not isinstance(row, list):
                row = [row]
            parsed_points.append([parse_real(x) for x in row])
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise DocumentError("'name' must be a string")
        return cls(degree, parsed_knots, parsed_points, name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> CurveDocument:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


def read_document(path) -> CurveDocument:
    return CurveDocument.loads(Path(path).read_text())


def write_document(doc: CurveDocument, path) -> None:
    Path(path).write_text(doc.dumps())
