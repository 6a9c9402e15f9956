"""
JSON codecs for configurations, binomials and binomial systems.

Shapes
- configuration: ``{"n": 3, "c": 6, "rows": [[1, 0, 1], [0, 1, 1], [4, 4, 2]]}``
- family shorthand: ``{"n": 3, "f": 3, "g": 2}``
- binomial: ``{"plus": {"y3": 2}, "minus": {"x1": 1, "x2": 1, "y1": 2, "y2": 2}}`` (zero exponents omitted)
- system: ``{"n": 3, "r": 3, "binomials": [<binomial>, ...]}``
"""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from core.errors import InvalidInputError
from shared.toric_types import Binomial, ExponentVector, ToricConfiguration, variable_names

_VAR_RE = re.compile(r"^([xy])([1-9][0-9]*)$")


@dataclass(frozen=True)
class FamilyShorthand:
    """``{n, f, g}`` as written in a config file; validated by the family module."""

    n: int
    f: int
    g: int

    def to_json(self) -> dict[str, int]:
        return {"n": self.n, "f": self.f, "g": self.g}


ConfigDocument = ToricConfiguration | FamilyShorthand


def _require_int(data: Mapping[str, Any], key: str) -> int:
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"field '{key}' must be an integer, got {value!r}", "MALFORMED_CONFIG")
    return value


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


def configuration_to_json(config: ToricConfiguration) -> dict[str, Any]:
    return {"n": config.n, "c": config.c, "rows": [list(row) for row in config.rows]}


def parse_config_document(data: Any) -> ConfigDocument:
    if not isinstance(data, Mapping):
        raise InvalidInputError("config document must be a JSON object", "MALFORMED_CONFIG")
    if "f" in data or "g" in data:
        return FamilyShorthand(n=_require_int(data, "n"), f=_require_int(data, "f"), g=_require_int(data, "g"))
    rows = data.get("rows", [])
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise InvalidInputError("field 'rows' must be a list of integer lists", "MALFORMED_CONFIG")
    for row in rows:
        if any(isinstance(a, bool) or not isinstance(a, int) for a in row):
            raise InvalidInputError(f"row {row!r} contains a non-integer entry", "MALFORMED_CONFIG")
    return ToricConfiguration(n=_require_int(data, "n"), c=_require_int(data, "c"), rows=tuple(map(tuple, rows)))


def _read_json_file(path: Path | str) -> Any:
    path = Path(path)
    if not path.is_file():
        raise InvalidInputError(f"file not found: {path}", "FILE_NOT_FOUND")
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})", "MALFORMED_JSON")


def load_config_file(path: Path | str) -> ConfigDocument:
    return parse_config_document(_read_json_file(path))


# ---------------------------------------------------------------------------
# Binomials
# ---------------------------------------------------------------------------


def exponent_map(exponents: ExponentVector, n: int) -> dict[str, int]:
    names = variable_names(n, len(exponents) - n)
    return {name: e for name, e in zip(names, exponents, strict=True) if e}


def _exponents_from_map(data: Any, n: int, r: int) -> ExponentVector:
    if not isinstance(data, Mapping):
        raise InvalidInputError("monomial must be an object mapping variable names to exponents", "MALFORMED_BINOMIAL")
    out = [0] * (n + r)
    for name, e in data.items():
        m = _VAR_RE.match(str(name))
        if not m:
            raise InvalidInputError(f"unknown variable name {name!r}", "MALFORMED_BINOMIAL")
        kind, idx = m.group(1), int(m.group(2))
        limit = n if kind == "x" else r
        if idx > limit:
            raise InvalidInputError(f"variable {name} out of range (n={n}, r={r})", "ARITY_MISMATCH")
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise InvalidInputError(f"exponent of {name} must be a nonnegative integer, got {e!r}", "MALFORMED_BINOMIAL")
        out[idx - 1 if kind == "x" else n + idx - 1] = e
    return tuple(out)


def binomial_to_json(b: Binomial) -> dict[str, dict[str, int]]:
    return {"plus": exponent_map(b.plus, b.n), "minus": exponent_map(b.minus, b.n)}


def binomial_from_json(data: Any, n: int, r: int) -> Binomial:
    if not isinstance(data, Mapping) or "plus" not in data or "minus" not in data:
        raise InvalidInputError("binomial must have 'plus' and 'minus'", "MALFORMED_BINOMIAL")
    return Binomial(_exponents_from_map(data["plus"], n, r), _exponents_from_map(data["minus"], n, r), n)


def _max_y_index(data: Iterable[Any]) -> int:
    r = 0
    for b in data:
        for half in ("plus", "minus"):
            for name in (b.get(half) or {}) if isinstance(b, Mapping) else ():
                m = _VAR_RE.match(str(name))
                if m and m.group(1) == "y":
                    r = max(r, int(m.group(2)))
    return r


# ---------------------------------------------------------------------------
# Systems
# ---------------------------------------------------------------------------


def system_to_json(binomials: Iterable[Binomial], n: int, r: int) -> dict[str, Any]:
    return {"n": n, "r": r, "binomials": [binomial_to_json(b.padded(r)) for b in binomials]}


def system_from_json(data: Any, n: int | None = None, r: int | None = None) -> list[Binomial]:
    """
    Parse a system document. ``n``/``r`` fall back to the document's own fields; a missing ``r`` is inferred
    from the largest y index in use.
    """
    if isinstance(data, list):
        data = {"binomials": data}
    if not isinstance(data, Mapping) or not isinstance(data.get("binomials"), list):
        raise InvalidInputError("system must be an object with a 'binomials' list", "MALFORMED_SYSTEM")
    n = n if n is not None else data.get("n")
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError("system needs the number n of x variables", "MALFORMED_SYSTEM")
    if r is None:
        r = data.get("r") if isinstance(data.get("r"), int) else _max_y_index(data["binomials"])
    return [binomial_from_json(b, n, r) for b in data["binomials"]]


def load_system_file(path: Path | str, n: int | None = None, r: int | None = None) -> list[Binomial]:
    return system_from_json(_read_json_file(path), n=n, r=r)
