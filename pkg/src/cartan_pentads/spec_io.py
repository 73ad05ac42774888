"""Reading and writing ``pentad_spec_v1`` files (JSON or TOML)."""

import json
import sys
from pathlib import Path

from .errors import SpecParseError
from .linalg import QMatrix, format_rational, parse_rational
from .pentad import Pentad

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA = "pentad_spec_v1"


def _matrix(value, name):
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise SpecParseError(f"{name} must be a non-empty list of rows")
    try:
        return QMatrix([[parse_rational(x) for x in row] for row in value])
    except SpecParseError as exc:
        raise SpecParseError(f"{name}: {exc}") from None
    except ValueError as exc:
        raise SpecParseError(f"{name}: {exc}") from None


def parse_weight(values, name="weight"):
    if not isinstance(values, list):
        raise SpecParseError(f"{name} must be a list")
    return tuple(parse_rational(x) for x in values)


def pentad_from_dict(data):
    """Build a Pentad from a decoded spec mapping.

    Parse problems raise :class:`SpecParseError`; well-formed data that
    breaks a pentad invariant raises the corresponding invariant error.
    """
    if not isinstance(data, dict):
        raise SpecParseError("spec must be a mapping")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise SpecParseError(f"unsupported schema {schema!r}")
    for key in ("A", "D", "Gamma"):
        if key not in data:
            raise SpecParseError(f"missing key {key!r}")
    A = _matrix(data["A"], "A")
    D = _matrix(data["D"], "D")
    g = data["Gamma"]
    if isinstance(g, list) and g and not isinstance(g[0], list):
        Gamma = QMatrix.diag(parse_weight(g, "Gamma"))
    else:
        Gamma = _matrix(g, "Gamma")
    r = data.get("r", A.rows)
    n = data.get("n", D.cols)
    if not isinstance(r, int) or not isinstance(n, int):
        raise SpecParseError("r and n must be integers")
    return Pentad(r, n, A, D, Gamma)


def pentad_to_dict(p, name=None):
    out = {"schema": SCHEMA}
    if name:
        out["name"] = name
    out.update({
        "r": p.r,
        "n": p.n,
        "A": p.A.to_strings(),
        "D": p.D.to_strings(),
        "Gamma": [format_rational(x) for x in p.gamma],
    })
    return out


def dumps_spec(p, name=None, extra=None):
    """Serialize deterministically; the same pentad always gives the same bytes."""
    d = pentad_to_dict(p, name)
    if extra:
        d.update(extra)
    return json.dumps(d, indent=2) + "\n"


def load_document(path):
    """Decode a JSON or TOML file into a mapping."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from None
    if path.suffix.lower() == ".toml":
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise SpecParseError(f"invalid TOML in {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON in {path}: {exc}") from None


def load_spec(path):
    """Return ``(pentad, document)`` for a spec file."""
    doc = load_document(path)
    return pentad_from_dict(doc), doc
