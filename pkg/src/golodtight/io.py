"""Facet files: a plain text format and a JSON document.

Text::

    # comment
    m 4
    1 2
    2 3

JSON: ``{"m": 4, "facets": [[1, 2], [2, 3]]}``.  Writers emit the canonical
(sorted, maximal) facet list, so save(load(x)) is stable byte for byte.
"""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .complex import SimplicialComplex, build
from .errors import ParseError


def parse_text(text: str, allow_isolated: bool = False) -> SimplicialComplex:
    m = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if m is None:
            if len(parts) != 2 or parts[0] != "m":
                raise ParseError(f"line {lineno}: expected 'm <count>' header")
            m = _int(parts[1], lineno)
            continue
        face = [_int(p, lineno) for p in parts]
        if any(a >= b for a, b in zip(face, face[1:])):
            raise ParseError(f"line {lineno}: vertex list must be strictly increasing")
        facets.append(face)
    if m is None:
        raise ParseError("missing 'm <count>' header")
    return build(m, facets, allow_isolated=allow_isolated)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: not an integer: {tok!r}") from None


def parse_json(text: str, allow_isolated: bool = False) -> SimplicialComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("m"), int) or not isinstance(doc.get("facets"), list):
        raise ParseError("JSON facet document needs an integer 'm' and a list 'facets'")
    facets = doc["facets"]
    if not all(isinstance(f, list) and all(isinstance(v, int) for v in f) for f in facets):
        raise ParseError("'facets' must be a list of integer lists")
    return build(doc["m"], facets, allow_isolated=allow_isolated)


def format_text(K: SimplicialComplex) -> str:
    lines = [f"m {K.m}"] + [" ".join(map(str, f)) for f in K.facets if f]
    return "\n".join(lines) + "\n"


def format_json(K: SimplicialComplex) -> str:
    return json.dumps({"m": K.m, "facets": [list(f) for f in K.facets if f]}) + "\n"


def loads(text: str, allow_isolated: bool = False) -> SimplicialComplex:
    if text.lstrip().startswith("{"):
        return parse_json(text, allow_isolated)
    return parse_text(text, allow_isolated)


def load(path, allow_isolated: bool = False) -> SimplicialComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text, allow_isolated)


def save(K: SimplicialComplex, path, fmt: str | None = None):
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "text")
    path.write_text(format_json(K) if fmt == "json" else format_text(K))


def facet_digest(K: SimplicialComplex) -> str:
    return hashlib.sha256(format_text(K).encode()).hexdigest()


ZOO = ("rp2_6", "t7", "walkup9")


def zoo_path(name: str):
    return resources.files("golodtight") / "zoo" / f"{name}.cplx"


def load_zoo(name: str) -> SimplicialComplex:
    if name not in ZOO:
        raise KeyError(f"unknown zoo complex {name!r}; have {', '.join(ZOO)}")
    return parse_text(zoo_path(name).read_text())
