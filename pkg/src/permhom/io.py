"""Reading and writing complex documents.

JSON documents look like::

    {"name": "book3", "maximal_simplexes": [[0, 1, 2], [0, 1, 3]],
     "filtration": [[[0], [1]], [[0, 1]], [[0, 1, 2], [0, 1, 3]]]}

A complete face-closed list may be given as ``"simplexes"`` instead; it is
rejected if a face is missing. The text format has one maximal simplex per
line, vertices separated by spaces or commas, ``#`` starting a comment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .complex import SimplicialComplex, build_complex
from .corpus import BUILTINS, builtin
from .errors import ParseError


@dataclass
class ComplexDocument:
    name: str
    maximal_simplexes: list[list[int]]
    filtration: list[list[list[int]]] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    explicit: bool = False

    def complex(self) -> SimplicialComplex:
        if self.explicit:
            return SimplicialComplex.from_simplices(self.maximal_simplexes)
        return build_complex(self.maximal_simplexes)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "maximal_simplexes": self.maximal_simplexes}
        if self.filtration is not None:
            out["filtration"] = self.filtration
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def document_from_complex(K: SimplicialComplex, name: str = "") -> ComplexDocument:
    return ComplexDocument(name, [list(s) for s in K.maximal_simplices()])


def _simplex_list(value: Any, where: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of simplexes")
    out = []
    for k, s in enumerate(value):
        if not isinstance(s, list) or not s:
            raise ParseError(f"{where}[{k}]: expected a nonempty list of vertex labels")
        for v in s:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"{where}[{k}]: vertex {v!r} is not an integer")
        out.append(list(s))
    return out


def parse_json(text: str, name: str = "") -> ComplexDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(data, list):
        return ComplexDocument(name, _simplex_list(data, "document"))
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object or a list of simplexes")
    explicit = "simplexes" in data and "maximal_simplexes" not in data
    key = "simplexes" if explicit else "maximal_simplexes"
    if key not in data:
        raise ParseError("document has no 'maximal_simplexes' field")
    filt = data.get("filtration")
    levels = None
    if filt is not None:
        if not isinstance(filt, list):
            raise ParseError("filtration: expected a list of levels")
        levels = [_simplex_list(lv, f"filtration[{j}]") if lv else [] for j, lv in enumerate(filt)]
    meta = data.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata: expected an object")
    return ComplexDocument(
        str(data.get("name", name)), _simplex_list(data[key], key), levels, meta, explicit
    )


def parse_text(text: str, name: str = "") -> ComplexDocument:
    simplexes = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        toks = body.replace(",", " ").split()
        if not toks:
            continue
        row = []
        for tok in toks:
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(
                    f"line {lineno}, offset {body.index(tok) + 1}: {tok!r} is not an integer"
                ) from None
        simplexes.append(row)
    if not simplexes:
        raise ParseError("no simplexes found")
    return ComplexDocument(name, simplexes)


def loads(text: str, name: str = "") -> ComplexDocument:
    head = text.lstrip()[:1]
    if head in ("{", "["):
        return parse_json(text, name)
    return parse_text(text, name)


def load(source: str) -> ComplexDocument:
    """A file path, or the name of a built-in complex."""
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
        return loads(text, path.stem)
    if source in BUILTINS or source in ("rp2", "torus"):
        return document_from_complex(builtin(source), source)
    raise ParseError(f"{source!r} is neither a readable file nor a builtin name")
