"""Reader and writer for ``.lgr`` layered-graph text files.

Format (UTF-8, LF line endings)::

    # comments start with '#'
    layers <m> <n>
    vertices <m*n>        (optional cross-check)
    edge <u> <v>          (0-based, u < v, one per line, no duplicates)
"""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidGraph, ParseError
from .graph import LayeredGraph


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def loads(text: str) -> LayeredGraph:
    layers = None
    declared = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if key == "layers":
            if layers is not None:
                raise ParseError("duplicate 'layers' line", lineno)
            if len(parts) != 3:
                raise ParseError("expected 'layers <m> <n>'", lineno)
            layers = (_int(parts[1], lineno), _int(parts[2], lineno))
            if layers[0] < 1 or layers[1] < 1:
                raise ParseError("layer dimensions must be positive", lineno)
        elif key == "vertices":
            if len(parts) != 2:
                raise ParseError("expected 'vertices <count>'", lineno)
            declared = (_int(parts[1], lineno), lineno)
        elif key == "edge":
            if layers is None:
                raise ParseError("'edge' before 'layers'", lineno)
            if len(parts) != 3:
                raise ParseError("expected 'edge <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not u < v:
                raise ParseError(f"edge endpoints must satisfy u < v, got {u} {v}", lineno)
            if v >= layers[0] * layers[1] or u < 0:
                raise ParseError(f"edge {u} {v} outside {layers[0]}x{layers[1]} vertex range", lineno)
            if (u, v) in seen:
                raise ParseError(f"duplicate edge {u} {v} (first on line {seen[(u, v)]})", lineno)
            seen[(u, v)] = lineno
            edges.append((u, v))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if layers is None:
        raise ParseError("missing 'layers <m> <n>' line")
    if declared is not None and declared[0] != layers[0] * layers[1]:
        raise ParseError(f"vertex count {declared[0]} != {layers[0]}*{layers[1]}", declared[1])
    try:
        return LayeredGraph(layers[0], layers[1], frozenset(edges))
    except InvalidGraph as exc:
        raise ParseError(str(exc)) from None


def load(path) -> LayeredGraph:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(g: LayeredGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"layers {g.m} {g.n}")
    lines.extend(f"edge {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def dump(g: LayeredGraph, path, comment: str | None = None):
    Path(path).write_text(dumps(g, comment), encoding="utf-8", newline="\n")
