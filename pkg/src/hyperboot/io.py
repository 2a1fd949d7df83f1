"""Vertex-set and snake text files.

Vertex-set file: one vertex per line, ``#`` starts a comment, blank lines
are ignored. Snake file: a header ``k=<int> d=<int>`` followed by the path
sites in order, one per line.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

from .cube import DimensionError, WordSet, vertex_from_str, vertex_to_str
from .snake import SnakePath

_HEADER = re.compile(r"^\s*k\s*=\s*(\d+)\s+d\s*=\s*(\d+)\s*$")


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_vertex_set(text: str, d: int | None = None) -> WordSet:
    lines = _content_lines(text)
    if not lines:
        if d is None:
            raise DimensionError("empty vertex-set file: dimension must be given")
        return WordSet(d, frozenset())
    return WordSet.from_strings(lines, dim=d)


def read_vertex_set(path: str | Path, d: int | None = None) -> WordSet:
    return parse_vertex_set(Path(path).read_text(), d)


def format_vertex_set(ws: WordSet, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += ws.texts()
    return "\n".join(lines) + "\n"


def write_vertex_set(path: str | Path, ws: WordSet, comment: str | None = None) -> None:
    Path(path).write_text(format_vertex_set(ws, comment))


def parse_snake(text: str) -> SnakePath:
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty snake file")
    m = _HEADER.match(lines[0])
    if not m:
        raise ValueError(f"bad snake header {lines[0]!r}; expected 'k=<int> d=<int>'")
    k, d = int(m.group(1)), int(m.group(2))
    sites = []
    for line in lines[1:]:
        if len(line) != d:
            raise DimensionError(f"site {line!r} is not of dimension {d}")
        sites.append(vertex_from_str(line))
    return SnakePath(k=k, d=d, sites=tuple(sites))


def read_snake(path: str | Path) -> SnakePath:
    return parse_snake(Path(path).read_text())


def format_snake(snake: SnakePath) -> str:
    lines: Iterable[str] = (vertex_to_str(x, snake.d) for x in snake.sites)
    return f"k={snake.k} d={snake.d}\n" + "".join(f"{s}\n" for s in lines)


def write_snake(path: str | Path, snake: SnakePath) -> None:
    Path(path).write_text(format_snake(snake))
