"""Colored edge-list text format.

::

    c <comment>
    p cgraph <n> <m>
    e <u> <v> <R|B|RB>

Vertices are 1-indexed on disk and 0-indexed in memory.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Color, ColoredGraph, GraphError, build


class FormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse(text: str) -> ColoredGraph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cgraph":
                raise FormatError("header must read 'p cgraph <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("negative header field", lineno)
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge line before header", lineno)
            if len(parts) != 4:
                raise FormatError("edge line must read 'e <u> <v> <R|B|RB>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("non-integer vertex", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise FormatError("loop edge", lineno)
            if parts[3] not in ("R", "B", "RB"):
                raise FormatError(f"bad color token {parts[3]!r}", lineno)
            edges.append((u - 1, v - 1, parts[3]))
        else:
            raise FormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p cgraph' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return build(n, edges)


def _token(colors) -> str:
    if len(colors) == 2:
        return "RB"
    return "R" if Color.RED in colors else "B"


def serialize(g: ColoredGraph, comments: list[str] | tuple[str, ...] = ()) -> str:
    edges = g.edges()
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cgraph {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1} {_token(cs)}" for u, v, cs in edges)
    return "\n".join(lines) + "\n"


def read(path: str | Path) -> ColoredGraph:
    return parse(Path(path).read_text())


def write(g: ColoredGraph, path: str | Path, comments=()) -> None:
    Path(path).write_text(serialize(g, comments))
