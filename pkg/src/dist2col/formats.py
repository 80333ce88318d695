"""graph6, planar_code, rotation sidecars and coloring files."""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph_core import GraphValidationError, PlanarGraph, build_graph, from_edges

GRAPH6_HEADER = b">>graph6<<"
PLANAR_CODE_HEADER = b">>planar_code<<"


class FormatError(ValueError):
    pass


# -- graph6 ------------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n < 0 or n > 68719476735:
        raise FormatError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes) -> tuple[int, int]:
    """``(n, bytes consumed)``."""
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 36-bit size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated 18-bit size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def encode_graph6(n: int, edges: Iterable[tuple[int, int]], header: bool = False) -> bytes:
    adj = {(min(a, b), max(a, b)) for a, b in edges}
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)
    )
    return (GRAPH6_HEADER if header else b"") + _encode_n(n) + body


def decode_graph6(data: bytes) -> tuple[int, list[tuple[int, int]]]:
    """One graph6 record (no trailing newline) -> ``(n, edges)`` with ``i < j``."""
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    elif data.startswith(b">>"):
        raise FormatError("malformed header")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b} at offset {pos} outside the printable graph6 range")
    n, k = _decode_n(data)
    body = data[k:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise FormatError(f"expected {need} adjacency bytes for n={n}, got {len(body)}")
    val = [b - 63 for b in body]
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if val[idx // 6] >> (5 - idx % 6) & 1:
                edges.append((i, j))
            idx += 1
    if need and val[-1] & ((1 << (need * 6 - nbits)) - 1):
        raise FormatError("nonzero padding bits")
    return n, edges


def parse_graph6(data: bytes) -> list[PlanarGraph]:
    """All records of a graph6 stream, as un-embedded graphs (sorted rotations)."""
    out = []
    first = True
    for line in data.splitlines():
        if not line:
            continue
        if first and line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        first = False
        n, edges = decode_graph6(line)
        out.append(from_edges(n, edges))
    return out


def write_graph6(g: PlanarGraph, header: bool = False) -> bytes:
    return encode_graph6(g.n, g.edges, header)


# -- planar_code -------------------------------------------------------------


def encode_planar_code(graphs: Iterable[PlanarGraph], header: bool = True) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for g in graphs:
        if g.n > 255:
            raise FormatError("planar_code with single-byte entries supports n <= 255")
        out.append(g.n)
        for r in g.rotation:
            out.extend(u + 1 for u in r)
            out.append(0)
    return bytes(out)


def iter_planar_code(data: bytes) -> Iterator[list[list[int]]]:
    """Raw rotation lists (0-based) per record; no validation beyond framing."""
    pos = len(PLANAR_CODE_HEADER) if data.startswith(PLANAR_CODE_HEADER) else 0
    while pos < len(data):
        n = data[pos]
        pos += 1
        rot: list[list[int]] = []
        for v in range(n):
            r = []
            while True:
                if pos >= len(data):
                    raise FormatError(f"truncated stream inside vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(f"vertex {v + 1} lists out-of-range neighbour {b}")
                r.append(b - 1)
            rot.append(r)
        yield rot


def parse_planar_code(data: bytes) -> list[PlanarGraph]:
    out = []
    for idx, rot in enumerate(iter_planar_code(data)):
        try:
            out.append(build_graph(None, rot))
        except GraphValidationError as e:
            # report 1-based ids as they appear in the file
            a, b = e.dart if e.dart else (-1, -1)
            raise FormatError(f"record {idx}: {e} (file vertices {a + 1} and {b + 1})") from e
    return out


# -- sidecars ----------------------------------------------------------------


def parse_rotation_file(text: str, n: int | None = None) -> list[list[int]]:
    """One line per vertex: its neighbours in cyclic order, space separated."""
    rot = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    if n is not None and len(rot) != n:
        raise FormatError(f"rotation file has {len(rot)} lines, graph has {n} vertices")
    return rot


def write_rotation_file(g: PlanarGraph) -> str:
    return "".join(" ".join(map(str, r)) + "\n" for r in g.rotation)


def embed_graph6(n: int, edges, rotation_text: str) -> PlanarGraph:
    """Combine a graph6 record with its rotation sidecar; edges must match exactly."""
    return build_graph(edges, parse_rotation_file(rotation_text, n))


def parse_coloring_file(text: str, n: int | None = None) -> dict[int, int]:
    out: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'vertex color'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer entry") from None
        if n is not None and not 0 <= v < n:
            raise FormatError(f"line {lineno}: unknown vertex {v}")
        if c < 1:
            raise FormatError(f"line {lineno}: color {c} out of range (colors start at 1)")
        if v in out:
            raise FormatError(f"line {lineno}: vertex {v} colored twice")
        out[v] = c
    return out


def write_coloring_file(assignment: dict[int, int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in sorted(assignment.items()))
