"""Immutable simple undirected graphs with dense integer labels.

Vertices are always 0..n-1.  Adjacency is stored as one bitmask per vertex
(``rows[v]`` has bit ``u`` set iff ``uv`` is an edge), which makes the
neighbourhood-minus-a-set operations used by the condition deciders cheap
integer arithmetic.  Graphs are frozen after construction and safe to share
across workers.

Vertex sets are plain Python sets/iterables of ints on the public surface;
internally they are bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class Graph6Error(ValueError):
    """Malformed or unsupported graph6 data."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int], n: int) -> int:
    """Pack an iterable of vertex ids into a bitmask, range-checking against n."""
    mask = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for graph on {n} vertices")
        mask |= 1 << v
    return mask


def set_of(mask: int) -> frozenset[int]:
    """Unpack a bitmask into a frozenset of vertex ids."""
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus per-vertex neighbour bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.rows) != self.n:
            raise ValueError("rows length must equal vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references vertices outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
        for v, row in enumerate(self.rows):
            for u in iter_bits(row):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges (u, v) with u < v in lexicographic order."""
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1)):
                yield (u, u + 1 + v)

    def neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.rows[v])


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered vertex pairs; duplicates collapse silently."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"loop ({u}, {v}) not allowed in a simple graph")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complete(n: int) -> Graph:
    """Complete graph K_n."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; g2's vertices are relabelled by offset g1.n."""
    rows = list(g1.rows) + [row << g1.n for row in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Join: disjoint union plus all g1.n * g2.n cross edges."""
    left = (1 << g1.n) - 1
    right = ((1 << g2.n) - 1) << g1.n
    rows = [row | right for row in g1.rows]
    rows += [(row << g1.n) | left for row in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


# -- graph6 encoding --------------------------------------------------------
#
# N(n): one byte n+63 for n <= 62; bytes (126, b1, b2, b3) for 63 <= n < 2^18;
# bytes (126, 126, b1..b6) for 2^18 <= n < 2^36.  Body: upper-triangle bits in
# column-major order x(0,1), x(0,2), x(1,2), x(0,3), ..., packed into 6-bit
# groups, each stored as value+63, zero-padded.

_HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    # the 4-byte form tops out at 258047: above that its first data byte
    # would be 126 and collide with the 8-byte form's marker
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"graph6 cannot encode n={n} (needs n < 2^36)")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, body offset); raises on malformed or oversized records."""
    if not data:
        raise Graph6Error("empty graph6 record")
    if data[0] != 126:
        if not 63 <= data[0] <= 125:
            raise Graph6Error(f"invalid size byte {data[0]}")
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        chunk, offset = data[2:8], 8
        if len(chunk) < 6:
            raise Graph6Error("truncated 8-byte size field")
    else:
        chunk, offset = data[1:4], 4
        if len(chunk) < 3:
            raise Graph6Error("truncated 4-byte size field")
    n = 0
    for byte in chunk:
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid size byte {byte}")
        n = (n << 6) | (byte - 63)
    if n >= 1 << 36:
        raise Graph6Error(f"unsupported graph6 size n={n}")
    return n, offset


def to_graph6(g: Graph) -> bytes:
    """Encode to a single graph6 record (no header, no trailing newline)."""
    out = bytearray(_encode_size(g.n))
    group = 0
    filled = 0
    for v in range(1, g.n):
        col = g.rows[v]
        for u in range(v):
            group = (group << 1) | ((col >> u) & 1)
            filled += 1
            if filled == 6:
                out.append(group + 63)
                group = 0
                filled = 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return bytes(out)


def parse_graph6(data: bytes | str) -> Graph:
    """Decode a single graph6 record, optionally preceded by '>>graph6<<'."""
    if isinstance(data, str):
        data = data.encode("ascii")
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    data = data.rstrip(b"\r\n")
    n, offset = _decode_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error(f"truncated graph6 body: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"trailing bytes after graph6 body (expected {need}, got {len(body)})")
    rows = [0] * n
    bit = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[bit // 6]
            if not 63 <= byte <= 126:
                raise Graph6Error(f"invalid body byte {byte}")
            if (byte - 63) >> (5 - bit % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit += 1
    # padding bits are ignored, but the pad bytes still need to be in range
    for byte in body[(bit + 5) // 6:]:
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid body byte {byte}")
    return Graph(n, tuple(rows))


# -- set / degree / component primitives -------------------------------------


def degrees_excluding(g: Graph, excluded: Iterable[int]) -> dict[int, int]:
    """Degrees in G - S: map v -> |N(v) \\ S| for every vertex v not in S."""
    smask = mask_of(excluded, g.n)
    keep = ~smask
    return {v: (g.rows[v] & keep).bit_count() for v in range(g.n) if not (smask >> v) & 1}


def edges_between(g: Graph, aset: Iterable[int], bset: Iterable[int]) -> int:
    """Number of edges with one endpoint in each of two disjoint vertex sets."""
    amask = mask_of(aset, g.n)
    bmask = mask_of(bset, g.n)
    if amask & bmask:
        raise ValueError("edges_between requires disjoint vertex sets")
    return sum((g.rows[v] & bmask).bit_count() for v in iter_bits(amask))


def component_masks(rows: tuple[int, ...], n: int, avoid: int) -> list[int]:
    """Connected components of the graph minus ``avoid``, as bitmasks.

    Components come out ordered by smallest member, which keeps every report
    built on top of this byte-stable.
    """
    remaining = ((1 << n) - 1) & ~avoid
    comps = []
    while remaining:
        comp = 0
        frontier = remaining & -remaining
        while frontier:
            comp |= frontier
            reach = 0
            m = frontier
            while m:
                low = m & -m
                reach |= rows[low.bit_length() - 1]
                m ^= low
            frontier = reach & remaining & ~comp
        comps.append(comp)
        remaining &= ~comp
    return comps


def components_excluding(g: Graph, excluded: Iterable[int]) -> list[frozenset[int]]:
    """Partition of V(G) - X into connected components, sorted by smallest member."""
    avoid = mask_of(excluded, g.n)
    return [set_of(comp) for comp in component_masks(g.rows, g.n, avoid)]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    return len(component_masks(g.rows, g.n, 0)) == 1
