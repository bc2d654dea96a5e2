"""graph6 and sparse6 ASCII codecs for ``SmallGraph``.

Format reference: B. McKay's ``formats.txt``.  Only the size range that
``SmallGraph`` accepts is produced, but headers for larger orders decode
(and are then rejected by the graph constructor).
"""

from __future__ import annotations

from .graphs import SmallGraph, pair_list


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def _decode_n(data: list[int]) -> tuple[int, list[int]]:
    if not data:
        raise Graph6Error("missing order")
    if data[0] < 63:
        return data[0], data[1:]
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("truncated order")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        return n, data[8:]
    if len(data) < 4:
        raise Graph6Error("truncated order")
    return (data[1] << 12) | (data[2] << 6) | data[3], data[4:]


def _chars(s: str) -> list[int]:
    out = []
    for ch in s:
        d = ord(ch) - 63
        if not 0 <= d < 64:
            raise Graph6Error(f"invalid character {ch!r}")
        out.append(d)
    return out


def to_graph6(g: SmallGraph) -> str:
    bits = [1 if g.adj[i] >> j & 1 else 0 for i, j in pair_list(g.n)]
    bits += [0] * (-len(bits) % 6)
    data = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(d + 63) for d in _encode_n(g.n) + data)


def from_graph6(s: str) -> SmallGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    n, data = _decode_n(_chars(s))
    pairs = pair_list(n) if n <= 64 else None
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(data)}")
    if pairs is None:
        raise Graph6Error(f"order {n} too large")
    bits = [(d >> (5 - b)) & 1 for d in data for b in range(6)]
    return SmallGraph.from_edges(n, (p for p, bit in zip(pairs, bits) if bit))


def _width(n: int) -> int:
    k = 1
    while 1 << k < n:
        k += 1
    return k


def to_sparse6(g: SmallGraph) -> str:
    n = g.n
    k = _width(n)

    def enc(x: int) -> list[int]:
        return [(x >> (k - 1 - i)) & 1 for i in range(k)]

    bits: list[int] = []
    cur = 0
    for v, u in sorted((max(e), min(e)) for e in g.edges()):
        if v == cur:
            bits += [0] + enc(u)
        elif v == cur + 1:
            cur += 1
            bits += [1] + enc(u)
        else:
            cur = v
            bits += [1] + enc(v) + [0] + enc(u)
    pad = -len(bits) % 6
    if k < 6 and n == 1 << k and pad >= k and cur < n - 1:
        # plain 1-padding would read as an edge to n-1 here
        bits.append(0)
        pad = -len(bits) % 6
    bits += [1] * pad
    data = [int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return ":" + "".join(chr(d + 63) for d in _encode_n(n) + data)


def from_sparse6(s: str) -> SmallGraph:
    s = s.strip()
    if s.startswith(">>sparse6<<"):
        s = s[11:]
    if not s.startswith(":"):
        raise Graph6Error("sparse6 strings start with ':'")
    n, data = _decode_n(_chars(s[1:]))
    k = _width(n)
    bits = [(d >> (5 - b)) & 1 for d in data for b in range(6)]
    edges = set()
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for t in bits[i + 1:i + 1 + k]:
            x = (x << 1) | t
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        elif x != v:
            edges.add((x, v))
        else:
            raise Graph6Error("loops are not supported")
    return SmallGraph.from_edges(n, sorted(edges))


def decode(s: str) -> SmallGraph:
    """Decode either format, dispatching on the leading ':'."""
    s = s.strip()
    if s.startswith(":") or s.startswith(">>sparse6<<"):
        return from_sparse6(s)
    return from_graph6(s)
