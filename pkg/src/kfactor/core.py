"""Core types, index conventions, modular-interval arithmetic and closed-form bounds.

Everything here is 1-based: parts live in [n] = {1..n}, symbols in [g], and
codeword coordinates in [n].  The only place 0-based indexing appears is the
tuple index of a codeword, which is coordinate minus one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple

Codeword = tuple  # length-n tuple over {0..g}, exactly two nonzero entries


class Vertex(NamedTuple):
    part: int
    symbol: int


class Edge(NamedTuple):
    """Cross-part vertex pair, canonicalized so u.part < v.part."""

    u: Vertex
    v: Vertex

    @staticmethod
    def make(x: int, a: int, y: int, b: int) -> "Edge":
        if x == y:
            raise ValueError(f"edge endpoints must lie in distinct parts, got part {x} twice")
        if x < y:
            return Edge(Vertex(x, a), Vertex(y, b))
        return Edge(Vertex(y, b), Vertex(x, a))


@dataclass(frozen=True)
class Instance:
    """The pair (n, g) defining K_{n x g}; alphabet size q = g + 1."""

    n: int
    g: int
    q: int = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got n={self.n}")
        if self.g < 1:
            raise ValueError(f"need g >= 1, got g={self.g}")
        object.__setattr__(self, "q", self.g + 1)

    @property
    def edge_count(self) -> int:
        return math.comb(self.n, 2) * self.g * self.g

    def all_edges(self) -> Iterator[Edge]:
        for x in range(1, self.n + 1):
            for y in range(x + 1, self.n + 1):
                for a in range(1, self.g + 1):
                    for b in range(1, self.g + 1):
                        yield Edge(Vertex(x, a), Vertex(y, b))

    def check_vertex(self, v: Vertex) -> None:
        if not (1 <= v.part <= self.n):
            raise ValueError(f"part {v.part} out of range [1,{self.n}]")
        if not (1 <= v.symbol <= self.g):
            raise ValueError(f"symbol {v.symbol} out of range [1,{self.g}]")

    def check_edge(self, e: Edge) -> None:
        self.check_vertex(e.u)
        self.check_vertex(e.v)
        if e.u.part >= e.v.part:
            raise ValueError(f"edge {e} not canonical (need u.part < v.part)")


@dataclass(frozen=True)
class Factor:
    """A labeled edge set claimed to be an AR-graph / (near) one-factor.

    Edges are kept in construction order; no repeats allowed.
    """

    instance: Instance
    label: str
    edges: tuple

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            self.instance.check_edge(e)
            if e in seen:
                raise ValueError(f"repeated edge {e} in factor {self.label}")
            seen.add(e)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Decomposition:
    """Ordered list of factors claimed to partition K_{n x g} at distance d."""

    instance: Instance
    distance: int
    factors: tuple

    def __post_init__(self):
        if self.distance not in (2, 3, 4):
            raise ValueError(f"declared distance must be 2, 3 or 4, got {self.distance}")

    def factor_by_label(self, label: str) -> Factor:
        for f in self.factors:
            if f.label == label:
                return f
        raise KeyError(label)


def edge_to_codeword(inst: Instance, e: Edge) -> Codeword:
    """Weight-2 word of e: symbol at each endpoint's part, zero elsewhere."""
    inst.check_edge(e)
    word = [0] * inst.n
    word[e.u.part - 1] = e.u.symbol
    word[e.v.part - 1] = e.v.symbol
    return tuple(word)


def codeword_to_edge(inst: Instance, c: Codeword) -> Edge:
    """Inverse of edge_to_codeword; requires weight exactly 2."""
    if len(c) != inst.n:
        raise ValueError(f"codeword length {len(c)} != n={inst.n}")
    support = [i for i, ci in enumerate(c) if ci != 0]
    if len(support) != 2:
        raise ValueError(f"codeword weight {len(support)} != 2")
    i, j = support
    e = Edge(Vertex(i + 1, c[i]), Vertex(j + 1, c[j]))
    inst.check_edge(e)
    return e


def hamming_distance(x: Codeword, y: Codeword) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(1 for xi, yi in zip(x, y) if xi != yi)


def edge_distance(e1: Edge, e2: Edge) -> int:
    """Hamming distance of the two edges' codewords, off the sparse form.

    Entries vanish outside the supports, so only the (at most four) support
    coordinates can differ; property-tested against hamming_distance.
    """
    (x1, a1), (y1, b1) = e1
    (x2, a2), (y2, b2) = e2
    d = 4
    if x1 == x2:
        d -= 2 - (a1 != a2)
    elif x1 == y2:
        d -= 2 - (a1 != b2)
    if y1 == x2:
        d -= 2 - (b1 != a2)
    elif y1 == y2:
        d -= 2 - (b1 != b2)
    return d


def bound_A(n: int, d: int, w: int, q: int) -> int:
    """Maximum size of an (n,d,w)_q constant-weight code, for the three
    supported parameter families: (d=2, w<=n), (d=2w, w), (d=3, w=2)."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    g = q - 1
    if d == 2 and 1 <= w <= n:
        return math.comb(n, w) * g ** (w - 1)
    if w >= 1 and d == 2 * w:
        return n // w
    if d == 3 and w == 2:
        return (g * n) // 2 if n > g else math.comb(n, 2)
    raise ValueError(f"unsupported (d,w)=({d},{w}); only (2,w), (2w,w), (3,2) are known")


class ShapeKind(Enum):
    ODAR = "ODAR"
    OF = "OF"
    NONEXISTENT_D3 = "NonExistent_d3"


@dataclass(frozen=True)
class Shape:
    kind: ShapeKind
    factor_count: int | None
    factor_size: int | None


def shape_classify(inst: Instance) -> Shape:
    """Distance-3 trichotomy: ODAR (n<=g), OF (n>g, gn even), or nonexistent."""
    n, g = inst.n, inst.g
    if n <= g:
        return Shape(ShapeKind.ODAR, g * g, math.comb(n, 2))
    if (g * n) % 2 == 0:
        return Shape(ShapeKind.OF, g * (n - 1), g * n // 2)
    return Shape(ShapeKind.NONEXISTENT_D3, None, None)


def mod_interval(v: int, lo: int, m: int) -> int:
    """The unique r with lo <= r <= lo+m-1 and r == v (mod m).

    Single authority for every "reduced modulo m to lie in [a,b]" reduction;
    no construction performs ad-hoc modular arithmetic.
    """
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    return lo + (v - lo) % m


def delta(i: int) -> int:
    """Parity indicator: 0 for even i, 1 for odd i."""
    return i & 1
