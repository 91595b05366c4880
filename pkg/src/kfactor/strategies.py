"""The two generic AR-graph builders, Strategy A and Strategy B, as validated
reusable operations.  Several later constructions reuse them with factor
counts below the default s/t, which is allowed: the result is then still
almost 1-regular and parallel-free, just not maximum-size."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .blocks import DPartition, Matching, lift_pairs
from .core import Edge, Factor, Instance, Vertex


class PropertyAViolatedError(ValueError):
    def __init__(self, z: int, r1: int, r2: int, symbol: int):
        self.z, self.r1, self.r2, self.symbol = z, r1, r2, symbol
        super().__init__(
            f"property (A) fails at z={z}: rounds {r1} and {r2} both color it {symbol}"
        )


class FactorsNotDisjointError(ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"input factors share the pair {pair}")


class PropertyBViolatedError(ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"property (B) fails: forbidden pair {set(pair)} inside the selection")


class SymbolCollisionError(ValueError):
    def __init__(self, symbol: int):
        self.symbol = symbol
        super().__init__(f"symbol {symbol} appears twice across the selected pairs")


@dataclass(frozen=True)
class ColorAssignment:
    """s rounds of colors c(r, x); property (A) wants, for each fixed x, the s
    values c(1,x)..c(s,x) pairwise distinct."""

    s: int
    c: Callable[[int, int], int]


@dataclass(frozen=True)
class ClassSelection:
    """t distinct D-class indices plus one ascending symbol pair per class,
    all 2t symbols distinct (a subset of a (near) one-factor of K_g)."""

    indices: tuple
    symbol_pairs: tuple

    @property
    def t(self) -> int:
        return len(self.indices)


def default_s(inst: Instance) -> int | None:
    """Round count for Strategy A; None in the excluded regime (odd n > g)."""
    n, g = inst.n, inst.g
    if n % 2 == 0:
        return g if n > g else n - 1
    return n if n <= g else None


def default_t(inst: Instance) -> int | None:
    """Class count for Strategy B; None in the excluded regime (even n > g)."""
    n, g = inst.n, inst.g
    if n <= g:
        return n // 2 if n % 2 == 0 else (n - 1) // 2
    if n % 2 == 1 and g % 2 == 0:
        return g // 2
    return None


def strategy_a(
    inst: Instance,
    factors: Sequence[Matching],
    colors: ColorAssignment,
    label: str = "A",
) -> Factor:
    """G = union over r of {{(x, c(r,x)), (y, c(r,y))} : {x,y} in F_r}."""
    if colors.s != len(factors):
        raise ValueError(f"s={colors.s} but {len(factors)} factors supplied")
    seen = set()
    for fac in factors:
        for p in fac.pairs:
            if p in seen:
                raise FactorsNotDisjointError(p)
            seen.add(p)
    for z in range(1, inst.n + 1):
        by_symbol = {}
        for r in range(1, colors.s + 1):
            sym = colors.c(r, z)
            if sym in by_symbol:
                raise PropertyAViolatedError(z, by_symbol[sym], r, sym)
            by_symbol[sym] = r
    edges = []
    for r, fac in enumerate(factors, start=1):
        for x, y in fac.pairs:
            edges.append(Edge(Vertex(x, colors.c(r, x)), Vertex(y, colors.c(r, y))))
    return Factor(inst, label, tuple(edges))


def strategy_b(
    inst: Instance,
    dp: DPartition,
    sel: ClassSelection,
    label: str = "B",
) -> Factor:
    """G = union over r of D_{i_r}(a_r, b_r)."""
    if len(sel.symbol_pairs) != sel.t:
        raise ValueError("one symbol pair per selected class is required")
    if len(set(sel.indices)) != sel.t:
        raise ValueError(f"class indices {sel.indices} are not distinct")
    chosen = set(sel.indices)
    for pair in dp.forbidden:
        if len(chosen & set(pair)) > 1:
            raise PropertyBViolatedError(pair)
    used = set()
    for a, b in sel.symbol_pairs:
        if not a < b:
            raise ValueError(f"symbol pair ({a},{b}) is not ascending")
        for s in (a, b):
            if s in used:
                raise SymbolCollisionError(s)
            used.add(s)
    edges = []
    for i, (a, b) in zip(sel.indices, sel.symbol_pairs):
        if i not in dp.classes:
            raise ValueError(f"no class D_{i} for n={dp.n}")
        edges.extend(lift_pairs(inst, dp.classes[i], a, b))
    return Factor(inst, label, tuple(edges))
