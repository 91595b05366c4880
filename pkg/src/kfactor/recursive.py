"""Doubling and product recursions lifting verified OF decompositions to
larger part counts."""

from __future__ import annotations

from .blocks import latin_cyclic, mols_pair, round_robin
from .constructions import ApplicabilityError, _cross_shift_factors, _pair_labels
from .core import Decomposition, Edge, Factor, Instance, Vertex, mod_interval
from .strategies import ColorAssignment, strategy_a
from .verify import verify_decomposition


def _require_verified_of(dec: Decomposition, what: str) -> None:
    inst = dec.instance
    if inst.n <= inst.g or (inst.n * inst.g) % 2 != 0:
        raise ApplicabilityError(
            f"{what} needs an OF input (n > g, gn even), got (n,g)=({inst.n},{inst.g})"
        )
    if dec.distance != 3:
        raise ApplicabilityError(f"{what} input must be declared at distance 3")
    report = verify_decomposition(dec)
    if not report.ok:
        raise ApplicabilityError(f"{what} input fails verification: {report.first().message}")


def double_of(dec: Decomposition) -> Decomposition:
    """OF(n,g) -> OF(2n,g): copied-and-shifted factors B_i plus gn cross
    factors, via a MOLS pair for g not in {2,6} and via lifted one-factors of
    K_g for g in {2,6}."""
    _require_verified_of(dec, "doubling")
    n, g = dec.instance.n, dec.instance.g
    inst = Instance(2 * n, g)

    factors = []
    for i, f in enumerate(dec.factors, start=1):
        edges = []
        for e in f.edges:
            edges.append(e)
        for e in f.edges:
            edges.append(Edge(Vertex(e.u.part + n, e.u.symbol), Vertex(e.v.part + n, e.v.symbol)))
        factors.append(Factor(inst, f"B_{i}", tuple(edges)))

    cross = _cross_shift_factors(n)
    if g not in (2, 6):
        m1, m2 = mols_pair(g)
        for i in range(1, g + 1):
            for k in range(1, n + 1):
                ff = [cross[mod_interval(k + j, 1, n) - 1] for j in range(1, g + 1)]
                colors = ColorAssignment(
                    g,
                    lambda j, x, i=i: m1.at(i, j) if x <= n else m2.at(i, j),
                )
                factors.append(strategy_a(inst, ff, colors, label=f"C_{{{i},{k}}}"))
    else:
        for i in range(1, n + 1):
            ff = [cross[mod_interval(i + a, 1, n) - 1] for a in range(1, g + 1)]
            factors.append(
                strategy_a(inst, ff, ColorAssignment(g, lambda r, x: r), label=f"E_{i}")
            )
        gg = round_robin(g)
        labels = _pair_labels(gg)
        for i in range(1, g):
            for j in range(1, n + 1):
                ff = [cross[mod_interval(j + w, 1, n) - 1] for w in range(1, g // 2 + 1)]
                ff += [
                    cross[mod_interval(j + w + g // 2, 1, n) - 1]
                    for w in range(1, g // 2 + 1)
                ]

                def color(r, x, i=i):
                    w = r if r <= g // 2 else r - g // 2
                    a, b = labels[i][w - 1]
                    if r > g // 2:
                        a, b = b, a
                    return a if x <= n else b

                factors.append(strategy_a(inst, ff, ColorAssignment(g, color), label=f"I_{{{i},{j}}}"))
    return Decomposition(inst, 3, tuple(factors))


def product_of(du: Decomposition, dv: Decomposition) -> Decomposition:
    """OF(u,g) x OF(v,g) -> OF(uv,g) on the flattened vertex set; part (x,
    alpha) of [u] x [v] becomes (x-1)v + alpha."""
    _require_verified_of(du, "product")
    _require_verified_of(dv, "product")
    if du.instance.g != dv.instance.g:
        raise ApplicabilityError(
            f"product inputs disagree on g: {du.instance.g} vs {dv.instance.g}"
        )
    u, v, g = du.instance.n, dv.instance.n, du.instance.g
    inst = Instance(u * v, g)

    def part(x: int, alpha: int) -> int:
        return (x - 1) * v + alpha

    factors = []
    for i, f in enumerate(dv.factors, start=1):
        edges = []
        for x in range(1, u + 1):
            for e in f.edges:
                edges.append(
                    Edge.make(part(x, e.u.part), e.u.symbol, part(x, e.v.part), e.v.symbol)
                )
        factors.append(Factor(inst, f"C_{i}", tuple(edges)))

    ls = latin_cyclic(v)
    for i, f in enumerate(du.factors, start=1):
        for s in range(1, v + 1):
            edges = []
            for e in f.edges:
                x, a = e.u
                y, b = e.v
                for j in range(1, v + 1):
                    edges.append(Edge.make(part(x, j), a, part(y, ls.at(s, j)), b))
            factors.append(Factor(inst, f"E^{s}_{i}", tuple(edges)))
    return Decomposition(inst, 3, tuple(factors))
