"""Direct decomposition constructions, each returning a fully labeled
Decomposition; factor order is the catalog order (A's, then B's, then
C's/E's, lexicographic in indices).

Every shifted-window subscript reduction routes through mod_interval with the
window's lower bound and length; no ad-hoc modular arithmetic.
"""

from __future__ import annotations

from enum import Enum

from .blocks import (
    Factorization,
    FactorizationKind,
    Matching,
    check_factorization,
    d_partition,
    is_prime_power,
    latin_cyclic,
    lift_pairs,
    matching,
    near_one_factorization,
    oa_2_columns_qplus1,
    pinned_factorization,
    round_robin,
    _IRREDUCIBLE,
)
from .core import Decomposition, Edge, Factor, Instance, Vertex, delta, mod_interval
from .strategies import ClassSelection, ColorAssignment, strategy_a, strategy_b


class ConstructionId(Enum):
    D2 = "d2"
    D4 = "d4"
    ODAR_EVEN_N = "odar-even-n"
    ODAR_ODD_N = "odar-odd-n"
    OF_SEED_4_2 = "of-seed-4-2"
    OF_GPLUS1_EVEN_G = "of-g+1-even-g"
    OF_QPLUS1_PRIME_POWER = "of-q+1-prime-power"
    OF_ODD_N_EVEN_G = "of-odd-n-even-g"
    OF_2N_ODD_G_ODD_N = "of-2n-odd-g-odd-n"
    OF_2N_EVEN_G_EVEN_N = "of-2n-even-g-even-n"
    OF_2N_ODD_G_EVEN_N = "of-2n-odd-g-even-n"


class ApplicabilityError(ValueError):
    """The construction's parameter predicate rejects the input."""


def supported_odd_prime_power(q: int) -> bool:
    return (
        q % 2 == 1
        and is_prime_power(q)
        and (q in _IRREDUCIBLE or _is_prime(q))
    )


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _rr_low(m: int) -> Factorization:
    """Round robin relabeled with infinity at vertex 1: F_j contains {1, j+1}.

    This is the factor ordering the ODAR golden data assumes.
    """
    base = round_robin(m)
    perm = {m: 1}
    perm.update({i: i + 1 for i in range(1, m)})
    factors = tuple(
        matching(m, [(perm[lo], perm[hi]) for lo, hi in fac.pairs]) for fac in base.factors
    )
    return Factorization(m, FactorizationKind.ONE_FACTORIZATION, factors)


def _pair_labels(factorization: Factorization) -> dict:
    """a_{i,w} < b_{i,w} labels: pairs of each factor sorted by smaller element."""
    return {
        i: sorted(fac.pairs)
        for i, fac in enumerate(factorization.factors, start=1)
    }


def _k_g_factorization(g: int) -> Factorization:
    return _rr_low(g) if g % 2 == 0 else near_one_factorization(g)


def decompose_d2(inst: Instance) -> Decomposition:
    """g classes H_k = union of bipartite one-factors F^k_{i,j}; class k joins
    (i, m) to (j, m+k)."""
    n, g = inst.n, inst.g
    factors = []
    for k in range(1, g + 1):
        edges = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for m in range(1, g + 1):
                    edges.append(Edge(Vertex(i, m), Vertex(j, mod_interval(m + k, 1, g))))
        factors.append(Factor(inst, f"H_{k}", tuple(edges)))
    return Decomposition(inst, 2, tuple(factors))


def decompose_d4(inst: Instance) -> Decomposition:
    """Classes G^k_{(i,j)} lift a (near) one-factorization of K_n; codewords
    within a class have pairwise disjoint supports."""
    n, g = inst.n, inst.g
    ff = round_robin(n) if n % 2 == 0 else near_one_factorization(n)
    factors = []
    for k, fk in enumerate(ff.factors, start=1):
        for i in range(1, g + 1):
            for j in range(1, g + 1):
                edges = lift_pairs(inst, fk.pairs, i, j)
                factors.append(Factor(inst, f"G^{k}_{{{i},{j}}}", edges))
    return Decomposition(inst, 4, tuple(factors))


def odar(inst: Instance) -> Decomposition:
    """ODAR(n,g) for n <= g: g Strategy-A graphs A_i plus g(g-1) Strategy-B
    graphs B^k_{i,j} over the split class ranges."""
    n, g = inst.n, inst.g
    if n > g:
        raise ApplicabilityError(f"ODAR needs n <= g, got (n,g)=({n},{g})")
    ff = _rr_low(n) if n % 2 == 0 else near_one_factorization(n)
    gg = _k_g_factorization(g)
    labels = _pair_labels(gg)
    dp = d_partition(n)
    half_g = (g - delta(g)) // 2
    s = n - 1 if n % 2 == 0 else n

    factors = []
    for i in range(1, g + 1):
        colors = ColorAssignment(s, lambda r, x, i=i: mod_interval(i + r, 1, g))
        factors.append(strategy_a(inst, ff.factors, colors, label=f"A_{i}"))

    if n % 2 == 0:
        ranges = {1: range(1, n // 2 + 1), 2: range(n // 2 + 1, n + 1)}
    else:
        ranges = {1: range(1, (n - 1) // 2 + 1), 2: range((n + 1) // 2, n)}
    for k in (1, 2):
        for i in range(1, g - 1 + delta(g) + 1):
            for j in range(1, half_g + 1):
                indices = tuple(ranges[k])
                pairs = tuple(labels[i][mod_interval(j + r, 1, half_g) - 1] for r in indices)
                sel = ClassSelection(indices, pairs)
                factors.append(strategy_b(inst, dp, sel, label=f"B^{k}_{{{i},{j}}}"))
    return Decomposition(inst, 3, tuple(factors))


_SEED_4_2_ROWS = (
    ((1, 1, 2, 1), (1, 2, 3, 1), (2, 2, 4, 1), (3, 2, 4, 2)),
    ((1, 1, 2, 2), (2, 1, 3, 1), (3, 2, 4, 1), (1, 2, 4, 2)),
    ((1, 1, 3, 1), (2, 1, 3, 2), (1, 2, 4, 1), (2, 2, 4, 2)),
    ((1, 1, 3, 2), (2, 1, 4, 1), (3, 1, 4, 2), (1, 2, 2, 2)),
    ((1, 1, 4, 1), (2, 1, 4, 2), (2, 2, 3, 1), (1, 2, 3, 2)),
    ((1, 1, 4, 2), (1, 2, 2, 1), (3, 1, 4, 1), (2, 2, 3, 2)),
)


def of_seed_4_2() -> Decomposition:
    """The golden OF(4,2): six one-factors of K_{4x2} frozen as data, row
    and edge order preserved."""
    inst = Instance(4, 2)
    factors = tuple(
        Factor(inst, f"F_{r}", tuple(Edge.make(*q) for q in row))
        for r, row in enumerate(_SEED_4_2_ROWS, start=1)
    )
    return Decomposition(inst, 3, factors)


def of_gplus1_even_g(g: int) -> Decomposition:
    """OF(g+1, g) for even g: lifted difference factors C^l_{i,k} (minus the
    duplicate C^1_{1,(n-1)/2}) plus the mixed factors E_r."""
    if g % 2 != 0 or g < 2:
        raise ApplicabilityError(f"needs even g >= 2, got g={g}")
    n = g + 1
    inst = Instance(n, g)
    half = (n - 1) // 2
    g1 = matching(g, [(w, n - w) for w in range(1, half + 1)])
    gg = pinned_factorization(g, g1)
    labels = _pair_labels(gg)

    c_factors = []
    for l in (1, 2):
        for i in range(1, n - 1):
            for k in range(1, half + 1):
                edges = []
                for w in range(1, half + 1):
                    a, b = labels[i][mod_interval(w + k, 1, half) - 1]
                    if l == 2:
                        a, b = b, a
                    for j in range(1, n + 1):
                        edges.append(
                            Edge.make(mod_interval(j + w, 1, n), a, mod_interval(j - w, 1, n), b)
                        )
                c_factors.append(Factor(inst, f"C^{l}_{{{i},{k}}}", tuple(edges)))

    duplicate = frozenset(
        Edge.make(mod_interval(r + w, 1, n), w, mod_interval(r - w, 1, n), n - w)
        for w in range(1, half + 1)
        for r in range(1, n + 1)
    )
    kept = [f for f in c_factors if f.edge_set() != duplicate]
    if len(kept) != len(c_factors) - 1:
        raise AssertionError("expected exactly one duplicate C-factor to remove")

    e_factors = []
    for r in range(1, n + 1):
        edges = []
        for j in range(1, g + 1):
            for w in range(1, half + 1):
                edges.append(
                    Edge.make(
                        mod_interval(r + j + w, 1, n), j, mod_interval(r + j - w, 1, n), j
                    )
                )
        for w in range(1, half + 1):
            edges.append(Edge.make(mod_interval(r + w, 1, n), w, mod_interval(r - w, 1, n), n - w))
        e_factors.append(Factor(inst, f"E_{r}", tuple(edges)))

    return Decomposition(inst, 3, tuple(kept + e_factors))


def of_qplus1_prime_power(q: int) -> Decomposition:
    """OF(q+1, q) for odd prime power q, built from an OA(2, q+1, q), a Latin
    square, and the round robin of K_{q+1} (whose F_r contains {r, q+1})."""
    if not supported_odd_prime_power(q):
        raise ApplicabilityError(f"needs an odd prime power q in the field table, got q={q}")
    n = q + 1
    inst = Instance(n, q)
    oa = oa_2_columns_qplus1(q)
    ls = latin_cyclic(q)
    ff = round_robin(n)
    for r, fac in enumerate(ff.factors, start=1):
        assert (min(r, n), max(r, n)) in fac.pairs

    factors = []
    for i in range(1, q + 1):
        for j in range(1, q + 1):

            def color(r, x, i=i, j=j):
                if x == n:
                    return ls.at(r, i)
                return oa.entry(i, mod_interval(j + r - 1, 1, q), x)

            factors.append(
                strategy_a(inst, ff.factors, ColorAssignment(q, color), label=f"C_{{{i},{j}}}")
            )
    return Decomposition(inst, 3, tuple(factors))


def of_odd_n_even_g(n: int, g: int) -> Decomposition:
    """OF(n, g) for odd n and even g with n >= max(2g-1, g+3): augmented
    Strategy-A factors A_i plus shifted-window Strategy-B factors B_{i,j}."""
    if n % 2 != 1 or g % 2 != 0 or g < 2 or n < max(2 * g - 1, g + 3):
        raise ApplicabilityError(
            f"needs odd n, even g, n >= max(2g-1, g+3); got (n,g)=({n},{g})"
        )
    inst = Instance(n, g)
    ff = near_one_factorization(n)
    g1 = matching(g, [(a, a + 1) for a in range(1, g, 2)])
    gg = pinned_factorization(g, g1)
    labels = _pair_labels(gg)
    dp = d_partition(n)
    half_n = (n - 1) // 2

    factors = []
    for i in range(1, n + 1):
        edges = []
        for a in range(1, g + 1):
            fr = ff.factors[mod_interval(i + a - 1, 1, n) - 1]
            edges.extend(lift_pairs(inst, fr.pairs, a, a))
        for a in range(1, g, 2):
            edges.append(
                Edge.make(
                    mod_interval(i + a - 1, 1, n), a,
                    mod_interval(i + a, 1, n), mod_interval(a + 1, 1, g),
                )
            )
        factors.append(Factor(inst, f"A_{i}", tuple(edges)))

    def window_index(j, w, first_lo, first_m):
        if first_lo <= j <= first_lo + first_m - 1:
            return mod_interval(j + w, first_lo, first_m)
        return mod_interval(j + w, half_n + 1, half_n)

    for i in range(1, g):
        js = range(2, n) if i == 1 else range(1, n)
        for j in js:
            if i == 1:
                indices = tuple(window_index(j, w, 2, (n - 3) // 2) for w in range(1, g // 2 + 1))
            else:
                indices = tuple(window_index(j, w, 1, half_n) for w in range(1, g // 2 + 1))
            sel = ClassSelection(indices, tuple(labels[i][: g // 2]))
            factors.append(strategy_b(inst, dp, sel, label=f"B_{{{i},{j}}}"))
    return Decomposition(inst, 3, tuple(factors))


def _cross_shift_factors(n: int):
    """I_r = {{x, x+r+n}} with the partner reduced into [n+1, 2n]; I_n is the
    diagonal {{x, x+n}}."""
    return [
        matching(2 * n, [(x, mod_interval(x + r + n, n + 1, n)) for x in range(1, n + 1)])
        for r in range(1, n + 1)
    ]


def _cross_window_factors(n: int):
    """The even-n cross factors I_r with half-dependent target windows."""
    half = n // 2
    out = []
    for r in range(1, n + 1):
        pairs = []
        for x in range(1, n + 1):
            low_half = x <= half
            outer = (r <= half) == low_half
            lo = 3 * half + 1 if outer else n + 1
            pairs.append((x, mod_interval(x + r, lo, half)))
        out.append(matching(2 * n, pairs))
    return out


def _doubled(fac: Matching, n: int) -> Matching:
    return matching(2 * n, list(fac.pairs) + [(lo + n, hi + n) for lo, hi in fac.pairs])


def of_2n_odd_g_odd_n(n: int, g: int) -> Decomposition:
    """OF(2n, g) for odd g >= 3 and odd n >= g, over near one-factorizations
    of both K_g and K_n."""
    if g % 2 != 1 or g < 3 or n % 2 != 1 or n < g:
        raise ApplicabilityError(f"needs odd g >= 3 and odd n >= g, got (n,g)=({n},{g})")
    inst = Instance(2 * n, g)
    gg = near_one_factorization(g)
    labels = _pair_labels(gg)
    ff = near_one_factorization(n)

    hs = [_doubled_with_diagonal(fr, r, n) for r, fr in enumerate(ff.factors, start=1)]
    cross = _cross_shift_factors(n)
    check_factorization(
        Factorization(2 * n, FactorizationKind.ONE_FACTORIZATION, tuple(hs + cross[: n - 1]))
    )
    dp = d_partition(n)
    half_n = (n - 1) // 2

    factors = []
    for i in range(1, n + 1):
        hh = [hs[mod_interval(i + a, 1, n) - 1] for a in range(1, g + 1)]
        factors.append(
            strategy_a(inst, hh, ColorAssignment(g, lambda r, x: r), label=f"A_{i}")
        )
    for i in range(1, g):
        for j in range(1, n + 1):
            ii = [cross[mod_interval(j + a, 1, n) - 1] for a in range(1, g + 1)]
            colors = ColorAssignment(
                g, lambda r, x, i=i: r if x <= n else mod_interval(r + i, 1, g)
            )
            factors.append(strategy_a(inst, ii, colors, label=f"B_{{{i},{j}}}"))
    for i in range(1, g + 1):
        for j in range(1, n):
            edges = []
            for w in range(1, (g - 1) // 2 + 1):
                if j <= half_n:
                    r = mod_interval(j + w, 1, half_n)
                else:
                    r = mod_interval(j + w, half_n + 1, half_n)
                a, b = labels[i][w - 1]
                doubled_pairs = list(dp.classes[r]) + [(x + n, y + n) for x, y in dp.classes[r]]
                edges.extend(lift_pairs(inst, doubled_pairs, a, b))
            edges.extend(lift_pairs(inst, cross[j - 1].pairs, i, i))
            factors.append(Factor(inst, f"C_{{{i},{j}}}", tuple(edges)))
    return Decomposition(inst, 3, tuple(factors))


def _doubled_with_diagonal(fr: Matching, r: int, n: int) -> Matching:
    return matching(
        2 * n, list(fr.pairs) + [(lo + n, hi + n) for lo, hi in fr.pairs] + [(r, r + n)]
    )


def _banded_symbol(g: int, i: int, a: int, x: int, n: int) -> int:
    """Entry m^(i)_{a,x} of the banded g x 2n array: blocks of widths n/2, n,
    n/2 holding a, a+i, a+2i."""
    if x <= n // 2:
        shift = 0
    elif x <= 3 * n // 2:
        shift = i
    else:
        shift = 2 * i
    return mod_interval(a + shift, 1, g)


def _step3_factors(inst: Instance, n: int, g: int, cross, labels_prefix: str = "C"):
    """Step 3 shared by both even-n OF(2n,.) builders: lower C_{i,j} lift
    the cross factors I_r directly, upper C_{i,j} lift them through the
    banded array via K^i_{a,r}."""
    half = n // 2
    i_extra = matching(
        2 * n,
        [(x, x + half) for x in range(1, half + 1)]
        + [(x, x + half) for x in range(n + 1, n + half + 1)],
    )
    all_cross = cross + [i_extra]  # 1-based index r in [n+1]
    factors = []
    for i in range(1, g):
        for j in range(1, half + 1):
            ii = [cross[mod_interval(j + a, 1, half) - 1] for a in range(1, g + 1)]
            colors = ColorAssignment(
                g, lambda r, x, i=i: r if x <= n else mod_interval(r + i, 1, g)
            )
            factors.append(strategy_a(inst, ii, colors, label=f"{labels_prefix}_{{{i},{j}}}"))
    for i in range(1, g):
        for j in range(half + 1, n + 2):
            ii = [all_cross[mod_interval(j + a, half + 1, half + 1) - 1] for a in range(1, g + 1)]
            colors = ColorAssignment(
                g, lambda a, x, i=i: _banded_symbol(g, i, a, x, n)
            )
            factors.append(strategy_a(inst, ii, colors, label=f"{labels_prefix}_{{{i},{j}}}"))
    return factors


def of_2n_even_g_even_n(n: int, g: int) -> Decomposition:
    """OF(2n, g) for even g and even n >= 2g."""
    if g % 2 != 0 or g < 2 or n % 2 != 0 or n < 2 * g:
        raise ApplicabilityError(f"needs even g and even n >= 2g, got (n,g)=({n},{g})")
    inst = Instance(2 * n, g)
    gg = round_robin(g)
    labels = _pair_labels(gg)
    ff = round_robin(n)
    doubled = [_doubled(fr, n) for fr in ff.factors]
    cross = _cross_window_factors(n)
    hs = doubled + cross  # H_1..H_{2n-1}
    check_factorization(Factorization(2 * n, FactorizationKind.ONE_FACTORIZATION, tuple(hs)))
    dp = d_partition(n)
    half = n // 2

    factors = []
    for i in range(1, 2 * n):
        hh = [hs[mod_interval(i + a, 1, 2 * n - 1) - 1] for a in range(1, g + 1)]
        factors.append(strategy_a(inst, hh, ColorAssignment(g, lambda r, x: r), label=f"A_{i}"))
    for i in range(1, g):
        for j in (j for j in range(1, n) if j != half):
            edges = []
            for w in range(1, g // 2 + 1):
                if j <= half - 1:
                    r = mod_interval(j + w, 1, half - 1)
                else:
                    r = mod_interval(j + w, half + 1, half - 1)
                a, b = labels[i][w - 1]
                doubled_pairs = list(dp.classes[r]) + [(x + n, y + n) for x, y in dp.classes[r]]
                edges.extend(lift_pairs(inst, doubled_pairs, a, b))
            factors.append(Factor(inst, f"B_{{{i},{j}}}", tuple(edges)))
    factors.extend(_step3_factors(inst, n, g, cross))
    return Decomposition(inst, 3, tuple(factors))


def of_2n_odd_g_even_n(n: int, g: int) -> Decomposition:
    """OF(2n, g) for odd g >= 3 and even n >= 2g; Step 3 is shared verbatim
    with the even-g builder."""
    if g % 2 != 1 or g < 3 or n % 2 != 0 or n < 2 * g:
        raise ApplicabilityError(f"needs odd g >= 3 and even n >= 2g, got (n,g)=({n},{g})")
    inst = Instance(2 * n, g)
    gg = near_one_factorization(g)
    labels = _pair_labels(gg)
    ff = round_robin(n)
    doubled = [_doubled(fr, n) for fr in ff.factors]
    cross = _cross_window_factors(n)
    check_factorization(
        Factorization(
            2 * n, FactorizationKind.ONE_FACTORIZATION, tuple(doubled + cross)
        )
    )
    dp = d_partition(n)
    half = n // 2
    hs = doubled + [cross[half - 1], cross[n - 1]]  # H_n := I_{n/2}, H_{n+1} := I_n

    factors = []
    for i in range(1, n + 2):
        hh = [hs[mod_interval(i + a, 1, n + 1) - 1] for a in range(1, g + 1)]
        factors.append(strategy_a(inst, hh, ColorAssignment(g, lambda r, x: r), label=f"A_{i}"))
    for i in range(1, g + 1):
        for j in (j for j in range(1, n) if j != half):
            edges = []
            for w in range(1, (g - 1) // 2 + 1):
                if j <= half - 1:
                    r = mod_interval(j + w, 1, half - 1)
                else:
                    r = mod_interval(j + w, half + 1, half - 1)
                a, b = labels[i][w - 1]
                doubled_pairs = list(dp.classes[r]) + [(x + n, y + n) for x, y in dp.classes[r]]
                edges.extend(lift_pairs(inst, doubled_pairs, a, b))
            edges.extend(lift_pairs(inst, cross[j - 1].pairs, i, i))
            factors.append(Factor(inst, f"B_{{{i},{j}}}", tuple(edges)))
    factors.extend(_step3_factors(inst, n, g, cross))
    return Decomposition(inst, 3, tuple(factors))
