"""Existence planning for optimal decompositions: classifies every (n, g, d)
as planned, open, or nonexistent, and emits executable Recipe trees whose
leaves are the direct constructions.

The planner is deliberately conservative: a distance-3 pair (n, g) is
Planned only when its existence is settled by the clause catalog in
_gap_clause.  Recipes that would reach a pair inside an unsettled window
(doubling OF(g+1, g) to 2g+2 parts, say) are not emitted, so the planned set
matches the settled-existence set exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from . import constructions as C
from .constructions import ConstructionId, supported_odd_prime_power
from .core import Decomposition, Instance
from .recursive import double_of, product_of


@dataclass(frozen=True)
class Direct:
    construction: ConstructionId
    params: tuple  # sorted (name, value) pairs


@dataclass(frozen=True)
class Double:
    child: object


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class Seed:
    name: str


Recipe = object  # Direct | Double | Product | Seed


@dataclass(frozen=True)
class Clause:
    index: int
    text: str


class PlanKind(Enum):
    PLANNED = "planned"
    OPEN_GAP = "open-gap"
    NON_EXISTENT = "non-existent"


@dataclass(frozen=True)
class PlanStatus:
    kind: PlanKind
    recipe: object = None
    clause: Clause | None = None
    reason: str | None = None


def _direct(cid: ConstructionId, **params) -> Direct:
    return Direct(cid, tuple(sorted(params.items())))


def _gap_clause(n: int, g: int) -> Clause | None:
    """The unsettled-window clause containing (n, g), or None when existence
    is settled.  Only called for n > g with gn even and g >= 2."""
    if g in (2, 3):
        return None
    if g % 2 == 0:
        if n % 2 == 1:
            if g + 3 <= n <= 2 * g - 3:
                return Clause(2, f"even g >= 4: odd n with {g + 3} <= n <= {2 * g - 3} unresolved")
            return None
        if g + 2 <= n <= 4 * g - 4:
            return Clause(2, f"even g >= 4: even n with {g + 2} <= n <= {4 * g - 4} unresolved")
        return None
    if supported_odd_prime_power(g):
        idx, lo = 4, g + 3
    else:
        idx, lo = 3, g + 1
    if n % 4 == 2:
        if lo <= n <= 2 * g - 4:
            return Clause(idx, f"odd g >= 5: n = 2 (mod 4) with {lo} <= n <= {2 * g - 4} unresolved")
        return None
    if lo <= n <= 4 * g - 4:
        return Clause(idx, f"odd g >= 5: n = 0 (mod 4) with {lo} <= n <= {4 * g - 4} unresolved")
    return None


def _resolve(n: int, g: int) -> Recipe:
    """Recipe for an asserted pair, preferring direct constructions, then
    doubling, then the product over n = u*v with the smallest valid u."""
    if (n, g) == (4, 2):
        return _direct(ConstructionId.OF_SEED_4_2)
    if g % 2 == 0 and n == g + 1:
        return _direct(ConstructionId.OF_GPLUS1_EVEN_G, g=g)
    if g % 2 == 1 and n == g + 1 and supported_odd_prime_power(g):
        return _direct(ConstructionId.OF_QPLUS1_PRIME_POWER, q=g)
    if n % 2 == 1 and g % 2 == 0 and n >= max(2 * g - 1, g + 3):
        return _direct(ConstructionId.OF_ODD_N_EVEN_G, n=n, g=g)
    if g % 2 == 1 and g >= 3 and n % 4 == 2 and n // 2 >= g:
        return _direct(ConstructionId.OF_2N_ODD_G_ODD_N, n=n // 2, g=g)
    if g % 2 == 0 and n % 4 == 0 and n // 2 >= 2 * g:
        return _direct(ConstructionId.OF_2N_EVEN_G_EVEN_N, n=n // 2, g=g)
    if g % 2 == 1 and g >= 3 and n % 4 == 0 and n // 2 >= 2 * g:
        return _direct(ConstructionId.OF_2N_ODD_G_EVEN_N, n=n // 2, g=g)
    if n % 2 == 0 and n // 2 > g and (g * (n // 2)) % 2 == 0:
        child = plan(n // 2, g, 3)
        if child.kind is PlanKind.PLANNED:
            return Double(child.recipe)
    for u in range(2, n):
        if u * u > n:
            break
        if n % u:
            continue
        v = n // u
        if u > g and v > g and (g * u) % 2 == 0 and (g * v) % 2 == 0:
            pu, pv = plan(u, g, 3), plan(v, g, 3)
            if pu.kind is PlanKind.PLANNED and pv.kind is PlanKind.PLANNED:
                return Product(pu.recipe, pv.recipe)
    raise AssertionError(f"asserted pair ({n},{g}) did not resolve to a recipe")


def plan(n: int, g: int, d: int) -> PlanStatus:
    if d not in (2, 3, 4):
        raise ValueError(f"d must be 2, 3 or 4, got {d}")
    Instance(n, g)  # validates ranges
    if d == 2:
        return PlanStatus(PlanKind.PLANNED, _direct(ConstructionId.D2, n=n, g=g))
    if d == 4:
        return PlanStatus(PlanKind.PLANNED, _direct(ConstructionId.D4, n=n, g=g))
    if n <= g:
        cid = ConstructionId.ODAR_EVEN_N if n % 2 == 0 else ConstructionId.ODAR_ODD_N
        return PlanStatus(PlanKind.PLANNED, _direct(cid, n=n, g=g))
    if (n * g) % 2 == 1:
        return PlanStatus(
            PlanKind.NON_EXISTENT,
            reason=f"n > g with gn odd: K_{{{n}x{g}}} has no optimal distance-3 decomposition",
        )
    if g == 1:
        # the distance-4 classes of K_{n x 1} are already an OF(n, 1);
        # re-declare them at d=3
        return PlanStatus(
            PlanKind.PLANNED, _direct(ConstructionId.D4, n=n, g=g, declare_d=3)
        )
    clause = _gap_clause(n, g)
    if clause is not None:
        return PlanStatus(PlanKind.OPEN_GAP, clause=clause)
    return PlanStatus(PlanKind.PLANNED, _resolve(n, g))


def _build_direct(node: Direct) -> Decomposition:
    p = dict(node.params)
    cid = node.construction
    if cid is ConstructionId.D2:
        dec = C.decompose_d2(Instance(p["n"], p["g"]))
    elif cid is ConstructionId.D4:
        dec = C.decompose_d4(Instance(p["n"], p["g"]))
    elif cid in (ConstructionId.ODAR_EVEN_N, ConstructionId.ODAR_ODD_N):
        dec = C.odar(Instance(p["n"], p["g"]))
    elif cid is ConstructionId.OF_SEED_4_2:
        dec = C.of_seed_4_2()
    elif cid is ConstructionId.OF_GPLUS1_EVEN_G:
        dec = C.of_gplus1_even_g(p["g"])
    elif cid is ConstructionId.OF_QPLUS1_PRIME_POWER:
        dec = C.of_qplus1_prime_power(p["q"])
    elif cid is ConstructionId.OF_ODD_N_EVEN_G:
        dec = C.of_odd_n_even_g(p["n"], p["g"])
    elif cid is ConstructionId.OF_2N_ODD_G_ODD_N:
        dec = C.of_2n_odd_g_odd_n(p["n"], p["g"])
    elif cid is ConstructionId.OF_2N_EVEN_G_EVEN_N:
        dec = C.of_2n_even_g_even_n(p["n"], p["g"])
    elif cid is ConstructionId.OF_2N_ODD_G_EVEN_N:
        dec = C.of_2n_odd_g_even_n(p["n"], p["g"])
    else:
        raise ValueError(f"unknown construction {cid}")
    if "declare_d" in p and p["declare_d"] != dec.distance:
        dec = replace(dec, distance=p["declare_d"])
    return dec


def execute(recipe: Recipe) -> Decomposition:
    """Run a recipe tree: leaves via the constructions module, internal nodes
    via the recursions."""
    if isinstance(recipe, Seed):
        if recipe.name == "of_4_2":
            return C.of_seed_4_2()
        raise ValueError(f"unknown seed {recipe.name!r}")
    if isinstance(recipe, Direct):
        return _build_direct(recipe)
    if isinstance(recipe, Double):
        return double_of(execute(recipe.child))
    if isinstance(recipe, Product):
        return product_of(execute(recipe.left), execute(recipe.right))
    raise TypeError(f"not a recipe node: {recipe!r}")


_DIRECT_NAMES = {
    ConstructionId.D2: "distance-2 classes",
    ConstructionId.D4: "distance-4 classes",
    ConstructionId.ODAR_EVEN_N: "ODAR(n,g)",
    ConstructionId.ODAR_ODD_N: "ODAR(n,g)",
    ConstructionId.OF_SEED_4_2: "OF(4,2) seed",
    ConstructionId.OF_GPLUS1_EVEN_G: "OF(g+1,g)",
    ConstructionId.OF_QPLUS1_PRIME_POWER: "OF(q+1,q)",
    ConstructionId.OF_ODD_N_EVEN_G: "OF(n,g) odd n",
    ConstructionId.OF_2N_ODD_G_ODD_N: "OF(2n,g) odd n",
    ConstructionId.OF_2N_EVEN_G_EVEN_N: "OF(2n,g) even n",
    ConstructionId.OF_2N_ODD_G_EVEN_N: "OF(2n,g) even n odd g",
}


def render(recipe: Recipe) -> str:
    if isinstance(recipe, Seed):
        return f"Seed {recipe.name}"
    if isinstance(recipe, Direct):
        args = ", ".join(f"{k}={v}" for k, v in recipe.params)
        name = _DIRECT_NAMES[recipe.construction]
        return f"Direct {name}" + (f", {args}" if args else "")
    if isinstance(recipe, Double):
        return f"Double <- {render(recipe.child)}"
    if isinstance(recipe, Product):
        return f"Product <- ({render(recipe.left)}) x ({render(recipe.right)})"
    raise TypeError(f"not a recipe node: {recipe!r}")
