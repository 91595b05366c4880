"""Distance-constrained decompositions of complete multipartite graphs:
constructions, recursions, planning, verification and search for optimal
decompositions of K_{n x g}, equivalently partitions of all weight-2 words
over a (g+1)-ary alphabet into optimal constant-weight codes."""

from .core import (
    Codeword,
    Decomposition,
    Edge,
    Factor,
    Instance,
    Shape,
    ShapeKind,
    Vertex,
    bound_A,
    codeword_to_edge,
    delta,
    edge_to_codeword,
    hamming_distance,
    mod_interval,
    shape_classify,
)
from .constructions import (
    ApplicabilityError,
    ConstructionId,
    decompose_d2,
    decompose_d4,
    odar,
    of_2n_even_g_even_n,
    of_2n_odd_g_even_n,
    of_2n_odd_g_odd_n,
    of_gplus1_even_g,
    of_odd_n_even_g,
    of_qplus1_prime_power,
    of_seed_4_2,
)
from .planner import PlanKind, PlanStatus, execute, plan
from .recursive import double_of, product_of
from .search import search_ar, search_of
from .verify import FactorKind, Report, max_code_bruteforce, verify_decomposition, verify_factor

__version__ = "0.1.0"
