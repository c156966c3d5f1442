"""Tree combinatorics of Lyndon words and the parametrized algebraic
cycles attached to multiple polylogarithms."""

from .words import is_lyndon, lyndon_words, standard_factorization, word, word_str
from .trees import (
    Tree,
    bracket_expand,
    decompose,
    decompose_tracked,
    graft,
    is_hall,
    leaf,
    lyndon_tree,
    normalize_sign,
)
from .dualsums import DualTreeSum, d_lie, dual_tree
from .forest import contract, d_cy, embed_dual, extract_alpha_beta
from .coeffs import (
    CoeffTable,
    FormalElement,
    derive_ab,
    derive_apbp,
    formal_differential_check,
    residual_r,
    residual_s,
    residual_t,
)
from .cycles import (
    Cycle,
    boundary,
    build_colored,
    canonicalize,
    cycle,
    cycle_from_json,
    cycle_to_json,
    fiber_empty_at,
    gamma_tree,
    product,
    verify_cycle_differential,
)
from .numerics import integral_I011, j_limit_at_one, j_series, li_series, zeta2, zeta21

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
