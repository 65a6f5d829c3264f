"""Exact symbolic engine for Dunkl angular momenta algebras.

Modules:
  exactmath   scalar/polynomial/linear-algebra substrate over Q[g1..gk]
  coxeter     root systems, reflection groups, group-algebra pairings
  cherednik   PBW rewriting engine for the rational Cherednik algebra
  polyrep     faithful polynomial representation (the evaluation oracle)
  subalgebra  so/gl angular momenta subalgebras: bases, straightening, centre
  suites      named verification suites
  expr, cli   expression language and command-line front end
"""

from .cherednik import (
    CherednikContext,
    PBWElement,
    adjoint,
    angular_hamiltonian,
    angular_momentum,
    anticommutator,
    commutator,
    e_generator,
    exchange_antiauto,
    gamma_pm,
    hamiltonian_H,
    m_squared,
    multiply,
    pfaffian_sum,
    rho,
)
from .coxeter import (
    GroupAlgebraElement,
    GroupElement,
    MultiplicityMap,
    RootSystem,
    build_root_system,
    ga_multiply,
    invariant_sum_S,
    load_root_system,
    s_pair,
)
from .exactmath import (
    CoeffPoly,
    FracFreeSolver,
    LocPoly,
    NotDivisible,
    Rat,
    XPoly,
    locpoly_apply_reflection,
    nullspace,
    poly_divide_exact,
)
from .expr import evaluate, parse_expression, print_expression
from .polyrep import DunklContext, apply_element, dunkl_apply, nabla_apply, restrict_check, verify_hamiltonian_identity
from .subalgebra import (
    SubElement,
    SubWord,
    centralizer,
    embed,
    enumerate_basis_gl,
    enumerate_basis_so,
    normal_form_gl,
    normal_form_so,
    pbw_rank_check,
    verify_relation_suite,
)

__version__ = "0.1.0"
