"""Exact computations with Hopf algebras, their adjoint actions and locally finite parts."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalar import QQ, Cyclotomic, Field, PrimeField, RationalFunctions, Rationals, Scalar, parse_field
from .linalg import Echelon, LinearMap, Subspace, annihilator, nullspace, solve, span
from .hopf import (
    AxiomReport,
    HopfAlgebraData,
    adjoint_action,
    coradical,
    coradical_filtration,
    dual_hopf,
    dump_hsc,
    group_algebra,
    grouplikes,
    is_left_coideal_subalgebra,
    is_pointed,
    load_hsc,
    masuoka_freeness_criterion,
    parse_hsc,
    small_quantum_sl2,
    sweedler,
    taft,
    verify_axioms,
)
from .finmod import (
    BudgetExceeded,
    ComputableModule,
    Finite,
    Generator,
    ModuleData,
    direct_sum,
    extend_scalars,
    laurent_module,
    locally_finite_part,
    orbit_closure,
    tensor_computable,
    tensor_module,
    u_double_prime,
    u_prime,
)
from .pbw import PBWElement, PresentedAlgebra, WordRewriter, adfin_probe, q_binomial, q_integer, uq_sl2, uq_sl2_quotient
from .groups import (
    DirectProduct,
    FiniteGroup,
    FreeGroup2,
    Heisenberg,
    InfiniteDihedral,
    IntegerGroup,
    fc_center_membership,
    fc_center_window,
    group_ad_module,
    parse_group,
    permutation_group,
    small_groups,
)
from .dietzmann import CoidealFamily, FiltrationReport, GroupAlgebraHost, HopfHost, PBWHost, product_filtration, straighten
