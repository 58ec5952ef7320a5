"""Finite-field workbench for isogeny classes and Hecke correspondences.

The package builds exact arithmetic in towers of finite fields, decides
geometric isogeny of j-invariants through computable class labels,
evaluates classical modular polynomials, constructs verified witnesses
of isogenous point pairs on two explicit curve families, and runs
signature censuses over growing extensions.
"""

from .config import DEFAULT_CONFIG, RunConfig
from .curves import (
    IsogenyClassifier,
    IsogenyClassLabel,
    JInvariant,
    count_points,
    curve_from_j,
    j_of_curve,
    naive_count,
    quadratic_twist,
    trace_sequence,
)
from .census import (
    CensusReport,
    ParametricVariety,
    census,
    classify_goodness,
    enumerate_points,
    family_divisor_probe,
    heuristic_table,
    signature_of,
)
from .errors import (
    BudgetExceeded,
    CharTooSmall,
    CuspInput,
    ExtensionTooLarge,
    HeckelabError,
    IncompleteFactorization,
    LevelMismatch,
    MalformedData,
    NotAUnit,
    NotCoprime,
    NotPrime,
    UnknownLevel,
    ZeroShift,
)
from .fields import FieldElement, FieldTower, make_tower
from .frobsolve import frobenius_orbit, frobenius_power_matrix, solve_affine_frobenius
from .integers import (
    Factorization,
    bsgs_dlog,
    divisors,
    factor,
    fundamental_discriminant,
    is_prime,
    multiplicative_order,
)
from .modpoly import (
    HeckeEdge,
    ModularPolynomial,
    hecke_neighbors,
    isogeny_path_search,
    load_phi,
    phi_eval,
    psi_degree,
    verify_edge,
)
from .witnesses import (
    MonomialCurvePair,
    MonomialWitness,
    TranslateCurveSpec,
    TranslateWitness,
    detect_gamma,
    lambda_candidates,
    make_translate_spec,
    monomial_witness_search,
    translate_hypothesis_check,
    translate_witness_search,
    verify_monomial_witness,
    verify_translate_witness,
)

__version__ = "0.1.0"
