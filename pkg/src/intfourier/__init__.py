"""Integral Todd classes, Fourier transforms on tautological Chow models and integral sl2-modules."""

from .beauville import (
    CorrespondenceElement,
    TautClass,
    TautModel,
    beauville_projectors,
    build_model,
    fourier,
    lambda_class,
    mult_pull,
    mult_push,
    point_class,
    pontryagin,
)
from .char_calculus import chern_char_component, dual, fct, ftd, ftd_inv, todd_component
from .errors import DomainError, InvariantFailure, NotARepresentation, UndefinedValuation, UnsupportedModel
from .identities import (
    pappas_shape_check,
    verify_binom_identity,
    verify_dual_identity,
    verify_exact_seq_identity,
    verify_key_collapse,
    verify_tdinv_identity,
)
from .lambda_arith import (
    InvertedPrimeSet,
    LambdaScalar,
    big_t,
    divisibility_witness,
    lemma_n,
    smith_normal_form,
    smith_normal_form_mod,
    vp,
)
from .oracle import CohomologyOracle, build_oracle
from .polynomials import GradedPolynomial
from .reports import IdentityReport
from .sl2 import (
    IsotypicDecomposition,
    Sl2Module,
    build_chow_sl2,
    decompose,
    dual_module,
    flek_coefficient,
    homogeneous_split,
    sym_power,
    torsion_injectivity_demo,
    verify_flek,
)

__version__ = "0.1.0"
