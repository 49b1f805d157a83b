"""Explicit singular vectors in highest-weight modules over sl(n).

Exact rational and symbolic arithmetic throughout: weights in shifted
coordinates, reflection series with affine exponents, PBW vectors with
polynomial coefficients, and two independent annihilation checks.
"""

from .polyseries import (
    AffineExponent,
    LambdaPoly,
    Monomial,
    Series,
    TruncationRequired,
    d_op,
    eta,
    eta_pow,
    falling_factorial,
    series_from_json,
    series_latex,
    series_text,
    series_to_json,
    weight_decompose,
    zeta,
    zeta_eigenvalue,
)
from .rootdata import (
    Root,
    SymbolicWeightError,
    Weight,
    cartan_entry,
    dot_apply_word,
    dot_reflect,
    pairing,
    positive_roots,
    reduced_word,
    simple_roots,
    strongly_linked_below,
    strongly_linked_chain,
    word_permutation,
)
from .pbw import (
    GammaIndex,
    NonWeightVectorError,
    PBWVector,
    common_weight,
    is_singular,
    lower_action,
    pbw_from_json,
    pbw_latex,
    pbw_multiply,
    pbw_text,
    pbw_to_json,
    pbw_weight,
    raise_action,
    straighten_lowering,
    tau_inverse,
    tau_map,
)
from .weylaction import (
    closed_form_complete,
    enumerate_gamma_kl,
    polynomiality_check,
    s_alpha_closed_form,
    sigma_of_one,
    simple_reflection,
)
from .singvec import (
    ChainStepError,
    PairingConstraintError,
    compose_chain,
    enumerate_gamma_klm,
    singular_vector,
    symbolic_weight_with_pairing,
)

__version__ = "0.1.0"
