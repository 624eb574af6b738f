"""Exact cocycles, metaplectic-type covers, multiplier systems, and the
theta/eta transformation laws built on them, with a randomized
verification harness (`mtx.harness`) and a CLI (`mtx.cli`, installed as
``mtx``)."""

from .errors import MtxError
from .exactphase import UnitCircleExact
from .exactmat import Mat2, IDENT, OMEGA, H_MINUS1, is_member
from .numth import DirichletChar, trivial_char, legendre_char, char_mod4
# NB: the two-cocycle helpers live in mtx.cocycle; only the GL2-capable
# entry point is re-exported, so the submodule name stays importable.
from .cocycle import big_cocycle
from .metagroup import MetaElem, meta_lift, meta_mul, meta_inv, meta_conj
from .multiplier import (
    MultiplierId,
    lambda_theta,
    lambda_bar,
    lambda_bar_chi,
    nu_table,
)
from .induction import (
    MonomialMatrix,
    BlockMonomialMatrix,
    induced_matrix,
    induced_matrix_pm,
    lambda_pm,
    tensor_character,
)
from .theta import (
    ThetaSpec,
    theta_series,
    theta_vector,
    theta_matrix_pm,
    theta_vector_pm,
    eta,
    j_kappa,
    j_delta,
    slash,
    gamma2_sign,
)
from .harness import TheoremId, VerificationReport, check_theorem, run_all

__version__ = "0.1.0"

__all__ = [
    "MtxError",
    "UnitCircleExact",
    "Mat2",
    "IDENT",
    "OMEGA",
    "H_MINUS1",
    "is_member",
    "DirichletChar",
    "trivial_char",
    "legendre_char",
    "char_mod4",
    "big_cocycle",
    "MetaElem",
    "meta_lift",
    "meta_mul",
    "meta_inv",
    "meta_conj",
    "MultiplierId",
    "lambda_theta",
    "lambda_bar",
    "lambda_bar_chi",
    "nu_table",
    "MonomialMatrix",
    "BlockMonomialMatrix",
    "induced_matrix",
    "induced_matrix_pm",
    "lambda_pm",
    "tensor_character",
    "ThetaSpec",
    "theta_series",
    "theta_vector",
    "theta_matrix_pm",
    "theta_vector_pm",
    "eta",
    "j_kappa",
    "j_delta",
    "slash",
    "gamma2_sign",
    "TheoremId",
    "VerificationReport",
    "check_theorem",
    "run_all",
    "__version__",
]
