"""Exact computation and verification of harmonic-style alternating binomial
sum identities and their q-analogues.

The package provides:

* exact arithmetic over rationals, polynomials in q, and canonical rational
  functions (:mod:`qharmonic.exact_core`);
* Gaussian (q-binomial) polynomials and q-Pochhammer products
  (:mod:`qharmonic.qcombinatorics`);
* classical and q-analogue harmonic chain sums (:mod:`qharmonic.sums`);
* the inverse-pair transforms, generating-function involution, and connection
  matrices relating them (:mod:`qharmonic.transforms`);
* verifiers for the four identity families, symbolic and sampled
  (:mod:`qharmonic.identities`);
* a command line front end (:mod:`qharmonic.cli`).
"""

from qharmonic.exact_core import BigRat, Poly, RatFunc, as_ratfunc, binomial
from qharmonic.qcombinatorics import (
    GaussianTable,
    gaussian,
    gaussian_at,
    q_pochhammer,
    qbt_alternating_sum,
    qbt_partition_sum,
)
from qharmonic.sums import (
    ChainSumSpec,
    mhs_endpoint,
    mhs_full,
    mhs_naive_oracle,
    power_sum,
    q_mhs_endpoint,
    q_mhs_full,
    q_power_sum,
)
from qharmonic.transforms import (
    QMatrix,
    SequenceTable,
    TruncatedSeries,
    alt_binomial_cumulative,
    build_matrix,
    euler_involution_series,
    proof_basis_a,
    proof_basis_b,
    q_transform_first,
    q_transform_second,
    qmatrix_mul,
)
from qharmonic.identities import (
    IdentityReport,
    sample_points,
    sweep,
    verify_dilcher,
    verify_dilcher_q,
    verify_hernandez,
    verify_hernandez_q,
    verify_sampled,
)

__version__ = "0.1.0"

__all__ = [
    "BigRat",
    "ChainSumSpec",
    "GaussianTable",
    "IdentityReport",
    "Poly",
    "QMatrix",
    "RatFunc",
    "SequenceTable",
    "TruncatedSeries",
    "alt_binomial_cumulative",
    "as_ratfunc",
    "binomial",
    "build_matrix",
    "euler_involution_series",
    "gaussian",
    "gaussian_at",
    "mhs_endpoint",
    "mhs_full",
    "mhs_naive_oracle",
    "power_sum",
    "proof_basis_a",
    "proof_basis_b",
    "q_mhs_endpoint",
    "q_mhs_full",
    "q_pochhammer",
    "q_power_sum",
    "q_transform_first",
    "q_transform_second",
    "qbt_alternating_sum",
    "qbt_partition_sum",
    "qmatrix_mul",
    "sample_points",
    "sweep",
    "verify_dilcher",
    "verify_dilcher_q",
    "verify_hernandez",
    "verify_hernandez_q",
    "verify_sampled",
]
