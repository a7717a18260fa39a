"""Ford spheres over the Gaussian integers: exact moments and asymptotic constants.

The library computes, in exact rational arithmetic, the moments of
distances between centers of consecutive Ford spheres whose base
fractions have bounded denominator, and independently evaluates the
constants that govern their growth laws.
"""

from fordspheres.gaussint import (
    GaussianInt,
    Factorization,
    UNITS,
    canonical_associate,
    canonicalize,
    gcd_gaussian,
    xgcd_gaussian,
    factor,
    mobius_i,
    phi_i,
    divisors,
    gaussian_primes,
    phi_sieve,
    PhiTable,
    canonical_elements,
)
from fordspheres.lattice import (
    OmegaRegion,
    LatticeCountResult,
    GaussErrorProfile,
    r2,
    r2_scan,
    r2_summatory,
    count_lattice_in_disk,
    omega_area,
    count_omega_lattice,
    count_omega_coprime,
    gauss_error_profile,
    sum_inverse_norms,
)
from fordspheres.ford import (
    GaussFraction,
    FordSphere,
    DenomPairRecord,
    reduce_fraction,
    enumerate_GS,
    are_adjacent,
    are_adjacent_geometric,
    are_consecutive_denoms,
    are_consecutive_fractions,
    numerator_pairs,
    numerator_pair_count,
    consecutive_pairs,
)
from fordspheres.moments import (
    MomentValue,
    DecompositionReport,
    MomentSeries,
    moment_exact,
    moment_oracle,
    moment_batch,
    sigma_decomposition,
    moment_series,
    fit_leading,
)
from fordspheres.constants import (
    ConstantsConfig,
    PartialSumFunction,
    ConstantsTable,
    zeta_i,
    z1,
    c_constant,
    m1_coefficient,
    z_k,
    z2,
    z_k_prime,
    z_k_double_prime,
    xi_k,
    constants_report,
)

__version__ = "0.1.0"
