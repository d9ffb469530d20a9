"""Sign statistics of Hecke eigenvalues reconstructed over real quadratic fields.

The package is organized bottom-up: exact quadratic-field arithmetic
(field_arith), twisted quadratic characters (characters), formal series
indexed by integral ideals (formal_series), the sign-extraction pipeline
(sign_pipeline), semicircle-law statistics (sato_tate), and data plumbing
for eigenvalue sources (curves, eigen_io, cli).
"""

from .characters import IdealCharacter, chi_over_norm, epsilon_tau, load_psi_table
from .curves import CURVE_REGISTRY, CurveSpec, ap_oracle, get_curve, series_from_curve
from .eigen_io import (
    cached_curve_series,
    fetch_lmfdb,
    load_fixture,
    save_fixture,
    serialize_series,
    series_from_obj,
    series_to_obj,
)
from .errors import (
    BadReduction,
    CutoffMismatch,
    EmptySample,
    EvenCharacteristic,
    FieldMismatch,
    HasseBoundViolated,
    HilbertSignsError,
    MissingPrime,
    NetworkError,
    NotIntegral,
    NotNormalized,
    NotSquarefree,
    NotTotallyPositive,
    ParseError,
    UnsupportedField,
    ValidationError,
)
from .field_arith import (
    NARROW_CLASS_NUMBER_ONE,
    FieldElement,
    IdealFactorization,
    PrimeIdeal,
    QuadField,
    Splitting,
    SquarefreeDecomposition,
    as_element,
    count_prime_ideals,
    element,
    enumerate_prime_ideals,
    factor_principal_ideal,
    kronecker_symbol,
    make_field,
    primes_upto,
    quadratic_residue_symbol,
    split_rational_prime,
    squarefree_decompose,
)
from .formal_series import (
    FormalSeries,
    c_series_from_lambda,
    character_moebius_series,
    character_zeta_series,
    euler_factor_inverse,
    extract_prime_relation,
    good_primes,
    ideal_series_from_obj,
    ideal_series_to_obj,
    series_mul,
)
from .sato_tate import (
    KsReport,
    histogram_csv,
    histogram_rows,
    histogram_svg,
    ks_statistic,
    sample_semicircle,
    semicircle_cdf,
    semicircle_mass,
    semicircle_ppf,
    synth_eigen_series,
)
from .sign_pipeline import (
    TALLY_CSV_HEADER,
    EigenvalueSeries,
    EpsilonCutoffReport,
    SignSurvey,
    SignTally,
    density_string,
    epsilon_cutoff_check,
    hecke_eigenvalue,
    lambda_sign,
    renormalize_C,
    sato_tate_coordinate,
    tally_csv_row,
    tally_signs,
    tally_to_obj,
)

__version__ = "0.1.0"

__all__ = [
    "BadReduction",
    "CURVE_REGISTRY",
    "CurveSpec",
    "CutoffMismatch",
    "EigenvalueSeries",
    "EmptySample",
    "EpsilonCutoffReport",
    "EvenCharacteristic",
    "FieldElement",
    "FieldMismatch",
    "FormalSeries",
    "HasseBoundViolated",
    "HilbertSignsError",
    "IdealCharacter",
    "IdealFactorization",
    "KsReport",
    "MissingPrime",
    "NARROW_CLASS_NUMBER_ONE",
    "NetworkError",
    "NotIntegral",
    "NotNormalized",
    "NotSquarefree",
    "NotTotallyPositive",
    "ParseError",
    "PrimeIdeal",
    "QuadField",
    "SignSurvey",
    "SignTally",
    "Splitting",
    "SquarefreeDecomposition",
    "TALLY_CSV_HEADER",
    "UnsupportedField",
    "ValidationError",
    "ap_oracle",
    "as_element",
    "c_series_from_lambda",
    "cached_curve_series",
    "character_moebius_series",
    "character_zeta_series",
    "chi_over_norm",
    "count_prime_ideals",
    "density_string",
    "element",
    "enumerate_prime_ideals",
    "epsilon_cutoff_check",
    "epsilon_tau",
    "euler_factor_inverse",
    "extract_prime_relation",
    "factor_principal_ideal",
    "fetch_lmfdb",
    "get_curve",
    "good_primes",
    "hecke_eigenvalue",
    "histogram_csv",
    "histogram_rows",
    "histogram_svg",
    "ideal_series_from_obj",
    "ideal_series_to_obj",
    "kronecker_symbol",
    "ks_statistic",
    "lambda_sign",
    "load_fixture",
    "load_psi_table",
    "make_field",
    "primes_upto",
    "quadratic_residue_symbol",
    "renormalize_C",
    "sample_semicircle",
    "sato_tate_coordinate",
    "save_fixture",
    "semicircle_cdf",
    "semicircle_mass",
    "semicircle_ppf",
    "serialize_series",
    "series_from_curve",
    "series_from_obj",
    "series_mul",
    "series_to_obj",
    "split_rational_prime",
    "squarefree_decompose",
    "synth_eigen_series",
    "tally_csv_row",
    "tally_signs",
    "tally_to_obj",
]
