"""linexp: exp, sin, cos, sinh, cosh to any absolute accuracy 2^-n on |z| <= 2^p,
summed in linear space and quasi-linear time."""

from .bignum import (ComplexDyadic, Dyadic, div_to_precision, mul,
                     mul_karatsuba, mul_schoolbook, pow_by_squaring)
from .binsplit import PQBT, Coefficient, SeriesSpec, bin_split_range, bin_split_sum
from .errors import (InvalidSeriesSpec, InvariantViolation, MalformedOracle,
                     ReductionContractError)
from .expfuncs import (ArgumentOracle, PrecisionPlan, classic_reduced, cos_c,
                       cosh_c, dyadic_oracle, exp_complex, exp_imaginary,
                       exp_real, negated_oracle, plan_precision,
                       rational_oracle, ref_eval, sin_c, sinh_c)
from .fee import BlockDecomposition, block_product, decompose_blocks
from .linsplit import BlockParams, block_exp, block_series_value, segment_bridge, segment_sum

__all__ = [
    "ArgumentOracle", "BlockDecomposition", "BlockParams", "Coefficient",
    "ComplexDyadic", "Dyadic", "InvalidSeriesSpec", "InvariantViolation",
    "MalformedOracle", "PQBT", "PrecisionPlan", "ReductionContractError",
    "SeriesSpec", "bin_split_range", "bin_split_sum", "block_exp",
    "block_product", "block_series_value", "classic_reduced", "cos_c",
    "cosh_c", "decompose_blocks", "div_to_precision", "dyadic_oracle",
    "exp_complex", "exp_imaginary", "exp_real", "mul", "mul_karatsuba",
    "mul_schoolbook", "negated_oracle", "plan_precision", "pow_by_squaring",
    "rational_oracle", "ref_eval", "segment_bridge", "segment_sum", "sin_c",
    "sinh_c",
]
