"""Top-level constructive functions: exp over reals / imaginary axis / complex
arguments, the derived trigonometric and hyperbolic functions, precision
planning, and the independent reference oracle.

Arguments come in as oracles: a callable that maps an accuracy exponent q to
a dyadic within 2^-q of the argument, carrying exactly q+2 fractional bits.
One evaluation queries its oracle once, divides by s = 2^(p+3) (an exact
scale shift) to land in |x'| <= 1/8, evaluates exp there -- either through
the linear-space block product or through one classical full-series
splitting -- and undoes the reduction by raising to the s-th power by
repeated squaring at a guarded working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bignum import (COMPLEX_ONE, DYADIC_ONE, ComplexDyadic, Dyadic,
                     div_to_precision, pow_by_squaring)
from .binsplit import Coefficient, SeriesSpec, bin_split_sum
from .errors import MalformedOracle, ReductionContractError
from .fee import block_product, decompose_blocks


@dataclass(frozen=True)
class ArgumentOracle:
    """query(q) -> Dyadic within 2^-q of the argument, scale exactly q+2."""

    query: Callable[[int], Dyadic]


def dyadic_oracle(x: Dyadic) -> ArgumentOracle:
    """Oracle for an exactly known dyadic argument."""
    def query(q: int) -> Dyadic:
        return x.truncate(q + 2).align(q + 2)
    return ArgumentOracle(query)


def rational_oracle(num: int, den: int) -> ArgumentOracle:
    """Oracle for the rational num/den (handy for full-precision test points)."""
    if den == 0:
        raise ZeroDivisionError("rational oracle with zero denominator")
    def query(q: int) -> Dyadic:
        return div_to_precision(num, den, q).align(q + 2)
    return ArgumentOracle(query)


def negated_oracle(o: ArgumentOracle) -> ArgumentOracle:
    return ArgumentOracle(lambda q: -o.query(q))


@dataclass(frozen=True)
class PrecisionPlan:
    """Every derived precision for one evaluation at accuracy 2^-n, |z| <= 2^p.

    n1  accuracy exponent needed for the reduced exponential
    n3  series accuracy exponent (n1 + 1)
    k   smallest k with n3 + 1 <= 2^k
    m   block bit budget, 2^(k+1)
    p1  reduction shift (p + 3); s = 2^p1 is the power undone at the end
    w   working fractional bits of the final repeated squaring
    """

    n: int
    p: int
    n1: int
    n3: int
    k: int
    m: int
    p1: int
    s: int
    w: int


def _ceil_log2e_times(p: int) -> int:
    # ceil(1.4427 * 2^p): covers the magnitude growth exp(2^p) = 2^(log2(e)*2^p)
    return -((-14427 << p) // 10000)


def plan_precision(n: int, p: int) -> PrecisionPlan:
    """Fix all derived precisions.

    n1 adds to n: two bits per squaring of the unreduction (2*(p+3)), the
    output magnitude allowance ceil(1.4427*2^p), and 8 guard bits; the final
    squarings run at w = n3 + 2*(p+3) + 8 fractional bits.
    """
    if n < 1:
        raise ValueError("accuracy exponent must be >= 1")
    if p < 0:
        raise ValueError("area exponent must be >= 0")
    n1 = n + 2 * (p + 3) + _ceil_log2e_times(p) + 8
    n3 = n1 + 1
    k = (n3 + 1).bit_length() - 1
    if (1 << k) < n3 + 1:
        k += 1
    m = 1 << (k + 1)
    p1 = p + 3
    w = n3 + 2 * (p + 3) + 8
    plan = PrecisionPlan(n, p, n1, n3, k, m, p1, 1 << p1, w)
    assert plan.m >= plan.n1 + 3 and plan.n3 + 1 <= (1 << plan.k)
    return plan


def _reduced_argument(oracle: ArgumentOracle, plan: PrecisionPlan,
                      arg_bits: int) -> Dyadic:
    """Query, divide by 2^p1 (exact shift), truncate to arg_bits fractional bits.

    The result is within 2^-(arg_bits-1) of the true reduced argument and is
    checked against the reduction contract |x'| <= 1/8 (+ one truncation ulp).
    """
    qn = max(1, arg_bits - plan.p1)
    x = oracle.query(qn)
    if not isinstance(x, Dyadic) or x.scale != qn + 2:
        raise MalformedOracle(f"oracle returned scale {getattr(x, 'scale', None)!r}, "
                              f"expected {qn + 2}")
    xr = x.div_pow2(plan.p1).truncate(arg_bits)
    # |x| <= 2^p plus the oracle's 2^-qn slop, divided by 2^(p+3), plus the
    # truncation ulp: anything beyond this is a broken argument contract.
    limit = (Fraction(1, 8) + Fraction(1, 2 ** (qn + plan.p1))
             + Fraction(1, 2 ** arg_bits))
    if abs(xr.to_fraction()) > limit:
        raise ReductionContractError("reduced argument outside |x'| <= 1/8")
    return xr


def _taylor_terms(k: int) -> int:
    """Smallest N with N! > 2^(k+1), by scanning the factorial's growth."""
    threshold = 1 << (k + 1)
    f = 1
    n = 0
    while f <= threshold:
        n += 1
        f *= n
    return n


def classic_reduced(xm: Dyadic, n3: int, mode: str = "real") -> Dyadic | ComplexDyadic:
    """One classical splitting over the full Taylor series of the reduced argument.

    The benchmark baseline: exact integer products over the whole term range,
    one final division.  Needs |xm| <= 1/8 so the factorial tail bound holds;
    the result is within 2^-n3 of exp(xm) (of exp(i*xm) in imaginary mode).
    """
    if xm.is_zero():
        return COMPLEX_ONE if mode == "imaginary" else DYADIC_ONE
    target = n3 + 1
    terms = _taylor_terms(target)
    mant = xm.mantissa
    sc = xm.scale
    p_tail: object = Coefficient(mant, 1) if mode == "imaginary" else mant
    spec = SeriesSpec(
        a=lambda i: 1,
        b=lambda i: 1,
        p=lambda j: 1 if j == 0 else p_tail,
        q=lambda j: 1 if j == 0 else j << sc,
        terms=terms,
        mode=mode,
    )
    return bin_split_sum(spec, target)


def _eval_reduced(oracle: ArgumentOracle, plan: PrecisionPlan, mode: str,
                  method: str) -> Dyadic | ComplexDyadic:
    if method == "linspace":
        xm = _reduced_argument(oracle, plan, plan.m)
        dec = decompose_blocks(xm, plan.m, plan.k)
        return block_product(dec, plan.n3, mode)
    if method == "classic":
        xm = _reduced_argument(oracle, plan, plan.n1 + 8)
        return classic_reduced(xm, plan.n3, mode)
    raise ValueError(f"unknown method {method!r}")


def exp_real(oracle: ArgumentOracle, n: int, p: int = 0,
             method: str = "linspace") -> Dyadic:
    """exp(x) within 2^-n for |x| <= 2^p, as a dyadic with n+2 fractional bits."""
    plan = plan_precision(n, p)
    v = _eval_reduced(oracle, plan, "real", method)
    return pow_by_squaring(v, plan.s, plan.w).truncate(n + 2)


def exp_imaginary(oracle: ArgumentOracle, n: int, p: int = 0,
                  method: str = "linspace") -> ComplexDyadic:
    """exp(i*y) within 2^-n (modulus) for |y| <= 2^p; components at n+2 bits."""
    plan = plan_precision(n, p)
    v = _eval_reduced(oracle, plan, "imaginary", method)
    return pow_by_squaring(v, plan.s, plan.w).truncate(n + 2)


def exp_complex(oracle_x: ArgumentOracle, oracle_y: ArgumentOracle, n: int,
                p: int = 0, method: str = "linspace") -> ComplexDyadic:
    """exp(x + i*y) within 2^-n in modulus for |x|, |y| <= 2^p."""
    plan = plan_precision(n, p)
    v1 = _eval_reduced(oracle_x, plan, "real", method)
    v2 = _eval_reduced(oracle_y, plan, "imaginary", method)
    combined = v2.scale_by(v1)
    return pow_by_squaring(combined, plan.s, plan.w).truncate(n + 2)


# -- derived functions -------------------------------------------------------
#
# Each one makes two exp evaluations at n+4 bits, combines them exactly
# (sum/difference, rotation by a power of i, halving by a scale shift), and
# truncates to n+2 fractional bits, which keeps the total inside 2^-n.


def sin_c(oracle_x: ArgumentOracle, oracle_y: ArgumentOracle, n: int,
          p: int = 0, method: str = "linspace") -> ComplexDyadic:
    """sin(z) = -i * (e^{iz} - e^{-iz}) / 2, within 2^-n in modulus."""
    a = exp_complex(negated_oracle(oracle_y), oracle_x, n + 4, p, method)
    b = exp_complex(oracle_y, negated_oracle(oracle_x), n + 4, p, method)
    return (a - b).times_i_power(3).div_pow2(1).truncate(n + 2)


def cos_c(oracle_x: ArgumentOracle, oracle_y: ArgumentOracle, n: int,
          p: int = 0, method: str = "linspace") -> ComplexDyadic:
    """cos(z) = (e^{iz} + e^{-iz}) / 2, within 2^-n in modulus."""
    a = exp_complex(negated_oracle(oracle_y), oracle_x, n + 4, p, method)
    b = exp_complex(oracle_y, negated_oracle(oracle_x), n + 4, p, method)
    return (a + b).div_pow2(1).truncate(n + 2)


def sinh_c(oracle_x: ArgumentOracle, oracle_y: ArgumentOracle, n: int,
           p: int = 0, method: str = "linspace") -> ComplexDyadic:
    """sinh(z) = (e^z - e^{-z}) / 2, within 2^-n in modulus."""
    a = exp_complex(oracle_x, oracle_y, n + 4, p, method)
    b = exp_complex(negated_oracle(oracle_x), negated_oracle(oracle_y), n + 4, p, method)
    return (a - b).div_pow2(1).truncate(n + 2)


def cosh_c(oracle_x: ArgumentOracle, oracle_y: ArgumentOracle, n: int,
           p: int = 0, method: str = "linspace") -> ComplexDyadic:
    """cosh(z) = (e^z + e^{-z}) / 2, within 2^-n in modulus."""
    a = exp_complex(oracle_x, oracle_y, n + 4, p, method)
    b = exp_complex(negated_oracle(oracle_x), negated_oracle(oracle_y), n + 4, p, method)
    return (a + b).div_pow2(1).truncate(n + 2)


# -- independent reference oracle --------------------------------------------


def _tz_shift(v: int, s: int) -> int:
    return -((-v) >> s) if v < 0 else v >> s


def _tz_div(v: int, d: int) -> int:
    return -((-v) // d) if v < 0 else v // d


def ref_eval(func: str, x: Dyadic, bits: int) -> Dyadic | ComplexDyadic:
    """Brute-force term-by-term Taylor summation, within 2^-bits; |x| <= 4.

    Fixed point at 4*bits fractional bits, every term derived from the last
    by one multiply and one small division, truncation toward zero so the
    loop provably terminates.  Uses the host arithmetic directly: this is
    the independent route the fast evaluators are checked against.
    """
    if func not in ("exp", "expi"):
        raise ValueError("func must be 'exp' or 'expi'")
    if not x.abs_le_pow2(2):
        raise ValueError("reference oracle needs |x| <= 4")
    g = 4 * max(bits, 4)
    xt = x if x.scale <= g else x.truncate(g)
    big = xt.mantissa << (g - xt.scale)
    if func == "exp":
        term = 1 << g
        acc = term
        i = 0
        while term:
            i += 1
            term = _tz_div(_tz_shift(term * big, g), i)
            acc += term
        return Dyadic(acc, g).truncate(bits + 6)
    tre, tim = 1 << g, 0
    are, aim = tre, tim
    i = 0
    while tre or tim:
        i += 1
        tre, tim = (_tz_div(_tz_shift(-tim * big, g), i),
                    _tz_div(_tz_shift(tre * big, g), i))
        are += tre
        aim += tim
    return ComplexDyadic(Dyadic(are, g).truncate(bits + 6),
                         Dyadic(aim, g).truncate(bits + 6))
