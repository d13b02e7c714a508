"""Linear-space summation of one argument block's exponential series.

A block is the value gamma = beta * 2^-2^nu sliced from the reduced
argument's binary expansion.  Its Taylor partial sum is rewritten as nested
segments

    S = s_1 + t_2*[s_2 + t_3*[s_3 + ... + t_K*s_K]]

where every segment sum s_t spans segment_len consecutive terms and the
bridge factor t_t carries the ratio between consecutive segments.  Each s_t
and t_t is produced on demand by classical binary splitting at working
accuracy 2^-work_bits, folded into a running accumulator, and dropped, so
only a constant number of work_bits-sized values is ever live: that is what
makes the whole evaluation linear in space.

With the doubled term budget (terms = bits * 2^(2-nu)) the series tail is far
below 2^-(bits+1), so the accumulator is also the block's exponential to
2^-bits; ``block_exp`` exposes it under that contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import instrument
from .bignum import (COMPLEX_ONE, DYADIC_ONE, DYADIC_ZERO, ComplexDyadic,
                     Dyadic, div_to_precision, mul)
from .binsplit import Coefficient, SeriesSpec, bin_split_sum


@dataclass(frozen=True)
class BlockParams:
    """All derived constants for one block evaluation.

    beta        signed block digits, |beta| < 2^(2^(nu-1))
    nu          block index, >= 2; the block value is beta * 2^-2^nu
    bits        accuracy exponent of the block result
    terms       term budget of the partial sum (bits * 2^(2-nu))
    segments    number of segments (log2(terms))
    segment_len terms per segment (ceil(terms / segments))
    work_bits   working accuracy exponent of the inner scheme (2*bits + 1)
    """

    beta: int
    nu: int
    bits: int
    mode: str
    terms: int
    segments: int
    segment_len: int
    work_bits: int

    @classmethod
    def make(cls, beta: int, nu: int, bits: int, mode: str = "real") -> "BlockParams":
        if nu < 2:
            raise ValueError("block index starts at 2")
        if bits < 4 or bits & (bits - 1):
            raise ValueError("bits must be a power of two >= 4")
        if mode not in ("real", "imaginary"):
            raise ValueError(f"unknown mode {mode!r}")
        if abs(beta).bit_length() > (1 << (nu - 1)):
            raise ValueError("beta wider than its block")
        shift = nu - 2
        terms = bits >> shift
        if terms < 2 or (terms << shift) != bits:
            raise ValueError("block index too large for this bit budget")
        segments = terms.bit_length() - 1
        segment_len = -(-terms // segments)
        return cls(beta, nu, bits, mode, terms, segments, segment_len, 2 * bits + 1)

    @property
    def imaginary(self) -> bool:
        return self.mode == "imaginary"

    def gamma(self) -> Dyadic:
        """The block value itself, exact."""
        return Dyadic(self.beta, 1 << self.nu)


def _segment_spec(bp: BlockParams, t: int) -> SeriesSpec:
    base = (t - 1) * bp.segment_len
    pow_shift = 1 << bp.nu
    if bp.imaginary:
        p_nonzero: object = Coefficient(bp.beta, 1)
    else:
        p_nonzero = bp.beta
    return SeriesSpec(
        a=lambda i: 1,
        b=lambda i: 1,
        p=lambda j: 1 if j == 0 else p_nonzero,
        q=lambda j: 1 if j == 0 else (base + j) << pow_shift,
        terms=bp.segment_len - 1,
        mode=bp.mode,
    )


def segment_sum(bp: BlockParams, t: int) -> Dyadic | ComplexDyadic:
    """s_t within 2^-work_bits (componentwise when the block is imaginary).

    s_t = 1 + sum_{j=1..segment_len-1} beta^j / (prod_{l=1..j} (base+l) * 2^(j*2^nu))
    with base = (t-1)*segment_len; for t = 1 this is the head of the plain
    Taylor sum.
    """
    if not 1 <= t <= bp.segments:
        raise ValueError("segment index out of range")
    if bp.beta == 0:
        return COMPLEX_ONE if bp.imaginary else DYADIC_ONE
    return bin_split_sum(_segment_spec(bp, t), bp.work_bits)


def _range_product(lo: int, hi: int) -> int:
    if lo > hi:
        return 1
    if hi - lo < 8:
        acc = lo
        for j in range(lo + 1, hi + 1):
            acc = mul(acc, j)
        return acc
    mid = (lo + hi) >> 1
    return mul(_range_product(lo, mid), _range_product(mid + 1, hi))


def _int_pow(base: int, e: int) -> int:
    acc = 1
    sq = base
    while e:
        if e & 1:
            acc = mul(acc, sq)
        e >>= 1
        if e:
            sq = mul(sq, sq)
    return acc


def segment_bridge(bp: BlockParams, t: int) -> Dyadic | ComplexDyadic:
    """t_t within 2^-work_bits: the exact term ratio between segments t-1 and t.

    t_t = beta^segment_len / (prod_{j=(t-2)L+1..(t-1)L} j * 2^(L*2^nu)),
    numerator and denominator built by balanced product trees, then one
    division to precision.
    """
    if not 2 <= t <= bp.segments:
        raise ValueError("bridge index out of range")
    if bp.beta == 0:
        return ComplexDyadic(DYADIC_ZERO, DYADIC_ZERO) if bp.imaginary else DYADIC_ZERO
    length = bp.segment_len
    lo = (t - 2) * length + 1
    hi = (t - 1) * length
    num = _int_pow(bp.beta, length)
    den = _range_product(lo, hi) << (length << bp.nu)
    if not bp.imaginary:
        return div_to_precision(num, den, bp.work_bits)
    v = div_to_precision(num, den, bp.work_bits + 1)
    return ComplexDyadic.from_real(v).times_i_power(length)


def block_series_value(bp: BlockParams) -> Dyadic | ComplexDyadic:
    """Accumulated partial sum of the block series, within 2^-(bits+1).

    Runs the nested-segment scheme: start from the last segment sum, then
    repeatedly multiply by the incoming bridge factor, add the next segment
    sum, and truncate back to work_bits (one bit deeper in imaginary mode).
    Each segment value is consumed immediately and never stored, and the
    running accumulator provably stays under 2 in absolute value, which is
    asserted on every step.
    """
    if bp.beta == 0:
        return COMPLEX_ONE if bp.imaginary else DYADIC_ONE
    keep = bp.work_bits + (1 if bp.imaginary else 0)
    h = segment_sum(bp, bp.segments)
    instrument.check_unit_bound(h, "block accumulator")
    for i in range(2, bp.segments + 1):
        v1 = segment_sum(bp, bp.segments - i + 1)
        v2 = segment_bridge(bp, bp.segments - i + 2)
        h = (v1 + v2 * h).truncate(keep)
        instrument.check_unit_bound(h, "block accumulator")
    return h


def block_exp(bp: BlockParams) -> Dyadic | ComplexDyadic:
    """exp of the block value to 2^-bits (modulus accuracy when imaginary).

    The scheme error is below 2^-(bits+1) and the discarded series tail is
    below 2^-(bits+1) as well thanks to the doubled term budget, so the
    partial-sum accumulator already meets the exp contract.
    """
    return block_series_value(bp)
