"""Block decomposition of the reduced argument and the chained exp product.

The reduced argument (|x| < 1/4, at most ``bits`` fractional bits) is sliced
into blocks of doubling width: block nu covers fractional bit positions
2^(nu-1)+1 through 2^nu, so nu runs from 2 to k+1 with bits = 2^(k+1) and the
slices reconstruct the argument exactly.  exp of the argument is then the
product of the per-block exponentials, evaluated left to right with one
truncation after each multiplication; every block exponential is produced on
demand by the linear-space block evaluator and immediately discarded, keeping
a single accumulator plus one block value live at any moment.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import instrument
from .bignum import ComplexDyadic, Dyadic
from .errors import ReductionContractError
from .linsplit import BlockParams, block_exp


@dataclass(frozen=True)
class BlockDecomposition:
    """Signed block digits of a reduced argument: value = sum beta * 2^-2^nu."""

    sign: int
    blocks: tuple[tuple[int, int], ...]  # (nu, beta) for nu = 2..k+1
    bits: int
    k: int

    def reconstruct(self) -> Dyadic:
        acc = Dyadic(0, self.bits)
        for nu, beta in self.blocks:
            acc = acc + Dyadic(beta, 1 << nu)
        return acc


def decompose_blocks(xm: Dyadic, bits: int, k: int) -> BlockDecomposition:
    """Slice the fractional bits of xm into the doubling-width blocks.

    Requires |xm| < 1/4 and xm.scale <= bits = 2^(k+1); every block digit
    carries the argument's sign, so the reconstruction is exact.
    """
    if bits != 1 << (k + 1):
        raise ValueError("bit budget must equal 2^(k+1)")
    if xm.scale > bits:
        raise ValueError("argument carries more fractional bits than the budget")
    if not xm.abs_lt_pow2(-2):
        raise ReductionContractError("block decomposition needs |x| < 1/4")
    sign = -1 if xm.mantissa < 0 else 1
    mm = abs(xm.mantissa) << (bits - xm.scale)
    blocks = []
    for nu in range(2, k + 2):
        width = 1 << (nu - 1)
        chunk = (mm >> (bits - (1 << nu))) & ((1 << width) - 1)
        blocks.append((nu, sign * chunk))
    return BlockDecomposition(sign, tuple(blocks), bits, k)


def block_product(dec: BlockDecomposition, n3: int, mode: str = "real") -> Dyadic | ComplexDyadic:
    """Product of the block exponentials, within 2^-n3 of exp of the argument.

    The accumulator is truncated to ``bits`` fractional bits after each
    multiplication (one bit deeper per component in imaginary mode) and is
    asserted to stay under 2^(i-1) at block i; with n3 + 1 <= 2^k the
    per-block accuracy 2^-bits is enough for the chained result.
    """
    bits, k = dec.bits, dec.k
    if bits < 16:
        raise ValueError("bit budget below the scheme's floor")
    if n3 + 1 > (1 << k):
        raise ValueError("target accuracy too high for this decomposition")
    keep = bits + (1 if mode == "imaginary" else 0)
    (nu0, beta0) = dec.blocks[0]
    h = block_exp(BlockParams.make(beta0, nu0, bits, mode))
    instrument.check_growth_bound(h, nu0, "block product")
    for nu, beta in dec.blocks[1:]:
        e = block_exp(BlockParams.make(beta, nu, bits, mode))
        h = (h * e).truncate(keep)
        instrument.check_growth_bound(h, nu, "block product")
    return h
