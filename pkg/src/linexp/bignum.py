"""Integer and dyadic fixed-point arithmetic; every other module computes through here.

Integers are Python ints (sign carried by the int itself); the limb view --
little-endian base-2^LIMB_BITS digits with no leading zero limb -- is exposed
via to_limbs/from_limbs and is the representation the multiplication
algorithms are defined over.  Products whose smaller factor exceeds
KARATSUBA_THRESHOLD_LIMBS limbs go through the explicit Karatsuba recursion
in this module (splitting on limb boundaries); below the threshold operands
are handed to the host multiply, whose cost is bounded by the threshold.
``mul_schoolbook`` is the independent quadratic reference path used by the
test suite to cross-check the Karatsuba path bit for bit.

Dyadic values are mantissa * 2^-scale with scale >= 0.  No canonical form is
enforced (trailing zero bits are fine).  All truncation is toward zero, which
makes every downstream pipeline exactly symmetric under sign flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

LIMB_BITS = 64
# Crossover measured on CPython 3.10; configurable, tests are base-independent.
KARATSUBA_THRESHOLD_LIMBS = 256

# Below either bound, host division is cheaper than a Newton reciprocal.
# The quotient gate keeps every block-summation division on one path across
# the benchmarked range, so the allocation profile stays size-uniform.
_NEWTON_DIV_MIN_QBITS = 24576
_NEWTON_DIV_MIN_DBITS = 4096


# ---------------------------------------------------------------------------
# limb view


def to_limbs(x: int, limb_bits: int | None = None) -> list[int]:
    """Little-endian base-2^limb_bits digits of |x|; empty for zero."""
    lb = LIMB_BITS if limb_bits is None else limb_bits
    mask = (1 << lb) - 1
    m = abs(x)
    out = []
    while m:
        out.append(m & mask)
        m >>= lb
    return out


def from_limbs(limbs: list[int], sign: int = 1, limb_bits: int | None = None) -> int:
    lb = LIMB_BITS if limb_bits is None else limb_bits
    acc = 0
    for d in reversed(limbs):
        if not 0 <= d < (1 << lb):
            raise ValueError("limb out of range")
        acc = (acc << lb) | d
    if limbs and limbs[-1] == 0:
        raise ValueError("leading zero limb")
    return sign * acc


# ---------------------------------------------------------------------------
# multiplication


def _karatsuba(a: int, b: int, cutoff_bits: int, limb_bits: int) -> int:
    # a, b >= 0
    if a == 0 or b == 0:
        return 0
    na = a.bit_length()
    nb = b.bit_length()
    if na < nb:
        a, b, na, nb = b, a, nb, na
    if nb <= cutoff_bits:
        return a * b
    h = (na >> 1) // limb_bits * limb_bits
    if h == 0:
        return a * b
    mask = (1 << h) - 1
    a1, a0 = a >> h, a & mask
    b1, b0 = b >> h, b & mask
    z2 = _karatsuba(a1, b1, cutoff_bits, limb_bits)
    z0 = _karatsuba(a0, b0, cutoff_bits, limb_bits)
    z1 = _karatsuba(a1 + a0, b1 + b0, cutoff_bits, limb_bits) - z2 - z0
    return (z2 << (2 * h)) + (z1 << h) + z0


def mul(a: int, b: int) -> int:
    """Exact signed product.

    Dispatches on the smaller factor's limb count: at or below the Karatsuba
    threshold the host multiply is used directly, above it the recursion in
    ``_karatsuba`` splits both factors on a limb boundary until the pieces
    fall under the threshold.
    """
    if a == 0 or b == 0:
        return 0
    cutoff = KARATSUBA_THRESHOLD_LIMBS * LIMB_BITS
    if a.bit_length() <= cutoff or b.bit_length() <= cutoff:
        return a * b
    negative = (a < 0) != (b < 0)
    p = _karatsuba(abs(a), abs(b), cutoff, LIMB_BITS)
    return -p if negative else p


def mul_karatsuba(a: int, b: int, threshold_bits: int | None = None,
                  limb_bits: int | None = None) -> int:
    """Force the Karatsuba path regardless of size (test hook)."""
    if a == 0 or b == 0:
        return 0
    lb = LIMB_BITS if limb_bits is None else limb_bits
    cutoff = threshold_bits if threshold_bits is not None else 2 * lb
    negative = (a < 0) != (b < 0)
    p = _karatsuba(abs(a), abs(b), max(cutoff, lb), lb)
    return -p if negative else p


def mul_schoolbook(a: int, b: int, limb_bits: int | None = None) -> int:
    """Quadratic long multiplication over explicit limbs.

    The reference path: every limb product is formed and carried by hand.
    Kept independent of ``mul`` so the two can oracle-check each other.
    """
    if a == 0 or b == 0:
        return 0
    lb = LIMB_BITS if limb_bits is None else limb_bits
    mask = (1 << lb) - 1
    negative = (a < 0) != (b < 0)
    al = to_limbs(a, lb)
    blimbs = to_limbs(b, lb)
    out = [0] * (len(al) + len(blimbs))
    for i, x in enumerate(al):
        carry = 0
        k = i
        for y in blimbs:
            t = out[k] + x * y + carry
            out[k] = t & mask
            carry = t >> lb
            k += 1
        out[k] += carry
    acc = 0
    for d in reversed(out):
        acc = (acc << lb) | d
    return -acc if negative else acc


# ---------------------------------------------------------------------------
# division


def _invert_approx(d: int, prec: int) -> int:
    """Approximation of floor(2^(d.bit_length() + prec) / d), within a few ulps.

    Newton doubling from a 63-bit seed; per-step truncation keeps every
    intermediate at the working width, the caller absorbs the slack.
    """
    db = d.bit_length()
    seed_bits = 63
    if db <= seed_bits:
        return (1 << (db + prec)) // d
    x = (1 << (2 * seed_bits)) // ((d >> (db - seed_bits)) + 1)
    p = seed_bits
    while p < prec:
        p2 = min(2 * p, prec)
        e = (1 << (db + p)) - mul(d, x)
        if e >= 0:
            corr = mul(e, x) >> (db + 2 * p - p2)
        else:
            corr = -(mul(-e, x) >> (db + 2 * p - p2))
        x = (x << (p2 - p)) + corr
        p = p2
    return x


def _floor_div_pos(n: int, d: int) -> int:
    """floor(n / d) for n >= 0, d > 0, via Newton reciprocal when large."""
    nb = n.bit_length()
    db = d.bit_length()
    if nb < db:
        return 0
    qbits = nb - db + 1
    if qbits < _NEWTON_DIV_MIN_QBITS or db < _NEWTON_DIV_MIN_DBITS:
        return n // d
    prec = qbits + 32
    # Reciprocal only needs the divisor's top prec+32 bits; +1 biases the
    # estimate low so the correction below almost always steps upward.
    drop = max(0, db - (prec + 32))
    dh = (d >> drop) + 1 if drop else d
    r = _invert_approx(dh, prec)
    q = mul(n >> drop, r) >> (dh.bit_length() + prec)
    rem = n - mul(q, d)
    if rem < 0:
        adj = (-rem + d - 1) // d
        q -= adj
        rem += mul(adj, d)
    if rem >= d:
        adj = rem // d
        q += adj
        rem -= mul(adj, d)
    assert 0 <= rem < d
    return q


def div_to_precision(num: int, den: int, k: int) -> "Dyadic":
    """Dyadic quotient with |result - num/den| <= 2^-(k+2), scale k+2.

    Shifts the numerator left k+2 bits and truncates the integer quotient
    toward zero, so the advertised 2^-k bound holds with two guard bits.
    """
    if den == 0:
        raise ZeroDivisionError("division by zero")
    if num == 0:
        return Dyadic(0, 0)
    if k < 0:
        raise ValueError("accuracy exponent must be >= 0")
    negative = (num < 0) != (den < 0)
    q = _floor_div_pos(abs(num) << (k + 2), abs(den))
    return Dyadic(-q if negative else q, k + 2)


# ---------------------------------------------------------------------------
# dyadic fixed point


@dataclass(frozen=True, slots=True)
class Dyadic:
    """Exact value mantissa * 2^-scale, scale >= 0."""

    mantissa: int
    scale: int

    def __post_init__(self) -> None:
        if self.scale < 0:
            raise ValueError("negative scale")

    # -- exact arithmetic ---------------------------------------------------

    def __add__(self, other: "Dyadic") -> "Dyadic":
        s1, s2 = self.scale, other.scale
        if s1 == s2:
            return Dyadic(self.mantissa + other.mantissa, s1)
        if s1 < s2:
            return Dyadic((self.mantissa << (s2 - s1)) + other.mantissa, s2)
        return Dyadic(self.mantissa + (other.mantissa << (s1 - s2)), s1)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.scale)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(mul(self.mantissa, other.mantissa), self.scale + other.scale)

    def div_pow2(self, e: int) -> "Dyadic":
        """Exact division by 2^e (scale shift only)."""
        if e < 0:
            raise ValueError("negative shift")
        return Dyadic(self.mantissa, self.scale + e)

    # -- truncation ---------------------------------------------------------

    def truncate(self, frac_bits: int) -> "Dyadic":
        """Drop fractional bits beyond frac_bits, toward zero.

        Result scale <= frac_bits (unchanged if already within);
        |result - self| < 2^-frac_bits and |result| <= |self|.
        """
        if self.scale <= frac_bits:
            return self
        drop = self.scale - frac_bits
        m = self.mantissa
        m = -((-m) >> drop) if m < 0 else m >> drop
        return Dyadic(m, frac_bits)

    def align(self, scale: int) -> "Dyadic":
        """Same value re-expressed at exactly the given (larger) scale."""
        if scale < self.scale:
            raise ValueError("align cannot drop bits; use truncate")
        return Dyadic(self.mantissa << (scale - self.scale), scale)

    # -- comparisons & predicates -------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        d = (self - other).mantissa
        return (d > 0) - (d < 0)

    def __lt__(self, other: "Dyadic") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "Dyadic") -> bool:
        return self._cmp(other) <= 0

    def equals_value(self, other: "Dyadic") -> bool:
        return self._cmp(other) == 0

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def abs_lt_pow2(self, e: int) -> bool:
        """|value| < 2^e, exactly, in O(1)."""
        t = e + self.scale
        am = abs(self.mantissa)
        if t < 0:
            return am == 0
        return am.bit_length() <= t

    def abs_le_pow2(self, e: int) -> bool:
        t = e + self.scale
        am = abs(self.mantissa)
        if t < 0:
            return am == 0
        return am.bit_length() <= t or am == (1 << t)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale)

    def __repr__(self) -> str:  # compact, round-trippable enough for debugging
        return f"Dyadic({self.mantissa:#x}, scale={self.scale})"


DYADIC_ZERO = Dyadic(0, 0)
DYADIC_ONE = Dyadic(1, 0)


@dataclass(frozen=True, slots=True)
class ComplexDyadic:
    """Pair of dyadics; componentwise accuracy 2^-(n+1) gives modulus 2^-n."""

    re: Dyadic
    im: Dyadic

    @classmethod
    def from_real(cls, x: Dyadic) -> "ComplexDyadic":
        return cls(x, DYADIC_ZERO)

    def __add__(self, other: "ComplexDyadic") -> "ComplexDyadic":
        return ComplexDyadic(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexDyadic") -> "ComplexDyadic":
        return ComplexDyadic(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexDyadic":
        return ComplexDyadic(-self.re, -self.im)

    def __mul__(self, other: "ComplexDyadic") -> "ComplexDyadic":
        return ComplexDyadic(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    def scale_by(self, x: Dyadic) -> "ComplexDyadic":
        return ComplexDyadic(x * self.re, x * self.im)

    def times_i_power(self, k: int) -> "ComplexDyadic":
        k &= 3
        if k == 0:
            return self
        if k == 1:
            return ComplexDyadic(-self.im, self.re)
        if k == 2:
            return ComplexDyadic(-self.re, -self.im)
        return ComplexDyadic(self.im, -self.re)

    def conjugate(self) -> "ComplexDyadic":
        return ComplexDyadic(self.re, -self.im)

    def truncate(self, frac_bits: int) -> "ComplexDyadic":
        return ComplexDyadic(self.re.truncate(frac_bits), self.im.truncate(frac_bits))

    def div_pow2(self, e: int) -> "ComplexDyadic":
        return ComplexDyadic(self.re.div_pow2(e), self.im.div_pow2(e))

    def squared_modulus(self) -> Dyadic:
        return self.re * self.re + self.im * self.im


COMPLEX_ONE = ComplexDyadic(DYADIC_ONE, DYADIC_ZERO)


def pow_by_squaring(v: Dyadic | ComplexDyadic, s: int, work_bits: int):
    """v^s for a power-of-two s, by log2(s) squarings truncated at work_bits.

    The initial truncation (and each one after a squaring) is toward zero;
    complex squaring is exact componentwise before its truncation.
    """
    if s < 1 or s & (s - 1):
        raise ValueError("power must be a positive power of two")
    if work_bits < 0:
        raise ValueError("negative working precision")
    acc = v.truncate(work_bits)
    for _ in range(s.bit_length() - 1):
        acc = (acc * acc).truncate(work_bits)
    return acc
