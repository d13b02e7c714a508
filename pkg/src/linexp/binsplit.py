"""Classical binary splitting for linearly convergent series with rational terms.

A series is described by four integer coefficient functions (a, b for the
term, p, q for the running factor); the partial sum through ``terms`` is

    S = sum_{i=0..terms} (a(i)/b(i)) * prod_{j=0..i} p(j)/q(j).

The recursion keeps everything in exact integers: for a range it returns the
factor products P, Q, B and the combined numerator T = B*Q*S, so a single
division at the end produces the value to any requested accuracy.  Two
coefficient modes exist: plain integers, and "imaginary" where p(j) carries a
factor of the imaginary unit (P tracks the collected power of i, T becomes a
Gaussian integer, Q and B stay real).

Coefficient functions are evaluated on demand and never tabulated; ranges are
split [lo, mid], [mid+1, hi], so the recursion depth for w terms is at most
ceil(log2(w)) + 1, which is checked at run time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from . import instrument
from .bignum import ComplexDyadic, Dyadic, div_to_precision, mul
from .errors import InvalidSeriesSpec, InvariantViolation

CoefficientLike = Union[int, "Coefficient"]


@dataclass(frozen=True, slots=True)
class Coefficient:
    """An integer times a power of the imaginary unit."""

    value: int
    i_power: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.i_power <= 3:
            raise ValueError("i_power must be in 0..3")


@dataclass(frozen=True)
class SeriesSpec:
    a: Callable[[int], int]
    b: Callable[[int], int]
    p: Callable[[int], CoefficientLike]
    q: Callable[[int], CoefficientLike]
    terms: int
    mode: str = "real"

    def __post_init__(self) -> None:
        if self.terms < 0:
            raise InvalidSeriesSpec("terms must be >= 0")
        if self.mode not in ("real", "imaginary"):
            raise InvalidSeriesSpec(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class PQBT:
    """Exact range summary: factor products and T = B*Q*S as a Gaussian pair."""

    p: Coefficient
    q: int
    b: int
    t: tuple[int, int]


def _rotated(re: int, im: int, k: int) -> tuple[int, int]:
    k &= 3
    if k == 0:
        return re, im
    if k == 1:
        return -im, re
    if k == 2:
        return -re, -im
    return im, -re


def _real_coeff(c: CoefficientLike, what: str) -> int:
    if isinstance(c, Coefficient):
        if c.i_power:
            raise InvalidSeriesSpec(f"{what} must be real")
        return c.value
    return c


def _any_coeff(c: CoefficientLike) -> tuple[int, int]:
    if isinstance(c, Coefficient):
        return c.value, c.i_power
    return c, 0


def _leaf_checks(spec: SeriesSpec, i: int) -> tuple[int, int, int]:
    a = spec.a(i)
    b = spec.b(i)
    q = _real_coeff(spec.q(i), "q")
    if b == 0:
        raise InvalidSeriesSpec(f"b({i}) = 0")
    if q == 0:
        raise InvalidSeriesSpec(f"q({i}) = 0")
    return a, b, q


def _rec_real(spec: SeriesSpec, i1: int, i2: int, depth: int, bound: int):
    if depth > bound:
        raise InvariantViolation("split recursion exceeded its depth bound")
    instrument.note_depth(depth)
    if i1 == i2:
        a, b, q = _leaf_checks(spec, i1)
        p = _real_coeff(spec.p(i1), "p")
        return p, q, b, mul(a, p)
    mid = (i1 + i2) >> 1
    pl, ql, bl, tl = _rec_real(spec, i1, mid, depth + 1, bound)
    pr, qr, br, tr = _rec_real(spec, mid + 1, i2, depth + 1, bound)
    t = mul(mul(br, qr), tl) + mul(mul(bl, pl), tr)
    return mul(pl, pr), mul(ql, qr), mul(bl, br), t


def _rec_gauss(spec: SeriesSpec, i1: int, i2: int, depth: int, bound: int):
    if depth > bound:
        raise InvariantViolation("split recursion exceeded its depth bound")
    instrument.note_depth(depth)
    if i1 == i2:
        a, b, q = _leaf_checks(spec, i1)
        pv, pk = _any_coeff(spec.p(i1))
        tre, tim = _rotated(mul(a, pv), 0, pk)
        return pv, pk, q, b, tre, tim
    mid = (i1 + i2) >> 1
    plv, plk, ql, bl, tlre, tlim = _rec_gauss(spec, i1, mid, depth + 1, bound)
    prv, prk, qr, br, trre, trim = _rec_gauss(spec, mid + 1, i2, depth + 1, bound)
    s = mul(br, qr)
    c = mul(bl, plv)
    rre, rim = _rotated(trre, trim, plk)
    tre = mul(s, tlre) + mul(c, rre)
    tim = mul(s, tlim) + mul(c, rim)
    return mul(plv, prv), (plk + prk) & 3, mul(ql, qr), mul(bl, br), tre, tim


def bin_split_range(spec: SeriesSpec, i1: int, i2: int) -> PQBT:
    """Exact P, Q, B, T over [i1, i2]; leaf ranges come straight from the coefficients."""
    if not 0 <= i1 <= i2 <= spec.terms:
        raise ValueError("range outside 0..terms")
    bound = (i2 - i1).bit_length() + 1
    if spec.mode == "real":
        p, q, b, t = _rec_real(spec, i1, i2, 1, bound)
        return PQBT(Coefficient(p, 0), q, b, (t, 0))
    pv, pk, q, b, tre, tim = _rec_gauss(spec, i1, i2, 1, bound)
    return PQBT(Coefficient(pv, pk), q, b, (tre, tim))


def bin_split_sum(spec: SeriesSpec, k: int) -> Dyadic | ComplexDyadic:
    """Partial sum over [0, terms] within 2^-k (componentwise in imaginary mode).

    The imaginary-mode division runs one bit deeper per component so the
    modulus error still lands under 2^-k.
    """
    res = bin_split_range(spec, 0, spec.terms)
    bq = mul(res.b, res.q)
    tre, tim = res.t
    if spec.mode == "real":
        return div_to_precision(tre, bq, k)
    return ComplexDyadic(div_to_precision(tre, bq, k + 1),
                         div_to_precision(tim, bq, k + 1))
