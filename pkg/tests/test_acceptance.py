"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
complete.  The space/time criteria share a single benchmark matrix (the last
two tests); on this pure-Python environment the classical baseline at
n = 2^16 dominates the wall time (tens of minutes, see README).
"""

import random
from fractions import Fraction

import pytest

from linexp import instrument
from linexp.bignum import ComplexDyadic, Dyadic, mul_karatsuba, mul_schoolbook
from linexp.cli import bench_runs, fit_linear, format_dec
from linexp.expfuncs import (cos_c, cosh_c, dyadic_oracle, exp_complex,
                             exp_imaginary, exp_real, ref_eval, sin_c, sinh_c)
from linexp.fee import block_product, decompose_blocks
from linexp.linsplit import BlockParams, block_series_value

E_DIGITS_30 = "2.718281828459045235360287471352"
SIN1_DIGITS_20 = "0.84147098480789650665"

COMPLEX_UNIT = ComplexDyadic(Dyadic(1, 0), Dyadic(0, 0))


def eps(n):
    return Fraction(1, 2 ** n)


def report(num, name, ok, detail=""):
    tail = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"criterion {num} {name}: {detail}"


def rand_component(rng, p):
    # |value| <= 2^(p-1), so a pair stays inside |z| <= 2^p
    scale = rng.randrange(2, 48)
    bound = 1 << (scale + p - 1)
    return Dyadic(rng.randrange(-bound, bound + 1), scale)


# ---------------------------------------------------------------------------
# 1. oracle correctness


def test_criterion_1_oracle_correctness():
    rng = random.Random(0xC0FFEE)
    worst = Fraction(0)
    for n in (64, 256, 1024):
        for p in (0, 2):
            tol_sq = eps(n) ** 2
            tol_comp = eps(n - 1)
            for _ in range(100):
                x = rand_component(rng, p)
                y = rand_component(rng, p)
                ox, oy = dyadic_oracle(x), dyadic_oracle(y)
                ref_x = ref_eval("exp", x, n + 22)
                ref_y = ref_eval("expi", y, n + 22)

                vc = exp_complex(ox, oy, n, p)
                diff_sq = (vc - ref_y.scale_by(ref_x)).squared_modulus().to_fraction()
                assert diff_sq <= tol_sq, (n, p, x, y, "complex")

                vr = exp_real(ox, n, p)
                dr = abs((vr - ref_x).to_fraction())
                assert dr <= tol_comp, (n, p, x, "real")

                vi = exp_imaginary(oy, n, p)
                assert abs((vi.re - ref_y.re).to_fraction()) <= tol_comp
                assert abs((vi.im - ref_y.im).to_fraction()) <= tol_comp
                if n == 1024:
                    worst = max(worst, dr * 2 ** n)
    report(1, "oracle correctness", True,
           f"600 args x 3 families; worst real-axis error {float(worst):.3g} * 2^-1024")


# ---------------------------------------------------------------------------
# 2. cross-method equivalence


def test_criterion_2_cross_method():
    rng = random.Random(0xBEEF)
    for n in (64, 1024):
        for _ in range(20):
            scale = rng.randrange(6, 40)
            mant = rng.randrange(-(1 << (scale - 3)), (1 << (scale - 3)) + 1)
            x = Dyadic(mant, scale)          # |x| <= 1/8
            o = dyadic_oracle(x)
            ref = ref_eval("exp", x, n + 22)
            for method in ("linspace", "classic"):
                v = exp_real(o, n, 0, method)
                assert abs((v - ref).to_fraction()) <= eps(n), (n, method, x)
    report(2, "cross-method equivalence", True, "n in {64, 1024}, 20 args each")


# ---------------------------------------------------------------------------
# 3. running-bound suite


def test_criterion_3_bound_suite():
    rng = random.Random(0x1EA5)

    # running bound checks are live and did not fire during a representative run
    instrument.reset()
    exp_complex(dyadic_oracle(Dyadic(rng.randrange(-2 ** 20, 2 ** 20), 22)),
                dyadic_oracle(Dyadic(rng.randrange(-2 ** 20, 2 ** 20), 22)), 256, 0)
    snap = instrument.snapshot()
    assert snap.unit_bound_checks > 0 and snap.growth_bound_checks > 0

    # accumulator error bound against the exact rational chain, 50 configs
    checked4 = 0
    while checked4 < 50:
        m = rng.choice((16, 32, 64))
        nu = rng.randrange(2, m.bit_length())
        if m >> (nu - 2) < 2:
            continue
        width = min(1 << (nu - 1), 40)
        beta = rng.randrange(-(2 ** width) + 1, 2 ** width)
        if beta == 0:
            continue
        bp = BlockParams.make(beta, nu, m)
        h = block_series_value(bp)

        def seg(t):
            base = (t - 1) * bp.segment_len
            total = Fraction(1)
            term = Fraction(1)
            for j in range(1, bp.segment_len):
                term *= Fraction(bp.beta, (base + j) << (1 << bp.nu))
                total += term
            return total

        def bridge(t):
            den = 1
            for j in range((t - 2) * bp.segment_len + 1,
                           (t - 1) * bp.segment_len + 1):
                den *= j
            return Fraction(bp.beta ** bp.segment_len,
                            den << (bp.segment_len << bp.nu))

        exact = seg(bp.segments)
        for i in range(2, bp.segments + 1):
            exact = seg(bp.segments - i + 1) + bridge(bp.segments - i + 2) * exact
        assert abs(h.to_fraction() - exact) < eps(bp.work_bits - bp.segments), \
            (m, nu, beta)
        checked4 += 1

    # chained-product error bound against high-guard references, 50 configs
    for trial in range(50):
        m, k = (32, 4) if trial % 2 else (64, 5)
        mant = rng.getrandbits(m - 3)
        x = Dyadic(rng.choice([1, -1]) * mant, m)
        dec = decompose_blocks(x, m, k)
        h = block_product(dec, (1 << k) - 1, "real")
        prod = Fraction(1)
        for nu, beta in dec.blocks:
            if beta:
                prod *= ref_eval("exp", Dyadic(beta, 1 << nu), 8 * m).to_fraction()
        assert abs(h.to_fraction() - prod) < eps(m - 2 * (k + 1)), (m, k, x)

    report(3, "bound suite", True,
           "bounds live, 50 accumulator configs, 50 product chains")


# ---------------------------------------------------------------------------
# 6. identity suite (fast criteria first; 4 and 5 run the long benchmark last)


def test_criterion_6_identities():
    rng = random.Random(0x1D)
    n = 256
    tol_sq = (eps(n - 4)) ** 2
    for _ in range(25):
        x = rand_component(rng, 0)
        y = rand_component(rng, 0)
        ox, oy = dyadic_oracle(x), dyadic_oracle(y)
        nox, noy = dyadic_oracle(-x), dyadic_oracle(-y)

        prod = exp_complex(ox, oy, n) * exp_complex(nox, noy, n)
        assert (prod - COMPLEX_UNIT).squared_modulus().to_fraction() <= tol_sq

        s = sin_c(ox, oy, n)
        c = cos_c(ox, oy, n)
        assert (s * s + c * c - COMPLEX_UNIT).squared_modulus().to_fraction() <= tol_sq

        sh = sinh_c(ox, oy, n)
        ch = cosh_c(ox, oy, n)
        assert (ch * ch - sh * sh - COMPLEX_UNIT).squared_modulus().to_fraction() <= tol_sq

        vi = exp_imaginary(oy, n)
        assert abs(vi.squared_modulus().to_fraction() - 1) <= eps(n - 4)
    report(6, "identity suite", True, "25 args per identity at n=256")


# ---------------------------------------------------------------------------
# 7. known digits


def test_criterion_7_known_digits():
    one = dyadic_oracle(Dyadic(1, 0))
    zero = dyadic_oracle(Dyadic(0, 0))

    e_val = exp_real(one, 128)
    e_txt = format_dec(e_val, 128)
    assert e_txt.startswith(E_DIGITS_30), e_txt
    ref = ref_eval("exp", Dyadic(1, 0), 150)
    assert abs((e_val - ref).to_fraction()) <= eps(128)

    s_val = sin_c(one, zero, 128)
    s_txt = format_dec(s_val.re, 128)
    assert s_txt.startswith(SIN1_DIGITS_20), s_txt
    ref_s = ref_eval("expi", Dyadic(1, 0), 150)
    assert abs((s_val.re - ref_s.im).to_fraction()) <= eps(128)

    report(7, "known digits", True, f"e -> {e_txt[:32]}..., sin 1 -> {s_txt[:22]}...")


# ---------------------------------------------------------------------------
# 8. bignum foundation


def test_criterion_8_bignum_foundation():
    rng = random.Random(0x8B1)
    for _ in range(1000):
        a = rng.getrandbits(rng.randrange(1, 2 ** 13 + 1))
        b = rng.getrandbits(rng.randrange(1, 2 ** 13 + 1))
        if rng.random() < 0.5:
            a = -a
        assert mul_karatsuba(a, b) == mul_schoolbook(a, b)

    for _ in range(10 ** 5):
        m = rng.randrange(-(2 ** 64), 2 ** 64)
        scale = rng.randrange(0, 80)
        b = rng.randrange(0, 80)
        x = Dyadic(m, scale)
        t = x.truncate(b)
        assert t.scale <= b
        assert abs(t.to_fraction() - x.to_fraction()) < eps(b)
        assert abs(t.to_fraction()) <= abs(x.to_fraction())
    report(8, "bignum foundation", True,
           "1000 multiplier pairs, 10^5 truncation samples")


# ---------------------------------------------------------------------------
# 4 and 5. space linearity and time quasi-linearity (shared benchmark)


BENCH_BITS = [2 ** 12, 2 ** 13, 2 ** 14, 2 ** 15, 2 ** 16]


@pytest.fixture(scope="module")
def bench_stats():
    print("\n[bench] running the space/time matrix; the classical baseline at "
          "n=65536 takes tens of minutes in pure Python")
    # throwaway evaluations so one-time lazy allocations stay out of the
    # first measured peaks
    from linexp.expfuncs import exp_real, rational_oracle
    warm = rational_oracle(1, 3)
    exp_real(warm, BENCH_BITS[0], 0, "linspace")
    exp_real(warm, BENCH_BITS[0], 0, "classic")
    stats = {}
    for rec in bench_runs(BENCH_BITS, ["linspace", "classic"], 1,
                          progress=lambda m: print(f"[bench] {m}", flush=True)):
        stats[(rec.method, rec.n)] = rec
        print(f"[bench] done n={rec.n} {rec.method}: peak={rec.peak_bytes} "
              f"wall={rec.wall_ns / 1e9:.1f}s", flush=True)
    return stats


def test_criterion_4_space_linearity(bench_stats):
    lin_peaks = [bench_stats[("linspace", n)].peak_bytes for n in BENCH_BITS]
    a, b, r2 = fit_linear([float(n) for n in BENCH_BITS],
                          [float(v) for v in lin_peaks])
    lin_ratio = lin_peaks[-1] / lin_peaks[0]
    cls_ratio = (bench_stats[("classic", BENCH_BITS[-1])].peak_bytes /
                 bench_stats[("classic", BENCH_BITS[0])].peak_bytes)
    ok = r2 >= 0.98 and lin_ratio <= 20 and cls_ratio > lin_ratio
    report(4, "space linearity", ok,
           f"r2={r2:.5f}, linspace ratio={lin_ratio:.2f}, classic ratio={cls_ratio:.2f}")


def test_criterion_5_time_quasi_linearity(bench_stats):
    walls = {n: bench_stats[("linspace", n)].wall_ns for n in BENCH_BITS}
    r1 = walls[2 ** 15] / walls[2 ** 14]
    r2 = walls[2 ** 16] / walls[2 ** 15]
    ok = r1 <= 8 and r2 <= 8
    report(5, "time quasi-linearity", ok,
           f"wall(2^15)/wall(2^14)={r1:.2f}, wall(2^16)/wall(2^15)={r2:.2f}")
