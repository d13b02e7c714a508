import random
from fractions import Fraction

import pytest

from linexp import instrument
from linexp.bignum import ComplexDyadic
from linexp.binsplit import (Coefficient, SeriesSpec, bin_split_range,
                             bin_split_sum)
from linexp.errors import InvalidSeriesSpec


def series_from_lists(a, b, p, q, mode="real"):
    return SeriesSpec(a=lambda i: a[i], b=lambda i: b[i],
                      p=lambda j: p[j], q=lambda j: q[j],
                      terms=len(a) - 1, mode=mode)


def exact_partial_sum(a, b, p, q, i1, i2):
    """Direct rational oracle for S(i1, i2), Gaussian-valued."""
    total = Fraction(0)
    total_im = Fraction(0)
    for i in range(i1, i2 + 1):
        num = Fraction(a[i], b[i])
        ipow = 0
        for j in range(i1, i + 1):
            c = p[j]
            if isinstance(c, Coefficient):
                ipow += c.i_power
                num *= c.value
            else:
                num *= c
            qc = q[j]
            num /= qc.value if isinstance(qc, Coefficient) else qc
        ipow &= 3
        if ipow == 0:
            total += num
        elif ipow == 1:
            total_im += num
        elif ipow == 2:
            total -= num
        else:
            total_im -= num
    return total, total_im


def sigma_like_lists(beta, nu, r1, t):
    a = [1] * r1
    b = [1] * r1
    p = [1] + [beta] * (r1 - 1)
    q = [1] + [((t - 1) * r1 + j) << (1 << nu) for j in range(1, r1)]
    return a, b, p, q


# ---------------------------------------------------------------------------


def test_hand_example_17_16():
    a, b, p, q = sigma_like_lists(beta=1, nu=2, r1=2, t=1)
    spec = series_from_lists(a, b, p, q)
    res = bin_split_range(spec, 0, 1)
    assert (res.p.value, res.q, res.b, res.t) == (1, 16, 1, (17, 0))


def test_leaf_unit():
    spec = series_from_lists([1], [1], [1], [1])
    res = bin_split_range(spec, 0, 0)
    assert (res.p.value, res.q, res.b, res.t) == (1, 1, 1, (1, 0))


def test_hand_example_imaginary():
    a, b, p, q = sigma_like_lists(beta=1, nu=2, r1=2, t=1)
    p = [1, Coefficient(1, 1)]
    spec = series_from_lists(a, b, p, q, mode="imaginary")
    res = bin_split_range(spec, 0, 1)
    assert res.q == 16 and res.b == 1
    assert res.t == (16, 1)


def test_sum_exact_dyadic():
    a, b, p, q = sigma_like_lists(beta=1, nu=2, r1=2, t=1)
    spec = series_from_lists(a, b, p, q)
    v = bin_split_sum(spec, 8)
    assert v.to_fraction() == Fraction(17, 16)


def test_sum_all_zero_terms():
    spec = series_from_lists([0, 0, 0], [1, 1, 1], [1, 2, 3], [1, 5, 7])
    assert bin_split_sum(spec, 16).to_fraction() == 0


def test_sum_beta_zero_unit():
    a, b, p, q = sigma_like_lists(beta=0, nu=2, r1=4, t=1)
    spec = series_from_lists(a, b, p, q)
    assert bin_split_sum(spec, 16).to_fraction() == 1


def test_zero_coefficient_rejected():
    spec = series_from_lists([1, 1], [1, 0], [1, 1], [1, 1])
    with pytest.raises(InvalidSeriesSpec):
        bin_split_range(spec, 0, 1)
    spec = series_from_lists([1, 1], [1, 1], [1, 1], [1, 0])
    with pytest.raises(InvalidSeriesSpec):
        bin_split_range(spec, 0, 1)
    spec = series_from_lists([1, 1], [1, 1], [1, 1], [1, Coefficient(2, 1)])
    with pytest.raises(InvalidSeriesSpec):
        bin_split_range(spec, 0, 1)


def rand_spec(rng, mode):
    terms = rng.randrange(1, 33)
    a = [rng.randrange(-2 ** 16, 2 ** 16) for _ in range(terms)]
    b = [rng.choice([1, -1]) * rng.randrange(1, 2 ** 16) for _ in range(terms)]
    if mode == "real":
        p = [rng.randrange(-2 ** 16, 2 ** 16) for _ in range(terms)]
    else:
        p = [Coefficient(rng.randrange(-2 ** 16, 2 ** 16), rng.randrange(4))
             for _ in range(terms)]
    q = [rng.choice([1, -1]) * rng.randrange(1, 2 ** 16) for _ in range(terms)]
    return a, b, p, q


@pytest.mark.parametrize("mode", ["real", "imaginary"])
def test_random_specs_match_rational_oracle(mode):
    rng = random.Random(42 if mode == "real" else 43)
    for _ in range(25):
        a, b, p, q = rand_spec(rng, mode)
        spec = series_from_lists(a, b, p, q, mode)
        res = bin_split_range(spec, 0, spec.terms)
        # factor products
        prod_q = prod_b = 1
        prod_p = 1
        for j in range(spec.terms + 1):
            prod_q *= q[j]
            prod_b *= b[j]
            prod_p *= p[j].value if isinstance(p[j], Coefficient) else p[j]
        assert res.q == prod_q and res.b == prod_b and res.p.value == prod_p
        # T = B*Q*S exactly
        s_re, s_im = exact_partial_sum(a, b, p, q, 0, spec.terms)
        bq = Fraction(prod_b * prod_q)
        assert Fraction(res.t[0]) == bq * s_re
        assert Fraction(res.t[1]) == bq * s_im


def test_subrange_invariant():
    rng = random.Random(77)
    a, b, p, q = rand_spec(rng, "real")
    spec = series_from_lists(a, b, p, q)
    i1 = 2
    i2 = spec.terms
    res = bin_split_range(spec, i1, i2)
    s_re, _ = exact_partial_sum(a, b, p, q, i1, i2)
    assert Fraction(res.t[0], res.b * res.q) == s_re


def test_division_accuracy_random():
    rng = random.Random(99)
    for _ in range(10):
        a, b, p, q = rand_spec(rng, "real")
        spec = series_from_lists(a, b, p, q)
        k = rng.randrange(4, 100)
        v = bin_split_sum(spec, k)
        s_re, _ = exact_partial_sum(a, b, p, q, 0, spec.terms)
        assert abs(v.to_fraction() - s_re) <= Fraction(1, 2 ** k)


def test_imaginary_sum_componentwise_accuracy():
    rng = random.Random(5)
    a, b, p, q = rand_spec(rng, "imaginary")
    spec = series_from_lists(a, b, p, q, "imaginary")
    k = 40
    v = bin_split_sum(spec, k)
    assert isinstance(v, ComplexDyadic)
    s_re, s_im = exact_partial_sum(a, b, p, q, 0, spec.terms)
    assert abs(v.re.to_fraction() - s_re) <= Fraction(1, 2 ** (k + 1))
    assert abs(v.im.to_fraction() - s_im) <= Fraction(1, 2 ** (k + 1))


def test_depth_watermark_bound():
    rng = random.Random(3)
    for terms in (1, 2, 3, 5, 16, 31, 32):
        a = [1] * terms
        b = [1] * terms
        p = [1] * terms
        q = [1] * terms
        spec = series_from_lists(a, b, p, q)
        instrument.reset()
        bin_split_range(spec, 0, terms - 1)
        depth = instrument.snapshot().max_split_depth
        assert depth <= (terms - 1).bit_length() + 1


def test_t_bit_length_growth_shape():
    # l(T) over a width-w range stays under 2^ceil(log2 w) * (l(u) + 1) where
    # u bounds the coefficient magnitudes.
    rng = random.Random(1234)
    beta = rng.randrange(1, 8)
    nu = 2
    for r1 in (4, 8, 16, 32):
        a, b, p, q = sigma_like_lists(beta, nu, r1, 1)
        spec = series_from_lists(a, b, p, q)
        res = bin_split_range(spec, 0, r1 - 1)
        l_u = max(x.bit_length() for x in q) + 1
        chain = (r1 - 1).bit_length() + 1
        assert res.t[0].bit_length() < (1 << chain) * (l_u + 1)
