"""Field and polynomial layer: frozen examples plus randomized reconstruction."""

import random

import pytest

from ffstick.fieldcore import (
    NEG_INF,
    field_context,
    monic_enum,
    poly_divmod,
    poly_factor,
    poly_gcd,
)


def brute_modulus(p, m):
    """Independent oracle: scan monic degree m polys over F_p in encoding order,
    return the first with no monic divisor of degree in [1, m-1]."""
    def tuples(deg):
        for key in range(p ** deg):
            yield [key // p ** i % p for i in range(deg)] + [1]

    def divides(g, f):
        r = list(f)
        while len(r) >= len(g):
            c = r[-1] * pow(g[-1], p - 2, p) % p
            s = len(r) - len(g)
            for j, cg in enumerate(g):
                r[s + j] = (r[s + j] - c * cg) % p
            while r and r[-1] == 0:
                r.pop()
            if not r:
                return True
        return not r

    for f in tuples(m):
        if all(not divides(g, f) for d in range(1, m) for g in tuples(d)):
            return tuple(f)
    raise AssertionError


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_canonical_modulus_matches_bruteforce(p, m):
    ctx = field_context(p, m)
    if m == 1:
        assert ctx.modulus == (0, 1)
    else:
        assert ctx.modulus == brute_modulus(p, m)


def test_known_moduli():
    assert field_context(2, 2).modulus == (1, 1, 1)
    assert field_context(3, 2).modulus == (1, 0, 1)


def test_field_tables_are_a_field():
    for p, m in [(2, 2), (3, 2), (2, 3)]:
        ctx = field_context(p, m)
        q = ctx.q
        for a in range(q):
            assert ctx.add_table[a][0] == a
            assert ctx.mul_table[a][1] == a
            assert ctx.add_table[a][ctx.neg_table[a]] == 0
            if a:
                assert ctx.mul_table[a][ctx.inv_table[a]] == 1
        # associativity spot checks
        rng = random.Random(q)
        for _ in range(50):
            a, b, c = (rng.randrange(q) for _ in range(3))
            assert ctx.mul_table[a][ctx.mul_table[b][c]] == ctx.mul_table[ctx.mul_table[a][b]][c]
            assert ctx.mul_table[a][ctx.add_table[b][c]] == ctx.add_table[ctx.mul_table[a][b]][ctx.mul_table[a][c]]


def test_divmod_frozen_example():
    # (t^3 + 2t + 1) = t * (t^2 + 1) + (t + 1) over F_3, worked by hand
    ctx = field_context(3)
    q, r = poly_divmod(ctx.poly([1, 2, 0, 1]), ctx.poly([1, 0, 1]))
    assert q.coeffs == (0, 1)
    assert r.coeffs == (1, 1)


def test_gcd_frozen_example():
    ctx = field_context(2)
    g = poly_gcd(ctx.poly([0, 1, 1]), ctx.poly([1, 0, 1]))
    assert g.coeffs == (1, 1)
    zero = ctx.poly([])
    assert poly_gcd(zero, zero).is_zero
    assert poly_gcd(zero, ctx.poly([0, 2 % 2, 1])).is_monic


def test_factor_frozen_examples():
    c2 = field_context(2)
    unit, fs = poly_factor(c2.poly([0, 1, 0, 0, 1]))
    assert unit == 1
    assert [(f.coeffs, m) for f, m in fs] == [((0, 1), 1), ((1, 1), 1), ((1, 1, 1), 1)]
    c3 = field_context(3)
    unit, fs = poly_factor(c3.poly([0, 2, 1]))
    assert [(f.coeffs, m) for f, m in fs] == [((0, 1), 1), ((2, 1), 1)]
    # non monic input keeps the unit out front
    unit, fs = poly_factor(c3.poly([0, 1, 2]))
    assert unit == 2
    prod = c3.poly([unit])
    for f, m in fs:
        prod = prod * f ** m
    assert prod == c3.poly([0, 1, 2])


def test_monic_enum_order_and_coprimality():
    c2 = field_context(2)
    assert [f.coeffs for f in monic_enum(c2, 2)] == [
        (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    assert [str(f) for f in monic_enum(c2, 2, coprime_to=c2.poly([0, 1]))] == [
        "t^2 + 1", "t^2 + t + 1"]
    assert [f.coeffs for f in monic_enum(c2, 0)] == [(1,)]
    assert list(monic_enum(c2, -1)) == []


def test_zero_degree_sentinel():
    ctx = field_context(2)
    z = ctx.poly([])
    assert z.degree == NEG_INF
    assert z.degree < ctx.poly([1]).degree


def test_monic_count_closed_form():
    # number of monic irreducibles of degree d is (1/d) sum_{e|d} mu(e) q^(d/e)
    from math import prod
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        ctx = field_context(p, m)
        q = ctx.q
        expected = {1: q, 2: (q * q - q) // 2, 3: (q ** 3 - q) // 3}
        for d, want in expected.items():
            assert len(ctx.monic_irreducibles(d)) == want


def test_divmod_reconstruction_randomized():
    rng = random.Random(20260823)
    ctxs = [field_context(2), field_context(3), field_context(2, 2), field_context(3, 2)]
    for _ in range(300):
        ctx = ctxs[rng.randrange(len(ctxs))]
        a = ctx.poly([rng.randrange(ctx.q) for _ in range(rng.randrange(0, 9))])
        b = ctx.poly([rng.randrange(ctx.q) for _ in range(rng.randrange(1, 6))])
        if b.is_zero:
            continue
        q, r = poly_divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree


def test_factor_reconstruction_randomized():
    rng = random.Random(99)
    for p, m in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        ctx = field_context(p, m)
        for _ in range(40):
            a = ctx.poly([rng.randrange(ctx.q) for _ in range(rng.randrange(1, 8))])
            if a.is_zero:
                continue
            unit, fs = poly_factor(a)
            prod = ctx.poly([unit])
            for f, mult in fs:
                assert f.is_monic
                assert ctx.is_irreducible(f.coeffs)
                prod = prod * f ** mult
            assert prod == a


def test_factor_deterministic_under_seed():
    for seed in (0, 1, 12345):
        a1 = field_context(3, 2, seed=seed)
        a2 = field_context(3, 2, seed=seed)
        f1 = poly_factor(a1.poly([2, 7, 0, 4, 1, 1]))
        f2 = poly_factor(a2.poly([2, 7, 0, 4, 1, 1]))
        assert [(f.coeffs, m) for f, m in f1[1]] == [(f.coeffs, m) for f, m in f2[1]]


def test_poly_pow_and_eval():
    ctx = field_context(3)
    f = ctx.poly([1, 1])  # t + 1
    assert (f ** 3).coeffs == (1, 0, 0, 1)  # Frobenius over F_3
    assert f.evaluate(2) == 0
    assert ctx.poly([1, 2, 1]).evaluate(1) == 1


def test_validation_errors():
    ctx = field_context(2)
    with pytest.raises(ValueError):
        ctx.poly([2])
    with pytest.raises(ValueError):
        field_context(4)
    with pytest.raises(ValueError):
        field_context(2, 0)
    with pytest.raises(ZeroDivisionError):
        poly_divmod(ctx.poly([1]), ctx.poly([]))
