"""Carlitz module arithmetic, cyclotomic torsion factors, and the tensor
square construction."""

import random

import pytest

from ffstick.carlitz import (
    AddPoly,
    AlgElem,
    RatFunc,
    SkewPoly,
    TorsionAlgebra,
    carlitz_map,
    galois_act,
    partial_fractions,
    psi_cyclotomic,
    split_tensor_element,
    torsion_poly,
)
from ffstick.carlitz import _psi_dense, _xmul
from ffstick.fieldcore import field_context
from ffstick.groupring import unit_group

C2 = field_context(2)
C3 = field_context(3)
C4 = field_context(2, 2)


def rand_poly(ctx, rng, dmax):
    return ctx.pvalidate(tuple(rng.randrange(ctx.q) for _ in range(rng.randrange(1, dmax + 2))))


def test_carlitz_map_base_cases():
    assert carlitz_map(C2, (0, 1)).coeffs == ((0, 1), (1,))
    for ctx in (C2, C3, C4):
        got = carlitz_map(ctx, (0, 0, 1))
        middle = ctx.padd(ctx.pfrob((0, 1)), (0, 1))
        assert got.coeffs == ((0, 0, 1), middle, (1,))
    assert carlitz_map(C3, (2,)).coeffs == ((2,),)
    assert carlitz_map(C3, ()).coeffs == ()


def test_carlitz_map_is_ring_homomorphism():
    rng = random.Random(101)
    for ctx in (C2, C3):
        for _ in range(25):
            a, b = rand_poly(ctx, rng, 3), rand_poly(ctx, rng, 3)
            assert carlitz_map(ctx, ctx.pmul(a, b)) == carlitz_map(ctx, a) * carlitz_map(ctx, b)
            assert carlitz_map(ctx, ctx.padd(a, b)) == carlitz_map(ctx, a) + carlitz_map(ctx, b)


def test_carlitz_map_degree_and_leading():
    rng = random.Random(55)
    for ctx in (C2, C3):
        for _ in range(10):
            a = ctx.pmonic(rand_poly(ctx, rng, 3))
            if not a:
                continue
            phi = carlitz_map(ctx, a)
            assert phi.degree == len(a) - 1
            assert phi.coeffs[-1] == (1,)


def test_skew_multiplication_twist_and_associativity():
    tau = SkewPoly.tau(C3)
    b = SkewPoly.constant(C3, (0, 1))
    # tau * t = t^q * tau
    assert (tau * b).coeffs == ((), C3.pfrob((0, 1)))
    rng = random.Random(7)
    for _ in range(20):
        f = SkewPoly(C3, [rand_poly(C3, rng, 2) for _ in range(rng.randrange(1, 4))])
        g = SkewPoly(C3, [rand_poly(C3, rng, 2) for _ in range(rng.randrange(1, 4))])
        h = SkewPoly(C3, [rand_poly(C3, rng, 2) for _ in range(rng.randrange(1, 4))])
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_torsion_poly_shape():
    tp = torsion_poly(C2, (0, 1))
    assert tp.to_dense() == [(), (0, 1), (1,)]
    assert tp.frobenius_degree == 1
    with pytest.raises(ValueError):
        torsion_poly(C2, ())


def test_torsion_poly_additive_in_argument():
    a, b = (0, 0, 1), (0, 1)
    assert torsion_poly(C2, C2.padd(a, b)) == torsion_poly(C2, a) + torsion_poly(C2, b)


def test_psi_linear_modulus():
    for ctx in (C2, C3, C4):
        psi = psi_cyclotomic(ctx, (0, 1))
        dense = [p.coeffs for p in psi]
        assert dense == [(0, 1)] + [()] * (ctx.q - 2) + [(1,)]


def test_psi_square_modulus_by_exact_division():
    psi = psi_cyclotomic(C2, (0, 0, 1))
    dense = [p.coeffs for p in psi]
    # phi_{t^2}(X) / (X^2 + tX) = X^2 + tX + t
    assert dense == [(0, 1), (0, 1), (1,)]


def test_psi_degree_equals_unit_group_order():
    for ctx in (C2, C3):
        for d in (1, 2, 3):
            for I in ctx.monic_tuples(d):
                assert len(psi_cyclotomic(ctx, I)) - 1 == unit_group(ctx, I).order


def test_psi_divisor_product_reassembles_torsion():
    for ctx in (C2, C3):
        for d in (1, 2, 3):
            for f in ctx.monic_tuples(d):
                prod = [(1,)]
                for g in ctx.monic_divisors(f):
                    prod = _xmul(ctx, prod, _psi_dense(ctx, g))
                assert prod == torsion_poly(ctx, f).to_dense()


def test_psi_rejects_bad_modulus():
    with pytest.raises(ValueError):
        psi_cyclotomic(C2, (1,))
    with pytest.raises(ValueError):
        psi_cyclotomic(C3, (0, 1, 2))  # leading coefficient is not 1


def test_ratfunc_normalization():
    r = RatFunc(C3, (0, 2), (0, 0, 2))  # 2t / 2t^2 = 1/t
    assert r.num == (1,) and r.den == (0, 1)
    z = RatFunc(C3, (), (0, 5 % 3))
    assert z.is_zero and z.den == (1,)
    with pytest.raises(ZeroDivisionError):
        RatFunc(C3, (1,), ())


def test_ratfunc_field_axioms_randomized():
    rng = random.Random(13)
    for _ in range(40):
        ctx = rng.choice([C2, C3])
        xs = []
        while len(xs) < 3:
            f = RatFunc(ctx, rand_poly(ctx, rng, 2), ctx.pmonic(rand_poly(ctx, rng, 2)) or (1,))
            xs.append(f)
        a, b, c = xs
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a - a == RatFunc(ctx, ())
        if not b.is_zero:
            assert (a / b) * b == a
            assert b * b.inv() == RatFunc(ctx, (1,))


def test_algebra_ring_and_inverse():
    alg = TorsionAlgebra(C3, C3.pmul((0, 1), (2, 1)))
    assert alg.dim == 4
    x = alg.x_gen()
    one = alg.one()
    assert x * one == x
    assert (x + x) - x == x
    rng = random.Random(4)
    for _ in range(10):
        e = AlgElem(alg, [RatFunc(C3, rand_poly(C3, rng, 1)) for _ in range(alg.dim)])
        if e.is_zero:
            continue
        assert e * e.inv() == one
    with pytest.raises(ZeroDivisionError):
        alg.zero().inv()


def test_algebra_frobenius_power():
    alg = TorsionAlgebra(C3, (1, 1))
    x = alg.x_gen()
    assert x.frob_power() == x.pow_int(3)


def test_additive_polynomial_is_linear_on_algebra():
    alg = TorsionAlgebra(C2, (1, 1, 1))
    rng = random.Random(9)
    tp = torsion_poly(C2, (0, 1, 1))
    for _ in range(8):
        e1 = AlgElem(alg, [RatFunc(C2, rand_poly(C2, rng, 1)) for _ in range(alg.dim)])
        e2 = AlgElem(alg, [RatFunc(C2, rand_poly(C2, rng, 1)) for _ in range(alg.dim)])
        assert tp.eval_elem(e1 + e2) == tp.eval_elem(e1) + tp.eval_elem(e2)


def test_galois_action_identity_and_mod_reduction():
    alg = TorsionAlgebra(C2, (1, 1, 1))
    x = alg.x_gen()
    assert galois_act(alg, (1,), x) == x
    a = (0, 1)
    a_shifted = C2.padd(a, (1, 1, 1))  # same class mod I
    assert galois_act(alg, a, x) == galois_act(alg, a_shifted, x)


def test_galois_action_coprimality_guard():
    alg = TorsionAlgebra(C2, (0, 1, 1))  # I = t^2 + t = t(t+1)
    x = alg.x_gen()
    with pytest.raises(ValueError):
        galois_act(alg, (0, 1), x)


def test_galois_action_is_group_action():
    for ctx, I in ((C2, (1, 1, 1)), (C3, (0, 2, 1)), (C2, (1, 0, 1, 1))):
        G = unit_group(ctx, I)
        if G.order > 16:
            continue
        alg = TorsionAlgebra(ctx, I)
        x = alg.x_gen()
        reps = [G.rep(i).coeffs for i in range(G.order)]
        for a in reps:
            for b in reps:
                ab = ctx.pmod(ctx.pmul(a, b), I)
                assert galois_act(alg, a, galois_act(alg, b, x)) == galois_act(alg, ab, x)


def test_galois_action_roots_stay_roots():
    alg = TorsionAlgebra(C3, (0, 2, 1))
    x = alg.x_gen()
    psi = alg._psi
    for a in ((1,), (2,), (1, 1), (2, 2)):
        img = galois_act(alg, a, x)
        # evaluate Psi at the image inside the algebra; must vanish
        acc = alg.zero()
        power = alg.one()
        for i, c in enumerate(psi):
            if not c.is_zero:
                acc = acc + power.scale(c)
            if i + 1 < len(psi):
                power = power * img
        assert acc.is_zero


def test_partial_fractions_examples():
    p3 = C3.pmul((0, 1), (2, 1))
    assert partial_fractions(C3, p3) == [(0, 2), (1, 1)]
    assert partial_fractions(C3, (0, 1)) == [(0, 1)]
    # weights sum to zero once deg p >= 2
    full_split = C3.pmul(C3.pmul((0, 1), (2, 1)), (1, 1))
    pf = partial_fractions(C3, full_split)
    acc = 0
    for _, m in pf:
        acc = C3.add_table[acc][m]
    assert acc == 0


def test_partial_fractions_rejections():
    with pytest.raises(ValueError):
        partial_fractions(C3, (1, 0, 1))  # irreducible quadratic
    with pytest.raises(ValueError):
        partial_fractions(C2, (0, 0, 1))  # repeated root
    with pytest.raises(ValueError):
        partial_fractions(C3, (2, 2))  # not monic


def test_split_element_single_root():
    rep = split_tensor_element(C3, (0, 1))
    assert rep.ok
    assert rep.weights == [[0, 1]]
    assert rep.diagonal_constant.is_zero
    assert rep.dim == 2


def test_split_element_t_tminus1_f3():
    p = C3.pmul((0, 1), (2, 1))
    rep = split_tensor_element(C3, p)
    assert rep.ok
    names = [(c["check"], c["status"]) for c in rep.checks]
    assert names.count(("delta_invertible", "pass")) == 2
    assert names.count(("torsion_relation", "pass")) == 2
    assert ("diagonal_specialization", "pass") in names
    # sum of weights is 0, so the diagonal constant is -1 = 2
    assert rep.diagonal_constant == RatFunc.from_elem(C3, 2)
    assert rep.dim == 4
    assert len(rep.tensor) == 4


def test_split_element_t_tminus1_f4():
    rep = split_tensor_element(C4, (0, 1, 1))
    assert rep.ok
    assert rep.dim == 9
    assert rep.diagonal_constant == RatFunc.from_elem(C4, 1)  # -1 = 1 in even characteristic


def test_split_element_three_roots_f3():
    p = C3.pmul(C3.pmul((0, 1), (2, 1)), (1, 1))  # t(t-1)(t+1)
    rep = split_tensor_element(C3, p)
    assert rep.ok
    assert rep.dim == 8
    assert rep.diagonal_constant == RatFunc.from_elem(C3, 2)


def test_split_element_requires_split_modulus():
    with pytest.raises(ValueError):
        split_tensor_element(C2, (1, 1, 1))
