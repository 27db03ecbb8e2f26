import math

import numpy as np
import pytest

from semiadv import kernels
from semiadv.channel import make_rng
from semiadv.errors import DivideByZero, DuplicatePoint, FieldMismatch
from semiadv.field import make_field
from semiadv.poly import (Polynomial, SubproductTree, hasse, hermite, horner, lagrange,
                          mul_schoolbook, multipoint_eval, norm, pdivrem, pmul, polymat_mul,
                          taylor_values, vanishing)
from semiadv.settings import configured

P = 65537


def rand_poly(F, rng, deg):
    c = F.random(rng, deg + 1)
    c[-1] = F.random_nonzero(rng)
    return Polynomial(F, c)


def naive_conv(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + int(x) * int(y)) % p
    return out


def test_small_products():
    F2 = make_field(2)
    one_x = Polynomial(F2, [1, 1])
    assert (one_x * one_x).to_list() == [1, 0, 1]
    F = make_field(7)
    assert (Polynomial(F, [3, 1]) * 0).is_zero()
    with pytest.raises(FieldMismatch):
        one_x * Polynomial(F, [1])


@pytest.mark.parametrize("la,lb", [(51, 51), (40, 300), (300, 300), (700, 1200), (3000, 10)])
def test_all_product_paths_agree(la, lb):
    F = make_field(P)
    rng = make_rng(5, la, lb)
    a, b = F.random(rng, la), F.random(rng, lb)
    want = norm(np.array(naive_conv(a, b, P), dtype=np.int64))
    assert np.array_equal(pmul(F, a, b), want)
    assert np.array_equal(mul_schoolbook(F, a, b), want)
    with configured(fast=False):
        assert np.array_equal(pmul(F, a, b), want)
    with kernels.backend_scope("numpy"):
        assert np.array_equal(pmul(F, a, b), want)


def test_ntt_path_at_f7_equals_schoolbook():
    F = make_field(7)
    rng = make_rng(6)
    a, b = rand_poly(F, rng, 50), rand_poly(F, rng, 50)
    assert (a * b).to_list() == naive_conv(a.coeffs, b.coeffs, 7)


def test_product_laws():
    rng = make_rng(7)
    for p in (13, 257, P):
        F = make_field(p)
        for _ in range(400):
            a, b, c = (rand_poly(F, rng, int(rng.integers(0, 40))) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert (a * b).degree == a.degree + b.degree


def test_division():
    F = make_field(7)
    q, r = divmod(Polynomial(F, [-1, 0, 1]), Polynomial(F, [-1, 1]))
    assert q.to_list() == [1, 1] and r.is_zero()
    a = Polynomial(F, [2, 5, 3])
    q, r = divmod(a, a)
    assert q == 1 and r.is_zero()
    with pytest.raises(DivideByZero):
        pdivrem(F, a.coeffs, np.zeros(0, np.int64))
    rng = make_rng(8)
    for p in (7, P):
        F = make_field(p)
        for da, db in [(5, 3), (300, 100), (2000, 700), (4, 9)]:
            a, b = rand_poly(F, rng, da), rand_poly(F, rng, db)
            q, r = divmod(a, b)
            assert q * b + r == a and r.degree < b.degree


def test_multipoint_eval():
    F = make_field(5)
    assert multipoint_eval(F, np.array([0, 0, 1]), [1, 2, 3]).tolist() == [1, 4, 4]
    assert multipoint_eval(F, np.array([3]), [0, 1, 2, 4]).tolist() == [3, 3, 3, 3]
    F = make_field(P)
    rng = make_rng(9)
    f = rand_poly(F, rng, 63)
    pts = F.random(rng, 64)
    want = [f(int(x)) for x in pts]
    assert multipoint_eval(F, f.coeffs, pts).tolist() == want
    big = F.random(rng, 1000)
    g = rand_poly(F, rng, 1500)
    assert np.array_equal(SubproductTree(F, big).evaluate(g.coeffs), horner(F, g.coeffs, big))


def test_lagrange():
    F = make_field(7)
    assert lagrange(F, [1, 2, 3], [2, 4, 6]).tolist() == [0, 2]
    assert lagrange(F, [4], [5]).tolist() == [5]
    with pytest.raises(DuplicatePoint):
        lagrange(F, [1, 1], [2, 3])
    F = make_field(P)
    rng = make_rng(10)
    for n in (5, 40, 700):
        pts = rng.choice(np.arange(1, P), n, replace=False)
        f = rand_poly(F, rng, n - 1)
        got = lagrange(F, pts, multipoint_eval(F, f.coeffs, pts))
        assert np.array_equal(got, f.coeffs)


def test_hasse():
    F = make_field(P)
    f = Polynomial(F, [3, 1, 4, 1, 5])
    assert f.hasse(0) == f
    F2 = make_field(2)
    assert Polynomial(F2, [0, 0, 0, 1]).hasse(2).to_list() == [0, 1]
    rng = make_rng(11)
    for _ in range(50):
        a, b = rand_poly(F, rng, 20), rand_poly(F, rng, 17)
        i, j = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        assert (a + b).hasse(i) == a.hasse(i) + b.hasse(i)
        prod = Polynomial.zero(F)
        for l in range(i + 1):
            prod = prod + a.hasse(i - l) * b.hasse(l)
        assert (a * b).hasse(i) == prod
        assert a.hasse(i).hasse(j) == a.hasse(i + j) * (math.comb(i + j, i) % P)


def test_hasse_coefficients_against_binomial_expansion():
    F = make_field(13)
    f = Polynomial(F, [1, 2, 3, 4, 5, 6, 7])
    for i in range(7):
        want = [math.comb(j + i, i) * int(f.coeffs[j + i]) % 13 for j in range(7 - i)]
        assert hasse(F, f.coeffs, i).tolist() == norm(np.array(want, np.int64)).tolist()


def test_hermite():
    F = make_field(P)
    assert hermite(F, [1], [[1, 0]]).tolist() == [1]
    rng = make_rng(12)
    for n, s in [(3, 1), (5, 3), (40, 4), (200, 2)]:
        pts = rng.choice(np.arange(1, P), n, replace=False)
        f = rand_poly(F, rng, s * n - 1)
        data = taylor_values(F, f.coeffs, pts, s)
        assert np.array_equal(hermite(F, pts, data), f.coeffs)
        if s == 1:
            assert np.array_equal(hermite(F, pts, data), lagrange(F, pts, data[:, 0]))
    with pytest.raises(DuplicatePoint):
        hermite(F, [2, 2], [[1, 0], [1, 0]])


def test_hermite_small_characteristic():
    # Taylor-based construction needs no division by s!
    F = make_field(3)
    f = Polynomial(F, [1, 2, 0, 1, 2, 2])
    data = taylor_values(F, f.coeffs, [1, 2], 3)
    assert np.array_equal(hermite(F, [1, 2], data), f.coeffs)


def test_vanishing():
    F = make_field(5)
    assert vanishing(F, [1]).tolist() == [4, 1]
    F7 = make_field(7)
    want = Polynomial(F7, [-1, 1]) * Polynomial(F7, [-1, 1]) * Polynomial(F7, [-2, 1]) * Polynomial(F7, [-2, 1])
    assert vanishing(F7, [1, 2], 2).tolist() == want.to_list()
    assert vanishing(F7, []).tolist() == [1]
    F = make_field(P)
    rng = make_rng(13)
    pts = rng.choice(np.arange(1, P), 30, replace=False)
    V = vanishing(F, pts, 3)
    assert len(V) == 91
    assert np.all(taylor_values(F, V, pts, 3) == 0)
    with configured(fast=False):
        assert np.array_equal(vanishing(F, pts, 3), V)


def test_polymat_mul_matches_entrywise():
    F = make_field(P)
    rng = make_rng(14)
    for deg in (5, 400):
        A = F.random(rng, (2, 3, deg))
        B = F.random(rng, (3, 2, deg + 3))
        C = polymat_mul(F, A, B)
        for i in range(2):
            for j in range(2):
                acc = np.zeros(0, np.int64)
                for t in range(3):
                    prod = pmul(F, norm(A[i, t]), norm(B[t, j]))
                    acc = (Polynomial(F, acc) + Polynomial(F, prod)).coeffs
                assert np.array_equal(norm(C[i, j]), acc)


def test_backends_agree_on_kernels():
    F = make_field(P)
    rng = make_rng(15)
    f, xs = F.random(rng, 300), F.random(rng, 200)
    out = {}
    for be in ("numba", "numpy"):
        with kernels.backend_scope(be):
            out[be] = (horner(F, f, xs), pdivrem(F, F.random(make_rng(1), 500), f),
                       multipoint_eval(F, f, xs))
    assert np.array_equal(out["numba"][0], out["numpy"][0])
    assert all(np.array_equal(x, y) for x, y in zip(out["numba"][1], out["numpy"][1]))
    assert np.array_equal(out["numba"][2], out["numpy"][2])
