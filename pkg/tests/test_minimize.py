import numpy as np
import pytest

from semiadv.channel import make_rng
from semiadv.errors import InvalidParameters
from semiadv.field import make_field
from semiadv.minimize import (MinimizeProblem, brute_force_solve, check_membership,
                              generator_matrix, is_weak_popov, solve, weak_popov)
from semiadv.poly import Polynomial, lagrange, vanishing
from semiadv.settings import configured


def random_problem(rng, p, h, max_deg):
    F = make_field(p)
    n0 = int(rng.integers(1, max_deg + 1))
    q0 = F.random(rng, n0 + 1)
    q0[-1] = F.random_nonzero(rng)
    qs = [Polynomial(F, F.random(rng, int(rng.integers(0, max_deg + 1)))) for _ in range(h)]
    k = int(rng.integers(1, n0 + 2))
    return MinimizeProblem(Polynomial(F, q0), qs, k)


def rs_problem(F, alphas, values, k):
    return MinimizeProblem(Polynomial(F, vanishing(F, alphas)),
                           [Polynomial(F, lagrange(F, alphas, values))], k)


def test_noiseless_degree_one_message():
    F = make_field(13)
    alphas = [1, 2, 3, 4]
    f = Polynomial(F, [5, 7])
    prob = rs_problem(F, alphas, f.evaluate(alphas), 2)
    sol = solve(prob)
    assert sol.e.degree == 0
    assert all(c.is_zero() for c in sol.cs)
    assert sol.max_degree == 1
    assert brute_force_solve(prob).max_degree == 1
    assert check_membership(prob, sol)


def test_one_corrupted_evaluation_costs_one_degree():
    F = make_field(257)
    alphas = list(range(1, 11))
    f = Polynomial(F, [3, 1, 4])
    ys = f.evaluate(alphas).copy()
    ys[6] = (ys[6] + 9) % 257
    prob = rs_problem(F, alphas, ys, 3)
    sol = solve(prob)
    assert sol.max_degree == brute_force_solve(prob).max_degree == 3
    assert sol.e.degree == 1


def test_scaling_invariance_and_determinism():
    rng = make_rng(1)
    prob = random_problem(rng, 257, 2, 10)
    F = prob.field
    scaled = MinimizeProblem(prob.q0 * 5, [q * 5 for q in prob.qs], prob.shift)
    assert solve(prob).degrees == solve(scaled).degrees
    a, b = solve(prob), solve(prob)
    assert a.e == b.e and a.components == b.components
    assert F.p == 257


def test_permuting_qs_preserves_max_degree():
    rng = make_rng(2)
    for _ in range(30):
        prob = random_problem(rng, 13, 3, 8)
        perm = MinimizeProblem(prob.q0, prob.qs[::-1], prob.shift)
        assert solve(prob).max_degree == solve(perm).max_degree


def test_matches_brute_force_small():
    rng = make_rng(3)
    for t in range(150):
        p = (13, 257)[t % 2]
        prob = random_problem(rng, p, int(rng.integers(1, 4)), 8)
        sol = solve(prob)
        assert sol.max_degree == brute_force_solve(prob).max_degree
        assert check_membership(prob, sol)


def test_divide_and_conquer_matches_iterative():
    rng = make_rng(4)
    F = make_field(65537)
    with configured(reduction_leaf=4):
        for _ in range(60):
            h = int(rng.integers(1, 4))
            n = int(rng.integers(8, 60))
            prob = MinimizeProblem(Polynomial(F, np.r_[F.random(rng, n), 1]),
                                   [Polynomial(F, F.random(rng, n)) for _ in range(h)],
                                   int(rng.integers(1, n // 2 + 2)))
            V = generator_matrix(prob)
            A = weak_popov(F, V, "iterative")
            B = weak_popov(F, V, "dc")
            assert is_weak_popov(A) and is_weak_popov(B)
            assert np.array_equal(A, B)
            assert solve(prob, "dc").components == solve(prob, "iterative").components


def test_decoder_sized_instance():
    F = make_field(65537)
    rng = make_rng(5)
    n, k, s = 256, 64, 3
    alphas = np.arange(1, n + 1)
    q0 = Polynomial(F, vanishing(F, alphas))
    fs = [Polynomial(F, F.random(rng, k)) for _ in range(s)]
    bad = rng.choice(n, 60, replace=False)
    qs = []
    for f in fs:
        y = f.evaluate(alphas).copy()
        y[bad] = F.random(rng, len(bad))
        qs.append(Polynomial(F, lagrange(F, alphas, y)))
    sol = solve(MinimizeProblem(q0, qs, k))
    assert sol.e.degree == 60
    for f, b in zip(fs, sol.b):
        q, r = divmod(b, sol.e)
        assert r.is_zero() and q == f


def test_invalid_problems():
    F = make_field(13)
    with pytest.raises(InvalidParameters):
        MinimizeProblem(Polynomial.zero(F), [Polynomial.one(F)], 1)
    with pytest.raises(InvalidParameters):
        MinimizeProblem(Polynomial.one(F), [Polynomial.one(F)], 0)
