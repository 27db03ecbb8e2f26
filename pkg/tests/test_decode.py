import itertools
from fractions import Fraction

import numpy as np
import pytest

from semiadv import codes, decode
from semiadv.bounds import ball_intersect
from semiadv.channel import ChannelSpec, apply_semi_adversarial, make_rng
from semiadv.codes import Word, make_code_spec
from semiadv.decode import FailReason
from semiadv.errors import InvalidParameters
from semiadv.field import make_field
from semiadv.poly import Polynomial

F = make_field(65537)
DESK = {
    "RS": (make_code_spec("RS", 8, 2, make_field(13)), None),
    "IRS": (make_code_spec("IRS", 64, 16, F, 4), None),
    "FRS": (make_code_spec("FRS", 32, 20, F, 8), 4),
    "MULT": (make_code_spec("MULT", 32, 24, F, 4), 2),
}


def transmit(spec, e0, e, seed, adversary="randomReplace"):
    rng = make_rng(seed)
    msg = codes.random_message(spec, rng)
    y, pat = apply_semi_adversarial(codes.encode(spec, msg), ChannelSpec(e0, e, adversary), rng)
    return msg, y, pat


def test_radius_values():
    assert decode.radius(DESK["IRS"][0]) == Fraction(192, 5)
    assert int(decode.radius(DESK["IRS"][0])) == 38
    assert decode.radius(DESK["FRS"][0], 4) == Fraction(112, 5)
    assert int(decode.radius(DESK["FRS"][0], 4)) == 22
    assert decode.radius(DESK["MULT"][0], 2) == Fraction(46, 3)
    assert int(decode.radius(DESK["MULT"][0], 2)) == 15
    assert decode.adversarial_cap(DESK["IRS"][0], 38) == 10
    assert decode.failure_bound(DESK["FRS"][0], 22, 4) == Fraction(22 * 5, 65537)
    with pytest.raises(InvalidParameters):
        decode.radius(DESK["FRS"][0])
    with pytest.raises(InvalidParameters):
        decode.radius(DESK["MULT"][0], 5)


@pytest.mark.parametrize("family", sorted(DESK))
def test_zero_errors(family):
    spec, L = DESK[family]
    for seed in range(5):
        msg, y, _ = transmit(spec, 0, 0, seed)
        res = decode.decode(spec, y, 0, L)
        assert res.success and res.message == msg and res.distance == 0


@pytest.mark.parametrize("family", sorted(DESK))
def test_top_of_region(family):
    spec, L = DESK[family]
    e = int(decode.radius(spec, L))
    e0 = int(decode.adversarial_cap(spec, e, L))
    for seed in range(5):
        msg, y, _ = transmit(spec, e0, e, seed, "singleComponent")
        res = decode.decode(spec, y, e, L)
        assert res.message == msg


def test_matches_exhaustive_nearest_codeword():
    Fs = make_field(13)
    spec = make_code_spec("IRS", 6, 2, Fs, 2)
    agree = 0
    for seed in range(200):
        msg, y, _ = transmit(spec, 0, 2, seed)
        ball = ball_intersect(spec, y, 2, "exhaustive")
        res = decode.decode(spec, y, 2)
        if res.success:
            assert res.message in ball
        if len(ball) == 1:
            agree += res.message == ball[0]
            if res.success:
                assert res.message == ball[0]
    assert agree > 150


def test_frs_with_one_fold_is_berlekamp_welch():
    Fs = make_field(257)
    alphas = codes.geometric(Fs, 3, 12)
    frs = make_code_spec("FRS", 12, 4, Fs, 1, alphas=alphas)
    irs = make_code_spec("IRS", 12, 4, Fs, 1, alphas=alphas)
    for seed in range(40):
        msg, y, _ = transmit(irs, 2, 5, seed)
        a = decode.decode_frs(frs, y, 1, 5)
        b = decode.decode_irs(irs, y, 5)
        assert a.message == b.message and a.reason == b.reason


def test_failure_reasons_and_soundness_on_garbage():
    spec = make_code_spec("IRS", 20, 6, make_field(257), 2)
    seen = set()
    rng = make_rng(9)
    for t in range(300):
        y = Word(spec.field, spec.field.random(rng, (20, 2)))
        e = int(rng.integers(0, 10))
        res = decode.decode(spec, y, e)
        if res.success:
            assert codes.distance(y, codes.encode(spec, res.message)) <= e
        else:
            seen.add(res.reason)
    assert FailReason.INEXACT_DIVISION in seen
    for fam, (spec, L) in DESK.items():
        rng = make_rng(10)
        for _ in range(20):
            y = Word(spec.field, spec.field.random(rng, (spec.n, spec.s)))
            res = decode.decode(spec, y, int(decode.radius(spec, L)), L)
            if res.success:
                assert codes.distance(y, codes.encode(spec, res.message)) <= decode.radius(spec, L)


def test_degenerate_and_bad_e():
    spec, _ = DESK["RS"]
    y = Word(spec.field, np.zeros((8, 1), np.int64))
    with pytest.raises(InvalidParameters):
        decode.decode(spec, y, 9)
    assert decode.decode(spec, y, 0).message == codes.make_message(spec, [[]])


@pytest.mark.parametrize("family", ["IRS", "FRS", "MULT"])
def test_constructed_solution_satisfies_interpolation(family):
    Fs = make_field(257)
    spec = {"IRS": make_code_spec("IRS", 12, 3, Fs, 3),
            "FRS": make_code_spec("FRS", 10, 6, Fs, 4),
            "MULT": make_code_spec("MULT", 10, 8, Fs, 4)}[family]
    L = None if family == "IRS" else 2
    for seed in range(20):
        msg, y, _ = transmit(spec, 1, 4, seed, "singleComponent")
        A, E = decode.constructed_solution(spec, msg, y, L)
        assert decode.satisfies_interpolation(spec, y, A, E, L)
        assert E.degree <= spec.n * spec.s


def test_mult_locator_weights_by_first_wrong_derivative():
    Fs = make_field(257)
    spec = make_code_spec("MULT", 6, 4, Fs, 4)
    msg = codes.random_message(spec, make_rng(1))
    c = codes.encode(spec, msg)
    a = c.symbols.copy()
    a[0, 3] = (a[0, 3] + 1) % 257  # only the last derivative is wrong
    a[1, 0] = (a[1, 0] + 1) % 257
    E = decode.intended_locator(spec, msg, Word(Fs, a), 2)
    # r = 3; position 0: first wrong is 4 -> weight 3 - 2 = 1; position 1: weight 3
    assert E.degree == 4


def test_fixed_degree_noiseless_contains_message():
    Fs = make_field(257)
    spec = make_code_spec("IRS", 10, 3, Fs, 2)
    msg, y, _ = transmit(spec, 0, 0, 1)
    sols = decode.fixed_degree_solve(spec, y, 0)
    assert len(sols) == 1
    E = sols[0].e
    assert E.degree == 0
    assert [a * Polynomial(Fs, [Fs.inv(E.coeffs[0])]) for a in sols[0].a] == list(msg.polys)


@pytest.mark.parametrize("family,L", [("IRS", None), ("FRS", 2), ("MULT", 2)])
def test_fixed_degree_kernel_and_minimize_agree(family, L):
    Fs = make_field(257)
    spec = {"IRS": make_code_spec("IRS", 14, 3, Fs, 2),
            "FRS": make_code_spec("FRS", 12, 6, Fs, 3),
            "MULT": make_code_spec("MULT", 12, 8, Fs, 3)}[family]
    e = int(decode.radius(spec, L))
    dims = []
    for seed in range(15):
        msg, y, _ = transmit(spec, 0, e, seed)
        E_int = decode.intended_locator(spec, msg, y, L)
        ebar = E_int.degree
        a_extra = None
        sols = decode.fixed_degree_solve(spec, y, ebar, L, a_extra)
        dims.append(len(sols))
        for s in sols:
            assert decode.satisfies_interpolation(spec, y, s.a, s.e, L)
        res = decode.decode(spec, y, e, L)
        if res.success and len(sols) == 1:
            # minimize's locator spans the same one-dimensional space
            ratio = sols[0].e.monic()
            assert decode.intended_locator(spec, msg, y, L).monic() == ratio
    assert dims.count(1) >= 12


def test_block_matrix_shapes():
    Fs = make_field(257)
    irs = make_code_spec("IRS", 16, 4, Fs, 2)
    y = codes.encode(irs, codes.random_message(irs, make_rng(0)))
    for ebar in (0, 2, 5):
        bm = decode.build_block_matrix(irs, y, ebar)
        assert bm.shape == (2 * 16, 2 * 4 + 3 * ebar)
    assert decode.full_column_rank(irs, decode.build_block_matrix(irs, y, 0))
    frs = make_code_spec("FRS", 12, 6, Fs, 4)
    y = codes.encode(frs, codes.random_message(frs, make_rng(0)))
    bm = decode.build_block_matrix(frs, y, 3, 2)
    assert bm.shape == (2 * 3 * 12, 2 * 6 + 3 * 3)
    mult = make_code_spec("MULT", 10, 8, Fs, 4)
    y = codes.encode(mult, codes.random_message(mult, make_rng(0)))
    e, L, D = 3, 2, 4
    bm = decode.build_block_matrix(mult, y, D, L, a_extra=e * (4 - L + 1))
    assert bm.shape == (L * (4 - L + 1) * 10, L * (8 + e * (4 - L + 1)) + D)


def test_subfield_rs_decoding_agrees():
    Fs = make_field(257)
    spec = make_code_spec("IRS", 16, 4, Fs, 3)
    E = codes.companion_extension(spec)
    for seed in range(20):
        msg, y, _ = transmit(spec, 2, 8, seed)
        a = decode.decode_irs(spec, y, 8)
        b = decode.decode_subfield_rs(spec, codes.irs_to_subfield_rs(spec, y, E), 8, E)
        assert a.success == b.success
        if a.success:
            assert codes.combine_message(spec, a.message, E) == b.message


def test_bw_small_exhaustive_weight_one():
    Fs = make_field(13)
    spec = make_code_spec("RS", 8, 2, Fs)
    msg = codes.make_message(spec, [[3, 7]])
    c = codes.encode(spec, msg)
    for i, v in itertools.product(range(8), range(1, 13)):
        a = c.symbols.copy()
        a[i, 0] = (a[i, 0] + v) % 13
        assert decode.decode_irs(spec, Word(Fs, a), 3).message == msg
