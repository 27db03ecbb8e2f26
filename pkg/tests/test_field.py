import numpy as np
import pytest

from semiadv.channel import make_rng
from semiadv.errors import DimensionMismatch, DivideByZero, NotPrime, OrderOverflow
from semiadv.field import (FieldElement, element_order, extension_generator, field_from_dict,
                           find_generator, is_irreducible, make_field, psi_embed, psi_inverse)


def test_prime_field_basics():
    F = make_field(5)
    assert F.order == 5 and F.modulus is None
    assert int(F.add(3, 4)) == 2
    assert int(F.sub(1, 3)) == 3
    assert int(F.neg(0)) == 0


def test_inverse_matches_exhaustive_search():
    F = make_field(7)
    want = next(x for x in range(1, 7) if (3 * x) % 7 == 1)
    assert int(F.inv(3)) == want == 5
    with pytest.raises(DivideByZero):
        F.inv(0)


def test_f4_modulus_is_the_only_irreducible_quadratic():
    cands = [[a, b, 1] for a in range(2) for b in range(2)]
    irreducible = [c for c in cands if is_irreducible(c, 2)]
    assert irreducible == [[1, 1, 1]]
    F4 = make_field(2, 2)
    assert F4.modulus == (1, 1, 1)
    g = extension_generator(F4)
    assert g * g == g + 1


def test_rejects_bad_parameters():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(OrderOverflow):
        make_field(65537, 5)


@pytest.mark.parametrize("p,m", [(13, 1), (257, 1), (65537, 1), (2, 4), (3, 3), (7, 2)])
def test_field_axioms_random(p, m):
    F = make_field(p, m)
    rng = make_rng(1, p, m)
    a, b, c = (F.random(rng, 10_000) for _ in range(3))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    nz = F.random_nonzero(rng, 2000)
    assert np.all(F.mul(F.inv(nz), nz) == 1)
    assert np.all(F.pow(nz, F.order - 1) == 1)


def test_reduction_matches_python_ints():
    F = make_field(2147483629)  # largest prime below 2^31
    rng = make_rng(2)
    a, b = F.random(rng, 1000), F.random(rng, 1000)
    want = np.array([(int(x) * int(y)) % F.p for x, y in zip(a, b)])
    assert np.array_equal(F.mul(a, b), want)


def test_generators():
    assert int(find_generator(make_field(7))) == 3
    assert sorted(pow(3, i, 7) for i in range(1, 7)) == [1, 2, 3, 4, 5, 6]
    assert int(find_generator(make_field(2))) == 1
    assert int(find_generator(make_field(5))) == 2
    for p, m in [(65537, 1), (257, 1), (2, 4), (3, 2)]:
        F = make_field(p, m)
        assert element_order(F, find_generator(F).value) == F.order - 1


def test_irreducible_search_is_deterministic():
    assert make_field(3, 4).modulus == make_field(3, 4).modulus
    F = make_field(5, 3)
    assert is_irreducible(list(F.modulus), 5)


def test_psi_definition_and_roundtrip():
    F4 = make_field(2, 2)
    g = extension_generator(F4)
    assert int(psi_embed([0, 0], F4)) == 0
    assert int(psi_embed([1, 1], F4)) == (g + 1).value
    E = make_field(13, 4)
    rng = make_rng(3)
    a = rng.integers(0, 13, (100, 4))
    assert np.array_equal(psi_inverse(psi_embed(a, E), E), a)
    b = rng.integers(0, 13, (100, 4))
    assert np.array_equal(E.add(psi_embed(a, E), psi_embed(b, E)), psi_embed((a + b) % 13, E))
    nonzero = a[np.any(a != 0, axis=1)]
    assert np.all(psi_embed(nonzero, E) != 0)
    with pytest.raises(DimensionMismatch):
        psi_embed([1, 2, 3], E)


def test_element_wrapper_and_serialization():
    F = make_field(7, 2)
    x = FieldElement(F, 10)
    assert (x * x.inv()) == 1
    assert F.parse_element(F.element_str(10)) == 10
    assert field_from_dict(F.to_dict()) == F
