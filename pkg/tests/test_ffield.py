from itertools import product

import pytest
from hypothesis import given, strategies as st

from flagdesign.ffield import (
    Field,
    FieldError,
    arith,
    conjugate,
    gf,
    is_irreducible,
    make_field,
    prime_power,
    smallest_irreducible,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81]
SQUARE_Q = [2, 3, 4, 5, 7, 8]


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def _reducible_monics(p, a):
    """Monic degree-a polynomials that factor, built by multiplying factors."""
    def monics(d):
        for low in product(range(p), repeat=d):
            yield tuple(low) + (1,)

    out = set()
    for d in range(1, a // 2 + 1):
        for f in monics(d):
            for g in monics(a - d):
                out.add(_poly_mul(f, g, p))
    return out


def _key(poly, p):
    return sum(c * p ** i for i, c in enumerate(poly))


@pytest.mark.parametrize("p,a", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6), (3, 4)])
def test_modulus_is_smallest_irreducible(p, a):
    # oracle: irreducible monics are exactly those not produced as a product
    reducible = _reducible_monics(p, a)
    candidates = sorted((tuple(low) + (1,) for low in product(range(p), repeat=a)),
                        key=lambda f: _key(f, p))
    expected = next(f for f in candidates if f not in reducible)
    assert Field(p, a).modulus == expected
    assert smallest_irreducible(p, a) == expected


def test_known_moduli():
    assert make_field(2, 1).modulus == (0, 1)  # x
    assert make_field(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_field_cached_and_deterministic():
    assert make_field(3, 2) is gf(9)
    assert [x.index for x in gf(9).elements] == list(range(9))


@pytest.mark.parametrize("bad", [(4, 1), (2, 0), (1, 3), (2, 21)])
def test_make_field_rejects(bad):
    with pytest.raises(FieldError):
        make_field(*bad)


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(FieldError):
        prime_power(q)


def test_irreducibility_small_cases():
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)  # (x + 1)^2
    assert is_irreducible([1, 0, 1], 3)


def test_gf4_multiplication():
    f = gf(4)
    w = f(2)  # the class of x
    assert w * w == w + 1
    assert arith(f, "mul", w, w) == arith(f, "add", w, 1)


def test_gf7_inverse():
    f = gf(7)
    assert arith(f, "inv", 3) == f(5)
    with pytest.raises(ZeroDivisionError):
        arith(f, "inv", 0)


def test_gf9_generator_and_pow():
    f = gf(9)
    g = f.generator
    assert g.multiplicative_order() == 8
    orders = sorted(x.multiplicative_order() for x in f.elements[1:])
    assert orders.count(8) == 4  # phi(8)
    for x in f.elements[1:]:
        assert arith(f, "pow", x, 8) == f.one


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        gf(4)(1) + gf(8)(1)


def test_pow_rejects_negative_in_arith():
    with pytest.raises(FieldError):
        arith(gf(5), "pow", 2, -1)


def test_unknown_op():
    with pytest.raises(FieldError):
        arith(gf(5), "div", 2, 3)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = gf(q)
    els = f.elements
    zero, one = f.zero, f.one
    for x in els:
        assert x + zero == x and x * one == x and x * zero == zero
        assert x + (-x) == zero
        assert x ** q == x  # Frobenius identity
        if x:
            assert x * x.inverse() == one
        for y in els:
            assert x + y == y + x
            assert x * y == y * x
    if q <= 27:
        triples = product(els, repeat=3)
    else:
        # associativity and distributivity over all pairs against a fixed set of thirds
        triples = ((x, y, z) for x in els for y in els for z in els[:: max(1, q // 9)])
    for x, y, z in triples:
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("q", [49, 64, 81])
def test_field_associativity_exhaustive_large(q):
    f = gf(q)
    els = f.elements
    for x in els:
        for y in els:
            xy = x * y
            for z in els:
                assert xy * z == x * (y * z)
                assert x * (y + z) == xy + x * z


def test_prime_field_matches_integers():
    f = gf(13)
    for a in range(13):
        for b in range(13):
            assert (f(a) * f(b)).index == a * b % 13
            assert (f(a) + f(b)).index == (a + b) % 13


def test_conjugate_gf4():
    f = gf(4)
    w = f(2)
    assert conjugate(f, w) == w + 1
    assert conjugate(f, 1) == f.one


def test_conjugate_gf9_fixed_points():
    f = gf(9)
    assert len([x for x in f.elements if conjugate(f, x) == x]) == 3
    assert f.subfield_order == 3


def test_conjugate_needs_square_order():
    with pytest.raises(FieldError):
        conjugate(gf(8), 1)


@pytest.mark.parametrize("q", SQUARE_Q)
def test_conjugation_involution_and_homomorphism(q):
    f = gf(q * q)
    els = f.elements
    assert len(f.subfield_elements()) == q
    for x in els:
        assert x.conjugate().conjugate() == x
        assert f.trace(x) == f.trace(x).conjugate()
        assert f.norm(x) == f.norm(x).conjugate()
    if q * q <= 64:
        for x in els:
            for y in els:
                assert (x + y).conjugate() == x.conjugate() + y.conjugate()
                assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(st.sampled_from([4, 8, 9, 25, 27, 121, 128]), st.integers(0, 10 ** 6),
       st.integers(0, 10 ** 6), st.integers(0, 50))
def test_random_identities(q, i, j, e):
    f = gf(q)
    x, y = f(i % q), f(j % q)
    assert (x + y) - y == x
    if y:
        assert (x * y) / y == x
    assert x ** (e + 1) == x ** e * x
    assert f(x.index) == x and f(x.coeffs) == x
