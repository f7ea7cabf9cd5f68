import pytest
from hypothesis import given, strategies as st

from eqpoincare.charring import (
    CharacterRing,
    CharElement,
    RingMismatchError,
    cyclic_character_ring,
)


def test_basis_enumeration():
    r = CharacterRing((3,))
    assert list(r.characters()) == [(0,), (1,), (2,)]
    r22 = CharacterRing((2, 2))
    assert list(r22.characters()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert r22.size == 4


def test_reduce_mod_orders():
    r = CharacterRing((3,))
    assert r.reduce((5,)) == (2,)
    assert r.reduce((-1,)) == (2,)
    r22 = CharacterRing((2, 2))
    assert r22.reduce((3, -2)) == (1, 0)
    with pytest.raises(ValueError):
        r.reduce((1, 0))


def test_order_one_rejected_but_trivial_ring_allowed():
    with pytest.raises(ValueError):
        CharacterRing((1,))
    with pytest.raises(ValueError):
        CharacterRing((3, 1))
    trivial = CharacterRing(())
    assert trivial.size == 1
    assert list(trivial.characters()) == [()]
    assert trivial.one().trivial_part() == 1


def test_cyclic_constructor_normalizes_order_one():
    assert cyclic_character_ring(1).orders == ()
    assert cyclic_character_ring(5).orders == (5,)
    with pytest.raises(ValueError):
        cyclic_character_ring(0)


def test_monomial_product_wraps():
    r = CharacterRing((3,))
    u = r.monomial((1,))
    assert u * u == r.monomial((2,))
    assert u * u * u == r.one()


def test_zero_divisors():
    r = CharacterRing((2,))
    u = r.monomial((1,))
    one = r.one()
    assert (one - u) * (one + u) == r.zero()
    r3 = CharacterRing((3,))
    v = r3.monomial((1,))
    assert (r3.one() - v) * (r3.one() + v + v * v) == r3.zero()


def test_trivial_part_and_augment():
    r = CharacterRing((2, 2))
    a = r.element({(0, 0): 2, (1, 0): -1, (0, 1): 3})
    assert a.trivial_part() == 2
    assert a.augment() == 4
    assert r.zero().augment() == 0


def test_integer_scalars():
    r = CharacterRing((3,))
    u = r.monomial((1,))
    assert 2 * u == r.monomial((1,), 2)
    assert u - 1 == r.element({(1,): 1, (0,): -1})
    assert 1 + u == u + 1


def test_ring_mismatch():
    a = CharacterRing((2,)).one()
    b = CharacterRing((3,)).one()
    with pytest.raises(RingMismatchError):
        a * b
    with pytest.raises(RingMismatchError):
        a + b


def test_pow():
    r = CharacterRing((5,))
    u = r.monomial((1,))
    assert (1 + u) ** 0 == r.one()
    assert u**7 == r.monomial((2,))
    with pytest.raises(ValueError):
        u**-1


def elements(ring):
    chars = list(ring.characters())
    return st.lists(
        st.tuples(st.sampled_from(chars), st.integers(-3, 3)),
        max_size=4,
    ).map(lambda pairs: ring.element({}) + sum(
        (ring.monomial(e, c) for e, c in pairs), ring.zero()
    ))


RINGS = [CharacterRing((3,)), CharacterRing((2, 2)), CharacterRing(())]


@given(st.data())
def test_ring_axioms(data):
    ring = data.draw(st.sampled_from(RINGS))
    a = data.draw(elements(ring))
    b = data.draw(elements(ring))
    c = data.draw(elements(ring))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ring.one() == a
    assert a + ring.zero() == a
    assert a - a == ring.zero()


@given(st.data())
def test_augment_is_a_ring_homomorphism(data):
    ring = data.draw(st.sampled_from(RINGS))
    a = data.draw(elements(ring))
    b = data.draw(elements(ring))
    assert (a + b).augment() == a.augment() + b.augment()
    assert (a * b).augment() == a.augment() * b.augment()
    assert ring.one().augment() == 1
