import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_mul, naive_pow, order_of_x
from pyrlce.errors import DivisionByZero, UnsupportedDegree
from pyrlce.gf import FieldContext, FieldError, field_new, is_primitive


@pytest.mark.parametrize("m, poly", [(8, 0x11D), (9, 0x211), (10, 0x409)])
def test_fixed_polynomials(m, poly):
    ctx = field_new(m)
    assert ctx.reduction_poly == poly
    assert ctx.q == 2**m
    # oracle: x has full order q-1 by square-and-multiply
    assert order_of_x(poly, m) == 2**m - 1


@pytest.mark.parametrize("m", range(4, 13))
def test_every_supported_degree_builds_primitive_field(m):
    ctx = field_new(m)
    assert is_primitive(ctx.reduction_poly, m)
    nonzero = np.arange(1, ctx.q)
    assert np.array_equal(ctx.antilog_table[ctx.log_table[nonzero]], nonzero)


def test_lexicographic_fallback_for_small_degrees():
    assert field_new(4).reduction_poly == 0x13
    assert field_new(5).reduction_poly == 0x25


@pytest.mark.parametrize("m", [3, 13, 0])
def test_unsupported_degree(m):
    with pytest.raises(UnsupportedDegree):
        field_new(m)


def test_non_primitive_polynomial_rejected():
    # x^8 + x^4 + x^3 + x + 1 is irreducible but x has order 51
    with pytest.raises(FieldError):
        FieldContext(8, 0x11B)


def test_tables_are_read_only(gf256):
    with pytest.raises(ValueError):
        gf256.log_table[1] = 0


def test_add_examples(gf256):
    assert gf256.add(0x53, 0xCA) == 0x99
    assert gf256.add(0x53, 0x53) == 0
    assert gf256.add(0x53, 0) == 0x53


def test_mul_examples(gf256):
    assert gf256.mul(0x02, 0x80) == 0x1D
    assert gf256.mul(0x37, 1) == 0x37
    assert gf256.mul(0, 0xAB) == 0


def test_pow_examples(gf256):
    assert gf256.pow(0x02, 2) == 0x04
    assert gf256.pow(0x9C, 0) == 1
    assert gf256.pow(0x9C, 255) == 1
    assert gf256.pow(0, 0) == 1
    assert gf256.pow(0, 5) == 0
    with pytest.raises(DivisionByZero):
        gf256.pow(0, -1)
    assert gf256.mul(gf256.pow(0x9C, -3), gf256.pow(0x9C, 3)) == 1


def test_inv_examples(gf256):
    assert gf256.inv(1) == 1
    with pytest.raises(DivisionByZero):
        gf256.inv(0)
    with pytest.raises(DivisionByZero):
        gf256.inv(np.array([3, 0, 5]))


@pytest.mark.parametrize("m", [4, 5, 6, 7, 8])
def test_table_mul_matches_naive_on_all_pairs(m):
    ctx = field_new(m)
    a, b = np.meshgrid(np.arange(ctx.q), np.arange(ctx.q), indexing="ij")
    expected = np.array(
        [[naive_mul(x, y, ctx.reduction_poly, m) for y in range(ctx.q)] for x in range(ctx.q)]
    )
    assert np.array_equal(ctx.mul(a, b), expected)


@pytest.mark.parametrize("m", [9, 10, 11, 12])
def test_table_mul_matches_naive_on_random_pairs(m, rng):
    ctx = field_new(m)
    count = 100_000 if m <= 10 else 5_000
    a = ctx.random(rng, count)
    b = ctx.random(rng, count)
    expected = np.array([naive_mul(int(x), int(y), ctx.reduction_poly, m) for x, y in zip(a, b)])
    assert np.array_equal(ctx.mul(a, b), expected)


def test_inverse_is_unique_by_exhaustive_search(gf16):
    for a in range(1, 16):
        partners = [b for b in range(16) if gf16.mul(a, b) == 1]
        assert partners == [int(gf16.inv(a))]


@pytest.mark.parametrize("m", [8, 9])
def test_pow_matches_naive(m, rng):
    ctx = field_new(m)
    for a, e in zip(ctx.random(rng, 200), rng.integers(0, 3 * ctx.q, 200)):
        assert ctx.pow(int(a), int(e)) == naive_pow(int(a), int(e), ctx.reduction_poly, m)


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 12), st.data())
def test_division_inverts_multiplication(m, data):
    ctx = field_new(m)
    a = data.draw(st.integers(0, ctx.q - 1))
    b = data.draw(st.integers(1, ctx.q - 1))
    assert ctx.div(ctx.mul(a, b), b) == a


def test_serialization_roundtrip(rng):
    for m in (8, 10):
        ctx = field_new(m)
        values = ctx.random(rng, 37)
        blob = ctx.to_bytes(values)
        assert len(blob) == 37 * ctx.element_bytes
        assert np.array_equal(ctx.from_bytes(blob, 37), values)
    assert field_new(10).to_bytes([0x3FF, 1]) == b"\x03\xff\x00\x01"


def test_from_bytes_rejects_out_of_range():
    ctx = field_new(10)
    with pytest.raises(FieldError):
        ctx.from_bytes(b"\x04\x00", 1)


def test_poly_helpers(gf256):
    # (x + 1)(x + 2) = x^2 + 3x + 2 in characteristic 2
    assert list(gf256.poly_mul([1, 1], [2, 1])) == [2, 3, 1]
    assert list(gf256.poly_eval([2, 3, 1], [1, 2, 0])) == [0, 0, 2]
