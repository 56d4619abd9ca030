"""Arithmetic in GF(2^m) backed by log/antilog tables.

Elements are plain integers (or numpy integer arrays) holding the bit
polynomial of the element.  Every method on :class:`FieldContext` accepts
scalars or arrays and broadcasts like numpy.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import DivisionByZero, RlceError, UnsupportedDegree

MIN_DEGREE = 4
MAX_DEGREE = 12

# Fixed choices for the degrees used by the recommended parameter sets.
# Other degrees fall back to the lexicographically smallest primitive polynomial.
FIXED_POLYNOMIALS = {8: 0x11D, 9: 0x211, 10: 0x409}

# Full q*q product table is built only up to this degree (2 MiB at m=10).
_MUL_TABLE_MAX_DEGREE = 10


class FieldError(RlceError, ValueError):
    pass


def clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Shift-and-XOR product of two bit polynomials, reduced modulo ``poly``."""
    result = 0
    top = 1 << m
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return result


def multiplicative_order_of_x(poly: int, m: int) -> int:
    """Order of the class of x in GF(2)[x]/(poly), or 0 if x is not a unit."""
    q1 = (1 << m) - 1
    x = 2 if m > 1 else 1
    value = x
    for order in range(1, q1 + 1):
        if value == 1:
            return order
        value = clmul_mod(value, x, poly, m)
    return 0


def is_primitive(poly: int, m: int) -> bool:
    if poly >> m != 1 or not poly & 1:
        return False
    return multiplicative_order_of_x(poly, m) == (1 << m) - 1


def smallest_primitive_polynomial(m: int) -> int:
    for poly in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_primitive(poly, m):
            return poly
    raise FieldError(f"no primitive polynomial of degree {m}")  # pragma: no cover


class FieldContext:
    """GF(2^m) with a fixed primitive reduction polynomial.

    The generator of the multiplicative group is the class of ``x`` (value 2).
    Tables are read-only numpy arrays, so a context can be shared freely.
    """

    def __init__(self, m: int, reduction_poly: int | None = None):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise UnsupportedDegree(f"m={m} outside supported range {MIN_DEGREE}..{MAX_DEGREE}")
        if reduction_poly is None:
            reduction_poly = FIXED_POLYNOMIALS.get(m) or smallest_primitive_polynomial(m)
        self.m = m
        self.q = 1 << m
        self.reduction_poly = reduction_poly
        self.dtype = np.uint8 if m <= 8 else np.uint16
        self.element_bytes = (m + 7) // 8

        q1 = self.q - 1
        antilog = np.zeros(2 * q1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        value = 1
        for i in range(q1):
            if i > 0 and value == 1:
                raise FieldError(f"polynomial {reduction_poly:#x} is not primitive for m={m}")
            antilog[i] = value
            log[value] = i
            value <<= 1
            if value & self.q:
                value ^= reduction_poly
        if value != 1:
            raise FieldError(f"polynomial {reduction_poly:#x} is not primitive for m={m}")
        antilog[q1:] = antilog[:q1]
        log[0] = 0  # never consulted: zero operands are masked out
        antilog.setflags(write=False)
        log.setflags(write=False)
        self.antilog_table = antilog
        self.log_table = log

    def __repr__(self) -> str:
        return f"FieldContext(m={self.m}, reduction_poly={self.reduction_poly:#x})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldContext)
            and self.m == other.m
            and self.reduction_poly == other.reduction_poly
        )

    def __hash__(self) -> int:
        return hash((self.m, self.reduction_poly))

    @cached_property
    def mul_table(self) -> np.ndarray | None:
        """Dense q x q product table, or None for large fields."""
        if self.m > _MUL_TABLE_MAX_DEGREE:
            return None
        logs = self.log_table
        s = logs[:, None] + logs[None, :]
        table = self.antilog_table[s].astype(self.dtype)
        table[0, :] = 0
        table[:, 0] = 0
        table.setflags(write=False)
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        q1 = self.q - 1
        table = np.zeros(self.q, dtype=self.dtype)
        table[1:] = self.antilog_table[(q1 - self.log_table[1:]) % q1]
        table.setflags(write=False)
        return table

    # -- element-level arithmetic (scalars or arrays) -----------------------

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise FieldError(f"values outside GF(2^{self.m})")
        return arr.astype(self.dtype, copy=False)

    def add(self, a, b):
        return np.bitwise_xor(a, b)

    sub = add

    def mul(self, a, b):
        table = self.mul_table
        if table is not None:
            return table[a, b]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.antilog_table[self.log_table[a] + self.log_table[b]].astype(self.dtype)
        return np.where((a == 0) | (b == 0), self.dtype(0), out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """``a ** e`` elementwise; ``e`` may be negative for nonzero ``a``."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        zero = a == 0
        if np.any(zero & (e < 0)):
            raise DivisionByZero("zero raised to a negative power")
        q1 = self.q - 1
        out = self.antilog_table[(self.log_table[a] * e) % q1].astype(self.dtype)
        out = np.where(zero, np.where(e == 0, 1, 0).astype(self.dtype), out)
        return out if out.ndim else self.dtype(out)

    def exp(self, i):
        """Power of the generator: ``x ** i``."""
        return self.antilog_table[np.asarray(i, dtype=np.int64) % (self.q - 1)].astype(self.dtype)

    # -- polynomials (coefficient arrays, lowest degree first) ---------------

    def poly_eval(self, coeffs, points):
        """Horner evaluation of a polynomial at each of ``points``."""
        points = np.asarray(points, dtype=self.dtype)
        acc = np.zeros(points.shape, dtype=self.dtype)
        for c in np.asarray(coeffs, dtype=self.dtype)[::-1]:
            acc = self.mul(acc, points) ^ c
        return acc

    def poly_mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        out = np.zeros(len(a) + len(b) - 1, dtype=self.dtype)
        for i, coeff in enumerate(a):
            if coeff:
                out[i : i + len(b)] ^= self.mul(coeff, b)
        return out

    # -- serialization -------------------------------------------------------

    def to_bytes(self, values) -> bytes:
        """Big-endian, ``ceil(m/8)`` bytes per element."""
        arr = self.asarray(values).ravel()
        return arr.astype(">u1" if self.element_bytes == 1 else ">u2").tobytes()

    def from_bytes(self, data: bytes, count: int) -> np.ndarray:
        width = self.element_bytes
        if len(data) != width * count:
            raise FieldError(f"expected {width * count} bytes, got {len(data)}")
        arr = np.frombuffer(data, dtype=">u1" if width == 1 else ">u2").astype(self.dtype)
        return self.asarray(arr)

    # -- sampling ------------------------------------------------------------

    def random(self, rng: np.random.Generator, shape=(), nonzero: bool = False) -> np.ndarray:
        low = 1 if nonzero else 0
        return rng.integers(low, self.q, size=shape, dtype=np.int64).astype(self.dtype)


_CONTEXTS: dict[int, FieldContext] = {}


def field_new(m: int) -> FieldContext:
    """Shared context for GF(2^m) with the default reduction polynomial."""
    if m not in _CONTEXTS:
        _CONTEXTS[m] = FieldContext(m)
    return _CONTEXTS[m]
