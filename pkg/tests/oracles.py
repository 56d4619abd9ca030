"""Independent reference computations used to freeze expected values.

Nothing here touches the log/antilog tables or the package's elimination
code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import mpmath
import numpy as np


def naive_mul(a: int, b: int, poly: int, m: int) -> int:
    """Carry-less multiply then reduce the full product bit by bit."""
    prod = 0
    for i in range(m):
        if (b >> i) & 1:
            prod ^= a << i
    for bit in range(2 * m - 2, m - 1, -1):
        if (prod >> bit) & 1:
            prod ^= poly << (bit - m)
    return prod


def naive_pow(a: int, e: int, poly: int, m: int) -> int:
    result = 1
    base = a
    while e:
        if e & 1:
            result = naive_mul(result, base, poly, m)
        base = naive_mul(base, base, poly, m)
        e >>= 1
    return result


def order_of_x(poly: int, m: int) -> int:
    """Multiplicative order of x by square-and-multiply over the divisors of q-1."""
    q1 = (1 << m) - 1
    divisors = [d for d in range(1, q1 + 1) if q1 % d == 0]
    for d in divisors:
        if naive_pow(2, d, poly, m) == 1:
            return d
    return 0


def all_codewords(ctx, code) -> tuple[np.ndarray, np.ndarray]:
    """Every message and its codeword, by direct polynomial evaluation."""
    q, k, n = ctx.q, code.k, code.n
    msgs = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    words = np.zeros((msgs.shape[0], n), dtype=np.int64)
    for j in range(n):
        a, v = int(code.alpha[j]), int(code.v[j])
        apow = [naive_pow(a, i, ctx.reduction_poly, ctx.m) for i in range(k)]
        col = np.zeros(msgs.shape[0], dtype=np.int64)
        for i in range(k):
            factor = naive_mul(apow[i], v, ctx.reduction_poly, ctx.m)
            table = np.array([naive_mul(x, factor, ctx.reduction_poly, ctx.m) for x in range(q)])
            col ^= table[msgs[:, i]]
        words[:, j] = col
    return msgs, words


def nearest_codeword(words: np.ndarray, received: np.ndarray) -> tuple[int, int]:
    """Index and distance of the closest codeword (brute force)."""
    dist = np.count_nonzero(words != received[None, :], axis=1)
    idx = int(np.argmin(dist))
    return idx, int(dist[idx])


def error_patterns(n: int, q: int, max_weight: int):
    for w in range(max_weight + 1):
        for pos in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(pos)] = vals
                yield e


def exact_prange_log2_iterations(n: int, k: int, t: int) -> mpmath.mpf:
    ratio = Fraction(comb(n, t), comb(n - k, t))
    with mpmath.workdps(40):
        return mpmath.log(mpmath.mpf(ratio.numerator) / ratio.denominator, 2)


def naive_rank(rows: list[list[int]], poly: int, m: int) -> int:
    """Gaussian elimination on Python ints with Fermat inverses."""
    q1 = (1 << m) - 1
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = naive_pow(mat[rank][c], q1 - 1, poly, m)
        mat[rank] = [naive_mul(x, inv, poly, m) for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x ^ naive_mul(f, y, poly, m) for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank
