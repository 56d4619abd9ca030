"""Dense linear algebra over GF(2^m).

Matrices are 2-D numpy arrays of field elements; the owning
:class:`~pyrlce.gf.FieldContext` is passed explicitly.  No function mutates
its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularMatrix
from .gf import FieldContext


def identity(ctx: FieldContext, n: int) -> np.ndarray:
    return np.eye(n, dtype=ctx.dtype)


def mat_mul(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=ctx.dtype)
    b = np.asarray(b, dtype=ctx.dtype)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=ctx.dtype)
    for j in range(a.shape[1]):
        col = a[:, j]
        if col.any():
            out ^= ctx.mul(col[:, None], b[j][None, :])
    return out


def vec_mat(ctx: FieldContext, v: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Row vector times matrix."""
    v = np.asarray(v, dtype=ctx.dtype)
    m = np.asarray(m, dtype=ctx.dtype)
    if v.ndim != 1 or m.ndim != 2 or v.shape[0] != m.shape[0]:
        raise DimensionMismatch(f"cannot multiply vector {v.shape} by {m.shape}")
    if m.shape[0] == 0:
        return np.zeros(m.shape[1], dtype=ctx.dtype)
    return np.bitwise_xor.reduce(ctx.mul(v[:, None], m), axis=0)


def _eliminate(ctx: FieldContext, work: np.ndarray, *, reduced: bool, ncols: int | None = None):
    """In-place Gaussian elimination with first-nonzero pivoting.

    Pivots are searched only among the first ``ncols`` columns.  Returns the
    pivot column list.
    """
    rows, cols = work.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        pivot_row = ctx.mul(ctx.inv(work[r, c]), work[r, c:])
        work[r, c:] = pivot_row
        factors = work[:, c].copy()
        factors[r] = 0
        if not reduced:
            factors[:r] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            work[targets, c:] ^= ctx.mul(factors[targets, None], pivot_row[None, :])
        pivots.append(c)
        r += 1
    return pivots


def rref(ctx: FieldContext, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and the pivot columns."""
    work = np.array(a, dtype=ctx.dtype, copy=True)
    if work.ndim != 2:
        raise DimensionMismatch("rref expects a matrix")
    pivots = _eliminate(ctx, work, reduced=True)
    return work, pivots


def rank(ctx: FieldContext, a: np.ndarray) -> int:
    work = np.array(a, dtype=ctx.dtype, copy=True)
    if work.ndim != 2:
        raise DimensionMismatch("rank expects a matrix")
    return len(_eliminate(ctx, work, reduced=False))


def mat_inverse(ctx: FieldContext, a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=ctx.dtype)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"inverse needs a square matrix, got {a.shape}")
    n = a.shape[0]
    work = np.concatenate([a, identity(ctx, n)], axis=1)
    pivots = _eliminate(ctx, work, reduced=True, ncols=n)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    return work[:, n:].copy()


def solve(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` for square nonsingular ``a``; ``b`` is a vector."""
    a = np.asarray(a, dtype=ctx.dtype)
    b = np.asarray(b, dtype=ctx.dtype)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape != (a.shape[0],):
        raise DimensionMismatch(f"cannot solve {a.shape} system with rhs {b.shape}")
    n = a.shape[0]
    work = np.concatenate([a, b[:, None]], axis=1)
    if len(_eliminate(ctx, work, reduced=True, ncols=n)) < n:
        raise SingularMatrix("system matrix is singular")
    return work[:, n].copy()


def random_matrix(ctx: FieldContext, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return ctx.random(rng, (rows, cols))


def random_nonsingular(
    ctx: FieldContext, n: int, rng: np.random.Generator, *, with_inverse: bool = False
):
    """Uniform element of GL(n, q) by whole-matrix rejection sampling.

    With ``with_inverse`` the pair ``(matrix, inverse)`` is returned; the
    inverse falls out of the same elimination used to test singularity.
    """
    if n < 1:
        raise DimensionMismatch("size must be positive")
    while True:
        m = random_matrix(ctx, n, n, rng)
        try:
            inverse = mat_inverse(ctx, m)
        except SingularMatrix:
            continue
        return (m, inverse) if with_inverse else m


@dataclass(frozen=True)
class Permutation:
    """Index-array permutation.

    Acting on a row vector it sends coordinate ``i`` to ``map[i]``, which is
    the product ``v @ P`` with ``P[i, map[i]] = 1``.
    """

    map: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.map, dtype=np.int64)
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError("map is not a bijection on 0..N-1")
        arr.setflags(write=False)
        object.__setattr__(self, "map", arr)

    def __len__(self) -> int:
        return self.map.size

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.map, other.map)

    def __hash__(self) -> int:
        return hash(self.map.tobytes())

    def inverse(self) -> Permutation:
        return Permutation(np.argsort(self.map))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n))


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    if n < 1:
        raise DimensionMismatch("size must be positive")
    return Permutation(rng.permutation(n))


def apply_permutation(v: np.ndarray, p: Permutation, inverse: bool = False) -> np.ndarray:
    """``v @ P`` (or ``v @ P^-1``) along the last axis.

    Works on vectors and, column-wise, on matrices.
    """
    v = np.asarray(v)
    if v.shape[-1] != len(p):
        raise DimensionMismatch(f"length {v.shape[-1]} does not match permutation size {len(p)}")
    if inverse:
        return v[..., p.map].copy()
    out = np.empty_like(v)
    out[..., p.map] = v
    return out


def weight(v: np.ndarray) -> int:
    """Hamming weight."""
    return int(np.count_nonzero(v))
