"""Structural and cost analysis of RLCE public keys.

* Schur (star) products and square-code dimension, the standard
  distinguisher between algebraic and random codes.
* Constructive code equivalences: matching a target matrix with an RLCE
  style extension of a GRS generator.
* Information-set-decoding work factors (Prange, q-ary Lee-Brickell).
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from typing import Iterable

import mpmath
import numpy as np

from .errors import DimensionMismatch, Infeasible, IndexOutOfRange, InvalidParameters, SingularMatrix
from .gf import FieldContext, field_new
from .grs import GrsCode, grs_new
from .linalg import _eliminate, mat_inverse, mat_mul, random_matrix, random_nonsingular, rank
from .rng import spawn
from .scheme import RlceParams, keygen

GRS_LIKE = "GRS-like"
RANDOM_LIKE = "random-like"
INTERMEDIATE = "intermediate"


def star_product(ctx: FieldContext, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=ctx.dtype)
    b = np.asarray(b, dtype=ctx.dtype)
    if a.shape != b.shape:
        raise DimensionMismatch(f"star product of shapes {a.shape} and {b.shape}")
    return ctx.mul(a, b)


@dataclass(frozen=True)
class SquareCodeReport:
    k: int
    N: int
    square_dim: int
    bound: int
    classification: str


def _pair_products(ctx: FieldContext, g: np.ndarray) -> Iterable[np.ndarray]:
    """Rows ``g_i * g_j`` for ``i <= j``, grouped by ``i``."""
    for i in range(g.shape[0]):
        yield ctx.mul(g[i][None, :], g[i:])


def square_code_dimension(ctx: FieldContext, g, chunk: int | None = None) -> SquareCodeReport:
    """Dimension of the span of all pairwise star products of the rows of ``g``.

    Products are fed to the elimination in chunks and generation stops as
    soon as the rank reaches the code length.
    """
    g = np.asarray(g, dtype=ctx.dtype)
    k, big_n = g.shape
    bound = min(big_n, k * (k + 1) // 2)
    chunk = chunk or big_n + 16

    basis = np.zeros((0, big_n), dtype=ctx.dtype)
    pending: list[np.ndarray] = []
    pending_rows = 0

    def absorb(rows: list[np.ndarray]) -> np.ndarray:
        work = np.concatenate([basis, *rows], axis=0)
        pivots = _eliminate(ctx, work, reduced=False)
        return work[: len(pivots)]

    for block in _pair_products(ctx, g):
        pending.append(block)
        pending_rows += block.shape[0]
        if pending_rows >= chunk:
            basis = absorb(pending)
            pending, pending_rows = [], 0
            if basis.shape[0] == big_n:
                break
    if pending and basis.shape[0] < big_n:
        basis = absorb(pending)

    dim = basis.shape[0]
    if dim == bound:
        label = RANDOM_LIKE
    elif dim <= 2 * k - 1 < bound:
        label = GRS_LIKE
    else:
        label = INTERMEDIATE
    return SquareCodeReport(k=k, N=big_n, square_dim=dim, bound=bound, classification=label)


def puncture(g, column: int) -> np.ndarray:
    g = np.asarray(g)
    if not 0 <= column < g.shape[1]:
        raise IndexOutOfRange(f"column {column} outside 0..{g.shape[1] - 1}")
    return np.delete(g, column, axis=1)


@dataclass(frozen=True)
class PunctureResult:
    trial_id: int
    punctured_column: int
    k: int
    N: int
    square_dim: int
    bound: int
    classification: str


CSV_FIELDS = ("trial_id", "punctured_column", "k", "N", "square_dim", "bound", "classification")


def distinguisher_experiment(
    params: RlceParams,
    trials: int,
    rng: np.random.Generator,
    *,
    columns: Iterable[int] | None = None,
    control: bool = False,
    allow_large: bool = False,
) -> list[PunctureResult]:
    """Square-code dimension of every single-column puncture of fresh keys.

    With ``control`` the GRS generator of the private code is used instead of
    the public key.  Parameters with ``k(k+1)/2`` product rows beyond a few
    thousand require ``allow_large`` (paper-size keys take minutes per key).
    """
    if not allow_large and params.k * (params.k + 1) // 2 > 5000:
        raise InvalidParameters("parameters too large for a desk-scale run; pass allow_large=True")
    ctx = field_new(params.m)
    results: list[PunctureResult] = []
    for trial_id, trial_rng in enumerate(spawn(rng, trials)):
        if control:
            g = grs_new(params.n, params.k, ctx, trial_rng).generator
        else:
            g = keygen(params, trial_rng)[0].G
        cols = range(g.shape[1]) if columns is None else columns
        for col in cols:
            rep = square_code_dimension(ctx, puncture(g, col))
            results.append(PunctureResult(trial_id, col, **asdict(rep)))
    return results


def random_like_fraction(results: list[PunctureResult]) -> float:
    if not results:
        return 0.0
    return sum(r.classification == RANDOM_LIKE for r in results) / len(results)


def write_csv(results: Iterable[PunctureResult], stream=None) -> str:
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in results:
        writer.writerow([getattr(r, f) for f in CSV_FIELDS])
    return buf.getvalue() if stream is None else ""


def _random_full_rank(ctx, rows, cols, rng, prefix=None) -> np.ndarray:
    """Random ``rows x cols`` matrix of rank ``min(rows, cols)``, optionally with fixed leading columns."""
    while True:
        extra = random_matrix(ctx, rows, cols - (0 if prefix is None else prefix.shape[1]), rng)
        m = extra if prefix is None else np.concatenate([prefix, extra], axis=1)
        if rank(ctx, m) == min(rows, cols):
            return m


def _complete_to_invertible(ctx, m: np.ndarray, rng) -> np.ndarray:
    """Append random columns to a full-column-rank ``m`` until it is square and invertible."""
    return _random_full_rank(ctx, m.shape[0], m.shape[0], rng, prefix=m)


def construct_target(ctx: FieldContext, k: int, n: int, width: int, rng: np.random.Generator) -> np.ndarray:
    """Random ``k x n*width`` matrix whose ``width``-column blocks all have full rank."""
    return np.concatenate([_random_full_rank(ctx, k, width, rng) for _ in range(n)], axis=1)


def construct_equivalent(
    ctx: FieldContext, R, code: GrsCode, r: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Blocks ``C_i`` (k x r) and ``A_i`` ((r+1) x (r+1)) with ``R = [g_0, C_0, ..., g_{n-1}, C_{n-1}] A``.

    Needs ``r + 1 >= k``.  Each ``[g_i, C_i]`` is drawn with full rank ``k``;
    when ``r + 1 > k`` both sides are completed with random rows to square
    invertible matrices before solving, so ``A_i`` is invertible whenever
    ``R_i`` has full rank.
    """
    R = np.asarray(R, dtype=ctx.dtype)
    k, n, width = code.k, code.n, r + 1
    if width < k:
        raise Infeasible(f"r+1={width} < k={k}: block equivalence needs r+1 >= k")
    if R.shape != (k, n * width):
        raise DimensionMismatch(f"R must be {k} x {n * width}, got {R.shape}")
    gs = np.asarray(code.generator)
    c_blocks = np.zeros((n, k, r), dtype=ctx.dtype)
    a_blocks = np.zeros((n, width, width), dtype=ctx.dtype)
    for i in range(n):
        target = R[:, i * width : (i + 1) * width]
        left = _random_full_rank(ctx, k, width, rng, prefix=gs[:, i : i + 1])
        c_blocks[i] = left[:, 1:]
        if width == k:
            a_blocks[i] = mat_mul(ctx, mat_inverse(ctx, left), target)
            continue
        left_sq = _complete_to_invertible(ctx, left.T, rng).T
        right_sq = np.concatenate([target, random_matrix(ctx, width - k, width, rng)], axis=0)
        if rank(ctx, target) == k:
            right_sq = _complete_to_invertible(ctx, target.T, rng).T
        a_blocks[i] = mat_mul(ctx, mat_inverse(ctx, left_sq), right_sq)
    return c_blocks, a_blocks


def assemble_extended(ctx: FieldContext, gs, c_blocks, a_blocks) -> np.ndarray:
    """``[g_0, C_0, ..., g_{n-1}, C_{n-1}] * diag(A_0, ..., A_{n-1})``."""
    gs = np.asarray(gs, dtype=ctx.dtype)
    blocks = [
        mat_mul(ctx, np.concatenate([gs[:, i : i + 1], c_blocks[i]], axis=1), a_blocks[i])
        for i in range(gs.shape[1])
    ]
    return np.concatenate(blocks, axis=1)


def factor_first_column(ctx: FieldContext, g0, target, r: int, rng: np.random.Generator):
    """``(S, C_0, A_0)`` with ``target = S [g_0, C_0] A_0``, ``S`` nonsingular.

    Two full-column-rank ``k x (r+1)`` matrices are equivalent; completing
    each to a basis gives the left factor.
    """
    g0 = np.asarray(g0, dtype=ctx.dtype).reshape(-1, 1)
    target = np.asarray(target, dtype=ctx.dtype)
    k, width = g0.shape[0], r + 1
    if target.shape != (k, width):
        raise DimensionMismatch(f"target must be {k} x {width}")
    if width > k or rank(ctx, target) < width or not g0.any():
        raise Infeasible("target must have full column rank r+1 <= k and g_0 must be nonzero")
    a0, a0_inv = random_nonsingular(ctx, width, rng, with_inverse=True)
    reduced = mat_mul(ctx, target, a0_inv)
    left = _random_full_rank(ctx, k, width, rng, prefix=g0)
    basis_target = _complete_to_invertible(ctx, reduced, rng)
    basis_left = _complete_to_invertible(ctx, left, rng)
    s = mat_mul(ctx, basis_target, mat_inverse(ctx, basis_left))
    return s, left[:, 1:], a0


def randomized_column_theorem_check(
    ctx: FieldContext, code: GrsCode, r: int, rng: np.random.Generator, target=None
) -> bool:
    """Realize a (random, full-rank) ``k x (r+1)`` target from the first GRS column.

    Returns False when the target is outside the hypothesis (rank deficient).
    """
    k = code.k
    if target is None:
        target = _random_full_rank(ctx, k, r + 1, rng)
    try:
        s, c0, a0 = factor_first_column(ctx, code.generator[:, 0], target, r, rng)
    except Infeasible:
        return False
    if rank(ctx, s) < k:
        return False
    block = np.concatenate([code.generator[:, :1], c0], axis=1)
    return np.array_equal(mat_mul(ctx, mat_mul(ctx, s, block), a0), np.asarray(target, dtype=ctx.dtype))


# -- information-set decoding -------------------------------------------------

mpmath.mp.prec = 113  # quad-precision mantissa for log-binomials up to n ~ 10^4

PRANGE = "prange"
LEE_BRICKELL = "lee-brickell"


@dataclass(frozen=True)
class IsdEstimate:
    n: int
    k: int
    t: int
    q: int
    algorithm: str
    p: int
    log2_cost: float
    log2_iterations: float


def log2_binomial(n: int, k: int) -> mpmath.mpf:
    if k < 0 or k > n:
        return mpmath.mpf("-inf")
    return (mpmath.loggamma(n + 1) - mpmath.loggamma(k + 1) - mpmath.loggamma(n - k + 1)) / mpmath.log(2)


def elimination_ops(n: int, k: int) -> int:
    """Field operations to bring an ``(n-k) x n`` parity-check matrix to systematic form."""
    return (n - k) ** 2 * (n + k) // 2


def prange_log2_iterations(n: int, k: int, t: int) -> mpmath.mpf:
    return log2_binomial(n, t) - log2_binomial(n - k, t)


def isd_workfactor(n: int, k: int, t: int, q: int, algorithm: str = LEE_BRICKELL, max_p: int = 12) -> IsdEstimate:
    """Bit-operation cost of generic decoding of ``t`` errors in an ``[n, k]`` code over GF(q).

    Each field operation is charged ``log2 q`` bit operations.  Lee-Brickell
    enumerates every error pattern of weight at most ``p`` on the information
    set; ``p = 0`` is Prange.  Counting "at most p" rather than "exactly p"
    keeps the cost nondecreasing in ``t``.
    """
    if not (0 < k < n and 0 <= t <= n - k and q >= 2):
        raise InvalidParameters(f"need 0 < k < n, 0 <= t <= n-k, q >= 2 (got n={n}, k={k}, t={t}, q={q})")
    if algorithm not in (PRANGE, LEE_BRICKELL):
        raise InvalidParameters(f"unknown algorithm {algorithm!r}")
    log_field_op = mpmath.log(mpmath.log(q, 2), 2)
    log_total = log2_binomial(n, t)
    two = mpmath.mpf(2)
    gauss = mpmath.mpf(elimination_ops(n, k))
    success = mpmath.mpf(0)
    enum = mpmath.mpf(0)
    best = None
    top = 0 if algorithm == PRANGE else min(t, k, max_p)
    for p in range(top + 1):
        success += two ** (log2_binomial(k, p) + log2_binomial(n - k, t - p) - log_total)
        enum += two ** (log2_binomial(k, p) + p * mpmath.log(q - 1, 2)) * p * (n - k)
        log_iter = -mpmath.log(success, 2)
        log_cost = mpmath.log(gauss + enum, 2) + log_field_op + log_iter
        if best is None or log_cost < best[0]:
            best = (log_cost, log_iter, p)
    log_cost, log_iter, p = best
    return IsdEstimate(n, k, t, q, algorithm, p, float(log_cost), float(log_iter))


def rlce_isd_workfactor(params: RlceParams, algorithm: str = LEE_BRICKELL) -> IsdEstimate:
    """Generic decoding of an RLCE key is generic decoding of its ``[n(r+1), k]`` public code."""
    return isd_workfactor(params.length, params.k, params.t, params.q, algorithm)
