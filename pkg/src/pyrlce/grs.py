"""Generalized Reed-Solomon codes with a Berlekamp-Massey decoder."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import DecodeFailure, DimensionMismatch, InvalidParameters
from .gf import FieldContext
from .linalg import mat_inverse, solve, vec_mat


class GrsCode:
    """GRS_k(alpha, v): codewords ``(v_j * f(alpha_j))_j`` for ``deg f < k``.

    Evaluation points may include zero.  The object is immutable; derived
    matrices are computed lazily and cached.
    """

    def __init__(self, ctx: FieldContext, alpha, v, k: int):
        alpha = ctx.asarray(alpha).copy()
        v = ctx.asarray(v).copy()
        n = alpha.size
        if alpha.ndim != 1 or v.shape != alpha.shape:
            raise InvalidParameters("alpha and v must be vectors of equal length")
        if not 1 <= k <= n <= ctx.q:
            raise InvalidParameters(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={ctx.q}")
        if np.unique(alpha).size != n:
            raise InvalidParameters("evaluation points must be distinct")
        if np.any(v == 0):
            raise InvalidParameters("column multipliers must be nonzero")
        alpha.setflags(write=False)
        v.setflags(write=False)
        self.ctx = ctx
        self.alpha = alpha
        self.v = v
        self.k = k

    @property
    def n(self) -> int:
        return self.alpha.size

    @property
    def t(self) -> int:
        """Unique-decoding radius."""
        return (self.n - self.k) // 2

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    def __repr__(self) -> str:
        return f"GrsCode(n={self.n}, k={self.k}, m={self.ctx.m})"

    # -- matrices ------------------------------------------------------------

    def _vandermonde(self, multipliers, rows: int) -> np.ndarray:
        ctx = self.ctx
        powers = ctx.pow(self.alpha[None, :], np.arange(rows)[:, None])
        return ctx.mul(powers, multipliers[None, :])

    @cached_property
    def generator(self) -> np.ndarray:
        g = self._vandermonde(self.v, self.k)
        g.setflags(write=False)
        return g

    @cached_property
    def dual_multipliers(self) -> np.ndarray:
        """Column multipliers of the dual code, ``1 / (v_j * prod_{l != j}(alpha_j - alpha_l))``."""
        ctx = self.ctx
        diffs = self.alpha[:, None] ^ self.alpha[None, :]
        np.fill_diagonal(diffs, 1)
        logs = ctx.log_table[diffs].sum(axis=1) % (ctx.q - 1)
        prods = ctx.antilog_table[logs].astype(ctx.dtype)
        w = ctx.inv(ctx.mul(prods, self.v))
        w.setflags(write=False)
        return w

    @cached_property
    def parity_check(self) -> np.ndarray:
        h = self._vandermonde(self.dual_multipliers, self.n - self.k)
        h.setflags(write=False)
        return h

    @cached_property
    def _info_inverse(self) -> np.ndarray:
        # first k coordinates always form an information set of an MDS code
        return mat_inverse(self.ctx, self.generator[:, : self.k])

    # -- coding ----------------------------------------------------------------

    def encode(self, message) -> np.ndarray:
        message = self.ctx.asarray(message)
        if message.shape != (self.k,):
            raise DimensionMismatch(f"message must have {self.k} symbols")
        return self.ctx.mul(self.ctx.poly_eval(message, self.alpha), self.v)

    def syndrome(self, word) -> np.ndarray:
        word = self.ctx.asarray(word)
        if word.shape != (self.n,):
            raise DimensionMismatch(f"word must have {self.n} symbols")
        return np.bitwise_xor.reduce(self.ctx.mul(self.parity_check, word[None, :]), axis=1)

    def message_of(self, codeword) -> np.ndarray:
        """Polynomial coefficients of an error-free codeword."""
        return vec_mat(self.ctx, np.asarray(codeword)[: self.k], self._info_inverse)

    def decode(self, received, t: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Correct up to ``t`` symbol errors.

        Returns ``(message, error)`` with ``received = encode(message) + error``.
        Raises :class:`DecodeFailure` when no codeword lies within distance ``t``
        of ``received`` that the decoder can reach.
        """
        ctx = self.ctx
        t = self.t if t is None else t
        if t < 0 or 2 * t > self.n - self.k:
            raise InvalidParameters(f"t={t} exceeds the unique-decoding radius {self.t}")
        received = ctx.asarray(received)
        synd = self.syndrome(received)
        error = np.zeros(self.n, dtype=ctx.dtype)
        if not synd.any():
            return self.message_of(received), error
        if t == 0:
            raise DecodeFailure("nonzero syndrome with t = 0")

        locator, nerr = berlekamp_massey(ctx, synd[: 2 * t])
        if nerr > t:
            raise DecodeFailure(f"error locator degree {nerr} exceeds t={t}")
        # sigma(z) = z^L * C(1/z) = prod (z - X_j); keeps a zero locator visible
        sigma = np.zeros(nerr + 1, dtype=ctx.dtype)
        sigma[: min(locator.size, nerr + 1)] = locator[: nerr + 1]
        sigma = sigma[::-1]
        positions = np.flatnonzero(ctx.poly_eval(sigma, self.alpha) == 0)
        if positions.size != nerr:
            raise DecodeFailure(f"found {positions.size} locator roots, expected {nerr}")

        x = self.alpha[positions]
        system = ctx.pow(x[None, :], np.arange(nerr)[:, None])
        try:
            scaled = solve(ctx, system, synd[:nerr])
        except Exception as exc:  # pragma: no cover - distinct locators make this unreachable
            raise DecodeFailure("singular magnitude system") from exc
        error[positions] = ctx.div(scaled, self.dual_multipliers[positions])

        corrected = received ^ error
        if self.syndrome(corrected).any():
            raise DecodeFailure("correction does not reach a codeword")
        return self.message_of(corrected), error


def berlekamp_massey(ctx: FieldContext, synd) -> tuple[np.ndarray, int]:
    """Shortest LFSR generating ``synd``.

    Returns the connection polynomial ``C`` (lowest degree first, ``C[0] = 1``)
    and the register length ``L``.
    """
    synd = np.asarray(synd, dtype=ctx.dtype)
    size = synd.size + 1
    conn = np.zeros(size, dtype=ctx.dtype)
    prev = np.zeros(size, dtype=ctx.dtype)
    conn[0] = prev[0] = 1
    length, shift, last = 0, 1, 1
    for i in range(synd.size):
        d = synd[i]
        if length:
            d ^= np.bitwise_xor.reduce(ctx.mul(conn[1 : length + 1], synd[i - length : i][::-1]))
        if d == 0:
            shift += 1
            continue
        coef = ctx.div(d, last)
        update = np.zeros(size, dtype=ctx.dtype)
        update[shift:] = ctx.mul(coef, prev[: size - shift])
        if 2 * length <= i:
            saved = conn.copy()
            conn ^= update
            length = i + 1 - length
            prev, last, shift = saved, d, 1
        else:
            conn ^= update
            shift += 1
    return conn[: length + 1], length


def grs_new(n: int, k: int, ctx: FieldContext, rng: np.random.Generator) -> GrsCode:
    """Random GRS code: uniform n-subset of GF(q) as points, uniform nonzero multipliers."""
    if not 1 <= k <= n <= ctx.q:
        raise InvalidParameters(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={ctx.q}")
    alpha = rng.choice(ctx.q, size=n, replace=False).astype(ctx.dtype)
    v = ctx.random(rng, n, nonzero=True)
    return GrsCode(ctx, alpha, v, k)
