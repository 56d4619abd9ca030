"""RLCE key generation, encryption and decryption.

The public key is ``G = S * G1 * A * P`` where ``G1`` interleaves each GRS
generator column with ``r`` random columns, ``A`` is block diagonal with
random nonsingular ``(r+1) x (r+1)`` blocks, ``S`` is a random nonsingular
``k x k`` scrambler and ``P`` a column permutation.  ``A`` is never formed
densely and ``P`` is kept as an index array.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .errors import DecodeFailure, DecryptError, DimensionMismatch, InvalidParameters, SingularMatrix, UnknownLevel
from .gf import MAX_DEGREE, MIN_DEGREE, FieldContext, field_new
from .grs import GrsCode, grs_new
from .linalg import (
    Permutation,
    apply_permutation,
    mat_inverse,
    mat_mul,
    random_matrix,
    random_nonsingular,
    random_permutation,
    vec_mat,
    weight,
)


@dataclass(frozen=True)
class RlceParams:
    n: int
    k: int
    t: int
    r: int
    m: int
    security_bits: int | None = None

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def length(self) -> int:
        """Public code length ``n(r+1)``."""
        return self.n * (self.r + 1)

    def validate(self) -> RlceParams:
        n, k, t, r, m = self.n, self.k, self.t, self.r, self.m
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise InvalidParameters(f"field degree m={m} outside {MIN_DEGREE}..{MAX_DEGREE}")
        if not (1 <= k < n and t >= 1 and r >= 1):
            raise InvalidParameters(f"need 1 <= k < n, t >= 1, r >= 1 (got n={n}, k={k}, t={t}, r={r})")
        if n > self.q:
            raise InvalidParameters(f"n={n} exceeds the {self.q} available evaluation points")
        if n - k + 1 < 2 * t + 1:
            raise InvalidParameters(f"n-k+1={n - k + 1} < 2t+1={2 * t + 1}")
        if r >= k - 1:
            raise InvalidParameters(f"r={r} must be below k-1={k - 1}")
        # t must clearly exceed (n - k^2) / 2k; "clearly" is taken as a factor 2
        if 2 * k * t <= 2 * max(0, n - k * k):
            raise InvalidParameters(f"t={t} too small against (n-k^2)/2k for n={n}, k={k}")
        return self


# Recommended RLCE-MDS rows, all with r = 1.
RECOMMENDED = {
    60: RlceParams(n=360, k=200, t=80, r=1, m=8, security_bits=60),
    80: RlceParams(n=560, k=380, t=90, r=1, m=8, security_bits=80),
    128: RlceParams(n=1020, k=660, t=180, r=1, m=9, security_bits=128),
    192: RlceParams(n=1560, k=954, t=203, r=1, m=10, security_bits=192),
    256: RlceParams(n=2184, k=1260, t=412, r=1, m=10, security_bits=256),
}

# Key sizes as published for the rows above, in bytes.  The table mixes
# binary (KiB/MiB) and decimal (MB) units.
PUBLISHED_KEY_SIZES = {
    60: ("101KB", 101 * 1024),
    80: ("267KB", 267 * 1024),
    128: ("0.98MB", 0.98 * 2**20),
    192: ("2.46MB", 2.46 * 2**20),
    256: ("4.88MB", 4.88 * 10**6),
}


def recommended_params(security_bits: int) -> RlceParams:
    """Registry lookup.  Rows are returned as published and may not pass :meth:`RlceParams.validate`."""
    try:
        return RECOMMENDED[security_bits]
    except KeyError:
        raise UnknownLevel(f"no parameter set for {security_bits}-bit security") from None


def public_key_size_bits(params: RlceParams, systematic: bool = True) -> int:
    k, big_n, m = params.k, params.length, params.m
    return k * (big_n - k) * m if systematic else k * big_n * m


@dataclass(frozen=True, eq=False)
class RlcePublicKey:
    params: RlceParams
    G: np.ndarray
    systematic: bool = False

    @property
    def ctx(self) -> FieldContext:
        return field_new(self.params.m)

    def to_bytes(self) -> bytes:
        from .wire import dump_public_key

        return dump_public_key(self)

    def digest(self) -> bytes:
        return hashlib.sha256(self.to_bytes()).digest()


@dataclass(frozen=True, eq=False)
class RlcePrivateKey:
    params: RlceParams
    S_inv: np.ndarray
    code: GrsCode
    A_inv: np.ndarray  # shape (n, r+1, r+1)
    P_inv: Permutation
    public_hash: bytes
    public_key: RlcePublicKey = field(repr=False)

    @property
    def ctx(self) -> FieldContext:
        return self.code.ctx

    def to_bytes(self) -> bytes:
        from .wire import dump_private_key

        return dump_private_key(self)


def insert_random_columns(ctx: FieldContext, gs: np.ndarray, r: int, rng: np.random.Generator) -> np.ndarray:
    """``G1 = [g_0, C_0, ..., g_{n-1}, C_{n-1}]`` shaped ``(k, n, r+1)``."""
    k, n = gs.shape
    c = random_matrix(ctx, k, n * r, rng).reshape(k, n, r)
    return np.concatenate([gs[:, :, None], c], axis=2)


def mix_blocks(ctx: FieldContext, blocks: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Right-multiply block ``i`` of a ``(rows, n, r+1)`` array by ``a[i]``."""
    out = np.zeros_like(blocks)
    width = blocks.shape[2]
    for j in range(width):
        for c in range(width):
            out[:, :, c] ^= ctx.mul(blocks[:, :, j], a[None, :, j, c])
    return out


def keygen(
    params: RlceParams, rng: np.random.Generator, systematic: bool = False
) -> tuple[RlcePublicKey, RlcePrivateKey]:
    params.validate()
    ctx = field_new(params.m)
    n, k, r = params.n, params.k, params.r

    code = grs_new(n, k, ctx, rng)
    g1 = insert_random_columns(ctx, np.asarray(code.generator), r, rng)
    pairs = [random_nonsingular(ctx, r + 1, rng, with_inverse=True) for _ in range(n)]
    a = np.stack([p[0] for p in pairs])
    a_inv = np.stack([p[1] for p in pairs])
    mixed = mix_blocks(ctx, g1, a).reshape(k, params.length)

    s, s_inv = random_nonsingular(ctx, k, rng, with_inverse=True)
    scrambled = mat_mul(ctx, s, mixed)
    while True:
        perm = random_permutation(params.length, rng)
        g = apply_permutation(scrambled, perm)
        if not systematic:
            break
        lead = g[:, :k]
        try:
            to_systematic = mat_inverse(ctx, lead)
        except SingularMatrix:
            continue
        g = mat_mul(ctx, to_systematic, g)
        s_inv = mat_mul(ctx, s_inv, lead)
        break

    g.setflags(write=False)
    public = RlcePublicKey(params, g, systematic)
    private = RlcePrivateKey(
        params=params,
        S_inv=s_inv,
        code=code,
        A_inv=a_inv,
        P_inv=perm.inverse(),
        public_hash=public.digest(),
        public_key=public,
    )
    check_private_key(private)
    return public, private


def unmix(sk: RlcePrivateKey, y: np.ndarray) -> np.ndarray:
    """``y P^-1 A^-1`` along the last axis, reshaped to ``(..., n, r+1)``."""
    ctx, params = sk.ctx, sk.params
    blocks = apply_permutation(y, sk.P_inv).reshape(*y.shape[:-1], params.n, params.r + 1)
    out = np.zeros_like(blocks)
    width = params.r + 1
    for j in range(width):
        for c in range(width):
            out[..., c] ^= ctx.mul(blocks[..., j], sk.A_inv[:, j, c])
    return out


def check_private_key(sk: RlcePrivateKey) -> None:
    """Recover ``G_s`` from the public key with the private inverses."""
    recovered = unmix(sk, np.asarray(sk.public_key.G))[:, :, 0]
    if not np.array_equal(mat_mul(sk.ctx, sk.S_inv, recovered), sk.code.generator):
        raise InvalidParameters("private key does not match public key")


def encrypt(
    pk: RlcePublicKey, message, rng: np.random.Generator, error: np.ndarray | None = None
) -> np.ndarray:
    """``y = mG + e`` with ``e`` of weight exactly ``t``.

    ``error`` overrides the sampled error vector (for tests).
    """
    ctx, params = pk.ctx, pk.params
    message = ctx.asarray(message)
    if message.shape != (params.k,):
        raise DimensionMismatch(f"message must have {params.k} symbols")
    if error is None:
        error = sample_error(ctx, params.length, params.t, rng)
    return vec_mat(ctx, message, pk.G) ^ ctx.asarray(error)


def sample_error(ctx: FieldContext, length: int, t: int, rng: np.random.Generator) -> np.ndarray:
    e = np.zeros(length, dtype=ctx.dtype)
    positions = rng.choice(length, size=t, replace=False)
    e[positions] = ctx.random(rng, t, nonzero=True)
    return e


def decrypt(sk: RlcePrivateKey, y) -> np.ndarray:
    ctx, params = sk.ctx, sk.params
    y = ctx.asarray(y)
    if y.shape != (params.length,):
        raise DimensionMismatch(f"ciphertext must have {params.length} symbols")
    projected = unmix_first(sk, y)
    try:
        scrambled_message, _ = sk.code.decode(projected, params.t)
    except DecodeFailure:
        raise DecryptError("decryption failed") from None
    message = vec_mat(ctx, scrambled_message, sk.S_inv)
    if weight(y ^ vec_mat(ctx, message, sk.public_key.G)) > params.t:
        raise DecryptError("decryption failed")
    return message


def unmix_first(sk: RlcePrivateKey, y: np.ndarray) -> np.ndarray:
    """Only the first coordinate of each unmixed block, which is all decoding needs."""
    ctx, params = sk.ctx, sk.params
    blocks = apply_permutation(y, sk.P_inv).reshape(params.n, params.r + 1)
    out = np.zeros(params.n, dtype=ctx.dtype)
    for j in range(params.r + 1):
        out ^= ctx.mul(blocks[:, j], sk.A_inv[:, j, 0])
    return out
