"""Binary file formats for keys and ciphertexts.

Every file starts with a 14-byte header::

    b"RLCE" | version (1) | m (1) | r (1) | n (2) | k (2) | t (2) | flags (1)

Integers are big-endian.  Field elements take ``ceil(m/8)`` big-endian
bytes.  Flag bit 0 marks a systematic public key (only ``G'`` of
``[I | G']`` is stored), bit 1 marks a private key.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

from .errors import FormatError, InvalidParameters
from .gf import field_new
from .grs import GrsCode
from .linalg import Permutation
from .scheme import RlceParams, RlcePrivateKey, RlcePublicKey, check_private_key

MAGIC = b"RLCE"
VERSION = 1
HEADER = struct.Struct(">4sBBBHHHB")
FLAG_SYSTEMATIC = 0x01
FLAG_PRIVATE = 0x02
DIGEST_SIZE = 32


def pack_header(params: RlceParams, flags: int) -> bytes:
    return HEADER.pack(MAGIC, VERSION, params.m, params.r, params.n, params.k, params.t, flags)


def unpack_header(data: bytes) -> tuple[RlceParams, int, memoryview]:
    if len(data) < HEADER.size:
        raise FormatError(f"file too short for header ({len(data)} bytes)")
    magic, version, m, r, n, k, t, flags = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError("bad magic bytes")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    params = RlceParams(n=n, k=k, t=t, r=r, m=m)
    try:
        params.validate()
    except InvalidParameters as exc:
        raise FormatError(f"header carries invalid parameters: {exc}") from None
    return params, flags, memoryview(data)[HEADER.size :]


class _Reader:
    def __init__(self, body: memoryview, width: int):
        self.body = body
        self.width = width
        self.pos = 0

    def take(self, nbytes: int) -> bytes:
        if self.pos + nbytes > len(self.body):
            raise FormatError("file truncated")
        chunk = bytes(self.body[self.pos : self.pos + nbytes])
        self.pos += nbytes
        return chunk

    def elements(self, ctx, count: int) -> np.ndarray:
        raw = self.take(count * self.width)
        try:
            return ctx.from_bytes(raw, count)
        except ValueError as exc:
            raise FormatError(str(exc)) from None

    def finish(self) -> None:
        if self.pos != len(self.body):
            raise FormatError(f"{len(self.body) - self.pos} trailing bytes")


def dump_public_key(pk: RlcePublicKey) -> bytes:
    ctx, params = pk.ctx, pk.params
    g = np.asarray(pk.G)
    flags = FLAG_SYSTEMATIC if pk.systematic else 0
    body = g[:, params.k :] if pk.systematic else g
    return pack_header(params, flags) + ctx.to_bytes(body)


def load_public_key(data: bytes) -> RlcePublicKey:
    params, flags, body = unpack_header(data)
    if flags & FLAG_PRIVATE or flags & ~(FLAG_SYSTEMATIC | FLAG_PRIVATE):
        raise FormatError(f"not a public key (flags {flags:#04x})")
    ctx = field_new(params.m)
    k, big_n = params.k, params.length
    systematic = bool(flags & FLAG_SYSTEMATIC)
    reader = _Reader(body, ctx.element_bytes)
    if systematic:
        tail = reader.elements(ctx, k * (big_n - k)).reshape(k, big_n - k)
        g = np.concatenate([np.eye(k, dtype=ctx.dtype), tail], axis=1)
    else:
        g = reader.elements(ctx, k * big_n).reshape(k, big_n)
    reader.finish()
    g.setflags(write=False)
    return RlcePublicKey(params, g, systematic)


def dump_private_key(sk: RlcePrivateKey) -> bytes:
    ctx, params = sk.ctx, sk.params
    flags = FLAG_PRIVATE | (FLAG_SYSTEMATIC if sk.public_key.systematic else 0)
    parts = [
        pack_header(params, flags),
        ctx.to_bytes(sk.S_inv),
        ctx.to_bytes(sk.code.alpha),
        ctx.to_bytes(sk.code.v),
        ctx.to_bytes(sk.A_inv),
        sk.P_inv.map.astype(">u2").tobytes(),
        sk.public_hash,
    ]
    return b"".join(parts)


def load_private_key(data: bytes, public_key: RlcePublicKey) -> RlcePrivateKey:
    """Parse a private key and bind it to its public key.

    Decryption re-encrypts to check the error weight, so the public matrix
    is required; it is matched against the stored digest.
    """
    params, flags, body = unpack_header(data)
    if not flags & FLAG_PRIVATE or flags & ~(FLAG_SYSTEMATIC | FLAG_PRIVATE):
        raise FormatError(f"not a private key (flags {flags:#04x})")
    ctx = field_new(params.m)
    n, k, width = params.n, params.k, params.r + 1
    reader = _Reader(body, ctx.element_bytes)
    s_inv = reader.elements(ctx, k * k).reshape(k, k)
    alpha = reader.elements(ctx, n)
    v = reader.elements(ctx, n)
    a_inv = reader.elements(ctx, n * width * width).reshape(n, width, width)
    perm = np.frombuffer(reader.take(2 * params.length), dtype=">u2").astype(np.int64)
    digest = reader.take(DIGEST_SIZE)
    reader.finish()

    if public_key.params != params:
        raise FormatError("public key parameters do not match the private key")
    if bool(flags & FLAG_SYSTEMATIC) != public_key.systematic:
        raise FormatError("systematic flag differs between public and private key")
    if hashlib.sha256(public_key.to_bytes()).digest() != digest:
        raise FormatError("public key digest mismatch")
    try:
        code = GrsCode(ctx, alpha, v, k)
        p_inv = Permutation(perm)
    except ValueError as exc:
        raise FormatError(f"invalid private key contents: {exc}") from None
    sk = RlcePrivateKey(params, s_inv, code, a_inv, p_inv, digest, public_key)
    try:
        check_private_key(sk)
    except InvalidParameters:
        raise FormatError("private key does not open the public key") from None
    return sk


def dump_ciphertext(params: RlceParams, y: np.ndarray) -> bytes:
    ctx = field_new(params.m)
    y = ctx.asarray(y)
    if y.shape != (params.length,):
        raise FormatError(f"ciphertext must have {params.length} symbols")
    return pack_header(params, 0) + ctx.to_bytes(y)


def load_ciphertext(data: bytes) -> tuple[RlceParams, np.ndarray]:
    params, flags, body = unpack_header(data)
    if flags:
        raise FormatError(f"not a ciphertext (flags {flags:#04x})")
    ctx = field_new(params.m)
    reader = _Reader(body, ctx.element_bytes)
    y = reader.elements(ctx, params.length)
    reader.finish()
    return params, y
