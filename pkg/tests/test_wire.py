import hashlib
import struct

import numpy as np
import pytest

from pyrlce.errors import FormatError
from pyrlce.rng import make_rng
from pyrlce.scheme import RlceParams, decrypt, encrypt, keygen
from pyrlce.wire import (
    HEADER,
    dump_ciphertext,
    load_ciphertext,
    load_private_key,
    load_public_key,
)

DESK = RlceParams(n=40, k=20, t=10, r=1, m=8)


@pytest.fixture(scope="module", params=[False, True], ids=["full", "systematic"])
def keys(request):
    return keygen(DESK, make_rng(2), systematic=request.param)


def test_header_layout(keys):
    pk, _ = keys
    blob = pk.to_bytes()
    assert blob[:5] == b"RLCE\x01"
    m, r, n, k, t, flags = struct.unpack(">BBHHHB", blob[5:14])
    assert (m, r, n, k, t) == (8, 1, 40, 20, 10)
    assert flags == (1 if pk.systematic else 0)
    assert HEADER.size == 14


def test_public_key_sizes(keys):
    pk, _ = keys
    body = 20 * (80 - 20) if pk.systematic else 20 * 80
    assert len(pk.to_bytes()) == 14 + body


def test_private_key_layout(keys):
    pk, sk = keys
    blob = sk.to_bytes()
    assert blob[13] & 0x02
    expected = 14 + 20 * 20 + 40 + 40 + 40 * 4 + 2 * 80 + 32
    assert len(blob) == expected
    assert blob[-32:] == hashlib.sha256(pk.to_bytes()).digest()


def test_roundtrip_bit_identical(keys):
    pk, sk = keys
    pk2 = load_public_key(pk.to_bytes())
    sk2 = load_private_key(sk.to_bytes(), pk2)
    assert pk2.to_bytes() == pk.to_bytes()
    assert sk2.to_bytes() == sk.to_bytes()
    rng = make_rng(3)
    msg = pk.ctx.random(rng, 20)
    assert np.array_equal(decrypt(sk2, encrypt(pk2, msg, rng)), msg)


def test_ciphertext_roundtrip(keys):
    pk, _ = keys
    y = encrypt(pk, np.zeros(20, np.uint8), make_rng(4))
    blob = dump_ciphertext(DESK, y)
    assert len(blob) == 14 + 80
    params, y2 = load_ciphertext(blob)
    assert params == DESK and np.array_equal(y, y2)


def test_two_byte_elements():
    params = RlceParams(n=40, k=20, t=10, r=1, m=10)
    pk, sk = keygen(params, make_rng(6))
    blob = pk.to_bytes()
    assert len(blob) == 14 + 2 * 20 * 80
    assert load_private_key(sk.to_bytes(), load_public_key(blob)).to_bytes() == sk.to_bytes()


@pytest.mark.parametrize(
    "mangle",
    [
        lambda b: b[:-1],
        lambda b: b + b"\x00",
        lambda b: b"XLCE" + b[4:],
        lambda b: b[:4] + b"\x02" + b[5:],
        lambda b: b[:10],
    ],
    ids=["truncated", "trailing", "magic", "version", "short-header"],
)
def test_malformed_public_key(keys, mangle):
    pk, _ = keys
    with pytest.raises(FormatError):
        load_public_key(mangle(pk.to_bytes()))


def test_private_key_needs_matching_public_key(keys):
    pk, sk = keys
    other, _ = keygen(DESK, make_rng(99), systematic=pk.systematic)
    with pytest.raises(FormatError):
        load_private_key(sk.to_bytes(), other)
    with pytest.raises(FormatError):
        load_public_key(sk.to_bytes())
    with pytest.raises(FormatError):
        load_private_key(pk.to_bytes(), pk)


def test_invalid_header_parameters(keys):
    pk, _ = keys
    blob = bytearray(pk.to_bytes())
    blob[11:13] = struct.pack(">H", 30)  # t = 30 breaks 2t+1 <= n-k+1
    with pytest.raises(FormatError):
        load_public_key(bytes(blob))


def test_ciphertext_length_checked():
    with pytest.raises(FormatError):
        load_ciphertext(dump_ciphertext(DESK, np.zeros(80, np.uint8))[:-3])
    with pytest.raises(FormatError):
        dump_ciphertext(DESK, np.zeros(79, np.uint8))
