"""Key generation, encryption and decryption, plus the key files.

Run with ``python demos/02_encrypt_decrypt.py``.
"""

import time

import numpy as np

from pyrlce.errors import DecryptError
from pyrlce.rng import make_rng
from pyrlce.scheme import RlceParams, decrypt, encrypt, keygen, public_key_size_bits
from pyrlce.wire import load_private_key, load_public_key

rng = make_rng(7)

# Small parameters: n=40, k=20, t=10, one random column per code column.
params = RlceParams(n=40, k=20, t=10, r=1, m=8)
pk, sk = keygen(params, rng)
print("public key shape:", pk.G.shape)

message = pk.ctx.random(rng, params.k)
ciphertext = encrypt(pk, message, rng)
print("roundtrip:", np.array_equal(decrypt(sk, ciphertext), message))

# Random vectors fail the decoder or the weight check.
try:
    decrypt(sk, pk.ctx.random(rng, params.length))
except DecryptError:
    print("random ciphertext rejected")

# Key files round-trip bit for bit.  The private key is bound to its public key.
pk2 = load_public_key(pk.to_bytes())
sk2 = load_private_key(sk.to_bytes(), pk2)
print("serialization stable:", sk2.to_bytes() == sk.to_bytes())

# The 80-bit shape (n=560, k=380, t=90) needs 560 evaluation points, so GF(2^10).
big = RlceParams(n=560, k=380, t=90, r=1, m=10)
start = time.perf_counter()
pk, sk = keygen(big, rng, systematic=True)
message = pk.ctx.random(rng, big.k)
assert np.array_equal(decrypt(sk, encrypt(pk, message, rng)), message)
print(f"n=560 keygen + roundtrip: {time.perf_counter() - start:.1f} s")
print(f"systematic key: {public_key_size_bits(big) // 8} bytes")
