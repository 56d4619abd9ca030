"""GF(2^m) arithmetic and a generalized Reed-Solomon code.

Run with ``python demos/01_field_and_grs.py``.
"""

import numpy as np

from pyrlce.gf import field_new
from pyrlce.grs import grs_new
from pyrlce.rng import make_rng

ctx = field_new(8)
print(ctx)                                  # x^8 + x^4 + x^3 + x^2 + 1
print(hex(ctx.mul(0x02, 0x80)))             # 0x1d: x * x^7 wraps through the reduction polynomial
print(ctx.mul(0x53, ctx.inv(0x53)))         # 1

rng = make_rng(2024)

# A [40, 20] GRS code corrects up to 10 symbol errors.
code = grs_new(40, 20, ctx, rng)
message = ctx.random(rng, 20)
codeword = code.encode(message)

noise = np.zeros(40, dtype=ctx.dtype)
positions = rng.choice(40, size=code.t, replace=False)
noise[positions] = ctx.random(rng, code.t, nonzero=True)

decoded, error = code.decode(codeword ^ noise)
print("message recovered:", np.array_equal(decoded, message))
print("error positions:  ", sorted(np.flatnonzero(error).tolist()))
