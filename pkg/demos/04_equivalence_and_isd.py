"""Why r must stay below k-1, and what generic decoding costs.

Run with ``python demos/04_equivalence_and_isd.py``.
"""

import numpy as np

from pyrlce.analysis import (
    assemble_extended,
    construct_equivalent,
    construct_target,
    isd_workfactor,
    randomized_column_theorem_check,
    rlce_isd_workfactor,
)
from pyrlce.errors import Infeasible
from pyrlce.gf import field_new
from pyrlce.grs import grs_new
from pyrlce.rng import make_rng
from pyrlce.scheme import RECOMMENDED

ctx = field_new(8)
rng = make_rng(3)

# With r + 1 = k, any matrix is an RLCE-style extension of any GRS code.
k, n = 4, 6
code = grs_new(n, k, ctx, rng)
target = construct_target(ctx, k, n, k, rng)
c_blocks, a_blocks = construct_equivalent(ctx, target, code, r=k - 1, rng=rng)
print("exact reconstruction:", np.array_equal(assemble_extended(ctx, code.generator, c_blocks, a_blocks), target))

try:
    construct_equivalent(ctx, construct_target(ctx, k, n, 2, rng), code, r=1, rng=rng)
except Infeasible as exc:
    print("r + 1 < k:", exc)

# A single block can always be matched, whatever r is.
print("first column randomizable:", randomized_column_theorem_check(ctx, grs_new(20, 6, ctx, rng), 1, rng))

print(isd_workfactor(20, 10, 2, 2, "prange"))
for level, params in RECOMMENDED.items():
    est = rlce_isd_workfactor(params)
    print(f"{level:>3}-bit row: [{est.n}, {est.k}; {est.t}] over GF({est.q}) -> 2^{est.log2_cost:.1f} (p={est.p})")
