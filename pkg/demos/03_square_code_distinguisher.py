"""Square-code dimension of GRS codes, random codes and RLCE public keys.

Squares of GRS codes stay at 2k-1; squares of random codes fill
min(N, k(k+1)/2).  Punctured RLCE keys land on the random side.

Run with ``python demos/03_square_code_distinguisher.py``.
"""

from collections import Counter

from pyrlce.analysis import distinguisher_experiment, square_code_dimension, write_csv
from pyrlce.gf import field_new
from pyrlce.grs import grs_new
from pyrlce.linalg import random_matrix
from pyrlce.rng import make_rng
from pyrlce.scheme import RlceParams

ctx = field_new(8)
rng = make_rng(11)

print(square_code_dimension(ctx, grs_new(32, 8, ctx, rng).generator))
print(square_code_dimension(ctx, random_matrix(ctx, 8, 32, rng)))

params = RlceParams(n=60, k=40, t=10, r=1, m=8)
results = distinguisher_experiment(params, trials=3, rng=rng)
print("square dimensions over all punctures:", Counter(r.square_dim for r in results))

# Control: the private GRS generator itself
control = distinguisher_experiment(RlceParams(n=40, k=8, t=16, r=1, m=8), trials=1, rng=rng, control=True)
print("control square dimensions:", Counter(r.square_dim for r in control))

print(write_csv(results[:3]), end="")
