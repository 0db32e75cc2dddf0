"""Three oracles for the generalized knapsack, fastest to slowest exact.

The objective is summed item profits minus c times the capacity excess,
accumulated over rounds; the excess collapses to a convex piecewise-linear
function k(W) of the chosen set's total weight. The brute oracle searches
all 2^n sets; the DP is exact on profit-grid-integral instances; the
scaling oracle rounds profits onto a grid and inherits a (1-eps) guarantee.
"""

import time

from regretlab.gkp import brute_oracle, fptas_grid_info, fptas_oracle
from regretlab.instances import gen_random_gkp
from regretlab.rng import SeededRng

inst = gen_random_gkp(12, 5, SeededRng(42))
static, rounds = inst.static, inst.rounds

t0 = time.perf_counter()
best, opt = brute_oracle(static, rounds)
t1 = time.perf_counter()
print(f"brute: value {opt:.4f} with set {sorted(best)} ({1e3 * (t1 - t0):.1f} ms)")

print(f"{'eps':>6} {'value':>9} {'ratio':>7} {'dp cells':>9} {'ms':>7}")
for eps in (0.5, 0.1, 0.01, 0.001):
    t0 = time.perf_counter()
    _, got = fptas_oracle(static, rounds, eps)
    t1 = time.perf_counter()
    cells = fptas_grid_info(static, rounds, eps)["dp_cells"]
    print(f"{eps:>6} {got:>9.4f} {got / opt:>7.4f} {cells:>9} {1e3 * (t1 - t0):>7.1f}")
    assert got >= (1.0 - eps) * opt - 1e-12

print("the ratio column stays above 1-eps; cell counts grow like n^2/eps")
print("same comparison via the CLI: regretlab bench oracle <file> --eps 0.1")
