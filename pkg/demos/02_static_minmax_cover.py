import numpy as np

from regretlab.instances import Graph, gen_uniform_weights
from regretlab.minmax import (
    best_static_vc_hindsight,
    minimal_vertex_covers,
    minmax_value,
    static_minmax_vc,
)
from regretlab.rng import SeededRng

# The min-max cover objective charges a set its heaviest member, not the
# sum. For a single weight vector that is threshold-solvable: try cutoffs
# in weight order and keep the cheapest one whose light vertices cover.
g = Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)))  # a 5-cycle
w = np.array([0.9, 0.2, 0.8, 0.3, 0.4])
cover, value = static_minmax_vc(g, w)
print(f"one-shot: cover {sorted(cover)} costs {value} (max weight in the set)")
assert minmax_value(cover, w) == value

# Summed over T rounds the same objective turns NP-hard; at desk scale we
# enumerate inclusion-minimal covers (complements of maximal independent
# sets), since adding vertices never lowers a round's max.
rng = SeededRng(11)
seq = gen_uniform_weights(5, 50, 1.0, rng)
best, opt = best_static_vc_hindsight(g, seq)
print(f"hindsight over T={seq.T}: cover {sorted(best)} pays {opt:.2f}")

mins = list(minimal_vertex_covers(g))
print(f"{len(mins)} minimal covers of the 5-cycle: {[sorted(c) for c in mins]}")
