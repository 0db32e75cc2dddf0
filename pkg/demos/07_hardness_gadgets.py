import itertools

import numpy as np

from regretlab.instances import Dnf3Formula, Graph
from regretlab.minmax import brute_force_multi_p3cmax, multi_minmax_cost
from regretlab.reductions import (
    dnf_to_matching,
    dnf_to_path,
    is_three_colorable,
    path_cost_of,
    threecolor_to_p3,
    validate_correspondence,
    vc_to_multi_vc,
)

# Multi-instance versions of easy problems swallow hard ones. Each gadget
# maps a source instance to a weight family whose summed cost mirrors the
# source's objective exactly — the identities below are what makes the
# online results hardness results.

# 3-DNF counting <-> perfect matchings: a 4-cycle per variable has exactly
# two perfect matchings (True/False); one weight row per clause charges 1
# unless the matching encodes a satisfying assignment for it.
f = Dnf3Formula(3, (((0, True), (1, False), (2, True)), ((0, False), (1, True), (2, False))))
gadget = dnf_to_matching(f)
m = len(f.clauses)
for bits in itertools.product((False, True), repeat=3):
    sat = f.num_satisfied(bits)
    cost = gadget.cost_of(bits)
    assert sat == m - cost
    print(f"assignment {bits}: satisfies {sat}/{m} clauses, matching cost {cost:.0f}")

# the path gadget encodes the same count over stage choices in a layered DAG
chain, rows = dnf_to_path(f)
assert all(
    f.num_satisfied(b) == m - path_cost_of(chain, rows, b)
    for b in itertools.product((False, True), repeat=3)
)
print("path gadget agrees on all 8 assignments")

# one-line check over every assignment, as the CLI's `verify reductions` does
rep = validate_correspondence(f)
print(f"validated {rep['assignments_checked']} assignments, "
      f"{len(rep['violations'])} violations (id {rep['formula_id']})")

# vertex cover embeds in the multi min-max objective: rows = identity, so a
# set's summed cost is just its size
g = Graph(4, ((0, 1), (1, 2), (2, 3)))
seq = vc_to_multi_vc(g)
assert multi_minmax_cost({0, 2}, seq.rows) == 2.0
print("cover-size embedding: cost({0,2}) == 2")

# 3-coloring embeds in 3-machine scheduling: a job per vertex, a time row
# per edge; total makespan m iff some assignment splits every edge
for g, name in ((Graph(3, ((0, 1), (1, 2), (0, 2))), "triangle"),
                (Graph(4, tuple(itertools.combinations(range(4), 2))), "K4")):
    _, total = brute_force_multi_p3cmax(threecolor_to_p3(g))
    print(f"{name}: total makespan {total:.0f} vs m={g.m} "
          f"-> 3-colorable: {total == g.m} (brute coloring says {is_three_colorable(g)})")
