"""
Instances and their on-disk formats
===================================

Every object the library consumes — graphs, weight sequences, knapsack
sets, 3-DNF formulas — has a text format with a parse/serialize pair.
This script generates one of each, round-trips it through text, and
leaves the files in a temp directory you can feed to the CLI.
"""

import tempfile
from pathlib import Path

from regretlab.instances import (
    gen_random_dnf,
    gen_random_gkp,
    gen_random_graph,
    gen_uniform_weights,
    parse_dnf,
    parse_gkp,
    parse_graph,
    parse_weights,
    serialize_dnf,
    serialize_gkp,
    serialize_graph,
    serialize_weights,
)
from regretlab.rng import SeededRng

out = Path(tempfile.mkdtemp(prefix="regretlab_demo_"))
rng = SeededRng(7)

# a sparse random graph: "n m" header then one edge per line
g = gen_random_graph(6, 0.4, rng)
text = serialize_graph(g)
assert parse_graph(text).edges == g.edges
(out / "graph.txt").write_text(text)
print(f"graph: n={g.n} m={g.m}")
print(text)

# a weight sequence: "n=<n>" header then one comma-separated row per round
seq = gen_uniform_weights(6, 4, 1.0, rng)
(out / "weights.txt").write_text(serialize_weights(seq))
assert parse_weights(serialize_weights(seq)).rows.shape == (4, 6)
print(f"weights: T={seq.T} rows of n={seq.n}")

# a generalized-knapsack set: JSON with static weights/penalty and rounds
inst = gen_random_gkp(4, 3, rng)
(out / "inst.gkp.json").write_text(serialize_gkp(inst))
back = parse_gkp(serialize_gkp(inst))
assert back.static.n == 4 and len(back.rounds) == 3
print(f"gkp: n={inst.static.n}, {len(inst.rounds)} rounds, c={inst.static.c:.3f}")

# a 3-DNF formula: one clause per line, signed 1-indexed literals
f = gen_random_dnf(5, 4, rng)
(out / "formula.dnf").write_text(serialize_dnf(f))
assert parse_dnf(serialize_dnf(f)).clauses == f.clauses
print(f"dnf: {f.n} variables, {len(f.clauses)} clauses")
print(serialize_dnf(f))

print(f"files written to {out}")
print("try: python3 -m regretlab verify reductions " + str(out / "formula.dnf"))
