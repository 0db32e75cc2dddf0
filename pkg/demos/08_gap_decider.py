"""Turning a regret guarantee into a promise-problem decider.

Given the promise "the smallest cover has size <= A*n or >= B*n", run an
online cover learner against one-hot weights on random vertices. A
learner whose regret really vanishes cannot afford to keep playing big
covers when a small one exists, so seeing any cover smaller than B*n
settles Yes; surviving the whole horizon settles No. The horizon is
derived from the learner's regret rate and the gap width.
"""

from regretlab.instances import Graph
from regretlab.reductions import FtlMinMaxVcLearner, GapConfig, OgdVcLearner, gap_solver
from regretlab.rng import SeededRng

# planted Yes: a star is covered by its center alone (1 < B*n = 3)
star = Graph(6, tuple((0, v) for v in range(1, 6)))
cfg = GapConfig(A=1 / 6, B=0.5, T_override=256)
hits = [gap_solver(star, cfg, FtlMinMaxVcLearner(star), SeededRng(s)) for s in range(20)]
rounds = sorted({r.yes_round for r in hits})
print(f"star, follow-the-leader: {sum(r.decision == 'Yes' for r in hits)}/20 Yes, "
      f"settled at round(s) {rounds}")

# planted No: five disjoint edges need one endpoint each, so no cover is
# smaller than 5 = B*n and Yes can never fire, whatever the learner does
matching = Graph(10, tuple((2 * j, 2 * j + 1) for j in range(5)))
cfg = GapConfig(A=0.25, B=0.5, T_override=64)
answers = {
    gap_solver(matching, cfg, OgdVcLearner(matching), SeededRng(s)).decision
    for s in range(20)
}
print(f"disjoint edges, gradient learner: decisions over 20 seeds = {answers}")

# the adversary is oblivious: the target sequence depends only on the seed
a = gap_solver(star, cfg, FtlMinMaxVcLearner(star), SeededRng(5))
b = gap_solver(star, cfg, OgdVcLearner(star), SeededRng(5))
assert a.targets == b.targets
print(f"same seed, different learners: identical {len(a.targets)}-round target stream")
