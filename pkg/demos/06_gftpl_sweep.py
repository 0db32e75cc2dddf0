"""Perturbed-leader engine under the experiment harness.

One uniform perturbation drawn up front is folded into the history as
scaled distinguisher rounds; every round the oracle maximizes over
history plus perturbation. The harness fans a config out over seeds and
horizons, writes one CSV trace per replica plus a summary.json, and its
bounds report flags whether regret per round is falling as T grows.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from regretlab.harness import load_experiment, run_experiment
from regretlab.instances import GkpInstanceSet, GkpStatic, serialize_gkp
from regretlab.rng import SeededRng

work = Path(tempfile.mkdtemp(prefix="regretlab_demo_"))
# a steep penalty makes capacities genuinely binding, so different static
# sets really differ and there is regret to shrink
rng = SeededRng(3)
static = GkpStatic(6, np.array([rng.uniform(0.5, 2.0) for _ in range(6)]), 2.0)
(work / "inst.gkp.json").write_text(serialize_gkp(GkpInstanceSet(static, ())))
(work / "sweep.json").write_text(
    json.dumps(
        {
            "algorithm": "gftpl_gkp",
            "instance": {"gkp": "inst.gkp.json"},
            "T": 1024,
            "base_seed": 0,
            "num_seeds": 5,
            "params": {"round_source": "random", "T_sweep": [64, 256, 1024]},
        },
        indent=2,
    )
)

summary = run_experiment(load_experiment(work / "sweep.json"), work / "out")
print(f"{'T':>6} {'mean regret':>12} {'regret/T':>9} {'mean bound':>11}")
for grp in summary["sweep"]:
    print(
        f"{grp['T']:>6} {grp['mean_regret']:>12.2f} {grp['regret_per_round']:>9.4f} "
        f"{grp['mean_bound']:>11.1f}"
    )
rep = summary["bounds"]
print(f"bounds report: {rep['checked']} replicas checked, "
      f"{len(rep['violations'])} violations, vanishing={rep['vanishing']}")
print(f"traces + summary.json under {work / 'out'}")
print("equivalent CLI: regretlab run sweep.json -o out")
