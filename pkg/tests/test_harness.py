"""Experiment driver: regret accounting, seed fan-out, summaries, bounds."""

import json

import pytest

from regretlab.harness import (
    ExperimentConfig,
    compare_bounds,
    compute_regret,
    load_experiment,
    run_experiment,
)
from regretlab.instances import (
    Graph,
    gen_random_gkp,
    gen_random_graph,
    gen_uniform_weights,
    serialize_gkp,
    serialize_graph,
    serialize_weights,
)
from regretlab.rng import SeededRng
from regretlab.traces import RegretTrace, RoundRecord


def one_round_trace(algorithm, cumulative, benchmark):
    row = RoundRecord(t=1, action=frozenset(), value=cumulative, cumulative=cumulative)
    return RegretTrace(algorithm=algorithm, rows=(row,), benchmark=benchmark)


# --- compute_regret ---------------------------------------------------------------


def test_regret_empty_trace_is_zero():
    tr = RegretTrace(algorithm="ogd_vc", rows=(), benchmark=None)
    assert compute_regret(tr) == 0.0


def test_regret_minimization():
    tr = one_round_trace("ogd_vc", 10.0, 7.0)
    assert compute_regret(tr, alpha=1.0) == 3.0
    # alpha-regret against twice the optimum may go negative
    assert compute_regret(tr, alpha=2.0) == -4.0
    with pytest.raises(ValueError):
        compute_regret(tr, alpha=0.5)


def test_regret_maximization():
    tr = one_round_trace("gftpl_gkp", 10.0, 12.0)
    assert compute_regret(tr, alpha=1.0) == 2.0
    assert compute_regret(tr, alpha=0.5) == -4.0
    with pytest.raises(ValueError):
        compute_regret(tr, alpha=2.0)


def test_regret_needs_benchmark():
    tr = one_round_trace("ogd_vc", 10.0, None)
    with pytest.raises(ValueError, match="benchmark"):
        compute_regret(tr)


# --- config loading ----------------------------------------------------------------


def test_experiment_config_validation():
    ExperimentConfig("ogd_vc", {}, 10, (0,))
    with pytest.raises(ValueError):
        ExperimentConfig("sgd", {}, 10, (0,))
    with pytest.raises(ValueError):
        ExperimentConfig("ogd_vc", {}, -1, (0,))
    with pytest.raises(ValueError):
        ExperimentConfig("ogd_vc", {}, 10, ())
    with pytest.raises(ValueError):
        ExperimentConfig("ogd_vc", {}, 10, (-3,))


def write_graph(tmp_path, n=6, p=0.5, seed=1):
    g = gen_random_graph(n, p, SeededRng(seed))
    path = tmp_path / "g.txt"
    path.write_text(serialize_graph(g))
    return g, path


def test_load_experiment_resolves_and_validates(tmp_path):
    _, gpath = write_graph(tmp_path)
    cfg_path = tmp_path / "exp.json"
    cfg_path.write_text(
        json.dumps(
            {
                "algorithm": "ogd_vc",
                "instance": {"graph": "g.txt"},
                "T": 12,
                "seeds": [3, 4],
            }
        )
    )
    cfg = load_experiment(cfg_path)
    assert cfg.seeds == (3, 4)
    assert cfg.instance["graph"] == str(gpath.resolve())


def test_load_experiment_base_seed_fanout(tmp_path):
    write_graph(tmp_path)
    cfg_path = tmp_path / "exp.json"
    cfg_path.write_text(
        json.dumps(
            {
                "algorithm": "ogd_vc",
                "instance": {"graph": "g.txt"},
                "T": 5,
                "base_seed": 100,
                "num_seeds": 4,
            }
        )
    )
    assert load_experiment(cfg_path).seeds == (100, 101, 102, 103)


def test_load_experiment_rejects_bad_configs(tmp_path):
    write_graph(tmp_path)
    cases = [
        {"algorithm": "ogd_vc", "T": 5, "seeds": [1]},  # no instance for role
        {"algorithm": "ogd_vc", "instance": {"graph": "missing.txt"}, "T": 5, "seeds": [1]},
        {"algorithm": "ogd_vc", "instance": {"graph": "g.txt"}, "T": 5},  # no seeds
        {"algorithm": "ogd_vc", "instance": {"blob": "g.txt"}, "T": 5, "seeds": [1]},
    ]
    for i, obj in enumerate(cases):
        p = tmp_path / f"bad{i}.json"
        p.write_text(json.dumps(obj))
        with pytest.raises((ValueError, OSError)):
            load_experiment(p)


# --- run_experiment ----------------------------------------------------------------


def test_run_ogd_experiment(tmp_path):
    _, gpath = write_graph(tmp_path, n=6)
    cfg = ExperimentConfig("ogd_vc", {"graph": str(gpath)}, 60, (0, 1, 2))
    summary = run_experiment(cfg, tmp_path / "out")
    assert len(summary["per_seed"]) == 3
    for row in summary["per_seed"]:
        assert row["regret"] == row["cumulative"] - 2.0 * row["benchmark"]
        assert row["ok"] == (row["cumulative"] <= 2.0 * row["benchmark"] + row["bound"])
    regrets = [r["regret"] for r in summary["per_seed"]]
    assert summary["mean_regret"] == sum(regrets) / 3
    assert summary["max_regret"] == max(regrets)
    assert summary["bounds"]["all_ok"]
    for seed in (0, 1, 2):
        assert (tmp_path / "out" / f"trace_seed{seed}.csv").exists()
    assert (tmp_path / "out" / "summary.json").exists()


def test_run_experiment_zero_horizon(tmp_path):
    _, gpath = write_graph(tmp_path)
    cfg = ExperimentConfig("ogd_vc", {"graph": str(gpath)}, 0, (0,))
    summary = run_experiment(cfg, tmp_path / "out")
    assert summary["per_seed"][0]["regret"] == 0.0
    assert summary["mean_regret"] == 0.0


def test_run_experiment_is_byte_identical(tmp_path):
    _, gpath = write_graph(tmp_path, n=5)
    cfg = ExperimentConfig("ogd_vc", {"graph": str(gpath)}, 30, (7, 8))
    run_experiment(cfg, tmp_path / "a")
    run_experiment(cfg, tmp_path / "b")
    files_a = sorted(p.name for p in (tmp_path / "a").iterdir())
    files_b = sorted(p.name for p in (tmp_path / "b").iterdir())
    assert files_a == files_b
    for name in files_a:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_run_experiment_weights_file_reused_across_seeds(tmp_path):
    g, gpath = write_graph(tmp_path, n=5)
    seq = gen_uniform_weights(5, 20, 1.0, SeededRng(9))
    wpath = tmp_path / "w.txt"
    wpath.write_text(serialize_weights(seq))
    cfg = ExperimentConfig(
        "ogd_vc", {"graph": str(gpath), "weights": str(wpath)}, 20, (0, 1)
    )
    summary = run_experiment(cfg, tmp_path / "out")
    a, b = summary["per_seed"]
    assert a["cumulative"] == b["cumulative"]  # seed is irrelevant with fixed weights


def test_run_experiment_short_weights_file_fails_with_context(tmp_path):
    _, gpath = write_graph(tmp_path, n=5)
    seq = gen_uniform_weights(5, 4, 1.0, SeededRng(9))
    wpath = tmp_path / "w.txt"
    wpath.write_text(serialize_weights(seq))
    cfg = ExperimentConfig("ogd_vc", {"graph": str(gpath), "weights": str(wpath)}, 10, (0,))
    with pytest.raises(RuntimeError, match=r"seed 0 \(T=10\)"):
        run_experiment(cfg, tmp_path / "out")


def test_run_gap_experiment(tmp_path):
    star = Graph(6, tuple((0, leaf) for leaf in range(1, 6)))
    gpath = tmp_path / "star.txt"
    gpath.write_text(serialize_graph(star))
    cfg = ExperimentConfig(
        "gap_solver",
        {"graph": str(gpath)},
        40,
        tuple(range(5)),
        params={"A": 1 / 6, "B": 0.5},
    )
    summary = run_experiment(cfg, tmp_path / "out")
    assert summary["yes_count"] == 5
    assert summary["yes_frequency"] == 1.0
    assert summary["bounds"]["checked"] == 0
    assert summary["bounds"]["all_ok"]


def test_run_gftpl_experiment_with_file_rounds(tmp_path):
    inst = gen_random_gkp(4, 12, SeededRng(21))
    path = tmp_path / "inst.json"
    path.write_text(serialize_gkp(inst))
    cfg = ExperimentConfig("gftpl_gkp", {"gkp": str(path)}, 10, (0, 1))
    summary = run_experiment(cfg, tmp_path / "out")
    for row in summary["per_seed"]:
        assert row["regret"] <= row["bound"]
    assert summary["bounds"]["all_ok"]


def test_run_gftpl_sweep_sets_vanishing_flag(tmp_path):
    inst = gen_random_gkp(3, 1, SeededRng(22))
    path = tmp_path / "inst.json"
    path.write_text(serialize_gkp(inst))
    cfg = ExperimentConfig(
        "gftpl_gkp",
        {"gkp": str(path)},
        64,
        tuple(range(4)),
        params={"round_source": "random", "T_sweep": [16, 64, 256]},
    )
    summary = run_experiment(cfg, tmp_path / "out")
    assert [g["T"] for g in summary["sweep"]] == [16, 64, 256]
    assert "vanishing" in summary["bounds"]
    assert (tmp_path / "out" / "trace_T16_seed0.csv").exists()
    assert (tmp_path / "out" / "trace_T256_seed3.csv").exists()


# --- compare_bounds -----------------------------------------------------------------


def test_compare_bounds_flags_violations():
    ok = compare_bounds(
        {"algorithm": "x", "per_seed": [{"seed": 0, "T": 4, "regret": 42.0, "bound": 60.0}]}
    )
    assert ok["all_ok"] and ok["checked"] == 1
    edge = compare_bounds(
        {"algorithm": "x", "per_seed": [{"seed": 0, "T": 0, "regret": -1.0, "bound": 0.0}]}
    )
    assert edge["all_ok"]
    bad = compare_bounds(
        {"algorithm": "x", "per_seed": [{"seed": 3, "T": 4, "regret": 61.0, "bound": 60.0}]}
    )
    assert not bad["all_ok"]
    assert bad["violations"][0]["seed"] == 3


def test_compare_bounds_vanishing_flag():
    mk = lambda rates: {
        "algorithm": "x",
        "sweep": [
            {"T": T, "per_seed": [], "regret_per_round": r}
            for T, r in zip((256, 1024, 4096), rates)
        ],
    }
    assert compare_bounds(mk([0.9, 0.5, 0.3]))["vanishing"] is True
    assert compare_bounds(mk([0.5, 0.9, 0.3]))["vanishing"] is False
