import pytest

import medusa_sim as ms


def test_rotation_matches_list_slicing():
    values = list(range(8))
    for k in range(8):
        assert ms.rotate_left(values, k) == values[k:] + values[:k]
        assert ms.rotate_via_stages(values, ms.stage_controls(8, k)) == values[k:] + values[:k]
    with pytest.raises(ms.AmountOutOfRange):
        ms.rotate_left(values, 8)


def test_cost_figures():
    assert ms.baseline_mux_cost(512, 32) == 512 * 31
    assert ms.medusa_mux_cost(512, 32) == 512 * 5
    assert ms.fifo_bram_cost(512, 32) == 15
    reports = ms.cost_report(ms.make_config(w_line=512, w_acc=16))
    totals = {}
    for r in reports:
        totals[r["design"]] = totals.get(r["design"], 0) + r["bram18"]
    assert totals == {"baseline": 960, "medusa": 64}


def test_bad_geometry_raises():
    with pytest.raises(ms.ConfigError):
        ms.make_config(w_line=96, w_acc=16)
    with pytest.raises(ms.MedusaError):
        ms.medusa_mux_cost(512, 6)


def test_streaming_latency_gap():
    cfg = ms.make_config(w_line=512, w_acc=16, sim_cycles=4000)
    base = ms.simulate(cfg, network="baseline")
    med = ms.simulate(cfg, network="medusa")
    assert med["bus_util"] >= 0.99
    assert base["words_delivered"] == med["words_delivered"]
    assert med["first_word_lat_min"] - base["first_word_lat_min"] == cfg.lanes


def test_validate_and_cli():
    ok, summary = ms.validate(ms.make_config(w_line=64, w_acc=16, sim_cycles=2000, rng_seed=3))
    assert ok and summary == "PASS"
    code, out, _ = ms.run_cli(["cost", "--w-line", "512", "--w-acc", "16"])
    assert code == 0
    assert "baseline,read,512,16,32,32,15872,480" in out
    code, _, err = ms.run_cli(["simulate", "--config", "/nonexistent.cfg"])
    assert code == 2 and err
