import math
import os

import numpy as np
import pytest

import grnevo


def network(name):
    return grnevo.load_network(f"{os.environ['GRNEVO_DATA_DIR']}/networks/{name}.json")


def test_metric_calibration():
    t = np.arange(101)
    assert abs(grnevo.autocorr_metric(np.cos(2 * math.pi * t / 10)) + 9) <= 0.5
    assert grnevo.autocorr_metric([3.0] * 101) == 0.0
    assert len(grnevo.autocorrelation(np.sin(t))) == 51


def test_network_properties():
    rep = network("repressilator")
    assert rep.gene_names == ["R1", "R2", "R3"]
    assert rep.hill.shape == (3, 3)
    assert rep.interaction_count == 3
    assert grnevo.Network.from_json(rep.to_json()).hill.tolist() == rep.hill.tolist()


def test_simulate_and_score():
    rep = network("repressilator")
    start = np.array([5.0, 1.0, 1.0])
    trace = grnevo.simulate(rep, 100, mrna=start, protein=start)
    assert trace["t"].tolist() == list(range(101))
    assert trace["protein"].shape == (101, 3)
    assert grnevo.oscillator_raw(rep, 0, mrna=start, protein=start) <= -5.5
    assert grnevo.bistable_raw(network("toggle"), 0) <= -9


def test_bad_state_length():
    with pytest.raises(ValueError):
        grnevo.simulate(network("toggle"), 10, protein=np.ones(3))


def test_penalty():
    assert grnevo.penalty(250, 250.0, 6.0) == 6.0
    assert grnevo.penalty(0, 250.0, 6.0) == 0.0


def test_problem():
    p = grnevo.Problem("conditional-oscillator")
    assert p.kind == "conditional-oscillator"
    assert p.genotype_length == 36
    assert p.threshold == -5.5
    with pytest.raises(Exception):
        grnevo.Problem("nope")


def test_run_trial():
    p = grnevo.Problem("bistable")
    r = grnevo.run_trial(p, method="forced-reduction", density="dense", seed=1)
    assert r["success"] == (r["robustness"] >= 90)
    assert r["generations"] <= 50
    assert r["network"].interaction_count == r["interactions"]
    assert len(r["history"]) == r["generations"] + 1
    assert p.raw(r["network"], seed=0) <= 0.0
