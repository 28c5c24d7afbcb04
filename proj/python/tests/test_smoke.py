import json
from fractions import Fraction

import pytest

import smplab


def metric(report, name):
    for m in report["metrics"]:
        if m["name"] == name:
            return m
    raise KeyError(name)


def test_column_instance_values():
    inst = smplab.submodular_lb("1/2")
    assert inst.element_count == 10
    assert inst.has_tree
    adap = smplab.evaluate(inst, "adap", rational=True)
    assert Fraction(metric(adap, "adap")["exact"]) == Fraction(41, 32)
    alg = smplab.evaluate(inst, "alg", rational=True)
    assert Fraction(metric(alg, "alg")["exact"]) == Fraction(15, 16)


def test_instance_round_trip(tmp_path):
    inst = smplab.tree_lb(2, 2, "1/8")
    text = inst.to_json()
    assert json.loads(text)["schema"] == "smplab.instance"
    assert smplab.parse_instance(text).to_json() == text
    path = tmp_path / "tree.json"
    inst.save(str(path))
    assert smplab.load_instance(str(path)).to_json() == text


def test_gap_reports():
    sub = smplab.gap_submodular("0.05")
    assert sub["schema"] == "smplab.report"
    assert sub["pass"]
    assert metric(sub, "depth")["value"] == 117
    kext = smplab.gap_kext(3)
    assert kext["pass"]
    assert metric(kext, "non-adaptive bound 1+kp")["exact"] == "10/9"
    enc = smplab.gap_matroid_encoding(2)
    assert enc["pass"]


def test_monte_carlo_is_seeded():
    inst = smplab.random_instance(3)
    a = smplab.mc_estimate(inst, "adap", trials=2000, seed=4)
    b = smplab.mc_estimate(inst, "adap", trials=2000, seed=4, threads=2)
    assert metric(a, "adap_mc")["value"] == metric(b, "adap_mc")["value"]
    assert a["pass"]


def test_reduction_and_suite():
    inst = smplab.random_kext_instance(2, 1, max_weight=64)
    assert smplab.reduce_weighted(inst, 2)["pass"]
    assert smplab.verify_suite(seed=1, cases=10)["pass"]
    assert smplab.weight_class(5) == 3
    assert smplab.bucket_width(4) == 4
    assert smplab.submodular_lb_depth("0.01") == 917


def test_errors():
    with pytest.raises(ValueError):
        smplab.submodular_lb("0.7")
    with pytest.raises(ValueError):
        smplab.parse_instance("{")
    with pytest.raises(ValueError):
        smplab.prime_encoding(4)
    with pytest.raises(ValueError):
        smplab.evaluate(smplab.random_instance(1), "median")
