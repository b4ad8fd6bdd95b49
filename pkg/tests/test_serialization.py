"""File-format round trips and canonical (byte-stable) emission."""

import json
import os

import numpy as np
import pytest

from nsotkit.boxes import make_pr_box
from nsotkit.channels import binary_adder_mac, erasure_channel
from nsotkit.errors import ValidationError
from nsotkit.probability import Alphabet, ConditionalPmf
from nsotkit.serialization import (
    box_from_dict,
    box_to_dict,
    canonical_csv,
    canonical_json,
    channel_from_dict,
    channel_to_dict,
    format_float,
    tensor_from_dict,
    tensor_to_dict,
    write_atomically,
)


def test_flat_order_outputs_vary_fastest():
    # P(out|in) with out sizes 2, in size 3: flat order must be
    # (in=0: out0, out1), (in=1: out0, out1), (in=2: out0, out1)
    vals = np.array([[0.1, 0.2, 0.3], [0.9, 0.8, 0.7]])  # (out, in)
    pmf = ConditionalPmf((Alphabet("o", 2),), (Alphabet("i", 3),), vals)
    data = tensor_to_dict(pmf)
    assert data["values"] == [0.1, 0.9, 0.2, 0.8, 0.3, 0.7]


def test_tensor_round_trip():
    pr = make_pr_box().box
    again = tensor_from_dict(tensor_to_dict(pr))
    assert np.allclose(again.values, pr.values)
    assert again.output_names == pr.output_names
    assert again.input_names == pr.input_names


def test_unconditional_tensor_round_trip():
    pmf = ConditionalPmf((Alphabet("s", 4),), (), np.array([0.1, 0.2, 0.3, 0.4]))
    again = tensor_from_dict(tensor_to_dict(pmf))
    assert np.allclose(again.values, pmf.values)
    assert again.input_axes == ()


def test_box_round_trip_and_validation():
    pr = make_pr_box()
    data = box_to_dict(pr)
    assert data["party_structure"] == "bipartite"
    again = box_from_dict(data)
    assert np.allclose(again.box.values, pr.box.values)
    with pytest.raises(ValidationError):
        box_from_dict({"party_structure": "solo"})


def test_channel_round_trip_and_validation():
    for chan in (binary_adder_mac(), erasure_channel(0.25)):
        data = channel_to_dict(chan)
        again = channel_from_dict(data)
        assert again.kind == chan.kind
        assert np.allclose(again.law.values, chan.law.values)
    with pytest.raises(ValidationError):
        channel_from_dict({"kind": "carrier-pigeon"})


def test_value_count_mismatch_rejected():
    data = tensor_to_dict(make_pr_box().box)
    data["values"] = data["values"][:-1]
    with pytest.raises(ValidationError):
        tensor_from_dict(data)


def test_format_float_stability():
    assert format_float(0.5) == "0.5"
    assert format_float(1.0) == "1.0"
    assert format_float(0.0) == "0.0"
    assert format_float(1 / 3) == "0.333333333333"
    assert format_float(0.6513215599) == "0.6513215599"
    with pytest.raises(ValidationError):
        format_float(float("nan"))


def test_canonical_json_is_deterministic_and_parseable():
    payload = {"b": 1, "a": [0.1, {"x": True, "y": None}], "c": "text"}
    one = canonical_json(payload)
    two = canonical_json(payload)
    assert one == two
    parsed = json.loads(one)
    assert parsed["a"][0] == 0.1
    # insertion order is preserved, not sorted
    assert one.index('"b"') < one.index('"a"') < one.index('"c"')


def test_canonical_csv_formatting():
    text = canonical_csv([["n", "tv"], [2, 0.75]])
    assert text == "n,tv\n2,0.75\n"


def test_write_atomically(tmp_path):
    target = tmp_path / "report.json"
    write_atomically(str(target), "content\n")
    assert target.read_text() == "content\n"
    leftovers = [p for p in os.listdir(tmp_path) if p.startswith(".nsotkit-")]
    assert leftovers == []
