import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasipoisson.bialgebra import random_twisted_spec, sh2_bialgebra
from quasipoisson.errors import MalformedInput
from quasipoisson.io import dumps_bialgebra, load_bialgebra, save_bialgebra, spec_from_dict, spec_to_dict

KEYS = ("mu", "gamma", "psi")


def _same(a, b):
    return a.dim == b.dim and all(np.array_equal(getattr(a, k), getattr(b, k)) for k in KEYS)


def test_round_trip(tmp_path):
    path = tmp_path / "sh2.json"
    save_bialgebra(sh2_bialgebra(), path)
    assert _same(load_bialgebra(path), sh2_bialgebra())


@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 4]))
def test_round_trip_is_bit_exact(seed, dim):
    spec = random_twisted_spec(dim, seed)
    assert _same(spec_from_dict(json.loads(dumps_bialgebra(spec))), spec)


def test_output_is_stable():
    assert dumps_bialgebra(sh2_bialgebra()) == dumps_bialgebra(sh2_bialgebra())


def test_diagonal_violation_is_rejected():
    d = spec_to_dict(sh2_bialgebra())
    d["mu"][0][0][1] = 1.0
    with pytest.raises(MalformedInput, match=r"mu\[0\]\[0\]\[1\]"):
        spec_from_dict(d)


def test_gamma_violation_names_both_entries():
    d = spec_to_dict(sh2_bialgebra())
    d["gamma"][2][0][1] = 5.0
    with pytest.raises(MalformedInput, match=r"gamma\[2\]\[0\]\[1\] = 5.0 but gamma\[2\]\[1\]\[0\]"):
        spec_from_dict(d)


def test_psi_violation():
    d = spec_to_dict(sh2_bialgebra())
    d["psi"][0][1][2] = 3.0
    with pytest.raises(MalformedInput, match="psi"):
        spec_from_dict(d)


def test_shape_mismatch_reports_both_shapes():
    d = spec_to_dict(sh2_bialgebra())
    d["psi"] = np.zeros((2, 2, 2)).tolist()
    with pytest.raises(MalformedInput, match=r"mu has shape \(3, 3, 3\).*psi has shape \(2, 2, 2\)"):
        spec_from_dict(d)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.pop("gamma"), "missing"),
        (lambda d: d.update(extra=1), "unknown"),
        (lambda d: d.update(dim="3"), "dim"),
        (lambda d: d.update(dim=2), "expected"),
        (lambda d: d["mu"][0].append([0, 0]), "ragged"),
        (lambda d: d["mu"][0][0].__setitem__(0, "x"), "number"),
        (lambda d: d["mu"][0][0].__setitem__(0, True), "boolean"),
    ],
)
def test_malformed_structures(mutate, message):
    d = spec_to_dict(sh2_bialgebra())
    mutate(d)
    with pytest.raises(MalformedInput, match=message):
        spec_from_dict(d)


def test_bad_json_reports_location(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 3,\n "mu": [1, }')
    with pytest.raises(MalformedInput, match=r"bad.json:2:\d+"):
        load_bialgebra(path)
    with pytest.raises(MalformedInput, match="cannot read"):
        load_bialgebra(tmp_path / "missing.json")
    path.write_text("[1, 2]")
    with pytest.raises(MalformedInput, match="top level"):
        load_bialgebra(path)
    path.write_text('{"dim": 1, "mu": [[[NaN]]], "gamma": [[[0]]], "psi": [[[0]]]}')
    with pytest.raises(MalformedInput, match="non-finite"):
        load_bialgebra(path)
