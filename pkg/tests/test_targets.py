import json

import pytest

from crowell.errors import SpecError
from crowell.targets import (
    FiniteModuleSpec,
    default_battery,
    load_battery,
    load_spec,
    spec_from_data,
    spec_to_data,
)


def test_spec_id(chi):
    assert chi.spec_id == "n=3 k=1 t1=2 t2=1"
    rotation = FiniteModuleSpec(3, 2, (((0, 1), (2, 1)),))
    assert rotation.spec_id == "n=3 k=2 t1=[[0,1],[2,1]]"


def test_entries_are_reduced():
    spec = FiniteModuleSpec(3, 1, (((-1,),),))
    assert spec.action == (((2,),),)


def test_inverse_action(chi):
    assert chi.act_inverse(1, chi.act(1, (1,))) == (1,)
    rotation = FiniteModuleSpec(3, 2, (((0, 1), (2, 1)),))
    for v in [(1, 0), (0, 1), (2, 2)]:
        assert rotation.act_inverse(1, rotation.act(1, v)) == v


@pytest.mark.parametrize(
    "modulus, rank, action",
    [
        (1, 1, (((1,),),)),
        (3, 0, ()),
        (4, 1, (((2,),),)),
        (3, 2, (((1, 0),),)),
        (3, 2, (((0, 1), (1, 0)), ((1, 1), (0, 1)))),
    ],
)
def test_invalid_specs(modulus, rank, action):
    with pytest.raises(SpecError):
        FiniteModuleSpec(modulus, rank, action)


def test_default_battery_sizes():
    # rank 1: 1 + 2 + 2 + 4 + 6 units; rank 2: one spec per sign pattern
    assert len(default_battery(1)) == 16
    assert len(default_battery(2)) == 1 + 4 + 4 + 16 + 36 + 2
    assert default_battery(0) == []


def test_default_battery_is_sorted_and_commuting():
    battery = default_battery(2)
    assert [s.sort_key for s in battery] == sorted(s.sort_key for s in battery)
    assert len({s.spec_id for s in battery}) == len(battery)


def test_swapped(chi):
    swapped = chi.swapped([2, 1])
    assert swapped.spec_id == "n=3 k=1 t1=1 t2=2"
    assert swapped.swapped({1: 2, 2: 1}) == chi


def test_json_round_trip(tmp_path, chi):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec_to_data(chi)), encoding="utf-8")
    assert load_spec(path) == chi
    battery = tmp_path / "battery.json"
    battery.write_text(json.dumps([spec_to_data(s) for s in reversed(default_battery(1))]), encoding="utf-8")
    assert load_battery(battery) == default_battery(1)


def test_load_errors(tmp_path):
    with pytest.raises(OSError):
        load_spec(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"modulus": 3}', encoding="utf-8")
    with pytest.raises(SpecError):
        load_spec(bad)
    with pytest.raises(SpecError):
        spec_from_data({"modulus": 3, "rank": 1})


def test_bundled_targets():
    from crowell.diagram import FIXTURES_DIR

    assert load_spec(FIXTURES_DIR / "targets" / "gf3chi.json").spec_id == "n=3 k=1 t1=2 t2=1"
    assert load_spec(FIXTURES_DIR / "targets" / "fox3.json").mu == 1


def test_actions_are_plain_integer_tuples():
    rotation = FiniteModuleSpec(3, 2, (((0, 1), (2, 1)), ((2, 0), (0, 2))))
    image = rotation.act(1, (1, 2))
    assert image == (2, 1)
    assert all(type(v) is int for v in image)
    assert rotation.inverse[0] == ((1, 2), (1, 0))
    assert json.dumps(rotation.act_inverse(2, image)) == "[1, 2]"


def test_noncommuting_actions_are_rejected():
    with pytest.raises(SpecError, match="commute"):
        FiniteModuleSpec(5, 2, (((1, 1), (0, 1)), ((1, 0), (1, 1))))
