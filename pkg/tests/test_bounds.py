import pytest

from rateregion import presets
from rateregion.bounds import (
    MITerm,
    NotAMACError,
    VariableId,
    compact_bounds,
    cutset_bounds,
    generate,
    han_bounds,
    inner_bounds,
)
from rateregion.network import MessageId, make_spec


def test_miterm_strips_conditioned_targets():
    t = MITerm.make(1, [VariableId.x(1), VariableId.x(2)], [VariableId.x(2)])
    assert t.targets == (VariableId.x(1),)
    assert str(t) == "I(Y1; X1 | X2)"


def test_variable_order_inputs_first():
    m = MessageId.of((1,), (1,))
    vs = sorted([VariableId.y(1), VariableId.u(m), VariableId.x(2), VariableId.v(m)])
    assert [v.kind for v in vs] == ["X", "U", "V", "Y"]


def test_han_golden_sw_mac():
    lines = han_bounds(presets.spec_preset("sw-mac")).lines()
    assert lines[0] == "R[{1|1}] <= I(Y1; X1,X2 | U[{1,2|1}],U[{2|1}])"
    assert lines[-1] == "R[{1|1}]+R[{1,2|1}]+R[{2|1}] <= I(Y1; X1,X2)"


def test_compact_golden_sw_mac():
    assert compact_bounds(presets.spec_preset("sw-mac")).lines() == [
        "R[{1|1}] <= I(Y1; X1,X2 | U'[{1,2|1}],U'[{2|1}])",
        "R[{2|1}] <= I(Y1; X1,X2 | U'[{1|1}],U'[{1,2|1}])",
        "R[{1|1}]+R[{2|1}] <= I(Y1; X1,X2 | U'[{1,2|1}])",
        "R[{1|1}]+R[{1,2|1}]+R[{2|1}] <= I(Y1; X1,X2)",
    ]


def test_classical_mac_han_equals_compact_structure():
    spec = presets.spec_preset("classical-mac")
    assert len(han_bounds(spec)) == len(compact_bounds(spec)) == 3


def test_single_user():
    spec = presets.spec_preset("single")
    for f in ("han", "compact", "cutset", "inner"):
        assert len(generate(spec, f)) == 1


def test_mac_only_formulations_reject_broadcast():
    spec = presets.spec_preset("ifc2cm")
    with pytest.raises(NotAMACError):
        han_bounds(spec)
    with pytest.raises(NotAMACError):
        compact_bounds(spec)


def test_unknown_formulation():
    with pytest.raises(ValueError):
        generate(presets.spec_preset("single"), "nope")


def test_cutset_conditions_on_common_transmitter():
    lines = cutset_bounds(presets.spec_preset("ifc2cm")).lines()
    assert "R[{1|1}]+R[{1|1,2}] <= I(Y1; X1 | X2,U[{2|1,2}],U[{2|2}])" in lines


def test_cutset_empty_complement_has_no_conditioning():
    spec = make_spec(1, 1, [((1,), (1,))])
    assert cutset_bounds(spec).lines() == ["R[{1|1}] <= I(Y1; X1)"]


def test_inner_rate_map_and_original_rates():
    bs = inner_bounds(presets.spec_preset("ifc2cm"))
    assert len(bs) == 6
    orig = bs.in_original_rates()
    assert all(len(b.lhs) in (2, 4) for b in orig)


def test_bounds_are_sorted_and_unique():
    bs = cutset_bounds(presets.spec_preset("ifc2cm"))
    lines = bs.lines()
    assert len(set(lines)) == len(lines)
    assert len(bs) == 35
