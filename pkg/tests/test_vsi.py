import pytest

from rateregion import presets
from rateregion.channel import INNER, OUTER, make_schema, sample_distributions
from rateregion.network import MessageId
from rateregion.vsi import (
    CERTIFIED,
    EXHAUSTED,
    FALSIFIED,
    check_condition_i,
    check_condition_ii,
    check_condition_iii,
    obligations,
    replay,
    strong_interference_bound,
    vsi_capacity,
)

IFC = presets.spec_preset("ifc2cm")


def _samples(channel_name, mode, n=30):
    ch = presets.channel_preset(channel_name)
    return sample_distributions(make_schema(IFC, ch, mode), ch, n, 42)


def test_obligation_count():
    obs = obligations(IFC)
    assert len(obs) == 6
    assert {ob.z for ob in obs} == {1, 2}


def test_condition_i_is_exact():
    obs = obligations(IFC)
    verdicts = {(len(ob.S), ob.z): check_condition_i(ob).verdict for ob in obs}
    assert verdicts[(4, 1)] == EXHAUSTED
    first = next(ob for ob in obs if ob.S == {MessageId.of((1,), (1,)), MessageId.of((1,), (1, 2))})
    assert check_condition_i(first).verdict == CERTIFIED
    assert check_condition_i(first).witness == "S^1=S"


def test_condition_ii_on_shared_output():
    samples = _samples("ifc-shared", OUTER)
    cross = next(o for o in obligations(IFC) if len(o.S) == 2 and o.z == 2
                 and all(m.tx == (1,) for m in o.S))
    check = check_condition_ii(cross, IFC, samples)
    assert check.verdict == CERTIFIED
    part, zp = check.witness
    assert zp == 2
    # the full sum rate is not covered by ii even when both outputs coincide
    full = next(o for o in obligations(IFC) if len(o.S) == 4 and o.z == 1)
    assert check_condition_ii(full, IFC, samples).verdict == FALSIFIED


def test_condition_ii_falsified_with_replay():
    ob = next(o for o in obligations(IFC) if len(o.S) == 4 and o.z == 2)
    samples = _samples("ifc-noise2", OUTER)
    check = check_condition_ii(ob, IFC, samples)
    assert check.verdict == FALSIFIED
    assert len(check.evidence) == check.n_candidates == 4
    assert all(replay(check, ob, IFC, samples))


def test_condition_iii_cover_rules():
    ob = next(o for o in obligations(IFC) if len(o.S) == 4 and o.z == 2)
    samples = _samples("ifc-noise2", INNER)
    contains = check_condition_iii(ob.origin, 2, IFC, samples)
    assert contains.verdict == FALSIFIED
    assert all(replay(contains, ob, IFC, samples))
    with pytest.raises(ValueError):
        check_condition_iii(ob.origin, 2, IFC, samples, cover="bogus")
    with pytest.raises(ValueError):
        check_condition_iii(ob.origin, 2, IFC, samples, k_max=0)


def test_strong_interference_bound_shape():
    b = strong_interference_bound(IFC, IFC.messages, 1)
    assert str(b.rhs[0]) == "I(Y1; X1,X2)"


def test_certificate_report_and_region():
    cert, region = vsi_capacity(IFC, presets.channel_preset("ifc-shared"), 30, 42)
    assert cert.certified and region is not None
    text = cert.report()
    assert text.startswith("# vsi seed=42 samples=30 k_max=2 verdict=certified\n")
    assert len(text.splitlines()) == 3 + 6
    assert region.dim == 4


def test_negative_certificate():
    cert, region = vsi_capacity(IFC, presets.channel_preset("ifc-noise2"), 30, 42)
    assert not cert.certified and region is None
    assert [r.obligation.z for r in cert.failed] == [2]
    assert "FAILED" in cert.report()
    assert cert.witnesses_acyclic()
