import json
from fractions import Fraction
from importlib import resources
from math import comb

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from bunmotive.errors import ValidationError
from bunmotive.weightcx import (
    ComplexError,
    Incidence,
    LogPairDatum,
    Stratum,
    build_pair_complex,
    cohomology,
    complex_euler_characteristic,
    constant_simplicial,
    curve_minus_points,
    gr_w_cohomology,
    gr_w_cohomology_simplicial,
    plane_minus_lines,
    smooth_projective,
)
from bunmotive.linalg import rank

LOGPAIR_SCHEMA = json.loads(resources.files("bunmotive").joinpath("schemas/logpair.schema.json").read_text())


def gm():
    return LogPairDatum(
        (Stratum("P1", 0, (), (1, 0, 1)), Stratum("zero", 1, (1,), (1,)), Stratum("inf", 1, (2,), (1,))),
        (Incidence("zero", "P1", {0: [[1]]}), Incidence("inf", "P1", {0: [[1]]})),
    )


def two_lines(second_gysin=1):
    one = [[1]]
    return LogPairDatum(
        (
            Stratum("P2", 0, (), (1, 0, 1, 0, 1)),
            Stratum("L1", 1, (1,), (1, 0, 1)),
            Stratum("L2", 1, (2,), (1, 0, 1)),
            Stratum("p", 2, (1, 2), (1,)),
        ),
        (
            Incidence("L1", "P2", {0: one, 2: one}),
            Incidence("L2", "P2", {0: one, 2: one}),
            Incidence("p", "L1", {0: one}),
            Incidence("p", "L2", {0: [[second_gysin]]}),
        ),
    )


def test_gm_complex():
    cx = build_pair_complex(gm())
    assert cx.spaces == {(0, 0): 1, (0, 2): 1, (-1, 0): 2}
    assert [abs(x) for x in cx.matrix(-1, 0)[0]] == [1, 1]
    h = cohomology(cx)
    assert h[(-1, 0, 1)] == 1 and h[(0, 0, 0)] == 1 and h[(0, 2, 0)] == 0
    assert gr_w_cohomology(gm()).nonzero() == {(0, 0): 1, (2, 1): 1}
    assert gr_w_cohomology(curve_minus_points(0, 2)) == gr_w_cohomology(gm())


def test_smooth_projective_is_pure():
    betti = (1, 4, 6, 4, 1)
    table = gr_w_cohomology(smooth_projective(betti))
    assert table.nonzero() == {(k, k): b for k, b in enumerate(betti)}
    assert build_pair_complex(smooth_projective(betti)).differentials == {}


def test_full_rank_kills_everything():
    d = LogPairDatum(
        (Stratum("X", 0, (), (0, 0, 1)), Stratum("D", 1, (1,), (1,))),
        (Incidence("D", "X", {0: [["3/2"]]}),),
    )
    assert all(v == 0 for v in cohomology(build_pair_complex(d)).values())


@pytest.mark.parametrize("g", range(0, 4))
@pytest.mark.parametrize("k", range(0, 5))
def test_curve_minus_points(g, k):
    table = gr_w_cohomology(curve_minus_points(g, k))
    expected = {(0, 0): 1, (1, 1): 2 * g, (2, 1): max(k - 1, 0)}
    if k == 0:
        expected[(2, 2)] = 1
    assert table.nonzero() == {key: v for key, v in expected.items() if v}
    assert table.betti(1) == 2 * g + max(k - 1, 0)
    if k:
        # rank-nullity of the single all-ones Gysin row
        assert table.betti(1) == 2 * g + k - rank([[1] * k])


def test_curve_examples():
    assert gr_w_cohomology(curve_minus_points(1, 1))[(2, 1)] == 0
    t = gr_w_cohomology(curve_minus_points(2, 3))
    assert (t[(1, 1)], t[(2, 1)]) == (4, 2)


@pytest.mark.parametrize("r", range(0, 6))
def test_plane_minus_lines(r):
    t = gr_w_cohomology(plane_minus_lines(r))
    if r == 0:
        assert t.nonzero() == {(0, 0): 1, (2, 2): 1, (4, 4): 1}
        return
    expected = {(0, 0): 1, (2, 1): r - 1, (4, 2): comb(r - 1, 2)}
    assert t.nonzero() == {key: v for key, v in expected.items() if v}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 6), st.integers(0, 5))
def test_euler_and_sign_independence(g, k, r):
    for datum in (curve_minus_points(g, k), plane_minus_lines(r)):
        cx = build_pair_complex(datum)
        cx.check_d_squared()
        assert gr_w_cohomology(datum).euler_characteristic() == complex_euler_characteristic(datum)
        flipped = cx.with_signs(lambda p: -1 if p % 2 else 1)
        flipped.check_d_squared()
        assert cohomology(flipped) == cohomology(cx)
        assert cohomology(cx.with_signs(lambda p: -1)) == cohomology(cx)


def test_d_squared_failure_is_rejected():
    build_pair_complex(two_lines(1))
    with pytest.raises(ComplexError) as info:
        build_pair_complex(two_lines(2))
    assert "position -2" in str(info.value)


def test_sign_rule():
    d = two_lines()
    signs = {(i.source, i.target): d.sign(i) for i in d.incidences}
    assert signs == {("L1", "P2"): -1, ("L2", "P2"): -1, ("p", "L1"): 1, ("p", "L2"): -1}


def test_json_round_trip_and_schema():
    for datum in (gm(), plane_minus_lines(3), curve_minus_points(2, 3)):
        data = datum.to_dict()
        jsonschema.validate(data, LOGPAIR_SCHEMA)
        again = LogPairDatum.from_dict(json.loads(json.dumps(data)))
        assert again == datum
        assert gr_w_cohomology(again) == gr_w_cohomology(datum)
    assert LogPairDatum.from_dict(gm().to_dict()).incidences[0].gysin[0] == [[Fraction(1)]]


@pytest.mark.parametrize(
    "mutate,field",
    [
        (lambda d: d.pop("strata"), "strata"),
        (lambda d: d["strata"][0].update(level=0.5), "level"),
        (lambda d: d["incidences"][0]["gysin"].update({"0": [["1", "1"]]}), None),
        (lambda d: d["incidences"][0]["gysin"].update({"0": [[0.5]]}), None),
        (lambda d: d["incidences"][0].update(target="nowhere"), "incidences"),
        (lambda d: d["strata"][1].update(level=2, components=[1, 2]), "incidences"),
        (lambda d: [s.update(level=2, components=[1, 2]) for s in d["strata"][1:]], "strata"),
        (lambda d: d["strata"][1].update(betti=[-1]), "betti"),
        (lambda d: d["strata"].append(dict(d["strata"][0])), "strata"),
    ],
)
def test_from_dict_validation(mutate, field):
    data = json.loads(json.dumps(gm().to_dict()))
    mutate(data)
    with pytest.raises(ValidationError) as info:
        LogPairDatum.from_dict(data)
    if field:
        assert info.value.field == field
    else:
        assert info.value.field.startswith("incidence zero->P1")


def test_bad_builders():
    with pytest.raises(ValidationError):
        curve_minus_points(-1, 2)
    with pytest.raises(ValidationError):
        plane_minus_lines(-1)


@pytest.mark.parametrize("length", [0, 2, 4])
@pytest.mark.parametrize("datum", [gm(), curve_minus_points(2, 3), plane_minus_lines(3)], ids=["gm", "curve", "plane"])
def test_constant_simplicial_matches_base(datum, length):
    assert gr_w_cohomology_simplicial(constant_simplicial(datum, length)).nonzero() == gr_w_cohomology(datum).nonzero()


def test_constant_simplicial_rejects_odd_length():
    with pytest.raises(ValidationError):
        constant_simplicial(gm(), 1)
