import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphquad.builders import build_net, enumerate_primitive, mirror, rotate180
from sphquad.netcore import Net, canonical_form, decompose_arcs, is_isomorphic, validate_net

SAMPLE = ["P0", "X[1,2]", "X'[0,0]", "Z'[1,1]", "R[2,1]", "S[1,1]", "W[2,2]", "V'[2,1]", "P1"]


@pytest.mark.parametrize("label", SAMPLE)
def test_catalogue_nets_are_valid_generic(label):
    rep = validate_net(build_net(label))
    assert rep.status == "VALID-GENERIC", rep.violations
    assert rep.irreducible


def test_base_net_shape():
    net = build_net("P0")
    assert net.corner_orders() == (0, 0, 0, 0)
    assert net.side_orders() == (1, 1, 1, 1)
    assert validate_net(net).primitive


def test_pmu_is_not_primitive():
    rep = validate_net(build_net("P1"))
    assert rep.irreducible and not rep.primitive


def test_digon_makes_net_reducible():
    rep = validate_net(build_net("X[0,1] + D24@side3"))
    assert rep.valid and not rep.irreducible


def test_recoloured_edge_is_rejected():
    net = build_net("X[1,1]")
    d = next(d for d in range(net.size) if not net.outer[d] and not net.outer[net.opp[d]])
    col = list(net.color)
    col[d] = col[net.opp[d]] = col[d] % 4 + 1
    rep = validate_net(dataclasses.replace(net, color=tuple(col)))
    assert rep.status == "INVALID"


def test_broken_involution_is_rejected():
    net = build_net("P0")
    opp = list(net.opp)
    opp[0] = 0
    rep = validate_net(dataclasses.replace(net, opp=tuple(opp)))
    assert any("involution" in v for v in rep.violations)


def test_wrong_corner_count():
    assert not validate_net(build_net("P0"), expected_corners=3).valid


def test_arc_counts():
    counts = decompose_arcs(build_net("X[1,1]")).counts()
    assert counts == {"lateral": 4, "separator": 4, "two-sided": 2}


def test_json_round_trip():
    net = build_net("Z[1,1]")
    back = Net.from_json(net.to_json())
    assert is_isomorphic(back, net)[0]
    assert canonical_form(back) == canonical_form(net)


def test_labeled_versus_unlabeled():
    a, b = build_net("X[0,1]"), build_net("X[1,0]")
    assert not is_isomorphic(a, b, "labeled")[0]
    assert is_isomorphic(a, b, "unlabeled")[0]


def test_bad_mode():
    with pytest.raises(ValueError):
        is_isomorphic(build_net("P0"), build_net("P0"), "sideways")


CATALOGUE = [net for _, net in enumerate_primitive(3)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(CATALOGUE) - 1), st.integers(0, len(CATALOGUE) - 1))
def test_canonical_form_decides_isomorphism(i, j):
    a, b = CATALOGUE[i], CATALOGUE[j]
    assert (canonical_form(a) == canonical_form(b)) == is_isomorphic(a, b)[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(CATALOGUE) - 1), st.sampled_from(["mirror", "rotate"]))
def test_symmetries_preserve_unlabeled_class(i, how):
    net = CATALOGUE[i]
    other = mirror(net) if how == "mirror" else rotate180(net)
    assert validate_net(other).valid
    assert is_isomorphic(net, other, "unlabeled")[0]
    assert canonical_form(net, "unlabeled") == canonical_form(other, "unlabeled")
