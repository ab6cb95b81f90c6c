import copy
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import diagram, read
from oracles import circle_count
from torkh.build import build_diagram, insert_kink
from torkh.classes import normalize
from torkh.corpus import diagonal, horizontal, square, vertical
from torkh.errors import TorkhError
from torkh.torus_diagram import (arc_class, circle_side_decomposition, component_classes,
                                 crossing_signs, diagram_from_json, diagram_to_json,
                                 resolve, validate)


def check(data):
    try:
        return validate(diagram_from_json(data)).to_json()
    except TorkhError as exc:
        return {"valid": False, "error": exc.code}


def test_corpus_validates(corpus_diagrams):
    bad = [name for name, d in corpus_diagrams if not validate(d).ok]
    assert bad == []


def test_json_round_trip(corpus_diagrams):
    for _, d in corpus_diagrams:
        assert diagram_from_json(diagram_to_json(d)) == d


def test_round_circle_passes():
    assert validate(diagram("unknot0")).to_json() == {"valid": True}


def test_wrong_winding_is_caught():
    data = read("diagrams/unknot0.json")
    data["edges"][0]["winding"] = [1, 0]
    assert check(data)["error"] in ("EULER_MISMATCH", "WINDING_MISMATCH")


def test_detached_port_is_caught():
    data = read("diagrams/trefoil.json")
    c, k = data["edges"][0]["ends"][0]
    data["edges"][0]["ends"][0] = [c, (k + 2) % 4]
    assert check(data)["error"] == "DANGLING_PORT"


def test_undeclared_crossing_is_caught():
    data = read("diagrams/unknot0.json")
    other = copy.deepcopy(data["edges"][0])
    other["id"] = 1
    # the same square moved by (1/8, 1/8): the two squares cross but no
    # crossing is declared
    shifted = []
    for p in other["path"]:
        x, y = F(p[0], p[1]) + F(1, 8), F(p[2], p[3]) + F(1, 8)
        shifted.append([x.numerator, x.denominator, y.numerator, y.denominator])
    other["path"] = shifted
    data["edges"].append(other)
    data["components"].append([[1, True]])
    assert check(data)["error"] == "SELF_INTERSECTION"


def test_missing_field_is_parse_error():
    data = read("diagrams/trefoil.json")
    del data["genus"]
    with pytest.raises(TorkhError) as exc:
        diagram_from_json(data)
    assert exc.value.code == "PARSE_ERROR"


def test_trivial_resolutions():
    st0 = resolve(diagram("unknot0"), ())
    assert [c.cls for c in st0.circles] == [(0, 0)] and st0.arcs == ()
    st1 = resolve(diagram("curve10"), ())
    assert [c.cls for c in st1.circles] == [(1, 0)] and not st1.circles[0].contractible


def test_resolve_length_mismatch():
    with pytest.raises(TorkhError) as exc:
        resolve(diagram("trefoil"), (0, 0))
    assert exc.value.code == "LENGTH_MISMATCH"


def test_circle_counts_match_union_find(corpus_diagrams):
    for name, d in corpus_diagrams:
        for u in product((0, 1), repeat=d.n):
            state = resolve(d, u)
            assert len(state.circles) == circle_count(d, u), (name, u)
            assert len(state.arcs) == d.n - sum(u)


def test_trefoil_all_zero_state():
    state = resolve(diagram("trefoil"), (0, 0, 0))
    assert len(state.arcs) == 3
    assert len(state.circles) == circle_count(diagram("trefoil"), (0, 0, 0))


def test_circle_classes_are_sums_of_windings(corpus_diagrams):
    # a circle is contractible exactly when its class vanishes, and the
    # classes of all circles add up to the sum of the component classes
    for name, d in corpus_diagrams:
        total = [0, 0]
        for e in d.edges:
            total[0] += e.winding.a
            total[1] += e.winding.b
        for u in product((0, 1), repeat=d.n):
            cs = resolve(d, u).circles
            for c in cs:
                assert c.contractible == (tuple(c.cls) == (0, 0))


def test_component_classes_negate_under_reversal(corpus_diagrams):
    for name, d in corpus_diagrams:
        data = diagram_to_json(d)
        classes = component_classes(d)
        by_edge = {e.id: e.winding for e in d.edges}
        for comp, cls in zip(d.components, classes):
            total = [0, 0]
            for eid, forward in comp:
                s = 1 if forward else -1
                total[0] += s * by_edge[eid].a
                total[1] += s * by_edge[eid].b
            assert tuple(total) == tuple(cls), name
        flipped = copy.deepcopy(data)
        flipped["components"] = [[[e, not fw] for e, fw in reversed(c)]
                                 for c in data["components"]]
        back = component_classes(diagram_from_json(flipped))
        assert [(-a, -b) for a, b in classes] == [tuple(c) for c in back]
        assert [normalize(c) for c in classes] == [normalize(c) for c in back]


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_normalize_ignores_sign(a, b):
    assert normalize((a, b)) == normalize((-a, -b))
    n = normalize((a, b))
    assert n == (0, 0) or n[0] > 0 or (n[0] == 0 and n[1] > 0)


def test_side_decomposition_ladybug_geometry():
    # a curl bulging away from the square: two circles side by side, the arc
    # outside both; bulging into it: the small circle sits in the big disk
    d = diagram("unknot1")
    state = resolve(d, (0,))
    sides = [circle_side_decomposition(state, i) for i in range(2)]
    assert all(s.inner == () for s in sides)
    nested = resolve(diagram("unknot1_nested"), (0,))
    sides = [circle_side_decomposition(nested, i) for i in range(2)]
    assert sorted((s.inner, s.outer) for s in sides) == [((), (0,)), ((0,), ())]


def test_side_decomposition_needs_contractible_circle():
    state = resolve(diagram("curve10"), ())
    with pytest.raises(TorkhError) as exc:
        circle_side_decomposition(state, 0)
    assert exc.value.code == "NOT_CONTRACTIBLE"


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=12), st.sampled_from((1, -1)))
def test_side_decomposition_invariant_under_translation(shift, side):
    def decomposition(s):
        sq = square(F(1, 4) + s, F(1, 4) + s, F(3, 4) + s, F(3, 4) + s)
        d = build_diagram([insert_kink(sq, 0, side=side)], [0 if side == 1 else 1])
        state = resolve(d, (0,))
        return [circle_side_decomposition(state, i) for i in range(2)]

    assert decomposition(shift) == decomposition(F(0))


def test_arc_classes_of_three_lines():
    d = diagram("lines_dq")
    state = resolve(d, (0, 0, 0))
    assert len(state.circles) == 1 and state.circles[0].contractible
    classes = sorted(arc_class(state, i) for i in range(3))
    assert classes == [(0, 1), (1, 0), (1, 1)]
    side = circle_side_decomposition(state, 0)
    assert side.inner == () and len(side.outer) == 3


def test_arc_class_of_planar_arc_is_trivial():
    state = resolve(diagram("trefoil"), (0, 0, 0))
    for i in range(3):
        assert arc_class(state, i) == (0, 0)


def test_arc_class_needs_contractible_anchor():
    state = resolve(diagram("meridian_longitude"), (0,))
    if all(c.contractible for c in state.circles):
        pytest.skip("resolution happens to be contractible")
    with pytest.raises(TorkhError) as exc:
        arc_class(state, 0)
    assert exc.value.code == "NONCONTRACTIBLE_ANCHOR"


def test_crossing_signs_of_fixtures():
    assert crossing_signs(diagram("trefoil")) == [1, 1, 1]
    assert sorted(crossing_signs(diagram("unknot3"))) == [-1, -1, 1]
    assert crossing_signs(diagram("hopf")) == [1, 1]


def test_reversing_a_component_keeps_self_crossing_signs():
    data = read("diagrams/trefoil.json")
    flipped = copy.deepcopy(data)
    flipped["components"] = [[[e, not fw] for e, fw in reversed(c)] for c in data["components"]]
    assert crossing_signs(diagram_from_json(flipped)) == crossing_signs(diagram_from_json(data))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_three_lines_always_valid(a, b, c):
    curves = [horizontal(F(a, 10)), vertical(F(b, 10)), diagonal(F(c, 10) - F(1, 20))]
    d = build_diagram(curves)
    assert validate(d).ok
    for u in product((0, 1), repeat=d.n):
        assert len(resolve(d, u).circles) == circle_count(d, u)
