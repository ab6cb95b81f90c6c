import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, bare_config, config, read
from generated import chords_json, diagram_faces, labelings, planar_chords, planar_samples
from torkh.config_analysis import (DecoratedConfiguration, chord_splitting, circuit_nullity,
                                   classify_index2, classify_index3, components,
                                   configuration_from_json, configuration_to_json, core,
                                   decorated_from_json, dual, interlacement_matrix, is_connected,
                                   merging_set, multiplicity_bruteforce, multiplicity_product,
                                   multiplicity_rank, poset, rank_data, reduce_leaf_coleaf,
                                   gf2_rank, surgery, with_duals)
from torkh.errors import TorkhError


def subsets(n):
    for k in range(n + 1):
        yield from (frozenset(c) for c in combinations(range(n), k))


def arcs_named(dec, names):
    return frozenset(dec.config.names.index(a) for a in names)


# ---------------------------------------------------------------- surgery


def test_surgery_examples():
    lb = bare_config("ladybug")
    assert len(surgery(lb, ()).circles(())) == 1
    assert surgery(lb, ()).index == 2
    assert len(lb.circles({0})) == 2
    assert len(lb.circles(lb.full())) == 1


def test_surgery_keeps_remaining_arcs():
    c = bare_config("dq")
    s = surgery(c, {0})
    assert s.index == 2 and s.names == ("b", "c")
    assert len(s.circles(s.full())) == len(c.circles(c.full()))


# ---------------------------------------------------------------- posets


def test_index_one_poset_has_two_elements():
    faces = [dec for _, dec in diagram_faces() if dec.index == 1]
    assert faces
    for dec in faces:
        assert len(poset(dec)) == 2
        assert multiplicity_bruteforce(dec)[0] == 1


def test_ladybug_poset():
    dec = config("ladybug")
    P = poset(dec)
    assert len(P) - 2 == 4
    assert multiplicity_bruteforce(dec)[0] == 2


def test_quasi_ladybug_on_torus_is_nonempty():
    for name in ("q", "q_alpha_beta", "q_beta_gamma", "q_gamma_betabar", "q_2_1"):
        P = poset(config(name))
        assert len(P) - 2 == 4


def test_ladybug_on_noncontractible_circle_is_empty():
    c = bare_config("ladybug_noncontractible")
    assert all(poset(dec).empty for dec in labelings(c))
    assert classify_index2(config("ladybug_noncontractible")).kind == "EMPTY"


def test_poset_chains_and_fibers():
    dec = config("dq")
    P = poset(dec)
    assert len(P.maximal_chains()) == 12
    assert multiplicity_bruteforce(dec)[0] == 2
    assert all(len(P.up[e]) > 0 for e in P.elements if e != P.top)


def test_dual_reverses_the_poset():
    for name in ("ladybug", "q", "dq", "two_ladybugs", "worked_example", "index4_case04"):
        dec = config(name)
        P, Q = poset(dec), poset(dual(dec))
        assert len(P) == len(Q)
        assert sorted(len(v) for v in P.fibers().values()) == \
            sorted(len(v) for v in Q.fibers().values())
        assert len(P.maximal_chains()) == len(Q.maximal_chains())


def test_labels_must_fit():
    c = bare_config("ladybug")
    with pytest.raises(TorkhError) as exc:
        poset(DecoratedConfiguration(c, (1, 1), (1,)))
    assert exc.value.code == "LENGTH_MISMATCH"


# ---------------------------------------------------------------- multiplicity


def test_rank_formula_agrees_with_brute_force_on_corpus():
    faces = diagram_faces()
    assert len(faces) >= 200
    for name, dec in faces:
        _, fibers = multiplicity_bruteforce(dec)
        for k, fiber in fibers.items():
            assert multiplicity_rank(dec, k) == len(fiber), (name, k)


def test_rank_formula_on_synthetic_fixtures():
    for path in sorted((FIXTURES / "configs").glob("*.json")):
        data = read(f"configs/{path.name}")
        if "y" not in data:
            continue
        dec = decorated_from_json(data)
        if not is_connected(dec.config) or poset(dec).empty:
            continue
        for k, fiber in multiplicity_bruteforce(dec)[1].items():
            assert multiplicity_rank(dec, k) == len(fiber), (path.name, k)


def _merging_sets(c):
    n = len(c.circles(()))
    for hat in combinations(range(c.index), n - 1):
        if len(c.circles(hat)) == 1:
            yield hat


def test_rank_formula_does_not_depend_on_merging_set():
    checked = 0
    for name, dec in diagram_faces():
        if len(dec.config.circles(())) < 2:
            continue
        fibers = multiplicity_bruteforce(dec)[1]
        for hat in _merging_sets(dec.config):
            for k in fibers:
                assert multiplicity_rank(dec, k, hat) == len(fibers[k])
            checked += 1
    assert checked > 0


def test_worked_example():
    dec = config("worked_example")
    assert len(dec.config.circles(())) == 3
    A = arcs_named(dec, ["a1", "a3", "a5", "a6"])
    assert rank_data(dec, A) == (2, 1)
    assert multiplicity_rank(dec, A) == 2
    assert len(multiplicity_bruteforce(dec)[1][A]) == 2


def test_multiplicity_rank_errors():
    with pytest.raises(TorkhError) as exc:
        multiplicity_rank(config("ladybug_pair"), ())
    assert exc.value.code == "DISCONNECTED"
    c = bare_config("ladybug_noncontractible")
    with pytest.raises(TorkhError) as exc:
        multiplicity_rank(DecoratedConfiguration(c, (1,), (-1,)), ())
    assert exc.value.code == "EMPTY_CONFIGURATION"


def test_product_rule():
    assert multiplicity_product(config("ladybug_pair")) == 4
    assert multiplicity_bruteforce(config("ladybug_pair"))[0] == 4
    assert multiplicity_product(config("ladybug_and_chord")) == 2
    for name, dec in diagram_faces()[:100]:
        assert multiplicity_product(dec) == multiplicity_bruteforce(dec)[0]


def test_product_rule_on_disconnected_faces():
    seen = 0
    for name, dec in _all_faces():
        if is_connected(dec.config) or poset(dec).empty:
            continue
        seen += 1
        assert multiplicity_product(dec) == multiplicity_bruteforce(dec)[0]
    assert seen > 0


def _all_faces():
    from conftest import all_diagrams
    from torkh.moduli import cube_faces
    from torkh.torus_diagram import port_graph
    for name, d in all_diagrams()[:40]:
        for _, dec in cube_faces(port_graph(d), 2, d.genus):
            yield name, dec
        for _, dec in cube_faces(port_graph(d), 3, d.genus):
            yield name, dec


# ---------------------------------------------------------------- interlacement


def one_circle_fixtures():
    out = []
    for path in sorted((FIXTURES / "configs").glob("*.json")):
        c = configuration_from_json(read(f"configs/{path.name}"))[0]
        if len(c.circles(())) == 1 and c.index <= 6 and not c.graph.free:
            out.append((path.stem, c))
    return out


def test_circuit_nullity_on_one_circle_fixtures():
    fx = one_circle_fixtures()
    assert len(fx) >= 10
    for name, c in fx:
        M = interlacement_matrix(c)
        for A in subsets(c.index):
            assert circuit_nullity(M, A) == len(c.circles(A)), (name, sorted(A))


def test_circuit_nullity_examples():
    lb = bare_config("ladybug")
    M = interlacement_matrix(lb)
    assert circuit_nullity(M, ()) == 1
    assert circuit_nullity(M, {0, 1}) == 1
    two = configuration_from_json(chords_json(list("aabb"), {"a": "inner", "b": "inner"}))[0]
    assert circuit_nullity(interlacement_matrix(two), {0, 1}) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_circuit_nullity_on_random_chords(seed, n):
    order, sides = planar_chords(random.Random(seed), n)
    c = configuration_from_json(chords_json(order, sides))[0]
    M = interlacement_matrix(c)
    assert all(M[i][j] == M[j][i] for i in range(n) for j in range(n))
    assert all(M[i][i] == 0 for i in range(n))
    for A in subsets(n):
        assert circuit_nullity(M, A) == len(c.circles(A))


def test_one_circle_rank_properties():
    for order, sides, c in planar_samples():
        for dec in labelings(c):
            P = poset(dec)
            if P.empty:
                continue
            if dec.y == (-1,):
                assert multiplicity_bruteforce(dec)[0] == 1
            else:
                r = gf2_rank(interlacement_matrix(c))
                assert r <= 2 and r % 2 == 0


def test_chord_splitting_of_dq():
    split = chord_splitting(interlacement_matrix(bare_config("dq")))
    assert sorted(len(p) for p in split.parts()) == [1, 1, 1]
    assert chord_splitting(interlacement_matrix(bare_config("coleaf_tree"))) is None


# ---------------------------------------------------------------- reduction and core


def test_single_coleaf_reduces_to_nothing():
    c = configuration_from_json(chords_json(list("aa"), {"a": "inner"}))[0]
    dec = next(d for d in labelings(c) if not poset(d).empty)
    reduced, count = reduce_leaf_coleaf(dec)
    assert (reduced.index, count) == (0, 1)


def test_tree_of_coleaves():
    dec = config("coleaf_tree")
    reduced, count = reduce_leaf_coleaf(dec)
    assert (reduced.index, count) == (0, 3)
    assert len(poset(dec)) == 8


def test_ladybug_with_leaf_reduces_to_ladybug():
    dec = config("ladybug_leaf")
    reduced, count = reduce_leaf_coleaf(dec)
    assert count == 1 and reduced.index == 2
    assert classify_index2(core(reduced)).kind == "L0"


def test_reduction_preserves_multiplicity_and_halves_posets():
    for name, dec in diagram_faces():
        reduced, count = reduce_leaf_coleaf(dec)
        assert len(poset(dec)) == len(poset(reduced)) * 2 ** count
        assert multiplicity_bruteforce(dec)[0] == multiplicity_bruteforce(reduced)[0]


def test_core_drops_free_circles():
    dec = config("ladybug_free_circle")
    c = core(dec)
    assert len(c.config.circles(())) == 1 and c.config.graph.free == ()
    assert classify_index2(c).kind == "L0"
    lb = config("ladybug")
    assert core(lb).config.circles(()) == lb.config.circles(())


# ---------------------------------------------------------------- classification


def test_index_two_examples():
    assert str(classify_index2(config("ladybug"))) == "L0"
    assert str(classify_index2(config("lalpha"))) == "L_ALPHA[(1,0)]"
    assert str(classify_index2(config("q"))) == "Q[(0,1),(1,0)]"
    with pytest.raises(TorkhError) as exc:
        classify_index2(config("dq"))
    assert exc.value.code == "WRONG_INDEX"


def test_quasi_ladybugs_only_on_the_torus():
    kinds = set()
    for _, dec in diagram_faces():
        if dec.index == 2:
            kind = classify_index2(dec).kind
            kinds.add(kind)
            if dec.config.genus == 0:
                assert kind != "Q"
    for order, sides, c in planar_samples():
        if c.index == 2:
            for dec in labelings(c):
                assert classify_index2(dec).kind != "Q"
    assert {"SQUARE", "L0"} <= kinds


def test_index_three_examples():
    assert str(classify_index3(config("dq"))) == "(8)[(0,1),(1,0),(1,1)]"
    assert str(classify_index3(config("dq_prime"))) == "(10)[(0,1),(1,0),(1,1)]"
    assert classify_index3(config("coleaf_tree")).kind == "REDUCIBLE"
    c = bare_config("q_with_inner_chord")
    assert all(classify_index3(dec).kind == "EMPTY" for dec in labelings(c))
    with pytest.raises(TorkhError):
        classify_index3(config("q"))


def test_dq_classes_satisfy_sum_relation():
    dec = config("dq")
    classes = classify_index3(dec).classes
    a, b, c = sorted(classes)
    assert (a[0] + b[0], a[1] + b[1]) == c or (b[0] + c[0], b[1] + c[1]) == a or \
        (a[0] + c[0], a[1] + c[1]) == b


# ---------------------------------------------------------------- file format


def test_parse_errors():
    bad = chords_json(list("abab"), {"a": "inner", "b": "outer"}, genus=1,
                      classes={"a": (1, 0)})
    with pytest.raises(TorkhError) as exc:
        configuration_from_json(bad)
    assert exc.value.code == "PARSE_ERROR"
    dup = chords_json(list("abab"), {"a": "inner", "b": "outer"})
    dup["circles"][0]["slots"][1] = "a.0"
    with pytest.raises(TorkhError):
        configuration_from_json(dup)
    with pytest.raises(TorkhError):
        decorated_from_json(chords_json(list("abab"), {"a": "inner", "b": "outer"}))


def test_serialized_configurations_round_trip():
    items = [dec for _, dec in diagram_faces()]
    for path in sorted((FIXTURES / "configs").glob("*.json")):
        data = read(f"configs/{path.name}")
        if "y" in data:
            items.append(decorated_from_json(data))
    for dec in items:
        back = decorated_from_json(configuration_to_json(dec.config, dec.y, dec.x))
        P, Q = poset(dec), poset(back)
        for A in subsets(dec.index):
            assert sorted(c.cls for c in dec.config.circles(A)) == \
                sorted(c.cls for c in back.config.circles(A))
        assert len(P) == len(Q)
        assert len(P.maximal_chains()) == len(Q.maximal_chains())
        if dec.index == 2:
            assert classify_index2(dec) == classify_index2(back)
        if dec.index == 3:
            assert classify_index3(dec) == classify_index3(back)


def test_with_duals_of_everything_is_the_dual_configuration():
    c = bare_config("dq")
    d, _ = with_duals(c, c.full())
    assert len(d.circles(())) == len(c.circles(c.full()))
    assert len(d.circles(d.full())) == len(c.circles(()))
