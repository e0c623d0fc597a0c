import json
from itertools import combinations

import jsonschema
import numpy as np
import pytest

from powergraph import algorithms as alg
from powergraph import graphs as gr
from powergraph import groups as grp
from powergraph import theorems as th


@pytest.fixture(scope="module")
def report60():
    return th.run_all(60)


# ----------------------------------------------------------------------
# catalog


def test_catalog_contents():
    labels = {g.label for g in th.catalog(30)}
    assert {"Z27", "Heis(3)", "Q24", "F21", "S3", "A4", "S4", "S3xZ3", "Z2^2", "Z3^3"} <= labels
    assert "A5" in {g.label for g in th.catalog(60)}
    big = {g.label for g in th.catalog(200)}
    assert {"S3xS3", "Z7^2:Z3", "Z2xS4", "S5"} <= big


def test_catalog_orders_and_uniqueness():
    groups = th.catalog(100)
    labels = [g.label for g in groups]
    assert len(labels) == len(set(labels))
    assert all(g.order <= 100 for g in groups)
    assert labels == [g.label for g in th.catalog(100)]
    assert {f"Z{n}" for n in range(1, 101)} <= set(labels)


def test_catalog_rejects_small_bound():
    with pytest.raises(ValueError):
        th.catalog(1)


def test_catalog_group_lookup():
    assert th.catalog_group("Q8").order == 8
    with pytest.raises(KeyError):
        th.catalog_group("nope")


def test_catalog_groups_are_valid():
    for g in th.catalog(60):
        grp.validate(g)


# ----------------------------------------------------------------------
# report structure


def test_full_sweep_passes(report60):
    assert report60.ok, [i.to_json() for i in report60.failures()[:5]]
    assert report60.summary["pass"] == len(report60.instances)


def test_every_registered_theorem_has_instances(report60):
    seen = {i.theorem_id for i in report60.instances}
    assert seen == set(th.REGISTRY)


def test_iff_theorems_exercise_both_directions(report60):
    cov = report60.coverage()
    for tid, entry in cov.items():
        if entry["kind"] != "iff":
            continue
        if tid == "C5.2":
            # only groups of order 2 and 3 have a tree as P*(G)
            assert entry["predicted_true"] == 2
            continue
        assert entry["predicted_true"] >= 3, tid
        assert entry["predicted_false"] >= 3, tid


def test_status_matches_comparison(report60):
    for inst in report60.instances:
        assert (inst.status == "pass") == (inst.predicted == inst.observed)


def test_report_sorted_and_deterministic():
    a, b = th.run_all(30).dumps(), th.run_all(30).dumps()
    assert a == b
    keys = [(i["theorem_id"], i["group"]) for i in json.loads(a)["instances"]]
    assert keys == sorted(keys)


def test_report_validates_against_schema(report60):
    jsonschema.validate(json.loads(report60.dumps()), th.report_schema())


def test_report_out_of_scope_listed(report60):
    data = report60.to_json()
    assert set(data["out_of_scope"]) >= {"T3.5", "T3.6", "T7.2"}
    assert not set(data["out_of_scope"]) & set(th.REGISTRY)


# ----------------------------------------------------------------------
# verify on chosen groups


def test_verify_unknown_id():
    with pytest.raises(KeyError):
        th.verify("NOPE", [grp.build_cyclic(4)])


def test_t41_examples():
    by_group = {i.group: i for i in th.verify("T4.1", th.catalog(81))}
    assert by_group["Z27"].predicted and by_group["Z27"].observed
    assert by_group["Z3^3"].witness["parameters"] == "(26, 1, 0, 0)"
    assert not by_group["Q8"].predicted and not by_group["Q8"].observed
    assert all(i.passed for i in by_group.values())


def test_p61_cyclic_sweep():
    inst = th.verify("P6.1", [grp.build_cyclic(n) for n in range(1, 257)])
    assert {i.group for i in inst if i.observed} == {f"Z{2**k}" for k in range(9)}
    assert all(i.passed for i in inst)


def test_l29_universal_vertex():
    inst = th.verify("L2.9", th.catalog(64))
    assert all(i.passed for i in inst)
    positives = {i.group for i in inst if i.observed}
    assert {"Q8", "Q16", "Q32", "Q64", "Z12"} <= positives
    assert not {"Q12", "Q24", "D8", "Z2^2"} & positives


def test_implications_never_assert_converse():
    # a false hypothesis passes whatever the conclusion
    inst = th.verify("L2.12", [grp.build_symmetric(3)])[0]
    assert inst.predicted is False and inst.passed


def test_instance_errors_become_failures(monkeypatch):
    real = alg.is_planar

    def flaky(graph):
        if graph.n == 5:
            raise RuntimeError("boom")
        return real(graph)

    monkeypatch.setattr(alg, "is_planar", flaky)
    inst = th.verify("T5.3", [grp.build_cyclic(4), grp.build_cyclic(6), grp.build_cyclic(7)])
    assert [i.status for i in inst] == ["pass", "fail", "pass"]
    assert inst[1].observed.startswith("error: RuntimeError")


def test_subject_rejects_mislabelled_override():
    g = grp.build_cyclic(4)
    with pytest.raises(ValueError):
        th.Subject(g, gr.build_undirected(g))


def test_run_all_rejects_unknown_override():
    with pytest.raises(KeyError):
        th.run_all(30, overrides={"nope": None})


# ----------------------------------------------------------------------
# worked examples


def test_q4n_powers_of_two():
    for m in (2, 4, 8):
        inst = th.verify_q4n_structure(m)
        assert inst.predicted and inst.observed and inst.passed
        assert inst.witness["top_degree_vertices"] == [inst.witness["involution"]]


def test_q4n_other_m():
    inst = th.verify_q4n_structure(3)
    assert not inst.predicted and not inst.observed and inst.passed
    assert 3 in grp.spectrum(grp.build_generalized_quaternion(3)).pi_e
    with pytest.raises(ValueError):
        th.verify_q4n_structure(1)


def test_order27_pair():
    inst = th.verify_order27_pair()
    assert inst.passed and inst.observed
    assert len(inst.witness["mapping"]) == 27
    assert inst.witness["degree_sequences_equal"]
    assert sorted(inst.witness["abelian"]) == [False, True]


def test_isomorphic_power_graph_pairs_are_found(report60):
    iso = [i for i in report60.instances if i.theorem_id == "L3.1" and i.predicted]
    pairs = {frozenset(i.group.split("~")) for i in iso}
    assert {frozenset(("Z3^3", "Heis(3)")), frozenset(("D6", "S3"))} <= pairs


# ----------------------------------------------------------------------
# counterexamples to literal readings, which the suite states in corrected form


def test_center_criterion_needs_nontrivial_center():
    # D30 has trivial center; every element of order 3 or 5 is a power of a rotation
    # of order 15, yet the reflections are isolated in P*(D30)
    d30 = grp.build_dihedral(15)
    assert len(grp.center(d30)) == 1
    s = th.Subject(d30)
    for p in (3, 5):
        holds, _ = th._l211_criterion(s, p)
        assert holds
    assert not alg.is_connected(s.punctured)
    assert th._l211_scope(s) is None


def test_eppo_cliques_can_share_more_than_identity():
    # Q8 is EPPO but its three cyclic subgroups of order 4 share the involution too
    q8 = grp.build_generalized_quaternion(2)
    assert grp.is_eppo(q8)
    tops = {grp.cyclic_subgroup(q8, x) for x in range(q8.order) if q8.element_orders[x] == 4}
    assert len(tops) == 3
    assert all(len(a & b) == 2 for a, b in combinations(tops, 2))
    inst = th.verify("T5.3-eppo", [q8])[0]
    assert inst.passed and inst.predicted["meet_only_at_identity"] is False


@pytest.mark.parametrize("left, right", [
    (grp.build_cyclic(6), grp.build_cyclic(6)),
    (grp.build_alternating(4), grp.build_elementary_abelian(2, 2)),
])
def test_small_orders_do_not_force_planarity(left, right):
    # four order-3 subgroups and three involutions pair up inside cyclic subgroups of
    # order 6, which contracts to K3,3 or K4,3
    g = grp.direct_product(left, right)
    assert set(grp.spectrum(g).pi_e) <= {1, 2, 3, 6}
    graph = gr.punctured_power_graph(g)
    res = alg.is_planar(graph)
    assert not res.planar and res.kuratowski.kind == "K3,3"
    alg.check_kuratowski(graph, res.kuratowski)
    inst = th.verify("T5.3", [g])[0]
    assert inst.predicted is True and inst.observed is False and not inst.passed
    assert g.label not in {h.label for h in th.catalog(g.order)}


# ----------------------------------------------------------------------
# mutation


def _golden_q8():
    from importlib import resources

    return gr.read_edge_list(resources.files("powergraph").joinpath("data/q8_punctured.edges").read_text())


def test_mutating_one_bit_is_caught_everywhere():
    golden = _golden_q8()
    q8 = th.catalog_group("Q8")
    for u, v in combinations(golden.labels, 2):
        mutated = golden.with_edge_flipped(u, v)
        subject = th.Subject(q8, mutated)
        fails = [i for tid in sorted(th.REGISTRY) for i in th.verify(tid, [subject], 60) if not i.passed]
        assert fails, (u, v)
        assert all(f.witness is not None or f.observed is not None for f in fails)


def test_mutation_in_full_sweep():
    mutated = _golden_q8().with_edge_flipped(1, 4)
    report = th.run_all(60, overrides={"Q8": mutated})
    assert not report.ok
    assert {i.group for i in report.failures()} >= {"Q8"}
