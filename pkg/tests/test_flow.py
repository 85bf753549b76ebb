import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowmag.exceptions import FlowGraphError, PreconditionError
from flowmag.fixtures import (
    BLOCKS,
    bundle,
    cycle,
    double_two_cycle_block,
    four_vertex_flow,
    make_rng,
    path_block,
    random_bundle,
    random_flow_graph,
    single_edge,
    two_cycle_block,
)
from flowmag.flow import (
    TropicalMatrix,
    canonical_form,
    maxplus_product,
    parallel_compose,
    principal_solutions,
    series_compose,
    subflow_hom,
    tropical_magnitude,
    tropical_similarity_matrix,
    validate_flow,
)
from flowmag.graph import Digraph, classify
from flowmag.spectral import topological_entropy, zeta_denominator, poly_mul

from oracles import bundle_closed_forms

seeds = st.integers(0, 2**32 - 1)


def rand_flow(seed, **kw):
    return random_flow_graph(make_rng(seed), **kw)


class TestValidate:
    def test_four_vertex_example(self):
        F = validate_flow(Digraph(4, {(0, 1), (1, 2), (2, 1), (2, 3)}))
        assert (F.source, F.target, F.entry, F.exit) == (0, 3, (0, 1), (2, 3))

    @pytest.mark.parametrize("edges, n, clause", [
        ({(0, 1), (1, 2), (2, 0)}, 3, "no-source-target"),
        ({(0, 1), (0, 2), (1, 3), (2, 3)}, 4, "entry-not-unique"),
        ({(0, 1), (1, 2), (1, 3), (2, 3)}, 4, "exit-not-unique"),
        ({(0, 2), (1, 2), (2, 3)}, 4, "multi-source"),
        ({(0, 1), (1, 2), (1, 3)}, 4, "multi-target"),
        ({(0, 1), (1, 1), (1, 2)}, 3, "loops"),
        ({(0, 1), (1, 2), (2, 3), (2, 4)}, 5, "multi-target"),
    ])
    def test_each_clause_has_its_error(self, edges, n, clause):
        with pytest.raises(FlowGraphError) as exc:
            validate_flow(Digraph(n, edges))
        assert exc.value.clause == clause

    def test_not_strong(self):
        # the 2-cycle on {2, 3} can never get back to the target 4
        D = Digraph(5, {(0, 1), (1, 2), (2, 3), (3, 2), (1, 4)})
        with pytest.raises(FlowGraphError) as exc:
            validate_flow(D)
        assert exc.value.clause == "not-strong"

    def test_single_edge_is_a_flow_graph(self):
        F = validate_flow(single_edge())
        assert F.entry == F.exit == (0, 1)


class TestSeries:
    def test_unit(self):
        F = four_vertex_flow()
        assert series_compose([F]) is F
        with pytest.raises(PreconditionError):
            series_compose([])

    def test_two_four_vertex_copies(self):
        F = four_vertex_flow()
        G = series_compose([F, F])
        assert G.n == 6
        assert len(G.edges) == 7
        cycles = [c for c in (set(s) for s in _two_cycles(G.graph))]
        assert len(cycles) == 2 and not (cycles[0] & cycles[1])

    def test_chain_entropy_example(self):
        G = series_compose([double_two_cycle_block(), two_cycle_block()])
        Z = tropical_similarity_matrix(G)
        assert Z[G.entry, G.exit] == pytest.approx(math.log(math.sqrt(2)), abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_associative(self, seed):
        rng = make_rng(seed)
        a, b, c = (random_flow_graph(rng, max_vertices=10) for _ in range(3))
        left = series_compose([series_compose([a, b]), c])
        right = series_compose([a, series_compose([b, c])])
        assert canonical_form(left) == canonical_form(right)
        assert canonical_form(series_compose([a, b, c])) == canonical_form(left)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_entropy_max_law_and_zeta_product(self, seed):
        rng = make_rng(seed)
        fs = [random_flow_graph(rng, max_vertices=12) for _ in range(3)]
        G = series_compose(fs)
        hs = [topological_entropy(F.graph) for F in fs]
        h = topological_entropy(G.graph)
        if max(hs) == -math.inf:
            assert h == -math.inf
        else:
            assert abs(h - max(hs)) < 1e-8
        z = [1]
        for F in fs:
            z = poly_mul(z, zeta_denominator(F.graph))
        assert zeta_denominator(G.graph) == z


def _two_cycles(D):
    return [(u, v) for u, v in D.edges if u < v and (v, u) in D.edges]


class TestParallel:
    def test_one_branch_gets_stubs(self):
        F = four_vertex_flow()
        G = parallel_compose([F])
        assert G.n == F.n + 2
        assert len(G.edges) == len(F.edges) + 2
        assert G.graph.labels[G.source] == "start" and G.graph.labels[G.target] == "halt"

    def test_diamond(self):
        G = parallel_compose([path_block(), path_block()])
        assert G.n == 6
        lab = G.label_edge
        assert {lab(e) for e in G.edges} == {
            ("start", "fork"), ("fork", "0:p0"), ("fork", "1:p0"),
            ("0:p0", "join"), ("1:p0", "join"), ("join", "halt")}

    def test_single_edges_would_need_a_multi_edge(self):
        e = validate_flow(single_edge())
        with pytest.raises(FlowGraphError) as exc:
            parallel_compose([e, e])
        assert exc.value.clause == "parallel-edge"

    def test_three_by_two_path_bundle(self):
        b = bundle([["path", "path"]] * 3)
        assert b.flow.n == 10
        assert [len(x) for x in b.backbone] == [3, 3, 3]


class TestSubflow:
    def test_whole_and_unit(self):
        F = four_vertex_flow()
        whole = subflow_hom(F, F.entry, F.exit)
        assert canonical_form(whole) == canonical_form(F)
        for e in F.edges:
            unit = subflow_hom(F, e, e)
            assert unit.n == 2 and unit.graph.edges == {(0, 1)}

    def test_cross_branch_is_empty(self):
        b = bundle([["two-cycle", "path"], ["three-cycle"]])
        assert subflow_hom(b.flow, b.backbone[0][0], b.backbone[1][1]) is None
        assert subflow_hom(b.flow, b.backbone[0][1], b.backbone[0][0]) is None

    def test_region_inside_branch(self):
        b = bundle([["two-cycle", "plastic"], ["path"]])
        hom = subflow_hom(b.flow, b.backbone[0][1], b.backbone[0][2])
        assert hom is not None and hom.n == 5
        assert topological_entropy(hom.graph) == pytest.approx(BLOCKS["plastic"][1])

    def test_bad_edge(self):
        F = four_vertex_flow()
        with pytest.raises(PreconditionError):
            subflow_hom(F, (0, 3), F.exit)

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_properties_on_generated(self, seed):
        F = rand_flow(seed, max_vertices=14)
        assert canonical_form(subflow_hom(F, F.entry, F.exit)) == canonical_form(F)
        for e_s in F.edges[:6]:
            for e_t in F.edges[-6:]:
                hom = subflow_hom(F, e_s, e_t)
                if hom is not None:
                    assert hom.entry == (hom.graph.index(F.graph.labels[e_s[0]]),
                                         hom.graph.index(F.graph.labels[e_s[1]]))
                    assert classify(hom.graph).weak_component_count == 1


class TestTropical:
    def test_single_edge_with_stubs_is_constant_neg_inf(self):
        G = parallel_compose([path_block()])
        Z = tropical_similarity_matrix(G)
        # entry-to-exit region is an acyclic path: entropy log 0
        assert np.all(np.isneginf(Z.values))

    def test_unit_entropy_flag(self):
        F = four_vertex_flow()
        Z = tropical_similarity_matrix(F, acyclic_entropy=0.0)
        assert np.all(np.diag(Z.values) == 0.0)
        assert Z[F.entry, F.exit] == pytest.approx(0.0)

    def test_bundle_entry_exit_is_total_entropy(self):
        b = bundle([["path", "path"]] * 3)
        Z = tropical_similarity_matrix(b.flow)
        assert Z[b.entry, b.exit] == topological_entropy(b.flow.graph) == -math.inf
        b = bundle([["complete3", "path"], ["two-cycle"], ["double-two-cycle"]])
        Z = tropical_similarity_matrix(b.flow)
        assert Z[b.entry, b.exit] == pytest.approx(math.log(2.0), abs=1e-10)

    def test_principal_solutions_example(self):
        v, w = principal_solutions(np.array([[-math.inf, 0.5], [-math.inf, -math.inf]]))
        assert v.tolist() == [-0.5, math.inf]
        assert w.tolist() == [math.inf, -0.5]

    def test_magnitude_examples(self):
        m = tropical_magnitude(np.array([[-math.inf]]))
        assert m.defined and m.value == math.inf
        m = tropical_magnitude(np.array([[0.0, -math.inf], [-math.inf, 0.0]]))
        assert m.defined and m.value == 0.0
        m = tropical_magnitude(np.array([[0.0, 1.0], [-math.inf, -math.inf]]))
        assert not m.defined and m.value is None and (m.lhs, m.rhs) == (math.inf, 0.0)

    def test_matrix_lookup(self):
        F = four_vertex_flow()
        Z = tropical_similarity_matrix(F)
        assert isinstance(Z, TropicalMatrix) and Z.shape == (4, 4)
        assert Z[(1, 2), (2, 1)] == -math.inf

    @pytest.mark.parametrize("branches", [
        [["double-two-cycle", "complete3", "two-cycle"], ["plastic", "path"]],
        [["path"], ["path", "path", "path"]],
        [["three-cycle", "plastic"], ["complete3"], ["two-cycle", "double-two-cycle"]],
    ])
    def test_bundle_closed_forms(self, branches):
        b = bundle(branches)
        _check_bundle(b)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_bundle_closed_forms_random(self, seed):
        _check_bundle(random_bundle(make_rng(seed)))

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_magnitude_defined_and_subsolutions(self, seed):
        F = rand_flow(seed, max_vertices=14)
        Z = tropical_similarity_matrix(F)
        assert tropical_magnitude(Z).defined
        v, w = principal_solutions(Z)
        assert np.all(maxplus_product(Z, w) <= 0.0)
        assert np.all(maxplus_product(Z.values.T, v) <= 0.0)


def _check_bundle(b):
    Z = tropical_similarity_matrix(b.flow)
    v, w = principal_solutions(Z)
    v_ref, w_ref = bundle_closed_forms(b)
    for i, e in enumerate(Z.edges):
        for got, ref in ((v[i], v_ref[e]), (w[i], w_ref[e])):
            if math.isinf(ref):
                assert got == ref, e
            else:
                assert abs(got - ref) < 1e-8, e
    for edges, hs in zip(b.backbone, b.entropies):
        j_star = int(np.argmax(hs)) + 1
        i_before = Z.edges.index(edges[j_star - 1])
        i_at = Z.edges.index(edges[j_star])
        assert v[i_before] == w[i_at] or abs(v[i_before] - w[i_at]) < 1e-8
