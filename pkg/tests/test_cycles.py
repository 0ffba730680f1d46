"""Closed walks, crossings, obstruction search, transition systems, lifting."""

from __future__ import annotations

import pytest

from starplan import (
    ClosedWalk,
    ObstructCertificate,
    Pass,
    ResourceCeilingError,
    StarPlanError,
    TransitionSystem,
    classify_triangle_case,
    closed_walk_violations,
    complete_transition_system,
    crossings,
    cycles_of_transition_system,
    enumerate_closed_walks,
    expand,
    find_obstruct,
    gen_random,
    lift_obstruct,
    lift_transition_system,
    self_crossings,
    transition_system_violations,
    verify_obstruct,
)
from util import (
    CASE_TABLE,
    CROSSED,
    NESTED,
    OPPOSITE,
    PETALS,
    THREE_LOOPS,
    bouquet4,
    bouquet6,
    case_fixture,
    oracle_walks,
)


class TestClosedWalk:
    def test_identity_up_to_rotation(self):
        a = ClosedWalk((("v", "h2", "h3"), ("v", "h4", "h1")))
        b = ClosedWalk((("v", "h4", "h1"), ("v", "h2", "h3")))
        assert a == b

    def test_identity_up_to_reversal(self):
        a = ClosedWalk((("v", "h2", "h3"), ("v", "h4", "h1")))
        b = ClosedWalk((("v", "h1", "h4"), ("v", "h3", "h2")))
        assert a == b

    def test_passes_and_edges(self):
        w = ClosedWalk((("v", "h2", "h3"), ("v", "h4", "h1")))
        assert set(p.pair for p in w.passes) == {("h2", "h3"), ("h1", "h4")}
        assert w.edge_set == frozenset({("h3", "h4"), ("h1", "h2")})

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ClosedWalk(())

    def test_same_in_out_rejected(self):
        with pytest.raises(ValueError):
            ClosedWalk((("v", "h1", "h1"),))

    def test_pass_normalizes_pair(self):
        assert Pass("v", ("b", "a")).pair == ("a", "b")
        with pytest.raises(ValueError):
            Pass("v", ("a", "a"))


class TestEnumeration:
    def test_two_loop_bouquet_has_four_walks(self):
        # two single-loop walks plus two distinct figure-eights
        for pairs in (NESTED, CROSSED):
            assert len(enumerate_closed_walks(bouquet4(pairs))) == 4

    def test_three_loop_bouquet_count(self):
        assert len(enumerate_closed_walks(bouquet6(THREE_LOOPS))) == 17

    @pytest.mark.parametrize("n4,n6,seed", [(2, 0, 5), (3, 0, 11), (1, 1, 9), (0, 1, 2)])
    def test_matches_brute_force_oracle(self, n4, n6, seed):
        g = gen_random(n4, n6, seed)
        assert {w.steps for w in enumerate_closed_walks(g)} == oracle_walks(g)

    def test_max_edges_restricts(self):
        g = bouquet4(NESTED)
        short = enumerate_closed_walks(g, max_edges=1)
        assert len(short) == 2
        assert all(len(w) == 1 for w in short)

    def test_ceiling(self):
        with pytest.raises(ResourceCeilingError):
            enumerate_closed_walks(bouquet6(THREE_LOOPS), walk_ceiling=5)

    def test_walks_are_valid(self):
        g = gen_random(2, 1, 40)
        for w in enumerate_closed_walks(g):
            assert closed_walk_violations(g, w) == []


class TestCrossings:
    def _walks_by_edges(self, g):
        return {w.edge_set: w for w in enumerate_closed_walks(g)}

    def test_three_loop_fixture(self):
        g = bouquet6(THREE_LOOPS)
        by = self._walks_by_edges(g)
        loop14 = by[frozenset({("1", "4")})]
        fig8 = by[frozenset({("2", "6"), ("3", "5")})]
        n, hits = crossings(g, loop14, fig8)
        assert n == 2
        assert self_crossings(g, fig8) == 1
        assert {h[0] for h in hits} == {"a"}

    def test_single_crossing_pair(self):
        g = bouquet6(THREE_LOOPS)
        by = self._walks_by_edges(g)
        loop14 = by[frozenset({("1", "4")})]
        loop35 = by[frozenset({("3", "5")})]
        assert crossings(g, loop14, loop35)[0] == 1

    def test_nested_loops_do_not_cross(self):
        g = bouquet4(NESTED)
        by = self._walks_by_edges(g)
        a = by[frozenset({("h1", "h2")})]
        b = by[frozenset({("h3", "h4")})]
        assert crossings(g, a, b) == (0, ())

    def test_edge_sharing_rejected(self):
        g = bouquet4(NESTED)
        walks = enumerate_closed_walks(g)
        figure8 = next(w for w in walks if len(w) == 2)
        loop = next(w for w in walks if len(w) == 1)
        with pytest.raises(ValueError):
            crossings(g, figure8, loop)


class TestFindObstruct:
    def test_crossed_bouquet_pair_is_the_two_loops(self):
        g = bouquet4(CROSSED)
        cert = find_obstruct(g)
        assert cert is not None
        assert {cert.walk_a.edge_set, cert.walk_b.edge_set} == {
            frozenset({("h1", "h3")}),
            frozenset({("h2", "h4")}),
        }
        assert verify_obstruct(g, cert)

    def test_nested_bouquet_has_none(self):
        assert find_obstruct(bouquet4(NESTED)) is None

    def test_deterministic(self):
        g = bouquet6(THREE_LOOPS)
        assert find_obstruct(g) == find_obstruct(g)

    def test_opposite_bouquet(self):
        cert = find_obstruct(bouquet6(OPPOSITE))
        assert cert is not None and verify_obstruct(bouquet6(OPPOSITE), cert)

    def test_petals_has_none(self):
        assert find_obstruct(bouquet6(PETALS)) is None


class TestVerifyObstruct:
    def _good(self):
        g = bouquet4(CROSSED)
        return g, find_obstruct(g)

    def test_accepts_genuine(self):
        g, cert = self._good()
        assert verify_obstruct(g, cert)

    def test_rejects_wrong_vertex(self):
        g, cert = self._good()
        bad = ObstructCertificate(cert.walk_a, cert.walk_b, "w", cert.pass_a, cert.pass_b)
        assert not verify_obstruct(g, bad)

    def test_rejects_wrong_pass(self):
        g, cert = self._good()
        bad = ObstructCertificate(
            cert.walk_a, cert.walk_b, cert.crossing_vertex, Pass("v", ("h1", "h2")), cert.pass_b
        )
        assert not verify_obstruct(g, bad)

    def test_rejects_edge_sharing_walks(self):
        g = bouquet4(CROSSED)
        cert = find_obstruct(g)
        bad = ObstructCertificate(cert.walk_a, cert.walk_a, cert.crossing_vertex, cert.pass_a, cert.pass_b)
        assert not verify_obstruct(g, bad)

    def test_rejects_two_crossing_pair(self):
        g = bouquet6(THREE_LOOPS)
        by = {w.edge_set: w for w in enumerate_closed_walks(g)}
        loop14 = by[frozenset({("1", "4")})]
        fig8 = by[frozenset({("2", "6"), ("3", "5")})]
        bad = ObstructCertificate(
            loop14, fig8, "a", loop14.passes[0], fig8.passes[0]
        )
        assert not verify_obstruct(g, bad)

    def test_rejects_foreign_walk(self):
        g, cert = self._good()
        other = ClosedWalk((("w", "x1", "x2"),))
        bad = ObstructCertificate(cert.walk_a, other, cert.crossing_vertex, cert.pass_a, cert.pass_b)
        assert not verify_obstruct(g, bad)


class TestTransitionSystems:
    def test_complete_with_no_constraints_pairs_adjacent(self):
        g = bouquet6(PETALS)
        ts = complete_transition_system(g, {})
        assert ts.matchings["a"] == (("1", "2"), ("3", "4"), ("5", "6"))

    def test_complete_respects_partial(self):
        g = bouquet6(PETALS)
        ts = complete_transition_system(g, {"a": [("2", "3")]})
        assert ("2", "3") in ts.matchings["a"]
        assert ts.matchings["a"] == (("1", "4"), ("2", "3"), ("5", "6"))

    def test_complete_rejects_overlap(self):
        g = bouquet6(PETALS)
        with pytest.raises(ValueError):
            complete_transition_system(g, {"a": [("1", "2"), ("2", "3")]})

    def test_complete_rejects_unknown_half(self):
        g = bouquet6(PETALS)
        with pytest.raises(ValueError):
            complete_transition_system(g, {"a": [("1", "z")]})

    def test_odd_degree_cannot_complete(self):
        from starplan import StarGraph

        g = StarGraph({"v": ("a", "b", "c")}, [])
        with pytest.raises(StarPlanError):
            complete_transition_system(g, {})

    def test_violations(self):
        g = bouquet6(PETALS)
        assert transition_system_violations(g, TransitionSystem({})) != []
        bad = TransitionSystem({"a": (("1", "2"), ("3", "4"))})
        assert transition_system_violations(g, bad) != []
        good = complete_transition_system(g, {})
        assert transition_system_violations(g, good) == []

    def test_cycles_partition_edges(self):
        g = gen_random(2, 1, 77)
        ts = complete_transition_system(g, {})
        walks = cycles_of_transition_system(g, ts)
        covered = sorted(e for w in walks for e in w.edge_pairs)
        assert covered == sorted(g.edges)

    def test_cycles_reject_invalid_system(self):
        g = bouquet6(PETALS)
        with pytest.raises(StarPlanError):
            cycles_of_transition_system(g, TransitionSystem({}))


class TestTriangleCases:
    @pytest.mark.parametrize("case", sorted(CASE_TABLE))
    def test_classification(self, case):
        g, gp, emap, tsp = case_fixture(case)
        assert classify_triangle_case(gp, emap, tsp, "a") == case

    @pytest.mark.parametrize("case", sorted(CASE_TABLE))
    def test_lifted_matching(self, case):
        g, gp, emap, tsp = case_fixture(case)
        ts = lift_transition_system(g, gp, emap, tsp)
        assert set(ts.matchings["a"]) == {
            tuple(sorted(p)) for p in CASE_TABLE[case]["lifted"]
        }
        assert transition_system_violations(g, ts) == []


class TestLiftObstruct:
    def test_six_bouquet_pipeline(self):
        g = bouquet6(OPPOSITE)
        gp, emap = expand(g, 1)
        cert = find_obstruct(gp)
        assert cert is not None
        lifted = lift_obstruct(g, gp, emap, cert)
        assert verify_obstruct(g, lifted)

    def test_variant_two_pipeline(self):
        g = bouquet6(OPPOSITE)
        gp, emap = expand(g, 2)
        cert = find_obstruct(gp)
        assert cert is not None
        lifted = lift_obstruct(g, gp, emap, cert)
        assert verify_obstruct(g, lifted)

    def test_no_triangles_returns_certificate_unchanged(self):
        g = bouquet4(CROSSED)
        gp, emap = expand(g, 1)
        assert gp == g and emap.triangles == ()
        cert = find_obstruct(g)
        assert lift_obstruct(g, gp, emap, cert) == cert

    def test_rejects_bad_certificate(self):
        g = bouquet6(OPPOSITE)
        gp, emap = expand(g, 1)
        cert = find_obstruct(gp)
        bad = ObstructCertificate(cert.walk_a, cert.walk_b, "zz", cert.pass_a, cert.pass_b)
        with pytest.raises(StarPlanError):
            lift_obstruct(g, gp, emap, bad)
