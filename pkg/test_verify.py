"""
Tests for the theorem harness, the conjecture search and the critical-graph search
"""

import pytest

import src.verify as verify
from src.cli_io import document_from
from src.constructions import prop3_graph, random_bpe, BpeParams
from src.errors import CapacityError, InputError, ProvedClaimViolation
from src.graph_core import PartitionedGraph
from src.reconfig import KempeClassReport
from src.verify import (
    CriticalParams,
    FailureRecord,
    SearchParams,
    VerificationOutcome,
    VerifyParams,
    check_conjecture_hypotheses,
    conjecture_search,
    critical_search,
    outcomes_frame,
    replay_failure,
    verify_theorem,
)


class TestHypotheses:
    def test_bipartite_instance_qualifies(self):
        pg = random_bpe(BpeParams(n_s=3, n_t=3, ell=0, seed=4))
        assert check_conjecture_hypotheses(pg, 4)

    def test_small_k_does_not_qualify(self):
        pg = PartitionedGraph.build(2, [0], [1], [(0, 1)])
        assert not check_conjecture_hypotheses(pg, 3)

    def test_too_many_added_edges(self):
        assert not check_conjecture_hypotheses(prop3_graph(4).pg, 4)


class TestExistenceClaims:
    @pytest.mark.parametrize("claim, k", [('prop3', 3), ('prop4ii', 4)])
    def test_certified(self, claim, k):
        outcome = verify_theorem(claim, VerifyParams(k=k))
        assert outcome.ok
        assert outcome.passed == outcome.tried == 1

    def test_prop3_enumeration_note(self):
        outcome = verify_theorem('prop3', VerifyParams(k=3))
        assert any('full enumeration' in note for note in outcome.notes)

    def test_out_of_range_k(self):
        with pytest.raises(InputError, match="k >= 4"):
            verify_theorem('prop4i', VerifyParams(k=3))


class TestUniversalClaims:
    def test_fiveedges_exhaustive(self):
        outcome = verify_theorem('fiveedges')
        assert outcome.tried > 0
        assert outcome.ok and outcome.passed == outcome.tried

    def test_bipar_small(self):
        outcome = verify_theorem('bipar', VerifyParams(max_n=5))
        assert outcome.tried > 0 and outcome.ok
        assert outcome.passed == outcome.tried

    def test_dege(self):
        outcome = verify_theorem('dege', VerifyParams(trials=10, max_n=6))
        assert outcome.ok
        assert outcome.passed + len(outcome.skipped) == outcome.tried == 10

    def test_nointersect(self):
        outcome = verify_theorem('nointersect', VerifyParams(trials=8, max_n=8))
        assert outcome.ok
        assert outcome.passed > 0

    def test_bm5_is_deterministic(self):
        params = VerifyParams(trials=3, max_n=7)
        first = verify_theorem('bm5', params).to_dict()
        assert first == verify_theorem('bm5', params).to_dict()
        assert first['failures'] == []

    def test_c3e5_is_fixed_to_four_colors(self):
        with pytest.raises(InputError, match="4-colorings"):
            verify_theorem('c3e5', VerifyParams(k=5))

    def test_colorability_gate_over_capacity_skips_trials(self, monkeypatch):
        def too_large(g, k, size_cap=None):
            raise CapacityError("exact coloring limited", 0)

        monkeypatch.setattr(verify, 'find_coloring', too_large)
        outcome = verify_theorem('main', VerifyParams(trials=4))
        assert outcome.tried == 4
        assert len(outcome.skipped) == 4 and outcome.ok

    def test_unknown_claim(self):
        with pytest.raises(InputError, match="unknown claim"):
            verify_theorem('fourcolor')

    def test_proved_claim_failure_aborts(self, monkeypatch):
        def broken(g, k, cap=None, verbose=False):
            return KempeClassReport(k, 2, 2, (), (1, 1))

        monkeypatch.setattr(verify, 'count_kempe_classes', broken)
        with pytest.raises(ProvedClaimViolation) as info:
            verify_theorem('bipar', VerifyParams(max_n=3))
        assert len(info.value.outcome.failures) == 1


@pytest.mark.slow
class TestDeskScale:
    def test_bm5(self):
        outcome = verify_theorem('bm5')
        assert outcome.ok and outcome.passed > 0

    def test_c3e5(self):
        outcome = verify_theorem('c3e5')
        assert outcome.ok and outcome.passed > 0

    def test_main(self):
        outcome = verify_theorem('main')
        assert outcome.ok and outcome.passed > 0

    def test_fourcri(self):
        outcome = verify_theorem('fourcri')
        assert outcome.ok
        assert outcome.passed >= 3
        assert any('--extended' in note for note in outcome.notes)

    def test_bipar_default(self):
        outcome = verify_theorem('bipar')
        assert outcome.ok and outcome.passed == outcome.tried

    def test_prop4i(self):
        assert verify_theorem('prop4i').ok


class TestConjectureSearch:
    def test_small_search_finds_nothing(self):
        outcome = conjecture_search(SearchParams(k=4, n_s=3, n_t=3, trials=5, seed=1))
        assert outcome.claim == 'conjecture'
        assert outcome.tried == 5
        assert outcome.failures == []

    def test_injected_instance_outside_hypotheses_is_skipped(self):
        outcome = conjecture_search(SearchParams(trials=0), extra_instances=[prop3_graph(4).pg])
        assert outcome.tried == 1
        assert outcome.skipped == [(0, "outside the conjecture's hypotheses")]

    def test_small_k_rejected(self):
        with pytest.raises(InputError):
            conjecture_search(SearchParams(k=3))

    def test_instances_too_large_for_the_gate_are_skipped(self):
        outcome = conjecture_search(SearchParams(n_s=16, n_t=16, trials=1, seed=0))
        assert outcome.tried == 1
        assert outcome.failures == []
        assert outcome.skipped[0][1].startswith('capacity')


class TestCriticalSearch:
    def test_odd_cycles_are_the_3_critical_graphs(self):
        outcome = critical_search(CriticalParams(k=3))
        assert outcome.claim == 'critical'
        # C_3, C_5 and C_7
        assert outcome.tried == 3
        assert outcome.passed == 3

    def test_default_palettes(self):
        outcome = critical_search(CriticalParams(max_n=6))
        # C_3, C_5, K_4 and the 5-wheel
        assert outcome.tried == 4
        assert outcome.passed + len(outcome.failures) + len(outcome.skipped) == outcome.tried

    def test_counterexamples_are_reported_not_raised(self, monkeypatch):
        def two_classes(g, k, cap=None, verbose=False):
            return KempeClassReport(k, 2, 2, (), (1, 1))

        monkeypatch.setattr(verify, 'count_kempe_classes', two_classes)
        outcome = critical_search(CriticalParams(k=3, max_n=3))
        assert len(outcome.failures) == 1
        assert replay_failure(outcome.failures[0]).num_classes >= 1

    @pytest.mark.parametrize("params", [CriticalParams(k=1), CriticalParams(max_n=8)])
    def test_rejected_parameters(self, params):
        with pytest.raises(InputError):
            critical_search(params)


class TestReporting:
    def test_replay_failure(self):
        cert = prop3_graph(3)
        record = FailureRecord(0, document_from(cert.pg, k=3).model_dump(exclude_none=True), "Kc >= 2")
        assert replay_failure(record).num_classes >= 2

    def test_replay_needs_instance(self):
        with pytest.raises(InputError):
            replay_failure(FailureRecord(0, None, "construction failed"))

    def test_outcomes_frame(self):
        outcomes = [
            VerificationOutcome('bipar', tried=4, passed=4),
            VerificationOutcome('dege', tried=3, passed=2, skipped=[(1, 'capacity')]),
        ]
        frame = outcomes_frame(outcomes)
        assert list(frame.columns) == ['claim', 'tried', 'passed', 'failed', 'skipped']
        assert frame.loc[1, 'skipped'] == 1
        assert frame['passed'].sum() == 6

    def test_outcome_to_dict(self):
        data = VerificationOutcome('dege', tried=1, skipped=[(0, 'capacity')]).to_dict()
        assert data['skipped'] == [{'trial': 0, 'reason': 'capacity'}]
        assert data['failures'] == []
