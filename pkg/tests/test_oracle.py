"""The brute-force oracle: frozen examples, budget behavior, and its own
self-checks (kernel pruning, witness soundness)."""

import random

import pytest

from odc import (
    Alphabet,
    FiniteLanguage,
    FusionRule,
    InputError,
    OracleBudgetError,
    Verdict,
    oracle_solve_con,
    oracle_solve_dx,
    oracle_solve_obs,
    project_word,
)
from odc.oracle import _bell, _partitions
from .gen import rand_obs_words

AB = Alphabet(["a", "b"])
A1 = Alphabet(["a"])
B1 = Alphabet(["b"])


def fl(alphabet, *words):
    return FiniteLanguage(alphabet, [tuple(w.split()) if w else () for w in words])


class TestPartitionEnumeration:
    def test_counts_match_bell_numbers(self):
        for k in range(8):
            assert len(list(_partitions(k))) == _bell(k)

    def test_strings_are_restricted_growth(self):
        for rgs in _partitions(5):
            assert rgs[0] == 0
            for i in range(1, 5):
                assert rgs[i] <= max(rgs[:i]) + 1

    def test_all_distinct(self):
        seen = list(_partitions(6))
        assert len(seen) == len(set(seen))


class TestOracleObs:
    def test_joint_observability_counterexample(self):
        report = oracle_solve_obs(
            fl(AB, "a b", "b a"), fl(AB, "a b"), [A1, B1], FusionRule.UNRESTRICTED
        )
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.witness == (("a", "b"), ("b", "a"))

    def test_and_fusion_fails_where_free_fusion_works(self):
        plant = fl(AB, "a", "b", "a b")
        spec = fl(AB, "a", "b")
        conj = oracle_solve_obs(plant, spec, [A1, B1], FusionRule.CONJUNCTIVE)
        assert conj.verdict == Verdict.UNSOLVABLE
        assert conj.witness == (("a", "b"),)
        free = oracle_solve_obs(plant, spec, [A1, B1], FusionRule.UNRESTRICTED)
        assert free.verdict == Verdict.SOLVABLE

    def test_full_spec_is_solvable_under_every_fusion(self):
        plant = fl(AB, "a b", "b a", "")
        for fusion in FusionRule:
            assert oracle_solve_obs(plant, plant, [A1, B1], fusion).verdict == Verdict.SOLVABLE

    def test_spec_must_be_inside_plant(self):
        with pytest.raises(InputError):
            oracle_solve_obs(fl(AB, "a"), fl(AB, "b"), [A1], FusionRule.UNRESTRICTED)


class TestOracleDx:
    ABF = Alphabet(["#f", "a", "b"])

    def test_delayed_fault_collides_with_clean_run(self):
        plant = fl(self.ABF, "", "#f", "b", "#f a", "b a")
        report = oracle_solve_dx(plant, [A1], "#f", 1, FusionRule.UNRESTRICTED)
        assert report.verdict == Verdict.UNSOLVABLE

    def test_no_fault_no_problem(self):
        plant = fl(self.ABF, "a", "b a")
        assert (
            oracle_solve_dx(plant, [A1], "#f", 3, FusionRule.CONJUNCTIVE).verdict
            == Verdict.SOLVABLE
        )

    def test_dead_end_fault_is_flagged_and_separable(self):
        # {#f} can never be faulty for 2 steps yet must be flagged; with no
        # negative word sharing its (empty) observation this is solvable
        plant = fl(self.ABF, "#f")
        assert (
            oracle_solve_dx(plant, [A1], "#f", 2, FusionRule.UNRESTRICTED).verdict
            == Verdict.SOLVABLE
        )

    def test_dead_end_fault_confusable_with_epsilon(self):
        plant = fl(self.ABF, "#f", "")
        report = oracle_solve_dx(plant, [A1], "#f", 2, FusionRule.UNRESTRICTED)
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.witness == (("#f",), ())

    def test_young_faults_are_unconstrained(self):
        # af is faulty but extendable below the delay: no constraint, so the
        # instance stays solvable even though af looks like the old fault
        f_alpha = Alphabet(["f", "a"])
        plant = fl(f_alpha, "", "a a", "a f", "a f a a", "f a f")
        report = oracle_solve_dx(plant, [A1], "f", 2, FusionRule.UNRESTRICTED)
        assert report.verdict == Verdict.SOLVABLE

    def test_observable_fault_rejected(self):
        with pytest.raises(InputError):
            oracle_solve_dx(fl(self.ABF, "#f"), [Alphabet(["#f"])], "#f", 0, FusionRule.UNRESTRICTED)


class TestOracleCon:
    def test_forced_disablement(self):
        report = oracle_solve_con(
            fl(AB, "", "a", "a b"),
            fl(AB, "", "a"),
            [A1],
            [B1],
            FusionRule.UNRESTRICTED,
        )
        assert report.verdict == Verdict.SOLVABLE

    def test_spec_equal_plant(self):
        plant = fl(AB, "", "a", "a b")
        report = oracle_solve_con(plant, plant, [Alphabet([])], [AB], FusionRule.UNRESTRICTED)
        assert report.verdict == Verdict.SOLVABLE

    def test_blind_agent_fails(self):
        report = oracle_solve_con(
            fl(AB, "", "a", "a b", "b", "b b"),
            fl(AB, "", "a", "a b"),
            [Alphabet([])],
            [B1],
            FusionRule.UNRESTRICTED,
        )
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.per_sigma["b"].verdict == Verdict.UNSOLVABLE


class TestBudget:
    def test_large_boolean_space_is_refused(self):
        import itertools

        big = FiniteLanguage(
            Alphabet(["a", "b", "c", "d"]),
            [tuple(w) for w in itertools.product("abcd", repeat=4)],
        )
        spec = FiniteLanguage(big.alphabet, [("a", "a", "a", "a")])
        agents = [Alphabet(["a", "b"]), Alphabet(["c", "d"]), Alphabet(["a", "c"])]
        with pytest.raises(OracleBudgetError):
            oracle_solve_obs(big, spec, agents, FusionRule.CONJUNCTIVE, budget=1 << 10)

    def test_never_unknown(self):
        rng = random.Random(31)
        for _ in range(120):
            plant, spec, observed, fusion = rand_obs_words(rng)
            try:
                report = oracle_solve_obs(plant, spec, observed, fusion, budget=1 << 14)
            except OracleBudgetError:
                continue
            assert report.verdict in (Verdict.SOLVABLE, Verdict.UNSOLVABLE)


class TestOracleSelfChecks:
    def test_kernel_pruning_never_changes_the_verdict(self):
        # micro instances: at most 3 observation values per agent
        rng = random.Random(32)
        compared = 0
        while compared < 60:
            plant, spec, observed, _ = rand_obs_words(rng, n_agents_max=2)
            if any(
                len({project_word(w, alph) for w in plant.words}) > 3 for alph in observed
            ):
                continue
            try:
                pruned = oracle_solve_obs(
                    plant, spec, observed, FusionRule.UNRESTRICTED, prune_kernels=True
                )
                raw = oracle_solve_obs(
                    plant, spec, observed, FusionRule.UNRESTRICTED, prune_kernels=False
                )
            except OracleBudgetError:
                continue
            assert pruned.verdict == raw.verdict
            compared += 1

    def test_unsolvable_witnesses_violate_the_condition(self):
        rng = random.Random(33)
        checked = 0
        while checked < 60:
            plant, spec, observed, fusion = rand_obs_words(rng)
            try:
                report = oracle_solve_obs(plant, spec, observed, fusion, budget=1 << 14)
            except OracleBudgetError:
                continue
            if report.verdict != Verdict.UNSOLVABLE:
                continue
            rest = plant.words - spec.words
            if fusion is FusionRule.UNRESTRICTED:
                s, t = report.witness
                assert s in spec.words and t in rest
                for alph in observed:
                    assert project_word(s, alph) == project_word(t, alph)
            elif fusion is FusionRule.CONJUNCTIVE:
                (w,) = report.witness
                assert w in rest
                for alph in observed:
                    assert project_word(w, alph) in {project_word(u, alph) for u in spec.words}
            else:
                (w,) = report.witness
                assert w in spec.words
                for alph in observed:
                    assert project_word(w, alph) in {project_word(u, alph) for u in rest}
            checked += 1
