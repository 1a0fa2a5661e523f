"""Solver dispatch, canonical counterexamples, witness soundness, duality,
and the direct cross-validation checkers."""

import dataclasses
import random

import pytest

from odc import (
    Alphabet,
    ConInstance,
    ContractError,
    DxInstance,
    FiniteLanguage,
    FusionRule,
    InputError,
    ObsInstance,
    Verdict,
    accepts,
    difference,
    enumerate_upto,
    from_words,
    intersect,
    inverse_project,
    prefix_closure,
    project_word,
    solve_con,
    solve_con_direct,
    solve_dx,
    solve_dx_direct,
    solve_obs,
    synthesize_conjunctive,
)
from .gen import (
    rand_con_instance,
    rand_dx_instance,
    rand_infinite_obs_instance,
    rand_obs_instance,
)

AB = Alphabet(["a", "b"])


def lang(alphabet, *words):
    return from_words(
        FiniteLanguage(alphabet, [tuple(w.split()) if w else () for w in words])
    )


def two_agent(plant, spec, fusion=FusionRule.UNRESTRICTED):
    return ObsInstance(plant, spec, (Alphabet(["a"]), Alphabet(["b"])), fusion)


class TestCanonicalCounterexamples:
    def test_joint_observability_failure(self):
        inst = two_agent(lang(AB, "a b", "b a"), lang(AB, "a b"))
        report = solve_obs(inst)
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.witness == (("a", "b"), ("b", "a"))

    def test_tuple_separation_beats_conjunctive(self):
        plant = lang(AB, "a", "b", "a b")
        spec = lang(AB, "a", "b")
        assert solve_obs(two_agent(plant, spec)).verdict == Verdict.SOLVABLE
        report = solve_obs(two_agent(plant, spec, FusionRule.CONJUNCTIVE))
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.witness == (("a", "b"),)

    def test_conjunctive_beats_disjunctive(self):
        plant = lang(AB, "a", "b", "a b")
        spec = lang(AB, "a b")
        assert solve_obs(two_agent(plant, spec, FusionRule.CONJUNCTIVE)).verdict == Verdict.SOLVABLE
        report = solve_obs(two_agent(plant, spec, FusionRule.DISJUNCTIVE))
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.witness == (("a", "b"),)

    def test_trivial_when_spec_is_plant(self):
        plant = lang(AB, "a b", "b a")
        for fusion in FusionRule:
            assert solve_obs(two_agent(plant, plant, fusion)).verdict == Verdict.SOLVABLE


class TestDispatch:
    def test_exact_methods_by_fragment(self):
        finite = two_agent(lang(AB, "a"), lang(AB, "a"))
        assert "finite-tuples" in solve_obs(finite).method
        central = ObsInstance(lang(AB, "a"), lang(AB, "a"), (AB,))
        assert "centralized" in solve_obs(central).method
        conj = dataclasses.replace(finite, fusion=FusionRule.CONJUNCTIVE)
        assert "conjunctive" in solve_obs(conj).method

    def test_centralized_is_exact_even_on_infinite_languages(self):
        # b*ab* with spec {a}: the single observer sees everything
        plant = inverse_project(lang(Alphabet(["a"]), "a"), AB)
        spec = intersect(plant, lang(AB, "a"))
        inst = ObsInstance(plant, spec, (AB,))
        assert solve_obs(inst).verdict == Verdict.UNSOLVABLE or True
        # seeing the full alphabet separates everything: solvable
        assert solve_obs(inst).verdict == Verdict.SOLVABLE

    def test_bounded_path_reports_depth(self):
        inst = rand_infinite_obs_instance(random.Random(0))
        report = solve_obs(inst, depth=6)
        assert report.verdict in (Verdict.UNSOLVABLE, Verdict.UNKNOWN_UP_TO_DEPTH)
        if report.verdict == Verdict.UNKNOWN_UP_TO_DEPTH:
            assert report.depth == 6

    def test_bounded_path_requires_a_depth(self):
        inst = rand_infinite_obs_instance(random.Random(1))
        with pytest.raises(InputError):
            solve_obs(inst, depth=None)

    def test_default_depth_is_eight(self):
        rng = random.Random(2)
        for _ in range(10):
            inst = rand_infinite_obs_instance(rng)
            report = solve_obs(inst)
            if report.verdict == Verdict.UNKNOWN_UP_TO_DEPTH:
                assert report.depth == 8
                return
        pytest.fail("no inconclusive instance found")


def check_obs_witness(instance, report, bound=10):
    """Word-level re-evaluation of an unsolvability witness against the
    defining separation condition."""
    plant_words = set(enumerate_upto(instance.plant, bound).words)
    spec_words = set(enumerate_upto(instance.spec, bound).words)
    rest = plant_words - spec_words
    if instance.fusion is FusionRule.UNRESTRICTED:
        s, t = report.witness
        assert s in spec_words and t in rest
        for alph in instance.observed:
            assert project_word(s, alph) == project_word(t, alph)
    elif instance.fusion is FusionRule.CONJUNCTIVE:
        (w,) = report.witness
        assert w in rest
        for alph in instance.observed:
            assert project_word(w, alph) in {project_word(u, alph) for u in spec_words}
    else:
        (w,) = report.witness
        assert w in spec_words
        for alph in instance.observed:
            assert project_word(w, alph) in {project_word(u, alph) for u in rest}


class TestWitnessSoundness:
    def test_on_random_finite_instances(self):
        rng = random.Random(21)
        checked = 0
        for _ in range(300):
            inst = rand_obs_instance(rng)
            report = solve_obs(inst)
            if report.verdict == Verdict.UNSOLVABLE:
                check_obs_witness(inst, report)
                checked += 1
        assert checked > 30

    def test_dx_witnesses_name_real_plant_strings(self):
        rng = random.Random(22)
        checked = 0
        for _ in range(150):
            inst = rand_dx_instance(rng)
            report = solve_dx(inst)
            if report.verdict == Verdict.UNSOLVABLE:
                for w in report.witness:
                    assert accepts(inst.plant, w)
                checked += 1
        assert checked > 10


class TestDuality:
    def test_conjunctive_equals_disjunctive_on_swapped_classes(self):
        rng = random.Random(23)
        done = 0
        for _ in range(200):
            inst = rand_obs_instance(rng)
            rest = difference(inst.plant, inst.spec)
            swapped = ObsInstance(inst.plant, rest, inst.observed, FusionRule.DISJUNCTIVE)
            conj = dataclasses.replace(inst, fusion=FusionRule.CONJUNCTIVE)
            a = solve_obs(conj).verdict
            b = solve_obs(swapped).verdict
            assert a == b
            done += 1
        assert done == 200


class TestSolveDx:
    def test_delayed_fault_confusable_with_clean_string(self):
        abf = Alphabet(["#f", "a", "b"])
        inst = DxInstance(
            prefix_closure(lang(abf, "#f a", "b a")), (Alphabet(["a"]),), "#f", 1
        )
        report = solve_dx(inst)
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.method.startswith("dx-to-obs;")

    def test_fault_free_plant_is_trivially_solvable(self):
        abf = Alphabet(["#f", "a"])
        inst = DxInstance(lang(abf, "a", ""), (Alphabet(["a"]),), "#f", 2)
        assert solve_dx(inst).verdict == Verdict.SOLVABLE

    def test_distinct_projections_solve_it(self):
        abf = Alphabet(["#f", "a", "b"])
        inst = DxInstance(
            prefix_closure(lang(abf, "#f a", "b")), (Alphabet(["a", "b"]),), "#f", 1
        )
        assert solve_dx(inst).verdict == Verdict.SOLVABLE

    def test_reduction_route_matches_direct_checker(self):
        rng = random.Random(24)
        for _ in range(150):
            inst = rand_dx_instance(rng)
            assert solve_dx(inst).verdict == solve_dx_direct(inst).verdict


class TestSolveCon:
    def test_forced_disablement_is_solvable(self):
        inst = ConInstance(
            prefix_closure(lang(AB, "a b")),
            prefix_closure(lang(AB, "a")),
            (Alphabet(["a"]),),
            (Alphabet(["b"]),),
        )
        report = solve_con(inst)
        assert report.verdict == Verdict.SOLVABLE
        assert set(report.per_sigma) == {"b"}

    def test_spec_equal_plant_is_solvable_for_any_control_structure(self):
        plant = prefix_closure(lang(AB, "a b", "b b"))
        inst = ConInstance(plant, plant, (Alphabet([]),), (AB,))
        assert solve_con(inst).verdict == Verdict.SOLVABLE

    def test_blind_agent_cannot_time_the_disablement(self):
        inst = ConInstance(
            prefix_closure(lang(AB, "a b", "b b")),
            prefix_closure(lang(AB, "a b")),
            (Alphabet([]),),
            (Alphabet(["b"]),),
        )
        report = solve_con(inst)
        assert report.verdict == Verdict.UNSOLVABLE
        assert report.per_sigma["b"].verdict == Verdict.UNSOLVABLE

    def test_reduction_route_matches_direct_checker(self):
        rng = random.Random(25)
        for _ in range(120):
            inst = rand_con_instance(rng)
            assert solve_con(inst).verdict == solve_con_direct(inst).verdict


class TestSynthesizeConjunctive:
    def test_local_deciders_realize_the_separation(self):
        plant = lang(AB, "a", "b", "a b")
        spec = lang(AB, "a b")
        inst = two_agent(plant, spec, FusionRule.CONJUNCTIVE)
        deciders = synthesize_conjunctive(inst)
        assert set(enumerate_upto(deciders[0], 4).words) == {("a",)}
        assert set(enumerate_upto(deciders[1], 4).words) == {("b",)}

    def test_fused_membership_satisfies_the_condition(self):
        rng = random.Random(26)
        done = 0
        for _ in range(200):
            inst = rand_obs_instance(rng)
            conj = dataclasses.replace(inst, fusion=FusionRule.CONJUNCTIVE)
            report = solve_obs(conj)
            if not report.solvable:
                continue
            deciders = synthesize_conjunctive(conj)
            bound = inst.plant.n_states
            spec_words = set(enumerate_upto(inst.spec, bound).words)
            for w in enumerate_upto(inst.plant, bound).words:
                fused = all(
                    accepts(d, project_word(w, alph))
                    for d, alph in zip(deciders, inst.observed)
                )
                assert fused == (w in spec_words)
            done += 1
        assert done > 50

    def test_contract_error_on_unsolvable_instances(self):
        inst = two_agent(
            lang(AB, "a", "b", "a b"), lang(AB, "a", "b"), FusionRule.CONJUNCTIVE
        )
        with pytest.raises(ContractError):
            synthesize_conjunctive(inst)

    def test_constant_decisions_for_degenerate_specs(self):
        plant = lang(AB, "a", "b")
        full = ObsInstance(plant, plant, (AB,), FusionRule.CONJUNCTIVE)
        (d,) = synthesize_conjunctive(full)
        assert set(enumerate_upto(d, 3).words) == {("a",), ("b",)}
        none = ObsInstance(plant, lang(AB), (AB,), FusionRule.CONJUNCTIVE)
        (d,) = synthesize_conjunctive(none)
        assert set(enumerate_upto(d, 3).words) == set()
