"""The four reductions: frozen examples, freshness, and the well-posedness
verifier."""

import random

import pytest

from odc import (
    Alphabet,
    ConInstance,
    DxInstance,
    FiniteLanguage,
    FusionRule,
    InputError,
    InvalidInstanceError,
    ObsInstance,
    are_equivalent,
    con_to_obs,
    concat_letter,
    control_sublanguages,
    dx_to_obs,
    embed,
    enumerate_upto,
    from_words,
    is_sublanguage,
    obs_to_con,
    obs_to_dx,
    prefix_closure,
    project_word,
    strip_generated_suffix,
    union,
    verify_obs_to_con,
)
from .gen import rand_con_instance, rand_dx_instance, rand_obs_instance

AB = Alphabet(["a", "b"])


def lang(alphabet, *words):
    return from_words(
        FiniteLanguage(alphabet, [tuple(w.split()) if w else () for w in words])
    )


def words_of(a, bound=8):
    return set(enumerate_upto(a, bound).words)


class TestDxToObs:
    def test_spec_is_the_flagged_language(self):
        abf = Alphabet(["#f", "a"])
        inst = DxInstance(prefix_closure(lang(abf, "#f a")), (Alphabet(["a"]),), "#f", 1)
        obs = dx_to_obs(inst)
        # "#f" is faulty but below the delay with a live extension, so the
        # diagnosis condition says nothing about it; it must not survive into
        # the observation plant where it would be forced to verdict 0
        assert words_of(obs.plant) == {(), ("#f", "a")}
        assert words_of(obs.spec) == {("#f", "a")}
        assert obs.observed == inst.observed and obs.fusion is inst.fusion

    def test_zero_delay_takes_all_faulty_strings(self):
        abf = Alphabet(["#f", "a"])
        inst = DxInstance(prefix_closure(lang(abf, "#f a")), (Alphabet(["a"]),), "#f", 0)
        obs = dx_to_obs(inst)
        assert obs.plant is inst.plant  # nothing is unconstrained at delay 0
        assert words_of(obs.spec) == {("#f",), ("#f", "a")}

    def test_unreachable_fault_gives_empty_spec(self):
        abf = Alphabet(["#f", "a"])
        inst = DxInstance(lang(abf, "a", ""), (Alphabet(["a"]),), "#f", 1)
        assert words_of(dx_to_obs(inst).spec) == set()

    def test_invalid_instance_rejected(self):
        abf = Alphabet(["#f", "a"])
        inst = DxInstance(lang(abf, "a"), (Alphabet(["#f"]),), "#f", 0)
        with pytest.raises(InvalidInstanceError):
            dx_to_obs(inst)


class TestObsToDx:
    def test_construction_shape(self):
        inst = ObsInstance(
            lang(AB, "a b", "b a"), lang(AB, "a b"), (Alphabet(["a"]), Alphabet(["b"]))
        )
        dx = obs_to_dx(inst)
        assert dx.fault == "#f" and dx.delay == 0
        assert words_of(dx.plant) == {("b", "a"), ("a", "b", "#f")}
        assert dx.observed == inst.observed

    def test_empty_spec_keeps_plant(self):
        inst = ObsInstance(lang(AB, "a", "b"), lang(AB), (AB,))
        dx = obs_to_dx(inst)
        assert words_of(dx.plant) == {("a",), ("b",)}

    def test_full_spec_appends_fault_everywhere(self):
        inst = ObsInstance(lang(AB, "a", "b"), lang(AB, "a", "b"), (AB,))
        dx = obs_to_dx(inst)
        assert words_of(dx.plant) == {("a", "#f"), ("b", "#f")}

    def test_fresh_fault_when_nested(self):
        first = obs_to_dx(ObsInstance(lang(AB, "a"), lang(AB, "a"), (AB,)))
        assert first.fault == "#f"
        second = obs_to_dx(dx_to_obs(first))
        assert second.fault == "#f1"

    def test_projections_survive_the_fault_suffix(self):
        # appended fault never changes what any agent sees
        rng = random.Random(3)
        for _ in range(20):
            inst = rand_obs_instance(rng)
            dx = obs_to_dx(inst)
            for w in enumerate_upto(dx.plant, dx.plant.n_states).words:
                for alph in dx.observed:
                    assert project_word(w, alph) == project_word(
                        strip_generated_suffix(w), alph
                    )


class TestControlSublanguages:
    def test_enable_versus_retain(self):
        inst = ConInstance(
            prefix_closure(lang(AB, "a b")),
            prefix_closure(lang(AB, "a")),
            (Alphabet(["a"]),),
            (Alphabet(["b"]),),
        )
        l_b, k_b = control_sublanguages(inst, "b")
        assert words_of(l_b) == {("a",)}
        assert words_of(k_b) == set()

    def test_spec_equal_plant_collapses_the_pair(self):
        plant = prefix_closure(lang(AB, "a b", "b"))
        inst = ConInstance(plant, plant, (AB,), (AB,))
        for sigma in "ab":
            l_s, k_s = control_sublanguages(inst, sigma)
            eq, _ = are_equivalent(l_s, k_s)
            assert eq

    def test_absent_event_yields_empty_pair(self):
        abc = Alphabet(["a", "b", "c"])
        inst = ConInstance(
            prefix_closure(lang(abc, "a b")),
            prefix_closure(lang(abc, "a b")),
            (abc,),
            (Alphabet(["c"]),),
        )
        l_c, k_c = control_sublanguages(inst, "c")
        assert words_of(l_c) == set() and words_of(k_c) == set()

    def test_uncontrollable_event_rejected(self):
        inst = ConInstance(
            prefix_closure(lang(AB, "a")), prefix_closure(lang(AB, "a")), (AB,), (Alphabet(["a"]),)
        )
        with pytest.raises(InputError):
            control_sublanguages(inst, "b")

    def test_nesting_invariant(self):
        # K_sigma <= L_sigma <= K on random instances
        rng = random.Random(4)
        for _ in range(25):
            inst = rand_con_instance(rng)
            for sigma in inst.controllable_symbols():
                l_s, k_s = control_sublanguages(inst, sigma)
                ok, w = is_sublanguage(k_s, l_s)
                assert ok, w
                ok, w = is_sublanguage(l_s, inst.spec)
                assert ok, w


class TestConToObs:
    def test_forced_disablement_member(self):
        inst = ConInstance(
            prefix_closure(lang(AB, "a b")),
            prefix_closure(lang(AB, "a")),
            (Alphabet(["a"]),),
            (Alphabet(["b"]),),
        )
        members = con_to_obs(inst)
        assert list(members) == ["b"]
        member = members["b"]
        assert words_of(member.plant) == {("a",)} and words_of(member.spec) == set()

    def test_no_controllable_events_means_no_members(self):
        plant = prefix_closure(lang(AB, "a"))
        inst = ConInstance(plant, plant, (AB,), (Alphabet([]),))
        assert con_to_obs(inst) == {}

    def test_members_restrict_to_controlling_agents(self):
        plant = prefix_closure(lang(AB, "a b", "b"))
        inst = ConInstance(
            plant,
            plant,
            (Alphabet(["a"]), Alphabet(["b"])),
            (Alphabet(["a"]), Alphabet(["a", "b"])),
        )
        members = con_to_obs(inst)
        assert [tuple(a) for a in members["a"].observed] == [("a",), ("b",)]
        assert [tuple(a) for a in members["b"].observed] == [("b",)]

    def test_member_specs_are_valid_observation_instances(self):
        rng = random.Random(6)
        for _ in range(25):
            inst = rand_con_instance(rng)
            for member in con_to_obs(inst).values():
                ok, w = is_sublanguage(member.spec, member.plant)
                assert ok, w


class TestObsToCon:
    def test_raw_construction_formulas(self):
        # the two defining languages, computed straight from the formulas on
        # the smallest example: pr(L·g) and pr(K·g ∪ L) for L={a}, K={ε}
        aa = Alphabet(["a"])
        plant_g = prefix_closure(concat_letter(lang(aa, "a"), "#g"))
        spec_g = prefix_closure(
            union(concat_letter(lang(aa, ""), "#g"), embed(lang(aa, "a"), plant_g.alphabet))
        )
        assert words_of(plant_g) == {(), ("a",), ("a", "#g")}
        assert words_of(spec_g) == {(), ("#g",), ("a",)}

    def test_instance_construction(self):
        aa = Alphabet(["a"])
        inst = ObsInstance(lang(aa, "", "a"), lang(aa, ""), (aa,))
        con = obs_to_con(inst)
        assert words_of(con.plant) == {(), ("#g",), ("a",), ("a", "#g")}
        assert words_of(con.spec) == {(), ("#g",), ("a",)}
        assert all(tuple(alph) == ("#g",) for alph in con.controllable)
        assert con.observed == inst.observed

    def test_full_spec_enables_everywhere(self):
        inst = ObsInstance(lang(AB, "a", "b"), lang(AB, "a", "b"), (AB,))
        con = obs_to_con(inst)
        ok, w = is_sublanguage(con.plant, con.spec)
        assert ok, w

    def test_empty_spec_disables_everywhere(self):
        aa = Alphabet(["a"])
        inst = ObsInstance(lang(aa, ""), lang(aa), (aa,))
        con = obs_to_con(inst)
        assert words_of(con.plant) == {(), ("#g",)}
        assert words_of(con.spec) == {()}


class TestVerifyObsToCon:
    def test_smallest_example_recovers_both_languages(self):
        aa = Alphabet(["a"])
        inst = ObsInstance(lang(aa, "", "a"), lang(aa, ""), (aa,))
        con = obs_to_con(inst)
        report = verify_obs_to_con(con, inst)
        assert report.ok, report.to_json_dict()
        l_g, k_g = control_sublanguages(con, "#g")
        assert words_of(l_g) == {(), ("a",)}
        assert words_of(k_g) == {()}

    def test_full_spec_case(self):
        inst = ObsInstance(lang(AB, "a"), lang(AB, "a"), (AB,))
        assert verify_obs_to_con(obs_to_con(inst), inst).ok

    def test_tampered_controllable_set_is_flagged(self):
        inst = ObsInstance(lang(AB, "a"), lang(AB, "a"), (AB, AB))
        con = obs_to_con(inst)
        import dataclasses

        tampered = dataclasses.replace(
            con, controllable=(Alphabet([]),) + con.controllable[1:]
        )
        report = verify_obs_to_con(tampered, inst)
        assert not report.ok
        assert not report.obligations[0].ok  # construction shape

    def test_random_instances_always_verify(self):
        rng = random.Random(8)
        for _ in range(30):
            inst = rand_obs_instance(rng)
            assert verify_obs_to_con(obs_to_con(inst), inst).ok


class TestRoundTrip:
    def test_back_and_forth_recovers_the_instance(self):
        rng = random.Random(9)
        for _ in range(30):
            inst = rand_obs_instance(rng)
            con = obs_to_con(inst)
            members = con_to_obs(con)
            assert len(members) == 1
            ((_, member),) = members.items()
            wide = con.plant.alphabet
            eq, w = are_equivalent(member.plant, embed(inst.plant, wide))
            assert eq, w
            eq, w = are_equivalent(member.spec, embed(inst.spec, wide))
            assert eq, w
            assert member.observed == inst.observed

    def test_dx_round_trip_flags_exactly_the_appended_faults(self):
        rng = random.Random(10)
        for _ in range(25):
            inst = rand_obs_instance(rng)
            dx = obs_to_dx(inst)
            back = dx_to_obs(dx)
            eq, w = are_equivalent(back.plant, dx.plant)
            assert eq, w
            expected = concat_letter(inst.spec, dx.fault)
            eq, w = are_equivalent(back.spec, embed(expected, dx.plant.alphabet))
            assert eq, w


class TestStripGeneratedSuffix:
    def test_strips_only_trailing_generated_symbols(self):
        assert strip_generated_suffix(("a", "#f")) == ("a",)
        assert strip_generated_suffix(("a", "#g1")) == ("a",)
        assert strip_generated_suffix(("#f", "a")) == ("#f", "a")
        assert strip_generated_suffix(()) == ()
