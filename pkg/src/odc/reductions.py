"""The four constructive reductions between the problem classes, plus the
verifier that re-checks the observation-to-control construction's proof
obligations on concrete instances.

Every reduction preserves solvability; the test suite certifies this against
the brute-force oracle on finite instances.  Fresh symbols introduced by
reductions come from the reserved families ``#f`` (fault) and ``#g``
(the appended control event) with numeric suffixes when nesting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automata import (
    Alphabet,
    Automaton,
    CONTROL_BASE,
    FAULT_BASE,
    Word,
    _assemble,
    are_equivalent,
    concat_letter,
    difference,
    embed,
    fresh_symbol,
    intersect,
    is_empty,
    prefix_closure,
    union,
)
from ._backend import kernels as _k
from .errors import InputError
from .problems import (
    ConInstance,
    DxInstance,
    ObsInstance,
    is_controllable,
    positive_for_m_steps,
    require_valid,
    validate_con,
    validate_dx,
    validate_obs,
)


def _faulty_part(plant: Automaton, fault: str) -> Automaton:
    """Plant strings containing the fault: plant times a two-state flag."""
    alphabet = plant.alphabet
    flag = Automaton.build(
        ["clean", "dirty"],
        alphabet,
        "clean",
        [("clean", s, "dirty" if s == fault else "clean") for s in alphabet]
        + [("dirty", s, "dirty") for s in alphabet],
        ["dirty"],
    )
    return intersect(plant, flag)


def dx_to_obs(instance: DxInstance) -> ObsInstance:
    """Diagnosis as observation: the specification is exactly the strings
    that must be flagged, and the plant keeps only the constrained strings.

    Faulty strings below the delay that can still reach it are constrained by
    neither side of the diagnosis condition, but an observation plant would
    force them to verdict 0, which can flip solvability (a young fault may
    share all its projections with an old one).  Dropping them makes the two
    defining conditions coincide for every fusion kind: observers are free on
    the dropped observations exactly as diagnosers are free on the dropped
    strings.  With delay 0 nothing is dropped and the plant passes through
    unchanged.
    """
    require_valid(validate_dx(instance), "diagnosis")
    flagged = positive_for_m_steps(instance)
    free = difference(_faulty_part(instance.plant, instance.fault), flagged)
    if is_empty(free):
        plant = instance.plant
    else:
        plant = difference(instance.plant, free)
    return ObsInstance(
        plant=plant,
        spec=flagged,
        observed=instance.observed,
        fusion=instance.fusion,
    )


def obs_to_dx(instance: ObsInstance) -> DxInstance:
    """Observation as diagnosis with zero delay: append a fresh fault symbol
    to every spec string and keep the non-spec plant strings as the
    fault-free part.  The fault is unobservable by freshness, and appending
    it does not change any projection, so verdicts transfer verbatim."""
    require_valid(validate_obs(instance), "observation")
    fault = fresh_symbol(instance.plant.alphabet, FAULT_BASE)
    flagged = concat_letter(instance.spec, fault)
    rest = embed(difference(instance.plant, instance.spec), flagged.alphabet)
    return DxInstance(
        plant=union(rest, flagged),
        observed=instance.observed,
        fault=fault,
        delay=0,
        fusion=instance.fusion,
    )


def control_sublanguages(instance: ConInstance, sigma: str) -> tuple[Automaton, Automaton]:
    """For a controllable event, the pair of languages on which the event's
    enablement decision is constrained: spec strings whose extension by the
    event stays in the plant, and those whose extension stays in the spec.

    Computed on the synchronized spec/plant product: a product state accepts
    in the first (second) language when its spec component accepts and the
    respective component has an accepting successor on the event.
    """
    if sigma not in instance.controllable_symbols():
        raise InputError(f"{sigma!r} is not a controllable symbol of the instance")
    spec, plant = instance.spec, instance.plant
    n = len(plant.alphabet)
    col = plant.alphabet.index(sigma)
    pairs, delta, _ = _k.product_reach(
        n, spec.delta, spec.n_states, spec.initial, plant.delta, plant.n_states, plant.initial, True
    )
    acc_l = set()
    acc_k = set()
    for i, (qs, qp) in enumerate(pairs):
        if qs not in spec.accepting:
            continue
        tp = plant.delta[qp * n + col]
        if tp >= 0 and tp in plant.accepting:
            acc_l.add(i)
        ts = spec.delta[qs * n + col]
        if ts >= 0 and ts in spec.accepting:
            acc_k.add(i)
    l_sigma = _assemble(plant.alphabet, 0, list(delta), acc_l)
    k_sigma = _assemble(plant.alphabet, 0, list(delta), acc_k)
    return l_sigma, k_sigma


def con_to_obs(instance: ConInstance) -> dict[str, ObsInstance]:
    """Control as a family of observation problems, one per controllable
    event: distinguish the strings after which the event must stay enabled
    from those after which it must be disabled, using only the agents that
    control the event.  The control instance is solvable exactly when every
    member is."""
    require_valid(validate_con(instance), "control")
    out: dict[str, ObsInstance] = {}
    for sigma in instance.controllable_symbols():
        l_sigma, k_sigma = control_sublanguages(instance, sigma)
        agents = instance.agents_controlling(sigma)
        out[sigma] = ObsInstance(
            plant=l_sigma,
            spec=k_sigma,
            observed=tuple(instance.observed[i] for i in agents),
            fusion=instance.fusion,
        )
    return out


def obs_to_con(instance: ObsInstance) -> ConInstance:
    """Observation as control: append a fresh event to the alphabet, let
    every agent control exactly that event, and prefix-close.  The plant
    allows the new event after every plant string; the spec allows it after
    exactly the spec strings, so enabling the event correctly is the same
    problem as the original classification."""
    require_valid(validate_obs(instance), "observation")
    gamma = fresh_symbol(instance.plant.alphabet, CONTROL_BASE)
    plant_g = concat_letter(instance.plant, gamma)
    wide = plant_g.alphabet
    spec_g = concat_letter(instance.spec, gamma)
    plant2 = prefix_closure(plant_g)
    spec2 = prefix_closure(union(spec_g, embed(instance.plant, wide)))
    return ConInstance(
        plant=plant2,
        spec=spec2,
        observed=instance.observed,
        controllable=tuple(Alphabet([gamma]) for _ in range(instance.n_agents)),
        fusion=instance.fusion,
    )


@dataclass(frozen=True)
class Obligation:
    name: str
    ok: bool
    detail: str = ""
    witness: Optional[Word] = None

    def to_json_dict(self) -> dict:
        out: dict = {"name": self.name, "ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class WellPosednessReport:
    obligations: tuple[Obligation, ...]

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.obligations)

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "obligations": [o.to_json_dict() for o in self.obligations]}


def verify_obs_to_con(con: ConInstance, obs: ObsInstance) -> WellPosednessReport:
    """Re-check, on a concrete pair, everything that makes the
    observation-to-control construction well posed: the construction shape
    itself, prefix-closedness of both languages, controllability when only
    the appended event is controllable, and exact recovery of the original
    plant and spec as that event's enablement languages."""
    obligations: list[Obligation] = []

    gamma = None
    extra = [s for s in con.plant.alphabet if s not in obs.plant.alphabet]
    shape_ok = len(extra) == 1 and extra[0].startswith(CONTROL_BASE)
    detail = ""
    if shape_ok:
        gamma = extra[0]
        if con.n_agents != obs.n_agents or tuple(con.observed) != tuple(obs.observed):
            shape_ok, detail = False, "agents or observed alphabets differ from the source"
        elif any(tuple(alph) != (gamma,) for alph in con.controllable):
            shape_ok, detail = False, f"every agent must control exactly {{{gamma}}}"
    else:
        detail = "alphabet must extend the source by exactly one generated event"
    obligations.append(Obligation("construction-shape", shape_ok, detail))

    if gamma is None:
        return WellPosednessReport(tuple(obligations))

    for name, aut in (("plant-prefix-closed", con.plant), ("spec-prefix-closed", con.spec)):
        eq, w = are_equivalent(aut, prefix_closure(aut))
        obligations.append(Obligation(name, eq, "" if eq else "language is not prefix-closed", w))

    unc = Alphabet(s for s in con.plant.alphabet if s != gamma)
    try:
        ok, witness = is_controllable(con.plant, con.spec, unc)
        obligations.append(
            Obligation(
                "controllable",
                ok,
                "" if ok else f"uncontrollable extension by {witness[1]!r} leaves the spec",
                None if ok else witness[0] + (witness[1],),
            )
        )
    except InputError as exc:
        obligations.append(Obligation("controllable", False, str(exc)))

    try:
        l_gamma, k_gamma = control_sublanguages(con, gamma)
        eq_l, w_l = are_equivalent(l_gamma, embed(obs.plant, con.plant.alphabet))
        obligations.append(
            Obligation("recovers-plant", eq_l, "" if eq_l else "enablement language differs from the source plant", w_l)
        )
        eq_k, w_k = are_equivalent(k_gamma, embed(obs.spec, con.plant.alphabet))
        obligations.append(
            Obligation("recovers-spec", eq_k, "" if eq_k else "retention language differs from the source spec", w_k)
        )
    except InputError as exc:
        obligations.append(Obligation("recovers-plant", False, str(exc)))
    return WellPosednessReport(tuple(obligations))


def strip_generated_suffix(word: Word) -> Word:
    """Map a witness word of a generated instance back to the source
    instance's string by dropping one trailing generated symbol, if any."""
    if word and (word[-1].startswith(FAULT_BASE) or word[-1].startswith(CONTROL_BASE)):
        return word[:-1]
    return word
