"""Problem instances for the three decentralized problem classes.

An observation instance asks for per-agent observers plus a fusion rule whose
fused verdict is 1 exactly on the specification sublanguage and 0 on the
rest of the plant.  A diagnosis instance asks to flag every string that has
carried a fault for at least ``delay`` events (or can never do so), while
never flagging fault-free strings.  A control instance asks, per controllable
event, for local controllers deciding from projected observations whether the
event keeps the behaviour inside the specification.

Instances are immutable; validation never raises for semantic violations, it
reports them as data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .automata import (
    Alphabet,
    Automaton,
    Word,
    _assemble,
    are_equivalent,
    is_sublanguage,
    prefix_closure,
)
from ._backend import kernels as _k
from .errors import InputError, InvalidInstanceError


class FusionRule(enum.Enum):
    """How local verdicts are fused into the global verdict."""

    UNRESTRICTED = "unrestricted"  # any function of the tuple of local outputs
    CONJUNCTIVE = "conjunctive"  # AND of boolean local verdicts
    DISJUNCTIVE = "disjunctive"  # OR of boolean local verdicts

    @classmethod
    def from_name(cls, name: str) -> "FusionRule":
        for rule in cls:
            if rule.value == name:
                return rule
        raise InputError(f"unknown fusion rule {name!r}")


@dataclass(frozen=True)
class ObsInstance:
    """Observation problem: distinguish spec strings from the rest of the
    plant, through the agents' natural projections."""

    plant: Automaton
    spec: Automaton
    observed: tuple[Alphabet, ...]
    fusion: FusionRule = FusionRule.UNRESTRICTED

    def __post_init__(self):
        object.__setattr__(self, "observed", tuple(self.observed))

    @property
    def n_agents(self) -> int:
        return len(self.observed)


@dataclass(frozen=True)
class DxInstance:
    """Diagnosis problem: flag faulty strings within ``delay`` events of the
    fault, never flagging fault-free strings."""

    plant: Automaton
    observed: tuple[Alphabet, ...]
    fault: str
    delay: int
    fusion: FusionRule = FusionRule.UNRESTRICTED

    def __post_init__(self):
        object.__setattr__(self, "observed", tuple(self.observed))
        if not isinstance(self.delay, int) or self.delay < 0:
            raise InputError("delay must be a non-negative integer")

    @property
    def n_agents(self) -> int:
        return len(self.observed)


@dataclass(frozen=True)
class ConInstance:
    """Control problem over prefix-closed plant and specification; each agent
    observes and controls its own subalphabets."""

    plant: Automaton
    spec: Automaton
    observed: tuple[Alphabet, ...]
    controllable: tuple[Alphabet, ...]
    fusion: FusionRule = FusionRule.UNRESTRICTED

    def __post_init__(self):
        object.__setattr__(self, "observed", tuple(self.observed))
        object.__setattr__(self, "controllable", tuple(self.controllable))

    @property
    def n_agents(self) -> int:
        return len(self.observed)

    def controllable_symbols(self) -> tuple[str, ...]:
        """Union of the agents' controllable alphabets, in plant-alphabet
        order (the canonical event order for everything per-event)."""
        pool = {s for alph in self.controllable for s in alph}
        return tuple(s for s in self.plant.alphabet if s in pool)

    def agents_controlling(self, symbol: str) -> tuple[int, ...]:
        return tuple(i for i, alph in enumerate(self.controllable) if symbol in alph)

    def uncontrollable_alphabet(self) -> Alphabet:
        pool = set(self.controllable_symbols())
        return Alphabet(s for s in self.plant.alphabet if s not in pool)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: Optional[Word] = None

    def to_json_dict(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json_dict() for v in self.violations]}


def require_valid(report: ValidationReport, what: str):
    if not report.ok:
        msgs = "; ".join(v.message for v in report.violations)
        raise InvalidInstanceError(f"invalid {what} instance: {msgs}", report)


def _check_agents(instance, out: list[Violation]):
    if instance.n_agents < 1:
        out.append(Violation("no-agents", "an instance needs at least one agent"))
    sigma = instance.plant.alphabet
    for i, alph in enumerate(instance.observed):
        for s in alph:
            if s not in sigma:
                out.append(
                    Violation(
                        "observed-outside-alphabet",
                        f"agent {i} observes {s!r}, which is outside the alphabet",
                    )
                )


def validate_obs(instance: ObsInstance) -> ValidationReport:
    """Check the observation-instance invariants: shared alphabet, observed
    subalphabets, and spec contained in plant."""
    out: list[Violation] = []
    if instance.plant.alphabet != instance.spec.alphabet:
        out.append(Violation("alphabet-mismatch", "plant and spec must share one alphabet"))
    else:
        ok, w = is_sublanguage(instance.spec, instance.plant)
        if not ok:
            out.append(
                Violation("spec-not-in-plant", "spec contains a word outside the plant", w)
            )
    _check_agents(instance, out)
    return ValidationReport(tuple(out))


def validate_dx(instance: DxInstance) -> ValidationReport:
    """Check the diagnosis-instance invariants: the fault symbol exists and
    is observable to no agent."""
    out: list[Violation] = []
    if instance.fault not in instance.plant.alphabet:
        out.append(
            Violation("fault-not-in-alphabet", f"fault {instance.fault!r} is not in the alphabet")
        )
    for i, alph in enumerate(instance.observed):
        if instance.fault in alph:
            out.append(
                Violation(
                    "fault-observable",
                    f"fault {instance.fault!r} must be unobservable but agent {i} observes it",
                )
            )
    _check_agents(instance, out)
    return ValidationReport(tuple(out))


def validate_con(instance: ConInstance) -> ValidationReport:
    """Check the control-instance invariants: shared alphabet, prefix-closed
    plant and spec, spec contained in plant, per-agent subalphabets, and
    controllability of the spec under the uncontrollable events."""
    out: list[Violation] = []
    sigma = instance.plant.alphabet
    if len(instance.controllable) != len(instance.observed):
        out.append(
            Violation("agent-count-mismatch", "observed and controllable lists differ in length")
        )
    for i, alph in enumerate(instance.controllable):
        for s in alph:
            if s not in sigma:
                out.append(
                    Violation(
                        "controllable-outside-alphabet",
                        f"agent {i} controls {s!r}, which is outside the alphabet",
                    )
                )
    _check_agents(instance, out)
    structural_ok = True
    if instance.plant.alphabet != instance.spec.alphabet:
        out.append(Violation("alphabet-mismatch", "plant and spec must share one alphabet"))
        structural_ok = False
    else:
        eq, w = are_equivalent(instance.plant, prefix_closure(instance.plant))
        if not eq:
            out.append(Violation("plant-not-prefix-closed", "plant must be prefix-closed", w))
            structural_ok = False
        eq, w = are_equivalent(instance.spec, prefix_closure(instance.spec))
        if not eq:
            out.append(Violation("spec-not-prefix-closed", "spec must be prefix-closed", w))
            structural_ok = False
        ok, w = is_sublanguage(instance.spec, instance.plant)
        if not ok:
            out.append(
                Violation("spec-not-in-plant", "spec contains a word outside the plant", w)
            )
            structural_ok = False
    if structural_ok:
        ok, witness = is_controllable(
            instance.plant, instance.spec, instance.uncontrollable_alphabet()
        )
        if not ok:
            s, sym = witness
            out.append(
                Violation(
                    "not-controllable",
                    f"spec is not controllable: {'·'.join(s) or 'ε'} extends by "
                    f"uncontrollable {sym!r} inside the plant but leaves the spec",
                    s + (sym,),
                )
            )
    return ValidationReport(tuple(out))


def is_controllable(
    plant: Automaton, spec: Automaton, uncontrollable: Alphabet
) -> tuple[bool, Optional[tuple[Word, str]]]:
    """Controllability of a prefix-closed spec w.r.t. a prefix-closed plant:
    whenever a spec string can be extended inside the plant by an
    uncontrollable event, the extension stays in the spec.

    Decided on a synchronized walk of the spec/plant product; the first
    offending product state (in discovery order) yields the witness
    ``(string, event)``.  Preconditions (shared alphabet, prefix-closedness,
    containment) are enforced with an input error.
    """
    if plant.alphabet != spec.alphabet:
        raise InputError("controllability check needs a shared alphabet")
    if not uncontrollable.is_subset(plant.alphabet):
        raise InputError("uncontrollable alphabet must be part of the plant alphabet")
    for name, aut in (("plant", plant), ("spec", spec)):
        eq, _ = are_equivalent(aut, prefix_closure(aut))
        if not eq:
            raise InputError(f"controllability check needs a prefix-closed {name}")
    ok, _ = is_sublanguage(spec, plant)
    if not ok:
        raise InputError("controllability check needs spec ⊆ plant")
    n = len(plant.alphabet)
    unc_cols = [plant.alphabet.index(s) for s in uncontrollable]
    pairs, _, parents = _k.product_reach(
        n, spec.delta, spec.n_states, spec.initial, plant.delta, plant.n_states, plant.initial, False
    )
    for idx, (qs, qp) in enumerate(pairs):
        if qs < 0 or qs not in spec.accepting or qp < 0:
            continue
        for j in unc_cols:
            tp = plant.delta[qp * n + j]
            if tp < 0 or tp not in plant.accepting:
                continue
            ts = spec.delta[qs * n + j]
            if ts < 0 or ts not in spec.accepting:
                word = _path_word(plant.alphabet, parents, idx)
                return False, (word, plant.alphabet[j])
    return True, None


def _path_word(alphabet: Alphabet, parents, idx: int) -> Word:
    word = []
    while True:
        p, j = parents[idx]
        if p < 0:
            break
        word.append(alphabet[j])
        idx = p
    return tuple(reversed(word))


def positive_for_m_steps(instance: DxInstance) -> Automaton:
    """The language of plant strings that must be flagged: those faulty for
    at least ``delay`` events, plus the faulty strings that can never reach
    that count because no sufficiently long extension exists in the plant.

    Built as the product of the plant automaton with a saturating post-fault
    event counter; the second clause is decided per product state by the
    longest path through the co-accessible part (a state that reaches a cycle
    has unbounded extensions).
    """
    require_valid(validate_dx(instance), "diagnosis")
    plant = instance.plant
    m = instance.delay
    n = len(plant.alphabet)
    fault_col = plant.alphabet.index(instance.fault)

    # Counter values: -1 before any fault, else min(events since fault, m).
    states: list[tuple[int, int]] = [(plant.initial, -1)]
    index = {(plant.initial, -1): 0}
    delta: list[int] = []
    head = 0
    while head < len(states):
        q, c = states[head]
        for j in range(n):
            t = plant.delta[q * n + j]
            if t < 0:
                delta.append(-1)
                continue
            if c < 0:
                c2 = 0 if j == fault_col else -1
            else:
                c2 = min(c + 1, m)
            key = (t, c2)
            k = index.get(key)
            if k is None:
                k = len(states)
                index[key] = k
                states.append(key)
            delta.append(k)
        head += 1

    in_plant = [q in plant.accepting for q, _ in states]
    acc_in_plant = [i for i, hit in enumerate(in_plant) if hit]
    coacc = _k.coaccessible_mask(len(states), n, delta, acc_in_plant)
    longest = _longest_path_or_none(len(states), n, delta, coacc)

    accepting = set()
    for i, (q, c) in enumerate(states):
        if not in_plant[i] or c < 0:
            continue
        if c >= m:
            accepting.add(i)
        elif longest[i] is not None and longest[i] < m - c:
            accepting.add(i)
    return _assemble(plant.alphabet, 0, delta, accepting)


def _longest_path_or_none(n_states: int, n_syms: int, delta, keep) -> list:
    """Per state: length of the longest path through the kept subgraph, or
    None when the state reaches a cycle there (unbounded)."""
    UNSEEN, ON_STACK, DONE = 0, 1, 2
    color = [UNSEEN] * n_states
    longest: list = [0] * n_states
    for start in range(n_states):
        if not keep[start] or color[start] != UNSEEN:
            continue
        stack = [(start, 0)]
        color[start] = ON_STACK
        while stack:
            q, j = stack[-1]
            if j < n_syms:
                stack[-1] = (q, j + 1)
                t = delta[q * n_syms + j]
                if t < 0 or not keep[t]:
                    continue
                if color[t] == ON_STACK:
                    longest[q] = None
                elif color[t] == UNSEEN:
                    color[t] = ON_STACK
                    stack.append((t, 0))
                else:
                    if longest[q] is not None:
                        sub = longest[t]
                        longest[q] = None if sub is None else max(longest[q], sub + 1)
            else:
                color[q] = DONE
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if longest[p] is not None:
                        sub = longest[q]
                        longest[p] = None if sub is None else max(longest[p], sub + 1)
    return longest
