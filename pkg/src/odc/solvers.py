"""Solvability deciders for the three problem classes.

Exact decisions are produced wherever the fragment is decidable:

* conjunctive and disjunctive fusion, any regular instance;
* unrestricted fusion with a single agent (centralized observation);
* unrestricted fusion with several agents when the plant language is finite.

For unrestricted fusion with several agents over an infinite language the
general question has no decision procedure, so the solver only searches the
bounded enumeration up to a depth: a colliding pair found there is a
conclusive proof of unsolvability, while its absence yields an explicitly
inconclusive verdict, never a claimed "solvable".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .automata import (
    Alphabet,
    Automaton,
    FiniteLanguage,
    Word,
    are_equivalent,
    difference,
    enumerate_upto,
    from_words,
    has_finite_language,
    intersect,
    inverse_project,
    is_empty,
    project,
    project_word,
    shortest_word,
)
from .errors import ContractError, InputError
from .problems import (
    ConInstance,
    DxInstance,
    FusionRule,
    ObsInstance,
    require_valid,
    validate_con,
    validate_dx,
    validate_obs,
)
from .reductions import con_to_obs, dx_to_obs

#: Depth of the bounded semi-decision when the caller does not choose one.
DEFAULT_DEPTH = 8


class Verdict:
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    UNKNOWN_UP_TO_DEPTH = "unknown_up_to_depth"


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solvability decision.

    An unsolvable verdict always carries a witness that violates the
    instance's defining condition: a pair (spec string, non-spec string)
    sharing all projections for unrestricted fusion, or the single
    unseparable string for conjunctive/disjunctive fusion.  The inconclusive
    verdict carries the depth searched and is only ever produced by the
    bounded procedure.
    """

    verdict: str
    method: str
    witness: Optional[tuple[Word, ...]] = None
    depth: Optional[int] = None
    per_sigma: Optional[dict[str, "SolveReport"]] = None

    @property
    def solvable(self) -> bool:
        return self.verdict == Verdict.SOLVABLE

    @property
    def unsolvable(self) -> bool:
        return self.verdict == Verdict.UNSOLVABLE

    def to_json_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.witness is not None:
            out["witness"] = [list(w) for w in self.witness]
        out["method"] = self.method
        if self.per_sigma is not None:
            out["per_sigma"] = {s: r.to_json_dict() for s, r in self.per_sigma.items()}
        return out


def _solvable(method: str) -> SolveReport:
    return SolveReport(Verdict.SOLVABLE, method)


def _unsolvable(method: str, *witness: Word) -> SolveReport:
    return SolveReport(Verdict.UNSOLVABLE, method, witness=tuple(witness))


def solve_obs(instance: ObsInstance, depth: Optional[int] = DEFAULT_DEPTH) -> SolveReport:
    """Decide an observation instance.

    ``depth`` only matters on the bounded path (unrestricted fusion, several
    agents, infinite plant language); passing ``None`` there is an input
    error, everywhere else it is ignored.
    """
    require_valid(validate_obs(instance), "observation")
    if instance.fusion is FusionRule.CONJUNCTIVE:
        return _solve_conjunctive(instance)
    if instance.fusion is FusionRule.DISJUNCTIVE:
        return _solve_disjunctive(instance)
    if instance.n_agents == 1:
        return _solve_centralized(instance)
    if has_finite_language(instance.plant):
        return _solve_finite_tuples(instance)
    return _solve_bounded(instance, depth)


def _lifted_image_intersection(
    base: Automaton, source: Automaton, observed: tuple[Alphabet, ...]
) -> Automaton:
    """base ∩ ⋂_i P_i⁻¹(P_i(source)), over the shared ambient alphabet."""
    sigma = base.alphabet
    out = base
    for alph in observed:
        out = intersect(out, inverse_project(project(source, alph), sigma))
    return out


def _solve_conjunctive(instance: ObsInstance) -> SolveReport:
    """AND fusion is exactly solvable for every regular instance: the best
    each agent can do is accept the observations its projection of the spec
    allows, so the instance fails exactly on non-spec strings that look
    spec-like to every agent."""
    rest = difference(instance.plant, instance.spec)
    bad = _lifted_image_intersection(rest, instance.spec, instance.observed)
    if is_empty(bad):
        return _solvable("conjunctive-exact")
    return _unsolvable("conjunctive-exact", shortest_word(bad))


def _solve_disjunctive(instance: ObsInstance) -> SolveReport:
    """OR fusion, dual to AND: each agent must stay silent on observations
    compatible with a non-spec string, so the instance fails exactly on spec
    strings that look non-spec-like to every agent."""
    rest = difference(instance.plant, instance.spec)
    bad = _lifted_image_intersection(instance.spec, rest, instance.observed)
    if is_empty(bad):
        return _solvable("disjunctive-exact")
    return _unsolvable("disjunctive-exact", shortest_word(bad))


def _solve_centralized(instance: ObsInstance) -> SolveReport:
    """One agent with a free fusion rule can decide anything its projection
    separates, so solvability is disjointness of the projected images of the
    spec and the rest of the plant."""
    observed = instance.observed[0]
    sigma = instance.plant.alphabet
    rest = difference(instance.plant, instance.spec)
    overlap = intersect(project(instance.spec, observed), project(rest, observed))
    if is_empty(overlap):
        return _solvable("unrestricted-centralized-exact")
    # Deterministic witness pair: minimal colliding spec string first, then
    # the minimal non-spec string with the same observation.
    lift = inverse_project(overlap, sigma)
    s = shortest_word(intersect(instance.spec, lift))
    image = from_words(FiniteLanguage(observed, [project_word(s, observed)]))
    s2 = shortest_word(intersect(rest, inverse_project(image, sigma)))
    return _unsolvable("unrestricted-centralized-exact", s, s2)


def _projection_tuple(word: Word, observed: tuple[Alphabet, ...]) -> tuple[Word, ...]:
    return tuple(project_word(word, alph) for alph in observed)


def _min_collision(
    spec_words: list[Word],
    rest_words: list[Word],
    observed: tuple[Alphabet, ...],
) -> Optional[tuple[Word, Word]]:
    """Smallest pair (spec word, non-spec word) sharing the full projection
    tuple, ordered by (word key of first, word key of second); the inputs
    must already be sorted by word key."""
    first_rest: dict[tuple[Word, ...], Word] = {}
    for w in rest_words:
        first_rest.setdefault(_projection_tuple(w, observed), w)
    for w in spec_words:
        hit = first_rest.get(_projection_tuple(w, observed))
        if hit is not None:
            return w, hit
    return None


def _solve_finite_tuples(instance: ObsInstance) -> SolveReport:
    """Several agents, unrestricted fusion, finite plant language: the tuple
    of all projections is everything any observer family can jointly know,
    and a free fusion rule can realize any function of it, so solvability is
    exactly injectivity of the tuple across the spec boundary."""
    spec_words = enumerate_upto(instance.spec, max(instance.spec.n_states - 1, 0)).sorted_words()
    rest = difference(instance.plant, instance.spec)
    rest_words = enumerate_upto(rest, max(rest.n_states - 1, 0)).sorted_words()
    pair = _min_collision(spec_words, rest_words, instance.observed)
    if pair is None:
        return _solvable("unrestricted-finite-tuples-exact")
    return _unsolvable("unrestricted-finite-tuples-exact", *pair)


def _solve_bounded(instance: ObsInstance, depth: Optional[int]) -> SolveReport:
    """Several agents, unrestricted fusion, infinite language: search the
    bounded slices.  A collision there refutes the whole instance; silence
    proves nothing and is reported as such."""
    if depth is None:
        raise InputError("a depth bound is required for this undecidable fragment")
    if depth < 0:
        raise InputError("depth must be non-negative")
    spec_words = enumerate_upto(instance.spec, depth).sorted_words()
    rest = difference(instance.plant, instance.spec)
    rest_words = enumerate_upto(rest, depth).sorted_words()
    pair = _min_collision(spec_words, rest_words, instance.observed)
    if pair is None:
        return SolveReport(
            Verdict.UNKNOWN_UP_TO_DEPTH, "unrestricted-bounded-search", depth=depth
        )
    return _unsolvable("unrestricted-bounded-search", *pair)


def solve_dx(instance: DxInstance, depth: Optional[int] = DEFAULT_DEPTH) -> SolveReport:
    """Decide a diagnosis instance by reducing it to the equivalent
    observation instance over the same plant; the report records the route."""
    require_valid(validate_dx(instance), "diagnosis")
    inner = solve_obs(dx_to_obs(instance), depth)
    return replace(inner, method=f"dx-to-obs;{inner.method}")


def classify_dx_words(instance: DxInstance, words: list[Word]) -> tuple[set[Word], set[Word], set[Word]]:
    """Word-level classification for the diagnosis condition: strings that
    must be flagged (faulty for at least the delay, or faulty with no
    sufficiently long extension among the given words), strings that must not
    be (fault-free), and the unconstrained remainder."""
    m = instance.delay
    fault = instance.fault
    tails = {w: len(w) - w.index(fault) - 1 for w in words if fault in w}
    must_flag: set[Word] = set()
    must_not: set[Word] = set()
    free: set[Word] = set()
    for w in words:
        t = tails.get(w)
        if t is None:
            must_not.add(w)
        elif t >= m:
            must_flag.add(w)
        else:
            extendable = any(
                u != w and u[: len(w)] == w and t2 >= m for u, t2 in tails.items()
            )
            (free if extendable else must_flag).add(w)
    return must_flag, must_not, free


def _word_level_separation(
    all_words: list[Word],
    pos: set[Word],
    neg: set[Word],
    observed: tuple[Alphabet, ...],
    fusion: FusionRule,
    method: str,
) -> SolveReport:
    """Separation of two finite word classes under a fusion kind, straight
    from the word-level definitions.  ``all_words`` fixes the observers'
    domains; words in neither class constrain nothing."""
    pos_sorted = [w for w in all_words if w in pos]
    neg_sorted = [w for w in all_words if w in neg]
    if fusion is FusionRule.UNRESTRICTED:
        pair = _min_collision(pos_sorted, neg_sorted, observed)
        if pair is None:
            return _solvable(method)
        return _unsolvable(method, *pair)
    if fusion is FusionRule.CONJUNCTIVE:
        images = [{project_word(w, alph) for w in pos} for alph in observed]
        for w in neg_sorted:
            if all(project_word(w, alph) in img for alph, img in zip(observed, images)):
                return _unsolvable(method, w)
        return _solvable(method)
    images = [{project_word(w, alph) for w in neg} for alph in observed]
    for w in pos_sorted:
        if all(project_word(w, alph) in img for alph, img in zip(observed, images)):
            return _unsolvable(method, w)
    return _solvable(method)


def solve_dx_direct(instance: DxInstance) -> SolveReport:
    """Cross-validation path: decide a finite-language diagnosis instance by
    classifying every plant word and separating the classes word-by-word,
    with no automaton construction in between."""
    require_valid(validate_dx(instance), "diagnosis")
    if not has_finite_language(instance.plant):
        raise InputError("the direct diagnosis checker needs a finite plant language")
    words = enumerate_upto(instance.plant, max(instance.plant.n_states - 1, 0)).sorted_words()
    must_flag, must_not, _ = classify_dx_words(instance, words)
    return _word_level_separation(
        words, must_flag, must_not, instance.observed, instance.fusion, "dx-direct-semantic"
    )


def solve_con(instance: ConInstance, depth: Optional[int] = DEFAULT_DEPTH) -> SolveReport:
    """Decide a control instance through its per-event observation problems:
    solvable exactly when every member is, unsolvable as soon as one member
    is (that member's witness explains the failure)."""
    members = con_to_obs(instance)
    per_sigma: dict[str, SolveReport] = {}
    failing: Optional[str] = None
    inconclusive: Optional[str] = None
    for sigma, member in members.items():
        report = solve_obs(member, depth)
        per_sigma[sigma] = report
        if report.unsolvable and failing is None:
            failing = sigma
        if report.verdict == Verdict.UNKNOWN_UP_TO_DEPTH and inconclusive is None:
            inconclusive = sigma
    if failing is not None:
        inner = per_sigma[failing]
        return SolveReport(
            Verdict.UNSOLVABLE,
            f"con-to-obs[{failing}];{inner.method}",
            witness=inner.witness,
            per_sigma=per_sigma,
        )
    if inconclusive is not None:
        return SolveReport(
            Verdict.UNKNOWN_UP_TO_DEPTH,
            f"con-to-obs[{inconclusive}];bounded",
            depth=per_sigma[inconclusive].depth,
            per_sigma=per_sigma,
        )
    return SolveReport(Verdict.SOLVABLE, "con-to-obs", per_sigma=per_sigma)


def solve_con_direct(instance: ConInstance) -> SolveReport:
    """Cross-validation path: evaluate the per-event control condition
    word-by-word on a finite instance, with no reduction machinery."""
    require_valid(validate_con(instance), "control")
    if not has_finite_language(instance.plant):
        raise InputError("the direct control checker needs a finite plant language")
    plant_words = set(
        enumerate_upto(instance.plant, max(instance.plant.n_states - 1, 0)).sorted_words()
    )
    spec_words = enumerate_upto(instance.spec, max(instance.spec.n_states - 1, 0)).sorted_words()
    per_sigma: dict[str, SolveReport] = {}
    failing = None
    for sigma in instance.controllable_symbols():
        agents = instance.agents_controlling(sigma)
        observed = tuple(instance.observed[i] for i in agents)
        pos = {w for w in spec_words if w + (sigma,) in spec_words}
        neg = {
            w
            for w in spec_words
            if w + (sigma,) in plant_words and w + (sigma,) not in spec_words
        }
        report = _word_level_separation(
            spec_words, pos, neg, observed, instance.fusion, "con-direct-semantic"
        )
        per_sigma[sigma] = report
        if report.unsolvable and failing is None:
            failing = sigma
    if failing is not None:
        return SolveReport(
            Verdict.UNSOLVABLE,
            f"con-direct-semantic[{failing}]",
            witness=per_sigma[failing].witness,
            per_sigma=per_sigma,
        )
    return SolveReport(Verdict.SOLVABLE, "con-direct-semantic", per_sigma=per_sigma)


def synthesize_conjunctive(instance: ObsInstance) -> list[Automaton]:
    """Constructive side of the conjunctive solver: per agent, the automaton
    accepting the projections of the spec onto that agent's observations.
    Running each on its agent's observation and AND-fusing the memberships
    yields 1 on every spec string and 0 on every other plant string.  Only
    defined when the conjunctive instance is solvable."""
    conj = replace(instance, fusion=FusionRule.CONJUNCTIVE)
    report = solve_obs(conj)
    if not report.solvable:
        raise ContractError("cannot synthesize local deciders for an unsolvable instance")
    return [project(instance.spec, alph) for alph in instance.observed]
