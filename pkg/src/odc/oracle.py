"""Brute-force reference deciders over explicit finite languages.

These are the ground truth the property tests certify the solvers against.
They evaluate the defining conditions literally, by enumerating the space of
observer assignments, and deliberately share no decision machinery with the
solver module: everything here works on explicit word sets.

For boolean local verdicts (AND/OR fusion) the space is every assignment of
0/1 to every observation each agent can make.  For unrestricted fusion each
observer is enumerated up to its kernel, i.e. as a partition of the agent's
observation set (any observer factors through one, and the codomain never
needs more values than the set has elements), and the fusion rule ranges over
all boolean functions of the occurring output tuples.  Instances whose
assignment space exceeds the budget are refused loudly, never sampled and
never guessed.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional, Sequence

from ._backend import kernels as _k
from .automata import Alphabet, FiniteLanguage, Word, project_word
from .errors import InputError, OracleBudgetError
from .problems import FusionRule
from .solvers import SolveReport, Verdict

#: Total number of enumerated assignments an instance may cost.
DEFAULT_BUDGET = 1 << 20


def _check_observed(alphabet: Alphabet, observed: Sequence[Alphabet]):
    if len(observed) < 1:
        raise InputError("at least one agent is required")
    for i, alph in enumerate(observed):
        if not alph.is_subset(alphabet):
            raise InputError(f"agent {i} observes symbols outside the alphabet")


def _observation_sets(
    words: Sequence[Word], observed: Sequence[Alphabet], alphabet: Alphabet
) -> list[list[Word]]:
    """Per agent, the distinct observations of the given words, in canonical
    word order.  This is each observer's domain."""
    return [
        sorted({project_word(w, alph) for w in words}, key=alphabet.word_key)
        for alph in observed
    ]


def _partitions(k: int) -> Iterator[tuple[int, ...]]:
    """All partitions of ``range(k)`` as restricted-growth strings: position
    ``i`` holds the block of element ``i``, blocks numbered by first
    appearance.  Deterministic order."""
    if k == 0:
        yield ()
        return
    rgs = [0] * k
    while True:
        yield tuple(rgs)
        i = k - 1
        while i > 0 and rgs[i] > max(rgs[:i]):
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        for j in range(i + 1, k):
            rgs[j] = 0


def _bell(k: int) -> int:
    """Number of partitions of a k-element set."""
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _all_functions(k: int) -> Iterator[tuple[int, ...]]:
    """All functions from a k-element set into itself (the unpruned observer
    space; used by the oracle's self-check)."""
    yield from itertools.product(range(k), repeat=k) if k else iter([()])


class _Separation:
    """One literal separation question: over ``domain_words`` (the observer
    domains), must-be-1 words ``pos``, must-be-0 words ``neg``, everything
    else unconstrained."""

    def __init__(
        self,
        alphabet: Alphabet,
        domain_words: list[Word],
        pos: set[Word],
        neg: set[Word],
        observed: Sequence[Alphabet],
    ):
        self.alphabet = alphabet
        self.domain_words = domain_words
        self.pos = pos
        self.neg = neg
        self.observed = tuple(observed)
        self.obs_sets = _observation_sets(domain_words, observed, alphabet)

    def boolean_cost(self) -> int:
        return 1 << sum(len(s) for s in self.obs_sets)

    def unrestricted_cost(self, prune_kernels: bool) -> int:
        combos = 1
        for s in self.obs_sets:
            k = len(s)
            combos *= _bell(k) if prune_kernels else max(k, 1) ** k
        tuples = len({self._tuple_of(w, identity=True) for w in self.domain_words})
        return combos * (1 << tuples)

    def _tuple_of(self, word: Word, mapping=None, identity=False):
        out = []
        for i, alph in enumerate(self.observed):
            obs = project_word(word, alph)
            idx = self.obs_sets[i].index(obs)
            out.append(idx if identity else mapping[i][idx])
        return tuple(out)

    def solve_boolean(self, conjunctive: bool) -> bool:
        """Exhaustive search over all 0/1 labellings of every observation of
        every agent, evaluating the fused verdict on each constrained word."""
        offsets = []
        total = 0
        for s in self.obs_sets:
            offsets.append(total)
            total += len(s)
        masks = []
        reqs = []
        for w in self.domain_words:
            if w in self.pos:
                req = 1
            elif w in self.neg:
                req = 0
            else:
                continue
            bits = 0
            for i, alph in enumerate(self.observed):
                idx = self.obs_sets[i].index(project_word(w, alph))
                bits |= 1 << (offsets[i] + idx)
            masks.append(bits)
            reqs.append(req)
        return _k.assignment_search(total, conjunctive, masks, reqs) >= 0

    def solve_unrestricted(self, budget_left: list[int], prune_kernels: bool) -> bool:
        """Exhaustive search over observer kernels (or raw functions) per
        agent and over all boolean fusion rules of the occurring tuples."""
        spaces: list[list[tuple[int, ...]]] = []
        for s in self.obs_sets:
            k = len(s)
            gen = _partitions(k) if prune_kernels else _all_functions(k)
            # Finest partitions first: on solvable instances the identity
            # kernels succeed immediately, so the scan is cheap; proving
            # unsolvability still visits the whole space.
            spaces.append(list(gen)[::-1])
        constrained = [w for w in self.domain_words if w in self.pos or w in self.neg]
        for mapping in itertools.product(*spaces):
            tuple_ids: dict[tuple[int, ...], int] = {}
            for w in self.domain_words:
                t = self._tuple_of(w, mapping)
                if t not in tuple_ids:
                    tuple_ids[t] = len(tuple_ids)
            n_tuples = len(tuple_ids)
            space = 1 << n_tuples
            budget_left[0] -= space
            if budget_left[0] < 0:
                raise OracleBudgetError(
                    "instance too large for the oracle's assignment budget"
                )
            pos_bits = 0
            neg_bits = 0
            for w in constrained:
                bit = 1 << tuple_ids[self._tuple_of(w, mapping)]
                if w in self.pos:
                    pos_bits |= bit
                else:
                    neg_bits |= bit
            # Every fusion rule is a set of output tuples mapped to 1; a rule
            # passes when it covers all constrained-1 tuples and no
            # constrained-0 tuple.
            for fused in range(space):
                if fused & pos_bits == pos_bits and fused & neg_bits == 0:
                    return True
        return False

    def witness(self, fusion: FusionRule) -> tuple[Word, ...]:
        """Defining-condition violation extracted word-by-word; exists
        whenever the exhaustive search failed."""
        order = self.alphabet.word_key
        if fusion is FusionRule.UNRESTRICTED:
            first_neg: dict[tuple, Word] = {}
            for w in sorted(self.neg, key=order):
                first_neg.setdefault(self._tuple_of(w, identity=True), w)
            for w in sorted(self.pos, key=order):
                hit = first_neg.get(self._tuple_of(w, identity=True))
                if hit is not None:
                    return (w, hit)
        elif fusion is FusionRule.CONJUNCTIVE:
            images = [
                {project_word(w, alph) for w in self.pos} for alph in self.observed
            ]
            for w in sorted(self.neg, key=order):
                if all(
                    project_word(w, alph) in img
                    for alph, img in zip(self.observed, images)
                ):
                    return (w,)
        else:
            images = [
                {project_word(w, alph) for w in self.neg} for alph in self.observed
            ]
            for w in sorted(self.pos, key=order):
                if all(
                    project_word(w, alph) in img
                    for alph, img in zip(self.observed, images)
                ):
                    return (w,)
        raise AssertionError("exhaustive search failed but no witness exists")


def _decide(
    sep: _Separation,
    fusion: FusionRule,
    budget_left: list[int],
    prune_kernels: bool,
    method: str,
) -> SolveReport:
    if fusion is FusionRule.UNRESTRICTED:
        cost = sep.unrestricted_cost(prune_kernels)
        if cost > budget_left[0]:
            raise OracleBudgetError("instance too large for the oracle's assignment budget")
        found = sep.solve_unrestricted(budget_left, prune_kernels)
    else:
        cost = sep.boolean_cost()
        budget_left[0] -= cost
        if budget_left[0] < 0:
            raise OracleBudgetError("instance too large for the oracle's assignment budget")
        found = sep.solve_boolean(fusion is FusionRule.CONJUNCTIVE)
    if found:
        return SolveReport(Verdict.SOLVABLE, method)
    return SolveReport(Verdict.UNSOLVABLE, method, witness=sep.witness(fusion))


def oracle_solve_obs(
    plant: FiniteLanguage,
    spec: FiniteLanguage,
    observed: Sequence[Alphabet],
    fusion: FusionRule,
    budget: int = DEFAULT_BUDGET,
    prune_kernels: bool = True,
) -> SolveReport:
    """Literal evaluation of the observation condition over an explicit
    finite instance: some enumerated observer family and fusion rule must
    output 1 on every spec word and 0 on every other plant word."""
    if plant.alphabet != spec.alphabet:
        raise InputError("plant and spec must share one alphabet")
    if not spec.words <= plant.words:
        raise InputError("spec must be a subset of the plant")
    _check_observed(plant.alphabet, observed)
    sep = _Separation(
        plant.alphabet,
        plant.sorted_words(),
        set(spec.words),
        set(plant.words - spec.words),
        observed,
    )
    return _decide(sep, fusion, [budget], prune_kernels, "oracle-obs-exhaustive")


def oracle_solve_dx(
    plant: FiniteLanguage,
    observed: Sequence[Alphabet],
    fault: str,
    delay: int,
    fusion: FusionRule,
    budget: int = DEFAULT_BUDGET,
    prune_kernels: bool = True,
) -> SolveReport:
    """Literal evaluation of the diagnosis condition: flag words faulty for
    at least ``delay`` events (including the dead-ended faulty words that can
    never get there), never flag fault-free words, anything else free."""
    if fault not in plant.alphabet:
        raise InputError(f"fault {fault!r} is not in the alphabet")
    _check_observed(plant.alphabet, observed)
    for i, alph in enumerate(observed):
        if fault in alph:
            raise InputError(f"fault {fault!r} must be unobservable but agent {i} observes it")
    if delay < 0:
        raise InputError("delay must be non-negative")
    words = plant.sorted_words()
    tails = {w: len(w) - w.index(fault) - 1 for w in words if fault in w}
    pos: set[Word] = set()
    neg: set[Word] = set()
    for w in words:
        t = tails.get(w)
        if t is None:
            neg.add(w)
        elif t >= delay:
            pos.add(w)
        elif not any(u != w and u[: len(w)] == w and t2 >= delay for u, t2 in tails.items()):
            pos.add(w)
    sep = _Separation(plant.alphabet, words, pos, neg, observed)
    return _decide(sep, fusion, [budget], prune_kernels, "oracle-dx-exhaustive")


def oracle_solve_con(
    plant: FiniteLanguage,
    spec: FiniteLanguage,
    observed: Sequence[Alphabet],
    controllable: Sequence[Alphabet],
    fusion: FusionRule,
    budget: int = DEFAULT_BUDGET,
    prune_kernels: bool = True,
) -> SolveReport:
    """Literal evaluation of the per-event control condition on finite
    prefix-closed languages: for each controllable event, the agents that
    control it must decide, from their observations of a spec word, whether
    extending by the event stays within the spec."""
    if plant.alphabet != spec.alphabet:
        raise InputError("plant and spec must share one alphabet")
    if not spec.words <= plant.words:
        raise InputError("spec must be a subset of the plant")
    _check_observed(plant.alphabet, observed)
    if len(controllable) != len(observed):
        raise InputError("observed and controllable lists differ in length")
    for i, alph in enumerate(controllable):
        if not alph.is_subset(plant.alphabet):
            raise InputError(f"agent {i} controls symbols outside the alphabet")
    pool = {s for alph in controllable for s in alph}
    sigma_c = [s for s in plant.alphabet if s in pool]
    budget_left = [budget]
    per_sigma: dict[str, SolveReport] = {}
    spec_words = spec.sorted_words()
    failing: Optional[str] = None
    for sigma in sigma_c:
        agents = [i for i, alph in enumerate(controllable) if sigma in alph]
        obs = [observed[i] for i in agents]
        pos = {w for w in spec.words if w + (sigma,) in spec.words}
        neg = {
            w
            for w in spec.words
            if w + (sigma,) in plant.words and w + (sigma,) not in spec.words
        }
        sep = _Separation(plant.alphabet, spec_words, pos, neg, obs)
        report = _decide(sep, fusion, budget_left, prune_kernels, "oracle-con-exhaustive")
        per_sigma[sigma] = report
        if report.unsolvable and failing is None:
            failing = sigma
    if failing is not None:
        return SolveReport(
            Verdict.UNSOLVABLE,
            f"oracle-con-exhaustive[{failing}]",
            witness=per_sigma[failing].witness,
            per_sigma=per_sigma,
        )
    return SolveReport(Verdict.SOLVABLE, "oracle-con-exhaustive", per_sigma=per_sigma)
