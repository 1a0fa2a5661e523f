"""Regular-language algebra on deterministic finite automata.

Languages are carried by trimmed, deterministic, partially-defined automata:
every state is reachable from the initial state, and a word belongs to the
language exactly when its run is defined and ends in an accepting state.
Every construction in this module re-normalizes its result by trimming to the
reachable part and renumbering states in breadth-first discovery order
(symbols scanned in alphabet order), so all results are canonical and
byte-for-byte reproducible.  Minimization is a separate, explicit operation.

All values are immutable after construction and every operation is a pure
function, so everything here can be shared freely across threads.

Symbol names starting with ``#`` are reserved for machinery-generated symbols
(``#f``/``#g`` families); user alphabets cannot claim other ``#`` names, which
is what guarantees the freshness of generated symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from ._backend import kernels as _k
from .errors import InputError

Word = tuple[str, ...]

EPSILON: Word = ()

RESERVED_PREFIX = "#"

#: Names the package itself may generate.  They are accepted on input so that
#: emitted instances re-parse, but arbitrary other "#" names are rejected.
_GENERATED_NAME = re.compile(r"#[fg][0-9]*\Z")

FAULT_BASE = "#f"
CONTROL_BASE = "#g"


def check_symbol_name(name: str) -> str:
    """Validate a symbol name: non-empty, printable, no whitespace, and not
    squatting on the reserved ``#`` prefix."""
    if not isinstance(name, str) or not name:
        raise InputError("symbol names must be non-empty strings")
    if any(ch.isspace() for ch in name) or not name.isprintable():
        raise InputError(f"symbol name {name!r} must be printable and contain no whitespace")
    if name.startswith(RESERVED_PREFIX) and not _GENERATED_NAME.match(name):
        raise InputError(
            f"symbol name {name!r} uses the reserved '{RESERVED_PREFIX}' prefix"
        )
    return name


class Alphabet:
    """A finite, insertion-ordered set of symbol names.

    The order is significant: it fixes the column order of transition tables
    and thereby the state numbering of every construction, the order of
    enumerations, and the tie-breaking of witnesses.
    """

    __slots__ = ("_symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        seen: dict[str, int] = {}
        for name in symbols:
            check_symbol_name(name)
            if name in seen:
                raise InputError(f"duplicate symbol {name!r} in alphabet")
            seen[name] = len(seen)
        self._symbols: tuple[str, ...] = tuple(seen)
        self._index: dict[str, int] = seen

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Alphabet from a whitespace-separated list of names."""
        return cls(text.split())

    @property
    def symbols(self) -> tuple[str, ...]:
        return self._symbols

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"symbol {name!r} is not in the alphabet") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __getitem__(self, i: int) -> str:
        return self._symbols[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return "Alphabet({%s})" % ", ".join(self._symbols)

    def is_subset(self, other: "Alphabet") -> bool:
        return all(s in other for s in self._symbols)

    def union(self, other: Iterable[str]) -> "Alphabet":
        """This alphabet extended (in order) by any unseen symbols of `other`."""
        extra = [s for s in other if s not in self._index]
        return Alphabet(self._symbols + tuple(extra))

    def word_key(self, word: Word) -> tuple[int, tuple[int, ...]]:
        """Sort key ordering words by length, then by symbol position."""
        return (len(word), tuple(self.index(s) for s in word))


def fresh_symbol(alphabet: Alphabet, base: str) -> str:
    """First name of the family ``base``, ``base1``, ``base2``, ... that does
    not occur in ``alphabet``.  Used with the reserved bases ``#f``/``#g``."""
    if base not in alphabet:
        return base
    i = 1
    while f"{base}{i}" in alphabet:
        i += 1
    return f"{base}{i}"


class FiniteLanguage:
    """An explicit finite set of words over a fixed alphabet."""

    __slots__ = ("alphabet", "words")

    def __init__(self, alphabet: Alphabet, words: Iterable[Word]):
        ws = set()
        for w in words:
            w = tuple(w)
            for s in w:
                if s not in alphabet:
                    raise InputError(f"word symbol {s!r} is not in the alphabet")
            ws.add(w)
        self.alphabet = alphabet
        self.words: frozenset[Word] = frozenset(ws)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=self.alphabet.word_key)

    def __contains__(self, w: object) -> bool:
        return w in self.words

    def __iter__(self) -> Iterator[Word]:
        return iter(self.sorted_words())

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteLanguage)
            and self.alphabet == other.alphabet
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.words))

    def __repr__(self) -> str:
        shown = ", ".join("".join(w) if w else "ε" for w in self.sorted_words()[:8])
        more = "" if len(self.words) <= 8 else ", ..."
        return f"FiniteLanguage({{{shown}{more}}})"


@dataclass(frozen=True)
class Automaton:
    """Trimmed deterministic finite automaton.

    ``delta`` is a flat table, ``delta[q * len(alphabet) + j]`` holding the
    successor of state ``q`` on the ``j``-th alphabet symbol (``-1`` when
    undefined).  ``names`` keeps one printable name per state; automata built
    by this module use ``s0, s1, ...`` in discovery order, automata parsed
    from files keep their declared names.
    """

    alphabet: Alphabet
    names: tuple[str, ...]
    initial: int
    delta: tuple[int, ...]
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.names)

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state * len(self.alphabet) + self.alphabet.index(symbol)]

    def run(self, word: Word) -> int:
        """Final state of the word's run, or -1 when the run dies."""
        q = self.initial
        n = len(self.alphabet)
        for s in word:
            q = self.delta[q * n + self.alphabet.index(s)]
            if q < 0:
                return -1
        return q

    def transitions(self) -> list[tuple[str, str, str]]:
        """Defined transitions as (source name, symbol, target name), in
        (state, symbol) order."""
        out = []
        n = len(self.alphabet)
        for q in range(self.n_states):
            for j in range(n):
                t = self.delta[q * n + j]
                if t >= 0:
                    out.append((self.names[q], self.alphabet[j], self.names[t]))
        return out

    def __repr__(self) -> str:
        return (
            f"Automaton({self.n_states} states, {len(self.accepting)} accepting, "
            f"alphabet {{{', '.join(self.alphabet)}}})"
        )

    @classmethod
    def build(
        cls,
        states: Iterable[str],
        alphabet: Alphabet,
        initial: str,
        transitions: Iterable[tuple[str, str, str]],
        accepting: Iterable[str],
    ) -> "Automaton":
        """Build from an explicit description, then trim to the reachable
        part.  State names survive; unreachable states are dropped."""
        names = list(states)
        if len(set(names)) != len(names):
            raise InputError("duplicate state names")
        pos = {name: i for i, name in enumerate(names)}
        if initial not in pos:
            raise InputError(f"initial state {initial!r} is not a declared state")
        n = len(alphabet)
        delta = [-1] * (len(names) * n)
        for src, sym, dst in transitions:
            if src not in pos or dst not in pos:
                raise InputError(f"transition endpoint {src!r} -> {dst!r} not a declared state")
            j = alphabet.index(sym)
            slot = pos[src] * n + j
            if delta[slot] != -1:
                raise InputError(f"nondeterministic: two transitions from {src!r} on {sym!r}")
            delta[slot] = pos[dst]
        acc = set()
        for name in accepting:
            if name not in pos:
                raise InputError(f"accepting state {name!r} is not a declared state")
            acc.add(pos[name])
        return _assemble(alphabet, pos[initial], delta, acc, names=names)


def _assemble(
    alphabet: Alphabet,
    initial: int,
    delta: list[int],
    accepting: set[int],
    names: Optional[list[str]] = None,
) -> Automaton:
    """Normalize pass: trim to the reachable part and renumber states in
    breadth-first order.  Fresh names ``s0..`` unless names are supplied."""
    n = len(alphabet)
    if n == 0:
        # Degenerate alphabet: only the initial state is reachable.
        keep_names = (names[initial] if names else "s0",)
        return Automaton(alphabet, keep_names, 0, (), frozenset({0} if initial in accepting else ()))
    order = [initial]
    new_id = {initial: 0}
    head = 0
    while head < len(order):
        q = order[head]
        head += 1
        base = q * n
        for j in range(n):
            t = delta[base + j]
            if t >= 0 and t not in new_id:
                new_id[t] = len(order)
                order.append(t)
    new_delta = []
    for q in order:
        base = q * n
        for j in range(n):
            t = delta[base + j]
            new_delta.append(new_id[t] if t >= 0 else -1)
    new_names = tuple(names[q] for q in order) if names else tuple(f"s{i}" for i in range(len(order)))
    new_acc = frozenset(new_id[q] for q in accepting if q in new_id)
    return Automaton(alphabet, new_names, 0, tuple(new_delta), new_acc)


def from_words(language: FiniteLanguage) -> Automaton:
    """Trie automaton recognizing exactly the given finite set of words."""
    alphabet = language.alphabet
    n = len(alphabet)
    delta: list[int] = [-1] * n
    accepting: set[int] = set()
    n_states = 1
    for w in language.sorted_words():
        q = 0
        for s in w:
            j = alphabet.index(s)
            t = delta[q * n + j]
            if t < 0:
                t = n_states
                n_states += 1
                delta[q * n + j] = t
                delta.extend([-1] * n)
            q = t
        accepting.add(q)
    return _assemble(alphabet, 0, delta, accepting)


def empty_language(alphabet: Alphabet) -> Automaton:
    return from_words(FiniteLanguage(alphabet, []))


def accepts(a: Automaton, w: Word) -> bool:
    """Membership test; symbols of `w` must come from the automaton's
    alphabet."""
    q = a.run(tuple(w))
    return q >= 0 and q in a.accepting


def _boolean(a: Automaton, b: Automaton, mode: str) -> Automaton:
    if a.alphabet != b.alphabet:
        raise InputError("boolean operations need identical alphabets (embed first)")
    n = len(a.alphabet)
    require_both = mode == "and"
    pairs, delta, _ = _k.product_reach(
        n, a.delta, a.n_states, a.initial, b.delta, b.n_states, b.initial, require_both
    )
    acc = set()
    for i, (ia, ib) in enumerate(pairs):
        in_a = ia >= 0 and ia in a.accepting
        in_b = ib >= 0 and ib in b.accepting
        if mode == "and":
            hit = in_a and in_b
        elif mode == "or":
            hit = in_a or in_b
        else:  # "diff"
            hit = in_a and not in_b
        if hit:
            acc.add(i)
    return _assemble(a.alphabet, 0, list(delta), acc)


def intersect(a: Automaton, b: Automaton) -> Automaton:
    """Language intersection."""
    return _boolean(a, b, "and")


def union(a: Automaton, b: Automaton) -> Automaton:
    """Language union."""
    return _boolean(a, b, "or")


def difference(a: Automaton, b: Automaton) -> Automaton:
    """Language difference L(a) - L(b)."""
    return _boolean(a, b, "diff")


def embed(a: Automaton, wider: Alphabet) -> Automaton:
    """Same language, re-read over a wider alphabet (no new transitions)."""
    if not a.alphabet.is_subset(wider):
        raise InputError("embed target must contain the automaton's alphabet")
    n_old = len(a.alphabet)
    delta = []
    for q in range(a.n_states):
        row = a.delta[q * n_old : (q + 1) * n_old]
        for sym in wider:
            delta.append(row[a.alphabet.index(sym)] if sym in a.alphabet else -1)
    return _assemble(wider, a.initial, delta, set(a.accepting), names=list(a.names))


def concat_letter(a: Automaton, g: str) -> Automaton:
    """Language { w·g : w in L(a) }.  The result's alphabet gains ``g`` if it
    was absent.  When ``g`` already occurs in the language this goes through
    the subset construction, since appending the letter to accepting states
    makes the table nondeterministic."""
    check_symbol_name(g)
    alphabet = a.alphabet.union([g])
    n = len(alphabet)
    n_states = a.n_states + 1  # one fresh final state
    final = a.n_states
    moves: list[tuple[int, ...]] = []
    for q in range(a.n_states):
        for sym in alphabet:
            targets = []
            if sym in a.alphabet:
                t = a.delta[q * len(a.alphabet) + a.alphabet.index(sym)]
                if t >= 0:
                    targets.append(t)
            if sym == g and q in a.accepting:
                targets.append(final)
            moves.append(tuple(targets))
    moves.extend([()] * n)  # the fresh final state has no outgoing moves
    eps = [()] * n_states
    masks, delta = _k.subset_reach(n_states, moves, eps, (a.initial,), n)
    final_bit = 1 << final
    acc = {i for i, m in enumerate(masks) if m & final_bit}
    return _assemble(alphabet, 0, list(delta), acc)


def prefix_closure(a: Automaton) -> Automaton:
    """Language of all prefixes of L(a): every state that can still reach an
    accepting state becomes accepting."""
    mask = _k.coaccessible_mask(a.n_states, len(a.alphabet), a.delta, sorted(a.accepting))
    acc = frozenset(q for q in range(a.n_states) if mask[q])
    return Automaton(a.alphabet, a.names, a.initial, a.delta, acc)


def project(a: Automaton, observed: Alphabet) -> Automaton:
    """Natural projection: erase every symbol outside ``observed`` from every
    word of the language.  Realized by treating erased transitions as silent
    moves and determinizing by the subset construction."""
    if not observed.is_subset(a.alphabet):
        raise InputError("observed alphabet must be a subset of the automaton's alphabet")
    n_old = len(a.alphabet)
    n_out = len(observed)
    obs_cols = [a.alphabet.index(s) for s in observed]
    erased_cols = [j for j in range(n_old) if a.alphabet[j] not in observed]
    moves: list[tuple[int, ...]] = []
    eps: list[tuple[int, ...]] = []
    for q in range(a.n_states):
        base = q * n_old
        for j in obs_cols:
            t = a.delta[base + j]
            moves.append((t,) if t >= 0 else ())
        eps.append(tuple(t for j in erased_cols if (t := a.delta[base + j]) >= 0))
    masks, delta = _k.subset_reach(a.n_states, moves, eps, (a.initial,), n_out)
    acc_bits = 0
    for q in a.accepting:
        acc_bits |= 1 << q
    acc = {i for i, m in enumerate(masks) if m & acc_bits}
    return _assemble(observed, 0, list(delta), acc)


def project_word(w: Word, observed: Alphabet) -> Word:
    """Word-level natural projection: keep exactly the symbols in
    ``observed``."""
    return tuple(s for s in w if s in observed)


def inverse_project(a: Automaton, full: Alphabet) -> Automaton:
    """Inverse projection: all words over ``full`` whose projection onto the
    automaton's alphabet lies in L(a).  Realized by a self-loop on every
    state for each symbol of ``full`` missing from the alphabet."""
    if not a.alphabet.is_subset(full):
        raise InputError("inverse projection target must contain the automaton's alphabet")
    n_old = len(a.alphabet)
    delta = []
    for q in range(a.n_states):
        base = q * n_old
        for sym in full:
            delta.append(a.delta[base + a.alphabet.index(sym)] if sym in a.alphabet else q)
    return _assemble(full, a.initial, delta, set(a.accepting), names=list(a.names))


def is_empty(a: Automaton) -> bool:
    """Emptiness; immediate on a trimmed automaton."""
    return not a.accepting


def shortest_word(a: Automaton) -> Optional[Word]:
    """Minimal accepted word under (length, alphabet order), or None."""
    if not a.accepting:
        return None
    n = len(a.alphabet)
    if a.initial in a.accepting:
        return EPSILON
    parents: dict[int, tuple[int, int]] = {a.initial: (-1, -1)}
    queue = [a.initial]
    head = 0
    while head < len(queue):
        q = queue[head]
        head += 1
        base = q * n
        for j in range(n):
            t = a.delta[base + j]
            if t < 0 or t in parents:
                continue
            parents[t] = (q, j)
            if t in a.accepting:
                word = []
                while t != a.initial:
                    p, jj = parents[t]
                    word.append(a.alphabet[jj])
                    t = p
                return tuple(reversed(word))
            queue.append(t)
    return None


def are_equivalent(a: Automaton, b: Automaton) -> tuple[bool, Optional[Word]]:
    """Language equality, via emptiness of both differences.  On failure the
    witness is the smaller of the two one-sided distinguishing words."""
    if a.alphabet != b.alphabet:
        raise InputError("equivalence needs identical alphabets (embed first)")
    w_ab = shortest_word(difference(a, b))
    w_ba = shortest_word(difference(b, a))
    if w_ab is None and w_ba is None:
        return True, None
    if w_ab is None:
        return False, w_ba
    if w_ba is None:
        return False, w_ab
    return False, min(w_ab, w_ba, key=a.alphabet.word_key)


def is_sublanguage(a: Automaton, b: Automaton) -> tuple[bool, Optional[Word]]:
    """L(a) ⊆ L(b), with a witness word from L(a) - L(b) on failure."""
    w = shortest_word(difference(a, b))
    return (w is None), w


def enumerate_upto(a: Automaton, n: int) -> FiniteLanguage:
    """The length-at-most-``n`` slice of the language, deterministically
    ordered by (length, alphabet order)."""
    if n < 0:
        raise InputError("length bound must be non-negative")
    coacc = _k.coaccessible_mask(a.n_states, len(a.alphabet), a.delta, sorted(a.accepting))
    raw = _k.enum_accepted(len(a.alphabet), a.delta, a.initial, _acc_list(a), n, coacc)
    syms = a.alphabet.symbols
    return FiniteLanguage(a.alphabet, [tuple(syms[j] for j in w) for w in raw])


def _acc_list(a: Automaton) -> list[bool]:
    acc = [False] * a.n_states
    for q in a.accepting:
        acc[q] = True
    return acc


def has_finite_language(a: Automaton) -> bool:
    """True when the language is a finite set: no cycle through the
    co-accessible part of the (trimmed) automaton."""
    n = len(a.alphabet)
    coacc = _k.coaccessible_mask(a.n_states, n, a.delta, sorted(a.accepting))
    color = [0] * a.n_states  # 0 unvisited, 1 on stack, 2 done
    for start in range(a.n_states):
        if not coacc[start] or color[start]:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        color[start] = 1
        while stack:
            q, j = stack[-1]
            if j < n:
                stack[-1] = (q, j + 1)
                t = a.delta[q * n + j]
                if t < 0 or not coacc[t]:
                    continue
                if color[t] == 1:
                    return False
                if color[t] == 0:
                    color[t] = 1
                    stack.append((t, 0))
            else:
                color[q] = 2
                stack.pop()
    return True


def minimize(a: Automaton) -> Automaton:
    """Language-preserving state minimization (explicit; constructions never
    minimize implicitly).  Partition refinement on the completed automaton,
    then the dead part is dropped again."""
    n = len(a.alphabet)
    sink = a.n_states
    total = list(a.delta)
    delta = [t if t >= 0 else sink for t in total]
    delta.extend([sink] * n)
    n_states = a.n_states + 1
    block = [1 if q in a.accepting else 0 for q in range(a.n_states)] + [0]
    while True:
        signature = {}
        new_block = [0] * n_states
        for q in range(n_states):
            sig = (block[q], tuple(block[delta[q * n + j]] for j in range(n)))
            if sig not in signature:
                signature[sig] = len(signature)
            new_block[q] = signature[sig]
        if new_block == block:
            break
        block = new_block
    n_blocks = max(block) + 1
    q_delta = [-1] * (n_blocks * n)
    q_acc = set()
    for q in range(n_states):
        b = block[q]
        if q < a.n_states and q in a.accepting:
            q_acc.add(b)
        for j in range(n):
            q_delta[b * n + j] = block[delta[q * n + j]]
    # Drop everything that can no longer reach an accepting state: those
    # blocks only encode rejection, which a partial table does implicitly.
    coacc = _k.coaccessible_mask(n_blocks, n, q_delta, sorted(q_acc))
    init_b = block[a.initial]
    for b in range(n_blocks):
        for j in range(n):
            t = q_delta[b * n + j]
            if t >= 0 and not coacc[t]:
                q_delta[b * n + j] = -1
    if not coacc[init_b]:
        return empty_language(a.alphabet)
    return _assemble(a.alphabet, init_b, q_delta, q_acc)
