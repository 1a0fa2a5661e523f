"""Pure-Python kernels: the hot loops behind the automaton algebra and the
oracle's exhaustive search.

This module is interchangeable with the compiled extension ``odc._kernels``
(see ``odc._backend``); both must produce bit-identical results.  Transition
tables are flat sequences indexed ``state * n_syms + sym`` holding the target
state, with ``-1`` for an undefined transition.  State discovery is always
breadth-first with symbols scanned in table order, which fixes the numbering
of every constructed automaton.
"""


def reachable_mask(n_states, n_syms, delta, init):
    """Mark states reachable from ``init``."""
    seen = [False] * n_states
    seen[init] = True
    queue = [init]
    head = 0
    while head < len(queue):
        q = queue[head]
        head += 1
        base = q * n_syms
        for s in range(n_syms):
            t = delta[base + s]
            if t >= 0 and not seen[t]:
                seen[t] = True
                queue.append(t)
    return seen


def coaccessible_mask(n_states, n_syms, delta, accepting):
    """Mark states from which some accepting state is reachable."""
    rev = [[] for _ in range(n_states)]
    for q in range(n_states):
        base = q * n_syms
        for s in range(n_syms):
            t = delta[base + s]
            if t >= 0:
                rev[t].append(q)
    seen = [False] * n_states
    queue = []
    for q in accepting:
        if not seen[q]:
            seen[q] = True
            queue.append(q)
    head = 0
    while head < len(queue):
        q = queue[head]
        head += 1
        for p in rev[q]:
            if not seen[p]:
                seen[p] = True
                queue.append(p)
    return seen


def product_reach(n_syms, delta_a, na, init_a, delta_b, nb, init_b, require_both):
    """Synchronized product, restricted to the part reachable from the pair
    of initial states.

    A component that has no transition goes dead (``-1``) and stays dead; with
    ``require_both`` pairs where either side is dead are not expanded, which
    is the right pruning for intersection-style accepting predicates.

    Returns ``(pairs, delta, parents)`` where ``pairs[i]`` is the (a, b)
    state pair of product state ``i``, ``delta`` is the product transition
    table, and ``parents[i]`` is ``(source product state, symbol)`` on a
    shortest path from the initial pair (``(-1, -1)`` for the initial pair).
    """
    pairs = [(init_a, init_b)]
    index = {(init_a, init_b): 0}
    parents = [(-1, -1)]
    delta = []
    head = 0
    while head < len(pairs):
        ia, ib = pairs[head]
        for s in range(n_syms):
            da = delta_a[ia * n_syms + s] if ia >= 0 else -1
            db = delta_b[ib * n_syms + s] if ib >= 0 else -1
            if require_both:
                alive = da >= 0 and db >= 0
            else:
                alive = da >= 0 or db >= 0
            if alive:
                key = (da, db)
                j = index.get(key)
                if j is None:
                    j = len(pairs)
                    index[key] = j
                    pairs.append(key)
                    parents.append((head, s))
                delta.append(j)
            else:
                delta.append(-1)
        head += 1
    return pairs, delta, parents


def subset_reach(n_states, moves, eps, init_states, n_syms_out):
    """Determinize a nondeterministic table by the subset construction.

    ``moves[q * n_syms_out + j]`` is a tuple of target states, ``eps[q]`` a
    tuple of targets reachable by erased moves.  Subsets are bit masks over
    the input states.  Returns ``(masks, delta)`` in discovery order; an
    empty successor subset is an undefined transition.
    """

    def closure(mask):
        stack = []
        m = mask
        while m:
            low = m & -m
            stack.append(low.bit_length() - 1)
            m ^= low
        while stack:
            q = stack.pop()
            for t in eps[q]:
                bit = 1 << t
                if not mask & bit:
                    mask |= bit
                    stack.append(t)
        return mask

    start = 0
    for q in init_states:
        start |= 1 << q
    start = closure(start)
    masks = [start]
    index = {start: 0}
    delta = []
    head = 0
    while head < len(masks):
        mask = masks[head]
        for j in range(n_syms_out):
            target = 0
            m = mask
            while m:
                low = m & -m
                q = low.bit_length() - 1
                m ^= low
                for t in moves[q * n_syms_out + j]:
                    target |= 1 << t
            if target:
                target = closure(target)
                k = index.get(target)
                if k is None:
                    k = len(masks)
                    index[target] = k
                    masks.append(target)
                delta.append(k)
            else:
                delta.append(-1)
        head += 1
    return masks, delta


def enum_accepted(n_syms, delta, init, accepting, max_len, keep=None):
    """All accepted words of length at most ``max_len``, as tuples of symbol
    indices, ordered by length and then lexicographically by symbol index.

    ``keep`` optionally masks the states worth expanding (typically the
    co-accessible ones); pruning the rest never loses an accepted word.
    """
    words = []
    if accepting[init]:
        words.append(())
    level = [(init, ())]
    for _ in range(max_len):
        nxt = []
        for q, w in level:
            base = q * n_syms
            for s in range(n_syms):
                t = delta[base + s]
                if t < 0 or (keep is not None and not keep[t]):
                    continue
                w2 = w + (s,)
                if accepting[t]:
                    words.append(w2)
                nxt.append((t, w2))
        if not nxt:
            break
        level = nxt
    return words


def assignment_search(n_bits, conjunctive, masks, reqs):
    """First boolean assignment (as a bit mask over ``n_bits`` decision
    variables) meeting every constraint, or ``-1``.

    Constraint ``i`` selects the variables in ``masks[i]``; their AND
    (``conjunctive``) or OR must equal ``reqs[i]``.  The search enumerates
    the full assignment space in increasing mask order.
    """
    n_constraints = len(masks)
    for assignment in range(1 << n_bits):
        ok = True
        for i in range(n_constraints):
            pm = masks[i]
            if conjunctive:
                value = 1 if (assignment & pm) == pm else 0
            else:
                value = 1 if (assignment & pm) else 0
            if value != reqs[i]:
                ok = False
                break
        if ok:
            return assignment
    return -1
