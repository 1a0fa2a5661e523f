# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels.

Same interface and bit-identical results as ``odc._kernels_py``; that module
is the reference semantics.  Cases the typed fast paths cannot represent
(more than 64 states in a subset construction, more than 62 search bits)
delegate to the pure implementation.
"""

import array

from cpython cimport array

from . import _kernels_py as _py

cdef array.array _INT = array.array('i', [])
cdef array.array _LONG = array.array('q', [])
cdef array.array _CHAR = array.array('b', [])
cdef array.array _ULONG = array.array('Q', [])


def reachable_mask(int n_states, int n_syms, delta, int init):
    """Mark states reachable from ``init``."""
    if n_syms == 0 or n_states == 0:
        return [i == init for i in range(n_states)]
    cdef array.array darr = array.array('q', delta)
    cdef long long[::1] d = darr
    cdef array.array seen_arr = array.clone(_CHAR, n_states, zero=True)
    cdef signed char[::1] seen = seen_arr
    cdef array.array queue_arr = array.clone(_INT, n_states, zero=True)
    cdef int[::1] queue = queue_arr
    cdef int head = 0, tail = 0, q, s
    cdef long long t
    seen[init] = 1
    queue[tail] = init
    tail += 1
    while head < tail:
        q = queue[head]
        head += 1
        for s in range(n_syms):
            t = d[q * n_syms + s]
            if t >= 0 and not seen[t]:
                seen[t] = 1
                queue[tail] = <int> t
                tail += 1
    return [seen[i] != 0 for i in range(n_states)]


def coaccessible_mask(int n_states, int n_syms, delta, accepting):
    """Mark states from which some accepting state is reachable."""
    if n_syms == 0 or n_states == 0:
        acc = set(accepting)
        return [i in acc for i in range(n_states)]
    cdef array.array darr = array.array('q', delta)
    cdef long long[::1] d = darr
    # Reverse adjacency in compressed form: count, prefix, fill.
    cdef array.array deg_arr = array.clone(_INT, n_states + 1, zero=True)
    cdef int[::1] deg = deg_arr
    cdef int q, s, tail_i
    cdef long long t
    for q in range(n_states):
        for s in range(n_syms):
            t = d[q * n_syms + s]
            if t >= 0:
                deg[t + 1] += 1
    for q in range(n_states):
        deg[q + 1] += deg[q]
    cdef int n_edges = deg[n_states]
    cdef array.array src_arr = array.clone(_INT, n_edges if n_edges else 1, zero=True)
    cdef int[::1] src = src_arr
    cdef array.array fill_arr = array.clone(_INT, n_states, zero=True)
    cdef int[::1] fill = fill_arr
    for q in range(n_states):
        for s in range(n_syms):
            t = d[q * n_syms + s]
            if t >= 0:
                src[deg[t] + fill[t]] = q
                fill[t] += 1
    cdef array.array seen_arr = array.clone(_CHAR, n_states, zero=True)
    cdef signed char[::1] seen = seen_arr
    cdef array.array queue_arr = array.clone(_INT, n_states, zero=True)
    cdef int[::1] queue = queue_arr
    cdef int head = 0, tail = 0, p, e
    for q in accepting:
        if not seen[q]:
            seen[q] = 1
            queue[tail] = q
            tail += 1
    while head < tail:
        q = queue[head]
        head += 1
        for e in range(deg[q], deg[q + 1]):
            p = src[e]
            if not seen[p]:
                seen[p] = 1
                queue[tail] = p
                tail += 1
    return [seen[i] != 0 for i in range(n_states)]


def product_reach(int n_syms, delta_a, int na, int init_a, delta_b, int nb, int init_b,
                  bint require_both):
    """Synchronized product restricted to the reachable part; see the pure
    implementation for the full contract."""
    cdef array.array da_arr = array.array('q', delta_a) if na and n_syms else array.clone(_LONG, 1, zero=True)
    cdef array.array db_arr = array.array('q', delta_b) if nb and n_syms else array.clone(_LONG, 1, zero=True)
    cdef long long[::1] da = da_arr
    cdef long long[::1] db = db_arr
    cdef long long key_base = nb + 2
    pairs = [(init_a, init_b)]
    index = {(init_a + 1) * key_base + (init_b + 1): 0}
    parents = [(-1, -1)]
    delta = []
    cdef int head = 0, ia, ib, s
    cdef long long ta, tb, key
    cdef bint alive
    cdef object j
    while head < len(pairs):
        ia, ib = pairs[head]
        for s in range(n_syms):
            ta = da[ia * n_syms + s] if ia >= 0 else -1
            tb = db[ib * n_syms + s] if ib >= 0 else -1
            if require_both:
                alive = ta >= 0 and tb >= 0
            else:
                alive = ta >= 0 or tb >= 0
            if alive:
                key = (ta + 1) * key_base + (tb + 1)
                j = index.get(key)
                if j is None:
                    j = len(pairs)
                    index[key] = j
                    pairs.append((<int> ta, <int> tb))
                    parents.append((head, s))
                delta.append(j)
            else:
                delta.append(-1)
        head += 1
    return pairs, delta, parents


def subset_reach(int n_states, moves, eps, init_states, int n_syms_out):
    """Subset construction; uint64 fast path for up to 64 input states,
    otherwise the pure implementation (arbitrary-size masks)."""
    if n_states > 64:
        return _py.subset_reach(n_states, moves, eps, init_states, n_syms_out)
    cdef int n_moves = n_states * n_syms_out
    cdef array.array move_arr = array.clone(_ULONG, n_moves if n_moves else 1, zero=True)
    cdef unsigned long long[::1] move_mask = move_arr
    cdef array.array eps_arr = array.clone(_ULONG, n_states if n_states else 1, zero=True)
    cdef unsigned long long[::1] eps_mask = eps_arr
    cdef int q, j, t
    for q in range(n_moves):
        for t in moves[q]:
            move_mask[q] |= 1ULL << t
    for q in range(n_states):
        for t in eps[q]:
            eps_mask[q] |= 1ULL << t

    cdef unsigned long long start = 0, mask, target, changed
    for t in init_states:
        start |= 1ULL << t
    start = _closure(start, eps_mask, n_states)
    masks = [start]
    index = {start: 0}
    delta = []
    cdef int head = 0
    cdef object k
    while head < len(masks):
        mask = masks[head]
        for j in range(n_syms_out):
            target = 0
            for q in range(n_states):
                if mask & (1ULL << q):
                    target |= move_mask[q * n_syms_out + j]
            if target:
                target = _closure(target, eps_mask, n_states)
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


cdef unsigned long long _closure(unsigned long long mask,
                                 unsigned long long[::1] eps_mask,
                                 int n_states):
    cdef unsigned long long prev = 0
    cdef int q
    while mask != prev:
        prev = mask
        for q in range(n_states):
            if mask & (1ULL << q):
                mask |= eps_mask[q]
    return mask


def enum_accepted(int n_syms, delta, int init, accepting, int max_len, keep=None):
    """All accepted words up to ``max_len``; see the pure implementation."""
    cdef array.array darr = array.array('q', delta) if n_syms else array.clone(_LONG, 1, zero=True)
    cdef long long[::1] d = darr
    cdef int n_states = len(accepting)
    cdef array.array acc_arr = array.clone(_CHAR, n_states, zero=True)
    cdef signed char[::1] acc = acc_arr
    cdef array.array keep_arr = array.clone(_CHAR, n_states, zero=True)
    cdef signed char[::1] kp = keep_arr
    cdef int q, s, depth
    cdef long long t
    for q in range(n_states):
        if accepting[q]:
            acc[q] = 1
        kp[q] = 1 if keep is None or keep[q] else 0
    words = []
    if acc[init]:
        words.append(())
    level = [(init, ())]
    for depth in range(max_len):
        nxt = []
        for q, w in level:
            for s in range(n_syms):
                t = d[q * n_syms + s]
                if t < 0 or not kp[t]:
                    continue
                w2 = w + (s,)
                if acc[t]:
                    words.append(w2)
                nxt.append((<int> t, w2))
        if not nxt:
            break
        level = nxt
    return words


def assignment_search(int n_bits, bint conjunctive, masks, reqs):
    """First satisfying boolean assignment, or -1; exhaustive in increasing
    mask order.  See the pure implementation for the constraint semantics."""
    if n_bits > 62:
        return _py.assignment_search(n_bits, conjunctive, masks, reqs)
    cdef int n_constraints = len(masks)
    cdef array.array mask_arr = array.clone(_ULONG, n_constraints if n_constraints else 1, zero=True)
    cdef unsigned long long[::1] pm = mask_arr
    cdef array.array req_arr = array.clone(_CHAR, n_constraints if n_constraints else 1, zero=True)
    cdef signed char[::1] rq = req_arr
    cdef int i
    for i in range(n_constraints):
        pm[i] = masks[i]
        rq[i] = reqs[i]
    cdef unsigned long long assignment, limit = 1ULL << n_bits
    cdef int value
    cdef bint ok
    assignment = 0
    while assignment < limit:
        ok = True
        for i in range(n_constraints):
            if conjunctive:
                value = 1 if (assignment & pm[i]) == pm[i] else 0
            else:
                value = 1 if (assignment & pm[i]) else 0
            if value != rq[i]:
                ok = False
                break
        if ok:
            return assignment
        assignment += 1
    return -1
