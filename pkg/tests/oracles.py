"""Independent brute-force references used by the tests.

Nothing here imports the library's enumeration or group code; only the
basic field tables and poset relation are shared.
"""

import itertools


def rgs_set_partitions(n):
    """Set partitions of 1..n as lists of blocks, via restricted growth strings."""
    if n == 0:
        yield []
        return

    def rec(prefix, top):
        if len(prefix) == n:
            blocks = {}
            for pos, b in enumerate(prefix, start=1):
                blocks.setdefault(b, []).append(pos)
            yield [blocks[b] for b in sorted(blocks)]
            return
        for b in range(top + 2):
            yield from rec(prefix + [b], max(top, b))

    yield from rec([0], 0)


def partition_arcs(blocks):
    """Arcs joining consecutive elements of each block."""
    return [(b[k], b[k + 1]) for b in blocks for k in range(len(b) - 1)]


def arcs_nest(arcs):
    return any(i < k and l < j for (i, j) in arcs for (k, l) in arcs)


def nn_count_rgs(n, q):
    """|NN([n], q)| from set partitions: each arc takes one of q-1 labels."""
    total = 0
    for blocks in rgs_set_partitions(n):
        arcs = partition_arcs(blocks)
        if not arcs_nest(arcs):
            total += (q - 1) ** len(arcs)
    return total


def all_count_rgs(n, q):
    return sum((q - 1) ** len(partition_arcs(b)) for b in rgs_set_partitions(n))


def brute_diagrams(poset, q, nonnesting=True):
    """All labelled arc sets satisfying the invariants, found by exhausting subsets.

    Returns sets of (src, dst, code) with labels as element strings.
    """
    less = poset.less
    pairs = list(poset.pairs)
    out = []
    for choice in itertools.product(range(q), repeat=len(pairs)):
        arcs = [(a, b, c) for (a, b), c in zip(pairs, choice) if c]
        ok = True
        for (i, j, _), (k, l, _) in itertools.permutations(arcs, 2):
            if i == k and less(l, j):
                ok = False
            if j == l and less(i, k):
                ok = False
            if nonnesting and less(i, k) and less(l, j):
                ok = False
        if ok:
            out.append(frozenset(arcs))
    return out


def dense(poset, field, entries):
    """Full n x n matrix (codes) of 1 + x for entries {(a, b): code}."""
    els = list(poset.elements)
    n = len(els)
    m = [[field.one if r == c else 0 for c in range(n)] for r in range(n)]
    for (a, b), v in entries.items():
        m[els.index(a)][els.index(b)] = v
    return m


def dense_mul(field, x, y):
    add, mul = field.add_table, field.mul_table
    n = len(x)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = add[s][mul[x[i][k]][y[k][j]]]
            out[i][j] = s
    return out


def undense(poset, m):
    els = list(poset.elements)
    return {(a, b): m[els.index(a)][els.index(b)] for a, b in poset.pairs if m[els.index(a)][els.index(b)]}


def naive_closure(elements, relations):
    rel = set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel
