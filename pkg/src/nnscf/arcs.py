"""Labelled arc diagrams on a poset: set partitions with arcs i - j, i < j, labelled by F_q^x."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import cached_property

from .algebra import Field, FieldElement
from .errors import (
    ArcNotComparable,
    DuplicateArc,
    NotLinearOrder,
    NotNonnesting,
    OverlappingGroundSets,
    PartitionConditionViolated,
    PosetMismatch,
    FieldMismatch,
    ZeroLabel,
)
from .posets import Poset


class ArcDiagram:
    """A set of labelled arcs on a poset.

    ``raw`` holds the arcs as sorted ``(src_index, dst_index, label_code)``
    triples relative to the poset's canonical element order; this is also the
    sort key used for enumeration.  Equality compares label strings, so two
    diagrams on equal posets built in different element orders are equal.
    """

    __slots__ = ("poset", "field", "raw", "_key", "__dict__")

    def __init__(self, poset: Poset, field: Field, raw):
        self.poset = poset
        self.field = field
        self.raw = tuple(sorted(raw))
        els = poset.elements
        self._key = (poset, field, frozenset((els[s], els[d], c) for s, d, c in self.raw))

    # -- views -------------------------------------------------------------

    @property
    def arcs(self) -> tuple[tuple[str, str, FieldElement], ...]:
        els = self.poset.elements
        return tuple((els[s], els[d], FieldElement(self.field, c)) for s, d, c in self.raw)

    @cached_property
    def arc_map(self) -> dict[tuple[str, str], int]:
        els = self.poset.elements
        return {(els[s], els[d]): c for s, d, c in self.raw}

    @property
    def shape(self) -> frozenset:
        return frozenset((s, d) for s, d, _ in self.raw)

    def __len__(self):
        return len(self.raw)

    def __iter__(self):
        return iter(self.arcs)

    def __bool__(self):
        return bool(self.raw)

    def __eq__(self, other):
        if not isinstance(other, ArcDiagram):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self.raw < other.raw

    def __repr__(self):
        return "{" + ", ".join(f"{a}-{b}:{lab}" for a, b, lab in self.arcs) + "}"

    def issubset(self, other: ArcDiagram) -> bool:
        return self._key[2] <= other._key[2]

    def to_json(self) -> dict:
        return {"arcs": [{"from": a, "to": b, "label": lab.to_json()} for a, b, lab in self.arcs]}


# -- pairwise conditions on raw arcs -----------------------------------------

def _partition_witness(lt, a, b):
    """A triple (i, k, j) violating the set-partition condition for arcs a, b, or None."""
    (i, j, _), (k, l, _) = a, b
    if i == k and j != l:
        if lt[l][j]:
            return i, l, j
        if lt[j][l]:
            return i, j, l
    if j == l and i != k:
        if lt[i][k]:
            return i, k, j
        if lt[k][i]:
            return k, i, j
    return None


def _nests(lt, outer, inner):
    return lt[outer[0]][inner[0]] and lt[inner[1]][outer[1]]


def _weakly_under(lt, inner, outer):
    """outer = (i,j), inner = (k,l): i <= k < l <= j and the pairs differ."""
    i, j = outer[0], outer[1]
    k, l = inner[0], inner[1]
    if (i, j) == (k, l):
        return False
    return (i == k or lt[i][k]) and (l == j or lt[l][j])


def validate(poset: Poset, field: Field, arcs) -> ArcDiagram:
    """Build a diagram from ``(src, dst, label)`` triples, checking every invariant."""
    lt = poset.lt
    raw = []
    seen = set()
    for src, dst, label in arcs:
        s, d = poset.check_subset([src, dst])
        si, di = poset.index[s], poset.index[d]
        if not lt[si][di]:
            raise ArcNotComparable(f"{s} is not below {d}")
        lab = field(label)
        if lab.code == 0:
            raise ZeroLabel(f"arc {s}-{d} has label 0")
        if (si, di) in seen:
            raise DuplicateArc(f"two arcs on {s}-{d}")
        seen.add((si, di))
        raw.append((si, di, lab.code))
    els = poset.elements
    for a, b in itertools.combinations(raw, 2):
        w = _partition_witness(lt, a, b)
        if w is not None:
            i, k, j = (els[t] for t in w)
            raise PartitionConditionViolated(i, k, j)
    return ArcDiagram(poset, field, raw)


def empty_diagram(poset: Poset, field: Field) -> ArcDiagram:
    return ArcDiagram(poset, field, ())


def is_nonnesting(eta: ArcDiagram) -> bool:
    lt = eta.poset.lt
    return not any(_nests(lt, a, b) or _nests(lt, b, a)
                   for a, b in itertools.combinations(eta.raw, 2))


def require_nonnesting(eta: ArcDiagram) -> None:
    if not is_nonnesting(eta):
        raise NotNonnesting(f"{eta!r} has a nesting")


# -- enumeration ---------------------------------------------------------------

def enumerate_shapes(poset: Poset, nonnesting_only: bool = True) -> list[tuple[tuple[int, int], ...]]:
    """Unlabelled arc sets (sorted index pairs) that are set partitions, optionally nonnesting."""
    lt = poset.lt
    pairs = [(poset.index[a], poset.index[b]) for a, b in poset.pairs]
    out = []
    chosen = []

    def ok(new):
        for old in chosen:
            if _partition_witness(lt, old + (1,), new + (1,)) is not None:
                return False
            if nonnesting_only and (_nests(lt, old, new) or _nests(lt, new, old)):
                return False
        return True

    def rec(t):
        if t == len(pairs):
            out.append(tuple(chosen))
            return
        rec(t + 1)
        if ok(pairs[t]):
            chosen.append(pairs[t])
            rec(t + 1)
            chosen.pop()

    rec(0)
    out.sort()
    return out


def enumerate_diagrams(poset: Poset, field: Field, nonnesting_only: bool = True) -> list[ArcDiagram]:
    """Every diagram exactly once, sorted lexicographically by arc list (empty first)."""
    labels = range(1, field.q)
    out = []
    for shape in enumerate_shapes(poset, nonnesting_only):
        for labs in itertools.product(labels, repeat=len(shape)):
            out.append(ArcDiagram(poset, field, [(s, d, c) for (s, d), c in zip(shape, labs)]))
    out.sort(key=lambda eta: eta.raw)
    return out


def NN(poset: Poset, field: Field) -> list[ArcDiagram]:
    return enumerate_diagrams(poset, field, True)


def shape_arc_counts(poset: Poset, nonnesting_only: bool = True) -> Counter:
    """Number of unlabelled shapes with k arcs, for each k."""
    return Counter(len(s) for s in enumerate_shapes(poset, nonnesting_only))


def count_polynomial(poset: Poset, q: int, nonnesting_only: bool = True) -> int:
    """Sum over unlabelled shapes of (q-1)^#arcs."""
    return sum(n * (q - 1) ** k for k, n in shape_arc_counts(poset, nonnesting_only).items())


# -- sml / big on diagrams -------------------------------------------------------

def sml_partition(eta: ArcDiagram) -> ArcDiagram:
    """Keep the arcs with no other arc underneath them."""
    lt = eta.poset.lt
    keep = [a for a in eta.raw if not any(_weakly_under(lt, b, a) for b in eta.raw)]
    return ArcDiagram(eta.poset, eta.field, keep)


def big_partition(eta: ArcDiagram) -> ArcDiagram:
    """Keep the arcs with no other arc above them."""
    lt = eta.poset.lt
    keep = [a for a in eta.raw if not any(_weakly_under(lt, a, b) for b in eta.raw)]
    return ArcDiagram(eta.poset, eta.field, keep)


# -- restriction and union ----------------------------------------------------------

def restrict(eta: ArcDiagram, subset) -> ArcDiagram:
    sub = eta.poset.restrict(subset)
    keep = set(sub.elements)
    idx = sub.index
    raw = [(idx[a], idx[b], c) for (a, b), c in eta.arc_map.items() if a in keep and b in keep]
    return ArcDiagram(sub, eta.field, raw)


def disjoint_union(eta: ArcDiagram, nu: ArcDiagram, ambient: Poset | None = None) -> ArcDiagram:
    """The union of two diagrams on disjoint ground sets, placed on ``ambient``.

    Without an ambient poset the concatenation ``eta.poset . nu.poset`` is used.
    """
    if eta.field != nu.field:
        raise FieldMismatch("diagrams over different fields")
    overlap = set(eta.poset.elements) & set(nu.poset.elements)
    if overlap:
        raise OverlappingGroundSets(f"shared elements {sorted(overlap)}")
    if ambient is None:
        ambient = eta.poset.concat(nu.poset)
    else:
        if set(ambient.elements) != set(eta.poset.elements) | set(nu.poset.elements):
            raise PosetMismatch("ambient poset has the wrong ground set")
        if ambient.restrict(eta.poset.elements) != eta.poset or \
                ambient.restrict(nu.poset.elements) != nu.poset:
            raise PosetMismatch("factors are not restrictions of the ambient poset")
    idx = ambient.index
    raw = [(idx[a], idx[b], c) for part in (eta, nu) for (a, b), c in part.arc_map.items()]
    return ArcDiagram(ambient, eta.field, raw)


def on_poset(eta: ArcDiagram, poset: Poset) -> ArcDiagram:
    """The same arcs viewed on an equal poset (possibly with another element order)."""
    if poset == eta.poset and poset.elements == eta.poset.elements:
        return eta
    if set(poset.elements) != set(eta.poset.elements):
        raise PosetMismatch("different ground sets")
    idx = poset.index
    return ArcDiagram(poset, eta.field, [(idx[a], idx[b], c) for (a, b), c in eta.arc_map.items()])


# -- statistics on linear orders ---------------------------------------------------------

def _require_linear(poset: Poset):
    if not poset.is_linear():
        raise NotLinearOrder("defined only on a linear order")


def crossing_set(eta: ArcDiagram) -> set:
    """Pairs of arcs (i-k, j-l) with i < j < k < l."""
    _require_linear(eta.poset)
    out = set()
    for a, b in itertools.permutations(eta.raw, 2):
        i, k = a[0], a[1]
        j, l = b[0], b[1]
        if i < j < k < l:
            out.add((a, b))
    els = eta.poset.elements
    return {((els[a[0]], els[a[1]]), (els[b[0]], els[b[1]])) for a, b in out}


def nst(nu: ArcDiagram, eta: ArcDiagram) -> int:
    """Number of i < j < k < l with j-k an arc of nu and i-l an arc of eta."""
    _require_linear(eta.poset)
    if nu.poset != eta.poset:
        raise PosetMismatch("nst needs diagrams on the same poset")
    nu = on_poset(nu, eta.poset)
    return sum(1 for j, k, _ in nu.raw for i, l, _ in eta.raw if i < j and k < l)


# -- projection and atomicity ----------------------------------------------------------------

def proj(eta: ArcDiagram, subset) -> list[ArcDiagram]:
    """Nonnesting diagrams on P|S holding eta|S, whose arcs all sit under arcs of eta."""
    require_nonnesting(eta)
    P = eta.poset
    inside = restrict(eta, subset)
    sub = inside.poset
    out = []
    for nu in NN(sub, eta.field):
        if not inside.issubset(nu):
            continue
        if all(any(P.leq(k, i) and P.leq(j, l) for k, l in eta.arc_map)
               for i, j in nu.arc_map):
            out.append(nu)
    return out


def compatible_splits(eta: ArcDiagram) -> list:
    """Poset splits (S, T) with no arc of eta running from S to T."""
    return [(S, T) for S, T in eta.poset.splits()
            if not any((a in S) != (b in S) for a, b in eta.arc_map)]


def is_atomic(eta: ArcDiagram) -> bool:
    require_nonnesting(eta)
    return not compatible_splits(eta)


def atomic_factorization(eta: ArcDiagram) -> list[tuple[tuple[str, ...], ArcDiagram]]:
    """Cut eta at every compatible split; the pieces are atomic and unique."""
    require_nonnesting(eta)
    if not eta.poset.elements:
        return []
    cuts = [set(S) for S, _ in compatible_splits(eta)]
    cuts.sort(key=len)
    blocks = []
    prev = set()
    for S in cuts + [set(eta.poset.elements)]:
        block = tuple(x for x in eta.poset.elements if x in S and x not in prev)
        blocks.append(block)
        prev = S
    return [(block, restrict(eta, block)) for block in blocks]


def reassemble(factors) -> ArcDiagram:
    """Concatenate atomic factors back into one diagram."""
    result = None
    for _, part in factors:
        result = part if result is None else disjoint_union(result, part)
    return result


def arcs_from_pairs(poset: Poset, field: Field, triples) -> ArcDiagram:
    """Convenience wrapper: ``validate`` with labels given as ints or coefficient lists."""
    return validate(poset, field, triples)
