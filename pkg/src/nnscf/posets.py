"""Finite posets on labelled ground sets."""

from __future__ import annotations

import itertools
from functools import cached_property

from .errors import CycleDetected, DuplicateElement, OverlappingGroundSets, UnknownElement


def _label(x) -> str:
    return str(x)


class Poset:
    """A strict partial order on string labels.

    ``elements`` is always a linear extension of the order (a stable
    topological sort of the construction order).  Two posets are equal when
    they have the same labels and the same relation; the stored order of the
    labels plays no role in equality.
    """

    def __init__(self, elements, relations=()):
        elements = [_label(x) for x in elements]
        seen = set()
        for x in elements:
            if x in seen:
                raise DuplicateElement(f"element {x!r} listed twice")
            seen.add(x)
        pos = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        lt = [[False] * n for _ in range(n)]
        for a, b in relations:
            a, b = _label(a), _label(b)
            for x in (a, b):
                if x not in pos:
                    raise UnknownElement(f"{x!r} is not an element")
            if a == b:
                raise CycleDetected(f"{a!r} cannot be below itself")
            lt[pos[a]][pos[b]] = True
        # transitive closure (Warshall)
        for k in range(n):
            row_k = lt[k]
            for i in range(n):
                if lt[i][k]:
                    row_i = lt[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            if lt[i][i]:
                raise CycleDetected(f"cycle through {elements[i]!r}")
        # stable topological sort: repeatedly take the first available element
        order = []
        placed = [False] * n
        for _ in range(n):
            for i in range(n):
                if not placed[i] and not any(lt[j][i] and not placed[j] for j in range(n)):
                    placed[i] = True
                    order.append(i)
                    break
        self.elements = tuple(elements[i] for i in order)
        self.index = {x: k for k, x in enumerate(self.elements)}
        self.lt = tuple(tuple(lt[order[a]][order[b]] for b in range(n)) for a in range(n))

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return _label(x) in self.index

    def less(self, x, y) -> bool:
        return self.lt[self.index[_label(x)]][self.index[_label(y)]]

    def leq(self, x, y) -> bool:
        x, y = _label(x), _label(y)
        return x == y or self.lt[self.index[x]][self.index[y]]

    @cached_property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        """All strict pairs x < y, sorted by canonical positions."""
        n = len(self.elements)
        return tuple((self.elements[i], self.elements[j])
                     for i in range(n) for j in range(n) if self.lt[i][j])

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if self.lt[i][j] and not any(self.lt[i][k] and self.lt[k][j] for k in range(n)):
                    out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    @cached_property
    def _key(self):
        return frozenset(self.elements), frozenset(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rel = ", ".join(f"{a}<{b}" for a, b in self.covers)
        return f"Poset([{', '.join(self.elements)}]; {rel})"

    def is_linear(self) -> bool:
        n = len(self.elements)
        return all(self.lt[i][j] for i in range(n) for j in range(i + 1, n))

    def check_subset(self, subset) -> list[str]:
        out = []
        for x in subset:
            x = _label(x)
            if x not in self.index:
                raise UnknownElement(f"{x!r} is not an element")
            out.append(x)
        return out

    # -- constructions ---------------------------------------------------

    def restrict(self, subset) -> Poset:
        keep = set(self.check_subset(subset))
        elems = [x for x in self.elements if x in keep]
        return Poset(elems, [(a, b) for a, b in self.pairs if a in keep and b in keep])

    def concat(self, other: Poset) -> Poset:
        overlap = set(self.elements) & set(other.elements)
        if overlap:
            raise OverlappingGroundSets(f"shared elements {sorted(overlap)}")
        rel = list(self.pairs) + list(other.pairs)
        rel += [(a, b) for a in self.elements for b in other.elements]
        return Poset(self.elements + other.elements, rel)

    __mul__ = concat

    def relabel(self, mapping) -> Poset:
        m = {_label(k): _label(v) for k, v in mapping.items()}
        return Poset([m[x] for x in self.elements], [(m[a], m[b]) for a, b in self.pairs])

    def is_down_closed(self, subset) -> bool:
        s = set(subset)
        return all(a in s for a, b in self.pairs if b in s)

    def is_split(self, subset) -> bool:
        """True when every element of ``subset`` lies below every element outside it."""
        s = set(self.check_subset(subset))
        return all(self.less(a, b) for a in s for b in self.elements if b not in s)

    @cached_property
    def _splits(self):
        out = []
        for r in range(1, len(self.elements)):
            for combo in itertools.combinations(self.elements, r):
                if self.is_split(combo):
                    s = set(combo)
                    out.append((tuple(x for x in self.elements if x in s),
                                tuple(x for x in self.elements if x not in s)))
        out.sort(key=lambda st: len(st[0]))
        return tuple(out)

    def splits(self) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
        """All (S, T) with both parts nonempty and P equal to P|S . P|T."""
        return list(self._splits)

    def linear_extensions(self):
        """Yield every linear extension, lexicographically by canonical position."""
        n = len(self.elements)
        below = [[j for j in range(n) if self.lt[j][i]] for i in range(n)]
        chosen = []
        used = [False] * n

        def rec():
            if len(chosen) == n:
                yield tuple(self.elements[i] for i in chosen)
                return
            for i in range(n):
                if not used[i] and all(used[j] for j in below[i]):
                    used[i] = True
                    chosen.append(i)
                    yield from rec()
                    chosen.pop()
                    used[i] = False

        yield from rec()

    def levels(self) -> list[list[str]]:
        """Elements grouped by the length of the longest chain below them."""
        height = {}
        for x in self.elements:
            height[x] = max((height[a] + 1 for a, b in self.covers if b == x), default=0)
        top = max(height.values(), default=-1)
        return [[x for x in self.elements if height[x] == h] for h in range(top + 1)]

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> Poset:
        return poset_from_covers(data.get("elements", []), data.get("covers", []))


def poset_from_covers(elements, covers) -> Poset:
    return Poset(elements, covers)


def poset_restrict(P: Poset, subset) -> Poset:
    return P.restrict(subset)


def poset_concat(P: Poset, Q: Poset) -> Poset:
    return P.concat(Q)


def poset_splits(P: Poset):
    return P.splits()


def linear_extensions(P: Poset):
    return P.linear_extensions()


def linear_order(labels) -> Poset:
    """The chain on ``labels``; an integer n means 1..n."""
    if isinstance(labels, int):
        labels = range(1, labels + 1)
    labels = [_label(x) for x in labels]
    return Poset(labels, list(zip(labels, labels[1:])))


def antichain(labels) -> Poset:
    if isinstance(labels, int):
        labels = range(1, labels + 1)
    return Poset(labels, [])


def empty_poset() -> Poset:
    return Poset([], [])


def all_posets(labels) -> list[Poset]:
    """Every strict partial order on ``labels`` (labelled, not up to isomorphism).

    Built by choosing, for each unordered pair, one of: incomparable, x<y, y<x,
    and keeping the transitively closed choices.  Fine for up to 5 elements.
    """
    if isinstance(labels, int):
        labels = range(1, labels + 1)
    labels = [_label(x) for x in labels]
    unordered = list(itertools.combinations(labels, 2))
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(unordered)):
        rel = set()
        for (a, b), c in zip(unordered, choice):
            if c == 1:
                rel.add((a, b))
            elif c == 2:
                rel.add((b, a))
        closed = all((a, d) in rel for a, b in rel for c, d in rel if b == c)
        if closed:
            out.append(Poset(labels, sorted(rel)))
    return out


def render_hasse_ascii(P: Poset) -> str:
    """Level-by-level text picture, top level first, followed by the cover list."""
    lines = []
    for level in reversed(P.levels()):
        lines.append("  ".join(level))
    if P.covers:
        lines.append("covers: " + ", ".join(f"{a}<{b}" for a, b in P.covers))
    return "\n".join(lines) if lines else "(empty poset)"
