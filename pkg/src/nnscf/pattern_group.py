"""The pattern group U_P = 1 + u_P over GF(q) and brute-force oracles on it.

Elements are stored as tuples of field codes aligned with ``poset.pairs``;
the diagonal is implicitly 1 for group elements.  Enumeration order is
lexicographic on these tuples.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from functools import lru_cache

from .algebra import Field, FieldElement
from .arcs import ArcDiagram, require_nonnesting, on_poset
from .errors import (
    FieldMismatch,
    GroupTooLarge,
    NotAPartition,
    PosetMismatch,
)
from .posets import Poset

DEFAULT_LIMIT = 2 ** 20


def group_limit() -> int:
    value = os.environ.get("NNSCF_LIMIT")
    return int(value) if value else DEFAULT_LIMIT


class PatternGroup:
    """Precomputed structure of U_P for one poset layout and field."""

    def __init__(self, poset: Poset, field: Field):
        self.poset = poset
        self.field = field
        self.q = field.q
        idx = poset.index
        self.pairs = tuple((idx[a], idx[b]) for a, b in poset.pairs)
        self.m = len(self.pairs)
        self.pos = {p: t for t, p in enumerate(self.pairs)}
        n = len(poset.elements)
        lt = poset.lt
        # mids[t] lists (t_ik, t_kj) for every i < k < j
        self.mids = []
        for i, j in self.pairs:
            self.mids.append(tuple((self.pos[(i, k)], self.pos[(k, j)])
                                   for k in range(n) if lt[i][k] and lt[k][j]))
        # inside[t]: other pairs weakly under t; outside[t]: other pairs weakly over t
        def under(inner, outer):
            (k, l), (i, j) = inner, outer
            return inner != outer and (i == k or lt[i][k]) and (l == j or lt[l][j])
        self.inside = tuple(tuple(u for u, pu in enumerate(self.pairs) if under(pu, pt))
                            for pt in self.pairs)
        self.outside = tuple(tuple(u for u, pu in enumerate(self.pairs) if under(pt, pu))
                             for pt in self.pairs)
        # inverse solves row i from the bottom row up
        self.inv_order = sorted(range(self.m), key=lambda t: -self.pairs[t][0])
        # row/column moves used by the generator actions
        self.row_moves = {}
        self.col_moves = {}
        for t, (i, j) in enumerate(self.pairs):
            # left mult by 1 + c e_ij: row i += c * row j
            self.row_moves[t] = tuple((self.pos[(i, l)], self.pos[(j, l)])
                                      for l in range(n) if lt[j][l])
            # right mult by 1 + c e_ij: column j += c * column i
            self.col_moves[t] = tuple((self.pos[(k, j)], self.pos[(k, i)])
                                      for k in range(n) if lt[k][i])
        # dual actions on coordinates: (j,l) += c * (i,l) and (k,i) += c * (k,j)
        self.dual_left = {}
        self.dual_right = {}
        for t, (i, j) in enumerate(self.pairs):
            self.dual_left[t] = tuple((self.pos[(j, l)], self.pos[(i, l)])
                                      for l in range(n) if lt[j][l])
            self.dual_right[t] = tuple((self.pos[(k, i)], self.pos[(k, j)])
                                       for k in range(n) if lt[k][i])
        self.identity = (0,) * self.m

    # -- sizes and enumeration ------------------------------------------------

    @property
    def order(self) -> int:
        return self.q ** self.m

    def check_size(self, limit: int | None = None) -> None:
        limit = group_limit() if limit is None else limit
        if self.order > limit:
            raise GroupTooLarge(f"|U_P| = {self.q}^{self.m} exceeds the limit {limit}")

    def codes(self, limit: int | None = None):
        self.check_size(limit)
        return itertools.product(range(self.q), repeat=self.m)

    def rank(self, x) -> int:
        r = 0
        q = self.q
        for c in x:
            r = r * q + c
        return r

    # -- arithmetic on code tuples ------------------------------------------------

    def mul(self, x, y):
        add, mul = self.field.add_table, self.field.mul_table
        out = []
        for t in range(self.m):
            z = add[x[t]][y[t]]
            for a, b in self.mids[t]:
                xa, yb = x[a], y[b]
                if xa and yb:
                    z = add[z][mul[xa][yb]]
            out.append(z)
        return tuple(out)

    def inv(self, x):
        add, mul, neg = self.field.add_table, self.field.mul_table, self.field.neg_table
        h = [0] * self.m
        for t in self.inv_order:
            z = x[t]
            for a, b in self.mids[t]:
                if x[a] and h[b]:
                    z = add[z][mul[x[a]][h[b]]]
            h[t] = neg[z]
        return tuple(h)

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def sml(self, x) -> tuple:
        """Positions t that are nonzero with nothing nonzero weakly underneath."""
        return tuple(t for t in range(self.m)
                     if x[t] and not any(x[u] for u in self.inside[t]))

    def big(self, lam) -> tuple:
        return tuple(t for t in range(self.m)
                     if lam[t] and not any(lam[u] for u in self.outside[t]))

    def sml_key(self, x) -> tuple:
        """Hashable (position, label) description of sml(x)."""
        return tuple((t, x[t]) for t in self.sml(x))

    def big_key(self, lam) -> tuple:
        return tuple((t, lam[t]) for t in self.big(lam))

    def diagram(self, key) -> ArcDiagram:
        return ArcDiagram(self.poset, self.field,
                          [self.pairs[t] + (c,) for t, c in key])

    def key_of(self, eta: ArcDiagram) -> tuple:
        eta = on_poset(eta, self.poset)
        return tuple(sorted((self.pos[(s, d)], c) for s, d, c in eta.raw))

    def generators(self):
        return [(t, c) for t in range(self.m) for c in range(1, self.q)]

    def _apply_moves(self, x, moves, c):
        add, mul = self.field.add_table, self.field.mul_table
        y = list(x)
        for dst, src in moves:
            if x[src]:
                y[dst] = add[y[dst]][mul[c][x[src]]]
        return tuple(y)

    def _closure(self, start, step, limit):
        self.check_size(limit)
        seen = {start}
        queue = deque([start])
        gens = self.generators()
        while queue:
            x = queue.popleft()
            for t, c in gens:
                for y in step(x, t, c):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return seen

    def two_sided_orbit(self, x, limit=None) -> set:
        def step(v, t, c):
            return (self._apply_moves(v, self.row_moves[t], c),
                    self._apply_moves(v, self.col_moves[t], c))
        return self._closure(tuple(x), step, limit)

    def dual_orbit(self, lam, limit=None) -> set:
        def step(v, t, c):
            return (self._apply_moves(v, self.dual_left[t], c),
                    self._apply_moves(v, self.dual_right[t], c))
        return self._closure(tuple(lam), step, limit)

    def conjugacy_classes(self, limit=None) -> list[list[tuple]]:
        """All conjugacy classes, each sorted, in order of their first element."""
        self.check_size(limit)
        gens = []
        for t, c in self.generators():
            g = tuple(c if u == t else 0 for u in range(self.m))
            gens.append((g, self.inv(g)))
        seen = set()
        classes = []
        for x in self.codes(limit):
            if x in seen:
                continue
            cls = {x}
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for g, gi in gens:
                    z = self.mul(self.mul(g, y), gi)
                    if z not in cls:
                        cls.add(z)
                        queue.append(z)
            seen |= cls
            classes.append(sorted(cls))
        return classes

    # -- superclasses and U_eta --------------------------------------------------------

    def zero_positions(self, key) -> set:
        """Pairs forced to vanish in U_eta: strictly weakly under some arc of eta."""
        out = set()
        for t, _ in key:
            out.update(self.inside[t])
        return out

    def superclass_free_positions(self, key) -> list:
        """Non-arc positions left free by the closed description of K_nu."""
        arcs = {t for t, _ in key}
        return [t for t in range(self.m)
                if t not in arcs and any(u in arcs for u in self.inside[t])]

    def superclass_closed_form(self, key, limit=None):
        """Members of K_nu built from the arc/free-entry description, not from sml."""
        self.check_size(limit)
        free = self.superclass_free_positions(key)
        base = [0] * self.m
        for t, c in key:
            base[t] = c
        out = []
        for vals in itertools.product(range(self.q), repeat=len(free)):
            x = list(base)
            for t, v in zip(free, vals):
                x[t] = v
            out.append(tuple(x))
        out.sort()
        return out

    def u_eta(self, key, limit=None):
        self.check_size(limit)
        zero = self.zero_positions(key)
        free = [t for t in range(self.m) if t not in zero]
        out = []
        for vals in itertools.product(range(self.q), repeat=len(free)):
            x = [0] * self.m
            for t, v in zip(free, vals):
                x[t] = v
            out.append(tuple(x))
        out.sort()
        return out


@lru_cache(maxsize=256)
def _group_cached(elements, pairs, field):
    return PatternGroup(Poset(elements, pairs), field)


def pattern_group(poset: Poset, field: Field) -> PatternGroup:
    g = _group_cached(poset.elements, poset.pairs, field)
    return g


# -- public element types -------------------------------------------------------------

class _Matrixish:
    """Shared plumbing for sparse matrices and functionals supported on P."""

    __slots__ = ("group", "codes")

    def __init__(self, poset: Poset, field: Field, entries=None, *, codes=None):
        G = pattern_group(poset, field)
        if codes is None:
            x = [0] * G.m
            for (a, b), v in (entries or {}).items():
                a, b = str(a), str(b)
                poset.check_subset([a, b])
                key = (poset.index[a], poset.index[b])
                if key not in G.pos:
                    raise PosetMismatch(f"({a},{b}) is not a strict pair of the poset")
                x[G.pos[key]] = field(v).code
            codes = tuple(x)
        self.group = G
        self.codes = tuple(codes)

    @classmethod
    def _wrap(cls, G: PatternGroup, codes):
        obj = object.__new__(cls)
        obj.group = G
        obj.codes = tuple(codes)
        return obj

    @property
    def poset(self) -> Poset:
        return self.group.poset

    @property
    def field(self) -> Field:
        return self.group.field

    @property
    def entries(self) -> dict:
        els = self.poset.elements
        return {(els[i], els[j]): FieldElement(self.field, c)
                for (i, j), c in zip(self.group.pairs, self.codes) if c}

    def _label_key(self):
        els = self.poset.elements
        return frozenset(((els[i], els[j]), c) for (i, j), c in zip(self.group.pairs, self.codes) if c)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.group is other.group:
            return self.codes == other.codes
        return (self.poset == other.poset and self.field == other.field
                and self._label_key() == other._label_key())

    def __hash__(self):
        return hash((type(self).__name__, self.poset, self._label_key()))

    def __repr__(self):
        body = ", ".join(f"{a}{b}:{v}" for (a, b), v in self.entries.items())
        return f"{type(self).__name__}({body})"

    def _same(self, other):
        if self.field != other.field:
            raise FieldMismatch("elements over different fields")
        if self.poset != other.poset:
            raise PosetMismatch("elements of different pattern groups")
        if self.group is other.group:
            return other.codes
        return type(other)(self.poset, self.field, {k: v for k, v in other.entries.items()}).codes

    def to_json(self) -> dict:
        return {"entries": [{"row": a, "col": b, "value": list(v.coeffs)}
                            for (a, b), v in self.entries.items()]}

    @classmethod
    def from_json(cls, poset: Poset, field: Field, data: dict):
        entries = {}
        for item in data.get("entries", []):
            entries[(item["row"], item["col"])] = item["value"]
        return cls(poset, field, entries)


class GroupElement(_Matrixish):
    """1 + x with x supported on the strict pairs of P."""

    __slots__ = ()

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement._wrap(self.group, self.group.mul(self.codes, self._same(other)))

    def inverse(self) -> GroupElement:
        return GroupElement._wrap(self.group, self.group.inv(self.codes))

    def is_identity(self) -> bool:
        return not any(self.codes)


class AlgebraElement(_Matrixish):
    __slots__ = ()


class Functional(_Matrixish):
    """A linear functional on u_P, given by its values on the e_ij."""

    __slots__ = ()

    def __call__(self, x: AlgebraElement) -> FieldElement:
        add, mul = self.field.add_table, self.field.mul_table
        total = 0
        for a, b in zip(self.codes, self._same(x) if not isinstance(x, tuple) else x):
            if a and b:
                total = add[total][mul[a][b]]
        return FieldElement(self.field, total)


def identity(poset: Poset, field: Field) -> GroupElement:
    G = pattern_group(poset, field)
    return GroupElement._wrap(G, G.identity)


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def group_inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def f_map(g: GroupElement) -> AlgebraElement:
    return AlgebraElement._wrap(g.group, g.codes)


def f_inv(x: AlgebraElement) -> GroupElement:
    return GroupElement._wrap(x.group, x.codes)


def enumerate_group(poset: Poset, field: Field, limit: int | None = None):
    G = pattern_group(poset, field)
    for x in G.codes(limit):
        yield GroupElement._wrap(G, x)


def sml_of_element(g: GroupElement) -> ArcDiagram:
    return g.group.diagram(g.group.sml_key(g.codes))


def big_of_functional(lam: Functional) -> ArcDiagram:
    return lam.group.diagram(lam.group.big_key(lam.codes))


def superclass_of(g: GroupElement) -> ArcDiagram:
    return sml_of_element(g)


def superclass_members(poset: Poset, field: Field, nu: ArcDiagram, limit=None) -> list[GroupElement]:
    require_nonnesting(nu)
    G = pattern_group(poset, field)
    key = G.key_of(nu)
    return [GroupElement._wrap(G, x) for x in G.codes(limit) if G.sml_key(x) == key]


def superclass_closed_form(poset: Poset, field: Field, nu: ArcDiagram, limit=None) -> list[GroupElement]:
    require_nonnesting(nu)
    G = pattern_group(poset, field)
    return [GroupElement._wrap(G, x) for x in G.superclass_closed_form(G.key_of(nu), limit)]


def superclass_size(nu: ArcDiagram) -> int:
    G = pattern_group(nu.poset, nu.field)
    return nu.field.q ** len(G.superclass_free_positions(G.key_of(nu)))


def superclass_representative(nu: ArcDiagram) -> GroupElement:
    """The element with the arcs of nu as its only nonzero entries."""
    G = pattern_group(nu.poset, nu.field)
    x = [0] * G.m
    for t, c in G.key_of(nu):
        x[t] = c
    return GroupElement._wrap(G, x)


def two_sided_orbit(x: AlgebraElement, limit=None) -> list[AlgebraElement]:
    G = x.group
    return [AlgebraElement._wrap(G, y) for y in sorted(G.two_sided_orbit(x.codes, limit))]


def dual_orbit(lam: Functional, limit=None) -> list[Functional]:
    G = lam.group
    return [Functional._wrap(G, y) for y in sorted(G.dual_orbit(lam.codes, limit))]


def conjugacy_classes(poset: Poset, field: Field, limit=None) -> list[list[GroupElement]]:
    G = pattern_group(poset, field)
    return [[GroupElement._wrap(G, x) for x in cls] for cls in G.conjugacy_classes(limit)]


def u_eta_zero_pairs(eta: ArcDiagram) -> list[tuple[str, str]]:
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    els = eta.poset.elements
    return [(els[G.pairs[t][0]], els[G.pairs[t][1]]) for t in sorted(G.zero_positions(G.key_of(eta)))]


def u_eta_subgroup(eta: ArcDiagram, limit=None) -> list[GroupElement]:
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    return [GroupElement._wrap(G, x) for x in G.u_eta(G.key_of(eta), limit)]


def u_eta_index(eta: ArcDiagram) -> int:
    """|U_P : U_eta| read off from the zero pattern."""
    G = pattern_group(eta.poset, eta.field)
    return eta.field.q ** len(G.zero_positions(G.key_of(eta)))


def functional_of(eta: ArcDiagram) -> Functional:
    """lambda_eta: the labels of eta on its arcs, zero elsewhere."""
    G = pattern_group(eta.poset, eta.field)
    x = [0] * G.m
    for t, c in G.key_of(eta):
        x[t] = c
    return Functional._wrap(G, x)


# -- pi and sigma -----------------------------------------------------------------------

def _split_parts(poset: Poset, S, T):
    S = poset.check_subset(S)
    T = poset.check_subset(T)
    if set(S) & set(T) or set(S) | set(T) != set(poset.elements) or len(S) + len(T) != len(poset):
        raise NotAPartition("S and T must partition the ground set")
    return S, T


def _transfer_map(src: PatternGroup, dst: PatternGroup):
    """For each position of dst, the matching position of src (same labels)."""
    de = dst.poset.elements
    out = []
    for i, j in dst.pairs:
        key = (src.poset.index[de[i]], src.poset.index[de[j]])
        out.append(src.pos[key])
    return tuple(out)


@lru_cache(maxsize=1024)
def _pi_maps(whole: PatternGroup, S_group: PatternGroup, T_group: PatternGroup):
    return _transfer_map(whole, S_group), _transfer_map(whole, T_group)


def pi_codes(whole: PatternGroup, S_group: PatternGroup, T_group: PatternGroup, x):
    ms, mt = _pi_maps(whole, S_group, T_group)
    return tuple(x[t] for t in ms), tuple(x[t] for t in mt)


@lru_cache(maxsize=1024)
def _sigma_map(whole: PatternGroup, S_group: PatternGroup, T_group: PatternGroup):
    """For each position of the ambient group: ('S', t), ('T', t) or None for mixed pairs."""
    out = []
    els = whole.poset.elements
    for i, j in whole.pairs:
        a, b = els[i], els[j]
        found = None
        for tag, sub in (("S", S_group), ("T", T_group)):
            if a in sub.poset.index and b in sub.poset.index:
                found = (tag, sub.pos[(sub.poset.index[a], sub.poset.index[b])])
        out.append(found)
    return tuple(out)


def sigma_codes(whole: PatternGroup, S_group: PatternGroup, T_group: PatternGroup, g, h):
    out = []
    for slot in _sigma_map(whole, S_group, T_group):
        if slot is None:
            out.append(0)
        elif slot[0] == "S":
            out.append(g[slot[1]])
        else:
            out.append(h[slot[1]])
    return tuple(out)


def project_pi(g: GroupElement, S, T) -> tuple[GroupElement, GroupElement]:
    """g -> (g_S, g_T) for g in U_{P|S . P|T}."""
    P = g.poset
    S, T = _split_parts(P, S, T)
    if not P.is_split(S):
        raise PosetMismatch("pi needs the poset to be the concatenation P|S . P|T")
    GS = pattern_group(P.restrict(S), g.field)
    GT = pattern_group(P.restrict(T), g.field)
    a, b = pi_codes(g.group, GS, GT, g.codes)
    return GroupElement._wrap(GS, a), GroupElement._wrap(GT, b)


def embed_sigma(g: GroupElement, h: GroupElement, ambient: Poset) -> GroupElement:
    """Block-diagonal embedding U_{P|S} x U_{P|T} -> U_P; mixed entries are 0."""
    S, T = _split_parts(ambient, g.poset.elements, h.poset.elements)
    if ambient.restrict(S) != g.poset or ambient.restrict(T) != h.poset:
        raise PosetMismatch("factors are not restrictions of the ambient poset")
    W = pattern_group(ambient, g.field)
    return GroupElement._wrap(W, sigma_codes(W, g.group, h.group, g.codes, h.codes))
