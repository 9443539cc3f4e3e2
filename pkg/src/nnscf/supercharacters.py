"""Supercharacter tables: closed formulas, brute-force oracles and SCT verification."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import CycNumber, Field
from .arcs import (
    ArcDiagram,
    NN,
    big_partition,
    crossing_set,
    enumerate_diagrams,
    nst,
    on_poset,
    require_nonnesting,
    sml_partition,
)
from .errors import GroupMismatch, NotLinearOrder, PosetMismatch
from .pattern_group import PatternGroup, pattern_group
from .posets import Poset


def _under(lt, inner, outer):
    (k, l), (i, j) = inner, outer
    return inner != outer and (i == k or lt[i][k]) and (l == j or lt[l][j])


def _same_setting(eta: ArcDiagram, nu: ArcDiagram):
    if eta.poset != nu.poset or eta.field != nu.field:
        raise PosetMismatch("diagrams live on different posets or fields")
    return on_poset(nu, eta.poset)


# -- nonnesting theory, closed formulas -------------------------------------------------

def supercharacter_dim(eta: ArcDiagram) -> int:
    """q to the number of pairs lying weakly under an arc of eta (other than the arc)."""
    require_nonnesting(eta)
    lt = eta.poset.lt
    arcs = [(s, d) for s, d, _ in eta.raw]
    idx = eta.poset.index
    count = 0
    for a, b in eta.poset.pairs:
        pair = (idx[a], idx[b])
        if any(_under(lt, pair, arc) for arc in arcs):
            count += 1
    return eta.field.q ** count


def supercharacter_value(eta: ArcDiagram, nu: ArcDiagram) -> CycNumber:
    require_nonnesting(eta)
    require_nonnesting(nu)
    nu = _same_setting(eta, nu)
    field = eta.field
    lt = eta.poset.lt
    for s, d, _ in nu.raw:
        if any(_under(lt, (s, d), (i, j)) for i, j, _ in eta.raw):
            return CycNumber.zero(field.p)
    labels = {(s, d): c for s, d, c in nu.raw}
    exponent = 0
    for i, j, a in eta.raw:
        b = labels.get((i, j))
        if b:
            exponent += field.trmul_table[a][b]
    return CycNumber.zeta(field.p, exponent) * supercharacter_dim(eta)


@dataclass
class SupercharacterTable:
    poset: Poset
    field: Field
    rows: list
    cols: list
    values: list
    class_sizes: list
    dims: list
    theory: str = "nonnesting"
    checks: dict = dc_field(default_factory=dict)

    def value(self, eta, nu) -> CycNumber:
        return self.values[self.rows.index(eta)][self.cols.index(nu)]


def supercharacter_table(poset: Poset, field: Field) -> SupercharacterTable:
    from .pattern_group import superclass_size
    diagrams = NN(poset, field)
    values = [[supercharacter_value(eta, nu) for nu in diagrams] for eta in diagrams]
    return SupercharacterTable(
        poset, field, diagrams, diagrams, values,
        [superclass_size(nu) for nu in diagrams],
        [supercharacter_dim(eta) for eta in diagrams])


# -- algebra-group theory on linear orders ---------------------------------------------------

def _require_linear(poset: Poset):
    if not poset.is_linear():
        raise NotLinearOrder("the algebra-group formulas need a linear order")


def algebra_dim_linear(eta: ArcDiagram) -> int:
    _require_linear(eta.poset)
    spread = sum(d - s - 1 for s, d, _ in eta.raw)
    return eta.field.q ** (2 * spread - len(crossing_set(eta)))


def algebra_supercharacter_linear(eta: ArcDiagram, nu: ArcDiagram) -> CycNumber:
    _require_linear(eta.poset)
    nu = _same_setting(eta, nu)
    field = eta.field
    nu_pairs = {(s, d): c for s, d, c in nu.raw}
    for i, j, _ in eta.raw:
        for k in range(i + 1, j):
            if (i, k) in nu_pairs or (k, j) in nu_pairs:
                return CycNumber.zero(field.p)
    exponent = 0
    for i, j, a in eta.raw:
        b = nu_pairs.get((i, j))
        if b:
            exponent += field.trmul_table[a][b]
    scale = Fraction(algebra_dim_linear(eta), field.q ** nst(nu, eta))
    return CycNumber.zeta(field.p, exponent) * scale


def algebra_table(poset: Poset, field: Field, with_class_sizes: bool = True) -> SupercharacterTable:
    _require_linear(poset)
    diagrams = enumerate_diagrams(poset, field, nonnesting_only=False)
    values = [[algebra_supercharacter_linear(eta, nu) for nu in diagrams] for eta in diagrams]
    sizes = []
    if with_class_sizes:
        G = pattern_group(poset, field)
        for nu in diagrams:
            sizes.append(len(G.two_sided_orbit(_point(G, nu))))
    return SupercharacterTable(poset, field, diagrams, diagrams, values, sizes,
                               [algebra_dim_linear(eta) for eta in diagrams], theory="algebra")


def _point(G: PatternGroup, eta: ArcDiagram):
    x = [0] * G.m
    for t, c in G.key_of(eta):
        x[t] = c
    return tuple(x)


# -- class functions ----------------------------------------------------------------------------

class ClassFunction:
    """A function on U_P stored as one value per element, in enumeration order."""

    def __init__(self, group: PatternGroup, values):
        self.group = group
        self.values = tuple(values)
        if len(self.values) != group.order:
            raise ValueError("wrong number of values")

    @property
    def poset(self):
        return self.group.poset

    @property
    def field(self):
        return self.group.field

    def __call__(self, g) -> CycNumber:
        codes = g if isinstance(g, tuple) else g.codes
        return self.values[self.group.rank(codes)]

    def _check(self, other):
        if other.group is not self.group:
            if other.poset != self.poset or other.field != self.field \
                    or other.poset.elements != self.poset.elements:
                raise GroupMismatch("class functions on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> ClassFunction:
        return ClassFunction(self.group, [v * c for v in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def is_constant_on(self, members) -> bool:
        vals = {self(x) for x in members}
        return len(vals) <= 1

    @classmethod
    def constant(cls, group: PatternGroup, value=1):
        return cls(group, [CycNumber.rational(group.field.p, value)] * group.order)

    @classmethod
    def regular(cls, group: PatternGroup):
        p = group.field.p
        zero = CycNumber.zero(p)
        vals = [zero] * group.order
        vals[0] = CycNumber.rational(p, group.order)
        return cls(group, vals)


def inner_product(phi: ClassFunction, psi: ClassFunction) -> CycNumber:
    """(1/|G|) sum_g phi(g) conj(psi(g))."""
    phi._check(psi)
    p = phi.field.p
    total = CycNumber.zero(p)
    for (a, b), n in Counter(zip(phi.values, psi.values)).items():
        if a.is_zero() or b.is_zero():
            continue
        total = total + a * b.conj() * n
    return total * Fraction(1, phi.group.order)


def _zeta_scaled(p: int, scale) -> list[CycNumber]:
    return [CycNumber.zeta(p, k) * scale for k in range(p)]


def ind_res_character(eta: ArcDiagram, limit=None) -> ClassFunction:
    """|U:U_eta| theta(lambda_eta(f(g))) on U_eta, zero elsewhere."""
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    key = G.key_of(eta)
    zero_pos = sorted(G.zero_positions(key))
    index = eta.field.q ** len(zero_pos)
    p = eta.field.p
    trmul = eta.field.trmul_table
    cache = _zeta_scaled(p, index)
    zero = CycNumber.zero(p)
    vals = []
    for x in G.codes(limit):
        if any(x[t] for t in zero_pos):
            vals.append(zero)
        else:
            vals.append(cache[sum(trmul[c][x[t]] for t, c in key) % p])
    return ClassFunction(G, vals)


def _functional_sums(G: PatternGroup, functionals, limit=None):
    """Sum of theta(mu(f(g))) over the given functionals, for every g."""
    p = G.field.p
    trmul = G.field.trmul_table
    elements = list(G.codes(limit))
    counts = [[0] * p for _ in elements]
    m = G.m
    for mu in functionals:
        support = [(t, mu[t]) for t in range(m) if mu[t]]
        for r, x in enumerate(elements):
            counts[r][sum(trmul[c][x[t]] for t, c in support) % p] += 1
    return ClassFunction(G, [CycNumber.from_exponent_counts(p, row) for row in counts])


def big_fiber_characters(poset: Poset, field: Field, limit=None) -> dict:
    """For every eta, the sum of theta o mu o f over functionals mu with big(mu) = eta."""
    G = pattern_group(poset, field)
    fibers = defaultdict(list)
    for mu in G.codes(limit):
        fibers[G.big_key(mu)].append(mu)
    return {G.diagram(key): _functional_sums(G, mus, limit) for key, mus in fibers.items()}


def big_fiber_character(eta: ArcDiagram, limit=None) -> ClassFunction:
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    key = G.key_of(eta)
    mus = [mu for mu in G.codes(limit) if G.big_key(mu) == key]
    return _functional_sums(G, mus, limit)


def nonnesting_character(eta: ArcDiagram, limit=None) -> ClassFunction:
    """chi_eta evaluated on every element through the closed formula."""
    G = pattern_group(eta.poset, eta.field)
    cache = {}
    vals = []
    for x in G.codes(limit):
        key = G.sml_key(x)
        if key not in cache:
            cache[key] = supercharacter_value(eta, G.diagram(key))
        vals.append(cache[key])
    return ClassFunction(G, vals)


def algebra_orbit_character(eta: ArcDiagram, limit=None) -> ClassFunction:
    """Sum of theta o mu o f over the two-sided dual orbit of lambda_eta."""
    G = pattern_group(eta.poset, eta.field)
    orbit = G.dual_orbit(_point(G, eta), limit)
    return _functional_sums(G, sorted(orbit), limit)


def algebra_superclass(nu: ArcDiagram, limit=None) -> list:
    """f^{-1}(U x_nu U) as sorted code tuples."""
    G = pattern_group(nu.poset, nu.field)
    return sorted(G.two_sided_orbit(_point(G, nu), limit))


def coarsen_from_algebra(eta: ArcDiagram, limit=None) -> ClassFunction:
    """Sum of the algebra-group supercharacters chi_nu over nu with big(nu) = eta."""
    _require_linear(eta.poset)
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    mus = set()
    for nu in enumerate_diagrams(eta.poset, eta.field, nonnesting_only=False):
        if big_partition(nu) == eta:
            mus |= G.dual_orbit(_point(G, nu), limit)
    return _functional_sums(G, sorted(mus), limit)


def coarsen_superclass(eta: ArcDiagram, limit=None) -> list:
    """Union of the algebra-group superclasses of nu over nu with sml(nu) = eta."""
    _require_linear(eta.poset)
    require_nonnesting(eta)
    G = pattern_group(eta.poset, eta.field)
    members = set()
    for nu in enumerate_diagrams(eta.poset, eta.field, nonnesting_only=False):
        if sml_partition(nu) == eta:
            members |= G.two_sided_orbit(_point(G, nu), limit)
    return sorted(members)


# -- SCT verification --------------------------------------------------------------------------------

def _check(report, name, passed, witness=None):
    report["checks"].append({"name": name, "passed": bool(passed), "witness": witness})


def verify_sct(poset: Poset, field: Field, limit=None, big_fiber: bool = False) -> dict:
    """Run the supercharacter-theory checks; returns a report with one entry per check."""
    G = pattern_group(poset, field)
    G.check_size(limit)
    diagrams = NN(poset, field)
    report = {"poset": poset.to_json(), "field": field.to_json(),
              "group_order": G.order, "supercharacters": len(diagrams), "checks": []}
    elements = list(G.codes(limit))
    fiber = defaultdict(list)
    for x in elements:
        fiber[G.sml_key(x)].append(x)
    keys = [G.key_of(nu) for nu in diagrams]

    # (a) partition into superclasses, each a union of conjugacy classes
    witness = None
    if set(fiber) != set(keys):
        witness = {"stray": [repr(G.diagram(k)) for k in set(fiber) ^ set(keys)]}
    else:
        for k in keys:
            closed = G.superclass_closed_form(k, limit)
            if closed != sorted(fiber[k]):
                witness = {"superclass": repr(G.diagram(k)), "reason": "closed form differs"}
                break
    if witness is None:
        for cls in G.conjugacy_classes(limit):
            labels = {G.sml_key(x) for x in cls}
            if len(labels) > 1:
                witness = {"conjugacy_class": [list(x) for x in cls[:4]]}
                break
    _check(report, "superclasses partition the group into unions of conjugacy classes",
           witness is None, witness)

    # (b) as many supercharacters as superclasses
    _check(report, "SCT1", len(diagrams) == len(fiber),
           None if len(diagrams) == len(fiber) else {"characters": len(diagrams), "classes": len(fiber)})

    # (c) constancy and agreement with the closed formula
    chars = {}
    witness = None
    for eta in diagrams:
        chi = ind_res_character(eta, limit)
        chars[eta] = chi
        if chi.values[0] != supercharacter_dim(eta) or \
                supercharacter_dim(eta) != len(elements) // len(G.u_eta(G.key_of(eta), limit)):
            witness = {"eta": repr(eta), "reason": "dimension mismatch"}
        for k, nu in zip(keys, diagrams):
            if witness:
                break
            vals = {chi.values[G.rank(x)] for x in fiber[k]}
            if len(vals) != 1:
                witness = {"eta": repr(eta), "nu": repr(nu), "reason": "not constant"}
            elif vals.pop() != supercharacter_value(eta, nu):
                witness = {"eta": repr(eta), "nu": repr(nu), "reason": "formula differs"}
        if witness:
            break
    if witness is None and big_fiber:
        for eta, psi in big_fiber_characters(poset, field, limit).items():
            if psi != chars[on_poset(eta, poset)]:
                witness = {"eta": repr(eta), "reason": "big-fiber sum differs"}
                break
    _check(report, "SCT2", witness is None, witness)

    # (d) orthogonality
    witness = None
    for a, b in itertools.combinations_with_replacement(diagrams, 2):
        ip = inner_product(chars[a], chars[b])
        if a == b:
            ok = ip.is_rational() and ip.rational_value() > 0
        else:
            ok = ip.is_zero()
        if not ok:
            witness = {"eta": repr(a), "nu": repr(b), "inner_product": str(ip)}
            break
    _check(report, "orthogonality", witness is None, witness)

    # (e) regular character
    total = ClassFunction(G, [CycNumber.zero(field.p)] * G.order)
    for chi in chars.values():
        total = total + chi
    regular = ClassFunction.regular(G)
    witness = None
    if total != regular:
        r = next(r for r in range(G.order) if total.values[r] != regular.values[r])
        witness = {"element": list(elements[r]), "value": str(total.values[r])}
    _check(report, "sum of supercharacters is the regular character", witness is None, witness)

    report["passed"] = all(c["passed"] for c in report["checks"])
    return report
