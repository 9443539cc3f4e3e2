"""The Hopf monoid of nonnesting superclass functions.

A superclass function on U_P is stored as an ``ScfVector``: coefficients over
nonnesting diagrams in one of three bases,

* ``kappa``: indicator functions of the superclasses K_eta,
* ``powersum`` (alias ``p``): p_eta = sum of kappa_nu over nu containing eta,
* ``chi``: the supercharacters.

Products and coproducts exist in two forms: the functional definitions
(inflation along pi and restriction along sigma, computed on the groups) and
the combinatorial basis formulas.  Tensors of superclass functions are
``Tensor`` objects keyed by tuples of diagrams.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .algebra import CycNumber, Field
from .arcs import (
    ArcDiagram,
    NN,
    atomic_factorization,
    disjoint_union,
    empty_diagram,
    is_atomic,
    on_poset,
    proj,
    reassemble,
    restrict,
    sml_partition,
)
from .errors import (
    FieldMismatch,
    GroundSetOverlap,
    GroundSetTooLarge,
    InternalCheckFailure,
    NotABijection,
    NotAPartition,
)
from .pattern_group import pattern_group, pi_codes, sigma_codes, superclass_size
from .posets import Poset, all_posets, empty_poset, linear_order
from .supercharacters import supercharacter_dim, supercharacter_value

BASES = ("kappa", "powersum", "chi")


def basis_name(name: str) -> str:
    name = {"p": "powersum", "k": "kappa", "x": "chi"}.get(name, name)
    if name not in BASES:
        raise ValueError(f"unknown basis {name!r}")
    return name


# -- per-poset data: diagrams, containment, table -----------------------------------------

class _Space:
    def __init__(self, poset: Poset, field: Field):
        self.poset = poset
        self.field = field
        self.diagrams = NN(poset, field)
        self.index = {d: k for k, d in enumerate(self.diagrams)}
        self.supersets = [[nu for nu in self.diagrams if eta.issubset(nu)] for eta in self.diagrams]
        self._table = None

    @property
    def table(self):
        if self._table is None:
            ds = self.diagrams
            sizes = [superclass_size(nu) for nu in ds]
            values = [[supercharacter_value(eta, nu) for nu in ds] for eta in ds]
            norms = []
            for row in values:
                norms.append(sum((v * v.conj() * s for v, s in zip(row, sizes)),
                                 CycNumber.zero(self.field.p)))
            self._table = (sizes, values, norms)
        return self._table

    def to_kappa(self, basis: str, eta: ArcDiagram) -> dict:
        if basis == "kappa":
            return {eta: CycNumber.one(self.field.p)}
        k = self.index[eta]
        if basis == "powersum":
            one = CycNumber.one(self.field.p)
            return {nu: one for nu in self.supersets[k]}
        _, values, _ = self.table
        return {nu: v for nu, v in zip(self.diagrams, values[k]) if not v.is_zero()}

    def from_kappa(self, basis: str, coeffs: dict) -> dict:
        if basis == "kappa":
            return dict(coeffs)
        out = defaultdict(lambda: CycNumber.zero(self.field.p))
        if basis == "powersum":
            for eta, c in coeffs.items():
                for nu in self.supersets[self.index[eta]]:
                    sign = -1 if (len(nu) - len(eta)) % 2 else 1
                    out[nu] = out[nu] + c * sign
            return dict(out)
        sizes, values, norms = self.table
        for k, eta in enumerate(self.diagrams):
            total = CycNumber.zero(self.field.p)
            for nu, c in coeffs.items():
                j = self.index[nu]
                v = values[k][j]
                if not v.is_zero():
                    total = total + c * v.conj() * sizes[j]
            if not total.is_zero():
                out[eta] = total / norms[k]
        return dict(out)


@lru_cache(maxsize=512)
def _space_cached(elements, pairs, field):
    return _Space(Poset(elements, pairs), field)


def space(poset: Poset, field: Field) -> _Space:
    return _space_cached(poset.elements, poset.pairs, field)


def _clean(coeffs: dict) -> dict:
    return {k: v for k, v in coeffs.items() if not v.is_zero()}


def _accumulate(target: dict, key, value, p):
    cur = target.get(key)
    target[key] = value if cur is None else cur + value


# -- tensors -----------------------------------------------------------------------------

class Tensor:
    """A finite sum of coefficient * (b_{d1} (x) ... (x) b_{dk}) in one basis.

    Each key is a tuple of diagrams; slot i of every key has the same ground
    set, while the posets may vary from term to term.  A 1-slot tensor is an
    element of the species; ``ScfVector`` is the single-poset special case.
    """

    def __init__(self, field: Field, basis: str, coeffs: dict, grounds=None):
        self.field = field
        self.basis = basis_name(basis)
        self.coeffs = _clean({k: v if isinstance(v, CycNumber) else CycNumber.rational(field.p, v)
                              for k, v in coeffs.items()})
        if grounds is None:
            key = next(iter(self.coeffs), None)
            if key is None:
                raise ValueError("an empty tensor needs explicit ground sets")
            grounds = tuple(frozenset(d.poset.elements) for d in key)
        self.grounds = tuple(frozenset(g) for g in grounds)

    @property
    def arity(self) -> int:
        return len(self.grounds)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.basis != other.basis:
            other = other.to_basis(self.basis)
        return self.grounds == other.grounds and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def __add__(self, other: Tensor) -> Tensor:
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _accumulate(out, k, v, self.field.p)
        return Tensor(self.field, self.basis, out, self.grounds)

    def __sub__(self, other: Tensor) -> Tensor:
        return self + other.scale(-1)

    def scale(self, c) -> Tensor:
        return Tensor(self.field, self.basis, {k: v * c for k, v in self.coeffs.items()}, self.grounds)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for key, c in sorted(self.coeffs.items(), key=lambda kv: _sort_key(kv[0])):
            terms.append(f"({c})*" + " (x) ".join(f"{self.basis}{d!r}" for d in key))
        return " + ".join(terms)

    def to_basis(self, basis: str) -> Tensor:
        basis = basis_name(basis)
        if basis == self.basis:
            return self
        out = self
        for slot in range(self.arity):
            out = out._convert_slot(slot, self.basis, basis)
        return out

    def _convert_slot(self, slot: int, source: str, basis: str) -> Tensor:
        # rewrite every diagram in the slot through the kappa basis
        out = {}
        by_poset = defaultdict(dict)
        for key, c in self.coeffs.items():
            by_poset[(key[:slot], key[slot + 1:], key[slot].poset.elements, key[slot].poset.pairs)][key[slot]] = c
        for (pre, post, els, prs), vec in by_poset.items():
            sp = space(Poset(els, prs), self.field)
            kap = {}
            for d, c in vec.items():
                for nu, v in sp.to_kappa(source, on_poset(d, sp.poset)).items():
                    _accumulate(kap, nu, c * v, self.field.p)
            for nu, v in sp.from_kappa(basis, _clean(kap)).items():
                _accumulate(out, pre + (nu,) + post, v, self.field.p)
        return Tensor(self.field, basis, out, self.grounds)

    def permute(self, order) -> Tensor:
        """Reorder slots: new slot i is old slot order[i]."""
        return Tensor(self.field, self.basis,
                      {tuple(k[i] for i in order): v for k, v in self.coeffs.items()},
                      tuple(self.grounds[i] for i in order))

    def map_slot(self, slot: int, fn, new_grounds) -> Tensor:
        """Replace slot ``slot`` by the tensor fn(diagram) (same basis as self)."""
        out = {}
        for key, c in self.coeffs.items():
            image = fn(key[slot])
            if image.basis != self.basis:
                image = image.to_basis(self.basis)
            for sub, v in image.coeffs.items():
                _accumulate(out, key[:slot] + sub + key[slot + 1:], c * v, self.field.p)
        grounds = self.grounds[:slot] + tuple(new_grounds) + self.grounds[slot + 1:]
        return Tensor(self.field, self.basis, out, grounds)

    def merge_slots(self, slot: int, fn) -> Tensor:
        """Combine slots ``slot`` and ``slot+1`` with the bilinear map fn(d1, d2)."""
        out = {}
        for key, c in self.coeffs.items():
            image = fn(key[slot], key[slot + 1])
            if image.basis != self.basis:
                image = image.to_basis(self.basis)
            for sub, v in image.coeffs.items():
                _accumulate(out, key[:slot] + sub + key[slot + 2:], c * v, self.field.p)
        grounds = (self.grounds[:slot] + (self.grounds[slot] | self.grounds[slot + 1],)
                   + self.grounds[slot + 2:])
        return Tensor(self.field, self.basis, out, grounds)

    def tensor(self, other: Tensor) -> Tensor:
        other = other.to_basis(self.basis)
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                out[k1 + k2] = c1 * c2
        return Tensor(self.field, self.basis, out, self.grounds + other.grounds)

    def to_json(self) -> list:
        rows = []
        for key, c in sorted(self.coeffs.items(), key=lambda kv: _sort_key(kv[0])):
            entry = {"coeff": c.to_json()}
            if len(key) == 2:
                entry["left"] = _diagram_doc(key[0])
                entry["right"] = _diagram_doc(key[1])
            else:
                entry["factors"] = [_diagram_doc(d) for d in key]
            rows.append(entry)
        return rows


def _sort_key(key):
    return tuple((d.poset.elements, d.poset.pairs, d.raw) for d in key)


def _diagram_doc(d: ArcDiagram) -> dict:
    doc = d.to_json()
    doc["poset"] = d.poset.to_json()
    return doc


class ScfVector(Tensor):
    """A superclass function on a single U_P, written in one basis."""

    def __init__(self, poset: Poset, field: Field, basis: str, coeffs: dict):
        fixed = {}
        for d, c in coeffs.items():
            if isinstance(d, tuple):
                (d,) = d
            if d.field != field:
                raise FieldMismatch("diagram over another field")
            if not isinstance(c, CycNumber):
                c = CycNumber.rational(field.p, c)
            _accumulate(fixed, (on_poset(d, poset),), c, field.p)
        super().__init__(field, basis, fixed, (frozenset(poset.elements),))
        self.poset = poset

    @classmethod
    def basis_element(cls, basis: str, eta: ArcDiagram) -> ScfVector:
        return cls(eta.poset, eta.field, basis, {eta: CycNumber.one(eta.field.p)})

    @classmethod
    def from_tensor(cls, poset: Poset, t: Tensor) -> ScfVector:
        return cls(poset, t.field, t.basis, {k[0]: v for k, v in t.coeffs.items()})

    def to_basis(self, basis: str) -> ScfVector:
        return ScfVector.from_tensor(self.poset, Tensor.to_basis(self, basis))

    @property
    def vector(self) -> dict:
        return {k[0]: v for k, v in self.coeffs.items()}

    def values(self) -> dict:
        """The function itself: its value on each superclass."""
        return self.to_basis("kappa").vector

    def to_json(self) -> dict:
        return {"poset": self.poset.to_json(), "field": self.field.to_json(), "basis": self.basis,
                "terms": [{"diagram": d.to_json(), "coeff": c.to_json()}
                          for d, c in sorted(self.vector.items(), key=lambda kv: kv[0].raw)]}


def unit(field: Field, basis: str = "kappa") -> ScfVector:
    P = empty_poset()
    return ScfVector(P, field, basis, {empty_diagram(P, field): 1})


def change_basis(x: ScfVector, basis: str) -> ScfVector:
    return x.to_basis(basis)


# -- transport along bijections -------------------------------------------------------------------------

def _check_bijection(ground, mapping):
    mapping = {str(k): str(v) for k, v in mapping.items()}
    if set(mapping) != set(ground) or len(set(mapping.values())) != len(mapping):
        raise NotABijection("mapping is not a bijection of the ground set")
    return mapping


def transport_diagram(d: ArcDiagram, mapping: dict) -> ArcDiagram:
    mapping = _check_bijection(d.poset.elements, mapping)
    P = d.poset.relabel(mapping)
    idx = P.index
    return ArcDiagram(P, d.field, [(idx[mapping[a]], idx[mapping[b]], c) for (a, b), c in d.arc_map.items()])


def transport(x: Tensor, mapping: dict) -> Tensor:
    """Relabel every slot of x by the bijection ``mapping``."""
    mapping = {str(k): str(v) for k, v in mapping.items()}
    ground = set().union(*x.grounds) if x.grounds else set()
    _check_bijection(ground, mapping)
    out = {}
    for key, c in x.coeffs.items():
        new_key = tuple(transport_diagram(d, {a: mapping[a] for a in d.poset.elements}) for d in key)
        out[new_key] = c
    grounds = tuple(frozenset(mapping[a] for a in g) for g in x.grounds)
    if isinstance(x, ScfVector):
        return ScfVector(x.poset.relabel(mapping), x.field, x.basis, {k[0]: v for k, v in out.items()})
    return Tensor(x.field, x.basis, out, grounds)


# -- functional definitions -------------------------------------------------------------------------------

def _kappa_lookup(x: ScfVector):
    """Map sml-keys of x's group to coefficients of x in the kappa basis."""
    G = pattern_group(x.poset, x.field)
    vals = x.to_basis("kappa").vector
    return G, {G.key_of(d): c for d, c in vals.items()}


def product_functional(alpha: ScfVector, beta: ScfVector, basis: str | None = None, limit=None) -> ScfVector:
    """Inflate (alpha, beta) along pi: U_{P.Q} -> U_P x U_Q."""
    if alpha.field != beta.field:
        raise FieldMismatch("factors over different fields")
    if set(alpha.poset.elements) & set(beta.poset.elements):
        raise GroundSetOverlap("factors share ground-set elements")
    basis = basis_name(basis or alpha.basis)
    field = alpha.field
    PQ = alpha.poset.concat(beta.poset)
    W = pattern_group(PQ, field)
    GA, va = _kappa_lookup(alpha)
    GB, vb = _kappa_lookup(beta)
    zero = CycNumber.zero(field.p)
    seen = {}
    for g in W.codes(limit):
        a, b = pi_codes(W, GA, GB, g)
        value = va.get(GA.sml_key(a), zero) * vb.get(GB.sml_key(b), zero)
        key = W.sml_key(g)
        if key in seen:
            if seen[key] != value:
                raise InternalCheckFailure("inflation is not constant on a superclass",
                                           witness={"superclass": repr(W.diagram(key))})
        else:
            seen[key] = value
    out = ScfVector(PQ, field, "kappa", {W.diagram(k): v for k, v in seen.items()})
    return out.to_basis(basis)


def _split_sets(P: Poset, S, T=None):
    S = P.check_subset(S)
    T = [x for x in P.elements if x not in set(S)] if T is None else P.check_subset(T)
    if set(S) & set(T) or set(S) | set(T) != set(P.elements) or len(S) + len(T) != len(P):
        raise NotAPartition("S and T must partition the ground set")
    return S, T


def coproduct_functional(alpha: ScfVector, S, T=None, basis: str | None = None, limit=None) -> Tensor:
    """Restrict alpha along sigma: U_{P|S} x U_{P|T} -> U_P."""
    P, field = alpha.poset, alpha.field
    S, T = _split_sets(P, S, T)
    basis = basis_name(basis or alpha.basis)
    PS, PT = P.restrict(S), P.restrict(T)
    W, vals = _kappa_lookup(alpha)
    GS, GT = pattern_group(PS, field), pattern_group(PT, field)
    GS.check_size(limit)
    GT.check_size(limit)
    zero = CycNumber.zero(field.p)
    t_elements = [(v, GT.sml_key(v)) for v in GT.codes(limit)]
    seen = {}
    for u in GS.codes(limit):
        ku = GS.sml_key(u)
        for v, kv in t_elements:
            value = vals.get(W.sml_key(sigma_codes(W, GS, GT, u, v)), zero)
            key = (ku, kv)
            if key in seen:
                if seen[key] != value:
                    raise InternalCheckFailure("restriction is not constant on a superclass pair",
                                               witness={"left": repr(GS.diagram(ku)),
                                                        "right": repr(GT.diagram(kv))})
            else:
                seen[key] = value
    coeffs = {(GS.diagram(a), GT.diagram(b)): v for (a, b), v in seen.items()}
    out = Tensor(field, "kappa", coeffs, (frozenset(S), frozenset(T)))
    return out.to_basis(basis)


# -- combinatorial formulas ----------------------------------------------------------------------------------

def product_combinatorial(basis: str, eta: ArcDiagram, nu: ArcDiagram) -> ScfVector:
    basis = basis_name(basis)
    if eta.field != nu.field:
        raise FieldMismatch("factors over different fields")
    if set(eta.poset.elements) & set(nu.poset.elements):
        raise GroundSetOverlap("factors share ground-set elements")
    PQ = eta.poset.concat(nu.poset)
    field = eta.field
    one = CycNumber.one(field.p)
    if basis in ("powersum", "chi"):
        return ScfVector(PQ, field, basis, {disjoint_union(eta, nu, PQ): one})
    S, T = eta.poset.elements, nu.poset.elements
    terms = {rho: one for rho in NN(PQ, field)
             if restrict(rho, S) == eta and restrict(rho, T) == nu}
    return ScfVector(PQ, field, "kappa", terms)


def product(x: ScfVector, y: ScfVector, method: str = "combinatorial") -> ScfVector:
    """Bilinear extension of the product to arbitrary vectors."""
    if method == "functional":
        return product_functional(x, y, x.basis)
    y = y.to_basis(x.basis)
    PQ = x.poset.concat(y.poset)
    total = ScfVector(PQ, x.field, x.basis, {})
    for (a,), ca in x.coeffs.items():
        for (b,), cb in y.coeffs.items():
            total = total + product_combinatorial(x.basis, a, b).scale(ca * cb)
    return ScfVector.from_tensor(PQ, total)


def u_eta_restricted_index(eta: ArcDiagram, part) -> int:
    """|U_{P|S} : U_{eta,S}|, where U_{eta,S} = {u : sigma(u, 1) in U_eta}."""
    G = pattern_group(eta.poset, eta.field)
    zero = G.zero_positions(G.key_of(eta))
    part = set(part)
    els = eta.poset.elements
    count = sum(1 for t in zero if els[G.pairs[t][0]] in part and els[G.pairs[t][1]] in part)
    return eta.field.q ** count


def chi_coproduct_coefficient(eta: ArcDiagram, S, T) -> Fraction:
    whole = supercharacter_dim(eta)
    return Fraction(whole, u_eta_restricted_index(eta, S) * u_eta_restricted_index(eta, T))


def coproduct_combinatorial(basis: str, eta: ArcDiagram, S, T=None) -> Tensor:
    basis = basis_name(basis)
    P, field = eta.poset, eta.field
    S, T = _split_sets(P, S, T)
    PS, PT = P.restrict(S), P.restrict(T)
    one = CycNumber.one(field.p)
    grounds = (frozenset(S), frozenset(T))
    if basis == "kappa":
        coeffs = {}
        right = NN(PT, field)
        for nu in NN(PS, field):
            for rho in right:
                if sml_partition(disjoint_union(nu, rho, P)) == eta:
                    coeffs[(nu, rho)] = one
        return Tensor(field, "kappa", coeffs, grounds)
    if basis == "chi":
        c = chi_coproduct_coefficient(eta, S, T)
        coeffs = {}
        for nu in proj(eta, S):
            for rho in proj(eta, T):
                coeffs[(nu, rho)] = CycNumber.rational(field.p, c)
        return Tensor(field, "chi", coeffs, grounds)
    raise ValueError("the power-sum coproduct is only available through the functional path")


def coproduct(x: ScfVector, S, T=None, method: str = "combinatorial") -> Tensor:
    if method == "functional" or x.basis == "powersum":
        return coproduct_functional(x, S, T, x.basis)
    S, T = _split_sets(x.poset, S, T)
    total = Tensor(x.field, x.basis, {}, (frozenset(S), frozenset(T)))
    for (d,), c in x.coeffs.items():
        total = total + coproduct_combinatorial(x.basis, d, S, T).scale(c)
    return total


# -- axiom checks -------------------------------------------------------------------------------------------------

def _ordered_decompositions(ground, k):
    """All ordered k-tuples of disjoint (possibly empty) blocks covering ground."""
    ground = list(ground)
    for assign in itertools.product(range(k), repeat=len(ground)):
        yield tuple(tuple(x for x, a in zip(ground, assign) if a == i) for i in range(k))


def _species_basis(ground, field):
    """(poset, diagram) for every poset on ``ground`` and every nonnesting diagram on it."""
    out = []
    posets = all_posets(ground) if ground else [empty_poset()]
    for P in posets:
        for d in NN(P, field):
            out.append(d)
    return out


class _Ops:
    """Product and coproduct on single basis diagrams, with memoization."""

    def __init__(self, field, basis, method):
        self.field = field
        self.basis = basis
        self.method = method
        self._mu = {}
        self._delta = {}

    def vec(self, d):
        return ScfVector.basis_element(self.basis, d)

    def mu(self, a: ArcDiagram, b: ArcDiagram) -> Tensor:
        key = (a, b)
        if key not in self._mu:
            if self.method == "functional":
                r = product_functional(self.vec(a), self.vec(b), self.basis)
            else:
                r = product_combinatorial(self.basis, a, b).to_basis(self.basis)
            self._mu[key] = r
        return self._mu[key]

    def delta(self, d: ArcDiagram, S, T) -> Tensor:
        key = (d, tuple(sorted(S)), tuple(sorted(T)))
        if key not in self._delta:
            S = [x for x in d.poset.elements if x in set(S)]
            T = [x for x in d.poset.elements if x in set(T)]
            if self.method == "functional" or self.basis == "powersum":
                r = coproduct_functional(self.vec(d), S, T, self.basis)
            else:
                r = coproduct_combinatorial(self.basis, d, S, T)
            self._delta[key] = r
        return self._delta[key]


def _single(field, basis, d):
    return Tensor(field, basis, {(d,): CycNumber.one(field.p)}, (frozenset(d.poset.elements),))


def check_hopf_axioms(n: int, field: Field, basis: str = "kappa", method: str = "functional",
                      max_n: int = 4) -> dict:
    """Exhaustively check the Hopf monoid axioms on every ground set {1..k}, k <= n."""
    if n > max_n:
        raise GroundSetTooLarge(f"axiom checks are limited to |I| <= {max_n}")
    basis = basis_name(basis)
    ops = _Ops(field, basis, method)
    report = {"n": n, "field": field.to_json(), "basis": basis, "method": method, "checks": []}
    failures = defaultdict(list)
    counts = defaultdict(int)

    def record(name, ok, witness):
        counts[name] += 1
        if not ok and len(failures[name]) < 3:
            failures[name].append(witness)

    labels = [str(i) for i in range(1, n + 1)]
    grounds = [labels[:k] for k in range(n + 1)]
    basis_cache = {}

    def elements_on(block):
        block = tuple(block)
        if block not in basis_cache:
            basis_cache[block] = _species_basis(block, field)
        return basis_cache[block]

    for I in grounds:
        # associativity
        for S1, S2, S3 in _ordered_decompositions(I, 3):
            for a in elements_on(S1):
                for b in elements_on(S2):
                    ab = ops.mu(a, b)
                    for c in elements_on(S3):
                        left = ab.tensor(_single(field, basis, c)).merge_slots(0, ops.mu)
                        bc = ops.mu(b, c)
                        right = _single(field, basis, a).tensor(bc).merge_slots(0, ops.mu)
                        record("associativity", left == right, (repr(a), repr(b), repr(c)))
        for d in elements_on(I):
            # unit laws and counit identifications
            e = empty_diagram(empty_poset(), field)
            x = _single(field, basis, d)
            record("unit", ops.mu(d, e) == x and ops.mu(e, d) == x, repr(d))
            ground = d.poset.elements
            lx = x.tensor(_single(field, basis, e))
            rx = _single(field, basis, e).tensor(x)
            record("counit", ops.delta(d, ground, ()) == lx and ops.delta(d, (), ground) == rx, repr(d))
            for S, T in _ordered_decompositions(ground, 2):
                # cocommutativity
                lhs = ops.delta(d, S, T).permute((1, 0))
                rhs = ops.delta(d, T, S)
                record("cocommutativity", lhs == rhs, (repr(d), S, T))
            # coassociativity
            for S1, S2, S3 in _ordered_decompositions(ground, 3):
                first = ops.delta(d, S1 + S2, S3)
                left = first.map_slot(0, lambda y: ops.delta(y, S1, S2), (S1, S2))
                second = ops.delta(d, S1, S2 + S3)
                right = second.map_slot(1, lambda y: ops.delta(y, S2, S3), (S2, S3))
                record("coassociativity", left == right, (repr(d), S1, S2, S3))
        # compatibility
        for S1, S2 in _ordered_decompositions(I, 2):
            for T1, T2 in _ordered_decompositions(I, 2):
                A = tuple(x for x in I if x in S1 and x in T1)
                B = tuple(x for x in I if x in S1 and x in T2)
                C = tuple(x for x in I if x in S2 and x in T1)
                D = tuple(x for x in I if x in S2 and x in T2)
                for a in elements_on(S1):
                    da = ops.delta(a, A, B)
                    for b in elements_on(S2):
                        left = Tensor(field, basis, {}, (frozenset(T1), frozenset(T2)))
                        for (ab,), c in ops.mu(a, b).coeffs.items():
                            left = left + ops.delta(ab, T1, T2).scale(c)
                        four = da.tensor(ops.delta(b, C, D)).permute((0, 2, 1, 3))
                        right = four.merge_slots(0, ops.mu).merge_slots(1, ops.mu)
                        record("compatibility", left == right, (repr(a), repr(b), S1, T1))
        # naturality under every permutation of I
        for perm in itertools.permutations(I):
            sigma = dict(zip(I, perm))
            for d in elements_on(I):
                x = _single(field, basis, d)
                td = transport_diagram(d, sigma)
                for S, T in _ordered_decompositions(I, 2):
                    lhs = transport(ops.delta(d, S, T), sigma)
                    rhs = ops.delta(td, [sigma[s] for s in S], [sigma[t] for t in T])
                    record("naturality (coproduct)", lhs == rhs, (repr(d), perm, S))
            for S, T in _ordered_decompositions(I, 2):
                for a in elements_on(S):
                    for b in elements_on(T):
                        lhs = transport(ops.mu(a, b), sigma)
                        rhs = ops.mu(transport_diagram(a, {s: sigma[s] for s in S}),
                                     transport_diagram(b, {t: sigma[t] for t in T}))
                        record("naturality (product)", lhs == rhs, (repr(a), repr(b), perm))

    for name in ("associativity", "coassociativity", "compatibility", "cocommutativity",
                 "naturality (product)", "naturality (coproduct)", "unit", "counit"):
        report["checks"].append({"name": name, "cases": counts[name],
                                 "passed": not failures[name],
                                 "witness": [list(map(str, w)) if isinstance(w, tuple) else w
                                             for w in failures[name]] or None})
    report["noncommutative_witness"] = commutativity_witness(field, basis, method, ops)
    report["passed"] = all(c["passed"] for c in report["checks"]) and \
        report["noncommutative_witness"] is not None
    return report


def commutativity_witness(field: Field, basis: str = "kappa", method: str = "functional", ops=None):
    """A pair x, y with mu_{S,T}(x (x) y) != mu_{T,S}(y (x) x), or None if none is found."""
    ops = ops or _Ops(field, basis_name(basis), method)
    for S, T in ((("1",), ("2",)), (("1", "2"), ("3",))):
        for a in _species_basis(S, field):
            for b in _species_basis(T, field):
                xy, yx = ops.mu(a, b), ops.mu(b, a)
                if xy != yx:
                    return {"x": _diagram_doc(a), "y": _diagram_doc(b),
                            "xy": xy.to_json(), "yx": yx.to_json()}
    return None


# -- freeness ---------------------------------------------------------------------------------------------------

def compositions(n: int):
    """Compositions of n in lexicographic order; n = 0 has the empty composition."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def _set_compositions(ground):
    ground = tuple(ground)
    if not ground:
        yield ()
        return
    for r in range(1, len(ground) + 1):
        for first in itertools.combinations(ground, r):
            rest = tuple(x for x in ground if x not in first)
            for tail in _set_compositions(rest):
                yield (first,) + tail


def free_structure(n_max: int, field: Field, all_poset_check: bool = True, max_n: int = 5) -> dict:
    """Audit unique factorization into atomic diagrams for chains and for all posets."""
    if n_max > max_n:
        raise GroundSetTooLarge(f"freeness audit limited to n <= {max_n}")
    report = {"field": field.to_json(), "linear": [], "posets": [], "checks": []}
    witness = None

    atoms = {}
    dims = {}
    for n in range(n_max + 1):
        P = linear_order(n)
        diagrams = NN(P, field)
        dims[n] = len(diagrams)
        atoms[n] = sum(1 for d in diagrams if is_atomic(d)) if n else 0
    for n in range(n_max + 1):
        total = sum(_prod(atoms[c] for c in comp) for comp in compositions(n))
        # the monoid map: words of atomic diagrams on consecutive blocks
        words = set()
        count = 0
        for comp in compositions(n):
            start = 1
            blocks = []
            for c in comp:
                labels = [str(i) for i in range(start, start + c)]
                blocks.append([d for d in NN(linear_order(labels), field) if is_atomic(d)])
                start += c
            for word in itertools.product(*blocks):
                count += 1
                glued = reassemble([(None, d) for d in word]) if word else \
                    empty_diagram(linear_order(0), field)
                words.add(glued)
        bijective = count == len(words) == dims[n]
        unique = True
        for d in NN(linear_order(n), field):
            factors = atomic_factorization(d)
            if any(not is_atomic(f) for _, f in factors):
                unique = False
            if n and reassemble(factors) != d:
                unique = False
        row = {"n": n, "dimension": dims[n], "atomic": atoms[n], "composition_sum": total,
               "monoid_map_bijective": bijective, "unique_factorization": unique}
        report["linear"].append(row)
        if (total != dims[n] or not bijective or not unique) and witness is None:
            witness = row
    report["checks"].append({"name": "free on atomic diagrams (chains)", "passed": witness is None,
                             "witness": witness})

    if all_poset_check:
        witness = None
        patoms = {}
        pdims = {}
        for n in range(n_max + 1):
            labels = [str(i) for i in range(1, n + 1)]
            ds = _species_basis(labels, field)
            pdims[n] = len(ds)
            patoms[n] = sum(1 for d in ds if is_atomic(d)) if n else 0
        for n in range(n_max + 1):
            labels = [str(i) for i in range(1, n + 1)]
            total = sum(_prod(patoms[len(b)] for b in comp) for comp in _set_compositions(labels))
            unique = True
            for d in _species_basis(labels, field):
                factors = atomic_factorization(d)
                if n and (reassemble(factors) != d or any(not is_atomic(f) for _, f in factors)):
                    unique = False
            row = {"n": n, "dimension": pdims[n], "atomic": patoms[n], "composition_sum": total,
                   "unique_factorization": unique}
            report["posets"].append(row)
            if (total != pdims[n] or not unique) and witness is None:
                witness = row
        report["checks"].append({"name": "free on atomic diagrams (all posets)",
                                 "passed": witness is None, "witness": witness})
    report["passed"] = all(c["passed"] for c in report["checks"])
    return report


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out
