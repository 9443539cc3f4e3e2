"""Exact arithmetic: finite fields GF(p^e) and the cyclotomic field Q(zeta_p).

Character values are elements of Q(zeta_p) stored in the power basis
1, zeta, ..., zeta^(p-2) with integer numerators over a common denominator.
The additive character used throughout is ``theta(x) = zeta_p ** trace(x)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property

from .errors import (
    DivisionByZero,
    FieldMismatch,
    MissingModulus,
    NotPrime,
    PrimeMismatch,
    ReduciblePolynomial,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise NotPrime(f"{p ** e * q} is not a prime power")
    return p, e


# -- polynomials over GF(p), coefficient lists constant-first ---------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(x % p for x in a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(modulus, p):
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(modulus, divisor, p):
                return False
    return True


class Field:
    """GF(p^e) with elements encoded as integer codes.

    The code of an element is its rank in the lexicographic order of its
    coefficient tuple (constant coefficient most significant), so
    ``range(q)`` enumerates the field in the documented order.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be positive")
        if e == 1:
            if modulus:
                modulus = [int(c) % p for c in modulus]
                if len(_poly_trim(modulus)) != 2 or modulus[1] != 1:
                    raise ValueError("a degree-1 modulus must be monic linear")
            modulus = ()
        else:
            if not modulus:
                raise MissingModulus(f"GF({p}^{e}) needs an irreducible modulus")
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {e}")
            if not _is_irreducible(modulus, p):
                raise ReduciblePolynomial(f"{modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = tuple(modulus)
        self._hash = hash((p, e, self.modulus))

    @classmethod
    def of_order(cls, q: int, modulus=None) -> Field:
        p, e = prime_power(q)
        return cls(p, e, modulus)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Field) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    # codes <-> coefficient tuples
    def coeffs_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(reversed(out))

    def code_of(self, coeffs) -> int:
        code = 0
        for c in coeffs:
            code = code * self.p + c
        return code

    @cached_property
    def zero(self) -> int:
        return 0

    @cached_property
    def one(self) -> int:
        return self.code_of((1,) + (0,) * (self.e - 1))

    @cached_property
    def add_table(self):
        p, q = self.p, self.q
        co = [self.coeffs_of(c) for c in range(q)]
        return [[self.code_of(tuple((x + y) % p for x, y in zip(co[a], co[b])))
                 for b in range(q)] for a in range(q)]

    @cached_property
    def mul_table(self):
        p, q = self.p, self.q
        if self.e == 1:
            return [[a * b % p for b in range(q)] for a in range(q)]
        co = [self.coeffs_of(c) for c in range(q)]
        table = []
        for a in range(q):
            row = []
            for b in range(q):
                prod = [0] * (2 * self.e - 1)
                for i, x in enumerate(co[a]):
                    if x:
                        for j, y in enumerate(co[b]):
                            prod[i + j] += x * y
                red = _poly_mod(prod, self.modulus, p)
                red = red + [0] * (self.e - len(red))
                row.append(self.code_of(tuple(red)))
            table.append(row)
        return table

    @cached_property
    def neg_table(self):
        add = self.add_table
        return [next(b for b in range(self.q) if add[a][b] == 0) for a in range(self.q)]

    @cached_property
    def inv_table(self):
        mul, one = self.mul_table, self.one
        inv = [None] * self.q
        for a in range(1, self.q):
            inv[a] = next(b for b in range(1, self.q) if mul[a][b] == one)
        return inv

    @cached_property
    def trace_table(self) -> list[int]:
        """Absolute trace x + x^p + ... + x^(p^(e-1)), as an integer mod p."""
        mul, add = self.mul_table, self.add_table
        out = []
        for a in range(self.q):
            total, power = 0, a
            for _ in range(self.e):
                total = add[total][power]
                frob = self.one
                for _ in range(self.p):
                    frob = mul[frob][power]
                power = frob
            # the trace lies in the prime subfield: multiples of one
            coeffs = self.coeffs_of(total)
            assert all(c == 0 for c in coeffs[1:])
            out.append(coeffs[0])
        return out

    @cached_property
    def trmul_table(self):
        """trace(a * b) for all code pairs; the hot path of every character sum."""
        tr, mul = self.trace_table, self.mul_table
        return [[tr[mul[a][b]] for b in range(self.q)] for a in range(self.q)]

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, str):
            value = value.strip()
            if value.startswith("["):
                import json
                value = json.loads(value)
            else:
                value = int(value)
        if isinstance(value, int):
            if self.e == 1:
                return FieldElement(self, value % self.p)
            return FieldElement(self, self.code_of(((value % self.p),) + (0,) * (self.e - 1)))
        coeffs = [int(c) % self.p for c in value]
        if self.e == 1:
            if len(coeffs) != 1:
                raise ValueError(f"expected one coefficient, got {coeffs}")
            return FieldElement(self, coeffs[0])
        red = _poly_mod(coeffs, self.modulus, self.p) if len(coeffs) > self.e else _poly_trim(coeffs)
        red = red + [0] * (self.e - len(red))
        return FieldElement(self, self.code_of(tuple(red)))

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def nonzero(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(1, self.q)]

    def generator(self) -> FieldElement:
        """The class x of the polynomial variable (1 in a prime field)."""
        if self.e == 1:
            return FieldElement(self, 1)
        return self([0, 1])

    def to_json(self) -> dict:
        if self.e == 1:
            return {"p": self.p, "e": 1}
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> Field:
        return cls(int(data["p"]), int(data.get("e", 1)), data.get("modulus"))


def field_make(p: int, e: int = 1, modulus=None) -> Field:
    return Field(p, e, modulus)


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs_of(self.code)

    def _check(self, other):
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add_table[self.code][other.code])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_table[self.code])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul_table[self.code][other.code])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.code == 0:
            raise DivisionByZero("0 has no inverse")
        return FieldElement(self.field, self.field.inv_table[self.code])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElement(self.field, self.field.one)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.code == other.code and self.field == other.field

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        if self.field.e == 1:
            return str(self.code)
        return str(list(self.coeffs))

    def to_json(self):
        if self.field.e == 1:
            return str(self.code)
        return list(self.coeffs)


def ff_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def trace(x: FieldElement) -> int:
    return x.field.trace_table[x.code]


# -- cyclotomic numbers ------------------------------------------------------

def _normalize(num, den):
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        g = math.gcd(g, a)
        if g == 1:
            break
    if g > 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


def _reduce_full(p, full):
    """Reduce a length-p coefficient vector over 1..zeta^(p-1) to the basis."""
    top = full[p - 1]
    if top:
        return [full[i] - top for i in range(p - 1)]
    return list(full[:p - 1])


class CycNumber:
    """An exact element of Q(zeta_p)."""

    __slots__ = ("p", "_num", "_den", "_hash")

    def __init__(self, p: int, coords=None):
        if coords is None:
            coords = [0] * (p - 1)
        coords = [Fraction(c) for c in coords]
        if len(coords) != p - 1:
            raise ValueError(f"Q(zeta_{p}) needs {p - 1} coordinates")
        den = 1
        for c in coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in coords]
        self.p = p
        self._num, self._den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _make(cls, p, num, den=1):
        obj = object.__new__(cls)
        obj.p = p
        obj._num, obj._den = _normalize(num, den)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, p: int, value) -> CycNumber:
        value = Fraction(value)
        return cls._make(p, [value.numerator] + [0] * (p - 2), value.denominator)

    @classmethod
    def zero(cls, p: int) -> CycNumber:
        return cls._make(p, [0] * (p - 1))

    @classmethod
    def one(cls, p: int) -> CycNumber:
        return cls.rational(p, 1)

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CycNumber:
        full = [0] * p
        full[k % p] = 1
        return cls._make(p, _reduce_full(p, full))

    @classmethod
    def from_exponent_counts(cls, p: int, counts, scale=1) -> CycNumber:
        """The number scale * sum_k counts[k] * zeta^k."""
        full = [c * scale for c in counts]
        return cls._make(p, _reduce_full(p, full))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self._den) for a in self._num)

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.p != self.p:
                raise PrimeMismatch(f"Q(zeta_{self.p}) vs Q(zeta_{other.p})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return CycNumber._make(self.p, [a + b for a, b in zip(self._num, other._num)], d1)
        return CycNumber._make(self.p, [a * d2 + b * d1 for a, b in zip(self._num, other._num)],
                               d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._make(self.p, [-a for a in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self._num):
            if a:
                for j, b in enumerate(other._num):
                    if b:
                        full[(i + j) % p] += a * b
        return CycNumber._make(p, _reduce_full(p, full), self._den * other._den)

    __rmul__ = __mul__

    def conj(self) -> CycNumber:
        p = self.p
        full = [0] * p
        for k, a in enumerate(self._num):
            full[(-k) % p] += a
        return CycNumber._make(p, _reduce_full(p, full), self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise DivisionByZero("0 has no inverse in Q(zeta_p)")
        if self.is_rational():
            return CycNumber.rational(self.p, 1 / self.rational_value())
        # solve self * x = 1 using the matrix of multiplication by self
        n = self.p - 1
        basis = [CycNumber.zeta(self.p, k) for k in range(n)]
        cols = [(self * b).coords for b in basis]
        rows = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            lead = rows[c][c]
            rows[c] = [v / lead for v in rows[c]]
            for r in range(n):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        return CycNumber(self.p, [rows[i][n] for i in range(n)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        if other.p != self.p:
            raise PrimeMismatch(f"Q(zeta_{self.p}) vs Q(zeta_{other.p})")
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self._num, self._den))
        return self._hash

    def __repr__(self):
        return f"CycNumber({self.p}, {[str(c) for c in self.coords]})"

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if k and c == 1:
                terms.append(mono)
            elif k and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}" if k == 0 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"p": self.p, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> CycNumber:
        return cls(int(data["p"]), [Fraction(c) for c in data["coords"]])


def cyc_arith(op: str, u: CycNumber, v: CycNumber | None = None):
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    if op == "neg":
        return -u
    if op == "conj":
        return u.conj()
    if op == "eq":
        return u == v
    raise ValueError(f"unknown cyclotomic operation {op!r}")


def theta(x: FieldElement) -> CycNumber:
    """The fixed nontrivial additive character x -> zeta_p ** trace(x)."""
    return CycNumber.zeta(x.field.p, trace(x))
