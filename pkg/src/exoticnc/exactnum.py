"""
Exact scalars: rationals, Laurent polynomials in the half-power variable p,
elements of the cyclotomic field Q(xi) and balanced quantum numbers.

Conventions: z = p**2 and q = p**(-n).  After specialization p goes to xi, a
primitive (2nm)-th root of unity, so z goes to zeta = xi**2 which is a
primitive (nm)-th root of unity.

>>> N = 12
>>> xi = Cyclotomic.xi(N)
>>> xi ** N == 1
True
>>> zeta = xi ** 2
>>> zeta ** 3 == -1
True
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from sympy import Poly, Symbol, cyclotomic_poly, totient

Rational = Fraction

IntLike = Union[int, Fraction]


class ConductorMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic field


@lru_cache(maxsize=None)
def _cyclo_data(N: int):
    """Degree, Phi_N coefficients (low to high) and reduced powers of xi."""
    x = Symbol("x")
    phi_poly = [int(c) for c in reversed(Poly(cyclotomic_poly(N, x), x).all_coeffs())]
    deg = int(totient(N))
    assert len(phi_poly) == deg + 1 and phi_poly[-1] == 1
    # powers xi^t reduced mod Phi_N, for 0 <= t < max(N, 2*deg)
    top = max(N, 2 * deg)
    table = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(top):
        table.append(tuple(cur))
        # multiply by xi
        carry = cur[-1]
        nxt = [0] + cur[:-1]
        if carry:
            for j in range(deg):
                nxt[j] -= carry * phi_poly[j]
        cur = nxt
    sparse = [tuple((j, v) for j, v in enumerate(row) if v) for row in table]
    return deg, tuple(phi_poly), tuple(table), tuple(sparse)


def phi(N: int) -> int:
    """Euler totient, the degree of Q(xi_N)."""
    return _cyclo_data(N)[0]


class Cyclotomic:
    """Element of Q(xi_N) stored as an integer vector over a common denominator.

    The vector holds the coordinates in the power basis 1, xi, ..., xi^(phi-1).
    """

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N: int, num: Iterable[int], den: int = 1, _normalized=False):
        self.N = N
        num = tuple(num)
        if not _normalized:
            deg = _cyclo_data(N)[0]
            if len(num) != deg:
                raise ValueError(f"expected {deg} coordinates, got {len(num)}")
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            g = gcd(den, *num)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
            if not any(num):
                den = 1
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors
    @classmethod
    def from_int(cls, N: int, c: IntLike) -> "Cyclotomic":
        c = Fraction(c)
        deg = _cyclo_data(N)[0]
        num = [0] * deg
        num[0] = c.numerator
        return cls(N, num, c.denominator)

    @classmethod
    def zero(cls, N: int) -> "Cyclotomic":
        return cls.from_int(N, 0)

    @classmethod
    def one(cls, N: int) -> "Cyclotomic":
        return cls.from_int(N, 1)

    @classmethod
    def xi(cls, N: int, e: int = 1) -> "Cyclotomic":
        """The power xi^e of the fixed primitive N-th root xi."""
        return cls(N, _cyclo_data(N)[2][e % N], 1, _normalized=True)

    @classmethod
    def from_coeffs(cls, N: int, coeffs: Iterable[IntLike]) -> "Cyclotomic":
        """Build from rational coordinates in the power basis (any length)."""
        deg, _, table, _ = _cyclo_data(N)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        acc = [0] * deg
        for t, c in enumerate(fr):
            if c:
                v = c.numerator * (den // c.denominator)
                for j, w in enumerate(table[t % N]):
                    if w:
                        acc[j] += v * w
        return cls(N, acc, den)

    # -- accessors
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.N != self.N:
                raise ConductorMismatch(f"conductors {self.N} and {other.N} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_int(self.N, other)
        return NotImplemented

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Cyclotomic(self.N, [a + b for a, b in zip(self.num, other.num)], self.den)
        return Cyclotomic(
            self.N,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, tuple(-a for a in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.N, [a * other for a in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        deg, _, _, sparse = _cyclo_data(self.N)
        a, b = self.num, other.num
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        res = conv[:deg]
        for t in range(deg, 2 * deg - 1):
            c = conv[t]
            if c:
                for j, v in sparse[t]:
                    res[j] += c * v
        return Cyclotomic(self.N, res, self.den * other.den)

    __rmul__ = __mul__

    def mul_xi(self, e: int) -> "Cyclotomic":
        """Multiply by xi^e."""
        return self * Cyclotomic.xi(self.N, e)

    def inv(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        deg = _cyclo_data(self.N)[0]
        # columns: self * xi^j; solve M c = e_0 over Q
        cols = [(self * Cyclotomic.xi(self.N, j)).coeffs for j in range(deg)]
        mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [v / pv for v in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return Cyclotomic.from_coeffs(self.N, [mat[i][deg] for i in range(deg)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(
                self.N, [a * other.denominator for a in self.num], self.den * other.numerator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = Cyclotomic.one(self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_int(self.N, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.N == other.N and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.num, self.den))
        return self._hash

    # -- Galois action
    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism xi -> xi^k (k prime to N)."""
        deg, _, table, _ = _cyclo_data(self.N)
        acc = [0] * deg
        for t, c in enumerate(self.num):
            if c:
                for j, v in enumerate(table[(t * k) % self.N]):
                    if v:
                        acc[j] += c * v
        return Cyclotomic(self.N, acc, self.den)

    def conj(self) -> "Cyclotomic":
        """Complex conjugation xi -> xi^-1."""
        return self.galois(-1)

    def to_complex(self) -> complex:
        """Floating point value under xi = exp(2 pi i / N); for display only."""
        w = cmath.exp(2j * cmath.pi / self.N)
        return sum(c * w**t for t, c in enumerate(self.num)) / self.den

    def as_xi_power(self):
        """Return (c, e) if self == c * xi^e for a rational c, else None."""
        if self.is_zero():
            return None
        for e in range(self.N):
            v = self.mul_xi(-e)
            if not any(v.num[1:]):
                return Fraction(v.num[0], v.den), e
        return None

    # -- serialization
    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        return cls.from_coeffs(int(data["N"]), [Fraction(int(a), int(b)) for a, b in data["coeffs"]])

    def __repr__(self):
        terms = []
        for t, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if t == 0 else f"({c})*xi^{t}")
        return f"Cyclotomic<{self.N}>(" + (" + ".join(terms) or "0") + ")"


def cyclotomic_arith(a: Cyclotomic, b: Cyclotomic, op: str):
    """Dispatch the basic field operations by name."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "eq":
        if a.N != b.N:
            raise ConductorMismatch(f"conductors {a.N} and {b.N} differ")
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials in p


class FormalScalar:
    """Laurent polynomial in p with rational coefficients.

    >>> z = FormalScalar.p(2)
    >>> (z * z.inv()) == 1
    True
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = c if isinstance(c, (int, Fraction)) else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: IntLike) -> "FormalScalar":
        return cls({0: c})

    @classmethod
    def p(cls, e: int = 1, c: IntLike = 1) -> "FormalScalar":
        return cls({e: c})

    @classmethod
    def z(cls, k: int = 1) -> "FormalScalar":
        return cls({2 * k: 1})

    @classmethod
    def q(cls, n: int, k: int = 1) -> "FormalScalar":
        return cls({-n * k: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _coerce(other):
        if isinstance(other, FormalScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return FormalScalar({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return FormalScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalScalar({e: -c for e, c in self.terms.items()})

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
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return FormalScalar(out)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inv(self) -> "FormalScalar":
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials c*p^e are invertible in Q[p, 1/p]")
        (e, c), = self.terms.items()
        return FormalScalar({-e: Fraction(1) / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = FormalScalar({0: 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def conj(self) -> "FormalScalar":
        """The involution p -> 1/p, so z -> 1/z."""
        return FormalScalar({-e: c for e, c in self.terms.items()})

    def evaluate(self, value):
        """Substitute p -> value (value must support ** with negative ints)."""
        total = 0
        for e, c in sorted(self.terms.items()):
            total = total + c * value**e
        return total

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def is_z_integral(self) -> bool:
        return all(e % 2 == 0 for e in self.terms)

    def to_json(self) -> dict:
        return {str(e): str(c) for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: dict) -> "FormalScalar":
        return cls({int(e): Fraction(c) for e, c in data.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*p^{e}" for e, c in sorted(self.terms.items()))


def specialize(s: FormalScalar, n: int, m: int) -> Cyclotomic:
    """Ring map Q[p, 1/p] -> Q(xi), p -> xi with xi a primitive 2nm-th root."""
    N = 2 * n * m
    coeffs = [Fraction(0)] * N
    for e, c in s.terms.items():
        coeffs[e % N] += c
    return Cyclotomic.from_coeffs(N, coeffs)


# ---------------------------------------------------------------------------
# scalar rings


class FormalRing:
    """Scalars Q[p, 1/p] for rank n, with z = p^2 and q = p^-n."""

    kind = "formal"

    def __init__(self, n: int):
        self.n = n

    def __eq__(self, other):
        return isinstance(other, FormalRing) and other.n == self.n

    def __hash__(self):
        return hash(("formal", self.n))

    def __repr__(self):
        return f"FormalRing(n={self.n})"

    def zero(self):
        return FormalScalar()

    def one(self):
        return FormalScalar.const(1)

    def const(self, c):
        return FormalScalar.const(c)

    def p(self, e: int):
        return FormalScalar.p(e)

    def z(self, k: int):
        return FormalScalar.p(2 * k)

    def q(self, k: int = 1):
        return FormalScalar.p(-self.n * k)

    def conj(self, s):
        return s.conj()


class CyclotomicRing:
    """Scalars Q(xi) with xi a primitive 2nm-th root; p -> xi, z -> zeta = xi^2."""

    kind = "specialized"

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.N = 2 * n * m
        self._pows = [Cyclotomic.xi(self.N, e) for e in range(self.N)]

    def __eq__(self, other):
        return isinstance(other, CyclotomicRing) and (other.n, other.m) == (self.n, self.m)

    def __hash__(self):
        return hash(("cyclo", self.n, self.m))

    def __repr__(self):
        return f"CyclotomicRing(n={self.n}, m={self.m})"

    def zero(self):
        return Cyclotomic.zero(self.N)

    def one(self):
        return Cyclotomic.one(self.N)

    def const(self, c):
        return Cyclotomic.from_int(self.N, c)

    def p(self, e: int):
        return self._pows[e % self.N]

    def z(self, k: int):
        return self._pows[(2 * k) % self.N]

    def zeta(self, k: int = 1):
        return self.z(k)

    def q(self, k: int = 1):
        return self._pows[(-self.n * k) % self.N]

    def conj(self, s):
        return s.conj()


def make_ring(kind: str, n: int, m: int | None = None):
    if kind == "formal":
        return FormalRing(n)
    if kind == "specialized":
        if m is None:
            raise ValueError("specialized ring needs m")
        return CyclotomicRing(n, m)
    raise ValueError(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# balanced quantum numbers in q


def quantum_integer(k: int, ring):
    """[k] = (q^k - q^-k)/(q - 1/q) = q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k == 0:
        return ring.zero()
    sign = 1
    if k < 0:
        k, sign = -k, -1
    total = ring.zero()
    for j in range(k):
        total = total + ring.q(k - 1 - 2 * j)
    return total if sign > 0 else -total


def quantum_factorial(k: int, ring):
    total = ring.one()
    for j in range(1, k + 1):
        total = total * quantum_integer(j, ring)
    return total


@lru_cache(maxsize=None)
def _qbinom_table(k: int, ring):
    # balanced Pascal rule: [k c] = q^-c [k-1 c] + q^(k-c) [k-1 c-1]
    if k == 0:
        return (ring.one(),)
    prev = _qbinom_table(k - 1, ring)
    row = []
    for c in range(k + 1):
        val = ring.zero()
        if c <= k - 1:
            val = val + ring.q(-c) * prev[c]
        if c >= 1:
            val = val + ring.q(k - c) * prev[c - 1]
        row.append(val)
    return tuple(row)


def quantum_binomial(k: int, c: int, ring):
    """Balanced quantum binomial via the Pascal recurrence (no division).

    >>> r = FormalRing(3)
    >>> quantum_binomial(2, 1, r) == r.q(1) + r.q(-1)
    True
    """
    if k < 0 or c < 0 or c > k:
        return ring.zero()
    return _qbinom_table(k, ring)[c]
