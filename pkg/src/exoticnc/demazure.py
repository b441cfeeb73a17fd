"""
Demazure operators d_i f = (f - s_i f) / (x_i - z x_{i+1}) on R_z and R_m.

A word (i1, ..., id) acts as d_{i1} o ... o d_{id}: the last letter acts first.

>>> from exoticnc.exactnum import FormalRing
>>> R = FormalRing(3)
>>> f = MultiPoly.monomial((2, 1, 0), R.one(), R)
>>> word_apply((1, 2, 1), f) == MultiPoly.const(R.one(), 3, R)
True
>>> word_apply((2, 1, 2), f) == MultiPoly.const(R.z(1), 3, R)
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .affine import CLOCKWISE, LEFT, WIDDERSHINS, abi_word, cyclic_word
from .exactnum import (
    Cyclotomic,
    CyclotomicRing,
    FormalRing,
    FormalScalar,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
)
from .poly import MultiPoly, slot
from .refrep import simple_reflection_matrix

__all__ = [
    "MultiPoly",
    "OperatorExpr",
    "demazure_apply",
    "demazure_by_division",
    "word_apply",
    "expr_apply",
    "theta",
    "theta_right",
    "xi_bruteforce",
    "xi_closed_formula",
    "xi_formal_case_check",
]


def demazure_by_division(i: int, f: MultiPoly) -> MultiPoly:
    """d_i f computed literally: subtract s_i f, then divide exactly by alpha_i."""
    n = f.n
    ring = f.ring
    g = f - simple_reflection_matrix(i, n).apply(f)
    return g.divide_linear(slot(i, n), slot(i + 1, n), ring.z(1))


@lru_cache(maxsize=None)
def demazure_monomial(i: int, exps: tuple) -> tuple:
    """d_i of a monomial as a tuple of (sign, z-exponent, exponent vector).

    Computed once by exact division over the formal ring; every coefficient
    that appears is a signed power of z.
    """
    n = len(exps)
    R = _formal_ring(n)
    res = demazure_by_division(i, MultiPoly.monomial(exps, R.one(), R))
    out = []
    for e, c in sorted(res.terms.items(), reverse=True):
        assert c.is_monomial() and c.is_z_integral(), "unexpected Demazure coefficient"
        (pe, v), = c.terms.items()
        assert v in (1, -1)
        out.append((int(v), pe // 2, e))
    return tuple(out)


@lru_cache(maxsize=None)
def _formal_ring(n: int) -> FormalRing:
    return FormalRing(n)


def demazure_apply(i: int, f: MultiPoly) -> MultiPoly:
    """d_i f, via the cached monomial table."""
    ring = f.ring
    i %= f.n
    out = {}
    for e, c in f.terms.items():
        for sign, k, e2 in demazure_monomial(i, e):
            v = c * ring.z(k) if k else c
            if sign < 0:
                v = -v
            if e2 in out:
                out[e2] = out[e2] + v
            else:
                out[e2] = v
    return MultiPoly(f.n, out, ring)


def word_apply(w: Sequence[int], f: MultiPoly) -> MultiPoly:
    """d_w f = d_{i1}( ... d_{id}(f))."""
    for a in reversed(tuple(w)):
        if not f:
            break
        f = demazure_apply(a, f)
    return f


@dataclass
class OperatorExpr:
    """Formal linear combination of Demazure words."""

    terms: list = field(default_factory=list)  # (coeff, word)

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def scale(self, c) -> "OperatorExpr":
        return OperatorExpr([(c * a, w) for a, w in self.terms])

    def compose(self, other: "OperatorExpr") -> "OperatorExpr":
        """self o other."""
        return OperatorExpr([(a * b, v + w) for a, v in self.terms for b, w in other.terms])

    def degree(self) -> int:
        lengths = {len(w) for _, w in self.terms}
        if len(lengths) > 1:
            raise ValueError("inhomogeneous operator expression")
        return -lengths.pop() if lengths else 0

    def to_json(self) -> list:
        return [
            {"coeff": c.to_json() if hasattr(c, "to_json") else str(c), "word": list(w)}
            for c, w in self.terms
        ]

    @classmethod
    def from_json(cls, data: list, scalar_type) -> "OperatorExpr":
        return cls([(scalar_type.from_json(t["coeff"]), tuple(t["word"])) for t in data])

    @classmethod
    def word(cls, w, ring) -> "OperatorExpr":
        return cls([(ring.one(), tuple(w))])


def expr_apply(e: OperatorExpr, f: MultiPoly) -> MultiPoly:
    total = MultiPoly.zero(f.n, f.ring)
    for c, w in e.terms:
        if c:
            total = total + word_apply(w, f).scale(c)
    return total


def theta(i: int, k: int, direction: str, ring) -> OperatorExpr:
    """Theta^(k)_{i_L} (clockwise) or bar-Theta^(k)_{i_L} (widdershins)."""
    if k < 1:
        raise ValueError("k must be positive")
    n = ring.n
    d = k * (n - 1)
    terms = []
    for t in range(n):
        if direction == CLOCKWISE:
            terms.append((ring.z(-t * k), cyclic_word(i - t, d, CLOCKWISE, LEFT, n)))
        elif direction == WIDDERSHINS:
            terms.append((ring.z(t * k), cyclic_word(i + t, d, WIDDERSHINS, LEFT, n)))
        else:
            raise ValueError(f"unknown direction {direction!r}")
    return OperatorExpr(terms)


def theta_right(j: int, k: int, direction: str, ring) -> OperatorExpr:
    """The same operators indexed by the last letter of the leading word."""
    n = ring.n
    d = k * (n - 1)
    if direction == CLOCKWISE:
        return theta(j - d + 1, k, direction, ring)
    return theta(j + d - 1, k, direction, ring)


# ---------------------------------------------------------------------------
# Xi scalars (n = 3)


def xi_bruteforce(a: int, b: int, i: int, k: int, ring):
    """d_{w(a,b,i)}(x_1^k x_2^{a+b+1-k}) as a scalar."""
    length = a + b + 1
    if not 0 <= k <= length:
        raise ValueError("need 0 <= k <= a+b+1")
    f = MultiPoly.monomial((k, length - k, 0), ring.one(), ring)
    res = word_apply(abi_word(a, b, i, 3), f)
    assert res.degree() <= 0
    return res.constant_term()


def xi_support(a: int, m: int):
    """(beta, d, bottom, in_support) for the closed formula at length 3m."""
    b = 3 * m - 1 - a
    beta = (b - 1) // 2
    d = m // 2
    bottom = d if (m % 2 and a % 2 and b % 2) else d - 1
    return beta, d, bottom, (0 <= a and 0 <= b and bottom <= beta <= m - 1)


def xi_formal_expression(a: int, m: int) -> FormalScalar:
    """The closed formula as a Laurent polynomial in p (q = p^-3)."""
    R = FormalRing(3)
    beta, d, bottom, ok = xi_support(a, m)
    if not ok:
        return FormalScalar()
    if m % 2 == 0 and a % 2 == 0:
        case = FormalScalar.p(-3 * beta * d + beta - 1)
    elif m % 2 == 0:
        case = FormalScalar.p(-3 * beta * d + 5 * beta + 3, -1)
    elif a % 2 == 0:
        case = FormalScalar.p(-9 * beta * d - beta - 2, (-1) ** (beta + 1))
    else:
        case = FormalScalar.p(-9 * beta * d - 2 * beta - 3, (-1) ** (beta + 1))
    stuff = FormalScalar.p(2 * comb(beta, 2) - 7 * d) * case
    binom = quantum_binomial(m - 1 - bottom, beta - bottom, R)
    return binom * stuff * ((-1) ** d * m * m)


def xi_closed_formula(a: int, m: int, branch: int = 1) -> Cyclotomic:
    """Closed formula for Xi_m(a, i) in Q(xi), with p -> branch * xi."""
    ring = CyclotomicRing(3, m)
    expr = xi_formal_expression(a, m)
    p = ring.p(1) if branch == 1 else -ring.p(1)
    total = ring.zero()
    for e, c in expr.terms.items():
        total = total + (p**e) * c
    return total


@dataclass
class FormalCaseReport:
    status: str  # "match", "mismatch", "out-of-scope"
    unit: object = None  # observed unit c * p^e with brute = unit * body
    brute: object = None
    body: object = None


def _general_binomial(N: int, j: int, R: FormalRing) -> FormalScalar:
    """Gaussian binomial extended to negative upper index via [-n, j] = (-1)^j [n+j-1, j]."""
    if j < 0:
        return R.zero()
    if N >= 0:
        return quantum_binomial(N, j, R)
    return quantum_binomial(-N + j - 1, j, R) * (-1) ** j


def xi_formal_body(a: int, b: int, k: int) -> FormalScalar:
    """The displayed product for a even, b odd, without the unit eta'."""
    R = FormalRing(3)
    alpha = a // 2 - 1
    beta = (b - 1) // 2
    q = R.q(1)
    body = quantum_factorial(alpha, R) * quantum_factorial(beta, R)
    body = body * quantum_integer(alpha + beta + 2 - k, R)
    body = body * (q - R.q(-1)) ** (alpha + beta + 1)
    total = R.zero()
    for j in range(beta + 1):
        term = _general_binomial(k - 1, beta - j, R) * _general_binomial(alpha + beta + 1 - k, j, R)
        total = total + term * R.q(j * (-3 * (alpha + beta + 2) + 2 * k))
    return body * total


def xi_formal_case_check(a: int, b: int, i: int, k: int) -> FormalCaseReport:
    """Compare brute force with the even-a, odd-b formula up to a unit +-p^e."""
    if a % 2 or not b % 2 or a < 2 or not 0 < k < a + b + 1:
        return FormalCaseReport("out-of-scope")
    R = FormalRing(3)
    brute = xi_bruteforce(a, b, i, k, R)
    body = xi_formal_body(a, b, k)
    if not body or not brute:
        status = "match" if (not body and not brute) else "mismatch"
        return FormalCaseReport(status, None, brute, body)
    e = brute.max_exp() - body.max_exp()
    c = Fraction(brute.terms[brute.max_exp()]) / Fraction(body.terms[body.max_exp()])
    unit = FormalScalar.p(e, c)
    ok = c in (1, -1) and brute == unit * body
    return FormalCaseReport("match" if ok else "mismatch", unit, brute, body)
