"""
Sparse multivariate polynomials in x_1..x_n over an exact scalar ring.

Exponent vectors are tuples indexed 0..n-1 for x_1..x_n.  The letter i of a
word refers to x_i with x_0 identified with x_n, i.e. tuple slot (i-1) mod n.

>>> from exoticnc.exactnum import FormalRing
>>> R = FormalRing(3)
>>> x1, x2 = MultiPoly.var(1, R), MultiPoly.var(2, R)
>>> ((x1 - x2) * (x1 + x2)).degree()
2
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Callable, Iterable


def slot(i: int, n: int) -> int:
    """Tuple slot of the variable x_i (indices mod n, x_0 = x_n)."""
    return (i - 1) % n


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent vectors of total degree d, in graded-lex descending order."""
    out = []

    def rec(prefix, remaining, k):
        if k == n - 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, k + 1)

    if n == 0:
        return [()]
    rec((), d, 0)
    return out


class MultiPoly:
    __slots__ = ("n", "terms", "ring")

    def __init__(self, n: int, terms=None, ring=None):
        self.n = n
        self.ring = ring
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def zero(cls, n: int, ring=None) -> "MultiPoly":
        return cls(n, {}, ring)

    @classmethod
    def const(cls, c, n: int, ring=None) -> "MultiPoly":
        return cls(n, {(0,) * n: c}, ring)

    @classmethod
    def monomial(cls, exps, coeff=1, ring=None) -> "MultiPoly":
        exps = tuple(exps)
        if ring is not None and isinstance(coeff, int):
            coeff = ring.const(coeff)
        return cls(len(exps), {exps: coeff}, ring)

    @classmethod
    def var(cls, i: int, ring) -> "MultiPoly":
        n = ring.n
        e = [0] * n
        e[slot(i, n)] = 1
        return cls(n, {tuple(e): ring.one()}, ring)

    def _one(self):
        return self.ring.one() if self.ring is not None else 1

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.n, {e: c for e, c in self.terms.items() if sum(e) == d}, self.ring)

    def coeff(self, exps):
        c = self.terms.get(tuple(exps))
        if c is None:
            return self.ring.zero() if self.ring is not None else 0
        return c

    def constant_term(self):
        return self.coeff((0,) * self.n)

    # -- arithmetic
    def _wrap(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return MultiPoly.const(other, self.n, self.ring)

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return MultiPoly(self.n, out, self.ring or other.ring)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return MultiPoly(self.n, out, self.ring or other.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly(self.n, {}, self.ring)
        return MultiPoly(self.n, {e: v * c for e, v in self.terms.items()}, self.ring)

    def __pow__(self, k: int):
        out = MultiPoly.const(self._one(), self.n, self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == MultiPoly.const(other, self.n, self.ring).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, f: Callable) -> "MultiPoly":
        return MultiPoly(self.n, {e: f(c) for e, c in self.terms.items()}, self.ring)

    def permute_vars(self, perm) -> "MultiPoly":
        """Send x in slot j to slot perm[j]."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.n
            for j, a in enumerate(e):
                new[perm[j]] = a
            out[tuple(new)] = c
        return MultiPoly(self.n, out, self.ring)

    # -- exact division by a linear form x_a - c x_b (slots a != b)
    def divide_linear(self, a: int, b: int, c) -> "MultiPoly":
        """Exact quotient by x_a - c*x_b, dividing along the x_a direction."""
        rem = dict(self.terms)
        quot = {}
        while rem:
            top = max(e[a] for e in rem)
            if top == 0:
                raise ArithmeticError("inexact division by a linear form")
            for e in [e for e in rem if e[a] == top]:
                h = rem.pop(e)
                qe = list(e)
                qe[a] -= 1
                qe = tuple(qe)
                quot[qe] = quot[qe] + h if qe in quot else h
                # subtract -c x_b * x_a^(top-1) * rest
                se = list(qe)
                se[b] += 1
                se = tuple(se)
                v = h * c
                if se in rem:
                    nv = rem[se] + v
                    if nv:
                        rem[se] = nv
                    else:
                        del rem[se]
                else:
                    rem[se] = v
        return MultiPoly(self.n, quot, self.ring)

    # -- serialization
    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
        return {
            "exps": [list(e) for e, _ in items],
            "coeffs": [_scalar_json(c) for _, c in items],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(e) if a
            )
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _scalar_json(c):
    if hasattr(c, "to_json"):
        return c.to_json()
    return str(c)


def all_monomials_upto(n: int, d: int) -> list:
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def elementary_symmetric(k: int, ys: list):
    """e_k of a list of polynomials."""
    n = ys[0].n
    ring = ys[0].ring
    total = MultiPoly.zero(n, ring)
    from itertools import combinations

    for combo in combinations(range(len(ys)), k):
        term = MultiPoly.const(ring.one(), n, ring)
        for j in combo:
            term = term * ys[j]
        total = total + term
    return total


def complete_symmetric(k: int, ys: list):
    """h_k of a list of polynomials."""
    n = ys[0].n
    ring = ys[0].ring
    total = MultiPoly.zero(n, ring)
    if k == 0:
        return MultiPoly.const(ring.one(), n, ring)
    for combo in combinations_with_replacement(range(len(ys)), k):
        term = MultiPoly.const(ring.one(), n, ring)
        for j in combo:
            term = term * ys[j]
        total = total + term
    return total


def random_poly(rng, ring, n: int, max_deg: int, nterms: int, coeff_range: int = 3, homogeneous=None):
    """Random polynomial with small integer coefficients (for property tests)."""
    terms = {}
    for _ in range(nterms):
        d = homogeneous if homogeneous is not None else rng.randint(0, max_deg)
        cut = sorted(rng.randint(0, d) for _ in range(n - 1))
        e = tuple(b - a for a, b in zip([0] + cut, cut + [d]))
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[e] = ring.const(c) * ring.z(rng.randint(-3, 3))
    return MultiPoly(n, terms, ring)


def iter_exponents(n: int, degrees: Iterable[int]):
    for d in degrees:
        yield from monomials_of_degree(n, d)
