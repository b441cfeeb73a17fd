"""
Linear algebra over the two scalar fields used for operator matrices.

ExactField works in Q(xi) with Cyclotomic entries (object arrays).
ModularField works in F_p for a prime p = 1 mod N, sending xi to a fixed
primitive N-th root of unity g in F_p (int64 arrays).  Reduction modulo the
prime ideal (p, xi - g) is a ring map, so a nonzero minor over F_p lifts to a
nonzero minor over Q(xi): modular ranks are lower bounds for exact ranks.

>>> F = ExactField(3, 2)
>>> F.rank(F.matrix([[F.one(), F.zeta(1)], [F.zeta(1), F.zeta(2)]]))
1
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import isprime, primitive_root

from .exactnum import Cyclotomic, CyclotomicRing


class ExactField:
    kind = "exact"

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        self.N = 2 * n * m
        self.ring = CyclotomicRing(n, m)
        self.dtype = object
        self._zero = Cyclotomic.zero(self.N)
        self._one = Cyclotomic.one(self.N)

    @property
    def tag(self) -> str:
        return "exact"

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def const(self, c):
        return Cyclotomic.from_int(self.N, c)

    def xi(self, e: int):
        return self.ring.p(e)

    def zeta(self, k: int):
        return self.ring.z(k)

    def signed_zeta(self, sign: int, k: int):
        v = self.ring.z(k)
        return v if sign > 0 else -v

    def from_cyclotomic(self, c: Cyclotomic):
        return c

    def is_zero(self, x) -> bool:
        return not x

    def zeros(self, shape):
        a = np.empty(shape, dtype=object)
        a.fill(self._zero)
        return a

    def matrix(self, rows):
        rows = list(rows)
        if not rows:
            return self.zeros((0, 0))
        a = self.zeros((len(rows), len(rows[0])))
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                a[i, j] = v
        return a

    def identity(self, k: int):
        a = self.zeros((k, k))
        for i in range(k):
            a[i, i] = self._one
        return a

    def matmul(self, A, B):
        if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        out = self.zeros((A.shape[0], B.shape[1]))
        # sparse-aware product: skip zero entries of A
        for i in range(A.shape[0]):
            row = A[i]
            acc = None
            for k in range(A.shape[1]):
                a = row[k]
                if a:
                    term = [a * b if b else None for b in B[k]]
                    if acc is None:
                        acc = [t if t is not None else self._zero for t in term]
                    else:
                        acc = [x + t if t is not None else x for x, t in zip(acc, term)]
            if acc is not None:
                out[i] = acc
        return out

    def add(self, A, B):
        return A + B

    def scale(self, A, c):
        out = self.zeros(A.shape)
        if c:
            for idx, v in np.ndenumerate(A):
                if v:
                    out[idx] = v * c
        return out

    def all_zero(self, A) -> bool:
        return not any(bool(v) for v in A.flat)

    def equal(self, A, B) -> bool:
        return A.shape == B.shape and all(x == y for x, y in zip(A.flat, B.flat))

    def rref(self, A):
        """Reduced row echelon form by Gauss-Jordan; returns (R, pivots)."""
        rows = [list(r) for r in A]
        ncols = A.shape[1] if len(A.shape) == 2 else 0
        pivots = []
        r = 0
        for c in range(ncols):
            p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = rows[r][c].inv()
            rows[r] = [v * inv if v else v for v in rows[r]]
            nz = [j for j, v in enumerate(rows[r]) if v]
            prow = rows[r]
            for k in range(len(rows)):
                if k != r:
                    f = rows[k][c]
                    if f:
                        rk = rows[k]
                        for j in nz:
                            rk[j] = rk[j] - f * prow[j]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        R = self.matrix(rows[:r]) if r else self.zeros((0, ncols))
        return R, pivots

    def rank(self, A) -> int:
        """Rank by forward elimination (no back substitution)."""
        rows = [list(r) for r in A if any(bool(v) for v in r)]
        if not rows:
            return 0
        ncols = len(rows[0])
        rank = 0
        for c in range(ncols):
            p = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
            if p is None:
                continue
            rows[rank], rows[p] = rows[p], rows[rank]
            prow = rows[rank]
            inv = prow[c].inv()
            nz = [j for j in range(c, ncols) if prow[j]]
            for k in range(rank + 1, len(rows)):
                f = rows[k][c]
                if f:
                    f = f * inv
                    rk = rows[k]
                    for j in nz:
                        rk[j] = rk[j] - f * prow[j]
            rank += 1
            if rank == len(rows):
                break
        return rank

    def left_nullspace(self, A):
        """Basis (as rows) of {c : c A = 0}."""
        return self.nullspace(A.T)

    def nullspace(self, A):
        """Basis (as rows) of {v : A v = 0}."""
        ncols = A.shape[1]
        R, pivots = self.rref(A)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for fcol in free:
            v = [self._zero] * ncols
            v[fcol] = self._one
            for i, pc in enumerate(pivots):
                if R[i, fcol]:
                    v[pc] = -R[i, fcol]
            basis.append(v)
        return self.matrix(basis) if basis else self.zeros((0, ncols))

    def to_json_scalar(self, x):
        return x.to_json()

    def from_json_scalar(self, data):
        return Cyclotomic.from_json(data)

    def to_cyclotomic(self, x) -> Cyclotomic:
        return x


@lru_cache(maxsize=None)
def find_prime(N: int, index: int = 0, lower: int = 1 << 24):
    """The index-th prime p = 1 mod N above `lower`, with a primitive N-th root g."""
    k = lower // N + 1
    found = -1
    while True:
        p = k * N + 1
        if isprime(p):
            found += 1
            if found == index:
                h = primitive_root(p)
                g = pow(h, (p - 1) // N, p)
                return p, g
        k += 1


class ModularField:
    kind = "modular"

    def __init__(self, n: int, m: int, index: int = 0):
        self.n, self.m = n, m
        self.N = 2 * n * m
        self.p, self.g = find_prime(self.N, index)
        assert self.p < (1 << 26)
        self.dtype = np.int64
        self._pows = [pow(self.g, e, self.p) for e in range(self.N)]
        self.index = index

    @property
    def tag(self) -> str:
        return f"mod{self.p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def const(self, c):
        from fractions import Fraction

        c = Fraction(c)
        return c.numerator % self.p * pow(c.denominator, -1, self.p) % self.p

    def xi(self, e: int):
        return self._pows[e % self.N]

    def zeta(self, k: int):
        return self._pows[(2 * k) % self.N]

    def signed_zeta(self, sign: int, k: int):
        v = self._pows[(2 * k) % self.N]
        return v if sign > 0 else (-v) % self.p

    def from_cyclotomic(self, c: Cyclotomic) -> int:
        """Reduce a cyclotomic number modulo (p, xi - g)."""
        assert c.N == self.N
        p = self.p
        acc = 0
        for t, a in enumerate(c.num):
            if a:
                acc += a * self._pows[t]
        if c.den % p == 0:
            raise ZeroDivisionError("denominator divisible by the chosen prime")
        return acc % p * pow(c.den, -1, p) % p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def matrix(self, rows):
        rows = list(rows)
        if not rows:
            return self.zeros((0, 0))
        return np.array(rows, dtype=np.int64) % self.p

    def identity(self, k: int):
        return np.eye(k, dtype=np.int64)

    def matmul(self, A, B):
        return (A @ B) % self.p

    def add(self, A, B):
        return (A + B) % self.p

    def scale(self, A, c):
        return (A * (c % self.p)) % self.p

    def all_zero(self, A) -> bool:
        return not np.any(A % self.p)

    def equal(self, A, B) -> bool:
        return A.shape == B.shape and not np.any((A - B) % self.p)

    def rref(self, A):
        p = self.p
        M = np.array(A, dtype=np.int64) % p
        nrows, ncols = M.shape
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(M[r:, c])[0]
            if len(nz) == 0:
                continue
            k = r + nz[0]
            if k != r:
                M[[r, k]] = M[[k, r]]
            inv = pow(int(M[r, c]), p - 2, p)
            M[r] = (M[r] * inv) % p
            col = M[:, c].copy()
            col[r] = 0
            rows = np.nonzero(col)[0]
            if len(rows):
                M[rows] = (M[rows] - np.outer(col[rows], M[r]) % p) % p
            pivots.append(c)
            r += 1
        return M[:r], pivots

    def rank(self, A) -> int:
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def left_nullspace(self, A):
        return self.nullspace(A.T)

    def nullspace(self, A):
        p = self.p
        ncols = A.shape[1]
        R, pivots = self.rref(A)
        free = [c for c in range(ncols) if c not in pivots]
        basis = np.zeros((len(free), ncols), dtype=np.int64)
        for t, fcol in enumerate(free):
            basis[t, fcol] = 1
            for i, pc in enumerate(pivots):
                basis[t, pc] = (-R[i, fcol]) % p
        return basis

    def to_json_scalar(self, x):
        return str(int(x))

    def from_json_scalar(self, data):
        return int(data)


def make_field(kind: str, n: int, m: int, index: int = 0):
    if kind == "exact":
        return ExactField(n, m)
    if kind == "modular":
        return ModularField(n, m, index)
    raise ValueError(f"unknown field kind {kind!r}")
