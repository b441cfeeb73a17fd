"""
The deformed reflection representation V_z and its specialization V_m.

Every group element acts by a monomial matrix x_j -> z^{k_j} x_{perm(j)}, so a
matrix is stored as a permutation of slots plus integer z-exponents.  In the
specialized setting the exponents live in Z/nm.

>>> s1 = simple_reflection_matrix(1, 3)
>>> s1.image(0)
(1, 1)
>>> (s1 * s1).is_identity()
True
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .exactnum import CyclotomicRing, FormalRing
from .poly import MultiPoly, slot


@dataclass(frozen=True)
class MonomialMatrix:
    """Linear map x_j -> z^{zexp[j]} x_{perm[j]} on slots 0..n-1.

    modulus is None for the formal representation and nm after specializing.
    """

    perm: tuple
    zexp: tuple
    modulus: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int, modulus=None) -> "MonomialMatrix":
        return cls(tuple(range(n)), (0,) * n, modulus)

    def image(self, j: int) -> tuple:
        """(target slot, z exponent) of the basis vector in slot j."""
        return self.perm[j], self.zexp[j]

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (self o other)(x_j) = self(z^k x_{p(j)})
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        zexp = [other.zexp[j] + self.zexp[other.perm[j]] for j in range(self.n)]
        if self.modulus:
            zexp = [k % self.modulus for k in zexp]
        return MonomialMatrix(perm, tuple(zexp), self.modulus)

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.n
        zexp = [0] * self.n
        for j in range(self.n):
            perm[self.perm[j]] = j
            zexp[self.perm[j]] = -self.zexp[j]
        if self.modulus:
            zexp = [k % self.modulus for k in zexp]
        return MonomialMatrix(tuple(perm), tuple(zexp), self.modulus)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and not any(self.zexp)

    def specialize(self, m: int) -> "MonomialMatrix":
        mod = self.n * m
        return MonomialMatrix(self.perm, tuple(k % mod for k in self.zexp), mod)

    def scale(self, ring) -> tuple:
        return tuple(ring.z(k) for k in self.zexp)

    def apply(self, f: MultiPoly) -> MultiPoly:
        """The ring automorphism of polynomials induced by this linear map."""
        ring = f.ring
        out = {}
        for e, c in f.terms.items():
            new = [0] * self.n
            k = 0
            for j, a in enumerate(e):
                if a:
                    new[self.perm[j]] = a
                    k += a * self.zexp[j]
            ne = tuple(new)
            v = c * ring.z(k) if k else c
            out[ne] = out[ne] + v if ne in out else v
        return MultiPoly(self.n, out, ring)


def simple_reflection_matrix(i: int, n: int, m: Optional[int] = None) -> MonomialMatrix:
    """s_i: x_i -> z x_{i+1}, x_{i+1} -> z^-1 x_i, other x_j fixed."""
    a, b = slot(i, n), slot(i + 1, n)
    perm = list(range(n))
    perm[a], perm[b] = b, a
    zexp = [0] * n
    zexp[a] = 1
    zexp[b] = -1
    mat = MonomialMatrix(tuple(perm), tuple(zexp))
    return mat.specialize(m) if m else mat


def word_matrix(w: Sequence[int], n: int, m: Optional[int] = None) -> MonomialMatrix:
    """s_{i1} s_{i2} ... s_{id} as a monomial matrix."""
    g = MonomialMatrix.identity(n, n * m if m else None)
    for a in w:
        g = g * simple_reflection_matrix(a, n, m)
    return g


def sigma_matrix(n: int) -> MonomialMatrix:
    return MonomialMatrix(tuple((j + 1) % n for j in range(n)), (0,) * n)


def apply_sigma(f: MultiPoly) -> MultiPoly:
    """sigma: x_i -> x_{i+1}, scalars fixed."""
    return sigma_matrix(f.n).apply(f)


def apply_tau(f: MultiPoly) -> MultiPoly:
    """tau: x_i -> x_{1-i}, scalars conjugated (z -> 1/z)."""
    n = f.n
    perm = tuple(slot(1 - (j + 1), n) for j in range(n))
    g = f.permute_vars(perm)
    return g.map_coeffs(f.ring.conj)


# ---------------------------------------------------------------------------
# translations


def translation_action(a: Sequence[int], m: Optional[int] = None) -> MonomialMatrix:
    """Translation by the root-lattice vector a: x_i -> z^{n a_i} x_i."""
    if sum(a) != 0:
        raise ValueError("translation vectors must sum to zero")
    n = len(a)
    mat = MonomialMatrix(tuple(range(n)), tuple(n * ai for ai in a))
    return mat.specialize(m) if m else mat


def t_long_word(n: int) -> tuple:
    """s_1 s_2 ... s_{n-1} ... s_2 s_1."""
    up = tuple(range(1, n))
    return up + tuple(reversed(up[:-1]))


# ---------------------------------------------------------------------------
# roots


def ordered_distance(i: int, j: int, n: int) -> int:
    """|j - i| read cyclically forwards, in [1, n-1]."""
    return (j - i) % n


@dataclass(frozen=True)
class Root:
    """x_i - z^e x_j for slots i != j."""

    i: int
    j: int
    e: int

    def poly(self, ring) -> MultiPoly:
        n = ring.n
        ei = [0] * n
        ej = [0] * n
        ei[self.i] = 1
        ej[self.j] = 1
        return MultiPoly(n, {tuple(ei): ring.one(), tuple(ej): -ring.z(self.e)}, ring)

    def __repr__(self):
        return f"x{self.i + 1} - z^{self.e} x{self.j + 1}"


def phi1(n: int, max_l: int) -> list:
    """The formal roots x_i - z^{d(i,j)+ln} x_j with 0 <= l <= max_l."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                d = ordered_distance(i, j, n)
                out.extend(Root(i, j, d + l * n) for l in range(max_l + 1))
    return out


def phi1m(n: int, m: int) -> list:
    """Representatives x_i - zeta^{j-i+ln} x_j, i<j, 1<=l<=m (exponents mod nm)."""
    return [
        Root(i, j, (j - i + l * n) % (n * m))
        for i in range(n)
        for j in range(i + 1, n)
        for l in range(1, m + 1)
    ]


def classify_image(g: MonomialMatrix, root: Root) -> tuple:
    """Write g(root) as c*gamma with gamma in Phi^1 and c = sign*z^k.

    Returns (sign, k, gamma).  Formal representation only.
    """
    n = g.n
    A, ka = g.image(root.i)
    B, kb = g.image(root.j)
    # g(root) = z^ka x_A - z^{e+kb} x_B
    ep = root.e + kb - ka
    d = ordered_distance(A, B, n)
    assert (ep - d) % n == 0, "not a root"
    if ep >= d:
        return 1, ka, Root(A, B, ep)
    return -1, root.e + kb, Root(B, A, -ep)


def root_counting_length(w: Sequence[int], n: int, bound: Optional[int] = None) -> int:
    """#{alpha in Phi^1 : w(alpha) in Phi^-}, truncating Phi^1 at l <= bound."""
    g = word_matrix(w, n)
    if bound is None:
        count = root_counting_length(w, n, len(w))
        assert count == root_counting_length(w, n, len(w) + 2), "truncation not stable"
        return count
    return sum(1 for r in phi1(n, bound) if classify_image(g, r)[0] < 0)


def inversion_scalar(w: Sequence[int], n: int) -> tuple:
    """Product of the scalars c_k with beta_k = s_{i1}..s_{i(k-1)}(alpha_{ik}) = c_k gamma_k.

    Returns (sign, z-exponent).  For reduced words the leading coefficient of
    the Demazure composite is (-1)^l / (prod c_k prod gamma_k), so two reduced
    words x, y of one element satisfy d_x = (C_y / C_x) d_y.
    """
    g = MonomialMatrix.identity(n)
    sign, k = 1, 0
    for a in w:
        alpha = Root(slot(a, n), slot(a + 1, n), 1)
        s, kk, _ = classify_image(g, alpha)
        sign *= s
        k += kk
        g = g * simple_reflection_matrix(a, n)
    return sign, k


def braid_scalar(x: Sequence[int], y: Sequence[int], n: int) -> int:
    """The z-exponent e with d_x = z^e d_y for reduced words x, y of one element."""
    sx, kx = inversion_scalar(x, n)
    sy, ky = inversion_scalar(y, n)
    assert sx == sy == 1, "words must be reduced"
    return ky - kx


# ---------------------------------------------------------------------------
# the finite group W_m


@dataclass(frozen=True)
class GroupElement:
    matrix: MonomialMatrix
    sign: int
    length: int


def enumerate_Wm(n: int, m: int) -> list:
    """All elements of W_m (acting on V_m) with their signs, by BFS."""
    gens = [simple_reflection_matrix(i, n, m) for i in range(n)]
    start = MonomialMatrix.identity(n, n * m)
    depth = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in depth:
                depth[h] = depth[g] + 1
                order.append(h)
                queue.append(h)
    return [GroupElement(g, (-1) ** depth[g], depth[g]) for g in order]


def enumerate_finite_Sn(n: int, m: int) -> list:
    """The subgroup generated by s_1..s_{n-1} inside W_m, with signs."""
    gens = [simple_reflection_matrix(i, n, m) for i in range(1, n)]
    start = MonomialMatrix.identity(n, n * m)
    depth = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in depth:
                depth[h] = depth[g] + 1
                order.append(h)
                queue.append(h)
    return [GroupElement(g, (-1) ** depth[g], depth[g]) for g in order]


def delta(n: int, m: int, ring: Optional[CyclotomicRing] = None) -> MultiPoly:
    """Delta, the product of the roots in phi1m(n, m)."""
    ring = ring or CyclotomicRing(n, m)
    out = MultiPoly.const(ring.one(), n, ring)
    for r in phi1m(n, m):
        out = out * r.poly(ring)
    return out


def staircase(n: int, m: int, ring) -> MultiPoly:
    """P = x_1^{(n-1)m} x_2^{(n-2)m} ... x_{n-1}^m."""
    return MultiPoly.monomial(tuple((n - 1 - j) * m for j in range(n)), ring.one(), ring)


def tau_delta_scalar(n: int, m: int, ring: CyclotomicRing):
    """(-1)^{C(n,2)} zeta^{-m C(n+1,3)}."""
    return ring.z(-m * comb(n + 1, 3)) * (-1) ** comb(n, 2)


def omega_check(n: int, m: int) -> MonomialMatrix:
    """The element of cw_{i_R, m(n-1)}, checked independent of i and equal to x_j -> zeta^m x_{j+m}."""
    from .affine import RIGHT, cw

    mats = {word_matrix(cw(i, m * (n - 1), RIGHT, n), n, m) for i in range(n)}
    if len(mats) != 1:
        raise AssertionError("cyclic word element depends on its anchor")
    (omega,) = mats
    for j in range(n):
        target, k = omega.image(j)
        if target != (j + m) % n or k != m % (n * m):
            raise AssertionError(f"omega(x_{j + 1}) is not zeta^m x_{j + 1 + m}")
    return omega
