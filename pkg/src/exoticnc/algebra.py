"""
The exotic nilCoxeter algebra NC(m,m,n) as operators on the coinvariant algebra.

Every element of NC(m,m,n) is R^W-linear, so it is determined by its action on
C = R/(R^W_+).  Each Demazure operator becomes a GradedOperator: one matrix per
source degree, in the standard-monomial bases of the slices of C.  Words are
composed by matrix products; degree-d pieces of NC are spans of the operators
of one reduced word per group element of length d.

For n = 3 the reduced word of an element is the canonical word w(a,b,i).  For
other n, one word per element is found by breadth-first search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .affine import (
    CLOCKWISE,
    WIDDERSHINS,
    AffinePerm,
    abi_elements,
    abi_word,
    coxeter_length,
    elements_by_length,
    word_to_perm,
)
from .coinv import Coinvariants, J_operator, pi_m, top_degree
from .demazure import OperatorExpr, demazure_monomial, expr_apply, theta, xi_closed_formula
from .exactnum import Cyclotomic, CyclotomicRing
from .linalg import ExactField, make_field
from .poly import MultiPoly
from .refrep import braid_scalar

DEFAULT_BUDGET = 200_000


class CapacityError(RuntimeError):
    """Raised when a request exceeds the configured word-evaluation budget."""


# ---------------------------------------------------------------------------
# graded operators


@dataclass
class GradedOperator:
    """R^W-linear operator on C: blocks[e] maps C_e to C_{e+deg} (deg <= 0)."""

    deg: int
    blocks: dict
    field: object

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self o other."""
        F = self.field
        deg = self.deg + other.deg
        blocks = {}
        for e, B in other.blocks.items():
            A = self.blocks.get(e + other.deg)
            if A is None:
                continue
            blocks[e] = F.matmul(A, B)
        return GradedOperator(deg, blocks, F)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        if other.deg != self.deg:
            raise ValueError("adding operators of different degrees")
        F = self.field
        keys = sorted(set(self.blocks) | set(other.blocks))
        blocks = {}
        for e in keys:
            if e in self.blocks and e in other.blocks:
                blocks[e] = F.add(self.blocks[e], other.blocks[e])
            else:
                blocks[e] = self.blocks.get(e, other.blocks.get(e))
        return GradedOperator(self.deg, blocks, F)

    def scale(self, c) -> "GradedOperator":
        return GradedOperator(self.deg, {e: self.field.scale(B, c) for e, B in self.blocks.items()}, self.field)

    def flatten(self) -> list:
        """Entries in ascending source degree, each block row-major."""
        out = []
        for e in sorted(self.blocks):
            out.extend(self.blocks[e].reshape(-1).tolist())
        return out

    def is_zero(self) -> bool:
        return all(self.field.all_zero(B) for B in self.blocks.values())

    def equals(self, other: "GradedOperator") -> bool:
        if self.deg != other.deg:
            return False
        return (self + other.scale(self.field.const(-1))).is_zero()


@dataclass
class RelationSet:
    degree: int
    words: list  # basis words of this degree
    vectors: list  # kernel basis as coefficient vectors over the field
    kernel_basis: list = field(default_factory=list)  # OperatorExpr, Cyclotomic coefficients (exact only)

    @property
    def rank(self) -> int:
        return len(self.vectors)


@dataclass
class GradedDims:
    n: int
    m: int
    dims: list

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "dims": list(self.dims)}

    def text(self) -> str:
        return " ".join(str(d) for d in self.dims) + f" | total {self.total}"


# ---------------------------------------------------------------------------
# word bases: one reduced word per element, by length


class WordBasis:
    """For each length d, the element list, reduced words and index lookup."""

    def __init__(self, n: int, max_len: int):
        self.n = n
        self.words = []
        self.elements = []
        self.index = []
        if n == 3:
            for d in range(max_len + 1):
                if d == 0:
                    ws = [()]
                else:
                    ws = [abi_word(t.a, t.b, t.i, 3) for t in abi_elements(d, 3)]
                self._add_level(ws)
        else:
            levels = elements_by_length(n, max_len)
            for lvl in levels:
                items = sorted(lvl.items(), key=lambda kv: kv[1])
                self._add_level([w for _, w in items])

    def _add_level(self, ws):
        els = [word_to_perm(w, self.n) for w in ws]
        self.words.append(ws)
        self.elements.append(els)
        self.index.append({g: k for k, g in enumerate(els)})

    def size(self, d: int) -> int:
        return len(self.words[d])

    def express(self, w: Sequence[int]):
        """(index, z-exponent) with d_w = z^e d_{basis word}, or None if w is not reduced."""
        d = len(w)
        g = word_to_perm(w, self.n)
        if coxeter_length(g) != d:
            return None
        k = self.index[d][g]
        return k, braid_scalar(tuple(w), self.words[d][k], self.n)


# ---------------------------------------------------------------------------
# the algebra


class NCAlgebra:
    """NC(m,m,n) realized on C over an exact or modular field."""

    def __init__(self, n: int, m: int, field="exact", cache_dir="default", budget: int = DEFAULT_BUDGET):
        self.n, self.m = n, m
        self.field = make_field(field, n, m) if isinstance(field, str) else field
        self.C = Coinvariants(n, m, self.field, cache_dir)
        self.top = self.C.top
        self.budget = budget
        self.evaluations = 0
        self._basis_index = [
            {e: j for j, e in enumerate(self.C.basis(d))} for d in range(self.top + 1)
        ]
        self.D = [self._demazure_operator(i) for i in range(n)]
        self._ops = {(): self.identity()}
        self._wordbasis = None

    # -- building blocks
    def identity(self) -> GradedOperator:
        F = self.field
        return GradedOperator(0, {e: F.identity(self.C.dims[e]) for e in range(self.top + 1)}, F)

    def _demazure_operator(self, i: int) -> GradedOperator:
        F = self.field
        blocks = {}
        for e in range(1, self.top + 1):
            src = self.C.basis(e)
            M = F.zeros((self.C.dims[e - 1], len(src)))
            for col, mono in enumerate(src):
                for sign, k, e2 in demazure_monomial(i, mono):
                    c = F.signed_zeta(sign, k)
                    for j, v in self.C.nf_vector(e2).items():
                        if F.kind == "exact":
                            M[j, col] = M[j, col] + c * v
                        else:
                            M[j, col] = (M[j, col] + c * int(v)) % F.p
            blocks[e] = M
        return GradedOperator(-1, blocks, F)

    def _charge(self, k: int = 1):
        self.evaluations += k
        if self.evaluations > self.budget:
            raise CapacityError(
                f"word-evaluation budget {self.budget} exceeded; raise --budget to continue"
            )

    def word_operator(self, w: Sequence[int]) -> GradedOperator:
        """d_w, memoized on suffixes (d_w = d_{w[0]} o d_{w[1:]})."""
        w = tuple(a % self.n for a in w)
        if w in self._ops:
            return self._ops[w]
        if len(w) > self.top:
            op = GradedOperator(-len(w), {}, self.field)
        else:
            self._charge()
            op = self.D[w[0]].compose(self.word_operator(w[1:]))
        self._ops[w] = op
        return op

    def operator_matrix(self, e: OperatorExpr) -> GradedOperator:
        F = self.field
        total = None
        for c, w in e.terms:
            op = self.word_operator(w).scale(F.from_cyclotomic(c) if isinstance(c, Cyclotomic) else F.const(c))
            total = op if total is None else total + op
        if total is None:
            return GradedOperator(0, {}, F)
        return total

    def operator_matrix_direct(self, e: OperatorExpr) -> GradedOperator:
        """Oracle: apply the expression to each basis monomial, then take normal forms."""
        F = self.field
        if F.kind != "exact":
            raise ValueError("direct evaluation needs the exact field")
        ring = F.ring
        deg = e.degree()
        blocks = {}
        for src in range(-deg, self.top + 1):
            M = F.zeros((self.C.dims[src + deg], self.C.dims[src]))
            for col, mono in enumerate(self.C.basis(src)):
                img = self.C.normal_form(expr_apply(e, MultiPoly.monomial(mono, ring.one(), ring)))
                for e2, c in img.terms.items():
                    M[self._basis_index[src + deg][e2], col] = c
            blocks[src] = M
        return GradedOperator(deg, blocks, F)

    # -- spans
    def word_basis(self) -> WordBasis:
        if self._wordbasis is None:
            self._wordbasis = WordBasis(self.n, self.top)
        return self._wordbasis

    def degree_matrix(self, d: int):
        """Rows: flattened operators of the basis words of length d."""
        W = self.word_basis()
        rows = [self.word_operator(w).flatten() for w in W.words[d]]
        return self.field.matrix(rows)

    def dim(self, d: int) -> int:
        if d == 0:
            return 1
        if d > self.top:
            return 0
        return self.field.rank(self.degree_matrix(d))

    def graded_dims(self) -> GradedDims:
        return GradedDims(self.n, self.m, [self.dim(d) for d in range(self.top + 1)])

    def relation_kernel(self, d: int) -> RelationSet:
        W = self.word_basis()
        F = self.field
        if d == 0:
            return RelationSet(0, [()], [])
        K = F.left_nullspace(self.degree_matrix(d))
        vecs = [list(K[r]) for r in range(K.shape[0])]
        exprs = []
        if F.kind == "exact":
            for v in vecs:
                exprs.append(OperatorExpr([(c, w) for c, w in zip(v, W.words[d]) if c]))
        return RelationSet(d, list(W.words[d]), vecs, exprs)

    def contains_relation(self, e: OperatorExpr) -> bool:
        """Whether e (homogeneous, reduced words) evaluates to zero on C."""
        return self.operator_matrix(e).is_zero()

    # -- formal left/right multiplication in the quadratic + braid algebra
    def multiply_formal(self, vec, d: int, i: int, side: str):
        """d_i * (sum vec_k d_{w_k}) (side='left') or (...) * d_i, in the length-(d+1) basis."""
        return formal_multiply(self.word_basis(), self.field, vec, d, i, side)

    def ideal_closure(self, vectors, d: int):
        """Span of left and right multiples by generators of vectors in degree d (returned in degree d+1)."""
        return closure_step(self.word_basis(), self.field, vectors, d)

    def new_relation_count(self, d: int) -> int:
        F = self.field
        W = self.word_basis()
        if d <= 1:
            return self.relation_kernel(d).rank if d == 1 else 0
        K_d = self.relation_kernel(d)
        K_prev = self.relation_kernel(d - 1)
        self._charge(2 * self.n * K_prev.rank)
        imgs = closure_step(W, F, K_prev.vectors, d - 1)
        closure = F.rank(F.matrix(imgs)) if imgs else 0
        return K_d.rank - closure


def formal_multiply(W: WordBasis, F, vec, d: int, i: int, side: str) -> list:
    out = [F.zero()] * W.size(d + 1)
    for k, c in enumerate(vec):
        if F.is_zero(c):
            continue
        w = W.words[d][k]
        word = (i,) + w if side == "left" else w + (i,)
        res = W.express(word)
        if res is None:
            continue
        idx, e = res
        term = c * F.zeta(e)
        if F.kind == "modular":
            out[idx] = (out[idx] + term) % F.p
        else:
            out[idx] = out[idx] + term
    return out


def closure_step(W: WordBasis, F, vectors, d: int) -> list:
    imgs = []
    for v in vectors:
        for i in range(W.n):
            for side in ("left", "right"):
                img = formal_multiply(W, F, v, d, i, side)
                if any(not F.is_zero(x) for x in img):
                    imgs.append(img)
    return imgs


# ---------------------------------------------------------------------------
# module-level operations


_ALGEBRAS: dict = {}


def get_algebra(n: int, m: int, field="exact", cache_dir="default", budget: int = DEFAULT_BUDGET) -> NCAlgebra:
    key = (n, m, field if isinstance(field, str) else field.tag)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = NCAlgebra(n, m, field, cache_dir, budget)
        _ALGEBRAS[key] = alg
    alg.budget = max(alg.budget, budget)
    return alg


def default_field(m: int) -> str:
    """Exact arithmetic up to m = 7, modular ranks above."""
    return "exact" if m <= 7 else "modular"


def operator_matrix(e: OperatorExpr, n: int, m: int, field="exact") -> GradedOperator:
    return get_algebra(n, m, field).operator_matrix(e)


def nc_graded_dims(n: int, m: int, field: Optional[str] = None, cache_dir="default", budget: int = 10**7) -> GradedDims:
    field = field or default_field(m)
    alg = get_algebra(n, m, field, cache_dir, budget)
    return alg.graded_dims()


def nc_graded_dims_checked(n: int, m: int, primes: int = 2, cache_dir="default") -> GradedDims:
    """Modular graded dimensions, requiring agreement across several primes."""
    results = []
    for idx in range(primes):
        F = make_field("modular", n, m, idx)
        alg = NCAlgebra(n, m, F, cache_dir, 10**7)
        results.append(alg.graded_dims().dims)
    if any(r != results[0] for r in results):
        raise AssertionError(f"modular ranks disagree across primes: {results}")
    return GradedDims(n, m, results[0])


def relation_kernel(n: int, m: int, d: int, field: Optional[str] = None) -> RelationSet:
    return get_algebra(n, m, field or default_field(m)).relation_kernel(d)


def new_relation_count(n: int, m: int, d: int, field: Optional[str] = None, budget: int = DEFAULT_BUDGET, cache_dir="default") -> int:
    if n != 3:
        raise ValueError("relation counting is implemented for n = 3")
    words_needed = 3 * d * (d + 1) // 2
    if words_needed > budget:
        raise CapacityError(f"degree {d} needs {words_needed} word evaluations, budget is {budget}")
    alg = get_algebra(n, m, field or default_field(m), cache_dir, budget)
    return alg.new_relation_count(d)


def roundabout_exprs(n: int, m: int) -> list:
    ring = CyclotomicRing(n, m)
    out = []
    for i in range(n):
        out.append(theta(i, m, CLOCKWISE, ring))
        out.append(theta(i, m, WIDDERSHINS, ring))
    return out


def conjectureA_dims(n: int, m: int, budget: int = DEFAULT_BUDGET) -> GradedDims:
    """Graded dimension of the algebra on d_1, d_2, d_0 modulo the quadratic,
    braid and both roundabout relations, by degreewise word rewriting."""
    if n != 3:
        raise ValueError("conjectureA_dims is stated for n = 3")
    max_d = 4 * m + 1
    cost = sum(3 * d for d in range(max_d + 1)) * 6
    if cost > budget:
        raise CapacityError(f"conjectureA for m = {m} needs about {cost} word rewrites, budget is {budget}")
    F = ExactField(n, m)
    W = WordBasis(n, max_d + 1)
    dims = [1]
    ideal = []
    for d in range(1, max_d + 1):
        if d == 2 * m:
            for e in roundabout_exprs(n, m):
                vec = [F.zero()] * W.size(d)
                for c, w in e.terms:
                    idx, z = W.express(w)
                    vec[idx] = vec[idx] + c * F.zeta(z)
                ideal.append(vec)
        elif d > 2 * m:
            ideal = closure_step(W, F, ideal, d - 1)
        if ideal:
            R, piv = F.rref(F.matrix(ideal))
            ideal = [list(R[r]) for r in range(len(piv))]
        dims.append(W.size(d) - len(ideal))
    while dims and dims[-1] == 0:
        dims.pop()
    return GradedDims(n, m, dims)


# ---------------------------------------------------------------------------
# the special element gamma for m = 2


S, T, U = 1, 2, 0


def gamma_expr() -> OperatorExpr:
    ring = CyclotomicRing(3, 2)
    z = ring.z
    return OperatorExpr(
        [
            (ring.one(), (T, S)),
            (-z(1), (U, T)),
            (z(2), (S, U)),
            (-z(2), (U, S)),
            (z(1), (T, U)),
            (-ring.one(), (S, T)),
        ]
    )


@dataclass
class GammaReport:
    annihilated_by_degree4: bool
    unique_up_to_scalar: bool
    kills_degree2: bool
    image_in_ideal: bool
    quotient_dims: list
    kernel_dim: int = 0

    @property
    def quotient_ok(self) -> bool:
        return self.quotient_dims == [1, 3, 5, 6, 5, 3, 1]

    @property
    def all_pass(self) -> bool:
        return (
            self.annihilated_by_degree4
            and self.unique_up_to_scalar
            and self.kills_degree2
            and self.image_in_ideal
            and self.quotient_ok
        )


def gamma_checks(m: int = 2, cache_dir="default") -> GammaReport:
    if m != 2:
        raise ValueError("gamma is defined for m = 2")
    alg = get_algebra(3, 2, "exact", cache_dir)
    F = alg.field
    ring = F.ring
    W = alg.word_basis()
    G = alg.operator_matrix(gamma_expr())
    deg4 = [alg.word_operator(w) for w in W.words[4]]
    # (i)
    ann = all(B.compose(G).is_zero() and G.compose(B).is_zero() for B in deg4)
    # (ii) the degree-2 elements with the same property
    rows = []
    for w in W.words[2]:
        O = alg.word_operator(w)
        row = []
        for B in deg4:
            row.extend(B.compose(O).flatten())
            row.extend(O.compose(B).flatten())
        rows.append(row)
    K = F.left_nullspace(F.matrix(rows))
    gvec = [F.zero()] * len(W.words[2])
    for c, w in gamma_expr().terms:
        idx, e = W.express(w)
        gvec[idx] = gvec[idx] + c * F.zeta(e)
    unique = K.shape[0] == 1 and F.rank(F.matrix([list(K[0]), gvec])) == 1
    # (iii)
    from .poly import monomials_of_degree

    kills = all(
        not expr_apply(gamma_expr(), MultiPoly.monomial(e, ring.one(), ring))
        for e in monomials_of_degree(3, 2)
    )
    # (iv)
    img = expr_apply(gamma_expr(), MultiPoly.monomial((4, 2, 0), ring.one(), ring))
    in_ideal = not alg.C.normal_form(img)
    # (v) NC / NC.gamma
    nc_dims = alg.graded_dims().dims
    quot = []
    for d in range(alg.top + 1):
        if d < 2:
            quot.append(nc_dims[d])
            continue
        prods = [alg.word_operator(w).compose(G).flatten() for w in W.words[d - 2]]
        quot.append(nc_dims[d] - F.rank(F.matrix(prods)))
    return GammaReport(ann, unique, kills, in_ideal, quot, K.shape[0])


# ---------------------------------------------------------------------------
# Frobenius traces in the bottom degree (n = 3)


@dataclass
class TraceRow:
    a: int
    b: int
    i: int
    xi: object
    is_trace: bool
    formula: object
    matches: bool


def j_top_block(alg: NCAlgebra):
    """J restricted to C_top -> C_0 (a 1x1 block), over the algebra's field."""
    F = alg.field
    ring = CyclotomicRing(alg.n, alg.m)
    (mono,) = alg.C.basis(alg.top)
    val = J_operator(MultiPoly.monomial(mono, ring.one(), ring), alg.m).constant_term()
    return F.from_cyclotomic(val)


def frobenius_trace_classifier(n: int, m: int, field: Optional[str] = None, cache_dir="default") -> list:
    if n != 3:
        raise ValueError("the trace classification is stated for n = 3")
    alg = get_algebra(n, m, field or default_field(m), cache_dir, 10**7)
    F = alg.field
    jval = j_top_block(alg)
    jinv = jval.inv() if F.kind == "exact" else pow(int(jval), F.p - 2, F.p)
    rows = []
    for a in range(3 * m):
        b = 3 * m - 1 - a
        formula = F.from_cyclotomic(xi_closed_formula(a, m))
        for i in (1, 2, 0):
            op = alg.word_operator(abi_word(a, b, i, 3))
            block = op.blocks[alg.top][0, 0]
            xi = block * jinv
            if F.kind == "modular":
                xi %= F.p
            rows.append(TraceRow(a, b, i, xi, not F.is_zero(xi), formula, F.is_zero(xi - formula)))
    return rows


# ---------------------------------------------------------------------------
# consistency checks and reports


def braid_consistency(n: int, m: int, max_len: int = 6) -> list:
    """Check d_x = zeta^e d_y on C for every reduced word x of every element of
    length <= max_len, with y the basis word and e from the inversion scalars.

    Returns the list of failing words (empty on success)."""
    from .affine import reduced_words

    alg = get_algebra(n, m, "exact")
    W = alg.word_basis()
    F = alg.field
    failures = []
    for d in range(1, min(max_len, alg.top) + 1):
        for k, y in enumerate(W.words[d]):
            base = alg.word_operator(y)
            for x in reduced_words(W.elements[d][k]):
                idx, e = W.express(x)
                if idx != k or not alg.word_operator(x).equals(base.scale(F.zeta(e))):
                    failures.append(x)
    return failures


def reversal_check(n: int, m: int, degrees=None, conjugate: bool = False) -> dict:
    """For each degree, whether reversing the words of every kernel relation
    (optionally conjugating coefficients, zeta -> 1/zeta) again gives a relation.

    Reported as evidence only; returns {degree: (relations, reversed relations that hold)}."""
    alg = get_algebra(n, m, "exact")
    out = {}
    for d in degrees or range(1, alg.top + 1):
        rel = alg.relation_kernel(d)
        good = 0
        for e in rel.kernel_basis:
            rev = OperatorExpr([(c.conj() if conjugate else c, tuple(reversed(w))) for c, w in e.terms])
            if alg.operator_matrix(rev).is_zero():
                good += 1
        out[d] = (rel.rank, good)
    return out


def relation_polynomial_check(rel: RelationSet, n: int, m: int, polys) -> bool:
    """Apply each kernel relation directly to the given polynomials; all results
    must lie in the ideal (zero normal form)."""
    alg = get_algebra(n, m, "exact")
    for e in rel.kernel_basis:
        for f in polys:
            if alg.C.normal_form(expr_apply(e, f)):
                return False
    return True


def table_rows(n: int, m: int, with_relations: bool = True, field: Optional[str] = None, budget: int = DEFAULT_BUDGET) -> list:
    """Rows (m, degree, dim, new_relations) in the layout of the dimension table."""
    dims = nc_graded_dims(n, m, field).dims
    rows = []
    for d, v in enumerate(dims):
        rel = new_relation_count(n, m, d, field, budget) if with_relations and n == 3 else ""
        rows.append((m, d, v, rel))
    return rows
