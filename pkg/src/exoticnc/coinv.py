"""
Invariant theory of W_m acting on R_m = Q(xi)[x_1..x_n].

The invariants are generated by e_1(y), ..., e_{n-1}(y) with y_k = zeta^{mk} x_k^m
together with x_1 x_2 ... x_n.  The coinvariant algebra C = R / (R^W_+) is
handled degree by degree: each slice row-reduces the degree-d part of the
ideal with monomials in graded-lex order x_1 > x_2 > ... > x_n, so pivots sit
on the largest monomials and the standard monomials span C_d.

>>> [len(s) for s in graded_basis_X((1, 2, 3), 3, 2)]
[1, 3, 5, 6, 5, 3, 1]
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from math import comb, factorial, prod
from pathlib import Path
from typing import Optional, Sequence

from .exactnum import Cyclotomic, CyclotomicRing
from .linalg import ExactField
from .poly import MultiPoly, complete_symmetric, elementary_symmetric, monomials_of_degree
from .refrep import (
    delta,
    enumerate_finite_Sn,
    enumerate_Wm,
    phi1m,
    simple_reflection_matrix,
    staircase,
)

# ---------------------------------------------------------------------------
# generators and Poincare series


@dataclass
class InvariantGens:
    n: int
    m: int
    gens: list  # MultiPoly over CyclotomicRing

    @property
    def degrees(self) -> list:
        return [g.degree() for g in self.gens]


def y_variables(n: int, m: int, ring: CyclotomicRing) -> list:
    """y_k = zeta^{mk} x_k^m."""
    ys = []
    for k in range(1, n + 1):
        e = [0] * n
        e[k - 1] = m
        ys.append(MultiPoly.monomial(tuple(e), ring.z(m * k), ring))
    return ys


def invariant_gens(n: int, m: int, ring: Optional[CyclotomicRing] = None) -> InvariantGens:
    ring = ring or CyclotomicRing(n, m)
    ys = y_variables(n, m, ring)
    gens = [elementary_symmetric(k, ys) for k in range(1, n)]
    gens.append(MultiPoly.monomial((1,) * n, ring.one(), ring))
    for g in gens:
        for i in range(n):
            if simple_reflection_matrix(i, n).apply(g) != g:
                raise AssertionError("generator is not invariant")
    return InvariantGens(n, m, gens)


def poly_mul_lists(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def v_number(k: int) -> list:
    """(k)_v = 1 + v + ... + v^{k-1} as a coefficient list."""
    return [1] * k


def pi_m(n: int, m: int) -> list:
    """Graded dimensions of C: (n)_v (m)_v (2m)_v ... ((n-1)m)_v."""
    out = v_number(n)
    for k in range(1, n):
        out = poly_mul_lists(out, v_number(k * m))
    return out


def top_degree(n: int, m: int) -> int:
    return m * comb(n, 2)


# ---------------------------------------------------------------------------
# the monomial bases X


@dataclass
class MonomialBasis:
    order: tuple  # variables listed from smallest to largest in the total order
    n: int
    m: int
    monomials: list = field(default_factory=list)

    def graded_counts(self) -> list:
        top = top_degree(self.n, self.m)
        out = [0] * (top + 1)
        for e in self.monomials:
            out[sum(e)] += 1
        return out


def _in_X(e: tuple, order: tuple, n: int, m: int) -> bool:
    seen_zero = False
    for k, var in enumerate(order, start=1):
        a = e[var - 1]
        bound = m * (n + 1 - k) - 1 if seen_zero else m * (n - k)
        if a > bound:
            return False
        if a == 0:
            seen_zero = True
    return True


def basis_X(order: Sequence[int], n: int, m: int) -> MonomialBasis:
    """The basis X for a total order i_1 < ... < i_n of the variables."""
    order = tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError("order must list 1..n")
    top = top_degree(n, m)
    mons = []
    for d in range(top + 1):
        for e in monomials_of_degree(n, d):
            if _in_X(e, order, n, m):
                mons.append(e)
    return MonomialBasis(order, n, m, mons)


def graded_basis_X(order, n: int, m: int) -> list:
    b = basis_X(order, n, m)
    out = [[] for _ in range(top_degree(n, m) + 1)]
    for e in b.monomials:
        out[sum(e)].append(e)
    return out


# ---------------------------------------------------------------------------
# coinvariant slices


def default_cache_dir() -> Optional[Path]:
    env = os.environ.get("EXOTICNC_CACHE")
    if env == "":
        return None
    if env:
        return Path(env)
    return Path.home() / ".cache" / "exoticnc"


@dataclass
class CoinvariantSlice:
    n: int
    m: int
    degree: int
    monomials: list  # all monomials of R_d, graded-lex descending
    standard: list  # standard monomials: a basis of C_d
    ideal_columns: list  # columns (monomial indices) of the reduced ideal matrix
    ideal_rref: object  # matrix over the field on ideal_columns
    pivots: list  # pivot positions within ideal_columns
    nf: dict  # monomial -> dict{standard index: coefficient}

    @property
    def dim(self) -> int:
        return len(self.standard)


def _gen_terms(field, gens) -> list:
    """Generators as (degree, {exps: field scalar})."""
    out = []
    for g in gens:
        terms = {e: field.from_cyclotomic(c) for e, c in g.terms.items()}
        out.append((g.degree(), terms))
    return out


def _compute_slice(n: int, m: int, d: int, field) -> CoinvariantSlice:
    mons = monomials_of_degree(n, d)
    gens = invariant_gens(n, m).gens
    # multiples of x_1...x_n are in the ideal on the nose
    divisible = [all(a >= 1 for a in e) for e in mons]
    cols = [k for k, e in enumerate(mons) if not divisible[k]]
    pos = {mons[k]: t for t, k in enumerate(cols)}
    rows = []
    for deg, terms in _gen_terms(field, gens[:-1]):
        if deg > d:
            continue
        for h in monomials_of_degree(n, d - deg):
            row = [field.zero()] * len(cols)
            nz = False
            for e, c in terms.items():
                prod_e = tuple(a + b for a, b in zip(e, h))
                t = pos.get(prod_e)
                if t is not None:
                    row[t] = row[t] + c
                    nz = True
            if nz:
                rows.append(row)
    if rows:
        R, pivots = field.rref(field.matrix(rows))
    else:
        R, pivots = field.zeros((0, len(cols))), []
    pivset = set(pivots)
    std_cols = [t for t in range(len(cols)) if t not in pivset]
    standard = [mons[cols[t]] for t in std_cols]
    std_index = {t: j for j, t in enumerate(std_cols)}
    nf = {}
    for k, e in enumerate(mons):
        if divisible[k]:
            nf[e] = {}
    for j, t in enumerate(std_cols):
        nf[mons[cols[t]]] = {j: field.one()}
    for r, t in enumerate(pivots):
        vec = {}
        for t2 in std_cols:
            v = R[r, t2]
            if not field.is_zero(v):
                vec[std_index[t2]] = -v if field.kind == "exact" else (-int(v)) % field.p
        nf[mons[cols[t]]] = vec
    return CoinvariantSlice(n, m, d, mons, standard, [cols[t] for t in range(len(cols))], R, pivots, nf)


def _slice_path(cache_dir: Path, n: int, m: int, d: int, field) -> Path:
    return Path(cache_dir) / f"slice_n{n}_m{m}_d{d}_{field.tag}.json"


def _slice_to_json(s: CoinvariantSlice, field) -> dict:
    rref = []
    for r in range(len(s.pivots)):
        for t in range(s.ideal_rref.shape[1]):
            v = s.ideal_rref[r, t]
            if not field.is_zero(v):
                rref.append([r, t, field.to_json_scalar(v)])
    return {
        "n": s.n,
        "m": s.m,
        "degree": s.degree,
        "field": field.tag,
        "monomials": [list(e) for e in s.monomials],
        "standard": [list(e) for e in s.standard],
        "ideal_columns": s.ideal_columns,
        "pivots": s.pivots,
        "rref_shape": list(s.ideal_rref.shape),
        "rref": rref,
        "nf": [
            [list(e), [[j, field.to_json_scalar(v)] for j, v in sorted(vec.items())]]
            for e, vec in s.nf.items()
        ],
    }


def _slice_from_json(data: dict, field) -> CoinvariantSlice:
    R = field.zeros(tuple(data["rref_shape"]))
    for r, t, v in data["rref"]:
        R[r, t] = field.from_json_scalar(v)
    nf = {
        tuple(e): {j: field.from_json_scalar(v) for j, v in vec} for e, vec in data["nf"]
    }
    return CoinvariantSlice(
        data["n"],
        data["m"],
        data["degree"],
        [tuple(e) for e in data["monomials"]],
        [tuple(e) for e in data["standard"]],
        data["ideal_columns"],
        R,
        data["pivots"],
        nf,
    )


def _atomic_write_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_MEMO: dict = {}


def coinvariant_slice(n: int, m: int, d: int, field=None, cache_dir="default") -> CoinvariantSlice:
    """Degree-d slice of C; cached in memory and (optionally) on disk."""
    field = field or ExactField(n, m)
    key = (n, m, d, field.tag)
    if key in _MEMO:
        return _MEMO[key]
    if cache_dir == "default":
        cache_dir = default_cache_dir()
    elif cache_dir == "":
        cache_dir = None
    s = None
    if cache_dir is not None:
        path = _slice_path(Path(cache_dir), n, m, d, field)
        if path.exists():
            try:
                with open(path) as fh:
                    s = _slice_from_json(json.load(fh), field)
            except (OSError, ValueError, KeyError):
                s = None
    if s is None:
        s = _compute_slice(n, m, d, field)
        if cache_dir is not None:
            try:
                _atomic_write_json(_slice_path(Path(cache_dir), n, m, d, field), _slice_to_json(s, field))
            except OSError:
                pass
    expected = pi_m(n, m)
    want = expected[d] if d < len(expected) else 0
    if s.dim != want:
        raise AssertionError(f"dim C_{d} = {s.dim}, expected {want}")
    _MEMO[key] = s
    return s


def clear_memory_cache() -> None:
    _MEMO.clear()


class Coinvariants:
    """The full coinvariant algebra C over a field, as a list of slices."""

    def __init__(self, n: int, m: int, field=None, cache_dir="default"):
        self.n, self.m = n, m
        self.field = field or ExactField(n, m)
        self.top = top_degree(n, m)
        self.slices = [coinvariant_slice(n, m, d, self.field, cache_dir) for d in range(self.top + 1)]
        self.dims = [s.dim for s in self.slices]

    def basis(self, d: int) -> list:
        if d < 0 or d > self.top:
            return []
        return self.slices[d].standard

    def nf_vector(self, e: tuple) -> dict:
        d = sum(e)
        if d > self.top:
            return {}
        return self.slices[d].nf[e]

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        """Projection of f (exact Cyclotomic coefficients) onto the standard monomials."""
        if self.field.kind != "exact":
            raise ValueError("normal_form on polynomials needs the exact field")
        out = {}
        for e, c in f.terms.items():
            d = sum(e)
            if d > self.top:
                continue
            std = self.slices[d].standard
            for j, v in self.nf_vector(e).items():
                k = std[j]
                val = c * v
                out[k] = out[k] + val if k in out else val
        return MultiPoly(f.n, out, f.ring)


def normal_form(f: MultiPoly, m: int, cache_dir="default") -> MultiPoly:
    """Normal form in C of a polynomial over CyclotomicRing(n, m)."""
    return Coinvariants(f.n, m, cache_dir=cache_dir).normal_form(f)


# ---------------------------------------------------------------------------
# antisymmetrization and J


_GROUPS: dict = {}


def _group(n: int, m: int, full: bool):
    key = (n, m, full)
    if key not in _GROUPS:
        _GROUPS[key] = enumerate_Wm(n, m) if full else enumerate_finite_Sn(n, m)
    return _GROUPS[key]


def antisymmetrize(f: MultiPoly, m: int, variant: str = "full") -> MultiPoly:
    """A(f) over W_m ('full') or A'(f) over S_n ('finite')."""
    if variant not in ("full", "finite"):
        raise ValueError(f"unknown variant {variant!r}")
    total = MultiPoly.zero(f.n, f.ring)
    for g in _group(f.n, m, variant == "full"):
        img = g.matrix.apply(f)
        total = total + (img if g.sign > 0 else -img)
    return total


def congruent_exponents(e: tuple, m: int) -> bool:
    return all((a - e[0]) % m == 0 for a in e)


def antisymmetrize_fast(f: MultiPoly, m: int) -> MultiPoly:
    """A(f) via A(b) = m^{n-1} A'(b) for congruent monomials and 0 otherwise."""
    n = f.n
    total = MultiPoly.zero(n, f.ring)
    for e, c in f.terms.items():
        if congruent_exponents(e, m) and len(set(e)) == n:
            total = total + antisymmetrize(MultiPoly(n, {e: c}, f.ring), m, "finite")
    return total.scale(m ** (n - 1))


_DELTAS: dict = {}


def _delta(n: int, m: int, ring):
    key = (n, m)
    if key not in _DELTAS:
        _DELTAS[key] = delta(n, m, ring)
    return _DELTAS[key]


def J_operator(f: MultiPoly, m: int) -> MultiPoly:
    """J(f) = A(f) / (m^{n-1} Delta), dividing exactly one root at a time."""
    n = f.n
    ring = f.ring
    top = top_degree(n, m)
    num = MultiPoly.zero(n, ring)
    for e, c in f.terms.items():
        if sum(e) < top or not congruent_exponents(e, m) or len(set(e)) < n:
            continue
        num = num + antisymmetrize(MultiPoly(n, {e: c}, ring), m, "finite")
    if not num:
        return MultiPoly.zero(n, ring)
    D = _delta(n, m, ring)
    if num.is_homogeneous() and num.degree() == top:
        # a top-degree antiinvariant is a scalar multiple of Delta
        P = staircase(n, m, ring).terms
        (pe,) = P.keys()
        lam = num.coeff(pe) / D.coeff(pe)
        if num != D.scale(lam):
            raise ArithmeticError("antiinvariant is not a multiple of Delta")
        return MultiPoly.const(lam, n, ring)
    q = num
    for r in phi1m(n, m):
        q = q.divide_linear(r.i, r.j, ring.z(r.e))
    return q


# ---------------------------------------------------------------------------
# the Frobenius pairing


@dataclass
class PairingMatrix:
    n: int
    m: int
    rows: list  # X for 1 < 2 < ... < n
    cols: list  # X' for n < ... < 2 < 1
    matrix: object  # object array of Cyclotomic
    row_blocks: list
    col_blocks: list

    def determinant(self):
        return exact_determinant(self.matrix, ExactField(self.n, self.m))


def _first_zero(e: tuple, order: tuple):
    for k, var in enumerate(order, start=1):
        if e[var - 1] == 0:
            return k
    return len(order) + 1


def frobenius_pairing(n: int, m: int) -> PairingMatrix:
    """M[b][c] = J(b c) for b in X, c in X' (zero unless degrees sum to the top)."""
    field = ExactField(n, m)
    ring = field.ring
    X = basis_X(tuple(range(1, n + 1)), n, m).monomials
    Xp = basis_X(tuple(range(n, 0, -1)), n, m).monomials
    top = top_degree(n, m)
    M = field.zeros((len(X), len(Xp)))
    for r, b in enumerate(X):
        for c, cc in enumerate(Xp):
            if sum(b) + sum(cc) != top:
                continue
            e = tuple(x + y for x, y in zip(b, cc))
            val = J_operator(MultiPoly.monomial(e, ring.one(), ring), m)
            if val:
                M[r, c] = val.constant_term()
    # blocks: position of the first zero exponent in each order
    row_blocks = [_first_zero(b, tuple(range(1, n + 1))) for b in X]
    col_blocks = [_first_zero(c, tuple(range(n, 0, -1))) for c in Xp]
    return PairingMatrix(n, m, X, Xp, M, row_blocks, col_blocks)


def exact_determinant(A, field: ExactField):
    """Determinant by Gaussian elimination over Q(xi)."""
    k = A.shape[0]
    if A.shape != (k, k):
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in A]
    det = field.one()
    for c in range(k):
        p = next((r for r in range(c, k) if rows[r][c]), None)
        if p is None:
            return field.zero()
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det = det * piv
        inv = piv.inv()
        nz = [j for j in range(c, k) if rows[c][j]]
        for r in range(c + 1, k):
            f = rows[r][c]
            if f:
                f = f * inv
                for j in nz:
                    rows[r][j] = rows[r][j] - f * rows[c][j]
    return det


def finite_staircase_pairing(n: int = 3):
    """Pairing of divisors of y1^{n-1}..y_{n-1} against divisors of y2 y3^2.. under
    the ordinary S_n antisymmetrizer divided by the Vandermonde (finite type, z = 1).

    Returns the integer matrix as a list of lists.
    """
    from fractions import Fraction
    from itertools import permutations

    top = comb(n, 2)
    rows = [e for d in range(top + 1) for e in monomials_of_degree(n, d)
            if all(e[j] <= n - 1 - j for j in range(n))]
    cols = [e for d in range(top + 1) for e in monomials_of_degree(n, d)
            if all(e[j] <= j for j in range(n))]

    def sign(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    out = []
    for b in rows:
        line = []
        for c in cols:
            e = tuple(x + y for x, y in zip(b, c))
            if sum(e) != top or len(set(e)) < n:
                line.append(0)
                continue
            # antisymmetrized monomial / Vandermonde is +-1 if e is a permutation of the staircase
            if sorted(e) == list(range(n)):
                perm = tuple(n - 1 - a for a in e)
                line.append(sign(perm))
            else:
                line.append(0)
        out.append(line)
    return rows, cols, out
