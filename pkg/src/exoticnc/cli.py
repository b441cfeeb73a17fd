"""
Command-line interface.

    exoticnc dims --n 3 --m 2
    exoticnc dims --n 3 --m 3 --conjectureA
    exoticnc table --ms 2,3 --output csv
    exoticnc verify --n 3 --m 2 --suite frobenius
    exoticnc alcove --m 3 --output alcoves.svg
    exoticnc basis --n 3 --m 2 --order 3,2,1
    exoticnc cache info

Exit codes: 0 success, 1 failed check, 2 capacity or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


class CheckFailed(Exception):
    """A verification suite found a counterexample."""


@dataclass
class RunConfig:
    n: int = 3
    m: int = 2
    degree: Optional[int] = None
    suite: Optional[str] = None
    order: Optional[str] = None
    output: str = "text"
    cache_dir: Optional[str] = None
    budget: int = 200_000
    seed: int = 0
    field_kind: Optional[str] = None
    conjectureA: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("need n >= 2 and m >= 2")
        if self.budget <= 0:
            raise ValueError("budget must be positive")

    def cache(self):
        """cache_dir argument for the library ('default' unless overridden)."""
        if self.cache_dir is None:
            return "default"
        return self.cache_dir


# ---------------------------------------------------------------------------
# dims / table


def cmd_dims(cfg: RunConfig, out=sys.stdout) -> int:
    from .algebra import conjectureA_dims, nc_graded_dims, new_relation_count

    if cfg.conjectureA:
        gd = conjectureA_dims(cfg.n, cfg.m, cfg.budget)
    else:
        gd = nc_graded_dims(cfg.n, cfg.m, cfg.field_kind, cfg.cache())
    if cfg.output == "json":
        out.write(json.dumps(gd.to_json(), sort_keys=True) + "\n")
    elif cfg.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "degree", "dim", "new_relations"])
        for d, v in enumerate(gd.dims):
            rel = "" if cfg.conjectureA or cfg.n != 3 else new_relation_count(cfg.n, cfg.m, d, cfg.field_kind, cfg.budget)
            w.writerow([cfg.m, d, v, rel])
    else:
        out.write(gd.text() + "\n")
    return EXIT_OK


def cmd_table(cfg: RunConfig, ms, out=sys.stdout) -> int:
    from .algebra import table_rows

    if cfg.output == "json":
        from .algebra import nc_graded_dims

        data = [nc_graded_dims(cfg.n, m, cfg.field_kind, cfg.cache()).to_json() for m in ms]
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return EXIT_OK
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["m", "degree", "dim", "new_relations"])
    for m in ms:
        for row in table_rows(cfg.n, m, True, cfg.field_kind, cfg.budget):
            w.writerow(row)
    return EXIT_OK


# ---------------------------------------------------------------------------
# basis


def cmd_basis(cfg: RunConfig, out=sys.stdout) -> int:
    from .coinv import basis_X, pi_m

    order = tuple(int(a) for a in cfg.order.split(",")) if cfg.order else tuple(range(1, cfg.n + 1))
    if sorted(order) != list(range(1, cfg.n + 1)):
        raise ValueError(f"--order must be a permutation of 1..{cfg.n}")
    B = basis_X(order, cfg.n, cfg.m)
    counts = B.graded_counts()
    if cfg.output == "json":
        out.write(json.dumps({"order": list(order), "monomials": [list(e) for e in B.monomials]}) + "\n")
    else:
        out.write(" ".join(map(str, counts)) + f" | total {sum(counts)}\n")
    if counts != pi_m(cfg.n, cfg.m):
        raise CheckFailed(f"graded count {counts} differs from pi_m {pi_m(cfg.n, cfg.m)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites


def _check(cond: bool, what: str, failures: list):
    if not cond:
        failures.append(what)


def suite_roundabout(cfg: RunConfig, failures: list, log):
    from .algebra import get_algebra, roundabout_exprs
    from .demazure import expr_apply
    from .exactnum import CyclotomicRing
    from .poly import random_poly

    alg = get_algebra(cfg.n, cfg.m, cfg.field_kind or "exact", cfg.cache(), cfg.budget)
    for k, e in enumerate(roundabout_exprs(cfg.n, cfg.m)):
        _check(alg.operator_matrix(e).is_zero(), f"roundabout operator #{k} is nonzero on C", failures)
    ring = CyclotomicRing(cfg.n, cfg.m)
    rng = random.Random(cfg.seed)
    samples = cfg.extra.get("samples", 20)
    for t in range(samples):
        f = random_poly(rng, ring, cfg.n, cfg.m * (cfg.n - 1) + 2, 4)
        for k, e in enumerate(roundabout_exprs(cfg.n, cfg.m)):
            _check(not expr_apply(e, f), f"roundabout #{k} does not kill random polynomial {t}", failures)
    log(f"roundabout: {2 * cfg.n} operators, {samples} random polynomials")


def suite_frobenius(cfg: RunConfig, failures: list, log):
    from .coinv import J_operator, frobenius_pairing
    from .exactnum import CyclotomicRing
    from .refrep import staircase

    ring = CyclotomicRing(cfg.n, cfg.m)
    jp = J_operator(staircase(cfg.n, cfg.m, ring), cfg.m)
    _check(jp == jp.const(ring.one(), cfg.n, ring), f"J(P) = {jp}, expected 1", failures)
    det = frobenius_pairing(cfg.n, cfg.m).determinant()
    _check(bool(det), "pairing determinant vanishes", failures)
    log(f"frobenius: J(P) = {jp}, det = {det}")


def suite_xi(cfg: RunConfig, failures: list, log):
    from .demazure import xi_bruteforce, xi_closed_formula
    from .exactnum import CyclotomicRing

    if cfg.n != 3:
        raise ValueError("the xi suite needs n = 3")
    m = cfg.m
    ring = CyclotomicRing(3, m)
    for a in range(3 * m):
        b = 3 * m - 1 - a
        formula = xi_closed_formula(a, m)
        for i in (1, 2, 0):
            brute = xi_bruteforce(a, b, i, 2 * m, ring)
            _check(brute == formula, f"xi mismatch at a={a}, i={i}: {brute} vs {formula}", failures)
    log(f"xi: {3 * 3 * m} scalars compared")


def suite_gamma(cfg: RunConfig, failures: list, log):
    from .algebra import gamma_checks

    if (cfg.n, cfg.m) != (3, 2):
        raise ValueError("the gamma suite needs n = 3, m = 2")
    r = gamma_checks(2, cfg.cache())
    _check(r.annihilated_by_degree4, "gamma is not annihilated by degree 4", failures)
    _check(r.unique_up_to_scalar, f"annihilator space has dimension {r.kernel_dim}", failures)
    _check(r.kills_degree2, "gamma does not kill degree 2", failures)
    _check(r.image_in_ideal, "gamma(x1^4 x2^2) is not in the ideal", failures)
    _check(r.quotient_ok, f"quotient dims {r.quotient_dims}", failures)
    log(f"gamma: quotient dims {r.quotient_dims}")


def suite_braid(cfg: RunConfig, failures: list, log):
    from .algebra import braid_consistency

    max_len = cfg.degree or 6
    bad = braid_consistency(cfg.n, cfg.m, max_len)
    for w in bad:
        failures.append(f"braid scalar mismatch for word {w}")
    log(f"braid: all reduced words up to length {max_len}")


SUITES = {
    "roundabout": suite_roundabout,
    "frobenius": suite_frobenius,
    "xi": suite_xi,
    "gamma": suite_gamma,
    "braid": suite_braid,
}


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES)}")
    failures: list = []
    SUITES[cfg.suite](cfg, failures, lambda s: out.write(s + "\n"))
    for f in failures:
        out.write(f"FAIL {f}\n")
    out.write(f"{cfg.suite}: {'pass' if not failures else 'fail'}\n")
    return EXIT_OK if not failures else EXIT_FAIL


# ---------------------------------------------------------------------------
# alcove diagram (n = 3)


A0 = (
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3)),
)


def reflect(i: int, v):
    """Affine reflection s_i of the plane x1+x2+x3 = 0."""
    x1, x2, x3 = v
    if i == 1:
        return (x2, x1, x3)
    if i == 2:
        return (x1, x3, x2)
    t = x1 - x3 - 1
    return (x1 - t, x2, x3 + t)


def alcove_vertices(w) -> tuple:
    """Vertices of the alcove w(A0); the last letter acts first."""
    verts = A0
    for a in reversed(tuple(w)):
        verts = tuple(reflect(a, v) for v in verts)
    return verts


def project(v) -> tuple:
    """Orthonormal coordinates on the plane (floats, for drawing only)."""
    x1, x2, x3 = (float(c) for c in v)
    return ((x1 - x2) / 2**0.5, (x1 + x2 - 2 * x3) / 6**0.5)


def binomial_label(k: int, c: int) -> str:
    if c < 0 or c > k:
        return "0"
    if c in (0, k):
        return "1"
    if c in (1, k - 1):
        return f"[{k}]"
    return f"[{k} {c}]"


@dataclass
class AlcoveCell:
    word: tuple
    length: int
    vertices: tuple
    vanishing: bool
    label: str = ""


def alcove_cells(m: int, cache_dir="default") -> list:
    from .affine import abi_elements, abi_word
    from .algebra import get_algebra
    from .demazure import xi_support

    alg = get_algebra(3, m, "exact", cache_dir)
    cells = [AlcoveCell((), 0, alcove_vertices(()), False)]
    for d in range(1, 3 * m + 1):
        for t in abi_elements(d, 3):
            w = abi_word(t.a, t.b, t.i, 3)
            zero = alg.word_operator(w).is_zero()
            label = ""
            if d == 3 * m and not zero:
                beta, dd, bottom, ok = xi_support(t.a, m)
                label = binomial_label(m - 1 - bottom, beta - bottom)
            cells.append(AlcoveCell(w, d, alcove_vertices(w), zero, label))
    return cells


def alcove_svg(m: int, cache_dir="default", scale: float = 60.0) -> str:
    cells = alcove_cells(m, cache_dir)
    pts = [project(v) for c in cells for v in c.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 20.0
    minx, maxy = min(xs), max(ys)
    width = (max(xs) - minx) * scale + 2 * pad
    height = (maxy - min(ys)) * scale + 2 * pad

    def xy(v):
        x, y = project(v)
        return (x - minx) * scale + pad, (maxy - y) * scale + pad

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f"<title>Alcoves of length at most {3 * m} for m = {m}</title>",
    ]
    for c in cells:
        if c.vanishing:
            fill = "#9e9e9e"
        elif c.length == 3 * m:
            fill = "#7aa6e0"
        elif c.length == 0:
            fill = "#f4e4a6"
        else:
            fill = "#ffffff"
        pts_s = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(xy, c.vertices))
        word = ",".join(map(str, c.word))
        lines.append(f'<polygon points="{pts_s}" fill="{fill}" stroke="#333333" stroke-width="0.8" data-word="{word}"/>')
    for c in cells:
        if c.label:
            cx = sum(xy(v)[0] for v in c.vertices) / 3
            cy = sum(xy(v)[1] for v in c.vertices) / 3
            lines.append(
                f'<text x="{cx:.3f}" y="{cy:.3f}" font-size="{scale / 6:.1f}" text-anchor="middle" '
                f'dominant-baseline="middle" font-family="sans-serif">{c.label}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_alcove_svg(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.n != 3:
        raise ValueError("alcove diagrams are drawn for n = 3")
    svg = alcove_svg(cfg.m, cfg.cache())
    target = cfg.extra.get("path")
    if target:
        Path(target).write_text(svg)
        out.write(f"wrote {target}\n")
    else:
        out.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# cache


def cmd_cache(cfg: RunConfig, action: str, out=sys.stdout) -> int:
    from .coinv import default_cache_dir

    d = Path(cfg.cache_dir) if cfg.cache_dir else default_cache_dir()
    if d is None:
        out.write("cache disabled\n")
        return EXIT_OK
    files = sorted(d.glob("slice_*.json")) if d.exists() else []
    if action == "info":
        size = sum(f.stat().st_size for f in files)
        out.write(f"{d}: {len(files)} slices, {size} bytes\n")
    elif action == "clear":
        for f in files:
            f.unlink()
        out.write(f"removed {len(files)} slices from {d}\n")
    elif action == "path":
        out.write(f"{d}\n")
    else:
        raise ValueError(f"unknown cache action {action!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--cache-dir", default=None, help="slice cache directory ('' disables)")
    common.add_argument("--budget", type=int, default=200_000, help="word-evaluation cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--field", choices=["exact", "modular"], default=None)

    ap = argparse.ArgumentParser(prog="exoticnc", description="Exotic nilCoxeter algebras NC(m,m,n).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="graded dimensions")
    p.add_argument("--output", choices=["text", "json", "csv"], default="text")
    p.add_argument("--conjectureA", action="store_true", help="roundabout-only algebra")

    p = sub.add_parser("table", parents=[common], help="dimension table for several m")
    p.add_argument("--ms", default="2,3", help="comma-separated values of m")
    p.add_argument("--output", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--degree", type=int, default=None, help="maximum word length (braid suite)")
    p.add_argument("--samples", type=int, default=20, help="random polynomials (roundabout suite)")

    p = sub.add_parser("alcove", parents=[common], help="alcove diagram as SVG")
    p.add_argument("--output", default=None, help="output file (stdout if omitted)")

    p = sub.add_parser("basis", parents=[common], help="monomial basis for a total order")
    p.add_argument("--order", default=None, help="e.g. 1,2,3 or 3,2,1")
    p.add_argument("--output", choices=["text", "json"], default="text")

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the slice cache")
    p.add_argument("action", choices=["info", "clear", "path"])
    return ap


def main(argv=None, out=None) -> int:
    from .algebra import CapacityError

    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        n=args.n,
        m=args.m,
        degree=getattr(args, "degree", None),
        suite=getattr(args, "suite", None),
        order=getattr(args, "order", None),
        output=getattr(args, "output", None) or "text",
        cache_dir=args.cache_dir,
        budget=args.budget,
        seed=args.seed,
        field_kind=args.field,
        conjectureA=getattr(args, "conjectureA", False),
    )
    try:
        cfg.validate()
        if args.command == "dims":
            return cmd_dims(cfg, out)
        if args.command == "table":
            return cmd_table(cfg, [int(x) for x in args.ms.split(",")], out)
        if args.command == "verify":
            cfg.extra["samples"] = args.samples
            return cmd_verify(cfg, out)
        if args.command == "alcove":
            cfg.extra["path"] = args.output
            cfg.output = "svg"
            return cmd_alcove_svg(cfg, out)
        if args.command == "basis":
            return cmd_basis(cfg, out)
        if args.command == "cache":
            return cmd_cache(cfg, args.action, out)
    except CheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
