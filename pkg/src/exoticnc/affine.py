"""
Combinatorics of the affine Weyl group of type A~_{n-1}.

Words are tuples of letters in Omega = Z/nZ (letter n is stored as 0).
Group elements are affine permutations in window notation.

>>> word_to_perm((1,), 3).window
(2, 1, 3)
>>> abi_word(3, 5, 2, 3)
(1, 2, 0, 1, 0, 2, 1, 0, 2)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NewType, Sequence

Word = tuple  # tuple[int, ...], letters reduced mod n

LETTER_ALIASES = {"s": 1, "t": 2, "u": 0}

CLOCKWISE = "clockwise"
WIDDERSHINS = "widdershins"
LEFT = "left"
RIGHT = "right"


def make_word(letters: Iterable[int], n: int) -> Word:
    return tuple(int(a) % n for a in letters)


def parse_word(text: str, n: int) -> Word:
    """Parse '1,2,3', '123' or 'stu' (the s,t,u aliases need n = 3)."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        parts = [p.strip() for p in text.split(",") if p.strip()]
    else:
        parts = list(text.replace(" ", ""))
    out = []
    for p in parts:
        if p in LETTER_ALIASES:
            if n != 3:
                raise ValueError("letters s, t, u are only meaningful for n = 3")
            out.append(LETTER_ALIASES[p])
        else:
            out.append(int(p) % n)
    return tuple(out)


def format_word(w: Sequence[int], n: int | None = None) -> str:
    return ",".join(str(a if a != 0 or n is None else n) for a in w)


@dataclass(frozen=True)
class AffinePerm:
    """Affine permutation f of Z with f(i+n) = f(i)+n, stored as f(1..n)."""

    window: tuple

    @property
    def n(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> "AffinePerm":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        n = self.n
        q, r = divmod(i - 1, n)
        return self.window[r] + q * n

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def right_mul(self, i: int) -> "AffinePerm":
        """Return self * s_i."""
        n = self.n
        w = list(self.window)
        i %= n
        if i == 0:
            first, last = w[0], w[-1]
            w[0], w[-1] = last - n, first + n
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return AffinePerm(tuple(w))

    def left_mul(self, i: int) -> "AffinePerm":
        """Return s_i * self (acts on values)."""
        n = self.n
        i %= n
        out = []
        for v in self.window:
            r = v % n
            if i == 0:
                if r == 0:
                    v += 1
                elif r == 1:
                    v -= 1
            else:
                if r == i:
                    v += 1
                elif r == (i + 1) % n:
                    v -= 1
            out.append(v)
        return AffinePerm(tuple(out))

    def inverse(self) -> "AffinePerm":
        n = self.n
        out = [0] * n
        for pos, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, n)
            out[r] = pos - q * n
        return AffinePerm(tuple(out))

    def compose(self, other: "AffinePerm") -> "AffinePerm":
        return AffinePerm(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def right_descents(self) -> list:
        n = self.n
        return [i for i in range(n) if self(i) > self(i + 1)]

    def left_descents(self) -> list:
        return self.inverse().right_descents()


def word_to_perm(w: Sequence[int], n: int) -> AffinePerm:
    """The group element s_{i1} s_{i2} ... s_{id}."""
    g = AffinePerm.identity(n)
    for a in w:
        g = g.right_mul(a)
    return g


def coxeter_length(g: AffinePerm) -> int:
    """Number of affine inversions, via Shi's formula."""
    n = g.n
    f = g.window
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += abs((f[j] - f[i]) // n)
    return total


def is_reduced(w: Sequence[int], n: int) -> bool:
    return coxeter_length(word_to_perm(w, n)) == len(w)


def cyclic_word(i: int, d: int, direction: str, anchor: str, n: int) -> Word:
    """Cyclic word of length d in direction cw/ws, anchored on its first (left) or last (right) letter."""
    if d < 1:
        raise ValueError("cyclic words have length at least 1")
    step = 1 if direction == CLOCKWISE else -1
    if direction not in (CLOCKWISE, WIDDERSHINS):
        raise ValueError(f"unknown direction {direction!r}")
    if anchor == LEFT:
        start = i
    elif anchor == RIGHT:
        start = i - step * (d - 1)
    else:
        raise ValueError(f"unknown anchor {anchor!r}")
    return tuple((start + step * k) % n for k in range(d))


def cw(i: int, d: int, anchor: str, n: int) -> Word:
    return cyclic_word(i, d, CLOCKWISE, anchor, n)


def ws(i: int, d: int, anchor: str, n: int) -> Word:
    return cyclic_word(i, d, WIDDERSHINS, anchor, n)


# ---------------------------------------------------------------------------
# the (a, b, i) parametrization


@dataclass(frozen=True)
class AbiTriple:
    a: int
    b: int
    i: int

    @property
    def length(self) -> int:
        return self.a + self.b + 1


IDENTITY = "identity"


def abi_word(a: int, b: int, i: int, n: int = 3) -> Word:
    """The canonical reduced word w(a,b,i).

    For n = 3: a clockwise cycle of length a+1 overlapping a widdershins cycle
    of length b+1 which ends in i.  For n = 2 words alternate and b must be 0.
    """
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    if n == 2:
        if b != 0:
            raise ValueError("for n = 2 only b = 0 occurs")
        return cw(i, a + 1, RIGHT, 2)
    if n != 3:
        raise ValueError("the (a,b,i) parametrization is defined for n = 3")
    j = (i + b - 1) % n
    tail = ws(i, b + 1, RIGHT, n)  # starts with j+1
    assert tail[0] == (j + 1) % n
    head = cw(j, a, RIGHT, n) if a else ()
    return head + tail


def abi_decompose(g: AffinePerm):
    """Inverse of abi_word: the unique triple (a,b,i) for g, or IDENTITY."""
    n = g.n
    if g.is_identity():
        return IDENTITY
    length = coxeter_length(g)
    if n == 2:
        i = g.right_descents()[0]
        return AbiTriple(length - 1, 0, i)
    if n != 3:
        raise ValueError("abi_decompose is defined for n = 3")
    for i in g.right_descents():
        # strip the terminal widdershins run ..., i+2, i+1, i
        h = g.right_mul(i)
        run = 1
        letter = i
        while True:
            nxt = (letter + 1) % n
            if coxeter_length(h.right_mul(nxt)) < coxeter_length(h):
                h = h.right_mul(nxt)
                letter = nxt
                run += 1
            else:
                break
        # try the maximal run first, then shorter ones; the remainder is clockwise
        for b in range(run - 1, -1, -1):
            a = length - b - 1
            if word_to_perm(abi_word(a, b, i, n), n) == g:
                return AbiTriple(a, b, i)
    raise AssertionError(f"no (a,b,i) triple found for {g}")


def abi_elements(d: int, n: int = 3) -> list:
    """All triples of length d, in a fixed order (by a, then i)."""
    if d < 1:
        return []
    if n == 2:
        return [AbiTriple(d - 1, 0, i) for i in (1, 0)]
    return [AbiTriple(a, d - 1 - a, i) for a in range(d) for i in (1, 2, 0)]


def word_symmetry(w: Sequence[int], which: str, n: int) -> Word:
    if which == "sigma":
        return tuple((a + 1) % n for a in w)
    if which == "tau":
        return tuple((-a) % n for a in w)
    if which == "reverse":
        return tuple(reversed(w))
    raise ValueError(f"unknown symmetry {which!r}")


# ---------------------------------------------------------------------------
# enumeration


def elements_by_length(n: int, max_len: int) -> list:
    """For each length d <= max_len, a dict element -> one reduced word.

    Words are grown on the left, so every stored word's suffix is also stored.
    """
    levels = [{AffinePerm.identity(n): ()}]
    for d in range(1, max_len + 1):
        cur = {}
        for g, w in levels[-1].items():
            for i in range(n):
                h = g.left_mul(i)
                if h in cur:
                    continue
                if coxeter_length(h) == d:
                    cur[h] = (i,) + w
        levels.append(cur)
    return levels


def reduced_words(g: AffinePerm) -> list:
    """All reduced expressions of g (exponential; small elements only)."""
    length = coxeter_length(g)
    if length == 0:
        return [()]
    out = []
    for i in g.right_descents():
        for w in reduced_words(g.right_mul(i)):
            out.append(w + (i,))
    return out


def all_words(n: int, d: int):
    """All words of length d (n^d of them)."""
    if d == 0:
        yield ()
        return
    for w in all_words(n, d - 1):
        for a in range(n):
            yield w + (a,)


def min_length_bfs(g: AffinePerm, limit: int):
    """Shortest word length for g by breadth-first search (oracle for tests)."""
    n = g.n
    start = AffinePerm.identity(n)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        if h == g:
            return seen[h]
        if seen[h] >= limit:
            continue
        for i in range(n):
            k = h.right_mul(i)
            if k not in seen:
                seen[k] = seen[h] + 1
                queue.append(k)
    return None


def cyclic_runs(w: Sequence[int], n: int) -> tuple:
    """Longest clockwise and widdershins consecutive runs in w."""
    best_cw = best_ws = 0
    run_cw = run_ws = 0
    prev = None
    for a in w:
        if prev is not None and a == (prev + 1) % n:
            run_cw += 1
        else:
            run_cw = 1
        if prev is not None and a == (prev - 1) % n:
            run_ws += 1
        else:
            run_ws = 1
        best_cw = max(best_cw, run_cw)
        best_ws = max(best_ws, run_ws)
        prev = a
    return best_cw, best_ws
