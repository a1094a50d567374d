"""Permutations of S_infinity in one-line notation, Bruhat order and friends.

A permutation is stored by the shortest one-line prefix after which it is the
identity, so ``Permutation.parse("2134") == Permutation.parse("21")``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import permutations as _itperms

from .errors import ParseError, PreconditionError

__all__ = [
    "Permutation",
    "ins",
    "ins_inverse",
    "ell",
    "ell_sequence",
    "from_ell_sequence",
    "bruhat_leq",
    "interval",
    "uv_of",
    "maximal_pairs",
    "k_bruhat_covers",
    "decreasing_chain_targets",
    "grassmannian_sort",
    "lehmer_code",
    "from_lehmer_code",
    "symmetric_group",
    "reduced_word",
    "cycle_c",
]


@dataclass(frozen=True, order=True)
class Permutation:
    oneline: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.oneline)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise PreconditionError(f"{w} is not a permutation in one-line notation")
        n = len(w)
        while n and w[n - 1] == n:
            n -= 1
        object.__setattr__(self, "oneline", w[:n])

    @classmethod
    def identity(cls) -> "Permutation":
        return cls(())

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """``"21435"`` or ``"2,1,4,3,5"`` (commas are needed once values exceed 9)."""
        text = text.strip()
        try:
            if "," in text:
                values = [int(t) for t in text.split(",") if t.strip()]
            else:
                if not text.isdigit():
                    raise ValueError
                values = [int(ch) for ch in text]
        except ValueError:
            raise ParseError(f"cannot read permutation {text!r}") from None
        try:
            return cls(tuple(values))
        except PreconditionError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def simple(cls, i: int) -> "Permutation":
        """The adjacent transposition s_i."""
        w = list(range(1, i + 2))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(tuple(w))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    def __len__(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        return self.oneline[i - 1] if i <= len(self.oneline) else i

    def window(self, n: int) -> tuple[int, ...]:
        """One-line notation padded (with fixed points) to length n."""
        if n < len(self.oneline):
            raise PreconditionError(f"{self} does not lie in S_{n}")
        return self.oneline + tuple(range(len(self.oneline) + 1, n + 1))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.oneline)
        for i, v in enumerate(self.oneline, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        n = max(len(self), len(other))
        return Permutation(tuple(self(other(i)) for i in range(1, n + 1)))

    def swap_positions(self, i: int, j: int) -> "Permutation":
        """self * t_ij, exchanging the entries in positions i and j."""
        w = list(self.window(max(len(self), i, j)))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return Permutation(tuple(w))

    def length(self) -> int:
        w = self.oneline
        return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])

    def descents(self) -> tuple[int, ...]:
        w = self.oneline
        return tuple(i for i in range(1, len(w)) if w[i - 1] > w[i])

    def in_s(self, n: int) -> bool:
        return len(self.oneline) <= n

    def __str__(self) -> str:
        w = self.oneline or (1,)
        if max(w) <= 9:
            return "".join(map(str, w))
        return ",".join(map(str, w))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def _perm(w) -> Permutation:
    if isinstance(w, Permutation):
        return w
    if isinstance(w, str):
        return Permutation.parse(w)
    return Permutation(tuple(w))


def cycle_c(n: int) -> Permutation:
    """The cycle n 1 2 ... (n-1) in one-line notation."""
    return Permutation((n, *range(1, n)))


def ins(i: int, w) -> Permutation:
    """Insert 1 in position i and shift every other value up by one."""
    w = _perm(w)
    if i < 1:
        raise PreconditionError("insertion position must be positive")
    base = w.window(max(len(w), i - 1))
    out = [v + 1 for v in base[: i - 1]] + [1] + [v + 1 for v in base[i - 1:]]
    return Permutation(tuple(out))


def ins_inverse(w) -> tuple[int, Permutation]:
    """Return (i, v) with w = ins_i(v)."""
    w = _perm(w)
    i = w.inverse()(1)
    rest = [v - 1 for v in w.window(max(len(w), 1)) if v != 1]
    return i, Permutation(tuple(rest))


def ell(w, a: int) -> int:
    """#{b >= a : w^{-1}(b) <= w^{-1}(a)}."""
    w = _perm(w)
    inv = w.inverse()
    pa = inv(a)
    top = max(len(w), a)
    return sum(1 for b in range(a, top + 1) if inv(b) <= pa)


def ell_sequence(w, n: int | None = None) -> tuple[int, ...]:
    w = _perm(w)
    n = len(w) if n is None else n
    return tuple(ell(w, a) for a in range(1, n + 1))


def from_ell_sequence(js: Sequence[int]) -> Permutation:
    """The permutation ins_{j1} ins_{j2} ... ins_{jk}(1), whose ell-sequence is js."""
    w = Permutation.identity()
    for j in reversed(js):
        w = ins(j, w)
    return w


def bruhat_leq(u, v) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of v."""
    u, v = _perm(u), _perm(v)
    n = max(len(u), len(v))
    a, b = u.window(n), v.window(n)
    for t in range(1, n):
        if any(p > q for p, q in zip(sorted(a[:t]), sorted(b[:t]))):
            return False
    return True


def symmetric_group(n: int) -> Iterator[Permutation]:
    for w in _itperms(range(1, n + 1)):
        yield Permutation(w)


def _covers_up(w: Permutation, n: int) -> Iterator[Permutation]:
    a = w.window(n)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] < a[j] and not any(a[i] < a[k] < a[j] for k in range(i + 1, j)):
                yield w.swap_positions(i + 1, j + 1)


def interval(u, v, method: str = "auto") -> list[Permutation]:
    """All w with u <= w <= v in Bruhat order, sorted by length then one-line."""
    u, v = _perm(u), _perm(v)
    if not bruhat_leq(u, v):
        return []
    n = max(len(u), len(v), 1)
    if method == "auto":
        method = "filter" if n <= 7 else "covers"
    if method == "filter":
        found = [w for w in symmetric_group(n) if bruhat_leq(u, w) and bruhat_leq(w, v)]
    elif method == "covers":
        seen = {u}
        frontier = [u]
        while frontier:
            nxt = []
            for w in frontier:
                for c in _covers_up(w, n):
                    if c not in seen and bruhat_leq(c, v):
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        found = list(seen)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return sorted(found, key=lambda w: (w.length(), w.window(n)))


def uv_of(word) -> tuple[Permutation, Permutation]:
    """The pair (u, v) built letter by letter: r_j -> (ins_j, ins_j), t_j -> (ins_j, ins_{j+1})."""
    from .ops import parse_word

    if isinstance(word, str):
        word = parse_word(word)
    u = v = Permutation.identity()
    for letter in word:
        u = ins(letter.index, u)
        v = ins(letter.index + (1 if letter.kind == "t" else 0), v)
    return u, v


def maximal_pairs(n: int) -> list[tuple[Permutation, Permutation]]:
    """(u, u c_n) for u in S_n with u(n) = n."""
    c = cycle_c(n)
    return [(u, u * c) for u in symmetric_group(n) if u(n) == n]


def k_bruhat_covers(w, k: int) -> list[tuple[int, Permutation]]:
    """Covers w < w t_ij with i <= k < j, labelled by the value moved into position i."""
    w = _perm(w)
    n = max(len(w), k) + 1
    a = w.window(n)
    out = []
    for i in range(k):
        for j in range(k, n):
            if a[i] < a[j] and not any(a[i] < a[m] < a[j] for m in range(i + 1, j)):
                out.append((a[j], w.swap_positions(i + 1, j + 1)))
    return out


def decreasing_chain_targets(w, k: int, p: int) -> dict[Permutation, tuple[int, ...]]:
    """Endpoints of k-Bruhat chains of length p from w with strictly decreasing labels.

    Maps each endpoint to its label sequence.  Endpoints are reached by at most
    one such chain; a repeat raises, since it would break the Pieri rules.
    """
    w = _perm(w)
    out: dict[Permutation, tuple[int, ...]] = {}

    def walk(cur: Permutation, labels: tuple[int, ...]):
        if len(labels) == p:
            if cur in out:
                raise AssertionError(f"two decreasing chains reach {cur}")
            out[cur] = labels
            return
        for label, nxt in k_bruhat_covers(cur, k):
            if not labels or label < labels[-1]:
                walk(nxt, labels + (label,))

    walk(w, ())
    return out


def grassmannian_sort(w, n: int) -> Permutation:
    """Sort the first n entries and, separately, the remaining ones."""
    w = _perm(w)
    a = w.window(max(len(w), n))
    return Permutation(tuple(sorted(a[:n])) + tuple(sorted(a[n:])))


def lehmer_code(w) -> tuple[int, ...]:
    w = _perm(w)
    a = w.oneline
    code = [sum(1 for b in a[i + 1:] if b < a[i]) for i in range(len(a))]
    while code and code[-1] == 0:
        code.pop()
    return tuple(code)


def from_lehmer_code(code: Iterable[int]) -> Permutation:
    code = list(code)
    n = len(code) + max(code, default=0)
    remaining = list(range(1, n + 1))
    out = []
    for c in code:
        out.append(remaining.pop(c))
    out.extend(remaining)
    return Permutation(tuple(out))


def reduced_word(w, choose: str = "first") -> tuple[int, ...]:
    """A reduced word (a_1, ..., a_l) with w = s_{a_1} ... s_{a_l}."""
    w = _perm(w)
    found = []
    while True:
        d = w.descents()
        if not d:
            break
        i = d[0] if choose == "first" else d[-1]
        found.append(i)
        w = w * Permutation.simple(i)
    return tuple(reversed(found))
