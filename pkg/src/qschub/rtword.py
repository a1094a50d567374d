"""Words in the letters r_i, t_i: validity, forests, trimming, star matrices, boxes.

A word X_1 ... X_n belongs to RTSeq_n when every letter X_i is one of
r_1, ..., r_i, t_1, ..., t_{i-1}.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian

from .errors import BoundExceededError, PreconditionError
from .forest import (
    MarkedNestedForest,
    NestedForest,
    _times_r,
    _times_t,
    internal_nodes,
    leaves,
)
from .ops import Letter, R, T, format_word, parse_word

__all__ = [
    "RTWord",
    "as_word",
    "is_rtseq",
    "validate_rtseq_n",
    "enumerate_rtseq",
    "forest_of",
    "nested_forest_of",
    "trim_set",
    "star_matrix",
    "validate_star_matrix",
    "format_matrix",
    "parse_matrix",
    "word_from_matrix",
    "forest_from_matrix",
    "enumerate_star_matrices",
    "box_of",
    "box_contains",
    "specializations",
    "rewrite_to_nonnested",
    "TrimmingDiagram",
    "trimming_diagram",
    "FILTER_LIMIT",
]

RTWord = tuple[Letter, ...]
FILTER_LIMIT = 7


def as_word(word) -> RTWord:
    if isinstance(word, str):
        return parse_word(word)
    return tuple(Letter(*x) for x in word)


def is_rtseq(word, n: int | None = None) -> bool:
    word = as_word(word)
    if n is not None and len(word) != n:
        return False
    for pos, (kind, i) in enumerate(word, 1):
        if i < 1 or (kind == "r" and i > pos) or (kind == "t" and i > pos - 1):
            return False
    return True


def validate_rtseq_n(word, n: int) -> RTWord:
    word = as_word(word)
    if len(word) != n:
        raise PreconditionError(f"word has length {len(word)}, expected {n}")
    for pos, (kind, i) in enumerate(word, 1):
        top = pos if kind == "r" else pos - 1
        if not 1 <= i <= top:
            raise PreconditionError(f"letter {kind}{i} is not allowed in position {pos}")
    return word


def enumerate_rtseq(n: int) -> Iterator[RTWord]:
    """All of RTSeq_n; there are 1 * 3 * 5 * ... * (2n-1) of them."""
    choices = [[R(i) for i in range(1, pos + 1)] + [T(i) for i in range(1, pos)] for pos in range(1, n + 1)]
    for word in _cartesian(*choices):
        yield tuple(word)


def forest_of(word) -> MarkedNestedForest:
    """Product of generators: t_j contributes j, r_j contributes j_o."""
    F: tuple = ()
    for kind, i in as_word(word):
        F = _times_t(F, i) if kind == "t" else _times_r(F, i)
    return MarkedNestedForest(F)


def nested_forest_of(word) -> NestedForest:
    return forest_of(word).forget_marks()


# trimming ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _trim_index(n: int) -> dict:
    index: dict = {}
    for word in enumerate_rtseq(n):
        index.setdefault(nested_forest_of(word), []).append(word)
    return index


def _backtrack(trees: list, n: int, suffix: tuple, out: list):
    if n == 0:
        if not trees:
            out.append(suffix)
        return
    # last letter t_i: a terminal node on leaves (i, i+1)
    for t in trees:
        for node in internal_nodes(t):
            if isinstance(node[0], int) and node[1] == node[0] + 1:
                i = node[0]
                if i + 1 > n:
                    continue
                _backtrack(_collapse_node(trees, i), n - 1, (T(i),) + suffix, out)
    # last letter r_i: a trivial tree at leaf i
    occupied = {v for t in trees for v in leaves(t)}
    for i in range(1, n + 1):
        if i not in occupied:
            _backtrack(_drop_leaf(trees, i), n - 1, (R(i),) + suffix, out)


def _collapse_node(trees, i):
    from .forest import _collapse, relabel

    shift = lambda k: k - 1 if k > i + 1 else k
    out = []
    for t in trees:
        t = relabel(_collapse(t, i), shift)
        if not isinstance(t, int):
            out.append(t)
    return out


def _drop_leaf(trees, i):
    from .forest import relabel

    shift = lambda k: k - 1 if k > i else k
    return [relabel(t, shift) for t in trees]


def trim_set(F: NestedForest, n: int, method: str = "auto") -> list[RTWord]:
    """Trim(F) inside RTSeq_n: words whose nested forest is F.

    ``filter`` scans all of RTSeq_n (n <= 7); ``backtrack`` peels leaves and
    terminal nodes off F.  Both return words in lexicographic order.
    """
    if not isinstance(F, NestedForest):
        F = F.forget_marks() if isinstance(F, MarkedNestedForest) else F.nested()
    if F.support_max() > n:
        return []
    if method == "auto":
        method = "filter" if n <= FILTER_LIMIT else "backtrack"
    if method == "filter":
        if n > FILTER_LIMIT:
            raise BoundExceededError(f"filtering RTSeq_{n} is limited to n <= {FILTER_LIMIT}")
        words = list(_trim_index(n).get(F, []))
    elif method == "backtrack":
        words = []
        _backtrack(list(F.trees), n, (), words)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return sorted(words)


# star matrices -------------------------------------------------------------

StarMatrix = tuple[tuple[str, ...], ...]


def star_matrix(word) -> StarMatrix:
    """Rows of '0', '1', '*'.  Each new letter adds a top row and a zero column."""
    rows: list[list[str]] = []
    for kind, i in as_word(word):
        width = len(rows) + 1
        gap = i if kind == "r" else i + 1  # 1-based column receiving the new zero column
        rows = [row[: gap - 1] + ["0"] + row[gap - 1:] for row in rows]
        top = ["0"] * width
        if kind == "r":
            top[i - 1] = "1"
        else:
            top[i - 1] = "*"
            top[i] = "1"
        rows.insert(0, top)
    return tuple(tuple(r) for r in rows)


def format_matrix(M: StarMatrix) -> str:
    return "\n".join(" ".join(row) for row in M)


def parse_matrix(text: str) -> StarMatrix:
    rows = [tuple(line.replace(",", " ").split()) for line in text.strip().splitlines() if line.strip()]
    return tuple(rows)


def validate_star_matrix(M: Sequence[Sequence[str]]) -> bool:
    """The four conditions characterising matrices of the form star_matrix(word)."""
    n = len(M)
    if any(len(row) != n for row in M):
        return False
    if any(v not in ("0", "1", "*") for row in M for v in row):
        return False
    ones = [[c for c in range(n) if M[r][c] == "1"] for r in range(n)]
    if any(len(o) != 1 for o in ones):
        return False
    if sorted(o[0] for o in ones) != list(range(n)):
        return False
    one_row_of_col = {ones[r][0]: r for r in range(n)}
    for r in range(n):
        stars = [c for c in range(n) if M[r][c] == "*"]
        if len(stars) > 1:
            return False
        if not stars:
            continue
        s, p = stars[0], ones[r][0]
        if s > p:
            return False
        if one_row_of_col[s] <= r:
            return False
        for c in range(s + 1, p):
            if any(M[rr][c] != "0" for rr in range(r + 1, n)):
                return False
    return True


def word_from_matrix(M: Sequence[Sequence[str]]) -> RTWord:
    """Invert star_matrix by peeling the top row and the column of its 1."""
    if not validate_star_matrix(M):
        raise PreconditionError("not a valid star matrix")
    rows = [list(r) for r in M]
    letters = []
    while rows:
        top = rows[0]
        p = top.index("1")
        if "*" in top:
            s = top.index("*")
            if s != p - 1:
                raise PreconditionError("top row star is not next to its 1")
            letters.append(T(s + 1))
        else:
            letters.append(R(p + 1))
        rows = [row[:p] + row[p + 1:] for row in rows[1:]]
    return tuple(reversed(letters))


def forest_from_matrix(M: Sequence[Sequence[str]]) -> NestedForest:
    """Each row holding a '*' and a '1' is an internal node; children are read upward."""
    n = len(M)
    node_of_row: dict[int, object] = {}
    for r in range(n):
        if "*" not in M[r]:
            continue

        def child(col: int):
            for rr in range(r - 1, -1, -1):
                if M[rr][col] == "*":
                    return node_of_row[rr]
            return col + 1

        node_of_row[r] = (child(M[r].index("*")), child(M[r].index("1")))
    children = set()
    for node in node_of_row.values():
        children.update(node)
    return NestedForest(tuple(v for v in node_of_row.values() if v not in children))


def enumerate_star_matrices(n: int) -> Iterator[StarMatrix]:
    """All n x n matrices satisfying validate_star_matrix (built row by row)."""
    from itertools import permutations

    for perm in permutations(range(n)):
        row_of_col = {c: r for r, c in enumerate(perm)}
        options = []
        for r, p in enumerate(perm):
            opts = [None] + [c for c in range(p) if row_of_col[c] > r]
            options.append(opts)
        for stars in _cartesian(*options):
            M = [["0"] * n for _ in range(n)]
            for r, p in enumerate(perm):
                M[r][p] = "1"
                if stars[r] is not None:
                    M[r][stars[r]] = "*"
            M = tuple(tuple(row) for row in M)
            if validate_star_matrix(M):
                yield M


# boxes ---------------------------------------------------------------------

def box_of(word) -> tuple[tuple[int, int], ...]:
    """Intervals Y_2, ..., Y_n: {j} for r_j and [j, j+1] for t_j."""
    word = as_word(word)
    return tuple((i, i) if kind == "r" else (i, i + 1) for kind, i in word[1:])


def box_contains(outer, inner) -> bool:
    """Whether box ``inner`` is a face of box ``outer``."""
    if len(outer) != len(inner):
        return False
    return all(a <= c and d <= b for (a, b), (c, d) in zip(outer, inner))


def specializations(word) -> list[RTWord]:
    """Every word obtained by replacing some t_i by r_i or r_{i+1}."""
    word = as_word(word)
    choices = [[l] if l.kind == "r" else [l, R(l.index), R(l.index + 1)] for l in word]
    return [tuple(w) for w in _cartesian(*choices)]


# rewriting -----------------------------------------------------------------

def _rewrite_step(word: RTWord, pos: int) -> list[RTWord]:
    (_, i), (_, j) = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2:]
    if j <= i:
        return [head + (R(j), T(i + 1)) + tail]
    if j == i + 1:
        return [head + (R(i), T(i + 1)) + tail, head + (R(i + 1), T(i)) + tail]
    return [head + (R(j - 1), T(i)) + tail]


def rewrite_to_nonnested(word, order: str = "leftmost", rng=None) -> Counter:
    """Move every r left of every t using the commutation relations and
    t_i r_{i+1} = r_i t_{i+1} + r_{i+1} t_i.  Returns a multiset of words.

    ``order`` chooses which adjacent (t, r) pair is rewritten first:
    ``leftmost`` or ``random`` (with ``rng`` a random.Random).
    """
    todo = Counter({as_word(word): 1})
    done: Counter = Counter()
    while todo:
        w, mult = todo.popitem()
        spots = [p for p in range(len(w) - 1) if w[p].kind == "t" and w[p + 1].kind == "r"]
        if not spots:
            done[w] += mult
            continue
        pos = spots[0] if order == "leftmost" else rng.choice(spots)
        for nw in _rewrite_step(w, pos):
            todo[nw] += mult
    return done


# trimming diagrams ---------------------------------------------------------

@dataclass(frozen=True)
class TrimmingDiagram:
    """Edges between Gelfand-Zetlin positions (i, j), 1 <= j <= i <= n.

    Row j holds positions (j, j), ..., (n, j).  ``red`` edges are identified
    coordinates; ``blue`` edges are the tree edges of the nested forest.
    """

    word: RTWord
    red: tuple
    blue: tuple

    @property
    def n(self) -> int:
        return len(self.word)

    def contract(self) -> NestedForest:
        """Contract red edges: blue edges then form the nested forest of the word."""
        n = self.n
        cls = {(i, 1): i for i in range(1, n + 1)}
        red_up = {}
        for a, b in self.red:
            up, down = (a, b) if a[1] > b[1] else (b, a)
            red_up[up] = down
        blue_up: dict = {}
        for a, b in self.blue:
            up, down = (a, b) if a[1] > b[1] else (b, a)
            blue_up.setdefault(up, []).append(down)
        for j in range(2, n + 1):
            for i in range(j, n + 1):
                pos = (i, j)
                if pos in red_up:
                    cls[pos] = cls[red_up[pos]]
                else:
                    left, right = sorted(blue_up[pos], key=lambda p: p[0])
                    cls[pos] = (cls[left], cls[right])
        nodes = {v for v in cls.values() if not isinstance(v, int)}
        children = {c for v in nodes for c in v}
        return NestedForest(tuple(v for v in nodes if v not in children))

    def render(self) -> str:
        """Text picture: 'o' marks positions, r/b mark red/blue edges."""
        n = self.n
        width = 4 * n
        colour = {}
        for a, b in self.red:
            colour[frozenset((a, b))] = "r"
        for a, b in self.blue:
            colour[frozenset((a, b))] = "b"

        def col(i, j):
            return 4 * (i - j) + 2 * (j - 1)

        lines = []
        for j in range(n, 0, -1):
            row = [" "] * width
            for i in range(j, n + 1):
                row[col(i, j)] = "o"
            lines.append("".join(row).rstrip())
            if j > 1:
                between = [" "] * width
                for i in range(j, n + 1):
                    c = col(i, j)
                    left = colour.get(frozenset(((i, j), (i - 1, j - 1))))
                    right = colour.get(frozenset(((i, j), (i, j - 1))))
                    if left:
                        between[c - 1] = left
                    if right:
                        between[c + 1] = right
                lines.append("".join(between).rstrip())
        return "\n".join(lines)


def trimming_diagram(word) -> TrimmingDiagram:
    """Elementary diagrams stacked by position; letter k links row n-k+1 to row n-k+2."""
    word = as_word(word)
    n = len(word)
    validate_rtseq_n(word, n)
    red, blue = [], []
    for k in range(2, n + 1):
        kind, i = word[k - 1]
        j = n - k + 1

        def lower(m):
            return (j + m - 1, j)

        def upper(m):
            return (j + m, j + 1)

        for m in range(1, k):
            if kind == "t" and m == i:
                blue.append((upper(m), lower(m)))
                blue.append((upper(m), lower(m + 1)))
            elif m < i:
                red.append((upper(m), lower(m)))
            else:
                red.append((upper(m), lower(m + 1)))
    return TrimmingDiagram(word, tuple(red), tuple(blue))


def word_text(word) -> str:
    return format_word(as_word(word))
