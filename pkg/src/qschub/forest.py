"""Indexed forests, nested forests and marked nested forests.

Trees are nested tuples whose leaves are global leaf labels: a leaf is an
``int`` and an internal node is a pair ``(left, right)``.  A forest keeps only
its non-trivial (or marked) trees; every other leaf label is an unmarked
trivial tree.  Labels are unique, so a subtree tuple identifies its node.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as _cartesian

from .errors import BoundExceededError, ParseError, PreconditionError

__all__ = [
    "IndexedForest",
    "NestedForest",
    "MarkedNestedForest",
    "product",
    "forget_marks",
    "ct_monomial",
    "enumerate_suppfor",
    "enumerate_nsuppfor",
    "parse_forest",
    "plane_trees",
    "MAX_ENUMERATION_N",
]

MAX_ENUMERATION_N = 9

Tree = "int | tuple"


# tree utilities ------------------------------------------------------------

def leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    return leaves(t[0]) + leaves(t[1])


def leftmost(t) -> int:
    while not isinstance(t, int):
        t = t[0]
    return t


def internal_nodes(t) -> list[tuple]:
    if isinstance(t, int):
        return []
    return [t] + internal_nodes(t[0]) + internal_nodes(t[1])


def relabel(t, fn):
    if isinstance(t, int):
        return fn(t)
    return (relabel(t[0], fn), relabel(t[1], fn))


def substitute_leaves(t, images):
    if isinstance(t, int):
        return images(t)
    return (substitute_leaves(t[0], images), substitute_leaves(t[1], images))


def shape_string(t) -> str:
    """Prefix encoding: '^' for an internal node, '.' for a leaf."""
    if isinstance(t, int):
        return "."
    return "^" + shape_string(t[0]) + shape_string(t[1])


def tree_from_shape(shape: str, labels: Sequence[int]):
    labels = iter(labels)
    pos = 0

    def build():
        nonlocal pos
        if pos >= len(shape):
            raise ParseError("tree shape ended early", pos)
        ch = shape[pos]
        pos += 1
        if ch == ".":
            try:
                return next(labels)
            except StopIteration:
                raise ParseError("more leaves in shape than in block", pos) from None
        if ch == "^":
            left = build()
            return (left, build())
        raise ParseError(f"bad shape character {ch!r}", pos - 1)

    t = build()
    if pos != len(shape):
        raise ParseError("trailing characters in tree shape", pos)
    if next(labels, None) is not None:
        raise ParseError("fewer leaves in shape than in block")
    return t


@lru_cache(maxsize=None)
def _plane_trees_count(m: int) -> tuple:
    """All plane binary tree shapes with m leaves, as shape strings."""
    if m == 1:
        return (".",)
    out = []
    for k in range(1, m):
        for a in _plane_trees_count(k):
            for b in _plane_trees_count(m - k):
                out.append("^" + a + b)
    return tuple(out)


def plane_trees(labels: Sequence[int]) -> list:
    """Every plane binary tree whose leaves, left to right, are ``labels``."""
    return [tree_from_shape(s, labels) for s in _plane_trees_count(len(labels))]


# canonical forms -----------------------------------------------------------

def _canon_marked(trees: Iterable[tuple[object, bool]]) -> tuple:
    kept = [(t, bool(m)) for t, m in trees if m or not isinstance(t, int)]
    return tuple(sorted(kept, key=lambda tm: leftmost(tm[0])))


def _canon_plain(trees: Iterable[object]) -> tuple:
    return tuple(sorted((t for t in trees if not isinstance(t, int)), key=leftmost))


def _max_label(trees) -> int:
    return max((max(leaves(t)) for t in trees), default=0)


def _validate_structure(trees: Sequence, marks: Sequence[bool] | None = None):
    """Leaves are disjoint, supports are noncrossing, nested trees are marked."""
    seen: set[int] = set()
    spans = []
    for idx, t in enumerate(trees):
        ls = leaves(t)
        if any(v < 1 for v in ls):
            raise PreconditionError("leaf labels must be positive")
        if ls != sorted(ls):
            raise PreconditionError("leaves must increase from left to right")
        if seen & set(ls):
            raise PreconditionError("a leaf belongs to two trees")
        seen |= set(ls)
        spans.append((ls, idx))
    for ls, idx in spans:
        for ms, jdx in spans:
            if idx == jdx:
                continue
            a, b = min(ls), max(ls)
            inside = [v for v in ms if a < v < b]
            if inside and len(inside) != len(ms):
                raise PreconditionError("tree supports cross")
            if inside and marks is not None and not marks[jdx]:
                raise PreconditionError("a tree nested inside another must be marked")
            # ms nested in a gap of ls: it must sit in one gap
            if inside:
                gaps = {sum(1 for v in ls if v < m) for m in ms}
                if len(gaps) != 1:
                    raise PreconditionError("tree supports cross")


# the core product ----------------------------------------------------------

def _unmarked_roots(G: tuple, count: int) -> list:
    """The first ``count`` unmarked roots of G (trivial ones as ints), left to right."""
    occupied: set[int] = set()
    unmarked_at: dict[int, object] = {}
    for t, m in G:
        occupied.update(leaves(t))
        if not m:
            unmarked_at[leftmost(t)] = t
    roots = []
    p = 1
    top = _max_label(t for t, _ in G)
    while len(roots) < count or p <= top:
        if p in unmarked_at:
            roots.append(unmarked_at[p])
        elif p not in occupied:
            roots.append(p)
        p += 1
    return roots


def _marked_product(F: tuple, G: tuple) -> tuple:
    """Identify the i'th leaf of F with the i'th unmarked root of G."""
    need = _max_label(t for t, _ in F)
    roots = _unmarked_roots(G, need)
    used = set()
    out = []
    for t, m in F:
        used.update(leaves(t))
        out.append((substitute_leaves(t, lambda k: roots[k - 1]), m))
    for k, r in enumerate(roots, 1):
        if k not in used and not isinstance(r, int):
            out.append((r, False))
    out.extend((t, True) for t, m in G if m)
    return _canon_marked(out)


def _times_t(F: tuple, i: int) -> tuple:
    """F * i: the i'th leaf gets two children."""
    shift = lambda k: k + 1 if k > i else k
    out = []
    hit = False
    for t, m in F:
        t = relabel(t, shift)
        if i in leaves(t):
            t = substitute_leaves(t, lambda k: (i, i + 1) if k == i else k)
            hit = True
        out.append((t, m))
    if not hit:
        out.append(((i, i + 1), False))
    return _canon_marked(out)


def _times_r(F: tuple, i: int) -> tuple:
    """F * i_o: a marked trivial tree inserted before the i'th leaf."""
    shift = lambda k: k + 1 if k >= i else k
    out = [(relabel(t, shift), m) for t, m in F]
    out.append((i, True))
    return _canon_marked(out)


def _aug_code(F: tuple) -> tuple:
    top = _max_label(t for t, _ in F)
    counts = [0] * (top + 1)
    eps = [0] * (top + 1)
    for t, m in F:
        for node in internal_nodes(t):
            counts[leftmost(node)] += 1
        if m:
            eps[leftmost(t)] = 1
    code = [(eps[i], counts[i]) for i in range(1, top + 1)]
    while code and code[-1] == (0, 0):
        code.pop()
    return tuple(code)


def _remove_leaf(trees: tuple, i: int, marked: bool) -> tuple:
    """Delete the trivial tree at leaf i and close the gap."""
    shift = lambda k: k - 1 if k > i else k
    out = []
    for t, m in trees:
        if t == i:
            continue
        out.append((relabel(t, shift), m))
    return _canon_marked(out) if marked else out


def _trim_node(trees: Sequence, i: int) -> list:
    """Collapse the terminal node with leaves (i, i+1) into the leaf i."""
    shift = lambda k: k - 1 if k > i + 1 else k
    out = []
    found = False
    for t, m in trees:
        if (i, i + 1) in internal_nodes(t):
            found = True
            t = _collapse(t, i)
        out.append((relabel(t, shift), m))
    if not found:
        raise PreconditionError(f"no terminal node with leaves {i}, {i + 1}")
    return out


def _collapse(t, i):
    if t == (i, i + 1):
        return i
    if isinstance(t, int):
        return t
    return (_collapse(t[0], i), _collapse(t[1], i))


# forest classes ------------------------------------------------------------

def _block_text(t, marked: bool) -> str:
    ls = leaves(t)
    return "{" + ",".join(map(str, ls)) + "}" + ("*" if marked else "") + ":" + shape_string(t)


@dataclass(frozen=True)
class IndexedForest:
    """A forest of plane binary trees on leaves 1, 2, ..., stored by its code."""

    code: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.code]
        if any(v < 0 for v in c):
            raise PreconditionError("codes are nonnegative")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "code", tuple(c))

    @classmethod
    def from_code(cls, code: Iterable[int]) -> "IndexedForest":
        return cls(tuple(code))

    @classmethod
    def from_trees(cls, trees: Iterable) -> "IndexedForest":
        trees = list(trees)
        _validate_structure(trees)
        for t in trees:
            ls = leaves(t)
            if ls != list(range(ls[0], ls[-1] + 1)):
                raise PreconditionError("an indexed forest has interval supports")
        return cls(tuple(c for _, c in _aug_code(tuple((t, False) for t in trees))))

    @cached_property
    def trees(self) -> tuple:
        F: tuple = ()
        for i, c in enumerate(self.code, 1):
            for _ in range(c):
                F = _times_t(F, i)
        return tuple(t for t, _ in F)

    @property
    def size(self) -> int:
        """Number of internal nodes."""
        return sum(self.code)

    def __len__(self) -> int:
        return self.size

    def qdes(self) -> tuple[int, ...]:
        """Left leaves of terminal nodes."""
        out = []
        for t in self.trees:
            for node in internal_nodes(t):
                if isinstance(node[0], int) and isinstance(node[1], int):
                    out.append(node[0])
        return tuple(sorted(out))

    def trim_at(self, i: int) -> "IndexedForest":
        """F/i, with F = (F/i) * i."""
        if i not in self.qdes():
            raise PreconditionError(f"{i} is not a left leaf of a terminal node")
        trees = _trim_node([(t, False) for t in self.trees], i)
        return IndexedForest.from_trees(t for t, _ in trees)

    def times(self, i: int) -> "IndexedForest":
        return IndexedForest.from_trees(t for t, _ in _times_t(tuple((t, False) for t in self.trees), i))

    def word(self) -> tuple[int, ...]:
        """Indices i_1 ... i_k with F = i_1 * ... * i_k (the code normal form)."""
        return tuple(i for i, c in enumerate(self.code, 1) for _ in range(c))

    def nested(self) -> "NestedForest":
        return NestedForest(self.trees)

    def marked(self) -> "MarkedNestedForest":
        return MarkedNestedForest(tuple((t, False) for t in self.trees))

    def support_max(self) -> int:
        return _max_label(self.trees)

    def __str__(self) -> str:
        return "c=(" + ",".join(map(str, self.code)) + ")"


@dataclass(frozen=True)
class NestedForest:
    """Trees with noncrossing (possibly nested) supports, marks forgotten."""

    trees: tuple

    def __post_init__(self):
        object.__setattr__(self, "trees", _canon_plain(self.trees))

    @classmethod
    def from_trees(cls, trees: Iterable) -> "NestedForest":
        trees = list(trees)
        _validate_structure(trees)
        return cls(tuple(trees))

    @cached_property
    def code(self) -> tuple[int, ...]:
        return tuple(c for _, c in _aug_code(tuple((t, False) for t in self.trees)))

    @property
    def size(self) -> int:
        return sum(len(internal_nodes(t)) for t in self.trees)

    def __len__(self) -> int:
        return self.size

    def blocks(self) -> list[tuple[int, ...]]:
        return [tuple(leaves(t)) for t in self.trees]

    def is_indexed(self) -> bool:
        return all(ls == tuple(range(ls[0], ls[-1] + 1)) for ls in self.blocks())

    def indexed(self) -> IndexedForest:
        if not self.is_indexed():
            raise PreconditionError("forest has nested supports")
        return IndexedForest(self.code)

    def support_max(self) -> int:
        return _max_label(self.trees)

    def ct_monomial(self, code: Sequence[int]) -> int:
        return ct_monomial(self, code)

    def __str__(self) -> str:
        return " ".join(_block_text(t, False) for t in self.trees) or "empty"


@dataclass(frozen=True, eq=False)
class MarkedNestedForest:
    """A nested forest with a subset of roots marked; nested trees are always marked.

    Equality and hashing go through the augmented code, which is a complete
    invariant.
    """

    trees: tuple  # ((tree, marked), ...)

    def __post_init__(self):
        object.__setattr__(self, "trees", _canon_marked(self.trees))

    @classmethod
    def from_trees(cls, trees: Iterable[tuple[object, bool]]) -> "MarkedNestedForest":
        trees = list(trees)
        _validate_structure([t for t, _ in trees], [m for _, m in trees])
        return cls(tuple(trees))

    @classmethod
    def empty(cls) -> "MarkedNestedForest":
        return cls(())

    @classmethod
    def generator_t(cls, i: int) -> "MarkedNestedForest":
        return cls((((i, i + 1), False),))

    @classmethod
    def generator_r(cls, i: int) -> "MarkedNestedForest":
        return cls(((i, True),))

    @classmethod
    def from_aug_code(cls, code: Iterable[tuple[int, int]]) -> "MarkedNestedForest":
        """The normal form 1o^{e1} 1^{a1} 2o^{e2} 2^{a2} ..."""
        F: tuple = ()
        for i, (eps, a) in enumerate(code, 1):
            if eps not in (0, 1) or a < 0:
                raise PreconditionError(f"bad augmented code entry {(eps, a)}")
            if eps:
                F = _times_r(F, i)
            for _ in range(a):
                F = _times_t(F, i)
        return cls(F)

    @cached_property
    def aug_code(self) -> tuple[tuple[int, int], ...]:
        return _aug_code(self.trees)

    def __eq__(self, other):
        if not isinstance(other, MarkedNestedForest):
            return NotImplemented
        return self.aug_code == other.aug_code

    def __hash__(self):
        return hash(self.aug_code)

    def times_t(self, i: int) -> "MarkedNestedForest":
        return MarkedNestedForest(_times_t(self.trees, i))

    def times_r(self, i: int) -> "MarkedNestedForest":
        return MarkedNestedForest(_times_r(self.trees, i))

    def word(self):
        """Letters of the normal form, as (kind, index) pairs usable by ops.apply_word."""
        from .ops import R, T

        out = []
        for i, (eps, a) in enumerate(self.aug_code, 1):
            out.extend([R(i)] * eps + [T(i)] * a)
        return tuple(out)

    def forget_marks(self) -> NestedForest:
        return NestedForest(tuple(t for t, _ in self.trees))

    def support_max(self) -> int:
        return _max_label(t for t, _ in self.trees)

    def __str__(self) -> str:
        return " ".join(_block_text(t, m) for t, m in self.trees) or "empty"

    def __repr__(self) -> str:
        return f"MarkedNestedForest({str(self)!r})"


def forget_marks(F: MarkedNestedForest) -> NestedForest:
    return F.forget_marks()


def product(A, B):
    """Monoid product.  For unmarked kinds every root of B counts as unmarked."""
    if isinstance(A, MarkedNestedForest) and isinstance(B, MarkedNestedForest):
        return MarkedNestedForest(_marked_product(A.trees, B.trees))
    if isinstance(A, IndexedForest) and isinstance(B, IndexedForest):
        out = _marked_product(tuple((t, False) for t in A.trees), tuple((t, False) for t in B.trees))
        return IndexedForest.from_trees(t for t, _ in out)
    if isinstance(A, NestedForest) and isinstance(B, NestedForest):
        out = _marked_product(tuple((t, False) for t in A.trees), tuple((t, False) for t in B.trees))
        return NestedForest(tuple(t for t, _ in out))
    raise PreconditionError("product needs two forests of the same kind")


# constant-term functional --------------------------------------------------

def ct_monomial(F, code: Sequence[int]) -> int:
    """ct of the operator of F applied to x^code, by the path-partition rule.

    Each leaf i walks code[i-1] steps toward its root.  The walks must exist
    and cover every internal node exactly once; the sign counts right-child
    steps.
    """
    trees = F.trees if not isinstance(F, MarkedNestedForest) else tuple(t for t, _ in F.trees)
    parent: dict = {}
    is_right: dict = {}
    nodes: set = set()
    for t in trees:
        for node in internal_nodes(t):
            nodes.add(node)
            parent[node[0]] = node
            parent[node[1]] = node
            is_right[node[0]] = False
            is_right[node[1]] = True
    if sum(code) != len(nodes):
        return 0
    visited: set = set()
    rights = 0
    for i, c in enumerate(code, 1):
        cur = i
        for _ in range(c):
            if cur not in parent:
                return 0
            rights += is_right[cur]
            cur = parent[cur]
            if cur in visited:
                return 0
            visited.add(cur)
    if visited != nodes:
        return 0
    return -1 if rights % 2 else 1


# enumeration ---------------------------------------------------------------

def _check_bound(n: int, bound: int):
    if n > bound:
        raise BoundExceededError(f"n={n} exceeds the enumeration bound {bound}")


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_suppfor(n: int, size: int | None = None, bound: int = MAX_ENUMERATION_N) -> list[IndexedForest]:
    """Indexed forests whose non-trivial trees use only leaves 1..n, sorted by code."""
    _check_bound(n, bound)
    found = set()
    for comp in _compositions(n):
        start = 1
        choices = []
        for m in comp:
            choices.append(plane_trees(list(range(start, start + m))))
            start += m
        for trees in _cartesian(*choices):
            F = IndexedForest.from_trees(t for t in trees if not isinstance(t, int))
            if size is None or F.size == size:
                found.add(F)
    return sorted(found, key=lambda F: F.code)


def _noncrossing_partitions(elems: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    # choose the other members of first's block; gaps between them are independent
    for mask in range(1 << len(rest)):
        chosen = [rest[k] for k in range(len(rest)) if mask >> k & 1]
        block = (first,) + tuple(chosen)
        regions = []
        prev = 0
        for member in chosen:
            idx = rest.index(member)
            regions.append(rest[prev:idx])
            prev = idx + 1
        regions.append(rest[prev:])
        for parts in _cartesian(*(list(_noncrossing_partitions(r)) for r in regions)):
            yield [block] + [b for p in parts for b in p]


def enumerate_nsuppfor(n: int, size: int | None = None, bound: int = MAX_ENUMERATION_N) -> list[NestedForest]:
    """Nested forests whose non-trivial trees use only leaves 1..n."""
    _check_bound(n, bound)
    found = []
    for part in _noncrossing_partitions(tuple(range(1, n + 1))):
        choices = [plane_trees(list(b)) for b in part]
        for trees in _cartesian(*choices):
            F = NestedForest(tuple(trees))
            if size is None or F.size == size:
                found.append(F)
    return sorted(set(found), key=lambda F: (F.code, str(F)))


# text ----------------------------------------------------------------------

_BLOCK = re.compile(r"\{([0-9,\s]*)\}(\*?):([\^.]+)")


def parse_forest(text: str):
    """Read ``c=(1,0,2)``, ``a=((1,1),(0,0))`` or block notation ``{1,3}:^.. {2}*:.``.

    Block notation gives a NestedForest, or a MarkedNestedForest when any
    block carries ``*``.
    """
    text = text.strip()
    if text in ("empty", "{}", ""):
        return NestedForest(())
    if text.startswith("c="):
        body = text[2:].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError("code must be written c=(c1,c2,...)", 2)
        try:
            values = [int(v) for v in body[1:-1].split(",") if v.strip()]
        except ValueError:
            raise ParseError("code entries must be integers", 2) from None
        try:
            return IndexedForest(tuple(values))
        except PreconditionError as exc:
            raise ParseError(str(exc)) from None
    if text.startswith("a="):
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text[2:])
        if not pairs:
            raise ParseError("augmented code must be written a=((e1,c1),...)", 2)
        return MarkedNestedForest.from_aug_code((int(a), int(b)) for a, b in pairs)
    pos = 0
    trees = []
    any_mark = False
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _BLOCK.match(text, pos)
        if not m:
            raise ParseError("expected a block like {1,3}:^..", pos)
        labels = [int(v) for v in m.group(1).replace(" ", "").split(",") if v]
        if labels != sorted(labels) or len(set(labels)) != len(labels):
            raise ParseError("block labels must be strictly increasing", m.start(1))
        tree = tree_from_shape(m.group(3), labels)
        mark = m.group(2) == "*"
        any_mark |= mark
        trees.append((tree, mark))
        pos = m.end()
    try:
        if any_mark:
            return MarkedNestedForest.from_trees(trees)
        return NestedForest.from_trees(t for t, _ in trees)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None
