"""Divided symmetrization and its q-deformation, directly and through operator products."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from functools import reduce
from itertools import permutations, product as _cartesian

from .errors import PreconditionError
from .forest import IndexedForest, internal_nodes
from .ops import t_cyc, t_op
from .perm import Permutation
from .poly import MultiPoly, RationalFn, exact_divide, permute_vars, qvar, x

__all__ = [
    "vandermonde",
    "staircase_denominator",
    "ds_direct",
    "ds_factorized",
    "ds_plain",
    "qds_direct",
    "qds_factorized",
    "tau",
    "group_algebra_product",
    "trim_weights",
    "q_trim_weights",
    "decreasing_labelings",
    "dec_q_weight",
]


def _sign(p: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _check(f: MultiPoly, n: int):
    if n < 1:
        raise PreconditionError("n must be positive")
    if f.nvars > n:
        raise PreconditionError(f"polynomial uses variables beyond x{n}")


def vandermonde(n: int, q: bool = False) -> MultiPoly:
    """prod_{i<j} (x_i - x_j)."""
    return reduce(lambda a, b: a * b, (x(i, q) - x(j, q) for i in range(1, n + 1) for j in range(i + 1, n + 1)),
                  MultiPoly.one(q))


def staircase_denominator(n: int, q: bool = False) -> list[MultiPoly]:
    """The factors x_i - x_{i+1}, i < n."""
    return [x(i, q) - x(i + 1, q) for i in range(1, n)]


def _q_vandermonde(n: int) -> MultiPoly:
    q = qvar()
    return reduce(lambda a, b: a * b,
                  (q * x(i, True) - x(j, True) for i in range(1, n + 1) for j in range(i + 2, n + 1)),
                  MultiPoly.one(True))


def _antisymmetrize(g: MultiPoly, n: int) -> MultiPoly:
    total = MultiPoly.zero(g.q)
    for p in permutations(range(1, n + 1)):
        img = permute_vars(g, lambda k, p=p: p[k - 1] if k <= n else k)
        total = total + (img if _sign(p) == 1 else -img)
    return total


def ds_direct(f: MultiPoly, n: int, method: str = "antisymmetrize") -> MultiPoly:
    """sum over S_n of sigma(f / prod (x_i - x_{i+1})).

    ``naive`` adds the n! rational functions; ``antisymmetrize`` clears the
    common denominator first: the sum equals A(f * V/D) / V, where V is the
    Vandermonde product, D the staircase denominator and A the signed sum.
    """
    _check(f, n)
    if method == "naive":
        total = RationalFn(MultiPoly.zero(f.q))
        den = staircase_denominator(n, f.q)
        for p in permutations(range(1, n + 1)):
            sigma = lambda k, p=p: p[k - 1] if k <= n else k
            total = total + RationalFn(permute_vars(f, sigma), [permute_vars(d, sigma) for d in den])
        return total.to_poly()
    if method != "antisymmetrize":
        raise PreconditionError(f"unknown method {method!r}")
    V = vandermonde(n, f.q)
    cofactor = exact_divide(V, reduce(lambda a, b: a * b, staircase_denominator(n, f.q), MultiPoly.one(f.q)))
    return exact_divide(_antisymmetrize(f * cofactor, n), V)


def ds_factorized(f: MultiPoly, n: int) -> MultiPoly:
    """T_{1,2} (T_{1,3} + T_{2,3}) ... (T_{1,n} + ... + T_{n-1,n}) f; the last factor acts first."""
    _check(f, n)
    for m in range(n, 1, -1):
        f = sum((t_cyc(i, m, f) for i in range(1, m)), MultiPoly.zero(f.q))
        if not f:
            break
    return f


def ds_plain(f: MultiPoly, n: int) -> MultiPoly:
    """T_1 (T_1 + T_2) ... (T_1 + ... + T_{n-1}) f, valid for deg f <= n - 1."""
    _check(f, n)
    if f.degree() > n - 1:
        raise PreconditionError("the plain operator form needs degree at most n - 1")
    for m in range(n - 1, 0, -1):
        f = sum((t_op(i, f) for i in range(1, m + 1)), MultiPoly.zero(f.q))
        if not f:
            break
    return f


def qds_direct(f: MultiPoly, n: int, method: str = "antisymmetrize") -> MultiPoly:
    """sum over S_n of sigma(f * Vq / V) with Vq = prod_{i+1<j} (q x_i - x_j)."""
    _check(f, n)
    f = f.with_q()
    Vq = _q_vandermonde(n)
    V = vandermonde(n, True)
    if method == "naive":
        total = RationalFn(MultiPoly.zero(True))
        pairs = [x(i, True) - x(j, True) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        for p in permutations(range(1, n + 1)):
            sigma = lambda k, p=p: p[k - 1] if k <= n else k
            total = total + RationalFn(permute_vars(f * Vq, sigma), [permute_vars(d, sigma) for d in pairs])
        return total.to_poly()
    if method != "antisymmetrize":
        raise PreconditionError(f"unknown method {method!r}")
    return exact_divide(_antisymmetrize(f * Vq, n), V)


def qds_factorized(f: MultiPoly, n: int) -> MultiPoly:
    """T_1 (T_1 + q T_2) ... (T_1 + q T_2 + ... + q^{n-2} T_{n-1}) f for f of degree n - 1."""
    _check(f, n)
    if f and (not f.is_homogeneous() or f.degree() != n - 1):
        raise PreconditionError("q-form needs a homogeneous polynomial of degree n - 1")
    f = f.with_q()
    q = qvar()
    for m in range(n - 1, 0, -1):
        f = sum((q ** (i - 1) * t_op(i, f) for i in range(1, m + 1)), MultiPoly.zero(True))
        if not f:
            break
    return f


# group algebra -------------------------------------------------------------

def _cycle_down(j: int, n: int) -> Permutation:
    """The cycle (n, n-1, ..., n-j+1): n -> n-1 -> ... -> n-j+1 -> n."""
    w = list(range(1, n + 1))
    for k in range(n - j + 2, n + 1):
        w[k - 1] = k - 1
    w[n - j] = n
    return Permutation(tuple(w))


def tau(n: int) -> Counter:
    """tau_n = sum_{j=1}^{n} cyc_{j,n} as a formal sum."""
    return Counter({_cycle_down(j, n): 1 for j in range(1, n + 1)})


def group_algebra_product(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for u, cu in a.items():
        for v, cv in b.items():
            out[u * v] += cu * cv
    return out


# forest weights ------------------------------------------------------------

def _sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Index sequences (i_1, ..., i_{n-1}) with i_j <= j."""
    return _cartesian(*(range(1, j + 1) for j in range(1, n)))


def trim_weights(n: int) -> Counter:
    """|Trim(F)| over all-T words: counts of sequences with T_{i_1} ... T_{i_{n-1}} = T_F."""
    out: Counter = Counter()
    for seq in _sequences(n):
        out[_forest_of_indices(seq)] += 1
    return out


def q_trim_weights(n: int) -> dict[IndexedForest, MultiPoly]:
    """The same sum with each sequence weighted by q^{sum (i_j - 1)}."""
    out: dict = {}
    q = qvar()
    for seq in _sequences(n):
        F = _forest_of_indices(seq)
        out[F] = out.get(F, MultiPoly.zero(True)) + q ** sum(i - 1 for i in seq)
    return out


def _forest_of_indices(seq) -> IndexedForest:
    F = IndexedForest(())
    for i in seq:
        F = F.times(i)
    return F


def decreasing_labelings(F: IndexedForest) -> Iterator[tuple[int, ...]]:
    """Labelings of internal nodes by 1..|F|, decreasing from each root downward,
    read off in left-to-right (in-order) node order."""
    order = []

    def inorder(t):
        if isinstance(t, int):
            return
        inorder(t[0])
        order.append(t)
        inorder(t[1])

    for t in F.trees:
        inorder(t)
    parent = {}
    for t in F.trees:
        for node in internal_nodes(t):
            for child in node:
                if not isinstance(child, int):
                    parent[child] = node
    size = len(order)
    for labels in permutations(range(1, size + 1)):
        lab = dict(zip(order, labels))
        if all(lab[c] < lab[p] for c, p in parent.items()):
            yield labels


def dec_q_weight(F: IndexedForest) -> MultiPoly:
    """sum over decreasing labelings of q^{inversions of the in-order reading}."""
    q = qvar()
    total = MultiPoly.zero(True)
    for labels in decreasing_labelings(F):
        inv = sum(1 for a in range(len(labels)) for b in range(a + 1, len(labels)) if labels[a] > labels[b])
        total = total + q**inv
    return total
