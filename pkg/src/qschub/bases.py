"""Schubert, forest and fundamental quasisymmetric bases, Pieri rules and LR coefficients."""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import PreconditionError, VerificationError
from .forest import IndexedForest, ct_monomial, parse_forest
from .ops import (
    apply_code,
    apply_word,
    divided_difference,
    is_quasisymmetric,
    is_symmetric,
    r_op,
    t_op,
)
from .perm import (
    Permutation,
    decreasing_chain_targets,
    from_lehmer_code,
    ins_inverse,
)
from .poly import MultiPoly, monomial

__all__ = [
    "BasisExpansion",
    "schubert",
    "partial_perm",
    "schubert_expand",
    "forest_poly",
    "forest_expand",
    "in_qsym_ideal",
    "monomial_qsym",
    "fundamental_qsym",
    "gessel_coeffs",
    "Ribbon",
    "ribbon_of",
    "skew_schur",
    "schur_poly",
    "schur_expand",
    "hall_inner_ribbon",
    "lr_coeff",
    "lr_via_word",
    "pieri_r",
    "pieri_t",
    "positivity_witness",
]


def _perm(w) -> Permutation:
    if isinstance(w, Permutation):
        return w
    if isinstance(w, str):
        return Permutation.parse(w)
    return Permutation(tuple(w))


@dataclass
class BasisExpansion:
    """Sparse expansion: ``terms`` maps a basis index to its coefficient."""

    basis: str
    terms: dict = field(default_factory=dict)

    def index_text(self, index) -> str:
        if self.basis == "fundamental":
            k, parts = index
            return f"{k}:(" + ",".join(map(str, parts)) + ")"
        return str(index)

    def to_json(self) -> str:
        terms = [{"index": self.index_text(i), "coeff": c if isinstance(c, int) else str(c)}
                 for i, c in self.terms.items()]
        return json.dumps({"basis": self.basis, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "BasisExpansion":
        data = json.loads(text)
        basis = data["basis"]
        terms = {}
        for item in data["terms"]:
            raw = item["index"]
            if basis == "schubert":
                index = Permutation.parse(raw)
            elif basis == "forest":
                index = parse_forest(raw)
            elif basis == "fundamental":
                k, parts = raw.split(":", 1)
                index = (int(k), tuple(int(v) for v in parts.strip("()").split(",") if v))
            else:
                index = raw
            terms[index] = item["coeff"]
        return cls(basis, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        letter = self.basis[0].upper()
        parts = []
        for text, c in sorted((self.index_text(i), c) for i, c in self.terms.items()):
            coeff = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coeff}{letter}[{text}]")
        return " + ".join(parts).replace("+ -", "- ")


# Schubert polynomials ------------------------------------------------------

@lru_cache(maxsize=4096)
def _schubert(w: Permutation, choose: str) -> MultiPoly:
    n = max(len(w), 1)
    f = monomial(tuple(range(n - 1, 0, -1)))
    u = w.inverse() * Permutation.longest(n)
    while True:
        d = u.descents()
        if not d:
            return f
        i = d[0] if choose == "first" else d[-1]
        f = divided_difference(i, f)
        u = u * Permutation.simple(i)


def schubert(w, choose: str = "first") -> MultiPoly:
    """Schubert polynomial: divided differences applied to x1^{n-1} x2^{n-2} ... x_{n-1}."""
    return _schubert(_perm(w), choose)


def partial_perm(w, f: MultiPoly) -> MultiPoly:
    """d_w f for the divided difference operator indexed by w."""
    w = _perm(w)
    while f:
        d = w.descents()
        if not d:
            break
        i = d[-1]
        f = divided_difference(i, f)
        w = w * Permutation.simple(i)
    return f


def _codes(total: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _codes(total - first, length - 1):
            yield (first,) + rest


def schubert_expand(f: MultiPoly) -> BasisExpansion:
    """Coefficients ct d_w f over permutations w with last descent <= nvars(f)."""
    n = max(f.nvars, 1)
    terms = {}
    for d, part in f.homogeneous_components().items():
        for code in _codes(d, n):
            w = from_lehmer_code(code)
            c = partial_perm(w, part).ct()
            if c:
                terms[w] = c
    out = BasisExpansion("schubert", terms)
    check = sum((c * schubert(w) for w, c in terms.items()), MultiPoly.zero(f.q))
    if check != f:
        raise VerificationError("Schubert reassembly failed")
    return out


# forest polynomials --------------------------------------------------------

def _solve_exact(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise VerificationError("singular forest system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _forest_system(n: int, d: int):
    codes = list(_codes(d, n))
    forests = [IndexedForest(c) for c in codes]
    matrix = [[ct_monomial(G, c) for c in codes] for G in forests]
    return codes, forests, matrix


@lru_cache(maxsize=None)
def _forest_poly(F: IndexedForest) -> MultiPoly:
    n = max(len(F.code), 1)
    codes, forests, matrix = _forest_system(n, F.size)
    rhs = [1 if G == F else 0 for G in forests]
    sol = _solve_exact(matrix, rhs)
    if any(v.denominator != 1 for v in sol):
        raise VerificationError("forest polynomial has non-integer coefficients")
    out = MultiPoly.zero()
    for c, v in zip(codes, sol):
        if v:
            out = out + monomial(c, int(v))
    return out


def forest_poly(F) -> MultiPoly:
    """The forest polynomial P_F, characterised by ct T_G P_F = [G == F]."""
    if isinstance(F, (tuple, list)):
        F = IndexedForest(tuple(F))
    return _forest_poly(F)


def forest_expand(f: MultiPoly) -> BasisExpansion:
    """Coefficients ct T_F f over forests whose code lives in 1..nvars(f)."""
    n = max(f.nvars, 1)
    terms = {}
    for d, part in f.homogeneous_components().items():
        for code in _codes(d, n):
            c = apply_code(code, part).ct()
            if c:
                terms[IndexedForest(code)] = c
    check = sum((c * forest_poly(F) for F, c in terms.items()), MultiPoly.zero(f.q))
    if check != f:
        raise VerificationError("forest reassembly failed")
    return BasisExpansion("forest", terms)


def in_qsym_ideal(f: MultiPoly, n: int) -> bool:
    """Whether f lies in the ideal generated by positive-degree quasisymmetric polynomials."""
    from .forest import enumerate_suppfor

    return all(not apply_code(F.code, f).ct() for F in enumerate_suppfor(n))


# quasisymmetric polynomials ------------------------------------------------

def monomial_qsym(parts: Sequence[int], n: int) -> MultiPoly:
    out = MultiPoly.zero()
    for idx in combinations(range(n), len(parts)):
        code = [0] * n
        for i, a in zip(idx, parts):
            code[i] = a
        out = out + monomial(code)
    return out


def _coarsenings_of_refinements(parts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every composition refining ``parts``."""
    if not parts:
        yield ()
        return
    head, tail = parts[0], parts[1:]
    for first in _compositions_of(head):
        for rest in _coarsenings_of_refinements(tail):
            yield first + rest


def _compositions_of(m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for a in range(1, m + 1):
        for rest in _compositions_of(m - a):
            yield (a,) + rest


def fundamental_qsym(parts: Sequence[int], n: int) -> MultiPoly:
    """F_alpha(x_1..x_n): the sum of M_beta over refinements beta of alpha.

    Its reverse-lexicographic leading monomial is x_k^{a_k} ... x_n^{a_n} with
    k = n - len(parts) + 1.
    """
    parts = tuple(parts)
    if any(a < 1 for a in parts):
        raise PreconditionError("composition parts must be positive")
    if len(parts) > n:
        return MultiPoly.zero()
    return sum((monomial_qsym(b, n) for b in _coarsenings_of_refinements(parts) if len(b) <= n),
               MultiPoly.zero())


def gessel_coeffs(f: MultiPoly, n: int) -> dict[tuple[int, tuple[int, ...]], int]:
    """Fundamental expansion of quasisymmetric f via ct T_k^{a_k} ... T_n^{a_n} f.

    Keys are ``(k, (a_k, ..., a_n))``; the constant term uses k = n + 1.
    """
    if not is_quasisymmetric(f, n):
        raise PreconditionError("polynomial is not quasisymmetric in n variables")
    out = {}
    for d, part in f.homogeneous_components().items():
        if d == 0:
            if part.ct():
                out[(n + 1, ())] = part.ct()
            continue
        for m in range(1, n + 1):
            for parts in _compositions_of(d):
                if len(parts) != m:
                    continue
                k = n - m + 1
                g = part
                for offset in range(m - 1, -1, -1):
                    for _ in range(parts[offset]):
                        g = t_op(k + offset, g)
                c = g.ct()
                if c:
                    out[(k, parts)] = c
    check = sum((c * fundamental_qsym(p, n) for (k, p), c in out.items() if p), MultiPoly.zero())
    check = check + out.get((n + 1, ()), 0)
    if check != f:
        raise VerificationError("fundamental reassembly failed")
    return out


# ribbons and Schur functions -----------------------------------------------

@dataclass(frozen=True)
class Ribbon:
    outer: tuple[int, ...]
    inner: tuple[int, ...]

    def row_lengths(self) -> tuple[int, ...]:
        inner = self.inner + (0,) * (len(self.outer) - len(self.inner))
        return tuple(a - b for a, b in zip(self.outer, inner))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.outer))})/({','.join(map(str, self.inner))})"


def ribbon_of(parts: Sequence[int]) -> Ribbon:
    """The ribbon whose rows, top to bottom, have lengths a_k, ..., a_n."""
    b = list(reversed(parts))
    m = len(b)
    outer = [sum(b[:t]) - (t - 1) for t in range(1, m + 1)]
    inner = [sum(b[:t]) - t for t in range(1, m)]
    return Ribbon(tuple(reversed(outer)), tuple(reversed(inner)))


def _ssyt(outer: Sequence[int], inner: Sequence[int], n: int) -> Iterator[dict]:
    inner = list(inner) + [0] * (len(outer) - len(inner))
    cells = [(r, c) for r in range(len(outer)) for c in range(inner[r], outer[r])]
    filling: dict = {}

    def go(idx):
        if idx == len(cells):
            yield dict(filling)
            return
        r, c = cells[idx]
        low = 1
        if (r, c - 1) in filling:
            low = max(low, filling[(r, c - 1)])
        if (r - 1, c) in filling:
            low = max(low, filling[(r - 1, c)] + 1)
        for v in range(low, n + 1):
            filling[(r, c)] = v
            yield from go(idx + 1)
            del filling[(r, c)]

    yield from go(0)


def skew_schur(outer: Sequence[int], inner: Sequence[int], n: int) -> MultiPoly:
    """s_{outer/inner}(x_1..x_n) as a sum over semistandard fillings."""
    counts: dict = {}
    for T in _ssyt(outer, inner, n):
        code = [0] * n
        for v in T.values():
            code[v - 1] += 1
        key = tuple(code)
        counts[key] = counts.get(key, 0) + 1
    return sum((monomial(k, c) for k, c in counts.items()), MultiPoly.zero())


def schur_poly(shape: Sequence[int], n: int) -> MultiPoly:
    return skew_schur(shape, (), n)


def schur_expand(f: MultiPoly, n: int) -> dict[tuple[int, ...], int]:
    """Schur coefficients of a symmetric polynomial in n variables (lex leading terms)."""
    if not is_symmetric(f, n):
        raise PreconditionError("polynomial is not symmetric")
    out = {}
    while f:
        lead = max(f.raw_terms, key=lambda k: (sum(k[1:]), k[1:] + (0,) * (n + 1 - len(k))))
        shape = tuple(v for v in lead[1:] if v)
        c = f.raw_terms[lead]
        out[shape] = out.get(shape, 0) + c
        f = f - c * schur_poly(shape, n)
    return out


def hall_inner_ribbon(f: MultiPoly, ribbon: Ribbon, n: int) -> int:
    """<f, s_ribbon> with the Schur basis orthonormal (both taken in n variables)."""
    a = schur_expand(f, n)
    b = schur_expand(skew_schur(ribbon.outer, ribbon.inner, n), n)
    return sum(c * b.get(shape, 0) for shape, c in a.items())


# Littlewood-Richardson and Pieri -------------------------------------------

def lr_coeff(u, w, v) -> int:
    """c^v_{u,w} = ct d_v (S_u S_w)."""
    u, w, v = _perm(u), _perm(w), _perm(v)
    if v.length() != u.length() + w.length():
        return 0
    return partial_perm(v, schubert(u) * schubert(w)).ct()


def lr_via_word(word, w) -> int:
    """ct of the word's operator applied to S_w."""
    return apply_word(word, schubert(w)).ct()


def pieri_r(i: int, w) -> dict[Permutation, int]:
    """R_i S_w as a sum of S_v over decreasing (i-1)-chains from w ending at ins_i(v)."""
    w = _perm(w)
    out = {}
    for target in decreasing_chain_targets(w, i - 1, i - 1):
        if target(i) == 1:
            _, v = ins_inverse(target)
            out[v] = out.get(v, 0) + 1
    return out


def pieri_t(i: int, w) -> dict[Permutation, int]:
    """T_i S_w: zero unless i is a descent of w, then pieri_r(i, w s_i)."""
    w = _perm(w)
    if i not in w.descents():
        return {}
    return pieri_r(i, w * Permutation.simple(i))


def _descent_chain(w: Permutation, i: int, m: int) -> Permutation:
    """Follow the explicit decreasing chain from w to some ins_i(v) with v in S_{m-1}."""
    a_vals = sorted(w.window(m)[: i - 1], reverse=True)
    cur = w
    labels = []
    for a in a_vals:
        tail = cur.window(m)[i - 1:]
        b = next((v for v in tail if v >= a), None)
        if b is None:
            raise VerificationError("no value to swap in the witness chain")
        inv = cur.inverse()
        cur = cur.swap_positions(inv(a), inv(b))
        labels.append(b)
    if any(x <= y for x, y in zip(labels, labels[1:])):
        raise VerificationError("witness chain labels are not decreasing")
    if cur(i) != 1:
        raise VerificationError("witness chain does not end at an insertion")
    _, v = ins_inverse(cur)
    return v


def _choose_descent(w: Permutation, m: int) -> int:
    inv = w.inverse()
    p, q = inv(1), inv(m)
    if p > q:
        return q
    if p != 1:
        return p - 1
    if q != m:
        return q
    return w.descents()[0]


def positivity_witness(w, n: int | None = None) -> tuple[tuple[int, ...], list[Permutation]]:
    """For w in S_n with length n-1, indices i_1..i_{n-1} (i_j <= j) and the
    chain of permutations showing T_{i_1} ... T_{i_{n-1}} S_w is positive.
    """
    w = _perm(w)
    m = max(len(w), 1) if n is None else n
    if not w.in_s(m) or w.length() != m - 1:
        raise PreconditionError(f"need length n-1 for w in S_n, got {w}")
    seq = []
    chain = [w]
    cur = w
    while m > 1:
        i = _choose_descent(cur, m)
        ws = cur * Permutation.simple(i)
        inv = ws.inverse()
        if not (inv(1) <= i <= inv(m)):
            raise VerificationError(f"descent {i} of {cur} does not satisfy the witness condition")
        v = _descent_chain(ws, i, m)
        if not v.in_s(m - 1) or i > m - 1:
            raise VerificationError(f"witness step leaves S_{m - 1}")
        if v not in pieri_t(i, cur):
            raise VerificationError(f"S_{v} does not occur in T_{i} S_{cur}")
        seq.append(i)
        cur = v
        chain.append(cur)
        m -= 1
    return tuple(reversed(seq)), chain
