"""Operators on polynomials: divided differences, R_i, T_i and their cyclic variants.

Each operator acts term by term on exponent keys.  On a monomial, R_i and
T_i produce at most one monomial, which keeps long operator words cheap.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import NamedTuple

from .errors import ParseError, PreconditionError
from .poly import MultiPoly, exact_divide, permute_vars, x

__all__ = [
    "Letter",
    "R",
    "T",
    "parse_word",
    "format_word",
    "divided_difference",
    "divided_difference_word",
    "r_op",
    "t_op",
    "r_cyc",
    "t_cyc",
    "ct",
    "apply_word",
    "apply_code",
    "is_quasisymmetric",
    "is_symmetric",
    "s_op",
]


class Letter(NamedTuple):
    kind: str  # "r" or "t"
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def R(i: int) -> Letter:
    return Letter("r", i)


def T(i: int) -> Letter:
    return Letter("t", i)


Word = tuple[Letter, ...]


def parse_word(text: str) -> Word:
    """``"r1 t1 t2"`` -> (r1, t1, t2).  Letters may also be comma separated."""
    out = []
    pos = 0
    for token in text.replace(",", " ").split():
        pos = text.index(token, pos)
        kind = token[0].lower()
        if kind not in "rt" or not token[1:].isdigit() or int(token[1:]) < 1:
            raise ParseError(f"bad letter {token!r}", pos)
        out.append(Letter(kind, int(token[1:])))
        pos += len(token)
    return tuple(out)


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(map(str, word))


def _check_index(i: int):
    if i < 1:
        raise PreconditionError("operator indices start at 1")


def s_op(i: int, f: MultiPoly) -> MultiPoly:
    """Swap x_i and x_{i+1}."""
    _check_index(i)
    return permute_vars(f, lambda k: i + 1 if k == i else (i if k == i + 1 else k))


def _slot(key, i):
    return key[i] if i < len(key) else 0


def _strip(e):
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def divided_difference(i: int, f: MultiPoly) -> MultiPoly:
    """(f - s_i f) / (x_i - x_{i+1}), computed monomial by monomial."""
    _check_index(i)
    out: dict = {}
    for key, c in f.raw_terms.items():
        a, b = _slot(key, i), _slot(key, i + 1)
        if a == b:
            continue
        base = list(key) + [0] * max(0, i + 2 - len(key))
        if a > b:
            pairs = [(a - 1 - k, b + k) for k in range(a - b)]
            sign = c
        else:
            pairs = [(a + k, b - 1 - k) for k in range(b - a)]
            sign = -c
        for ea, eb in pairs:
            base[i], base[i + 1] = ea, eb
            nk = _strip(base)
            v = out.get(nk, 0) + sign
            if v:
                out[nk] = v
            else:
                del out[nk]
    return MultiPoly(out, f.q, _trusted=True)


def divided_difference_via_division(i: int, f: MultiPoly) -> MultiPoly:
    """Reference implementation through exact polynomial division."""
    return exact_divide(f - s_op(i, f), x(i, f.q) - x(i + 1, f.q))


def divided_difference_word(word: Sequence[int], f: MultiPoly) -> MultiPoly:
    """d_{a_1} ... d_{a_k} f (the last index acts first)."""
    for i in reversed(word):
        f = divided_difference(i, f)
        if not f:
            break
    return f


def _r_key(key, i):
    if _slot(key, i):
        return None
    if len(key) <= i:
        return key
    return key[:i] + key[i + 1:]


def _t_key(key, i):
    a, b = _slot(key, i), _slot(key, i + 1)
    if a and not b:
        return _strip(key[:i] + (a - 1,) + key[i + 2:]), 1
    if b and not a:
        return _strip(key[:i] + (b - 1,) + key[i + 2:]), -1
    return None, 0


def r_op(i: int, f: MultiPoly) -> MultiPoly:
    """R_i f = f(x_1, ..., x_{i-1}, 0, x_i, x_{i+1}, ...)."""
    _check_index(i)
    return f.map_keys(lambda k: _r_key(k, i))


def t_op(i: int, f: MultiPoly) -> MultiPoly:
    """T_i f = (R_{i+1} f - R_i f) / x_i."""
    _check_index(i)
    out: dict = {}
    for key, c in f.raw_terms.items():
        nk, sign = _t_key(key, i)
        if nk is None:
            continue
        v = out.get(nk, 0) + sign * c
        if v:
            out[nk] = v
        else:
            del out[nk]
    return MultiPoly(out, f.q, _trusted=True)


def t_op_via_quotient(i: int, f: MultiPoly) -> MultiPoly:
    """Reference implementation of T_i through exact division by x_i."""
    return exact_divide(r_op(i + 1, f) - r_op(i, f), x(i, f.q))


def _cyc_target(i: int, n: int):
    def sigma(k: int) -> int:
        if k == i:
            return n
        if i < k <= n:
            return k - 1
        return k

    return sigma


def r_cyc(i: int, n: int, f: MultiPoly) -> MultiPoly:
    """f(x_1, ..., x_{i-1}, x_n, x_i, ..., x_{n-1}); variables past x_n are untouched."""
    if not 1 <= i <= n:
        raise PreconditionError(f"need 1 <= i <= n, got i={i}, n={n}")
    return permute_vars(f, _cyc_target(i, n))


def t_cyc(i: int, n: int, f: MultiPoly) -> MultiPoly:
    """(r_cyc(i+1, n, f) - r_cyc(i, n, f)) / (x_i - x_n), evaluated as r_cyc(i, n, d_i f)."""
    if not 1 <= i < n:
        raise PreconditionError(f"need 1 <= i < n, got i={i}, n={n}")
    return r_cyc(i, n, divided_difference(i, f))


def ct(f: MultiPoly):
    return f.ct()


def apply_word(word: Iterable[Letter], f: MultiPoly) -> MultiPoly:
    """Apply up(X_1) ... up(X_n); the last letter acts first."""
    for letter in reversed(tuple(word)):
        if letter.kind == "r":
            f = r_op(letter.index, f)
        elif letter.kind == "t":
            f = t_op(letter.index, f)
        else:
            raise PreconditionError(f"unknown letter kind {letter.kind!r}")
        if not f:
            break
    return f


def apply_code(code: Sequence[int], f: MultiPoly) -> MultiPoly:
    """T_1^{c_1} T_2^{c_2} ... f for an indexed forest with the given code."""
    word = tuple(T(i) for i, c in enumerate(code, 1) for _ in range(c))
    return apply_word(word, f)


def is_quasisymmetric(f: MultiPoly, n: int) -> bool:
    """f in Z[x_1..x_n] is quasisymmetric iff T_1 f = ... = T_{n-1} f = 0."""
    if f.nvars > n:
        raise PreconditionError(f"polynomial uses variables beyond x{n}")
    return all(not t_op(i, f) for i in range(1, n))


def is_symmetric(f: MultiPoly, n: int) -> bool:
    if f.nvars > n:
        raise PreconditionError(f"polynomial uses variables beyond x{n}")
    return all(s_op(i, f) == f for i in range(1, n))
