"""Sparse multivariate polynomials over Z or Z[q], plus rational functions.

Terms are stored in a dict keyed by an exponent tuple ``(e_q, e_1, e_2, ...)``
with trailing zeros stripped, so slot ``i`` of a key is the exponent of
``x_i``.  Integer-ring polynomials always have ``e_q == 0``.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Iterator, Mapping
from functools import reduce

from .errors import NotDivisibleError, ParseError, RingMismatchError

__all__ = [
    "MultiPoly",
    "RationalFn",
    "x",
    "qvar",
    "monomial",
    "const",
    "parse",
    "exact_divide",
    "substitute",
    "permute_vars",
    "grevlex_key",
]

Key = tuple[int, ...]


def _strip(e: Iterable[int]) -> Key:
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _add_keys(a: Key, b: Key) -> Key:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return tuple(out)


class MultiPoly:
    """Immutable sparse polynomial. ``q=True`` selects the ring Z[q][x]."""

    __slots__ = ("_terms", "q", "_hash")

    def __init__(self, terms: Mapping[Key, int] | None = None, q: bool = False, *, _trusted: bool = False):
        self.q = q
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean: dict[Key, int] = {}
        for key, c in (terms or {}).items():
            if c == 0:
                continue
            key = _strip(key)
            if any(v < 0 for v in key):
                raise ValueError(f"negative exponent in {key}")
            if not q and key and key[0] != 0:
                raise RingMismatchError("q-exponent in an integer-ring polynomial")
            clean[key] = clean.get(key, 0) + c
            if clean[key] == 0:
                del clean[key]
        self._terms = clean

    # construction helpers -------------------------------------------------

    @classmethod
    def _make(cls, terms: dict[Key, int], q: bool) -> "MultiPoly":
        return cls(terms, q, _trusted=True)

    @classmethod
    def zero(cls, q: bool = False) -> "MultiPoly":
        return cls._make({}, q)

    @classmethod
    def one(cls, q: bool = False) -> "MultiPoly":
        return cls._make({(): 1}, q)

    def with_q(self) -> "MultiPoly":
        """The same polynomial viewed in the q-ring."""
        return self if self.q else MultiPoly._make(dict(self._terms), True)

    # inspection -----------------------------------------------------------

    @property
    def raw_terms(self) -> Mapping[Key, int]:
        """Internal key -> coefficient map; keys carry the q-exponent in slot 0."""
        return self._terms

    def terms(self) -> Iterator[tuple[tuple[int, ...], int, int]]:
        """Yield ``(x_exponents, q_exponent, coefficient)``; ``x_exponents[0]`` is for x1."""
        for key, c in self._terms.items():
            yield key[1:], (key[0] if key else 0), c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.terms())

    @property
    def nvars(self) -> int:
        """Largest index i such that x_i occurs (0 for x-free polynomials)."""
        return max((len(k) - 1 for k in self._terms), default=0)

    def degree(self) -> int:
        """Total degree in the x variables; -1 for the zero polynomial."""
        return max((sum(k[1:]) for k in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k[1:]) for k in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        out: dict[int, dict[Key, int]] = {}
        for key, c in self._terms.items():
            out.setdefault(sum(key[1:]), {})[key] = c
        return {d: MultiPoly._make(t, self.q) for d, t in sorted(out.items())}

    def coefficient(self, code: Iterable[int], qexp: int = 0) -> int:
        return self._terms.get(_strip((qexp, *code)), 0)

    def ct(self):
        """Constant term in x.  An int in the integer ring, a q-polynomial otherwise."""
        if not self.q:
            return self._terms.get((), 0)
        return MultiPoly._make({k: c for k, c in self._terms.items() if len(k) <= 1}, True)

    def x_free(self) -> bool:
        return all(len(k) <= 1 for k in self._terms)

    def as_int(self) -> int:
        if any(k for k in self._terms):
            raise ValueError(f"{self} is not an integer constant")
        return self._terms.get((), 0)

    def eval_q(self, value: int) -> "MultiPoly":
        """Substitute q = value, returning an integer-ring polynomial."""
        out: dict[Key, int] = {}
        for key, c in self._terms.items():
            qe = key[0] if key else 0
            nk = _strip((0, *key[1:]))
            out[nk] = out.get(nk, 0) + c * value**qe
        return MultiPoly({k: v for k, v in out.items() if v}, False)

    def evaluate(self, point: Mapping[int, object] | Iterable[object], q=None):
        """Evaluate at x_i = point[i-1] (sequence) or point[i] (mapping)."""
        if not isinstance(point, Mapping):
            point = {i + 1: v for i, v in enumerate(point)}
        total = 0
        for key, c in self._terms.items():
            term = c
            if key and key[0]:
                if q is None:
                    raise ValueError("q value required")
                term = term * q ** key[0]
            for i, e in enumerate(key[1:], 1):
                if e:
                    term = term * point.get(i, 0) ** e
            total = total + term
        return total

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.q != self.q:
                raise RingMismatchError("cannot combine integer-ring and q-ring polynomials")
            return other
        if isinstance(other, int):
            return MultiPoly._make({(): other} if other else {}, self.q)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MultiPoly._make(out, self.q)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make({k: -c for k, c in self._terms.items()}, self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultiPoly._make({}, self.q)
            return MultiPoly._make({k: c * other for k, c in self._terms.items()}, self.q)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Key, int] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = _add_keys(ka, kb)
                out[k] = out.get(k, 0) + ca * cb
        return MultiPoly._make({k: c for k, c in out.items() if c}, self.q)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.q)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({(): other} if other else {})
        if isinstance(other, MultiPoly):
            return self.q == other.q and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, frozenset(self._terms.items())))
        return self._hash

    def map_keys(self, fn) -> "MultiPoly":
        """Apply ``fn`` to each internal key; ``fn`` returns a key or None to drop the term."""
        out: dict[Key, int] = {}
        for k, c in self._terms.items():
            nk = fn(k)
            if nk is None:
                continue
            v = out.get(nk, 0) + c
            if v:
                out[nk] = v
            else:
                del out[nk]
        return MultiPoly._make(out, self.q)

    # printing -------------------------------------------------------------

    def sorted_keys(self) -> list[Key]:
        width = max((len(k) for k in self._terms), default=0)
        return sorted(self._terms, key=lambda k: grevlex_key(k, width), reverse=True)

    def leading_key(self) -> Key:
        width = max((len(k) for k in self._terms), default=0)
        return max(self._terms, key=lambda k: grevlex_key(k, width))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r}{', q=True' if self.q else ''})"


def grevlex_key(key: Key, width: int) -> tuple:
    """Sort key: graded reverse lex in x (x1 > x2 > ...), ties broken by q-degree."""
    xs = key[1:] + (0,) * (width - len(key))
    return (sum(xs), tuple(-v for v in reversed(xs)), key[0] if key else 0)


# constructors --------------------------------------------------------------

def x(i: int, q: bool = False) -> MultiPoly:
    if i < 1:
        raise ValueError("variables are indexed from 1")
    return MultiPoly._make({(0,) * i + (1,): 1}, q)


def qvar() -> MultiPoly:
    return MultiPoly._make({(1,): 1}, True)


def const(c: int, q: bool = False) -> MultiPoly:
    return MultiPoly._make({(): c} if c else {}, q)


def monomial(code: Iterable[int], coeff: int = 1, qexp: int = 0) -> MultiPoly:
    """x^code, with ``code[0]`` the exponent of x1."""
    key = _strip((qexp, *code))
    return MultiPoly({key: coeff}, q=bool(qexp))


# text format ---------------------------------------------------------------

def _format_term(key: Key, c: int) -> str:
    factors = []
    if key and key[0]:
        factors.append("q" if key[0] == 1 else f"q^{key[0]}")
    for i, e in enumerate(key[1:], 1):
        if e:
            factors.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    if not factors:
        return str(abs(c))
    body = "*".join(factors)
    return body if abs(c) == 1 else f"{abs(c)}*{body}"


def format_poly(f: MultiPoly) -> str:
    if not f:
        return "0"
    parts = []
    for n, key in enumerate(f.sorted_keys()):
        c = f.raw_terms[key]
        text = _format_term(key, c)
        if n == 0:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])


def parse(text: str, q: bool | None = None) -> MultiPoly:
    """Parse ``3*x1^2*x2 - q*x3 + 5``.  ``q=None`` picks the ring from the text."""
    s = _Scanner(text)
    terms: dict[Key, int] = {}
    saw_q = False
    first = True
    while True:
        ch = s.peek()
        sign = 1
        if ch and ch in "+-":
            s.take()
            sign = -1 if ch == "-" else 1
        elif not first:
            break
        if s.peek() == "":
            raise ParseError("expected a term", s.pos)
        coeff = 1
        exps: dict[int, int] = {}
        have_factor = have_int = False
        if s.peek().isdigit():
            coeff = s.integer()
            have_int = True
            if s.peek() == "*":
                s.take()
                if s.peek() not in ("x", "q"):
                    raise ParseError("expected a factor after '*'", s.pos)
        while s.peek() in ("x", "q"):
            start = s.pos
            ch = s.take()
            if ch == "x":
                if not s.text[s.pos:s.pos + 1].isdigit():
                    raise ParseError("expected a variable index after 'x'", s.pos)
                idx = s.integer()
                if idx < 1:
                    raise ParseError("variable indices start at 1", start)
            else:
                idx = 0
                saw_q = True
            e = 1
            if s.peek() == "^":
                s.take()
                e = s.integer()
            exps[idx] = exps.get(idx, 0) + e
            have_factor = True
            if s.peek() == "*":
                s.take()
                if s.peek() not in ("x", "q"):
                    raise ParseError("expected a factor after '*'", s.pos)
        if not (have_factor or have_int):
            raise ParseError("expected a term", s.pos)
        width = max(exps, default=-1) + 1
        key = _strip(exps.get(i, 0) for i in range(width))
        terms[key] = terms.get(key, 0) + sign * coeff
        first = False
    if s.peek() != "":
        raise ParseError(f"unexpected character {s.peek()!r}", s.pos)
    if q is None:
        q = saw_q
    elif saw_q and not q:
        raise RingMismatchError("q appears in an integer-ring polynomial")
    return MultiPoly(terms, q)


# division and substitution -------------------------------------------------

def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g, raising NotDivisibleError if g does not divide f exactly."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.q != g.q:
        raise RingMismatchError("cannot divide across rings")
    if not f:
        return MultiPoly.zero(f.q)
    width = max(max(len(k) for k in f.raw_terms), max(len(k) for k in g.raw_terms))

    def heap_key(k):
        deg, rev, qe = grevlex_key(k, width)
        return (-deg, tuple(-v for v in rev), -qe)

    g_terms = list(g.raw_terms.items())
    lead_g = g.leading_key()
    c_lead = g.raw_terms[lead_g]
    rem = dict(f.raw_terms)
    heap = [(heap_key(k), k) for k in rem]
    heapq.heapify(heap)
    quotient: dict[Key, int] = {}
    while heap:
        _, k = heapq.heappop(heap)
        c = rem.get(k)
        if c is None:
            continue
        size = max(len(k), len(lead_g))
        m = [a - b for a, b in zip(k + (0,) * (size - len(k)), lead_g + (0,) * (size - len(lead_g)))]
        if min(m, default=0) < 0 or c % c_lead:
            raise NotDivisibleError(f"{g} does not divide {f}")
        m = _strip(m)
        factor = c // c_lead
        quotient[m] = quotient.get(m, 0) + factor
        for kg, cg in g_terms:
            nk = _add_keys(m, kg)
            old = rem.get(nk)
            if old is None:
                rem[nk] = -factor * cg
                heapq.heappush(heap, (heap_key(nk), nk))
            else:
                v = old - factor * cg
                if v:
                    rem[nk] = v
                else:
                    del rem[nk]
    return MultiPoly({k: c for k, c in quotient.items() if c}, f.q)


def substitute(f: MultiPoly, images: Mapping[int, MultiPoly]) -> MultiPoly:
    """Simultaneously replace x_i by images[i]; variables not listed are kept."""
    result = MultiPoly.zero(f.q)
    cache: dict[tuple[int, int], MultiPoly] = {}
    for key, c in f.raw_terms.items():
        term = MultiPoly._make({_strip((key[0],)) if key else (): c}, f.q)
        for i, e in enumerate(key[1:], 1):
            if not e:
                continue
            if (i, e) not in cache:
                img = images.get(i)
                if img is None:
                    img = x(i, f.q)
                elif not isinstance(img, MultiPoly):
                    img = const(int(img), f.q)
                elif img.q != f.q:
                    img = img.with_q() if f.q else img
                cache[(i, e)] = img**e
            term = term * cache[(i, e)]
        result = result + term
    return result


def permute_vars(f: MultiPoly, sigma) -> MultiPoly:
    """Replace x_k by x_{sigma(k)}; ``sigma`` is any callable on positive ints."""

    def move(key: Key) -> Key:
        if len(key) <= 1:
            return key
        out = [0] * len(key)
        out[0] = key[0]
        for k, e in enumerate(key[1:], 1):
            if e:
                t = sigma(k)
                if t >= len(out):
                    out.extend([0] * (t + 1 - len(out)))
                out[t] += e
        return _strip(out)

    return f.map_keys(move)


# rational functions --------------------------------------------------------

def _normalize_factor(p: MultiPoly) -> tuple[int, MultiPoly]:
    """Split p as sign * p' with the leading coefficient of p' positive."""
    lead = p.raw_terms[p.leading_key()]
    return (1, p) if lead > 0 else (-1, -p)


class RationalFn:
    """num / den with the denominator held as a product of factors.

    Keeping the factorization lets sums over many denominators use the least
    common multiple of the factor multisets instead of a blind product.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num: MultiPoly | int, den: MultiPoly | int | Iterable[MultiPoly] = 1):
        if isinstance(num, int):
            num = const(num)
        if isinstance(den, (int, MultiPoly)):
            den = [den]
        factors: dict[MultiPoly, int] = {}
        sign = 1
        for d in den:
            if isinstance(d, int):
                d = const(d, num.q)
            if not d:
                raise ZeroDivisionError("zero denominator")
            if d.q != num.q:
                raise RingMismatchError("numerator and denominator rings differ")
            if d == 1:
                continue
            s, d = _normalize_factor(d)
            sign *= s
            factors[d] = factors.get(d, 0) + 1
        self.num = num if sign == 1 else -num
        self.factors = factors

    @classmethod
    def _from_parts(cls, num: MultiPoly, factors: dict[MultiPoly, int]) -> "RationalFn":
        obj = cls.__new__(cls)
        obj.num = num
        obj.factors = factors
        return obj

    @property
    def q(self) -> bool:
        return self.num.q

    @property
    def den(self) -> MultiPoly:
        return reduce(lambda a, b: a * b, (f**m for f, m in self.factors.items()), MultiPoly.one(self.q))

    def _lift(self, target: dict[MultiPoly, int]) -> MultiPoly:
        mult = MultiPoly.one(self.q)
        for f, m in target.items():
            extra = m - self.factors.get(f, 0)
            if extra:
                mult = mult * f**extra
        return self.num * mult

    def __add__(self, other):
        other = _as_rf(other, self.q)
        if other is None:
            return NotImplemented
        if other.q != self.q:
            raise RingMismatchError("cannot combine rings")
        lcm = dict(self.factors)
        for f, m in other.factors.items():
            lcm[f] = max(lcm.get(f, 0), m)
        return RationalFn._from_parts(self._lift(lcm) + other._lift(lcm), lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._from_parts(-self.num, dict(self.factors))

    def __sub__(self, other):
        other = _as_rf(other, self.q)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other, self.q)
        if other is None:
            return NotImplemented
        factors = dict(self.factors)
        for f, m in other.factors.items():
            factors[f] = factors.get(f, 0) + m
        return RationalFn._from_parts(self.num * other.num, factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other, self.q)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        inv = RationalFn(other.den, [other.num])
        return self * inv

    def __eq__(self, other):
        other = _as_rf(other, self.q)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def reduce(self) -> "RationalFn":
        """Cancel denominator factors that divide the numerator."""
        num = self.num
        factors = {}
        for f, m in self.factors.items():
            keep = m
            while keep and num:
                try:
                    num = exact_divide(num, f)
                except NotDivisibleError:
                    break
                keep -= 1
            if not num:
                keep = 0
            if keep:
                factors[f] = keep
        return RationalFn._from_parts(num, factors)

    def to_poly(self) -> MultiPoly:
        """The numerator divided exactly by the denominator."""
        num = self.num
        for f, m in self.factors.items():
            for _ in range(m):
                num = exact_divide(num, f)
        return num

    def permute_vars(self, sigma) -> "RationalFn":
        return RationalFn(permute_vars(self.num, sigma),
                          [permute_vars(f, sigma) for f, m in self.factors.items() for _ in range(m)])

    def __repr__(self):
        den = " * ".join(f"({f})" + (f"^{m}" if m > 1 else "") for f, m in self.factors.items()) or "1"
        return f"RationalFn(({self.num}) / {den})"


def _as_rf(value, q: bool) -> RationalFn | None:
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, MultiPoly):
        return RationalFn._from_parts(value, {})
    if isinstance(value, int):
        return RationalFn._from_parts(const(value, q), {})
    return None
