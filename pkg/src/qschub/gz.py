"""Gelfand-Zetlin faces, moment images, the nested-forest cube, point location and flags.

A Gelfand-Zetlin pattern for lam = (lam_1 > ... > lam_n) has entries p[i, j]
for 1 <= j <= i <= n.  Row j is (p[j, j], ..., p[n, j]); row 1 is lam, and
p[i, j] >= p[i+1, j+1] >= p[i+1, j].
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from .errors import PreconditionError
from .forest import NestedForest, internal_nodes, leaves
from .ops import Letter, R, T
from .perm import Permutation, interval, uv_of
from .rtword import as_word, specializations, star_matrix, trimming_diagram, validate_rtseq_n

__all__ = [
    "GZPattern",
    "GZFace",
    "gz_face",
    "pattern_from_word",
    "moment_mu",
    "act_on_weights",
    "bruhat_interval_points",
    "CubePolytope",
    "cube_polytope",
    "gz_to_cube",
    "in_permutahedron",
    "hhmp_locate",
    "face_contains",
    "flag_from_star_matrix",
    "hhmp_membership",
    "rank",
]


def _check_lambda(lam: Sequence) -> tuple:
    lam = tuple(Fraction(v) for v in lam)
    if any(a <= b for a, b in zip(lam, lam[1:])):
        raise PreconditionError("lambda must be strictly decreasing")
    return lam


@dataclass(frozen=True)
class GZPattern:
    rows: tuple[tuple[Fraction, ...], ...]  # rows[j-1] is row j

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, pos: tuple[int, int]) -> Fraction:
        i, j = pos
        return self.rows[j - 1][i - j]

    def positions(self) -> Iterator[tuple[int, int]]:
        for j in range(1, self.n + 1):
            for i in range(j, self.n + 1):
                yield (i, j)

    def satisfies_interlacing(self, strict_except: set | None = None) -> bool:
        """GZ inequalities; edges outside ``strict_except`` must be strict when it is given."""
        for (i, j) in self.positions():
            if j == 1:
                continue
            below_left, below_right = (i - 1, j - 1), (i, j - 1)
            for lo_hi, ok in (((below_left, (i, j)), self[below_left] >= self[(i, j)]),
                              ((below_right, (i, j)), self[(i, j)] >= self[below_right])):
                if not ok:
                    return False
                if strict_except is not None and frozenset(lo_hi) not in strict_except:
                    a, b = lo_hi
                    if self[a] == self[b]:
                        return False
        return True

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in reversed(self.rows))


def pattern_from_word(lam: Sequence, word, values: Iterable | None = None) -> GZPattern:
    """The pattern whose rows follow the word: r_i drops the i'th entry, t_i merges
    entries i, i+1 into the next value from ``values``.  The last letter acts on row 1."""
    lam = tuple(Fraction(v) for v in lam)
    word = as_word(word)
    if len(word) != len(lam):
        raise PreconditionError("word length must equal the number of parts of lambda")
    values = iter(values or ())
    rows = [lam]
    for kind, i in reversed(word[1:]):
        row = rows[-1]
        if kind == "r":
            new = row[: i - 1] + row[i:]
        else:
            try:
                val = Fraction(next(values))
            except StopIteration:
                raise PreconditionError("not enough values for the t letters") from None
            new = row[: i - 1] + (val,) + row[i + 1:]
        rows.append(new)
    return GZPattern(tuple(rows))


def moment_mu(pattern: GZPattern) -> tuple[Fraction, ...]:
    """(y_1 - y_2, ..., y_n - y_{n+1}) with y_j the sum of row j."""
    sums = [sum(row, Fraction(0)) for row in pattern.rows] + [Fraction(0)]
    return tuple(sums[j] - sums[j + 1] for j in range(pattern.n))


def act_on_weights(w: Permutation, lam: Sequence) -> tuple:
    """w . lam = (lam_{w^{-1}(1)}, ..., lam_{w^{-1}(n)})."""
    inv = w.inverse()
    return tuple(lam[inv(i) - 1] for i in range(1, len(lam) + 1))


def bruhat_interval_points(u: Permutation, v: Permutation, lam: Sequence) -> set:
    lam = tuple(Fraction(x) for x in lam)
    return {act_on_weights(w, lam) for w in interval(u, v)}


@dataclass(frozen=True)
class GZFace:
    """The face of GZ(lam) cut out by the red edges of the word's trimming diagram."""

    lam: tuple[Fraction, ...]
    word: tuple[Letter, ...]
    red: tuple
    blue: tuple

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def dimension(self) -> int:
        return sum(1 for l in self.word if l.kind == "t")

    def equalities(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        return [tuple(e) for e in self.red]

    def inequalities(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """Pairs (a, b) meaning p[a] >= p[b]: every interlacing inequality of GZ(lam)."""
        out = []
        for j in range(2, self.n + 1):
            for i in range(j, self.n + 1):
                out.append(((i - 1, j - 1), (i, j)))
                out.append(((i, j), (i, j - 1)))
        return out

    def contains(self, p: GZPattern, relative: bool = False) -> bool:
        if p.n != self.n or tuple(p.rows[0]) != self.lam:
            return False
        if any(p[a] != p[b] for a, b in self.red):
            return False
        strict = {frozenset(e) for e in self.red} if relative else None
        return p.satisfies_interlacing(strict)

    def vertices(self) -> list[GZPattern]:
        """Simple vertices: one per way of turning each t_i into r_i or r_{i+1}."""
        out = []
        for w in specializations(self.word):
            if all(l.kind == "r" for l in w):
                out.append(pattern_from_word(self.lam, w))
        return out

    def interior_point(self) -> GZPattern:
        """The vertex average, a point of the relative interior."""
        verts = self.vertices()
        rows = []
        for j in range(self.n):
            rows.append(tuple(sum((v.rows[j][k] for v in verts), Fraction(0)) / len(verts)
                              for k in range(self.n - j)))
        return GZPattern(tuple(rows))


def gz_face(lam: Sequence, word) -> GZFace:
    lam = _check_lambda(lam)
    word = validate_rtseq_n(word, len(lam))
    diagram = trimming_diagram(word)
    return GZFace(lam, word, diagram.red, diagram.blue)


# nested-forest cube --------------------------------------------------------

@dataclass(frozen=True)
class CubePolytope:
    """Points phi on internal nodes with phi(left child) >= phi(node) >= phi(right child).

    Leaves take the fixed values phi(leaf i) = lam_i.
    """

    forest: NestedForest
    lam: tuple[Fraction, ...]
    nodes: tuple  # internal nodes, ordered by (leftmost leaf, depth)

    def value(self, phi: Mapping, node) -> Fraction:
        return self.lam[node - 1] if isinstance(node, int) else phi[node]

    def inequalities(self) -> list[tuple[object, object]]:
        """Pairs (a, b) meaning phi(a) >= phi(b)."""
        out = []
        for v in self.nodes:
            out.append((v[0], v))
            out.append((v, v[1]))
        return out

    def contains(self, phi: Mapping) -> bool:
        return all(self.value(phi, a) >= self.value(phi, b) for a, b in self.inequalities())

    def vertices(self) -> list[dict]:
        """Each node copies its left or its right child's value."""
        out = []
        for choice in _cartesian((0, 1), repeat=len(self.nodes)):
            pick = dict(zip(self.nodes, choice))
            phi: dict = {}

            def val(node):
                if isinstance(node, int):
                    return self.lam[node - 1]
                if node not in phi:
                    phi[node] = val(node[pick[node]])
                return phi[node]

            for v in self.nodes:
                val(v)
            out.append(phi)
        return out


def cube_polytope(F: NestedForest, lam: Sequence) -> CubePolytope:
    lam = _check_lambda(lam)
    if F.support_max() > len(lam):
        raise PreconditionError("forest uses more leaves than lambda has parts")
    nodes = [v for t in F.trees for v in internal_nodes(t)]
    nodes.sort(key=lambda v: (leaves(v)[0], -len(leaves(v))))
    return CubePolytope(F, lam, tuple(nodes))


def gz_to_cube(p: GZPattern, word) -> dict:
    """Read the node values off a pattern of the word's face (the linear bijection)."""
    word = as_word(word)
    n = len(word)
    diagram = trimming_diagram(word)
    cls = {(i, 1): i for i in range(1, n + 1)}
    red_down = {}
    for a, b in diagram.red:
        up, down = (a, b) if a[1] > b[1] else (b, a)
        red_down[up] = down
    blue_down: dict = {}
    for a, b in diagram.blue:
        up, down = (a, b) if a[1] > b[1] else (b, a)
        blue_down.setdefault(up, []).append(down)
    phi = {}
    for j in range(2, n + 1):
        for i in range(j, n + 1):
            pos = (i, j)
            if pos in red_down:
                cls[pos] = cls[red_down[pos]]
            else:
                left, right = sorted(blue_down[pos])
                cls[pos] = (cls[left], cls[right])
                phi[cls[pos]] = p[pos]
    return phi


# point location ------------------------------------------------------------

def in_permutahedron(z: Sequence, lam: Sequence) -> bool:
    """Majorization test: z lies in the convex hull of the permutations of lam."""
    z = sorted((Fraction(v) for v in z), reverse=True)
    lam = sorted((Fraction(v) for v in lam), reverse=True)
    if len(z) != len(lam) or sum(z) != sum(lam):
        return False
    run_z = run_l = Fraction(0)
    for a, b in zip(z, lam):
        run_z += a
        run_l += b
        if run_z > run_l:
            return False
    return True


def hhmp_locate(z: Sequence, lam: Sequence) -> tuple[Letter, ...]:
    """The word whose face of the subdivision has z in its relative interior.

    The first coordinate decides the last letter: z_1 = lam_i gives r_i and
    lam_{i+1} < z_1 < lam_i gives t_i.  The rest recurses on the merged lambda.
    """
    lam = _check_lambda(lam)
    z = tuple(Fraction(v) for v in z)
    if len(z) != len(lam):
        raise PreconditionError("point and lambda have different lengths")
    letters: list[Letter] = []
    cur = list(lam)
    for zj in z:
        if zj in cur:
            i = cur.index(zj) + 1
            letters.append(R(i))
            cur.pop(i - 1)
            continue
        i = next((k for k in range(1, len(cur)) if cur[k] < zj < cur[k - 1]), None)
        if i is None:
            raise PreconditionError(f"{tuple(map(str, z))} is not in the permutahedron")
        merged = cur[i - 1] + cur[i] - zj
        cur[i - 1:i + 1] = [merged]
        letters.append(T(i))
    return tuple(reversed(letters))


def face_contains(z: Sequence, lam: Sequence, word, relative: bool = True) -> bool:
    """Whether z lies in mu(gz_face(lam, word)) (its relative interior by default).

    Row by row, r_i forces z_j to equal the i'th entry and t_i forces the merged
    entry lam_i + lam_{i+1} - z_j between its neighbours.
    """
    word = as_word(word)
    cur = [Fraction(v) for v in lam]
    z = [Fraction(v) for v in z]
    if len(z) != len(cur) or len(word) != len(cur):
        return False
    for zj, (kind, i) in zip(z, reversed(word)):
        if i > len(cur) or (kind == "t" and i + 1 > len(cur)):
            return False
        if kind == "r":
            if zj != cur[i - 1]:
                return False
            cur.pop(i - 1)
        else:
            a, b = cur[i - 1], cur[i]
            merged = a + b - zj
            if relative and not (b < merged < a):
                return False
            if not relative and not (b <= merged <= a):
                return False
            cur[i - 1:i + 1] = [merged]
    return True


# flags ---------------------------------------------------------------------

def _rref_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    r = 0
    for c in range(width):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c] / rows[r][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rank(vectors: Sequence[Sequence]) -> int:
    return _rref_rank(vectors)


Flag = tuple[tuple[Fraction, ...], ...]  # columns; V_k is the span of the first k


def flag_from_star_matrix(M: Sequence[Sequence[str]], values) -> Flag:
    """Fill each '*' from ``values`` (a mapping (row, col) -> number, 0-based, or an
    iterable read row by row) and return the columns as a flag basis."""
    n = len(M)
    it = None if isinstance(values, Mapping) else iter(values)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            if M[r][c] == "1":
                mat[r][c] = Fraction(1)
            elif M[r][c] == "*":
                mat[r][c] = Fraction(values[(r, c)] if it is None else next(it))
    cols = tuple(tuple(mat[r][c] for r in range(n)) for c in range(n))
    if _rref_rank(cols) != n:
        raise PreconditionError("the filled matrix is singular")
    return cols


def hhmp_membership(flag: Sequence[Sequence]) -> bool:
    """Recursive test: some i splits the flag into a smaller member.

    For j < i the space V_j avoids the first coordinate; for j > i it contains
    e_1; dropping the first coordinate leaves a flag one dimension smaller.
    """
    cols = [tuple(Fraction(v) for v in c) for c in flag]
    n = len(cols)
    if n and _rref_rank(cols) != n:
        raise PreconditionError("flag basis is not invertible")
    return _member(cols)


def _member(cols: list) -> bool:
    n = len(cols)
    if n <= 1:
        return True
    e1 = (Fraction(1),) + (Fraction(0),) * (n - 1)
    contains_e1 = [False] + [_rref_rank(cols[:j] + [e1]) == j for j in range(1, n + 1)]
    for i in range(1, n):
        if any(cols[k][0] != 0 for k in range(i - 1)):
            break  # V_j for j < i must avoid e_1; only grows with i
        if not all(contains_e1[j] for j in range(i + 1, n + 1)):
            continue
        proj = [c[1:] for c in cols]
        basis = [proj[k] for k in range(i - 1)]
        for k in range(i, n):
            # W_k is the projection of V_{k+1}
            for cand in proj[: k + 1]:
                if _rref_rank(basis + [cand]) > len(basis):
                    basis.append(cand)
                    break
        if len(basis) == n - 1 and _member(basis):
            return True
    return False
