"""Brute-force verification suites behind ``qschub verify``.

Each suite is pure given its config and returns a SuiteResult; failures carry
a printable counterexample.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from fractions import Fraction

from .bases import (
    forest_poly,
    gessel_coeffs,
    hall_inner_ribbon,
    pieri_r,
    pieri_t,
    positivity_witness,
    ribbon_of,
    schubert,
    schubert_expand,
    schur_poly,
)
from .divsym import ds_direct, ds_factorized, ds_plain, qds_direct, qds_factorized
from .forest import enumerate_nsuppfor, enumerate_suppfor
from .gz import (
    bruhat_interval_points,
    face_contains,
    flag_from_star_matrix,
    gz_face,
    hhmp_locate,
    hhmp_membership,
    moment_mu,
)
from .ops import (
    T,
    apply_code,
    apply_word,
    divided_difference,
    r_op,
    s_op,
    t_op,
    t_op_via_quotient,
)
from .perm import symmetric_group, uv_of
from .poly import MultiPoly, monomial
from .rtword import box_contains, box_of, enumerate_rtseq, star_matrix, trim_set

__all__ = ["VerifyConfig", "SuiteResult", "SUITES", "run_suite", "run_all", "random_poly", "monomials"]


@dataclass(frozen=True)
class VerifyConfig:
    max_n: int = 4
    seed: int = 7
    samples: int = 500
    max_vars: int = 6
    max_degree: int = 5
    points: int = 10_000


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, message: Callable[[], str] | str):
        self.checks += 1
        if not cond and len(self.failures) < 5:
            self.failures.append(message() if callable(message) else message)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.name}: {status} ({self.checks} checks)"]
        lines += [f"  counterexample: {f}" for f in self.failures]
        return "\n".join(lines)


def random_poly(rng: random.Random, nvars: int, degree: int, terms: int = 6) -> MultiPoly:
    f = MultiPoly.zero()
    for _ in range(terms):
        d = rng.randint(0, degree)
        code = [0] * nvars
        for _ in range(d):
            code[rng.randrange(nvars)] += 1
        f = f + monomial(tuple(code), rng.randint(-5, 5))
    return f


def monomials(nvars: int, max_degree: int) -> list[MultiPoly]:
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            code = [0] * nvars
            for k in combo:
                code[k] += 1
            out.append(monomial(tuple(code)))
    return out


# suites --------------------------------------------------------------------

def suite_relations(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("relations")
    rng = random.Random(cfg.seed)
    T, R, D = t_op, r_op, divided_difference
    hi = cfg.max_vars - 1
    for _ in range(cfg.samples):
        f = random_poly(rng, rng.randint(1, cfg.max_vars), cfg.max_degree)
        i = rng.randint(2, hi)
        j = rng.randint(1, i - 1)
        k = rng.randint(1, hi)

        def show(rel, f=f, i=i, j=j, k=k):
            return f"{rel} fails for i={i} j={j} k={k} on f={f}"

        res.expect(T(i, T(j, f)) == T(j, T(i + 1, f)), lambda: show("T_i T_j = T_j T_{i+1}"))
        res.expect(T(i, R(j, f)) == R(j, T(i + 1, f)), lambda: show("T_i R_j = R_j T_{i+1}"))
        res.expect(T(j, R(j, f)) == R(j, T(j + 1, f)), lambda: show("T_j R_j = R_j T_{j+1}"))
        res.expect(R(i, T(j, f)) == T(j, R(i + 1, f)), lambda: show("R_i T_j = T_j R_{i+1}"))
        res.expect(R(i, R(j, f)) == R(j, R(i + 1, f)), lambda: show("R_i R_j = R_j R_{i+1}"))
        res.expect(R(j, R(j, f)) == R(j, R(j + 1, f)), lambda: show("R_j R_j = R_j R_{j+1}"))
        res.expect(T(k, R(k + 1, f)) == R(k, T(k + 1, f)) + R(k + 1, T(k, f)),
                   lambda: show("T_k R_{k+1} = R_k T_{k+1} + R_{k+1} T_k"))
        tk = T(k, f)
        res.expect(tk == R(k, D(k, f)) == R(k + 1, D(k, f)) == t_op_via_quotient(k, f),
                   lambda: show("T_k = R_k d_k = R_{k+1} d_k = (R_{k+1} - R_k)/x_k"))
        res.expect(not D(k, D(k, f)), lambda: show("d_k^2 = 0"))
        res.expect(D(k, D(k + 1, D(k, f))) == D(k + 1, D(k, D(k + 1, f))), lambda: show("braid"))
        if i >= j + 2:
            res.expect(D(i, D(j, f)) == D(j, D(i, f)), lambda: show("distant commutation"))
        g = random_poly(rng, 3, 2, 3)
        res.expect(D(k, f * g) == f * D(k, g) + D(k, f) * s_op(k, g), lambda: show("twisted Leibniz"))
    return res


def suite_duality(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("duality")
    for n in range(1, cfg.max_n + 1):
        forests = enumerate_suppfor(n)
        polys = {G: forest_poly(G) for G in forests}
        for F in forests:
            for G in forests:
                val = apply_code(F.code, polys[G]).ct()
                res.expect(val == (1 if F == G else 0), lambda F=F, G=G, v=val: f"ct T_{F} P_{G} = {v}")
    return res


def suite_trim(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("trim")
    for n in range(1, cfg.max_n + 1):
        monos = monomials(n, 4)
        for F in enumerate_nsuppfor(n):
            words = trim_set(F, n)
            if len(words) < 2:
                continue
            base = [apply_word(words[0], m) for m in monos]
            for w in words[1:]:
                for m, b in zip(monos, base):
                    res.expect(apply_word(w, m) == b,
                               lambda w=w, m=m: f"{F}: {words[0]} and {w} disagree on {m}")
    return res


def _schubert_terms(f: MultiPoly) -> dict:
    return dict(schubert_expand(f).terms) if f else {}


def suite_pieri(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("pieri")
    n = max(cfg.max_n, 2)
    for w in symmetric_group(n):
        S = schubert(w)
        for i in range(1, n + 1):
            got = _schubert_terms(r_op(i, S))
            res.expect(got == pieri_r(i, w), lambda w=w, i=i, g=got: f"R_{i} S_{w}: operator {g} vs chains {pieri_r(i, w)}")
            got = _schubert_terms(t_op(i, S))
            res.expect(got == pieri_t(i, w), lambda w=w, i=i, g=got: f"T_{i} S_{w}: operator {g} vs chains {pieri_t(i, w)}")
    return res


def suite_ds(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("ds")
    top = min(cfg.max_n, 4)
    for n in range(1, top + 1):
        for m in monomials(n, n + 1):
            a = ds_direct(m, n)
            res.expect(a == ds_factorized(m, n), lambda m=m, n=n: f"direct vs factorized differ on {m}, n={n}")
            if m.degree() <= n - 1:
                res.expect(a == ds_plain(m, n), lambda m=m, n=n: f"direct vs plain differ on {m}, n={n}")
            if m.degree() == n - 1:
                qa = qds_direct(m, n)
                res.expect(qa == qds_factorized(m, n), lambda m=m, n=n: f"q-forms differ on {m}, n={n}")
                res.expect(qa.eval_q(1) == a, lambda m=m, n=n: f"q=1 specialisation differs on {m}, n={n}")
    for n in range(1, max(cfg.max_n, 5) + 1):
        for w in symmetric_group(n):
            if w.length() != n - 1:
                continue
            val = ds_factorized(schubert(w), n)
            res.expect(val.ct() > 0 and val == val.ct(), lambda w=w, v=val: f"<S_{w}>_{n} = {v}")
            seq, _ = positivity_witness(w, n)
            direct = apply_word(tuple(T(i) for i in seq), schubert(w)).ct()
            res.expect(direct > 0, lambda w=w, s=seq: f"witness {s} for {w} gives {direct}")
    return res


def _partitions(m: int, most: int | None = None):
    most = m if most is None else most
    if m == 0:
        yield ()
        return
    for first in range(min(m, most), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def suite_gessel(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("gessel")
    n = 4
    for size in range(1, 6):
        for lam in _partitions(size):
            if len(lam) > n:
                continue
            f = schur_poly(lam, n)
            coeffs = gessel_coeffs(f, n)
            for (k, parts), c in coeffs.items():
                if not parts:
                    continue
                h = hall_inner_ribbon(f, ribbon_of(parts), n)
                res.expect(h == c, lambda lam=lam, parts=parts, c=c, h=h: f"s_{lam}: F_{parts} coefficient {c} vs {h}")
            res.checks += 1  # reassembly is checked inside gessel_coeffs
    return res


def suite_gz(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("gz")
    rng = random.Random(cfg.seed)
    top = min(cfg.max_n, 4)
    for n in range(1, top + 1):
        lam = tuple(range(n, 0, -1))
        for w in enumerate_rtseq(n):
            F = gz_face(lam, w)
            pts = {moment_mu(v) for v in F.vertices()}
            u, v = uv_of(w)
            res.expect(pts == bruhat_interval_points(u, v, lam), lambda w=w: f"vertex images of {w} differ from [u, v]")
            M = star_matrix(w)
            flag = flag_from_star_matrix(M, (rng.randint(-9, 9) or 1 for _ in range(n * n)))
            res.expect(hhmp_membership(flag), lambda w=w: f"flag from M({w}) fails membership")
    for _ in range(cfg.points):
        n = rng.randint(1, top)
        lam = tuple(range(n, 0, -1))
        weights = [rng.randint(0, 4) for _ in range(n + 1)]
        if not any(weights):
            weights[0] = 1
        perms = [rng.sample(lam, n) for _ in range(n + 1)]
        total = sum(weights)
        z = tuple(sum(Fraction(c) * p[k] for c, p in zip(weights, perms)) / total for k in range(n))
        w = hhmp_locate(z, lam)
        res.expect(face_contains(z, lam, w), lambda z=z, w=w: f"{z} not in the relative interior of {w}")
        # closed faces containing z are exactly the boxes containing its own box
        other = rng.choice(list(enumerate_rtseq(n)))
        res.expect(face_contains(z, lam, other, relative=False) == box_contains(box_of(other), box_of(w)),
                   lambda z=z, w=w, o=other: f"closed face {o} vs box containment at {z} (located {w})")
    return res


SUITES: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "relations": suite_relations,
    "duality": suite_duality,
    "trim": suite_trim,
    "pieri": suite_pieri,
    "ds": suite_ds,
    "gessel": suite_gessel,
    "gz": suite_gz,
}


def run_suite(name: str, cfg: VerifyConfig) -> SuiteResult:
    return SUITES[name](cfg)


def run_all(cfg: VerifyConfig) -> list[SuiteResult]:
    return [SUITES[name](cfg) for name in sorted(SUITES)]
