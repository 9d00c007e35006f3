"""Verification suites with JSON reports.

Each suite returns a ``SuiteReport``.  A check fails only with a concrete
counterexample written in the word grammar; running out of budget yields
``not_verified`` instead.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .homs import (
    BudgetExceeded,
    abelianization_surjective,
    apply_hom,
    classify_hom_to_sym,
    compose_homs,
    enumerate_homs_sym_to_sym,
    enumerate_homs_vtn_to_sym,
    is_homomorphism,
    named,
    nu_checks,
    phi,
    phi_m_on_alpha,
    v_images,
)
from .racg import AmalgamError, kt_presentation, twin_presentation
from .structure import (
    SemidirectElement,
    X_set,
    alpha_word,
    ball_vtn,
    conjugate_by_rho,
    context,
    decompose,
    element,
    kt_relators,
    kword_to_vword,
    multiply,
    invert,
    recompose,
    relators,
    rho_element,
)
from .words import (
    AlphaLetter,
    KWord,
    Permutation,
    VWord,
    alpha_conjugate,
    format_word,
    rho,
)

PASS, FAIL, NOT_VERIFIED = "pass", "fail", "not_verified"


@dataclass
class Check:
    name: str
    verdict: str
    counterexample: str | None = None
    failure_count: int = 0
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict, "failure_count": self.failure_count}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    duration_ms: int = 0

    @property
    def verdict(self) -> str:
        vs = {c.verdict for c in self.checks}
        if FAIL in vs:
            return FAIL
        if NOT_VERIFIED in vs:
            return NOT_VERIFIED
        return PASS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
            "duration_ms": self.duration_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def file_name(self) -> str:
        return f"{self.suite}-{self.params.get('n', 'x')}-{self.params.get('radius', 'x')}.json"

    def write(self, path: str | Path) -> Path:
        p = Path(path)
        if p.is_dir():
            p = p / self.file_name()
        p.write_text(self.to_json())
        return p


class _Collector:
    """Accumulates failures for one check, keeping the canonically least witness."""

    def __init__(self, name: str):
        self.name = name
        self.failures: list[str] = []

    def fail(self, witness: str) -> None:
        self.failures.append(witness)

    def result(self, detail: str | None = None) -> Check:
        if not self.failures:
            return Check(self.name, PASS, detail=detail)
        first = min(self.failures, key=lambda w: (len(w), w))
        return Check(self.name, FAIL, first, len(self.failures), detail)


def _timed(suite: str, params: dict, body: Callable[[SuiteReport], None]) -> SuiteReport:
    rep = SuiteReport(suite, params)
    t0 = time.perf_counter()
    body(rep)
    rep.duration_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def _kw(codes: Sequence[int], n: int) -> str:
    lt = kt_presentation(n).letters
    return format_word(lt[c] for c in codes)


# -- condition (C) --------------------------------------------------------

# theta-images of the five rho-words that conjugate the factors, in order
_C_WORDS = ((2,), (2, 1), (2, 1, 2), (1, 2), (1,))


def _perm_of(idx: Sequence[int], n: int) -> Permutation:
    p = Permutation.identity(n)
    for i in idx:
        p = p * Permutation.transposition(n, i)
    return p


def condition_C_product(alpha, n: int):
    """The six-factor product of condition (C), as a KT_n normal form."""
    if n < 3:
        raise ValueError("condition (C) needs n >= 3")
    ctx = context(n)
    kt = ctx.kt
    a = list(kt.normalize(alpha).codes)
    ainv = a[::-1]
    codes = list(a)
    for step, idx in enumerate(_C_WORDS):
        m = ctx.code_map(_perm_of(idx, n))
        src = ainv if step % 2 == 0 else a
        codes.extend(m[c] for c in src)
    return kt.wrap(kt.normalize_codes(codes))


def check_condition_C(alpha, n: int) -> bool:
    return condition_C_product(alpha, n).is_identity()


def condition_C_equiv(alpha, n: int) -> bool:
    """(alpha rho_2 alpha^-1 rho_1)^3 == 1 in VT_n."""
    if n < 3:
        raise ValueError("condition (C) needs n >= 3")
    a = element(alpha, n=n)
    x = multiply(multiply(multiply(a, rho_element(n, 2)), invert(a)), rho_element(n, 1))
    return multiply(multiply(x, x), x).is_identity()


# -- twisted conjugacy ----------------------------------------------------


class PreconditionError(ValueError):
    pass


def solve_twisted_conjugacy(alpha, k: int, X: Iterable[AlphaLetter], n: int | None = None,
                            budget: int = 10**5) -> tuple[KWord, KWord]:
    """Find alpha', beta with alpha = alpha' beta rho_k alpha'^-1 rho_k and beta^2 = 1.

    beta lies in K[X meet X_k].  Greedy descent peeling, then a bounded search.
    """
    n = n or alpha.n
    ctx = context(n)
    kt = ctx.kt
    Xs = frozenset(X)
    tk = Permutation.transposition(n, k)
    cm = ctx.code_map(tk)
    xmask = kt.mask(Xs)
    if any(not (xmask >> cm[c]) & 1 for c in range(kt.rank) if (xmask >> c) & 1):
        raise PreconditionError(f"X is not invariant under tau_{k}")
    a = list(kt.normalize(alpha).codes)
    if any(not (xmask >> c) & 1 for c in a):
        raise PreconditionError("alpha does not lie in K[X]")
    if kt.normalize_codes(cm[c] for c in a) != kt.normalize_codes(a[::-1]):
        raise PreconditionError(f"tau_{k} does not invert alpha")
    bmask = xmask & kt.mask(X_set(n, k))

    def good_beta(codes: Sequence[int]) -> bool:
        if any(not (bmask >> c) & 1 for c in codes):
            return False
        return not codes or kt.is_involution(kt.wrap(codes))

    prefix: list[int] = []
    cur = a
    while not good_beta(cur):
        for x in sorted(set(cur)):
            nxt = kt.normalize_codes([x] + cur + [cm[x]])
            if len(nxt) == len(cur) - 2:
                prefix.append(x)
                cur = list(nxt)
                break
        else:
            break
    if good_beta(cur):
        ap = kt.normalize_codes(prefix)
        return KWord(kt.wrap(ap).letters, n), KWord(kt.wrap(tuple(cur)).letters, n)
    # bounded search: alpha' over growing balls of K[X]
    tried = 0
    letters = [kt.letters[c] for c in range(kt.rank) if (xmask >> c) & 1]
    for r in range(1, len(a) + 1):
        for w in kt.ball_codes(letters, r):
            if len(w) != r:
                continue
            tried += 1
            if tried > budget:
                raise BudgetExceeded(f"twisted conjugacy search exceeded {budget} candidates")
            beta = kt.normalize_codes(list(w[::-1]) + a + [cm[c] for c in w])
            if good_beta(beta):
                return KWord(kt.wrap(w).letters, n), KWord(kt.wrap(beta).letters, n)
    raise BudgetExceeded("no witness found within the search radius")


def twisted_replay(alpha, alpha_p: KWord, beta: KWord, k: int, n: int) -> bool:
    """decompose(alpha' beta rho_k alpha'^-1 rho_k) == decompose(alpha)."""
    w = kword_to_vword(alpha_p, n) * kword_to_vword(beta, n) * VWord((rho(k),), n)
    w = w * kword_to_vword(alpha_p.inverse(), n) * VWord((rho(k),), n)
    return decompose(w) == decompose(kword_to_vword(alpha, n))


# -- test family of parabolic sets ---------------------------------------


def fixed_point_family(n: int) -> list[tuple[str, frozenset[AlphaLetter]]]:
    """S, each X_k, the U/V chains of the condition (C) argument, the rho_1 chain, W11, W12."""
    S = frozenset(kt_presentation(n).letters)
    fam: list[tuple[str, frozenset]] = [("S", S)]
    fam += [(f"X{k}", X_set(n, k)) for k in range(1, n)]
    low = {1, 2, 3}
    U = S
    for k in range(4, n + 1):
        U = frozenset(a for a in S if not (a.i in low and 4 <= a.j <= k))
        fam.append((f"U{k}", U))
    Un = U
    for k in range(4, n + 1):
        fam.append((f"V{k}", frozenset(a for a in Un if not (4 <= a.i <= k and a.j in low))))
    for k in range(2, n + 1):
        fam.append((f"P{k}", frozenset(a for a in S if not (a.i in (1, 2) and a.j <= k))))
    if n >= 3:
        fam.append(("W11", frozenset({AlphaLetter(1, 2), AlphaLetter(2, 3), AlphaLetter(3, 1)})))
        fam.append(("W12", frozenset({AlphaLetter(2, 1), AlphaLetter(3, 2), AlphaLetter(1, 3)})))
    return fam


# -- conjugation case table ----------------------------------------------


def action_table_expected(i: int, j: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Images of (alpha_{i,j}, alpha_{j,i}) under rho_k-conjugation, i < j, by case."""
    if j == i + 1:
        if k <= i - 2 or k >= i + 2:
            return (i, j), (j, i)
        if k == i - 1:
            return (i - 1, i + 1), (i + 1, i - 1)
        if k == i:
            return (i + 1, i), (i, i + 1)
        return (i, i + 2), (i + 2, i)  # k == i + 1
    if k <= i - 2 or k >= j + 1 or i + 1 <= k <= j - 2:
        return (i, j), (j, i)
    if k == i - 1:
        return (i - 1, j), (j, i - 1)
    if k == i:
        return (i + 1, j), (j, i + 1)
    if k == j - 1:
        return (i, j - 1), (j - 1, i)
    return (i, j + 1), (j + 1, i)  # k == j


def suite_action_table(n: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        by_action = _Collector("action_matches_cases")
        by_words = _Collector("rewriting_matches_cases")
        for i, j in itertools.combinations(range(1, n + 1), 2):
            for k in range(1, n):
                tk = Permutation.transposition(n, k)
                for a, exp in zip((AlphaLetter(i, j), AlphaLetter(j, i)), action_table_expected(i, j, k)):
                    want = AlphaLetter(*exp)
                    if alpha_conjugate(tk, a) != want:
                        by_action.fail(f"r{k} {a} r{k}")
                    w = VWord((rho(k),) + alpha_word(a) + (rho(k),), n)
                    e = decompose(w)
                    if not (e.sigma.is_identity() and e.k.letters == (want,)):
                        by_words.fail(f"r{k} {a} r{k}")
        rep.checks += [by_action.result(), by_words.result()]

    return _timed("action-table", {"n": n}, body)


# -- suites ---------------------------------------------------------------


def suite_presentation(n: int, radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        c = _Collector("vt_relators_trivial")
        for label, w in relators(n):
            if not decompose(w).is_identity():
                c.fail(str(w))
        rep.checks.append(c.result(f"{len(relators(n))} relators"))
        kt = kt_presentation(n)
        c = _Collector("kt_relators_trivial")
        for label, w in kt_relators(n):
            if not kt.normalize(w.letters).is_identity():
                c.fail(str(w))
        rep.checks.append(c.result())
        c = _Collector("letters_have_defining_words")
        for a in kt.letters:
            e = decompose(VWord(alpha_word(a), n))
            if not (e.sigma.is_identity() and e.k.letters == (a,)):
                c.fail(str(a))
        rep.checks.append(c.result())
        c = _Collector("rank")
        if kt.rank != n * (n - 1):
            c.fail(f"rank {kt.rank}")
        rep.checks.append(c.result())
        c = _Collector("irreducible")
        if not kt.is_irreducible():
            c.fail(f"KT{n}")
        rep.checks.append(c.result())
        c = _Collector("recompose_roundtrip")
        for e in ball_vtn(n, radius):
            if decompose(recompose(e)) != e:
                c.fail(str(recompose(e)))
        rep.checks.append(c.result())

    return _timed("presentation", {"n": n, "radius": radius}, body)


def suite_fixed_points(n: int, radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        ctx = context(n)
        kt = ctx.kt
        maps = [ctx.code_map(Permutation.transposition(n, k)) for k in range(1, n)]
        xks = [kt.mask(X_set(n, k)) for k in range(1, n)]
        total = 0
        for name, X in fixed_point_family(n):
            c = _Collector(f"fixed_iff_support:{name}")
            xm = kt.mask(X)
            for w in kt.ball_codes(X, radius):
                sup = 0
                for x in w:
                    sup |= 1 << x
                for k in range(n - 1):
                    total += 1
                    m = maps[k]
                    fixed = kt.normalize_codes(m[x] for x in w) == w
                    if fixed != (sup & ~(xm & xks[k]) == 0):
                        c.fail(f"{_kw(w, n)} @ k={k + 1}")
            rep.checks.append(c.result())
        rep.params["cases"] = total

    return _timed("fixed-points", {"n": n, "radius": radius}, body)


def suite_centralizer(n: int, radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        c = _Collector("no_nontrivial_centralizer")
        count = 0
        for e in ball_vtn(n, radius):
            if e.is_identity():
                continue
            count += 1
            if all(conjugate_by_rho(e, k) == e for k in range(1, n)):
                c.fail(str(recompose(e)))
        rep.checks.append(c.result(f"{count} elements"))
        c = _Collector("trivial_center_kt")
        kt = context(n).kt
        nc = kt.noncommute
        for w in kt.ball_codes(None, min(radius, 4)):
            if w and all(kt.normalize_codes(w + (x,)) == kt.normalize_codes((x,) + w) for x in range(kt.rank)):
                c.fail(_kw(w, n))
        rep.checks.append(c.result())

    return _timed("centralizer", {"n": n, "radius": radius}, body)


def suite_kt6_H(radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        ctx = context(6)
        kt = ctx.kt
        vs = v_images()
        maps = [ctx.code_map(vs[i - 1]) for i in (3, 4, 5)]
        c = _Collector("H_fixes_only_identity")
        count = 0
        for w in kt.ball_codes(None, radius):
            if not w:
                continue
            count += 1
            if all(kt.normalize_codes(m[x] for x in w) == w for m in maps):
                c.fail(_kw(w, 6))
        rep.checks.append(c.result(f"{count} elements"))

    return _timed("kt6-h", {"n": 6, "radius": radius}, body)


def phi_letter_images(n: int, m: int) -> dict[int, tuple[int, ...]]:
    """phi_m on each KT_n letter code, through the VT_n words."""
    hom = phi(n, m)
    kt = kt_presentation(n)
    out = {}
    for a in kt.letters:
        e = apply_hom(hom, VWord(alpha_word(a), n))
        if not e.sigma.is_identity():
            raise ValueError(f"phi_{m} does not preserve KT_{n}")
        out[kt.code[a]] = e.k.codes
    return out


def suite_phi_m(n: int, m_list: Sequence[int], radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        kt = kt_presentation(n)
        zeta = named(n, "zeta")
        target = kt.code[AlphaLetter(1, 2)]
        ball = kt.ball_codes(None, radius)
        for m in m_list:
            hom = phi(n, m)
            ok = is_homomorphism(hom)
            rep.checks.append(Check(f"phi{m}:homomorphism", PASS if ok else FAIL, None if ok else ok.failing, 0 if ok else 1))
            c = _Collector(f"phi{m}:minus_is_zeta_phi")
            lhs, rhs = phi(n, -m), compose_homs(zeta, hom)
            for name, x, y in zip(hom.source.generator_names(), lhs.element_images(), rhs.element_images()):
                if x != y:
                    c.fail(name)
            rep.checks.append(c.result())
            if m % 2 == 0:
                ok = not abelianization_surjective(hom)
                rep.checks.append(Check(f"phi{m}:abelianization_not_surjective", PASS if ok else FAIL,
                                        None if ok else "s1", 0 if ok else 1))
                continue
            imgs = phi_letter_images(n, m)
            c = _Collector(f"phi{m}:closed_form")
            for a in kt.letters:
                if phi_m_on_alpha(m, a, n).letters != kt.wrap(imgs[kt.code[a]]).letters:
                    c.fail(str(a))
            rep.checks.append(c.result())
            c_len = _Collector(f"phi{m}:length_scales")
            c_hit = _Collector(f"phi{m}:a1,2_unreached")
            for w in ball:
                img = kt.normalize_codes(x for c in w for x in imgs[c])
                if len(img) != abs(m) * len(w):
                    c_len.fail(_kw(w, n))
                if abs(m) >= 3 and img == (target,):
                    c_hit.fail(_kw(w, n))
            rep.checks.append(c_len.result())
            if abs(m) >= 3:
                rep.checks.append(c_hit.result())

    return _timed("phi-m", {"n": n, "radius": radius, "m": list(m_list)}, body)


def suite_hom_classification(n: int, m: int, budget: int = 10**8, jobs: int = 1) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        strict = n >= 5 and n >= m
        for kind, enum, allowed in (
            ("sym", enumerate_homs_sym_to_sym, {"abelian", "conj_id", "conj_nu"}),
            ("vtn", enumerate_homs_vtn_to_sym, {"abelian", "conj_pi", "conj_theta", "conj_nu_pi", "conj_nu_theta"}),
        ):
            try:
                homs = enum(n, m, budget=budget, jobs=jobs)
            except BudgetExceeded as exc:
                rep.checks.append(Check(f"{kind}:classified", NOT_VERIFIED, detail=str(exc)))
                continue
            c = _Collector(f"{kind}:classified")
            counts: dict[str, int] = {}
            for h in homs:
                label = classify_hom_to_sym(h)
                counts[label] = counts.get(label, 0) + 1
                if strict and label not in allowed:
                    c.fail(h.serialize().replace("\n", "; ").strip("; "))
            detail = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
            rep.checks.append(c.result(f"{len(homs)} homs: {detail}"))

    return _timed("hom-classification", {"n": n, "m": m, "radius": 0}, body)


def serre_configurations(n: int) -> list[tuple[str, list[frozenset], frozenset]]:
    """Amalgam splittings (factors, amalgamated set) used by the condition (C) argument."""
    S = frozenset(kt_presentation(n).letters)
    out = []
    if n >= 3:
        W11 = frozenset({AlphaLetter(1, 2), AlphaLetter(2, 3), AlphaLetter(3, 1)})
        W12 = frozenset({AlphaLetter(2, 1), AlphaLetter(3, 2), AlphaLetter(1, 3)})
        out.append(("W11*W12", [W11, W12], frozenset()))
    if n >= 4:
        k = n
        U = frozenset(a for a in S if not (a.i <= 3 and 4 <= a.j <= k))
        out.append((f"U{k}", [U | {AlphaLetter(j, k)} for j in (1, 2, 3)], U))
    for k in range(3, n + 1):
        P = frozenset(a for a in S if not (a.i in (1, 2) and a.j <= k))
        extra = [AlphaLetter(1, k), AlphaLetter(2, k)]
        out.append((f"P{k}", [P | {x} for x in extra], P))
    return out


def suite_serre(n: int, radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        kt = kt_presentation(n)
        for name, factors, H in serre_configurations(n):
            union = frozenset().union(*factors)
            c = _Collector(f"factorization:{name}")
            for w in kt.ball_codes(union, radius):
                try:
                    syl, tail = kt.amalgam_factorize(kt.wrap(w), factors, H)
                except AmalgamError as exc:
                    c.fail(f"{_kw(w, n)} ({exc})")
                    continue
                prod = [x for _, t in syl for x in t.codes] + list(tail.codes)
                bad = kt.normalize_codes(prod) != w
                bad |= any(a == b for (a, _), (b, _) in zip(syl, syl[1:]))
                bad |= not kt.parabolic_member(tail, H)
                for a, t in syl:
                    rep_t, h = kt.coset_decompose(t, H)
                    bad |= t.is_identity() or not h.is_identity() or not kt.parabolic_member(t, factors[a - 1])
                if bad:
                    c.fail(_kw(w, n))
            rep.checks.append(c.result())

    return _timed("serre", {"n": n, "radius": radius}, body)


def suite_condition_c(n: int, radius: int, samples: int = 0, seed: int = 0, max_len: int = 8) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        kt = kt_presentation(n)
        c = _Collector("C_matches_cubed_form")
        held = 0
        for w in kt.ball_codes(None, radius):
            nf = kt.wrap(w)
            a, b = check_condition_C(nf, n), condition_C_equiv(nf, n)
            held += a
            if a != b:
                c.fail(_kw(w, n))
        rng = random.Random(seed)
        for _ in range(samples):
            w = [rng.randrange(kt.rank) for _ in range(rng.randint(0, max_len))]
            nf = kt.wrap(kt.normalize_codes(w))
            if check_condition_C(nf, n) != condition_C_equiv(nf, n):
                c.fail(_kw(w, n))
        rep.checks.append(c.result(f"{held} ball elements satisfy (C)"))
        c = _Collector("split_products_satisfy_C")
        X1, X2 = X_set(n, 1), X_set(n, 2)
        left = kt.ball_codes(X1, 2)
        right = kt.ball_codes(X2, 2)
        for x in left:
            for y in right:
                if not check_condition_C(kt.wrap(kt.normalize_codes(x + y)), n):
                    c.fail(_kw(x + y, n))
        rep.checks.append(c.result(f"{len(left) * len(right)} products"))

    return _timed("condition-c", {"n": n, "radius": radius, "samples": samples, "seed": seed}, body)


def suite_nu() -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        for name, ok in nu_checks().items():
            rep.checks.append(Check(f"nu:{name}", PASS if ok else FAIL, None if ok else "t1 t1", 0 if ok else 1))
        for name in ("lambda_nu", "lambda_nu_pi", "lambda_nu_theta", "nu_pi", "nu_theta"):
            ok = is_homomorphism(named(6, name))
            rep.checks.append(Check(f"{name}:homomorphism", PASS if ok else FAIL, ok.failing, 0 if ok else 1))

    return _timed("nu", {"n": 6, "radius": 0}, body)


def suite_twin_embedding(n: int, radius: int) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        tw, kt = twin_presentation(n), kt_presentation(n)
        c = _Collector("injective_on_normal_forms")
        seen: dict[tuple, tuple] = {}
        ball = tw.ball_codes(None, radius)
        for w in ball:
            img = kt.normalize(AlphaLetter(tw.letters[x].index, tw.letters[x].index + 1) for x in w).codes
            if len(img) != len(w):
                c.fail(format_word(tw.letters[x] for x in w))
            if img in seen:
                c.fail(format_word(tw.letters[x] for x in w))
            seen[img] = w
        rep.checks.append(c.result(f"{len(ball)} twin elements"))

    return _timed("twin-embedding", {"n": n, "radius": radius}, body)


def suite_twisted_conjugacy(n: int, radius: int, k: int = 1) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        kt = kt_presentation(n)
        ctx = context(n)
        cm = ctx.code_map(Permutation.transposition(n, k))
        c = _Collector("solutions_replay")
        skipped = 0
        solved = 0
        for w in kt.ball_codes(None, radius):
            if kt.normalize_codes(cm[x] for x in w) != kt.normalize_codes(w[::-1]):
                continue
            nf = kt.wrap(w)
            try:
                ap, beta = solve_twisted_conjugacy(nf, k, kt.letters, n)
            except BudgetExceeded:
                skipped += 1
                continue
            solved += 1
            if not twisted_replay(KWord(nf.letters, n), ap, beta, k, n):
                c.fail(_kw(w, n))
        res = c.result(f"{solved} solved, {skipped} unresolved")
        if skipped and res.verdict == PASS:
            res.verdict = NOT_VERIFIED
        rep.checks.append(res)

    return _timed("twisted-conjugacy", {"n": n, "radius": radius, "k": k}, body)


SUITES = {
    "presentation": lambda n, r, **kw: suite_presentation(n, r),
    "fixed-points": lambda n, r, **kw: suite_fixed_points(n, r),
    "centralizer": lambda n, r, **kw: suite_centralizer(n, r),
    "kt6-h": lambda n, r, **kw: suite_kt6_H(r),
    "phi-m": lambda n, r, **kw: suite_phi_m(n, kw.get("m_list") or [-3, -1, 1, 2, 3, 5], r),
    "hom-classification": lambda n, r, **kw: suite_hom_classification(n, kw.get("m") or n, kw.get("budget", 10**8), kw.get("jobs", 1)),
    "serre": lambda n, r, **kw: suite_serre(n, r),
    "condition-c": lambda n, r, **kw: suite_condition_c(n, r, kw.get("samples", 0), kw.get("seed", 0)),
    "nu": lambda n, r, **kw: suite_nu(),
    "twin-embedding": lambda n, r, **kw: suite_twin_embedding(n, r),
    "action-table": lambda n, r, **kw: suite_action_table(n),
    "twisted-conjugacy": lambda n, r, **kw: suite_twisted_conjugacy(n, r, kw.get("k", 1)),
}


def run_suite(name: str, n: int, radius: int, **kw) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(n, radius, **kw)
