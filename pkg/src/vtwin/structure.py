"""VT_n as the semidirect product KT_n x| S_n.

Every element of VT_n is written uniquely as ``k . lambda(sigma)`` with ``k``
in KT_n and ``sigma`` in S_n.  Reading a word left to right while tracking the
permutation prefix ``sigma`` turns each ``s_i`` into the kernel letter
``alpha_{sigma(i), sigma(i+1)}``; the ``rho`` letters only move ``sigma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .racg import NormalForm, RacgPresentation, kt_presentation, twin_presentation
from .words import (
    AlphaLetter,
    DegreeMismatch,
    GeneratorLetter,
    Kind,
    KWord,
    Permutation,
    VWord,
    format_word,
    reduced_tau_word,
    rho,
    s,
    tokenize,
)


@dataclass(frozen=True)
class SemidirectElement:
    """The pair (k, sigma) standing for k . lambda(sigma)."""

    k: NormalForm
    sigma: Permutation

    @property
    def n(self) -> int:
        return self.sigma.degree

    def is_identity(self) -> bool:
        return not self.k.codes and self.sigma.is_identity()

    def kword(self) -> KWord:
        return KWord(self.k.letters, self.n)

    def __str__(self) -> str:
        return f"k = {self.k} ; sigma = {self.sigma.one_line()}"


class VtnContext:
    """Per-n tables: the KT_n and T_n presentations and relabelling maps."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.n = n
        self.kt: RacgPresentation = kt_presentation(n)
        self.twin: RacgPresentation = twin_presentation(n)
        code = self.kt.code
        self.alpha_code = [[-1] * (n + 1) for _ in range(n + 1)]
        for a, c in code.items():
            self.alpha_code[a.i][a.j] = c
        self.identity_perm = Permutation.identity(n)
        self._maps: dict[tuple[int, ...], tuple[int, ...]] = {}

    def code_map(self, p: Permutation) -> tuple[int, ...]:
        """Letter-code table of the action alpha_{i,j} -> alpha_{p(i),p(j)}."""
        key = p.images
        m = self._maps.get(key)
        if m is None:
            ac = self.alpha_code
            m = tuple(ac[p(a.i)][p(a.j)] for a in self.kt.letters)
            self._maps[key] = m
        return m

    def act(self, p: Permutation, k) -> NormalForm:
        """sigma . k, computed letterwise then renormalised."""
        m = self.code_map(p)
        return self.kt.wrap(self.kt.normalize_codes(m[c] for c in self.kt.encode(k)))

    def identity(self) -> SemidirectElement:
        return SemidirectElement(self.kt.identity(), self.identity_perm)


@lru_cache(maxsize=None)
def context(n: int) -> VtnContext:
    return VtnContext(n)


def _letters_of(w) -> tuple[Sequence[GeneratorLetter], int]:
    if isinstance(w, VWord):
        return w.letters, w.n
    raise TypeError(f"expected a VWord, got {type(w).__name__}")


def decompose(w: VWord) -> SemidirectElement:
    letters, n = _letters_of(w)
    ctx = context(n)
    sig = list(range(1, n + 1))
    ac = ctx.alpha_code
    ks: list[int] = []
    for g in letters:
        i = g.index
        if g.kind is Kind.RHO:
            sig[i - 1], sig[i] = sig[i], sig[i - 1]
        else:
            ks.append(ac[sig[i - 1]][sig[i]])
    return SemidirectElement(ctx.kt.wrap(ctx.kt.normalize_codes(ks)), Permutation(tuple(sig)))


@lru_cache(maxsize=None)
def alpha_word(a: AlphaLetter) -> tuple[GeneratorLetter, ...]:
    """The defining s/rho word of alpha_{i,j}."""
    i, j = min(a.i, a.j), max(a.i, a.j)
    left = tuple(rho(t) for t in range(j - 1, i, -1))
    right = left[::-1]
    mid = (s(i),) if a.i < a.j else (rho(i), s(i), rho(i))
    return left + mid + right


def perm_word(p: Permutation) -> tuple[GeneratorLetter, ...]:
    """A reduced rho-word whose theta-image is ``p``."""
    return tuple(rho(i) for i in reduced_tau_word(p))


def kword_to_vword(k, n: int) -> VWord:
    letters = k.letters if isinstance(k, (KWord, NormalForm)) else tuple(k)
    out: list[GeneratorLetter] = []
    for a in letters:
        out.extend(alpha_word(a))
    return VWord(tuple(out), n)


def recompose(e: SemidirectElement) -> VWord:
    return VWord(kword_to_vword(e.k, e.n).letters + perm_word(e.sigma), e.n)


def element(k, sigma: Permutation | None = None, n: int | None = None) -> SemidirectElement:
    """Build a SemidirectElement from any KT_n word and optional permutation."""
    if n is None:
        n = sigma.degree if sigma is not None else k.n
    ctx = context(n)
    sigma = sigma or ctx.identity_perm
    if sigma.degree != n:
        raise DegreeMismatch("permutation degree differs from n")
    return SemidirectElement(ctx.kt.normalize(k), sigma)


def multiply(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    if a.n != b.n:
        raise DegreeMismatch(f"strand counts differ: {a.n} vs {b.n}")
    ctx = context(a.n)
    m = ctx.code_map(a.sigma)
    codes = list(a.k.codes) + [m[c] for c in b.k.codes]
    return SemidirectElement(ctx.kt.wrap(ctx.kt.normalize_codes(codes)), a.sigma * b.sigma)


def invert(a: SemidirectElement) -> SemidirectElement:
    ctx = context(a.n)
    inv = a.sigma.inverse()
    m = ctx.code_map(inv)
    codes = [m[c] for c in reversed(a.k.codes)]
    return SemidirectElement(ctx.kt.wrap(ctx.kt.normalize_codes(codes)), inv)


def power(a: SemidirectElement, e: int) -> SemidirectElement:
    base = a if e >= 0 else invert(a)
    out = context(a.n).identity()
    for _ in range(abs(e)):
        out = multiply(out, base)
    return out


def equal_vtn(u: VWord, v: VWord) -> bool:
    if u.n != v.n:
        raise DegreeMismatch(f"strand counts differ: {u.n} vs {v.n}")
    return decompose(u) == decompose(v)


def rho_element(n: int, k: int) -> SemidirectElement:
    ctx = context(n)
    return SemidirectElement(ctx.kt.identity(), Permutation.transposition(n, k))


def conjugate_by_rho(e: SemidirectElement, k: int) -> SemidirectElement:
    """rho_k e rho_k."""
    r = rho_element(e.n, k)
    return multiply(multiply(r, e), r)


def embed_twin(w, n: int | None = None) -> KWord:
    """T_n -> KT_n, s_i -> alpha_{i,i+1}."""
    if isinstance(w, VWord):
        letters, n = w.letters, w.n
    elif isinstance(w, NormalForm):
        letters = w.letters
        n = n or w.presentation.rank + 1
    else:
        letters = tuple(w)
    if n is None:
        raise ValueError("strand count is required")
    out = []
    for g in letters:
        if not isinstance(g, GeneratorLetter) or g.kind is not Kind.S:
            raise ValueError(f"{g} is not a twin group letter")
        out.append(AlphaLetter(g.index, g.index + 1))
    return KWord(tuple(out), n)


def X_set(n: int, k: int) -> frozenset[AlphaLetter]:
    """X_k: letters alpha_{i,j} with neither index in {k, k+1}."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    return frozenset(a for a in kt_presentation(n).letters if not {a.i, a.j} & {k, k + 1})


class PropositionViolation(AssertionError):
    pass


def is_fixed_by_rho(g, k: int, n: int) -> bool:
    """Whether rho_k g rho_k == g in KT_n, computed directly."""
    ctx = context(n)
    nf = ctx.kt.normalize(g)
    return ctx.act(Permutation.transposition(n, k), nf).codes == nf.codes


def fixed_by_rho(g, k: int, n: int | None = None) -> bool:
    """Fixedness under rho_k conjugation, cross-checked against support in X_k."""
    n = n or g.n
    fixed = is_fixed_by_rho(g, k, n)
    by_support = context(n).kt.support(g) <= X_set(n, k)
    if fixed != by_support:
        raise PropositionViolation(f"{format_word(g)}: fixed={fixed} but support test gives {by_support}")
    return fixed


def ball_vtn(n: int, radius: int) -> set[SemidirectElement]:
    if radius < 0:
        raise ValueError("radius must be >= 0")
    ctx = context(n)
    gens = [SemidirectElement(ctx.kt.wrap((ctx.alpha_code[i][i + 1],)), ctx.identity_perm) for i in range(1, n)]
    gens += [rho_element(n, i) for i in range(1, n)]
    seen = {ctx.identity()}
    layer = [ctx.identity()]
    for _ in range(radius):
        nxt = []
        for e in layer:
            for g in gens:
                f = multiply(e, g)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        layer = nxt
    return seen


def relators(n: int) -> list[tuple[str, VWord]]:
    """Every instance of the defining relations, as (label, relator word)."""
    out: list[tuple[str, VWord]] = []
    r = range(1, n)
    W = lambda *ls: VWord(tuple(ls), n)  # noqa: E731
    for i in r:
        out.append((f"s{i}^2", W(s(i), s(i))))
    for i, j in itertools.combinations(r, 2):
        if j - i >= 2:
            out.append((f"[s{i},s{j}]", W(s(i), s(j), s(i), s(j))))
    for i in r:
        out.append((f"r{i}^2", W(rho(i), rho(i))))
    for i, j in itertools.combinations(r, 2):
        if j - i >= 2:
            out.append((f"[r{i},r{j}]", W(rho(i), rho(j), rho(i), rho(j))))
    for i in range(1, n - 1):
        out.append((f"braid r{i},r{i + 1}", W(rho(i), rho(i + 1), rho(i), rho(i + 1), rho(i), rho(i + 1))))
    for i in r:
        for j in r:
            if abs(i - j) >= 2:
                out.append((f"[r{i},s{j}]", W(rho(i), s(j), rho(i), s(j))))
    for i in range(1, n - 1):
        out.append((f"mixed {i}", W(rho(i), rho(i + 1), s(i), rho(i + 1), rho(i), s(i + 1))))
    return out


def kt_relators(n: int) -> list[tuple[str, KWord]]:
    """Squares of all letters and commutators of disjoint letter pairs."""
    letters = kt_presentation(n).letters
    out = [(f"{a}^2", KWord((a, a), n)) for a in letters]
    for a, b in itertools.combinations(letters, 2):
        if a.commutes_with(b):
            out.append((f"[{a},{b}]", KWord((a, b, a, b), n)))
    return out


def parse_vt(text: str, n: int) -> VWord:
    """Parse a VT_n word; alpha tokens are expanded into their s/rho definitions."""
    out: list[GeneratorLetter] = []
    for t in tokenize(text, n):
        if isinstance(t, AlphaLetter):
            out.extend(alpha_word(t))
        else:
            out.append(t)
    return VWord(tuple(out), n)
