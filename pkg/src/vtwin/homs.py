"""Homomorphisms given by generator images, among S_n and VT_n.

Generator order: ``t1..t(n-1)`` (the transpositions tau_i) for S_n, and
``s1..s(n-1), r1..r(n-1)`` for VT_n.  Images into S_m are permutations, images
into VT_m are raw words, compared through their semidirect coordinates.

Composite names read right to left as maps: ``lambda_nu_pi`` is
lambda o nu o pi, first pi: VT_6 -> S_6, then nu, then lambda.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .racg import kt_presentation
from .structure import (
    SemidirectElement,
    context,
    decompose,
    multiply,
    relators as vt_relators,
)
from .words import (
    AlphaLetter,
    GeneratorLetter,
    Kind,
    KWord,
    ParseError,
    Permutation,
    VWord,
    parse_permutation,
    parse_vword,
    reduced_tau_word,
    rho,
    s,
)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


class TagMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GroupTag:
    family: str  # "Sym" or "VTwin"
    degree: int

    def __post_init__(self):
        if self.family not in ("Sym", "VTwin"):
            raise ValueError(f"unknown group family {self.family!r}")
        if self.degree < 2:
            raise ValueError("degree must be >= 2")

    def __str__(self) -> str:
        return ("S" if self.family == "Sym" else "VT") + str(self.degree)

    @classmethod
    def parse(cls, text: str) -> GroupTag:
        m = re.fullmatch(r"\s*(S|VT)(\d+)\s*", text)
        if not m:
            raise ParseError("group tag must look like S5 or VT3", 0, text)
        return cls("Sym" if m.group(1) == "S" else "VTwin", int(m.group(2)))

    def generator_names(self) -> list[str]:
        r = range(1, self.degree)
        if self.family == "Sym":
            return [f"t{i}" for i in r]
        return [f"s{i}" for i in r] + [f"r{i}" for i in r]

    def identity(self):
        if self.family == "Sym":
            return Permutation.identity(self.degree)
        return VWord((), self.degree)


def Sym(n: int) -> GroupTag:
    return GroupTag("Sym", n)


def VTwin(n: int) -> GroupTag:
    return GroupTag("VTwin", n)


@dataclass(frozen=True)
class GenImageMap:
    source: GroupTag
    target: GroupTag
    images: tuple
    _elements: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        need = len(self.source.generator_names())
        if len(self.images) != need:
            raise ValueError(f"expected {need} images, got {len(self.images)}")
        kind = Permutation if self.target.family == "Sym" else VWord
        for im in self.images:
            if not isinstance(im, kind) or (im.degree if kind is Permutation else im.n) != self.target.degree:
                raise TagMismatch(f"image {im} does not belong to {self.target}")

    def element_images(self) -> tuple:
        """Images as target group elements (SemidirectElement for VT targets)."""
        if self.target.family == "Sym":
            return self.images
        got = self._elements.get("e")
        if got is None:
            got = tuple(decompose(w) for w in self.images)
            self._elements["e"] = got
        return got

    def image_of(self, name: str):
        return self.images[self.source.generator_names().index(name)]

    def serialize(self) -> str:
        lines = [f"hom {self.source} -> {self.target}"]
        for name, im in zip(self.source.generator_names(), self.images):
            lines.append(f"{name} := {im}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:16]

    def __str__(self) -> str:
        return self.serialize().rstrip("\n")


def parse_hom(text: str) -> GenImageMap:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty homomorphism description", 0)
    m = re.fullmatch(r"hom\s+(\S+)\s*->\s*(\S+)", lines[0])
    if not m:
        raise ParseError("header must read 'hom <source> -> <target>'", 0, lines[0])
    src, tgt = GroupTag.parse(m.group(1)), GroupTag.parse(m.group(2))
    names = src.generator_names()
    table: dict[str, object] = {}
    for ln in lines[1:]:
        mm = re.fullmatch(r"(\S+)\s*:=\s*(.*)", ln)
        if not mm or mm.group(1) not in names:
            raise ParseError("expected '<generator> := <image>'", 0, ln)
        body = mm.group(2)
        if tgt.family == "Sym":
            table[mm.group(1)] = parse_permutation(body, tgt.degree)
        else:
            table[mm.group(1)] = parse_vword(body, tgt.degree)
    missing = [g for g in names if g not in table]
    if missing:
        raise ParseError(f"no image given for {missing[0]}", 0)
    return GenImageMap(src, tgt, tuple(table[g] for g in names))


# -- relators of the sources, as sequences of generator positions ---------


@lru_cache(maxsize=None)
def source_relators(tag: GroupTag) -> tuple[tuple[str, tuple[int, ...]], ...]:
    n = tag.degree
    out = []
    if tag.family == "Sym":
        for i in range(n - 1):
            out.append((f"t{i + 1}^2", (i, i)))
        for i, j in itertools.combinations(range(n - 1), 2):
            if j - i >= 2:
                out.append((f"[t{i + 1},t{j + 1}]", (i, j, i, j)))
            elif j == i + 1:
                out.append((f"braid t{i + 1},t{j + 1}", (i, j) * 3))
        return tuple(out)
    for label, w in vt_relators(n):
        out.append((label, tuple(_gen_pos(g, n) for g in w.letters)))
    return tuple(out)


def _gen_pos(g: GeneratorLetter, n: int) -> int:
    return g.index - 1 if g.kind is Kind.S else n - 1 + g.index - 1


def _source_word(tag: GroupTag, w) -> list[int]:
    """Generator positions of a source word."""
    if tag.family == "Sym":
        if isinstance(w, Permutation):
            if w.degree != tag.degree:
                raise TagMismatch("permutation degree differs from the source")
            return [i - 1 for i in reduced_tau_word(w)]
        idx = list(w)
        if any(not 1 <= i <= tag.degree - 1 for i in idx):
            raise TagMismatch("transposition index out of range")
        return [i - 1 for i in idx]
    if not isinstance(w, VWord) or w.n != tag.degree:
        raise TagMismatch(f"expected a VT{tag.degree} word")
    return [_gen_pos(g, tag.degree) for g in w.letters]


def _product(target: GroupTag, elems: Sequence):
    if target.family == "Sym":
        out = Permutation.identity(target.degree)
        for e in elems:
            out = out * e
        return out
    out = context(target.degree).identity()
    for e in elems:
        out = multiply(out, e)
    return out


def _is_identity(x) -> bool:
    return x.is_identity()


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    failing: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_homomorphism(m: GenImageMap) -> HomCheck:
    ims = m.element_images()
    for label, rel in source_relators(m.source):
        if not _is_identity(_product(m.target, [ims[p] for p in rel])):
            return HomCheck(False, label)
    return HomCheck(True)


def apply_hom(m: GenImageMap, w):
    """Image of a source word; a Permutation or a SemidirectElement."""
    ims = m.element_images()
    return _product(m.target, [ims[p] for p in _source_word(m.source, w)])


def apply_word(m: GenImageMap, w):
    """Image of a source word by letterwise substitution (no reduction for VT targets)."""
    pos = _source_word(m.source, w)
    if m.target.family == "Sym":
        return _product(m.target, [m.images[p] for p in pos])
    letters: list[GeneratorLetter] = []
    for p in pos:
        letters.extend(m.images[p].letters)
    return VWord(tuple(letters), m.target.degree)


def compose_homs(f: GenImageMap, g: GenImageMap) -> GenImageMap:
    """f o g: apply g, then f."""
    if g.target != f.source:
        raise TagMismatch(f"cannot compose: {g.target} is not {f.source}")
    return GenImageMap(g.source, f.target, tuple(apply_word(f, im) for im in g.images))


def conjugate_hom(m: GenImageMap, x) -> GenImageMap:
    """x^ o m, where x^(y) = x y x^-1."""
    if m.target.family == "Sym":
        if not isinstance(x, Permutation) or x.degree != m.target.degree:
            raise TagMismatch("conjugator must be a permutation of the target degree")
        xi = x.inverse()
        return GenImageMap(m.source, m.target, tuple(x * im * xi for im in m.images))
    if not isinstance(x, VWord) or x.n != m.target.degree:
        raise TagMismatch("conjugator must be a word of the target group")
    return GenImageMap(m.source, m.target, tuple(x * im * x.inverse() for im in m.images))


def is_abelian_hom(m: GenImageMap) -> bool:
    ims = m.element_images()
    for a, b in itertools.combinations(ims, 2):
        if _product(m.target, [a, b]) != _product(m.target, [b, a]):
            return False
    return True


# -- named maps ------------------------------------------------------------

NU_TABLE: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((1, 2), (3, 4), (5, 6)),
    ((2, 3), (1, 5), (4, 6)),
    ((1, 3), (2, 4), (5, 6)),
    ((1, 2), (3, 5), (4, 6)),
    ((2, 3), (1, 4), (5, 6)),
)

NAMES = (
    "pi", "theta", "lambda", "zeta", "phi:<m>", "nu", "lambda_nu", "nu_pi", "nu_theta",
    "lambda_pi", "lambda_theta", "lambda_nu_pi", "lambda_nu_theta",
)


def _phi_image(i: int, m: int) -> tuple[GeneratorLetter, ...]:
    unit = (s(i), rho(i)) if m >= 0 else (rho(i), s(i))
    return unit * abs(m) + (rho(i),)


def phi(n: int, m: int) -> GenImageMap:
    """phi_m: s_i -> (s_i rho_i)^m rho_i, rho_i -> rho_i.  Negative m uses (rho_i s_i)^|m|."""
    ims = [VWord(_phi_image(i, m), n) for i in range(1, n)]
    ims += [VWord((rho(i),), n) for i in range(1, n)]
    return GenImageMap(VTwin(n), VTwin(n), tuple(ims))


def named(n: int, which: str) -> GenImageMap:
    """Named maps.  ``nu`` and anything built from it need n == 6."""
    r = range(1, n)
    tau = [Permutation.transposition(n, i) for i in r]
    ident = Permutation.identity(n)
    if which == "pi":
        return GenImageMap(VTwin(n), Sym(n), tuple(tau + tau))
    if which == "theta":
        return GenImageMap(VTwin(n), Sym(n), tuple([ident] * (n - 1) + tau))
    if which == "lambda":
        return GenImageMap(Sym(n), VTwin(n), tuple(VWord((rho(i),), n) for i in r))
    if which == "zeta":
        return phi(n, -1)
    if which.startswith("phi"):
        mm = re.fullmatch(r"phi[:(]?(-?\d+)\)?", which)
        if not mm:
            raise ValueError(f"bad phi name {which!r}; use phi:<m>")
        return phi(n, int(mm.group(1)))
    if which == "nu":
        if n != 6:
            raise ValueError("nu is defined only for n = 6")
        return GenImageMap(Sym(6), Sym(6), tuple(Permutation.from_cycles(6, c) for c in NU_TABLE))
    if which == "sym_id":
        return GenImageMap(Sym(n), Sym(n), tuple(tau))
    if which == "vt_id":
        return phi(n, 1)
    parts = which.split("_")
    if len(parts) >= 2 and all(p in ("pi", "theta", "lambda", "nu") for p in parts):
        out = named(n, parts[-1])
        for p in reversed(parts[:-1]):
            out = compose_homs(named(n, p), out)
        return out
    raise ValueError(f"unknown map name {which!r}")


def phi_m_on_alpha(m: int, a: AlphaLetter, n: int | None = None) -> KWord:
    """Closed form of phi_m on alpha_{i,j} for odd m = 2t + 1, normalised."""
    if m % 2 == 0:
        raise ValueError("the closed form covers odd m only")
    n = n or max(a.i, a.j)
    t = (m - 1) // 2
    b = AlphaLetter(a.j, a.i)
    unit = (b, a) if t >= 0 else (a, b)
    word = (a,) + unit * abs(t)
    nf = kt_presentation(n).normalize(word)
    return KWord(nf.letters, n)


def abelianization_matrix(m: GenImageMap) -> tuple[tuple[int, int], tuple[int, int]]:
    """Induced map on VT^ab = Z/2 [s] + Z/2 [rho]; rows are images of [s] and [rho]."""
    if m.source.family != "VTwin" or m.target.family != "VTwin":
        raise TagMismatch("abelianization check needs a VT -> VT map")
    n = m.source.degree
    rows = []
    for w in (m.images[0], m.images[n - 1]):
        cs = sum(1 for g in w.letters if g.kind is Kind.S) % 2
        cr = sum(1 for g in w.letters if g.kind is Kind.RHO) % 2
        rows.append((cs, cr))
    return rows[0], rows[1]


def abelianization_surjective(m: GenImageMap) -> bool:
    (a, b), (c, d) = abelianization_matrix(m)
    return (a * d - b * c) % 2 == 1


# -- permutations as tuples (fast path for enumeration) -------------------


def _all_perms(m: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(m))]


def _tmul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def _tinv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@lru_cache(maxsize=None)
def involution_candidates(m: int) -> tuple[tuple[int, ...], ...]:
    """Identity first, then every involution of S_m, in lexicographic order."""
    ident = tuple(range(m))
    invs = [p for p in _all_perms(m) if p != ident and _tmul(p, p) == ident]
    return (ident,) + tuple(invs)


def _to_perm(t: tuple[int, ...]) -> Permutation:
    return Permutation(tuple(x + 1 for x in t))


def _from_perm(p: Permutation) -> tuple[int, ...]:
    return tuple(x - 1 for x in p.images)


def _enum_plan(source: GroupTag) -> tuple[list[int], list[list[tuple[int, ...]]]]:
    """Assignment order of generators and, per step, the relators closing at that step."""
    n = source.degree
    if source.family == "Sym":
        order = list(range(n - 1))
    else:
        order = list(range(n - 1, 2 * (n - 1))) + list(range(n - 1))  # rho first, then s
    step_of = {g: k for k, g in enumerate(order)}
    checks: list[list[tuple[int, ...]]] = [[] for _ in order]
    for _, rel in source_relators(source):
        if len(rel) == 2 and rel[0] == rel[1]:
            continue  # squares hold for every candidate
        checks[max(step_of[g] for g in rel)].append(rel)
    return order, checks


def _backtrack(source: GroupTag, m: int, first: Sequence[int] | None, budget: int) -> tuple[list[tuple], int]:
    order, checks = _enum_plan(source)
    cands = involution_candidates(m)
    ident = cands[0]
    ngen = len(order)
    assigned: list = [None] * ngen
    results: list[tuple] = []
    nodes = 0

    def holds(rel: tuple[int, ...]) -> bool:
        acc = ident
        for g in rel:
            acc = _tmul(acc, assigned[g])
        return acc == ident

    def rec(step: int) -> None:
        nonlocal nodes
        if step == ngen:
            results.append(tuple(assigned))
            return
        g = order[step]
        pool = cands if step or first is None else [cands[i] for i in first]
        for c in pool:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"enumeration exceeded the node budget of {budget}")
            assigned[g] = c
            if all(holds(rel) for rel in checks[step]):
                rec(step + 1)
        assigned[g] = None

    rec(0)
    return results, nodes


def _worker(args):
    source, m, chunk, budget = args
    return _backtrack(source, m, chunk, budget)


def enumerate_homs(source: GroupTag, m: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[GenImageMap]:
    """All homomorphisms from ``source`` to S_m, sorted canonically."""
    ncand = len(involution_candidates(m))
    if jobs <= 1:
        raw, _ = _backtrack(source, m, None, budget)
    else:
        idx = list(range(ncand))
        chunks = [idx[k::jobs] for k in range(jobs) if idx[k::jobs]]
        # each worker gets the full budget share; the total is checked after the merge
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_worker, [(source, m, c, budget) for c in chunks]))
        if sum(nd for _, nd in parts) > budget:
            raise BudgetExceeded(f"enumeration exceeded the node budget of {budget}")
        raw = [r for part, _ in parts for r in part]
    raw.sort()
    target = Sym(m)
    return [GenImageMap(source, target, tuple(_to_perm(t) for t in r)) for r in raw]


def enumerate_homs_sym_to_sym(n: int, m: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[GenImageMap]:
    return enumerate_homs(Sym(n), m, budget, jobs)


def enumerate_homs_vtn_to_sym(n: int, m: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[GenImageMap]:
    return enumerate_homs(VTwin(n), m, budget, jobs)


# -- classification --------------------------------------------------------


def _conjugate_exists(images: Sequence[tuple], ref: Sequence[tuple], m: int) -> Permutation | None:
    for x in _all_perms(m):
        xi = _tinv(x)
        if all(_tmul(_tmul(x, r), xi) == im for r, im in zip(ref, images)):
            return _to_perm(x)
    return None


def conjugator(m: GenImageMap, ref: GenImageMap) -> Permutation | None:
    """Some x with x^ o ref == m, or None."""
    if m.source != ref.source or m.target != ref.target or m.target.family != "Sym":
        return None
    return _conjugate_exists([_from_perm(p) for p in m.images], [_from_perm(p) for p in ref.images], m.target.degree)


def classify_hom_to_sym(m: GenImageMap) -> str:
    if m.target.family != "Sym":
        raise TagMismatch("classification needs a symmetric group target")
    if is_abelian_hom(m):
        return "abelian"
    n, deg = m.source.degree, m.target.degree
    if m.source.family == "Sym":
        refs = [("conj_id", "sym_id")] if n == deg else []
        if n == deg == 6:
            refs.append(("conj_nu", "nu"))
    else:
        refs = [("conj_pi", "pi"), ("conj_theta", "theta")] if n == deg else []
        if n == deg == 6:
            refs += [("conj_nu_pi", "nu_pi"), ("conj_nu_theta", "nu_theta")]
    for label, name in refs:
        if conjugator(m, named(n, name)) is not None:
            return label
    return "other"


# -- the exotic automorphism of S_6 ---------------------------------------


def _closure_map(m: GenImageMap) -> dict[tuple, tuple] | None:
    """Extend a map S_n -> S_k on generators to all of S_n; None if not well defined."""
    n = m.source.degree
    gens = [_from_perm(Permutation.transposition(n, i)) for i in range(1, n)]
    ims = [_from_perm(p) for p in m.images]
    ident = tuple(range(n))
    table = {ident: tuple(range(m.target.degree))}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, ims):
                y = _tmul(x, g)
                v = _tmul(table[x], im)
                if y in table:
                    if table[y] != v:
                        return None
                else:
                    table[y] = v
                    nxt.append(y)
        frontier = nxt
    return table


def nu_checks() -> dict[str, bool]:
    nu = named(6, "nu")
    table = _closure_map(nu)
    auto = table is not None and len(set(table.values())) == 720
    square = compose_homs(nu, nu)
    sq_ident = all(p == Permutation.transposition(6, i) for i, p in enumerate(square.images, 1))
    sq_inner = conjugator(square, named(6, "sym_id")) is not None
    return {
        "homomorphism": bool(is_homomorphism(nu)),
        "automorphism": auto,
        "order_two": sq_ident,
        "square_inner": sq_inner,
        "non_inner": conjugator(nu, named(6, "sym_id")) is None,
        "triple_transposition": all(
            sorted(len(c) for c in p.cycles()) == [2, 2, 2] for p in nu.images
        ),
    }


def v_images() -> list[Permutation]:
    """nu(tau_i) for i = 1..5; conjugation by v_i = lambda nu(tau_i) relabels KT_6 by these."""
    return list(named(6, "nu").images)
