"""Letters, words and permutations shared by every other module.

Text grammar (whitespace separated tokens)::

    token := "s" INT | "r" INT | "a" INT "," INT

``s3`` is s_3, ``r2`` is rho_2 and ``a1,4`` is alpha_{1,4}.  The empty word
prints as ``e``; ``e`` is also accepted on input and ignored.

Permutations act on the left of points and compose as functions:
``(p * q)(i) == p(q(i))``.  The permutation image of a word multiplies its
letters left to right, so the leftmost letter is applied last.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed word text.  ``position`` is the character offset of the bad token."""

    def __init__(self, message: str, position: int, token: str = ""):
        super().__init__(f"{message} at position {position}" + (f" ({token!r})" if token else ""))
        self.position = position
        self.token = token


class IndexRangeError(ParseError):
    pass


class DegreeMismatch(ValueError):
    pass


class Kind(enum.IntEnum):
    S = 0
    RHO = 1


@dataclass(frozen=True, order=True)
class GeneratorLetter:
    kind: Kind
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def __str__(self) -> str:
        return ("s" if self.kind is Kind.S else "r") + str(self.index)

    __repr__ = __str__


def s(i: int) -> GeneratorLetter:
    return GeneratorLetter(Kind.S, i)


def rho(i: int) -> GeneratorLetter:
    return GeneratorLetter(Kind.RHO, i)


@dataclass(frozen=True, order=True)
class AlphaLetter:
    """The Coxeter generator alpha_{i,j} of KT_n."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1 or self.i == self.j:
            raise ValueError(f"invalid alpha letter ({self.i},{self.j})")

    def __str__(self) -> str:
        return f"a{self.i},{self.j}"

    __repr__ = __str__

    def commutes_with(self, other: AlphaLetter) -> bool:
        return not ({self.i, self.j} & {other.i, other.j})


def alpha(i: int, j: int) -> AlphaLetter:
    return AlphaLetter(i, j)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"strand count must be >= 2, got {n}")


@dataclass(frozen=True)
class VWord:
    """A word in the generators s_i, rho_i of VT_n, stored verbatim."""

    letters: tuple[GeneratorLetter, ...]
    n: int

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "letters", tuple(self.letters))
        for g in self.letters:
            if not 1 <= g.index <= self.n - 1:
                raise ValueError(f"letter {g} out of range for n={self.n}")

    @classmethod
    def identity(cls, n: int) -> VWord:
        return cls((), n)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[GeneratorLetter]:
        return iter(self.letters)

    def __mul__(self, other: VWord) -> VWord:
        if self.n != other.n:
            raise DegreeMismatch(f"strand counts differ: {self.n} vs {other.n}")
        return VWord(self.letters + other.letters, self.n)

    def inverse(self) -> VWord:
        # every generator is an involution
        return VWord(self.letters[::-1], self.n)

    def __str__(self) -> str:
        return format_word(self.letters)


@dataclass(frozen=True)
class KWord:
    """A word in the letters alpha_{i,j} of KT_n, stored verbatim."""

    letters: tuple[AlphaLetter, ...]
    n: int

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if a.i > self.n or a.j > self.n:
                raise ValueError(f"letter {a} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[AlphaLetter]:
        return iter(self.letters)

    def __mul__(self, other: KWord) -> KWord:
        if self.n != other.n:
            raise DegreeMismatch(f"strand counts differ: {self.n} vs {other.n}")
        return KWord(self.letters + other.letters, self.n)

    def inverse(self) -> KWord:
        return KWord(self.letters[::-1], self.n)

    def __str__(self) -> str:
        return format_word(self.letters)


def format_word(letters: Iterable[object]) -> str:
    text = " ".join(str(x) for x in letters)
    return text or "e"


_TOKEN = re.compile(r"\S+")
_S_OR_R = re.compile(r"([sr])([0-9]+)\Z")
_ALPHA = re.compile(r"a([0-9]+),([0-9]+)\Z")


def tokenize(text: str, n: int) -> list[GeneratorLetter | AlphaLetter]:
    """Parse ``text`` into a mixed list of generator and alpha letters."""
    _check_n(n)
    out: list[GeneratorLetter | AlphaLetter] = []
    for m in _TOKEN.finditer(text):
        tok, pos = m.group(), m.start()
        if tok == "e":
            continue
        if mm := _S_OR_R.match(tok):
            idx = int(mm.group(2))
            if not 1 <= idx <= n - 1:
                raise IndexRangeError(f"index out of range for n={n}", pos, tok)
            out.append(GeneratorLetter(Kind.S if mm.group(1) == "s" else Kind.RHO, idx))
        elif mm := _ALPHA.match(tok):
            i, j = int(mm.group(1)), int(mm.group(2))
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexRangeError(f"index out of range for n={n}", pos, tok)
            if i == j:
                raise ParseError("alpha letter needs distinct indices", pos, tok)
            out.append(AlphaLetter(i, j))
        else:
            raise ParseError("unrecognised token", pos, tok)
    return out


def parse_vword(text: str, n: int) -> VWord:
    letters = tokenize(text, n)
    bad = [x for x in letters if isinstance(x, AlphaLetter)]
    if bad:
        pos = text.find(str(bad[0]))
        raise ParseError("alpha letters are not VT_n generators", pos, str(bad[0]))
    return VWord(tuple(letters), n)  # type: ignore[arg-type]


def parse_kword(text: str, n: int) -> KWord:
    letters = tokenize(text, n)
    bad = [x for x in letters if not isinstance(x, AlphaLetter)]
    if bad:
        pos = text.find(str(bad[0]))
        raise ParseError("expected alpha letters only", pos, str(bad[0]))
    return KWord(tuple(letters), n)  # type: ignore[arg-type]


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}, stored as its one-line image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int | None = None) -> Permutation:
        """The transposition (a, b); ``b`` defaults to ``a + 1`` (so tau_a)."""
        b = a + 1 if b is None else b
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for c in cycles:
            if seen & set(c) or len(set(c)) != len(c):
                raise ValueError(f"cycles are not disjoint: {cycles}")
            seen |= set(c)
            for a, b in zip(c, list(c[1:]) + [c[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return invert(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out, seen = [], set()
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            c, x = [start], self(start)
            while x != start:
                c.append(x)
                x = self(x)
            seen.update(c)
            out.append(tuple(c))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def one_line(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation({self.one_line()})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``: apply q first, then p."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[x - 1] for x in q.images))


def apply(p: Permutation, i: int) -> int:
    return p(i)


def invert(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, v in enumerate(p.images, 1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


_CYCLE = re.compile(r"\(([0-9,\s]*)\)")


def parse_permutation(text: str, n: int) -> Permutation:
    """Read cycle notation ``(1,2)(3,4)``, ``()``, or one-line ``[2 1 3]``."""
    t = text.strip()
    if t.startswith("["):
        if not t.endswith("]"):
            raise ParseError("unterminated one-line permutation", 0, t)
        vals = [int(x) for x in t[1:-1].replace(",", " ").split()]
        if len(vals) != n:
            raise ParseError(f"expected {n} images", 0, t)
        return Permutation(tuple(vals))
    pos, cycles = 0, []
    for m in _CYCLE.finditer(t):
        if t[pos:m.start()].strip():
            raise ParseError("bad cycle notation", pos, t[pos:m.start()])
        body = m.group(1).strip()
        if body:
            pts = [int(x) for x in body.split(",")]
            if any(not 1 <= x <= n for x in pts):
                raise IndexRangeError(f"point out of range for n={n}", m.start(), m.group())
            cycles.append(pts)
        pos = m.end()
    if t[pos:].strip():
        raise ParseError("bad cycle notation", pos, t[pos:])
    try:
        return Permutation.from_cycles(n, cycles)
    except ValueError as exc:
        raise ParseError(str(exc), 0, t) from None


def theta_of_word(w: VWord) -> Permutation:
    """theta: s_i -> 1, rho_i -> tau_i."""
    img = list(range(1, w.n + 1))
    # right-multiplying by tau_i swaps the values in positions i and i+1
    for g in w.letters:
        if g.kind is Kind.RHO:
            i = g.index
            img[i - 1], img[i] = img[i], img[i - 1]
    return Permutation(tuple(img))


def pi_of_word(w: VWord) -> Permutation:
    """pi: s_i -> tau_i, rho_i -> tau_i."""
    img = list(range(1, w.n + 1))
    for g in w.letters:
        i = g.index
        img[i - 1], img[i] = img[i], img[i - 1]
    return Permutation(tuple(img))


def alpha_conjugate(p: Permutation, a: AlphaLetter) -> AlphaLetter:
    """The action sigma . alpha_{i,j} = alpha_{sigma(i), sigma(j)}."""
    return AlphaLetter(p(a.i), p(a.j))


def reduced_tau_word(p: Permutation) -> list[int]:
    """Indices i_1..i_t with tau_{i_1} o ... o tau_{i_t} == p, of minimal length.

    Bubble sort: repeatedly remove the leftmost descent.
    """
    img = list(p.images)
    peeled: list[int] = []
    while True:
        for i in range(len(img) - 1):
            if img[i] > img[i + 1]:
                img[i], img[i + 1] = img[i + 1], img[i]
                peeled.append(i + 1)
                break
        else:
            break
    return peeled[::-1]
