from __future__ import annotations

import itertools
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from vtwin.racg import (
    AmalgamError,
    PresentationMismatch,
    RacgPresentation,
    UnknownLetter,
    kt_presentation,
    twin_presentation,
)
from vtwin.words import alpha, parse_kword

KT4 = kt_presentation(4)
a12, a21, a34, a43, a13, a24 = alpha(1, 2), alpha(2, 1), alpha(3, 4), alpha(4, 3), alpha(1, 3), alpha(2, 4)


def closure(word, pres):
    """Every word reachable by commuting swaps and deleting adjacent equal pairs."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for p in range(len(w) - 1):
            x, y = w[p], w[p + 1]
            if x == y:
                nxt = w[:p] + w[p + 2:]
            elif pres.commutes(x, y):
                nxt = w[:p] + (y, x) + w[p + 2:]
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def reduced_words(word, pres):
    c = closure(word, pres)
    m = min(len(w) for w in c)
    return {w for w in c if len(w) == m}


def kw(text, n=4):
    return parse_kword(text, n).letters


def test_normalize_examples():
    assert KT4.normalize(kw("a1,2 a3,4 a1,2")).letters == (a34,)
    w = kw("a1,2 a2,1 a1,2 a2,1")
    assert KT4.normalize(w).letters == w
    assert KT4.normalize(()).is_identity()


def test_equal_examples():
    assert KT4.equal(kw("a1,2 a3,4"), kw("a3,4 a1,2"))
    assert KT4.equal(kw("a1,2 a1,2"), ())
    assert not KT4.equal(kw("a1,2"), kw("a2,1"))
    with pytest.raises(PresentationMismatch):
        KT4.equal(kt_presentation(3).normalize(()), ())


def test_unknown_letter():
    with pytest.raises(UnknownLetter):
        kt_presentation(3).normalize([alpha(1, 4)])


def test_normalize_matches_closure_small():
    letters = [a12, a21, a34, a13]
    for length in range(6):
        for w in itertools.product(letters, repeat=length):
            nf = KT4.normalize(w).letters
            red = reduced_words(w, KT4)
            assert nf in red
            # canonical: the lexicographically least reduced representative
            assert nf == min(red)


@given(st.lists(st.sampled_from(KT4.letters), max_size=10))
def test_normalize_idempotent_and_shorter(w):
    nf = KT4.normalize(w)
    assert KT4.normalize(nf.letters) == nf
    assert len(nf) <= len(w)
    assert len(nf) % 2 == len(w) % 2


@given(st.lists(st.sampled_from(KT4.letters), max_size=8), st.lists(st.sampled_from(KT4.letters), max_size=8))
def test_multiply_and_inverse(u, v):
    assert KT4.multiply(u, v) == KT4.normalize(list(u) + list(v))
    assert KT4.multiply(u, KT4.inverse(u).letters).is_identity()


def test_cyclically_reduce_examples():
    conj, core = KT4.cyclically_reduce(kw("a1,2 a3,4 a1,2"))
    assert conj.letters == (a12,) and core.letters == (a34,)
    conj, core = KT4.cyclically_reduce(kw("a1,2 a2,1"))
    assert conj.is_identity() and core.letters == (a12, a21)
    conj, core = KT4.cyclically_reduce(())
    assert conj.is_identity() and core.is_identity()


@settings(max_examples=300)
@given(st.lists(st.sampled_from(KT4.letters), max_size=10))
def test_cyclically_reduce_contract(w):
    conj, core = KT4.cyclically_reduce(w)
    c = list(conj.letters)
    assert KT4.equal(c + list(core.letters) + c[::-1], w)
    # no single-letter conjugation shortens the core
    for x in KT4.letters:
        assert len(KT4.normalize([x, *core.letters, x])) >= len(core)


def test_is_involution_examples():
    assert KT4.is_involution(kw("a1,2 a3,4"))
    assert not KT4.is_involution(kw("a1,2 a2,1"))
    assert not KT4.is_involution(())
    assert KT4.is_involution(kw("a1,3 a1,2 a3,4 a1,3"))


def test_is_involution_matches_squaring():
    kt = kt_presentation(3)
    for nf in kt.ball(None, 5):
        w = list(nf.letters)
        expected = kt.normalize(w + w).is_identity() and not nf.is_identity()
        assert kt.is_involution(w) == expected


def test_parabolic_membership():
    X = {a34}
    assert KT4.parabolic_member(kw("a1,2 a1,2 a3,4"), X)
    assert not KT4.parabolic_member(kw("a1,2"), X)
    assert KT4.parabolic_member((), X)
    assert KT4.support(kw("a1,2 a3,4 a1,2")) == {a34}


def test_parabolic_intersect_sets():
    from vtwin.structure import X_set

    X = frozenset(KT4.letters)
    assert KT4.parabolic_intersect(X, X) == X
    assert KT4.parabolic_intersect(X, ()) == frozenset()
    got = KT4.parabolic_intersect(X_set(4, 1), X_set(4, 2))
    assert got == frozenset(a for a in KT4.letters if not {a.i, a.j} & {1, 2, 3})
    assert got == frozenset()


def test_parabolic_intersection_on_balls():
    kt = kt_presentation(4)
    sets = [
        {a12, a21, a34},
        {a34, a43, a13},
        {a12, a13, a24, a34},
        {a21, a43},
        set(),
    ]
    for X, Y in itertools.product(sets, repeat=2):
        for r in range(5):
            bx, by = set(kt.ball(X, r)), set(kt.ball(Y, r))
            assert bx & by == set(kt.ball(set(X) & set(Y), r))


def test_coset_decompose_examples():
    H = {a34}
    rep, h = KT4.coset_decompose(kw("a3,4"), H)
    assert rep.is_identity() and h.letters == (a34,)
    rep, h = KT4.coset_decompose(kw("a1,2"), H)
    assert rep.letters == (a12,) and h.is_identity()
    rep, h = KT4.coset_decompose(kw("a1,2 a3,4"), H)
    assert rep.letters == (a12,) and h.letters == (a34,)


def test_coset_rep_is_unique_minimum():
    kt = kt_presentation(4)
    H = {a12, a34, a13}
    for g in kt.ball([a12, a21, a34, a13, a24], 4):
        rep, h = kt.coset_decompose(g, H)
        assert kt.multiply(rep, h.letters) == g
        assert kt.parabolic_member(h, H)
        coset = {kt.multiply(g, x.letters) for x in kt.ball(H, len(g))}
        best = min(len(x) for x in coset)
        assert len(rep) == best
        assert [x for x in coset if len(x) == best] == [rep]


def test_amalgam_examples():
    syl, tail = KT4.amalgam_factorize(kw("a1,2 a2,1 a1,2"), [{a12}, {a21}], set())
    assert [(i, t.letters) for i, t in syl] == [(1, (a12,)), (2, (a21,)), (1, (a12,))]
    assert tail.is_identity()
    syl, tail = KT4.amalgam_factorize((), [{a12}, {a21}], set())
    assert syl == [] and tail.is_identity()
    a14 = alpha(1, 4)
    U = set(KT4.letters) - {a14, a24, alpha(3, 4)}
    syl, tail = KT4.amalgam_factorize(kw("a1,4 a3,4 a2,4"), [U | {a14}, U | {a24}, U | {a34}], U)
    assert [(i, t.letters) for i, t in syl] == [(1, (a14,)), (3, (a34,)), (2, (a24,))]
    assert tail.is_identity()


def test_amalgam_precondition_reports_pair():
    with pytest.raises(AmalgamError) as exc:
        KT4.amalgam_factorize((), [{a12}, {a34}], set())
    assert set(exc.value.pair) == {a12, a34}
    with pytest.raises(AmalgamError):
        KT4.amalgam_factorize((), [{a12}, {a21}], {a34})
    with pytest.raises(AmalgamError):
        KT4.amalgam_factorize(kw("a1,3"), [{a12}, {a21}], set())


def test_amalgam_unique_free_product():
    kt = kt_presentation(3)
    F1 = {alpha(1, 2), alpha(2, 3), alpha(3, 1)}
    F2 = {alpha(2, 1), alpha(3, 2), alpha(1, 3)}
    pieces = {1: [t for t in kt.ball(F1, 2) if t.codes], 2: [t for t in kt.ball(F2, 2) if t.codes]}
    # all alternating syllable sequences of total length <= 4
    products: dict = {}
    frontier = [((), 0, None)]
    while frontier:
        nxt = []
        for seq, length, last in frontier:
            g = kt.normalize([x for _, t in seq for x in t.letters])
            products.setdefault(g, []).append(seq)
            for f in (1, 2):
                if f == last:
                    continue
                for t in pieces[f]:
                    if length + len(t) <= 4:
                        nxt.append((seq + ((f, t),), length + len(t), f))
        frontier = nxt
    for g, seqs in products.items():
        assert len(seqs) == 1
        syl, tail = kt.amalgam_factorize(g, [F1, F2], set())
        assert tuple(syl) == seqs[0] and tail.is_identity()


def test_irreducible():
    for n in range(2, 9):
        assert kt_presentation(n).is_irreducible()
    two = RacgPresentation(["x", "y"], lambda a, b: True)
    assert not two.is_irreducible()
    assert RacgPresentation(["x"], lambda a, b: True).is_irreducible()
    assert twin_presentation(4).is_irreducible()
    split = RacgPresentation(["x", "y", "z"], lambda a, b: "z" in (a, b))
    assert not split.is_irreducible()


def test_ball_examples():
    assert [nf.letters for nf in KT4.ball(None, 0)] == [()]
    assert {nf.letters for nf in KT4.ball({a12}, 3)} == {(), (a12,)}
    got = {nf.letters for nf in KT4.ball({a12, a21}, 2)}
    assert got == {(), (a12,), (a21,), (a12, a21), (a21, a12)}


def test_dihedral_growth():
    kt = kt_presentation(2)
    for r in range(11):
        assert len(kt.ball(None, r)) == 2 * r + 1


def test_ball_matches_bfs():
    # independent enumeration: BFS by right multiplication with deduplication
    kt = kt_presentation(3)
    seen = {kt.identity()}
    layer = [kt.identity()]
    for r in range(1, 5):
        layer = [y for x in layer for a in kt.letters if (y := kt.multiply(x, [a])) not in seen and len(y) == r]
        seen.update(layer)
        assert set(kt.ball(None, r)) == seen
    # a free product of six copies of Z/2 has 1 + 6(5^r - 1)/4 elements in the r-ball
    assert len(seen) == 1 + 6 * (5**4 - 1) // 4 == 937


def test_asymmetric_commutation_rejected():
    with pytest.raises(ValueError):
        RacgPresentation([1, 2], lambda a, b: a < b)
