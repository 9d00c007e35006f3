from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from vtwin.words import (
    AlphaLetter,
    DegreeMismatch,
    IndexRangeError,
    Kind,
    KWord,
    ParseError,
    Permutation,
    VWord,
    alpha,
    alpha_conjugate,
    apply,
    compose,
    invert,
    parse_kword,
    parse_permutation,
    parse_vword,
    pi_of_word,
    reduced_tau_word,
    rho,
    s,
    theta_of_word,
)


def tau(n, i):
    return Permutation.transposition(n, i)


def vwords(n, max_size=12):
    letter = st.builds(lambda k, i: s(i) if k else rho(i), st.booleans(), st.integers(1, n - 1))
    return st.lists(letter, max_size=max_size).map(lambda ls: VWord(tuple(ls), n))


perms = st.integers(2, 7).flatmap(lambda n: st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p))))


def test_parse_examples():
    assert parse_vword("s1 r2", 3).letters == (s(1), rho(2))
    assert parse_vword("", 2) == VWord.identity(2)
    assert parse_vword("  e ", 2) == VWord.identity(2)
    assert parse_vword("s1\n\tr1", 2).letters == (s(1), rho(1))


def test_parse_errors_carry_position():
    with pytest.raises(IndexRangeError) as exc:
        parse_vword("s1 s5", 3)
    assert exc.value.position == 3 and exc.value.token == "s5"
    with pytest.raises(ParseError) as exc:
        parse_vword("s1 x2", 3)
    assert exc.value.position == 3
    for bad in ("S1", "s-1", "s0", "a1,1", "a1;2", "r"):
        with pytest.raises(ParseError):
            parse_kword(bad, 4) if bad.startswith("a") else parse_vword(bad, 4)


def test_alpha_tokens():
    w = parse_kword("a1,4 a3,2", 4)
    assert w.letters == (AlphaLetter(1, 4), AlphaLetter(3, 2))
    assert str(w) == "a1,4 a3,2"
    with pytest.raises(ParseError):
        parse_vword("a1,2", 3)
    with pytest.raises(ParseError):
        parse_kword("s1", 3)


@given(st.integers(2, 7).flatmap(vwords))
def test_print_parse_roundtrip(w):
    assert parse_vword(str(w), w.n) == w


def test_empty_prints_as_e():
    assert str(VWord.identity(3)) == "e"
    assert str(KWord((), 3)) == "e"


def test_letter_order():
    assert s(2) < rho(1)
    assert sorted([alpha(2, 1), alpha(1, 3), alpha(1, 2)]) == [alpha(1, 2), alpha(1, 3), alpha(2, 1)]
    with pytest.raises(ValueError):
        AlphaLetter(2, 2)


def test_theta_examples():
    assert theta_of_word(parse_vword("r1", 3)) == tau(3, 1)
    assert theta_of_word(parse_vword("s1 s2 s1", 3)).is_identity()
    p = theta_of_word(parse_vword("r1 r2", 3))
    assert p == compose(tau(3, 1), tau(3, 2))
    # tau_1 o tau_2 sends 1 -> 2 -> 3 -> 1
    assert (p(1), p(2), p(3)) == (2, 3, 1)


def test_pi_examples():
    assert pi_of_word(parse_vword("s1", 3)) == tau(3, 1)
    assert pi_of_word(parse_vword("s1 r1", 3)).is_identity()
    assert pi_of_word(VWord.identity(4)).is_identity()


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(vwords(n), vwords(n))))
def test_theta_pi_are_morphisms(pair):
    u, v = pair
    assert theta_of_word(u * v) == theta_of_word(u) * theta_of_word(v)
    assert pi_of_word(u * v) == pi_of_word(u) * pi_of_word(v)


def test_alpha_conjugate_examples():
    assert alpha_conjugate(tau(3, 1), alpha(1, 3)) == alpha(2, 3)
    assert alpha_conjugate(tau(3, 2), alpha(1, 2)) == alpha(1, 3)
    for a in (alpha(1, 2), alpha(3, 1)):
        assert alpha_conjugate(Permutation.identity(3), a) == a


def test_alpha_conjugate_is_left_action():
    n = 4
    group = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    letters = [alpha(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for p, q in itertools.product(group, repeat=2):
        for a in letters:
            assert alpha_conjugate(p * q, a) == alpha_conjugate(p, alpha_conjugate(q, a))


def test_permutation_basics():
    t1, t2 = tau(3, 1), tau(3, 2)
    assert compose(t1, t1).is_identity()
    assert apply(t1, 2) == 1
    assert invert(t1 * t2) == t2 * t1
    with pytest.raises(DegreeMismatch):
        compose(t1, tau(4, 1))
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_cycle_notation():
    p = Permutation.from_cycles(6, [(1, 2), (3, 4), (5, 6)])
    assert str(p) == "(1,2)(3,4)(5,6)"
    assert str(Permutation.identity(3)) == "()"
    assert parse_permutation("(1,2)(3,4)(5,6)", 6) == p
    assert parse_permutation("[2 1 3]", 3) == tau(3, 1)
    assert parse_permutation("()", 4).is_identity()
    assert p.order() == 2


@given(perms)
def test_reduced_tau_word(p):
    idx = reduced_tau_word(p)
    q = Permutation.identity(p.degree)
    for i in idx:
        q = q * tau(p.degree, i)
    assert q == p
    inversions = sum(1 for a, b in itertools.combinations(p.images, 2) if a > b)
    assert len(idx) == inversions


@given(perms)
def test_inverse_and_cycles(p):
    assert (p * p.inverse()).is_identity()
    assert parse_permutation(p.cycle_string(), p.degree) == p
    assert parse_permutation(p.one_line(), p.degree) == p


def test_word_degree_checks():
    with pytest.raises(ValueError):
        VWord((s(3),), 3)
    with pytest.raises(DegreeMismatch):
        VWord((), 3) * VWord((), 4)
    assert VWord((s(1), rho(2)), 3).inverse().letters == (rho(2), s(1))
    assert parse_vword("r2", 3).letters[0].kind is Kind.RHO
