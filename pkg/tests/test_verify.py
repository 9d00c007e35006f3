from __future__ import annotations

import json
import random

import pytest

from vtwin.homs import BudgetExceeded
from vtwin.racg import kt_presentation
from vtwin.structure import X_set, decompose, kword_to_vword
from vtwin.verify import (
    FAIL,
    PASS,
    PreconditionError,
    action_table_expected,
    check_condition_C,
    condition_C_equiv,
    condition_C_product,
    fixed_point_family,
    run_suite,
    solve_twisted_conjugacy,
    suite_centralizer,
    suite_phi_m,
    suite_presentation,
    twisted_replay,
)
from vtwin.words import AlphaLetter, KWord, Permutation, VWord, alpha, alpha_conjugate, parse_kword, rho


def test_condition_C_examples():
    assert check_condition_C(parse_kword("", 3), 3)
    assert condition_C_equiv(parse_kword("", 3), 3)
    a45 = parse_kword("a4,5", 5)
    assert check_condition_C(a45, 5) and condition_C_equiv(a45, 5)
    a12 = parse_kword("a1,2", 3)
    assert check_condition_C(a12, 3) == condition_C_equiv(a12, 3)
    assert not check_condition_C(a12, 3)
    with pytest.raises(ValueError):
        check_condition_C(parse_kword("", 2), 2)


def test_condition_C_product_by_words():
    # the six factors, written out as VT_n words and evaluated through decompose
    n = 4
    rng = random.Random(3)
    letters = kt_presentation(n).letters
    for _ in range(200):
        a = KWord(tuple(rng.choice(letters) for _ in range(rng.randint(0, 5))), n)
        A, Ai = kword_to_vword(a, n), kword_to_vword(a.inverse(), n)
        r = lambda *ix: VWord(tuple(rho(i) for i in ix), n)  # noqa: E731
        w = A * r(2) * Ai * r(2) * r(2, 1) * A * r(1, 2) * r(2, 1, 2) * Ai * r(2, 1, 2)
        w = w * r(1, 2) * A * r(2, 1) * r(1) * Ai * r(1)
        e = decompose(w)
        assert e.sigma.is_identity()
        assert e.k == condition_C_product(a, n)


def test_condition_C_consistency_small():
    kt = kt_presentation(3)
    for nf in kt.ball(None, 3):
        assert check_condition_C(nf, 3) == condition_C_equiv(nf, 3)


def test_twisted_examples():
    n = 4
    ap, beta = solve_twisted_conjugacy(parse_kword("", n), 1, kt_presentation(n).letters)
    assert ap.letters == () and beta.letters == ()
    a = parse_kword("a1,2 a2,1", n)
    ap, beta = solve_twisted_conjugacy(a, 1, {alpha(1, 2), alpha(2, 1)})
    assert ap.letters == (alpha(1, 2),) and beta.letters == ()
    assert twisted_replay(a, ap, beta, 1, n)


def test_twisted_involution_part():
    n = 4
    a = parse_kword("a3,4", n)  # fixed by tau_1 and an involution, so beta carries it
    ap, beta = solve_twisted_conjugacy(a, 1, kt_presentation(n).letters)
    assert twisted_replay(a, ap, beta, 1, n)
    assert set(beta.letters) <= X_set(n, 1)


def test_twisted_preconditions():
    n = 4
    with pytest.raises(PreconditionError):
        solve_twisted_conjugacy(parse_kword("a1,3", n), 1, kt_presentation(n).letters)
    with pytest.raises(PreconditionError):
        solve_twisted_conjugacy(parse_kword("", n), 1, {alpha(1, 2)})
    with pytest.raises(PreconditionError):
        solve_twisted_conjugacy(parse_kword("a3,4", n), 1, {alpha(1, 2), alpha(2, 1)})


def test_twisted_suite_replays():
    rep = run_suite("twisted-conjugacy", 4, 4)
    assert rep.verdict == PASS


def test_action_table_cases_by_hand():
    assert action_table_expected(2, 3, 1) == ((1, 3), (3, 1))
    assert action_table_expected(2, 3, 2) == ((3, 2), (2, 3))
    assert action_table_expected(2, 3, 3) == ((2, 4), (4, 2))
    assert action_table_expected(2, 5, 3) == ((2, 5), (5, 2))
    assert action_table_expected(2, 5, 4) == ((2, 4), (4, 2))
    assert action_table_expected(2, 5, 5) == ((2, 6), (6, 2))
    for n in range(2, 7):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(1, n):
                    t = Permutation.transposition(n, k)
                    got = alpha_conjugate(t, AlphaLetter(i, j)), alpha_conjugate(t, AlphaLetter(j, i))
                    assert tuple((a.i, a.j) for a in got) == action_table_expected(i, j, k)


def test_fixed_point_family_sets():
    fam = dict(fixed_point_family(5))
    S = frozenset(kt_presentation(5).letters)
    assert fam["S"] == S
    assert fam["U5"] == frozenset(a for a in S if not (a.i <= 3 and a.j >= 4))
    assert fam["V5"] == frozenset(a for a in fam["U5"] if not (a.i >= 4 and a.j <= 3))
    assert fam["W11"] == {alpha(1, 2), alpha(2, 3), alpha(3, 1)}
    assert fam["P2"] == S - {alpha(1, 2), alpha(2, 1)}


def test_suite_examples():
    assert suite_presentation(6, 4).verdict == PASS
    rep = suite_centralizer(3, 4)
    assert rep.verdict == PASS and all(c.failure_count == 0 for c in rep.checks)
    rep = suite_phi_m(4, [3], 4)
    assert rep.verdict == PASS
    assert {c.name for c in rep.checks} >= {"phi3:length_scales", "phi3:a1,2_unreached"}


def test_report_json_deterministic(tmp_path):
    a = run_suite("fixed-points", 4, 2).to_dict()
    b = run_suite("fixed-points", 4, 2).to_dict()
    a.pop("duration_ms"), b.pop("duration_ms")
    assert a == b
    rep = run_suite("centralizer", 3, 3)
    path = rep.write(tmp_path)
    assert path.name == "centralizer-3-3.json"
    data = json.loads(path.read_text())
    assert set(data) >= {"suite", "params", "checks", "duration_ms"}
    assert all(set(c) >= {"name", "verdict"} for c in data["checks"])


def test_failures_carry_counterexamples():
    rep = run_suite("nu", 6, 0)
    assert rep.verdict == FAIL
    bad = [c for c in rep.checks if c.verdict == FAIL]
    assert [c.name for c in bad] == ["nu:order_two"]
    assert all(c.counterexample for c in bad)


def test_hom_classification_suite():
    rep = run_suite("hom-classification", 4, 0, m=3)
    assert rep.verdict == PASS
    rep = run_suite("hom-classification", 5, 0, budget=50)
    assert rep.verdict == "not_verified"


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 3, 1)


@pytest.mark.parametrize("name,n,r", [("serre", 4, 3), ("condition-c", 4, 2), ("twin-embedding", 4, 5),
                                      ("action-table", 5, 0), ("kt6-h", 6, 2), ("fixed-points", 4, 3)])
def test_other_suites_pass(name, n, r):
    assert run_suite(name, n, r).verdict == PASS
