import pytest
from conftest import words_up_to

from cayleykit.errors import DomainError
from cayleykit.groups.baumslag import (
    BsNormalForm,
    bs_language_dfa,
    bs_parse,
    bs_rep,
)
from cayleykit.oracle import (
    britton_is_identity,
    britton_oracle,
    bs_matrix_oracle,
)
from cayleykit.representation import normal_form, word_problem


def test_frozen_multiplier_examples():
    rep12 = bs_rep(1, 2)
    rep23 = bs_rep(2, 3)
    out, _ = rep12.multipliers["t"].apply(("a", "a"))
    assert out == ("t", "a")
    out, _ = rep23.multipliers["t"].apply(("a",))
    assert out == ("a", "t")
    out, _ = rep12.multipliers["t'"].apply(("t", "a"))
    assert out == ("a", "a")


def test_relators_vanish():
    for p, q in ((1, 2), (1, 3), (2, 3)):
        rep = bs_rep(p, q)
        relator = ("t",) + ("a",) * p + ("t'",) + ("a'",) * q
        assert word_problem(rep, relator), (p, q)
        assert not word_problem(rep, ("t",)), (p, q)
        assert not word_problem(rep, ("a",)), (p, q)


def test_bad_parameters_rejected():
    for p, q in ((0, 2), (2, 2), (3, 2), (-1, 4)):
        with pytest.raises((DomainError, ValueError)):
            bs_rep(p, q)


def test_language_dfa_matches_parser():
    for p, q in ((1, 2), (2, 3)):
        dfa = bs_language_dfa(p, q)
        for w in words_up_to(("a", "a'", "t", "t'"), 5):
            try:
                nf = bs_parse(p, q, w)
                canonical = nf.render() == tuple(w)
            except DomainError:
                canonical = False
            assert dfa.accepts(w) == canonical, w


def test_wp_matches_matrix_oracle_bs12():
    rep = bs_rep(1, 2)
    orc = bs_matrix_oracle(2)
    for w in words_up_to(("a", "a'", "t", "t'"), 5):
        got = word_problem(rep, w)
        want = orc.evaluate(w) == orc.identity
        assert got == want, w


def test_wp_matches_britton_oracle_bs23():
    rep = bs_rep(2, 3)
    orc = britton_oracle(2, 3)
    for w in words_up_to(("a", "a'", "t", "t'"), 4):
        got = word_problem(rep, w)
        want = britton_is_identity(orc.evaluate(w))
        assert got == want, w


def test_conjugate_powers_grow():
    rep = bs_rep(1, 2)
    for n in range(0, 9):
        v = ("t",) * n + ("a",) + ("t'",) * n
        nf, _ = normal_form(rep, v)
        assert len(nf) == 2 ** n, n


def test_normal_form_decode():
    rep = bs_rep(1, 2)
    nf, _ = normal_form(rep, ("t", "a", "t'"))
    decoded = rep.decode(nf.letters)
    assert isinstance(decoded, BsNormalForm)
    assert decoded == bs_parse(1, 2, nf.letters)
