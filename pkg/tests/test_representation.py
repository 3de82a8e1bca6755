import json

import pytest

from cayleykit.automata import Dfa
from cayleykit.errors import (
    AlphabetError,
    BudgetExceededError,
    MembershipError,
)
from cayleykit.groups.zn import zn_rep
from cayleykit.pftm import TimeBudget
from cayleykit.representation import (
    PF_LINEAR,
    POLYNOMIAL,
    CayleyRep,
    GeneratorSet,
    StepReport,
    change_generators,
    enumerate_normal_forms,
    generator_set,
    load_manifest,
    multiply_by_generator,
    native_multiplier,
    normal_form,
    regular_language,
    rep_manifest,
    save_manifest,
    word_problem,
)
from cayleykit.words import Alphabet, Word, alphabet


def test_generator_set_pairs_and_inverse():
    gens = generator_set(("a", "a'"), ("t", "t'"))
    assert gens.symbols == ("a", "a'", "t", "t'")
    assert gens.inverse("a") == "a'" and gens.inverse("a'") == "a"
    assert gens.inverse("t'") == "t"
    with pytest.raises(AlphabetError):
        gens.inverse("z")


def test_generator_set_self_inverse():
    gens = generator_set(("a", "a'"), ("b", "b"))
    assert gens.symbols == ("a", "a'", "b")
    assert gens.inverse("b") == "b"


def _mod3_rep():
    """Z/3 over one generator, as a minimal native rep for plumbing tests."""
    alpha = alphabet("a")
    dfa = Dfa(("a",), {0, 1, 2}, 0, {0, 1, 2},
              {(0, "a"): 1, (1, "a"): 2})

    def times_a(letters):
        n = (len(letters) + 1) % 3
        return ("a",) * n, len(letters) + 1

    def times_a_inv(letters):
        n = (len(letters) - 1) % 3
        return ("a",) * n, len(letters) + 1

    budget = TimeBudget.pf_linear(2, 3)
    gens = generator_set(("a", "a'"))
    return CayleyRep(
        name="mod3", alphabet=alpha, language=regular_language(dfa),
        identity_word=(), generators=gens,
        multipliers={"a": native_multiplier("a", times_a, budget),
                     "a'": native_multiplier("a'", times_a_inv, budget)},
        time_class=PF_LINEAR, quasigeodesic_c=1.0)


def test_rep_requires_multipliers_for_every_generator():
    rep = _mod3_rep()
    with pytest.raises(ValueError):
        CayleyRep(name="broken", alphabet=rep.alphabet, language=rep.language,
                  identity_word=(), generators=rep.generators,
                  multipliers={"a": rep.multipliers["a"]},
                  time_class=PF_LINEAR)


def test_rep_rejects_identity_word_outside_language():
    rep = _mod3_rep()
    with pytest.raises(ValueError):
        CayleyRep(name="broken", alphabet=rep.alphabet, language=rep.language,
                  identity_word=("a", "a", "a"), generators=rep.generators,
                  multipliers=rep.multipliers, time_class=PF_LINEAR)


def test_pf_linear_rep_rejects_quadratic_budget():
    rep = _mod3_rep()
    bad = native_multiplier("a", rep.multipliers["a"].native,
                            TimeBudget.quadratic(2))
    with pytest.raises(ValueError):
        CayleyRep(name="broken", alphabet=rep.alphabet, language=rep.language,
                  identity_word=(), generators=rep.generators,
                  multipliers={"a": bad, "a'": rep.multipliers["a'"]},
                  time_class=PF_LINEAR)


def test_normal_form_charges_multiplier_plus_fetch():
    rep = _mod3_rep()
    w, report = normal_form(rep, ("a", "a", "a", "a"))
    assert w.letters == ("a",)
    labels = [label for label, _ in report.parts]
    assert labels == ["a", "fetch-1", "a", "fetch-2", "a", "fetch-3",
                      "a", "fetch-4"]
    fetch_total = sum(n for label, n in report.parts if label.startswith("fetch"))
    assert fetch_total == 2 * (1 + 2 + 3 + 4)
    assert report.total == sum(n for _, n in report.parts)
    assert report.budget_certified


def test_word_problem_and_rejection_of_foreign_letters():
    rep = _mod3_rep()
    assert word_problem(rep, ())
    assert word_problem(rep, ("a", "a", "a"))
    assert not word_problem(rep, ("a",))
    assert word_problem(rep, ("a", "a'"))
    with pytest.raises(AlphabetError):
        word_problem(rep, ("z",))


def test_multiply_by_generator_checks_membership():
    rep = _mod3_rep()
    w, report = multiply_by_generator(rep, Word(rep.alphabet, ("a",)), "a")
    assert w.letters == ("a", "a")
    assert report.total == 2
    with pytest.raises(MembershipError):
        multiply_by_generator(rep, Word(rep.alphabet, ("a",) * 5), "a")
    with pytest.raises(AlphabetError):
        multiply_by_generator(rep, rep.identity(), "z")


def test_native_budget_enforced():
    alpha = alphabet("a")
    dfa = Dfa(("a",), {0}, 0, {0}, {(0, "a"): 0})

    def slow(letters):
        return letters, 10 * len(letters) + 50

    budget = TimeBudget.pf_linear(1, 1)
    gens = generator_set(("a", "a"))
    rep = CayleyRep(
        name="slow", alphabet=alpha, language=regular_language(dfa),
        identity_word=(), generators=gens,
        multipliers={"a": native_multiplier("a", slow, budget)},
        time_class=PF_LINEAR)
    with pytest.raises(BudgetExceededError):
        normal_form(rep, ("a",) * 4)


def test_enumerate_normal_forms_bfs():
    rep = _mod3_rep()
    forms = [w.letters for w in enumerate_normal_forms(rep, 4)]
    assert forms[0] == ()
    assert len(forms) == 3  # the whole group is reached
    assert len(set(forms)) == 3


def test_strict_normal_form_needs_constant_for_polynomial():
    rep = _mod3_rep()
    bare = CayleyRep(
        name="mod3-poly", alphabet=rep.alphabet, language=rep.language,
        identity_word=(), generators=rep.generators,
        multipliers=rep.multipliers, time_class=POLYNOMIAL,
        quasigeodesic_c=None)
    w, report = normal_form(bare, ("a", "a"))
    assert w.letters == ("a", "a") and not report.budget_certified
    with pytest.raises(BudgetExceededError):
        normal_form(bare, ("a", "a"), strict=True)


def test_change_generators_composes_multipliers():
    rep = zn_rep()
    double = change_generators(rep, {"d": ("a", "a")})
    assert set(double.generators.symbols) == {"d", "d'"}
    w, _ = normal_form(double, ("d", "d", "d'"))
    assert w.letters == ("a", "a")
    assert word_problem(double, ("d", "d'"))


def test_change_generators_rejects_unknown_bases():
    rep = zn_rep()
    with pytest.raises(AlphabetError):
        change_generators(rep, {"d": ("q",)})
    with pytest.raises(ValueError):
        change_generators(rep, {"d": ()})


def test_manifest_round_trip(tmp_path):
    rep = zn_rep()
    m = rep_manifest(rep)
    assert m["name"] == "zn:1"
    assert m["classTag"] == "REG"
    assert m["timeClass"] == PF_LINEAR
    assert m["identityWord"] == "eps"
    assert {g["name"] for g in m["generators"]} == {"a"}
    assert m["multiplierBackends"] == {"a": "tm", "a'": "tm"}
    path = tmp_path / "zn1.json"
    save_manifest(rep, str(path))
    assert load_manifest(str(path)) == m
    assert json.loads(path.read_text())["name"] == "zn:1"


def test_step_report_total():
    r = StepReport(input_length=3)
    r.charge("x", 4)
    r.charge("y", 6)
    assert r.total == 10
