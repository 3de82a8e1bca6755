import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleykit.errors import (
    AlphabetError,
    BudgetExceededError,
    DomainError,
    FaithfulnessError,
)
from cayleykit.pftm import (
    MOVE_LEFT,
    MOVE_RIGHT,
    MOVE_STAY,
    PfProgram,
    TimeBudget,
    append_symbol_program,
    check_position_faithful,
    marker_move_left_fixture,
    marker_overwrite_fixture,
    program_from_json,
    program_to_json,
    run_letters,
    zn1_predecessor_program,
    zn1_successor_program,
)
from cayleykit.words import BLANK, LEFT_MARKER, Alphabet

LINEAR = TimeBudget.pf_linear(2, 6)


def unary(n: int):
    return ("a",) * n if n >= 0 else ("a'",) * (-n)


def test_time_budget_limits():
    assert TimeBudget.pf_linear(3, 5).limit(10) == 35
    assert TimeBudget.quadratic(2).limit(3) == 32
    assert TimeBudget.polynomial((1, 0, 1)).limit(4) == 17
    with pytest.raises(ValueError):
        TimeBudget.polynomial((1, -2))


def test_append_program():
    alpha = Alphabet(("a", "b"))
    prog = append_symbol_program(alpha, "b")
    out, steps = run_letters(prog, ("a", "a"), LINEAR)
    assert out == ("a", "a", "b")
    assert steps == 4  # marker + two letters + write


def test_zn1_programs_exact_on_range():
    succ = zn1_successor_program()
    pred = zn1_predecessor_program()
    for n in range(-25, 26):
        out, _ = run_letters(succ, unary(n), LINEAR)
        assert out == unary(n + 1), n
        out, _ = run_letters(pred, unary(n), LINEAR)
        assert out == unary(n - 1), n


def test_zn1_programs_pass_static_check():
    for prog in (zn1_successor_program(), zn1_predecessor_program()):
        verdict = check_position_faithful(prog)
        assert verdict.ok and verdict.problems == ()


def test_broken_fixtures_rejected_statically():
    v1 = check_position_faithful(marker_overwrite_fixture())
    assert not v1.ok and any("overwrites" in p for p in v1.problems)
    v2 = check_position_faithful(marker_move_left_fixture())
    assert not v2.ok and any("moves left" in p for p in v2.problems)


def test_broken_fixtures_rejected_dynamically():
    with pytest.raises(FaithfulnessError):
        run_letters(marker_overwrite_fixture(), (), LINEAR)
    with pytest.raises(FaithfulnessError):
        run_letters(marker_move_left_fixture(), (), LINEAR)


def test_budget_enforced():
    tight = TimeBudget.pf_linear(1, 0)
    with pytest.raises(BudgetExceededError):
        run_letters(zn1_successor_program(), unary(5), tight)


def test_missing_transition_is_domain_error():
    prog = zn1_successor_program()
    with pytest.raises(AlphabetError):
        run_letters(prog, ("b",), LINEAR)
    # mixed-sign input reaches a state with no rule
    with pytest.raises(DomainError):
        run_letters(prog, ("a", "a'"), LINEAR)


def test_writing_marker_is_faithfulness_error():
    alpha = Alphabet(("a",))
    prog = PfProgram(
        "bad-writer", frozenset({"s", "w", "done"}), "s", "done", alpha,
        {("s", LEFT_MARKER): (LEFT_MARKER, MOVE_RIGHT, "w"),
         ("w", "a"): (LEFT_MARKER, MOVE_STAY, "done"),
         ("w", BLANK): (BLANK, MOVE_STAY, "done")})
    assert not check_position_faithful(prog).ok
    with pytest.raises(FaithfulnessError):
        run_letters(prog, ("a",), LINEAR)


def test_program_validation():
    alpha = Alphabet(("a",))
    with pytest.raises(ValueError):
        PfProgram("p", frozenset({"s"}), "s", "t", alpha, {})
    with pytest.raises(AlphabetError):
        PfProgram("p", frozenset({"s", "t"}), "s", "t", alpha,
                  {("s", "z"): ("a", MOVE_STAY, "t")})
    with pytest.raises(ValueError):
        PfProgram("p", frozenset({"s", "t"}), "s", "t", alpha,
                  {("s", "a"): ("a", "X", "t")})


def test_accept_state_must_halt():
    alpha = Alphabet(("a",))
    prog = PfProgram(
        "spinner", frozenset({"s"}), "s", "s", alpha,
        {("s", LEFT_MARKER): (LEFT_MARKER, MOVE_STAY, "s")})
    verdict = check_position_faithful(prog)
    assert not verdict.ok and any("accept" in p for p in verdict.problems)


def test_json_round_trip():
    for prog in (zn1_successor_program(), zn1_predecessor_program()):
        data = program_to_json(prog)
        # marker and blank are encoded as printable tags
        reads = {t["read"] for t in data["transitions"]}
        assert LEFT_MARKER not in reads and BLANK not in reads
        prog2 = program_from_json(data)
        for n in range(-6, 7):
            assert run_letters(prog2, unary(n), LINEAR)[0] == \
                run_letters(prog, unary(n), LINEAR)[0]


@given(st.integers(min_value=-40, max_value=40))
def test_successor_predecessor_invert(n):
    succ = zn1_successor_program()
    pred = zn1_predecessor_program()
    up, _ = run_letters(succ, unary(n), LINEAR)
    down, _ = run_letters(pred, up, LINEAR)
    assert down == unary(n)
