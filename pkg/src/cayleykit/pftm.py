"""Position-faithful one-tape Turing machines with step accounting.

The tape is ⊞ x ⊡^∞: a left marker the head starts on, the input, and
blanks.  A position-faithful program never overwrites ⊞ and never moves
left of it, so the output can be read off as the maximal blank-free prefix
after the marker.  check_position_faithful gives the static verdict; run
enforces the same rules dynamically and charges one step per transition
against a declared time budget.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import (AlphabetError, BudgetExceededError, DomainError,
                     FaithfulnessError)
from .words import BLANK, LEFT_MARKER, Alphabet, Word

MOVE_LEFT = "L"
MOVE_RIGHT = "R"
MOVE_STAY = "S"

_JSON_MARKER = "BOX+"
_JSON_BLANK = "BOX."


@dataclass(frozen=True)
class TimeBudget:
    """Max-steps function by declared complexity class."""

    kind: str
    coeffs: Tuple[int, ...]

    @staticmethod
    def pf_linear(c1: int, c0: int) -> "TimeBudget":
        return TimeBudget("pf-linear", (c1, c0))

    @staticmethod
    def quadratic(c2: int) -> "TimeBudget":
        return TimeBudget("quadratic", (c2,))

    @staticmethod
    def polynomial(coeffs) -> "TimeBudget":
        cs = tuple(int(c) for c in coeffs)
        if any(c < 0 for c in cs):
            raise ValueError("polynomial budget needs nonnegative coefficients")
        return TimeBudget("polynomial", cs)

    def limit(self, n: int) -> int:
        if self.kind == "pf-linear":
            c1, c0 = self.coeffs
            return c1 * n + c0
        if self.kind == "quadratic":
            return self.coeffs[0] * (n + 1) ** 2
        return sum(c * n ** i for i, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class PfProgram:
    """One-tape program: transitions (state, read) -> (write, move, next)."""

    name: str
    states: frozenset
    start: object
    accept: object
    alphabet: Alphabet
    transitions: Dict[Tuple[object, str], Tuple[str, str, object]]

    def __post_init__(self):
        tape_symbols = set(self.alphabet.symbols) | {LEFT_MARKER, BLANK}
        if self.start not in self.states or self.accept not in self.states:
            raise ValueError("start and accept must belong to the state set")
        for (state, read), (write, move, nxt) in self.transitions.items():
            if state not in self.states or nxt not in self.states:
                raise ValueError(f"transition ({state!r},{read!r}) references unknown state")
            if read not in tape_symbols or write not in tape_symbols:
                raise AlphabetError(f"transition ({state!r},{read!r}) uses symbols off the tape alphabet")
            if move not in (MOVE_LEFT, MOVE_RIGHT, MOVE_STAY):
                raise ValueError(f"bad move {move!r}")


@dataclass(frozen=True)
class FaithfulnessVerdict:
    ok: bool
    problems: Tuple[str, ...]


def check_position_faithful(prog: PfProgram) -> FaithfulnessVerdict:
    """Static check of the ⊞ discipline.

    A faithful program never writes ⊞ on an ordinary cell, always rewrites
    ⊞ when reading it, never moves left off ⊞, and has no transitions out
    of the accept state.
    """
    problems: List[str] = []
    for (state, read), (write, move, nxt) in sorted(prog.transitions.items(), key=repr):
        where = f"({state!r}, {read!r})"
        if read == LEFT_MARKER:
            if write != LEFT_MARKER:
                problems.append(f"{where} overwrites the left marker with {write!r}")
            if move == MOVE_LEFT:
                problems.append(f"{where} moves left off the left marker")
        elif write == LEFT_MARKER:
            problems.append(f"{where} writes the left marker onto an ordinary cell")
        if state == prog.accept:
            problems.append(f"{where} leaves the accept state")
    return FaithfulnessVerdict(not problems, tuple(problems))


def run_letters(prog: PfProgram, letters, budget: TimeBudget) -> Tuple[Tuple[str, ...], int]:
    """Simulate from ⊞·input·⊡^∞, head on ⊞.  Returns (output letters, steps).

    Raises FaithfulnessError on a dynamic ⊞ violation, BudgetExceededError
    when the declared budget runs out, DomainError if the program halts in
    a non-accepting state.
    """
    for sym in letters:
        if sym not in prog.alphabet:
            raise AlphabetError(f"input symbol {sym!r} not in program alphabet")
    tape = [LEFT_MARKER] + list(letters)
    head = 0
    state = prog.start
    steps = 0
    max_steps = budget.limit(len(letters))
    while state != prog.accept:
        read = tape[head] if head < len(tape) else BLANK
        rule = prog.transitions.get((state, read))
        if rule is None:
            raise DomainError(
                f"program {prog.name}: no transition from state {state!r} on {read!r}"
            )
        write, move, state = rule
        if head == 0 and (write != LEFT_MARKER or move == MOVE_LEFT):
            raise FaithfulnessError(
                f"program {prog.name}: position-faithfulness violated at the left marker"
            )
        if head > 0 and write == LEFT_MARKER:
            raise FaithfulnessError(
                f"program {prog.name}: wrote the left marker at cell {head}"
            )
        while head >= len(tape):
            tape.append(BLANK)
        tape[head] = write
        assert tape[0] == LEFT_MARKER
        if move == MOVE_LEFT:
            head -= 1
        elif move == MOVE_RIGHT:
            head += 1
        steps += 1
        if steps > max_steps:
            raise BudgetExceededError(
                f"program {prog.name}: exceeded {budget.kind} budget "
                f"({max_steps} steps for input length {len(letters)})"
            )
    out = []
    for cell in tape[1:]:
        if cell == BLANK:
            break
        out.append(cell)
    return tuple(out), steps


def run(prog: PfProgram, word: Word, budget: TimeBudget) -> Tuple[Word, int]:
    out, steps = run_letters(prog, word.letters, budget)
    return Word(prog.alphabet, out), steps


# ---------------------------------------------------------------------------
# Shipped programs


def append_symbol_program(alpha: Alphabet, symbol: str) -> PfProgram:
    """Scan right and write symbol over the first blank."""
    trans = {("scan", LEFT_MARKER): (LEFT_MARKER, MOVE_RIGHT, "scan"),
             ("scan", BLANK): (symbol, MOVE_STAY, "done")}
    for x in alpha.symbols:
        trans[("scan", x)] = (x, MOVE_RIGHT, "scan")
    return PfProgram(f"append-{symbol}", frozenset({"scan", "done"}), "scan", "done",
                     alpha, trans)


def zn1_successor_program() -> PfProgram:
    """Unary integers over a* ∪ a'*: add one.

    Positive or empty input gets an a appended; negative input loses its
    last a'.
    """
    alpha = Alphabet(("a", "a'"))
    trans = {
        ("init", LEFT_MARKER): (LEFT_MARKER, MOVE_RIGHT, "first"),
        ("first", "a"): ("a", MOVE_RIGHT, "pos"),
        ("first", "a'"): ("a'", MOVE_RIGHT, "neg"),
        ("first", BLANK): ("a", MOVE_STAY, "done"),
        ("pos", "a"): ("a", MOVE_RIGHT, "pos"),
        ("pos", BLANK): ("a", MOVE_STAY, "done"),
        ("neg", "a'"): ("a'", MOVE_RIGHT, "neg"),
        ("neg", BLANK): (BLANK, MOVE_LEFT, "erase"),
        ("erase", "a'"): (BLANK, MOVE_STAY, "done"),
    }
    return PfProgram("zn1-succ", frozenset({"init", "first", "pos", "neg", "erase", "done"}),
                     "init", "done", alpha, trans)


def zn1_predecessor_program() -> PfProgram:
    """Unary integers: subtract one (mirror of the successor)."""
    alpha = Alphabet(("a", "a'"))
    trans = {
        ("init", LEFT_MARKER): (LEFT_MARKER, MOVE_RIGHT, "first"),
        ("first", "a'"): ("a'", MOVE_RIGHT, "neg"),
        ("first", "a"): ("a", MOVE_RIGHT, "pos"),
        ("first", BLANK): ("a'", MOVE_STAY, "done"),
        ("neg", "a'"): ("a'", MOVE_RIGHT, "neg"),
        ("neg", BLANK): ("a'", MOVE_STAY, "done"),
        ("pos", "a"): ("a", MOVE_RIGHT, "pos"),
        ("pos", BLANK): (BLANK, MOVE_LEFT, "erase"),
        ("erase", "a"): (BLANK, MOVE_STAY, "done"),
    }
    return PfProgram("zn1-pred", frozenset({"init", "first", "pos", "neg", "erase", "done"}),
                     "init", "done", alpha, trans)


def marker_overwrite_fixture() -> PfProgram:
    """Deliberately broken: writes over ⊞ on its first step."""
    alpha = Alphabet(("a",))
    trans = {("s", LEFT_MARKER): ("a", MOVE_RIGHT, "done")}
    return PfProgram("broken-overwrite", frozenset({"s", "done"}), "s", "done", alpha, trans)


def marker_move_left_fixture() -> PfProgram:
    """Deliberately broken: moves left off ⊞ on its first step."""
    alpha = Alphabet(("a",))
    trans = {("s", LEFT_MARKER): (LEFT_MARKER, MOVE_LEFT, "done")}
    return PfProgram("broken-move-left", frozenset({"s", "done"}), "s", "done", alpha, trans)


# ---------------------------------------------------------------------------
# JSON interchange


def _sym_to_json(sym: str) -> str:
    if sym == LEFT_MARKER:
        return _JSON_MARKER
    if sym == BLANK:
        return _JSON_BLANK
    return sym


def _sym_from_json(sym: str) -> str:
    if sym == _JSON_MARKER:
        return LEFT_MARKER
    if sym == _JSON_BLANK:
        return BLANK
    return sym


def program_to_json(prog: PfProgram) -> dict:
    return {
        "name": prog.name,
        "alphabet": list(prog.alphabet.symbols),
        "states": sorted(repr(s) for s in prog.states),
        "start": repr(prog.start),
        "accept": repr(prog.accept),
        "transitions": [
            {
                "state": repr(state),
                "read": _sym_to_json(read),
                "write": _sym_to_json(write),
                "move": move,
                "next": repr(nxt),
            }
            for (state, read), (write, move, nxt) in sorted(prog.transitions.items(), key=repr)
        ],
    }


def program_from_json(data: dict) -> PfProgram:
    trans = {
        (item["state"], _sym_from_json(item["read"])): (
            _sym_from_json(item["write"]),
            item["move"],
            item["next"],
        )
        for item in data["transitions"]
    }
    return PfProgram(
        data.get("name", ""),
        frozenset(data["states"]),
        data["start"],
        data["accept"],
        Alphabet(tuple(data["alphabet"])),
        trans,
    )
