"""The integers with unary normal forms and Turing-machine multipliers.

Normal forms are a^n for n > 0, a'^(-n) for n < 0, and the empty word
for zero.  This is the one built-in rep whose multipliers run on the
position-faithful TM backend: the successor and predecessor programs
are single left-to-right sweeps, so each stays inside a pf-linear
step budget.
"""

from typing import Tuple

from ..automata import Dfa
from ..errors import ParseError
from ..oracle import GroupOracle, int_oracle
from ..pftm import TimeBudget, zn1_predecessor_program, zn1_successor_program
from ..representation import (CayleyRep, GeneratorSet, PF_LINEAR,
                              regular_language, tm_multiplier)
from ..words import Alphabet

SYMBOLS = ("a", "a'")


def zn_encode(n: int) -> Tuple[str, ...]:
    return ("a",) * n if n >= 0 else ("a'",) * (-n)


def zn_decode(letters) -> int:
    letters = tuple(letters)
    if not letters:
        return 0
    sym = letters[0]
    if sym not in SYMBOLS or any(x != sym for x in letters):
        raise ParseError(f"not a unary integer: {' '.join(letters)!r}")
    return len(letters) if sym == "a" else -len(letters)


def zn_language_dfa() -> Dfa:
    """a* union a'*."""
    trans = {("0", "a"): "+", ("+", "a"): "+",
             ("0", "a'"): "-", ("-", "a'"): "-"}
    return Dfa(SYMBOLS, frozenset("0+-"), "0", frozenset("0+-"), trans)


def zn_rep() -> CayleyRep:
    # Both programs sweep to the blank and touch at most two more cells.
    budget = TimeBudget.pf_linear(1, 4)
    return CayleyRep(
        name="zn:1",
        alphabet=Alphabet(SYMBOLS),
        language=regular_language(zn_language_dfa()),
        identity_word=(),
        generators=GeneratorSet((("a", "a'"),)),
        multipliers={
            "a": tm_multiplier("a", zn1_successor_program(), budget),
            "a'": tm_multiplier("a'", zn1_predecessor_program(), budget),
        },
        time_class=PF_LINEAR,
        quasigeodesic_c=1.0,
        constants={"K": 1.0},
        decode=zn_decode,
    )


def zn_oracle() -> GroupOracle:
    return int_oracle()
