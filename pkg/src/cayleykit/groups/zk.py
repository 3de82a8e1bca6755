"""The additive group Z[1/k] encoded by base-k digit words.

An element d / k^l is written least-significant-fractional-digit first:

    [-]? f_0 f_1 ... f_{l-1} ★ i_0 i_1 ...

where f_j is the digit of weight k^(j-l), ★ is the radix marker, and the
i_j are the integer digits, least significant first.  Canonical words have
a nonzero deepest fractional digit f_0, a nonzero most significant integer
digit, and zero written as the bare marker.  Adding the four generator
constants +1, -1, +1/k, -1/k is realized by synchronous digit transducers
with carry and borrow chains; subtraction machines are the swapped
(converse) adders, which is sound because adding a constant is injective.
"""

from fractions import Fraction
from typing import List, Tuple

from ..automata import Dfa, SyncTransducer, make_transducer, restrict_input
from ..errors import DomainError, ParseError
from ..pftm import TimeBudget
from ..representation import (PF_LINEAR, CayleyRep, GeneratorSet, LanguageSpec,
                              MultiplierFn, regular_language, transducer_multiplier)
from ..words import PAD, Alphabet

MARK = "★"
MINUS = "-"


def zk_alphabet(k: int) -> Alphabet:
    return Alphabet((MINUS, MARK) + tuple(str(d) for d in range(k)))


# ---------------------------------------------------------------------------
# Encoding


def encode_zk(k: int, x: Fraction) -> Tuple[str, ...]:
    """Canonical word for x; x's denominator must divide a power of k."""
    x = Fraction(x)
    if x == 0:
        return (MARK,)
    mag = abs(x)
    depth = 0
    power = 1
    while power % mag.denominator:
        power *= k
        depth += 1
        if depth > 64 * mag.denominator.bit_length():
            raise DomainError(f"{x} is not of the form d/{k}^l")
    n = mag.numerator * (power // mag.denominator)
    digits: List[str] = []
    while n:
        n, r = divmod(n, k)
        digits.append(str(r))
    while len(digits) < depth:
        digits.append("0")
    word = digits[:depth] + [MARK] + digits[depth:]
    if x < 0:
        word.insert(0, MINUS)
    return tuple(word)


def decode_zk(k: int, letters) -> Fraction:
    letters = list(letters)
    sign = 1
    if letters and letters[0] == MINUS:
        sign = -1
        letters = letters[1:]
    if MARK not in letters:
        raise ParseError("missing radix marker")
    at = letters.index(MARK)
    digits = letters[:at] + letters[at + 1:]
    depth = at
    total = 0
    for i, d in enumerate(reversed(digits)):
        total = total * k + int(d)
    return sign * Fraction(total, k ** depth)


def zk_language_dfa(k: int) -> Dfa:
    """Canonical words: optional sign, nonzero-deep fraction, marker,
    integer digits with nonzero most significant digit."""
    digits = [str(d) for d in range(k)]
    nz = digits[1:]
    symbols = (MINUS, MARK) + tuple(digits)
    t = {}
    # positive side
    t[("q0", MINUS)] = "qs"
    for d in nz:
        t[("q0", d)] = "qf"
        t[("qs", d)] = "qf-"
    t[("q0", MARK)] = "qm"       # zero or positive integer
    t[("qs", MARK)] = "qm-0"     # negative integer, digits required
    for d in digits:
        t[("qf", d)] = "qf"
        t[("qf-", d)] = "qf-"
    t[("qf", MARK)] = "qm"
    t[("qf-", MARK)] = "qm-"
    for state, lo, hi in (("qm", "qi0", "qi1"), ("qm-", "qi0-", "qi1-"),
                          ("qm-0", "qi0-", "qi1-")):
        for d in digits:
            t[(state, d)] = hi if d != "0" else lo
            t[(lo, d)] = hi if d != "0" else lo
            t[(hi, d)] = hi if d != "0" else lo
    states = {"q0", "qs", "qf", "qf-", "qm", "qm-", "qm-0",
              "qi0", "qi1", "qi0-", "qi1-"}
    accepting = {"qm", "qm-", "qi1", "qi1-"}
    return Dfa(symbols, states, "q0", accepting, t)


# ---------------------------------------------------------------------------
# The +1 adder


def plus_one_transducer(k: int) -> SyncTransducer:
    """(u, v) with decode(v) = decode(u) + 1.

    Branches: carry-increment of a nonnegative integer part; borrow
    decrement of a negative one (with most-significant-1 stripping);
    the exact erase -1 -> 0; and the sign flip -f -> 1-f on pure
    fractions, realized by guess-ahead digit complementing.
    """
    D = [str(i) for i in range(k)]
    nz = D[1:]
    km1 = D[-1]
    T = set()

    # A: nonnegative input, increment the integer part
    for d in nz:
        T.add(("start", (d, d), "A.f"))
    for d in D:
        T.add(("A.f", (d, d), "A.f"))
    T.add(("start", (MARK, MARK), "A.int"))
    T.add(("A.f", (MARK, MARK), "A.int"))
    T.add(("A.int", (km1, "0"), "A.int"))
    for d in D[:-1]:
        T.add(("A.int", (d, str(int(d) + 1)), "A.done"))
    T.add(("A.int", (PAD, "1"), "A.term"))
    for d in D:
        T.add(("A.done", (d, d), "A.done"))

    # B: negative input with integer part, borrow-decrement the magnitude
    T.add(("start", (MINUS, MINUS), "B.sign"))
    for d in nz:
        T.add(("B.sign", (d, d), "B.f"))
    for d in D:
        T.add(("B.f", (d, d), "B.f"))
    T.add(("B.sign", (MARK, MARK), ("B.bor", False)))
    T.add(("B.f", (MARK, MARK), ("B.bor", True)))
    for flag in (False, True):
        T.add((("B.bor", flag), ("0", km1), ("B.bor", True)))
        for d in D[2:]:
            T.add((("B.bor", flag), (d, str(int(d) - 1)), "B.done"))
        T.add((("B.bor", flag), ("1", "0"), "B.mid0"))
    T.add((("B.bor", True), ("1", PAD), "B.term"))
    for d in D:
        T.add(("B.mid0", (d, d), "B.done"))
        T.add(("B.done", (d, d), "B.done"))

    # C: exact erase, "- ★ 1" -> "★"
    T.add(("start", (MINUS, MARK), "C.1"))
    T.add(("C.1", (MARK, PAD), "C.2"))
    T.add(("C.2", ("1", PAD), "C.term"))

    # D: sign flip on "- F ★": complement digits one cell ahead
    for y in nz:
        T.add(("start", (MINUS, y), ("D.first", y)))
    for g in D:
        for d in nz:
            if g == str(k - int(d)):
                for y in D:
                    T.add((("D.first", g), (d, y), ("D.rest", y)))
                T.add((("D.first", g), (d, MARK), "D.end"))
        for d in D:
            if g == str(k - 1 - int(d)):
                for y in D:
                    T.add((("D.rest", g), (d, y), ("D.rest", y)))
                T.add((("D.rest", g), (d, MARK), "D.end"))
    T.add(("D.end", (MARK, PAD), "D.term"))

    states = {src for src, _, _ in T} | {dst for _, _, dst in T}
    accepting = {"A.done", "A.term", "B.done", "B.term", "C.term", "D.term"}
    return make_transducer(zk_alphabet(k), states, "start", accepting, T,
                           name=f"zk{k}+1")


# ---------------------------------------------------------------------------
# The +1/k adder


def plus_unit_fraction_transducer(k: int) -> SyncTransducer:
    """(u, v) with decode(v) = decode(u) + 1/k.

    The shallowest fractional digit is targeted by a nondeterministic
    guess-the-last-digit step verified against the marker; insertion and
    deletion of a digit next to the marker shift the remaining word by one
    cell, handled with one-symbol lag or guess-ahead buffers.
    """
    D = [str(i) for i in range(k)]
    nz = D[1:]
    km1 = D[-1]
    T = set()

    # E: nonnegative with no fraction: insert "1" before the marker
    T.add(("start", (MARK, "1"), "E.lagm"))
    for d in D:
        T.add(("E.lagm", (d, MARK), ("E.lag", d)))
    T.add(("E.lagm", (PAD, MARK), "E.term"))
    for p in D:
        for d in D:
            T.add((("E.lag", p), (d, p), ("E.lag", d)))
        T.add((("E.lag", p), (PAD, p), "E.term"))

    # P: positive fraction, add 1 at the shallowest digit
    for d in nz:
        T.add(("start", (d, d), "P.f"))
        if d != km1:
            T.add(("start", (d, str(int(d) + 1)), "P.verm"))
    for d in D:
        T.add(("P.f", (d, d), "P.f"))
        if d != km1:
            T.add(("P.f", (d, str(int(d) + 1)), "P.verm"))
    T.add(("P.f", (km1, "0"), "P.carrym"))
    T.add(("P.verm", (MARK, MARK), "P.copyI"))
    for d in D:
        T.add(("P.copyI", (d, d), "P.copyI"))
    T.add(("P.carrym", (MARK, MARK), "P.intc"))
    T.add(("P.intc", (km1, "0"), "P.intc"))
    for d in D[:-1]:
        T.add(("P.intc", (d, str(int(d) + 1)), "P.copyI"))
    T.add(("P.intc", (PAD, "1"), "P.term"))

    # I: positive "k-1 ★ I": fraction disappears, carry into the integer
    T.add(("start", (km1, MARK), "I.pre"))
    for y in D:
        T.add(("I.pre", (MARK, y), ("I.carry", y)))
    for g in D:
        if g == "0":
            for y in D:
                T.add((("I.carry", g), (km1, y), ("I.carry", y)))
        for x in D[:-1]:
            if g == str(int(x) + 1):
                for y in D:
                    T.add((("I.carry", g), (x, y), ("I.copy", y)))
                T.add((("I.carry", g), (x, PAD), "I.term"))
        for y in D:
            T.add((("I.copy", g), (g, y), ("I.copy", y)))
        T.add((("I.copy", g), (g, PAD), "I.term"))

    # N: negative, sign kept: subtract 1/k from the magnitude
    T.add(("start", (MINUS, MINUS), "N.sign"))
    for d in nz:
        T.add(("N.sign", (d, d), "N.f"))
        if int(d) >= 2:
            T.add(("N.sign", (d, str(int(d) - 1)), "N.verm"))
    T.add(("N.sign", ("1", MARK), "N.del"))
    T.add(("N.sign", (MARK, km1), "N.ins"))
    for d in D:
        T.add(("N.f", (d, d), "N.f"))
        if d != "0":
            T.add(("N.f", (d, str(int(d) - 1)), "N.verm"))
    T.add(("N.f", ("0", km1), "N.borm"))
    T.add(("N.verm", (MARK, MARK), "N.copyI"))
    for d in D:
        T.add(("N.copyI", (d, d), "N.copyI"))
    T.add(("N.borm", (MARK, MARK), "N.intb"))
    T.add(("N.intb", ("0", km1), "N.intb"))
    for d in D[2:]:
        T.add(("N.intb", (d, str(int(d) - 1)), "N.copyI"))
    T.add(("N.intb", ("1", "0"), "N.mid0"))
    T.add(("N.intb", ("1", PAD), "N.term"))
    for d in D:
        T.add(("N.mid0", (d, d), "N.copyI"))

    # N.del: "- 1 ★ I" -> "- ★ I", guess-ahead copy of the integer part
    for y in D:
        T.add(("N.del", (MARK, y), ("N.delv", y)))
    for g in D:
        for y in D:
            T.add((("N.delv", g), (g, y), ("N.delv", y)))
        T.add((("N.delv", g), (g, PAD), "N.term"))

    # N.ins: "- ★ I" -> "- k-1 ★ J", one-symbol lag with borrow on J
    def lag_target(x):
        if x == "0":
            return ("N.lag", km1, "bor")
        if x == "1":
            return ("N.lag", "0", "strip")
        return ("N.lag", str(int(x) - 1), "copy")

    for x in D:
        T.add(("N.ins", (x, MARK), lag_target(x)))
    for p in D:
        for mode in ("bor", "strip", "copy"):
            src = ("N.lag", p, mode)
            if mode == "bor":
                for x in D:
                    T.add((src, (x, p), lag_target(x)))
            else:
                for x in D:
                    T.add((src, (x, p), ("N.lag", x, "copy")))
                if mode == "copy":
                    T.add((src, (PAD, p), "N.term"))

    # NF: negative flip "- F ★" with f_{-1} = 0: complement to positive
    for y in nz:
        T.add(("start", (MINUS, y), ("NF.v1", y)))
    for g in D:
        for d in nz:
            if g == str(k - int(d)):
                for y in D:
                    T.add((("NF.v1", g), (d, y), ("NF.v", y)))
                T.add((("NF.v1", g), (d, "0"), "NF.v0"))
        for d in D:
            if g == str(k - 1 - int(d)):
                for y in D:
                    T.add((("NF.v", g), (d, y), ("NF.v", y)))
                T.add((("NF.v", g), (d, "0"), "NF.v0"))
    T.add(("NF.v0", ("0", MARK), "NF.end"))
    T.add(("NF.end", (MARK, PAD), "NF.term"))

    # NE: exact erase "- 1 ★" -> "★"
    T.add(("start", (MINUS, MARK), "NE.1"))
    T.add(("NE.1", ("1", PAD), "NE.2"))
    T.add(("NE.2", (MARK, PAD), "NE.term"))

    states = {src for src, _, _ in T} | {dst for _, _, dst in T}
    accepting = {"E.term", "P.copyI", "P.term", "I.term", ("I.carry", "1"),
                 "N.copyI", "N.term", "NF.term", "NE.term"}
    accepting.add(("N.lag", "0", "strip"))
    return make_transducer(zk_alphabet(k), states, "start", accepting, T,
                           name=f"zk{k}+1/{k}")


# ---------------------------------------------------------------------------
# Digit-scan addition and fixed-rational multiplication helpers


def _parse_digits(k: int, letters) -> Tuple[int, List[int], int]:
    """(sign, digit list least-significant first, fraction depth)."""
    letters = list(letters)
    sign = 1
    if letters and letters[0] == MINUS:
        sign = -1
        letters = letters[1:]
    if MARK not in letters:
        raise ParseError("missing radix marker")
    at = letters.index(MARK)
    digits = [int(d) for d in letters[:at] + letters[at + 1:]]
    return sign, digits, at


def _render_digits(sign: int, digits: List[int], depth: int) -> Tuple[str, ...]:
    digits = list(digits)
    while depth > 0 and digits and digits[0] == 0:
        digits.pop(0)
        depth -= 1
    if not digits and depth > 0:
        depth = 0
    while len(digits) > depth and digits[-1] == 0:
        digits.pop()
    while len(digits) < depth:
        digits.append(0)
    if not digits:
        return (MARK,)
    word = [str(d) for d in digits[:depth]] + [MARK] + [str(d) for d in digits[depth:]]
    if sign < 0:
        word.insert(0, MINUS)
    return tuple(word)


def zk_add(k: int, u, v) -> Tuple[str, ...]:
    """Digit addition of two encoded values, aligned at the radix marker.

    Pure digit arithmetic: same-sign operands add with a carry sweep,
    mixed signs subtract the smaller magnitude with a borrow sweep.
    """
    s1, d1, f1 = _parse_digits(k, u)
    s2, d2, f2 = _parse_digits(k, v)
    depth = max(f1, f2)
    d1 = [0] * (depth - f1) + d1
    d2 = [0] * (depth - f2) + d2
    width = max(len(d1), len(d2))
    d1 += [0] * (width - len(d1))
    d2 += [0] * (width - len(d2))

    if s1 == s2:
        out = []
        carry = 0
        for a, b in zip(d1, d2):
            carry, digit = divmod(a + b + carry, k)
            out.append(digit)
        if carry:
            out.append(carry)
        return _render_digits(s1, out, depth)

    big, small, sign = d1, d2, s1
    for a, b in zip(reversed(d1), reversed(d2)):
        if a != b:
            if a < b:
                big, small, sign = d2, d1, s2
            break
    else:
        return (MARK,)
    out = []
    borrow = 0
    for a, b in zip(big, small):
        digit = a - b - borrow
        borrow = 0
        if digit < 0:
            digit += k
            borrow = 1
        out.append(digit)
    return _render_digits(sign, out, depth)


def zk_mul(k: int, letters, t: Fraction) -> Tuple[str, ...]:
    """Multiply an encoded value by a fixed rational t = n / k^m."""
    t = Fraction(t)
    if t == 0:
        return (MARK,)
    shift = 0
    power = 1
    while power % t.denominator:
        power *= k
        shift += 1
        if shift > 64 * t.denominator.bit_length():
            raise DomainError(f"{t} is not of the form n/{k}^m")
    n = abs(t.numerator) * (power // t.denominator)
    sign, digits, depth = _parse_digits(k, letters)
    if t.numerator < 0:
        sign = -sign
    out = []
    carry = 0
    for d in digits:
        carry, digit = divmod(d * n + carry, k)
        out.append(digit)
    while carry:
        carry, digit = divmod(carry, k)
        out.append(digit)
    return _render_digits(sign, out, depth + shift)


# ---------------------------------------------------------------------------
# Representations


def zk_rep(k: int) -> CayleyRep:
    """(Z[1/k], +) with generators 1, -1, 1/k, -1/k as digit transducers."""
    if k < 2:
        raise ValueError("k must be at least 2")
    unit = f"1/{k}"
    language = zk_language_dfa(k)
    plus1 = restrict_input(plus_one_transducer(k), language, name=f"zk{k}+1")
    plusu = restrict_input(plus_unit_fraction_transducer(k), language,
                           name=f"zk{k}+1/{k}")
    gens = GeneratorSet((("1", "1'"), (unit, unit + "'")))
    multipliers = {
        "1": transducer_multiplier("1", plus1),
        "1'": transducer_multiplier("1'", plus1.swapped(name=f"zk{k}-1")),
        unit: transducer_multiplier(unit, plusu),
        unit + "'": transducer_multiplier(unit + "'", plusu.swapped(name=f"zk{k}-1/{k}")),
    }
    return CayleyRep(
        name=f"zk:{k}",
        alphabet=zk_alphabet(k),
        language=regular_language(zk_language_dfa(k)),
        identity_word=(MARK,),
        generators=gens,
        multipliers=multipliers,
        time_class=PF_LINEAR,
        constants={"K": max(plus1.state_count, plusu.state_count)},
        decode=lambda letters, k=k: decode_zk(k, letters),
    )
