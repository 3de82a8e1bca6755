"""The lamplighter group Z2 wr Z over the alphabet {a, a', b, ↑, #}.

An element is a finite set of lit lamps together with the lamplighter's
position z.  With l = min({z} union lit) and r = max({z} union lit), its
word is

    A(l) # u # a'^(r-z)

where A(l) writes l as a-letters (a' for negative l) and u is the left to
right scan of positions l..r: b at a lit lamp, ↑ right after it when the
lamplighter stands there, and a for each step to the next position.  The
scan segment at one position is therefore b, ↑, b↑, or empty, with the
first and last segments nonempty so the window is tight.  The trailing
a'-run must repeat the number of scan steps right of ↑, a matched count
that a finite automaton cannot enforce, so membership is a one-counter
check layered over the structural automaton.

Right multiplication only touches the neighbourhood of ↑, which keeps the
generator actions synchronous: ×b toggles the b adjacent to ↑ (a one-cell
insertion or deletion), ×a moves ↑ one scan position right with small
boundary shifts at the window edges, and ×a' is the swapped converse of
×a, sound because right multiplication is injective.
"""

from typing import Iterable, List, Optional, Set, Tuple

from ..automata import (Dfa, SyncTransducer, make_transducer, restrict_input,
                        restrict_output)
from ..errors import ParseError
from ..oracle import LamplighterElement
from ..representation import (ONE_COUNTER, PF_LINEAR, CayleyRep, GeneratorSet,
                              LanguageSpec, transducer_multiplier)
from ..words import PAD, Alphabet

UP = "↑"
HASH = "#"

SYMBOLS = ("a", "a'", "b", UP, HASH)


def lamplighter_alphabet() -> Alphabet:
    return Alphabet(SYMBOLS)


# ---------------------------------------------------------------------------
# Encoding


def lamplighter_encode(g: LamplighterElement) -> Tuple[str, ...]:
    lo = min({g.pos} | set(g.lamps))
    hi = max({g.pos} | set(g.lamps))
    out: List[str] = []
    out.extend(["a"] * lo if lo >= 0 else ["a'"] * (-lo))
    out.append(HASH)
    for i in range(lo, hi + 1):
        if i in g.lamps:
            out.append("b")
        if i == g.pos:
            out.append(UP)
        if i < hi:
            out.append("a")
    out.append(HASH)
    out.extend(["a'"] * (hi - g.pos))
    return tuple(out)


def lamplighter_decode(letters: Tuple[str, ...]) -> LamplighterElement:
    """Inverse of lamplighter_encode; rejects words outside the language."""
    letters = tuple(letters)
    try:
        first = letters.index(HASH)
        second = letters.index(HASH, first + 1)
    except ValueError:
        raise ParseError("expected two # delimiters", 0)
    prefix, scan, suffix = letters[:first], letters[first + 1:second], letters[second + 1:]
    if set(prefix) not in ({"a"}, {"a'"}, set()):
        raise ParseError("prefix must be a run of a or of a'", 0)
    lo = len(prefix) if set(prefix) != {"a'"} else -len(prefix)
    if any(s != "a'" for s in suffix):
        raise ParseError("suffix must be a run of a'", second + 1)
    lamps: Set[int] = set()
    pos: Optional[int] = None
    i = lo
    prev = None
    for j, s in enumerate(scan):
        if s == "a":
            i += 1
        elif s == "b":
            if prev in ("b", UP):
                raise ParseError("scan position emits at most one b, before ↑", first + 1 + j)
            lamps.add(i)
        elif s == UP:
            if pos is not None:
                raise ParseError("more than one ↑", first + 1 + j)
            pos = i
        else:
            raise ParseError(f"unexpected {s!r} in scan", first + 1 + j)
        prev = s
    if pos is None:
        raise ParseError("scan lacks ↑", first)
    if scan and (scan[0] == "a" or scan[-1] == "a"):
        raise ParseError("window not tight: empty boundary position", first + 1)
    hi = i
    if len(suffix) != hi - pos:
        raise ParseError("trailing a'-run does not match steps right of ↑", second + 1)
    g = LamplighterElement(frozenset(lamps), pos)
    if lamplighter_encode(g) != letters:
        raise ParseError("word is not the canonical encoding", 0)
    return g


def lamplighter_contains(letters: Tuple[str, ...]) -> bool:
    try:
        lamplighter_decode(letters)
        return True
    except ParseError:
        return False


# ---------------------------------------------------------------------------
# Structural language (regular over-approximation; the a'-count is not)


def lamplighter_structure_dfa() -> Dfa:
    """Everything about the language except the matched trailing count."""
    t = {}
    # prefix
    t[("q0", "a")] = "qp"
    t[("q0", "a'")] = "qn"
    t[("q0", HASH)] = "u0"
    t[("qp", "a")] = "qp"
    t[("qp", HASH)] = "u0"
    t[("qn", "a'")] = "qn"
    t[("qn", HASH)] = "u0"
    # scan before ↑; u0/u1 = segment so far empty (u0 first), u0b/u1b = has b
    t[("u0", "b")] = "u0b"
    t[("u0", UP)] = "v0"
    t[("u0b", "a")] = "u1"
    t[("u0b", UP)] = "v0"
    t[("u1", "a")] = "u1"
    t[("u1", "b")] = "u1b"
    t[("u1", UP)] = "v0"
    t[("u1b", "a")] = "u1"
    t[("u1b", UP)] = "v0"
    # scan after ↑
    t[("v0", "a")] = "v1"
    t[("v0", HASH)] = "w0"
    t[("v1", "a")] = "v1"
    t[("v1", "b")] = "v1b"
    t[("v1b", "a")] = "v1"
    t[("v1b", HASH)] = "w0"
    # suffix
    t[("w0", "a'")] = "w1"
    t[("w1", "a'")] = "w1"
    states = {"q0", "qp", "qn", "u0", "u0b", "u1", "u1b", "v0", "v1", "v1b", "w0", "w1"}
    return Dfa(SYMBOLS, frozenset(states), "q0", frozenset({"w0", "w1"}), t)


def _enumerate_language(max_len: int) -> Iterable[Tuple[str, ...]]:
    dfa = lamplighter_structure_dfa()
    for w in dfa.enumerate_words(max_len):
        w = tuple(w)
        if lamplighter_contains(w):
            yield w


def lamplighter_language() -> LanguageSpec:
    return LanguageSpec(ONE_COUNTER, dfa=None, checker=lamplighter_contains,
                        enumerator=_enumerate_language)


# ---------------------------------------------------------------------------
# Generator transducers


def _toggle_transducer() -> SyncTransducer:
    """×b: insert b right before ↑, or delete the b already there."""
    alph = lamplighter_alphabet()
    T = set()
    copy_plain, copy_b = "c0", "cb"
    for x in SYMBOLS:
        dst = copy_b if x == "b" else copy_plain
        T.add((copy_plain, (x, x), dst))
        T.add((copy_b, (x, x), dst))
    # insertion: ↑ not preceded by b; output then lags one behind input
    T.add((copy_plain, (UP, "b"), ("lag", UP)))
    for p in SYMBOLS:
        for x in SYMBOLS:
            T.add((("lag", p), (x, p), ("lag", x)))
        T.add((("lag", p), (PAD, p), "ins_end"))
    # deletion: the cell (b, ↑) guesses ahead; output leads one before input
    T.add((copy_plain, ("b", UP), ("lead", UP)))
    T.add((copy_b, ("b", UP), ("lead", UP)))
    for g in SYMBOLS:
        for y in SYMBOLS:
            T.add((("lead", g), (g, y), ("lead", y)))
        T.add((("lead", g), (g, PAD), "del_end"))
    states = {copy_plain, copy_b, "ins_end", "del_end"}
    states |= {("lag", p) for p in SYMBOLS} | {("lead", g) for g in SYMBOLS}
    return make_transducer(alph, states, copy_plain, {"ins_end", "del_end"}, T,
                           name="lamp-xb-raw", check_functional=False)


def _advance_transducer() -> SyncTransducer:
    """×a: move ↑ one scan position right.

    Cases by window shape: pure translation a^l#↑# (prefix grows, or a
    negative prefix shrinks), ↑ last in the scan (insert a before it),
    ↑ mid-scan (swap ↑ past "a b?" and drop one trailing a'), and the
    tight-left-window variants where the leading scan position falls off
    into the prefix.
    """
    alph = lamplighter_alphabet()
    T = set()
    states = set()

    def add(src, x, y, dst):
        T.add((src, (x, y), dst))
        states.add(src)
        states.add(dst)

    # prefix copies
    add("start", "a", "a", "pre+")
    add("pre+", "a", "a", "pre+")

    add("start", "a'", "a'", "pre-")
    add("pre-", "a'", "a'", "pre-")

    # --- aligned entry into the scan (cases with the prefix unchanged)
    for s in ("start", "pre+", "pre-"):
        add(s, HASH, HASH, "u_first")
    # at least one scan letter before ↑ on these paths
    for s in ("u_first", "u_more"):
        add(s, "a", "a", "u_more")
        add(s, "b", "b", "u_more")
    # branch at (↑, a)
    add("u_more", UP, "a", "sw1")
    #   ↑ was last in the scan: ... x ↑ #  ->  ... x a ↑ #
    add("sw1", HASH, UP, "ins2")
    add("ins2", PAD, HASH, "ins_done")
    #   ↑ mid-scan: ↑ a b? gamma -> a b? ↑ gamma, one trailing a' dropped
    add("sw1", "a", "b", "sw2")
    add("sw2", "b", UP, "aligned")
    add("sw1", "a", UP, "aligned")
    for x in ("a", "b"):
        add("aligned", x, x, "aligned")
    add("aligned", HASH, HASH, "suf")
    add("suf", "a'", "a'", "suf")
    add("suf", "a'", PAD, "suf_done")

    # --- pure translation a^l # ↑ # -> a^(l+1) # ↑ #,
    #     and the tight-left case a^l # ↑ a ... -> a^(l+1) # ...
    for s in ("start", "pre+"):
        add(s, HASH, "a", "x1")
    add("x1", UP, HASH, "x2")
    add("x2", HASH, UP, "x3")        # translation: u = ↑ alone
    add("x3", PAD, HASH, "x_done")
    add("x2", "a", "b", "d2")        # tight left, lamp at the new position
    add("d2", "b", UP, "aligned")
    add("x2", "a", UP, "aligned")    # tight left, no lamp there

    # --- negative prefix counterparts: one a' dropped from the prefix
    for s in ("start", "pre-"):
        add(s, "a'", HASH, "y1")
    add("y1", HASH, UP, "y2")
    add("y2", UP, HASH, "y3")        # translation a'^p # ↑ # -> a'^(p-1) # ↑ #
    add("y3", HASH, PAD, "y_done")
    # tight left with shift 2: a'^p # ↑ a b? gamma # a'^m
    #                       -> a'^(p-1) # b? ↑ gamma # a'^(m-1)
    add("y1", HASH, "b", "e2b")      # lamp at the new position
    add("e2b", UP, UP, "e3b")
    for y in SYMBOLS:
        add("e3b", "a", y, ("q", "b", y))
    for y in SYMBOLS:
        add("y2", UP, y, ("q", "a", y))  # no lamp: guess starts at the ↑ cell
    for e1 in SYMBOLS:
        for e2 in SYMBOLS:
            src = ("q", e1, e2)
            for y in SYMBOLS:
                add(src, e1, y, ("q", e2, y))
            add(src, e1, PAD, ("p", e2))
    for e2 in SYMBOLS:
        add(("p", e2), e2, PAD, "p2")
    add("p2", "a'", PAD, "e_done")

    accepting = {"ins_done", "suf_done", "x_done", "y_done", "e_done"}
    return make_transducer(alph, states, "start", accepting, T,
                           name="lamp-xa-raw", check_functional=False)


def advance_transducer() -> SyncTransducer:
    """×a restricted on both tracks to structurally valid words."""
    dfa = lamplighter_structure_dfa()
    t = restrict_output(_advance_transducer(), dfa, check_functional=False)
    return restrict_input(t, dfa, name="lamp-xa")


def toggle_transducer() -> SyncTransducer:
    """×b restricted on both tracks to structurally valid words."""
    dfa = lamplighter_structure_dfa()
    t = restrict_output(_toggle_transducer(), dfa, check_functional=False)
    return restrict_input(t, dfa, name="lamp-xb")


# ---------------------------------------------------------------------------
# Representation

# Tightest constant with |word(g)| <= C (d(g) + 1) over the radius-6 ball,
# rounded up; see tests for the ball sweep that reproduces it.
QUASIGEODESIC_C = 3


def lamplighter_rep() -> CayleyRep:
    xa = advance_transducer()
    xb = toggle_transducer()
    xa_inv = xa.swapped(name="lamp-xa'")
    gens = GeneratorSet((("a", "a'"), ("b", "b")))
    multipliers = {
        "a": transducer_multiplier("a", xa),
        "a'": transducer_multiplier("a'", xa_inv),
        "b": transducer_multiplier("b", xb),
    }
    return CayleyRep(
        name="lamplighter",
        alphabet=lamplighter_alphabet(),
        language=lamplighter_language(),
        identity_word=(HASH, UP, HASH),
        generators=gens,
        multipliers=multipliers,
        time_class=PF_LINEAR,
        quasigeodesic_c=QUASIGEODESIC_C,
        constants={"K": max(xa.state_count, xb.state_count, xa_inv.state_count)},
        decode=lamplighter_decode,
    )
