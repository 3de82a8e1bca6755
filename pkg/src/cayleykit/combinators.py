"""Closure constructions on Cayley representations.

direct_product, free_product, finite_extension, and subgroup each build a
new CayleyRep out of existing ones.  Factor alphabets are made disjoint by
systematic renaming before combining; derived multipliers delegate to the
factor multipliers, so instrumented step counts flow through and the time
class is preserved.  Combined languages keep the REG tag only when every
ingredient is regular (the automata are constructed explicitly); otherwise
the tag degrades to the weakest factor class with a procedural checker.
"""

import json
import string
from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .automata import Dfa, SyncTransducer
from .errors import AlphabetError, DomainError, ParseError
from .oracle import GroupOracle
from .pftm import PfProgram, TimeBudget
from .representation import (CayleyRep, GeneratorSet, LanguageSpec,
                             MultiplierFn, PF_LINEAR, POLYNOMIAL, RE,
                             change_generators, regular_language)
from .words import Alphabet, TrackAlphabet

_CLASS_RANK = {"REG": 0, "ONE_COUNTER": 1, "DCFL": 2, "RE": 3}


# ---------------------------------------------------------------------------
# Disjoint tagging


def _split_ticks(symbol: str) -> Tuple[str, str]:
    base = symbol.rstrip("'")
    return base, symbol[len(base):]


def _symbol_pool(rep: CayleyRep) -> set:
    pool = set(rep.generators.symbols)
    if isinstance(rep.alphabet, TrackAlphabet):
        pool |= set(rep.alphabet.components)
    else:
        pool |= set(rep.alphabet.symbols)
    return pool


def disjoint_tagging(rep1: CayleyRep, rep2: CayleyRep) -> Dict[str, str]:
    """Symbol renaming for rep2 making its symbols disjoint from rep1's.

    Single-letter bases advance alphabetically (a collides -> b, then c,
    ...), which keeps two copies of Z readable as <a> and <b>; anything
    else gets an _2/_3 suffix.  Inverse decorations are preserved, so
    generator pairs stay pairs.
    """
    pool1, pool2 = _symbol_pool(rep1), _symbol_pool(rep2)
    bases1 = {_split_ticks(s)[0] for s in pool1}
    colliding = sorted({_split_ticks(s)[0] for s in pool2} & bases1)
    taken = bases1 | {_split_ticks(s)[0] for s in pool2}
    base_map: Dict[str, str] = {}
    for base in colliding:
        pick = None
        if len(base) == 1 and base in string.ascii_lowercase:
            pos = string.ascii_lowercase.index(base)
            for off in range(1, 26):
                cand = string.ascii_lowercase[(pos + off) % 26]
                if cand not in taken:
                    pick = cand
                    break
        if pick is None:
            n = 2
            while f"{base}_{n}" in taken:
                n += 1
            pick = f"{base}_{n}"
        taken.add(pick)
        base_map[base] = pick
    mapping = {}
    for sym in pool2:
        base, ticks = _split_ticks(sym)
        if base in base_map:
            mapping[sym] = base_map[base] + ticks
    return mapping


def _token_mapper(mapping: Dict[str, str], tracked: bool) -> Callable[[str], str]:
    if not tracked:
        return lambda s: mapping.get(s, s)

    def fn(s):
        if s in mapping:
            return mapping[s]
        if ":" in s:
            return ":".join(mapping.get(p, p) for p in s.split(":"))
        return s

    return fn


def rename_rep(rep: CayleyRep, mapping: Dict[str, str], name: str = "") -> CayleyRep:
    """Apply an injective symbol renaming to every part of a rep."""
    if not mapping:
        return rep
    if len(set(mapping.values())) != len(mapping):
        raise AlphabetError("symbol renaming must be injective")
    tracked = isinstance(rep.alphabet, TrackAlphabet)
    fwd = _token_mapper(mapping, tracked)
    inv = _token_mapper({v: k for k, v in mapping.items()}, tracked)

    if tracked:
        alpha = TrackAlphabet(
            (), tuple(fwd(c) for c in rep.alphabet.components), rep.alphabet.tracks)
    else:
        alpha = Alphabet(tuple(fwd(s) for s in rep.alphabet.symbols))

    lang = rep.language
    dfa = checker = enumerator = None
    if lang.dfa is not None:
        d = lang.dfa
        dfa = Dfa(tuple(fwd(s) for s in d.symbols), d.states, d.start, d.accepting,
                  {(q, fwd(s)): dst for (q, s), dst in d.transitions.items()})
    if lang.checker is not None:
        old_check = lang.checker
        checker = lambda letters: old_check(tuple(inv(x) for x in letters))
    if lang.enumerator is not None:
        old_enum = lang.enumerator
        enumerator = lambda budget: (tuple(fwd(x) for x in w) for w in old_enum(budget))
    language = LanguageSpec(lang.class_tag, dfa=dfa, checker=checker,
                            enumerator=enumerator)

    pairs = tuple((fwd(s), fwd(i)) for s, i in rep.generators.pairs)
    multipliers = {}
    for sym, m in rep.multipliers.items():
        new_sym = fwd(sym)
        if m.transducer is not None:
            t = m.transducer
            t2 = SyncTransducer(
                alphabet=alpha, states=t.states, start=t.start, accepting=t.accepting,
                transitions=frozenset(
                    (src, (fwd(x), fwd(y)), dst) for src, (x, y), dst in t.transitions),
                name=t.name)
            multipliers[new_sym] = MultiplierFn(new_sym, transducer=t2, budget=m.budget)
        elif m.program is not None:
            p = m.program
            p2 = PfProgram(
                p.name, p.states, p.start, p.accept,
                Alphabet(tuple(fwd(s) for s in p.alphabet.symbols)),
                {(st, fwd(r)): (fwd(w), mv, nx)
                 for (st, r), (w, mv, nx) in p.transitions.items()})
            multipliers[new_sym] = MultiplierFn(new_sym, program=p2, budget=m.budget)
        else:
            old_fn = m.native

            def wrapped(letters, old_fn=old_fn):
                out, steps = old_fn(tuple(inv(x) for x in letters))
                return tuple(fwd(x) for x in out), steps

            multipliers[new_sym] = MultiplierFn(new_sym, native=wrapped,
                                                budget=m.budget,
                                                enforce_budget=m.enforce_budget)

    decode = None
    if rep.decode is not None:
        old_decode = rep.decode
        decode = lambda letters: old_decode(tuple(inv(x) for x in letters))

    return CayleyRep(
        name=name or rep.name,
        alphabet=alpha,
        language=language,
        identity_word=tuple(fwd(s) for s in rep.identity_word),
        generators=GeneratorSet(pairs),
        multipliers=multipliers,
        time_class=rep.time_class,
        quasigeodesic_c=rep.quasigeodesic_c,
        constants=dict(rep.constants),
        decode=decode,
    )


def rename_oracle(oracle: GroupOracle, mapping: Dict[str, str]) -> GroupOracle:
    actions = {mapping.get(sym, sym): fn for sym, fn in oracle.actions.items()}
    return replace(oracle, actions=actions)


# ---------------------------------------------------------------------------
# Shared plumbing


def _split_prefix(letters, in_first):
    i = 0
    while i < len(letters) and in_first(letters[i]):
        i += 1
    return letters[:i], letters[i:]


def _split_blocks(letters, in_first) -> List[Tuple[int, Tuple[str, ...]]]:
    """Maximal same-factor runs as (factor index, letters) pairs."""
    blocks: List[Tuple[int, Tuple[str, ...]]] = []
    for sym in letters:
        side = 0 if in_first(sym) else 1
        if blocks and blocks[-1][0] == side:
            blocks[-1] = (side, blocks[-1][1] + (sym,))
        else:
            blocks.append((side, (sym,)))
    return blocks


def _widen_budget(budget: Optional[TimeBudget]) -> Optional[TimeBudget]:
    """Headroom for a delegating multiplier that also scans the whole word."""
    if budget is None:
        return None
    if budget.kind == "pf-linear":
        c1, c0 = budget.coeffs
        return TimeBudget.pf_linear(c1 + 1, c0 + 2)
    if budget.kind == "quadratic":
        return TimeBudget.quadratic(budget.coeffs[0] + 1)
    coeffs = list(budget.coeffs) + [0, 0]
    coeffs[0] += 2
    coeffs[1] += 1
    return TimeBudget.polynomial(coeffs)


def _weaker_tag(tag1: str, tag2: str) -> str:
    return tag1 if _CLASS_RANK[tag1] >= _CLASS_RANK[tag2] else tag2


def _decidable(spec: LanguageSpec) -> bool:
    return spec.dfa is not None or spec.checker is not None


def _combined_alphabet(rep1: CayleyRep, rep2: CayleyRep,
                       extra: Tuple[str, ...] = ()) -> Alphabet:
    return Alphabet(tuple(rep1.alphabet) + tuple(rep2.alphabet) + extra)


def _merge_time_class(rep1: CayleyRep, rep2: CayleyRep) -> str:
    if POLYNOMIAL in (rep1.time_class, rep2.time_class):
        return POLYNOMIAL
    return PF_LINEAR


def _dfa_states_from(transitions, start, extra=()):
    states = {start} | set(extra)
    for (src, _), dst in transitions.items():
        states.add(src)
        states.add(dst)
    return frozenset(states)


# ---------------------------------------------------------------------------
# Direct product


def _concat_dfa(d1: Dfa, d2: Dfa) -> Dfa:
    """DFA for L1·L2 over disjoint alphabets: run d1, switch on the first
    d2 symbol (only legal from an accepting d1 state)."""
    trans = {}
    for (q, s), dst in d1.transitions.items():
        trans[(("L", q), s)] = ("L", dst)
    for q in d1.accepting:
        for s in d2.symbols:
            dst = d2.step(d2.start, s)
            if dst is not None:
                trans[(("L", q), s)] = ("R", dst)
    for (r, s), dst in d2.transitions.items():
        trans[(("R", r), s)] = ("R", dst)
    accepting = {("R", r) for r in d2.accepting}
    if d2.start in d2.accepting:
        accepting |= {("L", q) for q in d1.accepting}
    start = ("L", d1.start)
    return Dfa(tuple(d1.symbols) + tuple(d2.symbols),
               _dfa_states_from(trans, start, accepting), start,
               frozenset(accepting), trans)


def _concat_language(spec1: LanguageSpec, in1, spec2: LanguageSpec) -> LanguageSpec:
    if spec1.dfa is not None and spec2.dfa is not None:
        return regular_language(_concat_dfa(spec1.dfa, spec2.dfa))
    tag = _weaker_tag(spec1.class_tag, spec2.class_tag)
    if _decidable(spec1) and _decidable(spec2):
        def checker(letters):
            u, v = _split_prefix(tuple(letters), in1)
            return bool(spec1.contains(u)) and bool(spec2.contains(v))
        return LanguageSpec(tag, checker=checker)
    enum1, enum2 = spec1.enumerator, spec2.enumerator
    enumerator = None
    if enum1 is not None and enum2 is not None:
        def enumerator(budget):
            for u in enum1(budget):
                for v in enum2(budget):
                    yield tuple(u) + tuple(v)
    return LanguageSpec(RE, enumerator=enumerator)


def direct_product(rep1: CayleyRep, rep2: CayleyRep) -> CayleyRep:
    """G1 x G2 on the concatenation language L1·L2 of tagged factors.

    A factor-1 generator rewrites the L1 prefix in place (it commutes past
    the factor-2 suffix); a factor-2 generator rewrites the suffix.
    """
    mapping = disjoint_tagging(rep1, rep2)
    r2 = rename_rep(rep2, mapping)
    in1 = rep1.alphabet.__contains__

    multipliers = {}
    for sym in rep1.generators.symbols:
        fac = rep1.multipliers[sym]

        def left(letters, fac=fac):
            u, v = _split_prefix(tuple(letters), in1)
            out, steps = fac.apply(u)
            return out + v, steps + len(v) + 1

        multipliers[sym] = MultiplierFn(sym, native=left,
                                        budget=_widen_budget(fac.budget))
    for sym in r2.generators.symbols:
        fac = r2.multipliers[sym]

        def right(letters, fac=fac):
            u, v = _split_prefix(tuple(letters), in1)
            out, steps = fac.apply(v)
            return u + out, steps + len(u) + 1

        multipliers[sym] = MultiplierFn(sym, native=right,
                                        budget=_widen_budget(fac.budget))

    decode = None
    if rep1.decode is not None and r2.decode is not None:
        dec1, dec2 = rep1.decode, r2.decode

        def decode(letters):
            u, v = _split_prefix(tuple(letters), in1)
            return (dec1(u), dec2(v))

    qc = None
    if rep1.quasigeodesic_c is not None and r2.quasigeodesic_c is not None:
        qc = rep1.quasigeodesic_c + r2.quasigeodesic_c

    return CayleyRep(
        name=f"dp({rep1.name},{rep2.name})",
        alphabet=_combined_alphabet(rep1, r2),
        language=_concat_language(rep1.language, in1, r2.language),
        identity_word=rep1.identity_word + r2.identity_word,
        generators=GeneratorSet(rep1.generators.pairs + r2.generators.pairs),
        multipliers=multipliers,
        time_class=_merge_time_class(rep1, r2),
        quasigeodesic_c=qc,
        constants={},
        decode=decode,
    )


# ---------------------------------------------------------------------------
# Free product


def _normalize_identity(rep: CayleyRep) -> CayleyRep:
    """Adjust a rep so that the empty word is its identity word.

    If ε was not in L, the identity word's role moves to ε; if ε was in L
    (naming some other element), the two words swap meanings.  Multipliers
    translate on the way in and out, so psi stays a bijection.
    """
    u0 = rep.identity_word
    if u0 == ():
        return rep
    eps_in_l = rep.language.contains(()) is True

    def swap_in(letters):
        if letters == ():
            return u0
        if eps_in_l and letters == u0:
            return ()
        return letters

    def swap_out(letters):
        if letters == u0:
            return ()
        if eps_in_l and letters == ():
            return u0
        return letters

    multipliers = {}
    for sym, m in rep.multipliers.items():
        def fn(letters, m=m):
            out, steps = m.apply(swap_in(tuple(letters)))
            return swap_out(out), steps + 2

        multipliers[sym] = MultiplierFn(sym, native=fn,
                                        budget=_widen_budget(m.budget))

    lang = rep.language
    if eps_in_l:
        language = lang
    elif lang.dfa is not None:
        language = regular_language(_without_word_dfa(lang.dfa, u0))
    else:
        checker = enumerator = None
        if lang.checker is not None:
            old_check = lang.checker
            checker = lambda w: (tuple(w) == () or
                                 (tuple(w) != u0 and bool(old_check(tuple(w)))))
        if lang.enumerator is not None:
            old_enum = lang.enumerator

            def enumerator(budget):
                yield ()
                for w in old_enum(budget):
                    if tuple(w) != u0:
                        yield tuple(w)

        language = LanguageSpec(lang.class_tag, checker=checker,
                                enumerator=enumerator)

    decode = None
    if rep.decode is not None:
        old_decode = rep.decode
        decode = lambda letters: old_decode(swap_in(tuple(letters)))

    return replace(rep, language=language, identity_word=(),
                   multipliers=multipliers, decode=decode)


def _without_word_dfa(d: Dfa, u0: Tuple[str, ...]) -> Dfa:
    """DFA for (L(d) \\ {u0}) ∪ {ε}: track the exact-u0 prefix alongside d."""
    n = len(u0)
    trans = {}
    seen = {(d.start, 0)}
    queue = deque(seen)
    while queue:
        q, j = queue.popleft()
        for s in d.symbols:
            dst = d.step(q, s)
            if dst is None:
                continue
            j2 = j + 1 if (isinstance(j, int) and j < n and u0[j] == s) else "off"
            trans[((q, j), s)] = (dst, j2)
            if (dst, j2) not in seen:
                seen.add((dst, j2))
                queue.append((dst, j2))
    accepting = {(q, j) for (q, j) in seen if q in d.accepting and j != n}
    accepting.add((d.start, 0))
    return Dfa(d.symbols, frozenset(seen), (d.start, 0), frozenset(accepting), trans)


def _alternating_dfa(d1: Dfa, d2: Dfa) -> Dfa:
    """DFA for alternating nonempty blocks from L1' and L2' (disjoint
    alphabets), the empty word included."""
    trans = {}
    for (q, s), dst in d1.transitions.items():
        trans[(("1", q), s)] = ("1", dst)
    for (r, s), dst in d2.transitions.items():
        trans[(("2", r), s)] = ("2", dst)
    for s in d1.symbols:
        dst = d1.step(d1.start, s)
        if dst is None:
            continue
        trans[("e", s)] = ("1", dst)
        for r in d2.accepting:
            trans[(("2", r), s)] = ("1", dst)
    for s in d2.symbols:
        dst = d2.step(d2.start, s)
        if dst is None:
            continue
        trans[("e", s)] = ("2", dst)
        for q in d1.accepting:
            trans[(("1", q), s)] = ("2", dst)
    accepting = ({"e"} | {("1", q) for q in d1.accepting}
                 | {("2", r) for r in d2.accepting})
    return Dfa(tuple(d1.symbols) + tuple(d2.symbols),
               _dfa_states_from(trans, "e", accepting), "e",
               frozenset(accepting), trans)


def _alternating_language(spec1: LanguageSpec, in1, spec2: LanguageSpec) -> LanguageSpec:
    if spec1.dfa is not None and spec2.dfa is not None:
        return regular_language(_alternating_dfa(spec1.dfa, spec2.dfa))
    tag = _weaker_tag(spec1.class_tag, spec2.class_tag)
    if _decidable(spec1) and _decidable(spec2):
        def checker(letters):
            for side, block in _split_blocks(tuple(letters), in1):
                spec = spec1 if side == 0 else spec2
                if not spec.contains(block):
                    return False
            return True
        return LanguageSpec(tag, checker=checker)
    return LanguageSpec(RE)


def free_product(rep1: CayleyRep, rep2: CayleyRep) -> CayleyRep:
    """G1 * G2 on alternating nonempty normal-form blocks.

    Both factors are first normalized so ε is their identity word; a block
    that a multiplier collapses to ε is deleted, which keeps the block
    sequence strictly alternating.
    """
    mapping = disjoint_tagging(rep1, rep2)
    r1 = _normalize_identity(rep1)
    r2 = _normalize_identity(rename_rep(rep2, mapping))
    in1 = r1.alphabet.__contains__
    factors = (r1, r2)

    multipliers = {}
    for side, rep in enumerate(factors):
        for sym in rep.generators.symbols:
            fac = rep.multipliers[sym]

            def fn(letters, fac=fac, side=side):
                blocks = _split_blocks(tuple(letters), in1)
                if blocks and blocks[-1][0] == side:
                    out, steps = fac.apply(blocks[-1][1])
                    blocks = blocks[:-1]
                else:
                    out, steps = fac.apply(())
                if out:
                    blocks = blocks + [(side, out)]
                flat = tuple(s for _, block in blocks for s in block)
                return flat, steps + len(letters) + 1

            multipliers[sym] = MultiplierFn(sym, native=fn,
                                            budget=_widen_budget(fac.budget))

    decode = None
    if r1.decode is not None and r2.decode is not None:
        decs = (r1.decode, r2.decode)

        def decode(letters):
            return tuple((side, decs[side](block))
                         for side, block in _split_blocks(tuple(letters), in1))

    qc = None
    if r1.quasigeodesic_c is not None and r2.quasigeodesic_c is not None:
        qc = 2.0 * max(r1.quasigeodesic_c, r2.quasigeodesic_c)

    return CayleyRep(
        name=f"fp({rep1.name},{rep2.name})",
        alphabet=_combined_alphabet(r1, r2),
        language=_alternating_language(r1.language, in1, r2.language),
        identity_word=(),
        generators=GeneratorSet(r1.generators.pairs + r2.generators.pairs),
        multipliers=multipliers,
        time_class=_merge_time_class(r1, r2),
        quasigeodesic_c=qc,
        constants={},
        decode=decode,
    )


# ---------------------------------------------------------------------------
# Finite extension


@dataclass(frozen=True)
class FiniteExtensionTable:
    """Coset data presenting G as a finite union of cosets H·k.

    coset_symbols name the nontrivial cosets (the trivial coset is the
    empty string); generator_pairs gives the involution pairing for the
    generators of G beyond those of H; rules maps (coset, generator) to
    (word over S_H, next coset), encoding k·q = s1…sl·k'.
    """

    coset_symbols: Tuple[str, ...]
    generator_pairs: Tuple[Tuple[str, str], ...]
    rules: Dict[Tuple[str, str], Tuple[Tuple[str, ...], str]]

    def cosets(self) -> Tuple[str, ...]:
        return ("",) + tuple(self.coset_symbols)

    def new_symbols(self) -> Tuple[str, ...]:
        out: List[str] = []
        for sym, inv in self.generator_pairs:
            for s in (sym, inv) if sym != inv else (sym,):
                if s not in out:
                    out.append(s)
        return tuple(out)


def _filled_rules(table: FiniteExtensionTable, h_symbols) -> Dict:
    rules = dict(table.rules)
    for q in h_symbols:
        rules.setdefault(("", q), ((q,), ""))
    return rules


def validate_extension_table(table: FiniteExtensionTable, oracle: GroupOracle,
                             h_symbols: Sequence[str]) -> None:
    """Check rule totality and every identity k·q = s1…sl·k' in the oracle."""
    if oracle.multiply is None:
        raise DomainError(f"oracle {oracle.name} cannot multiply; "
                          "extension table validation needs it")
    phi = {"": oracle.identity}
    for sigma in table.coset_symbols:
        phi[sigma] = oracle.evaluate((sigma,))
    rules = _filled_rules(table, h_symbols)
    problems = []
    span = tuple(h_symbols) + table.new_symbols()
    for coset in table.cosets():
        for q in span:
            rule = rules.get((coset, q))
            if rule is None:
                problems.append(f"missing rule ({coset or 'e'}, {q})")
                continue
            word, nxt = rule
            if nxt not in phi:
                problems.append(f"rule ({coset or 'e'}, {q}) names unknown coset {nxt!r}")
                continue
            lhs = oracle.act(phi[coset], q)
            rhs = oracle.multiply(oracle.evaluate(word), phi[nxt])
            if lhs != rhs:
                problems.append(f"rule ({coset or 'e'}, {q}) fails in oracle {oracle.name}")
    for q in h_symbols:
        if rules[("", q)] != ((q,), ""):
            problems.append(f"trivial-coset rule for {q} must be the identity rule")
    if problems:
        raise DomainError("extension table invalid: " + "; ".join(problems))


def extension_oracle(oracleH: GroupOracle, table: FiniteExtensionTable,
                     h_symbols: Sequence[str]) -> GroupOracle:
    """Oracle for the extension built from the table itself.

    Elements are (h, coset) pairs; the right action replays the rule words
    through oracleH.  Independent of the rep, but only as trustworthy as
    the table — validate the table against a native G oracle when one
    exists.
    """
    rules = _filled_rules(table, h_symbols)

    def act(q):
        def step(g):
            h, coset = g
            word, nxt = rules[(coset, q)]
            for s in word:
                h = oracleH.act(h, s)
            return (h, nxt)
        return step

    actions = {q: act(q) for q in tuple(h_symbols) + table.new_symbols()}
    return GroupOracle(
        name=f"{oracleH.name}-ext",
        identity=(oracleH.identity, ""),
        actions=actions,
        hashable=oracleH.hashable,
    )


def derive_extension_table(repH: CayleyRep, oracle: GroupOracle,
                           coset_symbols: Sequence[str],
                           generator_pairs: Sequence[Tuple[str, str]],
                           bound: int = 8) -> FiniteExtensionTable:
    """Solve every k·q = h·k' against the oracle, expressing h as a word
    over S_H found by breadth-first search up to the given length bound."""
    if oracle.multiply is None or oracle.invert is None:
        raise DomainError(f"oracle {oracle.name} must multiply and invert")
    h_symbols = repH.generators.symbols
    ball = {oracle.identity: ()}
    frontier = [oracle.identity]
    for _ in range(bound):
        nxt = []
        for g in frontier:
            for s in h_symbols:
                g2 = oracle.act(g, s)
                if g2 not in ball:
                    ball[g2] = ball[g] + (s,)
                    nxt.append(g2)
        frontier = nxt

    phi = {"": oracle.identity}
    for sigma in coset_symbols:
        phi[sigma] = oracle.evaluate((sigma,))
    pairs = tuple((s, i) for s, i in generator_pairs)
    new_syms = FiniteExtensionTable(tuple(coset_symbols), pairs, {}).new_symbols()
    rules = {}
    for coset in ("",) + tuple(coset_symbols):
        for q in tuple(h_symbols) + new_syms:
            target = oracle.act(phi[coset], q)
            for nxt, k_elem in phi.items():
                h = oracle.multiply(target, oracle.invert(k_elem))
                if h in ball:
                    rules[(coset, q)] = (ball[h], nxt)
                    break
            else:
                raise DomainError(
                    f"no rule for ({coset or 'e'}, {q}) within BFS bound {bound}")
    return FiniteExtensionTable(tuple(coset_symbols), pairs, rules)


def _extension_dfa(d: Dfa, coset_symbols) -> Dfa:
    trans = {(("H", q), s): ("H", dst) for (q, s), dst in d.transitions.items()}
    for q in d.accepting:
        for sigma in coset_symbols:
            trans[(("H", q), sigma)] = "done"
    accepting = {("H", q) for q in d.accepting} | {"done"}
    start = ("H", d.start)
    return Dfa(tuple(d.symbols) + tuple(coset_symbols),
               _dfa_states_from(trans, start, accepting), start,
               frozenset(accepting), trans)


def finite_extension(repH: CayleyRep, table: FiniteExtensionTable,
                     oracle: Optional[GroupOracle] = None) -> CayleyRep:
    """Extend repH to a group G containing H with finite index.

    Words are L·L0 with L0 = {ε} ∪ coset symbols.  Right multiplication
    strips the trailing coset symbol, applies the rule's S_H word with
    repH's multipliers, and appends the new coset symbol.
    """
    h_symbols = repH.generators.symbols
    overlap = set(table.new_symbols()) & set(h_symbols)
    if overlap:
        raise AlphabetError(f"coset generators collide with S_H: {sorted(overlap)}")
    if oracle is not None:
        validate_extension_table(table, oracle, h_symbols)
    rules = _filled_rules(table, h_symbols)
    span = tuple(h_symbols) + table.new_symbols()
    for coset in table.cosets():
        for q in span:
            if (coset, q) not in rules:
                raise DomainError(f"extension table missing rule ({coset or 'e'}, {q})")
    coset_set = set(table.coset_symbols)

    multipliers = {}
    for q in span:
        def fn(letters, q=q):
            letters = tuple(letters)
            if letters and letters[-1] in coset_set:
                base, coset = letters[:-1], letters[-1]
            else:
                base, coset = letters, ""
            word, nxt = rules[(coset, q)]
            total = 0
            out = base
            for s in word:
                out, steps = repH.multipliers[s].apply(out)
                total += steps
            if nxt:
                out = out + (nxt,)
            return out, total + len(letters) + 1

        multipliers[q] = MultiplierFn(q, native=fn, budget=None)

    lang = repH.language
    if lang.dfa is not None:
        language = regular_language(_extension_dfa(lang.dfa, table.coset_symbols))
    else:
        def checker(letters):
            letters = tuple(letters)
            if letters and letters[-1] in coset_set:
                letters = letters[:-1]
            if any(x in coset_set for x in letters):
                return False
            return bool(lang.contains(letters))

        enumerator = None
        if lang.enumerator is not None:
            old_enum = lang.enumerator

            def enumerator(budget):
                for w in old_enum(budget):
                    yield tuple(w)
                    for sigma in table.coset_symbols:
                        yield tuple(w) + (sigma,)

        language = LanguageSpec(lang.class_tag,
                                checker=checker if _decidable(lang) else None,
                                enumerator=enumerator)

    decode = None
    if repH.decode is not None:
        dec = repH.decode

        def decode(letters):
            letters = tuple(letters)
            if letters and letters[-1] in coset_set:
                return (dec(letters[:-1]), letters[-1])
            return (dec(letters), "")

    return CayleyRep(
        name=f"ext({repH.name})",
        alphabet=Alphabet(tuple(repH.alphabet) + tuple(table.coset_symbols)),
        language=language,
        identity_word=repH.identity_word,
        generators=GeneratorSet(repH.generators.pairs + table.generator_pairs),
        multipliers=multipliers,
        time_class=repH.time_class,
        quasigeodesic_c=None,
        constants={},
        decode=decode,
    )


def extension_table_to_json(table: FiniteExtensionTable) -> dict:
    return {
        "cosetSymbols": list(table.coset_symbols),
        "generatorPairs": [[s, i] for s, i in table.generator_pairs],
        "rules": [
            {"coset": coset, "gen": q, "word": list(word), "next": nxt}
            for (coset, q), (word, nxt) in sorted(table.rules.items())
        ],
    }


def extension_table_from_json(data: dict) -> FiniteExtensionTable:
    try:
        rules = {}
        for row in data["rules"]:
            rules[(row["coset"], row["gen"])] = (tuple(row["word"]), row["next"])
        return FiniteExtensionTable(
            coset_symbols=tuple(data["cosetSymbols"]),
            generator_pairs=tuple((s, i) for s, i in data["generatorPairs"]),
            rules=rules,
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed extension table: {exc}") from exc


def load_extension_table(path: str) -> FiniteExtensionTable:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return extension_table_from_json(data)


def save_extension_table(table: FiniteExtensionTable, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(extension_table_to_json(table), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Finitely generated subgroups


def subgroup(rep: CayleyRep, sub_gens: Dict[str, Sequence[str]],
             distortion: Optional[float] = None) -> CayleyRep:
    """Restrict a rep to the subgroup generated by named words over S.

    Multipliers are compositions of the parent's; the language becomes
    RE-tagged with membership given by the reachability enumerator, since
    deciding psi(w) ∈ H is not available in general.  The quasigeodesic
    constant survives only when a distortion factor is supplied.
    """
    base = change_generators(rep, sub_gens)
    symbols = base.generators.symbols
    mults = base.multipliers
    identity = base.identity_word

    def enumerator(budget):
        seen = {identity}
        queue = deque([identity])
        yield identity
        emitted = 1
        while queue and emitted < budget:
            u = queue.popleft()
            for s in symbols:
                out, _ = mults[s].apply(u)
                if out not in seen:
                    seen.add(out)
                    queue.append(out)
                    yield out
                    emitted += 1
                    if emitted >= budget:
                        return

    qc = None
    if distortion is not None and rep.quasigeodesic_c is not None:
        qc = rep.quasigeodesic_c * distortion
    names = ",".join(sorted(n for n in sub_gens))
    return replace(base, name=f"sub({rep.name};{names})",
                   language=LanguageSpec(RE, enumerator=enumerator),
                   quasigeodesic_c=qc)
