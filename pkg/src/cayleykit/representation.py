"""Cayley representations and the core algorithms on them.

A CayleyRep is a bijective encoding psi: L -> G of a group by a language
of normal-form words, together with one multiplier function per semigroup
generator s satisfying psi(f_s(w)) = psi(w) s.  Multipliers run on one of
three instrumented backends: synchronous transducer, position-faithful
Turing machine, or a native procedure with self-reported step counts.

normal_form folds the multipliers over an input word starting from the
identity word, charging 2j bookkeeping steps for fetching letter j, which
reproduces the quadratic step bound for pf-linear representations.
"""

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .automata import Dfa, SyncTransducer, evaluate_letters
from .errors import AlphabetError, BudgetExceededError, MembershipError
from .pftm import PfProgram, TimeBudget, run_letters
from .words import Alphabet, TrackAlphabet, Word

PF_LINEAR = "pf-linear"
POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generators with involution pairing.

    pairs lists (symbol, inverse symbol) per generator; a self-inverse
    generator pairs with itself.  The semigroup set S enumerates each
    pair's symbol then its inverse, deduplicated.
    """

    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        seen = []
        for sym, inv in self.pairs:
            for s in (sym, inv) if sym != inv else (sym,):
                if s in seen:
                    raise ValueError(f"generator symbol {s!r} repeated")
                seen.append(s)

    @property
    def symbols(self) -> Tuple[str, ...]:
        out: List[str] = []
        for sym, inv in self.pairs:
            out.append(sym)
            if inv != sym:
                out.append(inv)
        return tuple(out)

    def inverse(self, symbol: str) -> str:
        for sym, inv in self.pairs:
            if symbol == sym:
                return inv
            if symbol == inv:
                return sym
        raise AlphabetError(f"unknown generator {symbol!r}")

    def alphabet(self) -> Alphabet:
        return Alphabet(self.symbols)


def generator_set(*pairs) -> GeneratorSet:
    return GeneratorSet(tuple((s, i) for s, i in pairs))


@dataclass(frozen=True)
class MultiplierFn:
    """One right-multiplication function f_s on normal-form words."""

    generator: str
    transducer: Optional[SyncTransducer] = None
    program: Optional[PfProgram] = None
    native: Optional[Callable[[Tuple[str, ...]], Tuple[Tuple[str, ...], int]]] = None
    budget: Optional[TimeBudget] = None
    enforce_budget: bool = True

    @property
    def backend(self) -> str:
        if self.transducer is not None:
            return "transducer"
        if self.program is not None:
            return "tm"
        return "native"

    def apply(self, letters: Tuple[str, ...]) -> Tuple[Tuple[str, ...], int]:
        if self.transducer is not None:
            return evaluate_letters(self.transducer, letters)
        if self.program is not None:
            return run_letters(self.program, letters, self.budget)
        out, steps = self.native(letters)
        if self.enforce_budget and self.budget is not None:
            limit = self.budget.limit(len(letters))
            if steps > limit:
                raise BudgetExceededError(
                    f"multiplier {self.generator}: {steps} steps exceed "
                    f"{self.budget.kind} budget {limit}"
                )
        return out, steps


def transducer_multiplier(generator: str, t: SyncTransducer) -> MultiplierFn:
    return MultiplierFn(generator, transducer=t)


def tm_multiplier(generator: str, prog: PfProgram, budget: TimeBudget) -> MultiplierFn:
    return MultiplierFn(generator, program=prog, budget=budget)


def native_multiplier(generator: str, fn, budget: TimeBudget,
                      enforce: bool = True) -> MultiplierFn:
    return MultiplierFn(generator, native=fn, budget=budget, enforce_budget=enforce)


REG = "REG"
ONE_COUNTER = "ONE_COUNTER"
DCFL = "DCFL"
RE = "RE"


@dataclass(frozen=True)
class LanguageSpec:
    """Normal-form language: class tag plus whatever decision power it has.

    REG carries a DFA; ONE_COUNTER and DCFL carry a membership checker;
    RE carries only an enumerator, so membership is three-valued.
    """

    class_tag: str
    dfa: Optional[Dfa] = None
    checker: Optional[Callable[[Tuple[str, ...]], bool]] = None
    enumerator: Optional[Callable[[int], Iterable[Tuple[str, ...]]]] = None

    def contains(self, letters: Tuple[str, ...], budget: int = 2000) -> Optional[bool]:
        """True / False when decidable, None for unknown-at-budget."""
        if self.class_tag == REG:
            return self.dfa.accepts(letters)
        if self.checker is not None:
            return bool(self.checker(letters))
        if self.enumerator is not None:
            target = tuple(letters)
            count = 0
            for w in self.enumerator(budget):
                if tuple(w) == target:
                    return True
                count += 1
                if count >= budget:
                    break
            return None
        return None


def regular_language(dfa: Dfa) -> LanguageSpec:
    return LanguageSpec(REG, dfa=dfa)


@dataclass
class StepReport:
    """Per-call step accounting; totals are the sum of the parts."""

    input_length: int
    parts: List[Tuple[str, int]] = field(default_factory=list)
    budget_certified: bool = True

    def charge(self, label: str, steps: int):
        self.parts.append((label, steps))

    @property
    def total(self) -> int:
        return sum(steps for _, steps in self.parts)


@dataclass(frozen=True)
class CayleyRep:
    """A Cayley position-faithful representation of a group."""

    name: str
    alphabet: Alphabet
    language: LanguageSpec
    identity_word: Tuple[str, ...]
    generators: GeneratorSet
    multipliers: Dict[str, MultiplierFn]
    time_class: str
    quasigeodesic_c: Optional[float] = None
    constants: Dict[str, float] = field(default_factory=dict)
    decode: Optional[Callable[[Tuple[str, ...]], object]] = None

    def __post_init__(self):
        syms = self.generators.symbols
        if set(self.multipliers) != set(syms):
            missing = set(syms) - set(self.multipliers)
            extra = set(self.multipliers) - set(syms)
            raise ValueError(f"multipliers must cover S exactly: missing {missing}, extra {extra}")
        for sym, m in self.multipliers.items():
            if m.generator != sym:
                raise ValueError(f"multiplier for {sym!r} declares generator {m.generator!r}")
        if self.time_class not in (PF_LINEAR, POLYNOMIAL):
            raise ValueError(f"unknown time class {self.time_class!r}")
        if self.time_class == PF_LINEAR:
            for sym, m in self.multipliers.items():
                if m.budget is not None and m.budget.kind != PF_LINEAR:
                    raise ValueError(f"pf-linear rep has non-linear budget on {sym!r}")
        member = self.language.contains(self.identity_word)
        if member is False:
            raise ValueError("identity word is not in the language")

    def semigroup_alphabet(self) -> Alphabet:
        return self.generators.alphabet()

    def identity(self) -> Word:
        return Word(self.alphabet, self.identity_word)


def multiply_by_generator(rep: CayleyRep, w: Word, s: str) -> Tuple[Word, StepReport]:
    """f_s(w): one multiplier application with membership precondition."""
    if s not in rep.multipliers:
        raise AlphabetError(f"{rep.name}: unknown generator {s!r}")
    member = rep.language.contains(w.letters)
    if member is False:
        raise MembershipError(f"{rep.name}: word {w.text()!r} is not a normal form")
    out, steps = rep.multipliers[s].apply(w.letters)
    report = StepReport(input_length=len(w))
    report.charge(s, steps)
    return Word(rep.alphabet, out), report


def _input_letters(rep: CayleyRep, v) -> Tuple[str, ...]:
    if isinstance(v, Word):
        letters = v.letters
    else:
        letters = tuple(v)
    allowed = set(rep.generators.symbols)
    for sym in letters:
        if sym not in allowed:
            raise AlphabetError(f"{rep.name}: {sym!r} is not a semigroup generator")
    return letters


def normal_form(rep: CayleyRep, v, strict: bool = False) -> Tuple[Word, StepReport]:
    """Fold multipliers over v from the identity word.

    Polynomial-time representations only carry a certified polynomial step
    bound when a quasigeodesic constant is declared; without one the result
    is still exact but the report is flagged uncertified (strict=True turns
    that case into an error instead).
    """
    letters = _input_letters(rep, v)
    report = StepReport(input_length=len(letters))
    if rep.time_class == POLYNOMIAL and rep.quasigeodesic_c is None:
        if strict:
            raise BudgetExceededError(
                f"{rep.name}: polynomial-time representation without a "
                "quasigeodesic constant has no certified normal-form bound"
            )
        report.budget_certified = False
    u = rep.identity_word
    for j, sym in enumerate(letters, start=1):
        m = rep.multipliers.get(sym)
        u, steps = m.apply(u)
        report.charge(sym, steps)
        report.charge(f"fetch-{j}", 2 * j)
    return Word(rep.alphabet, u), report


def word_problem(rep: CayleyRep, v, strict: bool = False) -> bool:
    """True iff v represents the identity: string comparison with u0."""
    u, _ = normal_form(rep, v, strict=strict)
    return u.letters == rep.identity_word


def enumerate_normal_forms(rep: CayleyRep, max_input_len: int) -> Iterable[Word]:
    """Normal forms of all v with |v| <= max_input_len, BFS order, deduplicated."""
    seen = {rep.identity_word}
    yield rep.identity()
    frontier = [rep.identity_word]
    syms = rep.generators.symbols
    for _ in range(max_input_len):
        nxt = []
        for u in frontier:
            for s in syms:
                out, _ = rep.multipliers[s].apply(u)
                if out not in seen:
                    seen.add(out)
                    nxt.append(out)
                    yield Word(rep.alphabet, out)
        frontier = nxt


def change_generators(rep: CayleyRep, new_gens: Dict[str, Sequence[str]]) -> CayleyRep:
    """Re-generate the representation over new named generators.

    Each defining word is over the old semigroup set; the new multiplier is
    the composition of the old ones applied left to right.  A missing
    inverse entry (name plus apostrophe) is synthesized by reversing the
    defining word and inverting its letters.
    """
    old_syms = set(rep.generators.symbols)
    table: Dict[str, Tuple[str, ...]] = {}
    for name, defining in new_gens.items():
        letters = tuple(defining.split() if isinstance(defining, str) else defining)
        if not letters:
            raise ValueError(f"defining word for {name!r} must be nonempty")
        for sym in letters:
            if sym not in old_syms:
                raise AlphabetError(f"unknown base generator {sym!r} in definition of {name!r}")
        table[name] = letters

    def inverse_name(name: str) -> str:
        return name[:-1] if name.endswith("'") else name + "'"

    for name in list(table):
        partner = inverse_name(name)
        if partner not in table:
            inv = tuple(rep.generators.inverse(sym) for sym in reversed(table[name]))
            table[partner] = inv

    pairs = []
    for name in table:
        if not name.endswith("'"):
            pairs.append((name, inverse_name(name)))
    gens = GeneratorSet(tuple(pairs))

    multipliers = {}
    for name, defining in table.items():
        parts = [rep.multipliers[sym] for sym in defining]

        def composed(letters, parts=parts):
            total = 0
            out = letters
            for part in parts:
                out, steps = part.apply(out)
                total += steps
            return out, total

        multipliers[name] = MultiplierFn(name, native=composed, budget=None)

    return replace(rep, name=f"{rep.name}/regen", generators=gens, multipliers=multipliers)


# ---------------------------------------------------------------------------
# Manifest files


def rep_manifest(rep: CayleyRep) -> dict:
    if isinstance(rep.alphabet, TrackAlphabet):
        alpha = {"tracks": rep.alphabet.tracks,
                 "components": list(rep.alphabet.components)}
    else:
        alpha = list(rep.alphabet.symbols)
    return {
        "name": rep.name,
        "alphabet": alpha,
        "classTag": rep.language.class_tag,
        "timeClass": rep.time_class,
        "identityWord": " ".join(rep.identity_word) if rep.identity_word else "eps",
        "generators": [{"name": s, "inverse": i} for s, i in rep.generators.pairs],
        "multiplierBackends": {s: m.backend for s, m in sorted(rep.multipliers.items())},
        "constants": dict(rep.constants)
        | ({"C": rep.quasigeodesic_c} if rep.quasigeodesic_c is not None else {}),
    }


def save_manifest(rep: CayleyRep, path: str):
    with open(path, "w") as fh:
        json.dump(rep_manifest(rep), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def load_manifest(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
