"""Cross-cutting invariant suites: one rep checked against one oracle.

run_checks drives every generic property the package promises: word-problem
and decode agreement with the exact oracle, normal forms staying inside the
language, ball bijectivity, bounded difference for transducer multipliers,
and static position-faithfulness for TM multipliers.  The CLI's check
subcommand and the service's /check endpoint are thin wrappers around it.
"""

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .oracle import GroupOracle, bfs_ball
from .pftm import check_position_faithful
from .representation import (CayleyRep, enumerate_normal_forms, normal_form,
                             word_problem)

DEFAULT_SEED = 7_2025


@dataclass
class CheckReport:
    rep_name: str
    oracle_name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, count: int = 1):
        self.cases += count

    def fail(self, message: str):
        self.failures.append(message)


def _short_words(symbols, radius: int, cap: int):
    """All words up to radius, or a truncated BFS prefix if that overflows."""
    out = []
    for k in range(radius + 1):
        for w in itertools.product(symbols, repeat=k):
            out.append(w)
            if len(out) >= cap:
                return out
    return out


def _check_word(rep, oracle, w) -> Optional[str]:
    nf, _ = normal_form(rep, w)
    g = oracle.evaluate(w)
    if word_problem(rep, w) != (g == oracle.identity):
        return f"word problem disagrees with {oracle.name} on {' '.join(w) or 'eps'}"
    member = rep.language.contains(nf.letters)
    if member is False:
        return f"normal form {nf.text()!r} left the language"
    if rep.decode is not None:
        try:
            decoded = rep.decode(nf.letters)
        except Exception as exc:
            return f"decode failed on {nf.text()!r}: {exc}"
        if decoded != g and oracle.evaluate != rep.decode:
            # decode may live in a different element model than the oracle;
            # only flag when the two models are comparable
            if type(decoded) is type(g):
                return f"decode({nf.text()!r}) = {decoded!r} but oracle says {g!r}"
    return None


def run_checks(rep: CayleyRep, oracle: GroupOracle, radius: int = 4,
               seed: int = DEFAULT_SEED, samples: int = 200,
               threads: int = 1, word_cap: int = 4000) -> CheckReport:
    """The generic invariant suite for a (rep, oracle) pair."""
    report = CheckReport(rep.name, oracle.name)
    symbols = rep.generators.symbols

    # 1. oracle agreement on all short words (possibly truncated) ...
    words = _short_words(symbols, radius, word_cap)
    # ... plus seeded random longer words
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(radius, 3 * radius + 2)
        words.append(tuple(rng.choice(symbols) for _ in range(k)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda w: _check_word(rep, oracle, w), words))
    else:
        outcomes = [_check_word(rep, oracle, w) for w in words]
    report.add(len(words))
    for problem in outcomes:
        if problem is not None:
            report.fail(problem)
            if len(report.failures) >= 10:
                report.fail("... further word failures suppressed")
                return report

    # 2. ball bijectivity: distinct normal forms vs distinct oracle elements
    if oracle.hashable:
        small = min(radius, 4)
        forms = list(enumerate_normal_forms(rep, small))
        ball = bfs_ball(oracle, small)
        report.add(1)
        if len(forms) != len(ball):
            report.fail(f"radius-{small} ball has {len(ball)} elements "
                        f"but {len(forms)} normal forms")

    # 3. bounded difference for transducer multipliers
    forms = [w.letters for w in enumerate_normal_forms(rep, min(radius, 5))]
    for sym, m in sorted(rep.multipliers.items()):
        if m.transducer is None:
            continue
        bound = m.transducer.state_count
        for u in forms:
            out, _ = m.apply(u)
            report.add(1)
            if abs(len(out) - len(u)) > bound:
                report.fail(f"multiplier {sym}: |f(w)|-|w| = "
                            f"{len(out) - len(u)} exceeds state count {bound}")
                break

    # 4. static position-faithfulness for TM multipliers
    for sym, m in sorted(rep.multipliers.items()):
        if m.program is None:
            continue
        verdict = check_position_faithful(m.program)
        report.add(1)
        if not verdict.ok:
            report.fail(f"program for {sym} is not position-faithful: "
                        + "; ".join(verdict.problems))

    # 5. identity word round trip
    report.add(1)
    if normal_form(rep, ())[0].letters != rep.identity_word:
        report.fail("normal_form(eps) is not the identity word")
    return report
