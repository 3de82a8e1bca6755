"""The Cayley distance function h and quasigeodesic verification.

A SymbolWeighting alpha sends each normal-form symbol to a word over the
semigroup generators, so every w in L gets two group readings: the literal
one pi_alpha(w), and psi(w), the element w actually encodes.  h(n) is the
largest word-metric distance between the two readings over words of length
at most n; a representation whose natural reading never lies has h = 0.

Distances are exact: d(g, h) = d(g^-1 h) resolved against an oracle BFS
ball that grows on demand.
"""

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import AlphabetError, CapExceededError, UnsupportedError
from .oracle import GroupOracle
from .representation import CayleyRep, normal_form
from .words import Word

# ---------------------------------------------------------------------------
# Symbol weightings


@dataclass(frozen=True)
class SymbolWeighting:
    """alpha: one generator word per normal-form symbol (empty = identity)."""

    assignment: Dict[str, Tuple[str, ...]]

    def word_for(self, symbol: str) -> Tuple[str, ...]:
        try:
            return self.assignment[symbol]
        except KeyError:
            raise AlphabetError(f"weighting has no entry for symbol {symbol!r}") from None

    def replaced(self, symbol: str, word) -> "SymbolWeighting":
        new = dict(self.assignment)
        new[symbol] = tuple(word.split() if isinstance(word, str) else word)
        return SymbolWeighting(new)


def natural_weighting(rep: CayleyRep) -> SymbolWeighting:
    """alpha(sigma) = sigma for generator symbols, e for everything else.

    This is the reading that treats a normal form as a literal product,
    with bookkeeping symbols (separators, markers) weighted trivially.
    """
    gens = set(rep.generators.symbols)
    return SymbolWeighting({s: ((s,) if s in gens else ())
                            for s in rep.alphabet})


def weighting_from_json(data: dict) -> SymbolWeighting:
    return SymbolWeighting({sym: tuple(w.split() if isinstance(w, str) else w)
                            for sym, w in data.items()})


def pi_alpha(rep: CayleyRep, weighting: SymbolWeighting, w,
             oracle: GroupOracle):
    """Evaluate alpha(sigma_1)...alpha(sigma_k) in the oracle."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    g = oracle.identity
    for sym in letters:
        if sym not in rep.alphabet:
            raise AlphabetError(f"{rep.name}: symbol {sym!r} not in the rep alphabet")
        for s in weighting.word_for(sym):
            g = oracle.act(g, s)
    return g


# ---------------------------------------------------------------------------
# Distance tables


@dataclass(frozen=True)
class DistanceTable:
    """h(n) for start_n <= n <= max_n; h is nondecreasing by definition."""

    start_n: int
    max_n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.max_n - self.start_n + 1:
            raise ValueError("table length does not match its range")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("h must be nondecreasing")

    def rows(self) -> Iterable[Tuple[int, int]]:
        for i, v in enumerate(self.values):
            yield self.start_n + i, v

    @property
    def vanishes(self) -> bool:
        return all(v == 0 for v in self.values)

    def tsv(self) -> str:
        lines = ["n\th"] + [f"{n}\t{v}" for n, v in self.rows()]
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {"vanishes": self.vanishes, "maxN": self.max_n}


def language_words(rep: CayleyRep, max_len: int,
                   brute_cap: int = 2_000_000) -> List[Tuple[str, ...]]:
    """All normal-form words of length <= max_len.

    Uses the language DFA when the class is regular, the language's own
    enumerator otherwise, and as a last resort filters all strings over
    the alphabet through the membership checker (capped).  For RE-tagged
    languages the enumerator is reachability-based, so the result covers
    the words it emits rather than provably all of L.
    """
    lang = rep.language
    if lang.dfa is not None:
        return [tuple(w) for w in lang.dfa.enumerate_words(max_len)]
    if lang.enumerator is not None:
        return [tuple(w) for w in lang.enumerator(max_len) if len(w) <= max_len]
    if lang.checker is not None:
        symbols = tuple(rep.alphabet)
        total = sum(len(symbols) ** k for k in range(max_len + 1))
        if total > brute_cap:
            raise CapExceededError(
                f"{rep.name}: {total} candidate strings exceed the cap {brute_cap}")
        out = []
        queue = deque([()])
        while queue:
            w = queue.popleft()
            if lang.checker(w):
                out.append(w)
            if len(w) < max_len:
                for s in symbols:
                    queue.append(w + (s,))
        return out
    raise UnsupportedError(f"{rep.name}: language has no enumeration mechanism")


def _psi_evaluator(rep: CayleyRep, oracle: GroupOracle) -> Callable:
    gens = set(rep.generators.symbols)
    if all(s in gens for s in rep.alphabet):
        return oracle.evaluate
    if rep.decode is not None:
        return rep.decode
    raise UnsupportedError(
        f"{rep.name}: cannot map normal forms to oracle elements; pass psi=")


def h_function(rep: CayleyRep, weighting: SymbolWeighting, oracle: GroupOracle,
               max_n: int, psi: Optional[Callable] = None,
               ball_cap: int = 2_000_000, radius_cap: int = 32) -> DistanceTable:
    """The distance table h(n) = max d(pi_alpha(w), psi(w)) over |w| <= n.

    psi maps a normal form to the oracle element it encodes; by default
    words spelled entirely in generators are evaluated directly and other
    reps fall back to their decode hook.  The BFS ball used to resolve
    distances grows on demand; if it hits a cap first, the raised
    CapExceededError carries the already-resolved prefix as .partial.
    """
    if oracle.multiply is None or oracle.invert is None:
        raise UnsupportedError(f"oracle {oracle.name} must multiply and invert")
    if psi is None:
        psi = _psi_evaluator(rep, oracle)

    words = language_words(rep, max_n)
    if not words:
        raise UnsupportedError(f"{rep.name}: no normal forms of length <= {max_n}")
    start_n = min(len(w) for w in words)

    gaps: List[Tuple[int, object]] = []
    for w in words:
        shift = oracle.multiply(oracle.invert(pi_alpha(rep, weighting, w, oracle)),
                                psi(w))
        gaps.append((len(w), shift))

    unresolved = {shift for _, shift in gaps if shift != oracle.identity}
    dist: Dict[object, int] = {oracle.identity: 0}
    frontier = [oracle.identity]
    radius = 0
    while unresolved - dist.keys():
        if radius >= radius_cap or len(dist) > ball_cap:
            resolved_to = radius if len(dist) <= ball_cap else radius - 1
            partial = _table_from_gaps(gaps, dist, start_n, max_n, cutoff=resolved_to)
            err = CapExceededError(
                f"{rep.name}: BFS ball capped (radius {radius}, {len(dist)} elements) "
                "before all distances resolved")
            err.partial = partial
            raise err
        radius += 1
        nxt = []
        for g in frontier:
            for s in oracle.actions:
                g2 = oracle.act(g, s)
                if g2 not in dist:
                    dist[g2] = radius
                    nxt.append(g2)
        frontier = nxt

    return _table_from_gaps(gaps, dist, start_n, max_n)


def _table_from_gaps(gaps, dist, start_n, max_n, cutoff=None) -> DistanceTable:
    per_len = {}
    for length, shift in gaps:
        d = dist.get(shift)
        if d is None:
            if cutoff is not None:
                continue
            raise KeyError("unresolved distance in a complete table")
        per_len[length] = max(per_len.get(length, 0), d)
    values = []
    running = 0
    for n in range(start_n, max_n + 1):
        running = max(running, per_len.get(n, 0))
        values.append(running)
    return DistanceTable(start_n, max_n, tuple(values))


# ---------------------------------------------------------------------------
# Quasigeodesic verification


@dataclass(frozen=True)
class QuasigeodesicReport:
    """Outcome of checking |psi^-1(g)| <= C (d(g) + 1) over a BFS ball."""

    radius: int
    checked: int
    minimal_c: float
    declared_c: Optional[float]
    ok: bool
    worst: Tuple[str, int, int]  # (normal form text, distance, nf length)
    growth: Tuple[Tuple[int, int], ...]


def quasigeodesic_check(rep: CayleyRep, oracle: GroupOracle, radius: int,
                        cap: int = 500_000) -> QuasigeodesicReport:
    """Check the quasigeodesic inequality on every element within radius.

    minimal_c is the least constant that fits the ball; ok reports whether
    the rep's declared constant (if any) also fits.  The growth rows
    (distance, longest normal form) double as divergence evidence for
    representations that declare no constant.
    """
    ball: Dict[object, Tuple[str, ...]] = {oracle.identity: ()}
    frontier = [oracle.identity]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for s in oracle.actions:
                g2 = oracle.act(g, s)
                if g2 not in ball:
                    if len(ball) >= cap:
                        raise CapExceededError(
                            f"{rep.name}: ball exceeded {cap} elements")
                    ball[g2] = ball[g] + (s,)
                    nxt.append(g2)
        frontier = nxt

    dists = {g: len(w) for g, w in ball.items()}
    # BFS paths give geodesic witnesses, so len(word) is the exact distance
    minimal_c = 0.0
    worst = ("eps", 0, 0)
    growth: Dict[int, int] = {}
    for g, witness in ball.items():
        nf, _ = normal_form(rep, witness)
        d = dists[g]
        ratio = len(nf) / (d + 1)
        growth[d] = max(growth.get(d, 0), len(nf))
        if ratio > minimal_c:
            minimal_c = ratio
            worst = (nf.text(), d, len(nf))
    declared = rep.quasigeodesic_c
    ok = True if declared is None else minimal_c <= declared + 1e-9
    return QuasigeodesicReport(
        radius=radius,
        checked=len(ball),
        minimal_c=minimal_c,
        declared_c=declared,
        ok=ok,
        worst=worst,
        growth=tuple(sorted(growth.items())),
    )
