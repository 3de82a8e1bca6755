"""HTTP service over the toolkit.

Every operational endpoint takes a group expression (see exprs), resolves
it together with its oracle, runs one operation, and returns JSON.  The
bundled CLI talks to this app in process by default, so the service is the
single place where request validation and error mapping live.

Errors are returned as structured JSON {kind, message[, position]}:
input problems (unparseable expressions or words, bad domains) come back
as 422, runtime violations (budget overruns, faithfulness failures) as
409.  Clients can branch on ``kind`` without string matching.
"""

import random
from typing import Dict, List, Optional, Tuple, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .checks import DEFAULT_SEED, run_checks
from .errors import (
    AlphabetError,
    BudgetExceededError,
    CapExceededError,
    CayleykitError,
    DomainError,
    FaithfulnessError,
    FunctionalityError,
    MembershipError,
    OracleDisagreementError,
    ParseError,
    UnsupportedError,
)
from .exprs import parse_language_word, resolve_expr, tokenize_word
from .groups.registry import REGISTRY_PATTERNS
from .metrics import (
    h_function,
    natural_weighting,
    quasigeodesic_check,
    weighting_from_json,
)
from .representation import (
    enumerate_normal_forms,
    multiply_by_generator,
    normal_form,
    rep_manifest,
    word_problem,
)
from .words import Word

app = FastAPI(title="cayleykit", version=__version__)


# ---------------------------------------------------------------------------
# Request / response models


class ExprRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    expr: str


class WordRequest(ExprRequest):
    word: str = "eps"
    strict: bool = False


class MulRequest(ExprRequest):
    word: str = "eps"
    gen: str


class EnumRequest(ExprRequest):
    radius: int = Field(2, ge=0, le=64)
    max_words: int = Field(100_000, alias="maxWords", ge=1)


class HtableRequest(ExprRequest):
    alpha: Union[str, Dict[str, str]] = "paper"
    max_n: int = Field(8, alias="maxN", ge=1, le=64)


class QcheckRequest(ExprRequest):
    radius: int = Field(4, ge=0, le=32)


class CheckRequest(ExprRequest):
    radius: int = Field(4, ge=0, le=16)
    seed: int = DEFAULT_SEED
    samples: int = Field(200, ge=0)
    threads: int = Field(1, ge=1, le=64)


class BenchRequest(ExprRequest):
    lens: List[int] = Field(default_factory=lambda: [2 ** i for i in range(1, 11)])
    seed: int = DEFAULT_SEED


class StepsModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    input_length: int = Field(alias="inputLength")
    total: int
    certified: bool
    parts: List[Tuple[str, int]]


class NfResponse(BaseModel):
    word: str
    letters: List[str]
    steps: StepsModel


class WpResponse(BaseModel):
    identity: bool


class EnumResponse(BaseModel):
    count: int
    words: List[str]
    truncated: bool


class HtableResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    rows: List[Tuple[int, int]]
    vanishes: bool
    max_n: int = Field(alias="maxN")
    tsv: str


class QcheckWorst(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    word: str
    nf_length: int = Field(alias="nfLength")
    distance: int


class QcheckResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    radius: int
    checked: int
    minimal_c: float = Field(alias="minimalC")
    declared_c: Optional[float] = Field(alias="declaredC")
    ok: bool
    worst: QcheckWorst
    growth: List[Tuple[int, int]]


class CheckResponse(BaseModel):
    rep: str
    oracle: str
    cases: int
    failures: List[str]
    passed: bool


class BenchRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    len: int
    steps: int
    ratio: float
    certified: bool


class BenchResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    rows: List[BenchRow]
    c2: float
    certified: bool


class HealthResponse(BaseModel):
    status: str
    version: str


class RegistryEntry(BaseModel):
    pattern: str
    description: str


class RegistryResponse(BaseModel):
    groups: List[RegistryEntry]


# ---------------------------------------------------------------------------
# Error mapping

_ERROR_TABLE = (
    (ParseError, "parse", 422),
    (AlphabetError, "alphabet", 422),
    (MembershipError, "membership", 422),
    (DomainError, "domain", 422),
    (UnsupportedError, "unsupported", 422),
    (BudgetExceededError, "budget", 409),
    (FaithfulnessError, "faithfulness", 409),
    (FunctionalityError, "functionality", 409),
    (CapExceededError, "cap", 409),
    (OracleDisagreementError, "oracle", 409),
)


@app.exception_handler(CayleykitError)
async def _handle_package_error(request: Request, exc: CayleykitError):
    kind, status = "internal", 500
    for cls, name, code in _ERROR_TABLE:
        if isinstance(exc, cls):
            kind, status = name, code
            break
    body = {"kind": kind, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.position is not None:
        body["position"] = exc.position
    return JSONResponse(status_code=status, content=body)


# ---------------------------------------------------------------------------
# Helpers


def _steps_model(report) -> StepsModel:
    return StepsModel(
        input_length=report.input_length,
        total=report.total,
        certified=report.budget_certified,
        parts=list(report.parts),
    )


def _word_text(w: Word) -> str:
    return " ".join(w.letters) if w.letters else "eps"


def _resolve_weighting(rep, alpha):
    if isinstance(alpha, str):
        if alpha != "paper":
            raise ParseError(
                f"unknown alpha name {alpha!r}; pass 'paper' or a symbol map")
        return natural_weighting(rep)
    return weighting_from_json(alpha)


# ---------------------------------------------------------------------------
# Endpoints


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/registry", response_model=RegistryResponse)
def registry() -> RegistryResponse:
    return RegistryResponse(groups=[
        RegistryEntry(pattern=p, description=d) for p, d in REGISTRY_PATTERNS])


@app.post("/manifest")
def manifest(req: ExprRequest) -> dict:
    rep, _ = resolve_expr(req.expr)
    return rep_manifest(rep)


@app.post("/nf", response_model=NfResponse)
def nf(req: WordRequest) -> NfResponse:
    rep, _ = resolve_expr(req.expr)
    letters = tokenize_word(rep.generators.symbols, req.word)
    w, report = normal_form(rep, letters, strict=req.strict)
    return NfResponse(word=_word_text(w), letters=list(w.letters),
                      steps=_steps_model(report))


@app.post("/wp", response_model=WpResponse)
def wp(req: WordRequest) -> WpResponse:
    rep, _ = resolve_expr(req.expr)
    letters = tokenize_word(rep.generators.symbols, req.word)
    return WpResponse(identity=word_problem(rep, letters, strict=req.strict))


@app.post("/mul", response_model=NfResponse)
def mul(req: MulRequest) -> NfResponse:
    rep, _ = resolve_expr(req.expr)
    letters = parse_language_word(rep, req.word)
    if req.gen not in rep.generators.symbols:
        raise ParseError(
            f"{req.gen!r} is not a generator of {rep.name}; "
            f"generators are {', '.join(rep.generators.symbols)}")
    w, report = multiply_by_generator(rep, Word(rep.alphabet, letters), req.gen)
    return NfResponse(word=_word_text(w), letters=list(w.letters),
                      steps=_steps_model(report))


@app.post("/enum", response_model=EnumResponse)
def enum(req: EnumRequest) -> EnumResponse:
    rep, _ = resolve_expr(req.expr)
    words: List[str] = []
    truncated = False
    for w in enumerate_normal_forms(rep, req.radius):
        if len(words) >= req.max_words:
            truncated = True
            break
        words.append(_word_text(w))
    return EnumResponse(count=len(words), words=words, truncated=truncated)


@app.post("/htable", response_model=HtableResponse)
def htable(req: HtableRequest) -> HtableResponse:
    rep, oracle = resolve_expr(req.expr)
    weighting = _resolve_weighting(rep, req.alpha)
    table = h_function(rep, weighting, oracle, req.max_n)
    return HtableResponse(rows=list(table.rows()), vanishes=table.vanishes,
                          max_n=table.max_n, tsv=table.tsv())


@app.post("/qcheck", response_model=QcheckResponse)
def qcheck(req: QcheckRequest) -> QcheckResponse:
    rep, oracle = resolve_expr(req.expr)
    report = quasigeodesic_check(rep, oracle, req.radius)
    word, dist, nf_len = report.worst
    return QcheckResponse(
        radius=report.radius, checked=report.checked,
        minimal_c=report.minimal_c, declared_c=report.declared_c,
        ok=report.ok,
        worst=QcheckWorst(word=word or "eps", nf_length=nf_len, distance=dist),
        growth=list(report.growth))


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    rep, oracle = resolve_expr(req.expr)
    report = run_checks(rep, oracle, radius=req.radius, seed=req.seed,
                        samples=req.samples, threads=req.threads)
    return CheckResponse(rep=report.rep_name, oracle=report.oracle_name,
                         cases=report.cases, failures=report.failures,
                         passed=report.passed)


@app.post("/bench", response_model=BenchResponse)
def bench(req: BenchRequest) -> BenchResponse:
    rep, _ = resolve_expr(req.expr)
    rng = random.Random(req.seed)
    symbols = rep.generators.symbols
    rows = []
    for k in req.lens:
        if k < 1:
            raise DomainError("bench lengths must be positive")
        letters = tuple(rng.choice(symbols) for _ in range(k))
        _, report = normal_form(rep, letters)
        rows.append(BenchRow(len=k, steps=report.total,
                             ratio=report.total / (k * k),
                             certified=report.budget_certified))
    c2 = max((row.ratio for row in rows), default=0.0)
    return BenchResponse(rows=rows, c2=c2,
                         certified=all(row.certified for row in rows))
