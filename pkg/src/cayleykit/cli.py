"""Command line client for the cayleykit service.

The CLI is a thin HTTP client.  By default it mounts the bundled FastAPI
app in process, so nothing needs to be running; ``--url`` points the same
commands at a live server instead.  Subcommands map one to one onto
service endpoints.

Results go to stdout, diagnostics to stderr.  Identical invocations
produce identical output: randomized commands take a ``--seed`` with a
fixed default.

Exit codes: 0 success, 2 unparseable input (expressions, words, alpha
files), 3 budget or faithfulness violations, 4 a check that found a
disagreement with the oracle.
"""

import argparse
import asyncio
import json
import sys
from typing import Optional, Tuple

import httpx

from . import __version__
from .checks import DEFAULT_SEED

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_DISAGREE = 4

_PARSE_KINDS = {"parse", "alphabet", "membership", "domain", "unsupported"}
_BUDGET_KINDS = {"budget", "faithfulness", "functionality", "cap"}


# ---------------------------------------------------------------------------
# Transport


async def _call_async(url: Optional[str], method: str, path: str,
                      payload: Optional[dict]) -> Tuple[int, dict]:
    if url:
        async with httpx.AsyncClient(base_url=url, timeout=600.0) as client:
            r = await client.request(method, path, json=payload)
            return r.status_code, r.json()
    from .service import app

    transport = httpx.ASGITransport(app=app)
    base = "http://cayleykit.internal"
    async with httpx.AsyncClient(transport=transport, base_url=base,
                                 timeout=None) as client:
        r = await client.request(method, path, json=payload)
        return r.status_code, r.json()


def _call(args, method: str, path: str, payload: Optional[dict] = None):
    """Send one request and handle the error side; returns the body on 2xx."""
    try:
        status, body = asyncio.run(_call_async(args.url, method, path, payload))
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if status < 400:
        return body
    kind = body.get("kind") if isinstance(body, dict) else None
    if kind is None:
        # fastapi request validation, not a package error
        print(f"error: invalid request: {json.dumps(body)}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    message = body.get("message", "")
    if "position" in body and "position" not in message:
        message += f" (position {body['position']})"
    print(f"error [{kind}]: {message}", file=sys.stderr)
    if kind in _BUDGET_KINDS:
        raise SystemExit(EXIT_BUDGET)
    if kind == "oracle":
        raise SystemExit(EXIT_DISAGREE)
    raise SystemExit(EXIT_PARSE)


def _emit(args, body: dict, human) -> int:
    if args.json:
        print(json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True))
        return EXIT_OK
    return human(body)


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_nf(args) -> int:
    body = _call(args, "POST", "/nf", {
        "expr": args.expr, "word": args.word, "strict": args.strict})

    def human(b):
        print(b["word"])
        steps = b["steps"]
        cert = "certified" if steps["certified"] else "UNCERTIFIED"
        print(f"steps: {steps['total']} ({cert})", file=sys.stderr)
        return EXIT_OK

    return _emit(args, body, human)


def _cmd_wp(args) -> int:
    body = _call(args, "POST", "/wp", {
        "expr": args.expr, "word": args.word, "strict": args.strict})
    return _emit(args, body,
                 lambda b: (print("true" if b["identity"] else "false"),
                            EXIT_OK)[1])


def _cmd_mul(args) -> int:
    body = _call(args, "POST", "/mul", {
        "expr": args.expr, "word": args.word, "gen": args.gen})
    return _emit(args, body, lambda b: (print(b["word"]), EXIT_OK)[1])


def _cmd_enum(args) -> int:
    body = _call(args, "POST", "/enum", {
        "expr": args.expr, "radius": args.radius})

    def human(b):
        for w in b["words"]:
            print(w)
        if b["truncated"]:
            print("warning: output truncated", file=sys.stderr)
        print(f"count: {b['count']}", file=sys.stderr)
        return EXIT_OK

    return _emit(args, body, human)


def _load_alpha(spec: str):
    if spec == "paper":
        return "paper"
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as exc:
        print(f"error [parse]: cannot read alpha file: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except json.JSONDecodeError as exc:
        print(f"error [parse]: alpha file is not JSON: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    if not isinstance(data, dict) or not all(
            isinstance(k, str) and isinstance(v, (str, list))
            for k, v in data.items()):
        print("error [parse]: alpha file must map symbols to words",
              file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    return data


def _cmd_htable(args) -> int:
    alpha = _load_alpha(args.alpha)
    body = _call(args, "POST", "/htable", {
        "expr": args.expr, "alpha": alpha, "maxN": args.max_n})

    def human(b):
        print(b["tsv"])
        verdict = "vanishes" if b["vanishes"] else "NONZERO"
        print(f"h {verdict} up to n = {b['maxN']}", file=sys.stderr)
        return EXIT_OK

    return _emit(args, body, human)


def _cmd_qcheck(args) -> int:
    body = _call(args, "POST", "/qcheck", {
        "expr": args.expr, "radius": args.radius})

    def human(b):
        declared = b["declaredC"]
        shown = "none declared" if declared is None else f"declared {declared}"
        print(f"minimal C = {b['minimalC']:.3f} ({shown}) over "
              f"{b['checked']} elements, radius {b['radius']}")
        w = b["worst"]
        print(f"worst: |nf| = {w['nfLength']} at distance {w['distance']} "
              f"({w['word']})")
        print("growth:", " ".join(f"{d}:{m}" for d, m in b["growth"]))
        return EXIT_OK if b["ok"] else EXIT_DISAGREE

    code = _emit(args, body, human)
    if args.json and not body["ok"]:
        return EXIT_DISAGREE
    return code


def _cmd_check(args) -> int:
    body = _call(args, "POST", "/check", {
        "expr": args.expr, "radius": args.radius, "seed": args.seed,
        "samples": args.samples, "threads": args.threads})

    def human(b):
        status = "pass" if b["passed"] else "FAIL"
        print(f"{status}: {b['cases']} cases against {b['oracle']}")
        for line in b["failures"]:
            print(f"  {line}", file=sys.stderr)
        return EXIT_OK if b["passed"] else EXIT_DISAGREE

    code = _emit(args, body, human)
    if args.json and not body["passed"]:
        return EXIT_DISAGREE
    return code


def _parse_lens(text: str):
    try:
        lens = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        print(f"error [parse]: bad length list {text!r}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    if not lens or any(k < 1 for k in lens):
        print("error [parse]: lengths must be positive integers",
              file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    return lens


def _cmd_bench(args) -> int:
    lens = _parse_lens(args.lens)
    body = _call(args, "POST", "/bench", {
        "expr": args.expr, "lens": lens, "seed": args.seed})

    def human(b):
        print("len\tsteps\tsteps/len^2")
        for row in b["rows"]:
            print(f"{row['len']}\t{row['steps']}\t{row['ratio']:.4f}")
        cert = "certified" if b["certified"] else "UNCERTIFIED"
        print(f"C2 = {b['c2']:.4f} ({cert})", file=sys.stderr)
        return EXIT_OK

    return _emit(args, body, human)


def _cmd_manifest(args) -> int:
    body = _call(args, "POST", "/manifest", {"expr": args.expr})
    print(json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("cayleykit.service:app", host=args.host, port=args.port,
                log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleykit",
        description="Cayley position-faithful group representations.",
        epilog="exit codes: 0 ok, 2 parse error, 3 budget/faithfulness "
               "violation, 4 oracle disagreement")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true",
                        help="print the raw JSON response")
    parser.add_argument("--url", default=None,
                        help="talk to a running server instead of in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        # accept the global flags after the subcommand too; SUPPRESS keeps
        # an absent flag from clobbering the value parsed at the top level
        p.add_argument("--json", action="store_true",
                       default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        p.add_argument("--url", default=argparse.SUPPRESS,
                       help=argparse.SUPPRESS)
        return p

    p = add("nf", _cmd_nf, "normal form of a generator word")
    p.add_argument("expr", help="group expression, e.g. lamplighter or "
                                "dp(zn:1,zn:1)")
    p.add_argument("word", nargs="?", default="eps",
                   help="generator word ('eps' for the identity)")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of falling back when budgets are "
                        "missing")

    p = add("wp", _cmd_wp, "word problem: does the word equal the identity?")
    p.add_argument("expr")
    p.add_argument("word", nargs="?", default="eps")
    p.add_argument("--strict", action="store_true")

    p = add("mul", _cmd_mul, "right-multiply a normal form by a generator")
    p.add_argument("expr")
    p.add_argument("word", help="normal form over the rep alphabet")
    p.add_argument("gen", help="generator symbol")

    p = add("enum", _cmd_enum, "enumerate normal forms of bounded length")
    p.add_argument("expr")
    p.add_argument("--radius", type=int, default=2)

    p = add("htable", _cmd_htable, "Cayley distance function table")
    p.add_argument("expr")
    p.add_argument("--alpha", default="paper",
                   help="'paper' or a JSON file mapping symbols to words")
    p.add_argument("--max-n", type=int, default=8, dest="max_n")

    p = add("qcheck", _cmd_qcheck, "quasigeodesic constant over a ball")
    p.add_argument("expr")
    p.add_argument("--radius", type=int, default=4)

    p = add("check", _cmd_check, "cross-check the rep against its oracle")
    p.add_argument("expr")
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--threads", type=int, default=1)

    p = add("bench", _cmd_bench, "step counts for the quadratic bound")
    p.add_argument("expr")
    p.add_argument("--lens", default="2,4,8,16,32,64,128,256,512,1024",
                   help="comma separated word lengths")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("manifest", _cmd_manifest, "machine-readable rep description")
    p.add_argument("expr")

    p = add("serve", _cmd_serve, "run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
