"""ncg check|eval|chern|confluence|list"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .errors import NcgError, ParameterNotRepresentable, UnknownModel, UsageError
from .ncalg import ParseError, builtin, check_local_confluence, format_terms, parse_presentation
from .scalar import SYMBOLIC, SpecializedField

MODELS = ("m2", "qsphere", "qdisk", "qdisk-localized")
PRESENTATIONS = ("su2", "qdisk", "qdisk-localized")


@dataclass
class Report:
    model: str
    params: Dict[str, str]
    cutoff: int
    field: str
    checks: List[dict] = field(default_factory=list)
    engine_version: str = __version__
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c["status"] in ("pass", "skip", "xfail-pass") for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


def pretty(text: str) -> str:
    """Terminal form of a normal form: integer exponents unbracketed, products as spaces."""
    text = re.sub(r"\^\((-?\d+)\)", r"^\1", text)
    return text.replace("*", " ")


def _field(args):
    if args.q == "symbolic":
        return SYMBOLIC
    try:
        s0 = Fraction(args.s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--s must be a rational number, got {args.s!r}") from None
    if s0 <= 0:
        raise UsageError("--s must be positive")
    return SpecializedField(s0)


def _params(items) -> Dict[str, str]:
    out = {}
    for it in items or []:
        if "=" not in it:
            raise UsageError(f"--param expects key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _emit(text: str, args):
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


def cmd_check(args) -> int:
    from .models import build_model
    from .spectral import axiom_suite

    t0 = time.perf_counter()
    model = build_model(args.model, _params(args.param), _field(args))
    if args.cutoff < 1:
        raise UsageError("--cutoff must be at least 1")
    results = axiom_suite(model, args.cutoff)
    rep = Report(args.model, model.describe_params(), args.cutoff, args.q, [r.to_dict() for r in results])
    rep.elapsed = round(time.perf_counter() - t0, 3)
    if args.json:
        _emit(rep.to_json(), args)
    else:
        lines = [f"model {rep.model}  cutoff {rep.cutoff}  q {rep.field}  "
                 + " ".join(f"{k}={v}" for k, v in rep.params.items())]
        for c in rep.checks:
            line = f"  {c['status']:<10} {c['id']}"
            if c.get("counterexample"):
                line += f"  [{c['counterexample']}]"
            elif c.get("detail"):
                line += f"  ({c['detail']})"
            lines.append(line)
        lines.append(f"{'OK' if rep.ok else 'FAILED'} in {rep.elapsed:.2f}s")
        _emit("\n".join(lines), args)
    return 0 if rep.ok else 1


def cmd_eval(args) -> int:
    from .models import build_model

    model = build_model(args.model, _params(args.param), _field(args))
    if args.model == "m2":
        raise UsageError("eval works on presented algebras; m2 is a matrix algebra")
    P = model.ring
    try:
        x = P.parse(args.expr)
    except ParseError as e:
        print(f"ncg: syntax error: {e}", file=sys.stderr)
        if e.col is not None:
            print("  " + args.expr, file=sys.stderr)
            print("  " + " " * max(e.col - 1, 0) + "^", file=sys.stderr)
        return 2
    print(pretty(format_terms(x.terms, P)))
    return 0


def cmd_chern(args) -> int:
    from .models import CHERN_BUNDLES, chern_bundle, chern_suite

    if args.bundle not in CHERN_BUNDLES:
        raise UsageError(f"unknown bundle {args.bundle!r}; known: {', '.join(CHERN_BUNDLES)}")
    B = chern_bundle(args.bundle, _field(args))
    conn = B.connection()
    results = chern_suite(B)
    rep = Report(B.name, {"metric": B.metric.note} if B.metric.note else {}, 0, args.q,
                 [r.to_dict() for r in results])
    if args.json:
        data = json.loads(rep.to_json())
        data["gamma_plus"] = [[str(x) for x in r] for r in conn.gamma_plus]
        data["gamma_minus"] = [[str(x) for x in r] for r in conn.gamma_minus]
        data["nabla"] = [str(x) for x in conn.table()]
        _emit(json.dumps(data, indent=2, sort_keys=True), args)
        return 0 if rep.ok else 1
    n = B.metric.n
    lines = [f"bundle {B.name}  ({n} generator{'s' if n > 1 else ''})"]
    if B.metric.note:
        lines.append(f"  metric: {B.metric.note}")
    for name, M in (("Gamma_-", conn.gamma_minus), ("Gamma_+", conn.gamma_plus)):
        for i in range(n):
            lines.append(f"  {name}[{i}] = " + ", ".join(pretty(str(x)) for x in M[i]))
    for i, v in enumerate(conn.table()):
        lines.append(f"  nabla(e^{i}) = {pretty(str(v))}")
    for bd, part in sorted(conn.curvature_parts().items(), key=lambda kv: str(kv[0])):
        lines.append(f"  curvature {bd}: {pretty(str(part))}")
    for r in results:
        lines.append(f"  {r.status:<10} {r.id}" + (f"  [{r.counterexample}]" if r.counterexample else ""))
    lines.append("OK" if rep.ok else "FAILED")
    _emit("\n".join(lines), args)
    return 0 if rep.ok else 1


def cmd_confluence(args) -> int:
    F = _field(args)
    if args.presentation in PRESENTATIONS:
        P = builtin(args.presentation, F)
    else:
        path = Path(args.presentation)
        if not path.exists():
            raise UsageError(f"{args.presentation!r} is neither a built-in presentation nor a file")
        P = parse_presentation(path.read_text(), path.stem, F)
    bad = check_local_confluence(P, args.max_len)
    if not bad:
        print(f"{P.name}: all critical pairs up to length {args.max_len} resolve")
        return 0
    for w, left, right in bad:
        print(f"{P.name}: {w} rewrites to {left} and to {right}")
    return 1


def cmd_list(args) -> int:
    from .models import CHERN_BUNDLES
    from .spectral import CHECK_IDS

    print("models:        " + ", ".join(MODELS))
    print("bundles:       " + ", ".join(CHERN_BUNDLES))
    print("presentations: " + ", ".join(PRESENTATIONS))
    print("checks:        " + ", ".join(CHECK_IDS))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncg", description="Exact checks for spectral triples from bimodule connections.")
    p.add_argument("--version", action="version", version=f"ncg {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def field_flags(sp):
        sp.add_argument("--q", choices=("symbolic", "rational"), default="symbolic",
                        help="symbolic q, or q specialised to s^2 for the rational s given by --s")
        sp.add_argument("--s", default="2", help="value of s = q^(1/2) for --q rational (default 2)")

    c = sub.add_parser("check", help="run the axiom suite on a model")
    c.add_argument("model")
    c.add_argument("--cutoff", type=int, default=4)
    c.add_argument("--param", action="append", metavar="KEY=VALUE")
    c.add_argument("--json", action="store_true")
    c.add_argument("--output", "-o")
    field_flags(c)
    c.set_defaults(fn=cmd_check)

    e = sub.add_parser("eval", help="print the normal form of an expression")
    e.add_argument("model")
    e.add_argument("expr")
    e.add_argument("--param", action="append", metavar="KEY=VALUE")
    field_flags(e)
    e.set_defaults(fn=cmd_eval)

    ch = sub.add_parser("chern", help="compute a Chern connection and check it")
    ch.add_argument("bundle")
    ch.add_argument("--json", action="store_true")
    ch.add_argument("--output", "-o")
    field_flags(ch)
    ch.set_defaults(fn=cmd_chern)

    cf = sub.add_parser("confluence", help="check local confluence of a presentation")
    cf.add_argument("presentation", help="built-in name or path to a presentation file")
    cf.add_argument("--max-len", type=int, default=3)
    field_flags(cf)
    cf.set_defaults(fn=cmd_confluence)

    ls = sub.add_parser("list", help="list models, bundles and checks")
    ls.set_defaults(fn=cmd_list)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"ncg: syntax error: {e}", file=sys.stderr)
        return 2
    except (UsageError, UnknownModel, ParameterNotRepresentable) as e:
        print(f"ncg: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except NcgError as e:
        print(f"ncg: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
