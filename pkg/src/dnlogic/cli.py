"""Command-line interface.

Exit codes: 0 success / Valid / pass, 1 Invalid / fail, 2 Unknown /
inconclusive, 64 usage error, 65 data or parse error.  Output is plain text
(never coloured) or JSON with ``--json``.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path
from typing import Callable, TextIO

from .argument import DocumentError, load_document, validate_document
from .classical import cl_decide_prop
from .dnp import (
    CLASSICAL, NON_CLASSICAL, annotate_text, default_lexicon, load_lexicon, summarize,
)
from .errors import (
    AttestationRequired, NotMarkovEligible, NotPsrEligible, ParseError, UnsupportedFragment,
)
from .formula import has_quantifiers, predicates
from .kripke import filtration_countermodel, search_countermodel
from .proof import decide, law_battery
from .syntax import parse_formula
from .translations import (
    MarkovAttestation, dummett_battery, glivenko, gmt_translation, kolmogorov_translation,
    markov_apply, negative_translation, psr_apply,
)
from .verdict import DEFAULT_BOUNDS, DEFAULT_DEPTH, Logic, Outcome, SearchBounds, Verdict

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65

OUTCOME_CODES = {Outcome.VALID: EXIT_OK, Outcome.INVALID: EXIT_FAIL, Outcome.UNKNOWN: EXIT_UNKNOWN}
LOGICS = {"cl": Logic.CL, "il": Logic.IL, "minimal": Logic.MINIMAL, "s4": Logic.S4}
TRANSLATIONS = {
    "glivenko": glivenko,
    "negative": negative_translation,
    "kolmogorov": kolmogorov_translation,
    "gmt": gmt_translation,
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would call sys.exit(2)
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


class _Ctx:
    def __init__(self, stdin: TextIO, out: TextIO, err: TextIO):
        self.stdin, self.out, self.err = stdin, out, err


# --- helpers ----------------------------------------------------------------

def _formula(text: str, ctx: _Ctx):
    if text == "-":
        text = ctx.stdin.read()
    try:
        return parse_formula(text)
    except ParseError as exc:
        raise DataError(f"cannot parse formula: {exc}") from exc


def _read_text(path: str, ctx: _Ctx) -> str:
    if path == "-":
        return ctx.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from exc


def _bounds(args) -> SearchBounds:
    return SearchBounds(max_worlds=args.worlds, max_domain=args.domain)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _verdict_text(v: Verdict) -> str:
    lines = [v.outcome.value]
    if v.proof is not None:
        lines.append(f"proof ({v.proof.calculus}):")
        lines.extend("  " + line for line in v.proof.trace_lines())
    if v.countermodel is not None:
        lines.append("countermodel:")
        text = v.countermodel.to_text() if hasattr(v.countermodel, "to_text") else v.countermodel.describe()
        lines.extend("  " + line for line in text.rstrip("\n").splitlines())
    if v.outcome is Outcome.UNKNOWN and v.bounds is not None:
        lines.append(
            f"bounds: {v.bounds.max_worlds} worlds, {v.bounds.max_domain} individuals, depth {v.depth}"
        )
    lines.extend(f"note: {n}" for n in v.notes)
    return "\n".join(lines) + "\n"


# --- subcommands ------------------------------------------------------------

def cmd_prove(args, ctx: _Ctx) -> int:
    f = _formula(args.formula, ctx)
    try:
        v = decide(f, LOGICS[args.logic], _bounds(args), args.depth)
    except UnsupportedFragment as exc:
        raise DataError(str(exc)) from exc
    ctx.out.write(_dump(v.to_dict()) if args.json else _verdict_text(v))
    return OUTCOME_CODES[v.outcome]


def cmd_countermodel(args, ctx: _Ctx) -> int:
    f = _formula(args.formula, ctx)
    logic = LOGICS[args.logic]
    note = None
    try:
        if logic is Logic.CL:
            if has_quantifiers(f) or predicates(f):
                raise UnsupportedFragment("countermodel --logic cl is propositional; use prove")
            model = cl_decide_prop(f).countermodel
        else:
            model = search_countermodel(f, logic, _bounds(args))
            if model is None and not (has_quantifiers(f) or predicates(f)):
                model = filtration_countermodel(f, logic)
                if model is not None:
                    note = f"no countermodel within {args.worlds} worlds; this one is built by filtration"
    except UnsupportedFragment as exc:
        raise DataError(str(exc)) from exc
    if args.json:
        ctx.out.write(_dump({
            "formula": str(f),
            "logic": logic.value,
            "countermodel": None if model is None else model.to_dict(),
            "note": note,
        }))
    elif model is None:
        ctx.out.write("no countermodel found\n")
    else:
        ctx.out.write(model.to_text() if hasattr(model, "to_text") else model.describe() + "\n")
        if note:
            ctx.out.write(f"note: {note}\n")
    return EXIT_OK if model is not None else EXIT_FAIL


def cmd_translate(args, ctx: _Ctx) -> int:
    f = _formula(args.formula, ctx)
    try:
        if args.method == "psr":
            step = psr_apply(f)
            payload, text = step.to_dict(), (
                f"{step.output}\njustification: {step.justification}\nstatus: {step.epistemic_status}\n"
            )
        elif args.method == "markov":
            attestation = MarkovAttestation(args.aaa, args.decidable or "")
            step = markov_apply(f, attestation)
            payload, text = step.to_dict(), f"{step.output}\n"
        else:
            g = TRANSLATIONS[args.method](f)
            payload, text = {"input": str(f), "output": str(g), "method": args.method}, f"{g}\n"
    except UnsupportedFragment as exc:
        raise DataError(str(exc)) from exc
    except (NotPsrEligible, NotMarkovEligible, AttestationRequired) as exc:
        ctx.err.write(f"refused: {exc}\n")
        return EXIT_FAIL
    ctx.out.write(_dump(payload) if args.json else text)
    return EXIT_OK


def cmd_laws(args, ctx: _Ctx) -> int:
    matrix = law_battery(_bounds(args))
    ctx.out.write(_dump(matrix.to_dict()) if args.json else matrix.to_text())
    return EXIT_OK


def cmd_dummett(args, ctx: _Ctx) -> int:
    report = dummett_battery(_bounds(args), args.depth)
    ctx.out.write(_dump(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK


def _lexicon(args):
    if not args.lexicon:
        return default_lexicon()
    try:
        return load_lexicon(args.lexicon)
    except OSError as exc:
        raise DataError(f"cannot read {args.lexicon}: {exc.strerror}") from exc
    except ValueError as exc:
        raise DataError(f"{args.lexicon}: {exc}") from exc


def cmd_detect(args, ctx: _Ctx) -> int:
    text = _read_text(args.textfile, ctx)
    records = annotate_text(text, _lexicon(args))
    if args.json:
        ctx.out.write("".join(r.to_json() + "\n" for r in records))
    else:
        ctx.out.write("".join(r.to_human() + "\n" for r in records))
    return EXIT_OK


def cmd_profile(args, ctx: _Ctx) -> int:
    profile = summarize(annotate_text(_read_text(args.textfile, ctx), _lexicon(args)))
    ctx.out.write(_dump(profile.to_dict()) if args.json else profile.to_text())
    return {NON_CLASSICAL: EXIT_OK, CLASSICAL: EXIT_FAIL}.get(profile.verdict, EXIT_UNKNOWN)


def cmd_argcheck(args, ctx: _Ctx) -> int:
    try:
        doc = load_document(args.theoryfile)
    except OSError as exc:
        raise DataError(f"cannot read {args.theoryfile}: {exc.strerror}") from exc
    except DocumentError as exc:
        raise DataError(str(exc)) from exc
    report = validate_document(doc, args.depth, _bounds(args))
    ctx.out.write(_dump(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="proof search depth")
    search.add_argument("--worlds", type=int, default=DEFAULT_BOUNDS.max_worlds, help="max Kripke worlds")
    search.add_argument("--domain", type=int, default=DEFAULT_BOUNDS.max_domain, help="max individuals")

    parser = _Parser(prog="dnlogic", description="Double-negation logic toolkit.", formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, handler: Callable, help_: str, parents=(common,)):
        p = sub.add_parser(name, help=help_, description=help_, parents=list(parents), formatter_class=fmt)
        p.set_defaults(handler=handler)
        return p

    p = add("prove", cmd_prove, "decide a formula: Valid with proof, Invalid with countermodel, or Unknown",
            (common, search))
    p.add_argument("--logic", choices=sorted(LOGICS), default="il", help="logic to decide in")
    p.add_argument("formula", help="formula text, or - to read stdin")

    p = add("countermodel", cmd_countermodel, "search for a countermodel only", (common, search))
    p.add_argument("--logic", choices=sorted(LOGICS), default="il", help="logic to decide in")
    p.add_argument("formula", help="formula text, or - to read stdin")

    p = add("translate", cmd_translate, "apply a translation, the PSR step or Markov's principle")
    p.add_argument("--method", choices=[*TRANSLATIONS, "psr", "markov"], required=True)
    p.add_argument("--aaa", action="store_true", help="attest that the premise concludes an AAA (markov)")
    p.add_argument("--decidable", metavar="NOTE", help="decidability witness for the predicate (markov)")
    p.add_argument("formula", help="formula text, or - to read stdin")

    add("laws", cmd_laws, "law-separation matrix over CL, IL and minimal logic", (common, search))
    add("dummett", cmd_dummett, "IL implications among the quantified double-negation forms",
        (common, search))

    for name, handler, help_ in (
        ("detect", cmd_detect, "annotate each sentence of a text with its DNP classification"),
        ("profile", cmd_profile, "summarise a text's DNP density and logic profile"),
    ):
        p = add(name, handler, help_)
        p.add_argument("--lexicon", metavar="FILE", help="lexicon file replacing the bundled one")
        if name == "detect":
            p.add_argument("--human", action="store_true", help="one annotated line per sentence (default)")
        p.add_argument("textfile", help="text file, or - to read stdin")

    p = add("argcheck", cmd_argcheck, "validate a PO theory or AAA chain document", (common, search))
    p.add_argument("theoryfile")
    return parser


def run(argv: list[str], stdin: TextIO | None = None) -> tuple[str, str, int]:
    """Run one command; returns (stdout, stderr, exit code)."""
    out, err = io.StringIO(), io.StringIO()
    ctx = _Ctx(stdin if stdin is not None else io.StringIO(""), out, err)
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
        if getattr(args, "json", False) and getattr(args, "human", False):
            raise UsageError(f"{parser.prog} {args.command}: --json and --human are exclusive")
        code = args.handler(args, ctx)
    except UsageError as exc:
        return out.getvalue(), f"{exc}\n", EXIT_USAGE
    except SystemExit as exc:  # --help
        return out.getvalue(), err.getvalue(), EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except DataError as exc:
        return out.getvalue(), f"error: {exc}\n", EXIT_DATA
    except ValueError as exc:  # e.g. non-positive bounds
        return out.getvalue(), f"error: {exc}\n", EXIT_USAGE
    text = out.getvalue()
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            return "", f"error: cannot write {args.out}: {exc.strerror}\n", EXIT_DATA
        text = ""
    return text, err.getvalue(), code


def main(argv: list[str] | None = None) -> int:
    stdout, stderr, code = run(sys.argv[1:] if argv is None else argv, sys.stdin)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
