"""Command line front end: ``trisect <command> ... -f doc.tri``.

Exit codes: 0 pass/certified, 1 fail/refuted, 2 inconclusive, 3 for
usage, syntax and reference errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .diagram import check_diagram_family
from .dsl import Document, parse
from .errors import DSLError, TrisectError
from .presentation import DEFAULT_BUDGET, Verdict, abelianize, certify_free, compression_params, surface_params, tietze_simplify
from .trisection import TrisectionParams, euler_char_closed, fold_images, pushout, verify_cube, verify_morphism

BUILTINS = ("b4", "s2xs2-punctured", "s2xs2-punctured-corrected", "closed-trivial")
ERROR_EXIT = 3

_VERDICT_EXIT = {Verdict.CERTIFIED: 0, Verdict.REFUTED: 1, Verdict.INCONCLUSIVE: 2}


class UsageError(Exception):
    pass


def builtin_source(name: str) -> str:
    if name not in BUILTINS:
        raise UsageError(f"unknown example {name!r}; choose from {', '.join(BUILTINS)}")
    return resources.files("trisect").joinpath("data", f"{name}.tri").read_text()


def load_builtin(name: str) -> Document:
    return parse(builtin_source(name))


def default_budget(env=None) -> int:
    env = os.environ if env is None else env
    raw = env.get("TRISECT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"TRISECT_BUDGET must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("TRISECT_BUDGET must be non-negative")
    return n


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _lines(lines) -> str:
    return "".join(line + "\n" for line in lines)


def _arity(args, n, usage):
    if len(args) != n:
        raise UsageError(f"usage: {usage}")


def run(command, document: Document | None, flags: dict | None = None) -> tuple[int, str]:
    """Run one command against ``document`` and return ``(exit_code, output)``.

    ``command`` is the command word followed by its arguments, for example
    ``["verify", "T"]``. ``flags`` may hold ``budget``, ``format``, ``jobs``
    and ``output``. Errors in the request raise :class:`UsageError` or
    :class:`~trisect.errors.DSLError`.
    """
    flags = dict(flags or {})
    budget = flags.get("budget")
    budget = default_budget() if budget is None else budget
    fmt = flags.get("format", "text")
    jobs = flags.get("jobs", 1)
    if not command:
        raise UsageError("no command given")
    cmd, args = command[0], list(command[1:])
    doc = document if document is not None else Document()

    if cmd == "chi":
        _arity(args, 2, "chi g k")
        try:
            g, k = int(args[0]), int(args[1])
        except ValueError:
            raise UsageError("chi takes two integers") from None
        chi = euler_char_closed(g, k)
        return 0, _dump({"g": g, "k": k, "chi": chi}) if fmt == "json" else f"{chi}\n"

    if cmd == "example":
        _arity(args, 1, "example NAME")
        src = builtin_source(args[0])
        ex = parse(src)
        reports = {n: verify_cube(c, budget, jobs) for n, c in ex.cubes.items()}
        code = max((r.exit_code for r in reports.values()), default=0)
        if fmt == "json":
            return code, _dump({"example": args[0], "source": src, "reports": {n: r.to_dict() for n, r in reports.items()}})
        out = src if src.endswith("\n") else src + "\n"
        for r in reports.values():
            out += "\n" + _lines(r.summary_lines())
        return code, out

    if cmd == "verify":
        _arity(args, 1, "verify CUBE")
        report = verify_cube(doc.lookup("trisection", args[0]), budget, jobs)
        out = _dump(report.to_dict()) if fmt == "json" else _lines(report.summary_lines())
        return report.exit_code, out

    if cmd == "pushout":
        _arity(args, 2, "pushout HOM HOM")
        hi, hj = doc.lookup("hom", args[0]), doc.lookup("hom", args[1])
        if hi.domain != hj.domain:
            raise UsageError(f"{args[0]} and {args[1]} have different domains")
        P = pushout(hi, hj)
        inv = abelianize(P)
        rank = flags.get("rank")
        cert = certify_free(P, rank, budget) if rank is not None else None
        simp = tietze_simplify(P, budget)
        code = _VERDICT_EXIT[cert.verdict] if cert else 0
        if fmt == "json":
            out = {"pushout": [args[0], args[1]], "presentation": str(P), "invariants": inv.to_dict(),
                   "simplified": str(simp.presentation)}
            if cert is not None:
                out["free_of_rank"] = {"k": rank, **cert.to_dict()}
            return code, _dump(out)
        lines = [f"pushout({args[0]}, {args[1]}) = {P}", f"  abelianization: {inv}",
                 f"  simplified ({len(simp.trace)} moves): {simp.presentation}"]
        if cert is not None:
            lines.append(f"  free of rank {rank}: {cert.verdict}" + (f" [{cert.detail}]" if cert.detail else ""))
        return code, _lines(lines)

    if cmd == "abelianize":
        _arity(args, 1, "abelianize GROUP")
        inv = abelianize(doc.lookup("group", args[0]))
        return 0, _dump({"group": args[0], **inv.to_dict()}) if fmt == "json" else f"{inv}\n"

    if cmd == "fold":
        _arity(args, 1, "fold HOM")
        h = doc.lookup("hom", args[0])
        dot = fold_images(h).to_dot(args[0])
        target = flags.get("output")
        if target:
            with open(target, "w") as fh:
                fh.write(dot)
            return 0, ""
        return 0, dot

    if cmd == "kernel":
        _arity(args, 1, "kernel CURVES")
        fam = doc.lookup("curves", args[0])
        try:
            g, b = surface_params(fam.group)
            _, p, _ = compression_params(fam.hom.codomain)
        except TrisectError as e:
            raise UsageError(f"curves {args[0]}: {e}") from None
        params = TrisectionParams(g, 0, p, b)
        verdict = check_diagram_family(fam.hom, fam.curves, params)
        code = 0 if verdict.affirmative else 1
        if fmt == "json":
            return code, _dump({"curves": args[0], "hom": fam.hom.name, **verdict.to_dict()})
        lines = [f"curves {args[0]} against ker {fam.hom.name}: "
                 + ("affirmative" if verdict.affirmative else "fails " + ", ".join(verdict.failed_clauses))]
        for c, k, h, e in zip(verdict.curves, verdict.in_kernel, verdict.classes, verdict.essential_necessary):
            lines.append(f"  {c}: in_kernel={k} class={h.coefficients} nontrivial_non_boundary={e}")
        lines.append(f"  count {len(verdict.curves)} (expected {verdict.expected_count}); independent={verdict.independent}")
        return code, _lines(lines)

    if cmd == "morphism":
        _arity(args, 1, "morphism NAME")
        cert = verify_morphism(doc.lookup("morphism", args[0]), budget)
        if fmt == "json":
            return _VERDICT_EXIT[cert.verdict], _dump({"morphism": args[0], **cert.to_dict()})
        return _VERDICT_EXIT[cert.verdict], f"morphism {args[0]}: {cert.verdict} ({cert.detail})\n"

    raise UsageError(f"unknown command {cmd!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trisect", description="Verify group trisections written in the .tri format.")
    p.add_argument("command", help="verify, pushout, abelianize, fold, kernel, morphism, example, chi")
    p.add_argument("args", nargs="*")
    src = p.add_mutually_exclusive_group()
    src.add_argument("-f", "--file", help="document to load ('-' for stdin)")
    src.add_argument("-e", "--example", choices=BUILTINS, help="load a built-in document")
    p.add_argument("--budget", type=int, help=f"move budget (default $TRISECT_BUDGET or {DEFAULT_BUDGET})")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="threads for per-face checks")
    p.add_argument("--rank", type=int, help="pushout: certify free of this rank")
    p.add_argument("-o", "--output", help="fold: write DOT here instead of stdout")
    return p


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_intermixed_args(argv)
        if ns.budget is not None and ns.budget < 0:
            raise UsageError("--budget must be non-negative")
        if ns.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if ns.file:
            text = sys.stdin.read() if ns.file == "-" else open(ns.file).read()
            doc = parse(text)
        elif ns.example:
            doc = load_builtin(ns.example)
        else:
            doc = None
        flags = {"budget": ns.budget, "format": ns.format, "jobs": ns.jobs, "rank": ns.rank, "output": ns.output}
        code, out = run([ns.command, *ns.args], doc, flags)
    except (UsageError, DSLError, TrisectError, OSError) as e:
        print(f"trisect: {e}", file=sys.stderr)
        return ERROR_EXIT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
