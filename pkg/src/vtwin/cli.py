"""Command-line front end: ``vtwin <verb> [flags] [words...]``.

Exit codes: 0 success or "true" or pass, 1 "false" or a failed check,
2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence

from .homs import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    GroupTag,
    TagMismatch,
    apply_hom,
    classify_hom_to_sym,
    enumerate_homs,
    is_homomorphism,
    named,
    parse_hom,
)
from .racg import kt_presentation, twin_presentation
from .structure import SemidirectElement, ball_vtn, decompose, element, parse_vt, recompose
from .verify import FAIL, NOT_VERIFIED, SUITES, run_suite
from .words import AlphaLetter, KWord, ParseError, format_word, parse_kword, parse_permutation, tokenize

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D401 - argparse hook
        raise UsageError(message)


def _strands(p: argparse.ArgumentParser, default: int | None = None) -> None:
    p.add_argument("-n", type=int, default=default, required=default is None, help="strand count")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vtwin", description="Exact computations in virtual twin groups.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="canonical form of a word")
    _strands(p)
    p.add_argument("word")

    p = sub.add_parser("equal", help="decide equality of two VT_n words")
    _strands(p)
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("decompose", help="semidirect coordinates of a word")
    _strands(p)
    p.add_argument("word")

    p = sub.add_parser("recompose", help="a VT_n word from coordinates")
    _strands(p)
    p.add_argument("coords", help='"k = <kword> ; sigma = [..]" or just a kernel word')
    p.add_argument("--sigma", help="permutation, one-line [2 1 3] or cycles (1,2)")

    p = sub.add_parser("hom", help="show, check or apply a homomorphism")
    _strands(p, 3)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", help="pi|theta|lambda|zeta|phi:<m>|nu|lambda_pi|lambda_theta|lambda_nu_pi|lambda_nu_theta|...")
    src.add_argument("--file", type=Path, help="homomorphism serialization")
    p.add_argument("word", nargs="?", help="source word to map")

    p = sub.add_parser("enum-homs", help="enumerate homomorphisms into a symmetric group")
    p.add_argument("--from", dest="source", required=True, help="S<n> or VT<n>")
    p.add_argument("--to", dest="target", required=True, help="S<m>")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("ball", help="dump normal forms of a ball")
    _strands(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--group", choices=("kt", "twin", "vt"), default="kt")
    p.add_argument("--letters", help="restrict KT_n to these letters (a parabolic subgroup)")
    p.add_argument("--count", action="store_true", help="print only the number of elements")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    _strands(p, 4)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--m", dest="m_list", type=int, action="append", help="phi exponent (repeatable) or target degree")
    p.add_argument("--k", type=int, default=1, help="rho index for the twisted conjugacy suite")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path)
    return ap


def _is_kernel_word(text: str, n: int) -> bool:
    toks = tokenize(text, n)
    return all(isinstance(t, AlphaLetter) for t in toks)


def _cmd_reduce(a, out) -> int:
    if _is_kernel_word(a.word, a.n):
        print(kt_presentation(a.n).normalize(parse_kword(a.word, a.n).letters), file=out)
    else:
        print(recompose(decompose(parse_vt(a.word, a.n))), file=out)
    return EXIT_OK


def _cmd_equal(a, out) -> int:
    same = decompose(parse_vt(a.u, a.n)) == decompose(parse_vt(a.v, a.n))
    print("true" if same else "false", file=out)
    return EXIT_OK if same else EXIT_FALSE


def _cmd_decompose(a, out) -> int:
    print(decompose(parse_vt(a.word, a.n)), file=out)
    return EXIT_OK


_COORDS = re.compile(r"\s*k\s*=\s*(.*?)\s*;\s*sigma\s*=\s*(.*?)\s*\Z")


def _cmd_recompose(a, out) -> int:
    m = _COORDS.match(a.coords)
    ktext, stext = (m.group(1), m.group(2)) if m else (a.coords, a.sigma)
    if m and a.sigma:
        raise UsageError("sigma given twice")
    sigma = parse_permutation(stext, a.n) if stext else None
    e = element(parse_kword(ktext, a.n), sigma, n=a.n)
    print(recompose(e), file=out)
    return EXIT_OK


def _render(x) -> str:
    return str(x)


def _cmd_hom(a, out) -> int:
    m = parse_hom(a.file.read_text()) if a.file else named(a.n, a.name)
    if a.word is None:
        ok = is_homomorphism(m)
        out.write(m.serialize())
        print("homomorphism: " + ("true" if ok else f"false ({ok.failing})"), file=out)
        return EXIT_OK if ok else EXIT_FALSE
    src = m.source
    if src.family == "Sym":
        w = [int(t) for t in re.findall(r"t(\d+)", a.word)] if a.word.strip() not in ("", "e") else []
        if re.sub(r"t\d+|\s|^e$", "", a.word):
            raise ParseError("Sym words are written t1 t2 ...", 0, a.word)
    else:
        w = parse_vt(a.word, src.degree)
    print(_render(apply_hom(m, w)), file=out)
    return EXIT_OK


def _cmd_enum(a, out) -> int:
    src, tgt = GroupTag.parse(a.source), GroupTag.parse(a.target)
    if tgt.family != "Sym":
        raise UsageError("enumeration targets must be symmetric groups")
    homs = enumerate_homs(src, tgt.degree, budget=a.budget, jobs=a.jobs)
    for h in homs:
        line = h.digest()
        if a.classify:
            line += " " + classify_hom_to_sym(h)
        print(line, file=out)
    return EXIT_OK


def _cmd_ball(a, out) -> int:
    if a.group == "vt":
        lines = sorted(str(e) for e in ball_vtn(a.n, a.radius))
    else:
        pres = twin_presentation(a.n) if a.group == "twin" else kt_presentation(a.n)
        letters = None
        if a.letters:
            letters = parse_kword(a.letters, a.n).letters if a.group == "kt" else None
            if a.group == "twin":
                raise UsageError("--letters applies to the kt group only")
        lines = sorted(str(nf) for nf in pres.ball(letters, a.radius))
    if a.count:
        print(len(lines), file=out)
    else:
        for ln in lines:
            print(ln, file=out)
    return EXIT_OK


def _cmd_verify(a, out) -> int:
    kw = {"seed": a.seed, "samples": a.samples, "budget": a.budget, "jobs": a.jobs, "k": a.k}
    if a.suite == "phi-m":
        kw["m_list"] = a.m_list
    elif a.suite == "hom-classification" and a.m_list:
        kw["m"] = a.m_list[0]
    rep = run_suite(a.suite, a.n, a.radius, **kw)
    print(f"{rep.suite}: {rep.verdict}", file=out)
    for c in rep.checks:
        extra = f" counterexample: {c.counterexample}" if c.counterexample else ""
        print(f"  {c.name}: {c.verdict}{extra}", file=out)
    if a.out:
        rep.write(a.out)
    if rep.verdict == FAIL:
        return EXIT_FALSE
    if rep.verdict == NOT_VERIFIED:
        return EXIT_BUDGET
    return EXIT_OK


_DISPATCH = {
    "reduce": _cmd_reduce,
    "equal": _cmd_equal,
    "decompose": _cmd_decompose,
    "recompose": _cmd_recompose,
    "hom": _cmd_hom,
    "enum-homs": _cmd_enum,
    "ball": _cmd_ball,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _DISPATCH[args.verb](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    except (ParseError, TagMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
