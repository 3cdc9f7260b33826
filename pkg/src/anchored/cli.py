"""Command-line front end.

Exit status: 0 on success, Proven or all-pass; 1 on NotProven, a false
braid equality or any failed check; 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import checker, groth, tl
from .dsl import GRAMMAR, ParseError, parse_expr, render
from .moves import equivalent
from .ribbon_braid import BraidError, compose_at, parse_braid
from .tangle import TangleTypeError, normalize

__all__ = ["main", "run", "build_parser"]


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.stderr.write(f"expression grammar:\n{GRAMMAR}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="anchored", description="Anchored planar tangles: normalize, evaluate, check.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", help="print the standard form of an expression")
    s.add_argument("expr")

    s = sub.add_parser("eval", help="evaluate in the Temperley-Lieb backend")
    s.add_argument("expr")
    s.add_argument("--inputs", metavar="FILE", help="input vectors, one block per input")

    s = sub.add_parser("equiv", help="search for a chain of moves between two expressions")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--budget", type=int, default=6)

    s = sub.add_parser("check", help="verify relation families or braid equivariance")
    s.add_argument("what", choices=["relations", "braid"])
    s.add_argument("--backend", default="tl")
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--family", action="append", help="restrict to a family (repeatable)")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("box", help="box-object table of a preset or a fusion-data file")
    s.add_argument("preset", nargs="?")
    s.add_argument("--file", metavar="PATH")
    s.add_argument("--max-k", type=int, default=10)

    s = sub.add_parser("braid", help="ribbon braid arithmetic on rb(n)[...] literals")
    s.add_argument("op", choices=["eq", "mul", "compose"])
    s.add_argument("args", nargs="+")
    return p


def _cmd_normalize(ns, out):
    sf = normalize(parse_expr(ns.expr))
    out.write(render(sf) + "\n")
    return 0


def _cmd_eval(ns, out):
    m = tl.eval_expr(parse_expr(ns.expr))
    if ns.inputs is None:
        out.write(tl.format_matrix(m))
        return 0
    with open(ns.inputs, encoding="utf-8") as fh:
        vectors = tl.parse_elements(fh.read())
    out.write(tl.format_element(m.apply(vectors)))
    return 0


def _cmd_equiv(ns, out):
    if ns.budget < 0:
        raise _Usage("--budget must be non-negative")
    res = equivalent(parse_expr(ns.left), parse_expr(ns.right), ns.budget)
    out.write(str(res) + "\n")
    return 0 if res.proven else 1


def _cmd_check(ns, out):
    if ns.max_n < 0:
        raise _Usage("--max-n must be non-negative")
    if ns.what == "braid":
        if ns.trials < 0 or ns.max_n < 1:
            raise _Usage("braid checks need --trials >= 0 and --max-n >= 1")
        rep = checker.check_equivariance(ns.backend, ns.max_n, ns.trials, ns.seed)
    else:
        fams = ns.family or list(checker.RELATION_FAMILIES)
        for f in fams:
            if f not in checker.FAMILIES:
                raise _Usage(f"unknown family {f!r}")
        backend = checker.get_backend(ns.backend)
        rep = checker.Report()
        for f in fams:
            rep.extend(checker.check_relations(backend, f, ns.max_n))
    out.write(rep.to_tsv())
    out.write(f"# {rep.summary()}\n")
    return 0 if rep.ok else 1


def _cmd_box(ns, out):
    if (ns.preset is None) == (ns.file is None):
        raise _Usage("give exactly one of PRESET or --file")
    if ns.max_k < 0:
        raise _Usage("--max-k must be non-negative")
    data = groth.load_fusion_data(ns.file) if ns.file else groth.preset(ns.preset)
    out.write(groth.format_box_table(data, ns.max_k))
    return 0


def _cmd_braid(ns, out):
    if ns.op in ("eq", "mul"):
        if len(ns.args) != 2:
            raise _Usage(f"braid {ns.op} takes two braid literals")
        a, b = (parse_braid(x) for x in ns.args)
        if a.strands != b.strands:
            raise BraidError(f"strand mismatch: {a.strands} vs {b.strands}")
        if ns.op == "eq":
            same = a == b
            out.write(("true" if same else "false") + "\n")
            return 0 if same else 1
        out.write((a * b).render() + "\n")
        return 0
    if len(ns.args) != 3 or not ns.args[1].isdigit():
        raise _Usage("braid compose takes SIGMA SLOT TAU")
    sigma, tau = parse_braid(ns.args[0]), parse_braid(ns.args[2])
    out.write(compose_at(sigma, int(ns.args[1]), tau).render() + "\n")
    return 0


_COMMANDS = {
    "normalize": _cmd_normalize,
    "eval": _cmd_eval,
    "equiv": _cmd_equiv,
    "check": _cmd_check,
    "box": _cmd_box,
    "braid": _cmd_braid,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[ns.command](ns, out)
    except _Usage as exc:
        err.write(f"anchored: usage error: {exc}\n")
        return 2
    except ParseError as exc:
        err.write(f"anchored: parse error: {exc}\n")
        return 2
    except TangleTypeError as exc:
        err.write(f"anchored: type error: {exc}\n")
        return 2
    except (BraidError, groth.GrothError, checker.BackendError, OSError, ValueError) as exc:
        err.write(f"anchored: error: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
