"""Command-line interface: ``phishuffle <command> [options]``.

Exit codes: 0 success, 1 a verification failed (``gram``, ``factorize``),
2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .bases import build_basis_table, gram_check, pi_element, sigma_element
from .factorization import (CoordinateChart, diagonal, local_coordinates, reconstruct,
                            schutzenberger)
from .laws import CATALOG, LawError, PhiLaw, analyze_law, builtin_law, law_from_doc
from .ncpoly import NCPoly, TensorPoly, TruncSeries, delta_conc
from .products import delta_phi, phi_shuffle
from .projectors import antipode, pi1, pi_n
from .scalars import PoleError, Scalar
from .textio import (ParseError, format_poly, parse_poly, parse_rational, parse_scalar,
                     poly_to_doc, scalar_to_doc, tensor_to_doc)
from .words import (DEFAULT_ORDER, REVERSED_ORDER, STANDARD, WordError, format_word,
                    lyndon_up_to, parse_alphabet, parse_word)


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------------

def _load_law(args) -> PhiLaw:
    if getattr(args, "law_file", None):
        try:
            with open(args.law_file, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read law file {args.law_file}: {exc}") from None
        law = law_from_doc(doc)
    else:
        law = builtin_law(args.law)
    if args.order != DEFAULT_ORDER:
        law.alphabet = law.alphabet.with_order(args.order)
    return law


def _specialize(args, value):
    """Specialize q after the computation when ``--q`` was given."""
    if args.q is None:
        return value
    q0 = args.q
    if isinstance(value, (NCPoly, TensorPoly)):
        return value.specialize(q0)
    if isinstance(value, Scalar):
        return Scalar(value.specialize(q0))
    return value


class Output:
    def __init__(self, args):
        self.machine = args.machine
        self.lines: list[str] = []
        self.doc: dict = {}

    def poly(self, P: NCPoly, key: str = "result"):
        if self.machine:
            self.doc[key] = poly_to_doc(P)
        else:
            self.lines.append(format_poly(P))

    def tensor(self, T: TensorPoly):
        if self.machine:
            self.doc["result"] = tensor_to_doc(T)
        else:
            self.lines.append(str(T))

    def entry(self, kind: str, w, P: NCPoly):
        if self.machine:
            self.doc.setdefault("entries", []).append(
                {"kind": kind, "word": [f"y{k}" for k in w], **poly_to_doc(P)})
        else:
            self.lines.append(f"{kind} {format_word(w)} = {format_poly(P)}")

    def text(self, line: str, **fields):
        if self.machine:
            for k, v in fields.items():
                self.doc[k] = v
            self.doc.setdefault("messages", []).append(line)
        else:
            self.lines.append(line)

    def emit(self, stream):
        if self.machine:
            stream.write(json.dumps(self.doc, sort_keys=False) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")


def _poly_arg(text: str) -> NCPoly:
    return parse_poly(text)


def _word_arg(text: str):
    return parse_word(text)


# -- commands ----------------------------------------------------------------------------

def cmd_law(args, out: Output) -> int:
    law = _load_law(args)
    rep = analyze_law(law, args.weight)
    flags = {"associative": rep.associative, "commutative": rep.commutative,
             "dualizable": rep.dualizable, "moderate": rep.moderate}
    if out.machine:
        out.doc.update({"law": law.name, **flags, "verified_up_to_weight": rep.verified_up_to_weight,
                        "moderation_index": rep.moderation_index, "notes": rep.notes})
        return 0
    out.text(f"law: {law.name}")
    for k, v in flags.items():
        out.text(f"{k}: {str(v).lower()}")
    out.text(f"verified_up_to_weight: {rep.verified_up_to_weight if rep.verified_up_to_weight is not None else 'all'}")
    if rep.moderation_index is not None:
        out.text(f"moderation_index: {rep.moderation_index}")
    for n in rep.notes:
        out.text(f"note: {n}")
    return 0


def cmd_mul(args, out: Output) -> int:
    law = _load_law(args)
    out.poly(_specialize(args, phi_shuffle(law, _poly_arg(args.left), _poly_arg(args.right))))
    return 0


def cmd_coproduct(args, out: Output) -> int:
    P = _poly_arg(args.poly)
    if args.conc:
        T = delta_conc(P, args.arity)
    else:
        T = delta_phi(_load_law(args), P, args.arity)
    out.tensor(_specialize(args, T))
    return 0


def cmd_pi1(args, out: Output) -> int:
    law = _load_law(args)
    out.poly(_specialize(args, pi1(law, _poly_arg(args.poly), args.side)))
    return 0


def cmd_pin(args, out: Output) -> int:
    law = _load_law(args)
    out.poly(_specialize(args, pi_n(law, _poly_arg(args.poly), args.n, args.side)))
    return 0


def cmd_antipode(args, out: Output) -> int:
    law = _load_law(args)
    out.poly(_specialize(args, antipode(law, _poly_arg(args.poly))))
    return 0


def cmd_basis(args, out: Output) -> int:
    law = _load_law(args)
    kind = "PI" if args.kind == "pi" else "SIGMA"
    fn = pi_element if args.kind == "pi" else sigma_element
    if args.word:
        w = _word_arg(args.word)
        if not w:
            raise UsageError("basis elements are indexed by nonempty words")
        out.entry(kind, w, _specialize(args, fn(law, w)))
        return 0
    if args.weight is None:
        raise UsageError("give a word or --weight for a full table")
    table = build_basis_table(law, args.weight)
    elems = table.pi_elements if args.kind == "pi" else table.sigma_elements
    for w, P in elems.items():
        out.entry(kind, w, _specialize(args, P))
    return 0


def cmd_gram(args, out: Output) -> int:
    law = _load_law(args)
    rep = gram_check(law, args.weight)
    out.text(str(rep), ok=rep.ok)
    return 0 if rep.ok else 1


def cmd_factorize(args, out: Output) -> int:
    law = _load_law(args)
    lhs = schutzenberger(law, args.weight)
    rhs = diagonal(law.alphabet, args.weight)
    if lhs == rhs:
        out.text(f"OK: product equals diagonal (weight<={args.weight})", ok=True)
        return 0
    diff = lhs - rhs
    (u, v), c = diff.items()[0]
    out.text(f"FAIL: product differs from diagonal at [{format_word(u)}|{format_word(v)}] by {c}",
             ok=False)
    return 1


def cmd_coords(args, out: Output) -> int:
    law = _load_law(args)
    S = TruncSeries(_poly_arg(args.series), args.weight, law.alphabet)
    chart = local_coordinates(law, S)
    for l, c in chart.coords.items():
        c = _specialize(args, c)
        if out.machine:
            out.doc.setdefault("coords", []).append(
                {"word": [f"y{k}" for k in l], **scalar_to_doc(c)})
        else:
            out.lines.append(f"COORD {format_word(l)} = {c}")
    return 0


def cmd_reconstruct(args, out: Output) -> int:
    law = _load_law(args)
    values = {}
    for item in args.coords:
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"coordinate must look like WORD=VALUE, got {item!r}")
        values[_word_arg(name)] = parse_scalar(val)
    chart = CoordinateChart.from_values(law, args.weight, values)
    out.poly(_specialize(args, reconstruct(chart).as_poly()))
    return 0


def cmd_lyndon(args, out: Output) -> int:
    if args.alphabet:
        alphabet = parse_alphabet(args.alphabet, args.order)
    else:
        alphabet = STANDARD.with_order(args.order)
    words = lyndon_up_to(alphabet, args.weight)
    if out.machine:
        out.doc["lyndon"] = [[f"y{k}" for k in w] for w in words]
    else:
        out.lines.extend(format_word(w) for w in words)
    return 0


# -- parser ----------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("law and output")
    g.add_argument("--law", default="qstuffle",
                   help=f"built-in law ({', '.join(sorted(CATALOG))}); default qstuffle")
    g.add_argument("--law-file", help="JSON law definition (overrides --law)")
    g.add_argument("--q", type=_rational, default=None,
                   help="specialize q to this rational after computing")
    g.add_argument("--order", choices=[DEFAULT_ORDER, REVERSED_ORDER], default=DEFAULT_ORDER,
                   help="letter order: default is y1 > y2 > ...")
    g.add_argument("--machine", action="store_true", help="print JSON instead of text")

    p = argparse.ArgumentParser(prog="phishuffle",
                                description="Exact computations in phi-deformed shuffle algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    law = sub.add_parser("law", help="law utilities")
    law_sub = law.add_subparsers(dest="law_command", required=True, metavar="ACTION")
    a = law_sub.add_parser("analyze", parents=[common], help="check law properties")
    a.add_argument("--weight", type=int, default=6, help="check range (>= 2)")
    a.set_defaults(func=cmd_law)

    m = sub.add_parser("mul", parents=[common], help="phi-shuffle product of two polynomials")
    m.add_argument("left")
    m.add_argument("right")
    m.set_defaults(func=cmd_mul)

    c = sub.add_parser("coproduct", parents=[common], help="coproduct dual to the product")
    c.add_argument("poly")
    c.add_argument("--arity", type=int, default=2, help="number of tensor legs")
    c.add_argument("--conc", action="store_true", help="deconcatenation instead")
    c.set_defaults(func=cmd_coproduct)

    for name, func, helptext in (("pi1", cmd_pi1, "first Eulerian projector"),
                                 ("pin", cmd_pin, "n-th Eulerian projector")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("poly")
        if name == "pin":
            s.add_argument("--n", type=int, required=True)
        s.add_argument("--side", choices=["standard", "adjoint"], default="standard")
        s.set_defaults(func=func)

    s = sub.add_parser("antipode", parents=[common], help="antipode of (shuffle, deconcatenation)")
    s.add_argument("poly")
    s.set_defaults(func=cmd_antipode)

    b = sub.add_parser("basis", parents=[common], help="PBW element PI or dual element SIGMA")
    b.add_argument("kind", choices=["pi", "sigma"])
    b.add_argument("word", nargs="?")
    b.add_argument("--weight", type=_positive, help="full table up to this weight")
    b.set_defaults(func=cmd_basis)

    s = sub.add_parser("gram", parents=[common], help="verify <SIGMA_u, PI_v> = delta")
    s.add_argument("--weight", type=_positive, default=4)
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("factorize", parents=[common], help="verify the factorization of the diagonal")
    s.add_argument("--weight", type=_positive, default=3)
    s.set_defaults(func=cmd_factorize)

    s = sub.add_parser("coords", parents=[common], help="local coordinates of a group-like series")
    s.add_argument("series")
    s.add_argument("--weight", type=_positive, required=True)
    s.set_defaults(func=cmd_coords)

    s = sub.add_parser("reconstruct", parents=[common], help="series from local coordinates")
    s.add_argument("coords", nargs="*", help="WORD=VALUE items, e.g. y1=2 y2.y1=1/3")
    s.add_argument("--weight", type=_positive, required=True)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("lyndon", parents=[common], help="list Lyndon words")
    s.add_argument("--alphabet", help="letters like y1,y2 or y1:1,y2:3")
    s.add_argument("--weight", type=_positive, required=True)
    s.set_defaults(func=cmd_lyndon)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    # "--q -1/2": argparse would take a negative fraction for an option
    argv, i = [], 0
    while i < len(raw):
        if raw[i] == "--q" and i + 1 < len(raw) and raw[i + 1].startswith("-"):
            argv.append(f"--q={raw[i + 1]}")
            i += 2
        else:
            argv.append(raw[i])
            i += 1
    try:
        args, extra = parser.parse_known_args(argv)
        # "basis pi --law X y2": argparse has already closed the optional word slot
        if (extra and args.command == "basis" and args.word is None and len(extra) == 1
                and not extra[0].startswith("-")):
            args.word, extra = extra[0], []
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args)
    try:
        code = args.func(args, out)
    except (UsageError, LawError, ParseError, WordError, PoleError, ValueError,
            ArithmeticError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    out.emit(stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
