"""Command-line front end.

Polynomials are given low-to-high: ``"2 -3 0 1"`` is ``x^3 - 3x + 2``.
Exit codes: 0 all roots real and distinct (or success), 1 not all real,
2 degenerate / boundary, 3 unresolved within the refinement budget,
64 bad input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import random
import re
import sys
from fractions import Fraction
from typing import Iterable, Optional

from . import __version__
from .builder import DEFAULT_GATE, DEFAULT_MARGIN, sample_state
from .conjecture import batch_report, write_counterexamples
from .enclosure import DEFAULT_MAX_REFINE, Enclosure, Interval, Status
from .exceptions import ParseError, RealRootedError, Unresolved
from .interlace import Certificate, Verdict, certify_all_real, detect_degenerate
from .params import QuarticParams, QuinticParams
from .poly import Polynomial, format_poly, format_rational, parse_poly, parse_rational, pretty, read_corpus
from .quintic import (
    admissible_s_interval,
    degenerate_consecutive,
    degenerate_separated,
    hypothesis_check,
    quartic_conditions,
    sublevel_s_interval_via_R2roots,
    triple_double_point,
)
from .roots import RealRoot, isolate_real_roots
from .sturm import all_real_rooted_sturm, count_real_roots, quintic_sturm_conditions

EXIT_OK, EXIT_NOT_REAL, EXIT_DEGENERATE, EXIT_UNRESOLVED, EXIT_USAGE = 0, 1, 2, 3, 64

VERDICT_EXIT = {
    Verdict.ALL_REAL_DISTINCT: EXIT_OK,
    Verdict.NOT_ALL_REAL: EXIT_NOT_REAL,
    Verdict.DEGENERATE: EXIT_DEGENERATE,
    Verdict.HYPOTHESIS_UNRESOLVED: EXIT_UNRESOLVED,
}
STATUS_EXIT = {Status.YES: EXIT_OK, Status.NO: EXIT_NOT_REAL, Status.BOUNDARY: EXIT_DEGENERATE, Status.UNRESOLVED: EXIT_UNRESOLVED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept "-9/2" as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(?:/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- output ------------------------------------------------------------------------


def rat(x) -> str:
    """Machine form of a rational: always ``num/den``."""
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def outward(e: Enclosure, tol) -> Enclosure:
    """Round a refined enclosure outwards to dyadic endpoints of step <= tol/4."""
    if e.is_exact or isinstance(e.lo, float) or isinstance(e.hi, float):
        return e
    e = e.refine_to(tol / 2)
    if e.is_exact:
        return e
    k = max(0, math.ceil(math.log2(4 / tol)))
    lo = Fraction(math.floor(e.lo * (1 << k)), 1 << k)
    hi = Fraction(math.ceil(e.hi * (1 << k)), 1 << k)
    return Enclosure(lo, hi)


def enc_json(e: Enclosure) -> dict:
    return {"lo": rat(e.lo), "hi": rat(e.hi)}


def approx(e, tol: Fraction) -> str:
    """Exact value, or a midpoint with the enclosure width it was refined to."""
    if isinstance(e, Fraction):
        return format_rational(e)
    if e.is_exact:
        return format_rational(e.lo) if not isinstance(e.lo, float) else ("inf" if e.lo > 0 else "-inf")
    if isinstance(e.lo, float) or isinstance(e.hi, float):
        return str(e)
    e = e.refine_to(tol)
    if e.is_exact:
        return format_rational(e.lo)
    return f"~{float(e.midpoint()):.12g}"


def interval_text(iv: Interval, tol) -> str:
    return f"]{approx(iv.lo, tol)}; {approx(iv.hi, tol)}["


def interval_json(iv: Interval, tol) -> dict:
    out = {}
    for name, e in (("lo", iv.lo), ("hi", iv.hi)):
        out[name] = enc_json(outward(e, tol))
    return out


def root_key(r: RealRoot):
    return format_rational(r.lo) if r.is_exact else f"({format_rational(r.lo)}, {format_rational(r.hi)})"


def profile_text(roots, tol) -> str:
    items = []
    for r in sorted(roots, key=lambda r: r.lo, reverse=True):
        r = r if r.is_exact else r.refine_to(tol)
        label = format_rational(r.lo) if r.is_exact else f"~{float(r.lo + r.hi) / 2:.12g}"
        items.append(f"{label}: {r.multiplicity}")
    return "{" + ", ".join(items) + "}"


def profile_json(roots, tol) -> list:
    out = []
    for r in sorted(roots, key=lambda r: r.lo, reverse=True):
        r = r if r.is_exact else r.refine_to(tol)
        out.append({"lo": rat(r.lo), "hi": rat(r.hi), "multiplicity": r.multiplicity})
    return out


class Emitter:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    @property
    def machine(self) -> bool:
        return self.fmt == "machine"

    def text(self, line: str = ""):
        if not self.machine:
            print(line, file=self.stream)

    def record(self, rec: dict):
        if self.machine:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")), file=self.stream)


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


# -- input -------------------------------------------------------------------------


def read_poly_args(tokens: list[str]) -> Polynomial:
    return parse_poly(" ".join(tokens))


def poly_inputs(args) -> Iterable[tuple[Optional[int], object]]:
    """``(line, Polynomial | ParseError)`` pairs from inline tokens or a file."""
    if args.file:
        with _open(args.file) as fh:
            yield from read_corpus(fh)
        return
    if not args.coeffs:
        raise UsageError("give coefficients or --file")
    try:
        yield None, read_poly_args(args.coeffs)
    except ParseError as exc:
        yield None, exc


def _open(path: str):
    return contextlib.nullcontext(sys.stdin) if path == "-" else open(path, encoding="utf-8")


def R(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None


# -- verbs -------------------------------------------------------------------------


def certificate_record(P: Polynomial, cert: Certificate, tol) -> dict:
    rec = {
        "kind": "certificate",
        "poly": [rat(c) for c in P.coeffs],
        "verdict": cert.verdict.value,
        "failed_level": cert.failed_level,
        "notes": cert.notes,
        "levels": [],
    }
    if cert.form is not None:
        rec["shift"] = rat(cert.form.shift)
        rec["scale"] = rat(cert.form.scale)
    for lv in cert.trail:
        rec["levels"].append({
            "level": lv.level,
            "a0": rat(lv.a0),
            "signs": list(lv.signs),
            "required": list(lv.required),
            "status": lv.status.value,
            "interval": interval_json(lv.interval, tol) if lv.interval is not None else None,
        })
    if cert.degeneracy is not None:
        rec["degeneracy"] = {
            "kind": cert.degeneracy.kind.value,
            "multiplicities": list(cert.degeneracy.multiplicities),
            "profile": profile_json(cert.degeneracy.real_roots, tol),
            "witnessed": cert.degeneracy.witnessed,
        }
    return rec


def _signs(signs) -> str:
    return " ".join("+" if s > 0 else "-" if s < 0 else "0" for s in signs)


def emit_certificate(out: Emitter, P: Polynomial, cert: Certificate, tol):
    verdict = cert.verdict.value
    if cert.degeneracy is not None:
        verdict += f"({cert.degeneracy.kind.value})"
    out.text(f"polynomial: {pretty(P)}")
    out.text(f"verdict: {verdict}")
    if cert.form is not None and (cert.form.shift != 0 or cert.form.scale != 1):
        out.text(f"normalised: shift {format_rational(cert.form.shift)}, scale {format_rational(cert.form.scale)}")
    for lv in cert.trail:
        iv = interval_text(lv.interval, tol) if lv.interval is not None else "-"
        out.text(
            f"  level {lv.level}: a0 = {format_rational(lv.a0)} in {iv}; "
            f"signs {_signs(lv.signs) or '?'} (need {_signs(lv.required)}) [{lv.status.value}]"
        )
    if cert.degeneracy is not None:
        out.text(f"profile: {profile_text(cert.degeneracy.real_roots, tol)}")
    for note in cert.notes:
        out.text(f"note: {note}")
    out.record(certificate_record(P, cert, tol))


def cmd_certify(args, out: Emitter) -> int:
    worst, bad_input = EXIT_OK, False
    for line, item in poly_inputs(args):
        if isinstance(item, ParseError):
            _err(str(item))
            bad_input = True
            continue
        if item.degree < 1:
            _err(f"{'line %d: ' % line if line else ''}degree must be at least 1")
            bad_input = True
            continue
        cert = certify_all_real(item, args.max_refine)
        emit_certificate(out, item, cert, args.tol)
        worst = max(worst, VERDICT_EXIT[cert.verdict])
    return EXIT_USAGE if bad_input and worst == EXIT_OK else worst


def cmd_count(args, out: Emitter) -> int:
    P = read_poly_args(args.coeffs)
    lo = -math.inf if args.lo is None else R(args.lo)
    hi = math.inf if args.hi is None else R(args.hi)
    n = count_real_roots(P, lo, hi)
    out.text(str(n))
    out.record({"kind": "count", "poly": [rat(c) for c in P.coeffs], "lo": rat(lo), "hi": rat(hi), "count": n})
    return EXIT_OK


def cmd_interval(args, out: Emitter) -> int:
    P = read_poly_args(args.coeffs)
    roots = isolate_real_roots(P).refined_to(args.tol)
    for r in roots:
        out.text(f"{root_key(r)}  multiplicity {r.multiplicity}")
    out.record({
        "kind": "roots",
        "poly": [rat(c) for c in P.coeffs],
        "roots": [{"lo": rat(r.lo), "hi": rat(r.hi), "multiplicity": r.multiplicity} for r in roots],
    })
    return EXIT_OK


def cmd_build(args, out: Emitter) -> int:
    for k in range(args.count):
        seed = args.seed + k
        st = sample_state(args.degree, seed, args.margin, args.gate, args.max_refine)
        out.text(format_poly(st.poly))
        out.record({
            "kind": "sample",
            "seed": seed,
            "degree": args.degree,
            "poly": [rat(c) for c in st.poly.coeffs],
            "constants": [rat(c) for c, _ in st.history],
        })
    return EXIT_OK


def cmd_degenerate(args, out: Emitter) -> int:
    P = read_poly_args(args.coeffs)
    d = detect_degenerate(P, args.max_refine)
    out.text(f"kind: {d.kind.value}")
    out.text(f"multiplicities: {list(d.multiplicities)}")
    out.text(f"real roots: {profile_text(d.real_roots, args.tol)}")
    if d.witnessed is not None:
        out.text(f"multiple roots shared by P'/n and the remainder: {d.witnessed}")
    out.record({
        "kind": "degeneracy",
        "class": d.kind.value,
        "multiplicities": list(d.multiplicities),
        "profile": profile_json(d.real_roots, args.tol),
        "witnessed": d.witnessed,
    })
    return EXIT_OK


def methods(P: Polynomial, max_refine: int) -> dict:
    """Three independent answers to "n distinct real roots?"."""
    cert = certify_all_real(P, max_refine)
    iso = isolate_real_roots(P)
    return {
        "interlacing": None if cert.verdict is Verdict.HYPOTHESIS_UNRESOLVED else cert.all_real_distinct,
        "sturm": all_real_rooted_sturm(P),
        "isolation": len(iso) == P.degree and all(m == 1 for m in iso.multiplicities),
        "verdict": cert.verdict.value,
    }


def cmd_compare(args, out: Emitter) -> int:
    agree = disagree = unresolved = parse_errors = 0
    with _open(args.corpus) as fh:
        for line, item in read_corpus(fh):
            if isinstance(item, ParseError):
                _err(str(item))
                parse_errors += 1
                out.record({"kind": "parse-error", "line": line, "message": str(item)})
                continue
            if item.degree < 1:
                _err(f"line {line}: degree must be at least 1")
                parse_errors += 1
                continue
            m = methods(item, args.max_refine)
            answers = {m["interlacing"], m["sturm"], m["isolation"]}
            if m["interlacing"] is None:
                unresolved += 1
                ok = m["sturm"] == m["isolation"]
            else:
                ok = len(answers) == 1
            agree += ok
            disagree += not ok
            mark = "ok" if ok else "DISAGREE"
            out.text(
                f"line {line}: interlacing={m['verdict']} sturm={m['sturm']} isolation={m['isolation']} {mark}"
            )
            out.record({"kind": "compare", "line": line, "poly": [rat(c) for c in item.coeffs], "agree": ok, **m})
    out.text(f"{agree} agree, {disagree} disagree, {unresolved} unresolved, {parse_errors} unreadable")
    out.record({"kind": "summary", "agree": agree, "disagree": disagree, "unresolved": unresolved, "parse_errors": parse_errors})
    if disagree:
        return EXIT_NOT_REAL
    return EXIT_USAGE if parse_errors else EXIT_OK


def _random_depressed(n: int, rng: random.Random, height: int = 20) -> Polynomial:
    coeffs = [Fraction(rng.randint(-height, height), rng.randint(1, 6)) for _ in range(n - 1)]
    return Polynomial(coeffs + [0, 1])


def cmd_conjecture(args, out: Emitter) -> int:
    polys = []
    if args.corpus:
        with _open(args.corpus) as fh:
            for line, item in read_corpus(fh):
                if isinstance(item, ParseError):
                    _err(str(item))
                    continue
                polys.append(item)
    else:
        rng = random.Random(args.seed)
        for k in range(args.random):
            if args.builder:
                polys.append(sample_state(args.degree, args.seed + k, args.margin).poly)
            else:
                polys.append(_random_depressed(args.degree, rng))
    summary = batch_report(polys, args.max_refine)
    d = summary.to_dict()
    for key in ("total", "checked", "agreements", "disagreements", "zero_S0", "degenerate", "pivot_degenerate", "product_checked", "product_failures"):
        out.text(f"{key}: {d[key]}")
    out.record({"kind": "conjecture", **d})
    if args.save and summary.counterexamples:
        with open(args.save, "w", encoding="utf-8") as fh:
            write_counterexamples(summary.counterexamples, fh)
        out.text(f"counterexamples written to {args.save}")
    return EXIT_NOT_REAL if summary.counterexamples else EXIT_OK


# -- quintic -----------------------------------------------------------------------


def cmd_quintic_check(args, out: Emitter) -> int:
    params = QuinticParams(R(args.p), R(args.q), R(args.r), R(args.s))
    P = params.assemble()
    cert = certify_all_real(P, args.max_refine)
    emit_certificate(out, P, cert, args.tol)
    rep = quintic_sturm_conditions(params)
    for name, st in rep.conditions.items():
        out.text(f"  sturm {name}: {st.value}")
    out.record({"kind": "quintic-sturm", "conditions": {k: v.value for k, v in rep.conditions.items()}})
    return VERDICT_EXIT[cert.verdict]


def cmd_quintic_sinterval(args, out: Emitter) -> int:
    qp = QuarticParams(R(args.p), R(args.q), R(args.r))
    rec = {"kind": "s-interval", "p": rat(qp.p), "q": rat(qp.q), "r": rat(qp.r)}
    qc = quartic_conditions(qp, args.max_refine)
    rec["quartic"] = {k: v.value for k, v in qc.conditions.items()}
    out.text("quartic conditions: " + ", ".join(f"{k} {v.value}" for k, v in qc.conditions.items()))
    code = EXIT_OK
    if not qc.holds:
        code = STATUS_EXIT[qc.verdict]
        out.text(f"no admissible s: quartic conditions {qc.verdict.value}")
    else:
        h = hypothesis_check(qp, args.max_refine)
        rec["hypothesis"] = {"holds": h.holds.value, "case": h.case.value, "direct": h.direct.value, "branches": h.via_branches.value}
        out.text(f"hypothesis: {h.holds.value} (case {h.case.value}; direct {h.direct.value}, branches {h.via_branches.value})")
        if h.holds:
            iv = admissible_s_interval(qp, args.max_refine)
            rec["interval"] = interval_json(iv, args.tol)
            out.text(f"s in {interval_text(iv, args.tol)}")
        else:
            code = STATUS_EXIT[h.holds]
            out.text("no admissible s")
    try:
        sub = sublevel_s_interval_via_R2roots(qp)
        rec["sublevel"] = interval_json(sub, args.tol)
        out.text(f"sublevel (R3 real-rooted): s in {interval_text(sub, args.tol)}")
    except RealRootedError as exc:
        rec["sublevel"] = None
        out.text(f"sublevel: {type(exc).__name__}: {exc}")
    out.record(rec)
    return code


def cmd_quintic_degenerate(args, out: Emitter) -> int:
    p = R(args.p)
    if args.family == "triple":
        members = triple_double_point(p, args.max_refine)
    else:
        if args.r is None:
            raise UsageError("this family needs r")
        fn = degenerate_consecutive if args.family == "consecutive" else degenerate_separated
        members = fn(p, R(args.r), args.max_refine)
    for m in members:
        prof = m.profile(args.max_refine)
        out.text(
            f"q={approx(m.q, args.tol)} r={format_rational(m.r)} s={approx(m.s, args.tol)}"
            f"{'' if m.exact else ' (enclosed)'} profile {list(prof)}"
        )
        rec = {"kind": "degenerate-member", "family": args.family, "p": rat(p), "r": rat(m.r), "exact": m.exact, "profile": list(prof)}
        for name in ("q", "s"):
            v = getattr(m, name)
            rec[name] = rat(v) if isinstance(v, Fraction) else enc_json(outward(v, args.tol))
        out.record(rec)
    return EXIT_OK


# -- wiring ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max-refine", type=int, default=DEFAULT_MAX_REFINE, help="refinement rounds per decision")
    common.add_argument("--tol", type=R, default=Fraction(1, 10**9), help="display width for enclosures")

    ap = _Parser(prog="realrooted", description="Exact real-rootedness certification.", parents=[common])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("certify", parents=[common], help="certify all roots real and distinct")
    c.add_argument("coeffs", nargs="*", help="coefficients, low to high")
    c.add_argument("-f", "--file", help="corpus file ('-' for stdin)")
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("count", parents=[common], help="distinct real roots in (lo, hi]")
    c.add_argument("coeffs", nargs="+")
    c.add_argument("--lo")
    c.add_argument("--hi")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("interval", parents=[common], help="isolating intervals of the real roots")
    c.add_argument("coeffs", nargs="+")
    c.set_defaults(func=cmd_interval)

    c = sub.add_parser("build", parents=[common], help="sample real-rooted polynomials")
    c.add_argument("degree", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--margin", type=R, default=DEFAULT_MARGIN)
    c.add_argument("--gate", type=R, default=Fraction(DEFAULT_GATE))
    c.set_defaults(func=cmd_build)

    c = sub.add_parser("degenerate", parents=[common], help="multiplicity classification")
    c.add_argument("coeffs", nargs="+")
    c.set_defaults(func=cmd_degenerate)

    c = sub.add_parser("compare", parents=[common], help="interlacing vs Sturm vs isolation on a corpus")
    c.add_argument("corpus")
    c.set_defaults(func=cmd_compare)

    c = sub.add_parser("conjecture", parents=[common], help="last Sturm term vs discriminant")
    c.add_argument("corpus", nargs="?")
    c.add_argument("--random", type=int, default=100)
    c.add_argument("--degree", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--builder", action="store_true", help="sample real-rooted inputs")
    c.add_argument("--margin", type=R, default=DEFAULT_MARGIN)
    c.add_argument("--save", help="write counterexamples here")
    c.set_defaults(func=cmd_conjecture)

    q = sub.add_parser("quintic", parents=[common], help="quintic family tools")
    qs = q.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = qs.add_parser("check", parents=[common])
    for name in "pqrs":
        c.add_argument(name)
    c.set_defaults(func=cmd_quintic_check)
    c = qs.add_parser("s-interval", parents=[common])
    for name in "pqr":
        c.add_argument(name)
    c.set_defaults(func=cmd_quintic_sinterval)
    c = qs.add_parser("degenerate", parents=[common])
    c.add_argument("family", choices=("consecutive", "separated", "triple"))
    c.add_argument("p")
    c.add_argument("r", nargs="?")
    c.set_defaults(func=cmd_quintic_degenerate)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Emitter(args.format)
    try:
        return args.func(args, out)
    except ParseError as exc:
        _err(str(exc))
    except UsageError as exc:
        _err(str(exc))
    except Unresolved as exc:
        _err(f"unresolved: {exc}")
        return EXIT_UNRESOLVED
    except RealRootedError as exc:
        _err(f"{type(exc).__name__}: {exc}")
    except OSError as exc:
        _err(str(exc))
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
