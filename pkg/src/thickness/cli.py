"""Command-line interface.

Exit codes: 0 ok, 2 bad input, 3 inconclusive, 4 hypotheses fail,
5 nothing found, 6 illegal move.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import dimension, documents, game, gaplemma1d, gaplemmard, patterns1d, setsrd
from .core1d import CutOutSet1D
from .errors import (HypothesisError, IllegalMoveError, InconclusiveError,
                     NonterminationError, NotFoundError, ParseError, ThicknessError,
                     UnknownError)
from .exact import Enclosure, Q, fmt

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_HYPOTHESIS, EXIT_NOT_FOUND, EXIT_ILLEGAL = 0, 2, 3, 4, 5, 6
DEPTH_1D, DEPTH_RD, DEPTH_AP = 20, 6, 5


@dataclass
class ResultRecord:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    status: int = EXIT_OK

    def say(self, line: str):
        self.lines.append(line)

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "inputs": self.inputs,
                           "outputs": self.outputs, "status": self.status}, sort_keys=True)


def _tau_text(enc) -> str:
    if isinstance(enc, Enclosure):
        return f"tau = {enc}" if enc.exact else f"tau in {enc}"
    return f"tau = {fmt(enc)} (exact)"


def _enc_json(enc):
    if isinstance(enc, Enclosure):
        return {"lo": fmt(enc.lo), "hi": fmt(enc.hi), "exact": enc.exact}
    return {"lo": fmt(enc), "hi": fmt(enc), "exact": True}


# -- commands -------------------------------------------------------------------

def cmd_thickness(args) -> ResultRecord:
    doc = documents.load(args.file)
    rec = ResultRecord("thickness", {"file": args.file, "kind": doc.kind, "depth": args.depth})
    obj = doc.value
    if isinstance(obj, CutOutSet1D):
        tau = obj.thickness(args.depth or DEPTH_1D)
    elif isinstance(obj, setsrd.FYCutOutSpec):
        tau = setsrd.fy_thickness(obj)
    else:
        tau = setsrd.thickness_rd(obj, args.depth or DEPTH_RD)
    rec.outputs["tau"] = _enc_json(tau)
    rec.say(_tau_text(tau))
    return rec


def cmd_gap_lemma(args) -> ResultRecord:
    a, b = documents.load(args.file_a), documents.load(args.file_b)
    rec = ResultRecord("gap-lemma", {"a": args.file_a, "b": args.file_b, "depth": args.depth})
    if a.dimension != b.dimension or a.kind == "fy_cutout" or b.kind == "fy_cutout":
        raise ParseError("documents must be two sets of the same dimension")
    if a.kind in documents.ONE_DIM and b.kind in documents.ONE_DIM:
        rep = gaplemma1d.check_gap_lemma(a.value, b.value, args.depth or DEPTH_1D)
        rec.say(f"convex hulls intersect: {str(rep.hulls_intersect).lower()}")
        rec.say(f"neither set inside a gap of the other: {str(rep.neither_in_gap).lower()}")
        rec.say(f"thickness product = {rep.product_enclosure}")
        rec.say(f"product >= 1: {str(rep.thickness_product_ok).lower()}")
        rec.outputs["report"] = {"hulls_intersect": rep.hulls_intersect,
                                 "neither_in_gap": rep.neither_in_gap,
                                 "product": _enc_json(rep.product_enclosure),
                                 "product_ok": rep.thickness_product_ok}
        if not rep.passed:
            if rep.offending_witness is not None:
                rec.say(f"offending interval: {rep.offending_witness!r}")
            rec.status = EXIT_HYPOTHESIS
            return rec
        if args.find_point:
            w = gaplemma1d.linked_gap_iteration(a.value, b.value, Q(args.tol))
            rec.say(f"point = {fmt(w.point)} (~{float(w.point):.12g}), error <= {fmt(w.error_bound)}")
            rec.outputs["point"] = fmt(w.point)
            rec.outputs["error_bound"] = fmt(w.error_bound)
        return rec
    if a.kind in documents.ONE_DIM or b.kind in documents.ONE_DIM:
        raise ParseError("cannot mix line sets with cube systems")
    if args.r is None:
        raise ParseError("cube systems need --r")
    rep = gaplemmard.check_gap_lemma_rd(a.value, b.value, Q(args.r), args.depth or DEPTH_RD)
    rec.say(f"r = {fmt(rep.r)}")
    rec.say(f"thickness product = {rep.product_enclosure}; "
            f">= 1/(1-2r)^2: {str(rep.thickness_product_ok).lower()}")
    rec.say(f"uniformly dense: {str(rep.dense1_ok).lower()}, {str(rep.dense2_ok).lower()}")
    rec.say(f"anchor: {str(rep.anchor_ok).lower()}")
    rec.outputs["report"] = {"product_ok": rep.thickness_product_ok, "dense1": rep.dense1_ok,
                             "dense2": rep.dense2_ok, "anchor": rep.anchor_ok}
    if not rep.passed:
        rec.status = EXIT_HYPOTHESIS
    return rec


def _verify_terms(C, terms, error, depth=25):
    for x in terms:
        if C.contains(x):
            continue
        if error == 0 or C.distance_to_truncation(x, depth) > error:
            raise AssertionError(f"witness term {fmt(x)} fails re-verification")


def cmd_patterns(args) -> ResultRecord:
    rec = ResultRecord("patterns", {k: v for k, v in vars(args).items()
                                    if k not in ("func",) and v is not None})
    C = None
    if args.file:
        C = documents.load(args.file).value
        if not isinstance(C, CutOutSet1D):
            raise ParseError("patterns need a set on the line")
    needs_set = args.ap_search is not None or args.three_ap or args.distance is not None
    if needs_set and C is None:
        raise ParseError("this query needs a set file")
    if args.ap_search is not None:
        ap = patterns1d.longest_ap_truncated(C, args.ap_search, args.max_len)
        _verify_terms(C, ap.terms, 0)
        rec.say(f"longest AP length {ap.length}: {','.join(fmt(x) for x in ap.terms)}")
        rec.outputs["ap"] = [fmt(x) for x in ap.terms]
    if args.three_ap:
        ap = patterns1d.find_3ap(C, Q(args.tol))
        _verify_terms(C, ap.terms, ap.error_bound)
        rec.say(", ".join(fmt(x) for x in ap.terms)
                + (f" (error <= {fmt(ap.error_bound)})" if ap.error_bound else ""))
        rec.outputs["three_ap"] = [fmt(x) for x in ap.terms]
    if args.distance is not None:
        t = Q(args.distance)
        w = patterns1d.distance_contains(C, t, Q(args.tol))
        rec.say(f"x = {fmt(w.point)}, x + t = {fmt(w.point + t)}, error <= {fmt(w.error_bound)}")
        rec.outputs["distance"] = {"x": fmt(w.point), "error_bound": fmt(w.error_bound)}
    if args.capacity is not None:
        n = patterns1d.pattern_capacity(Q(args.capacity))
        rec.say(f"N = {n} (natural-log convention)")
        rec.outputs["capacity"] = n
    if args.condition is not None:
        n, tau = int(args.condition[0]), Q(args.condition[1])
        ok = patterns1d.pattern_condition(n, tau)
        rec.say(f"n alpha^c <= (1 - beta^(1-c)) / 720^2 for n = {n}: {str(ok).lower()}")
        rec.outputs["condition"] = ok
    if not rec.lines:
        raise ParseError("no pattern query given")
    return rec


def cmd_game(args) -> ResultRecord:
    doc = documents.load(args.file)
    C = doc.value
    if not isinstance(C, CutOutSet1D):
        raise ParseError("games need a set on the line")
    beta = Q(args.beta)
    alice = game.alice_thickness_strategy(C, beta)
    if args.bob == "center":
        bob = game.CenterBob()
    elif args.bob == "random":
        bob = game.RandomBob(args.seed)
    else:
        bob = game.AdversaryBob(C)
    t = game.run_game(alice, bob, alice.envelope, Q(args.stop))
    verdict = game.verify_winning_run(t, alice.target)
    rec = ResultRecord("game", {"file": args.file, "beta": fmt(beta), "bob": args.bob,
                                "seed": args.seed, "stop": args.stop})
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(t.to_jsonl())
    rec.say(f"params: alpha={fmt(alice.envelope.alpha)} beta={fmt(beta)} c=0 rho={fmt(alice.envelope.rho)}")
    rec.say(f"turns: {t.turns}, erasures: {len(t.erased_balls())}")
    rec.say(f"verdict: {verdict}")
    rec.outputs = {"verdict": verdict, "turns": t.turns}
    return rec


def _emit_rows(kind, args):
    if kind == "dim_curve":
        yield ["tau", "beta_bound"]
        for k in range(args.kmin, args.kmax + 1):
            tau = Fraction(2) ** k / 16
            yield [fmt(tau), f"{dimension.dim_lower_bound_1d(tau).value:.12g}"]
    elif kind == "ap_bounds":
        yield ["epsilon", "ap_upper_bound", "bfs_lower_bound"]
        for k in range(3, args.kmax + 3):
            eps = Fraction(1, k)
            yield [fmt(eps), str(patterns1d.ap_upper_bound_middle(eps)),
                   f"{patterns1d.bfs_lower_bound(float(eps), args.c):.12g}"]
    elif kind == "region":
        tau = Q(args.tau)
        beta = dimension.dim_lower_bound_1d(tau).value
        yield ["x", "y", "g_value"]
        for p in dimension.region_boundary(tau, args.samples):
            yield [f"{p.x:.12g}", f"{p.y:.12g}", f"{p.x ** beta + p.y ** beta:.12g}"]
    else:
        raise ParseError(f"unknown CSV kind {kind!r}")


def cmd_emit_csv(args) -> ResultRecord:
    rows = list(_emit_rows(args.kind, args))
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        csv.writer(out, lineterminator="\n").writerows(rows)
    finally:
        if args.out:
            out.close()
    rec = ResultRecord("emit-csv", {"kind": args.kind, "out": args.out})
    rec.outputs["rows"] = len(rows) - 1
    if args.out:
        rec.say(f"wrote {len(rows) - 1} rows to {args.out}")
    return rec


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thickness", description="Thick Cantor sets, exactly.")
    p.add_argument("--json", action="store_true", help="print a JSON result record")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("thickness", help="thickness of a set document")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=None)
    s.set_defaults(func=cmd_thickness)

    s = sub.add_parser("gap-lemma", help="check Gap Lemma hypotheses for two sets")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--find-point", action="store_true")
    s.add_argument("--tol", default="1e-9")
    s.add_argument("--r", default=None, help="denseness parameter for cube systems")
    s.set_defaults(func=cmd_gap_lemma)

    s = sub.add_parser("patterns", help="progressions, distances and capacity formulas")
    s.add_argument("file", nargs="?")
    s.add_argument("--ap-search", type=int, metavar="DEPTH", nargs="?", const=DEPTH_AP)
    s.add_argument("--max-len", type=int, default=64)
    s.add_argument("--three-ap", action="store_true")
    s.add_argument("--distance", metavar="T")
    s.add_argument("--capacity", metavar="TAU")
    s.add_argument("--condition", nargs=2, metavar=("N", "TAU"))
    s.add_argument("--tol", default="1e-9")
    s.set_defaults(func=cmd_patterns)

    s = sub.add_parser("game", help="play one potential game against the thickness strategy")
    s.add_argument("file")
    s.add_argument("--beta", default="1/4")
    s.add_argument("--bob", choices=("center", "random", "adversary"), default="adversary")
    s.add_argument("--stop", default="1e-12")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--transcript", default=None)
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("emit-csv", help="CSV data for figures")
    s.add_argument("kind")
    s.add_argument("--out", default=None)
    s.add_argument("--kmin", type=int, default=0)
    s.add_argument("--kmax", type=int, default=10)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--tau", default="1")
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(func=cmd_emit_csv)
    return p


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, IllegalMoveError):
        return EXIT_ILLEGAL
    if isinstance(exc, NotFoundError):
        return EXIT_NOT_FOUND
    if isinstance(exc, HypothesisError):
        return EXIT_HYPOTHESIS
    if isinstance(exc, (InconclusiveError, UnknownError, NonterminationError)):
        return EXIT_INCONCLUSIVE
    return EXIT_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        rec = args.func(args)
    except (ThicknessError, ValueError) as exc:
        code = _exit_code(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code
    if args.json:
        print(rec.to_json())
    else:
        for line in rec.lines:
            print(line)
    return rec.status


if __name__ == "__main__":
    sys.exit(main())
