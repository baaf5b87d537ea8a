"""Command line entry point: ``qme classify-qm | oracle | hilbert | rm``.

Exit codes: 0 success, 1 oracle disagreement, 2 invalid input.
"""
import argparse
import json
import sys
from fractions import Fraction

from . import brauer, hondatate, qm, rm
from .arith import factorize, hilbert_symbol, relevant_places
from .errors import DomainError, NoPositiveInvolution
from .quadfields import RATIONALS, FieldDesc

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2


def dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def _datum(S):
    if S < 2:
        raise DomainError(f"discriminant must be >= 2, got {S}")
    f = factorize(S)
    if not f.is_squarefree():
        raise DomainError(f"discriminant {S} is not squarefree")
    if len(f) % 2:
        raise DomainError(
            f"discriminant {S} has an odd number of prime factors; an indefinite "
            "quaternion algebra over Q ramifies at an even number of primes")
    return qm.QmDatum.from_discriminant(S)


def _entry_dict(e):
    return {"n": list(e.ns), "field": e.field.d, "p": e.p, "algebra": brauer.to_dict(e.algebra)}


def cmd_classify_qm(args, out):
    datum = _datum(args.discriminant)
    report = qm.classify(datum, args.field_bound, include_star_fields=args.star_fields)
    out.write(dump(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK


def cmd_oracle(args, out):
    datum = _datum(args.discriminant)
    n_max = args.n_max if args.n_max is not None else hondatate.default_n_max()
    oracle = hondatate.oracle_menu(datum, args.a_max, n_max)
    classifier = qm.supersingular_menu(datum)
    agree = oracle == classifier
    verdict = "AGREE" if agree else "DISAGREE"
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            hondatate.dump_csv(datum, args.a_max, n_max, fh)
    if args.json:
        out.write(dump({
            "discriminant": datum.discriminant, "a_max": args.a_max, "n_max": n_max,
            "oracle": [_entry_dict(e) for e in oracle],
            "classifier": [_entry_dict(e) for e in classifier],
            "verdict": verdict,
        }))
    else:
        out.write(f"Discriminant {datum.discriminant}; Weil numbers sqrt(p^a)*zeta_n, "
                  f"a <= {args.a_max}, n <= {n_max}\n")
        for title, menu in (("oracle", oracle), ("classifier", classifier)):
            out.write(f"{title}:\n")
            if not menu:
                out.write("  (empty)\n")
            for e in menu:
                ns = ",".join(str(n) for n in e.ns)
                out.write(f"  n={ns}  K={e.field}  p={e.p}  E={e.algebra}\n")
        out.write(verdict + "\n")
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_hilbert(args, out):
    a, b = args.a, args.b
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    table = [(str(v), hilbert_symbol(a, b, v)) for v in relevant_places(a, b)]
    D = brauer.quaternion_from_symbol(a, b)
    ram = [p.label for p in D.ramified()]
    kind = "split" if D.is_split else ("definite" if "inf" in ram else "indefinite")
    if args.json:
        out.write(dump({"a": a, "b": b, "symbols": [list(t) for t in table], "ramified": ram,
                        "discriminant": D.discriminant, "kind": kind}))
    else:
        out.write(f"({a}, {b})_v\n")
        for place, s in table:
            out.write(f"  {place:>6}  {s:+d}\n")
        if D.is_split:
            out.write("unramified everywhere: Mat_2(Q)\n")
        else:
            out.write(f"ramified at {{{', '.join(ram)}}}; discriminant {D.discriminant} ({kind})\n")
    return EXIT_OK


def _parse_inv(text, K):
    inv = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        label, sep, value = item.partition(":")
        if not sep:
            raise DomainError(f"invariant entry {item!r} should look like 13.1:1/2")
        place = brauer.AlgebraPlace.parse(K, label)
        try:
            inv[place] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"bad invariant value {value!r}") from None
    return inv


def cmd_rm(args, out):
    F = rm.load_field_spec(args.field)
    shapes, verdict = None, None
    if args.type1:
        shapes = rm.type1_shapes(F)
    elif args.type3:
        if args.p is None:
            raise DomainError("--type3 needs --p")
        shapes = rm.type3_shapes(F, args.p, args.assume_h)
    elif args.type2:
        if args.delta_disc is None or args.n is None:
            raise DomainError("--type2 needs --delta-disc and --n")
        delta = brauer.quaternion_from_discriminant(args.delta_disc)
        verdict = "realizable" if rm.type2_check(F, RATIONALS, delta, args.n) else "not realizable"
    else:
        if args.cm_d is None or args.delta_inv is None or args.n is None:
            raise DomainError("--type4 needs --cm-d, --delta-inv and --n")
        K = FieldDesc(args.cm_d)
        inv = _parse_inv(args.delta_inv, K)
        m = args.m if args.m is not None else max([x.denominator for x in inv.values()] + [1])
        delta = brauer.CentralSimpleClass(K, m, inv)
        try:
            ok = rm.type4_check(F, RATIONALS, K, delta, m, args.n)
            verdict = "realizable" if ok else "not realizable"
        except NoPositiveInvolution as exc:
            verdict = "no positive involution"
            args.reason = str(exc)
    if shapes is not None:
        if args.json:
            out.write(dump({"shapes": [s.to_dict() for s in shapes]}))
        else:
            for s in shapes:
                out.write(str(s) + "\n")
            if args.type3 and args.assume_h:
                out.write("complete list assuming hypothesis (H)\n")
    else:
        reason = getattr(args, "reason", None)
        if args.json:
            obj = {"verdict": verdict}
            if reason:
                obj["reason"] = reason
            out.write(dump(obj))
        else:
            out.write(verdict + (f": {reason}" if reason else "") + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qme",
        description="Which algebras can be End^0 of a QM surface or an RM abelian variety, computed exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-qm", help="menu of endomorphism algebras for QM by D of discriminant S")
    p.add_argument("discriminant", type=int)
    p.add_argument("--field-bound", type=int, default=qm.DEFAULT_FIELD_BOUND)
    p.add_argument("--star-fields", action="store_true",
                   help="also list fields meeting the necessary splitting condition (conditional on (H))")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify_qm)

    p = sub.add_parser("oracle", help="cross-check the supersingular menu against Weil numbers")
    p.add_argument("discriminant", type=int)
    p.add_argument("--a-max", type=int, default=hondatate.DEFAULT_A_MAX)
    p.add_argument("--n-max", type=int, default=None, help="default 60 or $QME_ORACLE_NMAX")
    p.add_argument("--csv", metavar="PATH", help="dump the full enumeration")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("hilbert", help="Hilbert symbols (a,b)_v and the resulting quaternion algebra")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("rm", help="RM endomorphism algebra shapes")
    p.add_argument("--field", required=True, help="q, sqrtD, inline JSON or a JSON file")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--type1", action="store_true")
    kind.add_argument("--type2", action="store_true")
    kind.add_argument("--type3", action="store_true")
    kind.add_argument("--type4", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--assume-h", action="store_true")
    p.add_argument("--delta-disc", type=int, help="Type II: discriminant of Delta over Q")
    p.add_argument("--cm-d", type=int, help="Type IV: K = Q(sqrt d), d < 0")
    p.add_argument("--delta-inv", help="Type IV: invariants, e.g. 13.1:1/2,13.2:1/2")
    p.add_argument("--m", type=int, help="Type IV: degree of Delta (default: its index)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rm)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        return args.func(args, out)
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
