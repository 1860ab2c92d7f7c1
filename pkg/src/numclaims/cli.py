"""Command-line front end.

Exit codes: 0 when results match expectations, 1 on an unexpected finding,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import kernels, ledger, mersenne, theorems
from .forms import (
    PowerForm,
    Strategy,
    divides_generalized_fermat,
    fermat_value,
    find_fermat_factor,
)
from .report import ReportDocument, outcome, summarize

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

SCAN_WORDING = {
    "1": "a^(n-1) mod n in {0, 1} for prime n",
    "2": "a^(n^(m-1)(n-1)) mod n^m in {0, 1} for prime n",
    "3": "a^lcm(p-1) = 1 mod prod(p) for a coprime to the primes",
    "main": "q | a^(q-1) - b^(q-1) for prime q not dividing a, b",
    "square-split": "q = 2m+1 prime divides 2^(2m)-1 and exactly one of 2^m -/+ 1",
}


class UsageError(Exception):
    pass


def _emit(doc: ReportDocument, lines: list[str], out) -> None:
    if doc.format == "json":
        out.write(doc.to_json() + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _check_line(w: dict) -> str | None:
    """Single-step modular check for a divisibility witness, if it carries one."""
    if not {"divisor", "base", "exponent", "sign"} <= w.keys():
        return None
    d, b, e, s = w["divisor"], w["base"], w["exponent"], w["sign"]
    r = kernels.powmod(b, e, d) if e < 1 << 64 else None
    target = "d-1" if s > 0 else "1"
    return f"check: {b}^{e} mod {d} = {r} (= {target})"


# -- claims -----------------------------------------------------------------


def cmd_claims(args, out) -> int:
    ids = ledger.claim_ids()
    if args.only is not None:
        if args.only not in ids:
            raise UsageError(f"unknown claim id {args.only!r}; known ids are {ids[0]}..{ids[-1]}")
        claims = [ledger.get_claim(args.only)]
    else:
        claims = ledger.catalog()
    start = time.perf_counter()
    outcomes, summary = ledger.run_all(claims, workers=args.workers)
    total = time.perf_counter() - start
    by_id = {c.id: c for c in claims}

    doc = ReportDocument(
        command=args.argv,
        outcomes=[o.to_json() for o in outcomes],
        summary=summary.to_json(),
        timing={"total_ms": round(total * 1000, 3)},
        format=args.format,
    )
    lines = []
    for o in outcomes:
        c = by_id[o.id]
        agree = {True: "agree", False: "DISAGREE", None: "ERROR"}[o.agrees]
        tag = "" if o.matches_expectation else "  <-- unexpected"
        if not o.expected_agreement and o.matches_expectation:
            tag = "  (expected)"
        lines.append(f"{o.id}  {o.computed_verdict:<5}  {agree:<8}  {c.statement}{tag}")
        chk = _check_line(o.witness)
        if chk:
            lines.append(f"      {chk}")
        for mm in o.witness.get("mismatches", []) if isinstance(o.witness.get("mismatches"), list) else []:
            if isinstance(mm, dict):
                lines.append(f"      m={mm['m']}: printed {mm['printed']}, computed 2^{mm['exponent']}+1 = {mm['computed']}")
        for p, why in o.witness.get("refuted", {}).items():
            if "factor" in why:
                lines.append(f"      n={p}: {why['factor']} | 2^{p}-1  (check: 2^{p} mod {why['factor']} = {kernels.powmod(2, int(p), why['factor'])})")
            else:
                lines.append(f"      n={p}: proper divisors of {2 ** (int(p) - 1) * (2 ** int(p) - 1)} sum to {why.get('aliquot_sum')}")
        if o.computed_verdict == "error":
            lines.append(f"      {o.witness.get('error')}")
    lines.append(f"summary: {summary.agree} agree, {summary.disagree} disagree, {summary.error} error")
    _emit(doc, lines, out)
    return EXIT_OK if all(o.matches_expectation for o in outcomes) else EXIT_MISMATCH


# -- fermat -----------------------------------------------------------------


def cmd_fermat(args, out) -> int:
    start = time.perf_counter()
    lines = []
    if args.action == "factor":
        q = find_fermat_factor(args.m, args.bound, args.strategy)
        label = f"F_{args.m} = 2^(2^{args.m})+1"
        w = {"m": args.m, "bound": args.bound, "strategy": args.strategy, "factor": q}
        if Strategy(args.strategy) is Strategy.SPECIAL_FORM:
            w["method_note"] = "later-era method: only candidates k*2^(m+2)+1 are tried"
        if q is None:
            lines.append(f"{label}: none below bound {args.bound}")
            verified = True
        else:
            r = kernels.powtower2(2, args.m, q)
            verified = r == q - 1
            lines.append(f"{label}: smallest prime factor <= {args.bound} is {q}")
            lines.append(f"  check: 2^(2^{args.m}) mod {q} = {r} (= {q}-1)")
        if "method_note" in w:
            lines.append(f"  [{w['method_note']}]")
        o = outcome("fermat-factor", "found" if q else "none", verified, w, time.perf_counter() - start)
    elif args.action == "check":
        yes = divides_generalized_fermat(args.d, args.a, args.m)
        r = kernels.powtower2(args.a, args.m, args.d)
        form = f"{args.a}^(2^{args.m})+1"
        if args.m < 64:
            form += f" = {PowerForm(args.a, 2 ** args.m, 1)}"
        lines.append(f"{args.d} {'divides' if yes else 'does not divide'} {form}")
        lines.append(f"  check: {args.a}^(2^{args.m}) mod {args.d} = {r}")
        w = {"a": args.a, "m": args.m, "d": args.d, "residue": r}
        o = outcome("fermat-check", "divides" if yes else "does-not-divide", True, w, time.perf_counter() - start)
    else:
        try:
            v = fermat_value(args.m)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        lines.append(f"F_{args.m} = {v}")
        o = outcome("fermat-value", "value", True, {"m": args.m, "value": v}, time.perf_counter() - start)
    doc = ReportDocument(args.argv, [o], summarize([o]), {"total_ms": o["elapsed_ms"]}, format=args.format)
    _emit(doc, lines, out)
    return EXIT_OK


# -- mersenne ---------------------------------------------------------------


def cmd_mersenne(args, out) -> int:
    start = time.perf_counter()
    lines, outs = [], []
    if args.action == "exclusions":
        ps = mersenne.excluded_exponents(args.limit)
        for p in ps:
            r = kernels.powmod(2, p, 2 * p + 1)
            lines.append(f"p={p:<6} 2p+1={2 * p + 1:<8} check: 2^{p} mod {2 * p + 1} = {r}")
            outs.append(outcome(f"p={p}", "excluded", r == 1, {"p": p, "divisor": 2 * p + 1, "base": 2, "exponent": p, "sign": -1}, 0.0))
        lines.append(f"excluded exponents <= {args.limit}: {ps}")
    elif args.action == "factor":
        try:
            q = mersenne.find_mersenne_factor(args.p, args.k_max, not args.no_mod8)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if q is None:
            lines.append(f"2^{args.p}-1: no factor 2kp+1 with k <= {args.k_max}")
            outs.append(outcome("mersenne-factor", "none", True, {"p": args.p, "k_max": args.k_max, "factor": None}, time.perf_counter() - start))
        else:
            r = kernels.powmod(2, args.p, q)
            lines.append(f"2^{args.p}-1: smallest factor {q} (k={(q - 1) // (2 * args.p)})")
            lines.append(f"  check: 2^{args.p} mod {q} = {r}")
            w = {"p": args.p, "k_max": args.k_max, "factor": q, "divisor": q, "base": 2, "exponent": args.p, "sign": -1}
            outs.append(outcome("mersenne-factor", "found", r == 1, w, time.perf_counter() - start))
    else:
        from .primes import sieve

        perfect = []
        lines.append(f"{'p':>5}  {'class':<22} {'factor':>12}  excluded  2p+1 side  check")
        for p in sieve(args.max_p).tolist():
            t0 = time.perf_counter()
            cls = mersenne.classify_exponent(p, args.k_max)
            excl = mersenne.exclusion_applies(p)
            side = mersenne.two_p_plus_one_side(p)
            side_txt = {None: "-", -1: "2^p-1", 1: "2^p+1"}[side]
            f = "" if cls.factor is None else str(cls.factor)
            chk = "" if cls.factor is None else f"2^{p} mod {cls.factor} = {kernels.powmod(2, p, cls.factor)}"
            lines.append(f"{p:>5}  {cls.verdict.value:<22} {f:>12}  {'yes' if excl else 'no':<8}  {side_txt:<9}  {chk}".rstrip())
            if cls.verdict is mersenne.Verdict.MERSENNE_PRIME:
                perfect.append(p)
            ok = cls.factor is None or kernels.powmod(2, p, cls.factor) == 1
            w = {"p": p, "class": cls.verdict.value, "factor": cls.factor, "excluded": excl, "two_p_plus_one_side": side}
            outs.append(outcome(f"p={p}", cls.verdict.value, ok, w, time.perf_counter() - t0))
        lines.append(f"perfect exponents: {perfect}")
    doc = ReportDocument(args.argv, outs, summarize(outs), {"total_ms": round((time.perf_counter() - start) * 1000, 3)}, format=args.format)
    _emit(doc, lines, out)
    return EXIT_OK


# -- theorem scans ----------------------------------------------------------


def _run_scan(args) -> theorems.ScanReport:
    tid = args.id
    d = theorems.DEFAULT_BOUNDS
    if tid == "main":
        return theorems.check_main_theorem(args.q_bound or d["main"]["q_bound"], args.ab_bound)
    q_bound = args.q_bound or d["rules"]["q_bound"]
    if tid in theorems.RULE_FOR_ID:
        return theorems.check_rule(theorems.rule_by_name(theorems.RULE_FOR_ID[tid]), q_bound)
    if tid == "1":
        return theorems.check_theorem1(args.n_bound or 2000, args.a_bound or 2000)
    if tid == "2":
        return theorems.check_theorem2(args.n_bound or 50, args.a_bound or 200)
    if tid == "3":
        if args.primes:
            ps = [int(x) for x in args.primes.split(",")]
            return theorems.check_theorem3(ps, args.a_bound or 500)
        return theorems.check_theorem3_family(args.prime_bound, args.max_size, args.a_bound or 500)
    return theorems.check_square_split(q_bound)


def cmd_theorem(args, out) -> int:
    start = time.perf_counter()
    try:
        rep = _run_scan(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    elapsed = time.perf_counter() - start
    w = {"bounds": rep.bounds, "checked": rep.checked, "failures": rep.failures, "counterexamples": rep.counterexamples, "details": rep.details}
    o = outcome(f"theorem-{args.id}", "holds" if rep.passed else "fails", rep.passed, w, elapsed)
    doc = ReportDocument(args.argv, [o], summarize([o]), {"total_ms": o["elapsed_ms"]}, format=args.format)

    rule = theorems.RULE_FOR_ID.get(args.id)
    wording = SCAN_WORDING.get(args.id, f"residue-class rule {rule}")
    bounds = ", ".join(f"{k}={v}" for k, v in rep.bounds.items())
    lines = [f"theorem {args.id}: {wording}", f"  bounds: {bounds}", f"  instances: {rep.checked}, counterexamples: {rep.failures}"]
    if rule:
        d = rep.details
        lines.append(f"  legendre oracle agreement: {d['oracle_agreement']}/{d['oracle_checked']}")
        for r, s in d["excluded_factor"].items():
            lines.append(f"  excluded class n = {r} mod {theorems.rule_by_name(rule).modulus}: {s} | 2n+1")
    for cx in rep.counterexamples:
        lines.append(f"  counterexample: {cx}")
    wit = rep.details.get("composite_witnesses") if isinstance(rep.details, dict) else None
    if wit:
        lines.append(f"  composite witnesses ({len(wit)}):")
        shown = list(wit.items())[: args.show]
        for n, a in shown:
            n = int(n)
            lines.append(f"    n={n:<6} a={a:<4} check: {a}^{n - 1} mod {n} = {kernels.powmod(a, n - 1, n)}")
        if len(wit) > len(shown):
            lines.append(f"    ... {len(wit) - len(shown)} more (--show N or --format json for all)")
    _emit(doc, lines, out)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


# -- parser -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser(prog="numclaims", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("claims", parents=[common], help="run the claims ledger")
    c.add_argument("--only", metavar="ID")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_claims)

    f = sub.add_parser("fermat", help="Fermat number searches")
    fs = f.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ff = fs.add_parser("factor", parents=[common])
    ff.add_argument("--m", type=int, required=True)
    ff.add_argument("--bound", type=int, required=True)
    ff.add_argument("--strategy", choices=[s.value for s in Strategy], default="all_primes")
    fc = fs.add_parser("check", parents=[common])
    fc.add_argument("--a", type=int, required=True)
    fc.add_argument("--m", type=int, required=True)
    fc.add_argument("--d", type=int, required=True)
    fv = fs.add_parser("value", parents=[common])
    fv.add_argument("--m", type=int, required=True)
    f.set_defaults(func=cmd_fermat)

    m = sub.add_parser("mersenne", help="Mersenne number screening")
    ms = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    scr = ms.add_parser("screen", parents=[common])
    scr.add_argument("--max-p", type=int, required=True)
    scr.add_argument("--k-max", type=int, default=mersenne.DEFAULT_K_MAX)
    exc = ms.add_parser("exclusions", parents=[common])
    exc.add_argument("--limit", type=int, required=True)
    mf = ms.add_parser("factor", parents=[common])
    mf.add_argument("--p", type=int, required=True)
    mf.add_argument("--k-max", type=int, default=mersenne.DEFAULT_K_MAX)
    mf.add_argument("--no-mod8", action="store_true", help="also try q = +/-3 (mod 8)")
    m.set_defaults(func=cmd_mersenne)

    t = sub.add_parser("theorem", parents=[common], help="bounded theorem scans")
    t.add_argument("id", choices=theorems.THEOREM_IDS)
    t.add_argument("--q-bound", type=int, default=None)
    t.add_argument("--ab-bound", type=int, default=100)
    t.add_argument("--n-bound", type=int, default=None)
    t.add_argument("--a-bound", type=int, default=None)
    t.add_argument("--prime-bound", type=int, default=30)
    t.add_argument("--max-size", type=int, default=3)
    t.add_argument("--primes", help="comma-separated prime set for theorem 3")
    t.add_argument("--show", type=int, default=20, help="composite witnesses to print")
    t.set_defaults(func=cmd_theorem)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"numclaims: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"numclaims: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
