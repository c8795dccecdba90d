"""Command-line front end.

Every command writes one document to stdout (or ``--out``).  Output depends
only on the arguments, so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .bitlattice import format_value
from .exactalg import FactorProduct, format_rational, parse_rational
from .operators import general_symbols, scalar_str, specialized_params, two_symbols
from .spectrum import Report, charpoly_specialized, eigenvalues_closed_form, geometric_multiplicities
from .steadystate import partition_general, partition_specialized, simulate_ctmc, steady_state
from .suites import REPORT_ONLY, SUITES, InfeasibleSize, run_suite
from .transfer import RECURSIONS, build_T

DEFAULT_SEED = 42
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


# -- argument handling --------------------------------------------------------

def _exact(text: Optional[str], name: str) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return parse_rational(text)
    except ValueError as e:
        raise UsageError(f"--{name}: {e}") from None


def _loose(text: str, name: str) -> Fraction:
    """Simulator input: exact literals or decimals."""
    try:
        return parse_rational(text)
    except ValueError:
        pass
    try:
        return Fraction(text.strip())
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r} as a number") from None


def _parameters(args):
    """``(alpha, beta, label)``: symbols when ``--symbolic`` or both values are omitted."""
    if args.symbolic:
        if args.alpha is not None or args.beta is not None:
            raise UsageError("--symbolic cannot be combined with --alpha/--beta")
        a, b = two_symbols()
        return a, b, {"alpha": "a", "beta": "b"}
    alpha, beta = _exact(args.alpha, "alpha"), _exact(args.beta, "beta")
    if alpha is None and beta is None:
        a, b = two_symbols()
        return a, b, {"alpha": "a", "beta": "b"}
    if alpha is None or beta is None:
        raise UsageError("give both --alpha and --beta, or --symbolic")
    return alpha, beta, {"alpha": format_rational(alpha), "beta": format_rational(beta)}


def _require_L(args) -> int:
    if args.L is None:
        raise UsageError("--L is required")
    if args.L < 1:
        raise UsageError(f"--L must be at least 1, got {args.L}")
    return args.L


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow(list(r))
    return buf.getvalue()


def _factor_rows(z: FactorProduct):
    yield "content", format_rational(z.content)
    for form, m in sorted(z.factors.items(), key=lambda t: str(t[0])):
        yield str(form), m


# -- commands ---------------------------------------------------------------

def cmd_spectrum(args) -> tuple:
    L = _require_L(args)
    alpha, beta, label = _parameters(args)
    p = specialized_params(L, alpha, beta)
    entries = eigenvalues_closed_form(p)
    geo = {}
    if args.geometric:
        if p.is_symbolic:
            raise UsageError("--geometric needs numeric --alpha and --beta")
        geo = {r.eigenvalue: r.geometric for r in geometric_multiplicities(L, alpha, beta)}
    rows = []
    for e in entries:
        row = {"eigenvalue": scalar_str(e.eigenvalue), "alg_mult": e.multiplicity}
        if geo:
            row["geo_mult"] = geo[e.eigenvalue]
        row["witness"] = e.witness_str(L)
        rows.append(row)
    if args.format == "json":
        return _json({"L": L, "parameters": label, "entries": rows}), 0
    if args.format == "csv":
        header = ["eigenvalue", "alg_mult"] + (["geo_mult"] if geo else []) + ["witness"]
        return _csv(header, ([r[k] for k in header] for r in rows)), 0
    lines = [f"L={L} alpha={label['alpha']} beta={label['beta']}"]
    for r in rows:
        geo_part = f" geo={r['geo_mult']}" if geo else ""
        lines.append(f"{r['eigenvalue']}  alg={r['alg_mult']}{geo_part}  witness={r['witness']}")
    return "\n".join(lines) + "\n", 0


def cmd_charpoly(args) -> tuple:
    L = _require_L(args)
    alpha, beta, label = _parameters(args)
    cp = charpoly_specialized(L)
    factors = sorted(cp.factors.items(), key=lambda t: str(t[0]))
    doc = {"L": L, "parameters": label, "factored": str(cp), "degree": cp.degree(),
           "factors": [{"factor": str(f), "exponent": m} for f, m in factors]}
    numeric = not hasattr(alpha, "symbols")
    if numeric:
        roots = cp.roots(alpha, beta)
        doc["roots"] = [{"root": format_rational(r), "multiplicity": roots[r]}
                        for r in sorted(roots, reverse=True)]
        doc["coefficients"] = [format_rational(c) for c in cp.expand(alpha, beta).coeffs]
    if args.format == "json":
        return _json(doc), 0
    if args.format == "csv":
        if numeric:
            return _csv(["root", "multiplicity"], ((r["root"], r["multiplicity"]) for r in doc["roots"])), 0
        return _csv(["factor", "exponent"], ((f["factor"], f["exponent"]) for f in doc["factors"])), 0
    text = f"P_{L}(x) = {doc['factored']}\n"
    if numeric:
        text += "roots: " + ", ".join(f"{r['root']} (x{r['multiplicity']})" for r in doc["roots"]) + "\n"
    return text, 0


def cmd_steady(args) -> tuple:
    L = _require_L(args)
    alpha, beta, label = _parameters(args)
    ss = steady_state(specialized_params(L, alpha, beta))
    rows = [{"state": format_value(v, L), "probability": scalar_str(x)} for v, x in enumerate(ss.x)]
    z = str(ss.Z)
    if args.format == "json":
        return _json({"L": L, "parameters": label, "denominator_lcm": z, "entries": rows}), 0
    if args.format == "csv":
        return _csv(["state", "probability"], ((r["state"], r["probability"]) for r in rows)), 0
    width = max(len(r["state"]) for r in rows)
    return "".join(f"{r['state']:<{width}}  {r['probability']}\n" for r in rows), 0


def cmd_partition(args) -> tuple:
    L = _require_L(args)
    if args.general:
        if args.alpha is not None or args.beta is not None:
            raise UsageError("--general is fully symbolic; drop --alpha/--beta")
        z = partition_general(general_symbols(L))
        doc = {"L": L, "parameters": "general", "Z": str(z)}
    else:
        alpha, beta, label = _parameters(args)
        z = partition_specialized(L)
        doc = {"L": L, "parameters": label, "Z": str(z)}
        if not hasattr(alpha, "symbols"):
            doc["value"] = format_rational(z.evaluate({"a": alpha, "b": beta}))
            doc["denominator_lcm"] = str(steady_state(specialized_params(L, alpha, beta)).Z)
    doc["factors"] = [{"factor": f, "exponent": m} for f, m in _factor_rows(z)]
    if args.format == "json":
        return _json(doc), 0
    if args.format == "csv":
        return _csv(["factor", "exponent"], _factor_rows(z)), 0
    text = doc["Z"] + "\n"
    if "value" in doc:
        text += f"value: {doc['value']}\nlcm of steady-state denominators: {doc['denominator_lcm']}\n"
    return text, 0


def cmd_transfer(args) -> tuple:
    L = _require_L(args)
    alpha, beta, label = _parameters(args)
    t = build_T(L, alpha, beta, args.recursion)
    if args.format == "csv":
        return t.to_csv(), 0
    if args.format == "json":
        entries = [{"row": i, "col": j, "value": scalar_str(t[i, j])}
                   for i in range(t.nrows) for j in range(t.ncols) if t[i, j] != 0]
        return _json({"L": L, "parameters": label, "recursion": args.recursion,
                      "shape": [t.nrows, t.ncols], "entries": entries}), 0
    lines = [f"T_{L},{L + 1} ({args.recursion} recursion), {t.nrows} x {t.ncols}"]
    for i, row in enumerate(t.rows()):
        lines.append(format_value(i, L + 1) + ": " + "  ".join(scalar_str(x) for x in row))
    return "\n".join(lines) + "\n", 0


def cmd_simulate(args) -> tuple:
    L = _require_L(args)
    if args.alpha is None or args.beta is None:
        raise UsageError("simulate needs --alpha and --beta")
    alpha, beta = _loose(args.alpha, "alpha"), _loose(args.beta, "beta")
    if alpha <= 0 or beta <= 0:
        raise UsageError("simulate needs positive rates")
    res = simulate_ctmc(L, alpha, beta, args.events, seed=args.seed)
    rows = [{"state": s, "empirical_frequency": emp, "exact_probability": format_rational(ex),
             "tv_distance": res.tv_distance} for s, emp, ex in res.rows()]
    if args.format == "json":
        return _json({"L": L, "parameters": {"alpha": args.alpha, "beta": args.beta},
                      "events": args.events, "seed": args.seed, "burn_in_events": res.burn_in,
                      "tv_distance": res.tv_distance,
                      "entries": [{k: r[k] for k in ("state", "empirical_frequency", "exact_probability")}
                                  for r in rows]}), 0
    if args.format == "csv":
        header = ["state", "empirical_frequency", "exact_probability", "tv_distance"]
        return _csv(header, ([r[k] for k in header] for r in rows)), 0
    lines = [f"{r['state']}  empirical={r['empirical_frequency']:.6f}  exact={r['exact_probability']}"
             for r in rows]
    lines.append(f"total variation distance: {res.tv_distance:.6f} ({args.events} events, seed {args.seed})")
    return "\n".join(lines) + "\n", 0


def cmd_verify(args) -> tuple:
    if args.suite is None:
        raise UsageError(f"--suite is required; choose from {', '.join(SUITES)}")
    if args.alpha is not None or args.beta is not None:
        raise UsageError("verify draws its own parameters from --seed; drop --alpha/--beta")
    spec = SUITES[args.suite]
    if args.L is not None:
        sizes = [args.L]
    else:
        lmax = args.lmax if args.lmax is not None else spec.default_lmax
        sizes = list(range(spec.min_L, lmax + 1))
    try:
        reports: List[Report] = run_suite(args.suite, sizes, symbolic=args.symbolic, seed=args.seed,
                                          samples=args.samples, recursion=args.recursion)
    except InfeasibleSize as e:
        raise UsageError(str(e)) from None
    passed = all(r.passed for r in reports)
    status = 0 if passed or args.suite in REPORT_ONLY else 1
    if args.format == "json":
        out = _json({"suite": args.suite, "theorem": spec.theorem, "seed": args.seed,
                     "symbolic": args.symbolic, "passed": passed,
                     "reports": [r.to_dict() for r in reports]})
    elif args.format == "csv":
        out = _csv(["check", "L", "passed", "failure"],
                   ((r.name, r.L, "true" if r.passed else "false", r.failure or "") for r in reports))
    else:
        lines = [r.line() for r in reports]
        if args.suite == "multiplicity":
            for r in reports:
                for e in r.details.get("entries", []):
                    lines.append(f"  L={r.L} eigenvalue {e['eigenvalue']}: alg={e['alg_mult']} geo={e['geo_mult']}")
        n_ok = sum(r.passed for r in reports)
        lines.append(f"{args.suite}: {n_ok}/{len(reports)} checks passed (seed {args.seed})")
        out = "\n".join(lines) + "\n"
    return out, status


COMMANDS = {
    "spectrum": cmd_spectrum,
    "charpoly": cmd_charpoly,
    "steady": cmd_steady,
    "partition": cmd_partition,
    "transfer": cmd_transfer,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def _suite_help() -> str:
    width = max(len(n) for n in SUITES)
    return "suites:\n" + "\n".join(f"  {n:<{width}}  {s.theorem}" for n, s in SUITES.items())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annihilation",
        description="Exact spectra, steady states and transfer matrices of the asymmetric annihilation process.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, epilog: Optional[str] = None) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=epilog,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--L", type=int, help="number of sites")
        p.add_argument("--alpha", help="alpha as an exact p/q literal")
        p.add_argument("--beta", help="beta as an exact p/q literal")
        p.add_argument("--symbolic", action="store_true", help="use the symbols a (alpha) and b (beta)")
        p.add_argument("--format", choices=FORMATS, default="json" if name != "verify" else "text")
        p.add_argument("--out", help="write the output to this path instead of stdout")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
        return p

    p = add("spectrum", "closed-form eigenvalues with algebraic multiplicities")
    p.add_argument("--geometric", action="store_true", help="also compute geometric multiplicities (numeric)")
    add("charpoly", "factored characteristic polynomial P_L")
    add("steady", "exact normalized steady state")
    p = add("partition", "partition function Z_L as a factor product")
    p.add_argument("--general", action="store_true", help="general-parameter product over all b != 0")
    p = add("transfer", "transfer matrix T_{L,L+1}")
    p.add_argument("--recursion", choices=RECURSIONS, default="printed")
    p = add("simulate", "Gillespie simulation against the exact steady state (decimals accepted)")
    p.add_argument("--events", type=int, default=100000)
    p = add("verify", "run a verification suite; exit status 0 iff every check passes", epilog=_suite_help()
            + "\n\nThe multiplicity suite is report-only and always exits 0.")
    p.add_argument("--suite", choices=list(SUITES))
    p.add_argument("--lmax", type=int, help="run L from the suite minimum up to this value")
    p.add_argument("--samples", type=int, default=5, help="random parameter samples per L where used")
    p.add_argument("--recursion", choices=RECURSIONS, default="printed", help="transfer recursion for --suite tma")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, status = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"annihilation {args.command}: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
