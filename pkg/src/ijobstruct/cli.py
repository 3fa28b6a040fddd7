"""Command-line front end.

Every operation is exposed as a subcommand with stable, timestamp-free
output so runs can be diffed byte for byte; --json switches to a JSON
document.  Exit codes: 0 success, 1 for a negative domain verdict when a
positive one was demanded (--expect, or an invalid certificate), 2 for
usage and parse errors.
"""

import argparse
import json
import os
import sys
import time

from ijobstruct import delsarte, hodge, obstruction, rh_oracle
from ijobstruct import search as search_mod

USAGE_ERROR = 2
VERDICT_ERROR = 1


def _read_matrix(arg):
    if arg in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    return delsarte.matrix_from_text(text)


def _parse_weights(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError("weights must be a comma-separated integer list") from None


def _parse_rules(text):
    if text in (None, "", "default"):
        return obstruction.DEFAULT_RULES
    if text == "hurwitz":
        return frozenset(("R1", "R2", "R3", "R4", "R5", "R6", "R8"))
    rules = frozenset(x.strip() for x in text.split(",") if x.strip())
    unknown = rules.difference(obstruction.ALL_RULES)
    if unknown:
        raise ValueError("unknown rules: %s" % sorted(unknown))
    return rules


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("IJOBSTRUCT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError("IJOBSTRUCT_THREADS must be an integer") from None
    return 1


def _emit(args, text):
    if getattr(args, "timestamp", False):
        sys.stdout.write("# run at %s\n" % time.strftime("%Y-%m-%dT%H:%M:%S"))
    sys.stdout.write(text)


def _expect_exit(expected, actual):
    if expected is not None and expected != actual:
        print(
            "expected %s, got %s" % (expected, actual), file=sys.stderr
        )
        return VERDICT_ERROR
    return 0


def cmd_hodge(args):
    vec = hodge.hodge_numbers(args.n, args.d)
    if args.json:
        doc = {
            "v": 1,
            "n": vec.n,
            "d": vec.d,
            "primitive": list(vec.primitive),
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        parts = [
            "%s=%d" % (label, value)
            for label, value in zip(vec.labels(), vec.primitive)
        ]
        _emit(args, " ".join(parts) + "\n")
    return 0


def cmd_symmetry(args):
    matrix = _read_matrix(args.matrix)
    group = delsarte.diagonal_symmetry_group(matrix)
    perms = delsarte.permutation_symmetries(matrix)
    if args.json:
        doc = {
            "v": 1,
            "diagonal": {
                "order": group.order,
                "invariant_factors": list(group.invariant_factors),
                "generators": [
                    {
                        "weights": list(g.weights),
                        "modulus": g.modulus,
                        "common_weight": g.common_weight,
                        "canonical": list(g.canonical_weights()),
                    }
                    for g in group.generators
                ],
            },
            "permutations": {
                "order": len(perms),
                "elements": [list(p.mapping) for p in perms],
            },
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [
        "diagonal group: order %d, invariant factors %s"
        % (group.order, list(group.invariant_factors))
    ]
    for i, g in enumerate(group.generators):
        lines.append(
            "  generator %d: %s mod %d, common weight %d, canonical %s"
            % (i, g.weights, g.modulus, g.common_weight, g.canonical_weights())
        )
    lines.append("permutation symmetries: order %d" % len(perms))
    if args.conjugation:
        for i, g in enumerate(group.generators):
            for p in perms:
                if p.is_identity:
                    continue
                try:
                    r = delsarte.conjugation_exponent(matrix, g, p)
                except delsarte.NotNormalizingError:
                    lines.append(
                        "  sigma %s does not normalize generator %d"
                        % (p.mapping, i)
                    )
                    continue
                lines.append(
                    "  sigma %s on generator %d: r = %d mod %d"
                    % (p.mapping, i, r, g.modulus)
                )
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_smooth(args):
    matrix = _read_matrix(args.matrix)
    report = delsarte.smoothness_check(matrix)
    if args.json:
        doc = {"v": 1, "verdict": report.verdict}
        if report.witness is not None:
            w = report.witness
            doc["witness"] = {
                "support": list(w.support),
                "binomial_exponents": [list(v) for v in w.binomial_exponents],
                "binomial_constants": [str(c) for c in w.binomial_constants],
                "point": [[z.real, z.imag] for z in w.point],
                "gradient_norm": w.gradient_norm,
            }
        if report.certificate:
            doc["certificate"] = [
                {"support": list(r.support), "reason": r.reason, "detail": r.detail}
                for r in report.certificate
            ]
        if report.detail:
            doc["detail"] = report.detail
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = ["verdict: %s" % report.verdict]
        if report.witness is not None:
            w = report.witness
            lines.append("  support: %s" % (list(w.support),))
            lines.append(
                "  point: %s"
                % " ".join("%.6g%+.6gi" % (z.real, z.imag) for z in w.point)
            )
            lines.append("  gradient norm: %.3g" % w.gradient_norm)
        for r in report.certificate:
            lines.append(
                "  stratum %s: %s (%s)" % (list(r.support), r.reason, r.detail)
            )
        if report.detail:
            lines.append("  %s" % report.detail)
        _emit(args, "\n".join(lines) + "\n")
    return _expect_exit(args.expect, report.verdict)


def cmd_character(args):
    matrix = _read_matrix(args.matrix)
    weights = _parse_weights(args.weights)
    wclass = delsarte.weight_class(matrix, weights, args.modulus)
    char = hodge.diagonal_character(matrix, wclass, args.q)
    faithful = hodge.faithfulness_check([char])
    if args.json:
        doc = {
            "v": 1,
            "modulus": char.modulus,
            "q": args.q,
            "counts": [[e, m] for e, m in char.counts],
            "total": char.total(),
            "generates": faithful,
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = ["character on piece q=%d mod %d" % (args.q, char.modulus)]
        for e, m in char.counts:
            lines.append("  exponent %d: multiplicity %d" % (e, m))
        lines.append("total: %d" % char.total())
        lines.append("generates Z/%d: %s" % (char.modulus, str(faithful).lower()))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_obstruct(args):
    rules = _parse_rules(args.rules)
    group = obstruction.MetacyclicGroup(p=args.p, q=args.q, r=args.r)
    instance = obstruction.ProblemInstance(dimension=args.dim, group=group)
    trace = obstruction.obstruct(instance, rules)
    if args.json:
        _emit(args, trace.to_json())
    else:
        lines = [
            "instance: dim A = %d, G = Z/%d x| Z/%d with r = %d"
            % (args.dim, args.p, args.q, group.r)
        ]
        for step in trace.steps:
            lines.append("%s: %s" % (step.rule, step.text))
        lines.append("verdict: %s" % trace.verdict)
        for blocker in trace.blockers:
            lines.append("blocker: %s" % blocker)
        _emit(args, "\n".join(lines) + "\n")
    return _expect_exit(args.expect, trace.verdict)


def _rh_one_genus(job):
    group, genus = job
    return (
        genus,
        rh_oracle.signatures_for_genus(group, genus),
        rh_oracle.exists_action(group, genus),
    )


def cmd_rh_oracle(args):
    if args.cyclic is not None:
        group = rh_oracle.GroupTable.cyclic(args.cyclic)
    elif args.p is not None and args.q is not None:
        group = rh_oracle.GroupTable.metacyclic(args.p, args.q, args.r)
    else:
        raise ValueError("need --cyclic M or --p/--q/--r")
    if args.genus is None and args.gmax is None:
        raise ValueError("need --genus G or --gmax G")
    if args.genus is not None:
        genera = [args.genus]
    else:
        genera = list(range(2, min(args.gmax, rh_oracle.GENUS_CAP) + 1))
    threads = _threads(args)
    jobs = [(group, g) for g in genera]
    if threads > 1 and len(jobs) > 1:
        import multiprocessing

        with multiprocessing.Pool(threads) as pool:
            rows = pool.map(_rh_one_genus, jobs)
    else:
        rows = [_rh_one_genus(job) for job in jobs]
    any_action = any(acts for _, _, acts in rows)
    if args.json:
        doc = {
            "v": 1,
            "group": group.label,
            "order": group.size,
            "genera": [
                {
                    "genus": g,
                    "signatures": [str(s) for s in sigs],
                    "exists_action": acts,
                }
                for g, sigs, acts in rows
            ],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = ["group %s of order %d" % (group.label, group.size)]
        for g, sigs, acts in rows:
            shown = " ".join(str(s) for s in sigs) if sigs else "none"
            lines.append(
                "genus %d: signatures %s; exists action: %s"
                % (g, shown, str(acts).lower())
            )
        _emit(args, "\n".join(lines) + "\n")
    actual = "action" if any_action else "no-action"
    return _expect_exit(args.expect, actual)


def cmd_search(args):
    spec = search_mod.SearchSpec(
        n=args.n,
        d=args.d,
        min_prime=args.threshold,
        ruleset=_parse_rules(args.rules),
        threads=_threads(args),
    )
    text = search_mod.search_jsonl(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _emit(args, text)
    return 0


def cmd_verify_certificate(args):
    if args.certificate in (None, "-"):
        raw = sys.stdin.read()
    else:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError("certificate is not valid JSON: %s" % exc) from None
    results = obstruction.verify_certificate(doc)
    lines = []
    all_ok = True
    for label, ok, message in results:
        all_ok = all_ok and ok
        lines.append("%-4s %s: %s" % ("ok" if ok else "FAIL", label, message))
    lines.append("certificate: %s" % ("VALID" if all_ok else "INVALID"))
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all_ok else VERDICT_ERROR


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ijobstruct",
        description="Delsarte hypersurface symmetries, Hodge characters, and "
        "product-of-Jacobians obstructions, all in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument(
            "--timestamp",
            action="store_true",
            help="prepend a timestamp line (off by default for stable bytes)",
        )

    p = sub.add_parser("hodge", help="primitive middle Hodge numbers")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("symmetry", help="diagonal and permutation symmetries")
    p.add_argument("matrix", nargs="?", help="matrix file, or - for stdin")
    p.add_argument(
        "--conjugation",
        action="store_true",
        help="also print conjugation exponents",
    )
    add_common(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("smooth", help="exact smoothness verdict")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--expect", choices=("smooth", "singular", "unsupported"))
    add_common(p)
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("character", help="diagonal character on a Hodge piece")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--weights", required=True, help="comma-separated residues")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("-q", type=int, required=True, help="Hodge piece index")
    add_common(p)
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("obstruct", help="run the obstruction rule engine")
    p.add_argument("--dim", type=int, required=True, help="dim of the p.p.a.v.")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rules", help="comma list of R1..R8, or default|hurwitz")
    p.add_argument("--expect", choices=("contradiction", "inconclusive"))
    add_common(p)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("rh-oracle", help="group actions on Riemann surfaces")
    p.add_argument("--cyclic", type=int, help="cyclic group order")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--genus", type=int)
    p.add_argument("--gmax", type=int, help="check all genera 2..gmax")
    p.add_argument("--threads", type=int)
    p.add_argument("--expect", choices=("action", "no-action"))
    add_common(p)
    p.set_defaults(func=cmd_rh_oracle)

    p = sub.add_parser("search", help="enumerate and rank Delsarte candidates")
    p.add_argument("-n", type=int, default=4)
    p.add_argument("-d", type=int, default=4)
    p.add_argument("--threshold", type=int, default=31, help="minimum prime")
    p.add_argument("--rules", help="ruleset for the engine")
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="write JSON lines here instead of stdout")
    add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-certificate", help="replay an obstruction trace")
    p.add_argument("certificate", nargs="?", help="JSON file, or - for stdin")
    add_common(p)
    p.set_defaults(func=cmd_verify_certificate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
