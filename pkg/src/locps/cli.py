"""Command-line surface and the JSON matrix/report serialization.

Commands: ``gen`` (family constructors), ``check`` (cone classification),
``bounds`` (inequality verdicts), ``fuzz`` (property fuzzing), ``suite``
(identity suite), ``oracle`` (exact determinant and all principal minors).

Matrix files are JSON objects ``{"n", "mode": "float"|"rational",
"entries"}`` with numbers in float mode and exact "p/q" strings in rational
mode; symmetry is validated on load and a float literal inside a rational
file is a load error.  Reports carry ``schema_version``, the command echo,
the tolerance policy used, and a typed payload; every verdict includes both
sides so readers can recompute the slack.  Index lists on the command line
are 1-based.

Exit codes: 0 success, 1 failed ``--expect`` assertion, 2 malformed input or
guard violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bounds import (
    BoundVerdict,
    InequalityId,
    check_classical,
    check_extended_fisher,
    check_extended_hadamard,
    check_extended_koteljanskii,
    check_leading_block,
)
from .cone import (
    Classification,
    TolerancePolicy,
    classify_membership,
    locally_psd_verdict,
)
from .families import (
    ar_family,
    bordered_equality,
    counterexample_2x2,
    counterexample_bordered,
    fisher_sharp,
    fisher_sharp_parameters,
    kotel_example,
    uniform_offdiag,
)
from .harness import FuzzReport, SampleConfig, fuzz_bound, identity_suite
from .symcore import IndexSet, SymMatrix

SCHEMA_VERSION = 1
ORACLE_GUARD = 12

F = Fraction


class InputError(ValueError):
    """Malformed input: maps to exit code 2."""


# ---------------------------------------------------------------------------
# scalar and matrix (de)serialization
# ---------------------------------------------------------------------------


def fraction_str(x):
    x = F(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s):
    try:
        return F(str(s))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse {s!r} as a rational number") from e


def scalar_out(x):
    """JSON form of a verdict/report scalar: number (float) or 'p/q' string."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, F)):
        return fraction_str(x)
    if isinstance(x, float):
        return x
    raise InputError(f"cannot serialize scalar {x!r}")


def matrix_to_json(m, extra=None):
    if m.mode == "float":
        entries = [[float(x) for x in row] for row in m.rows()]
        mode = "float"
    elif m.mode == "rational":
        entries = [[fraction_str(x) for x in row] for row in m.rows()]
        mode = "rational"
    else:
        raise InputError("quadratic-mode matrices have no file form; use float mode")
    out = {"n": m.n, "mode": mode, "entries": entries}
    if extra:
        out.update(extra)
    return out


def matrix_from_json(doc):
    if not isinstance(doc, dict):
        raise InputError("matrix file must be a JSON object")
    try:
        n = int(doc["n"])
        mode = doc["mode"]
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"matrix file missing/invalid field: {e}") from e
    if mode not in ("float", "rational"):
        raise InputError(f"unknown mode {mode!r} (expected 'float' or 'rational')")
    if n < 0 or len(entries) != n or any(len(r) != n for r in entries):
        raise InputError(f"entries are not an {n}x{n} array")
    if mode == "float":
        parsed = []
        for row in entries:
            out = []
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise InputError(f"float-mode entry {x!r} is not a number")
                out.append(float(x))
            parsed.append(out)
    else:
        parsed = []
        for row in entries:
            out = []
            for x in row:
                if not isinstance(x, str):
                    raise InputError(
                        f"rational-mode entry {x!r} must be a 'p/q' string "
                        "(float literals are a load error)"
                    )
                out.append(parse_fraction(x))
            parsed.append(out)
    for i in range(n):
        for j in range(i + 1, n):
            if parsed[i][j] != parsed[j][i]:
                raise InputError(
                    f"not symmetric: entry ({i + 1},{j + 1}) != ({j + 1},{i + 1})"
                )
    return SymMatrix(parsed, mode)


def load_matrix(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {path}: {e}") from e
    return matrix_from_json(doc)


def parse_index_list(text, n):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return IndexSet(())
    try:
        idx = IndexSet.from_iterable(int(p) for p in text.split(","))
    except ValueError as e:
        raise InputError(f"bad index list {text!r}: {e}") from e
    try:
        idx.validate_within(n)
    except ValueError as e:
        raise InputError(str(e)) from e
    return idx


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def tolerance_json(tol, slack_tol=1e-9):
    return {
        "eig_tol": tol.eig_tol,
        "det_neg_tol": tol.det_neg_tol,
        "slack_tol": slack_tol,
    }


def report_doc(args, tol, payload):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": list(args._argv),
        "tolerance": tolerance_json(tol),
        "payload": payload,
    }


def verdict_json(v: BoundVerdict):
    return {
        "inequality_id": v.inequality_id.value,
        "relation": v.relation,
        "lhs": scalar_out(v.lhs),
        "rhs": scalar_out(v.rhs),
        "slack": scalar_out(v.slack),
        "constant": fraction_str(v.constant),
        "holds": v.holds,
        "preconditions_met": v.preconditions_met,
        "preconditions": [
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in v.preconditions
        ],
    }


def membership_json(rep):
    return {
        "type": "membership",
        "classification": rep.classification.value,
        "det": scalar_out(rep.det_value),
        "signature": list(rep.signature),
        "witnesses": [
            {
                "indices": list(w.indices.indices),
                "min_eigenvalue": w.min_eigenvalue,
                "psd": w.psd,
                "pd": w.pd,
            }
            for w in rep.witnesses
        ],
    }


def fuzz_json(rep: FuzzReport):
    return {
        "type": "fuzz",
        "kind": rep.kind.value,
        "n": rep.n,
        "seed": rep.seed,
        "trials": rep.trials,
        "rejects": rep.rejects,
        "probes": rep.probe_count,
        "min_slack": None if rep.min_slack is None else scalar_out(rep.min_slack),
        "min_ratio": None if rep.min_ratio is None else scalar_out(rep.min_ratio),
        "violations": [
            {"matrix": matrix_to_json(m), "verdict": verdict_json(v)}
            for m, v in rep.violations
        ],
    }


def emit(doc, pretty_text, args):
    if getattr(args, "pretty", False) and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

FAMILIES = (
    "uniform-offdiag",
    "ar",
    "bordered-equality",
    "fisher-sharp",
    "kotel-example",
    "counterexample-2x2",
    "counterexample-bordered",
)


def _require(args, name):
    val = getattr(args, name.replace("-", "_"))
    if val is None:
        raise InputError(f"family {args.family!r} requires --{name}")
    return val


def cmd_gen(args):
    fam = args.family
    if fam not in FAMILIES:
        raise InputError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    extra = {"family": fam}
    if fam == "uniform-offdiag":
        n = _require(args, "n")
        x = parse_fraction(_require(args, "x"))
        m = uniform_offdiag(n, x, allow_out_of_regime=args.allow_out_of_regime)
        extra["params"] = {"n": n, "x": fraction_str(x)}
    elif fam == "ar":
        n = _require(args, "n")
        r = parse_fraction(_require(args, "r"))
        m = ar_family(n, r)
        extra["params"] = {"n": n, "r": fraction_str(r)}
    elif fam == "bordered-equality":
        n = _require(args, "n")
        m = bordered_equality(n)
        extra["params"] = {"n": n}
    elif fam == "fisher-sharp":
        n = _require(args, "n")
        m = fisher_sharp(n)  # float matrix; exact data rides in the sidecar
        par = fisher_sharp_parameters(n)
        extra["params"] = {"n": n, "p": fraction_str(par.p), "t": fraction_str(par.t)}
        extra["s_squared"] = fraction_str(par.s_squared)
    elif fam == "kotel-example":
        if args.n not in (None, 6):
            raise InputError("kotel-example is fixed at n=6")
        m = kotel_example()
        extra["params"] = {"n": 6}
    elif fam == "counterexample-2x2":
        t = parse_fraction(_require(args, "t"))
        m = counterexample_2x2(t)
        extra["params"] = {"t": fraction_str(t)}
    else:
        t = parse_fraction(_require(args, "t"))
        m = counterexample_bordered(t)
        extra["params"] = {"t": fraction_str(t)}

    if args.float_mode and m.mode != "float":
        m = m.to_float()
    doc = matrix_to_json(m, extra)
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


_EXPECT_MAP = {
    "pd": Classification.PD,
    "psd": Classification.PSD,
    "locally-psd": Classification.LOCALLY_PSD,
    "locally-pd": Classification.LOCALLY_PD,
    "none": Classification.NONE,
}


def cmd_check(args):
    m = load_matrix(args.file)
    tol = _tol_from_args(args)
    rep = classify_membership(m, tol)
    payload = membership_json(rep)
    if args.k is not None:
        local = locally_psd_verdict(m, args.k, tol)
        payload["local_verdict"] = {
            "order": local.order,
            "all_psd": local.all_psd,
            "witnesses": [
                {
                    "indices": list(w.indices.indices),
                    "min_eigenvalue": w.min_eigenvalue,
                    "psd": w.psd,
                    "pd": w.pd,
                }
                for w in local.witnesses
            ],
        }
    pretty = (
        f"classification: {rep.classification.value}\n"
        f"det: {payload['det']}\n"
        f"signature (neg, zero, pos): {rep.signature}"
    )
    emit(report_doc(args, tol, payload), pretty, args)
    if args.expect is not None:
        want = _EXPECT_MAP.get(args.expect.lower())
        if want is None:
            raise InputError(
                f"unknown --expect value {args.expect!r}; "
                f"choose from {', '.join(_EXPECT_MAP)}"
            )
        if rep.classification != want:
            print(
                f"expectation failed: classified {rep.classification.value}, "
                f"expected {want.value}",
                file=sys.stderr,
            )
            return 1
    return 0


_WHICH = ("all", "hadamard", "leading", "fisher", "koteljanskii", "classical")


def cmd_bounds(args):
    m = load_matrix(args.file)
    tol = _tol_from_args(args)
    alpha = parse_index_list(args.alpha, m.n)
    beta = parse_index_list(args.beta, m.n)
    which = args.which
    verdicts = []
    skipped = []

    def attempt(name, fn, required):
        try:
            out = fn()
        except ValueError as e:
            if which == "all" and not required:
                skipped.append({"check": name, "reason": str(e)})
                return
            raise InputError(f"{name}: {e}") from e
        if isinstance(out, tuple):
            verdicts.extend(out)
        else:
            verdicts.append(out)

    if which in ("all", "hadamard"):
        attempt("hadamard", lambda: check_extended_hadamard(m, tol), which == "hadamard")
    if which in ("all", "leading"):
        attempt("leading", lambda: check_leading_block(m, tol), which == "leading")
    if which in ("all", "fisher"):
        if alpha is None:
            if which == "fisher":
                raise InputError("fisher needs --alpha")
            skipped.append({"check": "fisher", "reason": "no --alpha given"})
        else:
            attempt(
                "fisher", lambda: check_extended_fisher(m, alpha, tol), which == "fisher"
            )
    if which in ("all", "koteljanskii"):
        if alpha is None or beta is None:
            if which == "koteljanskii":
                raise InputError("koteljanskii needs --alpha and --beta")
            skipped.append(
                {"check": "koteljanskii", "reason": "no --alpha/--beta given"}
            )
        else:
            attempt(
                "koteljanskii",
                lambda: check_extended_koteljanskii(m, alpha, beta, tol),
                which == "koteljanskii",
            )
    if which in ("all", "classical"):
        a = alpha if alpha is not None else IndexSet(())
        b = beta if beta is not None else IndexSet(())
        attempt("classical", lambda: check_classical(m, a, b, tol), which == "classical")

    payload = {
        "type": "bound_verdicts",
        "verdicts": [verdict_json(v) for v in verdicts],
    }
    if skipped:
        payload["skipped"] = skipped
    lines = [
        f"{v.inequality_id.value:24s} lhs={_short(v.lhs):>16s} rhs={_short(v.rhs):>16s} "
        f"slack={_short(v.slack):>16s} holds={v.holds} pre={v.preconditions_met}"
        for v in verdicts
    ]
    emit(report_doc(args, tol, payload), "\n".join(lines), args)
    return 0


def _short(x):
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(scalar_out(x))


_KIND_MAP = {
    "ext-hadamard": InequalityId.EXT_HADAMARD,
    "leading-block": InequalityId.LEADING_BLOCK,
    "ext-fisher": InequalityId.EXT_FISHER,
    "ext-koteljanskii": InequalityId.EXT_KOTELJANSKII,
    "classical-hadamard": InequalityId.CLASSICAL_HADAMARD,
    "classical-fisher": InequalityId.CLASSICAL_FISHER,
    "classical-koteljanskii": InequalityId.CLASSICAL_KOTELJANSKII,
}


def _default_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("LOCPS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise InputError(f"LOCPS_SEED={env!r} is not an integer") from e
    return 0


def _boundary_probes(kind, n):
    boundary = uniform_offdiag(n, F(1, n - 2))
    if kind == InequalityId.EXT_FISHER:
        return [(boundary, IndexSet(tuple(range(1, n))))]
    if kind == InequalityId.EXT_KOTELJANSKII:
        return [(boundary, IndexSet(tuple(range(1, n))), IndexSet.of(n))]
    return [boundary]


def cmd_fuzz(args):
    kind = _KIND_MAP.get(args.kind)
    if kind is None:
        raise InputError(
            f"unknown kind {args.kind!r}; choose from {', '.join(_KIND_MAP)}"
        )
    tol = _tol_from_args(args)
    seed = _default_seed(args)
    try:
        cfg = SampleConfig(
            n=args.n, count=args.trials, seed=seed, perturb_scale=args.perturb_scale
        )
    except ValueError as e:
        raise InputError(str(e)) from e
    probes = _boundary_probes(kind, args.n) if args.probe_boundary else ()
    try:
        rep = fuzz_bound(kind, cfg, probes=probes, tol=tol, exact=args.exact)
    except RuntimeError as e:
        raise InputError(str(e)) from e
    payload = fuzz_json(rep)
    pretty = (
        f"kind={payload['kind']} n={rep.n} trials={rep.trials} rejects={rep.rejects} "
        f"probes={rep.probe_count}\n"
        f"min_slack={payload['min_slack']} min_ratio={payload['min_ratio']} "
        f"violations={len(rep.violations)}"
    )
    emit(report_doc(args, tol, payload), pretty, args)
    return 0


def cmd_suite(args):
    tol = _tol_from_args(args)
    seed = _default_seed(args)
    try:
        rep = identity_suite(args.n, args.trials, seed, tol)
    except ValueError as e:
        raise InputError(str(e)) from e
    payload = {
        "type": "identity_suite",
        "n": rep.n,
        "trials": rep.trials,
        "seed": rep.seed,
        "passed": rep.passed,
        "checks": [
            {
                "name": c.name,
                "trials": c.trials,
                "failures": c.failures,
                "max_err": c.max_err,
                "passed": c.passed,
            }
            for c in rep.checks
        ],
    }
    lines = [
        f"{c.name:32s} trials={c.trials:5d} failures={c.failures:3d} max_err={c.max_err:.3e}"
        for c in rep.checks
    ] + [f"suite {'PASSED' if rep.passed else 'FAILED'}"]
    emit(report_doc(args, tol, payload), "\n".join(lines), args)
    return 0


def cmd_oracle(args):
    m = load_matrix(args.file)
    if m.n > ORACLE_GUARD:
        raise InputError(f"oracle guard: n={m.n} exceeds {ORACLE_GUARD}")
    # exact view of the input: rational files are exact already; float files
    # convert entrywise via the exact binary expansion
    if m.mode == "float":
        rows = [[F(x) for x in row] for row in m.rows()]
        exact = SymMatrix(rows, "rational")
    else:
        exact = m
    from itertools import combinations

    from .symcore import determinant, principal_submatrix

    minors = []
    for k in range(1, exact.n + 1):
        for pos in combinations(range(1, exact.n + 1), k):
            d = determinant(principal_submatrix(exact, pos))
            minors.append({"indices": list(pos), "value": fraction_str(d)})
    det = determinant(exact)
    payload = {
        "type": "oracle",
        "n": exact.n,
        "determinant": fraction_str(det),
        "minors": minors,
    }
    tol = _tol_from_args(args)
    pretty = f"det = {fraction_str(det)} ({len(minors)} principal minors listed)"
    emit(report_doc(args, tol, payload), pretty, args)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _tol_from_args(args):
    t = getattr(args, "tol", None)
    if t is None:
        return TolerancePolicy()
    if t < 0:
        raise InputError("--tol must be nonnegative")
    # rescale both knobs proportionally to the default ratio
    return TolerancePolicy(eig_tol=t, det_neg_tol=-t * 1e-3)


def _add_common(p):
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--tol", type=float, default=None, help="tolerance policy override")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="locps",
        description="Locally-PSD cone certification and determinant-bound verification",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a named matrix family")
    p.add_argument("family", help=f"one of: {', '.join(FAMILIES)}")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--x", default=None, help="off-diagonal magnitude (uniform-offdiag)")
    p.add_argument("--r", default=None, help="coupling parameter (ar)")
    p.add_argument("--t", default=None, help="probe parameter (counterexamples)")
    p.add_argument("--allow-out-of-regime", action="store_true")
    p.add_argument("--float", dest="float_mode", action="store_true",
                   help="force float mode output")
    p.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="classify a matrix against the cone hierarchy")
    p.add_argument("file", help="matrix file or - for stdin")
    p.add_argument("--k", type=int, default=None, help="also run the order-k scan")
    p.add_argument("--expect", default=None,
                   help="assert classification (exit 1 on mismatch)")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", help="evaluate determinant-bound verdicts")
    p.add_argument("file")
    p.add_argument("--alpha", default=None, help="1-based index list, e.g. 1,2,3")
    p.add_argument("--beta", default=None)
    p.add_argument("--which", choices=_WHICH, default="all")
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fuzz", help="fuzz one inequality over sampled inputs")
    p.add_argument("--kind", required=True, help=", ".join(_KIND_MAP))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="default: LOCPS_SEED or 0")
    p.add_argument("--perturb-scale", type=float, default=0.05)
    p.add_argument("--exact", action="store_true",
                   help="rationalize samples and arbitrate verdicts exactly")
    p.add_argument("--probe-boundary", action="store_true",
                   help="inject the sharp boundary member as a probe")
    _add_common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("suite", help="run the algebraic identity suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("oracle", help="exact determinant and all principal minors")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = ["locps"] + argv
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
