"""Command line front end.

Commands compute resolutions, relative Ext, Schanuel iterates, and the
three condition checks for explicitly given classes and modules, run
the sweep suites and pinned reproductions, and list what is available.

Exit codes: 0 on success, 1 when a checked statement fails or an
--expect does not match, 2 on invalid input, and 3 when a verdict is
Unknown under --strict.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .invariants import (
    build_resolution,
    check_condition,
    relative_ext,
    schanuel_iterate,
    verify_resolution,
)
from .modules import (
    INTEGERS,
    ModuleMorphism,
    ModuleObject,
    RingSpec,
    group_expression,
    module_expression,
)
from .precover import AllowedSet, PrecoverClass, class_expression
from .lab import (
    LabConfig,
    REPRODUCTIONS,
    SUITES,
    run_reproduction,
    run_suite,
)
from .snf import freeze, identity_matrix, mat_mul, snf_data


# ------------------------------------------------------------- parsing


def parse_ring(text: str) -> RingSpec:
    t = text.strip()
    if t in ("Z", "z"):
        return INTEGERS
    if t.startswith("Z/"):
        t = t[2:]
    try:
        modulus = int(t)
    except ValueError:
        raise ValueError(f"cannot parse ring {text!r}: use Z or Z/n") from None
    return RingSpec.modular(modulus)


def _parse_orders(text: str) -> tuple:
    inner = text.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ValueError(f"expected a bracketed order list, got {text!r}")
    body = inner[1:-1].strip()
    if not body:
        return ()
    try:
        return tuple(int(p) for p in body.split(","))
    except ValueError:
        raise ValueError(f"bad order list {text!r}") from None


def parse_module(text: str, ring: RingSpec) -> ModuleObject:
    """Module grammar: "[4,2]", "rank1", "rank2+[2]", "0", or "[]"."""
    t = text.strip()
    if t in ("0", "[]"):
        return ModuleObject.zero(ring)
    rank = 0
    orders = ()
    for part in t.split("+"):
        part = part.strip()
        if part.startswith("rank"):
            try:
                rank += int(part[4:])
            except ValueError:
                raise ValueError(f"bad rank in {text!r}") from None
        else:
            orders += _parse_orders(part)
    return ModuleObject(ring, orders, rank)


def parse_allowed(text: str) -> AllowedSet:
    """Allowed-set grammar: "{0,2+}" with the final entry marking cofinality."""
    t = text.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ValueError(f"expected braces around the allowed set, got {text!r}")
    parts = [p.strip() for p in t[1:-1].split(",") if p.strip()]
    if not parts or not parts[-1].endswith("+"):
        raise ValueError(
            f"the last entry of {text!r} needs a trailing + (the sets are cofinite)"
        )
    try:
        conductor = int(parts[-1][:-1])
        members = tuple(int(p) for p in parts[:-1])
    except ValueError:
        raise ValueError(f"bad allowed set {text!r}") from None
    return AllowedSet(conductor, members)


def parse_class(text: str, ring: RingSpec | None) -> tuple:
    """Class grammar; returns (class, ring actually used).

    add(EXPR) and pow(EXPR) take a module expression for the base;
    constrained takes "support=[...]" plus "allowed[t]={...}" clauses;
    torsionZ takes nothing and forces the integer ring.
    """
    t = text.strip()
    if t == "torsionZ":
        if ring is not None and ring.is_modular:
            raise ValueError("torsionZ lives over the integers, not a modular ring")
        return PrecoverClass.torsion_over_z(), INTEGERS
    if ring is None:
        raise ValueError("this class needs an explicit --ring")
    for head, builder in (("add", PrecoverClass.additive), ("pow", PrecoverClass.powers)):
        if t.startswith(head + "(") and t.endswith(")"):
            base = parse_module(t[len(head) + 1:-1], ring)
            return builder(base), ring
    if t.startswith("constrained"):
        support = None
        allowed = {}
        for token in t[len("constrained"):].split():
            if token.startswith("support="):
                support = _parse_orders(token[len("support="):])
            elif token.startswith("allowed[") and "]=" in token:
                head, _, rest = token[len("allowed["):].partition("]=")
                try:
                    key = int(head)
                except ValueError:
                    raise ValueError(f"bad allowed clause {token!r}") from None
                allowed[key] = parse_allowed(rest)
            else:
                raise ValueError(f"unrecognized constrained clause {token!r}")
        if support is None:
            raise ValueError("constrained classes need a support=[...] clause")
        extra = sorted(set(allowed) - set(support))
        if extra:
            raise ValueError(f"allowed clauses outside the support: {extra}")
        table = {t_: allowed.get(t_, AllowedSet.full()) for t_ in support}
        return PrecoverClass.constrained(ring, table), ring
    raise ValueError(f"cannot parse class {text!r}")


# ------------------------------------------------------------- emitters


class Emitter:
    """Writes either human-readable lines or JSON records."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def line(self, text: str):
        if self.fmt == "table":
            print(text)

    def record(self, **data):
        if self.fmt == "records":
            print(json.dumps(data, sort_keys=True))


def _matrix_rows(m: ModuleMorphism) -> list:
    return [list(row) for row in m.matrix]


def _roundtrip_chain(ring, target, terms, diffs, payload):
    """Re-parse the serialized chain and insist it rebuilds exactly."""
    rebuilt_terms = [parse_module(t, ring) for t in payload["terms"]]
    if tuple(rebuilt_terms) != tuple(terms):
        raise AssertionError("serialized terms did not round-trip")
    chain = [target] + list(terms)
    for i, rows in enumerate(payload["differentials"]):
        again = ModuleMorphism(
            rebuilt_terms[i], chain[i], tuple(tuple(r) for r in rows)
        )
        if again != diffs[i]:
            raise AssertionError("serialized differentials did not round-trip")


# ------------------------------------------------------------- commands


def _cmd_resolve(args, emitter) -> int:
    family, ring = parse_class(args.family, _ring_of(args))
    m = parse_module(args.module, ring)
    length = args.length if args.length is not None else (args.n or 0) + 1
    res = build_resolution(family, m, length)
    verdict = verify_resolution(res)
    emitter.line(
        f"resolution of {module_expression(m)} over {class_expression(family)}, "
        f"length {res.length}"
    )
    for i, t in enumerate(res.terms):
        emitter.line(
            f"  F{i} = {module_expression(t)}   d{i} = {_matrix_rows(res.differentials[i])}"
        )
    emitter.line(
        f"  tail kernel {module_expression(res.kernel_objects[-1].module)}"
        f"{' (invisible)' if res.invisible_tail else ''}"
    )
    emitter.line(f"  verification: {verdict}")
    payload = {
        "record": "resolution",
        "ring": str(ring),
        "class": class_expression(family),
        "module": module_expression(m),
        "length": res.length,
        "terms": [module_expression(t) for t in res.terms],
        "differentials": [_matrix_rows(d) for d in res.differentials],
        "tail_kernel": module_expression(res.kernel_objects[-1].module),
        "invisible_tail": res.invisible_tail,
        "verified": verdict.status.lower(),
    }
    _roundtrip_chain(ring, m, res.terms, res.differentials, payload)
    emitter.record(**payload)
    return _finish(args, verdict.status, ok=verdict.is_yes)


def _cmd_ext(args, emitter) -> int:
    family, ring = parse_class(args.family, _ring_of(args))
    m = parse_module(args.module, ring)
    if args.coeff is None:
        raise ValueError("ext needs --coeff")
    a = parse_module(args.coeff, ring)
    n = args.n if args.n is not None else 1
    result = relative_ext(family, m, a, n)
    emitter.line(
        f"Ext^{n} of {module_expression(m)} with coefficients "
        f"{module_expression(a)} over {class_expression(family)}: {result}"
    )
    emitter.record(
        record="ext",
        ring=str(ring),
        **{"class": class_expression(family)},
        module=module_expression(m),
        coeff=module_expression(a),
        n=n,
        group=module_expression(result.group),
        group_name=group_expression(result.group),
    )
    status = "no" if result.group.is_zero else "yes"
    return _finish(args, status, ok=True)


def _cmd_schanuel(args, emitter) -> int:
    family, ring = parse_class(args.family, _ring_of(args))
    m = parse_module(args.module, ring)
    n = args.n if args.n is not None else 1
    steps = [schanuel_iterate(family, m, i) for i in range(n + 1)]
    for i, x in enumerate(steps):
        emitter.line(f"  step {i}: {module_expression(x)}")
    verdict = check_condition(family, m, "S", n)
    emitter.line(f"S at level {n}: {verdict}")
    emitter.record(
        record="schanuel",
        ring=str(ring),
        **{"class": class_expression(family)},
        module=module_expression(m),
        n=n,
        steps=[module_expression(x) for x in steps],
        status=verdict.status.lower(),
        reason=verdict.reason,
    )
    return _finish(args, verdict.status, ok=True)


def _cmd_check(args, emitter) -> int:
    family, ring = parse_class(args.family, _ring_of(args))
    m = parse_module(args.module, ring)
    n = args.n if args.n is not None else 0
    verdict = check_condition(family, m, args.condition, n)
    emitter.line(
        f"{args.condition} for {module_expression(m)} over "
        f"{class_expression(family)} at level {n}: {verdict}"
    )
    emitter.record(
        record="check",
        condition=args.condition,
        ring=str(ring),
        **{"class": class_expression(family)},
        module=module_expression(m),
        n=n,
        status=verdict.status.lower(),
        reason=verdict.reason,
    )
    return _finish(args, verdict.status, ok=True)


def _report_cases(report, emitter):
    for c in report.cases:
        if c.skipped:
            mark = "skip"
        elif c.passed:
            mark = "pass"
        else:
            mark = "FAIL"
        detail = f"  {c.details}" if c.details else ""
        emitter.line(f"  [{mark}] {c.label}{detail}")
        emitter.record(
            record="case",
            label=c.label,
            passed=c.passed,
            skipped=c.skipped,
            details=c.details,
        )


def _lab_config(args) -> LabConfig:
    config = LabConfig()
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("the config file must hold a JSON object")
        config = LabConfig.from_mapping(data)
    overrides = {}
    if args.bound is not None:
        overrides["max_total"] = args.bound
    if args.n is not None:
        overrides["max_level"] = args.n
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    return config


def _cmd_suite(args, emitter) -> int:
    report = run_suite(args.ident, _lab_config(args))
    emitter.line(f"suite {report.ident}: {report.title}")
    _report_cases(report, emitter)
    emitter.line(f"result: {'PASS' if report.passed else 'FAIL'} ({report.summary()})")
    emitter.record(
        record="suite",
        ident=report.ident,
        title=report.title,
        passed=report.passed,
        summary=report.summary(),
    )
    return _finish(args, "yes" if report.passed else "no", ok=report.passed)


def _cmd_reproduce(args, emitter) -> int:
    report = run_reproduction(args.ident, _lab_config(args))
    emitter.line(f"reproduction {report.ident}: {report.title}")
    _report_cases(report, emitter)
    emitter.line(f"result: {'PASS' if report.passed else 'FAIL'} ({report.summary()})")
    emitter.record(
        record="reproduction",
        ident=report.ident,
        title=report.title,
        passed=report.passed,
        summary=report.summary(),
    )
    return _finish(args, "yes" if report.passed else "no", ok=report.passed)


def _cmd_list(args, emitter) -> int:
    table = SUITES if args.what == "suites" else REPRODUCTIONS
    for ident in table:
        emitter.line(ident)
        emitter.record(record="listing", kind=args.what, ident=ident)
    return 0


def _finish(args, status: str, ok: bool) -> int:
    """Map the final status and the command's own success onto an exit code.

    A computed No verdict is still a successful computation; only a
    failed verification or suite, an --expect mismatch, or a strict
    Unknown changes the exit code.
    """
    status = status.lower()
    if status == "unknown" and args.strict:
        return 3
    if args.expect is not None:
        return 0 if status == args.expect else 1
    return 0 if ok else 1


def _ring_of(args) -> RingSpec | None:
    return parse_ring(args.ring) if args.ring else None


def _snf_self_check(seed: int, trials: int = 25):
    rng = random.Random(seed)
    for _ in range(trials):
        nrows = rng.randint(0, 5)
        ncols = rng.randint(0, 5)
        a = freeze(
            tuple(rng.randint(-20, 20) for _ in range(ncols)) for _ in range(nrows)
        )
        res = snf_data(a, nrows, ncols)
        if mat_mul(mat_mul(res.u, a), res.v) != res.s:
            raise AssertionError("normal form product check failed")
        if mat_mul(res.u, res.uinv) != freeze(identity_matrix(nrows)):
            raise AssertionError("row transform inverse check failed")
        if mat_mul(res.v, res.vinv) != freeze(identity_matrix(ncols)):
            raise AssertionError("column transform inverse check failed")
        diag = res.diagonal
        for i in range(len(diag) - 1):
            if diag[i] and diag[i + 1] % diag[i]:
                raise AssertionError("divisibility chain check failed")
    return trials


# ---------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relhom",
        description="exact relative homological algebra over Z and Z/n",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Z or Z/n")
    common.add_argument("--class", dest="family", help="add(...), pow(...), constrained ..., torsionZ")
    common.add_argument("--module", help="[4,2], rank1, rank1+[2], or 0")
    common.add_argument("--coeff", help="coefficient module for ext")
    common.add_argument("--n", type=int, help="level or Ext degree")
    common.add_argument("--length", type=int, help="resolution length")
    common.add_argument("--bound", type=int, help="universe size bound for suites")
    common.add_argument(
        "--format", choices=("table", "records"), default="table",
        help="human-readable lines or JSON records",
    )
    common.add_argument("--expect", choices=("yes", "no"), help="fail unless the status matches")
    common.add_argument("--strict", action="store_true", help="exit 3 on Unknown")
    common.add_argument("--seed", type=int, help="run the randomized normal-form self-check first")
    common.add_argument("--config", help="JSON file with suite battery bounds")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("resolve", parents=[common], help="build and verify a resolution")
    sub.add_parser("ext", parents=[common], help="compute one relative Ext group")
    sub.add_parser("schanuel", parents=[common], help="iterate the Schanuel step")
    check = sub.add_parser("check", parents=[common], help="decide one of the conditions")
    check.add_argument("condition", choices=("E", "R", "S"))
    suite = sub.add_parser("suite", parents=[common], help="run one sweep suite")
    suite.add_argument("ident", help="suite id; see: relhom list suites")
    repro = sub.add_parser("reproduce", parents=[common], help="run one pinned reproduction")
    repro.add_argument("ident", help="reproduction id; see: relhom list examples")
    lst = sub.add_parser("list", parents=[common], help="list suites or examples")
    lst.add_argument("what", choices=("suites", "examples"))
    return parser


_HANDLERS = {
    "resolve": _cmd_resolve,
    "ext": _cmd_ext,
    "schanuel": _cmd_schanuel,
    "check": _cmd_check,
    "suite": _cmd_suite,
    "reproduce": _cmd_reproduce,
    "list": _cmd_list,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    emitter = Emitter(args.format)
    try:
        if args.seed is not None:
            trials = _snf_self_check(args.seed)
            emitter.line(f"normal-form self-check: {trials} trials passed")
            emitter.record(record="self-check", seed=args.seed, trials=trials)
        handler = _HANDLERS[args.command]
        for needed in _required_for(args.command):
            if getattr(args, needed) is None:
                raise ValueError(f"{args.command} needs --{needed.replace('family', 'class')}")
        return handler(args, emitter)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _required_for(command: str) -> tuple:
    if command in ("resolve", "ext", "schanuel", "check"):
        return ("family", "module")
    return ()


if __name__ == "__main__":
    sys.exit(main())
