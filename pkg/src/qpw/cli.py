"""Command-line front end: ``qpw coeffs | verify | scan | oracle``.

Exit codes: 0 success, 1 a verification or congruence failed, 2 usage
error, 3 an internal precondition failed (for example a precision shortfall).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import congruences
from .errors import (
    InsufficientPrecision,
    NonConvergentProduct,
    NonConvergentSum,
    QSeriesError,
    SpecializationViolatesSideConditions,
)
from .partitions import ENUMERATION, SERIES, enumerated_sequence, gf_series, normalize_id
from .series import format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_SCAN_ORDER = 1000
DEFAULT_ORACLE_N = 40


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    ids: list = field(default_factory=list)
    order: int | None = None
    n_max: int | None = None
    mods: list = field(default_factory=list)
    seed: int | None = None
    trials: int | None = None
    format: str = "text"
    output: str | None = None
    jobs: int = 1


# ---------------------------------------------------------------------------
# configuration


def read_config(path: str | os.PathLike) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _int(value, name: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def resolve_seed(flag, config: dict) -> int | None:
    """Flag first, then QPW_SEED, then the config file."""
    if flag is not None:
        return flag
    env = os.environ.get("QPW_SEED")
    if env:
        return _int(env, "QPW_SEED")
    if "seed" in config:
        return _int(config["seed"], "seed")
    return None


def _setting(args, config, name, default=None, cast=None):
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name, default)
    if value is not None and cast is not None:
        value = cast(value, name) if cast is _int else cast(value)
    return value


# ---------------------------------------------------------------------------
# output


def emit(cfg: RunConfig, payload, text_lines) -> None:
    if cfg.output:
        Path(cfg.output).write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# commands


def _series_id(value: str) -> str:
    try:
        return normalize_id(value)
    except KeyError:
        raise UsageError(f"unknown series {value!r}; known: {', '.join(sorted(SERIES))}") from None


def cmd_coeffs(args, config) -> int:
    sid = _series_id(args.series)
    n_max = _setting(args, config, "max_n", 30, _int)
    if n_max < 1:
        raise UsageError("--max-n must be at least 1")
    cfg = RunConfig("coeffs", [sid], n_max=n_max, format=_setting(args, config, "format", "text"),
                    output=_setting(args, config, "output"))
    if args.source == "enumeration":
        if sid not in ENUMERATION:
            raise UsageError(f"no counting table for {sid!r}")
        values = enumerated_sequence(sid, n_max)
    else:
        f = gf_series(sid, n_max + 1)
        if f.order < n_max + 1:
            raise InsufficientPrecision(n_max, f.order)
        values = [f.coeff(n) for n in range(n_max + 1)]
    rows = [(n, values[n]) for n in range(1, n_max + 1)]
    payload = {"series": sid, "max_n": n_max, "source": args.source,
               "coefficients": [format_rational(v) if not isinstance(v, int) else v for _, v in rows]}
    emit(cfg, payload, [f"{n} {format_rational(v)}" for n, v in rows])
    return EXIT_OK


def _verify_one(task):
    """Worker: (id, prec, params, trials, seed) -> report dict."""
    from . import identities as I
    id_, prec, params, trials, seed = task
    if id_ == "extvar" and trials:
        return I.verify_extvar(trials, prec or 60, seed).to_dict()
    if id_ == "ext" and trials:
        return I.verify_ext(trials, prec or 50, seed).to_dict()
    record = I.lookup(id_)
    return I.verify_record(record, prec, params=params).to_dict()


def _parse_params(items) -> dict:
    from .identities import parse_monomial
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        try:
            out[name] = parse_monomial(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def cmd_verify(args, config) -> int:
    from . import identities as I
    order = _setting(args, config, "order", None, _int)
    if order is not None and order < 2:
        raise UsageError("--order must be at least 2")
    trials = _setting(args, config, "trials", None, _int)
    if trials is not None and trials < 1:
        raise UsageError("--trials must be at least 1")
    seed = resolve_seed(args.seed, config)
    jobs = _setting(args, config, "jobs", 1, _int)
    if args.all:
        ids = sorted(I.REGISTRY)
        if args.include_known_false:
            ids += sorted(I.KNOWN_FALSE)
    elif args.id:
        ids = list(args.id)
    else:
        raise UsageError("give --id ID (repeatable) or --all")
    for id_ in ids:
        if id_ not in I.REGISTRY and id_ not in I.KNOWN_FALSE:
            raise UsageError(f"unknown identity {id_!r}")
    params = _parse_params(args.param)
    cfg = RunConfig("verify", ids, order=order, seed=seed, trials=trials,
                    format=_setting(args, config, "format", "text"), output=_setting(args, config, "output"),
                    jobs=jobs)
    tasks = []
    for id_ in ids:
        record = I.lookup(id_)
        prec = None if order is None else order * record.scale
        tasks.append((id_, prec, params, trials if id_ in ("extvar", "ext") else None, seed))
    try:
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                reports = list(pool.map(_verify_one, tasks))
        else:
            reports = [_verify_one(t) for t in tasks]
    except SpecializationViolatesSideConditions as exc:
        raise UsageError(f"specialization rejected: {exc}") from None
    reports.sort(key=lambda r: r["id"])
    lines = [_report_line(r) for r in reports]
    failed = [r for r in reports if r["status"] != I.PASS]
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} passed")
    emit(cfg, reports, lines)
    return EXIT_FAIL if failed else EXIT_OK


def _report_line(r: dict) -> str:
    if r["status"] == "PASS":
        extra = f" ({r['trials']} trials, seed {r['seed']})" if r["trials"] > 1 else ""
        return f"PASS {r['id']} @ {r['prec']}{extra}"
    return (f"FAIL {r['id']} @ {r['prec']}: q^{r['first_fail_exponent']} lhs={r['lhs_coeff']} "
            f"rhs={r['rhs_coeff']} {r['detail']}").rstrip()


def _parse_mods(text) -> list[int]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        mods = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--mods must be a comma list of integers, got {text!r}") from None
    if any(m < 2 for m in mods):
        raise UsageError("moduli must be at least 2")
    return mods


def cmd_scan(args, config) -> int:
    bound = _setting(args, config, "max_n", DEFAULT_SCAN_ORDER, _int)
    if bound < 2:
        raise UsageError("--max-n must be at least 2")
    sid = _series_id(args.sequence) if args.sequence else None
    cfg = RunConfig("scan", [sid] if sid else [], n_max=bound, mods=_parse_mods(args.mods),
                    format=_setting(args, config, "format", "text"), output=_setting(args, config, "output"))
    payload, lines, failed = [], [], False
    source = args.source

    if args.claim:
        if sid is None:
            raise UsageError("--claim needs --sequence")
        try:
            A, B, M = (int(x) for x in args.claim.split(","))
            claim = congruences.CongruenceClaim(sid, A, B, M, max(0, (bound - B) // A))
        except ValueError as exc:
            raise UsageError(f"--claim expects A,B,M: {exc}") from None
        congruences.check(claim, source)
        payload.append(claim.to_dict())
        lines.append(claim.line())
        failed |= claim.verdict != congruences.PASS

    if args.claims == "paper":
        if sid == "y":
            rep = congruences.y_oddness_evidence(bound)
            payload.append(rep.to_dict())
            lines.append(rep.line())
            failed |= rep.verdict != congruences.PASS
        else:
            for claim in congruences.check_all(congruences.stated_claims(bound, sid), source):
                payload.append(claim.to_dict())
                lines.append(claim.line())
                failed |= claim.verdict != congruences.PASS
            if sid in (None, "sptbar", "sptbar_omega"):
                reports = [congruences.check_hecke_mod4(max(1, bound // 7), source)]
                if bound >= 10:
                    reports.insert(0, congruences.check_parity_characterization(bound, source))
                for rep in reports:
                    payload.append(rep.to_dict())
                    lines.append(rep.line())
                    failed |= rep.verdict != congruences.PASS

    if args.mine:
        if sid is None:
            raise UsageError("--mine needs --sequence")
        found = congruences.mine(sid, args.A_max, cfg.mods, bound, source)
        payload.extend(c.to_dict() for c in found)
        lines.extend(c.line() for c in found)
        lines.append(f"{len(found)} candidate progressions")

    if not (args.claim or args.claims or args.mine):
        raise UsageError("give --claims paper, --claim A,B,M or --mine")
    emit(cfg, payload, lines)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_oracle(args, config) -> int:
    sid = _series_id(args.sequence)
    if sid not in ENUMERATION:
        raise UsageError(f"no counting table for {sid!r}; have {', '.join(sorted(ENUMERATION))}")
    n_max = _setting(args, config, "max_n", DEFAULT_ORACLE_N, _int)
    if n_max < 1:
        raise UsageError("--max-n must be at least 1")
    cfg = RunConfig("oracle", [sid], n_max=n_max, format=_setting(args, config, "format", "text"),
                    output=_setting(args, config, "output"))
    series = congruences.table(sid, n_max, "series")
    counts = congruences.table(sid, n_max, "enumeration")
    bad = next((n for n in range(1, n_max + 1) if series[n] != counts[n]), None)
    payload = {"sequence": sid, "max_n": n_max, "status": "PASS" if bad is None else "FAIL",
               "first_divergence": bad,
               "series_value": None if bad is None else series[bad],
               "enumeration_value": None if bad is None else counts[bad]}
    if bad is None:
        line = f"PASS {sid}: series and enumeration agree for 1 <= n <= {n_max}"
    else:
        line = f"FAIL {sid}: first divergence at n={bad}: series {series[bad]}, enumeration {counts[bad]}"
    emit(cfg, payload, [line])
    return EXIT_OK if bad is None else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--output", default=None, help="also write the JSON report here")
    common.add_argument("--config", default=None, help="file of 'key = value' defaults")

    p = argparse.ArgumentParser(prog="qpw", description="Exact q-series laboratory for overpartitions.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="print coefficients of a generating function")
    c.add_argument("--series", required=True)
    c.add_argument("--max-n", dest="max_n", type=int, default=None)
    c.add_argument("--source", choices=congruences.SOURCES, default="series")
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common], help="verify registered identities")
    v.add_argument("--id", action="append")
    v.add_argument("--all", action="store_true")
    v.add_argument("--include-known-false", action="store_true",
                   help="with --all, also run the records known to be false (they FAIL)")
    v.add_argument("--order", type=int, default=None, help="q-order; scaled records use order * scale")
    v.add_argument("--trials", type=int, default=None, help="random specializations for extvar and ext")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--param", action="append", help="override a parameter, e.g. beta=2*q^2")
    v.add_argument("--jobs", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", parents=[common], help="check or mine congruences")
    s.add_argument("--sequence", default=None)
    s.add_argument("--claims", choices=("paper",), default=None, help="the stated congruences")
    s.add_argument("--claim", default=None, help="one progression as A,B,M")
    s.add_argument("--mine", action="store_true")
    s.add_argument("--A-max", dest="A_max", type=int, default=10)
    s.add_argument("--mods", default="2,3,4,5")
    s.add_argument("--max-n", dest="max_n", type=int, default=None)
    s.add_argument("--source", choices=congruences.SOURCES, default="series")
    s.set_defaults(func=cmd_scan)

    o = sub.add_parser("oracle", parents=[common], help="compare series against enumeration")
    o.add_argument("--sequence", required=True)
    o.add_argument("--max-n", dest="max_n", type=int, default=None)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = read_config(args.config) if args.config else {}
        return args.func(args, config)
    except UsageError as exc:
        print(f"qpw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InsufficientPrecision, NonConvergentSum, NonConvergentProduct, QSeriesError) as exc:
        print(f"qpw: precondition failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"qpw: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
