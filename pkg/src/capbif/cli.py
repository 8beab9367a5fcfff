"""Command-line front end.

Subcommands: spectrum, decompose, degree, index, alternative, and
certify {unbounded, bounded-necessary, symmetry-breaking}.  Tables are
for reading; --format json is the machine contract and follows the
schemas module.  For one configuration the bytes on stdout are
deterministic apart from the leading version header line.

Exit codes: 0 proved / conditions emitted / plain output, 1 domain or
internal error, 2 hypothesis not met, 3 inconclusive, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from . import __version__
from .bifindex import NEGATIVE, POSITIVE, IndexRequest, index_report
from .cache import cached_assemble, spectrum_payload
from .rabinowitz import (
    SystemConfig,
    bounded_necessary,
    certify_alternative,
    certify_unbounded,
    symmetry_breaking,
)
from .so2rep import SO2Rep, so2_decompose
from .degree import deg_neg_id
from .spectrum import HEMISPHERE, SpectrumError, hemisphere_spectrum

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


_PI_FORM = re.compile(
    r"^\s*(?P<num>\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?\s*$",
    re.IGNORECASE,
)


def parse_gamma(text: str) -> float | str:
    """'hemisphere', a rational multiple of pi like 'pi/3' or '2pi/5',
    or a plain decimal radius in (0, pi)."""
    token = text.strip().lower()
    if token == HEMISPHERE:
        return HEMISPHERE
    m = _PI_FORM.match(token)
    if m:
        num = float(m.group("num")) if m.group("num") else 1.0
        den = float(m.group("den")) if m.group("den") else 1.0
        if den == 0:
            raise ValueError("gamma denominator must be nonzero")
        value = num * math.pi / den
    else:
        value = float(token)
    if not (0.0 < value < math.pi):
        raise ValueError(f"gamma must lie in (0, pi), got {text!r}")
    return value


def parse_sign(text: str) -> str:
    token = text.strip().lower()
    if token in ("+", "positive", "pos"):
        return POSITIVE
    if token in ("-", "negative", "neg"):
        return NEGATIVE
    raise ValueError(f"sign must be one of +, -, positive, negative, got {text!r}")


def parse_candidates(text: str) -> list[float]:
    values: list[float] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        values.append(int(part) if re.fullmatch(r"[+-]?\d+", part) else float(part))
    if not values:
        raise ValueError("empty candidate list")
    return values


_SPACE_TERM = re.compile(r"^\s*(?P<kind>[RH])\[\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*\]\s*$")


def parse_space(text: str) -> SO2Rep:
    """Space grammar: '+'-joined terms, R[k,m] for k rotation planes of
    weight m (weight 0 means k trivial lines), H[n,m] for the degree-m
    harmonics in n variables."""
    rep = SO2Rep()
    for term in text.split("+"):
        match = _SPACE_TERM.match(term)
        if not match:
            raise ValueError(
                f"cannot parse space term {term.strip()!r}; expected R[k,m] or H[n,m]"
            )
        a, b = int(match.group("a")), int(match.group("b"))
        if match.group("kind") == "R":
            rep = rep + SO2Rep({b: a})
        else:
            rep = rep + so2_decompose(a, b)
    return rep


def _fmt_lambda(value) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.9f}"


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _table(rows: list[list[str]], header: list[str]) -> None:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _resolve_spectrum(args, need_m0: int | None = None):
    """Records for the requested configuration; hemisphere goes exact."""
    if args.gamma == HEMISPHERE:
        if need_m0 is not None:
            return hemisphere_spectrum(args.n, need_m0)
        records, _ = cached_assemble(
            args.n,
            HEMISPHERE,
            args.lambda_max,
            use_cache=False,
        )
        return records
    if args.lambda_max is None:
        raise _UsageError("--lambda-max is required for a general radius")
    records, _ = cached_assemble(
        args.n,
        args.gamma,
        args.lambda_max,
        m_scan_max=getattr(args, "m_scan_max", None),
        cache_dir=getattr(args, "cache_dir", None),
        use_cache=not getattr(args, "no_cache", False),
    )
    return records


class _UsageError(Exception):
    pass


# -- handlers ----------------------------------------------------------


def _cmd_spectrum(args) -> int:
    if args.gamma == HEMISPHERE:
        records, _ = cached_assemble(args.n, HEMISPHERE, args.lambda_max, use_cache=False)
    else:
        records, _ = cached_assemble(
            args.n,
            args.gamma,
            args.lambda_max,
            m_scan_max=args.m_scan_max,
            cache_dir=args.cache_dir,
            use_cache=not args.no_cache,
        )
    if args.format == "json":
        _emit_json(spectrum_payload(args.n, args.gamma, args.lambda_max, records))
        return 0
    rows = []
    flagged = False
    for k, rec in enumerate(records, start=1):
        mark = ""
        if not rec.exact and len(rec.gamma_set) > 1:
            mark = " *"
            flagged = True
        rows.append(
            [
                str(k),
                _fmt_lambda(rec.value) + mark,
                "{" + ",".join(str(g) for g in rec.gamma_set) + "}",
                str(rec.mu),
                str(rec.nu),
                str(rec.eigenspace),
            ]
        )
    _table(rows, ["k", "lambda", "modes", "mu", "nu", "eigenspace"])
    if flagged:
        print("* numerically coincident modes; treated as one eigenvalue")
    return 0


def _cmd_decompose(args) -> int:
    rep = so2_decompose(args.n, args.m)
    if args.format == "json":
        _emit_json(
            {
                "n": args.n,
                "m": args.m,
                "dim": rep.dim,
                "decomposition": rep.to_json_obj(),
            }
        )
        return 0
    rows = [[str(m), str(k)] for m, k in rep.items()]
    _table(rows, ["weight", "multiplicity"])
    print(f"dim = {rep.dim}")
    print(f"decomposition = {rep}")
    return 0


def _cmd_degree(args) -> int:
    rep = parse_space(args.space)
    deg = deg_neg_id(rep)
    if args.format == "json":
        _emit_json(
            {
                "space": rep.to_json_obj(),
                "dim": rep.dim,
                "degree": deg.to_json_obj(),
                "classification": deg.classify(),
            }
        )
        return 0
    rows = [[str(i), str(c)] for i, c in deg.items()]
    _table(rows, ["index", "coefficient"])
    print(f"space = {rep} (dim {rep.dim})")
    print(f"classification = {deg.classify()}")
    return 0


def _cmd_index(args) -> int:
    sign = parse_sign(args.sign) if args.sign else (
        POSITIVE if args.p_minus > 0 else NEGATIVE
    )
    records = _resolve_spectrum(args, need_m0=args.m0 if args.gamma == HEMISPHERE else None)
    if args.m0 > len(records):
        raise ValueError(
            f"m0={args.m0} beyond the {len(records)} spectrum records in range; "
            "raise --lambda-max"
        )
    req = IndexRequest(tuple(records), args.m0, sign, args.p_minus, args.p_plus)
    report = index_report(req)
    payload = {
        "config": {
            "n": args.n,
            "gamma": args.gamma,
            "p_minus": args.p_minus,
            "p_plus": args.p_plus,
        },
        **report,
    }
    if args.format == "json":
        _emit_json(payload)
        return 0
    subject = report["request"]["subject"]
    print(f"subject = {_fmt_lambda(subject)} (m0 = {args.m0}, {sign})")
    rows = [[str(i), str(c)] for i, c in report["index"]["coeffs"]] or [["-", "0"]]
    _table(rows, ["index", "coefficient"])
    cone = report["cone"]
    print(
        f"classification = {cone['classification']}"
        + (f"; implied cone = {cone['implied_cone']}" if cone["implied_cone"] else "")
    )
    print(f"closed-form check = {report['closed_form_check']}")
    return 0


def _cmd_alternative(args) -> int:
    config = SystemConfig(args.n, args.gamma, args.p_minus, args.p_plus)
    values = parse_candidates(args.candidates)
    cert = certify_alternative(values, config, lambda_max=args.lambda_max)
    if args.format == "table":
        print(f"candidates = {cert.subject}")
        print(f"sum = {cert.sum_element}")
        print(f"is_theta = {cert.details['is_theta']}")
        print(f"verdict = {cert.verdict}")
    else:
        _emit_json(cert.to_json_obj())
    return cert.exit_code


def _cmd_certify_unbounded(args) -> int:
    config = SystemConfig(args.n, args.gamma, args.p_minus, args.p_plus)
    sign = parse_sign(args.sign) if args.sign else (
        POSITIVE if args.p_minus > 0 else NEGATIVE
    )
    cert = certify_unbounded(
        config,
        m0=args.m0,
        sign=sign,
        scan_bound=args.scan_bound,
        subset_budget=args.subset_budget,
    )
    _emit_json(cert.to_json_obj())
    return cert.exit_code


def _cmd_certify_bounded(args) -> int:
    config = SystemConfig(args.n, args.gamma, args.p_minus, args.p_plus)
    sign = parse_sign(args.sign) if args.sign else (
        POSITIVE if args.p_minus > 0 else NEGATIVE
    )
    records = None
    if args.gamma != HEMISPHERE:
        records = _resolve_spectrum(args)
    cert = bounded_necessary(
        config, m0=args.m0, sign=sign, records=records, lambda_max=args.lambda_max
    )
    _emit_json(cert.to_json_obj())
    return cert.exit_code


def _cmd_certify_symbreak(args) -> int:
    config = SystemConfig(args.n, args.gamma, args.p_minus, args.p_plus)
    sign = parse_sign(args.sign) if args.sign else (
        POSITIVE if args.p_minus > 0 else NEGATIVE
    )
    records = _resolve_spectrum(args, need_m0=args.m0 if args.gamma == HEMISPHERE else None)
    if args.m0 > len(records):
        raise ValueError(
            f"m0={args.m0} beyond the {len(records)} spectrum records in range; "
            "raise --lambda-max"
        )
    cert = symmetry_breaking(
        records[args.m0 - 1],
        config,
        sign=sign,
        position=args.m0,
        lambda_max=args.lambda_max,
    )
    _emit_json(cert.to_json_obj())
    return cert.exit_code


# -- parser ------------------------------------------------------------


def _add_common(p, lambda_max_required: bool = False, with_cache: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="ambient dimension, >= 2")
    p.add_argument(
        "--gamma",
        type=parse_gamma,
        required=True,
        help="ball radius: 'hemisphere', 'pi/3', or a decimal in (0, pi)",
    )
    p.add_argument(
        "--lambda-max",
        type=float,
        required=lambda_max_required,
        default=None,
        help="spectrum window upper bound (required for a general radius)",
    )
    if with_cache:
        p.add_argument("--m-scan-max", type=int, default=None)
        p.add_argument("--no-cache", action="store_true", help="bypass the spectrum cache")
        p.add_argument("--cache-dir", default=None, help="spectrum cache directory")


def _add_signature(p, with_sign: bool = True) -> None:
    p.add_argument("--p-minus", type=int, required=True, help="negative-definite block count")
    p.add_argument("--p-plus", type=int, required=True, help="positive-definite block count")
    if with_sign:
        p.add_argument(
            "--sign",
            default=None,
            help="side of the candidate: +/positive or -/negative "
            "(default: + when p_minus > 0, else -)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="capbif", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="Dirichlet spectrum of the ball")
    _add_common(p, lambda_max_required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("decompose", help="weight decomposition of a harmonic space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("degree", help="degree of -Id on a named space")
    p.add_argument(
        "--space",
        required=True,
        help="'+'-joined terms R[k,m] (k planes of weight m) and H[n,m] (harmonics)",
    )
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("index", help="bifurcation index of a signed candidate")
    _add_common(p)
    p.add_argument("--m0", type=int, required=True, help="1-based spectrum position")
    _add_signature(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("alternative", help="index sum over an explicit candidate set")
    _add_common(p, with_cache=False)
    _add_signature(p, with_sign=False)
    p.add_argument(
        "--candidates",
        required=True,
        help="comma-separated signed eigenvalues, e.g. '2,-2,6'",
    )
    p.add_argument("--format", choices=("table", "json"), default="json")
    p.set_defaults(func=_cmd_alternative)

    cert = sub.add_parser("certify", help="certificate-producing checks")
    csub = cert.add_subparsers(dest="certkind", required=True)

    p = csub.add_parser("unbounded", help="unbounded continuum at a signed candidate")
    _add_common(p, with_cache=False)
    p.add_argument("--m0", type=int, required=True)
    _add_signature(p)
    p.add_argument("--scan-bound", type=int, default=8, help="candidate window size")
    p.add_argument("--subset-budget", type=int, default=1 << 20)
    p.set_defaults(func=_cmd_certify_unbounded)

    p = csub.add_parser(
        "bounded-necessary", help="conditions a bounded continuum must satisfy"
    )
    _add_common(p)
    p.add_argument("--m0", type=int, required=True)
    _add_signature(p)
    p.set_defaults(func=_cmd_certify_bounded)

    p = csub.add_parser(
        "symmetry-breaking", help="must branches break the rotational symmetry"
    )
    _add_common(p)
    p.add_argument("--m0", type=int, required=True)
    _add_signature(p)
    p.set_defaults(func=_cmd_certify_symbreak)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse help (0) or usage error (64)
        return 0 if exc.code is None else int(exc.code)
    print(f"# capbif {__version__}")
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (ValueError, OverflowError, RuntimeError, SpectrumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
