"""Command-line front end.

    adelic-entropy entropy --poly "6" --dim 1 --format json
    adelic-entropy solenoid --poly "x - 3/2" --dim 1
    adelic-entropy approx --kind padic_det --poly "2 + x" --prime 2 --sides 1..12

Exit status: 0 on success (mathematical verdicts are data), 2 for malformed
input, 3 for guard violations, 4 when two independent routes disagree.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import approx, entropy
from .errors import EntropyError, GuardError, InconsistencyError, ParseError
from .laurent import char_poly, format_poly, parse, parse_matrix
from .mahler import mahler
from .padic import Prime, factor, local_factor

COMMANDS = ("mahler", "entropy", "solenoid", "lindward", "rank", "approx")
KINDS = ("padic_det", "elek_rank", "peters", "posent")
SIG_DIGITS = 12


@dataclass
class RunConfig:
    command: str
    poly: Optional[str] = None
    matrix: Optional[str] = None
    dim: int = 1
    primes: Sequence[int] | str = "auto"
    grid: Optional[int] = None
    tol: float = 1e-6
    sides: Optional[List[int]] = None
    seed: int = 0
    format: Optional[str] = None
    kind: str = "padic_det"
    bits: bool = False
    absolute: bool = False
    generators: int = 1
    relations: List[str] = field(default_factory=list)

    @property
    def output_format(self) -> str:
        if self.format:
            return self.format
        return "csv" if self.command == "approx" else "text"


def parse_sides(text: str) -> List[int]:
    """``"1..12"`` (inclusive) or a comma-separated list."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            sides = list(range(int(lo), int(hi) + 1))
        else:
            sides = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ParseError(f"malformed side list {text!r}") from None
    if not sides or min(sides) < 1:
        raise ParseError(f"side list {text!r} must contain positive integers")
    return sides


def parse_primes(text: str):
    if text.strip() == "auto":
        return "auto"
    try:
        return [Prime(int(s)) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _round(x):
    if isinstance(x, bool) or x is None or isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _num(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _log_identity(x: float, limit: int = 10**6) -> str:
    """Name x as log of a small rational when exp(x) is one (within 1e-9)."""
    if x == 0:
        return "= 0"
    q = Fraction(math.exp(x)).limit_denominator(1000)
    if 0 < q.numerator <= limit and abs(math.log(q) - x) < 1e-9:
        return f"= log {q}"
    return ""


class _Report:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.scale = math.log(2) if cfg.bits else 1.0
        self.units = "bit" if cfg.bits else "nat"

    def s(self, x):
        return None if x is None else x / self.scale


def _run_mahler(cfg: RunConfig, rep: _Report):
    f = parse(cfg.poly, cfg.dim)
    res = mahler(f, cfg.tol, cap=cfg.grid)
    doc = {"input": format_poly(f), "dim": f.dim, "value": rep.s(res.value),
           "error": rep.s(res.error_estimate), "method": res.method, "grid": res.grid_size,
           "excluded_points": res.excluded_points, "converged": res.converged}
    text = [f"m({format_poly(f)}) = {_num(rep.s(res.value))} {rep.units} "
            f"+/- {_num(rep.s(res.error_estimate))} [{res.method}"
            + (f", N={res.grid_size}" if res.grid_size else "") + "]"]
    if not res.converged:
        text.append("warning: grid cap reached before the target tolerance")
    return doc, text, 0


def _run_entropy(cfg: RunConfig, rep: _Report):
    f = parse(cfg.poly, cfg.dim)
    report = entropy.decompose(f, cfg.tol)
    doc = report.to_dict(rep.scale)
    if cfg.primes != "auto":
        for p in cfg.primes:
            lf = local_factor(f, p)
            doc["components"].setdefault(str(p), rep.s(lf.value))
            doc["multiplicities"].setdefault(str(p), lf.multiplicity)
        doc["components"] = dict(sorted(doc["components"].items(), key=lambda kv: int(kv[0])))
        doc["multiplicities"] = dict(sorted(doc["multiplicities"].items(), key=lambda kv: int(kv[0])))
    status = 0
    limit = 10 * (cfg.tol + report.mahler.error_estimate)
    if report.residual > limit or report.solenoid_residual > limit:
        status = 4
    text = [f"input: {format_poly(f)} (dim {f.dim})",
            f"rho_total    = {_num(rep.s(report.rho_total))} {rep.units}",
            f"rho_infinity = {_num(rep.s(report.rho_infinity))} {rep.units}"]
    for p, v in doc["components"].items():
        text.append(f"rho_{p:<10} = {_num(v)} {rep.units} ({doc['multiplicities'][p]} * log {p})")
    text.append(f"residual     = {_num(rep.s(report.residual))}")
    return doc, text, status


def _run_solenoid(cfg: RunConfig, rep: _Report):
    f = parse(cfg.poly, cfg.dim)
    res = entropy.solenoid_entropy(f, cfg.tol)
    status = 4 if res.residual > 10 * (cfg.tol + res.mahler.error_estimate) else 0
    doc = {"input": format_poly(f), "dim": f.dim, "rho": rep.s(res.value),
           "rho_gcd_lcm": rep.s(res.gcd_lcm_value), "residual": rep.s(res.residual),
           "mahler": {"value": rep.s(res.mahler.value), "error": rep.s(res.mahler.error_estimate),
                      "method": res.mahler.method, "grid": res.mahler.grid_size},
           "local_factors": {str(int(v.place)): rep.s(v.value) for v in res.local}}
    ident = "" if cfg.bits else _log_identity(res.value)
    text = [f"ρ = {_num(rep.s(res.value))} {rep.units}" + (f" {ident}" if ident else ""),
            f"m(f) = {_num(rep.s(res.mahler.value))}; local factors: "
            + (", ".join(f"L_{int(v.place)} = {v.multiplicity} * log {int(v.place)}" for v in res.local) or "none"),
            f"gcd/lcm route = {_num(rep.s(res.gcd_lcm_value))} (residual {_num(rep.s(res.residual))})"]
    return doc, text, status


def _run_lindward(cfg: RunConfig, rep: _Report):
    if not cfg.matrix:
        raise ParseError("lindward needs --matrix FILE")
    try:
        with open(cfg.matrix) as fh:
            a = parse_matrix(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read matrix file: {exc}") from None
    chi = char_poly(a)
    if cfg.primes == "auto":
        den = 1
        for c in chi.coefficients():
            den = den * c.denominator // math.gcd(den, c.denominator)
        primes = [Prime(p) for p in factor(den)]
    else:
        primes = list(cfg.primes)
    values = {int(p): entropy.lind_ward(a, p) for p in primes}
    doc = {"n": a.n, "char_poly": format_poly(chi),
           "local_factors": {str(p): rep.s(v.value) for p, v in values.items()},
           "multiplicities": {str(p): v.multiplicity for p, v in values.items()}}
    text = [f"char poly: {format_poly(chi)}"]
    text += [f"L_{p}(t - a) = {_num(rep.s(v.value))} {rep.units} ({v.multiplicity} * log {p})"
             for p, v in values.items()]
    if not values:
        text.append("all local factors vanish (integral characteristic polynomial)")
    return doc, text, 0


def _run_rank(cfg: RunConfig, rep: _Report):
    rows = []
    for rel in cfg.relations:
        entries = [parse(t, cfg.dim) for t in rel.split(",")]
        rows.append(tuple(entries))
    m = entropy.ModulePresentation(cfg.generators, tuple(rows), cfg.dim)
    ranks = entropy.evaluation_ranks(m, cfg.seed) if rows else []
    rk = entropy.von_neumann_rank(m, cfg.seed)
    doc = {"generators": m.generators, "relations": [[format_poly(f) for f in r] for r in m.relations],
           "dim": m.dim, "seed": cfg.seed, "trial_ranks": ranks, "rank": rk}
    text = [f"von Neumann rank = {rk} (generators {m.generators}, trial ranks {ranks})"]
    return doc, text, 0


def _run_approx(cfg: RunConfig, rep: _Report):
    f = parse(cfg.poly, cfg.dim)
    if cfg.primes == "auto" or not cfg.primes:
        raise ParseError("approx needs an explicit --prime")
    p = cfg.primes[0]
    if cfg.kind == "padic_det":
        series = approx.padic_det_series(f, p, cfg.sides, "absolute" if cfg.absolute else "valuation")
    elif cfg.kind == "elek_rank":
        series = approx.elek_rank_series(f, p, cfg.sides)
    elif cfg.kind == "peters":
        series = approx.peters_series(f, p, cfg.sides)
    elif cfg.kind == "posent":
        sides = cfg.sides or approx.default_sides(f.dim)
        checks = [(n, approx.posent_check(f, p, n)) for n in sides]
        doc = {"kind": "posent", "f": format_poly(f), "prime": int(p),
               "checks": [{"n": n, "holds": c.holds, "value": rep.s(c.value), "bound": rep.s(c.bound),
                           "margin": rep.s(c.margin)} for n, c in checks]}
        text = [f"n={n}: {'holds' if c.holds else 'FAILS'} value={_num(rep.s(c.value))} "
                f"bound={_num(rep.s(c.bound))} margin={_num(rep.s(c.margin))}" for n, c in checks]
        csv_text = "n,value,bound,margin,holds\n" + "".join(
            f"{n},{_num(rep.s(c.value))},{_num(rep.s(c.bound))},{_num(rep.s(c.margin))},{int(c.holds)}\n"
            for n, c in checks)
        return doc, text, 0, csv_text
    else:
        raise ParseError(f"unknown approximation kind {cfg.kind!r}")
    doc = series.to_dict(rep.scale)
    csv_text = series.to_csv(_num, rep.scale)
    if series.complement is not None:
        csv_text += series.complement.to_csv(_num, rep.scale)
    text = [f"{series.kind} series for {format_poly(f)} at p={int(p)} ({series.convention})"]
    for pt in series.points:
        text.append(f"  n={pt.n:<4} |F|={pt.volume:<6} " +
                    ("gap (singular)" if pt.gap else f"value={_num(rep.s(pt.value))}"))
    ref = "none" if series.reference is None else _num(rep.s(series.reference))
    lim = "none" if series.limit_estimate is None else _num(rep.s(series.limit_estimate))
    text.append(f"limit estimate {lim}, reference {ref}, verdict {series.verdict}")
    return doc, text, 0, csv_text


_DISPATCH = {
    "mahler": _run_mahler,
    "entropy": _run_entropy,
    "solenoid": _run_solenoid,
    "lindward": _run_lindward,
    "rank": _run_rank,
    "approx": _run_approx,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command, writing a single report to ``out``; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.command not in _DISPATCH:
        print(f"error: unknown command {cfg.command!r}", file=err)
        return 2
    rep = _Report(cfg)
    try:
        if cfg.command not in ("lindward", "rank") and not cfg.poly:
            raise ParseError(f"{cfg.command} needs --poly")
        result = _DISPATCH[cfg.command](cfg, rep)
    except GuardError as exc:
        print(f"error: {exc}", file=err)
        return 3
    except InconsistencyError as exc:
        print(f"error: {exc}", file=err)
        return 4
    except (EntropyError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    doc, text, status = result[:3]
    fmt = cfg.output_format
    if fmt == "json":
        doc = {"command": cfg.command, "units": rep.units, **doc}
        out.write(json.dumps(_round(doc), indent=2) + "\n")
    elif fmt == "csv":
        if len(result) > 3:
            out.write(result[3])
        else:
            out.write(_flat_csv(_round(doc)))
    else:
        out.write("\n".join(text) + "\n")
    if status == 4:
        print("error: independent routes disagree beyond 10x tolerance", file=err)
    return status


def _flat_csv(doc: dict) -> str:
    rows = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list):
            rows.append((prefix, " ".join(str(v) for v in value)))
        else:
            rows.append((prefix, "" if value is None else value))

    walk("", doc)
    return "key,value\n" + "".join(f"{k},{v}\n" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adelic-entropy",
                                     description="Entropy invariants of algebraic Z^d-actions (natural-log units).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--poly", help="Laurent polynomial, e.g. '5 + 2*x + 2*x^-1'")
        sp.add_argument("--dim", type=int, default=1, help="number of variables d")
        sp.add_argument("--primes", "--prime", dest="primes", default="auto",
                        help="comma-separated primes or 'auto'")
        sp.add_argument("--grid", type=int, help="grid size cap for multivariate Mahler measures")
        sp.add_argument("--tol", type=float, default=1e-6, help="target tolerance")
        sp.add_argument("--sides", help="window sides, '1..12' or '2,4,8'")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "csv", "text"))
        sp.add_argument("--bits", action="store_true", help="report log base 2")
        if name == "lindward":
            sp.add_argument("--matrix", required=True, help="file: n, then n rows of rationals")
        if name == "approx":
            sp.add_argument("--kind", choices=KINDS, default="padic_det")
            sp.add_argument("--absolute", action="store_true",
                            help="use log|det|_p as an absolute value (negated valuation)")
        if name == "rank":
            sp.add_argument("--generators", type=int, default=1)
            sp.add_argument("--relation", action="append", default=[],
                            help="one relation row, entries separated by commas")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        poly=ns.poly,
        matrix=getattr(ns, "matrix", None),
        dim=ns.dim,
        primes=parse_primes(ns.primes),
        grid=ns.grid,
        tol=ns.tol,
        sides=parse_sides(ns.sides) if ns.sides else None,
        seed=ns.seed,
        format=ns.format,
        kind=getattr(ns, "kind", "padic_det"),
        bits=ns.bits,
        absolute=getattr(ns, "absolute", False),
        generators=getattr(ns, "generators", 1),
        relations=getattr(ns, "relation", []),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
