"""Command-line driver.

Subcommands:
  verify    run a named identity suite; exit 1 on any violation
  figure    reproduce one of the three reference experiments (CSV + JSON)
  moments   empirical vs limit moments over a range of moduli
  expsum    Kloosterman / twisted / Salie sums with Weil bounds
  equidist  Weyl equidistribution statistic over t

Outputs are deterministic byte-for-byte for a fixed configuration: all
metadata is the config echo itself (no timestamps), floats are written
with shortest round-trip repr, and row order is canonical.

Exit codes: 0 success, 1 verification failure, 2 usage/domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import arith
from .errors import BadInterval, BadModulus, EmptyInput, EvenModulus, IndicatorKind, NotCoprime
from .expsums import expsum_report, weyl_statistic
from .distlab import (
    DomainWindow,
    empirical_batch,
    empirical_moment,
    histogram,
    ks_distance,
    sample_limit_law,
)
from .gauss_sums import G_FULL, G_MINUS, G_PLUS
from .verify import SUITES, run_suite
from .weights import (
    WeightFunction,
    as_fourier_series,
    constant_weight,
    fourier_weight,
    interval_indicator,
)

USAGE_ERROR = 2

FIGURES = {
    # which: (q, variant, series truncation, limit samples, center)
    "fig1": (5012, G_PLUS, 4000, 300_000, "tq"),
    "fig2": (5013, G_FULL, 4000, 300_000, "tq"),
    "fig3": (5014, G_MINUS, 5000, 500_000, "none"),
}


class CommandError(Exception):
    """Domain-level usage error; maps to exit code 2."""


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path: Path, meta: dict, header: list[str], rows) -> None:
    lines = [f"# {k}={v}" for k, v in meta.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj: dict) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _emit_table(args, meta: dict, header: list[str], rows) -> None:
    """Write rows as CSV or JSON to --out, or print CSV to stdout."""
    if getattr(args, "format", "csv") == "json":
        obj = dict(meta)
        obj["rows"] = [dict(zip(header, row)) for row in rows]
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            print(text, end="")
        return
    if args.out:
        _write_csv(Path(args.out), meta, header, rows)
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row))


def _parse_weight(spec: str, cutoff: int) -> WeightFunction:
    if spec == "const":
        return constant_weight()
    if spec.startswith("interval:"):
        try:
            a_str, b_str = spec[len("interval:"):].split(",")
            return interval_indicator(float(a_str), float(b_str), cutoff)
        except (ValueError, BadInterval) as exc:
            raise CommandError(f"bad interval weight {spec!r}: {exc}") from exc
    if spec.startswith("fourier:"):
        path = Path(spec[len("fourier:"):])
        if not path.exists():
            raise CommandError(f"coefficient file not found: {path}")
        coeffs: dict[int, complex] = {}
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#") or line.lower().startswith("k,"):
                continue
            try:
                k_str, re_str, im_str = line.split(",")
                coeffs[int(k_str)] = complex(float(re_str), float(im_str))
            except ValueError as exc:
                raise CommandError(f"bad coefficient row {line!r} in {path}") from exc
        if not coeffs:
            raise CommandError(f"no coefficients in {path}")
        return fourier_weight(coeffs)
    raise CommandError(f"unknown weight spec {spec!r} (const | interval:a,b | fourier:PATH)")


def _parse_domain(spec: str) -> DomainWindow:
    if spec == "full":
        return DomainWindow.full()
    if spec.startswith("interval:"):
        try:
            a_str, b_str = spec[len("interval:"):].split(",")
            return DomainWindow.interval(float(a_str), float(b_str))
        except ValueError as exc:
            raise CommandError(f"bad domain spec {spec!r}: {exc}") from exc
    raise CommandError(f"unknown domain spec {spec!r} (full | interval:a,b)")


def _parse_range(spec: str) -> tuple[int, int]:
    try:
        a_str, b_str = spec.split("..")
        a, b = int(a_str), int(b_str)
    except ValueError as exc:
        raise CommandError(f"bad range {spec!r}, expected A..B") from exc
    if a < 1 or b < a:
        raise CommandError(f"bad range {spec!r}")
    return a, b


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    result = run_suite(args.suite)
    print(result.summary())
    if result.failures:
        print("violations:")
        for line in result.failures[:50]:
            print(f"  {line}")
        if len(result.failures) > 50:
            print(f"  ... and {len(result.failures) - 50} more")
        return 1
    return 0


def cmd_figure(args) -> int:
    which = args.which
    q, variant, trunc_default, samples_default, center_default = FIGURES[which]
    trunc = args.trunc or trunc_default
    # the even-index series at truncation K reads coefficients up to 2K
    coeff_cutoff = 2 * trunc if variant == G_PLUS else trunc
    n_samples = args.samples or samples_default
    center = args.center or center_default
    bins = args.bins
    b = 1.0 / math.sqrt(7.0)

    weight = interval_indicator(0.0, b, coeff_cutoff)
    batch = empirical_batch(q, weight, fast=args.fast)
    values = batch.values
    t_over_q = batch.grid_mass / q

    series = as_fourier_series(weight)
    limit = sample_limit_law(variant, series, trunc, n_samples, args.seed)

    if center == "tq":
        shift = t_over_q
    elif center == "phihat0":
        shift = weight.mean.real
    else:
        shift = 0.0

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = {
        "command": f"figure {which}",
        "q": q,
        "weight": f"interval:0,{b!r}",
        "variant": variant,
        "trunc": trunc,
        "coefficient_cutoff": coeff_cutoff,
        "samples": n_samples,
        "seed": args.seed,
        "bins": bins,
        "center": center,
        "method": "fast" if args.fast else "direct",
    }

    sample_rows = [(p, sc.label(), float(v.real), float(v.imag)) for p, sc, v in batch.samples]
    _write_csv(out_dir / f"{which}_samples.csv", meta, ["p", "sigma", "re", "im"], sample_rows)

    def hist_rows(vals):
        h = histogram(vals, bins=bins)
        return [(float(h.bin_edges[i]), float(h.bin_edges[i + 1]), int(h.counts[i]), float(h.density[i]))
                for i in range(len(h.counts))]

    re_rows = hist_rows(values.real - shift)
    im_rows = hist_rows(values.imag)
    _write_csv(out_dir / f"{which}_hist_re.csv", meta, ["bin_lo", "bin_hi", "count", "density"], re_rows)
    _write_csv(out_dir / f"{which}_hist_im.csv", meta, ["bin_lo", "bin_hi", "count", "density"], im_rows)

    if variant == G_MINUS:
        # real and imaginary parts share one law; one component suffices
        limit_rows = [(float(v),) for v in limit.imag.tolist()]
        _write_csv(out_dir / f"{which}_limit.csv", meta, ["im"], limit_rows)
        ks_re = ks_distance(values.real, limit.imag)
        ks_im = ks_distance(values.imag, limit.imag)
    else:
        limit_rows = list(zip(limit.real.tolist(), limit.imag.tolist()))
        _write_csv(out_dir / f"{which}_limit.csv", meta, ["re", "im"], limit_rows)
        ks_re = ks_distance(values.real, limit.real)
        ks_im = ks_distance(values.imag, limit.imag)

    summary = dict(meta)
    summary.update({
        "normalization": batch.normalization,
        "total_samples": len(batch.samples),
        "phi_q": batch.modulus.phi,
        "grid_mass": batch.grid_mass,
        "t_over_q": t_over_q,
        "mean_bin_count": len(batch.samples) / bins,
        "ks_re": ks_re,
        "ks_im": ks_im,
    })
    _write_json(out_dir / f"{which}_summary.json", summary)
    print(f"{which}: {len(batch.samples)} samples, KS re={ks_re:.4f} im={ks_im:.4f} -> {out_dir}")
    return 0


def cmd_moments(args) -> int:
    if (args.q is None) == (args.q_range is None):
        raise CommandError("need exactly one of --q or --q-range")
    if args.q is not None:
        qs = [args.q]
    else:
        lo, hi = _parse_range(args.q_range)
        qs = list(range(lo, hi + 1))
    weight = _parse_weight(args.weight, args.trunc)
    window = _parse_domain(args.domain)
    try:
        k_list = [float(k) for k in args.k_list.split(",")]
    except ValueError as exc:
        raise CommandError(f"bad k list {args.k_list!r}") from exc
    meta = {
        "command": "moments",
        "weight": args.weight,
        "domain": args.domain,
        "trunc": args.trunc,
        "k_list": args.k_list,
        "method": "fast" if args.fast else "direct",
    }
    rows = []
    for q in qs:
        if q < 3:
            continue
        for k in k_list:
            rep = empirical_moment(q, weight, window, k, fast=args.fast)
            rows.append((q, float(k), float(rep.empirical), float(rep.limit), float(rep.relative_gap)))
    _emit_table(args, meta, ["q", "k", "empirical", "limit", "gap"], rows)
    return 0


def cmd_expsum(args) -> int:
    if (args.q is None) == (args.sweep_q is None):
        raise CommandError("need exactly one of --q or --sweep-q")
    sweep = args.q is None
    if sweep:
        lo, hi = _parse_range(args.sweep_q)
        qs = list(range(lo, hi + 1))
    else:
        qs = [args.q]
    rows = []
    for q in qs:
        if args.kind == "twisted" and q % 4 != 0:
            if sweep:
                continue
            raise BadModulus(f"twisted sum needs q = 0 mod 4, got {q}")
        if args.kind == "salie" and q % 2 == 0:
            if sweep:
                continue
            raise BadModulus(f"Salie sum needs odd q, got {q}")
        rep = expsum_report(args.kind, args.m, args.n, q)
        rows.append((q, args.m, args.n, float(rep.value.real), float(rep.value.imag),
                     float(abs(rep.value)), float(rep.weil_bound), float(rep.ratio)))
    meta = {"command": "expsum", "kind": args.kind, "m": args.m, "n": args.n}
    _emit_table(args, meta, ["q", "m", "n", "re", "im", "abs", "weil_bound", "ratio"], rows)
    return 0


def cmd_equidist(args) -> int:
    q = args.q
    mod = arith.analyze_modulus(q)
    if args.t == "all":
        ts = arith.units(q).tolist()
    elif args.t.startswith("random:"):
        count = int(args.t.split(":", 1)[1])
        rng = np.random.default_rng(args.seed)
        pool = arith.units(q)
        count = min(count, len(pool))
        ts = sorted(int(t) for t in rng.choice(pool, count, replace=False))
    else:
        try:
            ts = [int(args.t)]
        except ValueError as exc:
            raise CommandError(f"bad --t value {args.t!r} (all | random:N | integer)") from exc
    rows = []
    max_abs = 0.0
    for t in ts:
        val = weyl_statistic(mod, t, args.m, args.n)
        max_abs = max(max_abs, abs(val))
        rows.append((q, t, args.m, args.n, float(val.real), float(val.imag), float(abs(val))))
    meta = {"command": "equidist", "q": q, "m": args.m, "n": args.n, "t": args.t, "seed": args.seed}
    _emit_table(args, meta, ["q", "t", "m", "n", "re", "im", "abs"], rows)
    print(f"max |statistic| = {max_abs!r}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gausslab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="reproduce a reference experiment")
    p.add_argument("which", choices=sorted(FIGURES))
    p.add_argument("--out-dir", default="out")
    p.add_argument("--trunc", type=int, default=None, help="series truncation index")
    p.add_argument("--samples", type=int, default=None, help="limit-law sample count")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--center", choices=["tq", "phihat0", "none"], default=None)
    meth = p.add_mutually_exclusive_group()
    meth.add_argument("--fast", action="store_true")
    meth.add_argument("--direct", action="store_true")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("moments", help="empirical vs limit moments")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--q-range", default=None, help="A..B inclusive")
    p.add_argument("--weight", default="const")
    p.add_argument("--domain", default="full")
    p.add_argument("--k-list", default="0,2")
    p.add_argument("--trunc", type=int, default=4000)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    meth = p.add_mutually_exclusive_group()
    meth.add_argument("--fast", action="store_true")
    meth.add_argument("--direct", action="store_true")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("expsum", help="exponential sums with Weil bounds")
    p.add_argument("--kind", choices=["kloosterman", "twisted", "salie"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--sweep-q", default=None, help="A..B inclusive")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("equidist", help="Weyl equidistribution statistic")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", default="all", help="all | random:N | integer")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_equidist)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (CommandError, BadModulus, BadInterval, NotCoprime, EvenModulus,
            IndicatorKind, EmptyInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
