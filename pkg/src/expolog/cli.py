"""Command line surface over the enumeration, statistics, special
function, ratio, and sampling modules.

Exit codes: 0 success, 2 usage or validation error, 3 tolerance not
met.  All formatting is locale independent with fixed precision, so an
identical invocation prints identical bytes.  Default precision is 17
significant digits; --reproduce switches ratio output to the precision
of the published tables.
"""

import argparse
import json
import sys
from fractions import Fraction

from .cache import CacheError, cached_table, store_sequence
from .enumeration import Kind, parse_kind
from .families import connected_count, family_spec, parse_family, total_count
from .floatrows import ToleranceError, largest_row_float, smallest_row_float
from .ratios import _RATIO_OPS, table_sweep
from .sampler import monte_carlo_stats
from .specfun import (
    ToleranceNotMet,
    buchstab_Omega,
    constant,
    constants,
    dickman_rho,
    exp_integral_E,
    moment_largest,
    moment_smallest,
    omega_family,
    omega_function,
    rho_function,
)
from .stats import exact_row, row_stats

_SWEEP_M = (100, 200, 300, 400, 500, 600, 700, 800)
_SWEEP_X = (2.0, 3.0, 4.0, 5.0)
_EXACT_STATS_LIMIT = 1500


def _g17(v):
    return format(float(v), ".17g")


def _parse_a(text):
    a = Fraction(text)
    if a <= 0:
        raise ValueError("a must be positive")
    return a


def cmd_counts(args):
    fid = parse_family(args.family)
    fn = connected_count if args.connected else total_count
    if args.upto is not None:
        start = 1 if args.connected else 0
        print("n,value")
        for n in range(start, args.upto + 1):
            print(f"{n},{fn(fid, n)}")
    else:
        print(fn(fid, args.n))
    if args.write_cache:
        store_sequence(fid, "c" if args.connected else "b",
                       args.upto if args.upto is not None else args.n)
    return 0


def cmd_table(args):
    fid = parse_family(args.family)
    kind = parse_kind(args.kind)
    if args.float:
        if args.write_cache:
            raise ValueError("--write-cache applies to the exact backend only")
        row_fn = largest_row_float if kind is Kind.LARGEST else smallest_row_float
        dist = row_fn(fid, args.n)
        if args.format == "json":
            print(json.dumps({
                "family": fid.value, "kind": kind.value, "n": args.n,
                "probabilities": [float(p) for p in dist.probs],
                "err_bound": float(dist.err_bound),
            }))
        else:
            print("k,probability")
            for k, p in enumerate(dist.probs):
                print(f"{k},{_g17(p)}")
        return 0
    table = cached_table(fid, kind, args.n, write=args.write_cache)
    cells = table.row(args.n)
    if args.format == "json":
        print(json.dumps({"family": fid.value, "kind": kind.value,
                          "n": args.n, "counts": [int(v) for v in cells]}))
    else:
        print("k,count")
        for k, v in enumerate(cells):
            print(f"{k},{v}")
    return 0


def cmd_stats(args):
    fid = parse_family(args.family)
    backend = args.backend
    if backend == "auto":
        backend = "exact" if args.n <= _EXACT_STATS_LIMIT else "float"
    out = {}
    for kind in (Kind.LARGEST, Kind.SMALLEST):
        if backend == "exact":
            row = exact_row(cached_table(fid, kind, args.n), args.n)
        elif kind is Kind.LARGEST:
            row = largest_row_float(fid, args.n)
        else:
            row = smallest_row_float(fid, args.n)
        out[kind] = row_stats(row)
    ls, ss = out[Kind.LARGEST], out[Kind.SMALLEST]
    print("Lmu_tilde,Lsigma2_tilde,Lnu_tilde,Smu_tilde,Ssigma2_tilde")
    print(f"{ls.normalized_mean:.6f},{ls.normalized_variance:.6f},"
          f"{ls.normalized_median:.4f},{ss.normalized_mean:.6f},"
          f"{ss.normalized_variance:.6f}")
    return 0


def cmd_specfun_rho(args):
    a = _parse_a(args.a)
    v = dickman_rho(a, args.x, tol=args.tol)
    print(f"{_g17(v)} (err <= {rho_function(a).accuracy_at(args.x):.3g})")
    return 0


def cmd_specfun_omega(args):
    if (args.family is None) == (args.a is None):
        raise ValueError("give exactly one of --a or --family")
    if args.family is not None:
        spec = family_spec(args.family)
        v = omega_family(spec.id, args.x)
        scale = v / buchstab_Omega(spec.a, args.x)
        err = omega_function(spec.a).accuracy_at(args.x) * abs(scale)
    else:
        a = _parse_a(args.a)
        v = buchstab_Omega(a, args.x, tol=args.tol)
        err = omega_function(a).accuracy_at(args.x)
    print(f"{_g17(v)} (err <= {err:.3g})")
    return 0


def cmd_specfun_E(args):
    # implementation contract: relative error below 1e-14 everywhere
    print(f"{_g17(exp_integral_E(args.x))} (rel err <= 1e-14)")
    return 0


def cmd_specfun_moment(args):
    if (args.family is None) == (args.a is None):
        raise ValueError("give exactly one of --a or --family")
    a = family_spec(args.family).a if args.family else _parse_a(args.a)
    fn = moment_largest if args.side == "largest" else moment_smallest
    res = fn(a, args.r, args.h, tol=args.tol)
    print(f"{_g17(res.value)} (err <= {res.abs_err:.3g})")
    return 0


def cmd_specfun_constant(args):
    if args.name is None:
        for name, entry in sorted(constants().items()):
            print(f"{name} = {_g17(entry.value)}  [{entry.definition}]")
        return 0
    entry = constant(args.name)
    print(f"{_g17(entry.value)}  [{entry.definition}]")
    return 0


def _ratio_fmt(table_id, x, reproduce):
    if not reproduce:
        return _g17
    if table_id in (5, 8):
        return lambda v: format(float(v), ".6g")
    if table_id == 7:
        return lambda v: format(float(v), ".5f")
    # published connectedness tables carry only 3 decimals in the x=2 column
    return lambda v: format(float(v), ".3f" if x == 2.0 else ".6f")


def cmd_ratio(args):
    if args.sweep:
        m_list = (args.m,) if args.m is not None else _SWEEP_M
        x_list = (args.x,) if args.x is not None else _SWEEP_X
        sweep = table_sweep(args.table, args.family, m_list, x_list)
        print("m," + ",".join(f"x={x:g}" for x in sweep.x_list))
        for i, m in enumerate(sweep.m_list):
            fmts = [_ratio_fmt(args.table, x, args.reproduce) for x in sweep.x_list]
            print(f"{m}," + ",".join(
                f(c.finite_value) for f, c in zip(fmts, sweep.cells[i])))
        fmts = [_ratio_fmt(args.table, x, args.reproduce) for x in sweep.x_list]
        print("inf," + ",".join(f(v) for f, v in zip(fmts, sweep.infinity_row)))
        return 0
    if args.m is None or args.x is None:
        raise ValueError("need --m and --x (or --sweep)")
    rep = _RATIO_OPS[args.table](args.family, args.m, args.x)
    fmt = _ratio_fmt(args.table, args.x, args.reproduce)
    print("m,x,n,finite,limit,gap")
    print(f"{rep.m},{rep.x:g},{rep.n},{fmt(rep.finite_value)},"
          f"{fmt(rep.limit_value)},{rep.gap:.3g}")
    return 0


def cmd_sample(args):
    rep = monte_carlo_stats(args.family, args.n, args.trials, args.seed)
    print("stat,largest,smallest")
    for stat in ("mean", "variance", "median", "se"):
        print(f"{stat},{_g17(getattr(rep.largest, stat))},"
              f"{_g17(getattr(rep.smallest, stat))}")
    return 0


def _build_parser():
    top = argparse.ArgumentParser(
        prog="expolog",
        description="exact component-size enumeration and limit functions")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", help="b_n or c_n")
    p.add_argument("--family", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--upto", type=int)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--write-cache", action="store_true")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("table", help="one exact or float row")
    p.add_argument("--family", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--float", action="store_true")
    p.add_argument("--write-cache", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("stats", help="published-table statistics row")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--backend", choices=("auto", "exact", "float"),
                   default="auto")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("specfun", help="special function values")
    ssub = p.add_subparsers(dest="what", required=True)

    q = ssub.add_parser("rho", help="Dickman-type smooth limit")
    q.add_argument("--a", required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--tol", type=float, default=1e-13)
    q.set_defaults(func=cmd_specfun_rho)

    q = ssub.add_parser("omega", help="Buchstab-type rough limit")
    q.add_argument("--a")
    q.add_argument("--family")
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--tol", type=float, default=1e-12)
    q.set_defaults(func=cmd_specfun_omega)

    q = ssub.add_parser("E", help="exponential integral E(x)")
    q.add_argument("--x", type=float, required=True)
    q.set_defaults(func=cmd_specfun_E)

    q = ssub.add_parser("moment", help="limit moment integral")
    q.add_argument("--side", choices=("largest", "smallest"), required=True)
    q.add_argument("--a")
    q.add_argument("--family")
    q.add_argument("--r", type=int, default=1)
    q.add_argument("--h", type=float, default=1.0)
    q.add_argument("--tol", type=float, default=1e-12)
    q.set_defaults(func=cmd_specfun_moment)

    q = ssub.add_parser("constant", help="named limit constant")
    q.add_argument("name", nargs="?")
    q.set_defaults(func=cmd_specfun_constant)

    p = sub.add_parser("ratio", help="published convergence-table cells")
    p.add_argument("--table", type=int, choices=(5, 6, 7, 8), required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--reproduce", action="store_true")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("sample", help="Monte Carlo partition statistics")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    return top


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ToleranceError, ToleranceNotMet) as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, IndexError, KeyError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
