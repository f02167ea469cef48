"""Command-line front end: ``mapenum <subcommand> [options]``.

Subcommands: counts, curve, series, asymptotics, oracle, verify.
Exit codes: 0 success, 1 verification failure, 2 usage error.

Outputs are deterministic; rationals are written as ``p/q``.  Results of
``counts``, ``series`` and ``oracle`` are cached under ``$MAPENUM_CACHE``
(default ``~/.cache/mapenum``), keyed by a hash of the package version and
the output-relevant options; cache files are written atomically.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__

CACHE_ENV = "MAPENUM_CACHE"
DEFAULT_CACHE = Path("~/.cache/mapenum")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def cache_dir(override: str | None = None) -> Path:
    raw = override or os.environ.get(CACHE_ENV) or str(DEFAULT_CACHE)
    return Path(raw).expanduser()


def cache_key(fields: dict) -> str:
    doc = json.dumps({"version": __version__, **fields}, sort_keys=True, default=str)
    return hashlib.sha256(doc.encode()).hexdigest()[:32]


def atomic_write(path: Path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cached(args, fields: dict, produce) -> str:
    if getattr(args, "no_cache", False):
        return produce()
    d = cache_dir(getattr(args, "cache_dir", None))
    path = d / f"{fields.get('cmd', 'out')}-{cache_key(fields)}.txt"
    if path.exists():
        return path.read_text(encoding="utf-8")
    text = produce()
    atomic_write(path, text)
    return text


def emit(args, text: str) -> None:
    if getattr(args, "output", None):
        atomic_write(Path(args.output), text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# config file: key = value lines; flags given on the command line win
# ---------------------------------------------------------------------------

def read_config(path: str) -> dict:
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{no}: expected key = value")
        k, v = (p.strip() for p in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _config_path(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _convert(act: argparse.Action, key: str, raw: str):
    try:
        if isinstance(act, argparse._StoreTrueAction):  # noqa: SLF001
            if raw.lower() not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise ValueError(raw)
            return raw.lower() in ("1", "true", "yes", "on")
        conv = act.type or str
        if act.nargs in ("+", "*") or (isinstance(act.nargs, int) and act.nargs > 1):
            val = [conv(x) for x in raw.split()]
            if isinstance(act.nargs, int) and len(val) != act.nargs:
                raise ValueError(raw)
            return val
        val = conv(raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value for {key}: {raw!r}") from exc
    if act.choices and val not in act.choices:
        raise UsageError(f"bad value for {key}: {raw!r}")
    return val


def apply_config(parser: argparse.ArgumentParser, argv) -> None:
    """Install config-file values as subcommand defaults (so explicit flags win)."""
    path = _config_path(argv)
    if path is None:
        return
    cmd = next((a for a in argv if not a.startswith("-")), None)
    choices = parser._subparsers._group_actions[0].choices  # noqa: SLF001
    if cmd not in choices:
        return
    sub = choices[cmd]
    actions = {a.dest: a for a in sub._actions}  # noqa: SLF001
    values = {}
    for key, raw in read_config(path).items():
        act = actions.get(key)
        if act is None or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r} for {cmd}")
        values[key] = _convert(act, key, raw)
        act.required = False
    sub.set_defaults(**values)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_counts(args) -> int:
    from . import counts as C

    j, g, maxv = args.valence, args.genus, args.max_vertices
    modes = {"closed", "residue", "oracle"} if args.modes == "all" else {args.modes}
    if maxv < 1:
        raise UsageError("--max-vertices must be positive")

    def produce() -> str:
        table = C.CountTable()
        odd = j % 2 == 1
        mmax = maxv // 2 if odd else maxv
        if mmax < 1:
            raise UsageError("no admissible vertex counts below --max-vertices")
        if "closed" in modes:
            rows = C.kappa_closed(j, g, mmax)
            table.extend([C.CountRow(r.valence, r.genus, r.vertices, r.value, r.mode,
                                     f"{r.note}; table={_r(r.table_value())}") for r in rows])
        if "residue" in modes and odd and (g in (0, 1) or (g == 2 and j == 3)):
            rows = C.residue_rows(j, g, mmax)
            table.extend([C.CountRow(r.valence, r.genus, r.vertices, r.value, r.mode,
                                     f"{r.note}; table={_r(r.table_value())}") for r in rows])
        if "oracle" in modes:
            for n in range(1, maxv + 1):
                if (j * n) % 2 or j * n > args.oracle_max_darts:
                    continue
                t = C.oracle_counts(j, n, processes=args.processes)
                rows = [r for r in C.oracle_rows(t) if r.genus == g]
                if not rows:
                    rows = [C.CountRow(j, g, n, Fraction(0), "oracle", "connected labelled gluings")]
                table.extend(rows)
        return table.to_json() if args.format == "json" else table.to_csv()

    if args.format == "svg":
        raise UsageError("counts supports csv or json")
    fields = {"cmd": "counts", "j": j, "g": g, "maxv": maxv, "modes": sorted(modes),
              "fmt": args.format, "oracle_max_darts": args.oracle_max_darts}
    emit(args, cached(args, fields, produce))
    return EXIT_OK


def _r(x) -> str:
    from .exact import rat_str
    return rat_str(x)


def cmd_curve(args) -> int:
    import mpmath

    from .curve import branch_points, build_curve, curve_csv, curve_svg, sample_curve
    from .exact import sturm_isolate

    j = args.valence
    if j % 2 == 0:
        raise UsageError("curve plots are defined for odd valence")
    model = build_curve(j)
    lo, hi = Fraction(args.y_range[0]), Fraction(args.y_range[1])
    samples = sample_curve(model, lo, hi, args.samples)
    marks = []
    if hi > lo:
        flo, fhi = mpmath.mpf(lo.numerator) / lo.denominator, mpmath.mpf(hi.numerator) / hi.denominator
        for tp, label in zip(branch_points(model, args.precision), ("turning point", "turning point (left)")):
            yv = tp.y0.value(args.precision)
            if flo <= yv <= fhi:
                marks.append((tp.xi2, yv, label))
        for r in sturm_isolate(model.Shat, lo, hi):
            marks.append((0, r.value(args.precision), "Shat = 0"))
    if args.format == "csv":
        text = curve_csv(samples, args.digits)
    elif args.format == "svg":
        text = curve_svg(samples, marks)
    else:
        raise UsageError("curve supports csv or svg")
    emit(args, text)
    return EXIT_OK


SERIES_NAMES = ("y0", "z0", "u0", "e0", "e1", "e1-table", "e2", "f1", "h1", "h2")


def cmd_series(args) -> int:
    from . import genfun as G

    j, M, name = args.valence, args.order, args.name
    if M < 2:
        raise UsageError("--order must be at least 2")

    def produce() -> str:
        ctx = G.build_series_context(j, M)
        odd = j % 2 == 1
        if name == "y0":
            if not odd:
                raise UsageError("y0 is defined for odd valence")
            s = ctx.y0_of_xi2
        elif name == "z0":
            s = ctx.z0_of_xi2 if odd else ctx.z0_xi
        elif name == "u0":
            s = ctx.u0_xi
        elif name == "e0":
            s = ctx.e0()
        elif name == "e1":
            s = ctx.e1("full")
        elif name == "e1-table":
            if not odd:
                raise UsageError("e1-table is defined for odd valence")
            s = ctx.e1("table")
        elif name == "e2":
            if j != 3:
                raise UsageError("e2 is available for valence 3")
            s = ctx.e2()
        elif name == "f1":
            s = G.f1_series(ctx)
        elif name == "h1":
            s = G.h1_series(ctx)
        else:
            s = G.h2_series(ctx, "derived")
        meta = {"valence": j, "truncation": M}
        if args.format == "json":
            return G.series_json(s, name, meta)
        lines = ["power,coeff_num,coeff_den,coeff"]
        for k, c in enumerate(s.coeffs):
            c = Fraction(c)
            lines.append(f"{k},{c.numerator},{c.denominator},{_r(c)}")
        return "\n".join(lines) + "\n"

    if args.format == "svg":
        raise UsageError("series supports csv or json")
    fields = {"cmd": "series", "j": j, "M": M, "name": name, "fmt": args.format}
    emit(args, cached(args, fields, produce))
    return EXIT_OK


def cmd_asymptotics(args) -> int:
    import mpmath

    from . import asymptotics as A

    j, bits = args.valence, args.precision
    if j % 2 == 0:
        raise UsageError("asymptotics are defined for odd valence")
    cd = A.critical_data(j, bits)
    tag = f"float precision={bits}"
    if args.what == "critical":
        lines = ["quantity,value,precision"] + [f"{k},{v},{tag}" for k, v in cd.rows()]
        text = "\n".join(lines) + "\n"
    elif args.what == "zeta":
        z = A.zeta_recurrence(cd, args.gmax)
        lines = ["genus,zeta,precision"] + [f"{g},{mpmath.nstr(v, 20)},{tag}" for g, v in enumerate(z, 1)]
        text = "\n".join(lines) + "\n"
    else:
        table = A.asymptotic_vs_exact(j, args.genus, args.kind, range(args.mmin, args.mmax + 1), bits, cd)
        text = table.csv(bits)
    if args.format == "json":
        import csv
        import io
        rows = list(csv.DictReader(io.StringIO(text)))
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "svg":
        raise UsageError("asymptotics supports csv or json")
    emit(args, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from . import counts as C

    def produce() -> str:
        t = C.oracle_counts(args.valence, args.vertices, legs=args.legs, processes=args.processes,
                            seed=args.seed)
        doc = {"valence": t.j, "vertices": t.n_vertices, "legs": t.legs, "total": t.total,
               "connected_by_genus": t.connected_by_genus, "disconnected": t.disconnected,
               "euler_all": {str(k): v for k, v in t.euler_all.items()},
               "euler_connected": {str(k): v for k, v in t.euler_connected.items()}}
        if args.format == "json":
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        lines = ["valence,vertices,legs,genus,connected"]
        for g, c in enumerate(t.connected_by_genus):
            lines.append(f"{t.j},{t.n_vertices},{t.legs},{g},{c}")
        lines.append(f"{t.j},{t.n_vertices},{t.legs},disconnected,{t.disconnected}")
        lines.append(f"{t.j},{t.n_vertices},{t.legs},total,{t.total}")
        return "\n".join(lines) + "\n"

    if args.format == "svg":
        raise UsageError("oracle supports csv or json")
    fields = {"cmd": "oracle", "j": args.valence, "n": args.vertices, "legs": args.legs,
              "seed": args.seed, "fmt": args.format}
    emit(args, cached(args, fields, produce))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    out = sys.stdout
    all_ok = True
    first_fail = None
    for name in names:
        for rep in run_suite(name, args):
            out.write(rep.line() + "\n")
            text = rep.details.get("report") if isinstance(rep.details, dict) else None
            if text:
                out.write(text)
            if not rep.passed:
                all_ok = False
                first_fail = first_fail or rep
        out.flush()
    if not all_ok:
        out.write(f"first failure: {first_fail.name}: {'; '.join(first_fail.failures[:3])}\n")
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    p = argparse.ArgumentParser(prog="mapenum", description="Exact map enumeration on the spectral curve.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, formats=("csv", "json"), default="csv", cache=False):
        sp.add_argument("--format", choices=("csv", "json", "svg"), default=default,
                        help=f"output format ({', '.join(formats)})")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--config", help="key = value file; command-line flags take precedence")
        if cache:
            sp.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or {DEFAULT_CACHE})")
            sp.add_argument("--no-cache", action="store_true", help="bypass the cache")

    sp = sub.add_parser("counts", help="map-count tables")
    sp.add_argument("--valence", "-j", type=int, required=True)
    sp.add_argument("--genus", "-g", type=int, default=0)
    sp.add_argument("--max-vertices", type=int, default=10)
    sp.add_argument("--modes", choices=("closed", "residue", "oracle", "all"), default="closed")
    sp.add_argument("--oracle-max-darts", type=int, default=12,
                    help="largest dart count enumerated by the oracle (<= 24)")
    sp.add_argument("--processes", type=int, default=1)
    common(sp, cache=True)
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("curve", help="spectral curve samples and plot")
    sp.add_argument("--valence", "-j", type=int, required=True)
    sp.add_argument("--y-range", nargs=2, default=("0", "6"), metavar=("LO", "HI"))
    sp.add_argument("--samples", type=int, default=241)
    sp.add_argument("--digits", type=int, default=12)
    sp.add_argument("--precision", type=int, default=64, help="bits for marked points")
    common(sp, default="svg")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("series", help="exact generating-function series")
    sp.add_argument("--valence", "-j", type=int, required=True)
    sp.add_argument("--name", choices=SERIES_NAMES, default="e0")
    sp.add_argument("--order", "-M", type=int, default=6,
                    help="truncation: xi2^M (odd valence) or xi^(2M) (even valence)")
    common(sp, default="json", cache=True)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("asymptotics", help="critical data, zeta recurrence, ratio tables")
    sp.add_argument("--valence", "-j", type=int, default=3)
    sp.add_argument("--what", choices=("critical", "zeta", "ratios"), default="critical")
    sp.add_argument("--genus", "-g", type=int, default=0)
    sp.add_argument("--kind", choices=("twolegged", "eg"), default="twolegged")
    sp.add_argument("--mmin", type=int, default=2)
    sp.add_argument("--mmax", type=int, default=12)
    sp.add_argument("--gmax", type=int, default=6)
    sp.add_argument("--precision", type=int, default=64, help="working precision in bits")
    common(sp)
    sp.set_defaults(func=cmd_asymptotics)

    sp = sub.add_parser("oracle", help="brute-force dart matching tallies")
    sp.add_argument("--valence", "-j", type=int, required=True)
    sp.add_argument("--vertices", "-n", type=int, required=True)
    sp.add_argument("--legs", type=int, default=0)
    sp.add_argument("--seed", type=int, default=None, help="randomize rotation order (tallies unchanged)")
    sp.add_argument("--processes", type=int, default=1)
    common(sp, default="json", cache=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="run identity and oracle suites")
    sp.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    sp.add_argument("--valence", "-j", type=int, default=None, help="restrict valence-indexed suites")
    sp.add_argument("--processes", type=int, default=1)
    sp.add_argument("--deep", action="store_true", help="include the 18-dart oracle run (minutes)")
    sp.add_argument("--config", help="key = value file")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        apply_config(parser, argv)
    except UsageError as exc:
        sys.stderr.write(f"mapenum: {exc}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"mapenum {args.cmd}: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"mapenum {args.cmd}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
