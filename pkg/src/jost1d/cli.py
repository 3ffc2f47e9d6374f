"""Command-line front end.

    jost1d amplitudes --potential cfg.json --kappa 0.5:5:10
    jost1d scan       --potential cfg.json --rect -2:2:-3:-0.1 [--oracle]
    jost1d compose    --potential composite.json --kappa 0.5:5:10
    jost1d compare    --potential cfg.json --kappa 1:10:10
    jost1d verify     [--seed N]

Exit codes: 0 success, 1 a verify check failed, 2 bad configuration,
3 numerical failure, 4 momentum outside the analyticity strip, 5 no
reference available.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import born, complexplane, oracles, semiclassical, solver, transfer
from .errors import ConfigError, JostError, NoReferenceError, TailLimitedError
from .potentials import CompositePotential, Potential, builtin, from_config
from .transfer import JostCoefficients

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_STRIP = 4
EXIT_NO_REFERENCE = 5

METHODS = ("solver", "born1", "born2", "volterra", "wkb")


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def parse_kappa_grid(text: str) -> list[complex]:
    """``start:stop:count`` (complex endpoints allowed) or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [complex(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, count = complex(parts[0]), complex(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad --kappa {text!r}; expected start:stop:count") from None
    if count < 1:
        raise ConfigError("kappa grid needs at least one point")
    if count == 1:
        return [start]
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def parse_rect(text: str) -> complexplane.Rectangle:
    try:
        re0, re1, im0, im1 = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"bad --rect {text!r}; expected re0:re1:im0:im1") from None
    return complexplane.Rectangle(re0, re1, im0, im1)


def load_potential(spec: str) -> Potential:
    """A JSON file path, inline JSON, or ``family:key=value,...``."""
    text = spec.strip()
    if text.startswith("{"):
        source = text
    elif Path(text).is_file():
        source = Path(text).read_text()
    elif ":" in text or text in ("zero",):
        family, _, rest = text.partition(":")
        params = {}
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            if not eq:
                raise ConfigError(f"bad parameter {item!r} in {spec!r}")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise ConfigError(f"parameter {key!r} is not a number") from None
        return builtin(family, params)
    else:
        raise ConfigError(f"potential {spec!r} is neither a file, JSON, nor family:params")
    try:
        cfg = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"potential config is not valid JSON: {exc}") from exc
    return from_config(cfg)


def _num(x: float) -> str:
    return f"{x:.17g}"


def _cplx(z: complex | None) -> tuple[float, float]:
    if z is None:
        return math.nan, math.nan
    return float(z.real), float(z.imag)


def _emit(
    rows: list[dict[str, Any]],
    fmt: str,
    out: str | None,
    meta: dict[str, Any] | None = None,
    header: Sequence[str] | None = None,
) -> None:
    if fmt == "json":
        payload = dict(meta or {})
        payload["rows"] = rows
        text = json.dumps(payload, indent=2, allow_nan=True) + "\n"
    else:
        buf = io.StringIO()
        columns = list(rows[0]) if rows else list(header or ())
        if columns:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_num(v) if isinstance(v, float) else v for v in row.values()])
        text = buf.getvalue()
    _write(text, out)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _map(func: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


# ---------------------------------------------------------------------------
# amplitude sources
# ---------------------------------------------------------------------------


def _solver_options(args) -> solver.SolverOptions:
    tol = getattr(args, "tol", None)
    if tol is None:
        return solver.DEFAULT_OPTIONS
    if not tol > 0:
        raise ConfigError("--tol must be positive")
    return solver.SolverOptions(ode_rel_tol=tol, ode_abs_tol=tol * 1e-3)


def _jost_source(p: Potential, use_oracle: bool, opts) -> Callable[[complex], JostCoefficients]:
    if use_oracle:
        orc = oracles.oracle_for(p)
        if orc is None:
            raise NoReferenceError("no closed form available for this potential (drop --oracle)")
        return orc
    return lambda k: solver.jost(p, k, opts, conjugates=True)


def _amplitude_row(k: complex, jc: JostCoefficients) -> dict[str, Any]:
    ap = transfer.to_amplitudes(jc)
    row = {}
    row["kappa_re"], row["kappa_im"] = _cplx(k)
    row["alpha_re"], row["alpha_im"] = _cplx(ap.alpha)
    row["beta_re"], row["beta_im"] = _cplx(ap.beta)
    row["a_re"], row["a_im"] = _cplx(jc.a)
    row["b_re"], row["b_im"] = _cplx(jc.b)
    if k.imag == 0 and k.real > 0:
        t, r = transfer.transmission_reflection(jc)
        row["T"], row["R"] = float(t), float(r)
        row["unitarity_defect"] = float(transfer.unitarity_defect(jc))
    else:
        row["T"] = row["R"] = row["unitarity_defect"] = math.nan
    return row


def _run_grid(kappas, func, jobs):
    """Evaluate func over the grid; collect failures instead of stopping at the first."""

    def guarded(k):
        try:
            return k, func(k), None
        except JostError as exc:
            return k, None, exc

    results = _map(guarded, kappas, jobs)
    failures = [(k, e) for k, _, e in results if e is not None]
    if failures:
        strip = [f for f in failures if isinstance(f[1], TailLimitedError)]
        for k, exc in failures:
            print(f"kappa={k}: {exc}", file=sys.stderr)
        raise (strip[0][1] if strip else failures[0][1])
    return [(k, v) for k, v, _ in results]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_amplitudes(args) -> int:
    p = load_potential(args.potential)
    kappas = parse_kappa_grid(args.kappa)
    source = _jost_source(p, args.oracle, _solver_options(args))
    results = _run_grid(kappas, source, args.jobs)
    rows = [_amplitude_row(k, jc) for k, jc in results]
    _emit(rows, args.format, args.out, {"command": "amplitudes"})
    return EXIT_OK


def cmd_scan(args) -> int:
    p = load_potential(args.potential)
    rect = parse_rect(args.rect)
    tol = args.tol if args.tol is not None else 1e-10
    poles: list = []
    if args.oracle:
        orc = oracles.oracle_for(p)
        if orc is None:
            raise NoReferenceError("no closed form available for this potential (drop --oracle)")
        lattice = oracles.a_pole_lattice(p, rect.im_min)
        if lattice is None:
            raise NoReferenceError("pole structure of the closed form is not tabulated for this potential")
        poles = lattice
        handle = lambda k: orc(k).a  # noqa: E731
    else:
        lower = p.alpha_strip_lower()
        if math.isfinite(lower) and rect.im_min <= lower:
            raise TailLimitedError(
                f"rectangle reaches Im kappa={rect.im_min:g}; a is analytic only for "
                f"Im kappa > {lower:g} (use --oracle for exactly solvable tails)",
                strip=(lower, math.inf),
            )
        handle = solver.jost_a(p, _solver_options(args))
    report = complexplane.find_zeros(handle, rect, max_depth=args.max_depth, tol=tol, poles=poles)
    payload = {
        "command": "scan",
        "rect": [rect.re_min, rect.re_max, rect.im_min, rect.im_max],
        "total_winding": report.total_winding,
        "zero_count": report.zero_count,
        "zeros": [
            {
                "re": z.location.real,
                "im": z.location.imag,
                "multiplicity": z.multiplicity,
                "residual": z.residual,
                "cluster": z.cluster,
            }
            for z in report.zeros
        ],
        "poles": [{"re": z.real, "im": z.imag, "order": m} for z, m in report.poles],
        "unresolved": [[c.re_min, c.re_max, c.im_min, c.im_max] for c in report.unresolved],
        "contour_samples_used": report.contour_samples_used,
    }
    if args.format == "csv":
        rows = [
            {"re": z["re"], "im": z["im"], "multiplicity": z["multiplicity"],
             "residual": z["residual"], "cluster": int(z["cluster"])}
            for z in payload["zeros"]
        ]
        _emit(rows, "csv", args.out, header=("re", "im", "multiplicity", "residual", "cluster"))
    else:
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_compose(args) -> int:
    p = load_potential(args.potential)
    if not isinstance(p, CompositePotential):
        raise ConfigError("compose needs a composite potential config")
    kappas = parse_kappa_grid(args.kappa)
    opts = _solver_options(args)
    part_sources = [(_jost_source(q, args.oracle, opts), 0.0) for q in p.placed]

    def one(k):
        composed = transfer.compose_many([(src(k), d) for src, d in part_sources])
        direct = solver.jost(p, k, opts)
        return composed, direct

    rows = []
    for k, (c, d) in _run_grid(kappas, one, args.jobs):
        row = {}
        row["kappa_re"], row["kappa_im"] = _cplx(k)
        row["a_re"], row["a_im"] = _cplx(c.a)
        row["b_re"], row["b_im"] = _cplx(c.b)
        row["direct_a_re"], row["direct_a_im"] = _cplx(d.a)
        row["direct_b_re"], row["direct_b_im"] = _cplx(d.b)
        row["max_abs_diff"] = float(max(abs(c.a - d.a), abs(c.b - d.b)))
        rows.append(row)
    _emit(rows, args.format, args.out, {"command": "compose"})
    return EXIT_OK


def _method_values(p: Potential, k: complex, method: str, opts) -> tuple[complex, complex]:
    if method == "solver":
        ap = solver.amplitudes(p, k, opts)
        return ap.alpha, ap.beta
    if method == "born1":
        ap = born.born_first_order(p, k)
        return ap.alpha, ap.beta
    if method == "born2":
        ap = born.born_second_order(p, k)
        return ap.alpha, ap.beta
    if method == "volterra":
        r = born.volterra_series(p, k)
        return r.alpha, r.beta
    if method == "wkb":
        jc = semiclassical.wkb_jost(semiclassical.wkb_theta(p, k))
        ap = transfer.to_amplitudes(jc)
        return ap.alpha, ap.beta
    raise ConfigError(f"unknown method {method!r}")


def cmd_compare(args) -> int:
    p = load_potential(args.potential)
    kappas = parse_kappa_grid(args.kappa)
    opts = _solver_options(args)
    methods = args.methods.split(",") if args.methods else list(METHODS)
    for m in methods:
        if m not in METHODS:
            raise ConfigError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    orc = oracles.oracle_for(p)
    reference = args.reference
    if reference == "auto":
        if orc is not None:
            reference = "oracle"
        elif p.is_finite_range:
            reference = "solver"
        else:
            raise NoReferenceError(
                "no closed form and no finite range: pass --reference solver to accept the solver"
            )
    if reference == "oracle" and orc is None:
        raise NoReferenceError("no closed form available for this potential")

    def ref_values(k):
        if reference == "oracle":
            ap = transfer.to_amplitudes(orc(k))
        else:
            ap = solver.amplitudes(p, k, opts)
        return ap.alpha, ap.beta

    def one(k):
        ra, rb = ref_values(k)
        row = {}
        row["kappa_re"], row["kappa_im"] = _cplx(k)
        for m in methods:
            try:
                ma, mb = _method_values(p, k, m, opts)
                row[f"{m}_alpha_err"] = float(abs(ma - ra))
                row[f"{m}_beta_err"] = float(abs(mb - rb))
            except JostError:
                # a method outside its domain (turning point, divergent series)
                row[f"{m}_alpha_err"] = row[f"{m}_beta_err"] = math.nan
        return row

    rows = [row for _, row in _run_grid(kappas, one, args.jobs)]
    _emit(rows, args.format, args.out, {"command": "compare", "reference": reference})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _faulty(source, fault: str | None, name: str):
    if fault != name:
        return source

    def corrupted(k):
        jc = source(k)
        return JostCoefficients(jc.kappa, jc.a * (1 + 1e-3), jc.b, jc.a_bar, jc.b_bar)

    return corrupted


def verification_checks(seed: int = 0, samples: int = 8, fault: str | None = None):
    """(name, threshold, thunk) triples; each thunk returns the max defect."""
    rng = np.random.default_rng(seed)
    ks = np.sort(rng.uniform(0.2, 10.0, samples))
    sq = builtin("square", {"V0": 1.0, "x0": 1.0})
    pt = builtin("poschl_teller", {"V0": 1.0, "x0": 1.0})
    ex = builtin("exponential", {"V0": 1.0, "x0": 1.0})
    de = builtin("delta", {"v0": 2.0})
    ga = builtin("gaussian", {"V0": 1.0, "x0": 1.0})
    sq_oracle = _faulty(lambda k: oracles.square_barrier(1.0, 1.0, k).jost, fault, "oracle")

    def unitarity_oracle():
        srcs = [sq_oracle, oracles.oracle_for(pt), oracles.oracle_for(ex), oracles.oracle_for(de)]
        return max(transfer.unitarity_defect(s(k)) for s in srcs for k in ks)

    def unitarity_solver():
        return max(transfer.unitarity_defect(solver.jost(p, k)) for p in (sq, ga) for k in ks)

    def symmetry():
        worst = 0.0
        for k in ks[:4]:
            d = transfer.symmetry_defects(solver.jost(sq, k), solver.jost(sq, -k), symmetric=True)
            worst = max(worst, *d.values())
        return worst

    def displacement():
        shifted = sq.displaced(1.7)
        return max(
            abs(solver.jost(shifted, k).b - transfer.displace_jost(solver.jost(sq, k), 1.7).b)
            for k in ks[:4]
        )

    def composition():
        two = CompositePotential(((sq, -3.0), (sq, 3.0)))
        return max(
            max(abs(c.a - d.a), abs(c.b - d.b))
            for k in ks[:4]
            for c, d in [(transfer.compose(solver.jost(sq, k), -3.0, solver.jost(sq, k), 3.0),
                          solver.jost(two, k))]
        )

    def oracle_square():
        return max(
            max(abs(s.a - o.a) / abs(o.a), abs(s.b - o.b) / abs(o.b))
            for k in ks
            for s, o in [(solver.jost(sq, k), sq_oracle(k))]
        )

    def oracle_tails():
        worst = 0.0
        for p in (pt, ex):
            orc = oracles.oracle_for(p)
            for k in ks[:4]:
                s, o = solver.jost(p, k), orc(k)
                # |b| decays like exp(-pi kappa x0); measure against |a| >= 1 instead
                worst = max(worst, abs(s.a - o.a) / abs(o.a), abs(s.b - o.b) / abs(o.a))
        return worst

    def born_consistency():
        return max(
            max(abs(r.alpha - s.alpha), abs(r.beta - s.beta))
            for k in ks[:3]
            for r, s in [(born.volterra_series(sq, k), solver.amplitudes(sq, k))]
        )

    def upper_half():
        srcs = [sq_oracle, oracles.oracle_for(pt), oracles.oracle_for(de)]
        return float(sum(
            abs(complexplane.winding_number(lambda k, s=s: s(k).a, complexplane.HalfDisc(20.0)))
            for s in srcs
        ))

    return [
        ("unitarity_oracle", 1e-10, unitarity_oracle),
        ("unitarity_solver", 1e-8, unitarity_solver),
        ("conjugation_symmetry", 1e-9, symmetry),
        ("displacement_law", 1e-8, displacement),
        ("composition_law", 1e-8, composition),
        ("oracle_vs_solver_square", 1e-8, oracle_square),
        ("oracle_vs_solver_tails", 1e-6, oracle_tails),
        ("volterra_vs_solver", 1e-8, born_consistency),
        ("upper_half_plane_zeros", 0.5, upper_half),
    ]


def cmd_verify(args) -> int:
    failed = []
    rows = []
    for name, threshold, check in verification_checks(args.seed, args.samples, args.inject_fault):
        try:
            defect = float(check())
        except JostError as exc:
            defect = math.inf
            print(f"{name}: error {exc}", file=sys.stderr)
        ok = defect < threshold
        rows.append({"check": name, "max_defect": defect, "threshold": threshold, "passed": ok})
        if not ok:
            failed.append(name)
    if args.format == "json":
        _write(json.dumps({"command": "verify", "seed": args.seed, "checks": rows}, indent=2) + "\n", args.out)
    else:
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'} {r['check']} max_defect={_num(r['max_defect'])} "
            f"threshold={r['threshold']:g}"
            for r in rows
        ]
        _write("\n".join(lines) + "\n", args.out)
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jost1d", description="1D scattering amplitudes and their analytic structure")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, potential=True, kappa=False, rect=False, formats=("csv", "json")):
        if potential:
            sp.add_argument("--potential", required=True,
                            help="JSON file, inline JSON, or family:key=value,... (e.g. square:V0=1,x0=1)")
        if kappa:
            sp.add_argument("--kappa", required=True, help="start:stop:count; complex endpoints allowed")
        if rect:
            sp.add_argument("--rect", required=True, help="re0:re1:im0:im1")
        sp.add_argument("--tol", type=float, default=None, help="numerical tolerance")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for kappa grids")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("amplitudes", help="alpha, beta, a, b, T, R on a kappa grid")
    common(sp, kappa=True)
    sp.add_argument("--oracle", action="store_true", help="use the closed form instead of the solver")
    sp.set_defaults(func=cmd_amplitudes)

    sp = sub.add_parser("scan", help="zeros of a(kappa) in a rectangle")
    common(sp, rect=True, formats=("json", "csv"))
    sp.add_argument("--oracle", action="store_true", help="scan the closed form (allows crossing tail strips)")
    sp.add_argument("--max-depth", type=int, default=12)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("compose", help="composition rule against a direct solve")
    common(sp, kappa=True)
    sp.add_argument("--oracle", action="store_true", help="closed forms for the parts")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("compare", help="errors of solver, Born, series and WKB against a reference")
    common(sp, kappa=True)
    sp.add_argument("--reference", choices=("auto", "oracle", "solver"), default="auto")
    sp.add_argument("--methods", default=None, help=f"comma list from {','.join(METHODS)}")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("verify", help="run the invariant checks")
    common(sp, potential=False, formats=("text", "json"))
    sp.add_argument("--samples", type=int, default=8, help="random kappa samples per check")
    # test hook: corrupts one reference so the suite must fail
    sp.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    return parser


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # "--rect -1:1:-3:0" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--rect", "--kappa"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches EXIT_CONFIG
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except JostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, TailLimitedError) and exc.strip is not None:
            print(f"allowed strip: {exc.strip[0]:g} < Im kappa < {exc.strip[1]:g}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
