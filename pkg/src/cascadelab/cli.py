"""``cascadelab`` command line.

Exit codes: 0 success, 1 validation failure, 2 numeric failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import cascade, filters, jumps, transfer

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

_PI_RE = re.compile(r"^\s*([+-]?)\s*(\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def parse_theta(text: str) -> float:
    """Radians, either a decimal literal or a rational multiple of pi such as ``-9pi/20``."""
    m = _PI_RE.match(text.lower())
    if m:
        sign, num, den = m.groups()
        q = Fraction(int(num or 1), int(den or 1))
        if sign == "-":
            q = -q
        return math.pi * q.numerator / q.denominator
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse theta {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("theta must be finite")
    return value


def parse_theta_list(text: str) -> list[float]:
    return [parse_theta(t) for t in text.split(",") if t.strip()]


def _fmt(x: float) -> str:
    return repr(float(x))


def _load(args) -> filters.WaveletFilter:
    if args.filter is not None:
        try:
            return filters.load_filter(args.filter)
        except OSError as exc:
            raise CLIError(f"cannot read filter file: {exc}", EXIT_IO) from exc
        except filters.FilterFormatError as exc:
            raise CLIError(f"malformed filter file: {exc}", EXIT_INVALID) from exc
        except ValueError as exc:
            raise CLIError(f"malformed filter file: {exc}", EXIT_INVALID) from exc
    if args.theta is None:
        raise CLIError("one of --theta or --filter is required", EXIT_INVALID)
    return filters.theta_family(args.theta)


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc}", EXIT_IO) from exc


def _require_valid(filt, tol):
    report = filters.validate_qmf(filt, tol)
    if not report.ok:
        names = ", ".join(f"{n}: {r:.3e}" for n, r in report.violations)
        raise CLIError(f"filter fails the QMF conditions ({names})", EXIT_INVALID)


def cmd_validate(args) -> int:
    filt = _load(args)
    report = filters.validate_qmf(filt, args.tol)
    if args.format == "json":
        text = json.dumps(
            {
                "orthogonality": {str(l): r for l, r in sorted(report.orthogonality.items())},
                "lowpass": report.lowpass,
                "tol": report.tol,
                "ok": report.ok,
            }
        ) + "\n"
    else:
        lines = ["condition,residual,ok"]
        for l, r in sorted(report.orthogonality.items()):
            lines.append(f"orthogonality l={l},{_fmt(r)},{r <= args.tol}")
        lines.append(f"lowpass,{_fmt(report.lowpass)},{report.lowpass <= args.tol}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_spectrum(args) -> int:
    filt = _load(args)
    _require_valid(filt, args.tol)
    try:
        report = transfer.spectrum(transfer.ruelle_matrix(filt), args.cluster_tol)
    except transfer.SpectrumError as exc:
        raise CLIError(str(exc), EXIT_NUMERIC) from exc
    data = report.to_dict()
    if filt.theta is not None:
        closed = transfer.theta_eigenvalues_closed_form(filt.theta)
        data["closed_form"] = [{"re": float(v.real), "im": float(v.imag)} for v in closed]
        data["closed_form_max_error"] = transfer.match_eigenvalues(report.eigenvalues, closed)
    if args.format == "csv":
        lines = ["re,im,mult"] + [
            f"{_fmt(e['re'])},{_fmt(e['im'])},{e['mult']}" for e in data["eigenvalues"]
        ]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(data, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cascade_stages(filt, stages):
    try:
        return cascade.cascade_from_haar(filt, stages)
    except cascade.LevelCapError as exc:
        raise CLIError(str(exc), EXIT_NUMERIC) from exc


def _norms_table(stages):
    rows = []
    prev = None
    for k, s in enumerate(stages):
        rows.append(
            {"stage": k, "norm": s.norm(), "distance": None if prev is None else cascade.l2_distance(s, prev)}
        )
        prev = s
    return rows


def cmd_cascade(args) -> int:
    filt = _load(args)
    _require_valid(filt, args.tol)
    stages = _cascade_stages(filt, args.stages)
    final = stages[-1]
    table = _norms_table(stages)
    if args.format == "json":
        text = json.dumps(
            {
                "level": final.level,
                "lo": final.lo,
                "hi": final.hi,
                "values": [[float(v.real), float(v.imag)] for v in final.values],
                "norms": table,
            }
        ) + "\n"
        _emit(text, args.out)
        return EXIT_OK
    _emit(final.to_csv(), args.out)
    if args.out is not None:
        _emit(json.dumps({"norms": table}, indent=2) + "\n", str(args.out) + ".norms.json")
    return EXIT_OK


def cmd_jumps(args) -> int:
    filt = _load(args)
    _require_valid(filt, args.tol)
    if not 1 <= args.resolution <= jumps.MAX_RESOLUTION:
        raise CLIError(f"resolution must be in 1..{jumps.MAX_RESOLUTION}", EXIT_NUMERIC)
    try:
        trace = jumps.trace_run(filt, args.resolution, args.stages, generalized=len(filt) != 4)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from exc
    _emit(trace.to_csv(), args.out)
    return EXIT_OK


def movie_thetas(frames: int) -> list[float]:
    """``frames`` angles evenly spaced on ``[-pi/2, pi/2]``."""
    if frames < 1:
        raise ValueError("need at least one frame")
    if frames == 1:
        return [0.0]
    return [-math.pi / 2 + math.pi * k / (frames - 1) for k in range(frames)]


def _movie_frame(theta, stages):
    filt = filters.theta_family(theta)
    return cascade.cascade_from_haar(filt, stages, keep_all=False).to_csv()


def cmd_movie(args) -> int:
    thetas = args.thetas if args.thetas else movie_thetas(args.frames)
    if args.out is None:
        raise CLIError("movie needs --out DIRECTORY", EXIT_IO)
    outdir = Path(args.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CLIError(f"cannot create {outdir}: {exc}", EXIT_IO) from exc
    if args.stages > cascade.MAX_LEVEL:
        raise CLIError(f"stages exceed level cap {cascade.MAX_LEVEL}", EXIT_NUMERIC)
    jobs = [(theta, args.stages) for theta in thetas]
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(args.workers) as pool:
            frames = list(pool.map(_movie_frame, *zip(*jobs)))
    else:
        frames = [_movie_frame(*j) for j in jobs]
    for idx, (theta, text) in enumerate(zip(thetas, frames)):
        _emit(text, outdir / f"frame{idx:02d}_theta{theta:+.6f}.csv")
    return EXIT_OK


def cmd_peaks(args) -> int:
    thetas = args.thetas if args.thetas else list(jumps.TABLE_THETAS)
    _emit(jumps.peak_table_csv(jumps.peak_table(thetas)), args.out)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
    "cascade": cmd_cascade,
    "jumps": cmd_jumps,
    "movie": cmd_movie,
    "peaks": cmd_peaks,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cascadelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, filter_source=True):
        if filter_source:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--theta", type=parse_theta, help="angle of the 4-tap family (radians, or e.g. 9pi/20)")
            src.add_argument("--filter", type=Path, help="filter JSON file")
        p.add_argument("--tol", type=float, default=filters.DEFAULT_TOL)
        p.add_argument("--out", help="output path (stdout if omitted)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("validate", help="check the QMF and low-pass conditions")
    common(p)
    p = sub.add_parser("spectrum", help="eigenvalues of the transfer matrix")
    common(p)
    p.set_defaults(format="json")
    p.add_argument("--cluster-tol", type=float, default=transfer.DEFAULT_CLUSTER_TOL)
    p = sub.add_parser("cascade", help="cascade iterates from the Haar start")
    common(p)
    p.add_argument("--stages", type=int, default=8)
    p = sub.add_parser("jumps", help="one-sided limits at fixed dyadic resolution")
    common(p)
    p.add_argument("--stages", type=int, default=1000)
    p.add_argument("--resolution", type=int, default=10)
    p = sub.add_parser("movie", help="one cascade CSV per theta frame")
    common(p, filter_source=False)
    p.add_argument("--theta", dest="thetas", type=parse_theta_list, help="comma-separated angles")
    p.add_argument("--frames", type=int, default=21)
    p.add_argument("--stages", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("peaks", help="limit values at x = 1, 3/2, 2")
    common(p, filter_source=False)
    p.add_argument("--theta", dest="thetas", type=parse_theta_list, help="comma-separated angles")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "stages", 0) < 0:
        print("cascadelab: --stages must be >= 0", file=sys.stderr)
        return EXIT_INVALID
    try:
        return COMMANDS[args.command](args)
    except CLIError as exc:
        print(f"cascadelab: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
