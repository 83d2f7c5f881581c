"""Command-line front end: ``theta-lab build|ratio|certify|verify-lemmas|search``.

Every command prints a JSON run report on stdout (or to ``--out``).
Exit codes: 0 pass, 1 internal error, 2 input rejection, 3 guard-rail
refusal, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, kernels
from .errors import GeneralPositionError, InductionError, PreconditionError
from .induction_router import K_THEOREM, InductiveRouter, validate_certificate
from .io import InputFormatError, digest, format_points, graph_to_dict, parse_points, render_svg
from .spanner_metrics import spanning_ratio, stretch_search
from .theta_graph import build_theta_graph

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_REFUSED, EXIT_FAILED = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int, payload: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _threads(value: Optional[int]) -> int:
    if value is None:
        env = os.environ.get("THETA_LAB_THREADS", "").strip()
        if env:
            try:
                value = int(env)
            except ValueError:
                raise CliError(f"THETA_LAB_THREADS must be an integer, got {env!r}", EXIT_INPUT) from None
        else:
            value = os.cpu_count() or 1
    if value < 1:
        raise CliError("thread count must be positive", EXIT_INPUT)
    return value


def _read_input(path: str) -> tuple[bytes, list]:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise CliError(f"{path} is not UTF-8 text", EXIT_INPUT) from None
    try:
        return data, parse_points(text)
    except InputFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def _graph(points, k: int):
    try:
        return build_theta_graph(points, k)
    except GeneralPositionError as exc:
        raise CliError(
            f"general position violated at indices {list(exc.indices)}: {exc}",
            EXIT_INPUT,
            {"offending_indices": list(exc.indices)},
        ) from None
    except PreconditionError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _report(args, argv: Sequence[str], results, input_digest: Optional[str] = None, k=None) -> dict:
    return {
        "command": ["theta-lab", *argv],
        "input_digest": input_digest,
        "k": k,
        "seed": args.seed,
        "version": __version__,
        "results": results,
    }


def cmd_build(args, argv) -> tuple[dict, int]:
    data, pts = _read_input(args.input)
    g = _graph(pts, args.k)
    return _report(args, argv, graph_to_dict(g), digest(data), args.k), EXIT_OK


def cmd_ratio(args, argv) -> tuple[dict, int]:
    data, pts = _read_input(args.input)
    if len(pts) < 2:
        raise CliError("the spanning ratio needs at least two points", EXIT_INPUT)
    g = _graph(pts, args.k)
    rep = spanning_ratio(g, threads=_threads(args.threads))
    results = rep.to_dict()
    results.update(n=g.n, edges=len(g.edges))
    if args.svg:
        Path(args.svg).write_text(render_svg(g, rep.path), encoding="utf-8")
        results["svg"] = args.svg
    return _report(args, argv, results, digest(data), args.k), EXIT_OK


def cmd_certify(args, argv) -> tuple[dict, int]:
    if args.k != 5:
        raise CliError("certify works on Theta_5 only (--k 5)", EXIT_REFUSED)
    if not args.K >= K_THEOREM:
        raise CliError(
            f"refusing K={args.K}: below the proven bound {K_THEOREM}, certificates may legitimately fail",
            EXIT_REFUSED,
        )
    data, pts = _read_input(args.input)
    if len(pts) < 2:
        raise CliError("certify needs at least two points", EXIT_INPUT)
    g = _graph(pts, 5)
    if args.pair is not None:
        a, b = args.pair
        if not (0 <= a < g.n and 0 <= b < g.n) or a == b:
            raise CliError(f"--pair {a} {b} is not a pair of distinct vertices in 0..{g.n - 1}", EXIT_INPUT)
        pairs = [(a, b)]
    else:
        pairs = [(a, b) for a in range(g.n) for b in range(a + 1, g.n)]
    router = InductiveRouter(g, args.K)
    certs, failed = [], []
    for a, b in pairs:
        try:
            cert = router.certificate(a, b)
        except InductionError as exc:
            failed.append({
                "pair": [a, b],
                "error": str(exc),
                "step": exc.step.to_dict() if exc.step is not None else None,
            })
            continue
        problems = validate_certificate(cert, g)
        d = cert.to_dict()
        if problems or not cert.valid:
            d["revalidation_problems"] = problems
            failed.append(d)
        certs.append(d)
    worst = max((c["total_length"] / (c["bound"] / c["K"]) for c in certs), default=1.0)
    results = {
        "K": args.K,
        "pairs": len(pairs),
        "all_valid": not failed,
        "max_path_ratio": worst,
        "certificates": certs,
        "failures": failed,
    }
    report = _report(args, argv, results, digest(data), 5)
    if failed:
        print(f"theta-lab: {len(failed)} certificate(s) failed re-validation", file=sys.stderr)
        print(json.dumps(failed, indent=2), file=sys.stderr)
        return report, EXIT_FAILED
    return report, EXIT_OK


def cmd_verify_lemmas(args, argv) -> tuple[dict, int]:
    from .lemma_lab import run_lemma_suite

    if args.grid < 2:
        raise CliError("--grid must be at least 2", EXIT_INPUT)
    if args.samples < 1:
        raise CliError("--samples must be positive", EXIT_INPUT)
    if args.K is not None and not args.lemma:
        raise CliError("--K needs --lemma", EXIT_INPUT)
    t0 = time.perf_counter()
    try:
        reports = run_lemma_suite(
            grid=args.grid,
            samples=args.samples,
            seed=args.seed,
            threads=_threads(args.threads),
            lemmas=args.lemma,
            K=args.K,
            controls=not args.no_controls,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports)
    for r in reports:
        verdict = "pass" if r.passed else "fail"
        mark = "" if r.ok else "  <-- unexpected"
        print(f"{r.lemma_id:<22} {r.role:<8} K={r.K_tested!s:<20} max={r.max_potential:+.3e} {verdict}{mark}",
              file=sys.stderr)
    print(f"theta-lab: {len(reports)} runs in {elapsed:.1f}s, {'all as expected' if ok else 'FAILURES'}",
          file=sys.stderr)
    results = {"all_ok": ok, "grid": args.grid, "samples": args.samples, "reports": [r.to_dict() for r in reports]}
    return _report(args, argv, results), EXIT_OK if ok else EXIT_FAILED


def cmd_search(args, argv) -> tuple[dict, int]:
    if args.n < 3:
        raise CliError("--n must be at least 3", EXIT_INPUT)
    if args.iterations < 0:
        raise CliError("--iterations must be non-negative", EXIT_INPUT)
    res = stretch_search(args.n, args.iterations, args.seed, k=args.k)
    if args.points_out:
        Path(args.points_out).write_text(
            f"# stretch_search n={args.n} iterations={args.iterations} seed={args.seed} "
            f"k={args.k} ratio={res.report.ratio!r}\n" + format_points(res.points),
            encoding="utf-8",
        )
    results = {
        "n": args.n,
        "iterations": args.iterations,
        "accepted": res.accepted,
        "ratio": res.report.ratio,
        "witness_pair": list(res.report.witness_pair),
        "path": list(res.report.path),
        "points": [[p.x, p.y] for p in res.points],
    }
    return _report(args, argv, results, k=args.k), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $THETA_LAB_THREADS, else all cores)")
    common.add_argument("-o", "--out", default=None, help="write the JSON report here instead of stdout")

    p = argparse.ArgumentParser(prog="theta-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"theta-lab {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    b = sub.add_parser("build", parents=[common], help="build a Theta_k graph and dump it as JSON")
    b.add_argument("input", help="point file (plain text or JSON), '-' for stdin")
    b.add_argument("--k", type=int, default=5)
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("ratio", parents=[common], help="spanning ratio and witness pair")
    r.add_argument("input")
    r.add_argument("--k", type=int, default=5)
    r.add_argument("--svg", metavar="PATH", help="draw the graph with the witness path highlighted")
    r.set_defaults(func=cmd_ratio)

    c = sub.add_parser("certify", parents=[common], help="inductive path certificates on Theta_5")
    c.add_argument("input")
    c.add_argument("--k", type=int, default=5, help="must be 5")
    c.add_argument("--K", type=float, default=K_THEOREM, help=f"stretch constant, at least {K_THEOREM}")
    c.add_argument("--pair", type=int, nargs=2, metavar=("A", "B"), help="certify a single pair")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify-lemmas", parents=[common], help="numeric checks of the inequality lemmas")
    v.add_argument("--lemma", action="append", metavar="ID", help="lemma id (repeatable); default: all")
    v.add_argument("--K", type=float, default=None, help="override K (needs --lemma, skips controls)")
    v.add_argument("--grid", type=int, default=500)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--no-controls", action="store_true", help="skip the negative controls")
    v.set_defaults(func=cmd_verify_lemmas)

    s = sub.add_parser("search", parents=[common], help="hill-climb toward a large spanning ratio")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--iterations", type=int, default=1000)
    s.add_argument("--k", type=int, default=5)
    s.add_argument("--points-out", metavar="PATH", help="also write the best point set as plain text")
    s.set_defaults(func=cmd_search)
    return p


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(_clean(report), indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, which matches ours
        return int(exc.code or 0)
    try:
        report, code = args.func(args, argv)
    except CliError as exc:
        print(f"theta-lab: error: {exc}", file=sys.stderr)
        if exc.payload is not None:
            _emit(_report(args, argv, {"error": str(exc), **exc.payload}), args.out)
        return exc.code
    except Exception as exc:  # noqa: BLE001
        print(f"theta-lab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
