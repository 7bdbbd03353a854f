"""Command line driver for the criterion checks and the experiments.

Subcommands: expp (exponent sets), vandiver (criterion verdicts), scan
(density tallies), rank (Jacobi-sum rank milestones), trace (trace
polynomial catalogs), symbol (exact pth-power classification).  Text
output follows the print format of the underlying programs so rows can be
diffed against published tables; json and csv are the machine interfaces.

Configuration precedence: command-line flag, then environment variable,
then built-in default.  Recognized variables: PRIMARITY_JOBS,
PRIMARITY_EXACT_JOBS, PRIMARITY_CACHE_DIR, PRIMARITY_FORMAT.

Exit codes: 0 success (criterion established where one was asked), 2
invalid input or resource refusal, 3 criterion undetermined at the given
bounds, 4 I/O failure.  Caches are JSON-lines files under --cache-dir;
loading an existing cache requires --resume, which replays cached records
verbatim and makes reruns byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path

from .modarith import is_prime, split_primes
from .residue_symbols import SymbolCache, classify_for
from .spectra import TraceCatalog, rank_scan, trace_stream
from .vandiver import (
    DEFAULT_MAX_STEPS,
    ScanCache,
    criterion_a,
    criterion_b,
    density_scan,
    scan_pairs,
)

_ENV_PREFIX = "PRIMARITY_"


@dataclass(frozen=True)
class RunConfig:
    """Resolved plumbing options shared by all subcommands."""

    jobs: int
    exact_jobs: int
    cache_dir: str | None
    format: str
    resume: bool

    @classmethod
    def resolve(cls, args: argparse.Namespace) -> "RunConfig":
        """Apply the flag > environment > default precedence."""
        jobs = _pick_int(getattr(args, "jobs", None), "JOBS", 1)
        exact_jobs = _pick_int(getattr(args, "exact_jobs", None), "EXACT_JOBS", 1)
        if jobs < 1 or exact_jobs < 1:
            raise ValueError("worker counts must be at least 1")
        cache_dir = getattr(args, "cache_dir", None) or os.environ.get(
            _ENV_PREFIX + "CACHE_DIR"
        )
        fmt = getattr(args, "format", None) or os.environ.get(
            _ENV_PREFIX + "FORMAT", "text"
        )
        if fmt not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        return cls(
            jobs=jobs,
            exact_jobs=exact_jobs,
            cache_dir=cache_dir,
            format=fmt,
            resume=bool(getattr(args, "resume", False)),
        )


def _pick_int(flag_value: int | None, env_name: str, default: int) -> int:
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(_ENV_PREFIX + env_name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_ENV_PREFIX}{env_name}={raw!r} is not an integer") from None


def _open_cache(cfg: RunConfig, filename: str, factory):
    """Cache handle under --cache-dir, guarded by the --resume latch."""
    if cfg.cache_dir is None:
        return None
    path = Path(cfg.cache_dir) / filename
    if path.exists() and path.stat().st_size > 0 and not cfg.resume:
        raise ValueError(f"cache {path} exists; pass --resume to reuse it")
    return factory(path)


def _prime_range(args: argparse.Namespace) -> list[int]:
    p = args.p
    if not is_prime(p) or p < 3:
        raise ValueError(f"p={p} is not an odd prime")
    p_max = getattr(args, "p_max", None)
    if p_max is None:
        return [p]
    return [q for q in range(p, p_max + 1) if q % 2 == 1 and is_prime(q)]


def _l_stream(args: argparse.Namespace, p: int):
    if getattr(args, "l", None) is not None:
        return [args.l]
    l_max = getattr(args, "l_max", None)
    count = getattr(args, "count", None)
    if l_max is None and count is None:
        return split_primes(p, count=1)
    return split_primes(p, bound=l_max, count=count)


def cmd_expp(args: argparse.Namespace, cfg: RunConfig) -> int:
    cache = _open_cache(cfg, "scan.jsonl", ScanCache)
    writer = csv.writer(sys.stdout) if cfg.format == "csv" else None
    if writer is not None:
        writer.writerow(["p", "l", "c", "g", "expp", "ms"])
    for p in _prime_range(args):
        for rec in scan_pairs(p, _l_stream(args, p), c=args.c, jobs=cfg.jobs, cache=cache):
            if cfg.format == "json":
                print(rec.to_json())
            elif writer is not None:
                writer.writerow([rec.p, rec.l, rec.c, rec.g,
                                 ",".join(str(n) for n in rec.expp), rec.ms])
            else:
                line = f"p={rec.p} el={rec.l} c={rec.c} g={rec.g}"
                if rec.expp:
                    line += " expp:" + ",".join(str(n) for n in rec.expp)
                print(line)
    return 0


def cmd_vandiver(args: argparse.Namespace, cfg: RunConfig) -> int:
    cache = _open_cache(cfg, "scan.jsonl", ScanCache)
    writer = csv.writer(sys.stdout) if cfg.format == "csv" else None
    if writer is not None:
        writer.writerow(["p", "mode", "holds", "steps", "witnesses", "intersection"])
    rc = 0
    for p in _prime_range(args):
        if args.mode == "a":
            verdict = criterion_a(p, l=args.l, c=args.c)
        else:
            stream = split_primes(p, bound=args.l_max)
            verdict = criterion_b(
                p,
                stream=stream,
                max_steps=args.count or DEFAULT_MAX_STEPS,
                c=args.c,
                jobs=cfg.jobs,
                cache=cache,
            )
        if cfg.format == "json":
            print(verdict.to_json())
        elif writer is not None:
            writer.writerow([verdict.p, verdict.mode, verdict.holds, verdict.steps,
                             ",".join(str(l) for l in verdict.witnesses),
                             verdict.intersection.render()])
        else:
            print(verdict.render())
        if not verdict.holds:
            rc = 3
    return rc


def cmd_scan(args: argparse.Namespace, cfg: RunConfig) -> int:
    p = args.p
    if not is_prime(p) or p < 5:
        raise ValueError(f"p={p} is not a prime >= 5")
    if args.count is None and args.l_max is None:
        raise ValueError("scan needs --count or --l-max")
    cache = _open_cache(cfg, "scan.jsonl", ScanCache)
    if cfg.format == "text":
        def on_hit(processed: int, hits: int, l: int, counts: tuple[int, ...]) -> None:
            print(f"{processed} {hits} {l} [" + ",".join(str(v) for v in counts) + "]")

        table = density_scan(p, count=args.count, bound=args.l_max, c=args.c,
                             jobs=cfg.jobs, cache=cache, on_hit=on_hit)
        print(f"p={p} processed={table.processed} hits={table.hits} "
              f"last={table.last_l} counts={table.render_vector()}")
        return 0
    stream = split_primes(p, bound=args.l_max, count=args.count)
    writer = csv.writer(sys.stdout) if cfg.format == "csv" else None
    if writer is not None:
        writer.writerow(["p", "l", "c", "g", "expp", "ms"])
    for rec in scan_pairs(p, stream, c=args.c, jobs=cfg.jobs, cache=cache):
        if writer is not None:
            writer.writerow([rec.p, rec.l, rec.c, rec.g,
                             ",".join(str(n) for n in rec.expp), rec.ms])
        else:
            print(rec.to_json())
    return 0


def cmd_rank(args: argparse.Namespace, cfg: RunConfig) -> int:
    p = args.p
    if not is_prime(p) or p < 7:
        raise ValueError(f"p={p} must be a prime >= 7 for a meaningful rank scan")
    stream = split_primes(p, bound=args.l_max) if args.l_max else None
    reached, lp, history = rank_scan(p, stream=stream, c=args.c)
    rank = history[-1][1] if history else 0
    if cfg.format == "json":
        import json as _json

        print(_json.dumps({"p": p, "r": rank, "elp": lp,
                           "history": [list(h) for h in history]}))
    elif cfg.format == "csv":
        import math as _math

        writer = csv.writer(sys.stdout)
        writer.writerow(["l", "rank", "ratio"])
        scale = p * p * _math.log(p * p)
        for l, r in history:
            writer.writerow([l, r, f"{l / scale:.4f}"])
    else:
        print(f"p={p} r={rank} elp={lp if reached else '-'}")
    return 0


def cmd_trace(args: argparse.Namespace, cfg: RunConfig) -> int:
    p = args.p
    if not is_prime(p) or p < 3:
        raise ValueError(f"p={p} is not an odd prime")
    if args.l is None and args.l_max is None:
        raise ValueError("trace needs --l or --l-max")
    cache = _open_cache(cfg, "trace.jsonl", TraceCatalog)
    # dense is the reference for single pairs; ranges use the O(l) route
    method = args.mode or ("dense" if args.l is not None else "fast")
    ls = [args.l] if args.l is not None else split_primes(p, bound=args.l_max)
    writer = csv.writer(sys.stdout) if cfg.format == "csv" else None
    if writer is not None:
        writer.writerow(["l", "f", "R"])
    distinct: set[tuple[int, ...]] = set()
    for tp in trace_stream(p, ls, method=method, cache=cache):
        distinct.add(tp.coeffs)
        if cfg.format == "json":
            print(tp.to_json())
        elif writer is not None:
            writer.writerow([tp.l, tp.residue_degree, tp.render()])
        else:
            print(f"el={tp.l} f={tp.residue_degree} R={tp.render()}")
    if args.l is None and cfg.format == "text":
        print(f"p={p} distinct={len(distinct)}")
    return 0


def _symbol_worker(task: tuple[int, int, int, int | None]) -> "object":
    p, l, n, c = task
    return classify_for(p, l, n, c=c)


def cmd_symbol(args: argparse.Namespace, cfg: RunConfig) -> int:
    p, n = args.p, args.n
    if not is_prime(p) or p < 5:
        raise ValueError(f"p={p} is not a prime >= 5")
    if n % 2 != 0 or not 2 <= n <= p - 3:
        raise ValueError(f"n={n} must be even and within [2, {p - 3}]")
    if args.l is None and args.l_max is None:
        raise ValueError("symbol needs --l or --l-max")
    cache = _open_cache(cfg, "symbols.jsonl", SymbolCache)
    ls = [args.l] if args.l is not None else list(split_primes(p, bound=args.l_max))
    if cfg.format == "text":
        print(f"p={p} n={n}")
    writer = csv.writer(sys.stdout) if cfg.format == "csv" else None
    if writer is not None:
        writer.writerow(["p", "n", "l", "v", "s", "u", "classification"])
    pool = Pool(cfg.exact_jobs) if cfg.exact_jobs > 1 and len(ls) > 1 else None
    try:
        pending = [(p, l, n, args.c) for l in ls
                   if cache is None or cache.get(p, n, l) is None]
        fresh = iter(pool.imap(_symbol_worker, pending) if pool is not None
                     else map(_symbol_worker, pending))
        for l in ls:
            rep = cache.get(p, n, l) if cache is not None else None
            if rep is None:
                rep = next(fresh)
                if cache is not None:
                    cache.put(rep)
            if cfg.format == "json":
                print(rep.to_json())
            elif writer is not None:
                writer.writerow([rep.p, rep.n, rep.l, rep.v, rep.s, rep.u,
                                 rep.classification])
            else:
                print(f"p={rep.p} el={rep.l} v={rep.v} u={rep.u}")
                for line in rep.lines():
                    print(line)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return 0


def _add_flags(sp: argparse.ArgumentParser, *names: str) -> None:
    flags = {
        "p": dict(type=int, required=True, help="base prime p"),
        "p-max": dict(type=int, help="scan primes p..p-max"),
        "l": dict(type=int, help="explicit split prime l"),
        "l-max": dict(type=int, help="bound on split primes l"),
        "count": dict(type=int, help="how many split primes to process"),
        "c": dict(type=int, help="twist parameter (default: smallest primitive root)"),
        "n": dict(type=int, required=True, help="even exponent n in [2, p-3]"),
        "jobs": dict(type=int, help="mod-p worker processes (env PRIMARITY_JOBS)"),
        "exact-jobs": dict(type=int, help="exact-route worker processes (env PRIMARITY_EXACT_JOBS)"),
        "cache-dir": dict(help="directory for JSON-lines caches (env PRIMARITY_CACHE_DIR)"),
        "format": dict(choices=("text", "json", "csv"), help="output format (env PRIMARITY_FORMAT)"),
        "resume": dict(action="store_true", help="reuse an existing cache file"),
    }
    for name in names:
        sp.add_argument(f"--{name}", **flags[name])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primarity",
        description="Vandiver criterion checks via Jacobi-sum twists of Gauss sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expp", help="exponent sets of split primes")
    _add_flags(sp, "p", "p-max", "l", "l-max", "count", "c", "jobs",
               "cache-dir", "format", "resume")
    sp.set_defaults(func=cmd_expp)

    sp = sub.add_parser("vandiver", help="criterion (a)/(b) verdicts")
    sp.add_argument("--mode", choices=("a", "b"), default="b",
                    help="criterion variant (default b)")
    _add_flags(sp, "p", "p-max", "l", "l-max", "count", "c", "jobs",
               "cache-dir", "format", "resume")
    sp.set_defaults(func=cmd_vandiver)

    sp = sub.add_parser("scan", help="density tally over split primes")
    _add_flags(sp, "p", "l-max", "count", "c", "jobs",
               "cache-dir", "format", "resume")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("rank", help="rank milestone of Jacobi-sum vectors")
    _add_flags(sp, "p", "l-max", "c", "format")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("trace", help="Gaussian period trace polynomials")
    sp.add_argument("--mode", choices=("dense", "fast"),
                    help="route (default: dense for --l, fast for --l-max)")
    _add_flags(sp, "p", "l", "l-max", "cache-dir", "format", "resume")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("symbol", help="exact pth-power classification")
    _add_flags(sp, "p", "n", "l", "l-max", "c", "exact-jobs",
               "cache-dir", "format", "resume")
    sp.set_defaults(func=cmd_symbol)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.resolve(args)
        return args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MemoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
