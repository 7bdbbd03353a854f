"""Criterion checks built on exponent sets of split primes.

Criterion (a) certifies p once one split prime l has an exponent set
disjoint from the irregular exponents of p.  Criterion (b) avoids Bernoulli
numbers entirely: it intersects exponent sets along the stream of split
primes and certifies p as soon as the running intersection is empty.  Both
produce a CriterionVerdict; a scan that exhausts its budget first reports
the criterion as not established rather than failed.

Long scans persist per-pair results as append-only JSON lines keyed by
(p, l, c, g) so interrupted runs resume without recomputation, and workers
fold back into stream order so results never depend on the job count.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .bernoulli import irregularity_report
from .jacobi import ExponentSet, exponent_set_for
from .modarith import primitive_root, split_primes

DEFAULT_MAX_STEPS = 64

_CHUNK = 8  # split primes resolved per pool round; keeps streaming latency low


@dataclass(frozen=True)
class ScanRecord:
    """Exponent set of one (p, l) pair plus the parameters that fixed it."""

    p: int
    l: int
    c: int
    g: int
    expp: tuple[int, ...]
    ms: int

    def exponent_set(self) -> ExponentSet:
        return ExponentSet(self.p, self.expp)

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "l": self.l, "c": self.c, "g": self.g,
             "expp": list(self.expp), "ms": self.ms}
        )

    @classmethod
    def from_json(cls, line: str) -> "ScanRecord":
        d = json.loads(line)
        return cls(p=d["p"], l=d["l"], c=d["c"], g=d["g"],
                   expp=tuple(d["expp"]), ms=d["ms"])


class ScanCache:
    """Append-only JSON-lines store of scan records."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._mem: dict[tuple[int, int, int, int], ScanRecord] = {}
        if self.path.exists():
            with open(self.path, encoding="ascii") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rec = ScanRecord.from_json(line)
                        self._mem[(rec.p, rec.l, rec.c, rec.g)] = rec

    def __len__(self) -> int:
        return len(self._mem)

    def get(self, p: int, l: int, c: int, g: int) -> ScanRecord | None:
        return self._mem.get((p, l, c, g))

    def put(self, rec: ScanRecord) -> None:
        key = (rec.p, rec.l, rec.c, rec.g)
        if key in self._mem:
            return
        self._mem[key] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(rec.to_json() + "\n")


def _pair_record(args: tuple[int, int, int, int]) -> ScanRecord:
    """Worker body: one exponent set, timed."""
    p, l, c, g = args
    t0 = time.perf_counter()
    es = exponent_set_for(p, l, c=c, g=g)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return ScanRecord(p=p, l=l, c=c, g=g, expp=es.members, ms=ms)


def scan_pairs(
    p: int,
    ls: Iterable[int],
    c: int | None = None,
    jobs: int = 1,
    cache: ScanCache | None = None,
) -> Iterator[ScanRecord]:
    """Yield one ScanRecord per l, in the order the stream supplies them.

    Cached pairs are replayed verbatim; missing ones are computed, with
    jobs > 1 fanning chunks out to a process pool.  The fold back into
    stream order makes the output independent of the job count.
    """
    if c is None:
        c = primitive_root(p)
    pool = Pool(jobs) if jobs > 1 else None
    try:
        it = iter(ls)
        while True:
            chunk = []
            for l in it:
                chunk.append((l, primitive_root(l)))
                if len(chunk) >= _CHUNK * max(jobs, 1):
                    break
            if not chunk:
                return
            pending = [
                (p, l, c, g)
                for l, g in chunk
                if cache is None or cache.get(p, l, c, g) is None
            ]
            if pool is not None:
                fresh = iter(pool.map(_pair_record, pending))
            else:
                fresh = iter([_pair_record(a) for a in pending])
            for l, g in chunk:
                rec = cache.get(p, l, c, g) if cache is not None else None
                if rec is None:
                    rec = next(fresh)
                    if cache is not None:
                        cache.put(rec)
                yield rec
    finally:
        if pool is not None:
            pool.close()
            pool.join()


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of a criterion run for one prime p."""

    p: int
    mode: str
    witnesses: tuple[int, ...]
    intersection: ExponentSet
    holds: bool
    steps: int
    regular: bool = False
    undetermined: bool = False
    exponents: ExponentSet | None = None
    irregular: ExponentSet | None = None

    def __post_init__(self) -> None:
        if self.holds and self.intersection.members:
            raise ValueError("verdict holds but the intersection is nonempty")
        if self.holds and not self.witnesses:
            raise ValueError("verdict holds without witnesses")

    def status(self) -> str:
        return "established" if self.holds else "not established"

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "mode": self.mode, "holds": self.holds,
             "steps": self.steps, "witnesses": list(self.witnesses),
             "intersection": list(self.intersection.members),
             "regular": self.regular, "undetermined": self.undetermined}
        )

    def render(self) -> str:
        """One summary line per verdict."""
        parts = [f"p={self.p}", f"mode={self.mode}"]
        if self.mode == "a":
            parts.append(f"l={self.witnesses[0]}")
            parts.append(f"expp={{{self.exponents.render()}}}")
            parts.append(f"e0={{{self.irregular.render()}}}")
        else:
            parts.append(f"N={self.steps}")
            parts.append("witnesses=" + ",".join(str(l) for l in self.witnesses))
        parts.append(f"inter={{{self.intersection.render()}}}")
        parts.append(f"status={self.status()}")
        if self.regular:
            parts.append("(regular prime)")
        return " ".join(parts)


def criterion_a(p: int, l: int | None = None, c: int | None = None) -> CriterionVerdict:
    """Check E_l(p) against the irregular exponents of p."""
    if l is None:
        l = next(split_primes(p, count=1))
    e_l = exponent_set_for(p, l, c=c)
    # p=3 has no even exponents in [2, p-3] at all
    e_0 = ExponentSet(3, ()) if p == 3 else irregularity_report(p).exponent_set()
    inter = e_l.intersection(e_0)
    return CriterionVerdict(
        p=p,
        mode="a",
        witnesses=(l,),
        intersection=inter,
        holds=inter.is_empty(),
        steps=1,
        regular=e_0.is_empty(),
        exponents=e_l,
        irregular=e_0,
    )


def criterion_b(
    p: int,
    stream: Iterable[int] | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    c: int | None = None,
    jobs: int = 1,
    cache: ScanCache | None = None,
) -> CriterionVerdict:
    """Intersect exponent sets along the split-prime stream until empty.

    Certainty only comes from an empty intersection; hitting max_steps
    first leaves the criterion undetermined for this stream prefix.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if stream is None:
        stream = split_primes(p)
    witnesses: list[int] = []
    inter: ExponentSet | None = None
    for rec in scan_pairs(p, _take(stream, max_steps), c=c, jobs=jobs, cache=cache):
        witnesses.append(rec.l)
        es = rec.exponent_set()
        inter = es if inter is None else inter.intersection(es)
        if inter.is_empty():
            return CriterionVerdict(
                p=p,
                mode="b",
                witnesses=tuple(witnesses),
                intersection=inter,
                holds=True,
                steps=len(witnesses),
            )
    if inter is None:
        raise ValueError(f"stream supplied no split primes for p={p}")
    return CriterionVerdict(
        p=p,
        mode="b",
        witnesses=tuple(witnesses),
        intersection=inter,
        holds=False,
        steps=len(witnesses),
        undetermined=True,
    )


def _take(stream: Iterable[int], n: int) -> Iterator[int]:
    for i, v in enumerate(stream):
        if i >= n:
            return
        yield v


def minimal_empty_l(
    p: int,
    bound: int | None = None,
    c: int | None = None,
    jobs: int = 1,
    cache: ScanCache | None = None,
) -> tuple[int, int] | None:
    """First split prime with an empty exponent set, as (l, N).

    N counts every split prime examined, in ascending order, including the
    hit itself.  Returns None if the bound is exhausted first.
    """
    stream = split_primes(p, bound=bound)
    n = 0
    for rec in scan_pairs(p, stream, c=c, jobs=jobs, cache=cache):
        n += 1
        if not rec.expp:
            return rec.l, n
    return None


@dataclass(frozen=True)
class DensityTable:
    """How often each exponent occurred over a stretch of split primes.

    counts[j] is the number of processed primes whose exponent set contained
    n = 2*(j+1); processed counts all pairs and hits the total number of
    exponent occurrences, so hits = sum(counts) always.
    """

    p: int
    counts: tuple[int, ...]
    processed: int
    hits: int
    last_l: int

    def count_for(self, n: int) -> int:
        if n % 2 != 0 or not 2 <= n <= self.p - 3:
            raise ValueError(f"n={n} must be even and within [2, {self.p - 3}]")
        return self.counts[n // 2 - 1]

    def render_vector(self) -> str:
        return "[" + ",".join(str(v) for v in self.counts) + "]"


def density_scan(
    p: int,
    count: int | None = None,
    bound: int | None = None,
    c: int | None = None,
    jobs: int = 1,
    cache: ScanCache | None = None,
    on_hit: Callable[[int, int, int, tuple[int, ...]], None] | None = None,
) -> DensityTable:
    """Tally exponent occurrences over a stretch of split primes.

    The stretch is the first `count` split primes, those up to `bound`, or
    both caps together; at least one must be given.  on_hit, when given,
    fires after each pair with a nonempty exponent set, receiving
    (processed, hits, l, counts-so-far).
    """
    if count is None and bound is None:
        raise ValueError("density_scan needs a count or a bound")
    counts = [0] * ((p - 3) // 2)
    processed = 0
    hits = 0
    last_l = 0
    stream = split_primes(p, bound=bound, count=count)
    for rec in scan_pairs(p, stream, c=c, jobs=jobs, cache=cache):
        processed += 1
        last_l = rec.l
        if rec.expp:
            hits += len(rec.expp)
            for n in rec.expp:
                counts[n // 2 - 1] += 1
            if on_hit is not None:
                on_hit(processed, hits, rec.l, tuple(counts))
    return DensityTable(
        p=p, counts=tuple(counts), processed=processed, hits=hits, last_l=last_l
    )


def export_scan_csv(records: Iterable[ScanRecord], path: str | Path) -> None:
    """Write scan records as CSV with the exponent set comma-joined."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "l", "c", "g", "expp", "ms"])
        for rec in records:
            w.writerow([rec.p, rec.l, rec.c, rec.g,
                        ",".join(str(n) for n in rec.expp), rec.ms])
