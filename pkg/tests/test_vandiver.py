"""Criterion verdicts, scans, caching, density tables."""

import json

import pytest

from primarity.jacobi import ExponentSet, exponent_set_for
from primarity.modarith import split_primes
from primarity.vandiver import (
    CriterionVerdict,
    DensityTable,
    ScanCache,
    ScanRecord,
    criterion_a,
    criterion_b,
    density_scan,
    export_scan_csv,
    minimal_empty_l,
    scan_pairs,
)

from _goldens import (
    DENSITY157_CHECKPOINTS,
    FIRST_SPLIT,
    IRREGULAR_HITS37,
    MINIMAL_L,
    NONEMPTY37,
    NONEMPTY37_BOUND,
)


def test_criterion_a_regular_prime():
    v = criterion_a(13)
    assert v.holds and v.regular
    assert v.witnesses == (53,)
    assert v.intersection.is_empty()
    assert v.render() == "p=13 mode=a l=53 expp={} e0={} inter={} status=established (regular prime)"


def test_criterion_a_irregular_prime_disjoint():
    v = criterion_a(37, l=149)
    assert v.holds and not v.regular
    assert v.exponents.is_empty()
    assert v.irregular.members == (32,)
    assert v.render() == "p=37 mode=a l=149 expp={} e0={32} inter={} status=established"


def test_criterion_a_can_fail_for_one_pair():
    # E_32783(37) = {32}, exactly the irregular exponent of 37
    v = criterion_a(37, l=32783)
    assert not v.holds
    assert 32 in v.intersection
    assert v.status() == "not established"


def test_criterion_a_picks_first_split_prime():
    for p in (5, 7, 11, 37, 53):
        assert criterion_a(p).witnesses == (FIRST_SPLIT[p][0],)


def test_criterion_b_stops_at_first_empty_intersection():
    v = criterion_b(11, max_steps=8)
    assert v.holds
    assert v.steps == 2
    assert v.witnesses == (23, 67)
    assert v.render() == "p=11 mode=b N=2 witnesses=23,67 inter={} status=established"


def test_criterion_b_single_empty_set_certifies():
    v = criterion_b(37, max_steps=8)
    assert v.holds and v.steps == 1 and v.witnesses == (149,)


def test_criterion_b_can_terminate_before_the_first_empty_set():
    # E_1571(157) = {94} and the next split prime misses 94, so the running
    # intersection dies at N=2 even though the first empty set sits at N=5
    v = criterion_b(157, max_steps=8)
    assert v.holds and v.steps == 2
    assert v.witnesses[0] == 1571
    assert v.steps < MINIMAL_L[157][1]


def test_criterion_b_undetermined_at_exhaustion():
    v = criterion_b(157, max_steps=1)
    assert not v.holds
    assert v.undetermined
    assert v.steps == 1
    assert v.intersection.members == (94,)
    assert v.status() == "not established"


def test_criterion_b_rejects_bad_budget_and_empty_stream():
    with pytest.raises(ValueError):
        criterion_b(11, max_steps=0)
    with pytest.raises(ValueError, match="no split primes"):
        criterion_b(11, stream=iter(()))


def test_verdict_invariants():
    empty = ExponentSet(11, ())
    with pytest.raises(ValueError, match="nonempty"):
        CriterionVerdict(p=11, mode="b", witnesses=(23,),
                         intersection=ExponentSet(11, (2,)), holds=True, steps=1)
    with pytest.raises(ValueError, match="without witnesses"):
        CriterionVerdict(p=11, mode="b", witnesses=(),
                         intersection=empty, holds=True, steps=0)


def test_verdict_json_shape():
    v = criterion_b(11, max_steps=8)
    assert json.loads(v.to_json()) == {
        "p": 11, "mode": "b", "holds": True, "steps": 2,
        "witnesses": [23, 67], "intersection": [],
        "regular": False, "undetermined": False,
    }


@pytest.mark.parametrize("p", [11, 29, 43, 53])
def test_minimal_empty_l_small(p):
    assert minimal_empty_l(p) == MINIMAL_L[p]


@pytest.mark.parametrize("p", [5, 7, 13, 37])
def test_minimal_empty_l_first_prime_suffices(p):
    assert minimal_empty_l(p) == (FIRST_SPLIT[p][0], 1)


def test_minimal_empty_l_respects_bound():
    l, n = MINIMAL_L[29]
    assert minimal_empty_l(29, bound=l - 1) is None
    assert minimal_empty_l(29, bound=l) == (l, n)


def test_scan_pairs_matches_direct_computation():
    recs = list(scan_pairs(37, [149, 223, 1259]))
    assert [r.l for r in recs] == [149, 223, 1259]
    assert [r.g for r in recs] == [2, 3, 2]
    for r in recs:
        assert r.expp == exponent_set_for(37, r.l).members
        assert r.c == 2
        assert r.ms >= 0


def test_scan_pairs_jobs_do_not_change_results():
    ls = [23, 67, 89, 199, 331, 353, 419, 463, 617, 661]
    seq = [(r.l, r.expp) for r in scan_pairs(11, ls)]
    par = [(r.l, r.expp) for r in scan_pairs(11, ls, jobs=3)]
    assert seq == par


def test_scan_cache_round_trip(tmp_path):
    path = tmp_path / "scan.jsonl"
    cache = ScanCache(path)
    recs = list(scan_pairs(11, [23, 67, 89], cache=cache))
    assert len(cache) == 3
    # a fresh cache object replays the same records, ms included
    again = list(scan_pairs(11, [23, 67, 89], cache=ScanCache(path)))
    assert again == recs


def test_scan_cache_put_is_idempotent(tmp_path):
    path = tmp_path / "scan.jsonl"
    cache = ScanCache(path)
    rec = ScanRecord(p=11, l=23, c=2, g=5, expp=(2,), ms=7)
    cache.put(rec)
    cache.put(ScanRecord(p=11, l=23, c=2, g=5, expp=(2,), ms=99))
    assert cache.get(11, 23, 2, 5).ms == 7
    assert len(path.read_text().splitlines()) == 1


def test_scan_record_json_round_trip():
    rec = ScanRecord(p=37, l=1481, c=2, g=3, expp=(10, 34), ms=12)
    assert ScanRecord.from_json(rec.to_json()) == rec
    assert rec.exponent_set().members == (10, 34)


def test_density_scan_matches_manual_fold():
    ls = [149, 223, 593, 1259, 1481, 1777, 1999, 2221, 2591, 2887, 3109, 3257]
    table = density_scan(37, count=12)
    counts = [0] * 17
    for l in ls:
        for n in exponent_set_for(37, l):
            counts[n // 2 - 1] += 1
    assert table.processed == 12
    assert table.hits == sum(counts) == 2
    assert table.counts == tuple(counts)
    assert table.last_l == 3257


def test_density_scan_bound_equals_count_form():
    by_count = density_scan(37, count=12)
    by_bound = density_scan(37, bound=3257)
    assert by_count == by_bound
    with pytest.raises(ValueError):
        density_scan(37)


def test_density_scan_on_hit_events():
    events = []
    density_scan(37, count=12, on_hit=lambda *a: events.append(a))
    assert [(e[0], e[1], e[2]) for e in events] == [(5, 1, 1481), (9, 2, 2591)]
    # E_1481 = {30}: singleton snapshot with the lone count at n = 30
    assert events[0][3][14] == 1 and sum(events[0][3]) == 1
    # bookkeeping identity: the hit tally always equals the slot total
    assert all(e[1] == sum(e[3]) for e in events)


def test_density_table_accessors():
    table = DensityTable(p=37, counts=tuple(range(17)), processed=9, hits=5, last_l=149)
    assert table.count_for(2) == 0
    assert table.count_for(34) == 16
    assert table.render_vector() == "[" + ",".join(str(v) for v in range(17)) + "]"
    with pytest.raises(ValueError):
        table.count_for(3)
    with pytest.raises(ValueError):
        table.count_for(36)


@pytest.mark.long
def test_nonempty_sets_p37_up_to_bound():
    # every split prime below the bound, keyed by whether E_l is nonempty
    got = {}
    for rec in scan_pairs(37, split_primes(37, bound=NONEMPTY37_BOUND), jobs=8):
        if rec.expp:
            got[rec.l] = set(rec.expp)
    assert got == {l: set(e) for l, e in NONEMPTY37.items()}


@pytest.mark.long
def test_irregular_exponent_hits_p37():
    # the rare l whose exponent set contains the irregular exponent 32
    for l, want in sorted(IRREGULAR_HITS37.items()):
        es = exponent_set_for(37, l)
        assert 32 in es
        assert set(es.members) == want, l


@pytest.mark.long
def test_density157_checkpoints():
    checkpoints = {(nel, npp, l): tuple(vec) for nel, npp, l, vec in DENSITY157_CHECKPOINTS}
    seen = {}

    def on_hit(processed, hits, l, counts):
        key = (processed, hits, l)
        if key in checkpoints:
            seen[key] = counts

    count = max(nel for nel, _, _, _ in DENSITY157_CHECKPOINTS)
    table = density_scan(157, count=count, jobs=8, on_hit=on_hit)
    assert seen == checkpoints
    # the n=116 slot fills for the first time on the very last hit
    assert table.counts[57] == 1


def test_export_scan_csv(tmp_path):
    path = tmp_path / "out.csv"
    recs = [ScanRecord(p=11, l=23, c=2, g=5, expp=(2,), ms=1),
            ScanRecord(p=11, l=67, c=2, g=2, expp=(), ms=2)]
    export_scan_csv(recs, path)
    assert path.read_text().splitlines() == [
        "p,l,c,g,expp,ms",
        "11,23,2,5,2,1",
        "11,67,2,2,,2",
    ]
