"""Bulk verification sweeps over signed permutations.

Each sweep checks one structural property on many inputs and emits one record
per input plus a summary, as diff-stable text:

    record  := <property> TAB <PASS|FAIL> TAB <permutation> TAB <detail>
    summary := "# summary property=<p> n=<n> mode=<exhaustive|samples> "
               "cases=<c> failures=<f> seed=<s>"

Exhaustive mode visits all 2^n * n! signed permutations of length n in a fixed
order.  Sample mode draws permutations of length n uniformly at random from a
seeded generator, so a (seed, n, samples) triple always reproduces the same
records.

Properties:

* parity           -- all maximal cdr run lengths share one parity.
* same-length      -- all cdr runs sorting the input have one length.
* rescue           -- every reachable cdr fixed point of a cdr-sortable input
                      is finished by greedy cds, and is all-positive.
* steps            -- k + 2m equals the sorting length for every reachable
                      (fixed point, run length) pair of a cdr-sortable input.
* cds-same-length  -- all maximal cds run lengths are equal.
* commutation      -- building the overlap graph commutes with cdr/gcdr at
                      every applicable pointer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import analysis, ops
from .analysis import _Tracker
from .graph import build_overlap_graph, gcdr, is_total_terminal, random_oriented_graph
from .perm import (
    Entries,
    all_signed_permutations,
    format_entries,
    identity_entries,
    random_signed_permutation,
)

DEFAULT_SWEEP_BUDGET = 10_000_000


@dataclass(frozen=True)
class CheckRecord:
    prop: str
    subject: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{self.prop}\t{'PASS' if self.ok else 'FAIL'}\t{self.subject}\t{self.detail}"


@dataclass(frozen=True)
class SweepResult:
    prop: str
    n: int
    mode: str
    seed: int | None
    records: tuple[CheckRecord, ...]

    @property
    def cases(self) -> int:
        return len(self.records)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if not r.ok)

    def summary(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        return (f"# summary property={self.prop} n={self.n} mode={self.mode} "
                f"cases={self.cases} failures={self.failures} seed={seed}")


class _SweepContext:
    """Shared memo tables for one sweep; reused across its inputs."""

    def __init__(self, budget: int):
        self.tracker = _Tracker(budget)
        self.fp_memo: dict = {}
        self.maximal_memo: dict = {}
        self.cds_memo: dict = {}
        self.greedy_cache: dict = {}

    def fixed_points(self, entries: Entries):
        return analysis._fixed_point_lengths(entries, self.fp_memo, self.tracker)

    def maximal_lengths(self, entries: Entries):
        return analysis._maximal_lengths(entries, self.maximal_memo, self.tracker)

    def cds_lengths(self, entries: Entries):
        return analysis._cds_maximal_lengths(entries, self.cds_memo, self.tracker)

    def greedy_cds(self, entries: Entries):
        hit = self.greedy_cache.get(entries)
        if hit is None:
            end, steps, _ = analysis._greedy_cds_run(entries)
            hit = (end, steps)
            self.greedy_cache[entries] = hit
        return hit


def _check_parity(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    lengths = sorted(ctx.maximal_lengths(entries))
    ok = len({length % 2 for length in lengths}) == 1
    return ok, "lengths=" + ",".join(map(str, lengths))


def _check_same_length(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    lengths = ctx.fixed_points(entries).get(identity_entries(len(entries)))
    if lengths is None:
        return True, "not-cdr-sortable"
    return len(lengths) == 1, "sorting-lengths=" + ",".join(map(str, sorted(lengths)))


def _check_rescue(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    target = identity_entries(len(entries))
    fps = ctx.fixed_points(entries)
    if target not in fps:
        return True, "not-cdr-sortable"
    bad = 0
    for fp in fps:
        end, _ = ctx.greedy_cds(fp)
        if end != target or any(v < 0 for v in fp):
            bad += 1
    return bad == 0, f"fixed-points={len(fps)} unrescued={bad}"


def _check_steps(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    target = identity_entries(len(entries))
    fps = ctx.fixed_points(entries)
    if target not in fps:
        return True, "not-cdr-sortable"
    sort_lengths = fps[target]
    if len(sort_lengths) != 1:
        return False, "sorting-lengths=" + ",".join(map(str, sorted(sort_lengths)))
    sorting_length = next(iter(sort_lengths))
    pairs = 0
    bad = 0
    for fp, ks in fps.items():
        end, m = ctx.greedy_cds(fp)
        if end != target:
            bad += len(ks)
            pairs += len(ks)
            continue
        for k in ks:
            pairs += 1
            if k + 2 * m != sorting_length:
                bad += 1
    return bad == 0, f"runs={pairs} violations={bad} sorting-length={sorting_length}"


def _check_cds_same_length(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    lengths = sorted(ctx.cds_lengths(entries))
    return len(lengths) == 1, "lengths=" + ",".join(map(str, lengths))


def _check_commutation(entries: Entries, ctx: _SweepContext) -> tuple[bool, str]:
    g = build_overlap_graph(entries)
    moves = ops._cdr_moves(entries)
    bad = 0
    for i in moves:
        if build_overlap_graph(ops._apply_cdr(entries, i)) != gcdr(g, i):
            bad += 1
    return bad == 0, f"pointers={len(moves)} violations={bad}"


_CHECKS: dict[str, Callable[[Entries, _SweepContext], tuple[bool, str]]] = {
    "parity": _check_parity,
    "same-length": _check_same_length,
    "rescue": _check_rescue,
    "steps": _check_steps,
    "cds-same-length": _check_cds_same_length,
    "commutation": _check_commutation,
}

PROPERTIES = tuple(sorted(_CHECKS))


def _sample_inputs(n: int, samples: int, seed: int) -> Iterator[Entries]:
    rng = random.Random(seed)
    for _ in range(samples):
        yield random_signed_permutation(rng, n)


def run_sweep(prop: str, n: int, *, exhaustive: bool = False, samples: int = 0,
              seed: int = 0, budget: int = DEFAULT_SWEEP_BUDGET) -> SweepResult:
    """Run one property sweep.  Exactly one of exhaustive/samples selects the
    input set; sample mode draws permutations of length n."""
    if prop not in _CHECKS:
        raise ValueError(f"unknown property {prop!r}; known: {', '.join(PROPERTIES)}")
    if exhaustive == bool(samples):
        raise ValueError("choose exactly one of exhaustive or samples")
    check = _CHECKS[prop]
    ctx = _SweepContext(budget)
    if exhaustive:
        inputs: Iterable[Entries] = all_signed_permutations(n)
        mode, used_seed = "exhaustive", None
    else:
        inputs = _sample_inputs(n, samples, seed)
        mode, used_seed = "samples", seed
    records = []
    for entries in inputs:
        ok, detail = check(entries, ctx)
        records.append(CheckRecord(prop, format_entries(entries), ok, detail))
    return SweepResult(prop, n, mode, used_seed, tuple(records))


def probe_total_sequence_lengths(num_graphs: int, max_vertices: int, seed: int,
                                 budget: int = DEFAULT_SWEEP_BUDGET) -> list[str]:
    """Empirical probe: on random oriented graphs, do all total sequences have
    one length?  Returns descriptions of counterexample candidates (expected
    empty; any hit would answer a standing question)."""
    rng = random.Random(seed)
    tracker = _Tracker(budget)
    hits = []
    for _ in range(num_graphs):
        g = random_oriented_graph(rng, rng.randint(1, max_vertices))
        lengths = _total_lengths(g, {}, tracker)
        if len(lengths) > 1:
            hits.append(f"total lengths {sorted(lengths)} on {g}")
    return hits


def _total_lengths(g, memo: dict, tracker: _Tracker) -> frozenset[int]:
    res = memo.get(g)
    if res is not None:
        return res
    tracker.spend()
    if not g.oriented:
        res = frozenset({0}) if is_total_terminal(g) else frozenset()
    else:
        acc: set[int] = set()
        for v in sorted(g.oriented):
            acc.update(length + 1 for length in _total_lengths(gcdr(g, v), memo, tracker))
        res = frozenset(acc)
    memo[g] = res
    return res
