"""Sortability search, sequence machinery, and executable theorem checks.

Ground truth for sortability is exhaustive search over the cdr move graph,
memoized by permutation.  The overlap-graph criterion ("no unoriented
component") is exposed separately: it is silent about isolated unoriented
vertices whose arc is not an adjacency -- [2, 1] has no component at all, no
applicable move, and is not the identity -- so criterion and search can
disagree.  Disagreements are reported, never hidden.

Budgets bound the number of distinct states a search may expand.  Running out
raises BudgetExceededError, except where a partial answer is meaningful:
cdr_sortable_search returns (None, None) for "undecided" and
enumerate_cdr_fixed_points returns a partial result flagged incomplete.

TheoremViolationError marks outcomes the structure theory rules out (a cdr
fixed point of a sortable permutation that greedy cds cannot finish, a missing
safe vertex, a failed total extension).  Hitting one means a bug, not bad
input.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import graph as graphmod
from . import ops
from .graph import OrientedGraph, build_overlap_graph, gcdr, has_unoriented_component
from .perm import (
    Entries,
    SignedPermutation,
    all_signed_permutations,
    as_entries,
    collapse_adjacencies,
    identity_entries,
    is_identity,
    reverse_identity_entries,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000

_ZERO = frozenset({0})


class BudgetExceededError(RuntimeError):
    """The configured search budget ran out before the question was decided."""


class TheoremViolationError(RuntimeError):
    """A structurally guaranteed outcome failed to materialize."""


class _Tracker:
    __slots__ = ("remaining",)

    def __init__(self, budget: int):
        self.remaining = budget

    def spend(self) -> None:
        if self.remaining <= 0:
            raise BudgetExceededError("search budget exhausted")
        self.remaining -= 1


# ---------------------------------------------------------------------------
# move-graph dynamic programming (kernels shared with the sweep runner)


def _fixed_point_lengths(entries: Entries, memo: dict, tracker: _Tracker) -> dict:
    """fixed point -> frozenset of lengths of all cdr runs from ``entries``
    ending there.  Every maximal run ends at some fixed point, so this covers
    every run without enumerating paths."""
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    moves = ops._cdr_moves(entries)
    if not moves:
        res = {entries: _ZERO}
    else:
        acc: dict[Entries, frozenset[int]] = {}
        for i in moves:
            for fp, lengths in _fixed_point_lengths(
                ops._apply_cdr(entries, i), memo, tracker
            ).items():
                shifted = frozenset(length + 1 for length in lengths)
                prev = acc.get(fp)
                acc[fp] = shifted if prev is None else prev | shifted
        res = acc
    memo[entries] = res
    return res


def _maximal_lengths(entries: Entries, memo: dict, tracker: _Tracker) -> frozenset[int]:
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    moves = ops._cdr_moves(entries)
    if not moves:
        res = _ZERO
    else:
        acc: set[int] = set()
        for i in moves:
            acc.update(
                length + 1
                for length in _maximal_lengths(ops._apply_cdr(entries, i), memo, tracker)
            )
        res = frozenset(acc)
    memo[entries] = res
    return res


def _maximal_length_counts(entries: Entries, memo: dict, tracker: _Tracker) -> Counter:
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    moves = ops._cdr_moves(entries)
    if not moves:
        res = Counter({0: 1})
    else:
        res = Counter()
        for i in moves:
            for length, count in _maximal_length_counts(
                ops._apply_cdr(entries, i), memo, tracker
            ).items():
                res[length + 1] += count
    memo[entries] = res
    return res


def _cds_maximal_lengths(entries: Entries, memo: dict, tracker: _Tracker) -> frozenset[int]:
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    moves = ops._cds_moves(entries)
    if not moves:
        res = _ZERO
    else:
        acc: set[int] = set()
        for pq in moves:
            acc.update(
                length + 1
                for length in _cds_maximal_lengths(ops._apply_cds(entries, *pq), memo, tracker)
            )
        res = frozenset(acc)
    memo[entries] = res
    return res


def _cds_fixed_points(entries: Entries, memo: dict, tracker: _Tracker) -> frozenset[Entries]:
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    moves = ops._cds_moves(entries)
    if not moves:
        res = frozenset({entries})
    else:
        acc: set[Entries] = set()
        for pq in moves:
            acc |= _cds_fixed_points(ops._apply_cds(entries, *pq), memo, tracker)
        res = frozenset(acc)
    memo[entries] = res
    return res


def _greedy_cds_run(entries: Entries) -> tuple[Entries, int, list]:
    """Apply the first applicable cds (canonical order) until none remains.
    Returns (end state, step count, moves taken)."""
    steps = 0
    taken = []
    while True:
        moves = ops._cds_moves(entries)
        if not moves:
            return entries, steps, taken
        entries = ops._apply_cds(entries, *moves[0])
        taken.append(moves[0])
        steps += 1


def _witness_from_memo(entries: Entries, target: Entries, memo: dict) -> tuple[int, ...]:
    """Recover one sorting move sequence from a completed fixed-point memo."""
    witness = []
    while entries != target:
        for i in ops._cdr_moves(entries):
            child = ops._apply_cdr(entries, i)
            if target in memo[child]:
                witness.append(i)
                entries = child
                break
        else:  # pragma: no cover - memo promised reachability
            raise TheoremViolationError("witness reconstruction lost the target")
    return tuple(witness)


# ---------------------------------------------------------------------------
# sortability


def cdr_sortable_search(p, budget: int = DEFAULT_BUDGET, *, reduce_adjacencies: bool = False):
    """Decide cdr-sortability to the identity by exhaustive memoized search.

    Returns (True, witness pointer tuple), (False, None), or (None, None) when
    the budget ran out undecided.  With reduce_adjacencies the search runs on
    adjacency-collapsed states (equivalent, often far smaller); the witness is
    then unavailable and None is returned in its place.
    """
    return _sortable_search(as_entries(p), identity_entries, budget, reduce_adjacencies)


def reverse_cdr_sortable_search(p, budget: int = DEFAULT_BUDGET, *,
                                reduce_adjacencies: bool = False):
    """As cdr_sortable_search, with the reverse identity as target."""
    return _sortable_search(as_entries(p), reverse_identity_entries, budget,
                            reduce_adjacencies)


def _sortable_search(entries, target_of, budget, reduce_adjacencies):
    tracker = _Tracker(budget)
    if reduce_adjacencies:
        # Collapsed states: anything collapsing to (1,) is an identity, and to
        # (-1,) a reverse identity, of its original length.
        try:
            found = _reduced_search(collapse_adjacencies(entries), target_of(1), {}, tracker)
        except BudgetExceededError:
            return None, None
        return found, None
    target = target_of(len(entries))
    memo: dict = {}
    try:
        fps = _fixed_point_lengths(entries, memo, tracker)
    except BudgetExceededError:
        return None, None
    if target not in fps:
        return False, None
    return True, _witness_from_memo(entries, target, memo)


def _reduced_search(entries, target, memo, tracker):
    if entries == target:
        return True
    res = memo.get(entries)
    if res is not None:
        return res
    tracker.spend()
    memo[entries] = False
    for i in ops._cdr_moves(entries):
        child = collapse_adjacencies(ops._apply_cdr(entries, i))
        if _reduced_search(child, target, memo, tracker):
            memo[entries] = True
            return True
    return False


def cdr_sorting_lengths(p, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    """Lengths of all cdr move sequences sorting p to the identity (empty when
    p is not cdr-sortable)."""
    entries = as_entries(p)
    fps = _fixed_point_lengths(entries, {}, _Tracker(budget))
    return fps.get(identity_entries(len(entries)), frozenset())


def cdr_sortable_criterion(p) -> bool:
    """The overlap-graph test: no unoriented component.  Sufficient-direction
    screen only; see criterion_discrepancies for where it and the search
    disagree."""
    return not has_unoriented_component(build_overlap_graph(p))


def criterion_discrepancies(n: int, budget: int = DEFAULT_BUDGET):
    """All length-n permutations where the graph criterion and the search
    disagree, as (SignedPermutation, criterion, sortable) triples.  Each hit is
    also logged.  Exhaustive: intended for small n."""
    out = []
    memo: dict = {}
    tracker = _Tracker(budget)
    target = identity_entries(n)
    for entries in all_signed_permutations(n):
        crit = cdr_sortable_criterion(entries)
        sortable = target in _fixed_point_lengths(entries, memo, tracker)
        if crit != sortable:
            logger.info("criterion/search disagreement at %s: criterion=%s search=%s",
                        entries, crit, sortable)
            out.append((SignedPermutation(entries), crit, sortable))
    return out


# ---------------------------------------------------------------------------
# fixed points and maximal sequences


@dataclass(frozen=True)
class FixedPointEnumeration:
    """Reachable cdr fixed points with the lengths of the runs reaching them.
    When incomplete (budget ran out) the step counts degrade to first-visit
    depths of a breadth-first sweep."""

    by_fixed_point: dict
    complete: bool


def enumerate_cdr_fixed_points(p, budget: int = DEFAULT_BUDGET) -> FixedPointEnumeration:
    entries = as_entries(p)
    try:
        fps = _fixed_point_lengths(entries, {}, _Tracker(budget))
    except BudgetExceededError:
        return FixedPointEnumeration(_bfs_fixed_points(entries, budget), complete=False)
    return FixedPointEnumeration(
        {SignedPermutation(fp): tuple(sorted(lengths)) for fp, lengths in fps.items()},
        complete=True,
    )


def _bfs_fixed_points(entries: Entries, max_states: int) -> dict:
    seen = {entries: 0}
    frontier = [entries]
    found: dict = {}
    while frontier and len(seen) < max_states:
        nxt = []
        for state in frontier:
            depth = seen[state]
            moves = ops._cdr_moves(state)
            if not moves:
                found.setdefault(SignedPermutation(state), (depth,))
                continue
            for i in moves:
                child = ops._apply_cdr(state, i)
                if child not in seen:
                    seen[child] = depth + 1
                    nxt.append(child)
                    if len(seen) >= max_states:
                        break
        frontier = nxt
    return found


def maximal_sequence_lengths(p, budget: int = DEFAULT_BUDGET) -> Counter:
    """Multiset of lengths over all maximal cdr move sequences from p, as a
    Counter mapping length -> number of sequences."""
    return Counter(_maximal_length_counts(as_entries(p), {}, _Tracker(budget)))


def parity(p) -> str:
    """Parity ("even"/"odd") of the length of one greedily played maximal cdr
    sequence; length parity is an invariant of the permutation, so one playout
    settles it."""
    entries = as_entries(p)
    length = 0
    while True:
        moves = ops._cdr_moves(entries)
        if not moves:
            return "odd" if length % 2 else "even"
        entries = ops._apply_cdr(entries, moves[0])
        length += 1


# ---------------------------------------------------------------------------
# indiscriminate and greedy runs


def indiscriminate_cdr_trace(p, *, prefix_moves: Sequence[int] = (), rng=None) -> ops.SortTrace:
    """Run cdr to a fixed point, choosing the lowest applicable pointer at each
    step (or a seeded random one when rng is given).  prefix_moves are applied
    first, strictly, and count as ordinary steps."""
    start = as_entries(p)
    entries = start
    taken = []
    for i in prefix_moves:
        entries = ops._apply_cdr(entries, i)
        taken.append(("cdr", i))
    while True:
        moves = ops._cdr_moves(entries)
        if not moves:
            break
        i = moves[0] if rng is None else rng.choice(moves)
        entries = ops._apply_cdr(entries, i)
        taken.append(("cdr", i))
    return ops.SortTrace.from_moves(start, taken)


def cds_sortable_greedy(p, target: str = "identity") -> tuple[bool, int]:
    """Repeatedly apply the first applicable cds until quiescent.  Returns
    (reached target, step count).  target: "identity" or "reverse_identity".
    Greedy suffices for the YES answer: when a permutation is cds-sortable,
    every maximal cds run sorts it, and all such runs have one length."""
    entries = as_entries(p)
    goal = _target_entries(target, len(entries))
    end, steps, _ = _greedy_cds_run(entries)
    return end == goal, steps


def greedy_cds_trace(p, target: str = "identity") -> tuple[ops.SortTrace, bool]:
    entries = as_entries(p)
    goal = _target_entries(target, len(entries))
    end, _, taken = _greedy_cds_run(entries)
    trace = ops.SortTrace.from_moves(entries, [("cds", pq) for pq in taken])
    return trace, end == goal


def _target_entries(target: str, n: int) -> Entries:
    if target == "identity":
        return identity_entries(n)
    if target == "reverse_identity":
        return reverse_identity_entries(n)
    raise ValueError(f"unknown target {target!r}")


# ---------------------------------------------------------------------------
# rescue and step counting


@dataclass(frozen=True)
class RescuedFixedPoint:
    permutation: SignedPermutation
    cdr_step_lengths: tuple[int, ...]  # lengths of the cdr runs reaching it
    cds_steps: int                     # greedy cds steps from it
    rescued: bool                      # greedy cds reached the identity


@dataclass(frozen=True)
class RescueReport:
    input: SignedPermutation
    fixed_points: tuple[RescuedFixedPoint, ...]
    complete: bool

    @property
    def all_rescued(self) -> bool:
        return all(fp.rescued for fp in self.fixed_points)


def verify_rescue(p, budget: int = DEFAULT_BUDGET) -> RescueReport:
    """For a cdr-sortable permutation, check that greedy cds finishes every
    reachable cdr fixed point."""
    perm = SignedPermutation(as_entries(p))
    sortable, _ = cdr_sortable_search(perm, budget)
    if sortable is None:
        raise BudgetExceededError("sortability undecided within budget")
    if not sortable:
        raise ValueError(f"{perm} is not cdr-sortable; the rescue property does not apply")
    enum = enumerate_cdr_fixed_points(perm, budget)
    goal = identity_entries(len(perm))
    rescued = []
    for fp, lengths in sorted(enum.by_fixed_point.items(), key=lambda kv: (kv[1], kv[0].entries)):
        end, steps, _ = _greedy_cds_run(fp.entries)
        rescued.append(RescuedFixedPoint(fp, lengths, steps, end == goal))
    return RescueReport(perm, tuple(rescued), enum.complete)


class StepCounts(NamedTuple):
    k: int      # cdr steps of the indiscriminate run to a fixed point
    m: int      # greedy cds steps from that fixed point to the identity
    total: int  # k + 2m, the invariant cdr sorting length


def cdr_steps(p, *, prefix_moves: Sequence[int] = (), budget: int = DEFAULT_BUDGET) -> StepCounts:
    """Count k cdr steps to a fixed point plus m cds steps to finish; k + 2m
    is checked against the invariant sorting length before returning."""
    entries = as_entries(p)
    lengths = cdr_sorting_lengths(entries, budget)
    if not lengths:
        raise ValueError(f"{SignedPermutation(entries)} is not cdr-sortable")
    if len(lengths) != 1:  # pragma: no cover - ruled out by the same-length property
        raise TheoremViolationError(f"multiple sorting lengths {sorted(lengths)}")
    sorting_length = next(iter(lengths))
    trace = indiscriminate_cdr_trace(entries, prefix_moves=prefix_moves)
    k = len(trace.steps)
    end, m, _ = _greedy_cds_run(trace.final.entries)
    if not is_identity(end):
        raise TheoremViolationError(
            f"greedy cds failed to rescue fixed point {SignedPermutation(trace.final.entries)}"
        )
    total = k + 2 * m
    if total != sorting_length:
        raise TheoremViolationError(
            f"k + 2m = {total} but every sorting run has length {sorting_length}"
        )
    return StepCounts(k, m, total)


# ---------------------------------------------------------------------------
# oriented sequences on the overlap graph


def classify_sequence(p, seq: Sequence[int]) -> str:
    """Classify a pointer sequence against p's overlap graph: "invalid" (some
    pointer not oriented at its turn), else "total" / "maximal" / "oriented"
    by the end state."""
    g = build_overlap_graph(p)
    for v in seq:
        if v not in g.oriented:
            return "invalid"
        g = gcdr(g, v)
    if graphmod.is_total_terminal(g):
        return "total"
    if graphmod.is_terminal(g):
        return "maximal"
    return "oriented"


def greedy_safe_total_sequence(p) -> tuple[int, ...]:
    """A total sequence of oriented vertices, built by always playing the
    lowest vertex whose gcdr leaves no unoriented component.  Requires the
    overlap graph of p to have no unoriented component."""
    g = build_overlap_graph(p)
    if has_unoriented_component(g):
        raise ValueError("overlap graph has an unoriented component; no total sequence exists")
    seq = []
    while g.oriented:
        for v in sorted(g.oriented):
            nxt = gcdr(g, v)
            if not has_unoriented_component(nxt):
                seq.append(v)
                g = nxt
                break
        else:
            raise TheoremViolationError("no safe oriented vertex found")
    if not graphmod.is_total_terminal(g):  # pragma: no cover - safety net
        raise TheoremViolationError("safe play ended in a non-total terminal")
    return tuple(seq)


def extend_to_total(p, maxseq: Sequence[int], budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Extend a maximal-but-not-total pointer sequence to a total one by
    inserting one even-length run of vertices before a suffix.  Searches
    insertion sizes small-first, insertion points left-first, vertex choices
    in increasing order; the first extension found is returned.  A total input
    is returned unchanged."""
    maxseq = tuple(maxseq)
    kind = classify_sequence(p, maxseq)
    if kind == "total":
        return maxseq
    if kind != "maximal":
        raise ValueError(f"sequence {maxseq} is {kind}, not maximal, for {SignedPermutation(as_entries(p))}")
    if not maxseq:
        # maximal-and-empty means no oriented vertex at all, yet edges remain:
        # an unoriented component, outside this operation's remit
        raise ValueError("graph has no oriented vertex; nothing can extend the empty sequence")
    g0 = build_overlap_graph(p)
    prefix_graphs = [g0]
    for v in maxseq:
        prefix_graphs.append(gcdr(prefix_graphs[-1], v))
    tracker = _Tracker(budget)
    n_vertices = len(g0.vertices)
    m = len(maxseq)
    for k in range(1, (n_vertices - m) // 2 + 1):
        for cut_at in range(m):
            suffix = maxseq[cut_at:]
            inserted = _insertion_dfs(prefix_graphs[cut_at], 2 * k, suffix, tracker)
            if inserted is not None:
                return maxseq[:cut_at] + inserted + suffix
    raise TheoremViolationError(
        f"no even insertion extends {maxseq} to a total sequence"
    )


def _insertion_dfs(g: OrientedGraph, depth: int, suffix, tracker: _Tracker):
    if depth == 0:
        h = g
        for v in suffix:
            if v not in h.oriented:
                return None
            h = gcdr(h, v)
        return () if graphmod.is_total_terminal(h) else None
    for v in sorted(g.oriented):
        tracker.spend()
        rest = _insertion_dfs(gcdr(g, v), depth - 1, suffix, tracker)
        if rest is not None:
            return (v,) + rest
    return None


# ---------------------------------------------------------------------------
# cds move-tree oracles (used by the sweeps and as cross-checks)


def cds_maximal_lengths(p, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    """Lengths of all maximal cds move sequences from p."""
    return _cds_maximal_lengths(as_entries(p), {}, _Tracker(budget))


def cds_reachable_fixed_points(p, budget: int = DEFAULT_BUDGET) -> frozenset[SignedPermutation]:
    """All cds fixed points reachable from p by any cds move sequence."""
    return frozenset(
        SignedPermutation(e)
        for e in _cds_fixed_points(as_entries(p), {}, _Tracker(budget))
    )
