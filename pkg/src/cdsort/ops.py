"""The two context-directed sorting operations, cdr and cds.

cdr (context-directed reversal) acts at one pointer (i, i+1): it is applicable
exactly when the entries of absolute value i and i+1 carry opposite signs, and
it reverses and negates the entries strictly between the pointer's two flank
cuts.  The entry on whose flank a cut falls lands inside the reversed block
when the flank faces it, which reproduces the usual left/left and right/right
case pictures without branching.

cds (context-directed swap) acts at a pair of distinct pointers p, q: it is
applicable exactly when the four occurrences alternate p..q..p..q in position
and each pointer's two occurrences sit on same-sign entries.  It exchanges the
segment between the first two cuts with the segment between the last two, with
no sign changes.

Both operations raise NotApplicableError when their context is absent; the
try_apply_* wrappers instead return the input unchanged plus a flag, for
simulation loops where silent no-ops are wanted.  Applying a no-op silently by
default would corrupt step counting, so it is never the default.

Module-level helpers prefixed with an underscore work on raw entries tuples
and skip validation; they are the kernels the search and sweep code runs on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm import Entries, SignedPermutation, as_entries, format_entries

Pointer = int                      # pointer (i, i+1) named by its low value i
CdrMove = Pointer
CdsMove = tuple[Pointer, Pointer]  # canonical order: lower pointer first


class NotApplicableError(Exception):
    """The requested operation's context is not present in the permutation."""


def _check_pointer(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise ValueError(f"pointer {i} out of range 1..{n - 1}")


# ---------------------------------------------------------------------------
# kernels on raw entries tuples


def _signs(entries: Sequence[int]) -> list[bool]:
    """sign[a] is True when the entry of absolute value a is positive."""
    sign = [False] * (len(entries) + 1)
    for v in entries:
        sign[abs(v)] = v > 0
    return sign


def _cdr_moves(entries: Sequence[int]) -> list[int]:
    sign = _signs(entries)
    return [i for i in range(1, len(entries)) if sign[i] != sign[i + 1]]


def _apply_cdr(entries: Entries, i: int) -> Entries:
    """Apply cdr at pointer i; assumes i is in range."""
    lo_idx = hi_idx = -1
    for j, v in enumerate(entries):
        a = abs(v)
        if a == i:
            lo_idx = j
        elif a == i + 1:
            hi_idx = j
    lo_pos = entries[lo_idx] > 0
    hi_pos = entries[hi_idx] > 0
    if lo_pos == hi_pos:
        raise NotApplicableError(
            f"cdr at pointer ({i},{i + 1}) needs opposite signs on entries "
            f"{entries[lo_idx]} and {entries[hi_idx]}"
        )
    # head cut of value i: after it when positive, before it when negative;
    # tail cut of value i+1: before it when positive, after it when negative.
    cut_head = lo_idx + 1 if lo_pos else lo_idx
    cut_tail = hi_idx if hi_pos else hi_idx + 1
    g1, g2 = (cut_head, cut_tail) if cut_head < cut_tail else (cut_tail, cut_head)
    return entries[:g1] + tuple(-v for v in reversed(entries[g1:g2])) + entries[g2:]


def _arcs(entries: Sequence[int]) -> list[tuple[int, int, int, int, bool]]:
    """Per pointer i (at index i-1): (key_lo, key_hi, cut_lo, cut_hi, homogeneous)
    with keys in increasing order, cuts paired to them, and ``homogeneous``
    True when both occurrences sit on same-sign entries."""
    n = len(entries)
    first: list = [None] * n  # slot i holds the first-seen occurrence of pointer i
    arcs: list = [None] * (n - 1)
    for j, v in enumerate(entries):
        a = abs(v)
        pos = v > 0
        if a < n:  # head of pointer a
            occ = (2 * (j + 1) + (1 if pos else 0), j + 1 if pos else j, pos)
            if first[a] is None:
                first[a] = occ
            else:
                arcs[a - 1] = _pair(first[a], occ)
        if a > 1:  # tail of pointer a-1
            occ = (2 * (j + 1) + (0 if pos else 1), j if pos else j + 1, pos)
            if first[a - 1] is None:
                first[a - 1] = occ
            else:
                arcs[a - 2] = _pair(first[a - 1], occ)
    return arcs


def _pair(o1, o2):
    if o1[0] > o2[0]:
        o1, o2 = o2, o1
    return (o1[0], o2[0], o1[1], o2[1], o1[2] == o2[2])


def _interleave(a1: int, a2: int, b1: int, b2: int) -> bool:
    """Do key intervals [a1,a2] and [b1,b2] strictly cross (not nest/disjoint)?"""
    return a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2


def _cds_moves(entries: Sequence[int]) -> list[CdsMove]:
    arcs = _arcs(entries)
    m = len(arcs)
    out = []
    for pi in range(m):
        k1, k2, _, _, homog = arcs[pi]
        if not homog:
            continue
        for qi in range(pi + 1, m):
            l1, l2, _, _, homog_q = arcs[qi]
            if homog_q and _interleave(k1, k2, l1, l2):
                out.append((pi + 1, qi + 1))
    return out


def _apply_cds(entries: Entries, p: int, q: int) -> Entries:
    """Apply cds at pointers p < q; assumes both in range and p != q."""
    arcs = _arcs(entries)
    k1, k2, cp1, cp2, homog_p = arcs[p - 1]
    l1, l2, cq1, cq2, homog_q = arcs[q - 1]
    if not _interleave(k1, k2, l1, l2):
        raise NotApplicableError(
            f"cds at pointers ({p},{p + 1}),({q},{q + 1}): occurrences do not alternate"
        )
    if not (homog_p and homog_q):
        raise NotApplicableError(
            f"cds at pointers ({p},{p + 1}),({q},{q + 1}): a pointer sits on opposite-sign entries"
        )
    cuts = sorted(((k1, cp1), (k2, cp2), (l1, cq1), (l2, cq2)))
    g1, g2, g3, g4 = (c for _, c in cuts)
    e = entries
    return e[:g1] + e[g3:g4] + e[g2:g3] + e[g1:g2] + e[g4:]


# ---------------------------------------------------------------------------
# public operations


def cdr_applicable(p, i: int) -> bool:
    """True when the entries of absolute value i and i+1 have opposite signs.

    >>> cdr_applicable((-2, 1, -4, 3), 2)
    True
    >>> cdr_applicable((1, 2), 1)
    False
    """
    entries = as_entries(p)
    _check_pointer(len(entries), i)
    sign = _signs(entries)
    return sign[i] != sign[i + 1]


def apply_cdr(p, i: int) -> SignedPermutation:
    """Reverse and negate the block delimited by pointer (i, i+1).

    >>> apply_cdr((-2, 1, -4, 3), 2).entries
    (4, -1, 2, 3)
    """
    entries = as_entries(p)
    _check_pointer(len(entries), i)
    return SignedPermutation(_apply_cdr(entries, i))


def try_apply_cdr(p, i: int) -> tuple[SignedPermutation, bool]:
    """Lenient cdr: (result, True) when applicable, (input, False) otherwise."""
    entries = as_entries(p)
    _check_pointer(len(entries), i)
    try:
        return SignedPermutation(_apply_cdr(entries, i)), True
    except NotApplicableError:
        return SignedPermutation(entries), False


def cds_applicable(p, i: int, j: int) -> bool:
    """True when the four occurrences of pointers i and j alternate and each
    pointer sits on same-sign entries.

    >>> cds_applicable((3, 6, 5, 2, 4, 8, 1, 7), 3, 6)
    True
    >>> cds_applicable((1, 2, 3, 4), 1, 3)
    False
    """
    entries = as_entries(p)
    n = len(entries)
    _check_pointer(n, i)
    _check_pointer(n, j)
    if i == j:
        raise ValueError(f"cds needs two distinct pointers, got {i} twice")
    arcs = _arcs(entries)
    k1, k2, _, _, homog_i = arcs[i - 1]
    l1, l2, _, _, homog_j = arcs[j - 1]
    return homog_i and homog_j and _interleave(k1, k2, l1, l2)


def apply_cds(p, i: int, j: int) -> SignedPermutation:
    """Exchange the two blocks delimited by the alternating pointers i and j.

    >>> apply_cds((3, 6, 5, 2, 4, 8, 1, 7), 3, 6).entries
    (3, 4, 8, 1, 5, 2, 6, 7)
    """
    entries = as_entries(p)
    n = len(entries)
    _check_pointer(n, i)
    _check_pointer(n, j)
    if i == j:
        raise ValueError(f"cds needs two distinct pointers, got {i} twice")
    return SignedPermutation(_apply_cds(entries, min(i, j), max(i, j)))


def try_apply_cds(p, i: int, j: int) -> tuple[SignedPermutation, bool]:
    """Lenient cds: (result, True) when applicable, (input, False) otherwise."""
    entries = as_entries(p)
    n = len(entries)
    _check_pointer(n, i)
    _check_pointer(n, j)
    if i == j:
        raise ValueError(f"cds needs two distinct pointers, got {i} twice")
    try:
        return SignedPermutation(_apply_cds(entries, min(i, j), max(i, j))), True
    except NotApplicableError:
        return SignedPermutation(entries), False


def applicable_cdr_moves(p) -> tuple[CdrMove, ...]:
    """All pointers at which cdr applies, in increasing order."""
    return tuple(_cdr_moves(as_entries(p)))


def applicable_cds_moves(p) -> tuple[CdsMove, ...]:
    """All unordered pointer pairs at which cds applies, lower pointer first,
    sorted lexicographically."""
    return tuple(_cds_moves(as_entries(p)))


def is_cdr_fixed_point(p) -> bool:
    return not _cdr_moves(as_entries(p))


def is_cds_fixed_point(p) -> bool:
    return not _cds_moves(as_entries(p))


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceStep:
    kind: str                       # "cdr" | "cds"
    move: CdrMove | CdsMove
    result: SignedPermutation

    def describe_move(self) -> str:
        if self.kind == "cdr":
            i = self.move
            return f"({i},{i + 1})"
        i, j = self.move
        return f"({i},{i + 1}),({j},{j + 1})"


@dataclass(frozen=True)
class SortTrace:
    """An ordered record of applied operations, replayable from the initial
    permutation."""

    initial: SignedPermutation
    steps: tuple[TraceStep, ...]

    @classmethod
    def from_moves(cls, initial, moves) -> "SortTrace":
        """Build a trace by applying ("cdr", i) / ("cds", (i, j)) moves in order."""
        current = SignedPermutation(as_entries(initial))
        start = current
        steps = []
        for kind, move in moves:
            if kind == "cdr":
                current = apply_cdr(current, move)
            elif kind == "cds":
                current = apply_cds(current, *move)
            else:
                raise ValueError(f"unknown move kind {kind!r}")
            steps.append(TraceStep(kind, move, current))
        return cls(start, tuple(steps))

    @property
    def final(self) -> SignedPermutation:
        return self.steps[-1].result if self.steps else self.initial

    def moves(self) -> list[tuple[str, CdrMove | CdsMove]]:
        return [(s.kind, s.move) for s in self.steps]

    def replays(self) -> bool:
        """Re-apply every move and confirm each recorded intermediate state."""
        current = self.initial
        for step in self.steps:
            if step.kind == "cdr":
                current = apply_cdr(current, step.move)
            else:
                current = apply_cds(current, *step.move)
            if current != step.result:
                return False
        return True

    def __str__(self) -> str:
        lines = [f"initial {format_entries(self.initial.entries)}"]
        for k, step in enumerate(self.steps, 1):
            lines.append(
                f"step {k} {step.kind} {step.describe_move()} "
                f"{format_entries(step.result.entries)}"
            )
        lines.append(f"final {format_entries(self.final.entries)}")
        return "\n".join(lines)
