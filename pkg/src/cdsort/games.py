"""Two-player gcdr games on oriented graphs, normal and misere play.

Players alternate selecting an oriented vertex and replacing the graph by its
gcdr there; the game ends when no oriented vertex remains.  Under the normal
rule the player who makes the last move wins; under misere, loses.  A player
whose turn arrives with no legal move has made no last move: they lose under
normal play and win under misere.

Since every playout from a position has the same length parity, the winner is
forced regardless of strategy; winner_by_parity plays one greedy line and
reads the answer off its length.  winner_by_minimax is the independent
game-tree oracle used to validate that shortcut.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analysis import BudgetExceededError
from .graph import OrientedGraph, build_overlap_graph, gcdr

ONE = "ONE"
TWO = "TWO"
RULES = ("normal", "misere")


class IllegalMoveError(ValueError):
    """The chosen vertex is not a legal move in this state."""


def _other(player: str) -> str:
    return TWO if player == ONE else ONE


@dataclass(frozen=True)
class GameState:
    graph: OrientedGraph
    to_move: str = ONE
    rule: str = "normal"

    def __post_init__(self):
        if self.to_move not in (ONE, TWO):
            raise ValueError(f"to_move must be ONE or TWO, got {self.to_move!r}")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")


def state_from_permutation(p, rule: str = "normal") -> GameState:
    return GameState(build_overlap_graph(p), ONE, rule)


def legal_moves(state: GameState) -> tuple[int, ...]:
    """The oriented vertices, in increasing label order."""
    return state.graph.oriented_vertices()


def play(state: GameState, v: int) -> GameState:
    if v not in state.graph.oriented:
        raise IllegalMoveError(f"vertex {v} is not an oriented vertex of the current graph")
    return GameState(gcdr(state.graph, v), _other(state.to_move), state.rule)


def _playout_length(graph: OrientedGraph) -> int:
    length = 0
    while graph.oriented:
        graph = gcdr(graph, min(graph.oriented))
        length += 1
    return length


def winner_by_parity(state: GameState) -> str:
    """Winner under optimal play, decided by the parity of one playout.

    Playout length parity from a fixed position is play-independent, so the
    mover makes the last move iff the length is odd; normal play rewards that,
    misere punishes it (and a zero-length game means the mover cannot move at
    all: a normal-play loss, a misere win).
    """
    length = _playout_length(state.graph)
    mover_wins = (length % 2 == 1) if state.rule == "normal" else (length % 2 == 0)
    return state.to_move if mover_wins else _other(state.to_move)


def winner_by_minimax(state: GameState, budget: int = 1_000_000, memo: dict | None = None) -> str:
    """Exact winner by full game-tree traversal with memoization.  Intended
    for small graphs; the budget caps distinct (graph, rule) positions."""
    if memo is None:
        memo = {}
    counter = [budget]
    mover_wins = _minimax(state.graph, state.rule, memo, counter)
    return state.to_move if mover_wins else _other(state.to_move)


def _minimax(graph: OrientedGraph, rule: str, memo: dict, counter: list) -> bool:
    key = (graph, rule)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if counter[0] <= 0:
        raise BudgetExceededError("minimax budget exhausted")
    counter[0] -= 1
    if not graph.oriented:
        res = rule == "misere"
    else:
        res = any(
            not _minimax(gcdr(graph, v), rule, memo, counter)
            for v in sorted(graph.oriented)
        )
    memo[key] = res
    return res


@dataclass(frozen=True)
class PlyRecord:
    ply: int
    player: str
    vertex: int
    remaining: int  # oriented vertices left after the move

    def line(self) -> str:
        v = self.vertex
        return f"ply {self.ply} {self.player} ({v},{v + 1}) remaining={self.remaining}"


def playout(state: GameState, moves: Sequence[int] | None = None) -> tuple[PlyRecord, ...]:
    """Play a full game and record it, one line-ready record per ply.  With
    moves=None both players greedily take the lowest legal vertex; otherwise
    the given vertices are played in order and must end the game."""
    records = []
    ply = 0
    chosen = iter(moves) if moves is not None else None
    while state.graph.oriented:
        if chosen is None:
            v = min(state.graph.oriented)
        else:
            try:
                v = next(chosen)
            except StopIteration:
                raise IllegalMoveError("move list ended before the game did") from None
        player = state.to_move
        state = play(state, v)
        ply += 1
        records.append(PlyRecord(ply, player, v, len(state.graph.oriented)))
    if chosen is not None and next(chosen, None) is not None:
        raise IllegalMoveError("moves remain after the game ended")
    return tuple(records)
