"""Strong bisimilarity by signature-based partition refinement.

The two LTSs are joined into one disjoint union.  The initial partition
separates the termination state from the others and, for components,
states with different interfaces.  Each round splits blocks by the set
of ``(label, block of target)`` pairs, so the ability to terminate with
``a`` shows up as an ``a``-edge into the termination block.

Round numbers double as distinguishing depths: two states first
separated in round ``k`` are told apart by a test of ``k`` actions.
Witnesses are extracted by replaying the attacker strategy implied by
the round in which a pair is split.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .lts import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES, Lts, build_lts
from .sos import TICK, comp_interface, sort_of

BISIMILAR = "Bisimilar"
NOT_BISIMILAR = "NotBisimilar"
UP_TO_DEPTH = "EquivalentUpToDepth"


@dataclass(frozen=True)
class Witness:
    """Labels ``trace`` lead to a pair of states that differ observably.

    ``observation`` names the difference: ``step`` (labels only one side
    can perform, listed in ``left_only`` / ``right_only``), ``termination``
    (one side is the terminated state) or ``interface``.
    """

    trace: tuple
    observation: str
    left_only: tuple = ()
    right_only: tuple = ()
    left_interface: object = None
    right_interface: object = None
    path: tuple = ()

    def describe(self):
        prefix = " . ".join(str(a) for a in self.trace) or "(empty trace)"
        if self.observation == "step":
            parts = []
            if self.left_only:
                parts.append("left only: " + ", ".join(map(str, self.left_only)))
            if self.right_only:
                parts.append("right only: " + ", ".join(map(str, self.right_only)))
            return f"after {prefix}: {'; '.join(parts)}"
        if self.observation == "interface":
            return f"after {prefix}: interfaces {self.left_interface} vs {self.right_interface}"
        return f"after {prefix}: only one side has terminated"


@dataclass(frozen=True)
class BisimVerdict:
    result: str
    depth: int | None = None
    witness: Witness | None = None
    states: tuple = (0, 0)

    @property
    def holds(self):
        return self.result == BISIMILAR

    def __str__(self):
        if self.result == NOT_BISIMILAR:
            return f"NotBisimilar at depth {self.depth}: {self.witness.describe()}"
        if self.result == UP_TO_DEPTH:
            return f"EquivalentUpToDepth({self.depth})"
        return BISIMILAR


# ---------------------------------------------------------------------------
# refinement


@dataclass
class _Union:
    left: Lts
    right: Lts
    offset: int
    out: list = field(default_factory=list)
    keys: list = field(default_factory=list)

    def __post_init__(self):
        for l, base in ((self.left, 0), (self.right, self.offset)):
            for s in range(l.n_states):
                self.out.append([(a, t + base) for a, t in l.successors(s)])
                self.keys.append((l.states[s] is TICK, l.interface(s)))

    def side(self, s):
        return (self.left, s) if s < self.offset else (self.right, s - self.offset)


def _initial_blocks(keys):
    ids = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def refine(out, keys, max_rounds=None):
    """Rounds of block numberings; the last one is stable unless cut short."""
    blocks = _initial_blocks(keys)
    rounds = [blocks]
    n_blocks = len(set(blocks))
    while max_rounds is None or len(rounds) <= max_rounds:
        ids = {}
        new = []
        for s, edges in enumerate(out):
            sig = (blocks[s], frozenset((a, blocks[t]) for a, t in edges))
            new.append(ids.setdefault(sig, len(ids)))
        if len(ids) == n_blocks:
            break
        blocks, n_blocks = new, len(ids)
        rounds.append(blocks)
    return rounds


def _split_round(rounds, s, t):
    """First round separating ``s`` and ``t``, or ``None``."""
    for k, blocks in enumerate(rounds):
        if blocks[s] != blocks[t]:
            return k
    return None


def _witness(u: _Union, rounds, s, t):
    trace = []
    path = [(s, t)]
    while True:
        k = _split_round(rounds, s, t)
        if k == 0:
            ls, ss = u.side(s)
            lt, tt = u.side(t)
            if (ls.states[ss] is TICK) != (lt.states[tt] is TICK):
                obs = Witness(tuple(trace), "termination", path=tuple(path))
            else:
                obs = Witness(
                    tuple(trace),
                    "interface",
                    left_interface=ls.interface(ss),
                    right_interface=lt.interface(tt),
                    path=tuple(path),
                )
            return obs
        prev = rounds[k - 1]
        left_labels = {a for a, _ in u.out[s]}
        right_labels = {a for a, _ in u.out[t]}
        if left_labels != right_labels:
            return Witness(
                tuple(trace),
                "step",
                left_only=tuple(sorted(left_labels - right_labels)),
                right_only=tuple(sorted(right_labels - left_labels)),
                path=tuple(path),
            )
        move = _unmatched(u.out[s], u.out[t], prev)
        if move is not None:
            a, s2 = move
            t2 = _best_reply(u.out[t], a, s2, rounds)
        else:
            a, t2 = _unmatched(u.out[t], u.out[s], prev)
            s2 = _best_reply(u.out[s], a, t2, rounds)
        trace.append(a)
        s, t = s2, t2
        path.append((s, t))


def _unmatched(mine, theirs, blocks):
    have = {(a, blocks[x]) for a, x in theirs}
    for a, x in sorted(mine, key=lambda e: (e[0].sort_key(), e[1])):
        if (a, blocks[x]) not in have:
            return a, x
    return None


def _best_reply(edges, label, target, rounds):
    replies = sorted(x for a, x in edges if a == label)
    return max(replies, key=lambda x: _split_round(rounds, target, x) or 0)


def bisim_lts(l1: Lts, l2: Lts) -> BisimVerdict:
    """Compare the roots of two LTSs of the same sort."""
    u = _Union(l1, l2, l1.n_states)
    r1, r2 = l1.root, l2.root + l1.n_states
    sizes = (l1.n_states, l2.n_states)
    if l1.complete and l2.complete:
        rounds = refine(u.out, u.keys)
        k = _split_round(rounds, r1, r2)
        if k is None:
            return BisimVerdict(BISIMILAR, states=sizes)
        return BisimVerdict(NOT_BISIMILAR, k, _witness(u, rounds, r1, r2), sizes)
    bound = min(d for d in (l1.min_incomplete_depth(), l2.min_incomplete_depth()) if d is not None)
    rounds = refine(u.out, u.keys, max_rounds=bound)
    k = _split_round(rounds, r1, r2)
    if k is not None and k <= bound:
        return BisimVerdict(NOT_BISIMILAR, k, _witness(u, rounds, r1, r2), sizes)
    return BisimVerdict(UP_TO_DEPTH, bound, states=sizes)


def bisim(p, q, max_states=DEFAULT_MAX_STATES, max_depth=DEFAULT_MAX_DEPTH, sort=None):
    sort = sort or sort_of(p)
    if sort == "comp":
        i, j = comp_interface(p), comp_interface(q)
        if i != j:
            w = Witness((), "interface", left_interface=i, right_interface=j)
            return BisimVerdict(NOT_BISIMILAR, 0, w)
    l1 = build_lts(p, max_states, max_depth, sort)
    l2 = build_lts(q, max_states, max_depth, sort)
    return bisim_lts(l1, l2)


def bisim_proc(p, q, max_states=DEFAULT_MAX_STATES, max_depth=DEFAULT_MAX_DEPTH):
    return bisim(p, q, max_states, max_depth, "proc")


def bisim_comp(c, d, max_states=DEFAULT_MAX_STATES, max_depth=DEFAULT_MAX_DEPTH):
    """Components: related states must also have equal interfaces."""
    return bisim(c, d, max_states, max_depth, "comp")


def bisim_loc(l, m, max_states=DEFAULT_MAX_STATES, max_depth=DEFAULT_MAX_DEPTH):
    return bisim(l, m, max_states, max_depth, "loc")


# ---------------------------------------------------------------------------
# naive oracle


def naive_bisimilar(l1: Lts, l2: Lts) -> bool:
    """Greatest fixed point of the bisimulation clauses, computed directly.

    Quadratic in the number of state pairs per iteration; meant for small
    complete systems only.
    """
    u = _Union(l1, l2, l1.n_states)
    n = len(u.out)
    rel = {(s, t) for s in range(n) for t in range(n) if u.keys[s] == u.keys[t]}
    changed = True
    while changed:
        changed = False
        for s, t in sorted(rel):
            if not _simulates(u.out[s], u.out[t], rel) or not _simulates(u.out[t], u.out[s], rel):
                rel.discard((s, t))
                changed = True
    return (l1.root, l2.root + l1.n_states) in rel


def _simulates(mine, theirs, rel):
    return all(any(b == a and (x, y) in rel for b, y in theirs) for a, x in mine)
