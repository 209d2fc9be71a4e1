"""Explicit labelled transition systems generated from the rule tables.

States are terms in structural normal form (see :mod:`acc.canon`) plus
the termination marker ``TICK``.  Exploration is breadth first and fully
deterministic: successors are visited in a fixed order so that the same
root and bounds always give the same state numbering.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations

from .canon import canon
from .errors import BoundsError
from .interface import is_empty
from .sos import TICK, comp_interface, sort_of, steps
from .terms import Comp, render

DEFAULT_MAX_STATES = 100_000
DEFAULT_MAX_DEPTH = 1_000


@dataclass
class Lts:
    """A rooted LTS.

    ``edges`` holds ``(source, label, target)`` triples sorted by source.
    ``expanded[s]`` tells whether the outgoing edges of ``s`` are known;
    ``complete`` is true iff every state is expanded.  ``interfaces`` is
    filled for component LTSs (``None`` at the termination state).
    """

    sort: str
    states: list
    root: int
    edges: list
    expanded: list
    depth: list
    complete: bool
    interfaces: list = field(default_factory=list)

    def __post_init__(self):
        out = [[] for _ in self.states]
        for s, a, t in self.edges:
            out[s].append((a, t))
        self._out = out

    def successors(self, s):
        return self._out[s]

    def is_sink(self, s):
        return self.states[s] is TICK

    def termination_labels(self, s):
        """Labels ``a`` with which state ``s`` can terminate."""
        return frozenset(a for a, t in self._out[s] if self.states[t] is TICK)

    def interface(self, s):
        return self.interfaces[s] if self.interfaces else None

    @property
    def n_states(self):
        return len(self.states)

    def min_incomplete_depth(self):
        """Smallest depth of an unexpanded state, or ``None`` if complete."""
        pending = [d for d, e in zip(self.depth, self.expanded) if not e]
        return min(pending) if pending else None


def _check_bounds(max_states, max_depth):
    if max_states is not None and max_states <= 0:
        raise BoundsError("max_states must be positive")
    if max_depth is not None and max_depth <= 0:
        raise BoundsError("max_depth must be positive")


def _step_order(step):
    label, target = step
    return (label.sort_key(), "" if target is TICK else render(target))


def build_lts(
    root,
    max_states: int = DEFAULT_MAX_STATES,
    max_depth: int = DEFAULT_MAX_DEPTH,
    sort: str | None = None,
) -> Lts:
    """Breadth-first closure of the step relation from ``root``.

    A state is expanded only if it lies at depth below ``max_depth`` and
    all its new successors fit under ``max_states``; otherwise the result
    is marked incomplete.
    """
    _check_bounds(max_states, max_depth)
    sort = sort or sort_of(root)
    start = canon(root)
    index = {start: 0}
    states = [start]
    depth = [0]
    expanded = [False]
    edges = []
    queue = deque([0])
    while queue:
        s = queue.popleft()
        term = states[s]
        if term is TICK:
            expanded[s] = True
            continue
        if depth[s] >= max_depth:
            continue
        succ = []
        for label, target in steps(term, sort):
            succ.append((label, TICK if target is TICK else canon(target)))
        succ = sorted(set(succ), key=_step_order)
        fresh = {t for _, t in succ if t not in index}
        if len(states) + len(fresh) > max_states:
            continue
        for label, t in succ:
            j = index.get(t)
            if j is None:
                j = index[t] = len(states)
                states.append(t)
                depth.append(depth[s] + 1)
                expanded.append(False)
                queue.append(j)
            edges.append((s, label, j))
        expanded[s] = True
    interfaces = []
    if sort == "comp":
        interfaces = [None if t is TICK else comp_interface(t) for t in states]
    return Lts(sort, states, 0, edges, expanded, depth, all(expanded), interfaces)


def project(l: Lts, n: int) -> Lts:
    """Depth-``n`` truncation: no action is possible after ``n`` actions.

    Built by unfolding pairs ``(state, remaining)``; states without
    outgoing edges are shared across remaining budgets.  An acyclic
    ``l`` whose longest path is at most ``n`` is returned unchanged.
    """
    if n < 0:
        raise BoundsError("projection depth must be non-negative")
    if l.complete and _longest_path(l) is not None and _longest_path(l) <= n:
        return l

    def key_of(s, k):
        return s if l.expanded[s] and not l.successors(s) else (s, k)

    root_key = key_of(l.root, n)
    index = {root_key: 0}
    origin = [l.root]
    budget = [n]
    edges = []
    expanded = [True]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        s, k = origin[i], budget[i]
        if k == 0 or not l.successors(s):
            expanded[i] = k == 0 or l.expanded[s]
            continue
        expanded[i] = l.expanded[s]
        for a, t in l.successors(s):
            key = key_of(t, k - 1)
            j = index.get(key)
            if j is None:
                j = index[key] = len(origin)
                origin.append(t)
                budget.append(k - 1)
                expanded.append(True)
                queue.append(j)
            edges.append((i, a, j))
    states = [l.states[s] for s in origin]
    depth = [n - k for k in budget]
    interfaces = [l.interfaces[s] for s in origin] if l.interfaces else []
    return Lts(l.sort, states, 0, edges, expanded, depth, all(expanded), interfaces)


def _longest_path(l: Lts):
    """Length of the longest path from the root, ``None`` if there is a cycle."""
    colour = {}
    longest = {}
    stack = [(l.root, 0)]
    while stack:
        s, i = stack.pop()
        if i == 0:
            if colour.get(s) == 2:
                continue
            colour[s] = 1
        succ = l.successors(s)
        if i < len(succ):
            stack.append((s, i + 1))
            t = succ[i][1]
            c = colour.get(t)
            if c == 1:
                return None
            if c is None:
                stack.append((t, 0))
        else:
            colour[s] = 2
            longest[s] = max((1 + longest[t] for _, t in succ), default=0)
    return longest[l.root]


@dataclass(frozen=True)
class Alphabet:
    labels: frozenset
    exact: bool  # False: a lower bound, exploration was incomplete

    def __str__(self):
        body = ", ".join(str(a) for a in sorted(self.labels))
        return "{" + body + "}" + ("" if self.exact else " (lower bound)")


def alphabet(l: Lts) -> Alphabet:
    return Alphabet(frozenset(a for _, a, _ in l.edges), l.complete)


@dataclass(frozen=True)
class ClosedVerdict:
    """Outcome of a closed-system check.

    ``status`` is ``Closed``, ``NotClosed`` or ``UnknownWithinBounds``;
    ``method`` records whether the empty-interface shortcut or state
    space exploration decided it.
    """

    status: str
    witness: object = None
    method: str = "exploration"
    alphabet: Alphabet | None = None

    def __str__(self):
        if self.status == "NotClosed":
            return f"NotClosed (witness {self.witness})"
        return self.status


def is_closed_system(
    c, max_states: int = DEFAULT_MAX_STATES, max_depth: int = DEFAULT_MAX_DEPTH
) -> ClosedVerdict:
    """Whether only neutral actions are reachable.

    A basic component with an empty interface is closed without
    exploration: interface compliant encapsulation by the empty interface
    blocks every active and passive action.  Compositions are always
    explored, because once a member terminates the remaining member is
    gated by its own interface only.
    """
    _check_bounds(max_states, max_depth)
    if isinstance(c, Comp) and is_empty(c.iface):
        return ClosedVerdict("Closed", method="interface")
    l = build_lts(c, max_states, max_depth, sort="comp")
    alpha = alphabet(l)
    loud = sorted(a for a in alpha.labels if a.kind.value != "neutral")
    if loud:
        return ClosedVerdict("NotClosed", loud[0], "exploration", alpha)
    if not l.complete:
        return ClosedVerdict("UnknownWithinBounds", None, "exploration", alpha)
    return ClosedVerdict("Closed", None, "exploration", alpha)


# ---------------------------------------------------------------------------
# export


def to_aut(l: Lts) -> str:
    """Aldebaran format: ``des (root, #edges, #states)`` then one edge per line."""
    lines = [f"des ({l.root}, {len(l.edges)}, {l.n_states})"]
    lines += [f'({s},"{a}",{t})' for s, a, t in l.edges]
    return "\n".join(lines) + "\n"


def to_dot(l: Lts, name: str = "lts") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for s, term in enumerate(l.states):
        if term is TICK:
            attrs = 'shape=doublecircle, label="✓"'
        else:
            shape = "circle" if l.expanded[s] else "box"
            attrs = f'shape={shape}, label="{s}", tooltip="{_escape(render(term))}"'
        lines.append(f"  s{s} [{attrs}];")
    lines.append(f"  init -> s{l.root};")
    for s, a, t in l.edges:
        lines.append(f'  s{s} -> s{t} [label="{_escape(str(a))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def state_table(l: Lts) -> str:
    """One line per state: index, depth, expansion flag and the term."""
    rows = []
    for s, term in enumerate(l.states):
        flag = "" if l.expanded[s] else " (unexpanded)"
        iface = f" [{l.interfaces[s]}]" if l.interfaces and l.interfaces[s] is not None else ""
        rows.append(f"{s}: {render(term) if term is not TICK else '✓'}{iface}{flag}")
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# isomorphism


def isomorphic(l1: Lts, l2: Lts, rename=lambda a: a):
    """A bijection of states mapping ``l1`` onto ``l2`` after relabelling.

    ``rename`` is applied to the labels of ``l1``.  Returns the state map
    or ``None``.  Backtracking search, intended for small systems.
    """
    if l1.n_states != l2.n_states or len(l1.edges) != len(l2.edges):
        return None
    if not (l1.complete and l2.complete):
        return None

    def groups(l, s, f):
        g = {}
        for a, t in l.successors(s):
            g.setdefault(f(a), []).append(t)
        return g

    def extend(mapping, used, pending):
        if not pending:
            return mapping
        s, t = pending[0]
        rest = pending[1:]
        g1 = groups(l1, s, rename)
        g2 = groups(l2, t, lambda a: a)
        if {k: len(v) for k, v in g1.items()} != {k: len(v) for k, v in g2.items()}:
            return None
        if (l1.states[s] is TICK) != (l2.states[t] is TICK):
            return None
        return _match_groups(sorted(g1, key=str), g1, g2, mapping, used, rest)

    def _match_groups(labels, g1, g2, mapping, used, rest):
        if not labels:
            return extend(mapping, used, rest)
        a = labels[0]
        srcs = g1[a]
        for perm in permutations(g2[a]):
            m = dict(mapping)
            u = set(used)
            new = []
            ok = True
            for x, y in zip(srcs, perm):
                if x in m:
                    if m[x] != y:
                        ok = False
                        break
                elif y in u:
                    ok = False
                    break
                else:
                    m[x] = y
                    u.add(y)
                    new.append((x, y))
            if ok:
                found = _match_groups(labels[1:], g1, g2, m, u, rest + new)
                if found is not None:
                    return found
        return None

    return extend({l1.root: l2.root}, {l2.root}, [(l1.root, l2.root)])
