"""One-step transitions of process, localized and component terms.

A :class:`Step` pairs a label with either a successor term or
:data:`TICK`, the successful termination marker.  ``P --a--> TICK`` is the
termination relation ("can perform ``a`` and then terminate").
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .errors import ScopeError, SortError
from .interface import EMPTY, Interface, combine, permits
from .recursion import unfold
from .terms import (
    DELTA,
    Action,
    Alt,
    Atom,
    CommMerge,
    Comp,
    CompPar,
    Delta,
    Encap,
    IEncap,
    LeftMerge,
    LocAction,
    Par,
    Placed,
    Rec,
    Seq,
    Term,
    Var,
    gamma,
)


class _Tick:
    __slots__ = ()

    def __repr__(self):
        return "✓"

    def __str__(self):
        return "✓"

    def __reduce__(self):
        return "TICK"


TICK = _Tick()


class Step(NamedTuple):
    label: object
    target: object  # a term of the same sort, or TICK

    @property
    def terminates(self):
        return self.target is TICK

    def __str__(self):
        return f"--{self.label}--> {self.target}"


def proc_steps(p: Term) -> frozenset:
    """All steps of a closed process term derivable by the rule tables."""
    return _proc_steps(p)


def loc_steps(l: Term) -> frozenset:
    """Steps of a closed localized process; labels are localized actions."""
    return _loc_steps(l)


def _sync_target(s, t):
    if s is TICK:
        return t
    if t is TICK:
        return s
    return Par(s, t)


@lru_cache(maxsize=1 << 18)
def _proc_steps(p):
    if isinstance(p, Delta):
        return frozenset()
    if isinstance(p, Atom):
        if not isinstance(p.action, Action):
            raise SortError(f"localized action {p.action} outside a placement")
        return frozenset((Step(p.action, TICK),))
    if isinstance(p, Alt):
        return _proc_steps(p.left) | _proc_steps(p.right)
    if isinstance(p, Seq):
        return frozenset(_seq_steps(_proc_steps(p.left), p.right))
    if isinstance(p, Par):
        xs, ys = _proc_steps(p.left), _proc_steps(p.right)
        out = set(_interleave(xs, ys, p.left, p.right))
        out.update(_synchronize(xs, ys))
        return frozenset(out)
    if isinstance(p, LeftMerge):
        return frozenset(_left_steps(_proc_steps(p.left), p.right))
    if isinstance(p, CommMerge):
        return frozenset(_synchronize(_proc_steps(p.left), _proc_steps(p.right)))
    if isinstance(p, Encap):
        return frozenset(
            Step(a, TICK if s is TICK else Encap(p.blocked, s))
            for a, s in _proc_steps(p.body)
            if a not in p.blocked
        )
    if isinstance(p, IEncap):
        return frozenset(
            Step(a, TICK if s is TICK else IEncap(p.iface, s))
            for a, s in _proc_steps(p.body)
            if permits(p.iface, a)
        )
    if isinstance(p, Rec):
        return _proc_steps(unfold(p))
    if isinstance(p, Placed):
        return frozenset(
            Step(a.placed(p.locus), TICK if s is TICK else Placed(p.locus, s))
            for a, s in _loc_steps(p.body)
        )
    if isinstance(p, Var):
        raise ScopeError(f"free variable {p.name} has no transitions")
    raise SortError(f"not a process term: {p!r}")


def _seq_steps(xs, y):
    for a, s in xs:
        yield Step(a, y if s is TICK else Seq(s, y))


def _left_steps(xs, y):
    for a, s in xs:
        yield Step(a, y if s is TICK else Par(s, y))


def _interleave(xs, ys, x, y):
    yield from _left_steps(xs, y)
    for b, t in ys:
        yield Step(b, x if t is TICK else Par(x, t))


def _synchronize(xs, ys):
    for a, s in xs:
        for b, t in ys:
            c = gamma(a, b)
            if c is not DELTA:
                yield Step(c, TICK if s is TICK and t is TICK else _sync_target(s, t))


@lru_cache(maxsize=1 << 16)
def _loc_steps(l):
    if isinstance(l, Delta):
        return frozenset()
    if isinstance(l, Atom):
        if not isinstance(l.action, LocAction):
            raise SortError(f"non-localized action {l.action} in a localized process")
        return frozenset((Step(l.action, TICK),))
    if isinstance(l, Alt):
        return _loc_steps(l.left) | _loc_steps(l.right)
    if isinstance(l, Seq):
        return frozenset(_seq_steps(_loc_steps(l.left), l.right))
    if isinstance(l, Par):
        return frozenset(_interleave(_loc_steps(l.left), _loc_steps(l.right), l.left, l.right))
    if isinstance(l, LeftMerge):
        return frozenset(_left_steps(_loc_steps(l.left), l.right))
    if isinstance(l, Encap):
        return frozenset(
            Step(a, TICK if s is TICK else Encap(l.blocked, s))
            for a, s in _loc_steps(l.body)
            if a not in l.blocked
        )
    if isinstance(l, Rec):
        return _loc_steps(unfold(l))
    if isinstance(l, Var):
        raise ScopeError(f"free variable {l.name} has no transitions")
    if isinstance(l, (CommMerge, IEncap, Placed)):
        raise SortError(f"{type(l).__name__} is not a localized process operator")
    raise SortError(f"not a localized process term: {l!r}")


# ---------------------------------------------------------------------------
# components


@lru_cache(maxsize=1 << 16)
def comp_interface(c: Term) -> Interface:
    if isinstance(c, Comp):
        return c.iface
    if isinstance(c, CompPar):
        return combine(comp_interface(c.left), comp_interface(c.right))
    raise SortError(f"not a component term: {c!r}")


@lru_cache(maxsize=1 << 16)
def comp_steps(c: Term) -> frozenset:
    """Steps of a component; lone requests and grants are gated by interfaces.

    In ``u || v`` a step of one side that is not a synchronization passes
    only if the combined interface of ``u || v`` permits it.  When one side
    terminates the composite continues as the other side alone.
    """
    if isinstance(c, Comp):
        return frozenset(
            Step(a, TICK if s is TICK else Comp(c.iface, s))
            for a, s in _proc_steps(c.behaviour)
            if permits(c.iface, a)
        )
    if not isinstance(c, CompPar):
        raise SortError(f"not a component term: {c!r}")
    u, v = c.left, c.right
    gate = comp_interface(c)
    us, vs = comp_steps(u), comp_steps(v)
    out = set()
    for a, s in us:
        if permits(gate, a):
            out.add(Step(a, v if s is TICK else CompPar(s, v)))
    for b, t in vs:
        if permits(gate, b):
            out.add(Step(b, u if t is TICK else CompPar(u, t)))
    for a, s in us:
        for b, t in vs:
            k = gamma(a, b)
            if k is not DELTA:
                if s is TICK and t is TICK:
                    out.add(Step(k, TICK))
                elif s is TICK:
                    out.add(Step(k, t))
                elif t is TICK:
                    out.add(Step(k, s))
                else:
                    out.add(Step(k, CompPar(s, t)))
    return frozenset(out)


def sort_of(t) -> str:
    """``comp``, ``loc`` or ``proc``, judged from the outermost sort evidence."""
    if isinstance(t, (Comp, CompPar)):
        return "comp"
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, (CommMerge, IEncap, Placed)):
            return "proc"
        if isinstance(u, Rec):
            return u.spec.sort
        if isinstance(u, Atom):
            return "loc" if isinstance(u.action, LocAction) else "proc"
        if isinstance(u, Encap):
            for a in u.blocked:
                return "loc" if isinstance(a, LocAction) else "proc"
            stack.append(u.body)
        elif isinstance(u, (Alt, Seq, Par, LeftMerge)):
            stack.append(u.right)
            stack.append(u.left)
    return "proc"


def steps(t, sort: str | None = None) -> frozenset:
    sort = sort or sort_of(t)
    if sort == "comp":
        return comp_steps(t)
    if sort == "loc":
        return loc_steps(t)
    return proc_steps(t)


def interface_of(t, sort: str | None = None):
    if (sort or sort_of(t)) == "comp":
        return comp_interface(t)
    return EMPTY
