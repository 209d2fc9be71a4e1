"""Head normal forms computed from the equational axioms.

This module does not use the transition rules.  It rewrites a closed
term left to right with the axioms for alternative and sequential
composition (A4, A5, A7), the merge axioms (CM1-CM9), communication
(C1-C3 via :func:`acc.terms.gamma`), encapsulation (D1-D4), interface
compliant encapsulation (E1-E10), recursion (RDP) and, for components,
CC1 and CC2.  The result is a sum of action-prefixed remainders and
terminating actions, kept as a set so that A1, A2, A3 and A6 hold by
construction.

It serves as an independent oracle for :mod:`acc.sos`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .canon import canon
from .errors import BudgetError, ScopeError, SortError
from .interface import combine, permits
from .recursion import require_guarded, substitute
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
    Var,
    alt_of,
    gamma,
)

DEFAULT_FUEL = 32

#: Remainder of a summand that is a bare action (``a`` rather than ``a . P``).
DONE = None


@dataclass(frozen=True)
class HeadNormalForm:
    """``sum_i a_i . P_i + sum_j b_j``; a remainder of ``None`` marks ``b_j``."""

    summands: frozenset

    @property
    def is_deadlock(self):
        return not self.summands

    def labels(self):
        return {a for a, _ in self.summands}

    def canonical(self):
        """Summands with remainders in structural normal form."""
        return frozenset((a, r if r is DONE else canon(r)) for a, r in self.summands)

    def as_term(self):
        parts = []
        for a, r in sorted(self.summands, key=_summand_key):
            parts.append(Atom(a) if r is DONE else Seq(Atom(a), r))
        return alt_of(parts)

    def __str__(self):
        return str(self.as_term())


def _summand_key(s):
    a, r = s
    return (a.sort_key(), "" if r is DONE else str(r))


@dataclass(frozen=True)
class ComponentNormalForm:
    """A component rewritten to ``comp(I, P)`` together with the HNF of P."""

    interface: object
    behaviour: object
    hnf: HeadNormalForm


class _Fuel:
    """Bounds the nesting of RDP unfoldings along one expansion path.

    Sibling operands each get the full remaining amount, so wide terms
    with many recursion constants do not exhaust it; only a chain of
    unfoldings without an intervening action does.
    """

    def __init__(self, amount):
        self.left = amount

    def spend(self, what):
        if self.left <= 0:
            raise BudgetError(f"recursion fuel exhausted while unfolding {what}")
        self.left -= 1

    def refund(self):
        self.left += 1


# ---------------------------------------------------------------------------
# processes


def hnf(p, fuel: int = DEFAULT_FUEL) -> HeadNormalForm:
    """Expand a closed process term to head normal form by the axioms."""
    return HeadNormalForm(frozenset(_expand(p, _Fuel(fuel))))


def _rdp(c: Rec, fuel: _Fuel):
    # RDP: <X|E> = <t_X|E>
    fuel.spend(c.var)
    require_guarded(c.spec)
    e = c.spec
    return substitute(e[c.var], {y: Rec(y, e) for y in e.names})


def _expand(t, fuel):
    if isinstance(t, Delta):
        return set()
    if isinstance(t, Atom):
        if not isinstance(t.action, Action):
            raise SortError(f"localized action {t.action} outside a placement")
        return {(t.action, DONE)}
    if isinstance(t, Alt):
        return _expand(t.left, fuel) | _expand(t.right, fuel)
    if isinstance(t, Seq):
        # A4 distributes, A5 reassociates, A7 drops deadlocked prefixes
        return {(a, t.right if r is DONE else Seq(r, t.right)) for a, r in _expand(t.left, fuel)}
    if isinstance(t, Par):
        # CM1
        return (
            _left_merge(t.left, t.right, fuel)
            | _left_merge(t.right, t.left, fuel)
            | _comm_merge(t.left, t.right, fuel)
        )
    if isinstance(t, LeftMerge):
        return _left_merge(t.left, t.right, fuel)
    if isinstance(t, CommMerge):
        return _comm_merge(t.left, t.right, fuel)
    if isinstance(t, Encap):
        # D1/D2 on the head action, D3 over sums, D4 into the remainder
        return {
            (a, r if r is DONE else Encap(t.blocked, r))
            for a, r in _expand(t.body, fuel)
            if a not in t.blocked
        }
    if isinstance(t, IEncap):
        # E1-E7 decide the head action, E8 is the empty sum, E9/E10 distribute
        return {
            (a, r if r is DONE else IEncap(t.iface, r))
            for a, r in _expand(t.body, fuel)
            if permits(t.iface, a)
        }
    if isinstance(t, Rec):
        body = _rdp(t, fuel)
        try:
            return _expand(body, fuel)
        finally:
            fuel.refund()
    if isinstance(t, Placed):
        # P1-P5 applied to the localized head normal form
        return {
            (a.placed(t.locus), r if r is DONE else Placed(t.locus, r))
            for a, r in _expand_loc(t.body, fuel)
        }
    if isinstance(t, Var):
        raise ScopeError(f"free variable {t.name}")
    raise SortError(f"not a process term: {t!r}")


def _left_merge(x, y, fuel):
    # CM4 over the summands of x, then CM2 (a _| y = a . y) or
    # CM3 (a . x' _| y = a . (x' || y))
    return {(a, y if r is DONE else Par(r, y)) for a, r in _expand(x, fuel)}


def _comm_merge(x, y, fuel):
    # CM8/CM9 over summands, CM5-CM7 on prefixed pairs, C1-C3 and A7 on heads
    out = set()
    xs = _expand(x, fuel)
    ys = _expand(y, fuel) if xs else ()
    for a, r in xs:
        for b, s in ys:
            c = gamma(a, b)
            if c is DELTA:
                continue
            if r is DONE and s is DONE:
                out.add((c, DONE))
            elif s is DONE:
                out.add((c, r))
            elif r is DONE:
                out.add((c, s))
            else:
                out.add((c, Par(r, s)))
    return out


def _expand_loc(t, fuel):
    """Localized copies of the axioms; M1 replaces CM1 (no communication)."""
    if isinstance(t, Delta):
        return set()
    if isinstance(t, Atom):
        if not isinstance(t.action, LocAction):
            raise SortError(f"non-localized action {t.action} in a localized process")
        return {(t.action, DONE)}
    if isinstance(t, Alt):
        return _expand_loc(t.left, fuel) | _expand_loc(t.right, fuel)
    if isinstance(t, Seq):
        return {(a, t.right if r is DONE else Seq(r, t.right)) for a, r in _expand_loc(t.left, fuel)}
    if isinstance(t, Par):
        return _loc_left_merge(t.left, t.right, fuel) | _loc_left_merge(t.right, t.left, fuel)
    if isinstance(t, LeftMerge):
        return _loc_left_merge(t.left, t.right, fuel)
    if isinstance(t, Encap):
        return {
            (a, r if r is DONE else Encap(t.blocked, r))
            for a, r in _expand_loc(t.body, fuel)
            if a not in t.blocked
        }
    if isinstance(t, Rec):
        body = _rdp(t, fuel)
        try:
            return _expand_loc(body, fuel)
        finally:
            fuel.refund()
    if isinstance(t, Var):
        raise ScopeError(f"free variable {t.name}")
    raise SortError(f"not a localized process term: {t!r}")


def _loc_left_merge(x, y, fuel):
    return {(a, y if r is DONE else Par(r, y)) for a, r in _expand_loc(x, fuel)}


def hnf_loc(l, fuel: int = DEFAULT_FUEL) -> HeadNormalForm:
    return HeadNormalForm(frozenset(_expand_loc(l, _Fuel(fuel))))


# ---------------------------------------------------------------------------
# components


def flatten(c):
    """Rewrite a component to ``(I, P)`` with ``c = comp(I, P)`` by CC2.

    ``comp(i, x) || comp(j, y) = comp(i + j, iencap[i](x) || iencap[j](y))``
    """
    if isinstance(c, Comp):
        return c.iface, c.behaviour
    if isinstance(c, CompPar):
        i, x = flatten(c.left)
        j, y = flatten(c.right)
        return combine(i, j), Par(IEncap(i, x), IEncap(j, y))
    raise SortError(f"not a component term: {c!r}")


def hnf_comp(c, fuel: int = DEFAULT_FUEL) -> ComponentNormalForm:
    """CC2 to a single basic component, then CC1, then the process HNF."""
    i, x = flatten(c)
    return ComponentNormalForm(i, x, hnf(IEncap(i, x), fuel))


def flat_behaviour(c):
    """``iencap[I](P)`` for ``c = comp(I, P)``; what CC1 exposes as behaviour."""
    i, x = flatten(c)
    return IEncap(i, x)
