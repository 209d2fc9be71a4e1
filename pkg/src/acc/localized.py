"""Localized processes: placement and the communication-free merge."""
from __future__ import annotations

from .errors import ScopeError, SortError
from .recursion import RecSpec
from .terms import (
    DELTA,
    Alt,
    Atom,
    Delta,
    Encap,
    LeftMerge,
    LocAction,
    Par,
    Placed,
    Rec,
    Seq,
    Var,
    free_variables,
)


class _Opaque(Exception):
    """A variable sits under an operator that placement does not push through."""


def place(f: str, l):
    """Place a closed localized process at locus ``f``.

    Placement is pushed through deadlock, actions, ``+`` and ``.`` and
    into recursion bodies.  Under ``||``, ``_|`` and ``encap`` it stops
    and leaves a :class:`Placed` node, which the transition rules handle
    directly.  A recursion whose bodies use those operators around a
    variable is placed as a whole.
    """
    stray = free_variables(l)
    if stray:
        raise ScopeError(f"cannot place an open term (free: {', '.join(sorted(stray))})")
    return _place(f, l)


def _place(f, t):
    if isinstance(t, Delta):
        return DELTA
    if isinstance(t, Atom):
        if not isinstance(t.action, LocAction):
            raise SortError(f"{t.action} is not a localized action")
        return Atom(t.action.placed(f))
    if isinstance(t, Alt):
        return Alt(_place(f, t.left), _place(f, t.right))
    if isinstance(t, Seq):
        return Seq(_place(f, t.left), _place(f, t.right))
    if isinstance(t, Var):
        return t
    if isinstance(t, Rec):
        try:
            eqs = tuple((x, _place(f, body)) for x, body in t.spec.equations)
        except _Opaque:
            return Placed(f, t)
        return Rec(t.var, RecSpec(eqs, "proc"))
    if isinstance(t, (Par, LeftMerge, Encap)):
        if free_variables(t):
            raise _Opaque
        return Placed(f, t)
    raise SortError(f"not a localized process term: {t!r}")


def loc_par_expand(r, s):
    """``r || s = r _| s + s _| r``: localized actions never synchronize."""
    return Alt(LeftMerge(r, s), LeftMerge(s, r))
