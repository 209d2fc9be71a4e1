"""Structural normal form of terms, used for state identity.

Only bisimulation-preserving identities are applied: alternative
composition modulo associativity, commutativity, idempotence and the
deadlock unit; ``(x . y) . z = x . (y . z)``; ``delta . x = delta``;
associativity and commutativity of ``||`` and commutativity of ``|``;
alpha-renaming of recursion constants.  The result is sound but not
complete: bisimilar terms may still have different normal forms.
"""
from __future__ import annotations

from functools import lru_cache

from .recursion import alpha_rename
from .terms import (
    DELTA,
    Alt,
    Atom,
    CommMerge,
    Comp,
    CompPar,
    Delta,
    Encap,
    IEncap,
    LeftMerge,
    Par,
    Placed,
    Rec,
    Seq,
    Var,
    render,
)


def _flatten(t, cls, out):
    if isinstance(t, cls):
        _flatten(t.left, cls, out)
        _flatten(t.right, cls, out)
    else:
        out.append(t)


def _rebuild(cls, items):
    result = items[-1]
    for t in reversed(items[:-1]):
        result = cls(t, result)
    return result


@lru_cache(maxsize=1 << 17)
def canon(t):
    if isinstance(t, (Delta, Atom, Var)):
        return t
    if isinstance(t, Alt):
        parts = []
        _flatten(t, Alt, parts)
        unique = {}
        for p in parts:
            p = canon(p)
            if isinstance(p, Alt):
                sub = []
                _flatten(p, Alt, sub)
            else:
                sub = [p]
            for q in sub:
                if not isinstance(q, Delta):
                    unique.setdefault(q, None)
        if not unique:
            return DELTA
        return _rebuild(Alt, sorted(unique, key=render))
    if isinstance(t, Seq):
        parts = []
        _flatten(t, Seq, parts)
        chain = []
        for p in parts:
            p = canon(p)
            if isinstance(p, Seq):
                _flatten(p, Seq, chain)
            else:
                chain.append(p)
            if isinstance(chain[-1], Delta) or isinstance(chain[0], Delta):
                break
        if isinstance(chain[0], Delta):
            return DELTA
        return _rebuild(Seq, chain)
    if isinstance(t, Par):
        parts = []
        _flatten(t, Par, parts)
        flat = []
        for p in parts:
            _flatten(canon(p), Par, flat)
        return _rebuild(Par, sorted(flat, key=render))
    if isinstance(t, CommMerge):
        left, right = sorted((canon(t.left), canon(t.right)), key=render)
        return CommMerge(left, right)
    if isinstance(t, LeftMerge):
        return LeftMerge(canon(t.left), canon(t.right))
    if isinstance(t, Encap):
        body = canon(t.body)
        return body if not t.blocked else Encap(t.blocked, body)
    if isinstance(t, IEncap):
        return IEncap(t.iface, canon(t.body))
    if isinstance(t, Placed):
        return Placed(t.locus, canon(t.body))
    if isinstance(t, Rec):
        first = alpha_rename(t, canon)
        # a second pass makes discovery order follow the sorted bodies
        return alpha_rename(first, canon)
    if isinstance(t, Comp):
        return Comp(t.iface, canon(t.behaviour))
    if isinstance(t, CompPar):
        return CompPar(canon(t.left), canon(t.right))
    raise TypeError(f"not a term: {t!r}")


def canon_target(target):
    """Canonical form of a step target; the termination marker is kept."""
    from .sos import TICK

    return target if target is TICK else canon(target)
