"""Recursive specifications, guardedness and unfolding (RDP)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import GuardednessError, ScopeError
from .terms import (
    Alt,
    Atom,
    BINARY,
    CommMerge,
    Delta,
    Encap,
    IEncap,
    LeftMerge,
    Par,
    Placed,
    Rec,
    Seq,
    Term,
    Var,
    free_variables,
)

DEFAULT_BUDGET = 8


@dataclass(frozen=True)
class RecSpec:
    """A finite set of equations ``X = t_X`` over one sort (``proc`` or ``loc``).

    Equations are kept sorted by variable name so that equality does not
    depend on declaration order.
    """

    equations: tuple
    sort: str = "proc"

    def __post_init__(self):
        eqs = tuple(sorted(dict(self.equations).items()))
        if len(eqs) != len(self.equations):
            raise ScopeError("duplicate variable in recursive specification")
        object.__setattr__(self, "equations", eqs)
        names = frozenset(x for x, _ in eqs)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_bodies", dict(eqs))
        for x, body in eqs:
            stray = free_variables(body) - names
            if stray:
                raise ScopeError(
                    f"equation for {x} mentions unbound variable(s) {', '.join(sorted(stray))}"
                )

    def __getitem__(self, name):
        try:
            return self._bodies[name]
        except KeyError:
            raise ScopeError(f"variable {name} is not bound by the specification") from None

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.equations, self.sort))
            object.__setattr__(self, "_hash", h)
        return h


def spec(sort="proc", **equations) -> RecSpec:
    return RecSpec(tuple(equations.items()), sort)


class Guardedness(enum.Enum):
    GUARDED = "guarded"
    NOT_SHOWN_GUARDED = "not shown guarded"


def unguarded_variables(t: Term) -> frozenset:
    """Variables with an occurrence not preceded by a mandatory first action.

    The right operand of ``.`` and of ``_|`` only starts after the left
    operand has performed an action, so occurrences there are guarded.
    """
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, (Delta, Atom, Rec)):
        return frozenset()
    if isinstance(t, (Seq, LeftMerge)):
        return unguarded_variables(t.left)
    if isinstance(t, (Alt, Par, CommMerge)):
        return unguarded_variables(t.left) | unguarded_variables(t.right)
    if isinstance(t, (Encap, IEncap, Placed)):
        return unguarded_variables(t.body)
    raise TypeError(f"not a process term: {t!r}")


def check_guarded(e: RecSpec, unfold_budget: int = DEFAULT_BUDGET) -> Guardedness:
    """Substitute bodies for unguarded occurrences up to ``unfold_budget`` times.

    Conservative: ``NOT_SHOWN_GUARDED`` means no guard was found within the
    budget, not that the specification has no unique solution.
    """
    for x, body in e.equations:
        pending = unguarded_variables(body)
        for _ in range(unfold_budget):
            if not pending:
                break
            pending = frozenset().union(*(unguarded_variables(e[y]) for y in pending))
        if pending:
            return Guardedness.NOT_SHOWN_GUARDED
    return Guardedness.GUARDED


def require_guarded(e: RecSpec, unfold_budget: int = DEFAULT_BUDGET):
    if _guarded_cached(e, unfold_budget) is not Guardedness.GUARDED:
        eqs = "; ".join(f"{x} = {b}" for x, b in e.equations)
        raise GuardednessError(f"recursive specification not shown guarded: {{{eqs}}}")


@lru_cache(maxsize=4096)
def _guarded_cached(e, budget):
    return check_guarded(e, budget)


def substitute(t: Term, mapping: dict) -> Term:
    """Replace free variables by terms; recursion constants are left alone."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, (Delta, Atom, Rec)):
        return t
    if isinstance(t, BINARY):
        left = substitute(t.left, mapping)
        right = substitute(t.right, mapping)
        if left is t.left and right is t.right:
            return t
        return type(t)(left, right)
    if isinstance(t, (Encap, IEncap)):
        body = substitute(t.body, mapping)
        return t if body is t.body else type(t)(t.blocked if isinstance(t, Encap) else t.iface, body)
    if isinstance(t, Placed):
        body = substitute(t.body, mapping)
        return t if body is t.body else Placed(t.locus, body)
    raise TypeError(f"not a process term: {t!r}")


@lru_cache(maxsize=1 << 15)
def unfold(c: Rec) -> Term:
    """``<X|E>`` becomes ``t_X`` with every ``Y`` replaced by ``<Y|E>``."""
    if not isinstance(c, Rec):
        raise TypeError(f"not a recursion constant: {c!r}")
    require_guarded(c.spec)
    e = c.spec
    return substitute(e[c.var], {y: Rec(y, e) for y in e.names})


def reachable_variables(c: Rec) -> list:
    """Variables of the spec reachable from ``c.var``, in discovery order."""
    order = [c.var]
    seen = {c.var}
    i = 0
    while i < len(order):
        for v in _var_occurrences(c.spec[order[i]]):
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1
    return order


def _var_occurrences(t):
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, BINARY):
        yield from _var_occurrences(t.left)
        yield from _var_occurrences(t.right)
    elif isinstance(t, (Encap, IEncap, Placed)):
        yield from _var_occurrences(t.body)


def alpha_rename(c: Rec, body_map=None) -> Rec:
    """Rename variables to ``X0, X1, ...`` in discovery order from ``c.var``.

    Unreachable equations are dropped.  ``body_map`` is applied to each
    renamed body (the canonicalizer passes itself here).  Alpha-equivalent
    constants are mapped to the same result.
    """
    order = reachable_variables(c)
    names = {v: f"X{n}" for n, v in enumerate(order)}
    renaming = {v: Var(n) for v, n in names.items()}
    eqs = []
    for v in order:
        body = substitute(c.spec[v], renaming)
        if body_map is not None:
            body = body_map(body)
        eqs.append((names[v], body))
    return Rec("X0", RecSpec(tuple(eqs), c.spec.sort))


def alpha_equivalent(c: Rec, d: Rec) -> bool:
    return alpha_rename(c) == alpha_rename(d)
