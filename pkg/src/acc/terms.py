"""Actions, the communication function and the abstract syntax of terms.

Three sorts of terms share the node classes below: processes (``Proc``),
localized processes (``Procl``) and components (``Comp``).  A localized
process is a process term whose action constants are :class:`LocAction`
values; it never contains :class:`CommMerge` or :class:`IEncap`.

All nodes are immutable.  Their hash is computed once and cached, which
matters because terms are used as dictionary keys during state space
exploration.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from functools import lru_cache


class Kind(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Action:
    """``f.m@g`` (active), ``~f.m@g`` (passive) or ``f.m*g`` (neutral).

    ``callee`` is the locus before the dot, ``caller`` the one after the
    ``@``/``*``.
    """

    kind: Kind
    callee: str
    method: str
    caller: str

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.callee, self.method, self.caller, _KIND_ORDER[self.kind])

    def __str__(self):
        if self.kind is Kind.ACTIVE:
            return f"{self.callee}.{self.method}@{self.caller}"
        if self.kind is Kind.PASSIVE:
            return f"~{self.callee}.{self.method}@{self.caller}"
        return f"{self.callee}.{self.method}*{self.caller}"

    __repr__ = __str__


@dataclass(frozen=True)
class LocAction:
    """Localized action ``f.m`` or ``~f.m``: no caller locus."""

    kind: Kind
    callee: str
    method: str

    def __post_init__(self):
        if self.kind is Kind.NEUTRAL:
            raise ValueError("localized actions are active or passive")

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.callee, self.method, "", _KIND_ORDER[self.kind])

    def placed(self, locus: str) -> Action:
        return Action(self.kind, self.callee, self.method, locus)

    def __str__(self):
        prefix = "~" if self.kind is Kind.PASSIVE else ""
        return f"{prefix}{self.callee}.{self.method}"

    __repr__ = __str__


_KIND_ORDER = {Kind.ACTIVE: 0, Kind.PASSIVE: 1, Kind.NEUTRAL: 2}


def active(f, m, g):
    return Action(Kind.ACTIVE, f, m, g)


def passive(f, m, g):
    return Action(Kind.PASSIVE, f, m, g)


def neutral(f, m, g):
    return Action(Kind.NEUTRAL, f, m, g)


# ---------------------------------------------------------------------------
# term nodes


class Term:
    """Base class of all term nodes (process, localized and component)."""

    __slots__ = ()

    def _fields(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__,) + self._fields())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        return not self == other

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"<{type(self).__name__} {render(self)}>"


@dataclass(frozen=True, eq=False, repr=False)
class Delta(Term):
    pass


DELTA = Delta()


@dataclass(frozen=True, eq=False, repr=False)
class Atom(Term):
    action: Action | LocAction


@dataclass(frozen=True, eq=False, repr=False)
class Alt(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False, repr=False)
class Seq(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False, repr=False)
class Par(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False, repr=False)
class LeftMerge(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False, repr=False)
class CommMerge(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False, repr=False)
class Encap(Term):
    blocked: frozenset
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class IEncap(Term):
    iface: object  # acc.interface.Interface
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class Rec(Term):
    """Recursion constant ``<var|spec>``; ``spec`` is a RecSpec."""

    var: str
    spec: object

    def __post_init__(self):
        if self.var not in self.spec.names:
            from .errors import ScopeError

            raise ScopeError(f"variable {self.var} is not bound by its specification")


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Placed(Term):
    locus: str
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class Comp(Term):
    iface: object
    behaviour: Term


@dataclass(frozen=True, eq=False, repr=False)
class CompPar(Term):
    left: Term
    right: Term


BINARY = (Alt, Seq, Par, LeftMerge, CommMerge)
COMPONENT = (Comp, CompPar)


def alt_of(terms):
    """Left-folded alternative composition; the empty sum is deadlock."""
    result = None
    for t in terms:
        result = t if result is None else Alt(result, t)
    return DELTA if result is None else result


def gamma(a, b):
    """Communication function: a matched request/grant pair synchronizes.

    Returns the neutral action ``f.m*g`` for ``{f.m@g, ~g.m@f}`` and
    :data:`DELTA` otherwise (including when either side is deadlock).
    """
    if not isinstance(a, Action) or not isinstance(b, Action):
        return DELTA
    if a.kind is Kind.PASSIVE and b.kind is Kind.ACTIVE:
        a, b = b, a
    if (
        a.kind is Kind.ACTIVE
        and b.kind is Kind.PASSIVE
        and a.method == b.method
        and b.callee == a.caller
        and b.caller == a.callee
    ):
        return Action(Kind.NEUTRAL, a.callee, a.method, a.caller)
    return DELTA


def free_variables(t: Term) -> frozenset:
    """Names of variables not bound by an enclosing recursion constant."""
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Rec):
        inner = frozenset()
        for _, body in t.spec.equations:
            inner |= free_variables(body)
        return inner - t.spec.names
    if isinstance(t, (Delta, Atom)):
        return frozenset()
    if isinstance(t, (Encap, IEncap, Placed)):
        return free_variables(t.body)
    if isinstance(t, Comp):
        return free_variables(t.behaviour)
    return free_variables(t.left) | free_variables(t.right)


def is_closed(t: Term) -> bool:
    return not free_variables(t)


def subterms(t: Term):
    """Pre-order walk that does not descend into recursion specs."""
    yield t
    if isinstance(t, (Encap, IEncap, Placed)):
        yield from subterms(t.body)
    elif isinstance(t, Comp):
        yield from subterms(t.behaviour)
    elif isinstance(t, BINARY + (CompPar,)):
        yield from subterms(t.left)
        yield from subterms(t.right)


def actions_of(t: Term) -> set:
    """Action constants occurring syntactically in ``t`` (recursion included)."""
    found = set()
    seen = set()

    def walk(u):
        for s in subterms(u):
            if isinstance(s, Atom):
                found.add(s.action)
            elif isinstance(s, Rec) and s.spec not in seen:
                seen.add(s.spec)
                for _, body in s.spec.equations:
                    walk(body)

    walk(t)
    return found


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


# ---------------------------------------------------------------------------
# rendering

_ALT, _MERGE, _SEQ, _PRIMARY = range(4)
_MERGE_OPS = {Par: "||", LeftMerge: "_|", CommMerge: "|"}


@lru_cache(maxsize=1 << 16)
def render(t: Term) -> str:
    return _render(t)[0]


def _wrap(t, minimum):
    text, prec = _render(t)
    return text if prec >= minimum else f"({text})"


def _render(t):
    if isinstance(t, Delta):
        return "delta", _PRIMARY
    if isinstance(t, Atom):
        return str(t.action), _PRIMARY
    if isinstance(t, Var):
        return t.name, _PRIMARY
    if isinstance(t, Alt):
        return f"{_wrap(t.left, _ALT)} + {_wrap(t.right, _MERGE)}", _ALT
    if isinstance(t, Seq):
        return f"{_wrap(t.left, _PRIMARY)} . {_wrap(t.right, _SEQ)}", _SEQ
    if type(t) in _MERGE_OPS:
        op = _MERGE_OPS[type(t)]
        return f"{_wrap(t.left, _MERGE)} {op} {_wrap(t.right, _SEQ)}", _MERGE
    if isinstance(t, Encap):
        blocked = ",".join(str(a) for a in sorted(t.blocked))
        return f"encap{{{blocked}}}({render(t.body)})", _PRIMARY
    if isinstance(t, IEncap):
        return f"iencap[{t.iface}]({render(t.body)})", _PRIMARY
    if isinstance(t, Rec):
        eqs = [(t.var, t.spec[t.var])]
        eqs += [(x, b) for x, b in t.spec.equations if x != t.var]
        body = "; ".join(f"{x} = {render(b)}" for x, b in eqs)
        return f"rec {t.var} where {{{body}}}", _PRIMARY
    if isinstance(t, Placed):
        return f"at {t.locus} ({render(t.body)})", _PRIMARY
    if isinstance(t, Comp):
        return f"comp({t.iface}, {render(t.behaviour)})", _PRIMARY
    if isinstance(t, CompPar):
        return f"{_wrap(t.left, _MERGE)} || {_wrap(t.right, _SEQ)}", _MERGE
    raise TypeError(f"not a term: {t!r}")
