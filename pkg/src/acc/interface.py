"""Integers with signum and the interface group.

Interface terms (:class:`IZero`, :class:`IElem`, :class:`ISum`,
:class:`INeg`) are normalized to :class:`Interface`, a sparse map from
active interface keys ``(callee, method, caller)`` to nonzero integer
multiplicities.  A passive element ``~f.m@g`` counts as ``-1`` at key
``(g, m, f)``, which is what makes ``f.m@g + ~g.m@f`` cancel.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Tuple

from .terms import Action, Kind

Key = Tuple[str, str, str]


def sg(k: int) -> int:
    return (k > 0) - (k < 0)


# ---------------------------------------------------------------------------
# interface terms


@dataclass(frozen=True)
class IZero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class IElem:
    element: Action

    def __post_init__(self):
        if self.element.kind is Kind.NEUTRAL:
            raise ValueError(f"{self.element} is not an interface element")

    def __str__(self):
        return str(self.element)


@dataclass(frozen=True)
class ISum:
    left: object
    right: object

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, ISum) else str(self.right)
        return f"{self.left} + {right}"


@dataclass(frozen=True)
class INeg:
    operand: object

    def __str__(self):
        inner = self.operand
        text = str(inner)
        return f"-({text})" if isinstance(inner, ISum) else f"-{text}"


def element_key(a: Action) -> Key:
    """The active key whose multiplicity an interface element contributes to."""
    if a.kind is Kind.ACTIVE:
        return (a.callee, a.method, a.caller)
    if a.kind is Kind.PASSIVE:
        return (a.caller, a.method, a.callee)
    raise ValueError(f"{a} is not an interface element")


# ---------------------------------------------------------------------------
# normal form


class Interface:
    """Canonical interface: keys with nonzero multiplicity only.

    Equality is equality of the underlying maps.  Instances are immutable
    and hashable.
    """

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, multiplicities: Mapping[Key, int] | Iterable = ()):
        if isinstance(multiplicities, Mapping):
            pairs = multiplicities.items()
        else:
            pairs = multiplicities
        acc = Counter()
        for key, k in pairs:
            acc[tuple(key)] += int(k)
        items = tuple(sorted((key, k) for key, k in acc.items() if k != 0))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_map", dict(items))
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, name, value):
        raise AttributeError("Interface is immutable")

    @property
    def items(self):
        return self._items

    def keys(self):
        return self._map.keys()

    def get(self, key: Key) -> int:
        return self._map.get(tuple(key), 0)

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, Interface) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._items < other._items

    def __add__(self, other):
        return combine(self, other)

    def __neg__(self):
        return invert(self)

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for (f, m, g), k in self._items:
            if k > 0:
                elem = f"{f}.{m}@{g}"
            else:
                elem = f"~{g}.{m}@{f}"
            parts.append(elem if abs(k) == 1 else f"{abs(k)} * {elem}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Interface({self})"


EMPTY = Interface()


def normalize(t) -> Interface:
    """Evaluate an interface term to its canonical multiplicity map."""
    if isinstance(t, Interface):
        return t
    acc = Counter()
    stack = [(t, 1)]
    while stack:
        node, sign = stack.pop()
        if isinstance(node, IZero):
            continue
        if isinstance(node, IElem):
            a = node.element
            acc[element_key(a)] += sign if a.kind is Kind.ACTIVE else -sign
        elif isinstance(node, ISum):
            stack.append((node.left, sign))
            stack.append((node.right, sign))
        elif isinstance(node, INeg):
            stack.append((node.operand, -sign))
        elif isinstance(node, Interface):
            for key, k in node.items:
                acc[key] += sign * k
        else:
            raise TypeError(f"not an interface term: {node!r}")
    return Interface(acc)


def mult(key, i) -> int:
    """Multiplicity of the active element ``key`` in ``i``.

    ``key`` may be an ``(f, m, g)`` triple or an active :class:`Action`.
    """
    if isinstance(key, Action):
        if key.kind is not Kind.ACTIVE:
            raise ValueError("multiplicities are indexed by active elements")
        key = (key.callee, key.method, key.caller)
    return normalize(i).get(key)


def combine(i: Interface, j: Interface) -> Interface:
    acc = Counter(dict(i.items))
    for key, k in j.items:
        acc[key] += k
    return Interface(acc)


def invert(i: Interface) -> Interface:
    return Interface((key, -k) for key, k in i.items)


def is_empty(i: Interface) -> bool:
    return not i


def permits(i: Interface, a: Action) -> bool:
    """Whether interface compliant encapsulation by ``i`` lets ``a`` through.

    Active ``f.m@g`` needs positive multiplicity at ``(f, m, g)``; passive
    ``~f.m@g`` needs negative multiplicity at ``(g, m, f)``; neutral
    actions always pass.
    """
    if a.kind is Kind.NEUTRAL:
        return True
    k = sg(i.get(element_key(a)))
    return k == 1 if a.kind is Kind.ACTIVE else k == -1


def iface_sum(terms: Iterable) -> object:
    """Left-folded interface combination of terms; empty sum is ``0``."""
    result = None
    for t in terms:
        result = t if result is None else ISum(result, t)
    return IZero() if result is None else result
