"""Component constructions: composition, the associativity condition, iencap."""
from __future__ import annotations

from dataclasses import dataclass

from .interface import Interface, combine, normalize, sg
from .terms import Comp, CompPar, IEncap, Par


def compose(c, d):
    """Component composition.

    Two basic components are merged eagerly into
    ``comp(i + j, iencap[i](x) || iencap[j](y))``; anything else stays a
    composition node whose behaviour the transition rules supply.
    """
    if isinstance(c, Comp) and isinstance(d, Comp):
        return Comp(combine(c.iface, d.iface), Par(IEncap(c.iface, c.behaviour), IEncap(d.iface, d.behaviour)))
    return CompPar(c, d)


def iencap_term(i, p):
    """``iencap[i](p)`` over the normal form of ``i``."""
    return IEncap(normalize(i), p)


@dataclass(frozen=True)
class AssocReport:
    holds: bool
    violations: tuple  # (key, mult i, mult j, mult h, mult i+j+h)

    def __str__(self):
        if self.holds:
            return "associativity condition holds"
        lines = ["associativity condition violated:"]
        for (f, m, g), mi, mj, mh, total in self.violations:
            lines.append(f"  {f}.{m}@{g}: i={mi} j={mj} h={mh} i+j+h={total}")
        return "\n".join(lines)


def assoc_condition(i: Interface, j: Interface, h: Interface, universe=None) -> AssocReport:
    """Check the side condition under which component composition associates.

    For each key: the total multiplicity is zero, or one of the three is
    zero, or all three have the same sign.  Keys outside every support
    satisfy the condition trivially, so by default only the union of the
    supports is examined; ``universe`` may list the keys explicitly.
    """
    i, j, h = normalize(i), normalize(j), normalize(h)
    total = combine(combine(i, j), h)
    keys = universe if universe is not None else set(i.keys()) | set(j.keys()) | set(h.keys())
    bad = []
    for key in sorted(keys):
        mi, mj, mh, mt = i.get(key), j.get(key), h.get(key), total.get(key)
        if mt == 0 or 0 in (mi, mj, mh):
            continue
        if sg(mi) == sg(mj) == sg(mh):
            continue
        bad.append((key, mi, mj, mh, mt))
    return AssocReport(not bad, tuple(bad))


def universe_keys(loci, methods):
    """All active keys ``(f, m, g)`` over finite loci and methods."""
    return [(f, m, g) for f in sorted(loci) for m in sorted(methods) for g in sorted(loci)]


def components_of(c):
    """Basic components of a composition, left to right."""
    if isinstance(c, Comp):
        return [c]
    return components_of(c.left) + components_of(c.right)

