"""Comparison of transition-rule steps with axiom-derived head normal forms."""
from __future__ import annotations

from acc.canon import canon
from acc.rewriter import DONE, flat_behaviour, hnf, hnf_comp, hnf_loc
from acc.sos import TICK, comp_steps, loc_steps, proc_steps
from acc.terms import CompPar


def _steps_as_summands(steps, wrap=canon):
    return frozenset((a, DONE if t is TICK else wrap(t)) for a, t in steps)


def proc_discrepancy(p):
    """``None`` when the step set of ``p`` matches its head normal form."""
    sos = _steps_as_summands(proc_steps(p))
    ax = hnf(p).canonical()
    if sos == ax:
        return None
    return {"term": str(p), "sos_only": sos - ax, "axioms_only": ax - sos}


def loc_discrepancy(l):
    sos = _steps_as_summands(loc_steps(l))
    ax = hnf_loc(l).canonical()
    return None if sos == ax else {"term": str(l), "sos_only": sos - ax, "axioms_only": ax - sos}


def _child_may_terminate(c):
    if not isinstance(c, CompPar):
        return False
    for child in (c.left, c.right):
        if any(t is TICK for _, t in comp_steps(child)) or _child_may_terminate(child):
            return True
    return False


def comp_discrepancy(c):
    """Compare ``comp_steps`` with the HNF of the CC2/CC1 flattening.

    Labels and termination always have to agree.  Remainders are compared
    as ``iencap[I](P)`` behaviours; this is skipped when some member of a
    composition can terminate in one step, because the flattened form
    keeps gating the survivor by the combined interface while the
    transition rules continue with the survivor alone.
    """
    steps = comp_steps(c)
    nf = hnf_comp(c)
    heads_sos = frozenset((a, t is TICK) for a, t in steps)
    heads_ax = frozenset((a, r is DONE) for a, r in nf.hnf.summands)
    if heads_sos != heads_ax:
        return {"term": str(c), "sos_only": heads_sos - heads_ax, "axioms_only": heads_ax - heads_sos}
    if _child_may_terminate(c):
        return None
    sos = _steps_as_summands(steps, lambda t: canon(flat_behaviour(t)))
    ax = nf.hnf.canonical()
    if sos == ax:
        return None
    return {"term": str(c), "sos_only": sos - ax, "axioms_only": ax - sos}
