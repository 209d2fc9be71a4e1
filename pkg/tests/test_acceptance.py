"""Acceptance gate: one check per criterion, each reported as PASS or FAIL.

The verdict lines are printed in the terminal summary by ``conftest.py``.
Timing bounds are measured inside each test around the work itself.
"""
import os
import random
import subprocess
import sys
import time

import pytest

from acc.bisim import NOT_BISIMILAR, UP_TO_DEPTH, bisim, bisim_comp, bisim_proc
from acc.components import assoc_condition
from acc.interface import EMPTY, IElem, INeg, ISum, IZero, combine, invert, mult, normalize
from acc.localized import place
from acc.lts import alphabet, build_lts, is_closed_system, isomorphic
from acc.parser import parse_spec, print_spec
from acc.rewriter import flat_behaviour
from acc.sos import comp_interface
from acc.terms import DELTA, Action, Atom, Comp, CompPar, Encap, IEncap, Kind, Par, size
from conftest import ACCEPTANCE
from congruence import comp_context, comp_pair, proc_context, proc_pair
from corpus import NAMES, load
from differential import _child_may_terminate, comp_discrepancy, proc_discrepancy
from generators import (
    ACTIONS,
    LOCI3,
    METHODS2,
    actions_over,
    empty_iface_term,
    enumerate_terms,
    random_basic,
    random_comp,
    random_iface_term,
    random_proc,
)


def record(n, ok, detail):
    ACCEPTANCE[n] = (ok, detail)
    assert ok, detail


# ---------------------------------------------------------------------------
# 1


def _interface_law_failures(s, t, u, keys, elements):
    a, b, c = normalize(s), normalize(t), normalize(u)
    bad = []
    if combine(EMPTY, a) != a:
        bad.append("IFG1")
    if combine(a, invert(a)) != EMPTY or normalize(ISum(s, INeg(s))) != EMPTY:
        bad.append("IFG2")
    if combine(combine(a, b), c) != combine(a, combine(b, c)):
        bad.append("IFG3")
    if combine(a, b) != combine(b, a):
        bad.append("IFG4")
    if normalize(ISum(s, t)) != combine(a, b) or normalize(INeg(s)) != invert(a):
        bad.append("homomorphism")
    for k in keys:
        if mult(k, normalize(IZero())) != 0:
            bad.append("M1")
        if mult(k, normalize(INeg(t))) != -mult(k, b):
            bad.append("M4")
        if mult(k, normalize(ISum(s, t))) != mult(k, a) + mult(k, b):
            bad.append("M5")
    for e in elements:
        key = (e.callee, e.method, e.caller)
        reflected = Action(Kind.PASSIVE, e.caller, e.method, e.callee)
        if normalize(ISum(IElem(e), IElem(reflected))) != EMPTY:
            bad.append("IFG5")
        for k in keys:
            if mult(k, normalize(IElem(e))) != (1 if k == key else 0):
                bad.append("M2/M3")
    return bad


def test_criterion_1_interface_group_laws():
    rng = random.Random(1)
    elements = actions_over(LOCI3, METHODS2, (Kind.ACTIVE, Kind.PASSIVE))
    actives = [e for e in elements if e.kind is Kind.ACTIVE]
    keys = [(e.callee, e.method, e.caller) for e in actives]
    start = time.perf_counter()
    terms = [random_iface_term(rng, 5, elements) for _ in range(12_000)]
    failures = []
    for n in range(0, len(terms) - 2, 3):
        probe = rng.sample(keys, 3)
        failures += _interface_law_failures(terms[n], terms[n + 1], terms[n + 2], probe, rng.sample(actives, 2))
    # every element and key once, exhaustively
    failures += _interface_law_failures(IZero(), IZero(), IZero(), keys, actives)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5
    record(1, ok, f"{len(terms)} interface terms, {len(failures)} law failures, {elapsed:.2f}s (< 5s)")


# ---------------------------------------------------------------------------
# 2


def test_criterion_2_closed_systems():
    rng = random.Random(2)
    disagreements = []
    explored = 0
    for _ in range(100):
        p = random_proc(rng, rng.randint(3, 10))
        i = normalize(empty_iface_term(rng))
        c = Comp(i, p)
        verdict = is_closed_system(c)
        l = build_lts(c, max_states=20_000, sort="comp")
        if l.complete:
            explored += 1
            if any(a.kind is not Kind.NEUTRAL for a in alphabet(l).labels):
                disagreements.append(str(c))
        if verdict.status != "Closed":
            disagreements.append(str(c))
    ok = not disagreements
    record(2, ok, f"100 components Closed, {explored} cross-checked by full exploration, {len(disagreements)} disagreements")


# ---------------------------------------------------------------------------
# 3


def _has_trace(l, trace):
    current = {l.root}
    for a in trace:
        current = {t for s in current for b, t in l.successors(s) if str(b) == a}
    return bool(current)


def test_criterion_3_nonassociativity():
    start = time.perf_counter()
    sf = load("nonassoc")
    r = assoc_condition(sf.interfaces["I_1"], sf.interfaces["I_2"], sf.interfaces["I_3"])
    v = bisim_comp(sf.comps["Left"], sf.comps["Right"])
    left, right = build_lts(sf.comps["Left"]), build_lts(sf.comps["Right"])
    elapsed = time.perf_counter() - start
    w = v.witness
    ok = (
        not r.holds
        and [x[0] for x in r.violations] == [("f", "m", "g")]
        and v.result == NOT_BISIMILAR
        and [str(a) for a in w.trace] == ["f.m*g"]
        and [str(a) for a in w.left_only] == ["g.m'@f"]
        and [str(a) for a in w.right_only] == ["g.m''@f"]
        and _has_trace(left, ["f.m*g", "g.m'@f"])
        and _has_trace(right, ["f.m*g", "g.m''@f"])
        and not _has_trace(left, ["f.m*g", "g.m''@f"])
        and elapsed < 1
    )
    record(3, ok, f"violation at f.m@g; {v}; {elapsed:.3f}s (< 1s)")


# ---------------------------------------------------------------------------
# 4


def test_criterion_4_conditional_associativity():
    rng = random.Random(4)
    accepted = tried = 0
    violations, shallow, exact = [], [], 0
    while accepted < 500:
        tried += 1
        c1, c2, c3 = (random_basic(rng, rng.randint(2, 5)) for _ in range(3))
        if not assoc_condition(c1.iface, c2.iface, c3.iface).holds:
            continue
        accepted += 1
        v = bisim_comp(CompPar(CompPar(c1, c2), c3), CompPar(c1, CompPar(c2, c3)), max_states=50_000)
        if v.result == NOT_BISIMILAR:
            violations.append(str(v))
        elif v.result == UP_TO_DEPTH and v.depth < 20:
            shallow.append(v.depth)
        elif v.result != UP_TO_DEPTH:
            exact += 1
    ok = not violations and not shallow
    record(
        4,
        ok,
        f"500 triples satisfying the condition (of {tried} drawn): {exact} exact, "
        f"{500 - exact - len(violations) - len(shallow)} up to depth >= 20, {len(violations)} violations",
    )


# ---------------------------------------------------------------------------
# 5


def test_criterion_5_buffer_pipeline():
    start = time.perf_counter()
    sf = load("buffer3")
    pipeline = sf.comps["Pipeline"]
    iface = comp_interface(pipeline)
    expected = parse_spec(
        "loci {s, f, g, h, r}; data D = {d1, d2, err}; methods {c_{d in D}};\n"
        "iface E = (sum d in D \\ {err} : ~s.c_{d}@f) + g.c_err@f + h.c_err@g + (sum d in D : r.c_{d}@h);"
    ).interfaces["E"]
    i_sum = combine(combine(sf.interfaces["I_f"], sf.interfaces["I_g"]), sf.interfaces["I_h"])
    flat = IEncap(i_sum, Par(sf.procs["B_f"], Par(sf.procs["B_g"], sf.procs["B_h"])))
    as_comp = bisim_comp(pipeline, Comp(i_sum, flat))
    as_proc = bisim_proc(flat_behaviour(pipeline), flat)
    l = build_lts(pipeline)
    elapsed = time.perf_counter() - start
    ok = (
        iface == expected
        and i_sum == expected
        and as_comp.holds
        and as_proc.holds
        and l.complete
        and l.n_states < 1000
        and elapsed < 10
    )
    record(5, ok, f"interface {iface}; {as_comp} / {as_proc}; {l.n_states} states; {elapsed:.2f}s (< 10s)")


# ---------------------------------------------------------------------------
# 6


def test_criterion_6_shared_buffer():
    start = time.perf_counter()
    sf = load("shared-buffer")
    iface = comp_interface(sf.comps["System"])
    single = comp_interface(sf.comps["System_single"])
    elapsed = time.perf_counter() - start
    ok = iface == sf.interfaces["I_expected"] and single != iface and elapsed < 30
    record(6, ok, f"interface {iface}; single-occurrence J gives {single}; {elapsed:.2f}s (< 30s)")


# ---------------------------------------------------------------------------
# 7


def _leaves(actions):
    return [DELTA] + [Atom(a) for a in actions]


def test_criterion_7_sos_versus_axioms():
    start = time.perf_counter()
    discrepancies = []
    counts = {}

    # (a) every term over delta, the 12 actions and the five binary operators
    n = 0
    for _, t in enumerate_terms(7, _leaves(ACTIONS)):
        n += 1
        d = proc_discrepancy(t)
        if d is not None:
            discrepancies.append(d)
    counts["binary, full alphabet, size <= 7"] = n

    # (b) with encapsulation operators as well
    blocked = frozenset([Action(Kind.ACTIVE, "f", "m", "g")])
    i = normalize(IElem(Action(Kind.ACTIVE, "f", "m", "g")))
    unary = [lambda t: Encap(blocked, t), lambda t: IEncap(i, t)]
    n = 0
    for _, t in enumerate_terms(5, _leaves(ACTIONS), unary):
        n += 1
        d = proc_discrepancy(t)
        if d is not None:
            discrepancies.append(d)
    counts["with encap/iencap, full alphabet, size <= 5"] = n
    reduced = [Action(Kind.ACTIVE, "f", "m", "g"), Action(Kind.PASSIVE, "g", "m", "f"), Action(Kind.NEUTRAL, "f", "m", "g")]
    n = 0
    for _, t in enumerate_terms(7, _leaves(reduced), unary):
        n += 1
        d = proc_discrepancy(t)
        if d is not None:
            discrepancies.append(d)
    counts["with encap/iencap, 4 leaves, size <= 7"] = n

    # (c) random larger terms, including recursion and placement
    rng = random.Random(7)
    n = 0
    while n < 10_000:
        t = random_proc(rng, rng.randint(8, 16))
        if size(t) <= 7:
            continue
        n += 1
        d = proc_discrepancy(t)
        if d is not None:
            discrepancies.append(d)
    counts["random, size > 7"] = n

    # (d) components
    comp_bad = []
    relaxed = 0
    for _ in range(1000):
        c = random_comp(rng, rng.randint(4, 18))
        relaxed += _child_may_terminate(c)
        d = comp_discrepancy(c)
        if d is not None:
            comp_bad.append(d)
    elapsed = time.perf_counter() - start
    ok = not discrepancies and not comp_bad
    summary = ", ".join(f"{v} {k}" for k, v in counts.items())
    record(
        7,
        ok,
        f"{summary}: {len(discrepancies)} discrepancies; 1000 components: {len(comp_bad)} discrepancies "
        f"({relaxed} compared on labels and termination only); {elapsed:.0f}s",
    )


# ---------------------------------------------------------------------------
# 8


def test_criterion_8_congruence():
    rng = random.Random(8)
    violations = []
    inconclusive = 0
    rules = {}
    for k in range(1000):
        if k % 4 == 3:
            rule, p, q = comp_pair(rng)
            fill = comp_context(rng)
            check = bisim_comp
        else:
            rule, p, q = proc_pair(rng)
            fill = proc_context(rng)
            check = bisim_proc
        rules[rule] = rules.get(rule, 0) + 1
        base = check(p, q)
        v = check(fill(p), fill(q), max_states=50_000)
        if not base.holds or v.result == NOT_BISIMILAR:
            violations.append((rule, str(fill(p)), str(fill(q)), str(v)))
        elif v.result == UP_TO_DEPTH:
            inconclusive += 1
    ok = not violations and not inconclusive
    mix = ", ".join(f"{r}:{c}" for r, c in sorted(rules.items()))
    record(8, ok, f"1000 pairs in contexts ({mix}): {len(violations)} violations, {inconclusive} inconclusive")


# ---------------------------------------------------------------------------
# 9


def test_criterion_9_localized_buffer():
    start = time.perf_counter()
    sf = load("localized-buffer")
    b_loc, b = sf.locs["B'"], sf.procs["B"]
    at_g, at_h = place("g", b_loc), place("h", b_loc)
    same = bisim_proc(at_g, b)
    differ = bisim_proc(at_g, at_h)

    def g_to_h(a):
        return Action(a.kind, a.callee, a.method, "h" if a.caller == "g" else a.caller)

    iso = isomorphic(build_lts(at_g), build_lts(at_h), g_to_h)
    elapsed = time.perf_counter() - start
    ok = same.holds and differ.result == NOT_BISIMILAR and iso is not None and elapsed < 1
    record(9, ok, f"place(g, B') ~ B: {same}; g vs h: {differ}; isomorphic: {iso is not None}; {elapsed:.3f}s (< 1s)")


# ---------------------------------------------------------------------------
# 10

CORPUS_COMMANDS = [
    *(["example", name] for name in NAMES),
    *(["example", name, "--format", "json"] for name in NAMES),
    ["lts", "Pipeline", "--example", "buffer3", "--format", "json"],
    ["lts", "System", "--example", "shared-buffer", "--format", "dot"],
    ["bisim", "Pipeline", "Flat", "--example", "buffer3"],
    ["bisim", "Left", "Right", "--example", "nonassoc", "--format", "json"],
    ["closed-check", "System", "--example", "shared-buffer"],
    ["assoc-check", "I_1", "I_2", "I_3", "--example", "nonassoc"],
    ["compose", "C_f", "C_g", "C_h", "--example", "buffer3"],
    ["normalize", "I_tot", "I_env", "--example", "buffer3"],
    ["lts", "B_at_h", "--example", "localized-buffer", "--format", "json"],
]


def _run_cli(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "acc", *argv], capture_output=True, env=env, check=False).stdout


def _same_spec(a, b):
    return (
        a.loci == b.loci
        and a.methods == b.methods
        and a.data == b.data
        and a.maps == b.maps
        and a.interfaces == b.interfaces
        and a.procs == b.procs
        and a.locs == b.locs
        and a.comps == b.comps
        and a.order == b.order
    )


def test_criterion_10_determinism_and_round_trip():
    unstable = []
    for argv in CORPUS_COMMANDS:
        outputs = {_run_cli(argv, seed) for seed in (0, 1, 12345)}
        if len(outputs) != 1 or not next(iter(outputs)):
            unstable.append(" ".join(argv))
    not_round_trip = [name for name in NAMES if not _same_spec(parse_spec(print_spec(load(name))), load(name))]
    ok = not unstable and not not_round_trip
    record(
        10,
        ok,
        f"{len(CORPUS_COMMANDS)} corpus commands x 3 hash seeds: {len(unstable)} unstable; "
        f"round trip fails on {len(not_round_trip)} of {len(NAMES)} files",
    )


@pytest.fixture(autouse=True, scope="module")
def _flush_caches():
    yield
    from acc import canon, sos

    canon.canon.cache_clear()
    sos._proc_steps.cache_clear()
