"""Command line front end: ``acc <command> [options] TARGETS...``.

Exit status: 0 when the property holds or the operation succeeded, 1 when
it fails, 2 when it is unknown within the exploration bounds, 3 for usage
and specification errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .bisim import BISIMILAR, NOT_BISIMILAR, bisim
from .components import assoc_condition, compose, universe_keys
from .errors import AccError, SpecSyntaxError
from .interface import Interface, mult
from .localized import place
from .lts import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_STATES,
    alphabet,
    build_lts,
    is_closed_system,
    isomorphic,
    to_aut,
    to_dot,
)
from .parser import SpecFile, parse_action, parse_interface, parse_spec, parse_term
from .sos import comp_interface, sort_of
from .terms import Comp, CompPar, render

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

CORPUS = {
    "buffer3": "buffer3.acc",
    "shared-buffer": "shared-buffer.acc",
    "nonassoc": "nonassoc.acc",
    "localized-buffer": "localized-buffer.acc",
}


class UsageError(AccError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def corpus_text(name: str) -> str:
    if name not in CORPUS:
        raise UsageError(f"unknown example {name!r}; choose from {', '.join(sorted(CORPUS))}")
    return resources.files("acc").joinpath("corpus", CORPUS[name]).read_text(encoding="utf-8")


def load_spec(args) -> SpecFile | None:
    if args.spec and args.example:
        raise UsageError("--spec and --example are mutually exclusive")
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
        return parse_spec(text)
    if args.example:
        return parse_spec(corpus_text(args.example))
    return None


# ---------------------------------------------------------------------------
# target resolution


def resolve_term(text, spec):
    """A definition name from the spec, or an inline expression."""
    if spec is not None:
        for table in (spec.comps, spec.procs, spec.locs):
            if text in table:
                return table[text]
    try:
        return parse_term(text, spec, "proc")
    except SpecSyntaxError as exc:
        if "localized" not in exc.message:
            raise
        return parse_term(text, spec, "loc")


def resolve_interface(text, spec) -> Interface:
    """An interface name, a component (its interface) or an interface expression."""
    if spec is not None:
        if text in spec.interfaces:
            return spec.interfaces[text]
        if text in spec.comps:
            return comp_interface(spec.comps[text])
    return parse_interface(text, spec)


# ---------------------------------------------------------------------------
# commands; each returns (exit status, report dict, summary line)


def cmd_normalize(args, spec):
    if not args.targets:
        raise UsageError("normalize needs at least one interface")
    results = {t: str(resolve_interface(t, spec)) for t in args.targets}
    return EXIT_OK, {"interfaces": results}, "; ".join(f"{k} = {v}" for k, v in results.items())


def cmd_mult(args, spec):
    if len(args.targets) != 2:
        raise UsageError("mult needs an interface and an active element f.m@g")
    i = resolve_interface(args.targets[0], spec)
    key = parse_action(args.targets[1], spec)
    k = mult(key, i)
    return EXIT_OK, {"interface": str(i), "element": str(key), "multiplicity": k}, str(k)


def cmd_compose(args, spec):
    if len(args.targets) < 2:
        raise UsageError("compose needs at least two components")
    terms = [resolve_term(t, spec) for t in args.targets]
    for t, term in zip(args.targets, terms):
        if not isinstance(term, (Comp, CompPar)):
            raise UsageError(f"{t} is not a component")
    result = terms[0]
    for term in terms[1:]:
        result = compose(result, term)
    iface = comp_interface(result)
    return EXIT_OK, {"component": render(result), "interface": str(iface)}, f"interface {iface}"


def cmd_lts(args, spec):
    if len(args.targets) != 1:
        raise UsageError("lts needs exactly one term")
    term = resolve_term(args.targets[0], spec)
    l = build_lts(term, args.max_states, args.max_depth)
    alpha = alphabet(l)
    report = {
        "sort": l.sort,
        "states": l.n_states,
        "edges": len(l.edges),
        "complete": l.complete,
        "alphabet": sorted(map(str, alpha.labels)),
        "aut": to_aut(l),
    }
    if args.format == "dot":
        report["dot"] = to_dot(l)
    status = EXIT_OK if l.complete else EXIT_UNKNOWN
    summary = f"{l.n_states} states, {len(l.edges)} edges, {'complete' if l.complete else 'incomplete'}"
    return status, report, summary


def cmd_bisim(args, spec):
    if len(args.targets) != 2:
        raise UsageError("bisim needs exactly two terms")
    p, q = (resolve_term(t, spec) for t in args.targets)
    if sort_of(p) != sort_of(q):
        raise UsageError("the two terms have different sorts")
    v = bisim(p, q, args.max_states, args.max_depth)
    report = {"result": v.result, "depth": v.depth}
    if v.witness is not None:
        w = v.witness
        report["witness"] = {
            "trace": [str(a) for a in w.trace],
            "observation": w.observation,
            "left_only": [str(a) for a in w.left_only],
            "right_only": [str(a) for a in w.right_only],
        }
    status = {BISIMILAR: EXIT_OK, NOT_BISIMILAR: EXIT_FAIL}.get(v.result, EXIT_UNKNOWN)
    return status, report, str(v)


def cmd_closed_check(args, spec):
    if len(args.targets) != 1:
        raise UsageError("closed-check needs exactly one component")
    c = resolve_term(args.targets[0], spec)
    if not isinstance(c, (Comp, CompPar)):
        raise UsageError(f"{args.targets[0]} is not a component")
    v = is_closed_system(c, args.max_states, args.max_depth)
    report = {"result": v.status, "method": v.method}
    if v.witness is not None:
        report["witness"] = str(v.witness)
    if v.alphabet is not None:
        report["alphabet"] = sorted(map(str, v.alphabet.labels))
        report["alphabet_exact"] = v.alphabet.exact
    status = {"Closed": EXIT_OK, "NotClosed": EXIT_FAIL}.get(v.status, EXIT_UNKNOWN)
    return status, report, f"{v} (by {v.method})"


def cmd_assoc_check(args, spec):
    if len(args.targets) != 3:
        raise UsageError("assoc-check needs three interfaces or components")
    i, j, h = (resolve_interface(t, spec) for t in args.targets)
    universe = None
    if spec is not None and spec.loci and spec.methods:
        universe = universe_keys(spec.loci, spec.methods)
    r = assoc_condition(i, j, h, universe)
    report = {
        "holds": r.holds,
        "violations": [
            {"key": f"{f}.{m}@{g}", "i": a, "j": b, "h": c, "sum": s}
            for (f, m, g), a, b, c, s in r.violations
        ],
    }
    if r.holds:
        return EXIT_OK, report, "associativity condition holds"
    keys = ", ".join(v["key"] for v in report["violations"])
    return EXIT_FAIL, report, f"associativity condition violated at {keys}"


# ---------------------------------------------------------------------------
# bundled examples


def _example_buffer3(spec, args):
    pipeline = spec.comps["Pipeline"]
    iface = comp_interface(pipeline)
    l = build_lts(pipeline, args.max_states, args.max_depth)
    checks = [
        ("composite interface equals I_tot", iface == spec.interfaces["I_tot"], str(iface)),
        ("Pipeline ~ Flat", bisim(pipeline, spec.comps["Flat"]).result == BISIMILAR, ""),
        ("Pipeline ~ Pipeline_left", bisim(pipeline, spec.comps["Pipeline_left"]).result == BISIMILAR, ""),
        ("LTS closes", l.complete, f"{l.n_states} states, {len(l.edges)} edges"),
        ("adding I_env empties the interface", not (iface + spec.interfaces["I_env"]), ""),
    ]
    return checks


def _example_shared_buffer(spec, args):
    system = spec.comps["System"]
    iface = comp_interface(system)
    single = comp_interface(spec.comps["System_single"])
    l = build_lts(system, args.max_states, args.max_depth)
    return [
        ("composite interface equals I_expected", iface == spec.interfaces["I_expected"], str(iface)),
        ("single-occurrence J changes the interface", single != iface, str(single)),
        ("LTS closes", l.complete, f"{l.n_states} states, {len(l.edges)} edges"),
    ]


def _example_nonassoc(spec, args):
    r = assoc_condition(spec.interfaces["I_1"], spec.interfaces["I_2"], spec.interfaces["I_3"])
    v = bisim(spec.comps["Left"], spec.comps["Right"], args.max_states, args.max_depth)
    return [
        ("associativity condition fails", not r.holds, "; ".join(str(r).splitlines()[1:]).strip()),
        ("(C_1 || C_2) || C_3 and C_1 || (C_2 || C_3) differ", v.result == NOT_BISIMILAR, str(v)),
    ]


def _example_localized_buffer(spec, args):
    b_loc = spec.locs["B'"]
    at_g, at_h = place("g", b_loc), place("h", b_loc)
    lg, lh = build_lts(at_g), build_lts(at_h)
    rename = lambda a: type(a)(a.kind, a.callee, a.method, "h" if a.caller == "g" else a.caller)  # noqa: E731
    return [
        ("place(g, B') ~ B", bisim(at_g, spec.procs["B"]).result == BISIMILAR, render(at_g)),
        ("at g (B') ~ B", bisim(spec.procs["B_at_g"], spec.procs["B"]).result == BISIMILAR, ""),
        ("place(g, B') and place(h, B') differ", bisim(at_g, at_h).result == NOT_BISIMILAR, ""),
        ("they are isomorphic up to renaming g to h", isomorphic(lg, lh, rename) is not None, ""),
    ]


EXAMPLES = {
    "buffer3": _example_buffer3,
    "shared-buffer": _example_shared_buffer,
    "nonassoc": _example_nonassoc,
    "localized-buffer": _example_localized_buffer,
}


def cmd_example(args, spec):
    if not args.targets:
        names = sorted(CORPUS)
        return EXIT_OK, {"examples": names}, "examples: " + ", ".join(names)
    if len(args.targets) != 1:
        raise UsageError("example takes one example name")
    name = args.targets[0]
    spec = parse_spec(corpus_text(name))
    checks = EXAMPLES[name](spec, args)
    report = {
        "example": name,
        "checks": [{"check": c, "ok": ok, "detail": d} for c, ok, d in checks],
    }
    failed = sum(1 for _, ok, _ in checks if not ok)
    status = EXIT_OK if not failed else EXIT_FAIL
    return status, report, f"{len(checks) - failed}/{len(checks)} checks passed"


COMMANDS = {
    "normalize": cmd_normalize,
    "mult": cmd_mult,
    "compose": cmd_compose,
    "lts": cmd_lts,
    "bisim": cmd_bisim,
    "closed-check": cmd_closed_check,
    "assoc-check": cmd_assoc_check,
    "example": cmd_example,
}


# ---------------------------------------------------------------------------
# output


def format_report(command, report, summary, fmt):
    if fmt == "json":
        return json.dumps({"command": command, "summary": summary, **report}, indent=2, sort_keys=True) + "\n"
    if fmt == "dot" and "dot" in report:
        return report["dot"]
    lines = [f"command: {command}"]
    for key, value in report.items():
        if key in ("aut", "dot"):
            continue
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {_plain(v)}")
        else:
            lines.append(f"{key}: {_plain(value)}")
    text = "\n".join(lines) + "\n"
    if "aut" in report:
        text += report["aut"]
    return text + f"summary: {summary}\n"


def _plain(v):
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    return str(v)


def build_parser():
    p = _Parser(prog="acc", description="Algebra of cooperating components workbench")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("targets", nargs="*", help="names from the spec file or inline expressions")
    p.add_argument("--spec", help="specification file")
    p.add_argument("--example", choices=sorted(CORPUS), help="use a bundled example as the spec")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_intermixed_args(argv)
    if args.max_states <= 0 or args.max_depth <= 0:
        err.write("acc: error: bounds must be positive\n")
        return EXIT_USAGE
    try:
        spec = load_spec(args)
        status, report, summary = COMMANDS[args.command](args, spec)
    except SpecSyntaxError as exc:
        where = args.spec or args.example or "<input>"
        err.write(f"acc: {where}:{exc}\n")
        return EXIT_USAGE
    except AccError as exc:
        err.write(f"acc: error: {exc}\n")
        return EXIT_USAGE
    out.write(format_report(args.command, report, summary, args.format))
    return status


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
