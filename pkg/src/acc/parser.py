"""Specification files: tokenizer, parser, name resolution and printer.

A specification is a sequence of statements::

    loci {f, g, h};
    methods {m, c_{d in D}};          # c_{d in D} declares c_d1, c_d2, ...
    data D = {d1, d2, err};
    map F : D -> D = {d1 -> d2, d2 -> d1};
    iface I = sum d in D \\ {err} : ~s.c_{d}@f + 2 * g.c_err@f;
    proc B = sum d in D : ~f.c_{d}@g . f.c_{d}@g . B;
    loc L = ~f.c_d1 . f.c_d1 . L;
    comp C = comp(I, B) || comp(0, at g (L));

Action tokens contain no whitespace.  A method or locus name ending in
``_`` may be followed by a template ``{d}`` or ``{F(d)}`` that is filled
in from the enclosing ``sum`` binders.  Named processes that refer to
each other become recursion constants; names that are not recursive are
inlined.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import AccError, SpecSyntaxError
from .interface import IElem, INeg, ISum, IZero, Interface, normalize
from .recursion import Guardedness, RecSpec, check_guarded
from .terms import (
    DELTA,
    Action,
    Alt,
    Atom,
    CommMerge,
    Comp,
    CompPar,
    Encap,
    IEncap,
    Kind,
    LeftMerge,
    LocAction,
    Par,
    Placed,
    Rec,
    Seq,
    Var,
    alt_of,
    render,
)

KEYWORDS = {
    "loci", "methods", "data", "map", "iface", "proc", "loc", "comp",
    "delta", "encap", "iencap", "rec", "where", "at", "sum", "in",
}

_NAME = r"[A-Za-z](?:[A-Za-z0-9_']*_\{[^{}\s]*\}|[A-Za-z0-9_']*)"
_TOKEN = re.compile(
    rf"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<action>~?{_NAME}\.{_NAME}(?:[@*]{_NAME})?)
  | (?P<ident>{_NAME})
  | (?P<int>[0-9]+)
  | (?P<op>\|\||_\||->|[|+.\-*{{}}()\[\],;=:\\@~])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind != "ws":
            if kind == "ident" and m.group() in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


# ---------------------------------------------------------------------------
# raw syntax trees (tuples tagged by their first element)


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    # -- helpers -----------------------------------------------------------

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return SpecSyntaxError(message, tok.line, tok.column)

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, text):
        return self.at("op", text)

    def at_kw(self, text):
        return self.at("kw", text)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect_op(self, text):
        if not self.at_op(text):
            raise self.error(f"expected {text!r}, found {self._found()}")
        return self.advance()

    def expect_kw(self, text):
        if not self.at_kw(text):
            raise self.error(f"expected {text!r}, found {self._found()}")
        return self.advance()

    def expect_ident(self, what="a name"):
        if not self.at("ident"):
            raise self.error(f"expected {what}, found {self._found()}")
        return self.advance()

    def _found(self):
        t = self.tok
        if t.kind == "eof":
            return "end of input"
        if t.kind == "op" and t.text in "@*" and self.i and self.tokens[self.i - 1].kind == "action":
            return f"incomplete action before {t.text!r}"
        return repr(t.text)

    def ident_list(self):
        names = [self.expect_ident()]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_ident())
        return names

    # -- statements --------------------------------------------------------

    def statements(self):
        out = []
        while not self.at("eof"):
            out.append(self.statement())
        return out

    def statement(self):
        t = self.tok
        if t.kind != "kw" or t.text not in {"loci", "methods", "data", "map", "iface", "proc", "loc", "comp"}:
            if t.kind == "op" and t.text in "@*":
                raise self.error("incomplete action: expected a locus name here")
            raise self.error(f"expected a declaration, found {self._found()}")
        self.advance()
        if t.text == "loci":
            self.expect_op("{")
            names = self.ident_list()
            self.expect_op("}")
            self.expect_op(";")
            return ("loci", names, t)
        if t.text == "methods":
            self.expect_op("{")
            items = [self.method_item()]
            while self.at_op(","):
                self.advance()
                items.append(self.method_item())
            self.expect_op("}")
            self.expect_op(";")
            return ("methods", items, t)
        if t.text == "data":
            name = self.expect_ident("a data set name")
            self.expect_op("=")
            self.expect_op("{")
            values = self.ident_list()
            self.expect_op("}")
            self.expect_op(";")
            return ("data", name, values, t)
        if t.text == "map":
            name = self.expect_ident("a map name")
            self.expect_op(":")
            dom = self.expect_ident("a data set name")
            self.expect_op("->")
            cod = self.expect_ident("a data set name")
            self.expect_op("=")
            self.expect_op("{")
            pairs = []
            while not self.at_op("}"):
                a = self.expect_ident("a datum")
                self.expect_op("->")
                b = self.expect_ident("a datum")
                pairs.append((a, b))
                if not self.at_op(","):
                    break
                self.advance()
            self.expect_op("}")
            self.expect_op(";")
            return ("map", name, dom, cod, pairs, t)
        name = self.expect_ident("a definition name")
        self.expect_op("=")
        body = self.iface_expr() if t.text == "iface" else self.alt()
        self.expect_op(";")
        return ("def", t.text, name, body)

    def method_item(self):
        name = self.expect_ident("a method name")
        if self.at_op("{"):
            if not name.text.endswith("_"):
                raise self.error("only names ending in '_' take a data index")
            self.advance()
            var = self.expect_ident("an index variable")
            self.expect_kw("in")
            dset = self.expect_ident("a data set name")
            self.expect_op("}")
            return ("family", name, var, dset)
        return ("plain", name)

    def binder(self):
        start = self.expect_kw("sum")
        var = self.expect_ident("an index variable")
        self.expect_kw("in")
        dset = self.expect_ident("a data set name")
        excluded = []
        if self.at_op("\\"):
            self.advance()
            self.expect_op("{")
            excluded = self.ident_list()
            self.expect_op("}")
        self.expect_op(":")
        return var, dset, excluded, start

    # -- interfaces ----------------------------------------------------------

    def iface_expr(self):
        left = self.iface_unary()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().text
            right = self.iface_unary()
            left = ("isum", left, right if op == "+" else ("ineg", right))
        return left

    def iface_unary(self):
        t = self.tok
        if self.at_op("-"):
            self.advance()
            return ("ineg", self.iface_unary())
        if t.kind == "int" and self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            self.advance()
            return ("times", int(t.text), self.iface_unary())
        if t.kind == "int":
            if t.text != "0":
                raise self.error("only 0 is an interface constant; write n * element")
            self.advance()
            return ("zero",)
        if t.kind == "action":
            self.advance()
            return ("ielem", t)
        if t.kind == "ident":
            self.advance()
            return ("iref", t)
        if self.at_op("("):
            self.advance()
            inner = self.iface_expr()
            self.expect_op(")")
            return inner
        if self.at_kw("sum"):
            var, dset, excluded, start = self.binder()
            return ("isumover", var, dset, excluded, self.iface_unary(), start)
        raise self.error(f"expected an interface, found {self._found()}")

    # -- processes and components -------------------------------------------

    def alt(self):
        left = self.merge()
        while self.at_op("+"):
            self.advance()
            left = ("bin", "alt", left, self.merge())
        return left

    _MERGE_OPS = {"||": "par", "_|": "lmerge", "|": "cmerge"}

    def merge(self):
        left = self.seq()
        while self.tok.kind == "op" and self.tok.text in self._MERGE_OPS:
            op = self.advance()
            left = ("bin", self._MERGE_OPS[op.text], left, self.seq(), op)
        return left

    def seq(self):
        left = self.unary()
        if self.at_op("."):
            self.advance()
            return ("bin", "seq", left, self.seq())
        return left

    def unary(self):
        t = self.tok
        if t.kind == "action":
            self.advance()
            return ("act", t)
        if t.kind == "ident":
            self.advance()
            return ("ref", t)
        if self.at_op("("):
            self.advance()
            inner = self.alt()
            self.expect_op(")")
            return inner
        if t.kind == "kw":
            if t.text == "delta":
                self.advance()
                return ("delta",)
            if t.text == "encap":
                self.advance()
                self.expect_op("{")
                acts = []
                while not self.at_op("}"):
                    if not self.at("action"):
                        raise self.error(f"expected an action, found {self._found()}")
                    acts.append(self.advance())
                    if not self.at_op(","):
                        break
                    self.advance()
                self.expect_op("}")
                self.expect_op("(")
                body = self.alt()
                self.expect_op(")")
                return ("encap", acts, body)
            if t.text == "iencap":
                self.advance()
                self.expect_op("[")
                iface = self.iface_expr()
                self.expect_op("]")
                self.expect_op("(")
                body = self.alt()
                self.expect_op(")")
                return ("iencap", iface, body)
            if t.text == "rec":
                self.advance()
                var = self.expect_ident("a recursion variable")
                self.expect_kw("where")
                self.expect_op("{")
                eqs = []
                while not self.at_op("}"):
                    x = self.expect_ident("a recursion variable")
                    self.expect_op("=")
                    eqs.append((x, self.alt()))
                    if not self.at_op(";"):
                        break
                    self.advance()
                self.expect_op("}")
                return ("rec", var, eqs)
            if t.text == "at":
                self.advance()
                locus = self.expect_ident("a locus")
                self.expect_op("(")
                body = self.alt()
                self.expect_op(")")
                return ("at", locus, body)
            if t.text == "comp":
                self.advance()
                self.expect_op("(")
                iface = self.iface_expr()
                self.expect_op(",")
                body = self.alt()
                self.expect_op(")")
                return ("comp", iface, body)
            if t.text == "sum":
                var, dset, excluded, start = self.binder()
                return ("sum", var, dset, excluded, self.merge(), start)
        if t.kind == "op" and t.text in "@*":
            raise self.error("incomplete action: expected a locus name here")
        raise self.error(f"expected a process, found {self._found()}")


# ---------------------------------------------------------------------------
# resolution


@dataclass
class SpecFile:
    """A resolved specification: every definition is a closed term."""

    loci: tuple = ()
    methods: tuple = ()
    data: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    interfaces: dict = field(default_factory=dict)
    procs: dict = field(default_factory=dict)
    locs: dict = field(default_factory=dict)
    comps: dict = field(default_factory=dict)
    order: list = field(default_factory=list)  # (kind, name) in declaration order

    def lookup(self, name):
        for table in (self.comps, self.procs, self.locs, self.interfaces):
            if name in table:
                return table[name]
        raise KeyError(name)

    def kind_of(self, name):
        for kind, n in self.order:
            if n == name:
                return kind
        return None


_TEMPLATE = re.compile(r"^(?P<stem>.*_)\{(?P<arg>[^{}]*)\}$")


class _Resolver:
    def __init__(self, statements):
        self.sf = SpecFile()
        self.defs = {}
        self.positions = {}
        loci, methods = None, None
        for st in statements:
            tag = st[0]
            if tag == "loci":
                loci = (loci or []) + [t.text for t in st[1]]
            elif tag == "data":
                name, values = st[1].text, [t.text for t in st[2]]
                if len(set(values)) != len(values):
                    raise _err(f"duplicate datum in {name}", st[1])
                self.sf.data[name] = tuple(values)
            elif tag == "map":
                self._map(st)
            elif tag == "methods":
                methods = (methods or []) + self._methods(st[1])
            else:
                _, kind, name, body = st
                if name.text in self.defs:
                    raise _err(f"{name.text} is defined twice", name)
                self.defs[name.text] = (kind, body)
                self.positions[name.text] = name
                self.sf.order.append((kind, name.text))
        self.loci = None if loci is None else set(loci)
        self.methods = None if methods is None else set(methods)
        self.sf.loci = tuple(loci or ())
        self.sf.methods = tuple(methods or ())

    def _map(self, st):
        _, name, dom, cod, pairs, _start = st
        for d in (dom, cod):
            if d.text not in self.sf.data:
                raise _err(f"unknown data set {d.text}", d)
        table = {}
        for a, b in pairs:
            if a.text not in self.sf.data[dom.text]:
                raise _err(f"{a.text} is not in {dom.text}", a)
            if b.text not in self.sf.data[cod.text]:
                raise _err(f"{b.text} is not in {cod.text}", b)
            table[a.text] = b.text
        missing = set(self.sf.data[dom.text]) - set(table)
        if missing:
            raise _err(f"map {name.text} is undefined on {', '.join(sorted(missing))}", name)
        self.sf.maps[name.text] = (dom.text, cod.text, table)

    def _methods(self, items):
        out = []
        for item in items:
            if item[0] == "plain":
                out.append(item[1].text)
            else:
                _, name, _var, dset = item
                out.extend(name.text + d for d in self._dataset(dset))
        return out

    def _dataset(self, tok, excluded=()):
        if tok.text not in self.sf.data:
            raise _err(f"unknown data set {tok.text}", tok)
        values = self.sf.data[tok.text]
        for x in excluded:
            if x.text not in values:
                raise _err(f"{x.text} is not in {tok.text}", x)
        drop = {x.text for x in excluded}
        return [d for d in values if d not in drop]

    # -- names -----------------------------------------------------------

    def fill(self, name, tok, env):
        m = _TEMPLATE.match(name)
        if not m:
            return name
        arg = m.group("arg")
        call = re.match(r"^([A-Za-z][A-Za-z0-9_']*)\(([A-Za-z][A-Za-z0-9_']*)\)$", arg)
        if call:
            fn, var = call.groups()
            if fn not in self.sf.maps:
                raise _err(f"unknown map {fn}", tok)
            value = self._lookup_var(var, tok, env)
            return m.group("stem") + self.sf.maps[fn][2][value]
        return m.group("stem") + self._lookup_var(arg, tok, env)

    def _lookup_var(self, var, tok, env):
        if var not in env:
            raise _err(f"index variable {var} is not bound by an enclosing sum", tok)
        return env[var]

    def locus(self, name, tok, env):
        name = self.fill(name, tok, env)
        if self.loci is not None and name not in self.loci:
            raise _err(f"undeclared locus {name}", tok)
        return name

    def method(self, name, tok, env):
        name = self.fill(name, tok, env)
        if self.methods is not None and name not in self.methods:
            raise _err(f"undeclared method {name}", tok)
        return name

    def action(self, tok, env):
        text = tok.text
        kind = Kind.ACTIVE
        if text.startswith("~"):
            kind, text = Kind.PASSIVE, text[1:]
        m = re.match(rf"^({_NAME})\.({_NAME})(?:([@*])({_NAME}))?$", text)
        callee = self.locus(m.group(1), tok, env)
        method = self.method(m.group(2), tok, env)
        if m.group(3) is None:
            return LocAction(kind, callee, method)
        if m.group(3) == "*":
            if kind is Kind.PASSIVE:
                raise _err("a neutral action cannot be passive", tok)
            kind = Kind.NEUTRAL
        return Action(kind, callee, method, self.locus(m.group(4), tok, env))

    # -- interfaces ------------------------------------------------------

    def iface(self, node, env, stack=()):
        tag = node[0]
        if tag == "zero":
            return IZero()
        if tag == "ielem":
            a = self.action(node[1], env)
            if not isinstance(a, Action) or a.kind is Kind.NEUTRAL:
                raise _err(f"{a} is not an interface element", node[1])
            return IElem(a)
        if tag == "isum":
            return ISum(self.iface(node[1], env, stack), self.iface(node[2], env, stack))
        if tag == "ineg":
            return INeg(self.iface(node[1], env, stack))
        if tag == "times":
            n, inner = node[1], self.iface(node[2], env, stack)
            result = IZero()
            for k in range(n):
                result = inner if k == 0 else ISum(result, inner)
            return result
        if tag == "iref":
            return self.named_iface(node[1], stack)
        if tag == "isumover":
            _, var, dset, excluded, body, _start = node
            terms = [self.iface(body, {**env, var.text: d}, stack) for d in self._dataset(dset, excluded)]
            result = IZero()
            for k, t in enumerate(terms):
                result = t if k == 0 else ISum(result, t)
            return result
        raise AssertionError(tag)

    def named_iface(self, tok, stack=()):
        name = tok.text
        if name in self.sf.interfaces:
            return self.sf.interfaces[name]
        if name not in self.defs or self.defs[name][0] != "iface":
            raise _err(f"unresolved interface name {name}", tok)
        if name in stack:
            raise _err(f"interface {name} is defined in terms of itself", tok)
        value = normalize(self.iface(self.defs[name][1], {}, stack + (name,)))
        self.sf.interfaces[name] = value
        return value

    # -- processes ---------------------------------------------------------

    def refs(self, node, bound=frozenset()):
        """Definition names mentioned in a raw process tree."""
        tag = node[0]
        if tag == "ref":
            return set() if node[1].text in bound else {node[1].text}
        if tag == "bin":
            return self.refs(node[2], bound) | self.refs(node[3], bound)
        if tag in ("encap", "iencap", "at", "comp"):
            return self.refs(node[2], bound)
        if tag == "sum":
            return self.refs(node[4], bound)
        if tag == "rec":
            inner = bound | {x.text for x, _ in node[2]}
            out = set()
            for _, body in node[2]:
                out |= self.refs(body, inner)
            return out
        return set()

    def term(self, node, env, scope, sort):
        """Resolve a raw tree; ``scope`` maps names to terms (variables included)."""
        tag = node[0]
        if tag == "delta":
            return DELTA
        if tag == "act":
            a = self.action(node[1], env)
            if sort == "loc" and not isinstance(a, LocAction):
                raise _err(f"{a} is not a localized action", node[1])
            if sort != "loc" and isinstance(a, LocAction):
                raise _err(f"localized action {a} outside a placement", node[1])
            return Atom(a)
        if tag == "ref":
            tok = node[1]
            name = tok.text
            if name in scope:
                return scope[name]
            if name in self.defs and self.defs[name][0] == "comp":
                return self.named_comp(tok)
            if name in self.defs and self.defs[name][0] == "iface":
                raise _err(f"{name} is an interface, not a process", tok)
            raise _err(f"unresolved name {name}", tok)
        if tag == "bin":
            op = node[1]
            left = self.term(node[2], env, scope, sort)
            right = self.term(node[3], env, scope, sort)
            comps = isinstance(left, (Comp, CompPar)), isinstance(right, (Comp, CompPar))
            if any(comps):
                if op != "par" or not all(comps):
                    tok = node[4] if len(node) > 4 else None
                    raise _err("components combine only with other components under ||", tok)
                return CompPar(left, right)
            if op == "cmerge" and sort == "loc":
                raise _err("localized processes have no communication merge", node[4])
            return {"alt": Alt, "seq": Seq, "par": Par, "lmerge": LeftMerge, "cmerge": CommMerge}[op](left, right)
        if tag == "encap":
            acts = []
            for tok in node[1]:
                a = self.action(tok, env)
                if (sort == "loc") != isinstance(a, LocAction):
                    raise _err(f"{a} does not match the sort of the encapsulated process", tok)
                acts.append(a)
            return Encap(frozenset(acts), self.term(node[2], env, scope, sort))
        if tag == "iencap":
            if sort == "loc":
                raise _err("iencap is not a localized operator")
            return IEncap(normalize(self.iface(node[1], env)), self.term(node[2], env, scope, sort))
        if tag == "at":
            if sort == "loc":
                raise _err("placement applies to localized processes from a process context", node[1])
            locus = self.locus(node[1].text, node[1], env)
            return Placed(locus, self.term(node[2], env, scope, "loc"))
        if tag == "comp":
            return Comp(normalize(self.iface(node[1], env)), self.term(node[2], env, scope, "proc"))
        if tag == "sum":
            _, var, dset, excluded, body, _start = node
            return alt_of(
                self.term(body, {**env, var.text: d}, scope, sort) for d in self._dataset(dset, excluded)
            )
        if tag == "rec":
            _, var, eqs = node
            names = [x.text for x, _ in eqs]
            if len(set(names)) != len(names):
                raise _err("duplicate recursion variable", eqs[0][0])
            if var.text not in names:
                raise _err(f"recursion variable {var.text} has no equation", var)
            inner = {**scope, **{x: Var(x) for x in names}}
            spec = RecSpec(tuple((x.text, self.term(b, env, inner, sort)) for x, b in eqs), sort)
            self._guarded(spec, var)
            return Rec(var.text, spec)
        raise AssertionError(tag)

    def _guarded(self, spec, tok):
        if check_guarded(spec) is not Guardedness.GUARDED:
            raise _err("recursive specification is not shown guarded", tok)

    def named_comp(self, tok, stack=()):
        name = tok.text
        if name in self.sf.comps:
            return self.sf.comps[name]
        if name in self._comp_stack:
            raise _err(f"component {name} is defined in terms of itself", tok)
        self._comp_stack.append(name)
        value = self.term(self.defs[name][1], {}, dict(self._proc_scope), "proc")
        self._comp_stack.pop()
        if not isinstance(value, (Comp, CompPar)):
            raise _err(f"{name} is declared as a component but is not one", tok)
        self.sf.comps[name] = value
        return value

    def resolve(self):
        for name, (kind, _) in self.defs.items():
            if kind == "iface":
                self.named_iface(self.positions[name])
        self._comp_stack = []
        self._proc_scope = {}
        behaviours = {n: d for n, d in self.defs.items() if d[0] in ("proc", "loc")}
        graph = {n: sorted(self.refs(body) & behaviours.keys()) for n, (_, body) in behaviours.items()}
        for scc in _tarjan(graph):
            recursive = len(scc) > 1 or scc[0] in graph[scc[0]]
            sorts = {behaviours[n][0] for n in scc}
            if len(sorts) > 1:
                raise _err("processes and localized processes are mutually recursive", self.positions[scc[0]])
            sort = sorts.pop()
            if recursive:
                scope = {**self._proc_scope, **{n: Var(n) for n in scc}}
                eqs = tuple((n, self.term(behaviours[n][1], {}, scope, sort)) for n in scc)
                spec = RecSpec(eqs, sort)
                self._guarded(spec, self.positions[scc[0]])
                for n in scc:
                    self._proc_scope[n] = Rec(n, spec)
            else:
                n = scc[0]
                self._proc_scope[n] = self.term(behaviours[n][1], {}, self._proc_scope, sort)
        for n, (kind, _) in behaviours.items():
            (self.sf.locs if kind == "loc" else self.sf.procs)[n] = self._proc_scope[n]
        for name, (kind, _) in self.defs.items():
            if kind == "comp":
                self.named_comp(self.positions[name])
        return self.sf


def _tarjan(graph):
    """Strongly connected components, dependencies first."""
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = [0]

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on.add(v)
        for w in graph[v]:
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(sorted(comp))

    for v in sorted(graph):
        if v not in index:
            visit(v)
    return out


def _err(message, tok=None):
    if tok is None:
        return SpecSyntaxError(message)
    return SpecSyntaxError(message, tok.line, tok.column)


# ---------------------------------------------------------------------------
# public entry points


def parse_spec(text: str) -> SpecFile:
    """Parse and resolve a specification; errors carry line and column."""
    try:
        statements = _Parser(text).statements()
        return _Resolver(statements).resolve()
    except SpecSyntaxError:
        raise
    except AccError as exc:
        raise SpecSyntaxError(str(exc)) from exc


def parse_term(text: str, spec: SpecFile | None = None, sort: str = "proc"):
    """Parse a single process, localized process or component expression.

    Names refer to the definitions of ``spec``.  With no ``spec`` the
    universe is open: any locus or method name is accepted.
    """
    p = _Parser(text)
    node = p.alt()
    if not p.at("eof"):
        raise p.error(f"unexpected {p._found()} after the expression")
    r = _context_resolver(spec)
    try:
        return r.term(node, {}, dict(r._proc_scope), sort)
    except SpecSyntaxError:
        raise
    except AccError as exc:
        raise SpecSyntaxError(str(exc)) from exc


def parse_interface(text: str, spec: SpecFile | None = None) -> Interface:
    p = _Parser(text)
    node = p.iface_expr()
    if not p.at("eof"):
        raise p.error(f"unexpected {p._found()} after the interface")
    return normalize(_context_resolver(spec).iface(node, {}))


def parse_action(text: str, spec: SpecFile | None = None):
    tokens = tokenize(text)
    if len(tokens) != 2 or tokens[0].kind != "action":
        raise SpecSyntaxError(f"not an action: {text!r}", 1, 1)
    return _context_resolver(spec).action(tokens[0], {})


def _context_resolver(spec):
    r = _Resolver([])
    r._comp_stack = []
    r._proc_scope = {}
    if spec is not None:
        r.sf = spec
        r.loci = set(spec.loci) if spec.loci else None
        r.methods = set(spec.methods) if spec.methods else None
        r._proc_scope = {**spec.procs, **spec.locs}
        for kind, name in spec.order:
            r.defs[name] = (kind, None)
    return r


def print_spec(sf: SpecFile) -> str:
    """Render a resolved specification; parsing the output gives ``sf`` back."""
    lines = []
    if sf.loci:
        lines.append(f"loci {{{', '.join(sf.loci)}}};")
    if sf.methods:
        lines.append(f"methods {{{', '.join(sf.methods)}}};")
    for name, values in sf.data.items():
        lines.append(f"data {name} = {{{', '.join(values)}}};")
    for name, (dom, cod, table) in sf.maps.items():
        pairs = ", ".join(f"{a} -> {b}" for a, b in table.items())
        lines.append(f"map {name} : {dom} -> {cod} = {{{pairs}}};")
    for kind, name in sf.order:
        if kind == "iface":
            lines.append(f"iface {name} = {sf.interfaces[name]};")
        else:
            table = {"proc": sf.procs, "loc": sf.locs, "comp": sf.comps}[kind]
            lines.append(f"{kind} {name} = {render(table[name])};")
    return "\n".join(lines) + "\n"
