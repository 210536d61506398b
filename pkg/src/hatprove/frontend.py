"""Problem parsing and goal assembly.

Two input formats:

* TPTP fof: `fof(name, role, formula).` with roles axiom, hypothesis,
  lemma (premises) and conjecture; `include('file')` directives are
  resolved against an axiom root directory.
* native: the compact prover syntax with `,` `;` `~` `=>` `<=>` and
  quantifiers `all X:` / `ex X:`.  Precedence (strongest first) is
  `~` `,` `;` `=>` `<=>`; a quantifier's scope extends as far right as
  possible and `=>` associates to the right.

Formulas are rectified while parsing: every quantifier binds a fresh
variable, and a name always refers to the innermost enclosing binder.
Free variable names are universally closed per formula (the usual TPTP
reading), so everything downstream works on closed formulas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .terms import (
    And,
    Atom,
    BINARY,
    Exists,
    Forall,
    Formula,
    Fun,
    Iff,
    Imp,
    Neg,
    Or,
    QUANT,
    Term,
    Var,
    fresh_var,
)

EQ = "="


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{msg} at line {line}, column {col}" if line else msg)
        self.line = line
        self.col = col


@dataclass
class Problem:
    name: str
    axioms: list = field(default_factory=list)
    conjecture: Optional[Formula] = None
    uses_equality: bool = False


# ============================================================
# Tokenizer
# ============================================================

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<op><=>|<~>|=>|<=|!=|~\||~&|[(),.:;~!?\[\]=&|])
  | (?P<name>[a-z][A-Za-z0-9_]*|\$[a-z]+|'[^']*')
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
    """,
    re.VERBOSE | re.DOTALL,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line, pos - line_start + 1))
        line += value.count("\n")
        if "\n" in value:
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Tokens:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        if t[0] != "eof":
            self.i += 1
        return t

    def expect(self, value: str):
        kind, val, line, col = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", line, col)

    def at(self, value: str) -> bool:
        return self.peek()[1] == value

    def error(self, msg: str):
        _, val, line, col = self.peek()
        raise ParseError(f"{msg} (found {val!r})", line, col)


# ============================================================
# Shared parser state
# ============================================================


class _Parser:
    """Scope handling and signature checks shared by both grammars."""

    def __init__(self, tokens: _Tokens):
        self.t = tokens
        self.scopes: list[dict[str, Var]] = []
        self.free: dict[str, Var] = {}
        self.pred_arity: dict[str, int] = {}
        self.fun_arity: dict[str, int] = {}

    def push_var(self, name: str) -> Var:
        v = fresh_var(name)
        self.scopes.append({name: v})
        return v

    def pop_var(self):
        self.scopes.pop()

    def lookup_var(self, name: str) -> Var:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name not in self.free:
            self.free[name] = fresh_var(name)
        return self.free[name]

    def check_arity(self, table: dict, sym: str, n: int, what: str):
        old = table.setdefault(sym, n)
        if old != n:
            line, col = self.t.peek()[2], self.t.peek()[3]
            raise ParseError(
                f"arity clash for {what} {sym!r}: used with {old} and {n} arguments",
                line,
                col,
            )

    def close_free(self, f: Formula) -> Formula:
        """Universally close the free variable names of the last formula."""
        for v in reversed(list(self.free.values())):
            f = Forall(v, f)
        self.free = {}
        return f


# ============================================================
# Native syntax
# ============================================================


class _NativeParser(_Parser):
    def formula(self) -> Formula:
        if self.t.at("all") or self.t.at("ex"):
            return self.quantified()
        return self.iff_level()

    def quantified(self) -> Formula:
        kind, val, line, col = self.t.next()
        cls = Forall if val == "all" else Exists
        vkind, vname, vline, vcol = self.t.next()
        if vkind != "var":
            raise ParseError(f"expected a variable after {val!r}", vline, vcol)
        v = self.push_var(vname)
        self.t.expect(":")
        body = self.formula()
        self.pop_var()
        return cls(v, body)

    def iff_level(self) -> Formula:
        left = self.imp_level()
        if self.t.at("<=>"):
            self.t.next()
            return Iff(left, self.iff_level())
        return left

    def imp_level(self) -> Formula:
        left = self.or_level()
        if self.t.at("=>"):
            self.t.next()
            return Imp(left, self.imp_level())
        return left

    def or_level(self) -> Formula:
        left = self.and_level()
        if self.t.at(";"):
            self.t.next()
            return Or(left, self.or_level())
        return left

    def and_level(self) -> Formula:
        left = self.unary()
        if self.t.at(","):
            self.t.next()
            return And(left, self.and_level())
        return left

    def unary(self) -> Formula:
        if self.t.at("~"):
            self.t.next()
            return Neg(self.unary())
        if self.t.at("("):
            self.t.next()
            f = self.formula()
            self.t.expect(")")
            return f
        if self.t.at("all") or self.t.at("ex"):
            return self.quantified()
        return self.atom()

    def atom(self) -> Formula:
        kind, val, line, col = self.t.peek()
        if kind in ("name", "var", "num"):
            left = self.term()
            if self.t.at("="):
                self.t.next()
                right = self.term()
                return Atom(EQ, (left, right))
            if isinstance(left, Fun):
                self.check_arity(self.pred_arity, left.sym, len(left.args), "predicate")
                return Atom(left.sym, left.args)
            raise ParseError("a variable is not a formula", line, col)
        self.t.error("expected an atom")

    def term(self) -> Term:
        kind, val, line, col = self.t.next()
        if kind == "var":
            return self.lookup_var(val)
        if kind == "num":
            return Fun(val, ())
        if kind != "name":
            raise ParseError(f"expected a term, found {val!r}", line, col)
        sym = val.strip("'")
        args = ()
        if self.t.at("("):
            self.t.next()
            parts = [self.term()]
            while self.t.at(","):
                self.t.next()
                parts.append(self.term())
            self.t.expect(")")
            args = tuple(parts)
        if args:
            self.check_arity(self.fun_arity, sym, len(args), "function")
        return Fun(sym, args)


def parse_native_formula(text: str, close: bool = False) -> Formula:
    p = _NativeParser(_Tokens(text))
    f = p.formula()
    if not p.t.at(""):
        p.t.error("trailing input after formula")
    return p.close_free(f) if close else f


# ============================================================
# TPTP fof syntax
# ============================================================

_PREMISE_ROLES = ("axiom", "hypothesis", "lemma")


class _TptpParser(_Parser):
    def __init__(self, tokens: _Tokens, axiom_root: Optional[Path]):
        super().__init__(tokens)
        self.axiom_root = axiom_root
        self.entries: list[tuple[str, str, Formula]] = []

    def file(self):
        while not self.t.at(""):
            kind, val, line, col = self.t.peek()
            if val == "fof":
                self.fof()
            elif val == "include":
                self.include()
            else:
                raise ParseError(f"expected fof or include, found {val!r}", line, col)
        return self.entries

    def fof(self):
        self.t.expect("fof")
        self.t.expect("(")
        name = self.t.next()[1].strip("'")
        self.t.expect(",")
        _, role, line, col = self.t.next()
        self.t.expect(",")
        f = self.formula()
        f = self.close_free(f)
        self.t.expect(")")
        self.t.expect(".")
        if role not in _PREMISE_ROLES + ("conjecture",):
            raise ParseError(f"unsupported role {role!r}", line, col)
        self.entries.append((name, role, f))

    def include(self):
        self.t.expect("include")
        self.t.expect("(")
        kind, val, line, col = self.t.next()
        self.t.expect(")")
        self.t.expect(".")
        rel = val.strip("'")
        if self.axiom_root is None:
            raise ParseError(f"include({rel!r}) found but no axiom root configured", line, col)
        path = self.axiom_root / rel
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read include {str(path)!r}: {exc}", line, col)
        sub = _TptpParser(_Tokens(text), self.axiom_root)
        sub.pred_arity = self.pred_arity
        sub.fun_arity = self.fun_arity
        self.entries.extend(sub.file())

    # fof formulas: quantifiers and ~ bind tightest, then & | then => <=>

    def formula(self) -> Formula:
        left = self.unit()
        kind, val, line, col = self.t.peek()
        if val == "&":
            while self.t.at("&"):
                self.t.next()
                left = And(left, self.unit())
            return left
        if val == "|":
            while self.t.at("|"):
                self.t.next()
                left = Or(left, self.unit())
            return left
        if val == "=>":
            self.t.next()
            return Imp(left, self.formula())
        if val == "<=>":
            self.t.next()
            return Iff(left, self.formula())
        if val == "<=":
            self.t.next()
            return Imp(self.formula(), left)
        if val == "<~>":
            self.t.next()
            return Neg(Iff(left, self.formula()))
        return left

    def unit(self) -> Formula:
        kind, val, line, col = self.t.peek()
        if val == "~":
            self.t.next()
            return Neg(self.unit())
        if val in ("!", "?"):
            self.t.next()
            cls = Forall if val == "!" else Exists
            self.t.expect("[")
            names = []
            while True:
                vkind, vname, vline, vcol = self.t.next()
                if vkind != "var":
                    raise ParseError("expected a variable in quantifier list", vline, vcol)
                names.append(vname)
                if self.t.at(","):
                    self.t.next()
                    continue
                break
            self.t.expect("]")
            self.t.expect(":")
            vs = [self.push_var(n) for n in names]
            body = self.unit()
            for _ in names:
                self.pop_var()
            for v in reversed(vs):
                body = cls(v, body)
            return body
        if val == "(":
            self.t.next()
            f = self.formula()
            self.t.expect(")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        kind, val, line, col = self.t.peek()
        if kind in ("name", "var", "num"):
            left = self.term()
            if self.t.at("="):
                self.t.next()
                return Atom(EQ, (left, self.term()))
            if self.t.at("!="):
                self.t.next()
                return Neg(Atom(EQ, (left, self.term())))
            if isinstance(left, Fun):
                self.check_arity(self.pred_arity, left.sym, len(left.args), "predicate")
                return Atom(left.sym, left.args)
            raise ParseError("a variable is not a formula", line, col)
        self.t.error("expected an atom")

    def term(self) -> Term:
        kind, val, line, col = self.t.next()
        if kind == "var":
            return self.lookup_var(val)
        if kind == "num":
            return Fun(val, ())
        if kind != "name":
            raise ParseError(f"expected a term, found {val!r}", line, col)
        sym = val.strip("'")
        args = ()
        if self.t.at("("):
            self.t.next()
            parts = [self.term()]
            while self.t.at(","):
                self.t.next()
                parts.append(self.term())
            self.t.expect(")")
            args = tuple(parts)
        if args:
            self.check_arity(self.fun_arity, sym, len(args), "function")
        return Fun(sym, args)


# ============================================================
# Problem level
# ============================================================


def formula_uses_equality(f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.pred == EQ
    if isinstance(f, Neg):
        return formula_uses_equality(f.body)
    if isinstance(f, BINARY):
        return formula_uses_equality(f.left) or formula_uses_equality(f.right)
    if isinstance(f, QUANT):
        return formula_uses_equality(f.body)
    raise TypeError(f"not a formula: {f!r}")


def parse_problem(
    text, fmt: str = "tptp", name: str = "problem", axiom_root=None
) -> Problem:
    """Parse a problem file's contents into premises and conjecture."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    prob = Problem(name)
    if fmt == "native":
        f = parse_native_formula(text, close=True)
        prob.conjecture = f
    elif fmt == "tptp":
        root = Path(axiom_root) if axiom_root is not None else None
        parser = _TptpParser(_Tokens(text), root)
        for entry_name, role, f in parser.file():
            if role == "conjecture":
                if prob.conjecture is not None:
                    raise ParseError("more than one conjecture")
                prob.conjecture = f
            else:
                prob.axioms.append(f)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    prob.uses_equality = any(
        formula_uses_equality(f)
        for f in prob.axioms + ([prob.conjecture] if prob.conjecture else [])
    )
    return prob


def conjoin(formulas) -> Formula:
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


def assemble_goal(prob: Problem) -> Formula:
    """The single formula whose HT validity decides the problem.

    With a conjecture C: (A1 , ... , An) => C.  Without one, the axioms
    must be unsatisfiable, read here as provability of ~(A1 , ... , An).
    """
    if prob.conjecture is None:
        if not prob.axioms:
            raise ValueError(f"problem {prob.name!r} has no formulas")
        return Neg(conjoin(prob.axioms))
    if not prob.axioms:
        return prob.conjecture
    return Imp(conjoin(prob.axioms), prob.conjecture)


# ============================================================
# Equality axioms
# ============================================================


def _signature(f: Formula, preds: dict, funs: dict):
    def from_term(t: Term):
        if isinstance(t, Fun):
            if t.args and t.sym not in funs:
                funs[t.sym] = len(t.args)
            for a in t.args:
                from_term(a)

    if isinstance(f, Atom):
        if f.pred != EQ and f.args and f.pred not in preds:
            preds[f.pred] = len(f.args)
        for a in f.args:
            from_term(a)
    elif isinstance(f, Neg):
        _signature(f.body, preds, funs)
    elif isinstance(f, BINARY):
        _signature(f.left, preds, funs)
        _signature(f.right, preds, funs)
    elif isinstance(f, QUANT):
        _signature(f.body, preds, funs)


def equality_axioms(f: Formula) -> list:
    """Reflexivity, symmetry, transitivity and per-position congruence."""
    x = fresh_var("X")
    y = fresh_var("Y")
    z = fresh_var("Z")
    eq = lambda a, b: Atom(EQ, (a, b))
    axioms = [
        Forall(x, eq(x, x)),
        Forall(x, Forall(y, Imp(eq(x, y), eq(y, x)))),
        Forall(x, Forall(y, Forall(z, Imp(And(eq(x, y), eq(y, z)), eq(x, z))))),
    ]
    preds: dict[str, int] = {}
    funs: dict[str, int] = {}
    _signature(f, preds, funs)
    for sym, arity in funs.items():
        for i in range(arity):
            xs = [fresh_var(f"X{k + 1}") for k in range(arity)]
            w = fresh_var("Y")
            ys = list(xs)
            ys[i] = w
            body = Imp(eq(xs[i], w), eq(Fun(sym, tuple(xs)), Fun(sym, tuple(ys))))
            for v in reversed(xs + [w]):
                body = Forall(v, body)
            axioms.append(body)
    for sym, arity in preds.items():
        for i in range(arity):
            xs = [fresh_var(f"X{k + 1}") for k in range(arity)]
            w = fresh_var("Y")
            ys = list(xs)
            ys[i] = w
            body = Imp(eq(xs[i], w), Imp(Atom(sym, tuple(xs)), Atom(sym, tuple(ys))))
            for v in reversed(xs + [w]):
                body = Forall(v, body)
            axioms.append(body)
    return axioms


def add_equality_axioms(f: Formula) -> Formula:
    """Wrap the goal with equality axioms when `=` occurs, else identity."""
    if not formula_uses_equality(f):
        return f
    return Imp(conjoin(equality_axioms(f)), f)


# ============================================================
# Printing (native syntax)
# ============================================================


def to_native(f: Formula) -> str:
    """Print a formula in the native syntax; parseable back."""
    names = _display_names(f)

    def pt(t: Term) -> str:
        if isinstance(t, Var):
            return names[t.id]
        if not t.args:
            return t.sym
        return f"{t.sym}({','.join(pt(a) for a in t.args)})"

    def go(g: Formula) -> str:
        if isinstance(g, Atom):
            if g.pred == EQ and len(g.args) == 2:
                return f"{pt(g.args[0])} = {pt(g.args[1])}"
            if not g.args:
                return g.pred
            return f"{g.pred}({','.join(pt(a) for a in g.args)})"
        if isinstance(g, Neg):
            return f"~ {go(g.body)}"
        if isinstance(g, And):
            return f"({go(g.left)} , {go(g.right)})"
        if isinstance(g, Or):
            return f"({go(g.left)} ; {go(g.right)})"
        if isinstance(g, Imp):
            return f"({go(g.left)} => {go(g.right)})"
        if isinstance(g, Iff):
            return f"({go(g.left)} <=> {go(g.right)})"
        if isinstance(g, Forall):
            return f"(all {names[g.var.id]}: {go(g.body)})"
        if isinstance(g, Exists):
            return f"(ex {names[g.var.id]}: {go(g.body)})"
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def _display_names(f: Formula) -> dict:
    """One valid, unambiguous display name per variable id."""
    ids: list[int] = []
    hints: dict[int, str] = {}

    def from_term(t: Term):
        if isinstance(t, Var):
            if t.id not in hints:
                ids.append(t.id)
                hints[t.id] = t.name
        else:
            for a in t.args:
                from_term(a)

    def walk(g: Formula):
        if isinstance(g, Atom):
            for a in g.args:
                from_term(a)
        elif isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, BINARY):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, QUANT):
            from_term(g.var)
            walk(g.body)

    walk(f)
    used: set[str] = set()
    names: dict[int, str] = {}
    for vid in ids:
        base = hints[vid]
        if not re.fullmatch(r"[A-Z_][A-Za-z0-9_]*", base):
            base = "V"
        cand = base
        k = vid
        while cand in used:
            cand = f"{base}_{k}"
            k += 1
        used.add(cand)
        names[vid] = cand
    return names
