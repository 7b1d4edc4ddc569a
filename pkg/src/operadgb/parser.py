"""Line-oriented text format for operad presentations.

::

    # comment
    operad ass
    mode nonsymmetric
    order path-lex
    symbols m
    gen m 2
    rel m(m(1,2),3) - m(1,m(2,3))

``symbols`` lists generators smallest first, separated by ``<``; the value
``clie`` selects the conformal Lie symbol rule (generators named ``b<n>_<j>``).
``order`` accepts optional ``word=``, ``perm=`` and ``arity=`` settings.
Relations whose leaves are variable names (``o(a,b)``) are relations of a
symmetric operad; they are expanded to shuffle form, which needs
``mode shuffle``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import tree as T
from .errors import (
    ArityError,
    ArityMismatch,
    NonHomogeneousRelation,
    OperadError,
    PresentationSyntaxError,
    UnknownGenerator,
)
from .order import OrderSpec
from .poly import TreePolynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*(),]))")
_CLIE_NAME = re.compile(r"^b(\d+)_(\d+)$")
_ORDER_OPTS = {"word": "word_direction", "perm": "permutation_rule", "arity": "arity_rule"}


class _Tokens:
    def __init__(self, text, line, col0, source):
        self.items = []
        self.line, self.source = line, source
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PresentationSyntaxError(f"unexpected character {text[pos]!r}",
                                              line, col0 + pos + 1, source)
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0
        self.end_col = col0 + len(text) + 1

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, col = self.take()
        if v != value:
            self.error(f"expected {value!r}, found {v or 'end of line'!r}", col)

    def error(self, msg, col):
        raise PresentationSyntaxError(msg, self.line, col, self.source)


def _parse_term(tk: _Tokens):
    """A tree expression; returns a nested tuple (name, col, args) or a leaf."""
    kind, v, col = tk.take()
    if kind == "num" and "/" not in v:
        return ("leaf", int(v), col)
    if kind != "name":
        tk.error(f"expected a term, found {v or 'end of line'!r}", col)
    if tk.peek()[1] != "(":
        return ("var", v, col)
    tk.take()
    args = [_parse_term(tk)]
    while tk.peek()[1] == ",":
        tk.take()
        args.append(_parse_term(tk))
    tk.expect(")")
    return ("op", v, col, args)


def _parse_sum(tk: _Tokens):
    out = []
    sign = 1
    kind, v, col = tk.peek()
    if v in ("+", "-"):
        tk.take()
        sign = -1 if v == "-" else 1
    while True:
        coef = Fraction(sign)
        kind, v, col = tk.peek()
        if kind == "num" and tk.i + 1 < len(tk.items) and tk.items[tk.i + 1][1] == "*":
            tk.take()
            tk.take()
            coef *= Fraction(v)
            kind, v, col = tk.peek()
        term = _parse_term(tk)
        if term[0] != "op":
            tk.error("a relation term must start with a generator", term[2])
        out.append((coef, term, col))
        kind, v, col = tk.peek()
        if kind is None:
            return out
        if v not in ("+", "-"):
            tk.error(f"expected '+' or '-', found {v!r}", col)
        tk.take()
        sign = -1 if v == "-" else 1


def _uses_variables(term) -> bool:
    if term[0] == "var":
        return True
    if term[0] == "leaf":
        return False
    return any(_uses_variables(a) for a in term[3])


def _build_tree(term, gens, tk):
    if term[0] == "leaf":
        if term[1] < 1:
            tk.error("leaf labels start at 1", term[2])
        return T.Leaf(term[1])
    if term[0] == "var":
        tk.error(f"variable {term[1]!r} mixed with numbered leaves", term[2])
    _, name, col, args = term
    if name not in gens:
        raise UnknownGenerator(f"undeclared generator {name!r}", tk.line, col, tk.source)
    g = gens[name]
    if len(args) != g.arity:
        raise ArityError(f"{name} takes {g.arity} arguments, got {len(args)}", tk.line, col, tk.source)
    return T.Node(g, [_build_tree(a, gens, tk) for a in args])


def _to_symbolic(term, sym_gens, tk):
    if term[0] == "var":
        return term[1]
    if term[0] == "leaf":
        tk.error("numbered leaf mixed with variables", term[2])
    _, name, col, args = term
    if name not in sym_gens:
        raise UnknownGenerator(f"undeclared generator {name!r}", tk.line, col, tk.source)
    if len(args) != sym_gens[name].arity:
        raise ArityError(f"{name} takes {sym_gens[name].arity} arguments, got {len(args)}",
                         tk.line, col, tk.source)
    return (name, *[_to_symbolic(a, sym_gens, tk) for a in args])


def _polynomial(parsed, gens, tk, mode="shuffle") -> TreePolynomial:
    terms: dict = {}
    arity = None
    for coef, term, col in parsed:
        t = _build_tree(term, gens, tk)
        if arity is not None and t.arity != arity:
            raise NonHomogeneousRelation(f"term of arity {t.arity} in a relation of arity {arity}",
                                         tk.line, col, tk.source)
        arity = t.arity
        if not T.is_standard(t):
            raise ArityError(f"{T.render(t)} is not a shuffle monomial on 1..{t.arity}",
                             tk.line, col, tk.source)
        if mode == "nonsymmetric" and not T.is_nonsymmetric(t):
            raise ArityError(f"{T.render(t)} must read 1..{t.arity} left to right in nonsymmetric mode",
                             tk.line, col, tk.source)
        terms[t] = terms.get(t, 0) + coef
    return TreePolynomial(terms)


def parse_polynomial(text: str, gens: dict, mode: str = "shuffle", line: int = 1) -> TreePolynomial:
    tk = _Tokens(text, line, 0, None)
    parsed = _parse_sum(tk)
    return _polynomial(parsed, gens, tk, mode)


def parse_presentation(text: str, source: str | None = None):
    from .presentations import Presentation, SymGenerator, clie_generator, shuffle_expand

    name, mode, kind, symbols = "unnamed", None, "path-lex", None
    order_opts: dict = {}
    family = None
    decls = []  # (name, arity, symmetry, line, col)
    rels = []  # (parsed, tokens)

    def err(msg, ln, col):
        raise PresentationSyntaxError(msg, ln, col, source)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip())
        head, _, rest = stripped.partition(" ")
        rest_col = col0 + len(head) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        words = rest.split()
        if head == "operad":
            if len(words) != 1:
                err("operad takes one name", ln, rest_col + 1)
            name = words[0]
        elif head == "mode":
            if words not in (["nonsymmetric"], ["shuffle"]):
                err("mode must be nonsymmetric or shuffle", ln, rest_col + 1)
            mode = words[0]
        elif head == "order":
            if not words or words[0] not in ("path-lex", "forest-lex"):
                err("order must be path-lex or forest-lex", ln, rest_col + 1)
            kind = words[0]
            for w in words[1:]:
                key, _, val = w.partition("=")
                if key not in _ORDER_OPTS or not val:
                    err(f"unknown order option {w!r}", ln, rest_col + rest.find(w) + 1)
                order_opts[_ORDER_OPTS[key]] = val
        elif head == "symbols":
            symbols = "clie" if words == ["clie"] else tuple(s.strip() for s in rest.split("<"))
            if symbols != "clie" and not all(symbols):
                err("symbols are separated by '<'", ln, rest_col + 1)
        elif head == "params":
            try:
                family = tuple(int(w) for w in words)
            except ValueError:
                err("params takes integers", ln, rest_col + 1)
        elif head == "gen":
            if len(words) not in (2, 3) or not words[1].isdigit():
                err("expected: gen NAME ARITY [antisymmetric|symmetric]", ln, rest_col + 1)
            sym = words[2] if len(words) == 3 else "none"
            if sym not in ("none", "antisymmetric", "symmetric"):
                err(f"unknown symmetry {sym!r}", ln, rest_col + rest.find(sym) + 1)
            if int(words[1]) < 1:
                raise ArityError("generator arity must be at least 1", ln, rest_col + rest.find(words[1]) + 1, source)
            decls.append((words[0], int(words[1]), sym, ln, rest_col + 1))
        elif head == "rel":
            tk = _Tokens(rest, ln, rest_col, source)
            rels.append((_parse_sum(tk), tk))
        else:
            err(f"unknown directive {head!r}", ln, col0 + 1)

    if mode is None:
        raise PresentationSyntaxError("missing 'mode' line", None, None, source)
    seen = set()
    for gname, _, _, ln, col in decls:
        if gname in seen:
            err(f"generator {gname!r} declared twice", ln, col)
        seen.add(gname)

    symbolic = any(_uses_variables(t) for parsed, _ in rels for _, t, _ in parsed)
    symmetric_decl = any(sym != "none" for _, _, sym, _, _ in decls)
    if symbolic or symmetric_decl:
        if mode != "shuffle":
            err("relations in variables need 'mode shuffle'", rels[0][1].line if rels else 1, 1)
        try:
            sym_gens = {g: SymGenerator(g, a, s) for g, a, s, _, _ in decls}
        except OperadError as e:
            raise ArityError(str(e), None, None, source) from None
        sym_rels = []
        for parsed, tk in rels:
            sym_rels.append([(c, _to_symbolic(t, sym_gens, tk)) for c, t, _ in parsed])
        spec = OrderSpec(kind=kind, symbols=symbols, **order_opts) if symbols and symbols != "clie" else None
        p = shuffle_expand(sym_rels, list(sym_gens.values()), name=name, spec=spec)
        return p

    gens = {}
    for gname, arity, _, ln, col in decls:
        if symbols == "clie":
            m = _CLIE_NAME.match(gname)
            if not m or arity != 2:
                err(f"generator {gname!r} must be binary and named b<n>_<j> under 'symbols clie'", ln, col)
            gens[gname] = clie_generator(int(m.group(1)), int(m.group(2)))
        else:
            gens[gname] = T.Generator(gname, arity)
    if symbols == "clie":
        spec = OrderSpec(kind=kind, symbol_rule="clie", **order_opts)
    else:
        order = symbols or tuple(gens)
        missing = [g for g in gens if g not in order]
        if missing:
            err(f"generators {missing} missing from 'symbols'", 1, 1)
        spec = OrderSpec(kind=kind, symbols=order, **order_opts)
    polys = []
    for parsed, tk in rels:
        try:
            polys.append(_polynomial(parsed, gens, tk, mode))
        except ArityMismatch as e:
            raise ArityError(str(e), tk.line, None, source) from None
    return Presentation(name, mode, tuple(gens.values()), tuple(p for p in polys if p), spec,
                        family_params=family).validate()


def _render_poly(f: TreePolynomial, spec) -> str:
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms(spec)):
        a = abs(c)
        body = T.render(m) if a == 1 else f"{a}*{T.render(m)}"
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(parts)


def render_presentation(p) -> str:
    """Text form of a presentation in shuffle (numbered-leaf) terms."""
    spec = p.order_spec
    lines = [f"operad {p.name}", f"mode {p.mode}"]
    opts = []
    defaults = OrderSpec()
    for short, attr in _ORDER_OPTS.items():
        if getattr(spec, attr) != getattr(defaults, attr):
            opts.append(f"{short}={getattr(spec, attr)}")
    lines.append(" ".join([f"order {spec.kind}"] + opts))
    if spec.symbol_rule == "clie":
        lines.append("symbols clie")
    else:
        lines.append("symbols " + " < ".join(spec.symbols))
    if p.family_params is not None:
        lines.append("params " + " ".join(str(x) for x in p.family_params))
    for g in p.generators:
        lines.append(f"gen {g.name} {g.arity}")
    for r in p.relations:
        lines.append(f"rel {_render_poly(r, spec)}")
    return "\n".join(lines) + "\n"
