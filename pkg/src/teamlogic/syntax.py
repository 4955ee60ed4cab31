"""Concrete ASCII grammar: tokenizer, recursive-descent parser and renderer.

Precedence from loosest to tightest::

    <~>                 right associative
    ->  ~>  -o          right associative
    |   ||  *           left associative
    &   &&              left associative
    ! ~ box delta dia forall shriek exists   prefix

Derived connectives are desugared while parsing.  ``$name`` tokens are
schema metavariables and are only accepted with ``allow_meta=True``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .formula import (
    EMPTY_SIGNATURE,
    Box,
    ClassicalImpl,
    ClassicalNeg,
    Constant,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    Formula,
    FunctionApp,
    LinearImpl,
    MaterialImpl,
    MetaTerm,
    MetaVar,
    PropAtom,
    Shriek,
    Signature,
    StrongNeg,
    Term,
    Variable,
    as_conj,
    as_dia,
    as_disj,
    as_exists,
    as_some,
    as_tensor,
    as_vee,
    as_strong_iff,
    as_wedge,
    bottom,
    conj,
    dia,
    disj,
    exists,
    fo_top,
    fresh_name,
    iff,
    nonempty,
    some,
    strong_falsum,
    strong_iff,
    tensor,
    top,
    vee,
    wedge,
)

CLASSICAL_META = frozenset({"alpha", "beta", "gamma", "delta"})
GENERAL_META = frozenset({"phi", "psi", "theta", "chi"})
VARIABLE_META = frozenset({"x", "y", "z"})
TERM_META = frozenset({"t", "s"})

KEYWORDS = {"box", "delta", "dia", "forall", "shriek", "exists", "T", "F", "FF", "NE"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><~>|<->|~>|->|-o|&&|\|\||[~!&|*().,=])
  | (?P<meta>\$[A-Za-z_][A-Za-z0-9_]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Syntax error, unknown symbol or arity mismatch, with a source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}" if line else message)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_IMPL_OPS = {"->": ClassicalImpl, "~>": MaterialImpl, "-o": LinearImpl}
_OR_OPS = {"|": disj, "||": vee, "*": tensor}
_AND_OPS = {"&": conj, "&&": wedge}


class _Parser:
    def __init__(self, text: str, sig: Signature, allow_meta: bool, top_atom: str | None):
        self.tokens = tokenize(text)
        self.i = 0
        self.sig = sig
        self.allow_meta = allow_meta
        self.fo = sig.is_first_order
        self.top = self._choose_top(top_atom)

    def _choose_top(self, top_atom):
        if top_atom is not None:
            return top(top_atom)
        if self.fo:
            used = {t.text for t in self.tokens if t.kind == "ident"}
            return fo_top(fresh_name("v", used))
        if self.sig.props:
            return top(self.sig.props[0])
        names = sorted(
            t.text
            for t in self.tokens
            if t.kind == "ident" and t.text not in KEYWORDS and t.text != "E"
        )
        return top(names[0] if names else "p")

    # token helpers
    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind not in ("op", "ident"):
            self.fail(f"expected {text!r} but found {tok.text or 'end of input'!r}", tok)
        return self.take()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    # grammar
    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r}")
        return f

    def iff(self) -> Formula:
        left = self.impl()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "<~>":
            self.take()
            return strong_iff(left, self.iff())
        if tok.kind == "op" and tok.text == "<->":
            self.take()
            return iff(left, self.iff())
        return left

    def impl(self) -> Formula:
        left = self.disjunction()
        tok = self.peek()
        if tok.kind == "op" and tok.text in _IMPL_OPS:
            self.take()
            return _IMPL_OPS[tok.text](left, self.impl())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek().kind == "op" and self.peek().text in _OR_OPS:
            op = _OR_OPS[self.take().text]
            left = op(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.prefix()
        while self.peek().kind == "op" and self.peek().text in _AND_OPS:
            op = _AND_OPS[self.take().text]
            left = op(left, self.prefix())
        return left

    def prefix(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "!":
            self.take()
            return ClassicalNeg(self.prefix())
        if tok.kind == "op" and tok.text == "~":
            self.take()
            return StrongNeg(self.prefix())
        if tok.kind == "ident" and tok.text in ("box", "delta", "dia"):
            self.take()
            body = self.prefix()
            return {"box": Box, "delta": Delta, "dia": dia}[tok.text](body)
        if tok.kind == "ident" and tok.text in ("forall", "shriek", "exists"):
            self.take()
            var = self.bound_variable()
            self.expect(".")
            body = self.prefix()
            if tok.text == "forall":
                return ForAll(var, body)
            if tok.text == "shriek":
                return Shriek(var, body)
            return exists(var, body)
        return self.primary()

    def bound_variable(self) -> str:
        tok = self.take()
        if tok.kind == "meta":
            if not self.allow_meta:
                self.fail(f"metavariable {tok.text} outside a schema", tok)
            return tok.text
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.fail("expected a variable name", tok)
        if tok.text in self.sig.constants or tok.text in self.sig.relations or tok.text in self.sig.functions:
            self.fail(f"{tok.text!r} is a signature symbol, not a variable", tok)
        return tok.text

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.take()
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "meta":
            return self.meta_or_equality()
        if tok.kind != "ident":
            self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)
        if tok.text == "T":
            self.take()
            return self.top
        if tok.text == "F":
            self.take()
            return bottom(self.top)
        if tok.text == "FF":
            self.take()
            return strong_falsum(self.top)
        if tok.text == "NE":
            self.take()
            return nonempty(self.top)
        if tok.text == "E" and self.peek(1).text == "(":
            self.take()
            self.take()
            f = self.iff()
            self.expect(")")
            return some(f)
        if tok.text in KEYWORDS:
            self.fail(f"unexpected keyword {tok.text!r}", tok)
        return self.atom()

    def meta_or_equality(self) -> Formula:
        tok = self.take()
        if not self.allow_meta:
            self.fail(f"metavariable {tok.text} outside a schema", tok)
        name = tok.text[1:]
        if self.peek().text == "=":
            self.take()
            return FoEquality(MetaTerm(name), self.term())
        if name in VARIABLE_META or name in TERM_META:
            self.fail(f"term metavariable {tok.text} used as a formula", tok)
        return MetaVar(name, name in CLASSICAL_META or name.rstrip("0123456789") in CLASSICAL_META)

    def atom(self) -> Formula:
        tok = self.take()
        name = tok.text
        if self.peek().text == "(":
            if name in self.sig.relations:
                args = self.arguments()
                if len(args) != self.sig.relations[name]:
                    raise ParseError(
                        f"arity mismatch: {name} expects {self.sig.relations[name]} arguments, got {len(args)}",
                        tok.line,
                        tok.column,
                    )
                return FoPredicate(name, args)
            if name in self.sig.functions:
                left = self.finish_term(tok)
                self.expect("=")
                return FoEquality(left, self.term())
            self.fail(f"unknown symbol {name!r}", tok)
        if self.peek().text == "=":
            self.take()
            return FoEquality(self.term_from_name(tok), self.term())
        if self.fo:
            if self.sig.relations.get(name) == 0:
                return FoPredicate(name, ())
            if name in self.sig.relations:
                raise ParseError(f"arity mismatch: {name} expects {self.sig.relations[name]} arguments, got 0", tok.line, tok.column)
            self.fail(f"unknown symbol {name!r}", tok)
        return PropAtom(name)

    def arguments(self) -> tuple:
        self.expect("(")
        args = [self.term()]
        while self.peek().text == ",":
            self.take()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.take()
        if tok.kind == "meta":
            if not self.allow_meta:
                self.fail(f"metavariable {tok.text} outside a schema", tok)
            return MetaTerm(tok.text[1:])
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.fail("expected a term", tok)
        if self.peek().text == "(":
            return self.finish_term(tok)
        return self.term_from_name(tok)

    def finish_term(self, tok: Token) -> Term:
        name = tok.text
        if name not in self.sig.functions:
            self.fail(f"unknown symbol {name!r}", tok)
        args = self.arguments()
        if len(args) != self.sig.functions[name]:
            raise ParseError(
                f"arity mismatch: {name} expects {self.sig.functions[name]} arguments, got {len(args)}",
                tok.line,
                tok.column,
            )
        return FunctionApp(name, args)

    def term_from_name(self, tok: Token) -> Term:
        name = tok.text
        if name in self.sig.constants:
            return Constant(name)
        if name in self.sig.functions:
            if self.sig.functions[name] != 0:
                raise ParseError(f"arity mismatch: {name} expects {self.sig.functions[name]} arguments, got 0", tok.line, tok.column)
            return FunctionApp(name, ())
        if name in self.sig.relations:
            self.fail(f"relation {name!r} used as a term", tok)
        return Variable(name)


def parse(text: str, sig: Signature | None = None, *, allow_meta: bool = False, top_atom: str | None = None) -> Formula:
    """Parse surface syntax into a desugared formula.

    ``T`` becomes ``p0 -> p0`` where ``p0`` is ``top_atom`` if given, else the
    first declared proposition of ``sig``, else the alphabetically first
    identifier in ``text`` (``p`` when there is none).  Over a first-order
    signature ``T`` is ``forall v. v = v`` instead.
    """
    return _Parser(text, sig or EMPTY_SIGNATURE, allow_meta, top_atom).parse()


def parse_with_header(text: str) -> tuple:
    """Parse ``text`` that may start with a JSON signature header line."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        decoder = json.JSONDecoder()
        data, end = decoder.raw_decode(stripped)
        sig = Signature.from_json(data)
        return parse(stripped[end:], sig), sig
    return parse(text), EMPTY_SIGNATURE


# -- rendering -------------------------------------------------------------

_PREFIX = 4


def render_term(t: Term) -> str:
    if isinstance(t, (Variable, Constant)):
        return t.name
    if isinstance(t, MetaTerm):
        return "$" + t.name
    if isinstance(t, FunctionApp):
        if not t.args:
            return t.name
        return f"{t.name}({', '.join(render_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def render(f: Formula) -> str:
    """Surface syntax for ``f``; ``parse(render(f)) == f`` for any parsed formula."""
    return _render(f)[0]


def _wrap(sub, minimum: int) -> str:
    text, prec = sub
    return text if prec >= minimum else f"({text})"


def _as_classical_iff(f):
    pair = as_conj(f)
    if pair and isinstance(pair[0], ClassicalImpl) and isinstance(pair[1], ClassicalImpl):
        a, b = pair[0].left, pair[0].right
        if pair[1].left == b and pair[1].right == a:
            return a, b
    return None


def _sugared(f: Formula) -> bool:
    return any(rec(f) is not None for rec in (as_tensor, as_wedge, as_dia, as_exists, as_some, as_conj))


def _plain_negation(f: Formula) -> bool:
    """Negations read better as implications: ``!a -> !b`` rather than ``a | !b``."""
    return isinstance(f, (ClassicalNeg, StrongNeg)) and not _sugared(f)


def _binary(op: str, a: Formula, b: Formula, level: int) -> tuple:
    if level == 0:
        return f"{_wrap(_render(a), 1)} {op} {_wrap(_render(b), 1)}", 0
    if level == 1:
        left, right = _wrap(_render(a), 2), _wrap(_render(b), 1)
    else:
        left, right = _wrap(_render(a), level), _wrap(_render(b), level + 1)
    return f"{left} {op} {right}", level


def _prefix(op: str, body: Formula) -> tuple:
    return f"{op}{_wrap(_render(body), _PREFIX)}", _PREFIX


def _render(f: Formula) -> tuple:
    if isinstance(f, PropAtom):
        return f.name, _PREFIX
    if isinstance(f, MetaVar):
        return "$" + f.name, _PREFIX
    if isinstance(f, FoPredicate):
        if not f.terms:
            return f.name, _PREFIX
        return f"{f.name}({', '.join(render_term(t) for t in f.terms)})", _PREFIX
    if isinstance(f, FoEquality):
        return f"{render_term(f.left)} = {render_term(f.right)}", _PREFIX
    pair = as_strong_iff(f)
    if pair:
        return _binary("<~>", *pair, 0)
    pair = _as_classical_iff(f)
    if pair:
        return _binary("<->", *pair, 0)
    pair = as_tensor(f)
    if pair:
        return _binary("*", *pair, 2)
    pair = as_wedge(f)
    if pair:
        return _binary("&&", *pair, 3)
    body = as_dia(f)
    if body is not None:
        return _prefix("dia ", body)
    quant = as_exists(f)
    if quant:
        return _prefix(f"exists {quant[0]}. ", quant[1])
    body = as_some(f)
    if body is not None:
        return f"E({render(body)})", _PREFIX
    pair = as_conj(f)
    if pair:
        return _binary("&", *pair, 3)
    pair = as_disj(f)
    if pair and not _plain_negation(pair[1]):
        return _binary("|", *pair, 2)
    pair = as_vee(f)
    if pair and not _plain_negation(pair[1]) and not _sugared(f.left):
        return _binary("||", *pair, 2)
    if isinstance(f, ClassicalNeg):
        return _prefix("!", f.body)
    if isinstance(f, StrongNeg):
        return _prefix("~", f.body)
    if isinstance(f, Box):
        return _prefix("box ", f.body)
    if isinstance(f, Delta):
        return _prefix("delta ", f.body)
    if isinstance(f, ForAll):
        return _prefix(f"forall {f.var}. ", f.body)
    if isinstance(f, Shriek):
        return _prefix(f"shriek {f.var}. ", f.body)
    if isinstance(f, ClassicalImpl):
        return _binary("->", f.left, f.right, 1)
    if isinstance(f, MaterialImpl):
        return _binary("~>", f.left, f.right, 1)
    if isinstance(f, LinearImpl):
        return _binary("-o", f.left, f.right, 1)
    raise TypeError(f"not a formula: {f!r}")
