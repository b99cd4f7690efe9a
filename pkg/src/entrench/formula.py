"""First-order formulae in the engine's surface syntax.

The connective tokens are ``-`` (negation), ``->`` (implication), ``&``
(conjunction), ``|`` (disjunction), ``*`` (universal) and ``!``
(existential).  Identifiers are alphanumerics plus single underscores;
double underscores are reserved for system-generated symbols.  Variables
and predicate names begin upper-case, constants, functions and
propositions begin lower-case.

Parsing accepts fully parenthesised input as well as the precedence
hierarchy negation > ``&`` > ``|`` > ``->`` (``->`` right-associative,
``&``/``|`` left-associative).  Printing emits the canonical minimally
parenthesised form; ``parse(print(f)) == f`` for every well-formed AST.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CaseError,
    FormulaSyntaxError,
    FreeVariableError,
    ReservedNameError,
    WhitespaceError,
)

__all__ = [
    "Term", "Variable", "Constant", "FunctionTerm",
    "Formula", "Proposition", "Predicate", "Negation",
    "Conjunction", "Disjunction", "Implication", "Universal", "Existential",
    "parse", "print_formula", "free_variables", "ensure_closed",
    "conjoin", "disjoin", "negate",
]


# --- AST -------------------------------------------------------------------

class Term:
    """Base class for terms (variables, constants, function applications)."""

    __slots__ = ()


@dataclass(frozen=True)
class Variable(Term):
    name: str


@dataclass(frozen=True)
class Constant(Term):
    name: str


@dataclass(frozen=True)
class FunctionTerm(Term):
    name: str
    args: tuple[Term, ...]


class Formula:
    """Base class for formulae."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Proposition(Formula):
    name: str


@dataclass(frozen=True)
class Predicate(Formula):
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Negation(Formula):
    body: Formula


@dataclass(frozen=True)
class Conjunction(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Disjunction(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implication(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Universal(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Existential(Formula):
    var: str
    body: Formula


def negate(f: Formula) -> Formula:
    return Negation(f)


def conjoin(left: Formula, right: Formula) -> Formula:
    return Conjunction(left, right)


def disjoin(left: Formula, right: Formula) -> Formula:
    return Disjunction(left, right)


# --- tokenizer ---------------------------------------------------------------

_PUNCT = {"&", "|", "*", "!", "(", ")", ","}


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "-":
            if i + 1 < n and text[i + 1] == ">":
                tokens.append("->")
                i += 2
            else:
                tokens.append("-")
                i += 1
        elif c in _PUNCT:
            tokens.append(c)
            i += 1
        elif c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r} at position {i}")
    return tokens


def _check_name(name: str) -> None:
    if "__" in name:
        raise ReservedNameError(
            f"{name!r} contains a double underscore (reserved for system symbols)"
        )
    if not name[0].isalpha():
        raise FormulaSyntaxError(f"identifier {name!r} must begin with a letter")


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {got!r}")

    # formula := disjunction ('->' formula)?          right-associative
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.next()
            return Implication(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.next()
            f = Disjunction(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.next()
            f = Conjunction(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "-":
            self.next()
            return Negation(self.unary())
        if tok in ("*", "!"):
            quant = self.next()
            var = self.next()
            if not var[0].isalpha():
                raise FormulaSyntaxError(f"expected a variable after {quant!r}")
            _check_name(var)
            if not var[0].isupper():
                raise CaseError(f"quantified variable {var!r} must begin upper-case")
            self.expect("(")
            body = self.formula()
            self.expect(")")
            return Universal(var, body) if quant == "*" else Existential(var, body)
        if tok == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input")
        if tok in _PUNCT or tok == "->":
            raise FormulaSyntaxError(f"unexpected token {tok!r}")
        return self.atom()

    def atom(self) -> Formula:
        name = self.next()
        _check_name(name)
        if self.peek() == "(":
            self.next()
            args = [self.term()]
            while self.peek() == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            if not name[0].isupper():
                raise CaseError(f"predicate name {name!r} must begin upper-case")
            return Predicate(name, tuple(args))
        if name[0].isupper():
            raise CaseError(
                f"{name!r} begins upper-case: a bare variable cannot stand as a formula"
            )
        return Proposition(name)

    def term(self) -> Term:
        tok = self.next()
        if tok in _PUNCT or tok in ("-", "->"):
            raise FormulaSyntaxError(f"expected a term, found {tok!r}")
        _check_name(tok)
        if self.peek() == "(":
            self.next()
            args = [self.term()]
            while self.peek() == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            if tok[0].isupper():
                raise CaseError(f"function name {tok!r} must begin lower-case")
            return FunctionTerm(tok, tuple(args))
        if tok[0].isupper():
            return Variable(tok)
        return Constant(tok)


def parse(text: str, trim: bool = False) -> Formula:
    """Parse ``text`` into a formula AST.

    Input must contain no whitespace unless ``trim`` is set, in which case
    all whitespace is stripped before parsing.
    """
    if trim:
        text = "".join(text.split())
    if any(c.isspace() for c in text):
        raise WhitespaceError("input must not contain spaces")
    if "__" in text:
        raise ReservedNameError("input must not contain a double underscore")
    if not text:
        raise FormulaSyntaxError("empty input")
    parser = _Parser(_tokenize(text))
    f = parser.formula()
    if parser.peek() is not None:
        raise FormulaSyntaxError(f"trailing input at token {parser.peek()!r}")
    return f


# --- printing ----------------------------------------------------------------

# precedence levels: -> lowest, then |, then &, then unary/atomic
_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def _prec(f: Formula) -> int:
    if isinstance(f, Implication):
        return _PREC_IMP
    if isinstance(f, Disjunction):
        return _PREC_OR
    if isinstance(f, Conjunction):
        return _PREC_AND
    return _PREC_UNARY


def print_term(t: Term) -> str:
    if isinstance(t, (Variable, Constant)):
        return t.name
    if isinstance(t, FunctionTerm):
        return f"{t.name}({','.join(print_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def _print(f: Formula, min_prec: int) -> str:
    if isinstance(f, Proposition):
        return f.name
    if isinstance(f, Predicate):
        return f"{f.name}({','.join(print_term(a) for a in f.args)})"
    if isinstance(f, Negation):
        return "-" + _print(f.body, _PREC_UNARY)
    if isinstance(f, Universal):
        return f"*{f.var}({_print(f.body, 0)})"
    if isinstance(f, Existential):
        return f"!{f.var}({_print(f.body, 0)})"
    if isinstance(f, Conjunction):
        op, prec = "&", _PREC_AND
        s = _print(f.left, prec) + op + _print(f.right, prec + 1)
    elif isinstance(f, Disjunction):
        op, prec = "|", _PREC_OR
        s = _print(f.left, prec) + op + _print(f.right, prec + 1)
    elif isinstance(f, Implication):
        # right-associative: left operand needs strictly higher precedence
        prec = _PREC_IMP
        s = _print(f.left, prec + 1) + "->" + _print(f.right, prec)
    else:
        raise TypeError(f"not a formula: {f!r}")
    if prec < min_prec:
        return f"({s})"
    return s


def print_formula(f: Formula) -> str:
    """Canonical text form; re-parses to a structurally equal AST."""
    return _print(f, 0)


# --- variables ----------------------------------------------------------------

def _term_variables(t: Term) -> set[str]:
    if isinstance(t, Variable):
        return {t.name}
    if isinstance(t, FunctionTerm):
        out: set[str] = set()
        for a in t.args:
            out |= _term_variables(a)
        return out
    return set()


def free_variables(f: Formula) -> set[str]:
    """Names of variables not bound by any quantifier."""
    if isinstance(f, Proposition):
        return set()
    if isinstance(f, Predicate):
        out: set[str] = set()
        for a in f.args:
            out |= _term_variables(a)
        return out
    if isinstance(f, Negation):
        return free_variables(f.body)
    if isinstance(f, (Conjunction, Disjunction, Implication)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, (Universal, Existential)):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def ensure_closed(f: Formula, auto_close: bool = False) -> Formula:
    """Reject formulae with free variables, or universally close them.

    Beliefs entering a ranking must be closed; silent variable capture
    would change their meaning, so the strict mode is the default.
    """
    fv = free_variables(f)
    if not fv:
        return f
    if not auto_close:
        raise FreeVariableError(
            f"free variables {sorted(fv)} in {print_formula(f)!r}"
        )
    for var in sorted(fv, reverse=True):
        f = Universal(var, f)
    return f
