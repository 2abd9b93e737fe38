"""Tokenizer and recursive-descent parser for the ``.tape`` format.

Operator precedence is fixed: ``;`` binds loosest, then ``(x)``, then
``(+)``; all three associate to the left.  ``(x)`` and ``(+)`` may also
be written with the Unicode symbols.  Rationals only; decimal literals
are rejected.  Diagnostics carry line, column and the expected tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from ..objects import Monomial, ONE, Polynomial, ZERO, SortRef, Sum, Tensor, \
    UnitOne, ZeroObj, ObjTerm, poly_of_mono
from ..theory import App, CM_PLUS, CM_ZERO, OpSymbol, STAR, SigmaTerm, Var, \
    check_term, choice
from .surface import (CAtomCopy, CAtomDel, CAtomGen, CAtomId, CAtomSym,
                      CExpr, CSeqS, CTensorS, CheckDecl, DefDecl, GenDecl,
                      InterpDecl, SAtom, SCircuit, SExpr, SOp, SRef, SSeq,
                      SSum, STensor, STermBr, SortDecl, SourceModule,
                      TheoryDecl)


PUNCT = {
    "->": "ARROW", "(x)": "OTENSOR", "(+)": "OPLUS",
    "⊗": "OTENSOR", "⊕": "OPLUS",
    ";": "SEMI", ":": "COLON", ",": "COMMA", "=": "EQUALS", "@": "AT",
    "<": "LT", ">": "GT", "/": "SLASH", "_": "UNDERSCORE", "+": "PLUS",
    "(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
    "{": "LBRACE", "}": "RBRACE",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        for lexeme in ("->", "(x)", "(+)"):
            if text.startswith(lexeme, i):
                tokens.append(Token(PUNCT[lexeme], lexeme, start_line, start_col))
                i += len(lexeme)
                col += len(lexeme)
                break
        else:
            if ch in PUNCT:
                tokens.append(Token(PUNCT[ch], ch, start_line, start_col))
                i += 1
                col += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                if j < n and text[j] == ".":
                    raise ParseError("decimal literals are not supported; "
                                     "write an exact rational like 1/2",
                                     start_line, start_col)
                tokens.append(Token("INT", text[i:j], start_line, start_col))
                col += j - i
                i = j
            elif ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                tokens.append(Token("IDENT", text[i:j], start_line, start_col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}",
                                 start_line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


def split_sorts(text: str, sorts: tuple[str, ...]) -> list[str] | None:
    """Greedy longest-match split of a glued identifier into sort names."""
    if not text:
        return []
    for name in sorted(sorts, key=len, reverse=True):
        if text.startswith(name):
            rest = split_sorts(text[len(name):], sorts)
            if rest is not None:
                return [name] + rest
    return None


TAPE_ATOM_KEYWORDS = {"id", "id0", "sym", "codiag", "cobang", "op", "term",
                      "copier", "discard", "dl"}

RESERVED = TAPE_ATOM_KEYWORDS | {"sort", "gen", "theory", "interp", "def",
                                 "check", "with", "model", "copy", "del",
                                 "star", "id1"}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.module = SourceModule()
        self.sorts: tuple[str, ...] = ()
        self.gen_names: set[str] = set()
        self.def_names: set[str] = set()
        self.theory_names: set[str] = set()
        self.interp_names: set[str] = set()

    # -- token plumbing --------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind: str, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.kind} {tok.text!r}",
                             tok.line, tok.col, {expected or kind})
        return self.next()

    def fail(self, message: str, expected: set[str] | None = None):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col, expected or set())

    # -- names and small pieces -------------------------------------------

    def fresh_name(self, kind: str, taken: set[str]) -> str:
        tok = self.expect("IDENT", "a name")
        if tok.text in RESERVED:
            raise ParseError(f"{tok.text!r} is a reserved word",
                             tok.line, tok.col)
        if tok.text in taken:
            raise ParseError(f"duplicate {kind} name {tok.text}",
                             tok.line, tok.col)
        return tok.text

    def expect_word(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text != word:
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col,
                             {word})
        return self.next()

    def rational(self) -> Fraction:
        tok = self.expect("INT", "a rational number")
        value = Fraction(int(tok.text))
        if self.accept("SLASH"):
            den = self.expect("INT", "a denominator")
            value = Fraction(int(tok.text), int(den.text))
        return value

    def monomial_token(self, tok: Token) -> Monomial:
        if tok.kind == "INT" and tok.text == "1":
            return ONE
        if tok.kind != "IDENT":
            raise ParseError(f"expected a monomial, found {tok.text!r}",
                             tok.line, tok.col, {"monomial"})
        parts = split_sorts(tok.text, self.sorts)
        if parts is None:
            raise ParseError(
                f"cannot read {tok.text!r} as a word of declared sorts",
                tok.line, tok.col)
        return Monomial(tuple(parts))

    def splittable(self, tok: Token) -> bool:
        if tok.kind == "INT" and tok.text == "1":
            return True
        return tok.kind == "IDENT" and split_sorts(tok.text, self.sorts) is not None

    def monomial(self) -> Monomial:
        m = self.monomial_token(self.next())
        while self.splittable(self.peek()):
            m = m * self.monomial_token(self.next())
        return m

    def poly_arg(self) -> Polynomial:
        """A polynomial in @-argument position; greedy over (+)."""
        if self.at("INT", "0"):
            self.next()
            return ZERO
        p = poly_of_mono(self.monomial())
        while self.at("OPLUS"):
            save = self.pos
            self.next()
            if self.splittable(self.peek()):
                p = p + poly_of_mono(self.monomial())
            else:
                self.pos = save
                break
        return p

    # -- declarations ------------------------------------------------------

    def parse_module(self) -> SourceModule:
        while not self.at("EOF"):
            tok = self.peek()
            if tok.kind != "IDENT":
                self.fail(f"expected a declaration, found {tok.text!r}",
                          {"sort", "gen", "theory", "interp", "def", "check"})
            handler = {
                "sort": self.sort_decl, "gen": self.gen_decl,
                "theory": self.theory_decl, "interp": self.interp_decl,
                "def": self.def_decl, "check": self.check_decl,
            }.get(tok.text)
            if handler is None:
                self.fail(f"unknown declaration {tok.text!r}",
                          {"sort", "gen", "theory", "interp", "def", "check"})
            handler()
        return self.module

    def sort_decl(self):
        self.next()
        name = self.fresh_name("sort", set(self.sorts))
        self.expect("SEMI", "';'")
        self.sorts = self.sorts + (name,)
        self.module.decls.append(SortDecl(name))

    def gen_decl(self):
        self.next()
        name = self.fresh_name("generator", self.gen_names)
        self.expect("COLON", "':'")
        ar = self.monomial()
        self.expect("ARROW", "'->'")
        coar = self.monomial()
        self.expect("SEMI", "';'")
        self.gen_names.add(name)
        self.module.decls.append(GenDecl(name, ar, coar))

    def theory_decl(self):
        self.next()
        name = self.fresh_name("theory", self.theory_names)
        if name not in ("PCA", "CM"):
            self.fail(f"unknown theory {name!r}", {"PCA", "CM"})
        params: list[Fraction] = []
        if self.accept("IDENT", "with"):
            self.expect("IDENT", "'p'")
            self.expect("EQUALS", "'='")
            params.append(self.rational())
            while self.accept("COMMA"):
                params.append(self.rational())
        self.expect("SEMI", "';'")
        self.theory_names.add(name)
        self.module.decls.append(TheoryDecl(name, tuple(params)))

    def interp_decl(self):
        self.next()
        name = self.fresh_name("interpretation", self.interp_names)
        self.expect("LBRACE", "'{'")
        carriers, matrices, model = [], [], None
        while not self.at("RBRACE"):
            key = self.expect("IDENT", "an interpretation item")
            self.expect("EQUALS", "'='")
            if key.text == "model":
                model = self.expect("IDENT", "a theory name").text
                if model not in self.theory_names:
                    raise ParseError(f"theory {model} is not declared",
                                     key.line, key.col)
            elif self.at("LBRACE"):
                self.next()
                labels = []
                if not self.at("RBRACE"):
                    labels.append(self.label())
                    while self.accept("COMMA"):
                        labels.append(self.label())
                self.expect("RBRACE", "'}'")
                if key.text not in self.sorts:
                    raise ParseError(f"sort {key.text} is not declared",
                                     key.line, key.col)
                carriers.append((key.text, tuple(labels)))
            elif self.at("LBRACK"):
                rows = self.matrix_literal()
                if key.text not in self.gen_names:
                    raise ParseError(f"generator {key.text} is not declared",
                                     key.line, key.col)
                matrices.append((key.text, rows))
            else:
                self.fail("expected '{', '[' or a theory name")
            self.expect("SEMI", "';'")
        self.expect("RBRACE", "'}'")
        if model is None:
            self.fail(f"interpretation {name} lacks a model item")
        self.interp_names.add(name)
        self.module.decls.append(InterpDecl(name, tuple(carriers),
                                            tuple(matrices), model))

    def label(self) -> str:
        tok = self.peek()
        if tok.kind in ("IDENT", "INT"):
            return self.next().text
        self.fail("expected a carrier label", {"identifier", "number"})

    def matrix_literal(self):
        self.expect("LBRACK", "'['")
        rows = []
        while self.at("LBRACK"):
            self.next()
            row = []
            if not self.at("RBRACK"):
                row.append(self.rational())
                while self.accept("COMMA"):
                    row.append(self.rational())
            self.expect("RBRACK", "']'")
            rows.append(tuple(row))
            if not self.accept("COMMA"):
                break
        self.expect("RBRACK", "']'")
        return tuple(rows)

    def def_decl(self):
        self.next()
        name = self.fresh_name("definition", self.def_names)
        self.expect("EQUALS", "'='")
        body = self.tape_expr()
        self.expect("SEMI", "';'")
        self.def_names.add(name)
        self.module.decls.append(DefDecl(name, body))

    def check_decl(self):
        self.next()
        left = self.expect("IDENT", "a definition name").text
        self.expect("EQUALS", "'='")
        right = self.expect("IDENT", "a definition name").text
        self.expect_word("with")
        interp = self.expect("IDENT", "an interpretation name").text
        self.expect("SEMI", "';'")
        for ref in (left, right):
            if ref not in self.def_names:
                self.fail(f"check refers to undefined name {ref}")
        if interp not in self.interp_names:
            self.fail(f"check refers to undeclared interpretation {interp}")
        self.module.decls.append(CheckDecl(left, right, interp))

    # -- tape expressions -----------------------------------------------------

    def tape_expr(self) -> SExpr:
        e = self.tensor_level()
        # a ';' continues the composition only when an expression follows;
        # otherwise it closes the surrounding declaration.
        while self.at("SEMI"):
            save = self.pos
            self.next()
            if self.starts_tape_atom():
                e = SSeq(e, self.tensor_level())
            else:
                self.pos = save
                break
        return e

    def tensor_level(self) -> SExpr:
        e = self.sum_level()
        while self.accept("OTENSOR"):
            e = STensor(e, self.sum_level())
        return e

    def sum_level(self) -> SExpr:
        e = self.tape_atom()
        while self.accept("OPLUS"):
            e = SSum(e, self.tape_atom())
        return e

    def starts_tape_atom(self) -> bool:
        tok = self.peek()
        if tok.kind in ("LPAREN", "LBRACK"):
            return True
        return tok.kind == "IDENT" and (
            tok.text in TAPE_ATOM_KEYWORDS or tok.text in self.def_names)

    def tape_atom(self) -> SExpr:
        if self.accept("LPAREN"):
            e = self.tape_expr()
            self.expect("RPAREN", "')'")
            return e
        if self.accept("LBRACK"):
            c = self.circuit_expr()
            self.expect("RBRACK", "']'")
            return SCircuit(c)
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(f"expected a tape expression, found {tok.text!r}",
                      {"atom", "'('", "'['"})
        text = tok.text
        if text == "id0":
            self.next()
            return SAtom("id0")
        if text == "id" and self.at("AT", ahead=1):
            self.next()
            self.next()
            return SAtom("id", (self.poly_arg(),))
        if text == "sym" and self.at("PLUS", ahead=1):
            self.next()
            self.next()
            self.expect("AT", "'@'")
            p = self.poly_arg()
            self.expect("COMMA", "','")
            q = self.poly_arg()
            return SAtom("symplus", (p, q))
        if text in ("codiag", "cobang", "copier", "discard") and self.at("AT", ahead=1):
            self.next()
            self.next()
            return SAtom(text, (self.poly_arg(),))
        if text == "dl" and self.at("AT", ahead=1):
            self.next()
            self.next()
            p = self.poly_arg()
            self.expect("COMMA", "','")
            q = self.poly_arg()
            self.expect("COMMA", "','")
            r = self.poly_arg()
            return SAtom("dl", (p, q, r))
        if text == "op" and self.at("LT", ahead=1):
            self.next()
            self.next()
            op = self.op_symbol()
            self.expect("GT", "'>'")
            self.expect("AT", "'@'")
            return SOp(op, self.poly_arg())
        if text == "term" and self.at("LT", ahead=1):
            self.next()
            self.next()
            term = self.sigma_expr()
            self.expect("GT", "'>'")
            self.expect("AT", "'@'")
            poly = self.poly_arg()
            context = max_var(term)
            check_term(term, context)
            return STermBr(term, context, poly)
        if text in self.def_names:
            self.next()
            return SRef(text)
        self.fail(f"unknown tape atom {text!r}; forward references are rejected",
                  TAPE_ATOM_KEYWORDS)

    def op_symbol(self) -> OpSymbol:
        if self.accept("PLUS"):
            if self.accept("UNDERSCORE"):
                return choice(self.rational())
            return CM_PLUS
        if self.at("IDENT", "star"):
            self.next()
            return STAR
        if self.at("INT", "0"):
            self.next()
            return CM_ZERO
        self.fail("expected an operation symbol",
                  {"+_p", "+", "star", "0"})

    def sigma_expr(self) -> SigmaTerm:
        e = self.sigma_atom()
        while self.at("PLUS"):
            self.next()
            if self.accept("UNDERSCORE"):
                op = choice(self.rational())
            else:
                op = CM_PLUS
            e = App(op, (e, self.sigma_atom()))
        return e

    def sigma_atom(self) -> SigmaTerm:
        if self.accept("LPAREN"):
            e = self.sigma_expr()
            self.expect("RPAREN", "')'")
            return e
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text == "star":
            self.next()
            return App(STAR, ())
        if tok.kind == "INT" and tok.text == "0":
            self.next()
            return App(CM_ZERO, ())
        if tok.kind == "IDENT" and tok.text.startswith("x") and tok.text[1:].isdigit():
            self.next()
            return Var(int(tok.text[1:]))
        self.fail("expected a term", {"x<i>", "star", "0", "'('"})

    # -- circuit expressions -----------------------------------------------------

    def circuit_expr(self) -> CExpr:
        e = self.circuit_tensor()
        while self.accept("SEMI"):
            e = CSeqS(e, self.circuit_tensor())
        return e

    def circuit_tensor(self) -> CExpr:
        e = self.circuit_atom()
        while self.accept("OTENSOR"):
            e = CTensorS(e, self.circuit_atom())
        return e

    def circuit_atom(self) -> CExpr:
        if self.accept("LPAREN"):
            e = self.circuit_expr()
            self.expect("RPAREN", "')'")
            return e
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(f"expected a circuit expression, found {tok.text!r}",
                      {"generator", "id<mono>", "sym", "copy", "del", "'('"})
        text = tok.text
        if text == "sym" and self.at("AT", ahead=1):
            self.next()
            self.next()
            a = self.monomial()
            self.expect("COMMA", "','")
            b = self.monomial()
            return CAtomSym(a, b)
        if text in ("copy", "del") and self.at("AT", ahead=1):
            self.next()
            self.next()
            m = self.monomial()
            return CAtomCopy(m) if text == "copy" else CAtomDel(m)
        if text in self.gen_names:
            self.next()
            return CAtomGen(text)
        if text == "id1":
            self.next()
            return CAtomId(ONE)
        if text.startswith("id") and len(text) > 2:
            parts = split_sorts(text[2:], self.sorts)
            if parts is not None:
                self.next()
                return CAtomId(Monomial(tuple(parts)))
        self.fail(f"unknown circuit atom {text!r}",
                  {"generator", "id<mono>", "sym", "copy", "del"})


def max_var(term: SigmaTerm) -> int:
    if isinstance(term, Var):
        return term.index
    if isinstance(term, App):
        return max((max_var(a) for a in term.args), default=0)
    return 0


def parse_module(text: str) -> SourceModule:
    return Parser(text).parse_module()


def parse_object_expr(text: str, sorts: tuple[str, ...] | None = None) -> tuple[ObjTerm, tuple[str, ...]]:
    """Parse an object expression for the normalizer.

    When no sort registry is supplied, each letter of every identifier
    counts as a sort, so AB means A (x) B.
    """
    parser = Parser(text)
    auto = sorts is None
    found: list[str] = []
    if not auto:
        parser.sorts = tuple(sorts)

    def atom() -> ObjTerm:
        if parser.accept("LPAREN"):
            e = expr()
            parser.expect("RPAREN", "')'")
            return e
        tok = parser.peek()
        if tok.kind == "INT" and tok.text == "1":
            parser.next()
            return UnitOne()
        if tok.kind == "INT" and tok.text == "0":
            parser.next()
            return ZeroObj()
        if tok.kind == "IDENT":
            parser.next()
            names = list(tok.text) if auto else split_sorts(tok.text, parser.sorts)
            if names is None:
                raise ParseError(
                    f"cannot read {tok.text!r} as a word of declared sorts",
                    tok.line, tok.col)
            for name in names:
                if name not in found:
                    found.append(name)
            term: ObjTerm = SortRef(names[-1])
            for name in reversed(names[:-1]):
                term = Tensor(SortRef(name), term)
            return term
        parser.fail("expected an object expression", {"sort", "0", "1", "'('"})

    def summand() -> ObjTerm:
        e = atom()
        while parser.accept("OPLUS"):
            e = Sum(e, atom())
        return e

    def expr() -> ObjTerm:
        e = summand()
        while parser.accept("OTENSOR"):
            e = Tensor(e, summand())
        return e

    term = expr()
    parser.expect("EOF", "end of input")
    registered = tuple(sorts) if sorts is not None else tuple(found)
    return term, registered
