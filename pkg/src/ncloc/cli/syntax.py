"""Job files: tokenizer, recursive-descent parser and canonical printer.

    job     := (ringdef | taskdef)*
    ringdef := "ring" NAME "{" stmt* "}"
    stmt    := "gens" id ("," id)* ";"
             | "rel" word "->" poly ";"
             | ("deg" | "weight") id "=" int ";"
             | "order" id (">" id)* ";"
             | "domain" ";"
    taskdef := "task" kind "(" [arg ("," arg)*] ")" [";"]
    arg     := [id "="] value
    value   := "[" [value ("," value)*] "]" | poly
    poly    := term (("+" | "-") term)*
    term    := ["-"] (rational ["*" word] | word)
    word    := id ("*" id)*

A task kind may contain hyphens (ore-check).  Comments run from '#' to
the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class JobSyntaxError(Exception):
    def __init__(self, line: int, column: int, expected, found: str):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        self.found = found
        exp = " or ".join(repr(e) for e in self.expected)
        super().__init__(f"line {line}, column {column}: expected {exp}, found {found}")


# --- values ------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Poly:
    terms: tuple  # of (Fraction, tuple[str, ...])


@dataclass(frozen=True)
class ListV:
    items: tuple


Value = Union[Num, Ident, Poly, ListV]


@dataclass(frozen=True)
class RingDef:
    name: str
    gens: tuple
    rels: tuple = ()        # (word, Poly)
    degs: tuple = ()        # (gen, int)
    weights: tuple = ()     # (gen, int)
    order: tuple = ()       # largest first
    domain: bool = False


@dataclass(frozen=True)
class Task:
    kind: str
    args: tuple = ()
    kwargs: tuple = ()      # (key, Value)

    def kw(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class JobFile:
    rings: tuple = ()
    tasks: tuple = ()

    def ring(self, name: str) -> RingDef | None:
        for r in self.rings:
            if r.name == name:
                return r
        return None


# --- tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<punct>[{}()\[\],;=*+\->])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str   # "num", "id", "->", a punctuation character, or "eof"
    text: str
    line: int
    col: int
    end: int    # offset just past the token


def tokenize(text: str) -> list[Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise JobSyntaxError(line, pos - line_start + 1, {"a token"}, repr(text[pos]))
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("num", "id"):
            out.append(Tok(kind, m.group(), line, pos - line_start + 1, m.end()))
        elif kind in ("arrow", "punct"):
            t = m.group()
            out.append(Tok(t, t, line, pos - line_start + 1, m.end()))
        pos = m.end()
    out.append(Tok("eof", "end of input", line, pos - line_start + 1, pos))
    return out


# --- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise JobSyntaxError(t.line, t.col, expected, found)

    def expect(self, kind: str, what=None) -> Tok:
        if self.tok.kind != kind:
            self.fail(what if isinstance(what, set) else {what or kind})
        t = self.tok
        self.i += 1
        return t

    def keyword(self, word: str):
        if self.tok.kind != "id" or self.tok.text != word:
            self.fail({word})
        self.i += 1

    def ident(self) -> str:
        return self.expect("id", "identifier").text

    def integer(self) -> int:
        neg = False
        if self.tok.kind == "-":
            neg = True
            self.i += 1
        t = self.tok
        if t.kind != "num" or "/" in t.text:
            self.fail({"integer"})
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    # job
    def job(self) -> JobFile:
        rings, tasks = [], []
        while self.tok.kind != "eof":
            if self.tok.kind == "id" and self.tok.text == "ring":
                rings.append(self.ringdef())
            elif self.tok.kind == "id" and self.tok.text == "task":
                tasks.append(self.taskdef())
            else:
                self.fail({"ring", "task"})
        return JobFile(tuple(rings), tuple(tasks))

    def ringdef(self) -> RingDef:
        self.keyword("ring")
        name = self.ident()
        self.expect("{")
        gens, rels, degs, weights, order, domain = None, [], [], [], (), False
        while self.tok.kind != "}":
            t = self.tok
            if t.kind != "id" or t.text not in ("gens", "rel", "deg", "weight", "order", "domain"):
                self.fail({"gens", "rel", "deg", "weight", "order", "domain", "}"})
            self.i += 1
            if t.text == "gens":
                gens = [self.ident()]
                while self.tok.kind == ",":
                    self.i += 1
                    gens.append(self.ident())
            elif t.text == "rel":
                lead = self.word()
                self.expect("->")
                rels.append((lead, self.poly()))
            elif t.text in ("deg", "weight"):
                g = self.ident()
                self.expect("=")
                (degs if t.text == "deg" else weights).append((g, self.integer()))
            elif t.text == "order":
                seq = [self.ident()]
                while self.tok.kind == ">":
                    self.i += 1
                    seq.append(self.ident())
                order = tuple(seq)
            else:
                domain = True
            self.expect(";")
        self.expect("}")
        if gens is None:
            raise JobSyntaxError(self.tok.line, self.tok.col, {"gens"}, f"ring {name} without generators")
        return RingDef(name, tuple(gens), tuple(rels), tuple(degs), tuple(weights), order, domain)

    def taskdef(self) -> Task:
        self.keyword("task")
        first = self.expect("id", "task name")
        kind, end = first.text, first.end
        # hyphenated kinds: the pieces must touch
        while self.tok.kind == "-" and self.tok.end - 1 == end and self.peek().kind == "id" \
                and self.peek().end - len(self.peek().text) == self.tok.end:
            self.i += 1
            part = self.ident()
            kind += "-" + part
            end = self.toks[self.i - 1].end
        self.expect("(")
        args, kwargs = [], []
        if self.tok.kind != ")":
            while True:
                if self.tok.kind == "id" and self.peek().kind == "=":
                    key = self.ident()
                    self.i += 1
                    kwargs.append((key, self.value()))
                else:
                    if kwargs:
                        self.fail({"keyword argument"})
                    args.append(self.value())
                if self.tok.kind == ",":
                    self.i += 1
                    continue
                break
        self.expect(")", {")", ","})
        if self.tok.kind == ";":
            self.i += 1
        return Task(kind, tuple(args), tuple(kwargs))

    def value(self) -> Value:
        if self.tok.kind == "[":
            self.i += 1
            items = []
            if self.tok.kind != "]":
                items.append(self.value())
                while self.tok.kind == ",":
                    self.i += 1
                    items.append(self.value())
            self.expect("]", {"]", ","})
            return ListV(tuple(items))
        return classify(self.poly())

    def word(self) -> tuple:
        w = [self.ident()]
        while self.tok.kind == "*" and self.peek().kind == "id":
            self.i += 1
            w.append(self.ident())
        return tuple(w)

    def term(self, sign: int) -> tuple:
        if self.tok.kind == "-":
            self.i += 1
            sign = -sign
        if self.tok.kind == "num":
            c = Fraction(self.tok.text)
            self.i += 1
            w: tuple = ()
            if self.tok.kind == "*":
                self.i += 1
                if self.tok.kind != "id":
                    self.fail({"identifier"})
                w = self.word()
            return (sign * c, w)
        if self.tok.kind == "id":
            return (Fraction(sign), self.word())
        self.fail({"number", "identifier", "-"})

    def poly(self) -> Poly:
        terms = [self.term(1)]
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.tok.kind == "+" else -1
            self.i += 1
            terms.append(self.term(sign))
        return Poly(tuple(terms))


def classify(p: Poly) -> Value:
    if len(p.terms) == 1:
        c, w = p.terms[0]
        if not w:
            return Num(c)
        if c == 1 and len(w) == 1:
            return Ident(w[0])
    return p


def parse_job(text: str) -> JobFile:
    return _Parser(text).job()


def parse_value(text: str) -> Value:
    p = _Parser(text)
    v = p.value()
    if p.tok.kind != "eof":
        p.fail({"end of input"})
    return v


# --- printer -------------------------------------------------------------------

def _coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_term(c: Fraction, w: tuple, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if w and a == 1:
        body = "*".join(w)
    elif w:
        body = _coeff(a) + "*" + "*".join(w)
    else:
        body = _coeff(a)
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_poly(p: Poly) -> str:
    return "".join(format_term(c, w, k == 0) for k, (c, w) in enumerate(p.terms))


def format_value(v: Value) -> str:
    if isinstance(v, Num):
        return _coeff(v.value)
    if isinstance(v, Ident):
        return v.name
    if isinstance(v, Poly):
        return format_poly(v)
    if isinstance(v, ListV):
        return "[" + ", ".join(format_value(x) for x in v.items) + "]"
    raise TypeError(f"not a job value: {v!r}")


def format_ring(r: RingDef) -> str:
    lines = [f"ring {r.name} {{", f"  gens {', '.join(r.gens)};"]
    for lead, rep in r.rels:
        lines.append(f"  rel {'*'.join(lead)} -> {format_poly(rep)};")
    for g, d in r.degs:
        lines.append(f"  deg {g} = {d};")
    for g, d in r.weights:
        lines.append(f"  weight {g} = {d};")
    if r.order:
        lines.append(f"  order {' > '.join(r.order)};")
    if r.domain:
        lines.append("  domain;")
    lines.append("}")
    return "\n".join(lines)


def format_task(t: Task) -> str:
    parts = [format_value(a) for a in t.args] + [f"{k}={format_value(v)}" for k, v in t.kwargs]
    return f"task {t.kind}({', '.join(parts)});"


def format_job(job: JobFile) -> str:
    blocks = [format_ring(r) for r in job.rings] + [format_task(t) for t in job.tasks]
    return "\n".join(blocks) + ("\n" if blocks else "")
