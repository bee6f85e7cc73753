"""Expression language for structures and elements.

Grammar sketch (whitespace-insensitive):

    structure  := kind [ "{" kv ("," kv)* "}" ]
    kv         := ident "=" value
    value      := list | expr
    list       := "[" expr ("," expr)* "]"
    rational   := ["-"] int ["/" int]
    quadext    := rational ["+"|"-" [rational "*"] "sqrt2"] | [rational "*"] "sqrt2"
    poly       := term (("+"|"-") term)*         with term := coeff ["*"]"x"["^" int]
    expsum     := term ("+" term)*               with term := [coeff "*"] "e^" "(" rational ")" | "e^0"
    lexcone    := term ("+" term)*               with term := [coeff "*"] "X^(" int "," int ")"
    pair       := "(" int "," int ")"

Structure kinds: numerical{gens=[..]}, puiseux{gens=[..]}, P, MF, MAA,
N (dyadic), lexcone, N0, Z, QGe1, expsum{base=...}, mixed,
lexconealg, poly{base=...}, laurent{base=..., shift=k}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import monoids, poly, semidomains, witness
from .errors import ParseError
from .exact import QuadExt

_TOKEN_RE = re.compile(r"""
    (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<sym>[{}\[\]()=,+\-*/^])
  | (?P<ws>\s+)
  | (?P<bad>.)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str     # "num" | "ident" | "sym" | "end"
    text: str
    pos: int


def tokenize(text: str):
    out = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}",
                             line=1, column=m.start() + 1,
                             expected=["token"])
        out.append(Token(kind, m.group(), m.start()))
    out.append(Token("end", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def expect(self, text):
        t = self.next()
        if t.text != text:
            raise ParseError(
                f"expected {text!r}, got {t.text or 'end of input'!r}",
                line=1, column=t.pos + 1, expected=[text])
        return t

    def at(self, text):
        return self.peek().text == text

    def done(self):
        return self.peek().kind == "end"

    # -- numbers ----------------------------------------------------------

    def integer(self) -> int:
        sign = 1
        while self.at("+") or self.at("-"):
            if self.next().text == "-":
                sign = -sign
        t = self.next()
        if t.kind != "num":
            raise ParseError(f"expected integer, got {t.text!r}",
                             line=1, column=t.pos + 1, expected=["integer"])
        return sign * int(t.text)

    def rational(self) -> Fraction:
        n = self.integer()
        if self.at("/"):
            self.next()
            d = self.integer()
            return Fraction(n, d)
        return Fraction(n)

    def pair(self):
        self.expect("(")
        b = self.integer()
        self.expect(",")
        c = self.integer()
        self.expect(")")
        return (b, c)

    # -- element grammars -------------------------------------------------

    def _poly_term(self):
        """(coeff, exponent) for  c | c*x^k | cx^k | x^k | x."""
        coeff = Fraction(1)
        have_coeff = False
        if self.peek().kind == "num" or self.at("-") or self.at("+"):
            coeff = self.rational()
            have_coeff = True
            if self.at("*"):
                self.next()
        if self.peek().kind == "ident" and self.peek().text == "x":
            self.next()
            if self.at("^"):
                self.next()
                k = self.integer()
            else:
                k = 1
            return coeff, k
        if not have_coeff:
            t = self.peek()
            raise ParseError(f"expected polynomial term, got {t.text!r}",
                             line=1, column=t.pos + 1,
                             expected=["coefficient", "x"])
        return coeff, 0

    def polynomial(self) -> dict:
        coeffs: dict = {}
        while True:
            c, k = self._poly_term()
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
            if self.at("+"):
                self.next()
            elif self.at("-"):
                pass  # the sign is consumed by the next term's rational
            else:
                break
        return coeffs

    def _quad_atom(self):
        """rational, optionally times sqrt2, or bare sqrt2."""
        if self.peek().kind == "ident" and self.peek().text == "sqrt2":
            self.next()
            return QuadExt(Fraction(0), Fraction(1))
        r = self.rational()
        if self.at("*") and self.peek(1).text == "sqrt2":
            self.next()
            self.next()
            return QuadExt(Fraction(0), r)
        return QuadExt(r)

    def quadext(self) -> QuadExt:
        total = self._quad_atom()
        while self.at("+") or (self.at("-") and True):
            if self.at("+"):
                self.next()
                total = total + self._quad_atom()
            else:
                # signed rational handles the minus itself
                nxt = self.peek(1)
                if nxt.kind != "num" and nxt.text != "sqrt2":
                    break
                self.next()
                a = self._quad_atom()
                total = total + QuadExt(Fraction(0)) - a
        return total

    def mixed_polynomial(self):
        """Terms with QuadExt coefficients; parenthesize compound ones:
        (1+1/2*sqrt2)*x^2 + 3*x + 1, or sqrt2*x^2."""
        coeffs: dict = {}
        while True:
            if self.at("("):
                self.next()
                c = self.quadext()
                self.expect(")")
                if self.at("*"):
                    self.next()
            elif self.peek().text == "sqrt2":
                self.next()
                c = QuadExt(Fraction(0), Fraction(1))
                if self.at("*"):
                    self.next()
            elif self.peek().kind == "num" or self.at("-"):
                c = QuadExt(self.rational())
                if self.at("*"):
                    self.next()
                    if self.peek().text == "sqrt2":
                        self.next()
                        c = QuadExt(Fraction(0), c.a)
                        if self.at("*"):
                            self.next()
            else:
                c = QuadExt(Fraction(1))
            if self.peek().text == "x":
                self.next()
                k = 1
                if self.at("^"):
                    self.next()
                    k = self.integer()
            else:
                k = 0
            coeffs[k] = coeffs.get(k, QuadExt(Fraction(0))) + c
            if self.at("+"):
                self.next()
            else:
                break
        n = max(coeffs) + 1 if coeffs else 0
        return semidomains.MixedPoly(tuple(
            coeffs.get(i, QuadExt(Fraction(0))) for i in range(n)))

    def expsum_elem(self):
        terms = []
        while True:
            coeff = 1
            if self.peek().kind == "num":
                coeff = self.integer()
                if self.at("*"):
                    self.next()
            if self.peek().text == "e":
                self.next()
                self.expect("^")
                if self.at("("):
                    self.next()
                    q = self.rational()
                    self.expect(")")
                else:
                    q = self.rational()
                terms.append((q, coeff))
            else:
                terms.append((Fraction(0), coeff))
            if self.at("+"):
                self.next()
            else:
                break
        return semidomains.expsum(terms)

    def lexcone_elem(self):
        terms = []
        while True:
            coeff = Fraction(1)
            if self.peek().kind == "num" or self.at("-"):
                coeff = self.rational()
                if self.at("*"):
                    self.next()
            if self.peek().text == "X":
                self.next()
                self.expect("^")
                m = self.pair()
            else:
                m = (0, 0)
            terms.append((m, coeff))
            if self.at("+"):
                self.next()
            else:
                break
        return semidomains.lexcone_poly(terms)

    # -- structures -------------------------------------------------------

    def kv_block(self):
        kvs = {}
        if not self.at("{"):
            return kvs
        self.next()
        while not self.at("}"):
            key = self.next()
            if key.kind != "ident":
                raise ParseError(f"expected key, got {key.text!r}",
                                 line=1, column=key.pos + 1, expected=["key"])
            self.expect("=")
            if self.at("["):
                self.next()
                vals = [self.rational()]
                while self.at(","):
                    self.next()
                    vals.append(self.rational())
                self.expect("]")
                kvs[key.text] = vals
            else:
                # raw value: capture tokens until , or } at depth 0
                depth = 0
                start = self.peek().pos
                end = start
                while True:
                    t = self.peek()
                    if t.kind == "end" or (depth == 0 and t.text in ",}"):
                        break
                    if t.text in "([{":
                        depth += 1
                    if t.text in ")]}":
                        depth -= 1
                    end = t.pos + len(t.text)
                    self.next()
                kvs[key.text] = self.text[start:end]
            if self.at(","):
                self.next()
        self.expect("}")
        return kvs


_MONOID_NAMES = {
    "p": monoids.PRIME_RECIPROCAL, "mf": monoids.MF, "maa": monoids.MAA,
    "n": monoids.DYADIC, "dyadic": monoids.DYADIC,
    "lexcone": monoids.LEXCONE,
}
_SEMIDOMAIN_NAMES = {
    "n0": semidomains.N0_SD, "z": semidomains.INT_SD,
    "qge1": semidomains.QGE1_SD, "mixed": semidomains.MIXED_SD,
    "mixedring": semidomains.MIXED_SD,
    "lexconealg": semidomains.LEXCONE_SD,
}
_POLY_BASES = {"n0": poly.Base.N0, "z": poly.Base.INT, "qge1": poly.Base.QGE1}


@dataclass
class ParsedStructure:
    structure: object          # Monoid | Semidomain | PolyRing
    element: object = None     # embedded element, if any
    raw: str = ""


def parse_structure(text: str) -> ParsedStructure:
    p = Parser(text)
    t = p.next()
    if t.kind != "ident":
        raise ParseError(f"expected structure name, got {t.text!r}",
                         line=1, column=t.pos + 1, expected=["structure"])
    name = t.text.lower()
    kvs = p.kv_block()
    if not p.done():
        tr = p.peek()
        raise ParseError(f"trailing input {tr.text!r}", line=1,
                         column=tr.pos + 1, expected=["end of input"])
    elem_raw = kvs.get("f") or kvs.get("r") or kvs.get("q") or kvs.get("elem")
    if name in ("numerical", "puiseux"):
        gens = kvs.get("gens")
        if not gens:
            raise ParseError("missing gens=[...]", line=1, column=1,
                             expected=["gens"])
        M = monoids.numerical(*gens) if name == "numerical" \
            else monoids.puiseux(*gens)
        el = Fraction(parse_element(M, elem_raw)) if elem_raw else None
        return ParsedStructure(M, el, text)
    if name in _MONOID_NAMES:
        M = _MONOID_NAMES[name]
        el = parse_element(M, elem_raw) if elem_raw else None
        return ParsedStructure(M, el, text)
    if name == "expsum":
        base = kvs.get("base", "MF").strip().lower()
        if base not in _MONOID_NAMES:
            raise ParseError(f"unknown expsum base {base!r}", line=1,
                             column=1, expected=sorted(_MONOID_NAMES))
        S = semidomains.expsum_semidomain(_MONOID_NAMES[base])
        el = parse_element(S, elem_raw) if elem_raw else None
        return ParsedStructure(S, el, text)
    if name in ("poly", "laurent"):
        base = kvs.get("base", "N0").strip().lower()
        if base not in _POLY_BASES:
            raise ParseError(f"unknown poly base {base!r}", line=1,
                             column=1, expected=sorted(_POLY_BASES))
        R = witness.PolyRing(_POLY_BASES[base], laurent=(name == "laurent"))
        el = parse_element(R, elem_raw) if elem_raw else None
        if el is not None and name == "laurent":
            shift = int(kvs.get("shift", 0))
            el = poly.laurent(R.base, shift, el.coeffs)
        return ParsedStructure(R, el, text)
    if name in _SEMIDOMAIN_NAMES:
        S = _SEMIDOMAIN_NAMES[name]
        el = parse_element(S, elem_raw) if elem_raw else None
        return ParsedStructure(S, el, text)
    raise ParseError(f"unknown structure {name!r}", line=1, column=t.pos + 1,
                     expected=sorted(set(_MONOID_NAMES) | set(_SEMIDOMAIN_NAMES)
                                     | {"numerical", "puiseux", "poly",
                                        "laurent", "expsum"}))


def parse_element(structure, text: str):
    """Parse an element in the syntax appropriate for the structure."""
    p = Parser(text)
    if isinstance(structure, monoids.Monoid):
        out = p.pair() if structure.kind is monoids.Kind.LEXCONE \
            else p.rational()
    elif isinstance(structure, witness.PolyRing):
        coeffs = p.polynomial()
        n = max(coeffs) + 1 if coeffs else 0
        out = poly.make_poly(structure.base,
                             [coeffs.get(i, Fraction(0)) for i in range(n)])
        if structure.laurent:
            out = poly.laurent(structure.base, 0, out.coeffs)
    elif isinstance(structure, semidomains.Semidomain):
        S = structure
        if S.kind in (semidomains.SKind.N0, semidomains.SKind.INT,
                      semidomains.SKind.QGE1):
            out = p.rational()
        elif S.kind is semidomains.SKind.EXPSUM:
            out = p.expsum_elem()
        elif S.kind is semidomains.SKind.MIXED:
            out = p.mixed_polynomial()
        else:
            out = p.lexcone_elem()
    else:
        raise ParseError("unknown structure for element", line=1, column=1,
                         expected=[])
    if not p.done():
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", line=1,
                         column=t.pos + 1, expected=["end of input"])
    return out
