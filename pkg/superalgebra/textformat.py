"""Polynomial text format.

Terms look like ``c * x[e,i,j] * x[e',i',j']^n`` and are joined by ``+`` or
``-``; ``c`` is an integer or ``p/q``. Odd factors may come in any order and
are brought to canonical order with their Koszul sign.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from sympy.polys.domains import QQ

from core.exceptions import JobReferenceError, JobSyntaxError, SuperquiverError
from .polynomial import CoordinateRing, Monomial, Polynomial, Variable, canonicalize

TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:/\d+)?)"
    r"|x\[(?P<edge>[^,\]\s]+)\s*,\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]"
    r"|par\[(?P<param>[^\]\s]+)\]"
    r"|(?P<op>[-+*^])"
    r")"
)


def _format_term(monomial: Monomial, coeff) -> Tuple[str, str]:
    sign = "-" if coeff < 0 else "+"
    magnitude = -coeff if coeff < 0 else coeff
    factors = [str(var) + (f"^{exp}" if exp > 1 else "") for var, exp in monomial]
    if not factors:
        return sign, str(magnitude)
    if magnitude != 1:
        factors.insert(0, str(magnitude))
    return sign, " * ".join(factors)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    ordered = sorted(f.terms.items(), key=lambda item: (item[0].degree, item[0]))
    pieces = [_format_term(monomial, coeff) for monomial, coeff in ordered]
    first_sign, first = pieces[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def _tokenize(text: str, line: int, column: int) -> List[Tuple[str, object, int]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN.match(stripped, position)
        if not match or match.end() == position:
            offset = len(stripped[position:]) - len(stripped[position:].lstrip())
            raise JobSyntaxError("unexpected character in polynomial", line, column + position + offset)
        lexeme = match.group(0)
        start = column + position + len(lexeme) - len(lexeme.lstrip())
        if match.group("number"):
            tokens.append(("number", match.group("number"), start))
        elif match.group("edge"):
            tokens.append(("var", (match.group("edge"), int(match.group("i")), int(match.group("j"))), start))
        elif match.group("param"):
            tokens.append(("param", match.group("param"), start))
        else:
            tokens.append(("op", match.group("op"), start))
        position = match.end()
    return tokens


def parse_polynomial(ring: CoordinateRing, text: str, line: int = 0, column: int = 1) -> Polynomial:
    """Parse ``text`` in ``ring``; ``line``/``column`` locate it in a job file."""
    tokens = _tokenize(text, line, column)
    if not tokens:
        raise JobSyntaxError("empty polynomial", line, column)
    terms = {}
    index = 0

    def peek(kind=None, value=None):
        if index >= len(tokens):
            return None
        token = tokens[index]
        if kind and token[0] != kind:
            return None
        if value and token[1] != value:
            return None
        return token

    def fail(message):
        where = tokens[index][2] if index < len(tokens) else column + len(text.rstrip())
        raise JobSyntaxError(message, line, where)

    def resolve(token) -> Variable:
        kind, value, where = token
        try:
            if kind == "var":
                return ring.variable(*value)
            return ring.parameter(value)
        except SuperquiverError as exc:
            raise JobReferenceError(str(exc), line, where) from exc

    while index < len(tokens):
        sign = 1
        if peek("op", "+") or peek("op", "-"):
            sign = -1 if tokens[index][1] == "-" else 1
            index += 1
        elif terms or index:
            fail("expected + or - between terms")
        coeff = QQ.one
        word: List[Tuple[Variable, int]] = []
        while True:
            token = peek()
            if token is None:
                fail("expected a factor")
            if token[0] == "number":
                numerator, _, denominator = token[1].partition("/")
                if denominator and int(denominator) == 0:
                    fail("zero denominator")
                coeff = coeff * QQ(int(numerator), int(denominator or 1))
                index += 1
            elif token[0] in ("var", "param"):
                var = resolve(token)
                index += 1
                exponent = 1
                if peek("op", "^"):
                    index += 1
                    power = peek("number")
                    if power is None or "/" in power[1]:
                        fail("expected an integer exponent")
                    exponent = int(power[1])
                    index += 1
                word.append((var, exponent))
            else:
                fail("expected a factor")
            if peek("op", "*"):
                index += 1
                continue
            break
        canonical = canonicalize(word)
        if canonical is None:
            continue
        koszul, monomial = canonical
        terms[monomial] = terms.get(monomial, QQ.zero) + coeff * sign * koszul
    return Polynomial(ring, terms)
