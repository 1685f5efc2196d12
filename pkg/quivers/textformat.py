"""Line-oriented quiver text format.

    vertex <id> sdim <p>|<q> parity <0|1>
    edge <id> <tail> -> <head>

``#`` starts a comment; declaration order fixes the indices.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, List, Mapping, Tuple

from core.exceptions import JobReferenceError, JobSyntaxError, SuperquiverError
from .graph import Edge, MultiDegree, ParityVector, Quiver, SuperDimVector

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_'()]*$")
SDIM = re.compile(r"^(\d+)\|(\d+)$")

Token = Tuple[str, int]


def tokenize(text: str) -> List[Token]:
    """Split a line into whitespace-separated tokens with 1-based columns."""
    text = text.split("#", 1)[0]
    return [(match.group(0), match.start() + 1) for match in re.finditer(r"\S+", text)]


def parse_sdim(token: str, line: int = 0, column: int = 0) -> Tuple[int, int]:
    match = SDIM.match(token)
    if not match:
        raise JobSyntaxError(f"expected a super-dimension like 2|1, got {token!r}", line, column)
    return int(match.group(1)), int(match.group(2))


def check_identifier(token: str, line: int, column: int) -> str:
    if not IDENTIFIER.match(token):
        raise JobSyntaxError(f"invalid identifier {token!r}", line, column)
    return token


class QuiverBlock:
    """Accumulates vertex and edge directives into a quiver."""

    def __init__(self):
        self.vertices: List[str] = []
        self.dims: Dict[str, Tuple[int, int]] = {}
        self.bits: Dict[str, int] = {}
        self.edges: List[Edge] = []

    def add_vertex(self, tokens: List[Token], line: int) -> None:
        words = [token for token, _ in tokens]
        if len(tokens) != 6 or words[2] != "sdim" or words[4] != "parity":
            column = tokens[min(len(tokens) - 1, 2)][1]
            raise JobSyntaxError("expected: vertex <id> sdim <p>|<q> parity <0|1>", line, column)
        vertex = check_identifier(words[1], line, tokens[1][1])
        if vertex in self.dims:
            raise JobSyntaxError(f"vertex {vertex} declared twice", line, tokens[1][1])
        sdim = parse_sdim(words[3], line, tokens[3][1])
        if words[5] not in ("0", "1"):
            raise JobSyntaxError(f"parity must be 0 or 1, got {words[5]!r}", line, tokens[5][1])
        self.vertices.append(vertex)
        self.dims[vertex] = sdim
        self.bits[vertex] = int(words[5])

    def add_edge(self, tokens: List[Token], line: int) -> None:
        words = [token for token, _ in tokens]
        if len(tokens) != 5 or words[3] != "->":
            column = tokens[min(len(tokens) - 1, 3)][1]
            raise JobSyntaxError("expected: edge <id> <tail> -> <head>", line, column)
        edge_id = check_identifier(words[1], line, tokens[1][1])
        if any(edge.id == edge_id for edge in self.edges):
            raise JobSyntaxError(f"edge {edge_id} declared twice", line, tokens[1][1])
        for index in (2, 4):
            if words[index] not in self.dims:
                raise JobReferenceError(f"undeclared vertex {words[index]}", line, tokens[index][1])
        self.edges.append(Edge(edge_id, words[2], words[4]))

    def build(self, line: int = 0) -> Tuple[Quiver, SuperDimVector, ParityVector]:
        if not self.vertices:
            raise JobSyntaxError("no vertices declared", line, 1)
        try:
            quiver = Quiver(tuple(self.vertices), tuple(self.edges))
            return quiver, SuperDimVector.build(quiver, self.dims), ParityVector.build(quiver, self.bits)
        except SuperquiverError as exc:
            raise JobSyntaxError(str(exc), line, 1) from exc


def parse_quiver(text: str) -> Tuple[Quiver, SuperDimVector, ParityVector]:
    block = QuiverBlock()
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        keyword = tokens[0][0]
        if keyword == "vertex":
            block.add_vertex(tokens, number)
        elif keyword == "edge":
            block.add_edge(tokens, number)
        else:
            raise JobSyntaxError(f"unexpected directive {keyword!r} in a quiver block", number, tokens[0][1])
    return block.build()


def format_quiver(quiver: Quiver, alpha: SuperDimVector, parity: ParityVector) -> str:
    lines = [
        f"vertex {v} sdim {alpha.even(v)}|{alpha.odd(v)} parity {parity[v]}"
        for v in quiver.vertices
    ]
    lines.extend(f"edge {edge.id} {edge.tail} -> {edge.head}" for edge in quiver.edges)
    return "\n".join(lines)


def parse_assignments(token: str, line: int = 0, column: int = 0) -> List[Tuple[str, str]]:
    """Split ``a=1|1,b=0|2`` into ``[("a", "1|1"), ("b", "0|2")]``."""
    pairs = []
    for chunk in token.split(","):
        name, sep, value = chunk.partition("=")
        if not sep or not name or not value:
            raise JobSyntaxError(f"expected name=value pairs, got {token!r}", line, column)
        pairs.append((name, value))
    return pairs


def parse_dim_vector(quiver: Quiver, token: str, line: int = 0, column: int = 0) -> SuperDimVector:
    values = {}
    for name, value in parse_assignments(token, line, column):
        if not quiver.has_vertex(name):
            raise JobReferenceError(f"undeclared vertex {name}", line, column)
        values[name] = parse_sdim(value, line, column)
    missing = [v for v in quiver.vertices if v not in values]
    if missing:
        raise JobSyntaxError(f"no super-dimension given for {', '.join(missing)}", line, column)
    return SuperDimVector.build(quiver, values)


def parse_multidegree(quiver: Quiver, token: str, line: int = 0, column: int = 0) -> MultiDegree:
    values: Dict[str, int] = {}
    for name, value in parse_assignments(token, line, column):
        if name not in {edge.id for edge in quiver.edges}:
            raise JobReferenceError(f"undeclared edge {name}", line, column)
        if not value.isdigit():
            raise JobSyntaxError(f"degree of {name} must be a nonnegative integer", line, column)
        values[name] = int(value)
    return MultiDegree.build(quiver, values)


def format_multidegree(degree: MultiDegree) -> str:
    return str(degree)


def format_dim_vector(alpha: SuperDimVector) -> str:
    return str(alpha)

