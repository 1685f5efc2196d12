"""Job files: a quiver block followed by polynomial declarations and commands.

Every directive fits on one line and ``#`` starts a comment. ``format_job``
prints the canonical form, which parses back to an equal ``JobFile``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy.polys.domains import QQ

from core.exceptions import JobReferenceError, JobSyntaxError, SuperquiverError
from invariants.detlike import DetLikeBlock, DetLikeSpec, validate_detlike
from lie.basis import Weight
from quivers.graph import ParityVector, Quiver, SuperDimVector
from quivers.textformat import (
    QuiverBlock,
    Token,
    check_identifier,
    format_dim_vector,
    format_multidegree,
    format_quiver,
    parse_dim_vector,
    parse_multidegree,
    tokenize,
)
from superalgebra.polynomial import CoordinateRing, Polynomial
from superalgebra.textformat import format_polynomial, parse_polynomial

INTEGER = re.compile(r"^\d+$")
SIGNED = re.compile(r"^[+-]?\d+$")
ENDPOINT = re.compile(r"^(?P<vertex>[^:]+):(?P<key>[qr])=(?P<count>\d+)$")
BLOCK = re.compile(r"^\s*block\s+(?P<sink>\S+)\s+(?P<source>\S+)\s*:(?P<terms>.*)$")
TERM = re.compile(r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+(?:/\d+)?)\s*\*\s*)?path\((?P<edges>[^)]*)\)\s*")

BEREZINIAN_MODES = ("edge", "path", "kronecker")


@dataclass
class Command:
    kind: str
    args: Dict[str, object] = field(default_factory=dict)
    line: int = field(default=0, compare=False)


@dataclass
class JobFile:
    quiver: Quiver
    alpha: SuperDimVector
    parity: ParityVector
    polys: Dict[str, Polynomial] = field(default_factory=dict)
    commands: List[Command] = field(default_factory=list)

    @property
    def ring(self) -> CoordinateRing:
        return CoordinateRing(self.quiver, self.alpha, self.parity)

    def runnable(self) -> List[Command]:
        return [command for command in self.commands if command.kind != "poly"]


class JobParser:
    """Second pass over a job file once the quiver block is known."""

    def __init__(self, ring: CoordinateRing):
        self.ring = ring
        self.quiver = ring.quiver
        self.polys: Dict[str, Polynomial] = {}
        self.commands: List[Command] = []

    # -- helpers ---------------------------------------------------------

    def _integer(self, token: Token, line: int, what: str) -> int:
        text, column = token
        if not INTEGER.match(text):
            raise JobSyntaxError(f"{what} must be a nonnegative integer, got {text!r}", line, column)
        return int(text)

    def _expect(self, tokens: List[Token], index: int, word: str, line: int, usage: str) -> None:
        if len(tokens) <= index or tokens[index][0] != word:
            column = tokens[min(index, len(tokens) - 1)][1]
            raise JobSyntaxError(f"expected: {usage}", line, column)

    def _arity(self, tokens: List[Token], counts: Tuple[int, ...], line: int, usage: str) -> None:
        if len(tokens) not in counts:
            column = tokens[min(len(tokens), max(counts)) - 1][1]
            raise JobSyntaxError(f"expected: {usage}", line, column)

    def _vertex(self, token: Token, line: int) -> str:
        name, column = token
        if not self.quiver.has_vertex(name):
            raise JobReferenceError(f"undeclared vertex {name}", line, column)
        return name

    def _edges(self, text: str, line: int, column: int) -> Tuple[str, ...]:
        known = {edge.id for edge in self.quiver.edges}
        names = tuple(name.strip() for name in text.split(","))
        if not all(names):
            raise JobSyntaxError(f"expected a comma-separated edge list, got {text!r}", line, column)
        for name in names:
            if name not in known:
                raise JobReferenceError(f"undeclared edge {name}", line, column)
        return names

    def _poly(self, token: Token, line: int) -> str:
        name, column = token
        if name not in self.polys:
            raise JobReferenceError(f"undeclared polynomial {name}", line, column)
        return name

    # -- directives ------------------------------------------------------

    def parse_line(self, raw: str, tokens: List[Token], line: int) -> None:
        keyword, column = tokens[0]
        handler = getattr(self, f"_parse_{keyword}", None)
        if handler is None:
            raise JobSyntaxError(f"unknown directive {keyword!r}", line, column)
        command = handler(raw, tokens, line)
        command.line = line
        self.commands.append(command)

    def _parse_poly(self, raw, tokens, line):
        if len(tokens) < 4 or tokens[2][0] != "=":
            raise JobSyntaxError("expected: poly <name> = <polynomial>", line, tokens[0][1])
        name = check_identifier(tokens[1][0], line, tokens[1][1])
        if name in self.polys:
            raise JobSyntaxError(f"polynomial {name} declared twice", line, tokens[1][1])
        start = tokens[3][1]
        body = raw.split("#", 1)[0][start - 1:]
        self.polys[name] = parse_polynomial(self.ring, body, line, start)
        return Command("poly", {"name": name})

    def _parse_paths(self, raw, tokens, line):
        self._arity(tokens, (3,), line, "paths maxlen <k>")
        self._expect(tokens, 1, "maxlen", line, "paths maxlen <k>")
        return Command("paths", {"maxlen": self._integer(tokens[2], line, "maxlen")})

    def _parse_straces(self, raw, tokens, line):
        self._arity(tokens, (3,), line, "straces maxlen <k>")
        self._expect(tokens, 1, "maxlen", line, "straces maxlen <k>")
        return Command("straces", {"maxlen": self._integer(tokens[2], line, "maxlen")})

    def _parse_ringel(self, raw, tokens, line):
        self._arity(tokens, (1, 3), line, "ringel [<vector> <vector>]")
        if len(tokens) == 1:
            return Command("ringel", {"alpha": None, "beta": None})
        alpha = parse_dim_vector(self.quiver, tokens[1][0], line, tokens[1][1])
        beta = parse_dim_vector(self.quiver, tokens[2][0], line, tokens[2][1])
        return Command("ringel", {"alpha": alpha, "beta": beta})

    def _parse_classify(self, raw, tokens, line):
        self._arity(tokens, (1, 2), line, "classify [<vertex>]")
        vertex = self._vertex(tokens[1], line) if len(tokens) == 2 else None
        return Command("classify", {"vertex": vertex})

    def _parse_normalize(self, raw, tokens, line):
        self._arity(tokens, (2,), line, "normalize <vertex>")
        return Command("normalize", {"vertex": self._vertex(tokens[1], line)})

    def _parse_polarize(self, raw, tokens, line):
        usage = "polarize <poly> linearize <edge>[,<edge>...]"
        self._arity(tokens, (4,), line, usage)
        self._expect(tokens, 2, "linearize", line, usage)
        return Command(
            "polarize",
            {
                "poly": self._poly(tokens[1], line),
                "edges": self._edges(tokens[3][0], line, tokens[3][1]),
            },
        )

    def _parse_check(self, raw, tokens, line):
        usage = "check invariant <poly> | check weight <vertex>=<int> ... poly <poly>"
        if len(tokens) < 3:
            raise JobSyntaxError(f"expected: {usage}", line, tokens[-1][1])
        mode = tokens[1][0]
        if mode == "invariant":
            self._arity(tokens, (3,), line, usage)
            return Command("check_invariant", {"poly": self._poly(tokens[2], line)})
        if mode != "weight":
            raise JobSyntaxError(f"expected: {usage}", line, tokens[1][1])
        if len(tokens) < 4 or tokens[-2][0] != "poly":
            raise JobSyntaxError(f"expected: {usage}", line, tokens[-1][1])
        values: Dict[str, int] = {}
        for text, column in tokens[2:-2]:
            name, sep, value = text.partition("=")
            if not sep or not SIGNED.match(value):
                raise JobSyntaxError(f"expected <vertex>=<int>, got {text!r}", line, column)
            values[self._vertex((name, column), line)] = int(value)
        weight = Weight.build(self.quiver, values)
        return Command("check_weight", {"weight": weight, "poly": self._poly(tokens[-1], line)})

    def _parse_oracle(self, raw, tokens, line):
        usage = "oracle degree <multidegree> [compare maxlen <k>]"
        self._arity(tokens, (3, 6), line, usage)
        self._expect(tokens, 1, "degree", line, usage)
        degree = parse_multidegree(self.quiver, tokens[2][0], line, tokens[2][1])
        maxlen = None
        if len(tokens) == 6:
            self._expect(tokens, 3, "compare", line, usage)
            self._expect(tokens, 4, "maxlen", line, usage)
            maxlen = self._integer(tokens[5], line, "maxlen")
        return Command("oracle", {"degree": degree, "maxlen": maxlen})

    def _parse_homext(self, raw, tokens, line):
        self._arity(tokens, (3,), line, "homext <repfileA> <repfileB>")
        return Command("homext", {"left": tokens[1][0], "right": tokens[2][0]})

    def _parse_berezinian(self, raw, tokens, line):
        usage = "berezinian edge <e> | path <e1,e2,...> | kronecker s=<s> l=<l> [seed <n>]"
        if len(tokens) < 3 or tokens[1][0] not in BEREZINIAN_MODES:
            raise JobSyntaxError(f"expected: {usage}", line, tokens[min(1, len(tokens) - 1)][1])
        mode = tokens[1][0]
        if mode in ("edge", "path"):
            self._arity(tokens, (3,), line, usage)
            edges = self._edges(tokens[2][0], line, tokens[2][1])
            if mode == "edge" and len(edges) != 1:
                raise JobSyntaxError("berezinian edge takes a single edge", line, tokens[2][1])
            return Command("berezinian", {"mode": mode, "edges": edges})
        self._arity(tokens, (4, 6), line, usage)
        sizes = {}
        for (text, column), key in zip(tokens[2:4], ("s", "l")):
            name, sep, value = text.partition("=")
            if name != key or not sep or not INTEGER.match(value) or not int(value):
                raise JobSyntaxError(f"expected {key}=<positive integer>, got {text!r}", line, column)
            sizes[key] = int(value)
        seed = 0
        if len(tokens) == 6:
            self._expect(tokens, 4, "seed", line, usage)
            seed = self._integer(tokens[5], line, "seed")
        return Command("berezinian", {"mode": mode, "s": sizes["s"], "l": sizes["l"], "seed": seed})

    def _parse_detlike(self, raw, tokens, line):
        text = raw.split("#", 1)[0]
        start = tokens[0][1] + len("detlike") - 1
        body = text[start:]
        pieces = body.split(";")
        marker = re.search(r"\bblock\b", pieces[0])
        head = pieces[0][: marker.start()] if marker else pieces[0]
        block_texts = ([pieces[0][marker.start():]] if marker else []) + pieces[1:]

        words = head.split()
        if "source" not in words or not words or words[0] != "sink":
            raise JobSyntaxError("expected: detlike sink <v>:q=<n> ... source <v>:r=<n> ...", line, tokens[0][1])
        split = words.index("source")
        sink_counts = self._endpoints(words[1:split], "q", line, tokens[0][1])
        source_counts = self._endpoints(words[split + 1:], "r", line, tokens[0][1])

        blocks = []
        offset = start + 1
        for block_text in block_texts:
            blocks.append(self._detlike_block(block_text, line, offset + body.find(block_text)))
        spec = DetLikeSpec(tuple(sink_counts), tuple(source_counts), tuple(blocks))
        try:
            validate_detlike(self.ring, spec)
        except SuperquiverError as exc:
            raise JobSyntaxError(str(exc), line, tokens[0][1]) from exc
        return Command("detlike", {"spec": spec})

    def _endpoints(self, words: List[str], key: str, line: int, column: int) -> List[Tuple[str, int]]:
        found = []
        for word in words:
            match = ENDPOINT.match(word)
            if not match or match.group("key") != key:
                raise JobSyntaxError(f"expected <vertex>:{key}=<n>, got {word!r}", line, column)
            found.append((self._vertex((match.group("vertex"), column), line), int(match.group("count"))))
        return found

    def _endpoint_copy(self, text: str, line: int, column: int) -> Tuple[str, Optional[int]]:
        name, sep, copy = text.partition("@")
        if sep and not INTEGER.match(copy):
            raise JobSyntaxError(f"expected <vertex>@<copy>, got {text!r}", line, column)
        return self._vertex((name, column), line), int(copy) if sep else None

    def _detlike_block(self, text: str, line: int, column: int) -> DetLikeBlock:
        match = BLOCK.match(text)
        if not match:
            raise JobSyntaxError("expected: block <sink> <source> : <c>*path(<edges>) + ...", line, column)
        sink, sink_copy = self._endpoint_copy(match.group("sink"), line, column)
        source, source_copy = self._endpoint_copy(match.group("source"), line, column)
        terms_text = match.group("terms")
        terms = []
        position = 0
        while position < len(terms_text.rstrip()):
            term = TERM.match(terms_text, position)
            if not term or (terms and not term.group("sign")):
                raise JobSyntaxError(f"cannot read block term near {terms_text[position:].strip()!r}", line, column)
            coeff = QQ.one if term.group("coeff") is None else _rational(term.group("coeff"), line, column)
            if term.group("sign") == "-":
                coeff = -coeff
            terms.append((coeff, self._edges(term.group("edges"), line, column)))
            position = term.end()
        if not terms:
            raise JobSyntaxError("a block needs at least one path term", line, column)
        return DetLikeBlock(sink, sink_copy, source, source_copy, tuple(terms))


def _rational(text: str, line: int, column: int):
    numerator, _, denominator = text.partition("/")
    if denominator and not int(denominator):
        raise JobSyntaxError("zero denominator", line, column)
    return QQ(int(numerator), int(denominator or 1))


def parse_job(text: str) -> JobFile:
    block = QuiverBlock()
    rest: List[Tuple[int, str, List[Token]]] = []
    last = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        last = number
        keyword = tokens[0][0]
        if keyword == "vertex":
            block.add_vertex(tokens, number)
        elif keyword == "edge":
            block.add_edge(tokens, number)
        else:
            rest.append((number, raw, tokens))
    quiver, alpha, parity = block.build(last or 1)
    parser = JobParser(CoordinateRing(quiver, alpha, parity))
    for number, raw, tokens in rest:
        parser.parse_line(raw, tokens, number)
    return JobFile(quiver, alpha, parity, parser.polys, parser.commands)


# -- canonical printing --------------------------------------------------


def _format_coefficient(coeff, first: bool) -> str:
    magnitude = -coeff if coeff < 0 else coeff
    if first:
        return f"{'-' if coeff < 0 else ''}{magnitude}"
    return f"{'-' if coeff < 0 else '+'} {magnitude}"


def _format_endpoint(vertex: str, copy: Optional[int]) -> str:
    return vertex if copy is None else f"{vertex}@{copy}"


def format_detlike(spec: DetLikeSpec) -> str:
    head = " ".join(
        ["detlike", "sink"]
        + [f"{vertex}:q={count}" for vertex, count in spec.sinks]
        + ["source"]
        + [f"{vertex}:r={count}" for vertex, count in spec.sources]
    )
    blocks = []
    for block in spec.blocks:
        terms = []
        for position, (coeff, edges) in enumerate(block.terms):
            terms.append(f"{_format_coefficient(coeff, position == 0)}*path({','.join(edges)})")
        blocks.append(
            f"block {_format_endpoint(block.sink, block.sink_copy)} "
            f"{_format_endpoint(block.source, block.source_copy)} : {' '.join(terms)}"
        )
    return " ; ".join([head + (" " + blocks[0] if blocks else "")] + blocks[1:])


def format_command(command: Command, polys: Dict[str, Polynomial]) -> str:
    kind, args = command.kind, command.args
    if kind == "poly":
        return f"poly {args['name']} = {format_polynomial(polys[args['name']])}"
    if kind in ("paths", "straces"):
        return f"{kind} maxlen {args['maxlen']}"
    if kind == "ringel":
        if args["alpha"] is None:
            return "ringel"
        return f"ringel {format_dim_vector(args['alpha'])} {format_dim_vector(args['beta'])}"
    if kind == "classify":
        return "classify" if args["vertex"] is None else f"classify {args['vertex']}"
    if kind == "normalize":
        return f"normalize {args['vertex']}"
    if kind == "detlike":
        return format_detlike(args["spec"])
    if kind == "polarize":
        return f"polarize {args['poly']} linearize {','.join(args['edges'])}"
    if kind == "check_invariant":
        return f"check invariant {args['poly']}"
    if kind == "check_weight":
        weight = " ".join(f"{vertex}={value:+d}" for vertex, value in args["weight"].as_dict().items())
        return f"check weight {weight} poly {args['poly']}"
    if kind == "oracle":
        text = f"oracle degree {format_multidegree(args['degree'])}"
        return text if args["maxlen"] is None else f"{text} compare maxlen {args['maxlen']}"
    if kind == "homext":
        return f"homext {args['left']} {args['right']}"
    if kind == "berezinian":
        if args["mode"] == "kronecker":
            return f"berezinian kronecker s={args['s']} l={args['l']} seed {args['seed']}"
        return f"berezinian {args['mode']} {','.join(args['edges'])}"
    raise ValueError(f"Unknown command kind {kind!r}")


def format_job(job: JobFile) -> str:
    lines = [format_quiver(job.quiver, job.alpha, job.parity)]
    lines.extend(format_command(command, job.polys) for command in job.commands)
    return "\n".join(lines) + "\n"
