"""Text formats for complexes, maps and job files.

A complex block::

    complex C3
    simplex 0 1
    simplex 1 2
    simplex 0 2

A map block, either explicit or by one of the shorthands ``identity``
and ``constant <vertex>``::

    map f : C3 -> C3
    0 -> 1
    1 -> 2
    2 -> 0

    map c0 : C3 -> C3 constant 0

Lines starting with ``#`` and blank lines are ignored.  In a job file
every other line is a query (see :data:`COMMANDS`).
"""

from __future__ import annotations

import argparse
import shlex
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .complexes import OrderedComplex
from .errors import ParseError, SimpDistError
from .maps import SimplicialMap, constant, identity

COMMANDS = (
    "validate",
    "product",
    "subdivide",
    "check-map",
    "contiguity",
    "simpdist",
    "sc",
    "scat",
    "verify-cert",
)


def _lines(text: str, first_line: int = 1) -> Iterator[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


# -- definitions ---------------------------------------------------------


@dataclass
class ComplexDef:
    name: str
    simplices: list[tuple[int, ...]]
    line: int

    def build(self) -> OrderedComplex:
        if not self.simplices:
            raise ParseError(f"complex {self.name!r} has no simplices", self.line)
        try:
            return OrderedComplex.from_simplices(self.simplices)
        except SimpDistError as exc:
            raise ParseError(f"complex {self.name!r}: {exc}", self.line) from None


@dataclass
class MapDef:
    name: str
    domain: str
    codomain: str
    line: int
    pairs: dict[int, int] = field(default_factory=dict)
    shorthand: tuple[str, ...] = ()

    def build(self, complexes: Mapping[str, OrderedComplex], *, check: bool = True) -> SimplicialMap:
        dom, cod = complexes[self.domain], complexes[self.codomain]
        try:
            if self.shorthand == ("identity",):
                if dom != cod:
                    raise ParseError("identity needs equal domain and codomain", self.line)
                return identity(dom)
            if self.shorthand:
                return constant(dom, cod, _int(self.shorthand[1], self.line))
            return SimplicialMap(dom, cod, self.pairs, check=check)
        except ParseError:
            raise
        except SimpDistError as exc:
            raise ParseError(f"map {self.name!r}: {exc}", self.line) from None


def _parse_map_header(tokens: list[str], line: int) -> MapDef:
    # map NAME : A -> B [identity | constant Y]
    if len(tokens) < 6 or tokens[2] != ":" or tokens[4] != "->":
        raise ParseError("expected 'map NAME : DOMAIN -> CODOMAIN'", line)
    d = MapDef(tokens[1], tokens[3], tokens[5], line)
    rest = tuple(tokens[6:])
    if rest:
        if rest == ("identity",) or (len(rest) == 2 and rest[0] == "constant"):
            d.shorthand = rest
        else:
            raise ParseError(f"unexpected text after map header: {' '.join(rest)!r}", line)
    return d


def _add_pair(d: MapDef, tokens: list[str], line: int) -> None:
    if d.shorthand:
        raise ParseError(f"map {d.name!r} is given by a shorthand and takes no pairs", line)
    u, w = _int(tokens[0], line), _int(tokens[2], line)
    if u in d.pairs:
        raise ParseError(f"vertex {u} mapped twice in {d.name!r}", line)
    d.pairs[u] = w


def parse_complex(text: str) -> tuple[str, OrderedComplex]:
    """Parse a single complex block."""
    defs = _parse_blocks(text)
    if len(defs) != 1 or not isinstance(defs[0], ComplexDef):
        raise ParseError("expected exactly one complex block")
    return defs[0].name, defs[0].build()


def parse_map(text: str, complexes: Mapping[str, OrderedComplex]) -> tuple[str, SimplicialMap]:
    """Parse a single map block against named complexes."""
    defs = _parse_blocks(text)
    if len(defs) != 1 or not isinstance(defs[0], MapDef):
        raise ParseError("expected exactly one map block")
    d = defs[0]
    for name in (d.domain, d.codomain):
        if name not in complexes:
            raise ParseError(f"undefined complex {name!r}", d.line)
    return d.name, d.build(complexes)


def _parse_blocks(text: str, *, allow_queries: bool = False):
    items: list = []
    current = None
    for n, line in _lines(text):
        tokens = line.split()
        head = tokens[0]
        if head == "complex":
            if len(tokens) != 2:
                raise ParseError("expected 'complex NAME'", n)
            current = ComplexDef(tokens[1], [], n)
            items.append(current)
        elif head == "simplex":
            if not isinstance(current, ComplexDef):
                raise ParseError("'simplex' outside a complex block", n)
            if len(tokens) < 2:
                raise ParseError("empty simplex", n)
            current.simplices.append(tuple(_int(t, n) for t in tokens[1:]))
        elif head == "map":
            current = _parse_map_header(tokens, n)
            items.append(current)
        elif len(tokens) == 3 and tokens[1] == "->":
            if not isinstance(current, MapDef):
                raise ParseError("vertex assignment outside a map block", n)
            _add_pair(current, tokens, n)
        elif allow_queries and head in COMMANDS:
            current = None
            items.append(Query(head, tokens[1:], n, line))
        else:
            raise ParseError(f"cannot parse line {line!r}", n)
    return items


def format_complex(name: str, k: OrderedComplex) -> str:
    lines = [f"complex {name}"]
    lines += ["simplex " + " ".join(map(str, s)) for s in k.maximal]
    return "\n".join(lines) + "\n"


def format_map(name: str, f: SimplicialMap, domain_name: str, codomain_name: str) -> str:
    lines = [f"map {name} : {domain_name} -> {codomain_name}"]
    lines += [f"{v} -> {w}" for v, w in zip(f.domain.vertices, f.images)]
    return "\n".join(lines) + "\n"


# -- job files -------------------------------------------------------------


class _ArgParser(argparse.ArgumentParser):
    def __init__(self, *a, line=None, **kw):
        super().__init__(*a, add_help=False, **kw)
        self.line = line

    def error(self, message):
        raise ParseError(message, self.line)


def _query_parser(command: str, line: int) -> _ArgParser:
    p = _ArgParser(prog=command, line=line)
    if command == "validate":
        p.add_argument("complex")
    elif command == "product":
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--as", dest="name")
        p.add_argument("--pr1", default="pr1")
        p.add_argument("--pr2", default="pr2")
    elif command == "subdivide":
        p.add_argument("complex")
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--as", dest="name")
    elif command == "check-map":
        p.add_argument("map")
    elif command == "contiguity":
        p.add_argument("f")
        p.add_argument("g")
        p.add_argument("--max-c", type=int, required=True)
    elif command == "simpdist":
        p.add_argument("phi")
        p.add_argument("psi")
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--c", type=int, required=True)
        p.add_argument("--probe", type=int, nargs=2, metavar=("BMAX", "CMAX"))
        p.add_argument("--rule", choices=("last", "first"), default="last")
    elif command == "sc":
        p.add_argument("complex")
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--c", type=int, required=True)
        p.add_argument("--rule", choices=("last", "first"), default="last")
    elif command == "scat":
        p.add_argument("complex")
        p.add_argument("--base", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--c", type=int, required=True)
        p.add_argument("--rule", choices=("last", "first"), default="last")
    elif command == "verify-cert":
        p.add_argument("file")
    return p


@dataclass
class Query:
    command: str
    tokens: list[str]
    line: int
    text: str
    args: argparse.Namespace | None = None

    def parse_args(self) -> argparse.Namespace:
        try:
            tokens = shlex.split(" ".join(self.tokens))
        except ValueError as exc:
            raise ParseError(str(exc), self.line) from None
        self.args = _query_parser(self.command, self.line).parse_args(tokens)
        for attr in ("b", "c", "max_c"):
            val = getattr(self.args, attr, None)
            if val is not None and val < 0:
                raise ParseError(f"--{attr.replace('_', '-')} must be non-negative", self.line)
        return self.args


@dataclass
class JobFile:
    """Definitions and queries in file order."""

    items: list

    @property
    def complexes(self) -> list[ComplexDef]:
        return [x for x in self.items if isinstance(x, ComplexDef)]

    @property
    def maps(self) -> list[MapDef]:
        return [x for x in self.items if isinstance(x, MapDef)]

    @property
    def queries(self) -> list[Query]:
        return [x for x in self.items if isinstance(x, Query)]


def _uses(q: Query) -> Iterable[tuple[str, str]]:
    a = q.args
    if q.command in ("validate", "subdivide", "sc", "scat"):
        yield "complex", a.complex
    elif q.command == "product":
        yield "complex", a.left
        yield "complex", a.right
    elif q.command == "check-map":
        yield "map", a.map
    elif q.command == "contiguity":
        yield "map", a.f
        yield "map", a.g
    elif q.command == "simpdist":
        yield "map", a.phi
        yield "map", a.psi


def _defines(q: Query) -> Iterable[tuple[str, str]]:
    a = q.args
    if q.command == "product":
        yield "complex", a.name or f"{a.left}x{a.right}"
        yield "map", a.pr1
        yield "map", a.pr2
    elif q.command == "subdivide" and a.name:
        yield "complex", a.name


def parse_job(text: str) -> JobFile:
    """Parse a job file and check that names are unique and defined before use."""
    items = _parse_blocks(text, allow_queries=True)
    kinds: dict[str, str] = {}

    def define(kind, name, line):
        if name in kinds:
            raise ParseError(f"name {name!r} is already defined", line)
        kinds[name] = kind

    def need(kind, name, line):
        if kinds.get(name) != kind:
            raise ParseError(f"undefined {kind} {name!r}", line)

    for item in items:
        if isinstance(item, ComplexDef):
            define("complex", item.name, item.line)
        elif isinstance(item, MapDef):
            need("complex", item.domain, item.line)
            need("complex", item.codomain, item.line)
            define("map", item.name, item.line)
        else:
            item.parse_args()
            for kind, name in _uses(item):
                need(kind, name, item.line)
            for kind, name in _defines(item):
                define(kind, name, item.line)
    return JobFile(items)
