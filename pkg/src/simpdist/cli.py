"""Command-line driver: run a job file and print one report block per query.

Exit status: 0 when every query was decided, 2 when some query ran out of
budget, 1 on a parse or input error (including a rejected certificate),
3 when ``--with-oracle`` found a disagreement.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .certificate import check_certificate, read_certificate, write_certificate
from .complexes import OrderedComplex
from .distance import (
    DEFAULT_MAX_NODES,
    ORDERS,
    STRATEGIES,
    BACKENDS,
    SimpDistQuery,
    simpdist_bc,
    stabilization_probe,
)
from .errors import BudgetExceeded, CertificateError, OracleCapExceeded, ParseError, SimpDistError
from .maps import DEFAULT_MAX_FRONTIER, SimplicialMap, constant, contiguity_distance, identity
from .oracle import oracle_contiguity_distance, oracle_simpdist
from .product import ordered_product, projection
from .subdivision import DEFAULT_MAX_SIMPLICES, subdivide_iter
from .textio import ComplexDef, JobFile, MapDef, Query, parse_job
from .values import DistanceValue

OK, INPUT_ERROR, UNDECIDED, ORACLE_MISMATCH = 0, 1, 2, 3


@dataclass
class Options:
    max_simplices: int = DEFAULT_MAX_SIMPLICES
    max_frontier: int = DEFAULT_MAX_FRONTIER
    max_nodes: int = DEFAULT_MAX_NODES
    strategy: str = "sat"
    order: str = "first-fail"
    backend: str = "sat"
    with_oracle: bool = False
    cert_out: Path | None = None
    base_dir: Path = Path(".")

    def search(self) -> dict:
        return dict(
            max_simplices=self.max_simplices,
            max_nodes=self.max_nodes,
            strategy=self.strategy,
            order=self.order,
            backend=self.backend,
        )


def _describe(k: OrderedComplex) -> str:
    counts = [0] * (k.dimension + 1)
    for s in k.simplices:
        counts[len(s) - 1] += 1
    return (
        f"{len(k.vertices)} vertices, {len(k.maximal)} maximal simplices, "
        f"dimension {k.dimension}, f-vector {tuple(counts)}"
    )


def _images(h: SimplicialMap) -> str:
    return " ".join(f"{v}->{w}" for v, w in zip(h.domain.vertices, h.images))


class Runner:
    def __init__(self, options: Options, out: TextIO):
        self.opt = options
        self.out = out
        self.complexes: dict[str, OrderedComplex] = {}
        self.maps: dict[str, SimplicialMap] = {}
        self.status = OK
        self.n = 0

    def emit(self, text: str = ""):
        print(text, file=self.out)

    def flag(self, code: int):
        # input errors dominate, then oracle mismatches, then budget overruns
        rank = {OK: 0, UNDECIDED: 1, ORACLE_MISMATCH: 2, INPUT_ERROR: 3}
        if rank[code] > rank[self.status]:
            self.status = code

    def mapping(self, name: str) -> SimplicialMap:
        f = self.maps[name]
        f._check()
        return f

    # -- main loop --

    def run(self, job: JobFile) -> int:
        for item in job.items:
            if isinstance(item, ComplexDef):
                self.complexes[item.name] = item.build()
            elif isinstance(item, MapDef):
                self.maps[item.name] = item.build(self.complexes, check=False)
            else:
                self.query(item)
        return self.status

    def query(self, q: Query):
        self.n += 1
        self.emit(f"=== query {self.n} ===")
        self.emit(f"> {q.text}")
        handler = getattr(self, "do_" + q.command.replace("-", "_"))
        try:
            handler(q.args)
        except BudgetExceeded as exc:
            self.emit(f"value: {DistanceValue.unknown(f'budget={exc}')}")
            self.flag(UNDECIDED)
        except SimpDistError as exc:
            self.emit(f"error: line {q.line}: {exc}")
            self.flag(INPUT_ERROR)
        self.emit()

    # -- commands --

    def do_validate(self, a):
        k = self.complexes[a.complex]
        self.emit(f"complex {a.complex}: {_describe(k)}")
        self.emit("valid: yes")

    def do_product(self, a):
        name = a.name or f"{a.left}x{a.right}"
        prod = ordered_product(self.complexes[a.left], self.complexes[a.right])
        self.complexes[name] = prod.complex
        self.maps[a.pr1] = projection(prod, 1)
        self.maps[a.pr2] = projection(prod, 2)
        self.emit(f"complex {name}: {_describe(prod.complex)}")
        self.emit(f"projections: {a.pr1} : {name} -> {a.left}, {a.pr2} : {name} -> {a.right}")
        self.emit("vertex codes: " + " ".join(f"{i}=({u},{v})" for i, (u, v) in enumerate(prod.pairs)))

    def do_subdivide(self, a):
        sd = subdivide_iter(self.complexes[a.complex], a.b, max_simplices=self.opt.max_simplices)
        if a.name:
            self.complexes[a.name] = sd.complex
        self.emit(f"Sd^{a.b}({a.complex}): {_describe(sd.complex)}")

    def do_check_map(self, a):
        f = self.maps[a.map]
        try:
            f._check()
        except SimpDistError as exc:
            self.emit(f"map {a.map}: simplicial: no ({exc})")
            return
        self.emit(f"map {a.map}: simplicial: yes")

    def do_contiguity(self, a):
        f, g = self.mapping(a.f), self.mapping(a.g)
        value, chain = contiguity_distance(f, g, a.max_c, max_frontier=self.opt.max_frontier)
        self.emit(f"value: {value}")
        if chain is not None:
            for t, h in enumerate(chain.steps):
                self.emit(f"H{t}: {_images(h)}")
        if not value.is_decided:
            self.flag(UNDECIDED)
        if self.opt.with_oracle:
            self.oracle(lambda: oracle_contiguity_distance(f, g), value, cap=a.max_c)

    def do_simpdist(self, a):
        phi, psi = self.mapping(a.phi), self.mapping(a.psi)
        self.distance(SimpDistQuery(phi, psi, a.b, a.c, a.rule))
        if a.probe:
            table = stabilization_probe(
                phi, psi, a.probe[0], a.probe[1], rule=a.rule, **self.opt.search()
            )
            self.emit("probe:")
            self.emit(table.render())
            if any(not v.is_decided for v in table.values.values()):
                self.flag(UNDECIDED)

    def do_sc(self, a):
        prod = ordered_product(self.complexes[a.complex], self.complexes[a.complex])
        self.distance(SimpDistQuery(projection(prod, 1), projection(prod, 2), a.b, a.c, a.rule))

    def do_scat(self, a):
        k = self.complexes[a.complex]
        self.distance(SimpDistQuery(identity(k), constant(k, k, a.base), a.b, a.c, a.rule))

    def do_verify_cert(self, a):
        path = Path(a.file)
        if not path.is_absolute():
            path = self.opt.base_dir / path
        try:
            cert = read_certificate(path)
            check_certificate(cert, max_simplices=self.opt.max_simplices, **self._decide_kw())
        except OSError as exc:
            raise ParseError(f"cannot read {a.file}: {exc.strerror}") from None
        except CertificateError as exc:
            self.emit(f"certificate {a.file}: rejected ({exc})")
            self.flag(INPUT_ERROR)
            return
        self.emit(f"certificate {a.file}: accepted (value {cert.value})")

    # -- helpers --

    def _decide_kw(self):
        return {k: v for k, v in self.opt.search().items() if k != "max_simplices"}

    def distance(self, q: SimpDistQuery):
        value, cert = simpdist_bc(q, **self.opt.search())
        self.emit(f"value: {value}")
        if value.is_infinite:
            self.emit(f"witness: simplex {list(cert.infeasible)} of Sd^{q.b}(K) fails on its own")
        else:
            for i, (piece, chain) in enumerate(zip(cert.pieces, cert.chains)):
                self.emit(
                    f"piece {i}: {len(piece.maximal)} maximal simplices, chain length {chain.length}"
                )
        if self.opt.cert_out is not None:
            self.opt.cert_out.mkdir(parents=True, exist_ok=True)
            path = self.opt.cert_out / f"query{self.n}.cert"
            write_certificate(cert, path)
            self.emit(f"certificate: {path}")
        if self.opt.with_oracle:
            self.oracle(lambda: oracle_simpdist(q.phi, q.psi, q.b, q.c, rule=q.rule), value)

    def oracle(self, compute, value: DistanceValue, cap: int | None = None):
        try:
            expected = compute()
        except OracleCapExceeded as exc:
            self.emit(f"oracle: skipped ({exc})")
            return
        if value.is_decided:
            agree = expected == value
        else:
            # a depth-capped search agrees with any value beyond the cap
            agree = not (expected.is_finite and expected.k <= cap)
        self.emit(f"oracle: {expected} ({'agrees' if agree else 'MISMATCH'})")
        if not agree:
            self.flag(ORACLE_MISMATCH)


def run(job: JobFile, options: Options | None = None, out: TextIO | None = None) -> int:
    """Execute the queries of ``job`` in order; returns the exit status."""
    runner = Runner(options or Options(), out or sys.stdout)
    return runner.run(job)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="simpdist",
        description="Exact simplicial distance computations driven by a job file.",
    )
    p.add_argument("job", help="job file ('-' reads standard input)")
    p.add_argument("--max-simplices", type=int, default=DEFAULT_MAX_SIMPLICES,
                   help="cap on maximal simplices of any subdivision")
    p.add_argument("--max-frontier", type=int, default=DEFAULT_MAX_FRONTIER,
                   help="cap on maps visited by the contiguity search")
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES,
                   help="cap on nodes of the chain and cover searches")
    p.add_argument("--strategy", choices=STRATEGIES, default="sat")
    p.add_argument("--order", choices=ORDERS, default="first-fail",
                   help="simplex order for the branch-and-bound strategy")
    p.add_argument("--backend", choices=BACKENDS, default="sat",
                   help="decision procedure for single pieces")
    p.add_argument("--with-oracle", action="store_true",
                   help="compare every value with the brute-force oracle")
    p.add_argument("--cert-out", type=Path, metavar="DIR",
                   help="write one certificate file per distance query")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    if args.job == "-":
        text, base = sys.stdin.read(), Path(".")
    else:
        try:
            text = Path(args.job).read_text()
        except OSError as exc:
            print(f"error: cannot read {args.job}: {exc.strerror}", file=sys.stderr)
            return INPUT_ERROR
        base = Path(args.job).parent
    options = Options(
        max_simplices=args.max_simplices,
        max_frontier=args.max_frontier,
        max_nodes=args.max_nodes,
        strategy=args.strategy,
        order=args.order,
        backend=args.backend,
        with_oracle=args.with_oracle,
        cert_out=args.cert_out,
        base_dir=base,
    )
    try:
        job = parse_job(text)
        return run(job, options)
    except ParseError as exc:
        sys.stdout.flush()
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
