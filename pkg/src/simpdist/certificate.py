"""Certificate files and their independent verification.

A certificate repeats the query (level, chain bound, approximation rule,
both maps with their complexes), states the value and gives the witness:
the pieces and one contiguity chain per piece for a finite value, or a
maximal simplex of ``Sd^b(K)`` that is not good on its own for ``inf``.
Verification recomputes the subdivision and the composites and checks
every claim without running the cover search.
"""

from __future__ import annotations

from pathlib import Path

from .complexes import OrderedComplex
from .distance import CoverCertificate, CoverSearch, SimpDistQuery
from .errors import CertificateError, ParseError, SimpDistError
from .maps import ContiguityChain, compose, restrict
from .subdivision import DEFAULT_MAX_SIMPLICES, iterate_approximation, subdivide_iter
from .textio import ComplexDef, MapDef, _int, _lines, _parse_blocks, format_complex, format_map
from .values import DistanceValue

HEADER = "certificate simpdist"


def format_certificate(cert: CoverCertificate) -> str:
    q = cert.query
    out = [HEADER, f"b {q.b}", f"c {q.c}", f"rule {q.rule}", f"value {cert.value}"]
    if cert.infeasible is not None:
        out.append("infeasible " + " ".join(map(str, cert.infeasible)))
    body = [
        format_complex("K", q.phi.domain),
        format_complex("L", q.phi.codomain),
        format_map("phi", q.phi, "K", "L"),
        format_map("psi", q.psi, "K", "L"),
    ]
    for i, (piece, chain) in enumerate(zip(cert.pieces, cert.chains)):
        body.append(format_complex(f"J{i}", piece))
        for t, h in enumerate(chain.steps):
            body.append(format_map(f"H{i}.{t}", h, f"J{i}", "L"))
    return "\n".join(out) + "\n" + "".join(body)


def parse_certificate(text: str) -> CoverCertificate:
    header: dict[str, tuple[int, list[str]]] = {}
    body_start = None
    for n, line in _lines(text):
        tokens = line.split()
        if tokens[0] in ("complex", "map"):
            body_start = n
            break
        if line == HEADER:
            header["certificate"] = (n, [])
            continue
        if tokens[0] not in ("b", "c", "rule", "value", "infeasible") or tokens[0] in header:
            raise ParseError(f"unexpected certificate line {line!r}", n)
        header[tokens[0]] = (n, tokens[1:])
    for key in ("certificate", "b", "c", "rule", "value"):
        if key not in header:
            raise ParseError(f"certificate lacks the {key!r} line")
    if body_start is None:
        raise ParseError("certificate has no complexes")

    body = "\n".join(text.splitlines()[body_start - 1 :])
    items = _parse_blocks(body)
    offset = body_start - 1
    complexes: dict[str, OrderedComplex] = {}
    maps: dict[str, MapDef] = {}
    for item in items:
        item.line += offset
        if item.name in complexes or item.name in maps:
            raise ParseError(f"name {item.name!r} is already defined", item.line)
        if isinstance(item, ComplexDef):
            complexes[item.name] = item.build()
        else:
            for name in (item.domain, item.codomain):
                if name not in complexes:
                    raise ParseError(f"undefined complex {name!r}", item.line)
            maps[item.name] = item
    for name in ("K", "L"):
        if name not in complexes:
            raise ParseError(f"certificate lacks complex {name}")
    for name in ("phi", "psi"):
        if name not in maps:
            raise ParseError(f"certificate lacks map {name}")

    def num(key):
        n, toks = header[key]
        if len(toks) != 1:
            raise ParseError(f"expected one value after {key!r}", n)
        return _int(toks[0], n)

    try:
        query = SimpDistQuery(
            maps["phi"].build(complexes),
            maps["psi"].build(complexes),
            num("b"),
            num("c"),
            " ".join(header["rule"][1]),
        )
        value = DistanceValue.parse(" ".join(header["value"][1]))
    except (SimpDistError, ValueError) as exc:
        raise ParseError(str(exc), header["value"][0]) from None
    infeasible = None
    if "infeasible" in header:
        n, toks = header["infeasible"]
        infeasible = tuple(sorted(_int(t, n) for t in toks))

    pieces, chains = [], []
    i = 0
    while f"J{i}" in complexes:
        steps = []
        t = 0
        while f"H{i}.{t}" in maps:
            d = maps[f"H{i}.{t}"]
            if d.domain != f"J{i}" or d.codomain != "L":
                raise ParseError(f"chain map {d.name} must go from J{i} to L", d.line)
            steps.append(d.build(complexes, check=False))
            t += 1
        if not steps:
            raise ParseError(f"piece J{i} has no chain")
        pieces.append(complexes[f"J{i}"])
        chains.append(ContiguityChain(tuple(steps)))
        i += 1
    return CoverCertificate(query, value, tuple(pieces), tuple(chains), infeasible)


def write_certificate(cert: CoverCertificate, path: str | Path) -> None:
    Path(path).write_text(format_certificate(cert))


def read_certificate(path: str | Path) -> CoverCertificate:
    return parse_certificate(Path(path).read_text())


def check_certificate(
    cert: CoverCertificate, *, max_simplices: int = DEFAULT_MAX_SIMPLICES, **search
) -> None:
    """Raise :class:`CertificateError` unless every claim of ``cert`` holds.

    A finite certificate is checked without search.  An infinite one is
    checked by deciding the single witness simplex, which is the only
    search performed here; ``search`` goes to :class:`CoverSearch`.
    """
    q = cert.query
    k = q.phi.domain
    if q.phi.domain != q.psi.domain or q.phi.codomain != q.psi.codomain:
        raise CertificateError("phi and psi are not parallel")
    for name, f in (("phi", q.phi), ("psi", q.psi)):
        try:
            f._check()
        except SimpDistError as exc:
            raise CertificateError(f"{name} is not simplicial: {exc}") from None
    sd = subdivide_iter(k, q.b, max_simplices=max_simplices).complex
    value = cert.value

    if value.is_infinite:
        if cert.pieces or cert.chains:
            raise CertificateError("an infinite certificate carries no pieces")
        s = cert.infeasible
        if s is None or s not in set(sd.maximal):
            raise CertificateError("the witness is not a maximal simplex of Sd^b(K)")
        search = CoverSearch(q, max_simplices=max_simplices, **search)
        if search.decide_simplices([search.simplices.index(s)]) is not None:
            raise CertificateError(f"the witness simplex {list(s)} is good")
        return
    if not value.is_finite:
        raise CertificateError(f"value {value} is not decided")
    if cert.infeasible is not None:
        raise CertificateError("a finite certificate carries no infeasible witness")
    if len(cert.pieces) != value.k + 1 or len(cert.chains) != len(cert.pieces):
        raise CertificateError(
            f"value {value} needs {value.k + 1} pieces and chains, "
            f"got {len(cert.pieces)} and {len(cert.chains)}"
        )
    iota = iterate_approximation(k, q.b, 0, rule=q.rule, max_simplices=max_simplices)
    gphi, gpsi = compose(q.phi, iota), compose(q.psi, iota)
    for i, piece in enumerate(cert.pieces):
        if not piece.is_subcomplex_of(sd):
            raise CertificateError(f"piece {i} is not a subcomplex of Sd^b(K)")
    for s in sd.maximal:
        if not any(p.has_simplex(s) for p in cert.pieces):
            raise CertificateError(f"simplex {list(s)} of Sd^b(K) is not covered")
    for i, (piece, chain) in enumerate(zip(cert.pieces, cert.chains)):
        if chain.length > q.c:
            raise CertificateError(f"chain {i} has length {chain.length} > {q.c}")
        for h in chain.steps:
            if h.domain != piece or h.codomain != q.phi.codomain:
                raise CertificateError(f"chain {i} has a map with the wrong domain or codomain")
        if chain.start != restrict(gphi, piece):
            raise CertificateError(f"chain {i} does not start at the restricted composite of phi")
        if chain.end != restrict(gpsi, piece):
            raise CertificateError(f"chain {i} does not end at the restricted composite of psi")
        if not chain.is_valid():
            raise CertificateError(f"chain {i} has a non-simplicial map or a broken link")


def verify_certificate(cert: CoverCertificate, **kw) -> bool:
    try:
        check_certificate(cert, **kw)
    except CertificateError:
        return False
    return True
