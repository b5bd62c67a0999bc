import pytest

from simpdist.certificate import (
    check_certificate,
    format_certificate,
    parse_certificate,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from simpdist.complexes import cycle, simplex
from simpdist.distance import SimpDistQuery, sc_bc, scat_bc, simpdist_bc
from simpdist.errors import CertificateError, ParseError
from simpdist.maps import constant, identity
from simpdist.values import INFINITE

from mutants import mutants

C3 = cycle(3)


@pytest.fixture(scope="module")
def certificates():
    out = [scat_bc(C3, 0, b, c)[1] for b in (0, 1) for c in range(4)]
    out += [sc_bc(C3, 0, c)[1] for c in (1, 2, 4)]
    out.append(scat_bc(simplex(0, 1), 0, 1, 1)[1])
    return out


def test_round_trip_and_accept(certificates, tmp_path):
    for i, cert in enumerate(certificates):
        text = format_certificate(cert)
        again = parse_certificate(text)
        assert again == cert
        assert format_certificate(again) == text
        check_certificate(again)
        path = tmp_path / f"{i}.cert"
        write_certificate(cert, path)
        assert read_certificate(path) == cert


def test_mutants_rejected(certificates):
    seen = set()
    for cert in certificates:
        for kind, bad in mutants(cert):
            seen.add(kind)
            assert not verify_certificate(bad), kind
            # the text form is rejected as well, either on parsing or on checking
            try:
                reparsed = parse_certificate(format_certificate(bad))
            except ParseError:
                continue
            assert not verify_certificate(reparsed), kind
    assert {"dropped piece (value kept)", "broken chain link", "wrong endpoint"} <= seen


def test_infinite_witness_checked():
    _, cert = simpdist_bc(SimpDistQuery(identity(C3), constant(C3, C3, 0), 0, 1))
    assert cert.value == INFINITE
    check_certificate(cert)
    from dataclasses import replace

    # a simplex that is good on its own is not a witness
    good_q = SimpDistQuery(identity(C3), constant(C3, C3, 0), 0, 2)
    with pytest.raises(CertificateError):
        check_certificate(replace(cert, query=good_q))
    with pytest.raises(CertificateError):
        check_certificate(replace(cert, infeasible=(0, 1, 2)))


def test_text_corruptions():
    _, cert = scat_bc(C3, 0, 0, 2)
    text = format_certificate(cert)
    with pytest.raises(ParseError):
        parse_certificate(text.replace("value Finite(1)", "value Finite(x)"))
    with pytest.raises(ParseError):
        parse_certificate(text.replace("rule last\n", ""))
    bad = parse_certificate(text.replace("c 2\n", "c 0\n"))
    assert not verify_certificate(bad)
