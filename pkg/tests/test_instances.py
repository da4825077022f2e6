import glob

import pytest

from polyabc.errors import CasError, ParseError
from polyabc.instances import (CorpusSpec, field_spec_from_code, generate_corpus,
                               instance_to_dict, parse_instance, serialize_instance)
from polyabc.mvpoly import MvPoly, poly_gcd

from conftest import F3, Q2


def test_parse_minimal():
    text = """{
      "id": "tiny", "field": {"kind": "rational_p_adic", "p": 2},
      "vars": ["z1"], "polys": [[[[1], "1"], [[0], "-1/2"]]], "params": {}
    }"""
    inst = parse_instance(text)
    assert inst.instance_id == "tiny"
    assert inst.m == 1
    assert len(inst.polys) == 1
    assert str(inst.polys[0]) == "1 * z1 + -1/2"


def test_parse_bad_prime():
    text = '{"id": "x", "field": {"kind": "prime_field", "p": 4}, "vars": ["z1"], "polys": []}'
    with pytest.raises(CasError) as exc:
        parse_instance(text)
    assert exc.value.code == "VALIDATION_ERROR"


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_instance("{not json")
    assert exc.value.code == "PARSE_ERROR"
    assert exc.value.line >= 1


def test_round_trip_shipped_instances():
    paths = sorted(glob.glob("instances/*.json"))
    assert paths, "shipped instances missing"
    for path in paths:
        text = open(path).read()
        inst = parse_instance(text)
        assert serialize_instance(inst) == text
        again = parse_instance(serialize_instance(inst))
        assert instance_to_dict(again) == instance_to_dict(inst)


def test_corpus_deterministic():
    cs = lambda: CorpusSpec(seed=42, count=5, field=Q2, m=1, n=2, degree_bound=4)
    a = [serialize_instance(i) for i in generate_corpus(cs())]
    b = [serialize_instance(i) for i in generate_corpus(cs())]
    assert a == b
    assert len(a) == 5
    c = [serialize_instance(i) for i in
         generate_corpus(CorpusSpec(seed=43, count=5, field=Q2, m=1, n=2, degree_bound=4))]
    assert a != c


def test_corpus_empty():
    assert generate_corpus(CorpusSpec(seed=1, count=0, field=Q2)) == []


def test_corpus_pairwise_mode():
    cs = CorpusSpec(seed=7, count=6, field=F3, m=1, n=3, degree_bound=4,
                    coprimality="pairwise")
    for inst in generate_corpus(cs):
        polys = inst.polys
        acc = MvPoly.zero(inst.spec, inst.m)
        for f in polys:
            acc = acc + f
        assert acc.is_zero()
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                assert poly_gcd(polys[i], polys[j]).is_constant()


def test_corpus_guards():
    with pytest.raises(CasError) as exc:
        generate_corpus(CorpusSpec(seed=1, count=1, field=Q2, n=20))
    assert exc.value.code == "GUARD_EXCEEDED"
    with pytest.raises(CasError) as exc:
        generate_corpus(CorpusSpec(seed=1, count=1, field=Q2, degree_bound=11))
    assert exc.value.code == "GUARD_EXCEEDED"


def test_char_mode_validation():
    cs = CorpusSpec(seed=1, count=1, field=Q2, char_mode="p")
    with pytest.raises(CasError) as exc:
        generate_corpus(cs)
    assert exc.value.code == "VALIDATION_ERROR"
    ok = CorpusSpec(seed=1, count=1, field=Q2, char_mode="zero")
    assert len(generate_corpus(ok)) == 1


def test_field_codes():
    spec = field_spec_from_code("f3t")
    assert spec.kind == "ratfunc_t_adic" and spec.p == 3
    with pytest.raises(CasError):
        field_spec_from_code("f9")
