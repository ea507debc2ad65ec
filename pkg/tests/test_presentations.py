import pytest

from braidties.presentations import (PresentationError, Relation, build_algebra, corrupt, define_f_elements,
                                     diagram_distance, emit_presentation, parse_relations, rescaling_check,
                                     verify_presentation)
from braidties.coxeter import build_system


@pytest.mark.parametrize("kind,arg", [
    ("typeA", 3), ("typeA", 4), ("typeA-2param", 3), ("typeB", 2), ("typeB", 3), ("typeD", 3), ("typeD", 4),
    ("doubled", "G2"), ("doubled", "A2"), ("marin-CW", "A2"), ("marin-CW", "B2"),
])
def test_all_relations_hold(kind, arg):
    report = verify_presentation(emit_presentation(kind, arg))
    assert report.ok, report.to_text()
    assert report.free.ok


@pytest.mark.parametrize("kind,arg", [("typeA", 3), ("typeB", 3)])
def test_w_quantified_families_hold(kind, arg):
    p = emit_presentation(kind, arg, full=True)
    tags = p.tags()
    assert ("a4" in tags) if kind == "typeA" else ("rB6" in tags)
    assert verify_presentation(p, threads=2).ok


def test_type_a_tags():
    p = emit_presentation("typeA", 3)
    assert p.tags() == ["aa2", "aa3", "aa33", "aa4", "aa5", "aa6", "aa7"]
    p4 = emit_presentation("typeA", 4)
    assert "aa1" in p4.tags()


def test_type_b_relation_list():
    p = emit_presentation("typeB", 2)
    assert p.tags() == [f"rrB{i}" for i in (2, 4, 5, 7, 8, 10, 11, 12, 13, 14, 15, 16, 17, 18)]
    texts = {(r.lhs, r.rhs) for r in p.relations}
    assert ("g1 g2 g1 g2", "g2 g1 g2 g1") in texts
    assert ("g2 f1", "f2 g2") in texts
    assert ("e2 f1", "f2 f1") in texts
    assert ("e1 e2 g2", "e2 g2 e1") in texts
    assert set(p.tags()) >= {"rrB2", "rrB4", "rrB10", "rrB11", "rrB15", "rrB18"}
    assert "rrB3" not in p.tags()


def test_doubled_g2_has_six_relations():
    p = emit_presentation("doubled", "G2")
    assert len(p.relations) == 6
    assert p.relations[0].lhs == "g1 g2 g1 g2 g1 g2"


def test_type_d_uses_diagram_distance():
    W = build_system("D5", names=["s1'", "s1''", "s2", "s3", "s4"])
    d = diagram_distance(W)
    assert d[0][1] == 2
    p = emit_presentation("typeD", 4)
    assert any(r.lhs == "e1'" and r.rhs == "e1''" for r in p.relations)
    assert any(r.tag == "D1" and r.lhs == "g1' g1''" for r in p.relations)
    assert p.system == "D5"


def test_type_d_dimension():
    con = build_algebra("typeD", 4)
    assert len(con.datum.algebra.monoid) == 52
    assert con.datum.dimension() == 52 * 1920


def test_f_elements():
    con = build_algebra("typeB", 3)
    alg = con.algebra
    f = define_f_elements(alg, 3)
    assert f[0] == alg.tie(0)
    for fi in f:
        assert fi * fi == fi
    # f_2 = g_2 f_1 g_2^-1
    assert f[1] == alg.gen(1) * f[0] * alg.gen_inverse(1)
    assert alg.gen(1) * f[0] == f[1] * alg.gen(1)
    assert [str(x.as_coefficient()) for x in f] == ["e<a1>", "e<a1+a2>", "e<a1+a2+a3>"]


def test_type_b_length_three_braid_fails():
    con = build_algebra("typeB", 2)
    alg = con.algebra
    assert alg.element_from_word("g1 g2 g1") != alg.element_from_word("g2 g1 g2")
    assert alg.element_from_word("g1 g2 g1 g2") == alg.element_from_word("g2 g1 g2 g1")


def test_corrupted_relation_is_reported():
    p = corrupt(emit_presentation("typeA", 3), Relation("bad", "commute", "g1 g2", "g2 g1"))
    report = verify_presentation(p)
    assert not report.ok
    (bad,) = report.failures()
    assert bad.relation.tag == "bad"
    assert bad.difference == "g1 g2 - g2 g1"


def test_hecke_images_of_relations_agree():
    report = verify_presentation(emit_presentation("typeB", 3))
    assert all(s.hecke_ok for s in report.statuses)


def test_parse_relations():
    rels = parse_relations("# comment\n(x1) g1 g2 = g2 g1\ne1 = e1^2 = e1\n")
    assert [r.tag for r in rels] == ["x1", "custom", "custom"]
    with pytest.raises(PresentationError):
        parse_relations("g1 g2")


def test_undeclared_generator_rejected():
    p = emit_presentation("typeA", 3)
    p.relations.append(Relation("bad", "", "g9", "g1"))
    with pytest.raises(PresentationError):
        p.validate()


def test_rank_too_small():
    with pytest.raises(PresentationError):
        emit_presentation("typeB", 1)
    with pytest.raises(PresentationError):
        emit_presentation("typeD", 2)
    with pytest.raises(PresentationError):
        emit_presentation("nope", 3)


def test_json_export_is_deterministic():
    a = emit_presentation("typeB", 3).to_json()
    b = emit_presentation("typeB", 3).to_json()
    assert a == b
    r1 = verify_presentation(emit_presentation("typeA", 3), threads=1).to_json()
    r2 = verify_presentation(emit_presentation("typeA", 3), threads=3).to_json()
    assert r1 == r2


@pytest.mark.parametrize("n", [2, 3])
def test_rescaling(n):
    report = rescaling_check(n)
    assert report.ok, report.to_text()

