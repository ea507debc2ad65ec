import pytest

from braidties.coxeter import build_system
from braidties.juyumaya import (CATALOG, GroupHom, JuyumayaError, JuyumayaTriple, build_e_from_triple, catalog,
                                centralizer_bruteforce, centralizer_structure, check_JM, check_mih,
                                generated_subgroup, juyumaya_datum, k_sets, tie_from_masks)
from braidties.subsystems import SubsystemSpace

FINITE = [("terminal", "B3"), ("identity", "A3"), ("D-to-A", 3), ("D-to-A", 4), ("B-to-A", 2), ("B-to-A", 3),
          ("C-to-A", 3)]
AFFINE = [("Dhat-to-D", 3), ("Bhat-to-B", 3), ("Chat-to-C", 3), ("Chat-to-C", 4), ("Bhat-to-A", 3),
          ("Dhat-to-A", 3), ("Chat-to-A", 3)]


@pytest.mark.parametrize("name,n", FINITE + AFFINE)
def test_catalog_entries_are_certified(name, n):
    e = catalog(name, n)
    assert all(w.ok for w in e.witnesses)
    assert e.tie.certificate.ok
    assert check_JM(e.phi, e.tie, "triple", triple=e.triple).ok
    d = juyumaya_datum(e.phi, e.tie)
    assert check_mih(e.phi, e.tie, d).ok
    assert d.check_free_condition().ok


@pytest.mark.parametrize("name,n", FINITE)
def test_bruteforce_jm_on_finite_sources(name, n):
    e = catalog(name, n)
    res = check_JM(e.phi, e.tie)
    assert res.ok and not res.details["partial"]


@pytest.mark.parametrize("name,n", AFFINE)
def test_bounded_sweep_on_affine_sources(name, n):
    e = catalog(name, n)
    res = check_JM(e.phi, e.tie, bound=5)
    assert res.ok and res.details["partial"]
    assert "partial" in res.justification


def test_all_catalog_names_resolve():
    for name in CATALOG:
        assert catalog(name).name == name


@pytest.mark.parametrize("name,n,size", [
    ("B-to-A", 3, 15), ("D-to-A", 4, 52), ("identity", "A2", 5), ("terminal", "G2", 2), ("Chat-to-C", 3, 30),
])
def test_generated_monoid_sizes(name, n, size):
    e = catalog(name, n)
    assert len(juyumaya_datum(e.phi, e.tie).algebra.monoid) == size


def test_b_to_a_ties_are_simple():
    e = catalog("B-to-A", 3)
    assert e.tie.describe() == {"s1": "<a1>", "s2": "<a2>", "s3": "<a3>"}
    assert e.phi.images[0].is_identity()


def test_b_to_a_jm_count():
    e = catalog("B-to-A", 3)
    res = check_JM(e.phi, e.tie, reps=e.reps)
    assert res.ok and res.checks == 2 * 3 * 48


def test_centralizer_b3_s1():
    W = build_system("B3")
    st = centralizer_structure(W, 0)
    brute = centralizer_bruteforce(W, W.gens[0])
    assert len(brute) == 16
    assert generated_subgroup(W, st.reflections) == {x.form for x in brute}
    assert st.y_rank == 0


def test_centralizer_a3_s1():
    W = build_system("A3")
    st = centralizer_structure(W, 0)
    # C(s1) in S4 is <(12),(34)>, order 4
    assert len(centralizer_bruteforce(W, W.gens[0])) == 4
    assert len(generated_subgroup(W, st.reflections)) == 4


def test_k_set_contains_t1():
    e = catalog("B-to-A", 3)
    assert 0 in k_sets(e.phi, [0])[0]


def test_chat_to_c_word_identity():
    for n in (3, 4):
        e = catalog("Chat-to-C", n)
        w = [x for x in e.witnesses if x.name == "phi(s_beta)=1"][0]
        assert w.ok and w.witness["phi(word)"] == "1"


def test_invalid_homomorphism():
    W, U = build_system("A2"), build_system("A1")
    with pytest.raises(JuyumayaError):
        GroupHom(W, U, [(0,), ()])
    phi = GroupHom(W, U, [(0,), ()], check=False)
    res = phi.check()
    assert not res.ok and "(s1 s2)^3" in res.witness["relation"]


def test_jm_failure_is_reported():
    # identity on B2 with an empty tie on s1: <e_s1, e_s2> != <e_s1, s1.e_s2>
    W, U = build_system("B2"), build_system("B2")
    phi = GroupHom(W, U, [(0,), (1,)])
    sp = SubsystemSpace.of(U)
    bad = tie_from_masks(phi, {0: 0, 1: sp.generator_subsystem(1).mask})
    assert bad.certificate.ok
    res = check_JM(phi, bad)
    assert not res.ok and set(res.witness) == {"s1", "s2", "w"}


def test_triple_mode_rejects_wrong_t():
    e = catalog("B-to-A", 3)
    tr = JuyumayaTriple(e.phi, e.reps, {0: 1, 1: 1})
    res = check_JM(e.phi, e.tie, "triple", triple=tr)
    assert not res.ok


def test_build_e_independent_of_search_order():
    e = catalog("D-to-A", 4)
    a = build_e_from_triple(e.triple)
    b = build_e_from_triple(e.triple, order=list(reversed(range(e.source.rank))))
    assert a.values == b.values


def test_compose_needs_matching_systems():
    a = catalog("B-to-A", 3)
    b = catalog("identity", "A2")
    with pytest.raises(JuyumayaError):
        b.phi.compose(a.phi)


def test_rank_checks():
    with pytest.raises(JuyumayaError):
        catalog("Chat-to-C", 2)
    with pytest.raises(JuyumayaError):
        catalog("nope", 3)
