import pytest

from cyclicmon import category as cat
from cyclicmon.category import (dual_numbers, function_algebra, graded_cat, group_algebra,
                                matrix_amplify, obj_from_rep, rep_cat, unit_algebra, unit_obj, vec_cat)
from cyclicmon.contratrace import lift_FA, type_a, type_b
from cyclicmon.cyclic import (AdmissibilityError, BudgetExceeded, PrecocyclicObject, StructuralFailure,
                              build_new_precocyclic, build_old_cocyclic, check_admissible,
                              check_precocyclic, cohomology, cyclic_lambda, hochschild, homotopy_check,
                              QuotientTower,
                              make_admissible_pair, new_ambient, old_ambient)
from cyclicmon.groups import character_rep, make_cyclic_group, regular_rep, trivial_group, trivial_rep
from cyclicmon.linalg import Matrix
from cyclicmon.sayd import make_adHdelta, make_Ve

from homotopy_data import homotopy_algebras, solved_triple

Z2 = make_cyclic_group(2)
T = trivial_group()


def k_e(G=T):
    return make_Ve(trivial_rep(G))


def kZ2_vec():
    return group_algebra(vec_cat(), H=Z2)


def test_old_unit_tower():
    F = type_a(k_e())
    obj = build_old_cocyclic(F, unit_algebra(rep_cat(T)), 4)
    assert obj.dims() == [1] * 5
    for n in range(4):
        assert all(d == Matrix.identity(1) for d in obj.cofaces[n])
    assert all(t == Matrix.identity(1) for t in obj.cyclic)


def test_old_dims():
    obj = build_old_cocyclic(type_b(k_e()), kZ2_vec(), 4)
    assert obj.dims() == [2, 4, 8, 16, 32]
    obj = build_old_cocyclic(type_b(make_adHdelta(Z2)), group_algebra(graded_cat(Z2)), 3)
    # tuples whose product degree matches one of M's two one-dimensional components
    assert obj.dims() == [2, 4, 8, 16]


@pytest.mark.parametrize("F,A", [
    (type_b(k_e()), kZ2_vec()),
    (type_b(k_e()), dual_numbers(vec_cat())),
    (type_b(make_adHdelta(Z2)), group_algebra(graded_cat(Z2))),
    (type_a(make_adHdelta(Z2)), group_algebra(rep_cat(Z2), action="conjugation")),
    (type_a(make_Ve(character_rep(Z2, [1, -1]))), function_algebra(rep_cat(Z2))),
])
def test_relations_hold(F, A):
    old = build_old_cocyclic(F, A, 4, verify=True)
    rep = check_precocyclic(old)
    assert rep.ok, rep.failures
    assert rep.checked > 90
    new = build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), 3, verify=True)
    assert check_precocyclic(new)
    assert new.codegeneracies is None


def test_mutation_is_reported():
    obj = build_old_cocyclic(type_b(k_e()), kZ2_vec(), 3)
    d = obj.cofaces[1][1]
    obj.cofaces[1][1] = Matrix.zero(d.nrows, d.ncols)
    rep = check_precocyclic(obj)
    assert not rep.ok
    assert "t d2 = d1 t on C^1" in rep.failures
    assert "d2d1 = d1d1 on C^0" in rep.failures
    with pytest.raises(StructuralFailure):
        cohomology(obj)


def test_broken_tau_is_reported():
    obj = build_old_cocyclic(type_b(make_adHdelta(Z2)), group_algebra(graded_cat(Z2)), 2,
                             codegeneracies=False)
    obj.cyclic[2] = Matrix.identity(obj.spaces[2].dim)
    fails = check_precocyclic(obj).failures
    assert any(f.startswith("t d") for f in fails)


def test_hochschild_examples():
    unit = build_old_cocyclic(type_b(k_e()), unit_algebra(vec_cat()), 4)
    assert hochschild(unit) == [1, 0, 0, 0]
    k2 = cat.make_algebra(cat.obj_from_dims(T, [2]), {(0, 0): {0: 1}, (1, 1): {1: 1}}, {0: 1, 1: 1}, "k2")
    assert hochschild(build_old_cocyclic(type_b(k_e()), k2, 4)) == [2, 0, 0, 0]


def test_b_must_square_to_zero():
    obj = build_old_cocyclic(type_b(k_e()), kZ2_vec(), 3)
    obj.cofaces[1][0] = obj.cofaces[1][0].scale(2)
    with pytest.raises(StructuralFailure):
        hochschild(obj)


def test_cyclic_examples():
    cases = [
        (unit_algebra(vec_cat()), [1, 0, 1, 0]),
        (kZ2_vec(), [2, 0, 2, 0]),
        (matrix_amplify(unit_algebra(vec_cat()), 2), [1, 0, 1, 0]),
    ]
    for A, hc in cases:
        obj = build_old_cocyclic(type_b(k_e()), A, 4)
        assert cyclic_lambda(obj) == hc


def test_cohomology_report():
    rep = cohomology(build_old_cocyclic(type_b(k_e()), dual_numbers(vec_cat()), 4))
    # frozen from the dense oracle in tests/oracle
    assert rep.hh == [2, 1, 1, 1]
    assert rep.hc == [2, 0, 2, 0]
    d = rep.to_dict()
    assert d["HH"] == rep.hh and d["HC"] == rep.hc and d["checks"]["relations"]


@pytest.mark.parametrize("F,A", [
    (type_b(k_e()), kZ2_vec()),
    (type_a(make_Ve(character_rep(Z2, [1, -1]))), unit_algebra(rep_cat(Z2))),
    (type_b(make_adHdelta(Z2)), group_algebra(graded_cat(Z2))),
])
def test_old_equals_new(F, A):
    old = cohomology(build_old_cocyclic(F, A, 4))
    new = cohomology(build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), 4))
    assert (old.hh, old.hc) == (new.hh, new.hc)


def test_new_sign_instance_vanishes():
    F = type_a(make_Ve(character_rep(Z2, [1, -1])))
    A = unit_algebra(rep_cat(Z2))
    obj = build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), 3)
    assert obj.dims() == [0, 0, 0, 0]


def test_free_pair_changes_spaces_not_cohomology():
    F = type_a(k_e(Z2))
    A = group_algebra(rep_cat(Z2))
    Q = obj_from_rep(regular_rep(Z2))
    can = build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), 3)
    free = build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A, "free", Q=Q), 3)
    assert can.dims() != free.dims()
    assert cohomology(can).hc == cohomology(free).hc


def test_admissible_pair_examples():
    u = unit_algebra(vec_cat())
    p = make_admissible_pair(u)
    assert p.P.dim == 1 and p.d == Matrix.identity(1)
    A = kZ2_vec()
    p = make_admissible_pair(A)
    assert p.P.dim == 4 and p.d == A.mult
    assert check_admissible(p)
    k = unit_algebra(rep_cat(Z2))
    p = make_admissible_pair(k, "free", Q=obj_from_rep(regular_rep(Z2)))
    assert p.P.dim == 2 and p.d.to_dense() == [[1, 1]]
    with pytest.raises(AdmissibilityError):
        make_admissible_pair(k, "free")
    with pytest.raises(AdmissibilityError):
        make_admissible_pair(k, "bogus")


def test_budget_guard():
    F, A = type_b(k_e()), kZ2_vec()
    assert old_ambient(F, A, 4) == 32
    assert new_ambient(F, make_admissible_pair(A), 4) == 64
    with pytest.raises(BudgetExceeded):
        build_old_cocyclic(F, A, 4, budget=31)
    with pytest.raises(BudgetExceeded):
        build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), 4, budget=63)
    with pytest.raises(ValueError):
        build_old_cocyclic(F, A, 0)


def test_homotopy_trivial_case():
    A = kZ2_vec()
    p = make_admissible_pair(A)
    I = Matrix.identity(p.P.dim)
    h = Matrix.zero(QuotientTower(p.P).dim(2), p.P.dim)
    assert homotopy_check(p, p, I, I, h, 3)


@pytest.mark.parametrize("seed", [1, 3])
@pytest.mark.parametrize("k", range(5))
def test_homotopy_solved_triples(k, seed):
    A = homotopy_algebras()[k]
    pair, f, g, h = solved_triple(A, seed)
    assert f != g
    assert homotopy_check(pair, pair, f, g, h, 3)


def test_homotopy_precondition_rejection():
    pair, f, g, h = solved_triple(dual_numbers(vec_cat()), 1)
    assert f != g
    with pytest.raises(ValueError):
        homotopy_check(pair, pair, g, f, h, 3)
    with pytest.raises(ValueError):
        homotopy_check(pair, pair, f, f.scale(2), h, 3)
