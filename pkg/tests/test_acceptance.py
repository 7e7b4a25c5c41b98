"""Acceptance criteria 1-11.  Each test prints exactly one PASS/FAIL line;
the lines are also collected and repeated in the pytest terminal summary.
All comparisons are exact."""
import pytest

import cyclicmon.suites as suites
from cyclicmon.category import dual_numbers, group_algebra, rep_cat, unit_algebra, vec_cat
from cyclicmon.contratrace import lift_FA, type_a, type_b
from cyclicmon.cyclic import (build_new_precocyclic, build_old_cocyclic, check_precocyclic, cohomology,
                              homotopy_check, make_admissible_pair)
from cyclicmon.groups import (EquivariantGraded, character_rep, make_cyclic_group, regular_rep,
                              symmetric_group, trivial_group, trivial_rep)
from cyclicmon.linalg import Matrix
from cyclicmon.sayd import (SaydError, check_sayd, make_adHdelta, make_mHad, make_mpi, make_Ve)

from homotopy_data import homotopy_algebras, solved_triple
from oracle.dense_lambda import DUAL, hh_hc

N = 4
LINES = []


def report(n, title, ok, detail=""):
    line = f"criterion {n:>2} [{title}]: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    print(line)
    LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite_run():
    """Run the default suite set once, recording every object that is built."""
    built = []
    real = suites.cohomology

    def recording(obj, check=True):
        built.append(obj)
        return real(obj, check)

    suites.cohomology = recording
    try:
        results = {r.name: r for r in suites.run_all(N=N)}
    finally:
        suites.cohomology = real
    return results, built


def test_criterion_01_structural_identities(suite_run):
    _, built = suite_run
    reports = [check_precocyclic(o) for o in built]
    ok = bool(built) and all(r.ok for r in reports) and all(o.max_degree == N for o in built)
    report(1, "structural identities", ok,
           f"{len(built)} objects, {sum(r.checked for r in reports)} matrix identities, N = {N}")


def test_criterion_02_unit_algebra():
    T, Z2 = trivial_group(), make_cyclic_group(2)
    rows = []
    for F, A in [(type_b(make_Ve(trivial_rep(T))), unit_algebra(vec_cat())),
                 (type_a(make_Ve(trivial_rep(Z2))), unit_algebra(rep_cat(Z2)))]:
        rows.append(cohomology(build_old_cocyclic(F, A, N)).hc)
        rows.append(cohomology(build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), N)).hc)
    report(2, "HC of the unit algebra", all(r == [1, 0, 1, 0] for r in rows), f"old/new rows {rows}")


def test_criterion_03_group_algebra_z2():
    F = type_b(make_Ve(trivial_rep(trivial_group())))
    A = group_algebra(vec_cat(), H=make_cyclic_group(2))
    hc = cohomology(build_old_cocyclic(F, A, N)).hc
    report(3, "HC(kZ/2) in Vec", hc == [2, 0, 2, 0], f"HC = {hc}")


def test_criterion_04_morita(suite_run):
    r = suite_run[0]["morita"]
    d = {i.description: (i.left, i.right) for i in r.instances}
    k_m2 = d["Vec, k vs M_2(k), M = k_e"]
    g_m2 = d["Vec, kZ/2 vs M_2(kZ/2), M = k_e"]
    ok = (k_m2 == ([1, 0, 1, 0], [1, 0, 1, 0]) and g_m2 == ([2, 0, 2, 0], [2, 0, 2, 0]) and r.passed)
    report(4, "Morita invariance", ok, f"k|M_2(k) {k_m2}, kZ/2|M_2(kZ/2) {g_m2}")


def test_criterion_05_pair_independence(suite_run):
    r = suite_run[0]["pair_independence"]
    free_kG = [i for i in r.instances if i.description.endswith("free(kG)")]
    ok = len(free_kG) >= 3 and all(i.passed and len(i.left) == N for i in free_kG)
    report(5, "pair independence", ok, f"{len(free_kG)} canonical vs free(kG) instances")


def test_criterion_06_ab_duality(suite_run):
    r = suite_run[0]["ab_duality"]
    vanish = [i for i in r.instances if i.description == "Z/2, A = k, V = sign"]
    ok = (len(r.instances) >= 4 and r.passed and len(vanish) == 1
          and vanish[0].left == vanish[0].right == [0] * N)
    report(6, "A/B duality", ok, f"{len(r.instances)} instances, sign instance {vanish[0].left if vanish else None}")


def test_criterion_07_fiber_examples(suite_run):
    res = suite_run[0]
    r = res["fiber_examples"]
    loop = [i for i in r.instances if "A # H" in i.description]
    m2 = [i for i in res["morita"].instances if i.description.startswith("Vec, k vs M_2(k)")]
    # HC_H(k^Z/2, adH^Delta) = HC(k^Z/2 # Z/2) = HC(M_2(k)) = HC(k)
    ok = (r.passed and len(loop) == 1 and len(m2) == 1
          and loop[0].left == loop[0].right == m2[0].right == m2[0].left)
    report(7, "fiber functor examples", ok, f"{len(r.instances)} instances, loop via M_2(k) {loop[0].right if loop else None}")


def test_criterion_08_finite_de_rham(suite_run):
    r = suite_run[0]["derham_finite"]
    ok = len(r.instances) >= 3 and r.passed and all(
        all(x == 0 for x in i.right[1::2]) for i in r.instances)
    report(8, "finite de Rham comparison", ok, f"{len(r.instances)} instances")


def test_criterion_09_dual_numbers_vs_dense_oracle():
    F = type_b(make_Ve(trivial_rep(trivial_group())))
    A = dual_numbers(vec_cat())
    got = cohomology(build_old_cocyclic(F, A, N))
    new = cohomology(build_new_precocyclic(lift_FA(F, A), make_admissible_pair(A), N))
    want = hh_hc(*DUAL, N)
    ok = (got.hh, got.hc) == want == (new.hh, new.hc)
    report(9, "dual numbers vs dense oracle", ok, f"HH {got.hh} HC {got.hc}, oracle {want}")


def test_criterion_10_homotopy_lemma():
    results = []
    for A in homotopy_algebras():
        for seed in (1, 3):
            pair, f, g, h = solved_triple(A, seed)
            results.append(f != g and homotopy_check(pair, pair, f, g, h, 3))
    report(10, "homotopy lemma", len(results) >= 10 and all(results),
           f"{sum(results)}/{len(results)} solved triples, n <= 3")


def test_criterion_11_sayd_checkers():
    Z2, Z4, S3 = make_cyclic_group(2), make_cyclic_group(4), symmetric_group(3)
    sign = character_rep(Z2, [1, -1])
    valid = [make_Ve(trivial_rep(Z2)), make_Ve(sign), make_Ve(regular_rep(S3)),
             make_adHdelta(Z2), make_adHdelta(S3), make_mHad(Z2), make_mHad(S3),
             make_mpi(Z2, [1, -1], 0), make_mpi(Z4, [1, -1, 1, -1], 2)]
    ok = all(check_sayd(m) for m in valid)
    # invalid 1: k in degree g != e with g acting by -1
    res = check_sayd(EquivariantGraded(Z2, (1,), (Matrix.identity(1), Matrix.from_dense([[-1]]))))
    ok = ok and res.status == "stability_violation" and res.witness == (1,)
    # invalid 2: an MPI with chi(x) != 1
    try:
        make_mpi(Z2, [1, -1], 1)
        ok = False
    except SaydError as exc:
        ok = ok and "chi(1) = -1" in str(exc)
    report(11, "SAYD checkers", ok, f"{len(valid)} valid constructions, 2 rejections")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
