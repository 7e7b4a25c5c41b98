"""Named verification suites.

Each instance computes two dimension vectors of cyclic cohomology from
scratch, with nothing shared between the two sides, and passes when they
are equal for n <= N-1.  Oracles that are not engine runs (the finite de
Rham comparison) use character averages instead of the engine's linear
algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .category import (crossed_product, dual_numbers, forget_structure, function_algebra,
                       graded_cat, group_algebra, matrix_amplify, obj_from_rep, rep_cat,
                       unit_algebra, unit_obj, vec_cat, direct_sum)
from .contratrace import lift_FA, type_a, type_b
from .cyclic import (DEFAULT_BUDGET, DEFAULT_MAX_DEGREE, build_new_precocyclic,
                     build_old_cocyclic, cohomology, make_admissible_pair)
from .groups import (character_rep, dual_rep, make_cyclic_group, regular_rep, symmetric_group,
                     trivial_group, trivial_rep)
from .sayd import (make_adHdelta, make_dual_flip, make_mHad, make_mpi, make_Ve)


@dataclass
class InstanceResult:
    description: str
    left: list
    right: list
    passed: bool
    note: str = ""

    def to_dict(self):
        return {"description": self.description, "left": list(self.left),
                "right": list(self.right), "passed": self.passed, "note": self.note}


@dataclass
class SuiteResult:
    name: str
    max_degree: int
    instances: list = field(default_factory=list)

    @property
    def passed(self):
        return all(i.passed for i in self.instances)

    def to_dict(self):
        return {"suite": self.name, "max_degree": self.max_degree, "passed": self.passed,
                "instances": [i.to_dict() for i in self.instances]}


@dataclass
class Instance:
    """A suite instance: two independent computations of HC dims."""

    description: str
    left: object     # callable (N, budget) -> list of dims
    right: object


# ---------------------------------------------------------------------------
# building blocks

def hc_old(F, A, N, budget):
    return cohomology(build_old_cocyclic(F, A, N, budget)).hc


def hc_new(F, A, N, budget, flavor="canonical", Q=None):
    pair = make_admissible_pair(A, flavor, Q=Q)
    return cohomology(build_new_precocyclic(lift_FA(F, A), pair, N, budget)).hc


def hc_ordinary(A, N, budget):
    """Cyclic cohomology of the underlying algebra, in plain Vec with k."""
    B = forget_structure(A)
    F = type_b(make_Ve(trivial_rep(trivial_group())))
    return hc_old(F, B, N, budget)


def _z2():
    return make_cyclic_group(2)


def _sign(G):
    return character_rep(G, [1 if g % 2 == 0 else -1 for g in G.elements()])


def run_suite(name: str, instances, N: int = DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET) -> SuiteResult:
    res = SuiteResult(name, N)
    for inst in instances:
        try:
            left = list(inst.left(N, budget))
            right = list(inst.right(N, budget))
        except ValueError as exc:
            res.instances.append(InstanceResult(inst.description, [], [], False, f"rejected: {exc}"))
            continue
        res.instances.append(InstanceResult(inst.description, left, right, left == right))
    return res


# ---------------------------------------------------------------------------
# instance lists

def old_vs_new_instances():
    G = _z2()
    T = trivial_group()
    V, R, Gr = vec_cat(), rep_cat(G), graded_cat(G)
    out = []

    def pair_of(F_fn, A_fn, desc):
        out.append(Instance(desc,
                            lambda N, b: hc_old(F_fn(), A_fn(), N, b),
                            lambda N, b: hc_new(F_fn(), A_fn(), N, b)))

    pair_of(lambda: type_b(make_Ve(trivial_rep(T))), lambda: group_algebra(V, H=G),
            "Vec, A = kZ/2, M = k_e")
    pair_of(lambda: type_a(make_Ve(_sign(G))), lambda: unit_algebra(R),
            "Rep(Z/2), A = k, M = sigma_e")
    pair_of(lambda: type_b(make_adHdelta(G)), lambda: group_algebra(Gr),
            "Vec_Z/2, A = kG, M = adH^Delta")
    pair_of(lambda: type_a(make_adHdelta(G)), lambda: function_algebra(R),
            "Rep(Z/2), A = k^Z/2, M = adH^Delta")
    pair_of(lambda: type_b(make_Ve(trivial_rep(T))), lambda: dual_numbers(V),
            "Vec, A = k[eps]/eps^2, M = k_e")
    return out


def pair_independence_instances():
    G = _z2()
    R = rep_cat(G)
    kG = obj_from_rep(regular_rep(G))
    out = []

    def pair_of(F_fn, A_fn, Q_fn, desc):
        out.append(Instance(desc,
                            lambda N, b: hc_new(F_fn(), A_fn(), N, b),
                            lambda N, b: hc_new(F_fn(), A_fn(), N, b, "free", Q_fn())))

    ke = lambda: type_a(make_Ve(trivial_rep(G)))
    pair_of(ke, lambda: group_algebra(R, H=G), lambda: kG,
            "Rep(Z/2), A = kZ/2 (trivial action), M = k_e: canonical vs free(kG)")
    pair_of(ke, lambda: function_algebra(R), lambda: kG,
            "Rep(Z/2), A = k^Z/2, M = k_e: canonical vs free(kG)")
    pair_of(lambda: type_a(make_adHdelta(G)), lambda: unit_algebra(R), lambda: kG,
            "Rep(Z/2), A = k, M = adH^Delta: canonical vs free(kG)")
    pair_of(ke, lambda: group_algebra(R, H=G), lambda: unit_obj(R),
            "Rep(Z/2), A = kZ/2, M = k_e: canonical vs free(1)")
    pair_of(ke, lambda: group_algebra(R, H=G), lambda: direct_sum(kG, unit_obj(R)),
            "Rep(Z/2), A = kZ/2, M = k_e: canonical vs free(kG + 1)")
    return out


def morita_instances():
    G = _z2()
    T = trivial_group()
    V = vec_cat()
    ke = lambda: type_b(make_Ve(trivial_rep(T)))
    kG = lambda: group_algebra(V, H=G)
    return [
        Instance("Vec, k vs M_2(k), M = k_e",
                 lambda N, b: hc_old(ke(), unit_algebra(V), N, b),
                 lambda N, b: hc_old(ke(), matrix_amplify(unit_algebra(V), 2), N, b)),
        Instance("Vec, kZ/2 vs M_2(kZ/2), M = k_e",
                 lambda N, b: hc_old(ke(), kG(), N, b),
                 lambda N, b: hc_old(ke(), matrix_amplify(kG(), 2), N, b)),
        Instance("Vec, kZ/2 vs M_1(kZ/2), M = k_e",
                 lambda N, b: hc_old(ke(), kG(), N, b),
                 lambda N, b: hc_old(ke(), matrix_amplify(kG(), 1), N, b)),
    ]


def _duality(desc, G, A_fn, M_fn):
    """Type A on Rep(G) with M against type B on Vec_G with M^v and A # G."""
    return Instance(desc,
                    lambda N, b: hc_old(type_a(M_fn()), A_fn(rep_cat(G)), N, b),
                    lambda N, b: hc_old(type_b(make_dual_flip(M_fn())),
                                        crossed_product(A_fn(rep_cat(G))), N, b))


def ab_duality_instances():
    G = _z2()
    Z3 = make_cyclic_group(3)
    S3 = symmetric_group(3)
    return [
        _duality("Z/2, A = k, V = sign", G, unit_algebra, lambda: make_Ve(_sign(G))),
        _duality("Z/2, A = k, V = trivial", G, unit_algebra, lambda: make_Ve(trivial_rep(G))),
        _duality("Z/2, A = k^Z/2, V = trivial", G, function_algebra, lambda: make_Ve(trivial_rep(G))),
        _duality("Z/2, A = k^Z/2, V = sign", G, function_algebra, lambda: make_Ve(_sign(G))),
        _duality("Z/2, A = k, M = adH^Delta", G, unit_algebra, lambda: make_adHdelta(G)),
        _duality("Z/2, A = k^Z/2, M = k_(1,x), x = 1", G, function_algebra,
                 lambda: make_mpi(G, [1, 1], 1)),
        _duality("Z/3, A = k^Z/3, V = trivial", Z3, function_algebra,
                 lambda: make_Ve(trivial_rep(Z3))),
        _duality("S_3, A = k, M = adH^Delta", S3, unit_algebra, lambda: make_adHdelta(S3)),
    ]


def fiber_instances():
    G = _z2()
    R, Gr = rep_cat(G), graded_cat(G)
    return [
        Instance("H = kZ/2, A = k: HC_H(A, mH^ad) = HC(A)",
                 lambda N, b: hc_old(type_a(make_mHad(G)), unit_algebra(R), N, b),
                 lambda N, b: hc_ordinary(unit_algebra(R), N, b)),
        Instance("H = kZ/2, A = k^Z/2: HC_H(A, mH^ad) = HC(A)",
                 lambda N, b: hc_old(type_a(make_mHad(G)), function_algebra(R), N, b),
                 lambda N, b: hc_ordinary(function_algebra(R), N, b)),
        Instance("H = kZ/2, B = kG: HC^H(B, adH^Delta) = HC(B)",
                 lambda N, b: hc_old(type_b(make_adHdelta(G)), group_algebra(Gr), N, b),
                 lambda N, b: hc_ordinary(group_algebra(Gr), N, b)),
        Instance("H = kZ/2, A = k^Z/2: HC_H(A, adH^Delta) = HC(A # H)",
                 lambda N, b: hc_old(type_a(make_adHdelta(G)), function_algebra(R), N, b),
                 lambda N, b: hc_ordinary(crossed_product(function_algebra(R)), N, b)),
    ]


# finite de Rham ------------------------------------------------------------

def invariant_dim_by_characters(G, rep_mats) -> int:
    """dim V^G = (1/|G|) sum_g trace rho(g)."""
    total = Fraction(0)
    for g in G.elements():
        m = rep_mats[g]
        total += sum(Fraction(int(x.numerator), int(x.denominator))
                     for x in (m.entry(i, i) for i in range(m.nrows)))
    total /= G.order
    if total.denominator != 1:
        raise ArithmeticError("character average is not an integer")
    return int(total)


def derham_oracle(G, M, orbits: int, N: int):
    """dim (M (x) O_Y)^G in even degrees, 0 in odd, for Y = `orbits` copies of G."""
    reg = regular_rep(G)
    mats = []
    for g in G.elements():
        mats.append(M.action(g).kron(reg.rho[g]))
    d = invariant_dim_by_characters(G, mats) * orbits
    return [d if n % 2 == 0 else 0 for n in range(N)]


def _orbit_algebra(G, orbits: int):
    """O_Y for Y = disjoint copies of G with left translation."""
    from .category import make_algebra, Obj
    from .linalg import Matrix, ONE
    n = G.order
    D = n * orbits
    rho = tuple(Matrix(D, D, {o * n + x: {o * n + G.mul(g, x): ONE}
                              for o in range(orbits) for x in range(n)}) for g in G.elements())
    obj = Obj(rep_cat(G), D, rho=rho)
    prods = {(i, i): {i: ONE} for i in range(D)}
    return make_algebra(obj, prods, {i: ONE for i in range(D)}, f"O_Y({orbits}x{G.name})")


def derham_instances():
    G = _z2()
    T = trivial_group()
    Z3 = make_cyclic_group(3)
    out = []

    def inst(desc, Gp, M_fn, orbits):
        out.append(Instance(desc,
                            lambda N, b: hc_old(type_a(M_fn()), _orbit_algebra(Gp, orbits), N, b),
                            lambda N, b: derham_oracle(Gp, M_fn(), orbits, N)))

    inst("G = Z/2, Y = G, M = sigma_e", G, lambda: make_Ve(_sign(G)), 1)
    inst("G = Z/2, Y = G, M = k_e", G, lambda: make_Ve(trivial_rep(G)), 1)
    inst("G = 1, Y = pt, M = k", T, lambda: make_Ve(trivial_rep(T)), 1)
    inst("G = Z/2, Y = G + G, M = k_e", G, lambda: make_Ve(trivial_rep(G)), 2)
    inst("G = Z/3, Y = G, M = regular_e", Z3, lambda: make_Ve(regular_rep(Z3)), 1)
    return out


SUITES = {
    "old_vs_new": old_vs_new_instances,
    "pair_independence": pair_independence_instances,
    "morita": morita_instances,
    "ab_duality": ab_duality_instances,
    "fiber_examples": fiber_instances,
    "derham_finite": derham_instances,
}


def suite_old_vs_new(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("old_vs_new", instances or old_vs_new_instances(), N, budget)


def suite_pair_independence(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("pair_independence", instances or pair_independence_instances(), N, budget)


def suite_morita(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("morita", instances or morita_instances(), N, budget)


def suite_ab_duality(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("ab_duality", instances or ab_duality_instances(), N, budget)


def suite_fiber_examples(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("fiber_examples", instances or fiber_instances(), N, budget)


def suite_derham_finite(instances=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    return run_suite("derham_finite", instances or derham_instances(), N, budget)


def run_all(names=None, N=DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET):
    """Run the named suites (all when None) in registry order of the request."""
    names = list(SUITES) if names is None else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [run_suite(n, SUITES[n](), N, budget) for n in names]
