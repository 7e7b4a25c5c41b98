"""Solved (f, g, h) triples for the homotopy lemma on P = Q = A (x) A.

f and g are the bimodule maps sending 1 (x) 1 to u_f and u_g, both lifts of
the multiplication (u = 1 (x) 1 + an element of ker m).  h sends 1 (x) 1 to
a solution w of D(w) = u_g - u_f, D(a (x) b (x) c) = ab (x) c - a (x) bc,
solved with sympy inside the invariant / degree-e part.
"""
import random

import sympy as sp

from cyclicmon import category as cat
from cyclicmon.groups import make_cyclic_group
from cyclicmon.cyclic import QuotientTower, make_admissible_pair
from cyclicmon.linalg import ZERO, Matrix, intersect, kernel, scalar


def _combo(pairs):
    out = {}
    for k, x in pairs:
        out[k] = out.get(k, ZERO) + x
    return {k: x for k, x in out.items() if x}


def _bimodule_map(A, u):
    dA = A.dim
    cols = {}
    for i in range(dA):
        for j in range(dA):
            col = _combo(((a2 * dA + b2), x * y * z)
                         for t, x in u.items()
                         for a, b in [divmod(t, dA)]
                         for a2, y in A.product(i, a).items()
                         for b2, z in A.product(b, j).items())
            if col:
                cols[i * dA + j] = col
    return Matrix(dA * dA, dA * dA, cols)


def solved_triple(A, seed):
    rnd = random.Random(seed)
    dA = A.dim
    pair = make_admissible_pair(A, "canonical")
    m = Matrix(dA, dA * dA, {i * dA + j: A.product(i, j)
                             for i in range(dA) for j in range(dA) if A.product(i, j)})
    AA = cat.tensor_obj(A.obj, A.obj)
    K = intersect(kernel(m), cat.hom_space(cat.unit_obj(A.cat), AA))
    one = _combo((i * dA + j, a * b) for i, a in A.unit.items() for j, b in A.unit.items())

    def lift():
        u = dict(one)
        for v in K.vectors:
            c = scalar(rnd.randint(-3, 3))
            for k, x in v.items():
                u[k] = u.get(k, ZERO) + c * x
        return {k: x for k, x in u.items() if x}

    uf, ug = lift(), lift()
    D = sp.zeros(dA * dA, dA ** 3)
    for a in range(dA):
        for b in range(dA):
            for c in range(dA):
                col = (a * dA + b) * dA + c
                for k, x in A.product(a, b).items():
                    D[k * dA + c, col] += sp.Rational(str(x))
                for k, x in A.product(b, c).items():
                    D[a * dA + k, col] -= sp.Rational(str(x))
    inv3 = cat.hom_space(cat.unit_obj(A.cat), cat.tensor_obj(AA, A.obj))
    B = sp.Matrix([[sp.Rational(str(v.get(r, 0))) for v in inv3.vectors] for r in range(dA ** 3)])
    rhs = sp.Matrix([sp.Rational(str(ug.get(r, ZERO) - uf.get(r, ZERO))) for r in range(dA * dA)])
    sol, params = (D * B).gauss_jordan_solve(rhs)
    wv = B * sol.subs({p: 0 for p in params})
    w = {r: scalar(str(wv[r])) for r in range(dA ** 3) if wv[r] != 0}

    TQ = QuotientTower(pair.P)
    cols = {}
    for i in range(dA):
        for j in range(dA):
            # e_i w e_j as the word (a (x) b, 1 (x) c) in P (x)_A P
            words = _combo(((a2 * dA + b, uk * dA + c2), x * y * z * ux)
                           for t, x in w.items()
                           for ab, c in [divmod(t, dA)]
                           for a, b in [divmod(ab, dA)]
                           for a2, y in A.product(i, a).items()
                           for c2, z in A.product(c, j).items()
                           for uk, ux in A.unit.items())
            v = TQ.project_combination(words)
            if v:
                cols[i * dA + j] = v
    h = Matrix(TQ.dim(2), dA * dA, cols)
    return pair, _bimodule_map(A, uf), _bimodule_map(A, ug), h


def homotopy_algebras():
    Z2 = make_cyclic_group(2)
    return [
        cat.dual_numbers(cat.vec_cat()),
        cat.group_algebra(cat.vec_cat(), H=Z2),
        cat.group_algebra(cat.rep_cat(Z2), action="conjugation"),
        cat.function_algebra(cat.rep_cat(Z2)),
        cat.function_algebra(cat.graded_cat(Z2)),
    ]
