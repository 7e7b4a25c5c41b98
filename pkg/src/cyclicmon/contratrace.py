"""Symmetric 2-contratraces of Hom type.

Type A lives on Rep(G): F(V) = Hom_G(M (x) V, k), invariant functionals.
Type B lives on Vec_G:  F(V) = grade-preserving maps V -> M.

In both cases an element of F(V) is stored as a vector c on the ambient
index set M x V, index ``m*dim(V) + v``: for type A c[m, v] = f(m (x) v),
for type B c[m, v] is the m-th coordinate of f(v).  Pulling back along
f: V' -> V is then the same formula for both kinds,

    c'[m, v'] = sum_v c[m, v] f[v, v'].

The flip tau_{V,W}: F(V (x) W) -> F(W (x) V) is

    type A:  (tau f)(m (x) w (x) v) = f(m (x) v (x) x^-1 w)   for m in M_x
    type B:  (tau f)(w (x) v) = deg(v)^-1 . f(v (x) w)

Matrices are always taken with respect to the canonical bases of the trace
spaces.  Entries are computed only at the pivots of the target basis, which
is enough because the image is known to lie in the target space; pass
``verify=True`` to recompute full images and check membership.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .category import (BimoduleData, AlgebraData, CatRef, CategoryError, Obj, is_morphism,
                       tensor_obj)
from .linalg import (ONE, ZERO, IdentityMap, KronMap, LinalgError, Matrix, Subspace,
                     TransposedMap, _axpy, as_matrix, fixed_space, kernel, span)
from .sayd import SaydModule, check_sayd

TYPE_A = "A"
TYPE_B = "B"


class ContratraceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Contratrace:
    kind: str
    coeff: SaydModule
    cat: CatRef

    def __post_init__(self):
        if self.kind not in (TYPE_A, TYPE_B):
            raise ContratraceError(f"unknown contratrace kind {self.kind!r}")
        if (self.kind == TYPE_A) != self.cat.is_rep:
            raise ContratraceError("type A lives on Rep(G), type B on Vec_G")
        if self.coeff.group != self.cat.group:
            raise ContratraceError("coefficient and category over different groups")
        res = check_sayd(self.coeff)
        if not res:
            raise ContratraceError(f"coefficient is not SAYD: {res}")

    @property
    def mdim(self):
        return self.coeff.dim

    def __repr__(self):
        return f"Contratrace({self.kind}, {self.coeff.name}, {self.cat!r})"


def type_a(M: SaydModule) -> Contratrace:
    from .category import rep_cat
    return Contratrace(TYPE_A, M, rep_cat(M.group))


def type_b(M: SaydModule) -> Contratrace:
    from .category import graded_cat
    return Contratrace(TYPE_B, M, graded_cat(M.group))


@dataclass(eq=False)
class TraceSpace:
    """F(V) as a canonical subspace of the ambient k^(dim M * dim V)."""

    source: Obj
    space: Subspace
    mdim: int

    @property
    def dim(self):
        return self.space.dim

    @property
    def vdim(self):
        return self.source.dim

    @property
    def ambient_dim(self):
        return self.space.ambient_dim

    def __repr__(self):
        return f"TraceSpace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_cat(F: Contratrace, V: Obj):
    if V.cat != F.cat:
        raise CategoryError(f"object in {V.cat!r}, contratrace on {F.cat!r}")


def eval_space(F: Contratrace, V: Obj) -> TraceSpace:
    _check_cat(F, V)
    M = F.coeff
    dM, dV = M.dim, V.dim
    n = dM * dV
    if F.kind == TYPE_B:
        idx = [m * dV + v for m in range(dM) for v in range(dV) if M.degrees[m] == V.degrees[v]]
        return TraceSpace(V, Subspace.coordinate_subspace(n, idx), dM)
    # invariance c o (rho_M(g) (x) rho_V(g)) = c, i.e. a fixed vector of the transpose
    ops = [TransposedMap(KronMap([M.base.action[g], V.rho[g]])) for g in F.cat.group.generators()]
    return TraceSpace(V, fixed_space(n, ops), dM)


def _matrix_from_pivots(target: TraceSpace, source: TraceSpace, functional) -> Matrix:
    """Matrix whose row for target pivot t is the functional(t) on the source ambient,
    expressed in source coordinates."""
    occ = source.space.occurrences()
    rows = []
    for t in target.space.pivots:
        r = {}
        for s, x in functional(t).items():
            for j, y in occ.get(s, ()):
                z = r.get(j, ZERO) + x * y
                if z:
                    r[j] = z
                else:
                    r.pop(j, None)
        rows.append(r)
    return Matrix.from_rows(source.dim, rows)


def _verify_images(target: TraceSpace, source: TraceSpace, functional, mat: Matrix):
    """Recompute every image vector on the full ambient and check it equals
    the combination of target basis vectors given by mat."""
    full = defaultdict(dict)
    for t in range(target.ambient_dim):
        for s, x in functional(t).items():
            for j, y in source.space.occurrences().get(s, ()):
                full[j][t] = full[j].get(t, ZERO) + x * y
    for j in range(source.dim):
        img = {t: x for t, x in full.get(j, {}).items() if x}
        expect = {}
        for i, x in mat.col(j).items():
            _axpy(expect, x, target.space.vectors[i])
        if img != expect:
            raise ContratraceError("image does not lie in the target trace space")


def pullback(F: Contratrace, f, src: TraceSpace, tgt: TraceSpace, verify: bool = False) -> Matrix:
    """F(f): F(W) -> F(V) for f: V -> W given as a matrix-like map (col access).

    ``src`` is F(W), ``tgt`` is F(V)."""
    dW, dV = src.vdim, tgt.vdim
    if (f.nrows, f.ncols) != (dW, dV):
        raise ContratraceError(f"map of shape {(f.nrows, f.ncols)} between objects of dims {dV} -> {dW}")

    def functional(t):
        m, v = divmod(t, dV)
        base = m * dW
        return {base + w: x for w, x in f.col(v).items()}

    mat = _matrix_from_pivots(tgt, src, functional)
    if verify:
        _verify_images(tgt, src, functional, mat)
    return mat


def eval_mor(F: Contratrace, f, V: Obj, W: Obj, verify: bool = False, check: bool = True) -> Matrix:
    """Matrix of F(f): F(W) -> F(V) for a morphism f: V -> W."""
    _check_cat(F, V)
    _check_cat(F, W)
    if check and isinstance(f, Matrix) and not is_morphism(f, V, W):
        raise ContratraceError("not a morphism in the category")
    return pullback(F, f, eval_space(F, W), eval_space(F, V), verify)


def flip_functional(F: Contratrace, dV: int, dW: int, W: Obj, V: Obj):
    """Row functional of tau_{V,W} on ambient M x V x W, as a function of a
    target ambient index in M x W x V."""
    M = F.coeff
    G = M.group
    if F.kind == TYPE_A:
        acts = {}

        def functional(t):
            m, r = divmod(t, dW * dV)
            w, v = divmod(r, dV)
            x = M.degrees[m]
            key = G.inv(x)
            if key not in acts:
                acts[key] = W.rho[key]
            base = m * dV * dW + v * dW
            return {base + w2: y for w2, y in acts[key].col(w).items()}
        return functional

    acts = {}

    def functional(t):
        m, r = divmod(t, dW * dV)
        w, v = divmod(r, dV)
        key = G.inv(V.degrees[v])
        if key not in acts:
            acts[key] = M.action(key)
        out = {}
        for m2, y in acts[key].row(m).items():
            out[m2 * dV * dW + v * dW + w] = y
        return out
    return functional


def tau(F: Contratrace, V: Obj, W: Obj, src: TraceSpace = None, tgt: TraceSpace = None,
        verify: bool = False) -> Matrix:
    """tau_{V,W}: F(V (x) W) -> F(W (x) V)."""
    _check_cat(F, V)
    _check_cat(F, W)
    src = src or eval_space(F, tensor_obj(V, W))
    tgt = tgt or eval_space(F, tensor_obj(W, V))
    functional = flip_functional(F, V.dim, W.dim, W, V)
    mat = _matrix_from_pivots(tgt, src, functional)
    if verify:
        _verify_images(tgt, src, functional, mat)
    return mat


# ---------------------------------------------------------------------------
# the equalizer F_A on bimodules

@dataclass(frozen=True, eq=False)
class LiftedContratrace:
    base: Contratrace
    algebra: AlgebraData

    def eval(self, S: BimoduleData) -> TraceSpace:
        return lift_space(self.base, self.algebra, S)


def lift_FA(F: Contratrace, A: AlgebraData) -> LiftedContratrace:
    _check_cat(F, A.obj)
    return LiftedContratrace(F, A)


def equalizer_matrix(F: Contratrace, A: AlgebraData, S: BimoduleData, FS: TraceSpace) -> Matrix:
    """F(r) - tau_{A,S} F(l): F(S) -> F(S (x) A)."""
    SA = tensor_obj(S.obj, A.obj)
    AS = tensor_obj(A.obj, S.obj)
    F_SA = eval_space(F, SA)
    F_AS = eval_space(F, AS)
    R = pullback(F, S.right, FS, F_SA)
    L = pullback(F, S.left, FS, F_AS)
    T = tau(F, A.obj, S.obj, src=F_AS, tgt=F_SA)
    return R - T @ L


def lift_space(F: Contratrace, A: AlgebraData, S: BimoduleData) -> TraceSpace:
    """F_A(S) inside the ambient of F(S)."""
    if S.algebra is not A and S.algebra.mult != A.mult:
        raise ContratraceError("bimodule over a different algebra")
    FS = eval_space(F, S.obj)
    D = equalizer_matrix(F, A, S, FS)
    ker = kernel(D)
    vecs = []
    for kv in ker.vectors:
        w = {}
        for j, x in kv.items():
            _axpy(w, x, FS.space.vectors[j])
        vecs.append(w)
    return TraceSpace(S.obj, span(FS.ambient_dim, vecs), FS.mdim)
