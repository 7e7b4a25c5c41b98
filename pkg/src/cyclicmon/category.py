"""The two monoidal categories: Rep(G) and Vec_G.

Both are strict.  The basis of V (x) W is the Kronecker basis, index
``i*dim(W) + j``, so (U (x) V) (x) W and U (x) (V (x) W) are literally the same
indexed space.  In Vec_G every basis vector is homogeneous and carries its
degree; the component (V * W)_g is the set of Kronecker basis vectors (i, j)
with deg(i)deg(j) = g, which is (x, y)-lexicographic whenever V and W list
their bases by degree.

Objects, algebras and bimodules are immutable records of matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .groups import FinGroup, Rep, EquivariantGraded, GroupError, trivial_group
from .linalg import (ONE, ZERO, IdentityMap, KronMap, LinalgError, Matrix,
                     QuotientPresentation, Subspace, as_matrix, image, kernel_of_rows,
                     quotient, span, vec_add, _axpy)

REP = "rep"
GRADED = "graded"


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class CatRef:
    kind: str
    group: FinGroup

    def __post_init__(self):
        if self.kind not in (REP, GRADED):
            raise CategoryError(f"unknown category kind {self.kind!r}")

    @property
    def is_rep(self):
        return self.kind == REP

    def __repr__(self):
        name = self.group.name or f"order {self.group.order}"
        return f"{'Rep' if self.is_rep else 'Vec'}({name})"


def rep_cat(G: FinGroup) -> CatRef:
    return CatRef(REP, G)


def graded_cat(G: FinGroup) -> CatRef:
    return CatRef(GRADED, G)


def vec_cat() -> CatRef:
    """Plain vector spaces, realized as Vec over the trivial group."""
    return CatRef(GRADED, trivial_group())


def _flatten(maps):
    out = []
    for m in maps:
        if isinstance(m, KronMap):
            out.extend(m.factors)
        else:
            out.append(m)
    return out


def _kron_lazy(a, b):
    if a.nrows == 1 and a.ncols == 1 and isinstance(a, IdentityMap):
        return b
    return KronMap(_flatten([a, b]))


@dataclass(frozen=True, eq=False)
class Obj:
    """An object: a Rep (``rho``) or a graded space (``degrees``)."""

    cat: CatRef
    dim: int
    rho: tuple = None
    degrees: tuple = None

    def __post_init__(self):
        if self.cat.is_rep:
            if self.rho is None or len(self.rho) != self.cat.group.order:
                raise CategoryError("Rep(G) object needs one matrix per element")
        else:
            if self.degrees is None or len(self.degrees) != self.dim:
                raise CategoryError("Vec_G object needs one degree per basis vector")

    @property
    def group(self):
        return self.cat.group

    def action(self, g: int) -> Matrix:
        return as_matrix(self.rho[g])

    def payload(self):
        if self.cat.is_rep:
            return Rep(self.group, self.dim, tuple(self.action(g) for g in self.group.elements()))
        from .groups import graded_from_degrees
        return graded_from_degrees(self.group, self.degrees)

    def __eq__(self, other):
        if not isinstance(other, Obj) or self.cat != other.cat or self.dim != other.dim:
            return False
        if self.cat.is_rep:
            return all(self.action(g) == other.action(g) for g in self.group.elements())
        return self.degrees == other.degrees

    __hash__ = None

    def __repr__(self):
        return f"Obj({self.cat!r}, dim={self.dim})"


def obj_from_rep(V: Rep) -> Obj:
    return Obj(rep_cat(V.group), V.dim, rho=V.rho)


def obj_from_degrees(G: FinGroup, degrees) -> Obj:
    return Obj(graded_cat(G), len(degrees), degrees=tuple(degrees))


def obj_from_dims(G: FinGroup, dims) -> Obj:
    return obj_from_degrees(G, [g for g, d in enumerate(dims) for _ in range(d)])


def unit_obj(cat: CatRef) -> Obj:
    if cat.is_rep:
        return Obj(cat, 1, rho=tuple(IdentityMap(1) for _ in cat.group.elements()))
    return Obj(cat, 1, degrees=(cat.group.identity,))


def _same_cat(*objs):
    cat = objs[0].cat
    for o in objs[1:]:
        if o.cat != cat:
            raise CategoryError(f"category mismatch: {cat!r} vs {o.cat!r}")
    return cat


def tensor_obj(V: Obj, W: Obj) -> Obj:
    cat = _same_cat(V, W)
    if cat.is_rep:
        return Obj(cat, V.dim * W.dim,
                   rho=tuple(KronMap(_flatten([a, b])) for a, b in zip(V.rho, W.rho)))
    G = cat.group
    degs = tuple(G.mul(x, y) for x in V.degrees for y in W.degrees)
    return Obj(cat, V.dim * W.dim, degrees=degs)


def tensor_power(V: Obj, k: int) -> Obj:
    out = unit_obj(V.cat)
    if k == 0:
        return out
    out = V
    for _ in range(k - 1):
        out = tensor_obj(out, V)
    return out


def direct_sum(V: Obj, W: Obj) -> Obj:
    cat = _same_cat(V, W)
    if cat.is_rep:
        from .linalg import block_diag
        return Obj(cat, V.dim + W.dim,
                   rho=tuple(block_diag([V.action(g), W.action(g)]) for g in cat.group.elements()))
    return Obj(cat, V.dim + W.dim, degrees=V.degrees + W.degrees)


def is_morphism(f: Matrix, V: Obj, W: Obj) -> bool:
    """Is the matrix f: V -> W equivariant / grade-preserving?"""
    _same_cat(V, W)
    if f.shape != (W.dim, V.dim):
        return False
    if V.cat.is_rep:
        for g in V.group.generators():
            a, b = as_matrix(W.rho[g]), as_matrix(V.rho[g])
            if a @ f != f @ b:
                return False
        return True
    for j in range(f.ncols):
        for i in f.col(j):
            if W.degrees[i] != V.degrees[j]:
                return False
    return True


def hom_space(V: Obj, W: Obj) -> Subspace:
    """Hom(V, W) inside the dim(W)*dim(V) matrices, entry (i, j) at i*dim(V)+j."""
    _same_cat(V, W)
    n = W.dim * V.dim
    if not V.cat.is_rep:
        return Subspace.coordinate_subspace(
            n, [i * V.dim + j for i in range(W.dim) for j in range(V.dim)
                if W.degrees[i] == V.degrees[j]])
    rows = []
    for g in V.group.generators():
        rw, rv = W.rho[g], V.rho[g]
        # (rho_W X - X rho_V)[i, j] = sum_k rho_W[i,k] X[k,j] - sum_k X[i,k] rho_V[k,j]
        for i in range(W.dim):
            rwi = rw.row(i)
            for j in range(V.dim):
                r = {}
                for k, x in rwi.items():
                    r[k * V.dim + j] = r.get(k * V.dim + j, ZERO) + x
                for k, x in rv.col(j).items():
                    idx = i * V.dim + k
                    y = r.get(idx, ZERO) - x
                    if y:
                        r[idx] = y
                    else:
                        r.pop(idx, None)
                rows.append(r)
    return kernel_of_rows(n, rows)


def hom_space_by_averaging(V: Obj, W: Obj) -> Subspace:
    """Hom_G(V, W) as the image of X -> 1/|G| sum_g rho_W(g) X rho_V(g)^-1."""
    if not V.cat.is_rep:
        raise CategoryError("averaging applies to Rep(G) only")
    G = V.group
    n = W.dim * V.dim
    vecs = []
    for i, j in product(range(W.dim), range(V.dim)):
        acc = {}
        for g in G.elements():
            # rho_W(g) E_ij rho_V(g^-1): column j of rho_W(g) times row j... of E_ij
            wi = as_matrix(W.rho[g]).col(i)
            vj = as_matrix(V.rho[G.inv(g)]).row(j)
            for a, x in wi.items():
                for b, y in vj.items():
                    idx = a * V.dim + b
                    z = acc.get(idx, ZERO) + x * y
                    if z:
                        acc[idx] = z
                    else:
                        acc.pop(idx, None)
        inv = ONE / G.order
        vecs.append({k: x * inv for k, x in acc.items()})
    return span(n, vecs)


# ---------------------------------------------------------------------------
# algebras

@dataclass
class CheckReport:
    ok: bool
    failure: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class AlgebraData:
    """Unital associative algebra: ``mult`` is dim x dim^2, ``unit`` a vector."""

    obj: Obj
    mult: Matrix
    unit: dict
    name: str = ""

    @property
    def dim(self):
        return self.obj.dim

    @property
    def cat(self):
        return self.obj.cat

    def product(self, i: int, j: int) -> dict:
        return self.mult.col(i * self.dim + j)

    def multiply(self, u: dict, v: dict) -> dict:
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                _axpy(out, x * y, self.product(i, j))
        return out

    def unit_matrix(self) -> Matrix:
        return Matrix(self.dim, 1, {0: dict(self.unit)})

    def __repr__(self):
        return f"AlgebraData({self.name or '?'}, dim={self.dim}, {self.cat!r})"


def make_algebra(obj: Obj, products, unit, name: str = "") -> AlgebraData:
    """Build from a dict {(i, j): {k: coeff}} of structure constants."""
    d = obj.dim
    cols = {}
    for (i, j), v in products.items():
        cols[i * d + j] = {k: x for k, x in v.items()}
    return AlgebraData(obj, Matrix(d, d * d, cols),
                       {k: x for k, x in (unit.items() if isinstance(unit, dict) else enumerate(unit)) if x},
                       name)


def check_algebra(a: AlgebraData) -> CheckReport:
    d = a.dim
    if a.mult.shape != (d, d * d):
        return CheckReport(False, "mult has the wrong shape", a.mult.shape)
    for i in range(d):
        e = {i: ONE}
        if a.multiply(a.unit, e) != e:
            return CheckReport(False, "left unitality", (i,))
        if a.multiply(e, a.unit) != e:
            return CheckReport(False, "right unitality", (i,))
    for i, j, k in product(range(d), repeat=3):
        left = a.multiply(a.product(i, j), {k: ONE})
        right = a.multiply({i: ONE}, a.product(j, k))
        if left != right:
            return CheckReport(False, "associativity", (i, j, k))
    obj = a.obj
    if obj.cat.is_rep:
        AA = tensor_obj(obj, obj)
        if not is_morphism(a.mult, AA, obj):
            return CheckReport(False, "multiplication is not equivariant", ())
        for g in obj.group.elements():
            if obj.action(g).apply(a.unit) != a.unit:
                return CheckReport(False, "unit is not invariant", (g,))
    else:
        G = obj.group
        for i, j in product(range(d), repeat=2):
            deg = G.mul(obj.degrees[i], obj.degrees[j])
            for k in a.product(i, j):
                if obj.degrees[k] != deg:
                    return CheckReport(False, "multiplication is not grade-multiplicative", (i, j, k))
        for k in a.unit:
            if obj.degrees[k] != G.identity:
                return CheckReport(False, "unit is not of degree e", (k,))
    return CheckReport(True)


def unit_algebra(cat: CatRef) -> AlgebraData:
    return AlgebraData(unit_obj(cat), Matrix(1, 1, {0: {0: ONE}}), {0: ONE}, "unit")


def group_algebra(cat: CatRef, H: FinGroup = None, action: str = "trivial") -> AlgebraData:
    """kH.  With H = the category's group: graded by element in Vec_G, and
    with trivial or conjugation action in Rep(G).  A different H sits in
    degree e / carries the trivial action."""
    G = cat.group
    own = H is None or H == G
    H = G if H is None else H
    n = H.order
    prods = {(g, h): {H.mul(g, h): ONE} for g in range(n) for h in range(n)}
    if cat.is_rep:
        if action == "conjugation":
            if not own:
                raise CategoryError("conjugation action needs H = G")
            rho = tuple(Matrix(n, n, {x: {G.conj(g, x): ONE} for x in range(n)}) for g in G.elements())
        elif action == "trivial":
            rho = tuple(IdentityMap(n) for _ in G.elements())
        else:
            raise CategoryError(f"unknown action {action!r}")
        obj = Obj(cat, n, rho=rho)
    else:
        degs = tuple(range(n)) if own else tuple(G.identity for _ in range(n))
        obj = Obj(cat, n, degrees=degs)
    return make_algebra(obj, prods, {H.identity: ONE}, f"k{H.name or 'H'}")


def function_algebra(cat: CatRef, H: FinGroup = None) -> AlgebraData:
    """k^H with pointwise product; in Rep(H) the translation action."""
    G = cat.group
    own = H is None or H == G
    H = G if H is None else H
    n = H.order
    prods = {(x, x): {x: ONE} for x in range(n)}
    if cat.is_rep:
        if own:
            rho = tuple(Matrix(n, n, {x: {G.mul(g, x): ONE} for x in range(n)}) for g in G.elements())
        else:
            rho = tuple(IdentityMap(n) for _ in G.elements())
        obj = Obj(cat, n, rho=rho)
    else:
        obj = Obj(cat, n, degrees=tuple(G.identity for _ in range(n)))
    return make_algebra(obj, prods, {x: ONE for x in range(n)}, f"k^{H.name or 'H'}")


def dual_numbers(cat: CatRef) -> AlgebraData:
    """k[eps]/(eps^2), basis (1, eps), trivial structure."""
    if cat.is_rep:
        obj = Obj(cat, 2, rho=tuple(IdentityMap(2) for _ in cat.group.elements()))
    else:
        obj = Obj(cat, 2, degrees=(cat.group.identity,) * 2)
    prods = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    return make_algebra(obj, prods, {0: ONE}, "k[eps]/eps^2")


def algebra_from_obj_and_mult(obj: Obj, mult: Matrix, unit: dict, name="") -> AlgebraData:
    return AlgebraData(obj, mult, dict(unit), name)


def crossed_product(a: AlgebraData) -> AlgebraData:
    """A # G in Vec_G: basis (i, g) at index i*|G| + g, of degree g, with
    (a # g)(b # h) = a (g.b) # gh."""
    if not a.cat.is_rep:
        raise CategoryError("crossed product takes an algebra in Rep(G)")
    G = a.cat.group
    n, d = G.order, a.dim
    D = d * n
    cols = {}
    for i, g, j, h in product(range(d), range(n), range(d), range(n)):
        gb = a.obj.action(g).col(j)
        w = a.multiply({i: ONE}, gb)
        gh = G.mul(g, h)
        col = {l * n + gh: x for l, x in w.items()}
        if col:
            cols[(i * n + g) * D + (j * n + h)] = col
    obj = Obj(graded_cat(G), D, degrees=tuple(g for _ in range(d) for g in range(n)))
    unit = {i * n + G.identity: x for i, x in a.unit.items()}
    return AlgebraData(obj, Matrix(D, D * D, cols), unit, f"({a.name})#G")


def matrix_amplify(a: AlgebraData, n: int) -> AlgebraData:
    """M_n(A) = A (x) End(k^n), basis (i, r, c) at i*n^2 + r*n + c.

    Matrix units carry the trivial action and degree e."""
    if n < 1:
        raise CategoryError("matrix size must be >= 1")
    if n == 1:
        return a
    d = a.dim
    N = d * n * n
    cols = {}
    for i, j in product(range(d), repeat=2):
        p = a.product(i, j)
        if not p:
            continue
        for r, c, c2 in product(range(n), repeat=3):
            src = (i * n * n + r * n + c) * N + (j * n * n + c * n + c2)
            cols[src] = {k * n * n + r * n + c2: x for k, x in p.items()}
    cat = a.cat
    if cat.is_rep:
        obj = Obj(cat, N, rho=tuple(KronMap(_flatten([a.obj.rho[g], IdentityMap(n * n)]))
                                    for g in cat.group.elements()))
    else:
        obj = Obj(cat, N, degrees=tuple(x for x in a.obj.degrees for _ in range(n * n)))
    unit = {i * n * n + r * n + r: x for i, x in a.unit.items() for r in range(n)}
    return AlgebraData(obj, Matrix(N, N * N, cols), unit, f"M_{n}({a.name})")


def forget_structure(a: AlgebraData) -> AlgebraData:
    """The underlying algebra in plain Vec (trivial group)."""
    cat = vec_cat()
    obj = Obj(cat, a.dim, degrees=(0,) * a.dim)
    return AlgebraData(obj, a.mult, dict(a.unit), a.name)


def center_dim(a: AlgebraData) -> int:
    d = a.dim
    rows = []
    # z in Z(A)  <=>  z e_j - e_j z = 0 for all j
    for j in range(d):
        for k in range(d):
            r = {}
            for i in range(d):
                x = a.product(i, j).get(k, ZERO) - a.product(j, i).get(k, ZERO)
                if x:
                    r[i] = x
            rows.append(r)
    return kernel_of_rows(d, rows).dim


# ---------------------------------------------------------------------------
# bimodules

@dataclass(frozen=True, eq=False)
class BimoduleData:
    """A-bimodule in the category: ``left`` is dimS x dimA*dimS, ``right``
    dimS x dimS*dimA.  ``presentation`` is set for relative tensor products."""

    algebra: AlgebraData
    obj: Obj
    left: Matrix
    right: Matrix
    presentation: QuotientPresentation = None

    @property
    def dim(self):
        return self.obj.dim

    def act_left(self, a: dict, s: dict) -> dict:
        out = {}
        dS = self.dim
        for i, x in a.items():
            for j, y in s.items():
                _axpy(out, x * y, self.left.col(i * dS + j))
        return out

    def act_right(self, s: dict, a: dict) -> dict:
        out = {}
        dA = self.algebra.dim
        for i, x in s.items():
            for j, y in a.items():
                _axpy(out, x * y, self.right.col(i * dA + j))
        return out


def check_bimodule(b: BimoduleData) -> CheckReport:
    A = b.algebra
    dA, dS = A.dim, b.dim
    if b.left.shape != (dS, dA * dS) or b.right.shape != (dS, dS * dA):
        return CheckReport(False, "action matrices have the wrong shape")
    for s in range(dS):
        e = {s: ONE}
        if b.act_left(A.unit, e) != e or b.act_right(e, A.unit) != e:
            return CheckReport(False, "unit does not act as identity", (s,))
        for i, j in product(range(dA), repeat=2):
            ei, ej = {i: ONE}, {j: ONE}
            if b.act_left(A.product(i, j), e) != b.act_left(ei, b.act_left(ej, e)):
                return CheckReport(False, "left action axiom", (i, j, s))
            if b.act_right(e, A.product(i, j)) != b.act_right(b.act_right(e, ei), ej):
                return CheckReport(False, "right action axiom", (s, i, j))
            if b.act_right(b.act_left(ei, e), ej) != b.act_left(ei, b.act_right(e, ej)):
                return CheckReport(False, "actions do not commute", (i, s, j))
    if not is_morphism(b.left, tensor_obj(A.obj, b.obj), b.obj):
        return CheckReport(False, "left action is not a morphism")
    if not is_morphism(b.right, tensor_obj(b.obj, A.obj), b.obj):
        return CheckReport(False, "right action is not a morphism")
    return CheckReport(True)


def regular_bimodule(a: AlgebraData) -> BimoduleData:
    return BimoduleData(a, a.obj, a.mult, a.mult)


def _quotient_obj(ambient: Obj, q: QuotientPresentation) -> Obj:
    if ambient.cat.is_rep:
        rho = []
        for g in ambient.group.elements():
            act = ambient.rho[g]
            cols = {j: q.project(act.col(c)) for j, c in enumerate(q.complement)}
            rho.append(Matrix(q.quotient_dim, q.quotient_dim, cols))
        return Obj(ambient.cat, q.quotient_dim, rho=tuple(rho))
    return Obj(ambient.cat, q.quotient_dim, degrees=tuple(ambient.degrees[c] for c in q.complement))


def balancing_relations(S: BimoduleData, T: BimoduleData) -> Matrix:
    """r_S (x) id - id (x) l_T : S (x) A (x) T -> S (x) T."""
    A = S.algebra
    dA, dS, dT = A.dim, S.dim, T.dim
    cols = {}
    for s, a, t in product(range(dS), range(dA), range(dT)):
        v = {k * dT + t: x for k, x in S.right.col(s * dA + a).items()}
        w = {s * dT + k: x for k, x in T.left.col(a * dT + t).items()}
        col = vec_add(v, w, -ONE)
        if col:
            cols[(s * dA + a) * dT + t] = col
    return Matrix(dS * dT, dS * dA * dT, cols)


def tensor_over_A(S: BimoduleData, T: BimoduleData) -> BimoduleData:
    """S (x)_A T as the cokernel of the balancing map, with induced actions."""
    if S.algebra is not T.algebra and S.algebra.mult != T.algebra.mult:
        raise CategoryError("bimodules over different algebras")
    A = S.algebra
    dA, dS, dT = A.dim, S.dim, T.dim
    rel = image(balancing_relations(S, T))
    q = quotient(dS * dT, rel)
    obj = _quotient_obj(tensor_obj(S.obj, T.obj), q)
    dQ = q.quotient_dim
    left, right = {}, {}
    for j, c in enumerate(q.complement):
        s, t = divmod(c, dT)
        for a in range(dA):
            v = {k * dT + t: x for k, x in S.left.col(a * dS + s).items()}
            pv = q.project(v)
            if pv:
                left[a * dQ + j] = pv
            w = {s * dT + k: x for k, x in T.right.col(t * dA + a).items()}
            pw = q.project(w)
            if pw:
                right[j * dA + a] = pw
    return BimoduleData(A, obj, Matrix(dQ, dA * dQ, left), Matrix(dQ, dQ * dA, right), q)


def tensor_over_A_map(f: Matrix, g: Matrix, source: BimoduleData, target: BimoduleData) -> Matrix:
    """Induced map f (x)_A g between two relative tensor products."""
    ps, pt = source.presentation, target.presentation
    dT_src = ps.ambient_dim // f.ncols
    dT_tgt = pt.ambient_dim // f.nrows
    cols = {}
    for j, c in enumerate(ps.complement):
        s, t = divmod(c, dT_src)
        v = {}
        for a, x in f.col(s).items():
            for b, y in g.col(t).items():
                v[a * dT_tgt + b] = v.get(a * dT_tgt + b, ZERO) + x * y
        pv = pt.project({k: x for k, x in v.items() if x})
        if pv:
            cols[j] = pv
    return Matrix(pt.quotient_dim, ps.quotient_dim, cols)


def right_unitor(S: BimoduleData, SA: BimoduleData):
    """Mutually inverse maps S (x)_A A -> S and S -> S (x)_A A."""
    A = S.algebra
    q = SA.presentation
    dA = A.dim
    fwd = {}
    for j, c in enumerate(q.complement):
        s, a = divmod(c, dA)
        v = S.right.col(s * dA + a)
        if v:
            fwd[j] = dict(v)
    back = {}
    for s in range(S.dim):
        v = q.project({s * dA + k: x for k, x in A.unit.items()})
        if v:
            back[s] = v
    return Matrix(S.dim, q.quotient_dim, fwd), Matrix(q.quotient_dim, S.dim, back)


def left_unitor(T: BimoduleData, AT: BimoduleData):
    """Mutually inverse maps A (x)_A T -> T and T -> A (x)_A T."""
    A = T.algebra
    q = AT.presentation
    dT = T.dim
    fwd = {}
    for j, c in enumerate(q.complement):
        a, t = divmod(c, dT)
        v = T.left.col(a * dT + t)
        if v:
            fwd[j] = dict(v)
    back = {}
    for t in range(dT):
        v = q.project({k * dT + t: x for k, x in A.unit.items()})
        if v:
            back[t] = v
    return Matrix(dT, q.quotient_dim, fwd), Matrix(q.quotient_dim, dT, back)


def default_augmentation(Q: Obj) -> Matrix:
    """The fixed surjection Q -> 1: g -> 1 on Rep objects, projection onto
    the degree-e part on graded ones."""
    if Q.cat.is_rep:
        return Matrix(1, Q.dim, {j: {0: ONE} for j in range(Q.dim)})
    e = Q.group.identity
    return Matrix(1, Q.dim, {j: {0: ONE} for j in range(Q.dim) if Q.degrees[j] == e})


def free_bimodule(a: AlgebraData, Q: Obj, eps: Matrix = None):
    """P = A (x) Q (x) A with outer actions, and d = m(id (x) eps (x) id): P -> A."""
    if Q.cat != a.cat:
        raise CategoryError("Q must live in the algebra's category")
    if eps is None:
        eps = default_augmentation(Q)
    unit = unit_obj(a.cat)
    if eps.shape != (1, Q.dim) or eps.is_zero() or not is_morphism(eps, Q, unit):
        raise CategoryError("eps_Q is not a surjective morphism Q -> 1")
    dA, dQ = a.dim, Q.dim
    obj = tensor_obj(tensor_obj(a.obj, Q), a.obj)
    dP = obj.dim
    left, right, aug = {}, {}, {}
    for i, q, j in product(range(dA), range(dQ), range(dA)):
        p = (i * dQ + q) * dA + j
        for b in range(dA):
            v = {(k * dQ + q) * dA + j: x for k, x in a.product(b, i).items()}
            if v:
                left[b * dP + p] = v
            w = {(i * dQ + q) * dA + k: x for k, x in a.product(j, b).items()}
            if w:
                right[p * dA + b] = w
        e = eps.entry(0, q)
        if e:
            aug[p] = {k: e * x for k, x in a.product(i, j).items()}
    P = BimoduleData(a, obj, Matrix(dP, dA * dP, left), Matrix(dP, dP * dA, right))
    return P, Matrix(dA, dP, {k: v for k, v in aug.items() if v})
