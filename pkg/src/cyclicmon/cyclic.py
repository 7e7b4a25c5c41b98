"""Precocyclic objects and their Hochschild / cyclic cohomology.

Two constructions:

* ``build_old_cocyclic``: C^n = F(A^(n+1)), cofaces from the multiplication,
  codegeneracies from the unit, tau_n = tau_{A, A^n}.  The last coface is
  defined as tau_{n+1} delta_0.
* ``build_new_precocyclic``: C^n = F_A(X_{n+1}) with X_k = P (x)_A ... (x)_A P
  for an admissible pair (P, d).  Cofaces apply d in one slot; there is no
  flipover coface.

X_k is built left to right as (X_{k-1} (x)_A P).  Every basis vector of X_k
is the class of a pure tensor of P-basis vectors (its *word*), because each
quotient is presented on coordinate vectors.  Maps out of X_k are computed on
words and pushed back into the quotient.

Cyclic cohomology is computed from the lambda-invariant subcomplex (char 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .category import (AlgebraData, BimoduleData, CategoryError, Obj, check_bimodule,
                       free_bimodule, is_morphism, tensor_obj, tensor_over_A, tensor_power,
                       unit_obj)
from .contratrace import (Contratrace, LiftedContratrace, TraceSpace, _matrix_from_pivots,
                          _verify_images, eval_space, lift_space, pullback, tau, TYPE_A)
from .linalg import (ONE, ZERO, IdentityMap, KronMap, LinalgError, Matrix, NotAComplexError,
                     _axpy, fixed_space, image, kernel, rank)

DEFAULT_MAX_DEGREE = 4
DEFAULT_BUDGET = 10 ** 5


class BudgetExceeded(ValueError):
    pass


class AdmissibilityError(ValueError):
    pass


class StructuralFailure(ArithmeticError):
    """A theorem-level identity failed: an engine bug, never a user error."""


# ---------------------------------------------------------------------------
# data types

@dataclass(eq=False)
class PrecocyclicObject:
    max_degree: int
    spaces: list                  # TraceSpace per n = 0..N
    cofaces: dict                 # n -> [delta_0 .. delta_{n+1}] : C^n -> C^{n+1}
    cyclic: list                  # tau_n : C^n -> C^n
    codegeneracies: dict = None   # n -> [sigma_0 .. sigma_n] : C^{n+1} -> C^n
    label: str = ""

    def dims(self):
        return [s.dim for s in self.spaces]


@dataclass(eq=False)
class AdmissiblePair:
    P: BimoduleData
    d: Matrix
    provenance: str = "canonical"
    Q: Obj = None

    @property
    def algebra(self):
        return self.P.algebra

    @property
    def q_dim(self):
        return 1 if self.Q is None else self.Q.dim


@dataclass
class RelationReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass
class CohomologyReport:
    max_degree: int
    hh: list
    hc: list
    checks: dict
    provenance: str = ""

    def to_dict(self):
        return {"max_degree": self.max_degree, "HH": list(self.hh), "HC": list(self.hc),
                "checks": dict(self.checks), "provenance": self.provenance}


# ---------------------------------------------------------------------------
# budget

def old_ambient(F: Contratrace, A: AlgebraData, N: int) -> int:
    return F.mdim * A.dim ** (N + 1)


def new_ambient(F: Contratrace, pair: AdmissiblePair, N: int) -> int:
    dA = pair.algebra.dim
    if pair.provenance == "other":
        return F.mdim * pair.P.dim ** (N + 1)
    # X_k = A (x) (Q (x) A)^k
    return F.mdim * dA ** (N + 2) * pair.q_dim ** (N + 1)


def _guard(ambient: int, budget):
    if budget is not None and ambient > budget:
        raise BudgetExceeded(f"ambient dimension {ambient} exceeds budget {budget}")


# ---------------------------------------------------------------------------
# the old construction

def _unit_insertion(A: AlgebraData, n: int, j: int):
    """A^(n+1) -> A^(n+2), inserting 1 at slot j+1."""
    u = A.unit_matrix()
    return KronMap([IdentityMap(A.dim ** (j + 1)), u, IdentityMap(A.dim ** (n - j))])


def _mult_at(A: AlgebraData, n: int, i: int):
    """A^(n+2) -> A^(n+1), multiplying slots i and i+1."""
    return KronMap([IdentityMap(A.dim ** i), A.mult, IdentityMap(A.dim ** (n - i))])


def build_old_cocyclic(F: Contratrace, A: AlgebraData, N: int = DEFAULT_MAX_DEGREE,
                       budget=DEFAULT_BUDGET, codegeneracies: bool = True,
                       verify: bool = False) -> PrecocyclicObject:
    if A.cat != F.cat:
        raise CategoryError(f"algebra in {A.cat!r}, contratrace on {F.cat!r}")
    if N < 1:
        raise ValueError("max degree must be >= 1")
    _guard(old_ambient(F, A, N), budget)
    objs = [tensor_power(A.obj, n + 1) for n in range(N + 1)]
    spaces = [eval_space(F, o) for o in objs]
    cyc = []
    for n in range(N + 1):
        Wn = tensor_power(A.obj, n)
        cyc.append(tau(F, A.obj, Wn, src=spaces[n], tgt=spaces[n], verify=verify))
    cof = {}
    for n in range(N):
        ds = [pullback(F, _mult_at(A, n, i), spaces[n], spaces[n + 1], verify)
              for i in range(n + 1)]
        ds.append(cyc[n + 1] @ ds[0])
        cof[n] = ds
    cod = None
    if codegeneracies:
        cod = {}
        for n in range(N):
            cod[n] = [pullback(F, _unit_insertion(A, n, j), spaces[n + 1], spaces[n], verify)
                      for j in range(n + 1)]
    return PrecocyclicObject(N, spaces, cof, cyc, cod, label="old")


# ---------------------------------------------------------------------------
# relative tensor towers

class QuotientTower:
    """X_1 = P, X_k = X_{k-1} (x)_A P, with words and memoized projection."""

    def __init__(self, P: BimoduleData):
        self.P = P
        self.levels = [None, P]
        self.words = [None, [(p,) for p in range(P.dim)]]
        self._memo = {}

    def level(self, k: int) -> BimoduleData:
        while len(self.levels) <= k:
            prev = self.levels[-1]
            X = tensor_over_A(prev, self.P)
            dP = self.P.dim
            pw = self.words[-1]
            self.words.append([pw[c // dP] + (c % dP,) for c in X.presentation.complement])
            self.levels.append(X)
        return self.levels[k]

    def dim(self, k: int) -> int:
        return self.level(k).dim

    def word(self, k: int, q: int) -> tuple:
        self.level(k)
        return self.words[k][q]

    def project(self, word: tuple) -> dict:
        """Class in X_k of the pure tensor e_{word}."""
        k = len(word)
        if k == 1:
            return {word[0]: ONE}
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        prev = self.project(word[:-1])
        dP = self.P.dim
        last = word[-1]
        out = self.level(k).presentation.project({q * dP + last: x for q, x in prev.items()})
        self._memo[word] = out
        return out

    def project_combination(self, combo: dict) -> dict:
        out = {}
        for w, x in combo.items():
            _axpy(out, x, self.project(w))
        return out

    def map_matrix(self, k_src: int, k_tgt: int, word_map, target=None) -> Matrix:
        """Matrix X_{k_src} -> target (default X_{k_tgt}) of a map given on words."""
        target = target or self
        cols = {}
        for q, w in enumerate(self.words_of(k_src)):
            v = target.project_combination(word_map(w))
            if v:
                cols[q] = v
        return Matrix(target.dim(k_tgt), self.dim(k_src), cols)

    def words_of(self, k: int):
        self.level(k)
        return self.words[k]


def _absorb_tables(pair: AdmissiblePair):
    """(p1, p2) -> d(p1).p2 and p1.d(p2) as vectors in P."""
    P, d = pair.P, pair.d
    dP, dA = P.dim, pair.algebra.dim
    right, left = {}, {}
    for p1, p2 in product(range(dP), repeat=2):
        v = {}
        for a, x in d.col(p1).items():
            _axpy(v, x, P.left.col(a * dP + p2))
        right[p1, p2] = v
        w = {}
        for a, x in d.col(p2).items():
            _axpy(w, x, P.right.col(p1 * dA + a))
        left[p1, p2] = w
    return right, left


def coface_word_map(pair, tables, n: int, i: int):
    """delta'_i : X_{n+2} -> X_{n+1} on words."""
    right, left = tables

    def fn(w):
        if i <= n:
            v = right[w[i], w[i + 1]]
            return {w[:i] + (p,) + w[i + 2:]: x for p, x in v.items()}
        v = left[w[n], w[n + 1]]
        return {w[:n] + (p,): x for p, x in v.items()}
    return fn


def _new_flip_functional(F: Contratrace, tower: QuotientTower, k: int):
    """Row functionals of the flip on F(X_k), read on words: the last letter
    moves to the front."""
    M = F.coeff
    G = M.group
    P = tower.P.obj
    dX = tower.dim(k)
    words = tower.words_of(k)
    if F.kind == TYPE_A:
        acts = {}

        def functional(t):
            m, q = divmod(t, dX)
            w = words[q]
            xi = G.inv(M.degrees[m])
            if xi not in acts:
                acts[xi] = P.rho[xi]
            act = acts[xi]
            combo = {(w[-1],): ONE}
            for letter in w[:-1]:
                nxt = {}
                for u, x in combo.items():
                    for p, y in act.col(letter).items():
                        nxt[u + (p,)] = x * y
                combo = nxt
            vec = tower.project_combination(combo)
            return {m * dX + q2: x for q2, x in vec.items()}
        return functional

    def functional(t):
        m, q = divmod(t, dX)
        w = words[q]
        vec = tower.project((w[-1],) + w[:-1])
        twist = M.action(G.inv(P.degrees[w[-1]])).row(m)
        out = {}
        for m2, y in twist.items():
            for q2, x in vec.items():
                out[m2 * dX + q2] = y * x
        return out
    return functional


def build_new_precocyclic(Flift: LiftedContratrace, pair: AdmissiblePair,
                          N: int = DEFAULT_MAX_DEGREE, budget=DEFAULT_BUDGET,
                          verify: bool = False, tower: QuotientTower = None) -> PrecocyclicObject:
    F, A = Flift.base, Flift.algebra
    if pair.algebra is not A and pair.algebra.mult != A.mult:
        raise AdmissibilityError("pair is over a different algebra")
    if N < 1:
        raise ValueError("max degree must be >= 1")
    _guard(new_ambient(F, pair, N), budget)
    tower = tower or QuotientTower(pair.P)
    spaces = [lift_space(F, A, tower.level(n + 1)) for n in range(N + 1)]
    cyc = []
    for n in range(N + 1):
        fn = _new_flip_functional(F, tower, n + 1)
        mat = _matrix_from_pivots(spaces[n], spaces[n], fn)
        if verify:
            _verify_images(spaces[n], spaces[n], fn, mat)
        cyc.append(mat)
    tables = _absorb_tables(pair)
    cof = {}
    for n in range(N):
        ds = []
        for i in range(n + 2):
            dmap = tower.map_matrix(n + 2, n + 1, coface_word_map(pair, tables, n, i))
            ds.append(pullback(F, dmap, spaces[n], spaces[n + 1], verify))
        cof[n] = ds
    return PrecocyclicObject(N, spaces, cof, cyc, None, label=f"new[{pair.provenance}]")


def flip_descends(F: Contratrace, tower: QuotientTower, space: TraceSpace, k: int, tau_mat: Matrix) -> bool:
    """Check that the flip computed on chosen representatives agrees with the
    flip of the lifted functional on every pure tensor word (small k only)."""
    M = F.coeff
    G = M.group
    dP = tower.P.dim
    dX = tower.dim(k)
    P = tower.P.obj
    images = []
    for j in range(space.dim):
        v = {}
        for i, x in tau_mat.col(j).items():
            _axpy(v, x, space.space.vectors[i])
        images.append(v)
    for word in product(range(dP), repeat=k):
        cls = tower.project(word)
        for m in range(M.dim):
            # (tau c)(m (x) word) computed from the lifted functional c
            if F.kind == TYPE_A:
                act = P.rho[G.inv(M.degrees[m])]
                combo = {(word[-1],): ONE}
                for letter in word[:-1]:
                    combo = {u + (p,): x * y for u, x in combo.items() for p, y in act.col(letter).items()}
                terms = [(m, tower.project_combination(combo), ONE)]
            else:
                twist = M.action(G.inv(P.degrees[word[-1]])).row(m)
                vec = tower.project((word[-1],) + word[:-1])
                terms = [(m2, vec, y) for m2, y in twist.items()]
            for j, c in enumerate(space.space.vectors):
                lhs = ZERO
                for m2, vec, y in terms:
                    for q, x in vec.items():
                        lhs += y * x * c.get(m2 * dX + q, ZERO)
                rhs = ZERO
                for q, x in cls.items():
                    rhs += x * images[j].get(m * dX + q, ZERO)
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# admissible pairs

def make_admissible_pair(A: AlgebraData, flavor: str = "canonical", Q: Obj = None,
                         eps: Matrix = None, check: bool = True) -> AdmissiblePair:
    """canonical: (A (x) A, m).  free: (A (x) Q (x) A, m(id (x) eps_Q (x) id))."""
    if flavor == "canonical":
        P, d = free_bimodule(A, unit_obj(A.cat))
        pair = AdmissiblePair(P, d, "canonical", None)
    elif flavor == "free":
        if Q is None:
            raise AdmissibilityError("free pair needs Q")
        P, d = free_bimodule(A, Q, eps)
        pair = AdmissiblePair(P, d, "free", Q)
    else:
        raise AdmissibilityError(f"unknown pair flavor {flavor!r}")
    if check:
        rep = check_admissible(pair)
        if not rep.ok:
            raise AdmissibilityError(f"pair is not admissible: {rep.failures}")
    return pair


def check_admissible(pair: AdmissiblePair) -> RelationReport:
    P, d, A = pair.P, pair.d, pair.algebra
    dA, dP = A.dim, P.dim
    fails = []
    rep = check_bimodule(P)
    if not rep:
        fails.append(f"P: {rep.failure}")
    if not is_morphism(d, P.obj, A.obj):
        fails.append("d is not a morphism")
    for a, p in product(range(dA), range(dP)):
        if d.apply(P.left.col(a * dP + p)) != A.multiply({a: ONE}, d.col(p)):
            fails.append(f"d is not left linear at {(a, p)}")
            break
        if d.apply(P.right.col(p * dA + a)) != A.multiply(d.col(p), {a: ONE}):
            fails.append(f"d is not right linear at {(p, a)}")
            break
    if rank(d) != dA:
        fails.append("d is not surjective")
    tower = QuotientTower(P)
    tables = _absorb_tables(pair)
    right, left = tables
    D = tower.map_matrix(2, 1, lambda w: _difference(right, left, w))
    if image(D) != kernel(d):
        fails.append("P (x)_A P -> P -> A is not exact at P")
    if not (d @ D).is_zero():
        fails.append("d o (d(x)1 - 1(x)d) != 0")
    return RelationReport(not fails, 5, fails)


def _difference(right, left, w):
    out = dict(((p,), x) for p, x in right[w[0], w[1]].items())
    for p, x in left[w[0], w[1]].items():
        y = out.get((p,), ZERO) - x
        if y:
            out[(p,)] = y
        else:
            out.pop((p,), None)
    return out


# ---------------------------------------------------------------------------
# relations

def check_precocyclic(obj: PrecocyclicObject) -> RelationReport:
    N = obj.max_degree
    d, t, s = obj.cofaces, obj.cyclic, obj.codegeneracies
    fails, count = [], 0

    def eq(a, b, what):
        nonlocal count
        count += 1
        if a != b:
            fails.append(what)

    for n in range(N - 1):
        for j in range(n + 3):
            for i in range(min(j, n + 2)):
                eq(d[n + 1][j] @ d[n][i], d[n + 1][i] @ d[n][j - 1],
                   f"d{j}d{i} = d{i}d{j - 1} on C^{n}")
    for n in range(N):
        eq(t[n + 1] @ d[n][0], d[n][n + 1], f"t d0 = d{n + 1} on C^{n}")
        for i in range(1, n + 2):
            eq(t[n + 1] @ d[n][i], d[n][i - 1] @ t[n], f"t d{i} = d{i - 1} t on C^{n}")
    for n in range(N + 1):
        eq(t[n].power(n + 1), Matrix.identity(obj.spaces[n].dim), f"t^{n + 1} = id on C^{n}")
    if s:
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    eq(s[n][j] @ s[n + 1][i], s[n][i] @ s[n + 1][j + 1],
                       f"s{j}s{i} = s{i}s{j + 1} on C^{n + 2}")
        for n in range(N):
            ident = Matrix.identity(obj.spaces[n].dim)
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s[n][j] @ d[n][i]
                    if i < j:
                        rhs = d[n - 1][i] @ s[n - 1][j - 1]
                    elif i in (j, j + 1):
                        rhs = ident
                    else:
                        rhs = d[n - 1][i - 1] @ s[n - 1][j]
                    eq(lhs, rhs, f"s{j}d{i} on C^{n}")
        for n in range(N):
            for i in range(1, n + 1):
                eq(t[n] @ s[n][i], s[n][i - 1] @ t[n + 1], f"t s{i} = s{i - 1} t on C^{n + 1}")
            eq(t[n] @ s[n][0], s[n][n] @ t[n + 1] @ t[n + 1], f"t s0 = s{n} t^2 on C^{n + 1}")
    return RelationReport(not fails, count, fails)


# ---------------------------------------------------------------------------
# cohomology

def differentials(obj: PrecocyclicObject):
    out = []
    for n in range(obj.max_degree):
        b = None
        for i, m in enumerate(obj.cofaces[n]):
            b = m if b is None else (b - m if i % 2 else b + m)
        out.append(b)
    return out


def hochschild(obj: PrecocyclicObject, bs=None) -> list:
    N = obj.max_degree
    bs = bs or differentials(obj)
    for n in range(N - 1):
        if not (bs[n + 1] @ bs[n]).is_zero():
            raise StructuralFailure(f"b^2 != 0 at degree {n}")
    ranks = [rank(b) for b in bs]
    return [obj.spaces[n].dim - ranks[n] - (ranks[n - 1] if n else 0) for n in range(N)]


def lambda_spaces(obj: PrecocyclicObject):
    out = []
    for n, t in enumerate(obj.cyclic):
        lam = t if n % 2 == 0 else -t
        out.append(fixed_space(t.nrows, [lam]))
    return out


def cyclic_lambda(obj: PrecocyclicObject, bs=None) -> list:
    N = obj.max_degree
    bs = bs or differentials(obj)
    lam = lambda_spaces(obj)
    restricted = []
    for n in range(N):
        B = lam[n].basis
        bB = bs[n] @ B
        nxt = obj.cyclic[n + 1] if (n + 1) % 2 == 0 else -obj.cyclic[n + 1]
        if not ((bB - nxt @ bB).is_zero()):
            raise StructuralFailure(f"b does not preserve lambda-invariants at degree {n}")
        restricted.append(bB)
    ranks = [rank(m) for m in restricted]
    return [lam[n].dim - ranks[n] - (ranks[n - 1] if n else 0) for n in range(N)]


def cohomology(obj: PrecocyclicObject, check: bool = True) -> CohomologyReport:
    checks = {}
    if check:
        rel = check_precocyclic(obj)
        checks["relations"] = rel.ok
        if not rel.ok:
            raise StructuralFailure(f"relations fail: {rel.failures[:3]}")
    bs = differentials(obj)
    hh = hochschild(obj, bs)
    checks["b2_zero"] = True
    hc = cyclic_lambda(obj, bs)
    checks["lambda_stable"] = True
    return CohomologyReport(obj.max_degree, hh, hc, checks, obj.label)


# ---------------------------------------------------------------------------
# the homotopy lemma

def tensor_word_map(tower_src: QuotientTower, word_images):
    """Apply per-letter maps given as lists of {target word: coeff}."""
    def fn(w):
        combo = {(): ONE}
        for pos, letter in enumerate(w):
            img = word_images[pos](letter)
            nxt = {}
            for u, x in combo.items():
                for v, y in img.items():
                    key = u + v
                    z = nxt.get(key, ZERO) + x * y
                    if z:
                        nxt[key] = z
                    else:
                        nxt.pop(key, None)
            combo = nxt
        return combo
    return fn


def homotopy_check(pP: AdmissiblePair, pQ: AdmissiblePair, f: Matrix, g: Matrix, h: Matrix,
                   N: int = 3) -> bool:
    """Check dH + Hd = g^(n+1) - f^(n+1) on X_{n+1}(P) for n <= N, where
    H = sum_i (-1)^i f^i (x) h (x) g^(n-i).

    f, g: P -> Q and h: P -> Q (x)_A Q (in the quotient basis).  Raises
    ValueError when the preconditions fail."""
    TP, TQ = QuotientTower(pP.P), QuotientTower(pQ.P)
    dP, dQ = pP.d, pQ.d
    for name, m in (("f", f), ("g", g)):
        if m.shape != (pQ.P.dim, pP.P.dim) or dQ @ m != dP:
            raise ValueError(f"precondition d_Q {name} = d_P fails")
    rQ, lQ = _absorb_tables(pQ)
    DQ = TQ.map_matrix(2, 1, lambda w: _difference(rQ, lQ, w))
    if h.shape != (TQ.dim(2), pP.P.dim) or DQ @ h != g - f:
        raise ValueError("precondition d h = g - f fails")

    def letter(m):
        return lambda p: {(q,): x for q, x in m.col(p).items()}

    def h_letter(p):
        out = {}
        for q, x in h.col(p).items():
            w = TQ.word(2, q)
            out[w] = out.get(w, ZERO) + x
        return out

    tabP, tabQ = _absorb_tables(pP), (rQ, lQ)

    def bar_d(tower, tables, pair, k):
        # sum_i (-1)^i delta'_i : X_k -> X_{k-1}, k >= 2
        n = k - 2
        total = None
        for i in range(k):
            m = tower.map_matrix(k, k - 1, coface_word_map(pair, tables, n, i))
            total = m if total is None else (total - m if i % 2 else total + m)
        return total

    def H(k):
        # H on X_k(P) -> X_{k+1}(Q)
        total = None
        for i in range(k):
            imgs = [letter(f)] * i + [h_letter] + [letter(g)] * (k - 1 - i)
            m = TP.map_matrix(k, k + 1, tensor_word_map(TP, imgs), target=TQ)
            total = m if total is None else (total - m if i % 2 else total + m)
        return total

    Hs = {k: H(k) for k in range(1, N + 2)}
    for n in range(N + 1):
        k = n + 1
        gk = TP.map_matrix(k, k, tensor_word_map(TP, [letter(g)] * k), target=TQ)
        fk = TP.map_matrix(k, k, tensor_word_map(TP, [letter(f)] * k), target=TQ)
        lhs = bar_d(TQ, tabQ, pQ, k + 1) @ Hs[k]
        if k >= 2:
            lhs = lhs + Hs[k - 1] @ bar_d(TP, tabP, pP, k)
        if lhs != gk - fk:
            return False
    return True
