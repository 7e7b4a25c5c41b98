"""Exact sparse linear algebra over the rationals.

Scalars are ``gmpy2.mpq``.  Vectors are plain ``dict[int, mpq]`` with no
stored zeros.  A :class:`Matrix` keeps its columns as such dicts and builds a
row view on demand.

Elimination strategy
--------------------
All elimination goes through :class:`Echelon`, an incremental reducer.  Each
inserted vector is reduced against the pivot vectors already present, in
insertion order, so a pivot vector is always zero at the pivots inserted
before it.  The pivot of a new vector is chosen by a rule:

``"min"``/``"max"``
    smallest/largest nonzero coordinate.  Followed by back-substitution this
    yields the reduced echelon form, which is what gives canonical bases.
``"sparse"``
    the coordinate that occurs in the fewest input vectors (a cheap
    Markowitz rule).  Used for rank computations only, where it keeps
    fill-in down on the large Hochschild matrices.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class LinalgError(ValueError):
    pass


class NotAComplexError(LinalgError):
    """Raised when a composite of two differentials is nonzero."""


def scalar(x) -> mpq:
    """Coerce ints, strings like ``"3/4"``, Fractions and mpq to mpq."""
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def vec_add(v: dict, w: dict, c=ONE) -> dict:
    """Return v + c*w as a new dict."""
    out = dict(v)
    for k, x in w.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def _axpy(v: dict, c, w: dict) -> None:
    # in place: v += c*w
    for k, x in w.items():
        y = v.get(k, ZERO) + c * x
        if y:
            v[k] = y
        else:
            del v[k]


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Matrix:
    """Immutable sparse rational matrix stored by columns."""

    __slots__ = ("nrows", "ncols", "_cols", "_rows")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        if cols:
            for j, col in cols.items():
                if not 0 <= j < ncols:
                    raise LinalgError(f"column {j} out of range for {nrows}x{ncols}")
                c = {}
                for i, x in col.items():
                    if not 0 <= i < nrows:
                        raise LinalgError(f"row {i} out of range for {nrows}x{ncols}")
                    if x:
                        c[i] = x if isinstance(x, type(ONE)) else scalar(x)
                if c:
                    clean[j] = c
        self._cols = clean
        self._rows = None

    # construction -------------------------------------------------------
    @classmethod
    def from_dense(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = defaultdict(dict)
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise LinalgError("ragged dense matrix")
            for j, x in enumerate(r):
                x = scalar(x)
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "Matrix":
        columns = list(columns)
        return cls(nrows, len(columns), {j: c for j, c in enumerate(columns) if c})

    @classmethod
    def from_rows(cls, ncols: int, rows) -> "Matrix":
        rows = list(rows)
        cols = defaultdict(dict)
        for i, r in enumerate(rows):
            for j, x in r.items():
                cols[j][i] = x
        return cls(len(rows), ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    # access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def col(self, j: int) -> dict:
        return self._cols.get(j, {})

    def row(self, i: int) -> dict:
        if self._rows is None:
            rows = defaultdict(dict)
            for j, c in self._cols.items():
                for r, x in c.items():
                    rows[r][j] = x
            self._rows = dict(rows)
        return self._rows.get(i, {})

    def entry(self, i: int, j: int) -> mpq:
        return self._cols.get(j, {}).get(i, ZERO)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def is_zero(self) -> bool:
        return not self._cols

    def to_dense(self):
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for j, c in self._cols.items():
            for i, x in c.items():
                out[i][j] = x
        return out

    def to_lists(self):
        """Dense rows with entries rendered as strings (for JSON)."""
        return [[str(x) for x in r] for r in self.to_dense()]

    def is_monomial(self) -> bool:
        """True if every column has exactly one nonzero entry."""
        return len(self._cols) == self.ncols and all(len(c) == 1 for c in self._cols.values())

    # arithmetic -----------------------------------------------------------
    def apply(self, v: dict) -> dict:
        out = {}
        for j, x in v.items():
            c = self._cols.get(j)
            if c:
                _axpy(out, x, c)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {}
        for j, c in other._cols.items():
            v = self.apply(c)
            if v:
                cols[j] = v
        m = Matrix.__new__(Matrix)
        m.nrows, m.ncols, m._cols, m._rows = self.nrows, other.ncols, cols, None
        return m

    def _combine(self, other: "Matrix", c) -> "Matrix":
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = {j: dict(v) for j, v in self._cols.items()}
        for j, v in other._cols.items():
            cur = cols.setdefault(j, {})
            _axpy(cur, c, v)
            if not cur:
                del cols[j]
        m = Matrix.__new__(Matrix)
        m.nrows, m.ncols, m._cols, m._rows = self.nrows, self.ncols, cols, None
        return m

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix(self.nrows, self.ncols, {j: vec_scale(v, c) for j, v in self._cols.items()})

    def transpose(self) -> "Matrix":
        cols = defaultdict(dict)
        for j, c in self._cols.items():
            for i, x in c.items():
                cols[i][j] = x
        return Matrix(self.ncols, self.nrows, cols)

    T = property(transpose)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row/column index of (a, b) is a*dim2 + b."""
        cols = {}
        for j1, c1 in self._cols.items():
            for j2, c2 in other._cols.items():
                col = {}
                for i1, x in c1.items():
                    base = i1 * other.nrows
                    for i2, y in c2.items():
                        col[base + i2] = x * y
                cols[j1 * other.ncols + j2] = col
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, cols)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = self @ out
        return out

    def submatrix(self, rows, cols) -> "Matrix":
        rpos = {r: i for i, r in enumerate(rows)}
        out = {}
        for jj, j in enumerate(cols):
            c = {rpos[i]: x for i, x in self.col(j).items() if i in rpos}
            if c:
                out[jj] = c
        return Matrix(len(rows), len(cols), out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    __hash__ = None

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            body = "; ".join(" ".join(str(x) for x in r) for r in self.to_dense())
            return f"Matrix({self.nrows}x{self.ncols}: {body})"
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def hstack(mats) -> Matrix:
    mats = list(mats)
    nrows = mats[0].nrows
    cols, off = {}, 0
    for m in mats:
        if m.nrows != nrows:
            raise LinalgError("hstack row mismatch")
        for j, c in m._cols.items():
            cols[off + j] = c
        off += m.ncols
    return Matrix(nrows, off, cols)


def vstack(mats) -> Matrix:
    return hstack([m.transpose() for m in mats]).transpose()


def block_diag(mats) -> Matrix:
    mats = list(mats)
    cols, ro, co = {}, 0, 0
    for m in mats:
        for j, c in m._cols.items():
            cols[co + j] = {ro + i: x for i, x in c.items()}
        ro += m.nrows
        co += m.ncols
    return Matrix(ro, co, cols)


# ---------------------------------------------------------------------------
# lazy tensor products of maps

class IdentityMap:
    """Identity on k^n, without storing anything."""

    __slots__ = ("nrows", "ncols")

    def __init__(self, n: int):
        self.nrows = self.ncols = n

    def col(self, j):
        return {j: ONE}

    def row(self, i):
        return {i: ONE}


class KronMap:
    """Lazy Kronecker product of maps (Matrix or IdentityMap).

    Indices use the strict convention of the whole package: the first factor
    is the most significant digit.
    """

    def __init__(self, factors):
        self.factors = list(factors)
        self.nrows = 1
        self.ncols = 1
        for f in self.factors:
            self.nrows *= f.nrows
            self.ncols *= f.ncols
        self._rdims = [f.nrows for f in self.factors]
        self._cdims = [f.ncols for f in self.factors]

    @staticmethod
    def _digits(i, dims):
        out = [0] * len(dims)
        for p in range(len(dims) - 1, -1, -1):
            i, out[p] = divmod(i, dims[p])
        return out

    def _expand(self, parts, dims):
        acc = {0: ONE}
        for part, d in zip(parts, dims):
            if not part:
                return {}
            nxt = {}
            for i, x in acc.items():
                base = i * d
                for k, y in part.items():
                    nxt[base + k] = x * y
            acc = nxt
        return acc

    def col(self, j):
        ds = self._digits(j, self._cdims)
        return self._expand([f.col(d) for f, d in zip(self.factors, ds)], self._rdims)

    def row(self, i):
        ds = self._digits(i, self._rdims)
        return self._expand([f.row(d) for f, d in zip(self.factors, ds)], self._cdims)

    def to_matrix(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, {j: self.col(j) for j in range(self.ncols)})


def as_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m
    if isinstance(m, IdentityMap):
        return Matrix.identity(m.nrows)
    return m.to_matrix()


# ---------------------------------------------------------------------------
# elimination

class Echelon:
    """Incremental exact row reduction; see module docstring."""

    def __init__(self, rule: str = "min", weights=None):
        if rule not in ("min", "max", "sparse"):
            raise ValueError(f"unknown pivot rule {rule!r}")
        self.rule = rule
        self.weights = weights if weights is not None else {}
        self.pivots = {}   # coord -> vector with value 1 at coord
        self._order = {}   # coord -> insertion index

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        order = self._order
        heap = [(order[k], k) for k in v if k in order]
        heapq.heapify(heap)
        while heap:
            _, k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            p = self.pivots[k]
            for kk, x in p.items():
                y = v.get(kk, ZERO) - c * x
                if y:
                    if kk not in v and kk in order:
                        heapq.heappush(heap, (order[kk], kk))
                    v[kk] = y
                else:
                    v.pop(kk, None)
        return v

    def _choose(self, v):
        if self.rule == "min":
            return min(v)
        if self.rule == "max":
            return max(v)
        w = self.weights
        return min(v, key=lambda k: (w.get(k, 0), k))

    def add(self, v: dict) -> bool:
        """Insert v; return True if it was independent of what is present."""
        v = self.reduce(v)
        if not v:
            return False
        c = self._choose(v)
        inv = ONE / v[c]
        if inv != ONE:
            v = {k: x * inv for k, x in v.items()}
        self._order[c] = len(self._order)
        self.pivots[c] = v
        return True

    def back_substitute(self) -> None:
        """Bring an ordered (min/max) echelon into reduced form."""
        if self.rule == "sparse":
            raise LinalgError("back-substitution needs an ordered pivot rule")
        keys = sorted(self.pivots, reverse=(self.rule == "min"))
        done = {}
        for c in keys:
            v = self.pivots[c]
            hits = [k for k in v if k != c and k in done]
            if hits:
                v = dict(v)
                for k in hits:
                    x = v.get(k)
                    if x:
                        _axpy(v, -x, done[k])
                self.pivots[c] = v
            done[c] = v


def _weights(vectors):
    w = defaultdict(int)
    for v in vectors:
        for k in v:
            w[k] += 1
    return w


def rank_of_vectors(vectors) -> int:
    vectors = [v for v in vectors if v]
    ech = Echelon("sparse", _weights(vectors))
    # sparsest first keeps early pivot vectors short
    for v in sorted(vectors, key=len):
        ech.add(v)
    return len(ech)


def rank(m: Matrix) -> int:
    if m.nrows < m.ncols:
        return rank_of_vectors(m.row(i) for i in range(m.nrows))
    return rank_of_vectors(m.columns())


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of k^n with its canonical basis.

    The basis is in reduced column echelon form: basis vector j has a 1 at
    coordinate ``pivots[j]``, pivots increase, and every other basis vector
    vanishes there.  Two Subspace values are equal iff the subspaces are.
    Coordinates of a member vector are its entries at the pivots.
    """

    __slots__ = ("ambient_dim", "vectors", "pivots", "_occ", "_pivpos", "coordinate")

    def __init__(self, ambient_dim: int, vectors, pivots, coordinate: bool = False):
        self.ambient_dim = ambient_dim
        self.vectors = tuple(vectors)
        self.pivots = tuple(pivots)
        self.coordinate = coordinate  # basis made of standard unit vectors
        self._occ = None
        self._pivpos = None

    @classmethod
    def coordinate_subspace(cls, ambient_dim: int, indices) -> "Subspace":
        idx = sorted(set(indices))
        return cls(ambient_dim, [{i: ONE} for i in idx], idx, coordinate=True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.coordinate_subspace(n, range(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [], [], coordinate=True)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> Matrix:
        return Matrix.from_columns(self.ambient_dim, self.vectors)

    def pivot_position(self):
        if self._pivpos is None:
            self._pivpos = {p: j for j, p in enumerate(self.pivots)}
        return self._pivpos

    def occurrences(self):
        """Map ambient index -> list of (basis index, value)."""
        if self._occ is None:
            occ = defaultdict(list)
            for j, v in enumerate(self.vectors):
                for k, x in v.items():
                    occ[k].append((j, x))
            self._occ = dict(occ)
        return self._occ

    def coords(self, v: dict, check: bool = True) -> dict:
        pos = self.pivot_position()
        c = {pos[k]: x for k, x in v.items() if k in pos}
        if check and not self.coordinate:
            rebuilt = {}
            for j, x in c.items():
                _axpy(rebuilt, x, self.vectors[j])
            if rebuilt != v:
                raise LinalgError("vector does not lie in the subspace")
        elif check and len(c) != len(v):
            raise LinalgError("vector does not lie in the subspace")
        return c

    def contains(self, v: dict) -> bool:
        try:
            self.coords(v)
        except LinalgError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self.vectors == other.vectors)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim} in k^{self.ambient_dim})"


def span(ambient_dim: int, vectors) -> Subspace:
    ech = Echelon("min")
    for v in vectors:
        if v:
            ech.add(v)
    ech.back_substitute()
    piv = sorted(ech.pivots)
    vecs = [ech.pivots[p] for p in piv]
    coordinate = all(len(v) == 1 for v in vecs)
    return Subspace(ambient_dim, vecs, piv, coordinate=coordinate)


def image(m: Matrix) -> Subspace:
    """Canonical basis of the column span of m."""
    return span(m.nrows, m.columns())


def kernel_of_rows(ncols: int, rows) -> Subspace:
    """Canonical basis of {v : r.v = 0 for every row r}."""
    ech = Echelon("max")
    for r in rows:
        if r:
            ech.add(r)
    ech.back_substitute()
    colidx = defaultdict(list)
    for c, r in ech.pivots.items():
        for k, x in r.items():
            if k != c:
                colidx[k].append((c, x))
    vecs, piv = [], []
    for f in range(ncols):
        if f in ech.pivots:
            continue
        v = {f: ONE}
        for c, x in colidx.get(f, ()):
            v[c] = -x
        vecs.append(v)
        piv.append(f)
    coordinate = all(len(v) == 1 for v in vecs)
    return Subspace(ncols, vecs, piv, coordinate=coordinate)


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    return kernel_of_rows(m.ncols, (m.row(i) for i in range(m.nrows)))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError("ambient dimension mismatch")
    # a ∩ b = a-combinations killed by the projection away from b
    q = quotient(b.ambient_dim, b)
    imgs = [q.projection.apply(v) for v in a.vectors]
    ker = kernel(Matrix.from_columns(q.quotient_dim, imgs))
    vecs = []
    for kv in ker.vectors:
        w = {}
        for j, x in kv.items():
            _axpy(w, x, a.vectors[j])
        vecs.append(w)
    return span(a.ambient_dim, vecs)


class QuotientPresentation:
    """k^n / sub realized on the non-pivot coordinates of sub's canonical basis."""

    __slots__ = ("ambient_dim", "sub", "complement", "projection", "section")

    def __init__(self, ambient_dim, sub, complement, projection, section):
        self.ambient_dim = ambient_dim
        self.sub = sub
        self.complement = complement
        self.projection = projection
        self.section = section

    @property
    def quotient_dim(self) -> int:
        return len(self.complement)

    def project(self, v: dict) -> dict:
        return self.projection.apply(v)


def quotient(ambient_dim: int, sub: Subspace) -> QuotientPresentation:
    if sub.ambient_dim != ambient_dim:
        raise LinalgError(f"subspace lives in k^{sub.ambient_dim}, not k^{ambient_dim}")
    pivset = set(sub.pivots)
    comp = [i for i in range(ambient_dim) if i not in pivset]
    pos = {c: j for j, c in enumerate(comp)}
    cols = {}
    for c in comp:
        cols[c] = {pos[c]: ONE}
    for p, v in zip(sub.pivots, sub.vectors):
        col = {pos[k]: -x for k, x in v.items() if k != p}
        if col:
            cols[p] = col
    proj = Matrix(len(comp), ambient_dim, cols)
    sec = Matrix(ambient_dim, len(comp), {j: {c: ONE} for j, c in enumerate(comp)})
    return QuotientPresentation(ambient_dim, sub, tuple(comp), proj, sec)


def cohomology_at(d_in: Matrix, d_out: Matrix) -> int:
    """dim ker(d_out) - dim im(d_in) for a composable pair with d_out d_in = 0."""
    if d_out.ncols != d_in.nrows:
        raise LinalgError(f"not composable: {d_in.shape} then {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("d_out o d_in is nonzero")
    return (d_out.ncols - rank(d_out)) - rank(d_in)


class TransposedMap:
    """Lazy transpose of a Matrix / KronMap / IdentityMap."""

    def __init__(self, m):
        self.base = m
        self.nrows, self.ncols = m.ncols, m.nrows

    def col(self, j):
        return self.base.row(j)

    def row(self, i):
        return self.base.col(i)


def fixed_space(n: int, ops) -> Subspace:
    """Canonical basis of {v in k^n : op v = v for every op}.

    When every op is monomial (one entry per column) the space is spanned by
    orbit sums, found by a walk over the orbits; otherwise we fall back to
    the kernel of the stacked (op - I).
    """
    ops = list(ops)
    if not ops:
        return Subspace.full(n)
    try:
        return _fixed_space_monomial(n, ops)
    except _NotMonomial:
        pass
    rows = []
    for op in ops:
        for i in range(n):
            r = dict(op.row(i))
            x = r.get(i, ZERO) - ONE
            if x:
                r[i] = x
            else:
                r.pop(i, None)
            if r:
                rows.append(r)
    return kernel_of_rows(n, rows)


class _NotMonomial(Exception):
    pass


def _fixed_space_monomial(n, ops):
    # op e_j = s e_{pi(j)}; a fixed v has v[pi(j)] = s v[j]
    seen = [False] * n
    vecs, piv = [], []
    for start in range(n):
        if seen[start]:
            continue
        vals = {start: ONE}
        seen[start] = True
        stack = [start]
        dead = False
        while stack:
            j = stack.pop()
            vj = vals[j]
            for op in ops:
                c = op.col(j)
                if len(c) != 1:
                    raise _NotMonomial
                (k, s), = c.items()
                val = s * vj
                if k in vals:
                    if vals[k] != val:
                        dead = True
                else:
                    vals[k] = val
                    seen[k] = True
                    stack.append(k)
        if not dead:
            vecs.append(vals)
            piv.append(start)
    coordinate = all(len(v) == 1 for v in vecs)
    return Subspace(n, vecs, piv, coordinate=coordinate)
