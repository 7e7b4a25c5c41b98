"""Finite groups by multiplication table, their representations over Q, and
G-graded spaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .linalg import ONE, ZERO, Matrix, KronMap, scalar


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinGroup:
    """A finite group; elements are 0..order-1 and ``table[g][h] = g*h``."""

    table: tuple
    identity: int
    inverse: tuple
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def elements(self):
        return range(len(self.table))

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def conj(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def is_central(self, x: int) -> bool:
        return all(self.table[x][g] == self.table[g][x] for g in self.elements())

    def is_abelian(self) -> bool:
        return all(self.is_central(x) for x in self.elements())

    def generators(self):
        """A small generating set, chosen greedily in element order."""
        gens, reached = [], {self.identity}
        for g in self.elements():
            if g in reached:
                continue
            gens.append(g)
            frontier = list(reached)
            reached = set(reached)
            # closure under right multiplication by the generators so far
            while frontier:
                x = frontier.pop()
                for s in gens:
                    y = self.table[x][s]
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
            if len(reached) == self.order:
                break
        return tuple(gens)

    def __eq__(self, other):
        return isinstance(other, FinGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FinGroup({self.name or 'order %d' % self.order})"


def validate_group(table, name: str = "") -> FinGroup:
    """Check the group axioms exhaustively and build a FinGroup.

    Raises GroupError naming the first violated axiom.
    """
    table = tuple(tuple(int(x) for x in row) for row in table)
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    for row in table:
        if len(row) != n:
            raise GroupError("table is not square")
        for x in row:
            if not 0 <= x < n:
                raise GroupError(f"entry {x} out of range")
    ident = None
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise GroupError("no identity element")
    inverse = []
    for g in range(n):
        hs = [h for h in range(n) if table[g][h] == ident and table[h][g] == ident]
        if not hs:
            raise GroupError(f"no inverse for {g}")
        inverse.append(hs[0])
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupError(f"not associative at ({a}, {b}, {c})")
    return FinGroup(table, ident, tuple(inverse), name)


def make_cyclic_group(n: int) -> FinGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FinGroup(table, 0, tuple((-i) % n for i in range(n)), f"Z/{n}")


def trivial_group() -> FinGroup:
    return make_cyclic_group(1)


def group_from_permutations(perms, name: str = "") -> FinGroup:
    """Group generated by closing the given permutations (tuples) under composition.

    Element 0 is the identity; (p*q)(i) = p(q(i)).
    """
    perms = [tuple(p) for p in perms]
    deg = len(perms[0])
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        x = frontier.pop(0)
        for p in perms:
            y = tuple(x[p[i]] for i in range(deg))
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                frontier.append(y)
    table = [[index[tuple(a[b[i]] for i in range(deg))] for b in elems] for a in elems]
    return validate_group(table, name)


def symmetric_group(n: int) -> FinGroup:
    return group_from_permutations(list(permutations(range(n))), f"S_{n}")


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True, eq=False)
class Rep:
    """Representation: ``rho[g]`` is the matrix of g (indexed like group elements)."""

    group: FinGroup
    dim: int
    rho: tuple

    def __post_init__(self):
        if len(self.rho) != self.group.order:
            raise GroupError("one matrix per group element required")
        for m in self.rho:
            if m.shape != (self.dim, self.dim):
                raise GroupError(f"matrix of shape {m.shape} in a {self.dim}-dim rep")

    def check(self):
        """Exhaustive homomorphism check; returns None or a (g, h) witness."""
        G = self.group
        if self.rho[G.identity] != Matrix.identity(self.dim):
            return ("identity", G.identity)
        for g in G.elements():
            for h in G.elements():
                if self.rho[g] @ self.rho[h] != self.rho[G.mul(g, h)]:
                    return (g, h)
        return None

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.group == other.group
                and self.dim == other.dim and self.rho == other.rho)

    __hash__ = None


def make_rep(G: FinGroup, matrices) -> Rep:
    mats = tuple(m if isinstance(m, Matrix) else Matrix.from_dense(m) for m in matrices)
    dim = mats[0].nrows if mats else 0
    r = Rep(G, dim, mats)
    bad = r.check()
    if bad is not None:
        raise GroupError(f"not a representation: fails at {bad}")
    return r


def trivial_rep(G: FinGroup, dim: int = 1) -> Rep:
    return Rep(G, dim, tuple(Matrix.identity(dim) for _ in G.elements()))


def regular_rep(G: FinGroup) -> Rep:
    n = G.order
    mats = tuple(Matrix(n, n, {h: {G.mul(g, h): ONE} for h in range(n)}) for g in range(n))
    return Rep(G, n, mats)


def character_rep(G: FinGroup, chi) -> Rep:
    chi = [scalar(c) for c in chi]
    if len(chi) != G.order:
        raise GroupError("character needs one value per element")
    if chi[G.identity] != ONE:
        raise GroupError("character must send the identity to 1")
    for g in G.elements():
        for h in G.elements():
            if chi[g] * chi[h] != chi[G.mul(g, h)]:
                raise GroupError(f"character is not multiplicative at ({g}, {h})")
    return Rep(G, 1, tuple(Matrix(1, 1, {0: {0: c}}) for c in chi))


def sign_character(G: FinGroup, gen: int = 1):
    """For cyclic Z/n with n even: the character sending the generator to -1."""
    if G.order % 2:
        raise GroupError("sign character needs a group of even order")
    # valid for the cyclic groups built by make_cyclic_group
    return [ONE if g % 2 == 0 else -ONE for g in G.elements()]


def tensor_rep(V: Rep, W: Rep) -> Rep:
    if V.group != W.group:
        raise GroupError("representations of different groups")
    return Rep(V.group, V.dim * W.dim, tuple(a.kron(b) for a, b in zip(V.rho, W.rho)))


def dual_rep(V: Rep) -> Rep:
    """Contragredient: rho*(g) = rho(g^-1)^T."""
    G = V.group
    return Rep(G, V.dim, tuple(V.rho[G.inv(g)].transpose() for g in G.elements()))


def tensor_power_action(mats, k: int, dim: int):
    """Lazy k-fold Kronecker power of a family of matrices."""
    if k == 0:
        return [Matrix.identity(1) for _ in mats]
    return [KronMap([m] * k) for m in mats]


# ---------------------------------------------------------------------------
# graded spaces

@dataclass(frozen=True, eq=False)
class GradedSpace:
    """G-graded space with components V_g laid out in element order."""

    group: FinGroup
    dims: tuple

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offsets(self):
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def degrees(self):
        """Degree of each basis vector of the total space."""
        return tuple(g for g, d in enumerate(self.dims) for _ in range(d))

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.group == other.group and self.dims == other.dims

    __hash__ = None


def graded_from_degrees(G: FinGroup, degrees) -> tuple:
    """Component dimensions of a basis with the given degrees."""
    dims = [0] * G.order
    for d in degrees:
        dims[d] += 1
    return tuple(dims)


@dataclass(frozen=True, eq=False)
class EquivariantGraded:
    """Graded space with a G-action on the total space.

    Basis vectors are homogeneous; ``degrees[i]`` is the degree of basis
    vector i.  The basis need not be grouped by degree.
    """

    group: FinGroup
    degrees: tuple
    action: tuple

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def dims(self):
        return graded_from_degrees(self.group, self.degrees)

    def component(self, g: int):
        return [i for i, d in enumerate(self.degrees) if d == g]

    def block_violation(self):
        """First (h, g) such that action(h) does not map M_g into M_{hgh^-1}."""
        G = self.group
        for h in G.elements():
            m = self.action[h]
            for i, g in enumerate(self.degrees):
                target = G.conj(h, g)
                for r in m.col(i):
                    if self.degrees[r] != target:
                        return (h, g)
        return None

    def rep(self) -> Rep:
        return Rep(self.group, self.dim, self.action)

    def __eq__(self, other):
        return (isinstance(other, EquivariantGraded) and self.group == other.group
                and self.degrees == other.degrees and self.action == other.action)

    __hash__ = None
