"""Stable anti-Yetter-Drinfeld modules over kG.

Over a group algebra a SAYD module is a G-graded space with a G-action such
that h maps M_g into M_{hgh^-1} (the AYD condition) and g acts trivially on
M_g (stability).  The same record serves both the module-side coefficient
of Rep(G) and the comodule-side coefficient of Vec_G: the grading is the
coaction, the action is the module structure.
"""
from __future__ import annotations

from dataclasses import dataclass

from .groups import EquivariantGraded, FinGroup, GroupError, Rep, character_rep
from .linalg import ONE, Matrix, as_matrix, scalar


class SaydError(ValueError):
    pass


@dataclass(frozen=True)
class SaydCheck:
    status: str          # "ok", "ayd_violation" or "stability_violation"
    witness: tuple = ()

    @property
    def ok(self):
        return self.status == "ok"

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.status}{self.witness}"


@dataclass(frozen=True, eq=False)
class SaydModule:
    base: EquivariantGraded
    name: str = ""

    @property
    def group(self) -> FinGroup:
        return self.base.group

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def degrees(self):
        return self.base.degrees

    def action(self, h: int) -> Matrix:
        return as_matrix(self.base.action[h])

    def __eq__(self, other):
        return isinstance(other, SaydModule) and self.base == other.base

    __hash__ = None

    def __repr__(self):
        return f"SaydModule({self.name or '?'}, dims={self.base.dims})"


def check_sayd(m) -> SaydCheck:
    base = m.base if isinstance(m, SaydModule) else m
    G = base.group
    for h in G.elements():
        if base.action[h].shape != (base.dim, base.dim):
            return SaydCheck("ayd_violation", (h, None))
    bad = base.block_violation()
    if bad is not None:
        return SaydCheck("ayd_violation", bad)
    for i, g in enumerate(base.degrees):
        if base.action[g].col(i) != {i: ONE}:
            return SaydCheck("stability_violation", (g,))
    return SaydCheck("ok")


def make_sayd(G: FinGroup, degrees, action, name: str = "") -> SaydModule:
    """Validated constructor; raises SaydError with the check_sayd witness."""
    mats = tuple(m if isinstance(m, Matrix) else Matrix.from_dense(m) for m in action)
    if len(mats) != G.order:
        raise SaydError("one action matrix per group element required")
    base = EquivariantGraded(G, tuple(degrees), mats)
    if base.rep().check() is not None:
        raise SaydError(f"action is not a representation: {base.rep().check()}")
    res = check_sayd(base)
    if not res:
        raise SaydError(f"not a SAYD module: {res}")
    return SaydModule(base, name)


def make_Ve(V: Rep, name: str = "") -> SaydModule:
    """V concentrated in degree e."""
    G = V.group
    base = EquivariantGraded(G, (G.identity,) * V.dim, tuple(V.rho))
    return SaydModule(base, name or "V_e")


def make_dual_flip(m: SaydModule) -> SaydModule:
    """M^v: the dual of M_{g^-1} in degree g, action rho(h^-1)^T."""
    G = m.group
    degs = tuple(G.inv(d) for d in m.degrees)
    act = tuple(m.action(G.inv(h)).transpose() for h in G.elements())
    return SaydModule(EquivariantGraded(G, degs, act), f"({m.name})^v")


def make_adHdelta(G: FinGroup) -> SaydModule:
    """kG with g in degree g and h acting by conjugation."""
    n = G.order
    act = tuple(Matrix(n, n, {g: {G.conj(h, g): ONE} for g in range(n)}) for h in G.elements())
    return SaydModule(EquivariantGraded(G, tuple(range(n)), act), "adH^Delta")


def make_mHad(G: FinGroup) -> SaydModule:
    """kG in degree e with the left regular action."""
    n = G.order
    act = tuple(Matrix(n, n, {g: {G.mul(h, g): ONE} for g in range(n)}) for h in G.elements())
    return SaydModule(EquivariantGraded(G, (G.identity,) * n, act), "mH^ad")


def make_mpi(G: FinGroup, chi, x: int) -> SaydModule:
    """k_{chi,x}: one-dimensional, degree x, action chi."""
    if not G.is_central(x):
        raise SaydError(f"element {x} is not central")
    chi = [scalar(c) for c in chi]
    try:
        rep = character_rep(G, chi)
    except GroupError as exc:
        raise SaydError(str(exc)) from exc
    if chi[x] != ONE:
        raise SaydError(f"stability fails: chi({x}) = {chi[x]} != 1")
    return SaydModule(EquivariantGraded(G, (x,), rep.rho), f"k_(chi,{x})")


def make_Mhat(m: SaydModule) -> Rep:
    """Sections of M over G as a G-module: (h.phi)_x = h.phi_{h^-1 x h}.

    With M_x laid out inside the total space this is the total-space action.
    """
    return Rep(m.group, m.dim, tuple(m.action(h) for h in m.group.elements()))
