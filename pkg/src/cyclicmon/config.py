"""JSON configuration for the command line driver.

Schema 1.  A document is either a single instance (instance fields at top
level) or ``{"schema": 1, "instances": [...]}``.  Top-level options:

    schema       1 (required)
    max_degree   N, HC/HH reported for n <= N-1          (default 4)
    budget       largest ambient dimension allowed       (default 100000)
    pipeline     "old" | "new" | "all"                   (default "old")
    instances    list of instance objects

Instance fields:

    name         free text
    group        {"cyclic": n} | {"symmetric": n} | {"table": [[...]]}
    category     "rep" | "graded" | "vec"
                 (vec = plain vector spaces; the group then only feeds the named
                 group / function algebras, and coefficients live over the trivial group)
    algebra      {"named": "unit" | "group_algebra" | "function_algebra" | "dual_numbers",
                  "action": "trivial" | "conjugation"}          (group_algebra in rep only)
                 {"matrix": n, "inner": <algebra>}
                 {"crossed": <algebra over rep>}                 (category must be graded)
                 {"explicit": {"dim": d, "products": [[i, j, k, "c"], ...],
                               "unit": [...], "action": [...] | "degrees": [...]}}
    coefficient  {"named": "Ve", "rep": "trivial" | "sign" | "regular" | [[matrix] per g]}
                 {"named": "adHdelta"} | {"named": "mHad"}
                 {"named": "mpi", "chi": [...], "x": g}
                 {"explicit": {"degrees": [...], "action": [[matrix] per g]}}
                 optional "dual": true applies M -> M^v
    trace        "A" | "B"   (default: A on rep, B on graded)
    pairs        list of "canonical" | {"free": "regular" | "unit" | "regular+unit"}
                 used by the new pipeline (default ["canonical"])

Scalars may be integers or strings such as "-1/2".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import category as cat
from .cyclic import DEFAULT_BUDGET, DEFAULT_MAX_DEGREE, new_ambient, old_ambient, AdmissiblePair
from .contratrace import Contratrace, TYPE_A, TYPE_B
from .groups import (GroupError, character_rep, make_cyclic_group, make_rep, regular_rep,
                     symmetric_group, trivial_group, trivial_rep, validate_group)
from .linalg import IdentityMap, Matrix, scalar
from .sayd import (SaydError, check_sayd, make_adHdelta, make_dual_flip, make_mHad, make_mpi,
                   make_sayd, make_Ve)

SCHEMA_VERSION = 1
PIPELINES = ("old", "new", "all")
TOP_KEYS = {"schema", "max_degree", "budget", "pipeline", "instances"}
INSTANCE_KEYS = {"name", "group", "category", "algebra", "coefficient", "trace", "pairs"}


class ConfigError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path
        self.msg = msg


@dataclass
class InstanceConfig:
    name: str
    group: object
    catref: object
    algebra: object
    coefficient: object
    trace: Contratrace
    pairs: list = field(default_factory=list)   # (flavor, Q) tuples


@dataclass
class ComputationConfig:
    schema: int
    max_degree: int
    budget: int
    pipeline: str
    instances: list


def _require_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    for k in obj:
        if k not in allowed:
            raise ConfigError(f"{path}.{k}", "unknown field")


def _int(x, path, lo=None):
    if not isinstance(x, int) or isinstance(x, bool):
        raise ConfigError(path, "expected an integer")
    if lo is not None and x < lo:
        raise ConfigError(path, f"must be >= {lo}")
    return x


def _scalar(x, path):
    try:
        return scalar(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ConfigError(path, f"not a rational number: {x!r}") from None


def _matrix(rows, n, path):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ConfigError(path, f"expected a {n}x{n} matrix")
    return Matrix.from_dense([[_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)]
                              for i, r in enumerate(rows)])


def parse_group(spec, path="group"):
    _require_keys(spec, {"cyclic", "symmetric", "table"}, path)
    if len(spec) != 1:
        raise ConfigError(path, "give exactly one of cyclic / symmetric / table")
    (kind, val), = spec.items()
    try:
        if kind == "cyclic":
            return make_cyclic_group(_int(val, f"{path}.cyclic", 1))
        if kind == "symmetric":
            n = _int(val, f"{path}.symmetric", 1)
            if n > 4:
                raise ConfigError(f"{path}.symmetric", "order too large (n <= 4)")
            return symmetric_group(n)
        if not isinstance(val, list) or not val:
            raise ConfigError(f"{path}.table", "expected a square integer array")
        return validate_group(val)
    except GroupError as exc:
        raise ConfigError(f"{path}.{kind}", str(exc)) from None


def parse_category(name, G, path="category"):
    if name == "rep":
        return cat.rep_cat(G)
    if name == "graded":
        return cat.graded_cat(G)
    if name == "vec":
        return cat.vec_cat()
    raise ConfigError(path, f"unknown category {name!r}")


def parse_algebra(spec, catref, path="algebra", H=None):
    if not isinstance(spec, dict) or len(spec) == 0:
        raise ConfigError(path, "expected an object")
    G = catref.group
    H = H or G
    if "named" in spec:
        _require_keys(spec, {"named", "action"}, path)
        name = spec["named"]
        action = spec.get("action", "trivial")
        if "action" in spec and name != "group_algebra":
            raise ConfigError(f"{path}.action", "only group_algebra takes an action")
        try:
            if name == "unit":
                A = cat.unit_algebra(catref)
            elif name == "group_algebra":
                A = cat.group_algebra(catref, H=H, action=action)
            elif name == "function_algebra":
                A = cat.function_algebra(catref, H=H)
            elif name == "dual_numbers":
                A = cat.dual_numbers(catref)
            else:
                raise ConfigError(f"{path}.named", f"unknown algebra {name!r}")
        except cat.CategoryError as exc:
            raise ConfigError(path, str(exc)) from None
    elif "matrix" in spec:
        _require_keys(spec, {"matrix", "inner"}, path)
        n = _int(spec["matrix"], f"{path}.matrix", 1)
        if "inner" not in spec:
            raise ConfigError(f"{path}.inner", "missing")
        A = cat.matrix_amplify(parse_algebra(spec["inner"], catref, f"{path}.inner", H), n)
    elif "crossed" in spec:
        _require_keys(spec, {"crossed"}, path)
        if catref.is_rep:
            raise ConfigError(path, "a crossed product lives in the graded category")
        inner = parse_algebra(spec["crossed"], cat.rep_cat(G), f"{path}.crossed")
        A = cat.crossed_product(inner)
    elif "explicit" in spec:
        _require_keys(spec, {"explicit"}, path)
        A = _explicit_algebra(spec["explicit"], catref, f"{path}.explicit")
    else:
        raise ConfigError(path, "expected named / matrix / crossed / explicit")
    rep = cat.check_algebra(A)
    if not rep:
        raise ConfigError(path, f"algebra check failed: {rep.failure} at {rep.witness}")
    return A


def _explicit_algebra(spec, catref, path):
    _require_keys(spec, {"dim", "products", "unit", "action", "degrees"}, path)
    d = _int(spec.get("dim"), f"{path}.dim", 1)
    G = catref.group
    prods = {}
    for t, entry in enumerate(spec.get("products", [])):
        p = f"{path}.products[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ConfigError(p, "expected [i, j, k, coeff]")
        i, j, k = (_int(entry[s], p) for s in range(3))
        if not (i < d and j < d and k < d):
            raise ConfigError(p, f"index out of range for dim {d}")
        prods.setdefault((i, j), {})[k] = _scalar(entry[3], p)
    unit = spec.get("unit")
    if not isinstance(unit, list) or len(unit) != d:
        raise ConfigError(f"{path}.unit", f"expected {d} entries")
    unit = [_scalar(x, f"{path}.unit") for x in unit]
    if catref.is_rep:
        if "degrees" in spec:
            raise ConfigError(f"{path}.degrees", "degrees belong to graded algebras")
        act = spec.get("action")
        if act is None:
            rho = tuple(IdentityMap(d) for _ in G.elements())
        else:
            if not isinstance(act, list) or len(act) != G.order:
                raise ConfigError(f"{path}.action", f"expected {G.order} matrices")
            mats = [_matrix(m, d, f"{path}.action[{g}]") for g, m in enumerate(act)]
            try:
                rho = make_rep(G, mats).rho
            except GroupError as exc:
                raise ConfigError(f"{path}.action", str(exc)) from None
        obj = cat.Obj(catref, d, rho=rho)
    else:
        if "action" in spec:
            raise ConfigError(f"{path}.action", "graded algebras carry degrees, not an action")
        degs = spec.get("degrees", [G.identity] * d)
        if not isinstance(degs, list) or len(degs) != d:
            raise ConfigError(f"{path}.degrees", f"expected {d} degrees")
        for t, x in enumerate(degs):
            if _int(x, f"{path}.degrees[{t}]", 0) >= G.order:
                raise ConfigError(f"{path}.degrees[{t}]", "not a group element")
        obj = cat.Obj(catref, d, degrees=tuple(degs))
    return cat.make_algebra(obj, prods, {i: x for i, x in enumerate(unit) if x}, "explicit")


def _rep_from_spec(spec, G, path):
    if spec == "trivial":
        return trivial_rep(G)
    if spec == "regular":
        return regular_rep(G)
    if spec == "sign":
        if G.order % 2:
            raise ConfigError(path, "sign needs a cyclic group of even order")
        if G != make_cyclic_group(G.order):
            raise ConfigError(path, "sign is only defined here for cyclic groups")
        return character_rep(G, [1 if g % 2 == 0 else -1 for g in G.elements()])
    if isinstance(spec, list):
        if len(spec) != G.order:
            raise ConfigError(path, f"expected {G.order} matrices")
        n = len(spec[0]) if spec and isinstance(spec[0], list) else 0
        mats = [_matrix(m, n, f"{path}[{g}]") for g, m in enumerate(spec)]
        try:
            return make_rep(G, mats)
        except GroupError as exc:
            raise ConfigError(path, str(exc)) from None
    raise ConfigError(path, f"unknown representation {spec!r}")


def parse_coefficient(spec, G, path="coefficient"):
    if not isinstance(spec, dict):
        raise ConfigError(path, "expected an object")
    dual = spec.get("dual", False)
    if "named" in spec:
        name = spec["named"]
        allowed = {"named", "dual"} | {"Ve": {"rep"}, "mpi": {"chi", "x"}}.get(name, set())
        _require_keys(spec, allowed, path)
        try:
            if name == "Ve":
                M = make_Ve(_rep_from_spec(spec.get("rep", "trivial"), G, f"{path}.rep"))
            elif name == "adHdelta":
                M = make_adHdelta(G)
            elif name == "mHad":
                M = make_mHad(G)
            elif name == "mpi":
                chi = spec.get("chi")
                if not isinstance(chi, list):
                    raise ConfigError(f"{path}.chi", "expected a list of values")
                x = _int(spec.get("x"), f"{path}.x", 0)
                if x >= G.order:
                    raise ConfigError(f"{path}.x", "not a group element")
                M = make_mpi(G, [_scalar(c, f"{path}.chi") for c in chi], x)
            else:
                raise ConfigError(f"{path}.named", f"unknown coefficient {name!r}")
        except SaydError as exc:
            raise ConfigError(path, str(exc)) from None
    elif "explicit" in spec:
        _require_keys(spec, {"explicit", "dual"}, path)
        ex = spec["explicit"]
        _require_keys(ex, {"degrees", "action"}, f"{path}.explicit")
        degs = ex.get("degrees")
        if not isinstance(degs, list) or not degs:
            raise ConfigError(f"{path}.explicit.degrees", "expected a non-empty list")
        for t, x in enumerate(degs):
            if _int(x, f"{path}.explicit.degrees[{t}]", 0) >= G.order:
                raise ConfigError(f"{path}.explicit.degrees[{t}]", "not a group element")
        act = ex.get("action")
        if not isinstance(act, list) or len(act) != G.order:
            raise ConfigError(f"{path}.explicit.action", f"expected {G.order} matrices")
        mats = [_matrix(m, len(degs), f"{path}.explicit.action[{g}]") for g, m in enumerate(act)]
        try:
            M = make_sayd(G, degs, mats, "explicit")
        except SaydError as exc:
            raise ConfigError(path, str(exc)) from None
    else:
        raise ConfigError(path, "expected named / explicit")
    if dual:
        M = make_dual_flip(M)
    res = check_sayd(M)
    if not res:
        raise ConfigError(path, f"not a SAYD module: {res}")
    return M


def parse_pairs(spec, catref, path="pairs"):
    if spec is None:
        return [("canonical", None)]
    if not isinstance(spec, list) or not spec:
        raise ConfigError(path, "expected a non-empty list")
    out = []
    for t, p in enumerate(spec):
        pp = f"{path}[{t}]"
        if p == "canonical":
            out.append(("canonical", None))
            continue
        _require_keys(p, {"free"}, pp)
        q = p.get("free")
        unit = cat.unit_obj(catref)
        G = catref.group
        if catref.is_rep:
            reg = cat.obj_from_rep(regular_rep(G))
        else:
            reg = cat.obj_from_degrees(G, list(G.elements()))
        if q == "unit":
            Q = unit
        elif q == "regular":
            Q = reg
        elif q == "regular+unit":
            Q = cat.direct_sum(reg, unit)
        else:
            raise ConfigError(f"{pp}.free", f"unknown Q {q!r}")
        out.append(("free", Q))
    return out


def parse_instance(spec, path, N, budget, pipeline) -> InstanceConfig:
    _require_keys(spec, INSTANCE_KEYS, path)
    for k in ("group", "category", "algebra", "coefficient"):
        if k not in spec:
            raise ConfigError(f"{path}.{k}", "missing")
    G = parse_group(spec["group"], f"{path}.group")
    catref = parse_category(spec["category"], G, f"{path}.category")
    A = parse_algebra(spec["algebra"], catref, f"{path}.algebra", G)
    M = parse_coefficient(spec["coefficient"], catref.group, f"{path}.coefficient")
    kind = spec.get("trace", TYPE_A if catref.is_rep else TYPE_B)
    if kind not in (TYPE_A, TYPE_B):
        raise ConfigError(f"{path}.trace", "expected A or B")
    if (kind == TYPE_A) != catref.is_rep:
        raise ConfigError(f"{path}.trace", "type A lives on rep, type B on graded/vec")
    F = Contratrace(kind, M, catref)
    pairs = parse_pairs(spec.get("pairs"), catref, f"{path}.pairs")
    # size everything before any matrix work
    sizes = []
    if pipeline in ("old", "all"):
        sizes.append(old_ambient(F, A, N))
    if pipeline in ("new", "all"):
        for flavor, Q in pairs:
            fake = AdmissiblePair(None, None, flavor, Q)
            sizes.append(F.mdim * A.dim ** (N + 2) * fake.q_dim ** (N + 1))
    if sizes and max(sizes) > budget:
        raise ConfigError(path, f"ambient dimension {max(sizes)} exceeds budget {budget}")
    return InstanceConfig(spec.get("name", ""), G, catref, A, M, F, pairs)


def parse_config(text: str, max_degree=None, budget=None, pipeline=None) -> ComputationConfig:
    """Parse and validate; command-line overrides win over the document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise ConfigError("$", "expected an object")
    if "instances" in doc:
        _require_keys(doc, TOP_KEYS, "$")
        raw = doc["instances"]
        if not isinstance(raw, list):
            raise ConfigError("$.instances", "expected a list")
    else:
        _require_keys(doc, TOP_KEYS | INSTANCE_KEYS, "$")
        raw = [{k: v for k, v in doc.items() if k in INSTANCE_KEYS}]
    if doc.get("schema") != SCHEMA_VERSION:
        raise ConfigError("$.schema", f"expected schema {SCHEMA_VERSION}")
    N = max_degree if max_degree is not None else _int(doc.get("max_degree", DEFAULT_MAX_DEGREE), "$.max_degree", 1)
    if N < 1:
        raise ConfigError("$.max_degree", "must be >= 1")
    B = budget if budget is not None else _int(doc.get("budget", DEFAULT_BUDGET), "$.budget", 1)
    pipe = pipeline or doc.get("pipeline", "old")
    if pipe not in PIPELINES:
        raise ConfigError("$.pipeline", f"expected one of {', '.join(PIPELINES)}")
    base = "$.instances" if "instances" in doc else "$"
    insts = []
    for t, spec in enumerate(raw):
        p = f"{base}[{t}]" if "instances" in doc else base
        insts.append(parse_instance(spec, p, N, B, pipe))
    return ComputationConfig(SCHEMA_VERSION, N, B, pipe, insts)
