"""Command line front end and the text definition / report formats.

Definition files are JSON documents with a versioned header::

    {"format": "dgsemi-definitions", "version": 1, "field": "GF(101)",
     "objects": [{"kind": "algebra", ...}, {"kind": "module", ...}]}

Every coefficient is a decimal string ("3", "-2", "1/2"). Structure constants
are sparse lists with omitted entries meaning zero:

* algebra ``differential``: ``[j, k, c]`` for ∂b_j = Σ c·b_k
* algebra ``multiplication``: ``[i, j, k, c]`` for b_i·b_j = Σ c·b_k
* module ``differential``: ``[j, k, c]`` for ∂x_j = Σ c·x_k
* module ``action``: ``[b, j, k, c]`` for b_b·x_j = Σ c·x_k

Basis elements are listed by ``degrees`` in nondecreasing order. An object may
also name two ``factors``; it is then the tensor product of those objects and
any explicit tables must agree with it.

Exit codes: 0 holds, 1 fails, 2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import standard_catalog
from .dg import (DGAlgebra, DGModule, LocalityCertificate, StructureError, algebra_from_total, module_from_total,
                 total_matrix, validate_dg_algebra, validate_dg_module, validate_locality)
from .scalars import Field, GF, QQ
from .semidual import is_semidualizing, theorem_suite
from .tensor import tensor_algebras, tensor_modules
from .verdicts import VerdictReport

FORMAT = "dgsemi-definitions"
REPORT_FORMAT = "dgsemi-report"
VERSION = 1

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# statement each check certifies, carried into reports
ANCHORS = {
    "validate_dg_algebra": "DG algebra axioms",
    "validate_dg_module": "DG module axioms",
    "validate_locality": "local DG algebra",
    "semidualizing": "homothety morphism",
    "semidualizing_tensor": "is semidualizing over A",
    "semidualizing_tensor_converse": "is semidualizing over A",
    "bass_tensor": "tensor product of Bass class members",
    "bass_tensor_converse": "tensor product of Bass class members",
    "auslander_tensor": "tensor product of Auslander class members",
    "auslander_tensor_converse": "tensor product of Auslander class members",
    "reflexive_tensor": "tensor product of derived reflexive modules",
    "reflexive_tensor_converse": "tensor product of derived reflexive modules",
    "approx_compatibility": "classification up to shift",
    "psi_injective": "well-defined and injective",
}

ROLE_ALIASES = {"R": "regular", "regular": "regular", "k": "residue", "residue": "residue",
                "omega": "dualizing", "ω": "dualizing", "dualizing": "dualizing"}

_COEFF = re.compile(r"-?\d+(/\d+)?")


class InputError(ValueError):
    """Malformed definition file (exit code 2)."""


class FieldMismatch(ValueError):
    """Inputs over different fields (exit code 1)."""


# ------------------------------------------------------------------ field specs


def parse_field(text: str) -> Field:
    t = str(text).strip()
    if t in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", t)
    if not m:
        raise InputError(f"unknown field spec {text!r}")
    try:
        return GF(int(m.group(1)))
    except ValueError as e:
        raise InputError(str(e)) from None


def _coeff(f: Field, s):
    if not isinstance(s, str) or not _COEFF.fullmatch(s.strip()):
        raise InputError(f"coefficient {s!r} is not a decimal integer or rational string")
    try:
        return f.scalar(s)
    except ZeroDivisionError as e:
        raise InputError(str(e)) from None


def _index(v, n: int, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
        raise InputError(f"{what} index {v!r} out of range 0..{n - 1}")
    return v


def _entries(raw, arity: int, what: str) -> list:
    if not isinstance(raw, list):
        raise InputError(f"{what} must be a list")
    for e in raw:
        if not isinstance(e, list) or len(e) != arity + 1:
            raise InputError(f"{what} entries must have {arity} indices and a coefficient")
    return raw


def _degrees(raw, what: str) -> list[int]:
    if not isinstance(raw, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in raw):
        raise InputError(f"{what} degrees must be a list of integers")
    if raw != sorted(raw):
        raise InputError(f"{what} degrees must be nondecreasing")
    return raw


def _sparse_vector(f: Field, raw, n: int, what: str) -> np.ndarray:
    v = f.zero_vector(n)
    for e in _entries(raw, 1, what):
        v[_index(e[0], n, what)] = _coeff(f, e[1])
    return v


def _dense_to_sparse(f: Field, arr: np.ndarray) -> list:
    return [[*(int(i) for i in idx), f.to_str(arr[idx])] for idx in map(tuple, np.argwhere(arr != 0))]


# --------------------------------------------------------------------- loading


@dataclass
class Definitions:
    """Parsed objects by name; ``roles`` maps (algebra name, role) to a module name."""

    field: Field
    algebras: dict[str, DGAlgebra] = field(default_factory=dict)
    modules: dict[str, DGModule] = field(default_factory=dict)
    roles: dict[tuple[str, str], str] = field(default_factory=dict)

    def algebra(self, name: str | None = None) -> DGAlgebra:
        if name is None:
            if len(self.algebras) != 1:
                raise InputError(f"choose an algebra with PATH#NAME among {sorted(self.algebras)}")
            return next(iter(self.algebras.values()))
        if name not in self.algebras:
            raise InputError(f"no algebra named {name!r}")
        return self.algebras[name]

    def module(self, key: str, algebra: DGAlgebra | None = None) -> DGModule:
        """Look up by module name, or by role (R, k, omega) for ``algebra``."""
        m = self.modules.get(key)
        if m is not None and (algebra is None or m.algebra is algebra):
            return m
        role = ROLE_ALIASES.get(key)
        if role is not None:
            names = [self.roles[(an, role)] for (an, r) in self.roles
                     if r == role and (algebra is None or self.algebras.get(an) is algebra)]
            if len(names) == 1:
                return self.modules[names[0]]
        raise InputError(f"no module named or with role {key!r}")


def _algebra_from_object(f: Field, obj: dict) -> DGAlgebra:
    degs = _degrees(obj.get("degrees"), "algebra")
    n = len(degs)
    diff = f.zeros(n, n)
    for j, k, c in _entries(obj.get("differential", []), 2, "differential"):
        diff[_index(k, n, "differential"), _index(j, n, "differential")] = _coeff(f, c)
    mult = f.zeros(n * n, n).reshape(n, n, n)
    for i, j, k, c in _entries(obj.get("multiplication", []), 3, "multiplication"):
        mult[_index(k, n, "multiplication"), _index(i, n, "multiplication"),
             _index(j, n, "multiplication")] = _coeff(f, c)
    unit = _sparse_vector(f, obj.get("unit", []), n, "unit")
    cert = None
    loc = obj.get("locality")
    if loc is not None:
        if not isinstance(loc, dict) or not isinstance(loc.get("exponent"), int):
            raise InputError("locality needs an ideal and an integer exponent")
        ideal = [_sparse_vector(f, v, n, "locality ideal") for v in loc.get("ideal", [])]
        extra = [[_sparse_vector(f, v, n, "factor ideal") for v in grp] for grp in loc.get("factor_ideals", [])]
        cert = LocalityCertificate(ideal, loc["exponent"], extra)
    return algebra_from_total(f, degs, diff, mult, unit, cert, obj["name"])


def _module_from_object(f: Field, obj: dict, a: DGAlgebra) -> DGModule:
    degs = _degrees(obj.get("degrees"), "module")
    n = len(degs)
    diff = f.zeros(n, n)
    for j, k, c in _entries(obj.get("differential", []), 2, "differential"):
        diff[_index(k, n, "differential"), _index(j, n, "differential")] = _coeff(f, c)
    act = f.zeros(n * a.dim, n).reshape(n, a.dim, n)
    for b, j, k, c in _entries(obj.get("action", []), 3, "action"):
        act[_index(k, n, "action"), _index(b, a.dim, "action"), _index(j, n, "action")] = _coeff(f, c)
    return module_from_total(a, degs, diff, act, obj["name"])


def _same_algebra(x: DGAlgebra, y: DGAlgebra) -> bool:
    return (x.degrees == y.degrees and np.array_equal(x.diff_total, y.diff_total)
            and np.array_equal(x.mult, y.mult) and np.array_equal(x.unit, y.unit))


def _same_module(x: DGModule, y: DGModule) -> bool:
    return (dict(x.complex.dims) == dict(y.complex.dims)
            and np.array_equal(total_matrix(x.complex), total_matrix(y.complex))
            and x.total_action().shape == y.total_action().shape
            and np.array_equal(x.total_action(), y.total_action()))


def load_document(doc, defs: Definitions | None = None) -> Definitions:
    """Parse one definition document into ``defs`` (created if absent)."""
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise InputError(f"not a {FORMAT} document")
    if doc.get("version") != VERSION:
        raise InputError(f"unsupported format version {doc.get('version')!r}")
    f = parse_field(doc.get("field", ""))
    if defs is None:
        defs = Definitions(f)
    elif defs.field != f:
        raise FieldMismatch(f"field {f} does not match {defs.field}")
    objs = doc.get("objects")
    if not isinstance(objs, list):
        raise InputError("objects must be a list")
    pending = {}
    for obj in objs:
        if not isinstance(obj, dict) or obj.get("kind") not in ("algebra", "module") \
                or not isinstance(obj.get("name"), str):
            raise InputError("each object needs a kind (algebra or module) and a name")
        key = (obj["kind"], obj["name"])
        if key in pending:
            raise InputError(f"duplicate {key[0]} name {key[1]!r}")
        pending[key] = obj
    local: dict[tuple[str, str], object] = {}

    def build(key: tuple[str, str], stack: tuple = ()):
        if key in local:
            return local[key]
        if key in stack:
            raise InputError(f"cyclic factor reference through {key[1]!r}")
        obj = pending.get(key)
        if obj is None:
            table = defs.algebras if key[0] == "algebra" else defs.modules
            if key[1] in table:
                return table[key[1]]
            raise InputError(f"unknown {key[0]} {key[1]!r}")
        try:
            x = _build_object(f, obj, lambda kind, n: build((kind, n), stack + (key,)))
        except (KeyError, TypeError, IndexError, StructureError) as e:
            raise InputError(f"{key[0]} {key[1]!r}: {e}") from None
        local[key] = x
        return x

    for key in pending:
        build(key)
    # merge, reusing identical objects loaded earlier so identity checks keep working
    canon: dict[int, DGAlgebra] = {}
    for (kind, name), x in local.items():
        if kind == "algebra":
            old = defs.algebras.get(name)
            if old is not None and not _same_algebra(old, x):
                raise InputError(f"conflicting definitions of {name!r}")
            canon[id(x)] = old if old is not None else x
            defs.algebras.setdefault(name, x)
    for (kind, name), x in local.items():
        if kind == "module":
            a = canon.get(id(x.algebra), x.algebra)
            if a is not x.algebra:
                x = DGModule(a, x.complex, x.blocks, x.name, x.factors)
            old = defs.modules.get(name)
            if old is not None and not (old.algebra is x.algebra and _same_module(old, x)):
                raise InputError(f"conflicting definitions of {name!r}")
            defs.modules.setdefault(name, x)
    for (kind, name), obj in pending.items():
        if kind == "module" and obj.get("role"):
            m = defs.modules[name]
            raw = obj["role"] if isinstance(obj["role"], list) else [obj["role"]]
            for r in raw:
                role = ROLE_ALIASES.get(r) if isinstance(r, str) else None
                if role is None:
                    raise InputError(f"unknown role {r!r}")
                defs.roles[(m.algebra.name, role)] = name
    return defs


def _build_object(f: Field, obj: dict, resolve):
    facs = obj.get("factors")
    if obj["kind"] == "algebra":
        if facs is not None:
            x = _tensor_from(resolve, "algebra", facs)
            built = tensor_algebras(x[0], x[1])
            built.name = obj["name"]
            if "degrees" in obj and not _same_algebra(built, _algebra_from_object(f, obj)):
                raise InputError(f"algebra {obj['name']!r} disagrees with the tensor of its factors")
            return built
        return _algebra_from_object(f, obj)
    a = resolve("algebra", obj["algebra"])
    if facs is not None:
        x = _tensor_from(resolve, "module", facs)
        if a.factors != (x[0].algebra, x[1].algebra):
            raise InputError(f"module {obj['name']!r}: algebra is not the tensor of the factors' algebras")
        built = tensor_modules(x[0], x[1], a)
        built.name = obj["name"]
        if "degrees" in obj and not _same_module(built, _module_from_object(f, obj, a)):
            raise InputError(f"module {obj['name']!r} disagrees with the tensor of its factors")
        return built
    return _module_from_object(f, obj, a)


def _tensor_from(resolve, kind: str, facs) -> list:
    if not isinstance(facs, list) or len(facs) != 2 or not all(isinstance(n, str) for n in facs):
        raise InputError("factors must name exactly two objects")
    return [resolve(kind, n) for n in facs]


def load_definitions(*paths, defs: Definitions | None = None) -> Definitions:
    for p in paths:
        try:
            doc = json.loads(Path(p).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read {p}: {e}") from None
        except json.JSONDecodeError as e:
            raise InputError(f"{p}: invalid JSON: {e}") from None
        defs = load_document(doc, defs)
    return defs


# --------------------------------------------------------------------- export


def _algebra_object(a: DGAlgebra) -> dict:
    f = a.field
    obj = {"kind": "algebra", "name": a.name, "degrees": list(a.degrees),
           "differential": [[j, k, c] for k, j, c in _dense_to_sparse(f, a.diff_total)],
           "multiplication": [[i, j, k, c] for k, i, j, c in _dense_to_sparse(f, a.mult)],
           "unit": _dense_to_sparse(f, a.unit)}
    if a.locality is not None:
        loc = {"ideal": [_dense_to_sparse(f, v) for v in a.locality.ideal], "exponent": a.locality.exponent}
        if a.locality.factor_ideals:
            loc["factor_ideals"] = [[_dense_to_sparse(f, v) for v in grp] for grp in a.locality.factor_ideals]
        obj["locality"] = loc
    if a.factors:
        obj["factors"] = [x.name for x in a.factors]
    return obj


def _module_object(m: DGModule, roles: list[str] | None = None) -> dict:
    f = m.field
    degs = []
    for j in sorted(m.complex.dims):
        degs += [j] * m.dim(j)
    obj = {"kind": "module", "name": m.name, "algebra": m.algebra.name, "degrees": degs,
           "differential": [[j, k, c] for k, j, c in _dense_to_sparse(f, total_matrix(m.complex))],
           "action": [[b, j, k, c] for k, b, j, c in _dense_to_sparse(f, m.total_action())]}
    if roles:
        obj["role"] = roles[0] if len(roles) == 1 else sorted(roles)
    if m.factors:
        obj["factors"] = [x.name for x in m.factors]
    return obj


def export_document(objects: list, roles: dict | None = None) -> dict:
    """A definition document for algebras and modules, pulling in tensor factors first.

    ``roles`` maps ``id(module)`` to a list of role names.
    """
    roles = roles or {}
    seen: dict[int, dict] = {}
    order: list[dict] = []

    def add(x):
        if id(x) in seen:
            return
        for y in getattr(x, "factors", ()):
            add(y)
        if isinstance(x, DGModule):
            add(x.algebra)
            obj = _module_object(x, roles.get(id(x)))
        else:
            obj = _algebra_object(x)
        seen[id(x)] = obj
        order.append(obj)

    for x in objects:
        add(x)
    names = [(o["kind"], o["name"]) for o in order]
    if len(set(names)) != len(names):
        raise ValueError(f"object names must be unique, got {names}")
    f = objects[0].field if objects else GF(101)
    return {"format": FORMAT, "version": VERSION, "field": str(f), "objects": order}


def export_definitions(defs: Definitions) -> dict:
    roles: dict[int, list[str]] = {}
    for (_, r), n in defs.roles.items():
        roles.setdefault(id(defs.modules[n]), []).append(r)
    doc = export_document([*defs.algebras.values(), *defs.modules.values()], roles)
    doc["field"] = str(defs.field)
    return doc


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")


def catalog_document(name: str, f: Field | None = None) -> dict:
    cat = standard_catalog(f) if f is not None else standard_catalog()
    if name not in cat:
        raise InputError(f"unknown catalog entry {name!r}; choose from {sorted(cat)}")
    e = cat[name]
    mods, roles = [], {}
    for role, m in e.modules.items():
        if id(m) not in roles:
            mods.append(m)
        roles.setdefault(id(m), []).append(role)
    return export_document([e.algebra, *mods], roles)


# --------------------------------------------------------------------- reports


def _record(r: VerdictReport) -> dict:
    d = r.to_dict()
    d["anchor"] = ANCHORS.get(r.check, r.check)
    return d


def report_document(command: str, records: list[VerdictReport], extra: dict | None = None,
                    seconds: float | None = None) -> dict:
    doc = {"format": REPORT_FORMAT, "version": VERSION, "kernel_version": __version__, "command": command,
           "records": [_record(r) for r in records]}
    if extra:
        doc.update(extra)
    doc["seconds"] = seconds
    return doc


def exit_code(records: list[VerdictReport]) -> int:
    if any(r.fails for r in records):
        return EXIT_FAILS
    if any(r.inconclusive for r in records):
        return EXIT_INCONCLUSIVE
    return EXIT_HOLDS


def _emit(args, doc: dict) -> None:
    if getattr(args, "report", None):
        write_json(args.report, doc)
    else:
        json.dump(doc, sys.stdout, indent=1, ensure_ascii=False)
        sys.stdout.write("\n")


def _split(spec: str) -> tuple[str, str | None]:
    path, _, name = spec.partition("#")
    return path, (name or None)


def validation_records(defs: Definitions) -> list[VerdictReport]:
    out = []
    for a in defs.algebras.values():
        for r in (validate_dg_algebra(a), validate_locality(a) if a.locality else None):
            if r is not None:
                r.parameters["object"] = a.name
                out.append(r)
    for m in defs.modules.values():
        r = validate_dg_module(m)
        r.parameters["object"] = m.name
        out.append(r)
    return out


def _require_valid(defs: Definitions) -> list[VerdictReport]:
    return [r for r in validation_records(defs) if not r.holds]


# -------------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    t0 = time.perf_counter()
    defs = load_definitions(args.path)
    recs = validation_records(defs)
    _emit(args, report_document("validate", recs, seconds=time.perf_counter() - t0))
    for r in recs:
        if r.fails:
            print(f"{r.parameters['object']}: {r.reason}", file=sys.stderr)
    return EXIT_FAILS if any(r.fails for r in recs) else EXIT_HOLDS


def _module_roles(defs: Definitions) -> dict[int, set[str]]:
    out: dict[int, set[str]] = {}
    for (_, r), n in defs.roles.items():
        out.setdefault(id(defs.modules[n]), set()).add(r)
    return out


def _unique(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def cmd_tensor(args) -> int:
    da = load_definitions(args.path_a)
    db = load_definitions(args.path_b)
    if da.field != db.field:
        raise FieldMismatch(f"fields differ: {da.field} and {db.field}")
    bad = _require_valid(da) + _require_valid(db)
    if bad:
        raise _Invalid(bad)
    a1, a2 = da.algebra(), db.algebra()
    m1s = [m for m in da.modules.values() if m.algebra is a1]
    m2s = [m for m in db.modules.values() if m.algebra is a2]
    # keep the factors' names distinct in the combined file
    a2.name = _unique(a2.name, {a1.name})
    taken = {m.name for m in m1s}
    for m in m2s:
        m.name = _unique(m.name, taken)
        taken.add(m.name)
    r1, r2 = _module_roles(da), _module_roles(db)
    a = tensor_algebras(a1, a2)
    roles = {id(m): sorted(r1.get(id(m), ())) for m in m1s}
    roles.update({id(m): sorted(r2.get(id(m), ())) for m in m2s})
    mods = []
    for m1 in m1s:
        for m2 in m2s:
            t = tensor_modules(m1, m2, a)
            mods.append(t)
            # R⊗R, k⊗k and ω⊗ω play the same role over the tensor algebra
            roles[id(t)] = sorted(r1.get(id(m1), set()) & r2.get(id(m2), set()))
    doc = export_document([a, *m1s, *m2s, *mods], roles)
    write_json(args.out, doc)
    return EXIT_HOLDS


class _Invalid(Exception):
    def __init__(self, records):
        super().__init__("input failed validation")
        self.records = records


def cmd_semidualizing(args) -> int:
    t0 = time.perf_counter()
    apath, aname = _split(args.algebra)
    mpath, mname = _split(args.module)
    defs = load_definitions(apath)
    a = defs.algebra(aname)
    if mpath != apath:
        defs = load_definitions(mpath, defs=defs)
    if mname is None:
        cands = [m for m in defs.modules.values() if m.algebra is a]
        if len(cands) != 1:
            raise InputError("choose a module with PATH#NAME or PATH#ROLE")
        m = cands[0]
    else:
        m = defs.module(mname, a)
    if m.algebra is not a:
        raise InputError(f"module {m.name!r} is not over algebra {a.name!r}")
    bad = _require_valid(defs)
    if bad:
        raise _Invalid(bad)
    if a.locality is None:
        raise InputError("the algebra needs a locality certificate")
    r = is_semidualizing(a, m, args.degree_bound)
    r.seconds = time.perf_counter() - t0
    _emit(args, report_document("semidualizing", [r], seconds=r.seconds))
    return exit_code([r])


def parse_pairs(spec: str) -> list[tuple[str, str]]:
    """``"R:omega,k:R"`` or ``"{R,omega}^2"``; an empty string gives no pairs."""
    spec = spec.strip()
    if not spec:
        return []
    m = re.fullmatch(r"\{([^{}]*)\}\^2", spec)
    if m:
        items = [s.strip() for s in m.group(1).split(",") if s.strip()]
        return [(x, y) for x in items for y in items]
    out = []
    for part in spec.split(","):
        x, sep, y = part.partition(":")
        if not sep or not x.strip() or not y.strip():
            raise InputError(f"bad pair {part!r}; use LEFT:RIGHT")
        out.append((x.strip(), y.strip()))
    return out


def cmd_suite(args) -> int:
    t0 = time.perf_counter()
    (p1, n1), (p2, n2) = (_split(s) for s in args.algebras)
    d1 = load_definitions(p1)
    d2 = d1 if p2 == p1 else load_definitions(p2)
    if d1.field != d2.field:
        raise FieldMismatch(f"fields differ: {d1.field} and {d2.field}")
    a1, a2 = d1.algebra(n1), d2.algebra(n2)
    bad = _require_valid(d1) + ([] if d2 is d1 else _require_valid(d2))
    if bad:
        raise _Invalid(bad)
    for a in (a1, a2):
        if a.locality is None:
            raise InputError(f"algebra {a.name!r} needs a locality certificate")
    pairs = parse_pairs(args.pairs)
    cases = [(d1.module(x, a1), d2.module(y, a2)) for x, y in pairs]
    for m1, m2 in cases:
        if m1.algebra is not a1 or m2.algebra is not a2:
            raise InputError(f"pair ({m1.name}, {m2.name}) is not over ({a1.name}, {a2.name})")
    rep = theorem_suite(a1, a2, cases, args.degree_bound)
    doc = report_document("suite", rep.records, {"psi_images": rep.psi_images, "classes": rep.classes,
                                                 "all_hold": rep.all_hold},
                          seconds=time.perf_counter() - t0)
    _emit(args, doc)
    return exit_code(rep.records)


def cmd_catalog(args) -> int:
    f = parse_field(args.field) if args.field else None
    write_json(args.out, catalog_document(args.name, f))
    return EXIT_HOLDS


# ----------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgsemi", description="Exact DG algebra computations and verdicts.")
    p.add_argument("--version", action="version", version=f"dgsemi {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="run every validator on a definition file")
    s.add_argument("path")
    s.add_argument("--report")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("tensor", help="write the tensor product of two definition files")
    s.add_argument("path_a")
    s.add_argument("path_b")
    s.add_argument("out")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("semidualizing", help="decide whether a module is semidualizing")
    s.add_argument("algebra", help="PATH or PATH#NAME")
    s.add_argument("module", help="PATH, PATH#NAME or PATH#ROLE")
    s.add_argument("--degree-bound", type=int, required=True)
    s.add_argument("--report")
    s.set_defaults(func=cmd_semidualizing)

    s = sub.add_parser("suite", help="run the tensor-product theorem suite")
    s.add_argument("--algebras", nargs=2, required=True, metavar=("A1", "A2"))
    s.add_argument("--pairs", required=True, help='"R:omega,k:R" or "{R,omega}^2"')
    s.add_argument("--degree-bound", type=int, required=True)
    s.add_argument("--report")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("catalog", help="export a catalog entry (k, T2, T3, S3, K)")
    s.add_argument("name")
    s.add_argument("out")
    s.add_argument("--field", help="GF(p) or QQ; defaults to GF(101)")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FieldMismatch as e:
        print(f"field mismatch: {e}", file=sys.stderr)
        return EXIT_FAILS
    except _Invalid as e:
        for r in e.records:
            print(f"{r.parameters.get('object', '?')}: {r.check} {r.reason}", file=sys.stderr)
        return EXIT_FAILS


if __name__ == "__main__":
    sys.exit(main())
