"""JSON instance files: a registry of named objects that reference each other by id.

Objects are built lazily on first use, so one broken entry only affects the
checks that touch it.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from gckit import boolalg, finring, finsem, groupoid, sheaf, skew
from gckit.errors import GckitError, ParseError

KINDS = ("ring", "semigroup", "groupoid", "sheaf", "spectral_action", "boolalg")
PACKS = ("all", "corrupt")


def pack_path(name):
    return resources.files("gckit") / "packs" / f"{name}.json"


def resolve_path(path):
    """A filesystem path, or `pack:<name>` for a shipped pack.

    A missing file whose name matches a shipped pack falls back to that pack.
    """
    if path.startswith("pack:"):
        name = path[5:]
        if name not in PACKS:
            raise ParseError(f"unknown pack {name!r}")
        return pack_path(name)
    p = Path(path)
    if not p.exists() and p.suffix == ".json" and p.stem in PACKS:
        return pack_path(p.stem)
    return p


def load(path) -> "Registry":
    p = resolve_path(str(path))
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    return Registry(doc)


# kind names accepted as synonyms of the registry kinds
ALIASES = {"inverse_semigroup": "semigroup"}


class Registry:
    def __init__(self, doc):
        if isinstance(doc, dict) and "objects" not in doc and "kind" in doc:
            doc = {"objects": [dict(doc, id=doc.get("id", "main"))]}
        if not isinstance(doc, dict) or not isinstance(doc.get("objects"), list):
            raise ParseError('expected {"objects": [...]}')
        self.entries = {}
        for entry in doc["objects"]:
            if not isinstance(entry, dict) or "id" not in entry or "kind" not in entry:
                raise ParseError(f"object without id/kind: {entry!r}")
            entry = dict(entry, kind=ALIASES.get(entry["kind"], entry["kind"]))
            if entry["kind"] not in KINDS:
                raise ParseError(f"unknown kind {entry['kind']!r} for {entry['id']!r}")
            if entry["id"] in self.entries:
                raise ParseError(f"duplicate id {entry['id']!r}")
            self.entries[entry["id"]] = entry
        self._cache = {}

    def ids(self, kind=None):
        return sorted(i for i, s in self.entries.items() if kind is None or s["kind"] == kind)

    def kind(self, oid):
        return self.entry(oid)["kind"]

    def entry(self, oid):
        if oid not in self.entries:
            raise ParseError(f"unknown object id {oid!r}")
        return self.entries[oid]

    def get(self, oid, kind=None):
        entry = self.entry(oid)
        if kind is not None and entry["kind"] != kind:
            raise ParseError(f"{oid!r} is a {entry['kind']}, expected {kind}")
        if oid not in self._cache:
            try:
                self._cache[oid] = ("ok", BUILDERS[entry["kind"]](self, entry))
            except (GckitError, AssertionError, ValueError) as exc:
                self._cache[oid] = ("err", exc)
            except (KeyError, TypeError, IndexError) as exc:
                self._cache[oid] = ("err", ParseError(f"{oid}: malformed entry ({exc!r})"))
        status, val = self._cache[oid]
        if status == "err":
            raise val
        return val


# ---------------------------------------------------------------- builders

def _ring(reg, s):
    ctor = s.get("ctor", "tables")
    if ctor == "zn":
        return finring.zn(s["n"])
    if ctor == "null":
        return finring.null_ring(s["n"])
    if ctor == "product":
        return finring.product(*[reg.get(f, "ring") for f in s["factors"]])
    if ctor == "functions":
        return finring.functions(s["k"], reg.get(s["ring"], "ring"))
    if ctor == "matrix":
        return finring.matrix_ring(s["p"], s["dim"], upper=s.get("upper", False))
    if ctor == "field4":
        return finring.field4()
    if ctor == "dual":
        return finring.dual_numbers(s["p"])
    if ctor == "tables":
        return finring.FiniteRing(s["add"], s["mul"], zero=s.get("zero"), labels=s.get("labels"),
                                  name=s["id"])
    raise ParseError(f"unknown ring constructor {ctor!r}")


def _semigroup(reg, s):
    ctor = s.get("ctor", "tables")
    if ctor == "symmetric_inverse_monoid":
        return finsem.symmetric_inverse_monoid(s["n"])
    if ctor == "cyclic_group":
        return finsem.cyclic_group(s["k"])
    if ctor == "chain_semilattice":
        return finsem.chain_semilattice(s["k"])
    if ctor == "tables":
        return finsem.build(s["mul"], labels=s.get("labels"))
    raise ParseError(f"unknown semigroup constructor {ctor!r}")


def _groupoid(reg, s):
    ctor = s.get("ctor", "tables")
    if ctor == "units":
        return groupoid.units(s["n"])
    if ctor == "pair":
        return groupoid.pair(s["n"])
    if ctor == "cyclic":
        return groupoid.cyclic(s["k"])
    if ctor == "group":
        return groupoid.group(reg.get(s["group"], "semigroup"))
    if ctor == "tables":
        comp = {(int(b), int(c)): int(bc) for b, c, bc in s["comp"]}
        return groupoid.FiniteGroupoid(s["n_objects"], s["d"], s["r"], comp, labels=s.get("labels"))
    raise ParseError(f"unknown groupoid constructor {ctor!r}")


def _sheaf(reg, s):
    G = reg.get(s["base"], "groupoid")
    if s.get("ctor") == "constant":
        return sheaf.constant_sheaf(G, reg.get(s["ring"], "ring"))
    stalks = [reg.get(r, "ring") for r in s["stalks"]]
    return sheaf.GSheafOfRings(G, stalks, s["act"])


def _action(reg, s):
    S = reg.get(s["S"], "semigroup")
    A = reg.get(s["A"], "ring")
    ctor = s.get("ctor", "tables")
    if ctor == "trivial":
        return skew.trivial_action(S, A)
    if ctor == "group":
        return skew.group_action(S, A, s["maps"])
    if ctor == "tables":
        units = s.get("units")
        return skew.SpectralAction(S, A, s["D"], s["alpha"], units=units)
    raise ParseError(f"unknown action constructor {ctor!r}")


def _boolalg(reg, s):
    ctor = s.get("ctor", "free")
    if ctor == "free":
        return boolalg.free(s["atoms"])
    if ctor == "central_idempotents":
        return boolalg.from_central_idempotents(reg.get(s["ring"], "ring"))
    raise ParseError(f"unknown Boolean algebra constructor {ctor!r}")


BUILDERS = {"ring": _ring, "semigroup": _semigroup, "groupoid": _groupoid, "sheaf": _sheaf,
            "spectral_action": _action, "boolalg": _boolalg}
