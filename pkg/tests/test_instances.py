import json

import pytest

from gckit import catalog, instances
from gckit.errors import NotAssociative, ParseError
from gckit.finring import find_isomorphism


def registry(*objs):
    return instances.Registry({"objects": list(objs)})


def test_shipped_pack_builds():
    reg = instances.load("pack:all")
    for oid in reg.ids():
        reg.get(oid)
    assert set(reg.entry(oid)["kind"] for oid in reg.ids()) == set(instances.KINDS)


def test_pack_sheaves_match_catalog():
    reg = instances.load("pack:all")
    for name, G, O in catalog.sheaf_grid():
        oid = name.replace("Z2/", "Zc2/") if name.startswith("Z2/") else name
        P = reg.get(oid, "sheaf")
        assert P.act == O.act
        for a, b in zip(P.stalks, O.stalks):
            assert (a.mul == b.mul).all() and (a.add == b.add).all()


def test_pack_actions_match_catalog():
    reg = instances.load("pack:all")
    for name, act in catalog.main_actions():
        assert reg.get(name, "spectral_action").alpha == act.alpha


def test_missing_pack_file_falls_back(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert instances.load("examples/all.json").ids() == instances.load("pack:all").ids()


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        instances.load(bad)
    with pytest.raises(ParseError):
        instances.load(tmp_path / "missing.json")
    with pytest.raises(ParseError):
        instances.load("pack:nope")
    with pytest.raises(ParseError):
        instances.Registry({"things": []})
    with pytest.raises(ParseError):
        registry({"id": "a", "kind": "vector_space"})
    with pytest.raises(ParseError):
        registry({"id": "a", "kind": "ring", "ctor": "zn", "n": 2}, {"id": "a", "kind": "ring"})


def test_lazy_errors_are_scoped():
    reg = registry({"id": "Z2", "kind": "ring", "ctor": "zn", "n": 2},
                   {"id": "broken", "kind": "ring", "ctor": "zn"},
                   {"id": "weird", "kind": "ring", "ctor": "quaternions"},
                   {"id": "s", "kind": "semigroup", "mul": [[0, 1, 0], [1, 0, 2], [0, 2, 1]]})
    assert reg.get("Z2").n == 2
    with pytest.raises(ParseError):
        reg.get("broken")
    with pytest.raises(ParseError):
        reg.get("weird")
    with pytest.raises(NotAssociative):
        reg.get("s")
    with pytest.raises(ParseError):
        reg.get("Z2", "semigroup")
    with pytest.raises(ParseError):
        reg.get("nothing")


def test_single_object_schema(tmp_path):
    p = tmp_path / "i2.json"
    p.write_text(json.dumps({"kind": "inverse_semigroup", "n": 2, "mul": [[0, 0], [0, 1]]}))
    reg = instances.load(p)
    assert reg.ids() == ["main"] and reg.get("main", "semigroup").n == 2


def test_table_constructors():
    reg = registry({"id": "Z2", "kind": "ring", "ctor": "zn", "n": 2},
                   {"id": "T", "kind": "ring", "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]]},
                   {"id": "G", "kind": "groupoid", "n_objects": 2, "d": [0, 1], "r": [0, 1],
                    "comp": [[0, 0, 0], [1, 1, 1]]},
                   {"id": "O", "kind": "sheaf", "base": "G", "stalks": ["Z2", "T"],
                    "act": [[0, 1], [0, 1]]})
    assert find_isomorphism(reg.get("T"), reg.get("Z2")) is not None
    assert reg.get("O").base.n_arrows == 2
