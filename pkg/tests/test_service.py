import pytest
from fastapi.testclient import TestClient

from cayleykit import __version__
from cayleykit.service import app

client = TestClient(app, raise_server_exceptions=False)


def post(path, **payload):
    return client.post(path, json=payload)


# ---------------------------------------------------------------------------
# Plumbing


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_registry_lists_builtin_groups():
    r = client.get("/registry")
    assert r.status_code == 200
    patterns = [g["pattern"] for g in r.json()["groups"]]
    assert "lamplighter" in patterns
    assert any(p.startswith("bs:") for p in patterns)
    assert any(p.startswith("zk:") for p in patterns)


def test_manifest():
    r = post("/manifest", expr="zn:1")
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "zn:1"
    assert body["classTag"] == "REG"
    assert body["timeClass"] == "pf-linear"
    assert {g["name"] for g in body["generators"]} == {"a"}


# ---------------------------------------------------------------------------
# Core operations


def test_nf():
    r = post("/nf", expr="zn:1", word="a a a'")
    assert r.status_code == 200
    body = r.json()
    assert body["word"] == "a"
    assert body["letters"] == ["a"]
    steps = body["steps"]
    assert steps["inputLength"] == 3
    assert steps["certified"] is True
    assert steps["total"] == sum(n for _, n in steps["parts"])
    labels = [label for label, _ in steps["parts"]]
    assert labels == ["a", "fetch-1", "a", "fetch-2", "a'", "fetch-3"]


def test_nf_empty_word_spellings():
    for word in ("eps", "", "  "):
        r = post("/nf", expr="lamplighter", word=word)
        assert r.status_code == 200
        assert r.json()["word"] == "# ↑ #"


def test_wp():
    assert post("/wp", expr="bs:1:2", word="t a t' a a").json() == \
        {"identity": False}
    assert post("/wp", expr="bs:1:2", word="t a t' a' a'").json() == \
        {"identity": True}


def test_mul():
    r = post("/mul", expr="zn:1", word="a a", gen="a'")
    assert r.status_code == 200
    assert r.json()["word"] == "a"
    r = post("/mul", expr="lamplighter", word="# ↑ #", gen="b")
    assert r.json()["word"] == "# b ↑ #"


def test_mul_rejects_non_generator():
    r = post("/mul", expr="zn:1", word="a", gen="z")
    assert r.status_code == 422
    assert r.json()["kind"] == "parse"


def test_mul_rejects_word_outside_language():
    r = post("/mul", expr="zn:1", word="a a'", gen="a")
    assert r.status_code == 422
    assert r.json()["kind"] == "membership"


def test_enum():
    r = post("/enum", expr="lamplighter", radius=1)
    assert r.status_code == 200
    body = r.json()
    assert body["count"] == 4
    assert body["truncated"] is False
    assert set(body["words"]) == {"# ↑ #", "a # ↑ #", "a' # ↑ #", "# b ↑ #"}


def test_enum_truncation():
    r = post("/enum", expr="zn:2", radius=5, maxWords=3)
    body = r.json()
    assert body["truncated"] is True
    assert body["count"] == 3


# ---------------------------------------------------------------------------
# Metrics endpoints


def test_htable_natural():
    r = post("/htable", expr="lamplighter", maxN=4)
    assert r.status_code == 200
    body = r.json()
    assert body["vanishes"] is True
    assert body["maxN"] == 4
    assert body["tsv"].startswith("n\th\n")


def test_htable_custom_alpha():
    alpha = {"a": "a", "a'": "a'", "b": "a", "#": "", "↑": ""}
    r = post("/htable", expr="lamplighter", alpha=alpha, maxN=4)
    body = r.json()
    assert body["vanishes"] is False
    assert [4, 2] in body["rows"]


def test_htable_unknown_alpha_name():
    r = post("/htable", expr="zn:1", alpha="tropical")
    assert r.status_code == 422
    assert r.json()["kind"] == "parse"


def test_qcheck():
    r = post("/qcheck", expr="zn:1", radius=4)
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["minimalC"] == pytest.approx(0.8)
    assert body["declaredC"] == pytest.approx(1.0)
    assert body["worst"] == {"word": "a a a a", "nfLength": 4, "distance": 4}
    assert body["growth"][0] == [0, 0]


def test_check_endpoint():
    r = post("/check", expr="zn:1", radius=3, samples=20)
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert body["failures"] == []
    assert body["rep"] == "zn:1" and body["oracle"] == "zn-1"


def test_bench_deterministic():
    payload = dict(expr="zn:1", lens=[2, 4, 8], seed=11)
    a, b = post("/bench", **payload).json(), post("/bench", **payload).json()
    assert a == b
    assert [row["len"] for row in a["rows"]] == [2, 4, 8]
    assert a["certified"] is True
    assert a["c2"] == pytest.approx(max(r["ratio"] for r in a["rows"]))


def test_bench_rejects_nonpositive_length():
    r = post("/bench", expr="zn:1", lens=[4, 0])
    assert r.status_code == 422
    assert r.json()["kind"] == "domain"


# ---------------------------------------------------------------------------
# Error envelope


def test_unknown_group_error_shape():
    r = post("/nf", expr="nope")
    assert r.status_code == 422
    body = r.json()
    assert body["kind"] == "parse"
    assert "unknown group" in body["message"]


def test_parse_error_carries_position():
    r = post("/nf", expr="dp(zn:1")
    assert r.status_code == 422
    body = r.json()
    assert body["kind"] == "parse"
    assert body["position"] == 7


def test_word_parse_error():
    r = post("/nf", expr="zn:1", word="a q")
    assert r.status_code == 422
    assert r.json()["kind"] == "parse"


def test_strict_uncertified_budget_maps_to_409():
    r = post("/nf", expr="bs:1:2", word="t a t'", strict=True)
    assert r.status_code == 409
    assert r.json()["kind"] == "budget"
    # without strict the same call succeeds, just uncertified
    ok = post("/nf", expr="bs:1:2", word="t a t'")
    assert ok.status_code == 200
    assert ok.json()["steps"]["certified"] is False


def test_validation_error_is_plain_422():
    r = post("/qcheck", expr="zn:1", radius=99)
    assert r.status_code == 422
    assert "kind" not in r.json()  # FastAPI validation, not a package error
