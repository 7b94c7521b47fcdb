"""
Integration tests for the claim registry and the suite runner.
"""

import pytest

from hmi.errors import UnknownClaim
from hmi.services.verifier.registry import CLAIM_IDS, build_registry, claim_ids
from hmi.services.verifier.suite import resolve_ids, run_suite

FAST_CLAIMS = ["D6", "D7", "D12", "D13", "Z3", "Z4", "Z14", "S3"]


@pytest.fixture(scope="module")
def registry(catalog):
    return build_registry(catalog)


def test_registry_order_and_ids(registry):
    assert tuple(registry) == CLAIM_IDS
    assert claim_ids() == list(CLAIM_IDS)
    assert len(CLAIM_IDS) == len(set(CLAIM_IDS)) == 47


def test_every_claim_has_an_anchor(registry):
    for cid, claim in registry.items():
        assert claim.id == cid
        assert claim.anchor, cid
        for part in claim.parts:
            assert part.id.startswith(f"{cid}."), part.id
            assert not part.parts


def test_negated_claims_use_one_interval(registry):
    def walk(claim):
        yield claim
        for part in claim.parts:
            yield from walk(part)

    for claim in registry.values():
        for c in walk(claim):
            if c.negate and c.kind not in ("LIMIT", "ROOT_COUNT", "ROOT_LOCATE"):
                assert len(c.domain) <= 1, c.id


def test_resolve_ids():
    assert resolve_ids("all") == list(CLAIM_IDS)
    assert resolve_ids(["D2", "D1"]) == ["D1", "D2"]
    assert resolve_ids("S3") == ["S3"]
    assert resolve_ids([]) == []
    with pytest.raises(UnknownClaim) as exc:
        resolve_ids(["D1", "NOPE"])
    assert exc.value.details == {"unknown": ["NOPE"]}


def test_empty_selection_passes(catalog):
    report = run_suite([], catalog=catalog)
    assert report.status == "pass"
    assert report.total == 0
    assert report.claims == []


@pytest.mark.parametrize("cid", FAST_CLAIMS)
def test_fast_claims_pass(cid, catalog, settings):
    report = run_suite([cid], settings=settings, workers=1, catalog=catalog)
    assert report.total == 1
    claim = report.claims[0]
    assert claim.claim_id == cid
    assert claim.status == "pass", claim.notes
    assert claim.paper_ref


def test_suite_counts(catalog, settings):
    report = run_suite(["D12", "D7"], settings=settings, catalog=catalog)
    assert [r.claim_id for r in report.claims] == ["D7", "D12"]
    assert report.passed + report.failed + report.inconclusive == report.total == 2
    assert report.disclaimer.endswith("not a proof")


@pytest.mark.slow
def test_full_suite_passes(catalog, settings):
    report = run_suite("all", settings=settings, catalog=catalog)
    failing = {r.claim_id: r.notes for r in report.claims if r.status != "pass"}
    assert failing == {}
    assert report.status == "pass"
    assert report.total == len(CLAIM_IDS)
