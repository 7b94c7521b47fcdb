"""Suite runner: resolves claim ids and aggregates reports."""

import logging
import time
from typing import Optional, Sequence, Union

from hmi.config import Settings, get_settings
from hmi.errors import UnknownClaim
from hmi.schemas.claims import SuiteReport
from hmi.services.verifier.catalog import ExpressionCatalog
from hmi.services.verifier.checks import ClaimVerifier
from hmi.services.verifier.registry import CLAIM_IDS, build_registry

logger = logging.getLogger(__name__)


def resolve_ids(ids: Union[str, Sequence[str]]) -> list:
    """Registry-ordered ids for a selection; ``"all"`` selects everything."""
    if isinstance(ids, str):
        ids = list(CLAIM_IDS) if ids == "all" else [ids]
    unknown = [i for i in ids if i not in CLAIM_IDS]
    if unknown:
        raise UnknownClaim(unknown)
    wanted = set(ids)
    return [i for i in CLAIM_IDS if i in wanted]


def run_suite(
    ids: Union[str, Sequence[str]] = "all",
    settings: Optional[Settings] = None,
    workers: Optional[int] = None,
    catalog: Optional[ExpressionCatalog] = None,
) -> SuiteReport:
    """Run the selected claims in registry order."""
    selected = resolve_ids(ids)
    if not selected:
        return SuiteReport(status="pass", total=0, passed=0, failed=0, inconclusive=0, claims=[])

    settings = settings or get_settings()
    catalog = catalog or ExpressionCatalog()
    registry = build_registry(catalog)
    verifier = ClaimVerifier(catalog=catalog, settings=settings, workers=workers)

    reports = []
    started = time.perf_counter()
    for cid in selected:
        t0 = time.perf_counter()
        report = verifier.run_claim(registry[cid])
        logger.info(
            "%s %s (margin %.3e) in %.2fs",
            cid,
            report.status,
            report.min_margin,
            time.perf_counter() - t0,
        )
        reports.append(report)

    passed = sum(r.status == "pass" for r in reports)
    failed = sum(r.status == "fail" for r in reports)
    inconclusive = len(reports) - passed - failed
    logger.info(
        "suite: %d/%d passed in %.1fs", passed, len(reports), time.perf_counter() - started
    )
    return SuiteReport(
        status="pass" if passed == len(reports) else "fail",
        total=len(reports),
        passed=passed,
        failed=failed,
        inconclusive=inconclusive,
        claims=reports,
    )
