"""Shared fixtures and the acceptance-criteria report.

Building and analyzing the large bundled fields dominates the suite's
runtime, so every (field, variant) pair is summarized exactly once per
session: the circuit is built, block-audited, decomposed-analyzed, and
simulated against the classical oracle, then dropped.  Tests consume the
cached summary instead of rebuilding.

Tests marked ``criterion(k)`` feed a per-criterion pass/fail table that is
printed at the end of the run.
"""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from qflt import analyze, block_counts, build, load_registry, verify_variant
from qflt.circuit import ResourceReport
from qflt.gf2x import FieldSpec
from qflt.pipeline import VerificationResult

SEED = 20260814
SAMPLES = 32

CRITERIA = {
    1: "exhaustive inversion equals the EEA oracle (n=8,16; all variants)",
    2: "sampled inversion equals the EEA oracle (large fields, seeded)",
    3: "plan properties hold for every n in [2, 10000]",
    4: "block accounting: SQUARE_INV / MULT / SQUARE per bundled field",
    5: "resource signs and T equalities on decomposed circuits",
    6: "linear synthesis matches matrix action within n^2 CNOTs",
    7: "squaring circuit matches squaremod on every bundled field",
    8: "decomposed Toffoli: ideal unitary, 7 T + 6 CNOT + 2 H",
    9: "depth analyzer equals brute-force longest path",
    10: "uncompute clears ancillas, keeps input, depth <= 2x + 1",
    11: "modmult emits n^2 Toffolis and 2(n-1)(weight-2) CNOTs",
}


@dataclass(frozen=True)
class VariantSummary:
    """One built variant: structure, decomposed resources, oracle verdict."""

    width: int
    blocks: dict
    decomposed: ResourceReport
    verify: VerificationResult


@pytest.fixture(scope="session")
def registry() -> list[FieldSpec]:
    return load_registry()


@pytest.fixture(scope="session")
def summarize():
    """summarize(spec, variant) -> VariantSummary, computed once per pair."""
    cache: dict[tuple[int, str], VariantSummary] = {}

    def get(spec: FieldSpec, variant: str) -> VariantSummary:
        key = (spec.n, variant)
        if key not in cache:
            c = build(spec, variant)
            if spec.n <= 16:
                verdict = verify_variant(spec, variant, "exhaustive", circuit=c)
            else:
                verdict = verify_variant(spec, variant, "sample",
                                         samples=SAMPLES, seed=SEED, circuit=c)
            cache[key] = VariantSummary(
                width=c.width,
                blocks=block_counts(c),
                decomposed=analyze(c, decompose=True),
                verify=verdict,
            )
        return cache[key]

    return get


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num): acceptance criterion exercised by this test")
    config._criteria_results = {}


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        num = marker.args[0]
        results = item.config._criteria_results
        if report.when == "call":
            results[num] = results.get(num, True) and report.passed
        elif report.failed or report.skipped:
            results[num] = False
    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criteria_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        if num in results:
            status = "PASS" if results[num] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(
            f"criterion {num:2d}: {status} - {CRITERIA[num]}")
