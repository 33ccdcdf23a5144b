"""Verification workflow and resource-comparison pipeline."""

import pytest

from qflt.circuit import X, analyze
from qflt.flt import build, plan
from qflt.pipeline import (
    COMPARISON_COLUMNS, DELTA_COLUMNS, MAX_REPORTED_FAILURES,
    compare_field, compare_fields, comparison_csv, comparison_table,
    deltas_csv, verify_variant,
)


@pytest.fixture(scope="module")
def gf8(registry):
    return registry[0]


@pytest.fixture(scope="module")
def gf16(registry):
    return registry[1]


def test_verify_mode_validation(gf8, registry):
    with pytest.raises(ValueError):
        verify_variant(gf8, "waterfall", mode="sampled")
    with pytest.raises(ValueError):
        verify_variant(registry[2], "waterfall", mode="exhaustive")
    with pytest.raises(ValueError):
        verify_variant(gf8, "waterfall", mode="sample", samples=0)
    with pytest.raises(ValueError):
        verify_variant(gf8, "waterfall", mode="sample", samples=256)


def test_verify_exhaustive_result_shape(gf8):
    res = verify_variant(gf8, "waterfall")
    assert res.ok
    assert (res.total, res.passed) == (255, 255)
    assert (res.field, res.n, res.variant, res.mode) == (
        "GF8", 8, "waterfall", "exhaustive")
    assert res.failures == ()
    d = res.as_dict()
    assert d["ok"] is True and d["failures"] == []


def test_verify_sample_is_seed_deterministic(gf16):
    a = verify_variant(gf16, "baseline", mode="sample", samples=8, seed=7)
    b = verify_variant(gf16, "baseline", mode="sample", samples=8, seed=7)
    assert a == b
    assert a.ok and a.total == 8


def test_verify_reports_failures_for_broken_circuit(gf8):
    c = build(gf8, "waterfall")
    start, _ = c.registers[c.meta["result"]]
    # Registers address the relabeled readout order, so flip the physical
    # wire that lands on the result's low bit.
    phys = c.relabel.index(start) if c.relabel else start
    c.append(X, (phys,))
    res = verify_variant(gf8, "waterfall", circuit=c)
    assert not res.ok
    assert res.passed < res.total == 255
    assert len(res.failures) == MAX_REPORTED_FAILURES
    first = res.failures[0]
    assert int(first.expected, 16) ^ int(first.got, 16) == 1
    assert res.as_dict()["failures"][0]["input"] == first.input


def test_verify_requires_result_metadata(gf8):
    c = build(gf8, "waterfall")
    del c.meta["result"]
    with pytest.raises(ValueError):
        verify_variant(gf8, "waterfall", circuit=c)


def test_compare_field_gf8(gf8):
    row = compare_field(gf8)
    assert (row.n, row.field) == (8, "GF8")
    assert (row.width_waterfall, row.width_baseline) == (64, 48)
    assert (row.cnot_waterfall, row.cnot_baseline) == (1804, 1856)
    assert row.cnot_delta == 52
    assert row.width_delta == -16
    assert row.depth_delta > 0
    assert row.t_count_delta == 0 and row.t_depth_delta == 0
    # Independently recompute one column from the analyzer.
    rpt = analyze(build(gf8, "waterfall"), decompose=True)
    assert rpt.cnot_count == row.cnot_waterfall
    assert rpt.t_depth == row.t_depth_waterfall
    p = plan(8)
    assert row.t_depth_waterfall == p.mult_count * (3 * 8 * 8 + 8)
    # Reference join.
    assert (row.cnot_prev, row.cnot_this) == (1856, 1804)
    assert (row.width_prev, row.width_this) == (73, 89)


def test_compare_field_without_reference(registry):
    from qflt.registry import resolve_field

    row = compare_field(resolve_field("9", registry=registry))
    assert row.n == 9
    assert row.cnot_prev is None and row.depth_this is None


def test_compare_fields_and_thread_env(gf8, gf16, monkeypatch):
    monkeypatch.setenv("QFLT_THREADS", "2")
    rows = compare_fields([gf16, gf8])
    assert [r.n for r in rows] == [16, 8]
    assert rows[1] == compare_field(gf8)
    monkeypatch.delenv("QFLT_THREADS")
    assert compare_fields([gf8], threads=1) == [rows[1]]
    assert compare_fields([]) == []


def test_csv_outputs(gf8):
    rows = [compare_field(gf8)]
    text = comparison_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0].split(",") == list(COMPARISON_COLUMNS)
    assert len(lines) == 2
    cells = dict(zip(COMPARISON_COLUMNS, lines[1].split(",")))
    assert cells["n"] == "8"
    assert cells["cnot_waterfall"] == "1804"
    assert cells["cnot_prev"] == "1856"
    assert comparison_csv(rows) == text  # byte-stable

    dtext = deltas_csv(rows)
    dlines = dtext.strip().splitlines()
    assert dlines[0].split(",") == list(DELTA_COLUMNS)
    dcells = dict(zip(DELTA_COLUMNS, dlines[1].split(",")))
    assert dcells["cnot_delta"] == "52"
    assert dcells["cnot_delta_ref"] == "52"
    assert dcells["depth_delta_ref"] == "5"


def test_table_rendering(gf8, registry):
    from qflt.registry import resolve_field

    rows = [compare_field(gf8), compare_field(resolve_field("9", registry=registry))]
    table = comparison_table(rows)
    assert "width w/b" in table
    assert "1804" in table and "1856" in table
    assert "-" in table.splitlines()[-1]  # missing reference rendered as dash
