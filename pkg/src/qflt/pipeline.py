"""Verification and comparison workflows shared by the service and CLI.

verify_variant simulates an inversion circuit on exhaustive (n <= 16) or
seeded-random basis inputs and checks every output register value against
the extended-Euclidean oracle.  compare_fields builds both schedules per
field, analyzes the Toffoli-decomposed circuits, and lines the numbers up
with the bundled reference dataset.
"""

from __future__ import annotations

import csv
import io
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .circuit import Circuit, analyze
from .flt import build, build_baseline, build_waterfall
from .gf2x import FieldSpec, inv_eea
from .reference import get_reference
from .revsim import run_basis_batch

MAX_REPORTED_FAILURES = 32

VERIFY_MODES = ("exhaustive", "sample")


@dataclass(frozen=True)
class VerificationFailure:
    """One mismatching input, all values as hex strings."""

    input: str
    expected: str
    got: str


@dataclass(frozen=True)
class VerificationResult:
    field: str
    n: int
    variant: str
    mode: str
    total: int
    passed: int
    failures: tuple[VerificationFailure, ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "variant": self.variant,
            "mode": self.mode,
            "total": self.total,
            "passed": self.passed,
            "ok": self.ok,
            "failures": [asdict(f) for f in self.failures],
        }


def _exhaustive_bit_masks(n: int) -> list[int]:
    """Per-bit input masks covering the values 1..2^n-1 in order.

    Bit s of mask v is bit v of the value s+1.  Built from the periodic
    bit pattern of each binary digit (2^v zeros then 2^v ones), shifted
    down one place to start the enumeration at 1 instead of 0.
    """
    total = 1 << n
    limit = (1 << (total - 1)) - 1
    masks = []
    for v in range(n):
        h = 1 << v
        pattern = ((1 << h) - 1) << h
        width = 2 * h
        while width < total:
            pattern |= pattern << width
            width *= 2
        masks.append((pattern >> 1) & limit)
    return masks


def _sample_values(n: int, samples: int, seed: int) -> list[int]:
    """Distinct seeded-random nonzero field elements."""
    space = (1 << n) - 1
    if not 1 <= samples <= space:
        raise ValueError(f"samples must be in [1, {space}] for n={n}")
    rng = random.Random(seed)
    values: list[int] = []
    seen: set[int] = set()
    while len(values) < samples:
        v = rng.randrange(1, 1 << n)
        if v not in seen:
            seen.add(v)
            values.append(v)
    return values


def _wire_masks(width: int, start: int, n: int, values: list[int]) -> list[int]:
    masks = [0] * width
    for v in range(n):
        m = 0
        for s, value in enumerate(values):
            m |= ((value >> v) & 1) << s
        masks[start + v] = m
    return masks


def _register_values(masks: list[int], start: int, n: int, count: int) -> list[int]:
    """Per-sample values of one register, unpacked from bit-sliced masks."""
    nbytes = (count + 7) // 8
    cols = [masks[start + i].to_bytes(nbytes, "little") for i in range(n)]
    out = []
    for s in range(count):
        byte, bit = s >> 3, s & 7
        value = 0
        for i in range(n):
            value |= ((cols[i][byte] >> bit) & 1) << i
        out.append(value)
    return out


def verify_variant(spec: FieldSpec, variant: str, mode: str = "exhaustive",
                   samples: int = 32, seed: int = 0,
                   circuit: Circuit | None = None) -> VerificationResult:
    """Simulate an inversion circuit and compare with the EEA oracle.

    At most MAX_REPORTED_FAILURES mismatches are retained individually;
    the passed/total figures always cover every input.
    """
    if mode not in VERIFY_MODES:
        raise ValueError(f"mode must be one of {VERIFY_MODES}, got {mode!r}")
    n = spec.n
    if mode == "exhaustive" and n > 16:
        raise ValueError("exhaustive verification restricted to n <= 16")
    c = circuit if circuit is not None else build(spec, variant)
    if "f0" not in c.registers:
        raise ValueError("circuit has no input register f0")
    result_name = c.meta.get("result")
    if result_name is None or result_name not in c.registers:
        raise ValueError("circuit does not declare a result register")
    in_start, _ = c.registers["f0"]
    out_start, out_len = c.registers[result_name]

    if mode == "exhaustive":
        count = (1 << n) - 1
        values = None
        masks = [0] * c.width
        for v, m in enumerate(_exhaustive_bit_masks(n)):
            masks[in_start + v] = m
    else:
        values = _sample_values(n, samples, seed)
        count = len(values)
        masks = _wire_masks(c.width, in_start, n, values)

    out_masks = run_basis_batch(c, masks, count)
    got = _register_values(out_masks, out_start, out_len, count)

    passed = 0
    failures: list[VerificationFailure] = []
    for s in range(count):
        value = s + 1 if values is None else values[s]
        expected = int(inv_eea(value, spec))
        if got[s] == expected:
            passed += 1
        elif len(failures) < MAX_REPORTED_FAILURES:
            failures.append(VerificationFailure(
                input=hex(value), expected=hex(expected), got=hex(got[s])))
    return VerificationResult(
        field=spec.name or str(n),
        n=n,
        variant=variant,
        mode=mode,
        total=count,
        passed=passed,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class ComparisonRow:
    """Both schedules measured on one field, plus reference values.

    Deltas are baseline minus waterfall; reference columns are None for
    field sizes the bundled dataset does not cover.
    """

    n: int
    field: str
    width_waterfall: int
    width_baseline: int
    cnot_waterfall: int
    cnot_baseline: int
    depth_waterfall: int
    depth_baseline: int
    t_count_waterfall: int
    t_count_baseline: int
    t_depth_waterfall: int
    t_depth_baseline: int
    cnot_delta: int
    depth_delta: int
    width_delta: int
    t_count_delta: int
    t_depth_delta: int
    width_prev: int | None
    width_this: int | None
    cnot_prev: int | None
    cnot_this: int | None
    depth_prev: int | None
    depth_this: int | None


def compare_field(spec: FieldSpec) -> ComparisonRow:
    """Build, decompose, and measure both schedules for one field."""
    wat = analyze(build_waterfall(spec), decompose=True)
    base = analyze(build_baseline(spec), decompose=True)
    ref = get_reference(spec.n)
    return ComparisonRow(
        n=spec.n,
        field=spec.name or str(spec.n),
        width_waterfall=wat.width,
        width_baseline=base.width,
        cnot_waterfall=wat.cnot_count,
        cnot_baseline=base.cnot_count,
        depth_waterfall=wat.overall_depth,
        depth_baseline=base.overall_depth,
        t_count_waterfall=wat.t_count,
        t_count_baseline=base.t_count,
        t_depth_waterfall=wat.t_depth,
        t_depth_baseline=base.t_depth,
        cnot_delta=base.cnot_count - wat.cnot_count,
        depth_delta=base.overall_depth - wat.overall_depth,
        width_delta=base.width - wat.width,
        t_count_delta=base.t_count - wat.t_count,
        t_depth_delta=base.t_depth - wat.t_depth,
        width_prev=ref.width_prev if ref else None,
        width_this=ref.width_this if ref else None,
        cnot_prev=ref.cnot_prev if ref else None,
        cnot_this=ref.cnot_this if ref else None,
        depth_prev=ref.depth_prev if ref else None,
        depth_this=ref.depth_this if ref else None,
    )


def _worker_count(requested: int | None, jobs: int) -> int:
    cap = os.environ.get("QFLT_THREADS")
    limit = requested or (int(cap) if cap else None) or (os.cpu_count() or 1)
    return max(1, min(limit, jobs))


def compare_fields(specs: list[FieldSpec], threads: int | None = None) -> list[ComparisonRow]:
    """compare_field over several fields, order-preserving, concurrent."""
    if not specs:
        return []
    workers = _worker_count(threads, len(specs))

    def guarded(spec: FieldSpec) -> ComparisonRow:
        try:
            return compare_field(spec)
        except Exception as exc:
            raise ValueError(
                f"comparison failed for field {spec.name or spec.n}: {exc}") from exc

    if workers == 1:
        return [guarded(spec) for spec in specs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(guarded, specs))


COMPARISON_COLUMNS = (
    "n", "field",
    "width_waterfall", "width_baseline",
    "cnot_waterfall", "cnot_baseline",
    "depth_waterfall", "depth_baseline",
    "t_count_waterfall", "t_count_baseline",
    "t_depth_waterfall", "t_depth_baseline",
    "cnot_delta", "depth_delta", "width_delta",
    "t_count_delta", "t_depth_delta",
    "width_prev", "width_this",
    "cnot_prev", "cnot_this",
    "depth_prev", "depth_this",
)

DELTA_COLUMNS = ("n", "cnot_delta", "depth_delta", "cnot_delta_ref", "depth_delta_ref")


def _csv_text(header: tuple[str, ...], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def comparison_csv(rows: list[ComparisonRow]) -> str:
    data = [[getattr(r, col) for col in COMPARISON_COLUMNS] for r in rows]
    return _csv_text(COMPARISON_COLUMNS, data)


def deltas_csv(rows: list[ComparisonRow]) -> str:
    """Plot-ready deltas (baseline - waterfall) against n."""
    data = []
    for r in rows:
        cnot_ref = r.cnot_prev - r.cnot_this if r.cnot_prev is not None else None
        depth_ref = r.depth_prev - r.depth_this if r.depth_prev is not None else None
        data.append([r.n, r.cnot_delta, r.depth_delta, cnot_ref, depth_ref])
    return _csv_text(DELTA_COLUMNS, data)


_TABLE_COLUMNS = (
    ("field", lambda r: r.field),
    ("n", lambda r: r.n),
    ("width w/b", lambda r: f"{r.width_waterfall}/{r.width_baseline}"),
    ("cnot w/b", lambda r: f"{r.cnot_waterfall}/{r.cnot_baseline}"),
    ("depth w/b", lambda r: f"{r.depth_waterfall}/{r.depth_baseline}"),
    ("t-count", lambda r: r.t_count_waterfall),
    ("t-depth", lambda r: r.t_depth_waterfall),
    ("d-cnot", lambda r: r.cnot_delta),
    ("d-depth", lambda r: r.depth_delta),
    ("ref cnot p/t", lambda r: "-" if r.cnot_prev is None
        else f"{r.cnot_prev}/{r.cnot_this}"),
    ("ref depth p/t", lambda r: "-" if r.depth_prev is None
        else f"{r.depth_prev}/{r.depth_this}"),
)


def comparison_table(rows: list[ComparisonRow]) -> str:
    """Aligned text table of measured numbers and reference values."""
    headers = [name for name, _ in _TABLE_COLUMNS]
    cells = [[str(get(r)) for _, get in _TABLE_COLUMNS] for r in rows]
    widths = [max(len(h), *(len(row[i]) for row in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(row))))
    return "\n".join(lines) + "\n"
