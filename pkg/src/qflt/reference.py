"""Bundled reference dataset of previously reported resource counts.

Each row pairs the register-reuse schedule ("prev") with the
reduced-depth schedule ("this") at one field size, as previously
reported for the same eight binary fields this package bundles.  The
numbers come from a different gate-level toolchain, so only their signs
and structural deltas are asserted anywhere; magnitudes are reported
for orientation.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceRow:
    """One reference comparison row (prev = register-reuse baseline)."""

    n: int
    width_prev: int
    width_this: int
    cnot_prev: int
    cnot_this: int
    depth_prev: int
    depth_this: int


_ROWS = (
    ReferenceRow(8, 73, 89, 1856, 1804, 810, 805),
    ReferenceRow(16, 209, 257, 10014, 9966, 2565, 2561),
    ReferenceRow(127, 2922, 3684, 1074196, 1073434, 31267, 31237),
    ReferenceRow(163, 3098, 4239, 1484366, 1483225, 53730, 53718),
    ReferenceRow(233, 4894, 6525, 3306274, 3304643, 58999, 58915),
    ReferenceRow(283, 6510, 8774, 5431582, 5429318, 161071, 161057),
    ReferenceRow(409, 9408, 12680, 11148086, 11144814, 111151, 111123),
    ReferenceRow(571, 15418, 20557, 25778322, 25773183, 200641, 200217),
)

TABLE: dict[int, ReferenceRow] = {row.n: row for row in _ROWS}


def get_reference(n: int) -> ReferenceRow | None:
    """Reference row for field size n, or None when not covered."""
    return TABLE.get(n)
