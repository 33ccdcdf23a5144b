"""In-place CNOT synthesis for invertible GF(2) linear maps.

The squaring map of GF(2^n) is linear over GF(2), so it runs on a quantum
register as a CNOT-only block.  Synthesis factors the matrix by Gaussian
elimination into elementary row additions (one CNOT each) and a final
permutation that is realized as a cost-free relabeling.
"""

from __future__ import annotations

from .circuit import CNOT, Circuit
from .gf2x import FieldSpec, _polymod


class GF2Matrix:
    """Square bit matrix over GF(2); rows are stored as integer bit masks."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows) -> None:
        rows = list(rows)
        if n < 1 or len(rows) != n:
            raise ValueError("matrix must be square with at least one row")
        mask = (1 << n) - 1
        for r in rows:
            if r < 0 or r > mask:
                raise ValueError("row mask out of range")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def from_lists(cls, entries) -> "GF2Matrix":
        rows = []
        for row in entries:
            mask = 0
            for j, bit in enumerate(row):
                if bit:
                    mask |= 1 << j
            rows.append(mask)
        return cls(len(rows), rows)

    def bit(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.bit(i, j) for j in range(self.n)] for i in range(self.n)]

    def column(self, j: int) -> int:
        mask = 0
        for i in range(self.n):
            mask |= self.bit(i, j) << i
        return mask

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product over GF(2); v and result are bit masks."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= ((row & v).bit_count() & 1) << i
        return out

    def is_invertible(self) -> bool:
        rows = list(self.rows)
        used = [False] * self.n
        for col in range(self.n):
            bit = 1 << col
            pivot = next((i for i in range(self.n)
                          if not used[i] and rows[i] & bit), None)
            if pivot is None:
                return False
            used[pivot] = True
            for i in range(self.n):
                if i != pivot and not used[i] and rows[i] & bit:
                    rows[i] ^= rows[pivot]
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __repr__(self) -> str:
        return f"GF2Matrix({self.n}x{self.n})"


def squaring_matrix(spec: FieldSpec) -> GF2Matrix:
    """Matrix of the Frobenius squaring map: column j is x^(2j) mod m(x)."""
    n = spec.n
    m = spec.modulus.bits
    rows = [0] * n
    for j in range(n):
        col = _polymod(1 << (2 * j), m)
        for i in range(n):
            if (col >> i) & 1:
                rows[i] |= 1 << j
    return GF2Matrix(n, rows)


def synth_cnot(mat: GF2Matrix) -> Circuit:
    """CNOT circuit plus relabel realizing basis map v -> mat*v.

    Gaussian elimination with deterministic pivoting (the diagonal row when
    available, otherwise the lowest-index unused row) reduces the matrix to
    a permutation without physical row swaps: forward elimination first,
    then back-substitution.  Each elementary row addition row_t ^= row_c
    becomes one CNOT; the leftover permutation becomes the relabeling.
    At most n^2 - n CNOTs are emitted.
    """
    n = mat.n
    rows = list(mat.rows)
    used = [False] * n
    adds: list[tuple[int, int]] = []  # (target_row, control_row), in elimination order

    for col in range(n):
        bit = 1 << col
        if not used[col] and rows[col] & bit:
            pivot = col
        else:
            pivot = next((i for i in range(n) if not used[i] and rows[i] & bit), None)
            if pivot is None:
                raise ValueError("matrix is singular over GF(2)")
        used[pivot] = True
        for i in range(n):
            if i != pivot and not used[i] and rows[i] & bit:
                rows[i] ^= rows[pivot]
                adds.append((i, pivot))

    pivot_of_col = [0] * n
    for i in range(n):
        pivot_of_col[(rows[i] & -rows[i]).bit_length() - 1] = i
    for col in range(n - 1, -1, -1):
        bit = 1 << col
        pivot = pivot_of_col[col]
        for i in range(n):
            if i != pivot and rows[i] & bit:
                rows[i] ^= rows[pivot]
                adds.append((i, pivot))

    # Remaining matrix is a permutation: row i equals e_{sigma(i)}.  The
    # recorded additions R1..Rk satisfy mat = R1 R2 ... Rk Q, so the gate
    # order is the additions reversed, conjugated into pre-permutation wire
    # numbering, and Q itself becomes the readout relabel.
    sigma = [rows[i].bit_length() - 1 for i in range(n)]
    relabel = [0] * n
    for i in range(n):
        relabel[sigma[i]] = i
    circuit = Circuit(n, relabel=relabel)
    for target, control in reversed(adds):
        circuit.append(CNOT, (sigma[control], sigma[target]))
    return circuit
