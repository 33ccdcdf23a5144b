"""Ground-truth execution of circuits.

run_basis / run_basis_batch apply classical reversible gate semantics
(X, CNOT, TOFFOLI, SWAP) to computational basis states.  The batch form
is bit-sliced: wire w carries an integer whose bit k is the value of that
wire in sample k, so one pass through the gate list simulates every
sample at once.  unitary_of builds the dense unitary of small circuits,
including the non-classical gates, for decomposition checks.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import (
    Circuit, KIND_NAMES,
    K_X, K_CNOT, K_TOFFOLI, K_SWAP, K_H, K_T, K_TDG, K_S, K_SDG,
)


def _reg_bounds(reg) -> tuple[int, int]:
    """Accept a RegisterRef-like object or a (start, length) pair."""
    start = getattr(reg, "start", None)
    if start is not None:
        return start, reg.len
    start, length = reg
    return start, length


class BasisState:
    """Computational basis state: one classical bit per wire."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("basis state bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BasisState is immutable")

    @classmethod
    def zeros(cls, width: int) -> "BasisState":
        return cls((0,) * width)

    def with_register(self, reg, value: int) -> "BasisState":
        """Copy of this state with a register's bits set from an integer."""
        start, length = _reg_bounds(reg)
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        bits = list(self.bits)
        for i in range(length):
            bits[start + i] = (value >> i) & 1
        return BasisState(bits)

    def register_value(self, reg) -> int:
        start, length = _reg_bounds(reg)
        value = 0
        for i in range(length):
            value |= self.bits[start + i] << i
        return value

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, BasisState):
            return self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return "BasisState(" + "".join(str(b) for b in self.bits) + ")"


def run_basis_batch(c: Circuit, masks, samples: int) -> list[int]:
    """Bit-sliced classical simulation of all samples in one pass.

    masks[w] holds wire w's input values, one bit per sample.  Returns the
    per-wire output masks with the readout relabel applied.
    """
    if len(masks) != c.width:
        raise ValueError(f"expected {c.width} wire masks, got {len(masks)}")
    state = [int(m) for m in masks]
    ones = (1 << samples) - 1
    kinds, qs = c._kinds, c._qs
    for i in range(len(kinds)):
        code = kinds[i]
        base = 3 * i
        if code == K_TOFFOLI:
            state[qs[base + 2]] ^= state[qs[base]] & state[qs[base + 1]]
        elif code == K_CNOT:
            state[qs[base + 1]] ^= state[qs[base]]
        elif code == K_SWAP:
            a, b = qs[base], qs[base + 1]
            state[a], state[b] = state[b], state[a]
        elif code == K_X:
            state[qs[base]] ^= ones
        else:
            raise ValueError(
                f"gate {KIND_NAMES[code]} is not classically simulable")
    out = [0] * c.width
    relabel = c.relabel
    for w in range(c.width):
        out[relabel[w]] = state[w]
    return out


def run_basis(c: Circuit, state: BasisState) -> BasisState:
    """Apply classical gate semantics in order, then the relabel permutation."""
    if len(state) != c.width:
        raise ValueError(f"state has {len(state)} bits, circuit width is {c.width}")
    return BasisState(run_basis_batch(c, state.bits, samples=1))


_SQRT_HALF = 1.0 / math.sqrt(2.0)
_PHASES = {
    K_T: np.exp(1j * math.pi / 4),
    K_TDG: np.exp(-1j * math.pi / 4),
    K_S: 1j,
    K_SDG: -1j,
}


def unitary_of(c: Circuit) -> np.ndarray:
    """Dense unitary of the circuit, relabel applied; width is capped at 12."""
    if c.width > 12:
        raise ValueError(f"unitary_of supports width <= 12, got {c.width}")
    size = 1 << c.width
    idx = np.arange(size)
    u = np.eye(size, dtype=np.complex128)
    kinds, qs = c._kinds, c._qs
    for i in range(len(kinds)):
        code = kinds[i]
        base = 3 * i
        if code == K_X:
            u = u[idx ^ (1 << qs[base])]
        elif code == K_CNOT:
            ctrl, tgt = qs[base], qs[base + 1]
            u = u[idx ^ (((idx >> ctrl) & 1) << tgt)]
        elif code == K_TOFFOLI:
            a, b, tgt = qs[base], qs[base + 1], qs[base + 2]
            u = u[idx ^ ((((idx >> a) & (idx >> b)) & 1) << tgt)]
        elif code == K_SWAP:
            a, b = qs[base], qs[base + 1]
            diff = ((idx >> a) ^ (idx >> b)) & 1
            u = u[idx ^ ((diff << a) | (diff << b))]
        elif code == K_H:
            q = qs[base]
            bit = 1 << q
            low = u[idx & ~bit]
            high = u[idx | bit]
            sign = 1.0 - 2.0 * ((idx >> q) & 1)
            u = (low + sign[:, None] * high) * _SQRT_HALF
        else:
            q = qs[base]
            phase = np.where((idx >> q) & 1, _PHASES[code], 1.0)
            u = phase[:, None] * u
    relabel = c.relabel
    if relabel != list(range(c.width)):
        permuted = np.zeros(size, dtype=np.int64)
        for w in range(c.width):
            permuted |= ((idx >> w) & 1) << relabel[w]
        inv = np.empty(size, dtype=np.int64)
        inv[permuted] = idx
        u = u[inv]
    return u
