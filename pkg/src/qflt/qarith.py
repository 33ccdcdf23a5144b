"""Reversible arithmetic blocks over GF(2^n) registers.

Every operation is a generator of Gate tuples acting on named n-bit
registers (RegisterRef), so builders can stream blocks into a Circuit
with per-block tags.  Conventions:

* ``xor_add``            dst ^= src                       (n CNOTs)
* ``square_inplace``     r <- r^2 mod m                   (CNOTs + wire swaps)
* ``square_inverse_inplace``  exact gate-wise inverse of square_inplace
* ``mulx_inplace``       r <- r*x mod m                   (swaps + tap CNOTs)
* ``modmult``            dst ^= a*b mod m                 (n^2 Toffolis)

modmult uses the shift-and-add schedule with an in-place running product
b*x^i mod m, but the cyclic shift is virtual: instead of rotating wires,
round i addresses logical bit j of the running product at physical wire
(j - i) mod n.  Only the reduction CNOTs are real gates, so the block
costs exactly n^2 Toffolis plus 2*(n-1)*(weight(m)-2) CNOTs and leaves
both inputs restored, with no swaps and no ancillas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .circuit import Gate, CNOT, SWAP, TOFFOLI
from .gf2x import FieldSpec
from .linsynth import squaring_matrix, synth_cnot


@dataclass(frozen=True)
class RegisterRef:
    """A named contiguous window of circuit wires."""

    name: str
    start: int
    len: int

    def __post_init__(self):
        if self.len <= 0:
            raise ValueError(f"register {self.name!r} must have positive length")
        if self.start < 0:
            raise ValueError(f"register {self.name!r} has negative start")

    def wire(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(f"bit {i} out of range for register {self.name!r}")
        return self.start + i

    def overlaps(self, other: "RegisterRef") -> bool:
        return self.start < other.start + other.len and other.start < self.start + self.len


def _require_field_register(reg: RegisterRef, spec: FieldSpec, role: str) -> None:
    if reg.len != spec.n:
        raise ValueError(
            f"{role} register {reg.name!r} has {reg.len} bits, field needs {spec.n}")


def _require_disjoint(*regs: RegisterRef) -> None:
    for i, a in enumerate(regs):
        for b in regs[i + 1:]:
            if a.overlaps(b):
                raise ValueError(f"registers {a.name!r} and {b.name!r} overlap")


def xor_add(src: RegisterRef, dst: RegisterRef, tag: str | None = None) -> Iterator[Gate]:
    """dst ^= src, bitwise."""
    if src.len != dst.len:
        raise ValueError("xor_add needs equal-length registers")
    _require_disjoint(src, dst)
    for i in range(src.len):
        yield Gate(CNOT, (src.wire(i), dst.wire(i)), tag)


def _relabel_swaps(relabel: list[int]) -> list[tuple[int, int]]:
    """Swap sequence realising ``out[relabel[i]] = in[i]`` on physical wires."""
    swaps: list[tuple[int, int]] = []
    seen = [False] * len(relabel)
    for start in range(len(relabel)):
        if seen[start] or relabel[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = relabel[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = relabel[nxt]
        for j in range(len(cycle) - 2, -1, -1):
            swaps.append((cycle[j], cycle[j + 1]))
    return swaps


@lru_cache(maxsize=None)
def _square_template(spec: FieldSpec) -> tuple[tuple[int, tuple[int, int]], ...]:
    """Gate template (on wires 0..n-1) mapping r to r^2 mod m in place."""
    synth = synth_cnot(squaring_matrix(spec))
    ops: list[tuple[int, tuple[int, int]]] = []
    for gate in synth.gates():
        ops.append((CNOT, gate.qubits))
    for pair in _relabel_swaps(synth.relabel):
        ops.append((SWAP, pair))
    return tuple(ops)


def square_cnot_count(spec: FieldSpec) -> int:
    """CNOTs in one in-place squaring block for this field."""
    return sum(1 for kind, _ in _square_template(spec) if kind == CNOT)


def square_inplace(reg: RegisterRef, spec: FieldSpec, tag: str | None = None) -> Iterator[Gate]:
    """reg <- reg^2 mod m, in place (CNOTs plus wire swaps, no Toffolis)."""
    _require_field_register(reg, spec, "squaring")
    for kind, (a, b) in _square_template(spec):
        yield Gate(kind, (reg.wire(a), reg.wire(b)), tag)


def square_inverse_inplace(reg: RegisterRef, spec: FieldSpec,
                           tag: str | None = None) -> Iterator[Gate]:
    """reg <- sqrt(reg) mod m: exact gate-wise inverse of square_inplace."""
    _require_field_register(reg, spec, "squaring")
    for kind, (a, b) in reversed(_square_template(spec)):
        yield Gate(kind, (reg.wire(a), reg.wire(b)), tag)


def _reduction_taps(spec: FieldSpec) -> list[int]:
    """Exponents of the modulus strictly between 0 and n."""
    return [e for e in spec.modulus.exponents() if 0 < e < spec.n]


def mulx_inplace(reg: RegisterRef, spec: FieldSpec, tag: str | None = None) -> Iterator[Gate]:
    """reg <- reg*x mod m: rotate wires up by one, then reduction CNOTs.

    After the rotation the old top coefficient sits on wire 0, so the
    reduction is a fan-out of wire 0 into the interior taps of m.
    """
    _require_field_register(reg, spec, "mulx")
    for k in range(1, reg.len):
        yield Gate(SWAP, (reg.wire(0), reg.wire(k)), tag)
    for e in _reduction_taps(spec):
        yield Gate(CNOT, (reg.wire(0), reg.wire(e)), tag)


def modmult(a: RegisterRef, b: RegisterRef, dst: RegisterRef, spec: FieldSpec,
            tag: str | None = None, anchor: int = 0) -> Iterator[Gate]:
    """dst ^= a*b mod m; a and b are restored bit-for-bit.

    Round i adds a_i * (b*x^i mod m) into dst with n Toffolis; between
    rounds the running product advances by one virtual shift, costing
    only the reduction CNOTs.  After the last round the same CNOT steps
    are replayed in reverse to walk the running product back to b.

    ``anchor`` rotates the (commuting) product-bit order inside every
    round so that the first Toffoli of the block touches b's wire
    ``anchor``.  Builders point it at the wire holding the deepest
    T-layer so far, which pins the block's first T-layer to one past the
    running maximum and keeps the T-schedule of the whole block a fixed
    function of that maximum, independent of how earlier blocks shaped
    the per-wire T-layer profile.
    """
    n = spec.n
    for role, reg in (("multiplicand", a), ("multiplier", b), ("product", dst)):
        _require_field_register(reg, spec, role)
    _require_disjoint(a, b, dst)
    if not 0 <= anchor < n:
        raise ValueError(f"anchor {anchor} out of range for width {n}")
    taps = _reduction_taps(spec)

    def shift_cnots(s: int) -> list[tuple[int, int]]:
        control = b.wire((0 - s) % n)
        return [(control, b.wire((e - s) % n)) for e in taps]

    for i in range(n):
        actl = a.wire(i)
        for d in range(n):
            j = (anchor + d) % n
            yield Gate(TOFFOLI, (actl, b.wire((j - i) % n), dst.wire(j)), tag)
        if i < n - 1:
            for pair in shift_cnots(i + 1):
                yield Gate(CNOT, pair, tag)
    for s in range(n - 1, 0, -1):
        for pair in shift_cnots(s):
            yield Gate(CNOT, pair, tag)
