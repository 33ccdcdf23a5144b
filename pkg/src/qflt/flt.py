"""Inversion-circuit builders for GF(2^n) via Fermat's little theorem.

f^-1 = f^(2^n - 2) is produced by an addition chain on the exponents of
beta_k = f^(2^k - 1): Stage 1 doubles the chain (beta_1, beta_2, beta_4,
...) with k1 multiplications, Stage 2 stitches the binary expansion of
n-1 together with t-1 more, and Stage 3 squares once.  Three schedules
share that skeleton:

* waterfall -- every intermediate goes to a fresh n-qubit register, so
  nothing is ever uncomputed: k_max+1 registers, zero SQUARE_INV blocks.
  The accumulator finishes one register short of the top; a readout
  relabel exchanges it with f_k so the result always reads out in the
  last register.
* baseline  -- the register-reuse schedule this work is measured against:
  Stage 1 squares into a shared working register and walks it back with
  SQUARE_INV plus a second copy, paying gates to save k1 registers.
* naive     -- the textbook product f^2 * f^4 * ... * f^(2^(n-1)) with a
  register per partial product; kept for demonstration sizes (n <= 16).

Builders stamp every block with a tag (COPY#i, SQUARE#i, MULT#i,
SQUARE_INV#i) so block_counts can audit the schedule, and record the
output register in meta["result"].
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import (
    CNOT, Circuit, K_CNOT, K_SWAP, K_TOFFOLI, compose, inverse,
)
from .gf2x import FieldSpec
from .qarith import RegisterRef, modmult, square_inplace, square_inverse_inplace, xor_add

VARIANTS = ("waterfall", "baseline", "naive")


@dataclass(frozen=True)
class InversionPlan:
    """Addition-chain shape for inverting GF(2^n) elements."""

    n: int
    ks: tuple[int, ...]
    t: int
    k1: int
    k_max: int
    mult_count: int
    squaring_count: int


def plan(n: int) -> InversionPlan:
    """Decompose n-1 = sum(2^k for k in ks) and derive the chain sizes."""
    if n < 2:
        raise ValueError(f"plan requires n >= 2, got {n}")
    ks = tuple(k for k in range((n - 1).bit_length() - 1, -1, -1)
               if (n - 1) >> k & 1)
    t = len(ks)
    k1 = ks[0]
    return InversionPlan(
        n=n,
        ks=ks,
        t=t,
        k1=k1,
        k_max=2 * k1 + t,
        mult_count=k1 + t - 1,
        squaring_count=n - 1,
    )


class _Builder:
    """Shared scaffolding: register bank f0..fN and per-name tag counters."""

    def __init__(self, spec: FieldSpec, register_count: int, variant: str):
        self.spec = spec
        self.circuit = Circuit(register_count * spec.n)
        self.refs: list[RegisterRef] = []
        for i in range(register_count):
            name = f"f{i}"
            self.circuit.add_register(name, i * spec.n, spec.n)
            self.refs.append(RegisterRef(name, i * spec.n, spec.n))
        self._tag_counts: dict[str, int] = {}
        self._tlev = [0] * self.circuit.width
        self._tlev_cursor = 0
        meta = self.circuit.meta
        meta["n"] = str(spec.n)
        meta["modulus"] = hex(int(spec.modulus))
        meta["variant"] = variant
        if spec.name:
            meta["field"] = spec.name

    def tag(self, name: str) -> str:
        i = self._tag_counts.get(name, 0)
        self._tag_counts[name] = i + 1
        return f"{name}#{i}"

    def _deepest_wire(self, reg: RegisterRef) -> int:
        """Index (within reg) of the wire with the deepest T-layer so far.

        Replays gates appended since the last call with the same per-wire
        T-layer bookkeeping the analyzer uses on decomposed circuits, so a
        MULT block can anchor its first Toffoli on the register's deepest
        wire.  With the multiplier holding the running maximum, that pins
        the block's T-schedule to a fixed offset of the maximum no matter
        how earlier blocks shaped the rest of the profile.
        """
        tl = self._tlev
        c = self.circuit
        kinds, qs = c._kinds, c._qs
        for i in range(self._tlev_cursor, len(kinds)):
            code = kinds[i]
            base = 3 * i
            if code == K_TOFFOLI:
                a, b, t = qs[base], qs[base + 1], qs[base + 2]
                lvl = max(tl[a], tl[b] + 1, tl[t] + 1) + 3
                tl[a] = tl[b] = tl[t] = lvl
            elif code == K_CNOT:
                a, b = qs[base], qs[base + 1]
                m = tl[a] if tl[a] >= tl[b] else tl[b]
                tl[a] = tl[b] = m
            elif code == K_SWAP:
                a, b = qs[base], qs[base + 1]
                tl[a], tl[b] = tl[b], tl[a]
        self._tlev_cursor = len(kinds)
        window = tl[reg.start:reg.start + reg.len]
        return window.index(max(window))

    def copy(self, src: RegisterRef, dst: RegisterRef) -> None:
        self.circuit.extend(xor_add(src, dst, self.tag("COPY")))

    def square(self, reg: RegisterRef, times: int) -> None:
        for _ in range(times):
            self.circuit.extend(square_inplace(reg, self.spec, self.tag("SQUARE")))

    def unsquare(self, reg: RegisterRef, times: int) -> None:
        tag = self.tag("SQUARE_INV")
        for _ in range(times):
            self.circuit.extend(square_inverse_inplace(reg, self.spec, tag))

    def mult(self, a: RegisterRef, b: RegisterRef, dst: RegisterRef) -> None:
        anchor = self._deepest_wire(b)
        self.circuit.extend(
            modmult(a, b, dst, self.spec, self.tag("MULT"), anchor=anchor))

    def finish(self, result: RegisterRef) -> Circuit:
        self.circuit.meta["result"] = result.name
        return self.circuit


def _relabel_exchange(c: Circuit, a: RegisterRef, b: RegisterRef) -> None:
    """Exchange two registers at readout (no gates)."""
    relabel = list(c.relabel)
    for i in range(a.len):
        relabel[a.start + i] = b.start + i
        relabel[b.start + i] = a.start + i
    c.relabel = relabel


def _stage2(b: _Builder, p: InversionPlan, acc: RegisterRef,
            g: dict[int, RegisterRef], fresh: list[RegisterRef]) -> RegisterRef:
    """Multiply the doubling-chain outputs together along ks (t-1 products)."""
    for s in range(2, p.t + 1):
        k_s = p.ks[s - 1]
        b.square(acc, 2 ** k_s)
        dst = fresh[s - 2]
        # acc rides the multiplier slot: it came out of the latest MULT, so
        # it still holds the deepest T-layer and anchors the next block.
        b.mult(g[k_s], acc, dst)
        acc = dst
    return acc


def build_waterfall(spec: FieldSpec) -> Circuit:
    """Fresh-register schedule: widest, zero SQUARE_INV, fewest gates."""
    p = plan(spec.n)
    b = _Builder(spec, p.k_max + 1, "waterfall")
    refs = b.refs
    g = {0: refs[0]}
    for s in range(1, p.k1 + 1):
        h, dst = refs[2 * s - 1], refs[2 * s]
        b.copy(g[s - 1], h)
        b.square(h, 2 ** (s - 1))
        # g[s-1] rides the multiplier slot: it is the latest MULT output
        # (or the input register), so it anchors the block's T-schedule.
        b.mult(h, g[s - 1], dst)
        g[s] = dst
    acc = _stage2(b, p, g[p.k1], g, refs[2 * p.k1 + 1:])
    # For every t the accumulator sits in f_(k_max-1); the readout exchange
    # with f_k_max generalizes the t=1 special case and keeps the result in
    # the top register uniformly.
    top = refs[p.k_max]
    b.square(acc, 1)
    _relabel_exchange(b.circuit, acc, top)
    return b.finish(top)


def build_baseline(spec: FieldSpec) -> Circuit:
    """Register-reuse schedule: Stage 1 borrows one shared working register
    and returns it to |0> with SQUARE_INV blocks plus a second copy."""
    p = plan(spec.n)
    b = _Builder(spec, p.k1 + p.t + 1, "baseline")
    refs = b.refs
    g = {0: refs[0]}
    if p.k1 > 0:
        work = refs[1]
        for s in range(1, p.k1 + 1):
            b.copy(g[s - 1], work)
            b.square(work, 2 ** (s - 1))
            b.mult(work, g[s - 1], refs[s + 1])
            g[s] = refs[s + 1]
            b.unsquare(work, 2 ** (s - 1))
            b.copy(g[s - 1], work)
    acc = _stage2(b, p, g[p.k1], g, refs[p.k1 + 2:])
    b.square(acc, 1)
    result = refs[p.k1 + p.t]
    if acc is not result:
        # Only n=2 (k1=0): the chain never leaves f0, so move the readout.
        _relabel_exchange(b.circuit, acc, result)
    return b.finish(result)


def build_naive(spec: FieldSpec) -> Circuit:
    """Textbook accumulation f^2 * f^4 * ... * f^(2^(n-1)), one register per
    partial product; demonstration sizes only."""
    n = spec.n
    if n > 16:
        raise ValueError("naive variant restricted to demonstration sizes")
    b = _Builder(spec, n + 1, "naive")
    refs = b.refs
    power = refs[1]
    b.copy(refs[0], power)
    b.square(power, 1)
    b.copy(power, refs[2])
    for j in range(2, n):
        b.square(power, 1)
        b.mult(power, refs[j], refs[j + 1])
    return b.finish(refs[n])


_BUILDERS = {
    "waterfall": build_waterfall,
    "baseline": build_baseline,
    "naive": build_naive,
}


def build(spec: FieldSpec, variant: str) -> Circuit:
    """Dispatch to one of the three builders by variant name."""
    try:
        builder = _BUILDERS[variant]
    except KeyError:
        raise ValueError(
            f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}"
        ) from None
    return builder(spec)


def with_uncompute(c: Circuit, spec: FieldSpec) -> Circuit:
    """Compute c, copy its result register into a fresh output register,
    then run the exact inverse so every working register returns to |0>."""
    name = c.meta.get("result")
    if name is None or name not in c.registers:
        raise ValueError("circuit does not declare a result register")
    start, length = c.registers[name]
    if length != spec.n:
        raise ValueError(
            f"result register has {length} bits, field needs {spec.n}")

    def widened(src: Circuit) -> Circuit:
        w = Circuit(src.width + length,
                    relabel=list(src.relabel) + list(range(src.width, src.width + length)))
        for reg_name, (reg_start, reg_len) in src.registers.items():
            w.add_register(reg_name, reg_start, reg_len)
        w.add_register("out", src.width, length)
        w._extend_raw(src)
        return w

    forward = widened(c)
    copy_layer = Circuit(forward.width)
    # Wire numbers here are readout labels; compose routes them to the
    # physical wires that carry the result.
    tag = "COPY_OUT#0"
    for i in range(length):
        copy_layer.append(CNOT, (start + i, c.width + i), tag)
    out = compose(compose(forward, copy_layer), inverse(forward))
    out.meta.update(c.meta)
    out.meta["result"] = "out"
    out.meta["uncompute"] = "true"
    return out
