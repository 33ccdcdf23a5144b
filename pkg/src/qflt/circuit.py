"""Gate-level circuit IR, composition, decomposition, and resource analysis.

Circuits store gates in compact parallel arrays so that multi-million-gate
inversion circuits stay cheap to build, stream, and simulate.  SWAP gates
are considered free throughout: analysis costs them zero depth and
decomposition absorbs them into the readout relabeling permutation.
"""

from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

X, CNOT, TOFFOLI, SWAP, H, T, TDG, S, SDG = (
    "X", "CNOT", "TOFFOLI", "SWAP", "H", "T", "TDG", "S", "SDG",
)

KIND_NAMES = (X, CNOT, TOFFOLI, SWAP, H, T, TDG, S, SDG)
KIND_CODE = {name: i for i, name in enumerate(KIND_NAMES)}
K_X, K_CNOT, K_TOFFOLI, K_SWAP, K_H, K_T, K_TDG, K_S, K_SDG = range(9)
ARITY = {X: 1, CNOT: 2, TOFFOLI: 3, SWAP: 2, H: 1, T: 1, TDG: 1, S: 1, SDG: 1}
ARITY_BY_CODE = tuple(ARITY[name] for name in KIND_NAMES)
INVERSE_KIND = {T: TDG, TDG: T, S: SDG, SDG: S}

# Gate tokens of the text format, in both directions.
TOKEN_BY_KIND = {
    X: "x", CNOT: "cx", TOFFOLI: "ccx", SWAP: "swap",
    H: "h", T: "t", TDG: "tdg", S: "s", SDG: "sdg",
}
KIND_BY_TOKEN = {tok: kind for kind, tok in TOKEN_BY_KIND.items()}

# Standard 7-T realization of the Toffoli gate on slots (a, b, target).
TOFFOLI_NETWORK = (
    (H, (2,)), (CNOT, (1, 2)), (TDG, (2,)), (CNOT, (0, 2)), (T, (2,)),
    (CNOT, (1, 2)), (TDG, (2,)), (CNOT, (0, 2)), (T, (1,)), (T, (2,)),
    (H, (2,)), (CNOT, (0, 1)), (T, (0,)), (TDG, (1,)), (CNOT, (0, 1)),
)


class Gate(NamedTuple):
    """One gate: kind, ordered distinct qubit indices, optional block tag."""

    kind: str
    qubits: tuple[int, ...]
    tag: str | None = None


class CircuitParseError(ValueError):
    """Circuit text format violation, carrying the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def identity_permutation(width: int) -> list[int]:
    return list(range(width))


def invert_permutation(perm: list[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def _check_permutation(perm: list[int], width: int) -> list[int]:
    if len(perm) != width or sorted(perm) != list(range(width)):
        raise ValueError("relabel is not a permutation of the qubit indices")
    return list(perm)


class Circuit:
    """Ordered gate sequence over `width` qubits with named registers.

    The `relabel` permutation is applied at readout: the value that ends
    on physical wire i is read out at index relabel[i].  Instances are
    intended to be built once (via append/extend) and then treated as
    immutable; all transformations return new circuits.
    """

    __slots__ = ("width", "registers", "relabel", "meta",
                 "_kinds", "_qs", "_tag_ids", "_tag_pool", "_tag_map")

    def __init__(self, width: int,
                 registers: dict[str, tuple[int, int]] | None = None,
                 relabel: list[int] | None = None,
                 meta: dict[str, str] | None = None):
        if width < 0:
            raise ValueError("width must be non-negative")
        self.width = width
        self.registers: dict[str, tuple[int, int]] = {}
        self.relabel = (identity_permutation(width) if relabel is None
                        else _check_permutation(relabel, width))
        self.meta: dict[str, str] = dict(meta) if meta else {}
        self._kinds = bytearray()
        self._qs = array("i")
        self._tag_ids = array("i")
        self._tag_pool: list[str] = []
        self._tag_map: dict[str, int] = {}
        if registers:
            for name, (start, length) in registers.items():
                self.add_register(name, start, length)

    # -- construction ---------------------------------------------------

    def add_register(self, name: str, start: int, length: int) -> "Circuit":
        if name in self.registers:
            raise ValueError(f"duplicate register {name!r}")
        if length <= 0 or start < 0 or start + length > self.width:
            raise ValueError(f"register {name!r} out of range")
        end = start + length
        for other, (ostart, olen) in self.registers.items():
            if start < ostart + olen and ostart < end:
                raise ValueError(f"register {name!r} overlaps {other!r}")
        self.registers[name] = (start, length)
        return self

    def _tag_id(self, tag: str | None) -> int:
        if tag is None:
            return -1
        tid = self._tag_map.get(tag)
        if tid is None:
            tid = len(self._tag_pool)
            self._tag_pool.append(tag)
            self._tag_map[tag] = tid
        return tid

    def append(self, kind: str, qubits, tag: str | None = None) -> None:
        code = KIND_CODE.get(kind)
        if code is None:
            raise ValueError(f"unknown gate kind {kind!r}")
        nq = len(qubits)
        if nq != ARITY_BY_CODE[code]:
            raise ValueError(f"{kind} expects {ARITY_BY_CODE[code]} qubits, got {nq}")
        width = self.width
        if nq == 1:
            a = qubits[0]
            if not 0 <= a < width:
                raise ValueError(f"qubit {a} out of range")
            self._qs.append(a); self._qs.append(0); self._qs.append(0)
        elif nq == 2:
            a, b = qubits
            if a == b:
                raise ValueError(f"{kind} qubits must be distinct")
            if not (0 <= a < width and 0 <= b < width):
                raise ValueError(f"qubit index out of range in {qubits}")
            self._qs.append(a); self._qs.append(b); self._qs.append(0)
        else:
            a, b, c = qubits
            if a == b or a == c or b == c:
                raise ValueError(f"{kind} qubits must be distinct")
            if not (0 <= a < width and 0 <= b < width and 0 <= c < width):
                raise ValueError(f"qubit index out of range in {qubits}")
            self._qs.append(a); self._qs.append(b); self._qs.append(c)
        self._kinds.append(code)
        self._tag_ids.append(self._tag_id(tag))

    def extend(self, gates: Iterable[Gate]) -> None:
        for kind, qubits, tag in gates:
            self.append(kind, qubits, tag)

    # -- inspection -----------------------------------------------------

    def __len__(self) -> int:
        return len(self._kinds)

    def gate(self, i: int) -> Gate:
        code = self._kinds[i]
        arity = ARITY_BY_CODE[code]
        base = 3 * i
        tid = self._tag_ids[i]
        return Gate(KIND_NAMES[code],
                    tuple(self._qs[base:base + arity]),
                    self._tag_pool[tid] if tid >= 0 else None)

    def gates(self) -> Iterator[Gate]:
        names = KIND_NAMES
        arities = ARITY_BY_CODE
        kinds, qs, tag_ids, pool = self._kinds, self._qs, self._tag_ids, self._tag_pool
        for i in range(len(kinds)):
            code = kinds[i]
            base = 3 * i
            tid = tag_ids[i]
            yield Gate(names[code],
                       tuple(qs[base:base + arities[code]]),
                       pool[tid] if tid >= 0 else None)

    __iter__ = gates

    def gate_counts(self) -> dict[str, int]:
        counter = Counter(self._kinds)
        return {KIND_NAMES[code]: count for code, count in sorted(counter.items())}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.width == other.width
                and self.registers == other.registers
                and self.relabel == other.relabel
                and len(self) == len(other)
                and list(self.gates()) == list(other.gates()))

    def __repr__(self) -> str:
        return f"Circuit(width={self.width}, gates={len(self)})"

    # -- fast internal copies --------------------------------------------

    def _extend_raw(self, other: "Circuit") -> None:
        """Append other's gates verbatim (same width, no wire remapping)."""
        self._kinds.extend(other._kinds)
        self._qs.extend(other._qs)
        if other._tag_pool:
            trans = [self._tag_id(tag) for tag in other._tag_pool]
            self._tag_ids.extend(
                trans[tid] if tid >= 0 else -1 for tid in other._tag_ids)
        else:
            self._tag_ids.extend(other._tag_ids)


@dataclass(frozen=True)
class ResourceReport:
    """Width, gate-kind counts, and depth metrics for one circuit."""

    width: int
    counts: dict[str, int]
    cnot_count: int
    t_count: int
    overall_depth: int
    t_depth: int

    @property
    def toffoli_count(self) -> int:
        return self.counts.get(TOFFOLI, 0)

    def as_dict(self) -> dict:
        return {
            "width": self.width,
            "counts": dict(self.counts),
            "cnot_count": self.cnot_count,
            "t_count": self.t_count,
            "overall_depth": self.overall_depth,
            "t_depth": self.t_depth,
        }


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Circuit running a's gates then b's; readout relabels are composed."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} != {b.width}")
    registers = dict(a.registers)
    for name, rng in b.registers.items():
        if name in registers and registers[name] != rng:
            raise ValueError(f"incompatible register maps for {name!r}")
    out = Circuit(a.width)
    for name, (start, length) in registers.items():
        out.add_register(name, start, length)
    for name, (start, length) in b.registers.items():
        if name not in registers:
            out.add_register(name, start, length)
    out._extend_raw(a)
    pa = a.relabel
    if pa == identity_permutation(a.width):
        out._extend_raw(b)
    else:
        # b's wire labels refer to a's readout; route them to physical wires.
        inv_pa = invert_permutation(pa)
        for kind, qubits, tag in b.gates():
            out.append(kind, tuple(inv_pa[q] for q in qubits), tag)
    out.relabel = [b.relabel[p] for p in pa]
    return out


def inverse(c: Circuit) -> Circuit:
    """Exact inverse: reversed, gate-wise inverted, relabel inverted."""
    pi = c.relabel
    meta = {k: v for k, v in c.meta.items() if k != "result"}
    out = Circuit(c.width, registers=dict(c.registers),
                  relabel=invert_permutation(pi), meta=meta)
    identity = pi == identity_permutation(c.width)
    for i in range(len(c) - 1, -1, -1):
        kind, qubits, tag = c.gate(i)
        kind = INVERSE_KIND.get(kind, kind)
        if not identity:
            qubits = tuple(pi[q] for q in qubits)
        out.append(kind, qubits, tag)
    return out


def decompose(c: Circuit) -> Circuit:
    """Rewrite to the {X, CNOT, H, T, TDG, S, SDG} basis.

    Every TOFFOLI becomes the standard 7-T network; every SWAP is absorbed
    into the relabel permutation (zero gates).  For resource questions on
    very large circuits prefer analyze(c, decompose=True), which streams
    the same rewrite without materializing it.
    """
    out = Circuit(c.width, registers=dict(c.registers), meta=dict(c.meta))
    nu = identity_permutation(c.width)
    swaps_seen = False
    for kind, qubits, tag in c.gates():
        if kind == SWAP:
            a, b = qubits
            nu[a], nu[b] = nu[b], nu[a]
            swaps_seen = True
            continue
        if swaps_seen:
            qubits = tuple(nu[q] for q in qubits)
        if kind == TOFFOLI:
            a, b, t = qubits
            slots = (a, b, t)
            for net_kind, net_slots in TOFFOLI_NETWORK:
                out.append(net_kind, tuple(slots[s] for s in net_slots), tag)
        else:
            out.append(kind, qubits, tag)
    inv_nu = invert_permutation(nu)
    out.relabel = [c.relabel[inv_nu[j]] for j in range(c.width)]
    return out


def analyze(c: Circuit, decompose: bool = False) -> ResourceReport:
    """Depth, T-depth, and gate counts under unit-cost scheduling.

    Depth is the longest dependency chain where every gate costs one time
    step and gates sharing a qubit are ordered; SWAPs cost zero.  T-depth
    applies greedy as-soon-as-possible layering to T/TDG gates only.  With
    decompose=True the metrics describe the Toffoli-decomposed circuit,
    computed by streaming over the original gates.
    """
    width = c.width
    depth = [0] * width
    tlev = [0] * width
    n_x = n_cnot = n_tof = n_swap = n_h = n_t = n_tdg = n_s = n_sdg = 0
    kinds, qs = c._kinds, c._qs
    for i in range(len(kinds)):
        code = kinds[i]
        base = 3 * i
        if code == K_TOFFOLI:
            a, b, t = qs[base], qs[base + 1], qs[base + 2]
            n_tof += 1
            if decompose:
                # Closed-form per-wire update for the 7-T network; matches
                # literal gate-by-gate scheduling of TOFFOLI_NETWORK.
                da, db, dt = depth[a], depth[b] + 2, depth[t] + 3
                d = da if da >= db else db
                if dt > d:
                    d = dt
                depth[a] = depth[b] = d + 8
                depth[t] = d + 7
                ta, tb, tt = tlev[a], tlev[b] + 1, tlev[t] + 1
                tl = ta if ta >= tb else tb
                if tt > tl:
                    tl = tt
                tlev[a] = tlev[b] = tlev[t] = tl + 3
            else:
                d = max(depth[a], depth[b], depth[t]) + 1
                depth[a] = depth[b] = depth[t] = d
                tl = max(tlev[a], tlev[b], tlev[t])
                tlev[a] = tlev[b] = tlev[t] = tl
        elif code == K_CNOT:
            a, b = qs[base], qs[base + 1]
            n_cnot += 1
            d = depth[a] if depth[a] >= depth[b] else depth[b]
            depth[a] = depth[b] = d + 1
            tl = tlev[a] if tlev[a] >= tlev[b] else tlev[b]
            tlev[a] = tlev[b] = tl
        elif code == K_SWAP:
            a, b = qs[base], qs[base + 1]
            depth[a], depth[b] = depth[b], depth[a]
            tlev[a], tlev[b] = tlev[b], tlev[a]
            if not decompose:
                n_swap += 1
        else:
            q = qs[base]
            depth[q] += 1
            if code == K_T:
                n_t += 1
                tlev[q] += 1
            elif code == K_TDG:
                n_tdg += 1
                tlev[q] += 1
            elif code == K_H:
                n_h += 1
            elif code == K_X:
                n_x += 1
            elif code == K_S:
                n_s += 1
            else:
                n_sdg += 1
    if decompose:
        n_cnot += 6 * n_tof
        n_h += 2 * n_tof
        n_t += 4 * n_tof
        n_tdg += 3 * n_tof
        n_tof = 0
    counts = {}
    for name, value in ((X, n_x), (CNOT, n_cnot), (TOFFOLI, n_tof),
                        (SWAP, n_swap), (H, n_h), (T, n_t), (TDG, n_tdg),
                        (S, n_s), (SDG, n_sdg)):
        if value:
            counts[name] = value
    return ResourceReport(
        width=width,
        counts=counts,
        cnot_count=n_cnot,
        t_count=n_t + n_tdg,
        overall_depth=max(depth, default=0),
        t_depth=max(tlev, default=0),
    )


def block_counts(c: Circuit) -> dict[str, int]:
    """Number of distinct tagged blocks per block name.

    A block name is the tag text before '#'; each distinct full tag counts
    once (builders tag every SQUARE application uniquely, so for them the
    SQUARE figure equals the number of applications).
    """
    present = {tid for tid in c._tag_ids if tid >= 0}
    counts: dict[str, int] = {}
    for tid in present:
        name = c._tag_pool[tid].split("#", 1)[0]
        counts[name] = counts.get(name, 0) + 1
    return counts


# -- text format ---------------------------------------------------------


def circuit_lines(c: Circuit) -> Iterator[str]:
    """Lines of the text format, in deterministic emission order."""
    yield f"qubits {c.width}"
    for key in sorted(c.meta):
        yield f"# meta {key} {c.meta[key]}"
    for name, (start, length) in c.registers.items():
        yield f"reg {name} {start} {length}"
    for i, p in enumerate(c.relabel):
        if p != i:
            yield f"relabel {i} {p}"
    current_tag: str | None = None
    for kind, qubits, tag in c.gates():
        if tag != current_tag:
            yield f"# block {tag if tag is not None else '-'}"
            current_tag = tag
        yield f"{TOKEN_BY_KIND[kind]} " + " ".join(f"q{q}" for q in qubits)


def circuit_to_text(c: Circuit) -> str:
    return "\n".join(circuit_lines(c)) + "\n"


def write_circuit(c: Circuit, path) -> None:
    with open(path, "w") as fh:
        chunk: list[str] = []
        for line in circuit_lines(c):
            chunk.append(line)
            if len(chunk) >= 65536:
                fh.write("\n".join(chunk) + "\n")
                chunk.clear()
        if chunk:
            fh.write("\n".join(chunk) + "\n")


def _parse_qubit(token: str, width: int, lineno: int) -> int:
    if not token.startswith("q"):
        raise CircuitParseError(f"expected qubit token, got {token!r}", lineno)
    try:
        q = int(token[1:])
    except ValueError:
        raise CircuitParseError(f"bad qubit token {token!r}", lineno) from None
    if not 0 <= q < width:
        raise CircuitParseError(f"qubit {q} out of range for width {width}", lineno)
    return q


def parse_circuit_lines(lines: Iterable[str]) -> Circuit:
    """Parse the line-oriented circuit text format."""
    circuit: Circuit | None = None
    relabel_sources: set[int] = set()
    relabel_targets: set[int] = set()
    relabel_last_line = 0
    gates_started = False
    current_tag: str | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("block"):
                tag = body[5:].strip()
                current_tag = None if tag in ("", "-") else tag
            elif body.startswith("meta") and circuit is not None:
                parts = body.split(None, 2)
                if len(parts) == 3:
                    circuit.meta[parts[1]] = parts[2]
            continue
        tokens = line.split()
        head = tokens[0]
        if circuit is None:
            if head != "qubits" or len(tokens) != 2:
                raise CircuitParseError("expected header 'qubits <N>'", lineno)
            try:
                width = int(tokens[1])
            except ValueError:
                raise CircuitParseError(f"bad width {tokens[1]!r}", lineno) from None
            if width < 0:
                raise CircuitParseError("width must be non-negative", lineno)
            circuit = Circuit(width)
            continue
        if head == "qubits":
            raise CircuitParseError("duplicate 'qubits' header", lineno)
        if head == "reg":
            if gates_started:
                raise CircuitParseError("register line after gate lines", lineno)
            if len(tokens) != 4:
                raise CircuitParseError("expected 'reg <name> <start> <len>'", lineno)
            try:
                start, length = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise CircuitParseError("bad register bounds", lineno) from None
            try:
                circuit.add_register(tokens[1], start, length)
            except ValueError as exc:
                raise CircuitParseError(str(exc), lineno) from None
            continue
        if head == "relabel":
            if gates_started:
                raise CircuitParseError("relabel line after gate lines", lineno)
            if len(tokens) != 3:
                raise CircuitParseError("expected 'relabel <i> <j>'", lineno)
            try:
                i, j = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise CircuitParseError("bad relabel indices", lineno) from None
            if not (0 <= i < circuit.width and 0 <= j < circuit.width):
                raise CircuitParseError("relabel index out of range", lineno)
            if i in relabel_sources:
                raise CircuitParseError(f"duplicate relabel source {i}", lineno)
            if j in relabel_targets:
                raise CircuitParseError(f"duplicate relabel target {j}", lineno)
            relabel_sources.add(i)
            relabel_targets.add(j)
            circuit.relabel[i] = j
            relabel_last_line = lineno
            continue
        kind = KIND_BY_TOKEN.get(head)
        if kind is None:
            raise CircuitParseError(f"unknown gate {head!r}", lineno)
        gates_started = True
        qubits = tuple(_parse_qubit(tok, circuit.width, lineno) for tok in tokens[1:])
        try:
            circuit.append(kind, qubits, current_tag)
        except ValueError as exc:
            raise CircuitParseError(str(exc), lineno) from None
    if circuit is None:
        raise CircuitParseError("empty circuit file: missing 'qubits' header", None)
    if sorted(circuit.relabel) != list(range(circuit.width)):
        raise CircuitParseError("relabel lines do not form a permutation",
                                relabel_last_line)
    return circuit


def parse_circuit(text: str) -> Circuit:
    return parse_circuit_lines(text.splitlines())


def read_circuit(path) -> Circuit:
    with open(path) as fh:
        return parse_circuit_lines(fh)
