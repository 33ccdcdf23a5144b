"""Ground-truth simulators: basis-state semantics and small-circuit unitaries."""

import math
import random

import numpy as np
import pytest

from qflt.circuit import (
    CNOT, H, S, SDG, SWAP, T, TDG, TOFFOLI, X, Circuit, decompose,
)
from qflt.revsim import BasisState, run_basis, run_basis_batch, unitary_of


def test_basis_state_api():
    s = BasisState.zeros(4)
    assert s.bits == (0, 0, 0, 0)
    s2 = s.with_register((1, 2), 0b10)
    assert s2.bits == (0, 0, 1, 0)
    assert s2.register_value((1, 2)) == 0b10
    assert len(s2) == 4
    assert s2 == BasisState((0, 0, 1, 0))
    assert hash(s2) == hash(BasisState((0, 0, 1, 0)))
    with pytest.raises(ValueError):
        BasisState((0, 2))
    with pytest.raises(ValueError):
        s.with_register((1, 2), 4)
    with pytest.raises(AttributeError):
        s.bits = ()


def test_classical_gate_semantics():
    c = Circuit(3)
    c.append(X, (0,))
    c.append(CNOT, (0, 1))
    c.append(TOFFOLI, (0, 1, 2))
    c.append(SWAP, (0, 2))
    out = run_basis(c, BasisState.zeros(3))
    assert out.bits == (1, 1, 1)

    c2 = Circuit(2)
    c2.append(CNOT, (0, 1))
    assert run_basis(c2, BasisState((0, 1))).bits == (0, 1)
    assert run_basis(c2, BasisState((1, 1))).bits == (1, 0)


def test_relabel_moves_readout():
    c = Circuit(2, relabel=[1, 0])
    c.append(X, (0,))
    assert run_basis(c, BasisState.zeros(2)).bits == (0, 1)


def test_non_classical_gate_rejected():
    c = Circuit(1)
    c.append(H, (0,))
    with pytest.raises(ValueError):
        run_basis(c, BasisState.zeros(1))


def test_batch_matches_single_runs():
    rng = random.Random(3)
    kinds = {X: 1, CNOT: 2, TOFFOLI: 3, SWAP: 2}
    for _ in range(10):
        width = rng.randint(3, 7)
        c = Circuit(width)
        for _ in range(rng.randint(1, 50)):
            kind = rng.choice(list(kinds))
            c.append(kind, tuple(rng.sample(range(width), kinds[kind])))
        c.relabel = rng.sample(range(width), width)
        values = [rng.getrandbits(width) for _ in range(16)]
        masks = [0] * width
        for k, v in enumerate(values):
            for w in range(width):
                masks[w] |= ((v >> w) & 1) << k
        out = run_basis_batch(c, masks, len(values))
        for k, v in enumerate(values):
            bits = tuple((v >> w) & 1 for w in range(width))
            single = run_basis(c, BasisState(bits))
            got = tuple((out[w] >> k) & 1 for w in range(width))
            assert got == single.bits


def test_batch_width_check():
    with pytest.raises(ValueError):
        run_basis_batch(Circuit(3), [0, 0], 1)


def permutation_unitary(c):
    size = 1 << c.width
    u = np.zeros((size, size))
    for col in range(size):
        bits = tuple((col >> w) & 1 for w in range(c.width))
        out = run_basis(c, BasisState(bits))
        row = sum(b << w for w, b in enumerate(out.bits))
        u[row, col] = 1.0
    return u


def test_unitary_of_classical_circuit_is_permutation():
    rng = random.Random(9)
    kinds = {X: 1, CNOT: 2, TOFFOLI: 3, SWAP: 2}
    for _ in range(5):
        width = rng.randint(3, 5)
        c = Circuit(width)
        for _ in range(rng.randint(1, 25)):
            kind = rng.choice(list(kinds))
            c.append(kind, tuple(rng.sample(range(width), kinds[kind])))
        c.relabel = rng.sample(range(width), width)
        assert np.allclose(unitary_of(c), permutation_unitary(c))


def test_unitary_width_cap():
    with pytest.raises(ValueError):
        unitary_of(Circuit(13))


def test_unitary_h_and_phases():
    c = Circuit(1)
    c.append(H, (0,))
    u = unitary_of(c)
    r = 1 / math.sqrt(2)
    assert np.allclose(u, np.array([[r, r], [r, -r]]))

    t = Circuit(1)
    t.append(T, (0,))
    ut = unitary_of(t)
    assert np.allclose(ut, np.diag([1, np.exp(1j * math.pi / 4)]))

    # T followed by TDG is the identity; two Ts make an S; S*SDG is identity.
    for kinds, expected in (
        ((T, TDG), np.eye(2)),
        ((T, T), np.diag([1, 1j])),
        ((S, SDG), np.eye(2)),
    ):
        c2 = Circuit(1)
        for k in kinds:
            c2.append(k, (0,))
        assert np.allclose(unitary_of(c2), expected)


def test_h_conjugates_x_to_phase_flip():
    c = Circuit(1)
    for kind in (H, X, H):
        c.append(kind, (0,))
    assert np.allclose(unitary_of(c), np.diag([1, -1]))


def test_decomposed_toffoli_unitary_matches():
    c = Circuit(3)
    c.append(TOFFOLI, (0, 1, 2))
    assert np.abs(unitary_of(decompose(c)) - permutation_unitary(c)).max() < 1e-12
