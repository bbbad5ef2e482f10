"""Deterministic small-scale statevector simulator.

Supports exactly what the protocol needs: H/X/Z/CZ/CNOT/Toffoli gates, Pauli
frames, Z- and X-basis measurement with Born sampling from a caller-supplied
seeded generator, coset-state construction, basis-pattern oracles, and
global-phase-insensitive state comparison.

Qubit order: qubit 0 is the leftmost (most significant) bit of a basis
label, so amplitude index ``i`` corresponds to the bit string of ``i``
written MSB-first.  Registers are tracked as named index tuples; scratch
registers are appended at the end and dropped from the end so that protocol
qubit positions stay stable.

All protocol states have amplitudes of the form +/- 2^(-k/2), far above the
1e-9 comparison tolerance used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import CapacityError, DimensionError, RankError
from .gf2 import BitMatrix, BitVector, rank, row_span

MAX_QUBITS = 24
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

GATES_1Q = ("h", "x", "z")
GATES_2Q = ("cnot", "cz")
GATES_3Q = ("toffoli",)


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of one (possibly multi-qubit) projective measurement."""

    qubits: tuple[int, ...]
    basis: str  # "Z" or "X"
    outcome: BitVector
    probability: float


class StateVector:
    """Mutable statevector with a named-register map.

    A state is owned by one session at a time; operations mutate in place
    and return the state for chaining.
    """

    def __init__(self, amps: np.ndarray, registers: dict[str, tuple[int, ...]] | None = None):
        n = int(round(math.log2(len(amps))))
        if 1 << n != len(amps):
            raise DimensionError("amplitude length must be a power of two")
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit cap")
        self.amps = np.asarray(amps, dtype=np.complex128)
        self.n = n
        self.registers: dict[str, tuple[int, ...]] = dict(registers or {})

    # -- construction ------------------------------------------------------

    @staticmethod
    def zeros(n: int, registers: dict[str, tuple[int, ...]] | None = None) -> "StateVector":
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit cap")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return StateVector(amps, registers)

    @staticmethod
    def basis_state(bits: BitVector, registers: dict[str, tuple[int, ...]] | None = None) -> "StateVector":
        s = StateVector.zeros(len(bits), registers)
        s.amps[0] = 0.0
        s.amps[bits.to_int()] = 1.0
        return s

    def copy(self) -> "StateVector":
        return StateVector(self.amps.copy(), dict(self.registers))

    # -- internals ---------------------------------------------------------

    def _view(self) -> np.ndarray:
        return self.amps.reshape([2] * self.n)

    def _check_targets(self, targets: Sequence[int]) -> None:
        if len(set(targets)) != len(targets):
            raise DimensionError(f"repeated target qubits {targets}")
        for q in targets:
            if not 0 <= q < self.n:
                raise DimensionError(f"qubit {q} out of range for n={self.n}")

    def _fixed_index(self, fixed: dict[int, int]) -> tuple:
        idx: list = [slice(None)] * self.n
        for q, b in fixed.items():
            idx[q] = b
        return tuple(idx)

    def _swap_slices(self, q: int, controls: dict[int, int] | None = None) -> None:
        """Exchange the q=0 / q=1 halves, optionally inside a control block."""
        view = self._view()
        fixed = dict(controls or {})
        i0 = self._fixed_index({**fixed, q: 0})
        i1 = self._fixed_index({**fixed, q: 1})
        tmp = view[i0].copy()
        view[i0] = view[i1]
        view[i1] = tmp

    # -- norm / inspection ---------------------------------------------------

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def assert_normalized(self, tol: float = 1e-9) -> None:
        if abs(self.norm_sq() - 1.0) >= tol:
            raise ValueError(f"state norm drifted: |psi|^2 = {self.norm_sq()}")

    def support(self, tol: float = 1e-12) -> list[tuple[BitVector, complex]]:
        """Nonzero amplitudes as (basis label, amplitude), sorted by label."""
        out = []
        for i in np.flatnonzero(np.abs(self.amps) > tol):
            out.append((BitVector.from_int(int(i), self.n), complex(self.amps[i])))
        return out

    def dump(self) -> str:
        """One line per nonzero amplitude: ``bitstring re im``, sorted."""
        lines = [
            f"{bits} {amp.real:.12g} {amp.imag:.12g}"
            for bits, amp in self.support()
        ]
        return "\n".join(lines)

    # -- register management -------------------------------------------------

    def add_register(self, name: str, count: int) -> tuple[int, ...]:
        """Append ``count`` fresh |0> qubits at the end under ``name``."""
        if name in self.registers:
            raise ValueError(f"register {name!r} already exists")
        if self.n + count > MAX_QUBITS:
            raise CapacityError(
                f"{self.n + count} qubits exceeds the {MAX_QUBITS}-qubit cap")
        new = np.zeros(1 << (self.n + count), dtype=np.complex128)
        new.reshape(1 << self.n, 1 << count)[:, 0] = self.amps
        qubits = tuple(range(self.n, self.n + count))
        self.amps = new
        self.n += count
        self.registers[name] = qubits
        return qubits

    def drop_register(self, name: str, tol: float = 1e-9) -> BitVector:
        """Remove a trailing register that sits in a definite basis state.

        Returns the basis value it held.  Raises if the register is not the
        trailing block or is still in superposition/entangled.
        """
        qubits = self.registers[name]
        count = len(qubits)
        if qubits != tuple(range(self.n - count, self.n)):
            raise DimensionError(f"register {name!r} is not the trailing block")
        block = self.amps.reshape(1 << (self.n - count), 1 << count)
        weights = np.sum(np.abs(block) ** 2, axis=0)
        value = int(np.argmax(weights))
        if abs(weights[value] - 1.0) >= tol:
            raise ValueError(
                f"register {name!r} is not in a definite basis state")
        self.amps = block[:, value].copy()
        self.n -= count
        del self.registers[name]
        norm = math.sqrt(self.norm_sq())
        self.amps /= norm
        return BitVector.from_int(value, count)


# ---------------------------------------------------------------------------
# gates


def apply_gate(state: StateVector, gate: str, targets: Sequence[int]) -> StateVector:
    """Apply one of h, x, z, cz, cnot, toffoli to the given qubits."""
    g = gate.lower()
    state._check_targets(targets)
    view = state._view()
    if g == "x":
        (q,) = targets
        state._swap_slices(q)
    elif g == "z":
        (q,) = targets
        view[state._fixed_index({q: 1})] *= -1.0
    elif g == "h":
        (q,) = targets
        i0 = state._fixed_index({q: 0})
        i1 = state._fixed_index({q: 1})
        a = view[i0].copy()
        b = view[i1]
        view[i0] = (a + b) * _INV_SQRT2
        view[i1] = (a - b) * _INV_SQRT2
    elif g == "cnot":
        c, t = targets
        state._swap_slices(t, {c: 1})
    elif g == "cz":
        a, b = targets
        view[state._fixed_index({a: 1, b: 1})] *= -1.0
    elif g == "toffoli":
        a, b, t = targets
        state._swap_slices(t, {a: 1, b: 1})
    else:
        raise DimensionError(f"unknown gate {gate!r}")
    return state


def apply_pauli_frame(state: StateVector, x_bits: BitVector, z_bits: BitVector,
                      targets: Sequence[int]) -> StateVector:
    """Apply Z^z X^x qubit-wise (X layer first, then Z layer)."""
    if len(x_bits) != len(targets) or len(z_bits) != len(targets):
        raise DimensionError("pad length must equal the target count")
    for q, b in zip(targets, x_bits):
        if b:
            apply_gate(state, "x", (q,))
    for q, b in zip(targets, z_bits):
        if b:
            apply_gate(state, "z", (q,))
    return state


def remove_pauli_frame(state: StateVector, x_bits: BitVector, z_bits: BitVector,
                       targets: Sequence[int]) -> StateVector:
    """Invert apply_pauli_frame (up to global phase): Z layer off, then X."""
    for q, b in zip(targets, z_bits):
        if b:
            apply_gate(state, "z", (q,))
    for q, b in zip(targets, x_bits):
        if b:
            apply_gate(state, "x", (q,))
    return state


# ---------------------------------------------------------------------------
# measurement


def measure(state: StateVector, targets: Sequence[int], basis: str, rng,
            force: BitVector | None = None) -> tuple[StateVector, MeasurementRecord]:
    """Projective measurement of ``targets`` in the Z or X basis.

    X basis is implemented as an H-conjugated Z measurement (H in, measure,
    H out), so the post-measurement state is the corresponding X eigenstate.
    ``force`` replaces Born sampling with a required outcome (testing hook);
    forcing a zero-probability outcome raises.
    """
    basis = basis.upper()
    state._check_targets(targets)
    if basis == "X":
        for q in targets:
            apply_gate(state, "h", (q,))
    elif basis != "Z":
        raise DimensionError(f"unknown basis {basis!r}")

    k = len(targets)
    probs = np.abs(state._view()) ** 2
    other_axes = tuple(ax for ax in range(state.n) if ax not in targets)
    marg = probs.sum(axis=other_axes) if other_axes else probs
    # marg axes follow sorted qubit order; rearrange to the caller's order
    sorted_targets = sorted(targets)
    perm = [sorted_targets.index(q) for q in targets]
    marg = np.transpose(marg, perm).reshape(-1)

    if force is not None:
        if len(force) != k:
            raise DimensionError("forced outcome length mismatch")
        choice = force.to_int()
        p = float(marg[choice])
        if p < 1e-12:
            raise ValueError("forced outcome has zero probability")
    else:
        total = marg.sum()
        choice = int(rng.choice(len(marg), p=marg / total))
        p = float(marg[choice])

    outcome = BitVector.from_int(choice, k)
    view = state._view()
    for q, bit in zip(targets, outcome):
        view[state._fixed_index({q: 1 - bit})] = 0.0
    state.amps /= math.sqrt(p)

    if basis == "X":
        for q in targets:
            apply_gate(state, "h", (q,))
    return state, MeasurementRecord(tuple(targets), basis, outcome, p)


# ---------------------------------------------------------------------------
# structured states and oracles


def coset_state(basis: BitMatrix, offset: BitVector) -> StateVector:
    """Uniform superposition over {v ^ offset : v in rowspan(basis)}."""
    if rank(basis) != basis.nrows:
        raise RankError("coset_state requires a full-rank basis")
    if basis.nrows + basis.cols > MAX_QUBITS:
        raise CapacityError("coset_state dimension guard exceeded")
    if len(offset) != basis.cols:
        raise DimensionError("offset width mismatch")
    state = StateVector.zeros(basis.cols, {"data": tuple(range(basis.cols))})
    state.amps[0] = 0.0
    amp = 2.0 ** (-basis.nrows / 2.0)
    for v in row_span(basis):
        state.amps[(v ^ offset).to_int()] = amp
    return state


def membership_unitary(state: StateVector, predicate, data: Sequence[int],
                       ancilla: int) -> StateVector:
    """|v>|c> -> |v>|c ^ predicate(v)> over the data register.

    ``predicate`` is a Coset, an object with ``evaluate``/``contains``, or a
    plain callable on BitVector.
    """
    if ancilla in data:
        raise DimensionError("ancilla overlaps the data register")
    test = _as_predicate(predicate)
    return apply_xor_function(
        state, data, (ancilla,), lambda bits: 1 if test(bits) else 0)


def _as_predicate(predicate) -> Callable[[BitVector], bool]:
    if callable(predicate) and not hasattr(predicate, "contains"):
        return predicate
    if hasattr(predicate, "evaluate"):
        return predicate.evaluate
    if hasattr(predicate, "contains"):
        return predicate.contains
    raise TypeError(f"cannot use {predicate!r} as a membership predicate")


def apply_xor_function(state: StateVector, select: Sequence[int],
                       targets: Sequence[int],
                       fn: Callable[[BitVector], int]) -> StateVector:
    """|s>|t> -> |s>|t ^ fn(s)> for every select-register pattern s.

    ``fn`` returns an integer read MSB-first against ``targets``.  This is a
    classical reversible map, hence unitary.
    """
    state._check_targets(tuple(select) + tuple(targets))
    k = len(select)
    view = state._view()
    for pattern in range(1 << k):
        bits = BitVector.from_int(pattern, k)
        value = fn(bits) & ((1 << len(targets)) - 1)
        if value == 0:
            continue
        fixed = {q: b for q, b in zip(select, bits)}
        for j, q in enumerate(targets):
            if (value >> (len(targets) - 1 - j)) & 1:
                state._swap_slices(q, fixed)
    return state


# ---------------------------------------------------------------------------
# comparison


def states_equal(a: StateVector, b: StateVector, tol: float = 1e-9) -> bool:
    """True iff |<a|b>| >= 1 - tol (global phase ignored)."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n} qubits")
    overlap = abs(np.vdot(a.amps, b.amps))
    overlap /= math.sqrt(a.norm_sq() * b.norm_sq())
    return overlap >= 1.0 - tol
