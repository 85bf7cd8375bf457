"""Two independent checks that a gate sequence implements its target.

The symbolic check compares Heisenberg images of every quadrature operator,
computed exactly through terminating adjoint series; it is blind to global
phase. The numeric check multiplies truncated-Fock gate matrices and compares
against the exact exponential on a low-lying subspace, which also pins down
the phase.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import NOPoly, adjoint_series
from .circuit import EXPPOLY, FOURIER, Gate, GateSeq, heisenberg_conjugate


class DimensionTooLarge(Exception):
    """Requested truncated Hilbert space exceeds the safe size bound."""


# full many-mode dimension cap for numeric verification
MAX_FULL_DIM = 200_000


@dataclass(frozen=True)
class FockContext:
    """Truncation parameters for numeric verification.

    cutoff: levels kept per mode when simulating the gates.
    subspace: levels per mode on which the comparison is made.
    tolerance: acceptance threshold for the subspace error.
    """

    cutoff: int = 24
    subspace: int = 5
    tolerance: float = 1e-5

    def __post_init__(self):
        if self.subspace > self.cutoff // 3:
            raise ValueError("subspace must satisfy d <= D/3")


def fock_matrices(cutoff: int):
    """Return (X, P, a) as dense matrices at the given cutoff.

    a is the standard ladder matrix; X = (a† + a)/2, P = i(a† - a)/2, both
    Hermitian by construction.
    """
    a = np.zeros((cutoff, cutoff), dtype=complex)
    for m in range(cutoff - 1):
        a[m, m + 1] = np.sqrt(m + 1.0)
    x = (a.conj().T + a) / 2.0
    p = 1j * (a.conj().T - a) / 2.0
    return x, p, a


def heisenberg_action(seq: GateSeq, b: NOPoly) -> NOPoly:
    """Exact image U† b U for the unitary U described by seq.

    Folding runs through the gate list front to back: the leftmost (last
    applied) gate conjugates first. Exponential gates enter daggered so each
    step is g† b g; the Fourier rule of heisenberg_conjugate is already in
    that orientation.
    """
    for g in seq.gates:
        if g.kind == EXPPOLY:
            b = heisenberg_conjugate(g.inverse(), b)
        else:
            b = heisenberg_conjugate(g, b)
    return b


def target_action(generator: NOPoly, strength: float, b: NOPoly) -> NOPoly:
    """Exact image e^{-isG} b e^{isG} of the ideal target gate."""
    return adjoint_series(generator.scale(-1j * strength), b)


def verify_symbolic(seq: GateSeq, generator: NOPoly, strength: float) -> float:
    """Worst-case Heisenberg residual of seq against e^{i*strength*generator}.

    Compares the image of X_m and P_m for every mode the sequence touches;
    ancilla modes must return to themselves (the target acts as identity
    there). Returns the largest absolute coefficient deviation; exact
    circuits give ~1e-12 (floating-point noise only).
    """
    residual = 0.0
    for m in seq.all_modes():
        for b in (NOPoly.x(m), NOPoly.p(m)):
            got = heisenberg_action(seq, b)
            want = target_action(generator, strength, b)
            diff = got - want
            residual = max(residual,
                           max((abs(c) for c in diff.terms.values()), default=0.0))
    return residual


# internal padding for per-gate exponentials: each gate is evaluated on a
# larger position grid and projected back, which converges much faster than
# exponentiating cutoff-truncated generators directly
INTERNAL_PAD = 24


def _position_basis(d_int: int):
    """Eigendecomposition of the truncated position operator.

    Returns (lam, v) with X v[:,a] = lam[a] v[:,a]; the columns form the
    discrete quadrature grid used to apply position-diagonal gates.
    """
    x, _, _ = fock_matrices(d_int)
    return np.linalg.eigh(x)


def _mode_split(generator: NOPoly):
    """Classify each mode of the generator as position-only or momentum-only.

    Returns (pmodes, xgen) where xgen replaces P_m by X_m for the momentum
    modes, valid under e^{isG} = (Π F_m) e^{isG'} (Π F_m†); None when some
    mode mixes X and P factors across the terms.
    """
    basis: dict[int, str] = {}
    for key, _ in generator.terms.items():
        for m, a, b in key:
            want = "x" if a else "p"
            if a and b:
                return None
            if basis.setdefault(m, want) != want:
                return None
    pmodes = [m for m, kind in basis.items() if kind == "p"]
    if not pmodes:
        return [], generator
    terms = {}
    for key, coeff in generator.terms.items():
        new_key = tuple(sorted((m, a + b, 0) if m in pmodes else (m, a, b)
                               for m, a, b in key))
        terms[new_key] = terms.get(new_key, 0.0) + coeff
    return pmodes, NOPoly(terms)


class _NumericEngine:
    """Applies gates to subspace columns of a multi-mode truncated space."""

    def __init__(self, modes: list[int], cutoff: int):
        self.modes = modes
        self.axis_of = {m: i for i, m in enumerate(modes)}
        self.D = cutoff
        self.d_int = cutoff + INTERNAL_PAD
        lam, v = _position_basis(self.d_int)
        self.lam = lam
        self.proj = v[:cutoff, :]  # Fock (D) <- grid (d_int)
        n = np.arange(cutoff)
        self.fourier_diag = np.exp(1j * np.pi / 2 * (n + 0.5))

    def _axis_apply(self, state, mat, axis):
        t = np.tensordot(mat, state, axes=(1, axis))
        return np.moveaxis(t, 0, axis)

    def _diag_apply(self, state, diag, axis):
        shape = [1] * state.ndim
        shape[axis] = len(diag)
        return state * diag.reshape(shape)

    def _apply_position_exp(self, state, strength, xgen: NOPoly):
        """state <- e^{i*strength*xgen} state for a position-diagonal xgen."""
        axes = sorted(self.axis_of[m] for m in xgen.modes())
        for ax in axes:
            state = self._axis_apply(state, self.proj.conj().T, ax)
        phase = np.zeros([len(self.lam)] * len(axes))
        mode_of_axis = {self.axis_of[m]: m for m in xgen.modes()}
        for key, coeff in xgen.terms.items():
            exps = {m: a for m, a, _ in key}
            term = np.array(coeff.real)
            for i, ax in enumerate(axes):
                lam_pow = self.lam ** exps.get(mode_of_axis[ax], 0)
                shape = [1] * len(axes)
                shape[i] = len(self.lam)
                term = term * lam_pow.reshape(shape)
            phase = phase + term
        diag = np.exp(1j * strength * phase)
        flat = diag.reshape(-1)
        # multiply the grid axes by the joint diagonal
        grid_axes = axes
        moved = np.moveaxis(state, grid_axes, range(len(grid_axes)))
        lead = moved.shape[:len(grid_axes)]
        rest = moved.reshape(int(np.prod(lead)), -1)
        rest = rest * flat[:, None]
        moved = rest.reshape(moved.shape)
        state = np.moveaxis(moved, range(len(grid_axes)), grid_axes)
        for ax in axes:
            state = self._axis_apply(state, self.proj, ax)
        return state

    def _apply_dense_exp(self, state, strength, generator: NOPoly):
        """Fallback for generators mixing X and P on one mode: dense
        exponential at the bare cutoff (no padding)."""
        gmodes = sorted(generator.modes(), key=lambda m: self.axis_of[m])
        D = self.D
        dim = D ** len(gmodes)
        if dim > 5000:
            raise DimensionTooLarge(
                f"mixed-basis generator on {len(gmodes)} modes at cutoff {D}")
        x, p, _ = fock_matrices(D)
        h = np.zeros((dim, dim), dtype=complex)
        for key, coeff in generator.terms.items():
            exps = {m: (a, b) for m, a, b in key}
            term = np.ones((1, 1), dtype=complex)
            for m in gmodes:
                a, b = exps.get(m, (0, 0))
                term = np.kron(term, np.linalg.matrix_power(x, a)
                               @ np.linalg.matrix_power(p, b))
            h = h + coeff * term
        h = strength * (h + h.conj().T) / 2.0
        evals, evecs = np.linalg.eigh(h)
        u = (evecs * np.exp(1j * evals)) @ evecs.conj().T
        axes = [self.axis_of[m] for m in gmodes]
        r = len(axes)
        ug = u.reshape([D] * (2 * r))
        t = np.tensordot(ug, state, axes=(list(range(r, 2 * r)), axes))
        return np.moveaxis(t, range(r), axes)

    def apply_exp(self, state, strength, generator: NOPoly):
        split = _mode_split(generator)
        if split is None:
            return self._apply_dense_exp(state, strength, generator)
        pmodes, xgen = split
        for m in pmodes:
            state = self._diag_apply(state, self.fourier_diag.conj(),
                                     self.axis_of[m])
        state = self._apply_position_exp(state, strength, xgen)
        for m in pmodes:
            state = self._diag_apply(state, self.fourier_diag, self.axis_of[m])
        return state

    def apply_gate(self, state, g: Gate):
        if g.kind == FOURIER:
            diag = (self.fourier_diag if g.power == 1
                    else self.fourier_diag.conj())
            return self._diag_apply(state, diag, self.axis_of[g.mode])
        return self.apply_exp(state, g.strength, g.generator)


def verify_numeric(seq: GateSeq, generator: NOPoly, strength: float,
                   ctx: FockContext) -> tuple[float, float]:
    """Truncated-Fock comparison of seq against e^{i*strength*generator}.

    Applies each gate's exponential to the basis columns of the
    lowest-d-levels subspace (gates are evaluated on an internally padded
    quadrature grid and projected back, so per-gate truncation artifacts
    stay far below the genuine circuit leakage), then compares the subspace
    block of the result against the block of the target exponential.
    Returns (subspace_error, phase_offset): the largest singular value of
    the projected difference after optimal global-phase alignment, and that
    aligning phase.
    """
    modes = seq.all_modes()
    nmodes = len(modes)
    D, d = ctx.cutoff, ctx.subspace
    if D ** nmodes > MAX_FULL_DIM:
        raise DimensionTooLarge(
            f"{nmodes} modes at cutoff {D} exceed the bound {MAX_FULL_DIM}")
    eng = _NumericEngine(modes, D)

    cols = d ** nmodes
    state = np.zeros([D] * nmodes + [cols], dtype=complex)
    for c, tup in enumerate(itertools.product(range(d), repeat=nmodes)):
        state[tup + (c,)] = 1.0
    ref = state.copy()

    for g in reversed(seq.gates):  # rightmost gate acts first
        state = eng.apply_gate(state, g)
    ref = eng.apply_exp(ref, strength, generator)

    sub = tuple(slice(0, d) for _ in range(nmodes))
    a_blk = state[sub].reshape(cols, cols)
    b_blk = ref[sub].reshape(cols, cols)
    phase = np.angle(np.trace(b_blk.conj().T @ a_blk))
    err = np.linalg.norm(a_blk - np.exp(1j * phase) * b_blk, 2)
    return float(err), float(phase)
