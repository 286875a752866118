"""Dense product-basis algebra for chains of spin-1/2 sites.

Basis convention (shared by every module in this package): a chain of
``L`` sites is indexed by basis integers ``b`` in ``[0, 2**L)``.  Site
``i`` (1-based, site 1 = most significant bit) stores the bit
``(b >> (L - i)) & 1``; bit value 0 encodes ``sigma_z = +1`` and bit
value 1 encodes ``sigma_z = -1``.  Entropies are reported in bits
(base-2 logarithm).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_SITES",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "StateVector",
    "DensityMatrix",
    "DenseOperator",
    "basis_spins",
    "sigma_z_signs",
    "embed_site_operator",
    "partial_trace",
    "von_neumann_entropy",
    "expectation_sigma_z",
]

# Dense-method ceiling on the chain length (2**L amplitudes).
MAX_SITES = 14

NORM_ATOL = 1e-10
HERMITIAN_ATOL = 1e-10
# Eigenvalues below this are treated as exact zeros in entropies.
ENTROPY_EIGENVALUE_FLOOR = 1e-14

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def _frozen_complex_array(values, shape):
    arr = np.array(values, dtype=complex, copy=True)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("array contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of ``length`` spin-1/2 sites.

    ``amplitudes[b]`` is the coefficient of basis integer ``b`` under the
    module's bit convention.  Instances are immutable; the amplitude
    array is read-only.
    """

    length: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.length <= MAX_SITES:
            raise ValueError(f"length must be in [1, {MAX_SITES}], got {self.length}")
        amps = _frozen_complex_array(self.amplitudes, (2**self.length,))
        norm_sq = float(np.real(np.vdot(amps, amps)))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.length


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace density matrix of dimension ``dim``."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = _frozen_complex_array(self.matrix, (self.dim, self.dim))
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_ATOL:
            raise ValueError("density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > HERMITIAN_ATOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Dense operator of dimension ``dim`` with an explicit Hermiticity flag."""

    dim: int
    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        mat = _frozen_complex_array(self.matrix, (self.dim, self.dim))
        if self.hermitian and np.max(np.abs(mat - mat.conj().T)) >= 1e-12:
            raise ValueError("operator flagged Hermitian is not Hermitian")
        object.__setattr__(self, "matrix", mat)


def basis_spins(length: int) -> np.ndarray:
    """Table of sigma_z eigenvalues, shape ``(2**length, length)``.

    Row ``b``, column ``i - 1`` holds ``s_i(b) = +1`` or ``-1`` for site
    ``i`` under the bit convention (bit 0 -> +1).
    """
    b = np.arange(2**length, dtype=np.int64)[:, None]
    shifts = length - 1 - np.arange(length, dtype=np.int64)[None, :]
    bits = (b >> shifts) & 1
    return (1 - 2 * bits).astype(np.float64)


def sigma_z_signs(length: int, site: int) -> np.ndarray:
    """sigma_z eigenvalue of ``site`` for every basis integer (bit-masked)."""
    _check_site(site, length)
    b = np.arange(2**length, dtype=np.int64)
    bits = (b >> (length - site)) & 1
    return (1 - 2 * bits).astype(np.float64)


def _check_site(site: int, length: int):
    if not 1 <= site <= length:
        raise ValueError(f"site {site} out of range 1..{length}")


def embed_site_operator(op2x2: np.ndarray, site: int, length: int) -> DenseOperator:
    """Embed a single-site operator: I (x) ... (x) op (x) ... (x) I.

    ``site`` counts from 1 at the most significant bit, so site 1 is the
    leftmost Kronecker factor.
    """
    _check_site(site, length)
    op = np.asarray(op2x2, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"expected a 2x2 operator, got shape {op.shape}")
    if not np.all(np.isfinite(op.view(float))):
        raise ValueError("operator contains non-finite entries")
    left = np.eye(2 ** (site - 1), dtype=complex)
    right = np.eye(2 ** (length - site), dtype=complex)
    full = np.kron(left, np.kron(op, right))
    hermitian = bool(np.max(np.abs(op - op.conj().T)) < 1e-12)
    return DenseOperator(dim=2**length, matrix=full, hermitian=hermitian)


def partial_trace(state: StateVector, keep) -> DensityMatrix:
    """Reduced density matrix over the ordered site subset ``keep``.

    ``keep`` must be nonempty, strictly increasing and within
    ``1..state.length``; everything else is traced out.
    """
    keep = tuple(int(s) for s in keep)
    if not keep:
        raise ValueError("keep must be a nonempty site subset")
    if any(not 1 <= s <= state.length for s in keep):
        raise ValueError(f"keep {keep} not a subset of 1..{state.length}")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise ValueError(f"keep {keep} must be strictly increasing")

    length = state.length
    keep_axes = [s - 1 for s in keep]
    traced_axes = [a for a in range(length) if a not in keep_axes]
    tensor = state.amplitudes.reshape((2,) * length)
    mat = np.transpose(tensor, keep_axes + traced_axes).reshape(
        2 ** len(keep), 2 ** (length - len(keep))
    )
    rho = mat @ mat.conj().T
    return DensityMatrix(dim=2 ** len(keep), matrix=rho)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy -sum_k lam_k log2 lam_k, in bits.

    Eigenvalues below the clamp threshold contribute zero; tiny negative
    eigenvalues from eigensolver noise are discarded the same way.
    """
    eigenvalues = np.linalg.eigvalsh(rho.matrix)
    lam = eigenvalues[eigenvalues > ENTROPY_EIGENVALUE_FLOOR]
    if lam.size == 0:
        return 0.0
    return max(float(-np.sum(lam * np.log2(lam))), 0.0)


def expectation_sigma_z(state: StateVector, site: int) -> float:
    """<psi| sigma_z(site) |psi> via bit-masked amplitude sums."""
    signs = sigma_z_signs(state.length, site)
    probs = np.real(state.amplitudes.conj() * state.amplitudes)
    return float(np.dot(signs, probs))
