"""Twirling channel (averaging over U (x) U* conjugations) and its effect on
entanglement of formation.

The Haar average is implemented exactly as the two-parameter projection onto
the isotropic family: the image of any input is fully determined by its
fidelity with the maximally entangled state, so no unitary sampling is
needed (tests sample unitaries to check invariance).  For two qubits the
isotropic family written in the Bell basis is the Werner family, since the
maximally entangled reference state here is Psi+ itself.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import DimensionError, ParameterError
from .measures import binary_entropy, eof_werner_closed_form
from .states import DensityMatrix, Dims, bell_diagonal, bell_state, max_entangled, projector


def _square_local_dim(rho: DensityMatrix) -> int:
    da, db = rho.dims.as_tuple()
    if da != db:
        raise DimensionError(f"twirling needs an N x N split, got {rho.dims.as_tuple()}")
    return da


def maxent_fidelity(rho: DensityMatrix) -> float:
    """Overlap <P+| rho |P+> with the maximally entangled state of an N x N system."""
    n = _square_local_dim(rho)
    amps = max_entangled(n).amplitudes
    return float(np.real(amps.conj() @ rho.matrix @ amps))


def twirl_isotropic(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the isotropic family at the input's fidelity.

    Output: N^2/(N^2-1) * ((1-F) I/N^2 + (F - 1/N^2) P+), F = <P+|rho|P+>.
    Idempotent, and fixes both P+ and the maximally mixed state.
    """
    n = _square_local_dim(rho)
    f = maxent_fidelity(rho)
    n2 = n * n
    p_plus = projector(max_entangled(n)).matrix
    mat = (n2 / (n2 - 1.0)) * ((1.0 - f) * np.eye(n2) / n2 + (f - 1.0 / n2) * p_plus)
    return DensityMatrix(mat, Dims(n, n))


def twirl_two_qubit_werner(rho: DensityMatrix) -> DensityMatrix:
    """Two-qubit twirl, expressed Bell-diagonally: Werner state at F = <Psi+|rho|Psi+>."""
    if rho.dims.as_tuple() != (2, 2):
        raise DimensionError(f"expected a (2, 2) state, got {rho.dims.as_tuple()}")
    amps = bell_state("psi+").amplitudes
    f = float(np.real(amps.conj() @ rho.matrix @ amps))
    f = min(max(f, 0.0), 1.0)
    rest = (1.0 - f) / 3.0
    return bell_diagonal([f, rest, rest, rest])


@dataclasses.dataclass(frozen=True)
class PreservationResult:
    a: float
    e_pure_bits: float
    e_twirled_bits: float
    preserved: bool

    @property
    def difference(self) -> float:
        return abs(self.e_pure_bits - self.e_twirled_bits)


def check_preservation(a: float) -> PreservationResult:
    """Compare E_f of a|00> + b|11| before and after the two-qubit twirl.

    With b = sqrt(1 - a^2), the twirl sends the state to the Werner state at
    F = (a+b)^2/2, and H(1/2 + sqrt(F(1-F))) collapses back to H(a^2): the
    twirl preserves entanglement of formation for every Schmidt-aligned
    two-qubit pure state.  The input is assumed Schmidt-aligned with the
    computational basis; rotate first otherwise.
    """
    if not (0.0 <= a <= 1.0):
        raise ParameterError(f"Schmidt coefficient must lie in [0, 1], got {a!r}")
    b = math.sqrt(max(0.0, 1.0 - a * a))
    e_pure = binary_entropy(a * a)
    f = 0.5 * (a + b) ** 2
    e_twirled = eof_werner_closed_form(min(max(f, 0.25), 1.0))
    return PreservationResult(a, e_pure, e_twirled, abs(e_pure - e_twirled) < 1e-9)


def isotropic_eof_upper_bound(n: int, f: float) -> float:
    """Upper bound on E_f of the isotropic state: (n f - 1)/(n - 1) * log2 n.

    Follows from splitting sigma(f) into the separable sigma(1/n) plus a P+
    component.  For f below 1/n the state is separable (bound 0); that is
    reported as a parameter error naming the fact.
    """
    n = int(n)
    if n < 2:
        raise ParameterError(f"local dimension must be >= 2, got {n}")
    if f > 1 + 1e-12:
        raise ParameterError(f"fidelity must lie in [0, 1], got {f!r}")
    if f < 1.0 / n - 1e-12:
        raise ParameterError(
            f"fidelity {f!r} is below 1/{n}: the isotropic state is separable there "
            "and the entanglement bound is 0"
        )
    f = min(max(f, 1.0 / n), 1.0)
    return (n * f - 1.0) / (n - 1.0) * math.log2(n)
