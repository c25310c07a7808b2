"""Energy-style bookkeeping for two-qubit entanglement.

The asymptotic quantities (preparation cost and distillable entanglement)
are not computable at desk scale, so this module reports labeled proxies:

* ``e_tot_proxy_bits``  - entanglement of formation (closed form), standing
  in for the preparation cost it upper-bounds;
* ``e_free_proxy_bits`` - the hashing yield max(0, 1 - S) of a Bell-diagonal
  state, a lower bound on distillable entanglement;
* ``e_free_upper_bits`` - the 1 - H(F) upper bound on distillable
  entanglement of the Werner family, so the two bounds bracket the truth;
* ``e_bound_proxy_bits``- their difference, clipped at zero.

The temperature proxy divides (total - free) by the von Neumann entropy.  It
is None for (near-)pure states, where free = total by convention, and zero
for separable states.
"""

from __future__ import annotations

import dataclasses
from typing import Optional

import numpy as np

from .errors import ParameterError, PreconditionError
from .measures import binary_entropy, eof_two_qubit, von_neumann_entropy
from .states import DensityMatrix, bell_basis_matrix
from .twirl import twirl_two_qubit_werner

BELL_DIAGONAL_ATOL = 1e-9
_PURE_S_ATOL = 1e-9
_SEPARABLE_EF_ATOL = 1e-12


def bell_weights(rho: DensityMatrix, atol: float = BELL_DIAGONAL_ATOL) -> Optional[np.ndarray]:
    """Bell-basis weights if rho is Bell-diagonal within atol, else None."""
    if rho.dims.as_tuple() != (2, 2):
        return None
    b = bell_basis_matrix()
    in_bell = b.conj().T @ rho.matrix @ b
    off = in_bell - np.diag(np.diag(in_bell))
    if np.max(np.abs(off)) > atol:
        return None
    return np.clip(np.diag(in_bell).real, 0.0, None)


def hashing_yield(rho: DensityMatrix) -> float:
    """Distillation yield of hashing on a Bell-diagonal state: max(0, 1 - S).

    For these states the yield coincides with max(0, G_A, G_B), since both
    reductions are maximally mixed.  Raises for non-Bell-diagonal input;
    twirl first to land in the family.
    """
    w = bell_weights(rho)
    if w is None:
        raise PreconditionError(
            "hashing yield needs a Bell-diagonal state; apply a two-qubit twirl first"
        )
    return max(0.0, 1.0 - von_neumann_entropy(rho))


def rains_upper_bound_werner(f: float) -> float:
    """Upper bound 1 - H(F) on the distillable entanglement of a Werner state."""
    if not (0.5 - 1e-12 <= f <= 1 + 1e-12):
        raise ParameterError(f"Werner fidelity must lie in [1/2, 1], got {f!r}")
    return 1.0 - binary_entropy(min(max(f, 0.5), 1.0))


@dataclasses.dataclass
class ThermoReport:
    """Proxy bookkeeping for one two-qubit state."""

    entropy_bits: float
    e_tot_proxy_bits: float
    e_free_proxy_bits: float
    e_free_upper_bits: float
    e_bound_proxy_bits: float
    temperature_proxy: Optional[float] = None
    temperature_proxy_low: Optional[float] = None
    twirled: bool = False

    _FIELDS = (
        "entropy_bits",
        "e_tot_proxy_bits",
        "e_free_proxy_bits",
        "e_free_upper_bits",
        "e_bound_proxy_bits",
        "temperature_proxy",
        "temperature_proxy_low",
        "twirled",
    )

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self._FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "ThermoReport":
        return cls(**{name: data[name] for name in cls._FIELDS})


def temperature_proxy(rho: DensityMatrix) -> ThermoReport:
    """Temperature-style ratio (total - free) / S from the labeled proxies.

    Non-Bell-diagonal inputs are twirled before the hashing yield is taken
    (recorded in the ``twirled`` field).  Pure states report free = total and
    no temperature; separable states report temperature zero.
    """
    entropy = von_neumann_entropy(rho)
    e_tot = eof_two_qubit(rho)

    weights = bell_weights(rho)
    twirled = weights is None
    work = twirl_two_qubit_werner(rho) if twirled else rho
    if twirled:
        weights = bell_weights(work)

    if entropy <= _PURE_S_ATOL:
        # for pure states the distillable entanglement equals the cost
        return ThermoReport(
            entropy_bits=entropy,
            e_tot_proxy_bits=e_tot,
            e_free_proxy_bits=e_tot,
            e_free_upper_bits=e_tot,
            e_bound_proxy_bits=0.0,
            twirled=twirled,
        )

    e_free = hashing_yield(work)
    top = float(np.max(weights))
    e_free_upper = rains_upper_bound_werner(top) if top > 0.5 else 0.0

    e_bound = max(0.0, e_tot - e_free)
    if e_tot <= _SEPARABLE_EF_ATOL:
        temperature: Optional[float] = 0.0
        temperature_low: Optional[float] = 0.0
    else:
        temperature = (e_tot - e_free) / entropy
        temperature_low = max(0.0, e_tot - e_free_upper) / entropy
    return ThermoReport(
        entropy_bits=entropy,
        e_tot_proxy_bits=e_tot,
        e_free_proxy_bits=e_free,
        e_free_upper_bits=e_free_upper,
        e_bound_proxy_bits=e_bound,
        temperature_proxy=temperature,
        temperature_proxy_low=temperature_low,
        twirled=twirled,
    )


def werner_thermo_rows(f_values) -> list[tuple[float, ThermoReport]]:
    """Thermo reports along the Werner family, for tables and sweeps."""
    from .states import werner

    return [(float(f), temperature_proxy(werner(float(f)))) for f in f_values]
