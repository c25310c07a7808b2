"""Local orthogonality of pure-state ensembles.

Two states are k-locally orthogonal when at least k single-subsystem
reductions are pairwise orthogonal (Tr(rho^psi_l rho^phi_l) = 0).  An
ensemble is locally orthogonal when its members can be ordered so that each
element is 1-locally orthogonal, on one common subsystem, to all of its
successors; the witness subsystem may differ between elements.  Mixtures
built from such ensembles can be locally sorted without destroying the
members, so their distillable entanglement and preparation cost both equal
the plain ensemble average of the members' entanglement.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Optional, Sequence, Union

import numpy as np

from .errors import CapacityError, DimensionError, ParameterError, PreconditionError
from .measures import _entropy_of_eigenvalues
from .states import Ensemble, PureState

ORTHOGONALITY_ATOL = 1e-10
REVERIFY_ATOL = 1e-9
SEARCH_CAP = 12

StateLike = Union[PureState, np.ndarray, Sequence[complex]]
MultiDims = tuple[int, ...]


def _amplitudes(state: StateLike) -> np.ndarray:
    if isinstance(state, PureState):
        return np.asarray(state.amplitudes)
    vec = np.asarray(state, dtype=complex)
    if vec.ndim != 1:
        raise DimensionError(f"expected an amplitude vector, got shape {vec.shape}")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise ParameterError(f"amplitude vector norm {norm!r} differs from 1")
    return vec


def _check_dims(vec: np.ndarray, dims: Sequence[int]) -> MultiDims:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ParameterError(f"subsystem dimensions must be positive, got {dims}")
    if math.prod(dims) != vec.size:
        raise DimensionError(f"dims {dims} do not match vector length {vec.size}")
    return dims


def single_party_reduction(state: StateLike, dims: Sequence[int], l: int) -> np.ndarray:
    """Reduced density matrix of subsystem ``l`` of a pure multiparty state."""
    vec = _amplitudes(state)
    dims = _check_dims(vec, dims)
    if not (0 <= l < len(dims)):
        raise ParameterError(f"subsystem index {l} out of range for {len(dims)} subsystems")
    t = vec.reshape(dims)
    other = tuple(ax for ax in range(len(dims)) if ax != l)
    return np.tensordot(t, t.conj(), axes=(other, other))


def reduction_overlap(psi: StateLike, phi: StateLike, dims: Sequence[int], l: int) -> float:
    """Tr(rho^psi_l rho^phi_l); zero exactly when the reductions are orthogonal."""
    r1 = single_party_reduction(psi, dims, l)
    r2 = single_party_reduction(phi, dims, l)
    return float(max(0.0, np.trace(r1 @ r2).real))


def k_locally_orthogonal(
    psi: StateLike,
    phi: StateLike,
    dims: Sequence[int],
    k: int,
    tol: float = ORTHOGONALITY_ATOL,
) -> tuple[bool, tuple[int, ...]]:
    """Whether at least k subsystem reductions of the pair are orthogonal.

    Returns the verdict together with all witnessing subsystem indices.
    """
    dims = _check_dims(_amplitudes(psi), dims)
    if not (1 <= k <= len(dims)):
        raise ParameterError(f"k must lie in [1, {len(dims)}], got {k}")
    witnesses = tuple(
        l for l in range(len(dims)) if reduction_overlap(psi, phi, dims, l) < tol
    )
    return len(witnesses) >= k, witnesses


@dataclasses.dataclass(frozen=True)
class LOCertificate:
    """Witnessed ordering certifying that an ensemble is locally orthogonal.

    ``ordering`` holds 0-based member indices; ``witness_subsystem[m]`` is the
    subsystem on which element m's reduction is orthogonal to every later
    element's (None for the final element, which has no successors).
    """

    ordering: tuple[int, ...]
    witness_subsystem: tuple[Optional[int], ...]

    def verify(self, states: Sequence[StateLike], dims: Sequence[int],
               tol: float = REVERIFY_ATOL) -> bool:
        for pos, idx in enumerate(self.ordering):
            wit = self.witness_subsystem[pos]
            if pos == len(self.ordering) - 1:
                continue
            if wit is None:
                return False
            for later in self.ordering[pos + 1:]:
                if reduction_overlap(states[idx], states[later], dims, wit) >= tol:
                    return False
        return True


def _member_states(e: Union[Ensemble, Sequence[StateLike]]) -> list[np.ndarray]:
    if isinstance(e, Ensemble):
        return [np.asarray(psi.amplitudes) for _, psi in e.members]
    return [_amplitudes(s) for s in e]


def ensemble_locally_orthogonal(
    e: Union[Ensemble, Sequence[StateLike]],
    dims: Optional[Sequence[int]] = None,
    tol: float = ORTHOGONALITY_ATOL,
) -> Optional[LOCertificate]:
    """Search for a local-orthogonality ordering; None when none exists.

    Backtracking over orderings with a memoized pairwise overlap table; an
    element may be placed first among a remaining set iff one subsystem
    witnesses its orthogonality to every other remaining element.  Capped at
    SEARCH_CAP members.
    """
    if dims is None:
        if not isinstance(e, Ensemble):
            raise ParameterError("dims are required unless an Ensemble is given")
        dims = e.dims.as_tuple()
    states = _member_states(e)
    n = len(states)
    if n > SEARCH_CAP:
        raise CapacityError(f"ordering search capped at {SEARCH_CAP} members, got {n}")
    dims = _check_dims(states[0], dims)
    n_sub = len(dims)

    orth = [[[False] * n_sub for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n_sub):
                ok = reduction_overlap(states[i], states[j], dims, l) < tol
                orth[i][j][l] = orth[j][i][l] = ok

    memo: dict[frozenset, Optional[list]] = {}

    def search(remaining: frozenset) -> Optional[list]:
        if len(remaining) == 1:
            (idx,) = remaining
            return [(idx, None)]
        if remaining in memo:
            return memo[remaining]
        result = None
        for i in sorted(remaining):
            rest = remaining - {i}
            witness = next(
                (l for l in range(n_sub) if all(orth[i][j][l] for j in rest)),
                None,
            )
            if witness is None:
                continue
            tail = search(rest)
            if tail is not None:
                result = [(i, witness)] + tail
                break
        memo[remaining] = result
        return result

    found = search(frozenset(range(n)))
    if found is None:
        return None
    cert = LOCertificate(
        ordering=tuple(idx for idx, _ in found),
        witness_subsystem=tuple(wit for _, wit in found),
    )
    if not cert.verify(states, dims):
        return None
    return cert


def _pure_entanglement_bipartite(vec: np.ndarray, dims: MultiDims) -> float:
    m = vec.reshape(dims)
    sv = np.linalg.svd(m, compute_uv=False)
    return _entropy_of_eigenvalues(sv * sv)


def lo_ensemble_eof(e: Ensemble, dims: Optional[Sequence[int]] = None) -> float:
    """Entanglement of formation of a locally orthogonal two-party mixture.

    For such mixtures the ensemble average sum_i p_i E(psi_i) is not just an
    upper bound: it equals the entanglement of formation, the distillable
    entanglement and the asymptotic preparation cost of the mixed state, so
    the returned value stands for all three.
    """
    if dims is None:
        dims = e.dims.as_tuple()
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2:
        raise DimensionError(f"entanglement of the mixture needs a two-party split, got {dims}")
    cert = ensemble_locally_orthogonal(e, dims)
    if cert is None:
        raise PreconditionError("ensemble is not locally orthogonal; the average over members "
                                "would only be an upper bound")
    return math.fsum(
        w * _pure_entanglement_bipartite(np.asarray(psi.amplitudes), dims)
        for w, psi in e.members
    )
