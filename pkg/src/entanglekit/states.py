"""State primitives for bipartite quantum systems.

Basis convention used everywhere in this package: the product basis vector
|i>_A |j>_B of a (dA, dB) system sits at flat index ``i * dB + j``.  All
block operations (tensor products, reductions, partial transposition) depend
on this ordering.

Bell basis, in the order used throughout: Psi+- = (|00> +- |11>)/sqrt(2),
Phi+- = (|01> +- |10>)/sqrt(2).  The maximally entangled reference state of
an N x N system is (1/sqrt(N)) sum_i |ii>, which for N = 2 equals Psi+.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DimensionError,
    ParameterError,
    SizeError,
    ValidationError,
)

# Largest dA*dB this package will construct.  Dense eigensolves beyond this
# stop being interactive; raise it at your own risk.
MAX_TOTAL_DIM = 64

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-10
NORM_ATOL = 1e-12
WEIGHT_ATOL = 1e-12

BELL_LABELS = ("psi+", "psi-", "phi+", "phi-")


@dataclasses.dataclass(frozen=True)
class Dims:
    """Dimension tag (dA, dB) for a bipartite system."""

    da: int
    db: int

    def __post_init__(self):
        if not (isinstance(self.da, int) and isinstance(self.db, int)):
            raise ParameterError("subsystem dimensions must be integers")
        if self.da < 1 or self.db < 1:
            raise ParameterError(f"subsystem dimensions must be >= 1, got {self.da}x{self.db}")
        if self.total > MAX_TOTAL_DIM:
            raise SizeError(
                f"total dimension {self.total} exceeds the configured maximum {MAX_TOTAL_DIM}"
            )

    @property
    def total(self) -> int:
        return self.da * self.db

    def as_tuple(self) -> tuple[int, int]:
        return (self.da, self.db)


DimsLike = Union[Dims, tuple[int, int], list]


def as_dims(dims: DimsLike) -> Dims:
    if isinstance(dims, Dims):
        return dims
    da, db = dims
    return Dims(int(da), int(db))


def _as_complex_array(data, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=complex)
    if not np.all(np.isfinite(arr.view(float))):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True)
class PureState:
    """Normalized state vector over a (dA, dB) product space."""

    amplitudes: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = _as_complex_array(self.amplitudes, "amplitudes")
        if amps.ndim != 1 or amps.shape[0] != dims.total:
            raise DimensionError(
                f"amplitude vector has length {amps.shape}, expected {dims.total} for dims {dims.as_tuple()}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValidationError(f"state vector norm {norm!r} differs from 1 beyond {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", _freeze(amps))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_unnormalized(cls, amplitudes, dims: DimsLike) -> "PureState":
        amps = _as_complex_array(amplitudes, "amplitudes")
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValidationError("cannot normalize the zero vector")
        return cls(amps / norm, as_dims(dims))


@dataclasses.dataclass(frozen=True)
class DensityMatrix:
    """Trace-one positive-semidefinite Hermitian matrix with bipartite dims."""

    matrix: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = as_dims(self.dims)
        mat = _as_complex_array(self.matrix, "matrix")
        n = dims.total
        if mat.shape != (n, n):
            raise DimensionError(f"matrix has shape {mat.shape}, expected ({n}, {n}) for dims {dims.as_tuple()}")
        herm_gap = np.max(np.abs(mat - mat.conj().T))
        if herm_gap > HERMITICITY_ATOL:
            raise ValidationError(f"matrix is not Hermitian: max |M - M^dag| = {herm_gap:.3e}")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"trace {tr!r} differs from 1 beyond {TRACE_ATOL}")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -PSD_ATOL:
            raise ValidationError(f"matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "matrix", _freeze(mat))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_matrix(cls, matrix, dims: DimsLike, renormalize: bool = False) -> "DensityMatrix":
        """Build a density matrix, optionally repairing tolerance-level defects.

        With ``renormalize=True``, eigenvalues in [-PSD_ATOL, 0) are clipped
        to zero and the trace is rescaled to one.  Violations beyond the
        tolerances are still rejected.
        """
        if not renormalize:
            return cls(matrix, as_dims(dims))
        mat = _as_complex_array(matrix, "matrix")
        mat = 0.5 * (mat + mat.conj().T)
        vals, vecs = np.linalg.eigh(mat)
        if vals[0] < -PSD_ATOL:
            raise ValidationError(f"matrix is not positive semidefinite: min eigenvalue {vals[0]:.3e}")
        vals = np.clip(vals, 0.0, None)
        mat = (vecs * vals) @ vecs.conj().T
        tr = mat.trace().real
        if abs(tr - 1.0) > 1e-6:
            raise ValidationError(f"trace {tr!r} too far from 1 to renormalize")
        return cls(mat / tr, as_dims(dims))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


@dataclasses.dataclass(frozen=True)
class Ensemble:
    """Weighted list of pure states realizing a mixed state."""

    members: tuple
    dims: Dims

    def __post_init__(self):
        dims = as_dims(self.dims)
        members = tuple((float(w), psi) for w, psi in self.members)
        if not members:
            raise ValidationError("ensemble must have at least one member")
        for w, psi in members:
            if w < 0:
                raise ValidationError(f"ensemble weight {w!r} is negative")
            if not isinstance(psi, PureState):
                raise ValidationError("ensemble members must be PureState instances")
            if psi.dims != dims:
                raise DimensionError(
                    f"member dims {psi.dims.as_tuple()} differ from ensemble dims {dims.as_tuple()}"
                )
        total = math.fsum(w for w, _ in members)
        if abs(total - 1.0) > WEIGHT_ATOL:
            raise ValidationError(f"ensemble weights sum to {total!r}, not 1")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "dims", dims)

    def average_state(self) -> DensityMatrix:
        mat = sum(w * np.outer(psi.amplitudes, psi.amplitudes.conj()) for w, psi in self.members)
        return DensityMatrix(mat, self.dims)


def projector(psi: PureState) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi|."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dims)


# ---------------------------------------------------------------------------
# tensor algebra
# ---------------------------------------------------------------------------

def tensor(a: DensityMatrix, b: DensityMatrix, max_total_dim: int | None = None) -> DensityMatrix:
    """Tensor product keeping the bipartite split: A parts together, B parts together.

    The result lives on dims (dA_a * dA_b, dB_a * dB_b); the plain Kronecker
    ordering is permuted so that both A factors form the new A subsystem.
    """
    cap = MAX_TOTAL_DIM if max_total_dim is None else int(max_total_dim)
    da1, db1 = a.dims.as_tuple()
    da2, db2 = b.dims.as_tuple()
    total = da1 * db1 * da2 * db2
    if total > cap:
        raise SizeError(f"tensor product dimension {total} exceeds the configured maximum {cap}")
    k = np.kron(a.matrix, b.matrix)
    t = k.reshape(da1, db1, da2, db2, da1, db1, da2, db2)
    t = t.transpose(0, 2, 1, 3, 4, 6, 5, 7).reshape(total, total)
    return DensityMatrix(t, Dims(da1 * da2, db1 * db2))


def _as_blocks(rho: DensityMatrix) -> np.ndarray:
    da, db = rho.dims.as_tuple()
    return rho.matrix.reshape(da, db, da, db)


def partial_trace(rho: DensityMatrix, over: str) -> DensityMatrix:
    """Trace out subsystem ``over`` ("A" or "B"); returns the other reduction."""
    r = _as_blocks(rho)
    da, db = rho.dims.as_tuple()
    if over == "A":
        reduced = np.einsum("ijil->jl", r)
        dims = Dims(db, 1)
    elif over == "B":
        reduced = np.einsum("ijkj->ik", r)
        dims = Dims(da, 1)
    else:
        raise ParameterError(f"subsystem label must be 'A' or 'B', got {over!r}")
    return DensityMatrix(reduced, dims)


def partial_transpose(rho: DensityMatrix, on: str = "B") -> np.ndarray:
    """Block transpose on one subsystem.  Hermitian, trace one, possibly not PSD."""
    r = _as_blocks(rho)
    n = rho.dims.total
    if on == "B":
        return r.transpose(0, 3, 2, 1).reshape(n, n)
    if on == "A":
        return r.transpose(2, 1, 0, 3).reshape(n, n)
    raise ParameterError(f"subsystem label must be 'A' or 'B', got {on!r}")


def eigenvalues_hermitian(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    if isinstance(m, DensityMatrix):
        m = m.matrix
    mat = _as_complex_array(m, "matrix")
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {mat.shape}")
    gap = np.max(np.abs(mat - mat.conj().T))
    if gap > HERMITICITY_ATOL:
        raise ValidationError(f"matrix is not Hermitian: max |M - M^dag| = {gap:.3e}")
    return np.linalg.eigvalsh(mat)[::-1]


# ---------------------------------------------------------------------------
# named state factories
# ---------------------------------------------------------------------------

def bell_state(label: str) -> PureState:
    """One of the four Bell states: "psi+", "psi-", "phi+", "phi-"."""
    s = 1.0 / math.sqrt(2.0)
    table = {
        "psi+": [s, 0, 0, s],
        "psi-": [s, 0, 0, -s],
        "phi+": [0, s, s, 0],
        "phi-": [0, s, -s, 0],
    }
    key = label.lower()
    if key not in table:
        raise ParameterError(f"unknown Bell label {label!r}; expected one of {BELL_LABELS}")
    return PureState(np.array(table[key], dtype=complex), Dims(2, 2))


def bell_basis_matrix() -> np.ndarray:
    """4x4 unitary whose columns are the Bell states, in BELL_LABELS order."""
    return np.column_stack([bell_state(lbl).amplitudes for lbl in BELL_LABELS])


def bell_diagonal(weights: Sequence[float]) -> DensityMatrix:
    """Mixture of the four Bell projectors with the given probability weights."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,):
        raise ParameterError("need exactly four Bell weights")
    if np.any(w < -WEIGHT_ATOL) or abs(w.sum() - 1.0) > WEIGHT_ATOL:
        raise ParameterError(f"Bell weights must be a probability vector, got {w}")
    b = bell_basis_matrix()
    return DensityMatrix((b * np.clip(w, 0.0, None)) @ b.conj().T, Dims(2, 2))


def werner(f: float) -> DensityMatrix:
    """Werner state: weight f on Psi+ and (1-f)/3 on each other Bell projector."""
    if not (0.25 - 1e-12 <= f <= 1 + 1e-12):
        raise ParameterError(f"Werner parameter must lie in [1/4, 1], got {f!r}")
    f = min(max(f, 0.25), 1.0)
    rest = (1.0 - f) / 3.0
    return bell_diagonal([f, rest, rest, rest])


def isotropic(n: int, f: float) -> DensityMatrix:
    """Isotropic state of an n x n system: fidelity-f mixture of P+ with white noise.

    sigma(f) = n^2/(n^2-1) * ((1-f) I/n^2 + (f - 1/n^2) P+), with P+ the
    projector onto the maximally entangled state.  Valid for f in [0, 1].
    """
    n = int(n)
    if n < 2:
        raise ParameterError(f"local dimension must be >= 2, got {n}")
    if not (-1e-12 <= f <= 1 + 1e-12):
        raise ParameterError(f"isotropic fidelity must lie in [0, 1], got {f!r}")
    f = min(max(f, 0.0), 1.0)
    p_plus = projector(max_entangled(n)).matrix
    n2 = n * n
    mat = (n2 / (n2 - 1.0)) * ((1.0 - f) * np.eye(n2) / n2 + (f - 1.0 / n2) * p_plus)
    return DensityMatrix(mat, Dims(n, n))


def schmidt_pair(a: float, b: float) -> PureState:
    """Two-qubit pure state a|00> + b|11> with a^2 + b^2 = 1."""
    if abs(a * a + b * b - 1.0) > 1e-12:
        raise ParameterError(f"Schmidt coefficients must satisfy a^2 + b^2 = 1, got {a!r}, {b!r}")
    return PureState(np.array([a, 0, 0, b], dtype=complex), Dims(2, 2))


def rho_p(p: float) -> DensityMatrix:
    """Rank-2 mixture p |Psi+><Psi+| + (1-p) |01><01|."""
    if not (-1e-12 <= p <= 1 + 1e-12):
        raise ParameterError(f"mixing parameter must lie in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    mat = p * projector(bell_state("psi+")).matrix
    mat[1, 1] += 1.0 - p
    return DensityMatrix(mat, Dims(2, 2))


def psi_m(n: int, m: int) -> PureState:
    """Partially entangled n x n state (1/sqrt(m)) sum_{i<m} |ii>."""
    n, m = int(n), int(m)
    if not (1 <= m <= n):
        raise ParameterError(f"need 1 <= m <= n, got m={m}, n={n}")
    amps = np.zeros(n * n, dtype=complex)
    for i in range(m):
        amps[i * n + i] = 1.0 / math.sqrt(m)
    return PureState(amps, Dims(n, n))


def max_entangled(n: int) -> PureState:
    """Maximally entangled n x n state (1/sqrt(n)) sum_i |ii>."""
    return psi_m(n, n)


def product_basis(i: int, j: int) -> PureState:
    """Two-qubit computational basis state |ij>."""
    i, j = int(i), int(j)
    if i not in (0, 1) or j not in (0, 1):
        raise ParameterError(f"basis labels must be 0 or 1, got ({i}, {j})")
    amps = np.zeros(4, dtype=complex)
    amps[i * 2 + j] = 1.0
    return PureState(amps, Dims(2, 2))


_FAMILIES = {
    "bell": (bell_state, (str,)),
    "werner": (werner, (float,)),
    "isotropic": (isotropic, (int, float)),
    "schmidt": (schmidt_pair, (float, float)),
    "rho_p": (rho_p, (float,)),
    "psi_m": (psi_m, (int, int)),
    "max_entangled": (max_entangled, (int,)),
    "product_basis": (product_basis, (int, int)),
}


def make_state(family: str, *params) -> Union[PureState, DensityMatrix]:
    """Named-state factory; see _FAMILIES for the accepted families."""
    key = family.lower()
    if key not in _FAMILIES:
        raise ParameterError(f"unknown state family {family!r}; expected one of {sorted(_FAMILIES)}")
    fn, sig = _FAMILIES[key]
    if len(params) != len(sig):
        raise ParameterError(f"family {key!r} takes {len(sig)} parameter(s), got {len(params)}")
    coerced = []
    for value, kind in zip(params, sig):
        try:
            coerced.append(value if kind is str else kind(value))
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"bad parameter {value!r} for family {key!r}: {exc}") from exc
    return fn(*coerced)


def state_from_spec(text: str) -> Union[PureState, DensityMatrix]:
    """Parse the "family:param[,param...]" grammar used on the command line."""
    family, _, rest = text.partition(":")
    params: Iterable[str] = [p for p in rest.split(",") if p != ""] if rest else []
    return make_state(family.strip(), *[p.strip() for p in params])


# ---------------------------------------------------------------------------
# seeded randomness (property-test fuel)
# ---------------------------------------------------------------------------
#
# All sampling uses numpy's default_rng (PCG64).  random_pure draws i.i.d.
# standard complex Gaussians and normalizes, which is Haar-distributed on the
# unit sphere; random_density forms L L^dag / Tr for a complex Gaussian
# dA*dB x rank factor L.  Streams are reproducible for a fixed numpy
# generator, not bit-identical across library versions or languages.

def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(int(seed))


def random_pure(dims: DimsLike, seed) -> PureState:
    """Haar-random pure state via normalized complex-Gaussian sampling."""
    dims = as_dims(dims)
    rng = _rng(seed)
    v = rng.normal(size=dims.total) + 1j * rng.normal(size=dims.total)
    return PureState(v / np.linalg.norm(v), dims)


def random_density(dims: DimsLike, rank: int, seed) -> DensityMatrix:
    """Random rank-``rank`` density matrix, L L^dag / Tr with Gaussian L."""
    dims = as_dims(dims)
    rank = int(rank)
    if not (1 <= rank <= dims.total):
        raise ParameterError(f"rank must lie in [1, {dims.total}], got {rank}")
    rng = _rng(seed)
    l = rng.normal(size=(dims.total, rank)) + 1j * rng.normal(size=(dims.total, rank))
    mat = l @ l.conj().T
    return DensityMatrix(mat / mat.trace().real, dims)
