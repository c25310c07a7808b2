"""Entropy and entanglement functionals.

All logarithms are base 2; every entropy-like quantity is in bits.
Eigenvalues in [-1e-10, 0) arising from roundoff are treated as exact zeros
inside entropy and concurrence computations.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple, Optional

import numpy as np

from .errors import DimensionError, ParameterError
from .states import (
    DensityMatrix,
    Dims,
    Ensemble,
    PureState,
    bell_basis_matrix,
    eigenvalues_hermitian,
    partial_trace,
    partial_transpose,
    _rng,
)

PPT_ATOL = 1e-10
_EIG_CLIP = 1e-10

# sigma_y (x) sigma_y, the two-qubit spin-flip conjugator; real in the
# product basis.
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0."""
    if not (-1e-12 <= x <= 1 + 1e-12):
        raise ParameterError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    x = min(max(x, 0.0), 1.0)
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _entropy_of_eigenvalues(vals: np.ndarray) -> float:
    vals = np.asarray(vals, dtype=float)
    vals = np.where(vals < 0.0, 0.0, vals)
    pos = vals[vals > 0.0]
    return float(-np.sum(pos * np.log2(pos)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, in bits."""
    return _entropy_of_eigenvalues(np.linalg.eigvalsh(rho.matrix))


def pure_entanglement(psi: PureState) -> float:
    """Entropy of either reduction of |psi><psi|; the entanglement of a pure state."""
    da, db = psi.dims.as_tuple()
    m = psi.amplitudes.reshape(da, db)
    sv = np.linalg.svd(m, compute_uv=False)
    return _entropy_of_eigenvalues(sv * sv)


def ensemble_eof(ens: Ensemble) -> float:
    """Average pure-state entanglement of the ensemble members."""
    return math.fsum(w * pure_entanglement(psi) for w, psi in ens.members)


def _require_two_qubit(rho: DensityMatrix, what: str) -> None:
    if rho.dims.as_tuple() != (2, 2):
        raise DimensionError(f"{what} is defined here for (2, 2) states only, got {rho.dims.as_tuple()}")


def _concurrence_raw(mat: np.ndarray) -> float:
    tilde = _SPIN_FLIP @ mat.conj() @ _SPIN_FLIP
    ev = np.linalg.eigvals(mat @ tilde).real
    ev = np.where(ev < 0.0, 0.0, ev)
    lam = np.sort(np.sqrt(ev))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence from the spin-flipped spectrum.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the decreasing square roots
    of the eigenvalues of rho * rho~, rho~ = (sy (x) sy) rho^* (sy (x) sy),
    conjugation taken in the product basis.
    """
    _require_two_qubit(rho, "concurrence")
    return _concurrence_raw(rho.matrix)


def eof_from_concurrence(c: float) -> float:
    """H((1 + sqrt(1 - C^2)) / 2)."""
    if not (-1e-12 <= c <= 1 + 1e-12):
        raise ParameterError(f"concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def eof_two_qubit(rho: DensityMatrix) -> float:
    """Entanglement of formation of a two-qubit state, closed form."""
    _require_two_qubit(rho, "entanglement of formation")
    return eof_from_concurrence(concurrence(rho))


def eof_werner_closed_form(f: float) -> float:
    """E_f of the Werner state: H(1/2 + sqrt(F(1-F))) for F > 1/2, else 0."""
    if not (0.25 - 1e-12 <= f <= 1 + 1e-12):
        raise ParameterError(f"Werner parameter must lie in [1/4, 1], got {f!r}")
    f = min(max(f, 0.25), 1.0)
    if f <= 0.5:
        return 0.0
    return binary_entropy(0.5 + math.sqrt(f * (1.0 - f)))


def coherent_info_bound(rho: DensityMatrix, traced: str = "A") -> float:
    """Additive lower bound on E_f: S(reduction) - S(state).  May be negative."""
    return von_neumann_entropy(partial_trace(rho, traced)) - von_neumann_entropy(rho)


class PptResult(NamedTuple):
    is_ppt: bool
    min_eig: float


def ppt_check(rho: DensityMatrix) -> PptResult:
    """Positivity of the partial transpose; necessary for separability."""
    min_eig = float(np.linalg.eigvalsh(partial_transpose(rho, "B"))[0])
    return PptResult(min_eig >= -PPT_ATOL, min_eig)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho || sigma) = Tr(rho log2 rho - rho log2 sigma), in bits.

    Returns +inf when the support of rho is not contained in the support of
    sigma.
    """
    if rho.dims != sigma.dims:
        raise DimensionError("states must share dims")
    r_vals = np.linalg.eigvalsh(rho.matrix)
    s_vals, s_vecs = np.linalg.eigh(sigma.matrix)
    overlap = np.einsum("ji,jk,ki->i", s_vecs.conj(), rho.matrix, s_vecs).real
    kernel = s_vals <= 1e-12
    if np.any(overlap[kernel] > 1e-12):
        return math.inf
    term_rho = -_entropy_of_eigenvalues(r_vals)
    term_cross = float(np.sum(overlap[~kernel] * np.log2(s_vals[~kernel])))
    return max(0.0, term_rho - term_cross)


# ---------------------------------------------------------------------------
# relative entropy of entanglement (numerical, two qubits)
# ---------------------------------------------------------------------------
#
# min over separable sigma of S(rho || sigma).  For two qubits the separable
# set equals the set of density matrices with positive partial transpose, so
# the feasible set is the intersection of two convex spectral sets and the
# objective is convex in sigma.  We run projected gradient descent with
# step halving; projection onto the feasible set uses Dykstra's alternating
# projections between {PSD, trace 1} and {PPT}.

_LN2 = math.log(2.0)


def _project_simplex(v: np.ndarray) -> np.ndarray:
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    ok = u - (css - 1.0) / idx > 0
    k = idx[ok][-1]
    tau = (css[ok][-1] - 1.0) / k
    return np.maximum(v - tau, 0.0)


def _project_density_set(h: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(h)
    return (vecs * _project_simplex(vals)) @ vecs.conj().T


def _pt(h: np.ndarray) -> np.ndarray:
    return h.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def _project_ppt_set(h: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(_pt(h))
    clipped = (vecs * np.maximum(vals, 0.0)) @ vecs.conj().T
    return _pt(clipped)


def _is_feasible(h: np.ndarray, tol: float = 1e-9) -> bool:
    if np.linalg.eigvalsh(h)[0] < -tol:
        return False
    return np.linalg.eigvalsh(_pt(h))[0] >= -tol


def _dykstra(h: np.ndarray, sweeps: int = 60, tol: float = 1e-11) -> np.ndarray:
    x = h
    p = np.zeros_like(h)
    q = np.zeros_like(h)
    y = x
    for _ in range(sweeps):
        y = _project_density_set(x + p)
        p = x + p - y
        x = _project_ppt_set(y + q)
        q = y + q - x
        if np.max(np.abs(x - y)) < tol:
            break
    return _project_density_set(x)


@dataclasses.dataclass
class ErDiagnostics:
    converged: bool
    iterations: int
    restarts: int
    best_start: int
    sigma: Optional[np.ndarray] = None


def _cross_term(rho_mat: np.ndarray, sigma: np.ndarray):
    # Tr(rho log2 sigma) with eigenvalue floor, plus spectral data for the gradient
    vals, vecs = np.linalg.eigh(sigma)
    vals = np.maximum(vals, 1e-18)
    rho_hat = vecs.conj().T @ rho_mat @ vecs
    return float(np.sum(np.diag(rho_hat).real * np.log2(vals))), vals, vecs, rho_hat


def _rel_ent_gradient(vals: np.ndarray, vecs: np.ndarray, rho_hat: np.ndarray) -> np.ndarray:
    # Fréchet derivative of -Tr(rho log2 sigma) via first divided differences of log
    lv = np.log(vals)
    diff = vals[:, None] - vals[None, :]
    ldiff = lv[:, None] - lv[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(np.abs(diff) > 1e-14, ldiff / diff, 1.0 / vals[:, None])
    grad = -(vecs @ (k * rho_hat) @ vecs.conj().T) / _LN2
    return 0.5 * (grad + grad.conj().T)


def _ray_to_feasible(rho_mat: np.ndarray, anchor: np.ndarray) -> np.ndarray:
    # smallest mixing weight toward a separable anchor that restores PPT;
    # nearly optimal already when rho is almost separable
    if _is_feasible(rho_mat, tol=0.0):
        return rho_mat.copy()
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _is_feasible((1.0 - mid) * rho_mat + mid * anchor, tol=0.0):
            hi = mid
        else:
            lo = mid
    return (1.0 - hi) * rho_mat + hi * anchor


def _bell_diagonal_separable_seed(rho_mat: np.ndarray) -> np.ndarray:
    b = bell_basis_matrix()
    w = np.clip(np.diag(b.conj().T @ rho_mat @ b).real, 0.0, None)
    w = w / w.sum()
    top = int(np.argmax(w))
    if w[top] > 0.5:
        rest = 1.0 - w[top]
        scale = 0.5 / rest if rest > 0 else 0.0
        w = np.where(np.arange(4) == top, 0.5, w * scale)
        if rest == 0.0:
            w = np.full(4, 0.25)
            w[top] = 0.5
            w[(top + 1) % 4] = 0.5
            w[(top + 2) % 4] = 0.0
            w[(top + 3) % 4] = 0.0
    w = w / w.sum()
    return (b * w) @ b.conj().T


def rel_ent_entanglement(
    rho: DensityMatrix,
    tol: float = 1e-4,
    max_iter: int = 400,
    restarts: int = 8,
    seed: int = 0,
) -> tuple[float, ErDiagnostics]:
    """Relative entropy of entanglement of a two-qubit state.

    Numerical minimum of S(rho || sigma) over the PPT (= separable) density
    matrices, returned as an upper-bound estimate in bits together with
    convergence diagnostics.  ``tol`` is the objective-improvement scale used
    in the stopping rule; the solver stops a run once successive accepted
    steps improve by less than 1e-6 bits.
    """
    if rho.dims.as_tuple() != (2, 2):
        raise DimensionError(
            "relative entropy of entanglement solver only supports (2, 2) states: "
            "PPT does not characterize separability beyond 2x2 and 2x3"
        )
    is_ppt, _ = ppt_check(rho)
    if is_ppt:
        return 0.0, ErDiagnostics(converged=True, iterations=0, restarts=0, best_start=-1,
                                  sigma=rho.matrix.copy())

    rho_mat = rho.matrix
    base = -von_neumann_entropy(rho)  # Tr rho log2 rho
    eye4 = np.eye(4) / 4.0

    def objective(sigma):
        cross, vals, vecs, rho_hat = _cross_term(rho_mat, sigma)
        return base - cross, (vals, vecs, rho_hat)

    rng = _rng(seed)
    bell_sep = _bell_diagonal_separable_seed(rho_mat)
    # deterministic seeds first: ray back to the Bell-diagonal separable
    # state, the PPT projection of rho, the maximally mixed state and the
    # Bell-diagonal separable state themselves; then random product mixtures
    seeds = [_ray_to_feasible(rho_mat, bell_sep), _dykstra(rho_mat), eye4, bell_sep,
             _ray_to_feasible(rho_mat, eye4)]
    while len(seeds) < max(restarts, 1):
        vecs = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        mix = np.zeros((4, 4), dtype=complex)
        for col in vecs.T:
            a = col[:2] / np.linalg.norm(col[:2])
            b = col[2:] / np.linalg.norm(col[2:])
            v = np.kron(a, b)
            mix += np.outer(v, v.conj())
        seeds.append(0.8 * mix / 4.0 + 0.2 * eye4)
    seeds = seeds[: max(restarts, 1)]

    best_val = math.inf
    best_sigma = None
    best_start = -1
    best_iters = 0
    converged_any = False
    for start_idx, sigma in enumerate(seeds):
        sigma = 0.995 * sigma + 0.005 * eye4  # keep the first log evaluations finite
        fval, spec = objective(sigma)
        step = 0.1
        prev_sigma = None
        prev_grad = None
        iters = 0
        small_improvements = 0
        run_converged = False
        while iters < max_iter:
            iters += 1
            grad = _rel_ent_gradient(*spec)
            grad = grad - (np.trace(grad).real / 4.0) * np.eye(4)
            gnorm = float(np.linalg.norm(grad))
            if gnorm < 1e-12:
                run_converged = True
                break
            # Barzilai-Borwein trial step; halving falls back from there
            if prev_grad is not None:
                ds = (sigma - prev_sigma).ravel()
                dg = (grad - prev_grad).ravel()
                denom = float(np.vdot(ds, dg).real)
                if denom > 1e-18:
                    step = min(max(float(np.vdot(ds, ds).real) / denom, 1e-9), 1e3)
            prev_sigma, prev_grad = sigma, grad
            accepted = False
            t = step
            for _ in range(40):
                cand = sigma - t * grad
                if not _is_feasible(cand):
                    cand = _dykstra(cand)
                cand_val, cand_spec = objective(cand)
                if cand_val < fval - 1e-15:
                    improvement = fval - cand_val
                    sigma, fval, spec = cand, cand_val, cand_spec
                    accepted = True
                    break
                t *= 0.5
                if t * gnorm < 1e-12:
                    break
            if not accepted:
                run_converged = True
                break
            small_improvements = small_improvements + 1 if improvement < 1e-6 else 0
            if small_improvements >= 2:
                run_converged = True
                break
        converged_any = converged_any or run_converged
        if fval < best_val:
            best_val, best_sigma, best_start, best_iters = fval, sigma, start_idx, iters

    best_val = max(0.0, best_val)
    diag = ErDiagnostics(
        converged=converged_any,
        iterations=best_iters,
        restarts=len(seeds),
        best_start=best_start,
        sigma=best_sigma,
    )
    return best_val, diag


# ---------------------------------------------------------------------------
# report bundle
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class MeasureReport:
    """Bundle of measures for one state; serializes with fixed field names."""

    entropy_bits: float
    g_a_bits: float
    g_b_bits: float
    ppt: bool
    ppt_min_eig: float
    eof_bits: Optional[float] = None
    concurrence: Optional[float] = None
    e_r_bits: Optional[float] = None
    e_r_converged: Optional[bool] = None

    _FIELDS = (
        "entropy_bits",
        "eof_bits",
        "concurrence",
        "g_a_bits",
        "g_b_bits",
        "ppt",
        "ppt_min_eig",
        "e_r_bits",
        "e_r_converged",
    )

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self._FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureReport":
        return cls(**{name: data[name] for name in cls._FIELDS})


def measure_state(
    rho: DensityMatrix,
    include_e_r: bool = True,
    e_r_tol: float = 1e-4,
    e_r_restarts: int = 8,
    seed: int = 0,
) -> MeasureReport:
    """Compute the full measure bundle for one state.

    E_f, concurrence and E_r are filled in for (2, 2) states only; E_f here
    stands in for the (uncomputable) asymptotic preparation cost, see the
    thermo module for the labeled proxies.
    """
    is_ppt, min_eig = ppt_check(rho)
    report = MeasureReport(
        entropy_bits=von_neumann_entropy(rho),
        g_a_bits=coherent_info_bound(rho, "A"),
        g_b_bits=coherent_info_bound(rho, "B"),
        ppt=is_ppt,
        ppt_min_eig=min_eig,
    )
    if rho.dims.as_tuple() == (2, 2):
        report.concurrence = concurrence(rho)
        report.eof_bits = eof_from_concurrence(report.concurrence)
        if include_e_r:
            e_r, diag = rel_ent_entanglement(rho, tol=e_r_tol, restarts=e_r_restarts, seed=seed)
            report.e_r_bits = e_r
            report.e_r_converged = diag.converged
    return report
