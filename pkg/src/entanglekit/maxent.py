"""Representative two-qubit states: maximize von Neumann entropy at fixed
entanglement.

The constraint is phrased in concurrence rather than entanglement of
formation: the two are linked by a strictly increasing closed form, so their
level sets coincide, and concurrence is cheaper and smoother to evaluate.
Two closed-form families serve as reference points at equal concurrence c:

* rho_p(c)                with spectrum {c, 1-c, 0, 0}, entropy H(c);
* Werner at F = (1+c)/2   with entropy H(F) + (1-F) log2 3.

The numerical search must at least rediscover the better of the two.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import ParameterError
from .measures import _concurrence_raw, _entropy_of_eigenvalues, binary_entropy
from .states import DensityMatrix, Dims, bell_state, projector, rho_p, werner


def entropy_rho_p(p: float) -> float:
    """Entropy of rho_p: H(p), since Psi+ and |01> are orthogonal."""
    if not (-1e-12 <= p <= 1 + 1e-12):
        raise ParameterError(f"mixing parameter must lie in [0, 1], got {p!r}")
    return binary_entropy(min(max(p, 0.0), 1.0))


def entropy_werner(f: float) -> float:
    """Entropy of the Werner state: H(F) + (1-F) log2 3."""
    if not (0.25 - 1e-12 <= f <= 1 + 1e-12):
        raise ParameterError(f"Werner parameter must lie in [1/4, 1], got {f!r}")
    f = min(max(f, 0.25), 1.0)
    return binary_entropy(f) + (1.0 - f) * math.log2(3.0)


@dataclasses.dataclass(frozen=True)
class ConcurrenceComparison:
    c: float
    s_rho_p_bits: float
    s_werner_bits: float
    rho_p_wins: bool


def compare_equal_concurrence(c: float) -> ConcurrenceComparison:
    """Entropies of rho_p(c) and Werner((1+c)/2), which share concurrence c."""
    if not (0.0 < c <= 1.0):
        raise ParameterError(f"concurrence must lie in (0, 1], got {c!r}")
    s_p = entropy_rho_p(c)
    s_w = entropy_werner(0.5 * (1.0 + c))
    return ConcurrenceComparison(c, s_p, s_w, s_p > s_w)


# ---------------------------------------------------------------------------
# penalized entropy maximization
# ---------------------------------------------------------------------------

DEFAULT_PENALTY_SCHEDULE = (10.0, 100.0, 1e3, 1e4, 1e5)


@dataclasses.dataclass
class MaxEntResult:
    target_c: float
    best_state: DensityMatrix
    best_entropy_bits: float
    constraint_residual: float
    restarts_used: int
    converged: bool

    def to_dict(self, include_state: bool = False) -> dict:
        data = {
            "target_c": self.target_c,
            "best_entropy_bits": self.best_entropy_bits,
            "constraint_residual": self.constraint_residual,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
        }
        if include_state:
            mat = self.best_state.matrix
            data["best_state"] = [[[z.real, z.imag] for z in row] for row in mat]
        return data


def _rho_of(x: np.ndarray) -> Optional[np.ndarray]:
    l = x.reshape(4, 4)
    m = l @ l.T
    tr = m.trace()
    if tr < 1e-12:
        return None
    return m / tr


def _entropy_and_residual(mat: np.ndarray, c: float) -> tuple[float, float]:
    s = _entropy_of_eigenvalues(np.linalg.eigvalsh(mat))
    return s, abs(_concurrence_raw(mat) - c)


def _factor(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    return (vecs.real * np.sqrt(np.clip(vals, 0.0, None))).ravel()


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def maxent_search(
    c: float,
    restarts: int = 32,
    penalty_schedule: Sequence[float] = DEFAULT_PENALTY_SCHEDULE,
    max_iter_per_stage: int = 600,
    tol: float = 1e-5,
    seed=0,
) -> MaxEntResult:
    """Maximize S(rho) over two-qubit states subject to C(rho) = c.

    Derivative-free simplex search on a 16-real-parameter factorization
    rho = L L^T / Tr(L L^T), with a quadratic penalty mu (C - c)^2 escalated
    by x10 per stage.  Multi-start: warm starts from the two closed-form
    families plus seeded random factors.  The reported state is defined only
    up to local unitaries; the first best is returned.
    """
    if not (-1e-12 <= c <= 1 + 1e-12):
        raise ParameterError(f"target concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)

    # endpoints are analytically forced
    if c == 0.0:
        state = DensityMatrix(np.eye(4) / 4.0, Dims(2, 2))
        return MaxEntResult(c, state, 2.0, 0.0, 0, True)
    if c == 1.0:
        state = projector(bell_state("psi+"))
        return MaxEntResult(c, state, 0.0, _entropy_and_residual(state.matrix, c)[1], 0, True)

    warm_states = [rho_p(c).matrix, werner(0.5 * (1.0 + c)).matrix]
    children = _seed_sequence(seed).spawn(max(restarts, 1))

    # the exact families are always candidates: the search may only improve on them
    candidates = [(s, r, mat) for mat in warm_states
                  for s, r in [_entropy_and_residual(mat, c)]]

    runs = 0
    for i in range(max(restarts, 1)):
        if i < len(warm_states):
            x = _factor(warm_states[i])
        else:
            rng = np.random.default_rng(children[i])
            x = rng.normal(size=16)
        for mu in penalty_schedule:
            def objective(params, _mu=mu):
                mat = _rho_of(params)
                if mat is None:
                    return 1e6
                s, resid = _entropy_and_residual(mat, c)
                return -s + _mu * resid * resid

            res = minimize(
                objective,
                x,
                method="Nelder-Mead",
                options={"maxiter": max_iter_per_stage, "xatol": 1e-8, "fatol": 1e-10,
                         "adaptive": True},
            )
            x = res.x
        runs += 1
        mat = _rho_of(x)
        if mat is not None:
            mat = 0.5 * (mat + mat.T)
            s, resid = _entropy_and_residual(mat, c)
            candidates.append((s, resid, mat))

    feasible = [cand for cand in candidates if cand[1] <= tol]
    if feasible:
        s, resid, mat = max(feasible, key=lambda cand: cand[0])
        converged = True
    else:
        s, resid, mat = min(candidates, key=lambda cand: cand[1])
        converged = False
    state = DensityMatrix.from_matrix(mat, Dims(2, 2), renormalize=True)
    return MaxEntResult(c, state, s, resid, runs, converged)


@dataclasses.dataclass
class SweepPoint:
    c: float
    result: Optional[MaxEntResult]
    error: Optional[str] = None


def _sweep_worker(args) -> SweepPoint:
    c, opts, child = args
    try:
        return SweepPoint(c, maxent_search(c, seed=child, **opts))
    except Exception as exc:  # aggregate per-point failures without aborting
        return SweepPoint(c, None, error=str(exc))


def maxent_sweep(
    c_grid: Sequence[float],
    restarts: int = 32,
    penalty_schedule: Sequence[float] = DEFAULT_PENALTY_SCHEDULE,
    max_iter_per_stage: int = 600,
    tol: float = 1e-5,
    seed=0,
    jobs: int = 1,
) -> list[SweepPoint]:
    """Run independent searches over a concurrence grid.

    The seed stream is split per grid point, so serial and parallel runs
    produce identical results.
    """
    grid = [float(c) for c in c_grid]
    for c in grid:
        if not (-1e-12 <= c <= 1 + 1e-12):
            raise ParameterError(f"grid value {c!r} outside [0, 1]")
    opts = {
        "restarts": restarts,
        "penalty_schedule": tuple(penalty_schedule),
        "max_iter_per_stage": max_iter_per_stage,
        "tol": tol,
    }
    children = _seed_sequence(seed).spawn(len(grid))
    tasks = [(c, opts, child) for c, child in zip(grid, children)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_worker, tasks))
    return [_sweep_worker(task) for task in tasks]
