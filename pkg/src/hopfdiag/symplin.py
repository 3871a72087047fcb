"""Linear symplectic algebra on R^4.

Coordinate order is fixed once and for all as (x, y, xi, eta), with the
symplectic form Omega = d(xi) ^ d(x) + d(eta) ^ d(y).  Its matrix in that
ordering is

    B = [[ 0,  0, -1,  0],
         [ 0,  0,  0, -1],
         [ 1,  0,  0,  0],
         [ 0,  1,  0,  0]]

(antisymmetric, B @ B = -I).  The Poisson bracket this induces satisfies
{x, xi} = -1 and {f, g} = grad(f)^T B grad(g); the Hamiltonian matrix of a
quadratic form with Hessian S is B @ S.

The module also houses the standard quadratic building blocks

    J1 = x*eta - y*xi        (focus-focus pair, first member)
    J2 = x*xi  + y*eta       (focus-focus pair, second member)
    K1 = (x^2 + y^2) / 2
    K2 = (xi^2 + eta^2) / 2

and the biquadratic characteristic polynomial of the four-parameter family
omega_t*J1 + alpha_t*J2 + gamma*K1 + delta*K2:

    P(lambda) = lambda^4 + b*lambda^2 + a,
    a = (alpha_t^2 + omega_t^2 - gamma*delta)^2,
    b = 2*(gamma*delta - alpha_t^2 + omega_t^2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import oracle

COORDINATE_ORDER = ("x", "y", "xi", "eta")

SYMPLECTIC_MATRIX = np.array([
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
])

HESS_J1 = np.array([
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
])

HESS_J2 = np.array([
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
])

HESS_K1 = np.diag([1.0, 1.0, 0.0, 0.0])
HESS_K2 = np.diag([0.0, 0.0, 1.0, 1.0])

# pencil_nondegenerate thresholds (implementation constants)
PENCIL_RANK_TOL = 1e-10       # second singular value relative to first
PENCIL_SEP_TOL = 1e-8         # minimum pairwise eigenvalue separation
PENCIL_SEP_NOISE = 1e-7       # resolution floor of the char-poly eigensolver,
                              # relative to the largest eigenvalue magnitude
PENCIL_CIRCLE_SAMPLES = 360
EIGEN_AGREEMENT_TOL = 1e-10   # eigen_closed vs oracle.eig4


def j1(p) -> float:
    x, y, xi, eta = p
    return x * eta - y * xi


def j2(p) -> float:
    x, y, xi, eta = p
    return x * xi + y * eta


def k1(p) -> float:
    x, y, xi, eta = p
    return (x * x + y * y) / 2.0


def k2(p) -> float:
    x, y, xi, eta = p
    return (xi * xi + eta * eta) / 2.0


def family_hessian(omega_t: float, alpha_t: float, gamma: float,
                   delta: float) -> np.ndarray:
    """Hessian of omega_t*J1 + alpha_t*J2 + gamma*K1 + delta*K2."""
    return (omega_t * HESS_J1 + alpha_t * HESS_J2
            + gamma * HESS_K1 + delta * HESS_K2)


def _check_symmetric(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    if not np.array_equal(s, s.T):
        raise ValueError("matrix is not symmetric as stored")
    return s


def hamiltonian_matrix(s) -> np.ndarray:
    """B @ S: the linearized Hamiltonian vector field of the quadratic form S."""
    return SYMPLECTIC_MATRIX @ _check_symmetric(s)


@dataclass(frozen=True)
class QuarticCoeffs:
    """Constant and quadratic coefficients of P(lambda) = lambda^4 + b lambda^2 + a."""

    a: float
    b: float


@dataclass(frozen=True)
class EquilibriumType:
    """Williamson-type region of a biquadratic spectrum.

    ``kind`` is one of EllipticElliptic / FocusFocus / EllipticHyperbolic /
    HyperbolicHyperbolic / Boundary; for Boundary, ``boundary`` names the
    discriminant stratum: AZero (a = 0), ParabolaPlus (a = b^2/4, b > 0),
    ParabolaMinus (a = b^2/4, b < 0), Origin (a = b = 0).
    """

    kind: str
    boundary: str | None = None

    def __str__(self) -> str:
        if self.kind == "Boundary":
            return f"Boundary({self.boundary})"
        return self.kind


ELLIPTIC_ELLIPTIC = EquilibriumType("EllipticElliptic")
FOCUS_FOCUS = EquilibriumType("FocusFocus")
ELLIPTIC_HYPERBOLIC = EquilibriumType("EllipticHyperbolic")
HYPERBOLIC_HYPERBOLIC = EquilibriumType("HyperbolicHyperbolic")


def boundary(kind: str) -> EquilibriumType:
    if kind not in ("AZero", "ParabolaPlus", "ParabolaMinus", "Origin"):
        raise ValueError(f"unknown boundary stratum {kind!r}")
    return EquilibriumType("Boundary", kind)


def quartic_coeffs(omega_t: float, alpha_t: float, gamma: float,
                   delta: float) -> QuarticCoeffs:
    """(a, b) for the family Hessian; a >= 0 always holds.

    The identity b^2/4 - a = 4*omega_t^2*(gamma*delta - alpha_t^2) pins the
    attainable region: hyperbolic-hyperbolic and elliptic-hyperbolic types
    can never arise from this family.
    """
    gd = gamma * delta
    a = (alpha_t * alpha_t + omega_t * omega_t - gd) ** 2
    b = 2.0 * (gd - alpha_t * alpha_t + omega_t * omega_t)
    return QuarticCoeffs(a=a, b=b)


def classify(q: QuarticCoeffs) -> EquilibriumType:
    """Region of the (b, a) plane, by exact comparisons on the stored reals.

    Boundary detection is deliberately exact: callers that want fuzzy
    boundaries pre-round their inputs.
    """
    a, b = q.a, q.b
    parab = b * b / 4.0
    if a == 0.0:
        return boundary("Origin") if b == 0.0 else boundary("AZero")
    if a < 0.0:
        return ELLIPTIC_HYPERBOLIC
    if a == parab:
        return boundary("ParabolaPlus") if b > 0.0 else boundary("ParabolaMinus")
    if a > parab:
        return FOCUS_FOCUS
    # 0 < a < b^2/4 from here on
    return ELLIPTIC_ELLIPTIC if b > 0.0 else HYPERBOLIC_HYPERBOLIC


def eigen_closed(q: QuarticCoeffs) -> np.ndarray:
    """The four roots of lambda^4 + b lambda^2 + a via complex square roots."""
    a, b = q.a, q.b
    w = cmath.sqrt(complex(b * b / 4.0 - a))
    lam_sq = (-b / 2.0 + w, -b / 2.0 - w)
    out = []
    for s in lam_sq:
        r = cmath.sqrt(s)
        out.extend([r, -r])
    return np.array(out, dtype=complex)


@dataclass(frozen=True)
class PencilResult:
    """Outcome of the sampled pencil non-degeneracy test.

    ``nondegenerate`` True means a combination with simple spectrum was
    found; False means degenerate-or-unresolved (the test is one-sided:
    failure does not prove degeneracy).  ``alpha``, ``beta`` always carry
    the best combination seen, ``separation`` its minimum pairwise
    eigenvalue distance.
    """

    nondegenerate: bool
    alpha: float
    beta: float
    separation: float

    def __bool__(self) -> bool:
        return self.nondegenerate


def _min_pairwise_separation(vals) -> float:
    vals = np.asarray(vals)
    n = len(vals)
    return min(abs(vals[i] - vals[j]) for i in range(n) for j in range(i + 1, n))


def pencil_nondegenerate(s1, s2) -> PencilResult:
    """Sampled sufficient test that (S1, S2) spans a non-degenerate pencil.

    Requires (i) linear independence of the two symmetric matrices (second
    singular value of their 10-entry vectorizations > PENCIL_RANK_TOL
    relative) and (ii) some alpha*B@S1 + beta*B@S2 on the sampled circle
    alpha = cos t, beta = sin t (PENCIL_CIRCLE_SAMPLES points, refined by
    golden section around the best) with minimum pairwise eigenvalue
    separation > PENCIL_SEP_TOL.
    """
    s1 = _check_symmetric(s1)
    s2 = _check_symmetric(s2)
    iu = np.triu_indices(4)
    vecs = np.vstack([s1[iu], s2[iu]])
    sv = np.linalg.svd(vecs, compute_uv=False)
    if sv[0] == 0.0 or sv[1] <= PENCIL_RANK_TOL * sv[0]:
        return PencilResult(False, 1.0, 0.0, 0.0)

    m1 = hamiltonian_matrix(s1)
    m2 = hamiltonian_matrix(s2)

    def probe(t):
        eig = oracle.eig4(math.cos(t) * m1 + math.sin(t) * m2)
        return _min_pairwise_separation(eig), float(np.max(np.abs(eig)))

    def separation(t):
        return probe(t)[0]

    ts = np.linspace(0.0, 2.0 * math.pi, PENCIL_CIRCLE_SAMPLES, endpoint=False)
    seps = [separation(t) for t in ts]
    k = int(np.argmax(seps))
    dt = 2.0 * math.pi / PENCIL_CIRCLE_SAMPLES
    t_best, sep_best = oracle.golden_max(separation, ts[k] - dt, ts[k] + dt,
                                         tol=1e-10)
    if sep_best < seps[k]:
        t_best, sep_best = ts[k], seps[k]
    alpha, beta = math.cos(t_best), math.sin(t_best)
    # separations below the eigensolver's own resolution cannot certify
    # anything: exactly repeated roots of the characteristic polynomial
    # split by ~sqrt(eps), so the threshold carries a scaled noise floor
    _, magnitude = probe(t_best)
    threshold = max(PENCIL_SEP_TOL, PENCIL_SEP_NOISE * magnitude)
    return PencilResult(sep_best > threshold, alpha, beta, float(sep_best))
