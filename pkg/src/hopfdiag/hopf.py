"""Closed-form critical-value analytics of the Hamiltonian Hopf normal form.

The normal form lives on R^4 with coordinates (x, y, xi, eta) and the
standard quadratic invariants

    G1 = x*eta - y*xi,   G2 = (xi^2 + eta^2)/2,   G3 = (x^2 + y^2)/2.

With unfolding parameter nu, the family treated here is

    H_nu = omega*G1 + sigma*(G2 + nu*(a*G1 + b*G3))
           + C*G1^2 + 2*B*G1*G3 + 2*D*G3^2,

omega != 0, sigma = +-1, D != 0, b != 0.  Symplectic polar coordinates
reduce the circle symmetry generated by G1 = p_theta =: J and leave a
one-degree-of-freedom system in (z = G3 > 0, p_z):

    H = omega*J + sigma*(z*p_z^2 + J^2/(4z) + nu*(a*J + b*z))
        + C*J^2 + 2*B*J*z + 2*D*z^2.

All curve machinery below specializes to a = B = C = 0, b = 1, where the
level set H = const becomes the cubic

    Q(z) = 4*z*sigma*(H - omega*J - sigma*nu*z - 2*D*z^2) - J^2
         = -8*sigma*D z^3 - 4*nu z^2 + 4*sigma*(H - omega*J) z - J^2
         = 4 z^2 p_z^2   on the energy surface.

Double roots of Q on z >= 0 trace the critical values of (J, H); they admit
the rational parametrization

    J_c(s) = s (s^2 - nu) / (2D),
    H_c(s) = (s^2 - nu)(nu + 4 s omega + 3 s^2) / (8D),
    d(s)   = sigma (s^2 - nu) / (4D)       (the double root),

with tangent (dJ/ds, dH/ds) = (3 s^2 - nu)/(2D) * (1, s + omega), cusps at
s = +-sqrt(nu/3), equilibrium endpoints s = +-sqrt(nu) mapping to (0, 0),
and the reduced Hessian determinant 2*(3 s^2 - nu) along the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import oracle, symplin

# Implementation constants (grids, steps, residual tolerances).
CURVE_GRID = 401              # default s-grid for curve-wide identity checks
TANGENT_FD_STEP = 1e-5
DOUBLE_ROOT_RESIDUAL = 1e-10  # |Q(d)|, |Q'(d)| scaled by max(1, |coeffs|)
STRATUM_TOL = 1e-12           # cusp / endpoint recognition in segment_kind
ROOT_CLUSTER_TOL = 1e-7       # relative clustering of cubic roots (torus_count)
REAL_ROOT_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class HopfParams:
    """Parameters of the unfolded normal form.

    ``unfold_a``/``unfold_b`` are the coefficients of sigma*nu*(a*G1 + b*G3);
    ``coeff_B``/``coeff_C`` those of 2*B*G1*G3 and C*G1^2.  The curve
    machinery requires the specialized case a = B = C = 0, b = 1.
    """

    omega: float
    sigma: int
    nu: float
    D: float
    unfold_a: float = 0.0
    unfold_b: float = 1.0
    coeff_B: float = 0.0
    coeff_C: float = 0.0

    def __post_init__(self):
        if self.sigma not in (-1, 1):
            raise ValueError("sigma must be -1 or +1")
        if self.omega == 0.0:
            raise ValueError("omega must be nonzero")
        if self.D == 0.0:
            raise ValueError("D must be nonzero")
        if self.unfold_b == 0.0:
            raise ValueError("unfold_b must be nonzero")

    @property
    def specialized(self) -> bool:
        """True for the a = B = C = 0, b = 1 case the curve formulas cover."""
        return (self.unfold_a == 0.0 and self.coeff_B == 0.0
                and self.coeff_C == 0.0 and self.unfold_b == 1.0)


def _require_specialized(params: HopfParams):
    if not params.specialized:
        raise ValueError(
            "curve machinery requires unfold_a = coeff_B = coeff_C = 0, "
            "unfold_b = 1")


class SegmentKind(Enum):
    TRANSVERSALLY_ELLIPTIC = "E"
    TRANSVERSALLY_HYPERBOLIC = "H"
    CUSP = "CUSP"
    EQUILIBRIUM_ENDPOINT = "END"


class Regime(Enum):
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class CurveSample:
    """One point of the parametrized critical-value curve."""

    s: float
    J: float
    H: float
    d: float        # double root of Q at (J, H)
    det2: float     # reduced Hessian determinant 2*(3 s^2 - nu) on the curve
    kind: SegmentKind


@dataclass(frozen=True)
class EliassonParams:
    """Quadratic-part parameters at a focus-focus point, on the Hopf boundary.

    The constructor takes (omega_t, alpha_t, delta) and sets
    gamma_hat = alpha_t^2 / delta, so alpha_t^2 = gamma_hat * delta holds
    exactly as constructed; sigma = sign(delta).
    """

    omega_t: float
    alpha_t: float
    delta: float

    def __post_init__(self):
        if self.omega_t == 0.0 or self.alpha_t == 0.0 or self.delta == 0.0:
            raise ValueError("omega_t, alpha_t, delta must all be nonzero")

    @property
    def gamma_hat(self) -> float:
        return self.alpha_t ** 2 / self.delta

    @property
    def sigma(self) -> int:
        return 1 if self.delta > 0 else -1


def gammas(point) -> tuple[float, float, float]:
    """The quadratic invariants (G1, G2, G3) at a point of R^4."""
    x, y, xi, eta = point
    return (x * eta - y * xi,
            (xi * xi + eta * eta) / 2.0,
            (x * x + y * y) / 2.0)


def reduced_hamiltonian(z: float, p_z: float, j: float,
                        params: HopfParams) -> float:
    """Value of the reduced one-degree-of-freedom Hamiltonian at (z, p_z; J).

    Accepts the general coefficients; z must be positive (the J^2/(4z) term
    makes z = 0 with J != 0 singular, and z = G3 >= 0 anyway).
    """
    if z <= 0.0:
        raise ValueError("reduced chart requires z > 0")
    pr = params
    return (pr.omega * j
            + pr.sigma * (z * p_z * p_z + j * j / (4.0 * z)
                          + pr.nu * (pr.unfold_a * j + pr.unfold_b * z))
            + pr.coeff_C * j * j + 2.0 * pr.coeff_B * j * z
            + 2.0 * pr.D * z * z)


def q_poly(j: float, h: float, params: HopfParams) -> oracle.Poly:
    """The cubic Q(z) whose nonnegative part carries the reduced motion.

    Ascending coefficients of
    Q(z) = -8 sigma D z^3 - 4 nu z^2 + 4 sigma (h - omega j) z - j^2;
    Q(z) = 4 z^2 p_z^2 whenever h is the reduced Hamiltonian value at
    (z, p_z; j).
    """
    _require_specialized(params)
    return oracle.Poly((
        -j * j,
        4.0 * params.sigma * (h - params.omega * j),
        -4.0 * params.nu,
        -8.0 * params.sigma * params.D,
    ))


def curve_j(params: HopfParams, s: float) -> float:
    return s * (s * s - params.nu) / (2.0 * params.D)


def curve_h(params: HopfParams, s: float) -> float:
    # cleared form of J_c * (nu + 4 s omega + 3 s^2) / (4 s): total in s
    return ((s * s - params.nu)
            * (params.nu + 4.0 * s * params.omega + 3.0 * s * s)
            / (8.0 * params.D))


def double_root(params: HopfParams, s: float) -> float:
    return params.sigma * (s * s - params.nu) / (4.0 * params.D)


def hessian_det2(params: HopfParams, s: float) -> float:
    """Reduced-Hamiltonian Hessian determinant along the curve: 2(3 s^2 - nu)."""
    return 2.0 * (3.0 * s * s - params.nu)


def critical_curve_point(params: HopfParams, s: float) -> CurveSample:
    """Sample of the critical-value curve at parameter s (total in s)."""
    _require_specialized(params)
    return CurveSample(
        s=s,
        J=curve_j(params, s),
        H=curve_h(params, s),
        d=double_root(params, s),
        det2=hessian_det2(params, s),
        kind=segment_kind(params, s),
    )


def curve_tangent(params: HopfParams, s: float) -> tuple[float, float]:
    """(dJ/ds, dH/ds) = (3 s^2 - nu)/(2D) * (1, s + omega)."""
    _require_specialized(params)
    factor = (3.0 * s * s - params.nu) / (2.0 * params.D)
    return factor, factor * (s + params.omega)


def cusps(params: HopfParams) -> list[float]:
    """Cusp parameters +-sqrt(nu/3); empty for nu <= 0."""
    if params.nu <= 0.0:
        return []
    s = math.sqrt(params.nu / 3.0)
    return [-s, s]


def segment_kind(params: HopfParams, s: float) -> SegmentKind:
    """Williamson type of the curve point at parameter s.

    Endpoint and cusp strata are matched with a STRATUM_TOL-scaled tolerance
    (fl(sqrt(nu/3)) does not square back to nu/3 exactly); between them the
    sign of 2(3 s^2 - nu) decides: negative hyperbolic, positive elliptic.
    """
    nu = params.nu
    scale = max(1.0, abs(nu))
    if nu >= 0.0 and abs(s * s - nu) <= STRATUM_TOL * scale:
        return SegmentKind.EQUILIBRIUM_ENDPOINT
    det2 = hessian_det2(params, s)
    if nu > 0.0 and s * s < nu and abs(det2) <= 2.0 * STRATUM_TOL * scale:
        return SegmentKind.CUSP
    if det2 < 0.0:
        return SegmentKind.TRANSVERSALLY_HYPERBOLIC
    return SegmentKind.TRANSVERSALLY_ELLIPTIC


def admissible(params: HopfParams, s: float) -> bool:
    """True iff the double root d(s) is >= 0, i.e. lies in the image z >= 0.

    The equilibrium endpoints s = +-sqrt(nu) have d = 0 exactly and are
    admissible; since fl(sqrt(nu))^2 - nu is a rounding-level residue of
    either sign, they are snapped by the same STRATUM_TOL as segment_kind.
    """
    if params.nu >= 0.0 and abs(s * s - params.nu) <= \
            STRATUM_TOL * max(1.0, abs(params.nu)):
        return True
    return double_root(params, s) >= 0.0


def regime(params: HopfParams) -> Regime:
    """Subcritical iff sigma * D < 0 (the case with the attached loop)."""
    return Regime.SUBCRITICAL if params.sigma * params.D < 0 else Regime.SUPERCRITICAL


def origin_slopes(params: HopfParams) -> tuple[float, float]:
    """Slopes omega +- sigma*sqrt(nu) of the two elliptic curves at (0, 0)."""
    if params.nu <= 0.0:
        raise ValueError("origin slopes require nu > 0")
    root = math.sqrt(params.nu)
    return (params.omega + params.sigma * root,
            params.omega - params.sigma * root)


def equilibrium_eigenvalues(params: HopfParams) -> np.ndarray:
    """Eigenvalues of the linearization at the origin.

    nu < 0: focus-focus quadruplet +-sqrt(-nu) +- i*omega;
    nu > 0: pure imaginary +-i*(sqrt(nu) +- omega);
    nu = 0: +-i*omega doubled (non-semisimple collision).
    """
    nu, w = params.nu, params.omega
    if nu < 0.0:
        re = math.sqrt(-nu)
        return np.array([complex(re, w), complex(re, -w),
                         complex(-re, w), complex(-re, -w)])
    r = math.sqrt(nu)
    return np.array([1j * (r + w), -1j * (r + w), 1j * (r - w), -1j * (r - w)])


def linearization_hessian(params: HopfParams) -> np.ndarray:
    """Hessian at the origin of the quadratic part omega*G1 + sigma*(G2 + nu*b*G3).

    In the (omega_t, alpha_t, gamma, delta) family of :mod:`symplin` this is
    the tuple (omega, 0, sigma*nu*b, sigma); the unfold_a*G1 term only shifts
    omega_t by sigma*nu*a.
    """
    pr = params
    return symplin.family_hessian(
        pr.omega + pr.sigma * pr.nu * pr.unfold_a,
        0.0,
        pr.sigma * pr.nu * pr.unfold_b,
        pr.sigma,
    )


def torus_count(params: HopfParams, j: float, h: float) -> tuple[int, bool]:
    """Connected components of {z > 0 : Q(z) >= 0} and an unboundedness flag.

    Components are maximal intervals; an isolated double root with Q < 0 on
    both sides counts as a (degenerate) component, except at z = 0 for j = 0,
    which is excluded.  ``has_unbounded`` flags a component reaching +inf;
    only bounded components correspond to tori of a proper completion.
    """
    q = q_poly(j, h, params)
    roots = oracle.cubic_roots(q)
    scale = max(1.0, max(abs(r) for r in roots))
    reals = sorted(r.real for r in roots
                   if abs(r.imag) <= REAL_ROOT_IMAG_TOL * scale)
    # cluster coincident roots, keeping multiplicity
    clusters: list[list[float]] = []
    for r in reals:
        if clusters and abs(r - clusters[-1][-1]) <= ROOT_CLUSTER_TOL * scale:
            clusters[-1].append(r)
        else:
            clusters.append([r])
    breaks = [(float(np.mean(c)), len(c)) for c in clusters if np.mean(c) > 0.0]

    pts = [0.0] + [b for b, _ in breaks]
    mids = [(pts[i] + pts[i + 1]) / 2.0 for i in range(len(pts) - 1)]
    mids.append(pts[-1] + max(1.0, abs(pts[-1])))  # representative of (last, inf)
    signs = [q(m) > 0.0 for m in mids]

    count = 0
    prev_positive = False
    for i, pos in enumerate(signs):
        if pos and not prev_positive:
            count += 1
        # isolated even-multiplicity root between two negative intervals
        if i < len(breaks) and not pos and not signs[i + 1] and breaks[i][1] >= 2:
            count += 1
        prev_positive = pos
    has_unbounded = signs[-1]
    return count, has_unbounded


def transformation_T(e: EliassonParams) -> np.ndarray:
    """The linear symplectic change mapping normal-form invariants onto the family.

    T = [[ sqrt|delta|, 0, 0, 0], [0, sqrt|delta|, 0, 0],
         [-sqrt|gamma_hat| sgn(delta*alpha_t), 0, 1/sqrt|delta|, 0],
         [0, -sqrt|gamma_hat| sgn(delta*alpha_t), 0, 1/sqrt|delta|]]

    satisfies T^T B T = B and conjugates the invariants:
    G1 = J1 o T,  G2 = sigma*(alpha_t*J2 + gamma_hat*K1 + delta*K2) o T,
    G3 = sigma*(K1/delta) o T.
    """
    sd = math.sqrt(abs(e.delta))
    sg = math.sqrt(abs(e.gamma_hat))
    sign = math.copysign(1.0, e.delta * e.alpha_t)
    return np.array([
        [sd, 0.0, 0.0, 0.0],
        [0.0, sd, 0.0, 0.0],
        [-sg * sign, 0.0, 1.0 / sd, 0.0],
        [0.0, -sg * sign, 0.0, 1.0 / sd],
    ])


@dataclass(frozen=True)
class HtildeCoeffs:
    """Coefficient record of the deforming Hamiltonian

    H~ = omega_t*J1 + alpha_t*J2 + gamma*K1 + delta*K2 + (2*D/delta^2)*K1^2,

    with gamma = gamma_hat + nu/delta.  The quartic term is the image of
    2*D*G3^2 under the conjugation identities of :func:`transformation_T`
    (G3 = sigma*K1/delta composed with T), which is what makes
    H~ o T = H_nu hold pointwise.
    """

    omega_t: float
    alpha_t: float
    gamma: float
    delta: float
    D: float

    def value(self, point) -> float:
        k1 = symplin.k1(point)
        return (self.omega_t * symplin.j1(point)
                + self.alpha_t * symplin.j2(point)
                + self.gamma * k1
                + self.delta * symplin.k2(point)
                + 2.0 * self.D * k1 * k1 / self.delta ** 2)

    def quartic_coeffs(self) -> symplin.QuarticCoeffs:
        return symplin.quartic_coeffs(self.omega_t, self.alpha_t,
                                      self.gamma, self.delta)


def build_htilde(e: EliassonParams, nu: float, D: float) -> HtildeCoeffs:
    """Deformed Hamiltonian whose quadratic part crosses the Hopf boundary at nu=0.

    At nu = 0 the quadratic part sits exactly on a = b^2/4, b > 0; small
    nu > 0 lands elliptic-elliptic, small nu < 0 focus-focus.  The full
    function satisfies H~(T p) = (omega_t*G1 + sigma*(G2 + nu*G3)
    + 2*D*G3^2)(p) for T = transformation_T(e), regression-tested pointwise.
    """
    return HtildeCoeffs(
        omega_t=e.omega_t,
        alpha_t=e.alpha_t,
        gamma=e.gamma_hat + nu / e.delta,
        delta=e.delta,
        D=D,
    )
