"""The deformed coupled spin-oscillator (Jaynes-Cummings family) on S^2 x R^2.

Phase space: the unit sphere (x, y, z) times the plane (u, v), with Poisson
structure

    {x, y} = -z,  {y, z} = -x,  {z, x} = -y,  {u, v} = 1,

mixed brackets zero.  The sphere sign is pinned by a regression test: it is
the convention under which the north-pole linearization of

    J = (u^2 + v^2)/2 + z,      H~ = (x u + y v)/2 + G(z)

has characteristic polynomial lambda^4 + b lambda^2 + 1/16 with
b = (2 G'(1)^2 - 1)/2; the opposite orientation gives b + 1 instead.

Reduction by the circle action of J uses the invariants z, w1 = x u + y v,
w2 = x v - y u, constrained by w1^2 + w2^2 = 2 (J - z)(1 - z^2) on
z in [-1, min(J, 1)].  H~ = w1/2 + G(z) is independent of w2, so interior
critical points sit on the branches w1 = +-R(z), w2 = 0, i.e. at interior
critical points of

    h_pm(z) = +- sqrt(2 (J - z)(1 - z^2)) / 2 + G(z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import oracle, symplin
from .jets import Jet2
from .spectrum import SpectrumCloud

SPHERE_TOL = 1e-12
CUSP_TOL = 1e-8          # |h''| below this classifies as a degenerate cusp
RANK_TOL = 1e-8          # relative second singular value in the rank test
BRACKET_FD_STEP = 1e-6   # fallback finite-difference step in poisson_bracket
CRITICAL_GRID_CELLS = 2000
BISECT_TOL = 1e-12
ROOT_DEDUP_TOL = 1e-9
LADDER_STEPS = 36        # geometric end-cell probes for the bracketing scan


@dataclass(frozen=True)
class JCState:
    """A point of S^2 x R^2; the constructor rejects off-sphere input."""

    x: float
    y: float
    z: float
    u: float
    v: float

    def __post_init__(self):
        r2 = self.x ** 2 + self.y ** 2 + self.z ** 2
        if abs(r2 - 1.0) > SPHERE_TOL:
            raise ValueError(f"(x, y, z) lies off the unit sphere: |r|^2 = {r2}")

    @classmethod
    def normalized(cls, x, y, z, u, v) -> "JCState":
        """Rescale the sphere part onto the unit sphere, then construct."""
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(x / r, y / r, z / r, u, v)

    def __iter__(self):
        return iter((self.x, self.y, self.z, self.u, self.v))


@dataclass(frozen=True)
class PolyG:
    """Deformation family G(z) = gamma * z^2."""

    gamma: float

    def value(self, z: float) -> float:
        return self.gamma * z * z

    def deriv(self, z: float) -> float:
        return 2.0 * self.gamma * z

    @property
    def gprime1(self) -> float:
        return 2.0 * self.gamma


def jc_J(state) -> float:
    x, y, z, u, v = state
    return (u * u + v * v) / 2.0 + z


def jc_H(state) -> float:
    x, y, z, u, v = state
    return (x * u + y * v) / 2.0


def jc_Htilde(state, g: PolyG) -> float:
    x, y, z, u, v = state
    return (x * u + y * v) / 2.0 + g.value(z)


def jc_grad_J(state) -> np.ndarray:
    x, y, z, u, v = state
    return np.array([0.0, 0.0, 1.0, u, v])


def jc_grad_H(state) -> np.ndarray:
    x, y, z, u, v = state
    return np.array([u / 2.0, v / 2.0, 0.0, x / 2.0, y / 2.0])


def jc_grad_Htilde(state, g: PolyG) -> np.ndarray:
    x, y, z, u, v = state
    return np.array([u / 2.0, v / 2.0, g.deriv(z), x / 2.0, y / 2.0])


def poisson_tensor(state) -> np.ndarray:
    """Matrix Pi with {f, g} = grad(f)^T Pi grad(g), order (x, y, z, u, v)."""
    x, y, z, u, v = state
    return np.array([
        [0.0, -z, y, 0.0, 0.0],
        [z, 0.0, -x, 0.0, 0.0],
        [-y, x, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, -1.0, 0.0],
    ])


def poisson_bracket(f, g, state, grad_f=None, grad_g=None,
                    step: float = BRACKET_FD_STEP) -> float:
    """{f, g} at ``state``; analytic gradients when supplied, else central FD."""
    w = np.array(list(state), dtype=float)
    gf = np.asarray(grad_f(state) if grad_f is not None
                    else oracle.fd_gradient(f, w, step=step), dtype=float)
    gg = np.asarray(grad_g(state) if grad_g is not None
                    else oracle.fd_gradient(g, w, step=step), dtype=float)
    return float(gf @ poisson_tensor(state) @ gg)


def hamiltonian_field(state, grad) -> np.ndarray:
    """Vector field X_f with df/dt of any g along it equal to {f, g}."""
    return poisson_tensor(state).T @ np.asarray(grad, dtype=float)


def jc_rank_test(state, g: PolyG) -> bool:
    """True iff X_J and X_H~ span fewer than two dimensions at ``state``."""
    xj = hamiltonian_field(state, jc_grad_J(state))
    xh = hamiltonian_field(state, jc_grad_Htilde(state, g))
    sv = np.linalg.svd(np.vstack([xj, xh]), compute_uv=False)
    if sv[0] <= 1e-12:
        return True
    return bool(sv[1] < RANK_TOL * sv[0])


# ---------------------------------------------------------------------------
# linearization at the north pole through an explicit canonical chart


def _sqrt(t):
    return t.sqrt() if isinstance(t, Jet2) else math.sqrt(t)


def canonical_chart(q, orientation: int = 1):
    """Map canonical (x_c, y_c, xi_c, eta_c) near 0 to (x, y, z, u, v).

    Works on floats and on Jet2 values.  The base point 0 is the north pole.
    orientation=+1 realizes the module's sphere bracket {x, y} = -z (cyclic);
    orientation=-1 the opposite one, kept for the sign regression test.
    """
    x_c, y_c, xi_c, eta_c = q
    r2 = x_c * x_c + xi_c * xi_c
    f = _sqrt(1.0 - 0.25 * r2)
    if orientation == 1:
        x = xi_c * f
        y = -1.0 * x_c * f
    elif orientation == -1:
        x = -1.0 * x_c * f
        y = xi_c * f
    else:
        raise ValueError("orientation must be +1 or -1")
    z = 1.0 - 0.5 * r2
    u = eta_c
    v = y_c
    return x, y, z, u, v


def _gprime1(g) -> float:
    if isinstance(g, PolyG):
        return g.gprime1
    return float(g)


def north_pole_hessians(g, orientation: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Canonical-coordinate Hessians (Hess J, Hess H~) at the north pole.

    Computed by second-order jet propagation through the chart: numeric, but
    exact to rounding.  ``g`` is a PolyG or a bare G'(1) value.
    """
    qs = Jet2.variables([0.0, 0.0, 0.0, 0.0])
    x, y, z, u, v = canonical_chart(qs, orientation)
    j_jet = (u * u + v * v) * 0.5 + z
    if isinstance(g, PolyG):
        g_jet = g.gamma * z * z
    else:
        g_jet = float(g) * (z - 1.0)   # only G'(1) reaches the quadratic part
    h_jet = (x * u + y * v) * 0.5 + g_jet
    return j_jet.symmetrized_hessian(), h_jet.symmetrized_hessian()


def jc_linearization_numeric(g, orientation: int = 1) -> symplin.QuarticCoeffs:
    """(a, b) of the numeric north-pole linearization (chart + jets)."""
    _, s_h = north_pole_hessians(g, orientation)
    p0, p1, p2, p3 = oracle.char_poly4(symplin.hamiltonian_matrix(s_h))
    if max(abs(p1), abs(p3)) > 1e-10 * max(1.0, abs(p0), abs(p2)):
        raise ArithmeticError("north-pole linearization is not biquadratic")
    return symplin.QuarticCoeffs(a=p0, b=p2)


def jc_linearization(g) -> tuple[symplin.QuarticCoeffs, symplin.EquilibriumType]:
    """Closed-form (a, b) = (1/16, (2 G'(1)^2 - 1)/2) and its region.

    For the family G(z) = gamma z^2 this is b = 4 gamma^2 - 1/2: focus-focus
    for 0 < gamma < 1/2, the degenerate parabola point at gamma = 1/2,
    elliptic-elliptic beyond.
    """
    t = _gprime1(g)
    q = symplin.QuarticCoeffs(a=1.0 / 16.0, b=(2.0 * t * t - 1.0) / 2.0)
    return q, symplin.classify(q)


# ---------------------------------------------------------------------------
# singular reduction


def reduced_radius_sq(j: float, z) -> float:
    """w1^2 + w2^2 = 2 (J - z)(1 - z^2) on the reduced surface."""
    return 2.0 * (j - z) * (1.0 - z * z)


def invariant_coords(state) -> tuple[float, float, float]:
    """(z, w1, w2) of a state; w1 = xu + yv, w2 = xv - yu."""
    x, y, z, u, v = state
    return z, x * u + y * v, x * v - y * u


def reduced_domain(j: float) -> tuple[float, float] | None:
    """z-interval [-1, min(J, 1)] of the reduced surface; None if empty."""
    if j < -1.0:
        return None
    return (-1.0, min(j, 1.0))


class Branch(Enum):
    PLUS = "plus"
    MINUS = "minus"


class CriticalKind(Enum):
    TRANSVERSALLY_ELLIPTIC = "E"
    TRANSVERSALLY_HYPERBOLIC = "H"
    CUSP = "CUSP"
    EQUILIBRIUM_VALUE = "EQ"


@dataclass(frozen=True)
class CriticalValuePoint:
    J: float
    H: float
    z_at: float
    branch: Branch | None
    kind: CriticalKind


def _branch_sign(branch: Branch) -> float:
    return 1.0 if branch is Branch.PLUS else -1.0


def branch_value(z, j: float, g: PolyG, branch: Branch):
    """h_pm(z) = +-R(z)/2 + G(z); accepts scalars or numpy arrays."""
    sb = _branch_sign(branch)
    return sb * np.sqrt(reduced_radius_sq(j, z)) / 2.0 + g.gamma * z * z


def branch_deriv(z, j: float, g: PolyG, branch: Branch):
    sb = _branch_sign(branch)
    gg = reduced_radius_sq(j, z)
    dg = 2.0 * (3.0 * z * z - 2.0 * j * z - 1.0)
    return sb * dg / (4.0 * np.sqrt(gg)) + 2.0 * g.gamma * z


def branch_second_deriv(z, j: float, g: PolyG, branch: Branch):
    sb = _branch_sign(branch)
    gg = reduced_radius_sq(j, z)
    dg = 2.0 * (3.0 * z * z - 2.0 * j * z - 1.0)
    d2g = 4.0 * (3.0 * z - j)
    r = np.sqrt(gg)
    return sb * (d2g / (4.0 * r) - dg * dg / (8.0 * r ** 3)) + 2.0 * g.gamma


def _bisect(f, a: float, b: float, tol: float = BISECT_TOL) -> float:
    fa = f(a)
    if fa == 0.0:
        return a
    neg = fa < 0.0
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == neg:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def _interior_critical_zs(j: float, g: PolyG, branch: Branch,
                          cells: int = CRITICAL_GRID_CELLS) -> list[float]:
    """All interior zeros of dh/dz on the open reduced domain.

    Uniform grid of ``cells`` cells plus geometric ladders inside the two end
    cells (the derivative diverges at the ends except at the J = 1 pole), then
    bisection to BISECT_TOL on each sign change.
    """
    dom = reduced_domain(j)
    if dom is None:
        return []
    lo, hi = dom
    if not hi > lo:
        return []
    width = hi - lo
    cell = width / cells
    eps = cell * 2.0 ** -np.arange(1.0, float(LADDER_STEPS) + 1.0)
    zs = np.concatenate([
        lo + eps[::-1],
        np.linspace(lo, hi, cells + 1)[1:-1],
        hi - eps,
    ])
    vals = branch_deriv(zs, j, g, branch)
    good = np.isfinite(vals)
    zs, vals = zs[good], vals[good]

    def f(z):
        return float(branch_deriv(z, j, g, branch))

    roots = []
    for i in range(len(zs) - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            roots.append(float(zs[i]))
        elif va * vb < 0.0:
            roots.append(_bisect(f, float(zs[i]), float(zs[i + 1])))
    if vals[-1] == 0.0:
        roots.append(float(zs[-1]))
    roots.sort()
    dedup: list[float] = []
    for r in roots:
        if not dedup or r - dedup[-1] > ROOT_DEDUP_TOL:
            dedup.append(r)
    return dedup


def _classify(z: float, j: float, g: PolyG, branch: Branch) -> CriticalKind:
    h2 = float(branch_second_deriv(z, j, g, branch))
    if abs(h2) < CUSP_TOL:
        return CriticalKind.CUSP
    if branch is Branch.PLUS:
        return (CriticalKind.TRANSVERSALLY_ELLIPTIC if h2 < 0.0
                else CriticalKind.TRANSVERSALLY_HYPERBOLIC)
    return (CriticalKind.TRANSVERSALLY_ELLIPTIC if h2 > 0.0
            else CriticalKind.TRANSVERSALLY_HYPERBOLIC)


def jc_reduced_critical_values(g: PolyG, j: float,
                               cells: int = CRITICAL_GRID_CELLS
                               ) -> list[CriticalValuePoint]:
    """All critical values of the reduced system at momentum J = ``j``.

    Interior critical points of both branches h_pm, classified by the sign
    of h'' (saddles of the surface-restricted Hamiltonian are transversally
    hyperbolic); |h''| < CUSP_TOL marks a degenerate cusp.  The pole
    equilibria contribute (J, G(1)) exactly at j = +-1.
    """
    if j < -1.0:
        raise ValueError("reduced domain is empty for J < -1")
    out: list[CriticalValuePoint] = []
    for branch in (Branch.PLUS, Branch.MINUS):
        for z in _interior_critical_zs(j, g, branch, cells=cells):
            out.append(CriticalValuePoint(
                J=j, H=float(branch_value(z, j, g, branch)), z_at=z,
                branch=branch, kind=_classify(z, j, g, branch)))
    if j == 1.0 or j == -1.0:
        out.append(CriticalValuePoint(J=j, H=g.value(j), z_at=j, branch=None,
                                      kind=CriticalKind.EQUILIBRIUM_VALUE))
    out.sort(key=lambda p: (p.z_at, p.branch.value if p.branch else ""))
    return out


def jc_spectrum_sample(g: PolyG, n: int, j_max: float, seed: int) -> SpectrumCloud:
    """Deterministic pseudo-random sample of the momentum-map image.

    Sphere points are area-exact (z uniform on [-1, 1], angle uniform); the
    oscillator radius^2 is uniform on [0, 2 (j_max + 1)].  Reproducible for
    a fixed seed.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if j_max <= -1.0:
        raise ValueError("j_max must exceed -1")
    rng = np.random.default_rng(seed)
    if n == 0:
        return SpectrumCloud(points=np.empty((0, 2)), seed=seed)
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    x, y = s * np.cos(phi), s * np.sin(phi)
    r2 = rng.uniform(0.0, 2.0 * (j_max + 1.0), n)
    psi = rng.uniform(0.0, 2.0 * math.pi, n)
    r = np.sqrt(r2)
    u, v = r * np.cos(psi), r * np.sin(psi)
    jj = r2 / 2.0 + z
    hh = (x * u + y * v) / 2.0 + g.gamma * z * z
    return SpectrumCloud(points=np.column_stack([jj, hh]), seed=seed)
