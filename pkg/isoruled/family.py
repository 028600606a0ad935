"""The associated family: g_theta, F_theta and the relation between their forms.

``g_theta = Re(e^{i theta} G)`` is isometric to g with ``g_theta* = g_* o J_theta``.
Its adapted frame is prescribed rather than recomputed: the tangent frame
and the first normal plane are rotated by theta, every higher frame vector
is kept. DeformedChart is a Framing, so F_theta(p, v) = g_theta(p) + v and all
of its closed forms come from the ruled module unchanged.

Conventions on the ruled submanifold:
    - R_theta rotates the normal plane in the oriented basis (xi, eta).
    - calJ is the almost complex structure on H (calJ E_1 = E_2), extended by
      the identity on V, and ``calJ_phi = cos(phi) I + sin(phi) calJ``.
    - L_theta is the reflection of H with matrix
      ``[[-sin(theta/2), cos(theta/2)], [cos(theta/2), sin(theta/2)]]``.
    - beta is traceless with nullity V:
      ``beta(E_1, E_1) = xi / Omega^2 = -beta(E_2, E_2)``, ``beta(E_1, E_2) = eta / Omega^2``.

With these, ``Psi^-1 alpha_{F_theta}(X, Y) = R_{-theta} alpha_F(X, Y)
+ 2 kappa sin(theta/2) beta(calJ calJ_{-theta/2} X, Y)``, which is the same
statement as ``A^theta_{Psi xi} = A_{R_theta xi} - 2 kappa sin(theta/2) L_theta``
and ``A^theta_{Psi eta} = A_{R_theta eta} - 2 kappa sin(theta/2) calJ L_theta``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np

from isoruled import oracle
from isoruled.errors import DomainError
from isoruled.ruled import (
    RuledPoint,
    ShapeOperators,
    frame_at,
    assemble_operators,
    coordinate_metric,
    eval_F,
    horizontal_data,
    horizontal_lift,
    normal_frame,
    numeric_sff,
    shape_operators,
)
from isoruled.surfgeo import AdaptedFrame, Framing, as_framing, assemble_frame, higher_form
from isoruled.weierstrass import SurfaceChart

logger = logging.getLogger(__name__)

DEFAULT_THETA_GRID = tuple(k * math.pi / 12 for k in range(12))

Surface = Union[SurfaceChart, Framing]


def _check_theta(theta: float) -> float:
    if not 0.0 <= theta < math.pi:
        raise DomainError(f"theta must lie in [0, pi), got {theta}")
    return float(theta)


class DeformedChart(Framing):
    """The surface g_theta with the prescribed frame of the associated family."""

    def __init__(self, base: Surface, theta: float):
        self._theta = _check_theta(theta)
        self._base = as_framing(base)
        self._chart = self._base.chart.rotated(self._theta)

    @property
    def chart(self) -> SurfaceChart:
        return self._chart

    @property
    def base(self) -> Framing:
        return self._base

    @property
    def theta(self) -> float:
        return self._theta

    @property
    def eps_rank(self) -> float:
        return self._base.eps_rank

    def __repr__(self) -> str:
        return f"DeformedChart({self._base!r}, theta={self._theta:.6g})"

    def frame(self, z: complex) -> AdaptedFrame:
        f = self._base.frame(z)
        c, s = math.cos(self._theta), math.sin(self._theta)
        e = list(f.e)
        rotated = [
            e[0] * c + e[1] * s,
            e[1] * c - e[0] * s,
            e[2] * c + e[3] * s,
            e[3] * c - e[2] * s,
        ]
        return assemble_frame(f.z, rotated + e[4:], f.rho, f.norms, f.tail)

    def anchored(self, z: complex) -> "DeformedChart":
        return DeformedChart(self._base.anchored(z), self._theta)

    def metric_defect(self, z: complex) -> float:
        """Relative gap between the first fundamental forms of g_theta and g."""
        d = self._chart.derivatives(z, 1)[1]
        d0 = self._base.chart.derivatives(z, 1)[1]

        def metric(x: np.ndarray) -> np.ndarray:
            cols = np.array([x.real, (1j * x).real])
            return cols @ cols.T

        m, m0 = metric(d), metric(d0)
        return float(np.max(np.abs(m - m0)) / np.max(np.abs(m0)))

    def pushforward_defect(self, z: complex) -> float:
        """Gap between g_theta_u and cos(theta) g_u + sin(theta) g_v."""
        d = self._chart.derivatives(z, 1)[1]
        d0 = self._base.chart.derivatives(z, 1)[1]
        c, s = math.cos(self._theta), math.sin(self._theta)
        expected = c * d0.real + s * (1j * d0).real
        return float(np.max(np.abs(d.real - expected)) / np.linalg.norm(d0))

    def second_form_defect(self, z: complex) -> float:
        """Gap between alpha_{g_theta}(X, Y) and alpha_g(J_theta X, Y) on the frame, relative to kappa."""
        mine = higher_form(self, z, 1)
        base = higher_form(self._base, z, 1)
        c, s = math.cos(self._theta), math.sin(self._theta)
        # J_theta e_1 = c e_1 + s e_2, J_theta e_2 = c e_2 - s e_1
        expected = np.array(
            [c * base[0] + s * base[1], c * base[1] + s * base[2], c * base[2] - s * base[1]]
        )
        return float(np.max(np.abs(mine - expected)) / np.linalg.norm(base[0]))


def associated_surface(surface: Surface, theta: float) -> DeformedChart:
    """g_theta with its prescribed adapted frame."""
    return DeformedChart(surface, theta)


@dataclass(frozen=True)
class DeformedPoint:
    """F_theta at a ruled point, with the frame used to build it."""

    position: np.ndarray
    frame: AdaptedFrame
    lift: np.ndarray


def deformed_immersion(deformed: DeformedChart, rp: RuledPoint) -> DeformedPoint:
    """F_theta(p, v) = g_theta(p) + v and the prescribed theta-frame at rp."""
    frame = frame_at(deformed, rp)
    return DeformedPoint(
        position=eval_F(deformed, rp),
        frame=frame,
        lift=horizontal_lift(deformed, rp),
    )


def normal_rotation(theta: float) -> np.ndarray:
    """R_theta on coefficient vectors in the basis (xi, eta)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def complex_structure(n: int) -> np.ndarray:
    """calJ on T M in the frame E_1.. E_n: rotation on H, identity on V."""
    J = np.eye(n)
    J[:2, :2] = [[0.0, -1.0], [1.0, 0.0]]
    return J


def reflection_L(theta: float, n: int) -> np.ndarray:
    """L_theta: a reflection of H, zero on V."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    L = np.zeros((n, n))
    L[:2, :2] = [[-s, c], [c, s]]
    return L


def twist(theta: float, n: int) -> np.ndarray:
    """calJ calJ_{-theta/2}: rotation of H by (pi - theta)/2, identity on V."""
    phi = (math.pi - theta) / 2
    c, s = math.cos(phi), math.sin(phi)
    M = np.eye(n)
    M[:2, :2] = [[c, -s], [s, c]]
    return M


@dataclass(frozen=True)
class TracelessForm:
    """beta on the frame E_1.. E_n; ``values[i, j]`` is an ambient vector."""

    values: np.ndarray
    Omega: float

    def against(self, normal: np.ndarray) -> np.ndarray:
        """Matrix ``<beta(E_i, E_j), normal>``."""
        return self.values @ normal

    def apply(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", X, Y, self.values)


def traceless_form(surface: Surface, rp: RuledPoint) -> TracelessForm:
    """beta at rp, built from the unnormalized normal pair."""
    framing = as_framing(surface)
    xi, eta = normal_frame(framing, rp)
    Om2 = float(xi @ xi)
    n = framing.N - 2
    values = np.zeros((n, n, framing.N))
    values[0, 0] = xi / Om2
    values[1, 1] = -xi / Om2
    values[0, 1] = values[1, 0] = eta / Om2
    return TracelessForm(values=values, Omega=math.sqrt(Om2))


@dataclass(frozen=True)
class BundleIsometry:
    """Images of xi, eta under the parallel bundle isometry Psi_theta."""

    theta: float
    xi_theta: np.ndarray
    eta_theta: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def matrix(self) -> np.ndarray:
        """Ambient linear map sending xi -> xi_theta and eta -> eta_theta, zero elsewhere."""
        Om2 = float(self.xi @ self.xi)
        return (np.outer(self.xi_theta, self.xi) + np.outer(self.eta_theta, self.eta)) / Om2


def bundle_isometry(surface: Surface, rp: RuledPoint, theta: float) -> BundleIsometry:
    """Psi_theta from the closed forms of xi_theta and eta_theta.

    ``xi_theta = g_theta* J_{-theta}(t_1 V + t_2 W) + R^1_theta e_3`` and
    ``eta_theta = -g_theta* J_{pi/2 - theta}(t_1 V + t_2 W) + R^1_theta e_4``.
    """
    base = as_framing(surface)
    deformed = DeformedChart(base, theta)
    hd = horizontal_data(base, rp)
    ft = frame_at(deformed, rp).vectors
    c, s = math.cos(theta), math.sin(theta)
    p1, p2 = hd.phi

    def push(x1: float, x2: float) -> np.ndarray:
        return x1 * ft[0] + x2 * ft[1]

    # J_phi (x1, x2) = (cos x1 - sin x2, cos x2 + sin x1) on coefficient pairs
    xi_theta = push(c * p1 + s * p2, c * p2 - s * p1) + ft[2]
    cp, sp = math.cos(math.pi / 2 - theta), math.sin(math.pi / 2 - theta)
    eta_theta = -push(cp * p1 - sp * p2, cp * p2 + sp * p1) + ft[3]
    xi, eta = normal_frame(base, rp)
    return BundleIsometry(theta=theta, xi_theta=xi_theta, eta_theta=eta_theta, xi=xi, eta=eta)


def isometry_residual(surface: Surface, rp: RuledPoint, theta: float) -> float:
    """Largest entrywise gap between the coordinate metrics of F_theta and F."""
    base = as_framing(surface)
    deformed = coordinate_metric(DeformedChart(base, theta), rp)
    return float(np.max(np.abs(deformed - coordinate_metric(base, rp))))


def bundle_isometry_residuals(
    surface: Surface, rp: RuledPoint, theta: float, step: float = oracle.DEFAULT_STEP
) -> Dict[str, float]:
    """Checks on Psi_theta: it matches the normal frame of F_theta, is isometric, and is parallel.

    Parallelism compares ``<d_X xi_theta, eta_theta>`` with ``<d_X xi, eta>``
    by central differences along X_1, X_2 and every vertical direction.
    """
    step = oracle.check_step(step)
    base = as_framing(surface)
    deformed = DeformedChart(base, theta)
    iso = bundle_isometry(base, rp, theta)
    xt, et = normal_frame(deformed, rp)
    Om = math.sqrt(float(iso.xi @ iso.xi))
    out = {
        "closed_form": float(
            max(np.max(np.abs(xt - iso.xi_theta)), np.max(np.abs(et - iso.eta_theta)))
        ),
        "norms": float(
            max(
                abs(np.linalg.norm(iso.xi_theta) - Om),
                abs(np.linalg.norm(iso.eta_theta) - Om),
                abs(iso.xi_theta @ iso.eta_theta) / Om**2,
            )
        ),
    }
    pinned_base = base.anchored(rp.z)
    pinned_def = DeformedChart(pinned_base, theta)

    def pair(framing: Framing):
        def fields(x: np.ndarray) -> np.ndarray:
            return np.stack(normal_frame(framing, RuledPoint.from_coords(x)))

        return fields

    x0 = rp.coords()
    lift = horizontal_lift(base, rp)
    directions = [lift[0], lift[1]] + list(np.eye(x0.size)[2:])
    worst = 0.0
    for d in directions:
        dx = oracle.directional(pair(pinned_base), x0, d, step)
        dt = oracle.directional(pair(pinned_def), x0, d, step)
        worst = max(worst, abs(float(dt[0] @ et) - float(dx[0] @ iso.eta)))
    out["parallel"] = worst
    return out


def theta_shape_operators(surface: Surface, rp: RuledPoint, theta: float) -> ShapeOperators:
    """Shape operators of F_theta from the rotation rules for a, b and h."""
    theta = _check_theta(theta)
    base = as_framing(surface)
    ops = shape_operators(base, rp)
    frame = frame_at(base, rp)
    c, s = math.cos(theta), math.sin(theta)
    a, b = frame.form(3, 5), frame.form(3, 6)
    a_t = np.array([a[0] * c + a[1] * s, a[1] * c - a[0] * s])
    b_t = np.array([b[0] * c + b[1] * s, b[1] * c - b[0] * s])
    return assemble_operators(
        kappa=ops.kappa,
        h1=ops.h1 * c + ops.h2 * s,
        h2=-ops.h1 * s + ops.h2 * c,
        r=-a_t / ops.Omega,
        s=-b_t / ops.Omega,
        n=ops.n,
        B=ops.B,
        Omega=ops.Omega,
    )


def reflection_identity(ops: ShapeOperators, ops_theta: ShapeOperators, theta: float) -> float:
    """Residual of ``A^theta_{Psi xi} = A_{R xi} - 2 kappa sin(theta/2) L`` and its eta companion."""
    c, s = math.cos(theta), math.sin(theta)
    k = 2 * ops.kappa * math.sin(theta / 2)
    L = reflection_L(theta, ops.n)
    JL = complex_structure(ops.n) @ L
    rhs_xi = c * ops.A_xi + s * ops.A_eta - k * L
    rhs_eta = c * ops.A_eta - s * ops.A_xi - k * JL
    gap_xi = np.max(np.abs(ops_theta.A_xi - rhs_xi))
    return float(max(gap_xi, np.max(np.abs(ops_theta.A_eta - rhs_eta))))


def theta_frame_identities(surface: Surface, rp: RuledPoint, theta: float) -> Dict[str, float]:
    """The rotation rules of the family evaluated against the deformed framing itself."""
    base = as_framing(surface)
    deformed = DeformedChart(base, theta)
    f0 = frame_at(base, rp)
    ft = frame_at(deformed, rp)
    c, s = math.cos(theta), math.sin(theta)
    out = {}
    for name, (i, j) in {"a": (3, 5), "b": (3, 6)}.items():
        x = f0.form(i, j)
        expected = np.array([x[0] * c + x[1] * s, x[1] * c - x[0] * s])
        out[name] = float(np.max(np.abs(ft.form(i, j) - expected)))
    out["omega_34"] = float(np.max(np.abs(ft.form(3, 4) - f0.form(3, 4))))
    out["omega_tail"] = float(np.max(np.abs(ft.omega[:, 4:, 4:] - f0.omega[:, 4:, 4:])))
    out["lift"] = float(np.max(np.abs(horizontal_lift(deformed, rp) - horizontal_lift(base, rp))))
    direct = shape_operators(deformed, rp)
    rules = theta_shape_operators(base, rp, theta)
    out["h"] = float(max(abs(direct.h1 - rules.h1), abs(direct.h2 - rules.h2)))
    out["operators"] = float(
        max(np.max(np.abs(direct.A_xi - rules.A_xi)), np.max(np.abs(direct.A_eta - rules.A_eta)))
    )
    out["reflection"] = reflection_identity(shape_operators(base, rp), rules, theta)
    return out


def deformation_rhs(
    A_xi: np.ndarray,
    A_eta: np.ndarray,
    beta: TracelessForm,
    xi: np.ndarray,
    eta: np.ndarray,
    kappa: float,
    theta: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Components against (xi, eta) of the right-hand side of the family relation.

    That is ``R_{-theta} alpha + 2 kappa sin(theta/2) beta(calJ calJ_{-theta/2} X, Y)``.
    """
    n = A_xi.shape[0]
    c, s = math.cos(theta), math.sin(theta)
    M = twist(theta, n)
    k = 2 * kappa * math.sin(theta / 2)
    beta_xi = M.T @ beta.against(xi)
    beta_eta = M.T @ beta.against(eta)
    # <R_{-theta} alpha, xi> = <alpha, R_theta xi>
    rhs_xi = c * A_xi + s * A_eta + k * beta_xi
    rhs_eta = c * A_eta - s * A_xi + k * beta_eta
    return rhs_xi, rhs_eta


def deformation_residual(
    surface: Surface, rp: RuledPoint, theta: float, step: float = oracle.DEFAULT_STEP
) -> float:
    """Deviation of the numerically measured second fundamental form of F_theta from the family relation.

    Both sides use finite-difference forms (of F_theta and of F), so at
    theta = 0 they coincide exactly. Normalized by kappa.
    """
    theta = _check_theta(theta)
    base = as_framing(surface)
    deformed = DeformedChart(base, theta)
    lhs = numeric_sff(deformed, rp, step)
    ref = numeric_sff(base, rp, step)
    xi, eta = normal_frame(base, rp)
    beta = traceless_form(base, rp)
    kappa = frame_at(base, rp).kappa
    rhs_xi, rhs_eta = deformation_rhs(ref.A_xi, ref.A_eta, beta, xi, eta, kappa, theta)
    gap = max(np.max(np.abs(lhs.A_xi - rhs_xi)), np.max(np.abs(lhs.A_eta - rhs_eta)))
    return float(gap / kappa)


def deformation_closed_residual(
    surface: Surface, rp: RuledPoint, theta: float, beta: Optional[TracelessForm] = None
) -> float:
    """The family relation with closed-form shape operators on both sides, normalized by kappa.

    The left side is read from the deformed framing, the right side from the
    base one, so the relation is checked to rounding. ``beta`` defaults to
    :func:`traceless_form` at rp.
    """
    theta = _check_theta(theta)
    base = as_framing(surface)
    lhs = shape_operators(DeformedChart(base, theta), rp)
    ref = shape_operators(base, rp)
    xi, eta = normal_frame(base, rp)
    if beta is None:
        beta = traceless_form(base, rp)
    rhs_xi, rhs_eta = deformation_rhs(ref.A_xi, ref.A_eta, beta, xi, eta, ref.kappa, theta)
    gap = max(np.max(np.abs(lhs.A_xi - rhs_xi)), np.max(np.abs(lhs.A_eta - rhs_eta)))
    return float(gap / ref.kappa)
