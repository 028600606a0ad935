"""The ruled minimal submanifold F(p, v) = g(p) + v over a 1-isotropic surface.

Points of the submanifold are parametrized by the surface parameter z and
ruling coordinates t_j = <v, e_{j+4}>, so v runs over the normal spaces of g
of order two and higher. Tangent space splits as H (the horizontal plane,
spanned by X_1, X_2) plus the vertical space V = V^1 + V^0, where V^1 is the
plane over the second normal space and V^0 the rest.

Architecture:
    - Closed forms: horizontal_data, normal_frame, shape_operators,
      comp_closed_forms, induced_metric. These read only frame values and
      connection-form jets at one point.
    - Oracles: numeric_sff, comp_residuals and coordinate_metric
      differentiate the parametrization (u, v, t) -> F directly.
    - Surface-level identities: ricci_residuals, zero_section_residual.

Every operation accepts a SurfaceChart or any Framing, so the same code
evaluates the deformed immersions of the associated family.

Example:
    >>> from isoruled.ruled import RuledPoint, shape_operators, numeric_sff
    >>> rp = RuledPoint(0.1 + 0.05j, (0.3, -0.2))
    >>> ops = shape_operators(chart, rp)
    >>> sff = numeric_sff(chart, rp, 1e-4)
    >>> float(abs(ops.A_xi - sff.A_xi).max()) < 2e-5
    True
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from isoruled import oracle
from isoruled.errors import ModelViolationError, ShapeError
from isoruled.surfgeo import ISOTROPY_TOL, AdaptedFrame, Framing, as_framing
from isoruled.weierstrass import SurfaceChart, evaluate_surface

logger = logging.getLogger(__name__)

RANK_TOL = 1e-9
ZERO_SECTION_STEP = 1e-3

Surface = Union[SurfaceChart, Framing]


@dataclass(frozen=True)
class RuledPoint:
    """A point (p, v) with p = g(z) and v = sum_j t_j e_{j+4}(z)."""

    z: complex
    t: Tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(x) for x in self.t)
        if not np.all(np.isfinite(t)):
            raise ShapeError(f"ruling coordinates must be finite, got {t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "z", complex(self.z))

    def coords(self) -> np.ndarray:
        """(u, v, t_1, ..., t_{n-2}) as a real vector."""
        return np.concatenate([[self.z.real, self.z.imag], self.t])

    @classmethod
    def from_coords(cls, x: Sequence[float]) -> "RuledPoint":
        return cls(complex(x[0], x[1]), tuple(x[2:]))


def frame_at(framing: Framing, rp: RuledPoint) -> AdaptedFrame:
    if framing.N < 6:
        raise ShapeError(f"the ruled construction needs N >= 6, got N={framing.N}")
    if len(rp.t) != framing.N - 4:
        raise ShapeError(f"expected {framing.N - 4} ruling coordinates, got {len(rp.t)}")
    return framing.frame(rp.z)


def require_isotropic(frame: AdaptedFrame, tol: float = ISOTROPY_TOL) -> None:
    """Raise ModelViolationError unless lambda = 1 within ``tol``."""
    if abs(frame.lam - 1.0) > tol:
        raise ModelViolationError(
            f"chart is not 1-isotropic at z={frame.z}: lambda={frame.lam:.9f}"
        )


def eval_F(surface: Surface, rp: RuledPoint) -> np.ndarray:
    """F(p, v) = g(z) + sum_j t_j e_{j+4}(z)."""
    framing = as_framing(surface)
    frame = frame_at(framing, rp)
    return framing.position(rp.z) + np.asarray(rp.t) @ frame.vectors[4:]


def vertical_rates(frame: AdaptedFrame, t: Sequence[float]) -> np.ndarray:
    """``X_i(t_k) = sum_j t_j omega_{k+4, j+4}(e_i)`` as an array (2, n - 2)."""
    return frame.omega[:, 4:, 4:] @ np.asarray(t, dtype=float)


@dataclass(frozen=True)
class HorizontalData:
    """Pushforwards of the horizontal fields X_1, X_2 and the scalars they use.

    ``G`` and ``H`` hold ``X_i(t_1)`` and ``X_i(t_2)``; ``rates`` holds
    ``X_i(t_k)`` for every ruling coordinate.
    """

    FX1: np.ndarray
    FX2: np.ndarray
    Omega: float
    phi: np.ndarray
    psi: np.ndarray
    G: np.ndarray
    H: np.ndarray
    rates: np.ndarray


def horizontal_data(surface: Surface, rp: RuledPoint) -> HorizontalData:
    """Closed-form horizontal frame at rp.

    Raises:
        ModelViolationError: If the chart is not 1-isotropic at rp.z
    """
    frame = frame_at(as_framing(surface), rp)
    require_isotropic(frame)
    return _horizontal(frame, rp)


def _horizontal(frame: AdaptedFrame, rp: RuledPoint) -> HorizontalData:
    t1, t2 = rp.t[0], rp.t[1]
    e = frame.vectors
    phi = t1 * frame.form(3, 5) + t2 * frame.form(3, 6)
    psi = t1 * frame.form(4, 5) + t2 * frame.form(4, 6)
    FX1 = e[0] - phi[0] * e[2] - psi[0] * e[3]
    FX2 = e[1] - phi[1] * e[2] - psi[1] * e[3]
    rates = vertical_rates(frame, rp.t)
    return HorizontalData(
        FX1=FX1,
        FX2=FX2,
        Omega=float(np.sqrt(1.0 + phi @ phi)),
        phi=phi,
        psi=psi,
        G=rates[:, 0].copy(),
        H=rates[:, 1].copy(),
        rates=rates,
    )


def horizontal_lift(surface: Surface, rp: RuledPoint) -> np.ndarray:
    """Coordinates of X_1, X_2 in the chart (u, v, t), one row each."""
    frame = frame_at(as_framing(surface), rp)
    rates = vertical_rates(frame, rp.t)
    rho = float(frame.rho.value)
    lift = np.zeros((2, 2 + len(rp.t)))
    lift[0, 0] = lift[1, 1] = 1.0 / rho
    lift[:, 2:] = rates
    return lift


def normal_frame(surface: Surface, rp: RuledPoint) -> Tuple[np.ndarray, np.ndarray]:
    """The normal pair (xi, eta), both of length Omega."""
    frame = frame_at(as_framing(surface), rp)
    require_isotropic(frame)
    return _normals(frame, rp)


def _normals(frame: AdaptedFrame, rp: RuledPoint) -> Tuple[np.ndarray, np.ndarray]:
    e = frame.vectors
    hd = _horizontal(frame, rp)
    xi = hd.phi[0] * e[0] + hd.phi[1] * e[1] + e[2]
    eta = hd.psi[0] * e[0] + hd.psi[1] * e[1] + e[3]
    return xi, eta


@dataclass(frozen=True)
class ShapeOperators:
    """Shape operators of F in the frame E_1 = X_1/Omega, E_2 = X_2/Omega, E_j (j >= 3).

    ``A_xi[i, j] = <alpha(E_i, E_j), xi>`` for the unnormalized xi (length Omega),
    and likewise for eta. Both are n x n with zero rows and columns on V^0.
    """

    A_xi: np.ndarray
    A_eta: np.ndarray
    kappa: float
    h1: float
    h2: float
    r: np.ndarray
    s: np.ndarray
    B: np.ndarray
    Omega: float

    @property
    def n(self) -> int:
        return self.A_xi.shape[0]

    def block(self) -> Tuple[np.ndarray, np.ndarray]:
        """The 4 x 4 restrictions to H + V^1."""
        return self.A_xi[:4, :4], self.A_eta[:4, :4]


def assemble_operators(
    kappa: float,
    h1: float,
    h2: float,
    r: Sequence[float],
    s: Sequence[float],
    n: int,
    B: Sequence[float] = (0.0, 0.0),
    Omega: float = 1.0,
) -> ShapeOperators:
    """Fill the fixed pattern of the two shape operators."""
    r1, r2 = r
    s1, s2 = s
    A_xi = np.zeros((n, n))
    A_eta = np.zeros((n, n))
    A_xi[:4, :4] = [
        [kappa + h1, h2, r1, s1],
        [h2, -kappa - h1, r2, s2],
        [r1, r2, 0.0, 0.0],
        [s1, s2, 0.0, 0.0],
    ]
    A_eta[:4, :4] = [
        [h2, kappa - h1, r2, s2],
        [kappa - h1, -h2, -r1, -s1],
        [r2, -r1, 0.0, 0.0],
        [s2, -s1, 0.0, 0.0],
    ]
    return ShapeOperators(
        A_xi=A_xi,
        A_eta=A_eta,
        kappa=float(kappa),
        h1=float(h1),
        h2=float(h2),
        r=np.asarray(r, dtype=float),
        s=np.asarray(s, dtype=float),
        B=np.asarray(B, dtype=float),
        Omega=float(Omega),
    )


def h_terms(frame: AdaptedFrame, t: Sequence[float]) -> Tuple[float, float]:
    """The scalars h_1, h_2 before division by -Omega^2."""
    a, b = frame.form(3, 5), frame.form(3, 6)
    Da, Db = frame.dform(3, 5), frame.dform(3, 6)
    B = frame.form(1, 2) + frame.form(3, 4)
    w56 = frame.form(5, 6)
    out = []
    for i in range(2):
        acc = t[0] * (Da[0, i] - a[1] * B[i] - b[0] * w56[i])
        acc += t[1] * (Db[0, i] - b[1] * B[i] + a[0] * w56[i])
        for k in range(2, len(t)):
            acc += t[k] * (a[0] * frame.form(5, k + 5)[i] + b[0] * frame.form(6, k + 5)[i])
        out.append(acc)
    return out[0], out[1]


def shape_operators(surface: Surface, rp: RuledPoint) -> ShapeOperators:
    """Closed-form shape operators of F at rp."""
    frame = frame_at(as_framing(surface), rp)
    require_isotropic(frame)
    hd = _horizontal(frame, rp)
    Om2 = hd.Omega**2
    p1, p2 = h_terms(frame, rp.t)
    a, b = frame.form(3, 5), frame.form(3, 6)
    return assemble_operators(
        kappa=frame.kappa,
        h1=-p1 / Om2,
        h2=-p2 / Om2,
        r=-a / hd.Omega,
        s=-b / hd.Omega,
        n=frame.N - 2,
        B=frame.form(1, 2) + frame.form(3, 4),
        Omega=hd.Omega,
    )


@dataclass(frozen=True)
class NumericSFF:
    """Second fundamental form of F from finite differences of the parametrization."""

    A_xi: np.ndarray
    A_eta: np.ndarray
    mean_curvature: float
    metric: np.ndarray


def _parametrization(framing: Framing, n_t: int):
    def P(x: np.ndarray) -> np.ndarray:
        z = complex(x[0], x[1])
        return framing.position(z) + x[2:] @ framing.frame(z).vectors[4 : 4 + n_t]

    return P


def numeric_sff(
    surface: Surface, rp: RuledPoint, step: float = oracle.DEFAULT_STEP, refine: bool = True
) -> NumericSFF:
    """Shape operators of F by central differences, comparable entrywise with shape_operators.

    The tangent frame is recovered by orthonormalizing the coordinate vectors
    in the order (d_t..., d_u, d_v), which reproduces E_3.., E_1, E_2.
    With ``refine`` (the default) every difference is Richardson-refined;
    where the frame turns quickly the plain O(h^2) Hessian is off by more
    than the shape-operator tolerance.

    Raises:
        DomainError: If ``step`` is outside [1e-6, 1e-3]
    """
    step = oracle.check_step(step)
    framing = as_framing(surface)
    frame = frame_at(framing, rp)
    require_isotropic(frame)
    xi, eta = _normals(frame, rp)
    P = _parametrization(framing.anchored(rp.z), len(rp.t))
    x0 = rp.coords()
    if refine:
        jac = np.array([oracle.richardson(P, x0, d, step) for d in np.eye(x0.size)])
    else:
        jac = oracle.gradient(P, x0, step)
    hess = oracle.hessian(P, x0, step, refine)
    m = x0.size
    order = list(range(2, m)) + [0, 1]
    cols = jac[order].T
    Q, R = linalg.qr(cols, mode="economic")
    signs = np.sign(np.diag(R))
    Q = Q * signs
    R = R * signs[:, np.newaxis]
    C = linalg.solve_triangular(R, np.eye(m))
    H = hess[np.ix_(order, order)]
    # back to E_1, E_2, E_3, ...
    perm = [m - 2, m - 1] + list(range(m - 2))
    C = C[:, perm]
    Hb = np.einsum("ia,jb,ijk->abk", C, C, H)
    A_xi = Hb @ xi
    A_eta = Hb @ eta
    trace_vec = np.einsum("aak->k", Hb)
    normal_part = trace_vec - Q @ (Q.T @ trace_vec)
    return NumericSFF(
        A_xi=0.5 * (A_xi + A_xi.T),
        A_eta=0.5 * (A_eta + A_eta.T),
        mean_curvature=float(np.linalg.norm(normal_part)),
        metric=jac @ jac.T,
    )


def ricci_from_forms(
    a: np.ndarray,
    b: np.ndarray,
    Da: np.ndarray,
    Db: np.ndarray,
    B: np.ndarray,
    w56: np.ndarray,
    w57: np.ndarray,
    w58: np.ndarray,
    w67: np.ndarray,
    w68: np.ndarray,
) -> np.ndarray:
    """The eight scalar Ricci expressions; ``Da[k, l] = e_l(a_k)``."""
    return np.array(
        [
            Da[1, 0] - Da[0, 1] + a[0] * B[0] + a[1] * B[1] - b[1] * w56[0] + b[0] * w56[1],
            Db[1, 0] - Db[0, 1] + b[0] * B[0] + b[1] * B[1] + a[1] * w56[0] - a[0] * w56[1],
            Da[0, 0] + Da[1, 1] - a[1] * B[0] + a[0] * B[1] - b[0] * w56[0] - b[1] * w56[1],
            Db[0, 0] + Db[1, 1] - b[1] * B[0] + b[0] * B[1] + a[0] * w56[0] + a[1] * w56[1],
            a[1] * w57[0] - a[0] * w57[1] + b[1] * w67[0] - b[0] * w67[1],
            a[1] * w58[0] - a[0] * w58[1] + b[1] * w68[0] - b[0] * w68[1],
            a[0] * w57[0] + a[1] * w57[1] + b[0] * w67[0] + b[1] * w67[1],
            a[0] * w58[0] + a[1] * w58[1] + b[0] * w68[0] + b[1] * w68[1],
        ]
    )


def ricci_residuals(surface: Surface, z: complex) -> np.ndarray:
    """Absolute values of the eight Ricci expressions at z (the last four vanish when N = 6)."""
    framing = as_framing(surface)
    if framing.N < 6:
        raise ShapeError(f"Ricci identities need N >= 6, got N={framing.N}")
    f = framing.frame(z)
    values = ricci_from_forms(
        f.form(3, 5),
        f.form(3, 6),
        f.dform(3, 5),
        f.dform(3, 6),
        f.form(1, 2) + f.form(3, 4),
        f.form(5, 6),
        f.form(5, 7),
        f.form(5, 8),
        f.form(6, 7),
        f.form(6, 8),
    )
    return np.abs(values)


def comp_closed_forms(surface: Surface, rp: RuledPoint) -> Dict[str, np.ndarray]:
    """Closed-form derivatives of the normal fields xi and eta.

    Keys are ``"<field>_<direction>"`` with directions E3, E4, X1, X2 and
    ``V0_<j>`` for the remaining vertical directions.
    """
    frame = frame_at(as_framing(surface), rp)
    require_isotropic(frame)
    hd = _horizontal(frame, rp)
    e = frame.vectors
    t1, t2 = rp.t[0], rp.t[1]
    lam = frame.lam
    sigma = 1.0 / lam
    kap = frame.kappa
    a, b = frame.form(3, 5), frame.form(3, 6)
    c, d = frame.form(4, 5), frame.form(4, 6)
    w12, w34 = frame.form(1, 2), frame.form(3, 4)
    # e_i(phi_j), e_i(psi_j) with t frozen; rows j, columns i
    dphi = t1 * frame.dform(3, 5) + t2 * frame.dform(3, 6)
    dpsi = t1 * frame.dform(4, 5) + t2 * frame.dform(4, 6)
    phi, psi, G, H = hd.phi, hd.psi, hd.G, hd.H

    def tangent(x: np.ndarray) -> np.ndarray:
        return x[0] * e[0] + x[1] * e[1]

    def J(x: np.ndarray) -> np.ndarray:
        return np.array([-x[1], x[0]])

    out = {
        "xi_E3": tangent(a),
        "xi_E4": tangent(b),
        "eta_E3": tangent(c),
        "eta_E4": tangent(d),
    }
    out["xi_X1"] = (
        tangent(np.array([dphi[0, 0] - kap, dphi[1, 0]]) + w12[0] * J(phi) + G[0] * a + H[0] * b)
        + kap * phi[0] * e[2]
        + (w34[0] + lam * kap * phi[1]) * e[3]
        + a[0] * e[4]
        + b[0] * e[5]
    )
    out["xi_X2"] = (
        tangent(np.array([dphi[0, 1], dphi[1, 1] + kap]) + w12[1] * J(phi) + G[1] * a + H[1] * b)
        - kap * phi[1] * e[2]
        + (w34[1] + lam * kap * phi[0]) * e[3]
        + a[1] * e[4]
        + b[1] * e[5]
    )
    out["eta_X1"] = (
        tangent(
            np.array([dpsi[0, 0], dpsi[1, 0] - lam * kap])
            + sigma * w12[0] * phi
            - sigma * G[0] * J(a)
            - sigma * H[0] * J(b)
        )
        - (w34[0] - kap * psi[0]) * e[2]
        + lam * kap * psi[1] * e[3]
        + sigma * a[1] * e[4]
        + sigma * b[1] * e[5]
    )
    out["eta_X2"] = (
        tangent(
            np.array([dpsi[0, 1] - lam * kap, dpsi[1, 1]])
            + sigma * w12[1] * phi
            - sigma * G[1] * J(a)
            - sigma * H[1] * J(b)
        )
        - (w34[1] + kap * psi[1]) * e[2]
        + lam * kap * psi[0] * e[3]
        - sigma * a[0] * e[4]
        - sigma * b[0] * e[5]
    )
    for j in range(2, len(rp.t)):
        out[f"xi_V0_{j + 3}"] = np.zeros(frame.N)
        out[f"eta_V0_{j + 3}"] = np.zeros(frame.N)
    return out


def comp_residuals(
    surface: Surface, rp: RuledPoint, step: float = oracle.DEFAULT_STEP
) -> Dict[str, float]:
    """Deviation of finite-difference derivatives of xi, eta from comp_closed_forms, per direction."""
    step = oracle.check_step(step)
    framing = as_framing(surface)
    closed = comp_closed_forms(framing, rp)
    pinned = framing.anchored(rp.z)

    def fields(x: np.ndarray) -> np.ndarray:
        q = RuledPoint.from_coords(x)
        return np.stack(_normals(pinned.frame(q.z), q))

    x0 = rp.coords()
    lift = horizontal_lift(framing, rp)
    m = x0.size
    eye = np.eye(m)
    directions = {"X1": lift[0], "X2": lift[1], "E3": eye[2], "E4": eye[3]}
    for j in range(2, len(rp.t)):
        directions[f"V0_{j + 3}"] = eye[2 + j]
    out = {}
    for name, direction in directions.items():
        fd = oracle.directional(fields, x0, direction, step)
        out[f"xi_{name}"] = float(np.max(np.abs(fd[0] - closed[f"xi_{name}"])))
        out[f"eta_{name}"] = float(np.max(np.abs(fd[1] - closed[f"eta_{name}"])))
    return out


@dataclass(frozen=True)
class RankProfile:
    """Ranks of the stacked shape operators and of each one alone."""

    rank: int
    nullity_basis: np.ndarray
    rank_xi: int
    rank_eta: int

    @property
    def generic(self) -> bool:
        return self.rank == 4 and self.rank_xi == 4 and self.rank_eta == 4


def _rank(matrix: np.ndarray, tol: float) -> Tuple[int, np.ndarray]:
    _, sv, vt = linalg.svd(matrix)
    scale = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > tol * scale))
    return rank, vt[rank:].T


def operator_rank(ops: ShapeOperators, tol: float = RANK_TOL) -> RankProfile:
    """Rank of the stacked shape operators and a basis (columns) of their common kernel.

    Also reports the rank of A_xi and of A_eta alone; generic points have all three equal to 4.
    """
    rank, basis = _rank(np.vstack([ops.A_xi, ops.A_eta]), tol)
    return RankProfile(
        rank=rank,
        nullity_basis=basis,
        rank_xi=_rank(ops.A_xi, tol)[0],
        rank_eta=_rank(ops.A_eta, tol)[0],
    )


def rank_profile(surface: Surface, rp: RuledPoint) -> RankProfile:
    """Rank of the Gauss map of F at rp; generically 4 with kernel V^0."""
    return operator_rank(shape_operators(surface, rp))


def induced_metric(surface: Surface, rp: RuledPoint) -> np.ndarray:
    """Metric of F in the frame X_1, X_2, E_3, ... from the closed forms.

    With sigma = 1/lambda the horizontal block is
    ``[[1 + phi1^2 + sigma^2 phi2^2, (1 - sigma^2) phi1 phi2], [., 1 + phi2^2 + sigma^2 phi1^2]]``
    and the vertical block is the identity.
    """
    frame = frame_at(as_framing(surface), rp)
    sigma = 1.0 / frame.lam
    t1, t2 = rp.t[0], rp.t[1]
    p1, p2 = t1 * frame.form(3, 5) + t2 * frame.form(3, 6)
    n = frame.N - 2
    g = np.eye(n)
    g[0, 0] = 1 + p1**2 + sigma**2 * p2**2
    g[1, 1] = 1 + p2**2 + sigma**2 * p1**2
    g[0, 1] = g[1, 0] = (1 - sigma**2) * p1 * p2
    return g


def coordinate_metric(surface: Surface, rp: RuledPoint) -> np.ndarray:
    """Exact first fundamental form of (u, v, t) -> F from frame jets."""
    framing = as_framing(surface)
    frame = frame_at(framing, rp)
    t = np.asarray(rp.t)
    tail = frame.e[4 : 4 + len(t)]
    Fu = frame.e[0].value * frame.rho.value + sum(tj * ej.du for tj, ej in zip(t, tail))
    Fv = frame.e[1].value * frame.rho.value + sum(tj * ej.dv for tj, ej in zip(t, tail))
    cols = np.vstack([Fu, Fv] + [ej.value for ej in tail])
    return cols @ cols.T


def metric_residual(surface: Surface, rp: RuledPoint) -> float:
    """Gap between induced_metric and the coordinate metric pulled back to X_1, X_2, E_3, ..."""
    lift = horizontal_lift(surface, rp)
    m = lift.shape[1]
    basis = np.vstack([lift, np.eye(m)[2:]])
    pulled = basis @ coordinate_metric(surface, rp) @ basis.T
    return float(np.max(np.abs(pulled - induced_metric(surface, rp))))


def zero_section_residual(surface: Surface, z: complex, step: float = ZERO_SECTION_STEP) -> float:
    """Distance of the zero section F(., 0) from a totally geodesic copy of g, over kappa rho^2.

    Second derivatives of F(., 0) are taken by finite differences of its
    positions and compared with the exact derivatives of g from
    :func:`~isoruled.weierstrass.evaluate_surface`; the exact derivatives must
    also have no component along e_5, ..., e_N.
    """
    framing = as_framing(surface)
    frame = framing.frame(z)
    zeros = (0.0,) * (framing.N - 4)

    def section(x: np.ndarray) -> np.ndarray:
        return eval_F(framing, RuledPoint(complex(x[0], x[1]), zeros))

    z = complex(z)
    hess = oracle.hessian(section, np.array([z.real, z.imag]), step, refine=True)
    exact = evaluate_surface(framing.chart, z, 2)
    second = np.array([exact[(2, 0)], exact[(1, 1)], exact[(0, 2)]])
    measured = np.array([hess[0, 0], hess[0, 1], hess[1, 1]])
    match = np.max(np.abs(measured - second))
    beyond = np.max(np.abs(second @ frame.vectors[4:].T))
    return float(max(match, beyond) / (frame.kappa * frame.rho.value**2))


def sample_ruled_points(
    surface: Surface,
    rng: np.random.Generator,
    count: int,
    radius: float,
    t_scale: float = 0.5,
) -> List[RuledPoint]:
    """Uniform samples of z in the disc of the given radius and t in [-t_scale, t_scale]."""
    framing = as_framing(surface)
    z0 = framing.chart.base_point
    n_t = framing.N - 4
    out = []
    for _ in range(count):
        r = radius * np.sqrt(rng.uniform())
        z = z0 + r * np.exp(2j * np.pi * rng.uniform())
        out.append(RuledPoint(complex(z), tuple(rng.uniform(-t_scale, t_scale, n_t))))
    return out


def normal_frame_residual(surface: Surface, rp: RuledPoint) -> float:
    """Largest defect of |xi| = |eta| = Omega, xi _|_ eta and xi, eta _|_ F_* X_i, e_5, ..., e_N.

    Inner products are taken relative to Omega^2.
    """
    frame = frame_at(as_framing(surface), rp)
    require_isotropic(frame)
    hd = _horizontal(frame, rp)
    xi, eta = _normals(frame, rp)
    Om2 = hd.Omega**2
    tangent = np.vstack([hd.FX1, hd.FX2, frame.vectors[4:]])
    defects = [
        abs(xi @ xi - Om2),
        abs(eta @ eta - Om2),
        abs(xi @ eta),
        float(np.max(np.abs(tangent @ xi))),
        float(np.max(np.abs(tangent @ eta))),
    ]
    return float(max(defects) / Om2)
