"""Pointwise differential geometry of a minimal surface chart.

Architecture:
    - Framing: anything that can place the surface in space and attach an
      adapted frame to each parameter value. OsculatingFraming builds frames
      for a SurfaceChart; the associated family supplies its own (rotated)
      framing so the ruled construction runs unchanged on both.
    - AdaptedFrame: orthonormal e_1..e_N as second-order jets, the
      connection forms omega_ij(e_k) and their first derivatives.
    - higher_form / curvature_ellipse: fundamental forms of every order from
      osculating projections of the derivatives of g.
    - DualFields: the coefficients of the vector fields dual to
      omega_35, omega_36, omega_45, omega_46.

Frames are built by Gram-Schmidt over the exact derivative jets
``Re(i^j G^(k))``, block by block: the tangent plane, the first normal plane,
then one plane per higher normal space. The last block (whatever completes
the ambient space) may fall back to a fixed reference completion where the
top osculating space drops rank; every earlier block must be nondegenerate.

Example:
    >>> from isoruled.surfgeo import adapted_frame, curvature_ellipse
    >>> frame = adapted_frame(chart, 0.1 + 0.05j)
    >>> round(frame.lam, 9)
    1.0
    >>> curvature_ellipse(chart, 0.0, 1).kappa
    4.0
"""

import logging
import threading
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from isoruled.errors import DegeneracyError, DomainError, ModelViolationError, ShapeError
from isoruled.jetcalc import DEFAULT_EPS_RANK, Jet2, normalize, project_out, stack_jets
from isoruled.weierstrass import SurfaceChart

logger = logging.getLogger(__name__)

OSCULATING = "osculating"
REFERENCE = "reference"
ISOTROPY_TOL = 1e-7
FRAME_CACHE_SIZE = 4096


@dataclass(frozen=True)
class CurvatureEllipse:
    """Semi-axes of the image of the unit circle under the (s+1)-th fundamental form."""

    order: int
    kappa: float
    mu: float

    @property
    def circle_defect(self) -> float:
        if self.kappa == 0:
            return 0.0
        return abs(self.kappa - self.mu) / self.kappa

    @property
    def lam(self) -> float:
        return self.mu / self.kappa


@dataclass(frozen=True)
class TailPolicy:
    """How the last block of a frame is completed.

    ``reference`` lists the standard basis indices used, in order, when the
    block is completed from the reference basis instead of from derivatives.
    """

    mode: str = OSCULATING
    reference: Tuple[int, ...] = ()


@dataclass(frozen=True)
class AdaptedFrame:
    """An adapted orthonormal frame at one parameter value.

    Attributes:
        z: Parameter value
        e: Frame vectors e_1..e_N as second-order jets in (u, v)
        rho: Conformal factor |g_u| as a second-order jet
        norms: Gram-Schmidt residual lengths, one jet per frame vector
        omega: ``omega[k, i, j] = <d_k e_i, e_j> / rho``, i.e. omega_ij(e_k)
        omega_jets: The same quantities as first-order jets
        tail: Policy used for the last block
        nblocks: Number of frame blocks (tangent, N_1, N_2, ...)
    """

    z: complex
    e: Tuple[Jet2, ...]
    rho: Jet2
    norms: Tuple[Jet2, ...]
    omega: np.ndarray
    omega_jets: Jet2
    tail: TailPolicy = field(default_factory=TailPolicy)

    @property
    def N(self) -> int:
        return len(self.e)

    @property
    def nblocks(self) -> int:
        return (self.N + 1) // 2

    @property
    def vectors(self) -> np.ndarray:
        """Frame values as rows of an (N, N) array."""
        return np.array([f.value for f in self.e])

    @property
    def kappa(self) -> float:
        """|alpha(e_1, e_1)|, the first Gram-Schmidt residual of the first normal block.

        This is the semi-axis of the first curvature ellipse only when the
        ellipse is a circle, which every frame of a 1-isotropic chart
        satisfies. For other charts use :func:`curvature_ellipse`.
        """
        return float(self.norms[2].value / self.rho.value**2)

    @property
    def mu(self) -> float:
        """Component of alpha(e_1, e_2) orthogonal to alpha(e_1, e_1); equals kappa on circles."""
        return float(self.norms[3].value / self.rho.value**2)

    @property
    def lam(self) -> float:
        return self.mu / self.kappa

    def form(self, i: int, j: int) -> np.ndarray:
        """``[omega_ij(e_1), omega_ij(e_2)]`` with 1-based frame indices; zero if absent."""
        if max(i, j) > self.N:
            return np.zeros(2)
        return self.omega[:, i - 1, j - 1]

    def dform(self, i: int, j: int) -> np.ndarray:
        """Matrix ``D[k, l] = e_l(omega_ij(e_k))`` with 1-based frame indices."""
        if max(i, j) > self.N:
            return np.zeros((2, 2))
        jet = self.omega_jets[:, i - 1, j - 1]
        return np.stack([jet.du, jet.dv], axis=-1) / self.rho.value

    def along(self, f: Jet2, k: int) -> np.ndarray:
        """Derivative of a jet along e_1 (k=1) or e_2 (k=2)."""
        return (f.du if k == 1 else f.dv) / self.rho.value


def assemble_frame(
    z: complex,
    e: Sequence[Jet2],
    rho: Jet2,
    norms: Sequence[Jet2],
    tail: Optional[TailPolicy] = None,
) -> AdaptedFrame:
    """Read the connection forms off second-order frame jets."""
    E = stack_jets(e)
    E1 = E.first_order()
    inv_rho = rho.first_order().reciprocal()
    per_dir = [E.partial(d).gram(E1) * inv_rho for d in ("u", "v")]
    omega_jets = stack_jets(per_dir)
    return AdaptedFrame(
        z=complex(z),
        e=tuple(e),
        rho=rho,
        norms=tuple(norms),
        omega=omega_jets.value,
        omega_jets=omega_jets,
        tail=tail or TailPolicy(),
    )


class Framing(ABC):
    """A surface with an adapted frame at every parameter value."""

    @property
    @abstractmethod
    def chart(self) -> SurfaceChart:
        """Chart whose derivatives define the surface of this framing."""
        pass

    @property
    def N(self) -> int:
        return self.chart.N

    @property
    def eps_rank(self) -> float:
        return DEFAULT_EPS_RANK

    def position(self, z: complex) -> np.ndarray:
        return self.chart.position(z)

    @abstractmethod
    def frame(self, z: complex) -> AdaptedFrame:
        """Adapted frame with second-order jets at z.

        Raises:
            DegeneracyError: If an osculating space drops rank at z
            ModelViolationError: If the first curvature ellipse at z is not a circle
                and the frame continues past the first normal plane
        """
        pass

    @abstractmethod
    def anchored(self, z: complex) -> "Framing":
        """A framing whose frame choices near z are pinned to those made at z.

        Finite-difference oracles evaluate frames at displaced points; pinning
        keeps those frames on the same smooth branch.
        """
        pass


class OsculatingFraming(Framing):
    """Frames of a chart from Gram-Schmidt over exact derivative jets.

    Frames beyond the first normal plane exist only for 1-isotropic charts:
    once the first normal block is built, a chart whose first curvature
    ellipse is not a circle is rejected with ModelViolationError.

    The most recent ``cache_size`` frames are kept.
    """

    def __init__(
        self,
        chart: SurfaceChart,
        eps_rank: float = DEFAULT_EPS_RANK,
        tail: Optional[TailPolicy] = None,
        cache_size: int = FRAME_CACHE_SIZE,
    ):
        if cache_size < 1:
            raise DomainError(f"frame cache size must be positive, got {cache_size}")
        self._chart = chart
        self._eps_rank = eps_rank
        self._tail = tail
        self._cache_size = cache_size
        self._cache: "OrderedDict[complex, AdaptedFrame]" = OrderedDict()
        self._lock = threading.Lock()

    @property
    def chart(self) -> SurfaceChart:
        return self._chart

    @property
    def eps_rank(self) -> float:
        return self._eps_rank

    def __repr__(self) -> str:
        return f"OsculatingFraming({self._chart.provenance}, tail={self._tail})"

    def _candidates(self, z: complex) -> List[Tuple[Jet2, Optional[Jet2]]]:
        N = self.N
        nblocks = (N + 1) // 2
        D = self._chart.derivatives(z, nblocks + 2)
        pairs = []
        for k in range(1, nblocks + 1):

            def cand(j: int) -> Jet2:
                w = 1j**j
                return Jet2(
                    (w * D[k]).real,
                    (w * D[k + 1]).real,
                    (1j * w * D[k + 1]).real,
                    (w * D[k + 2]).real,
                    (1j * w * D[k + 2]).real,
                    (-w * D[k + 2]).real,
                )

            second = cand(1) if 2 * k <= N else None
            pairs.append((cand(0), second))
        return pairs

    def _accept(self, v: Jet2, frames: List[Jet2], index: int) -> Tuple[Jet2, Jet2]:
        w = project_out(v, frames)
        length = float(np.linalg.norm(w.value))
        scale = float(np.linalg.norm(v.value))
        if length <= self._eps_rank * scale:
            raise DegeneracyError(
                f"osculating vector {index + 1} is dependent (residual {length:.3e} of {scale:.3e})",
                index=index,
            )
        return normalize(w)

    @staticmethod
    def _require_circle(z: complex, norms: List[Jet2]) -> None:
        lam = float(norms[3].value / norms[2].value)
        if abs(lam - 1.0) > ISOTROPY_TOL:
            raise ModelViolationError(f"chart is not 1-isotropic at z={z}: lambda={lam:.9f}")

    def _reference_tail(
        self, frames: List[Jet2], count: int, pinned: Tuple[int, ...]
    ) -> Tuple[List[Jet2], List[Jet2], Tuple[int, ...]]:
        N = self.N
        basis = np.eye(N)
        chosen: List[int] = []
        out_f: List[Jet2] = []
        out_n: List[Jet2] = []
        for step in range(count):
            if pinned:
                idx = pinned[step]
            else:
                current = frames + out_f
                residuals = [
                    np.linalg.norm(project_out(Jet2.constant(basis[m], 2), current).value)
                    for m in range(N)
                ]
                idx = int(np.argmax(residuals))
            f, n = normalize(project_out(Jet2.constant(basis[idx], 2), frames + out_f))
            chosen.append(idx)
            out_f.append(f)
            out_n.append(n)
        return out_f, out_n, tuple(chosen)

    def _build(self, z: complex) -> AdaptedFrame:
        pairs = self._candidates(z)
        frames: List[Jet2] = []
        norms: List[Jet2] = []
        last = len(pairs) - 1
        policy = self._tail
        for b, (first, second) in enumerate(pairs):
            block = [first] if second is None else [first, second]
            if b < last:
                for v in block:
                    try:
                        f, n = self._accept(v, frames, len(frames))
                    except DegeneracyError as exc:
                        # e_3 exists but e_4 does not: the first ellipse is a segment
                        if exc.index == 3:
                            raise ModelViolationError(
                                f"chart is not 1-isotropic at z={z}: first normal space is a line"
                            ) from exc
                        raise
                    frames.append(f)
                    norms.append(n)
                if b == 1:
                    self._require_circle(z, norms)
                continue
            if policy is None or policy.mode == OSCULATING:
                try:
                    tail_f: List[Jet2] = []
                    tail_n: List[Jet2] = []
                    for v in block:
                        f, n = self._accept(v, frames + tail_f, len(frames) + len(tail_f))
                        tail_f.append(f)
                        tail_n.append(n)
                    frames += tail_f
                    norms += tail_n
                    policy = TailPolicy(OSCULATING)
                    continue
                except DegeneracyError:
                    if policy is not None:
                        raise
                    logger.debug(f"Top osculating space degenerate at z={z}; using reference tail")
            pinned = policy.reference if policy is not None else ()
            tail_f, tail_n, chosen = self._reference_tail(frames, len(block), pinned)
            frames += tail_f
            norms += tail_n
            policy = TailPolicy(REFERENCE, chosen)
        return assemble_frame(z, frames, norms[0], norms, policy)

    def frame(self, z: complex) -> AdaptedFrame:
        z = self._chart.check_domain(z)
        with self._lock:
            cached = self._cache.get(z)
            if cached is not None:
                self._cache.move_to_end(z)
        if cached is not None:
            return cached
        try:
            built = self._build(z)
        except DegeneracyError as exc:
            tagged = exc.at(z)
            if tagged is exc:
                raise
            raise tagged from exc
        with self._lock:
            self._cache[z] = built
            while len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        return built

    @property
    def cached_frames(self) -> int:
        return len(self._cache)

    def anchored(self, z: complex) -> "OsculatingFraming":
        policy = self.frame(z).tail
        return OsculatingFraming(self._chart, self._eps_rank, policy, self._cache_size)


def as_framing(
    surface: Union[SurfaceChart, Framing], eps_rank: float = DEFAULT_EPS_RANK
) -> Framing:
    """Accept either a chart or a framing."""
    if isinstance(surface, Framing):
        return surface
    if isinstance(surface, SurfaceChart):
        return OsculatingFraming(surface, eps_rank)
    raise TypeError(f"expected SurfaceChart or Framing, got {type(surface).__name__}")


def higher_form(surface: Union[SurfaceChart, Framing], z: complex, s: int) -> np.ndarray:
    """Values of the (s+1)-th fundamental form on frame arguments.

    Row j of the result is ``alpha^{s+1}(e_1, ..., e_1, e_2, ..., e_2)`` with j
    copies of e_2, for j = 0..s+1. For s = 1 these are alpha(e_1, e_1),
    alpha(e_1, e_2) and alpha(e_2, e_2).

    Raises:
        DomainError: If s < 1 or no normal space of that order exists
        DegeneracyError: If a lower osculating space drops rank, or the form vanishes
    """
    framing = as_framing(surface)
    if s < 1 or 2 * s >= framing.N:
        raise DomainError(f"no fundamental form of order {s + 1} in dimension {framing.N}")
    derivs = framing.chart.derivatives(z, s + 1)
    if s == 1:
        # only the tangent plane is needed, so charts that are not 1-isotropic qualify
        G1 = derivs[1]
        P = linalg.orth(np.array([G1.real, (1j * G1).real]).T).T
        rho = float(np.linalg.norm(G1.real))
    else:
        frame = framing.frame(z)
        P = frame.vectors[: 2 * s]
        rho = float(frame.rho.value)
    D = derivs[s + 1]
    W = D - P.T @ (P @ D)
    if np.linalg.norm(W) <= framing.eps_rank * np.linalg.norm(D):
        raise DegeneracyError(
            f"fundamental form of order {s + 1} vanishes", index=2 * s, point=complex(z)
        )
    W = W / rho ** (s + 1)
    return np.array([(1j**j * W).real for j in range(s + 2)])


def curvature_ellipse(
    surface: Union[SurfaceChart, Framing], z: complex, s: int
) -> CurvatureEllipse:
    """Semi-axes of the s-th curvature ellipse (s = 1 is the classical one)."""
    values = higher_form(surface, z, s)
    sv = linalg.svdvals(values[:2].T)
    return CurvatureEllipse(order=s, kappa=float(sv[0]), mu=float(sv[1]))


def adapted_frame(surface: Union[SurfaceChart, Framing], z: complex) -> AdaptedFrame:
    """The adapted frame of the chart (or framing) at z."""
    return as_framing(surface).frame(z)


@dataclass(frozen=True)
class DualFields:
    """Coefficients on {e_1, e_2} of V, W, Y, Z dual to omega_35, omega_36, omega_45, omega_46."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    lam: float


def dual_fields(frame: AdaptedFrame) -> DualFields:
    """Dual fields of the first normal plane against the second."""
    if frame.N < 6:
        raise ShapeError(f"dual fields need a second normal plane, N={frame.N}")
    if frame.kappa <= 0:
        raise DegeneracyError("curvature vanishes", point=frame.z)
    return DualFields(
        a=frame.form(3, 5).copy(),
        b=frame.form(3, 6).copy(),
        c=frame.form(4, 5).copy(),
        d=frame.form(4, 6).copy(),
        lam=frame.lam,
    )


def hodge_star(w: np.ndarray) -> np.ndarray:
    """``*w(e) = -w(Je)`` for a 1-form given by its values on (e_1, e_2)."""
    return np.array([-w[1], w[0]])


def conn_residual(fields: DualFields) -> float:
    """Largest deviation from omega_45 = -(1/lambda) *omega_35 and omega_46 = -(1/lambda) *omega_36."""
    r1 = fields.c + hodge_star(fields.a) / fields.lam
    r2 = fields.d + hodge_star(fields.b) / fields.lam
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


def frame_transport_residual(
    surface: Union[SurfaceChart, Framing], z: complex, step: float = 1e-4
) -> float:
    """Largest gap between omega_ij(e_k) and central differences of the frame."""
    framing = as_framing(surface).anchored(z)
    f0 = framing.frame(z)
    E0 = f0.vectors
    worst = 0.0
    for k, dz in enumerate((step, 1j * step)):
        dE = (framing.frame(z + dz).vectors - framing.frame(z - dz).vectors) / (2 * step)
        fd = dE @ E0.T / f0.rho.value
        worst = max(worst, float(np.max(np.abs(fd - f0.omega[k]))))
    return worst


def frame_gram_defect(frame: AdaptedFrame) -> float:
    E = frame.vectors
    return float(np.max(np.abs(E @ E.T - np.eye(frame.N))))
