"""Exact calculus kernel: truncated power series and bivariate jets.

Two small algebras carry every derivative the rest of the package needs:

Architecture:
    - HoloSeries: vector-valued complex power series about a base point z0,
      truncated at degree K. Holds the Weierstrass data (Gauss maps, isotropic
      data, their primitives) and differentiates/integrates them exactly.
    - Jet2: value plus first (and optionally second) partial derivatives of a
      real array-valued function of (u, v). Frames built from surface
      derivatives are pushed through Gram-Schmidt as jets, so connection
      forms come out of the first-order coefficients without finite
      differences.

Usage:
    >>> from isoruled.jetcalc import HoloSeries, sym_inner
    >>> a = HoloSeries([[1.0], [1j]])          # constant series (1, i)
    >>> sym_inner(a, a).max_abs()
    0.0
    >>> z = HoloSeries([[0.0, 1.0]])           # the series z
    >>> z.antiderivative(0.0).coeffs[0, :3]    # z^2 / 2
    array([0. +0.j, 0. +0.j, 0.5+0.j])

All objects are immutable after construction and every operation returns a
new object, so values can be shared freely between threads.
"""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from isoruled.errors import DegeneracyError, DomainError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 32
MIN_ORDER = 8
DEFAULT_EPS_RANK = 1e-8

Number = Union[int, float, complex]


class HoloSeries:
    """Truncated complex power series with ``ncomp`` components.

    The coefficient array has shape ``(ncomp, order + 1)``; row ``k`` holds
    the Taylor coefficients of component ``k`` in powers of ``z - base_point``.
    Products and antiderivatives drop everything above ``order``, so
    arithmetic is exact for polynomial data whose total degree stays within
    the truncation.
    """

    __slots__ = ("_coeffs", "_base_point")

    def __init__(
        self,
        coeffs: Union[Sequence, np.ndarray],
        base_point: Number = 0.0,
        order: int = DEFAULT_ORDER,
    ):
        """Build a series from per-component coefficient lists.

        Args:
            coeffs: A list of coefficients (one component) or a list of lists
                / 2D array (one row per component)
            base_point: Expansion point z0
            order: Truncation degree K (at least 8)

        Raises:
            ShapeError: If the order is too small or coeffs is not 1D/2D
        """
        if order < MIN_ORDER:
            raise ShapeError(f"truncation order must be >= {MIN_ORDER}, got {order}")
        if not isinstance(coeffs, np.ndarray) and coeffs and all(
            isinstance(row, (list, tuple)) for row in coeffs
        ):
            # rows of different lengths are zero-padded
            width = max(len(row) for row in coeffs) or 1
            coeffs = [list(row) + [0.0] * (width - len(row)) for row in coeffs]
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[np.newaxis, :]
        if c.ndim != 2:
            raise ShapeError(f"coefficients must be 1D or 2D, got shape {c.shape}")
        if c.shape[1] > order + 1:
            dropped = np.max(np.abs(c[:, order + 1 :]))
            if dropped > 0:
                logger.debug(f"Truncating series at order {order}, dropped |c| up to {dropped:.3e}")
            c = c[:, : order + 1]
        elif c.shape[1] < order + 1:
            c = np.pad(c, ((0, 0), (0, order + 1 - c.shape[1])))
        c.setflags(write=False)
        self._coeffs = c
        self._base_point = complex(base_point)

    @classmethod
    def constant(
        cls,
        values: Union[Number, Sequence[Number]],
        base_point: Number = 0.0,
        order: int = DEFAULT_ORDER,
    ) -> "HoloSeries":
        """Constant series with the given component values."""
        v = np.atleast_1d(np.asarray(values, dtype=complex))
        return cls(v[:, np.newaxis], base_point, order)

    @classmethod
    def stack(cls, parts: Iterable["HoloSeries"]) -> "HoloSeries":
        """Concatenate the components of compatible series."""
        parts = list(parts)
        if not parts:
            raise ShapeError("cannot stack an empty list of series")
        first = parts[0]
        for p in parts[1:]:
            first._check_frame(p)
        return cls(np.vstack([p.coeffs for p in parts]), first.base_point, first.order)

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of shape (ncomp, order + 1)."""
        return self._coeffs

    @property
    def base_point(self) -> complex:
        return self._base_point

    @property
    def order(self) -> int:
        return self._coeffs.shape[1] - 1

    @property
    def ncomp(self) -> int:
        return self._coeffs.shape[0]

    def _wrap(self, coeffs: np.ndarray) -> "HoloSeries":
        return HoloSeries(coeffs, self._base_point, self.order)

    def _check_frame(self, other: "HoloSeries") -> None:
        if other.order != self.order:
            raise ShapeError(f"order mismatch: {self.order} vs {other.order}")
        if other.base_point != self.base_point:
            raise ShapeError(f"base point mismatch: {self.base_point} vs {other.base_point}")

    def _broadcast(self, other: "HoloSeries") -> Tuple[np.ndarray, np.ndarray]:
        self._check_frame(other)
        a, b = self._coeffs, other._coeffs
        if a.shape[0] == b.shape[0] or a.shape[0] == 1 or b.shape[0] == 1:
            return np.broadcast_arrays(a, b)
        raise ShapeError(f"component mismatch: {a.shape[0]} vs {b.shape[0]}")

    def __add__(self, other: Union["HoloSeries", Number]) -> "HoloSeries":
        if isinstance(other, HoloSeries):
            a, b = self._broadcast(other)
            return self._wrap(a + b)
        c = self._coeffs.copy()
        c[:, 0] += other
        return self._wrap(c)

    __radd__ = __add__

    def __neg__(self) -> "HoloSeries":
        return self._wrap(-self._coeffs)

    def __sub__(self, other: Union["HoloSeries", Number]) -> "HoloSeries":
        return self + (-other)

    def __rsub__(self, other: Number) -> "HoloSeries":
        return (-self) + other

    def __mul__(self, other: Union["HoloSeries", Number]) -> "HoloSeries":
        if not isinstance(other, HoloSeries):
            return self._wrap(self._coeffs * complex(other))
        a, b = self._broadcast(other)
        k = self.order + 1
        out = np.array([np.convolve(ra, rb)[:k] for ra, rb in zip(a, b)])
        return self._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["HoloSeries", Number]) -> "HoloSeries":
        if isinstance(other, HoloSeries):
            return self * other.reciprocal()
        return self._wrap(self._coeffs / complex(other))

    def __getitem__(self, index: Union[int, slice]) -> "HoloSeries":
        rows = self._coeffs[index]
        return self._wrap(np.atleast_2d(rows))

    def __len__(self) -> int:
        return self.ncomp

    def __repr__(self) -> str:
        return f"HoloSeries(ncomp={self.ncomp}, order={self.order}, base_point={self.base_point})"

    def derivative(self) -> "HoloSeries":
        """Termwise derivative; the top coefficient becomes zero."""
        k = np.arange(1, self.order + 1)
        out = np.zeros_like(self._coeffs)
        out[:, :-1] = self._coeffs[:, 1:] * k
        return self._wrap(out)

    def antiderivative(self, constant: Union[Number, Sequence[Number]] = 0.0) -> "HoloSeries":
        """Termwise primitive P with P(z0) = constant.

        The top coefficient of ``self`` has no room in the result and is lost.
        """
        out = np.zeros_like(self._coeffs)
        out[:, 1:] = self._coeffs[:, :-1] / np.arange(1, self.order + 1)
        out[:, 0] = constant
        return self._wrap(out)

    def sym_inner(self, other: "HoloSeries") -> "HoloSeries":
        """Complex-bilinear inner product sum_k a_k b_k (no conjugation)."""
        if self.ncomp != other.ncomp:
            raise ShapeError(f"component mismatch: {self.ncomp} vs {other.ncomp}")
        prod = self * other
        return self._wrap(prod.coeffs.sum(axis=0, keepdims=True))

    def reciprocal(self) -> "HoloSeries":
        """Componentwise multiplicative inverse.

        Raises:
            DomainError: If a component vanishes at the base point
        """
        a = self._coeffs
        if np.any(np.abs(a[:, 0]) == 0):
            raise DomainError("series is not invertible: vanishes at the base point")
        out = np.zeros_like(a)
        out[:, 0] = 1.0 / a[:, 0]
        for n in range(1, self.order + 1):
            acc = np.sum(a[:, 1 : n + 1] * out[:, n - 1 :: -1][:, :n], axis=1)
            out[:, n] = -acc / a[:, 0]
        return self._wrap(out)

    def recentered(self, base_point: Number) -> "HoloSeries":
        """The same function expanded about another point.

        Exact for polynomials whose degree stays within the truncation.
        """
        shift = complex(base_point) - self._base_point
        K = self.order + 1
        out = np.zeros_like(self._coeffs)
        for n in range(K):
            weights = np.array([math.comb(k, n) * shift ** (k - n) for k in range(n, K)])
            out[:, n] = self._coeffs[:, n:] @ weights
        return HoloSeries(out, base_point, self.order)

    def with_order(self, order: int) -> "HoloSeries":
        return HoloSeries(self._coeffs, self._base_point, order)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._coeffs)))

    def degree(self) -> int:
        """Highest power with a nonzero coefficient (-1 for the zero series)."""
        nz = np.nonzero(np.any(self._coeffs != 0, axis=0))[0]
        return int(nz[-1]) if nz.size else -1

    def __call__(self, z: Number) -> np.ndarray:
        """Evaluate every component at z."""
        return npoly.polyval(complex(z) - self._base_point, self._coeffs.T)

    def derivatives_at(self, z: Number, kmax: int) -> np.ndarray:
        """Return an array (kmax + 1, ncomp) whose row k is the k-th derivative at z."""
        rows = []
        s = self
        for _ in range(kmax + 1):
            rows.append(s(z))
            s = s.derivative()
        return np.array(rows)


def sym_inner(a: HoloSeries, b: HoloSeries) -> HoloSeries:
    """Symmetric (bilinear, unconjugated) inner product of two N-component series."""
    return a.sym_inner(b)


def antiderivative(a: HoloSeries, c: Union[Number, Sequence[Number]] = 0.0) -> HoloSeries:
    """Primitive of ``a`` taking the value ``c`` at the base point."""
    return a.antiderivative(c)


class Jet2:
    """Value and partial derivatives of a real array-valued function of (u, v).

    ``value``, ``du``, ``dv`` (and, for second-order jets, ``duu``, ``duv``,
    ``dvv``) share one shape. Arithmetic follows numpy broadcasting, so a
    scalar jet multiplies a vector jet directly.
    """

    __slots__ = ("value", "du", "dv", "duu", "duv", "dvv")

    def __init__(
        self,
        value,
        du,
        dv,
        duu=None,
        duv=None,
        dvv=None,
    ):
        self.value = np.asarray(value, dtype=float)
        self.du = np.asarray(du, dtype=float)
        self.dv = np.asarray(dv, dtype=float)
        second = (duu, duv, dvv)
        if any(x is None for x in second) and not all(x is None for x in second):
            raise ShapeError("second partials must be given all together")
        self.duu = None if duu is None else np.asarray(duu, dtype=float)
        self.duv = None if duv is None else np.asarray(duv, dtype=float)
        self.dvv = None if dvv is None else np.asarray(dvv, dtype=float)

    @classmethod
    def constant(cls, value, order: int = 1) -> "Jet2":
        v = np.asarray(value, dtype=float)
        z = np.zeros_like(v)
        if order >= 2:
            return cls(v, z, z, z, z, z)
        return cls(v, z, z)

    @property
    def order(self) -> int:
        return 1 if self.duu is None else 2

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.value.shape

    def _parts(self) -> List[Optional[np.ndarray]]:
        return [self.value, self.du, self.dv, self.duu, self.duv, self.dvv]

    def first_order(self) -> "Jet2":
        """Drop the second partials."""
        return Jet2(self.value, self.du, self.dv)

    def partial(self, direction: str) -> "Jet2":
        """First-order jet of ``d/du`` or ``d/dv`` of this jet.

        Raises:
            ShapeError: If this jet carries no second partials
        """
        if self.duu is None:
            raise ShapeError("partial() needs a second-order jet")
        if direction == "u":
            return Jet2(self.du, self.duu, self.duv)
        if direction == "v":
            return Jet2(self.dv, self.duv, self.dvv)
        raise ValueError(f"direction must be 'u' or 'v', got {direction!r}")

    def __getitem__(self, index) -> "Jet2":
        return Jet2(*[None if p is None else p[index] for p in self._parts()])

    def _common_order(self, other: "Jet2") -> int:
        return min(self.order, other.order)

    def __add__(self, other: Union["Jet2", float]) -> "Jet2":
        if not isinstance(other, Jet2):
            other = Jet2.constant(np.broadcast_to(other, self.shape), self.order)
        n = 6 if self._common_order(other) == 2 else 3
        a, b = self._parts()[:n], other._parts()[:n]
        return Jet2(*[x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(*[None if p is None else -p for p in self._parts()])

    def __sub__(self, other: Union["Jet2", float]) -> "Jet2":
        return self + (-other)

    def __rsub__(self, other: float) -> "Jet2":
        return (-self) + other

    def _bilinear(self, other: "Jet2", op) -> "Jet2":
        f, g = self, other
        value = op(f.value, g.value)
        du = op(f.du, g.value) + op(f.value, g.du)
        dv = op(f.dv, g.value) + op(f.value, g.dv)
        if self._common_order(other) < 2:
            return Jet2(value, du, dv)
        duu = op(f.duu, g.value) + 2.0 * op(f.du, g.du) + op(f.value, g.duu)
        duv = op(f.duv, g.value) + op(f.du, g.dv) + op(f.dv, g.du) + op(f.value, g.duv)
        dvv = op(f.dvv, g.value) + 2.0 * op(f.dv, g.dv) + op(f.value, g.dvv)
        return Jet2(value, du, dv, duu, duv, dvv)

    def __mul__(self, other: Union["Jet2", float]) -> "Jet2":
        if not isinstance(other, Jet2):
            return Jet2(*[None if p is None else p * other for p in self._parts()])
        return self._bilinear(other, np.multiply)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Jet2", float]) -> "Jet2":
        if not isinstance(other, Jet2):
            return self * (1.0 / other)
        return self * other.reciprocal()

    def dot(self, other: "Jet2") -> "Jet2":
        """Inner product along the last axis."""
        return self._bilinear(other, lambda a, b: np.sum(a * b, axis=-1))

    def gram(self, other: "Jet2") -> "Jet2":
        """Matrix of row inner products ``self[i] . other[j]`` for 2D jets."""
        return self._bilinear(other, lambda a, b: a @ b.T)

    def _unary(self, f0, f1, f2) -> "Jet2":
        value = f0
        du = f1 * self.du
        dv = f1 * self.dv
        if self.duu is None:
            return Jet2(value, du, dv)
        duu = f2 * self.du * self.du + f1 * self.duu
        duv = f2 * self.du * self.dv + f1 * self.duv
        dvv = f2 * self.dv * self.dv + f1 * self.dvv
        return Jet2(value, du, dv, duu, duv, dvv)

    def sqrt(self) -> "Jet2":
        """Square root; defined for strictly positive values only."""
        if np.any(self.value <= 0):
            raise DomainError("jet square root needs positive values")
        s = np.sqrt(self.value)
        return self._unary(s, 0.5 / s, -0.25 / (s * self.value))

    def reciprocal(self) -> "Jet2":
        if np.any(self.value == 0):
            raise DomainError("jet reciprocal of zero")
        r = 1.0 / self.value
        return self._unary(r, -r * r, 2.0 * r * r * r)

    def log(self) -> "Jet2":
        if np.any(self.value <= 0):
            raise DomainError("jet logarithm needs positive values")
        r = 1.0 / self.value
        return self._unary(np.log(self.value), r, -r * r)

    def __repr__(self) -> str:
        return f"Jet2(shape={self.shape}, order={self.order})"


def stack_jets(jets: Sequence[Jet2]) -> Jet2:
    """Stack equally shaped jets along a new leading axis."""
    order = min(j.order for j in jets)
    n = 6 if order == 2 else 3
    parts = [np.stack([j._parts()[i] for j in jets]) for i in range(n)]
    return Jet2(*parts)


def project_out(v: Jet2, basis: Sequence[Jet2]) -> Jet2:
    """Remove the components of ``v`` along orthonormal jets (modified Gram-Schmidt)."""
    w = v
    for f in basis:
        w = w - f * w.dot(f)
    return w


def normalize(w: Jet2) -> Tuple[Jet2, Jet2]:
    """Return ``(w / |w|, |w|)`` as jets."""
    norm = w.dot(w).sqrt()
    return w * norm.reciprocal(), norm


def jet_gram_schmidt(
    vs: Sequence[Jet2], eps_rank: float = DEFAULT_EPS_RANK
) -> Tuple[List[Jet2], List[Jet2]]:
    """Gram-Schmidt in jet arithmetic, also returning the residual norms.

    Args:
        vs: Vector jets, all of the same length
        eps_rank: Relative threshold; a residual below ``eps_rank`` times the
            largest input norm counts as linear dependence

    Returns:
        ``(frames, norms)``: the orthonormal jets and the jets of the
        residual lengths before normalization

    Raises:
        DegeneracyError: Naming the index of the first dependent vector
    """
    if not vs:
        return [], []
    scale = max(float(np.linalg.norm(v.value)) for v in vs)
    frames: List[Jet2] = []
    norms: List[Jet2] = []
    for i, v in enumerate(vs):
        w = project_out(v, frames)
        length = float(np.linalg.norm(w.value))
        if length <= eps_rank * scale:
            raise DegeneracyError(
                f"vector {i} is dependent on the previous ones "
                f"(residual {length:.3e}, threshold {eps_rank * scale:.3e})",
                index=i,
            )
        f, n = normalize(w)
        frames.append(f)
        norms.append(n)
    return frames, norms


def jet_orthonormalize(vs: Sequence[Jet2], eps_rank: float = DEFAULT_EPS_RANK) -> List[Jet2]:
    """Orthonormalize a list of vector jets, preserving the flag they span."""
    frames, _ = jet_gram_schmidt(vs, eps_rank)
    return frames
