"""Rigid alignment of point clouds in R^N.

Used by the equivariance check of holomorphic curves: two clouds that should
be congruent are aligned by the optimal rotation and translation, and the
remaining root-mean-square distance measures how far they are from
congruent.

The rotation comes from the SVD of the cross-covariance of the centered
clouds, with the determinant of the last singular direction flipped when
needed so the result is a proper rotation.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.spatial.distance import pdist

from isoruled.errors import AlignmentError, ShapeError

logger = logging.getLogger(__name__)

MIN_POINTS = 12
MIN_RANK = 3
ORTHOGONALITY_TOL = 1e-10
RANK_EPS = 1e-9


@dataclass(frozen=True)
class RigidMotion:
    """``x -> rotation @ x + translation``."""

    rotation: np.ndarray
    translation: np.ndarray

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points) @ self.rotation.T + self.translation


def _check_cloud(points: np.ndarray, name: str) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise ShapeError(f"{name} must be a (K, N) array, got shape {P.shape}")
    if P.shape[0] < MIN_POINTS:
        raise AlignmentError(f"{name} has {P.shape[0]} points; at least {MIN_POINTS} are needed")
    centered = P - P.mean(axis=0)
    sv = linalg.svdvals(centered)
    rank = int(np.sum(sv > RANK_EPS * max(sv[0], 1e-300)))
    if rank < MIN_RANK:
        raise AlignmentError(
            f"{name} spans only {rank} dimension(s); at least {MIN_RANK} are needed"
        )
    return P


def rigid_align(source: np.ndarray, target: np.ndarray) -> RigidMotion:
    """Rigid motion that best maps ``source`` onto ``target`` in the least-squares sense.

    Args:
        source: Points as rows, shape (K, N)
        target: Corresponding points, same shape

    Raises:
        ShapeError: If the clouds do not have the same shape
        AlignmentError: If a cloud has fewer than 12 points or centered rank below 3
    """
    A = _check_cloud(source, "source")
    B = _check_cloud(target, "target")
    if A.shape != B.shape:
        raise ShapeError(f"cloud shapes differ: {A.shape} vs {B.shape}")

    ca = A.mean(axis=0)
    cb = B.mean(axis=0)
    H = (A - ca).T @ (B - cb)
    U, _, Vt = linalg.svd(H)
    V = Vt.T
    d = np.sign(linalg.det(V @ U.T))
    D = np.eye(A.shape[1])
    D[-1, -1] = d if d != 0 else 1.0
    R = V @ D @ U.T

    defect = float(np.max(np.abs(R @ R.T - np.eye(R.shape[0]))))
    if defect > ORTHOGONALITY_TOL:
        raise AlignmentError(f"recovered rotation is not orthogonal (defect {defect:.3e})")
    return RigidMotion(rotation=R, translation=cb - R @ ca)


def cloud_diameter(points: np.ndarray) -> float:
    """Largest pairwise distance in the cloud."""
    return float(np.max(pdist(np.asarray(points, dtype=float))))


def alignment_residual(source: np.ndarray, target: np.ndarray) -> float:
    """RMS distance after rigid alignment of ``source`` onto ``target``, over the target diameter."""
    motion = rigid_align(source, target)
    moved = motion.apply(source)
    rms = float(np.sqrt(np.mean(np.sum((moved - np.asarray(target)) ** 2, axis=1))))
    diameter = cloud_diameter(target)
    logger.debug(f"Aligned {len(moved)} points: rms={rms:.3e}, diameter={diameter:.3e}")
    return rms / diameter
