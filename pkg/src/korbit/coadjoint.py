"""Coadjoint action, orbit dimensions, and rank-six predicates.

The simply connected group acts on functionals through transposed matrix
exponentials of adjoint representatives.  Orbit dimension is the numeric
rank of the pairing form, and twelve families carry a closed-form predicate
for where that rank reaches six.
"""
from __future__ import annotations

import enum

import numpy as np

from . import rng, topology
from .liecore import DomainError, LieAlgebra7, UnsupportedFamilyError, exp_matrix, numeric_rank

#: Families with a cataloged closed-form rank-six predicate.
RANK_CONDITION_FAMILIES: frozenset[str] = frozenset(
    {"G1", "G4", "G5", "G6", "G7", "G8", "G11", "G12", "G13", "G14", "G15", "G16"}
)


def kirillov_form(algebra: LieAlgebra7, f: np.ndarray) -> np.ndarray:
    """Pairing matrix of the functional f, batched over leading axes."""
    return algebra.kirillov(f)


def orbit_dimension(algebra: LieAlgebra7, f: np.ndarray, tol: float = 1e-9) -> np.ndarray | int:
    """Dimension of the coadjoint orbit through f (rank of the pairing)."""
    return numeric_rank(algebra.kirillov(f), tol)


def action_matrix(algebra: LieAlgebra7, u: np.ndarray) -> np.ndarray:
    """Matrix sending a functional to its image under the element exp(u)."""
    return np.swapaxes(exp_matrix(algebra.ad(u)), -1, -2)


def coadjoint_act(algebra: LieAlgebra7, u: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Image of the functional f under the group element exp(u).

    Broadcasts over leading axes of ``u`` and ``f``.
    """
    f = np.asarray(f, dtype=float)
    return np.einsum("...ij,...i->...j", exp_matrix(algebra.ad(u)), f)


def jacobian_check(algebra: LieAlgebra7, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Determinant of the action matrix alongside exp of the adjoint trace.

    The two agree identically; returning both lets callers measure the
    numerical gap.
    """
    ad = algebra.ad(u)
    det = np.linalg.det(exp_matrix(ad))
    exp_trace = np.exp(np.trace(ad, axis1=-2, axis2=-1))
    return det, exp_trace


def rank_condition(family: str, f: np.ndarray) -> np.ndarray | bool:
    """Closed-form predicate for a six-dimensional orbit through f.

    Comparisons are exact float tests, so points must sit either safely off
    the decision boundary or exactly on the intended zero locus.  Raises
    UnsupportedFamilyError for the four families without a cataloged form.
    """
    f = np.asarray(f, dtype=float)
    a2, a3, a4, a5 = f[..., 1], f[..., 2], f[..., 3], f[..., 4]
    if family == "G1":
        out = (a5 != 0) & (np.hypot(a2, a4) != 0)
    elif family in ("G4", "G5", "G6"):
        out = np.where(a4 == 0, a2 * a5 != 0, np.hypot(a3, a5) != 0)
    elif family in ("G7", "G8", "G11", "G12"):
        out = (a5 != 0) | (a3 * a4 != 0)
    elif family in ("G13", "G14", "G15", "G16"):
        out = np.hypot(a4, a5) != 0
    else:
        topology.manifold_of(family)
        raise UnsupportedFamilyError(f"no cataloged rank condition for {family}")
    if np.ndim(out) == 0:
        return bool(out)
    return out


def condition_margin(family: str, f: np.ndarray) -> np.ndarray:
    """How robustly the rank predicate is decided at f.

    Small values flag proximity to a rank boundary (or, for the first
    family, to the locus where the cataloged form and the true rank
    disagree); infinity marks points whose deciding products vanish exactly,
    where the verdict is structural rather than marginal.
    """
    f = np.asarray(f, dtype=float)
    a2, a3, a4, a5 = f[..., 1], f[..., 2], f[..., 3], f[..., 4]
    if family == "G1":
        return np.where(
            a5 == 0, np.inf, np.minimum(np.abs(a5), np.abs(a3 * a4 - a2 * a5))
        )
    if family in ("G4", "G5", "G6"):
        axial = np.where(a2 * a5 == 0, np.inf, np.abs(a2 * a5))
        rot = np.hypot(a3, a5)
        off = np.minimum(np.abs(a4), np.where(rot == 0, np.inf, rot))
        return np.where(a4 == 0, axial, off)
    if family in ("G7", "G8", "G11", "G12"):
        strength = np.maximum(np.abs(a5), np.abs(a3 * a4))
        return np.where(strength == 0, np.inf, strength)
    if family in ("G13", "G14", "G15", "G16"):
        norm = np.hypot(a4, a5)
        return np.where(norm == 0, np.inf, norm)
    topology.manifold_of(family)
    raise UnsupportedFamilyError(f"no cataloged rank condition for {family}")


class OrbitType(enum.Enum):
    """Coarse classification of a coadjoint orbit by dimension and locus."""

    GENERIC = "Generic"
    MAXIMAL_NONGENERIC = "Type1MaxNonGeneric"
    LOWER_DIMENSIONAL = "LowerDimensional"


def orbit_type(algebra: LieAlgebra7, f: np.ndarray, tol: float = 1e-9) -> OrbitType:
    """Classify the orbit through a single functional f.

    Six-dimensional orbits through the foliated manifold are generic;
    six-dimensional orbits outside it are maximal without being generic;
    everything else is lower dimensional.
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 1:
        raise ValueError("orbit_type classifies one functional at a time")
    if orbit_dimension(algebra, f, tol) < 6:
        return OrbitType.LOWER_DIMENSIONAL
    if topology.contains(topology.manifold_of(algebra.family), f):
        return OrbitType.GENERIC
    return OrbitType.MAXIMAL_NONGENERIC


def sample_orbit(
    algebra: LieAlgebra7,
    f: np.ndarray,
    n: int,
    seed: int,
    radius: float = rng.COORDINATE_RADIUS,
) -> np.ndarray:
    """Draw n points of the orbit through f from exponentials of uniform
    algebra elements with coordinates in [-radius, radius].

    Raises DomainError naming the offending element if the action
    overflows, which large parameters can provoke.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (7,):
        raise ValueError("sample_orbit expects a single functional")
    gen = rng.generator(seed, "orbit", algebra.family, *algebra.params)
    u = gen.uniform(-radius, radius, size=(n, 7))
    with np.errstate(over="ignore", invalid="ignore"):
        points = np.einsum("...ij,...i->...j", _safe_exp(algebra, u), f)
    bad = ~np.all(np.isfinite(points), axis=-1)
    if np.any(bad):
        culprit = u[np.argmax(bad)]
        raise DomainError(f"orbit point overflowed for algebra element {culprit.tolist()}")
    return points


def _safe_exp(algebra: LieAlgebra7, u: np.ndarray) -> np.ndarray:
    """exp of adjoint representatives that reports overflow via the caller."""
    try:
        return exp_matrix(algebra.ad(u))
    except DomainError:
        mats = algebra.ad(u)
        out = np.empty_like(mats)
        for idx in np.ndindex(mats.shape[:-2]):
            try:
                out[idx] = exp_matrix(mats[idx])
            except DomainError:
                raise DomainError(
                    f"orbit point overflowed for algebra element {u[idx].tolist()}"
                ) from None
        return out
