"""Foliated manifolds, leaf-preserving maps, and topological classification.

The six-dimensional orbit foliations of the catalog families live on one of
three open subsets of orbit space, cut out by the fourth and fifth
coordinates.  This module houses the membership predicates and sign
components of those subsets, the eleven closed-form coordinate maps that
carry one family's leaves onto another's, the representative fibration of
each topological type, and the operator-algebra descriptor strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from numbers import Real

import numpy as np

from . import catalog
from .liecore import DomainError, UnsupportedFamilyError


class Manifold(Enum):
    """Open dense subsets of orbit space carrying the foliations."""

    V1 = "V1"  # fourth and fifth coordinates both nonzero
    V2 = "V2"  # fifth coordinate nonzero
    V3 = "V3"  # fourth and fifth coordinates not both zero


class FoliationType(Enum):
    """Topological equivalence classes of the sixteen foliations."""

    F1 = "F1"
    F2 = "F2"
    F3 = "F3"


COMPONENT_LABELS: dict[Manifold, tuple[str, ...]] = {
    Manifold.V1: ("++", "-+", "--", "+-"),
    Manifold.V2: ("+", "-"),
    Manifold.V3: ("single",),
}

CSTAR_DESCRIPTORS: dict[FoliationType, str] = {
    FoliationType.F1: "(C0(R)^⊕4) ⊗ K",
    FoliationType.F2: "(C0(R)^⊕2) ⊗ K",
    FoliationType.F3: "C0(R) ⊗ K",
}

MANIFOLD_OF_TYPE: dict[FoliationType, Manifold] = {
    FoliationType.F1: Manifold.V1,
    FoliationType.F2: Manifold.V2,
    FoliationType.F3: Manifold.V3,
}


def manifold_of(family: str) -> Manifold:
    """Foliated manifold carrying the family's generic orbits."""
    if family not in catalog.FAMILIES:
        raise UnsupportedFamilyError(f"unknown family {family!r}")
    if family == "G12":
        return Manifold.V2
    if family in ("G13", "G14", "G15", "G16"):
        return Manifold.V3
    return Manifold.V1


def classify(family: str) -> FoliationType:
    """Topological type of the family's orbit foliation."""
    return FoliationType[manifold_of(family).value.replace("V", "F")]


def cstar_descriptor(t: FoliationType) -> str:
    """Isomorphism-class label of the foliation's operator algebra."""
    return CSTAR_DESCRIPTORS[t]


def contains(manifold: Manifold, v: np.ndarray) -> np.ndarray | bool:
    """Membership of points (batched over leading axes) in the manifold."""
    v = np.asarray(v, dtype=float)
    x4, x5 = v[..., 3], v[..., 4]
    if manifold is Manifold.V1:
        ok = (x4 != 0) & (x5 != 0)
    elif manifold is Manifold.V2:
        ok = x5 != 0
    else:
        ok = (x4 != 0) | (x5 != 0)
    if np.ndim(ok) == 0:
        return bool(ok)
    return ok


def boundary_margin(manifold: Manifold, v: np.ndarray) -> np.ndarray:
    """Distance of the deciding coordinates from the manifold's boundary.

    Sampling campaigns keep points whose margin clears a threshold so that
    strict sign predicates stay numerically unambiguous.
    """
    v = np.asarray(v, dtype=float)
    x4, x5 = v[..., 3], v[..., 4]
    if manifold is Manifold.V1:
        return np.minimum(np.abs(x4), np.abs(x5))
    if manifold is Manifold.V2:
        return np.abs(x5)
    return np.hypot(x4, x5)


def component_of(manifold: Manifold, v: np.ndarray) -> str:
    """Connected-component label of a single point of the manifold."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError("component_of labels one point at a time")
    if not contains(manifold, v):
        raise DomainError(f"point lies outside {manifold.value}")
    x4, x5 = float(v[3]), float(v[4])
    if manifold is Manifold.V1:
        return ("+" if x4 > 0 else "-") + ("+" if x5 > 0 else "-")
    if manifold is Manifold.V2:
        return "+" if x5 > 0 else "-"
    return "single"


def ratio_angle(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """arctan(num/den) extended by its one-sided limit at den = 0."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    safe = np.where(den != 0, den, 1.0)
    return np.where(den != 0, np.arctan(num / safe), np.sign(num) * (np.pi / 2))


def fibration_value(t: FoliationType, v: np.ndarray) -> np.ndarray:
    """Representative fibration of the type, evaluated pointwise.

    Each map is a surjective submersion of the type's manifold whose fibers
    are connected unions of leaves over each component.
    """
    v = np.asarray(v, dtype=float)
    inside = contains(MANIFOLD_OF_TYPE[t], v)
    if not np.all(inside):
        raise DomainError(f"point lies outside {MANIFOLD_OF_TYPE[t].value}")
    x2, x3, x4, x5 = v[..., 1], v[..., 2], v[..., 3], v[..., 4]
    if t is FoliationType.F1:
        return x2 - x3 * x4 / x5
    if t is FoliationType.F2:
        return (x2 - x3 * x4 / x5) * np.exp(-x4 / x5)
    return (x2 * x5 - x3 * x4) / (x4 * x4 + x5 * x5)


def fibration_gradient(t: FoliationType, v: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the representative fibration."""
    v = np.asarray(v, dtype=float)
    grads = []
    for i in range(7):
        offset = np.zeros(7)
        offset[i] = step
        grads.append(
            (fibration_value(t, v + offset) - fibration_value(t, v - offset)) / (2 * step)
        )
    return np.stack(grads, axis=-1)


# Leaf-preserving maps.  Every map fixes all coordinates except the second
# and third (and the fourth, for h1), so inverses are closed forms.

LEAF_MAP_NAMES: tuple[str, ...] = tuple(f"h{k}" for k in range(1, 12))

_LEAF_MAP_TABLE: dict[str, tuple[str, str, Manifold, int]] = {
    "h1": ("G2", "G1", Manifold.V1, 0),
    "h2": ("G2", "G4", Manifold.V1, 2),
    "h3": ("G2", "G7", Manifold.V1, 0),
    "h4": ("G2", "G8", Manifold.V1, 1),
    "h5": ("G2", "G11", Manifold.V1, 0),
    "h6": ("G3", "G5", Manifold.V1, 0),
    "h7": ("G12", "G12", Manifold.V2, 1),
    "h8": ("G13", "G13", Manifold.V3, 1),
    "h9": ("G13", "G14", Manifold.V3, 2),
    "h10": ("G13", "G15", Manifold.V3, 0),
    "h11": ("G13", "G16", Manifold.V3, 1),
}


def _with_columns(v: np.ndarray, **cols: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=float, copy=True)
    for name, value in cols.items():
        out[..., int(name[1:])] = value
    return out


def _safe_log_abs(x: np.ndarray) -> np.ndarray:
    return np.log(np.abs(np.where(x != 0, x, 1.0)))


def _v3_branches(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Masks for the two degenerate branches (x4 = 0 and x5 = 0)."""
    x4, x5 = v[..., 3], v[..., 4]
    return (x4 == 0) & (x5 != 0), (x4 != 0) & (x5 == 0)


def _scale_factor(name: str, params: tuple[Real, ...], v: np.ndarray) -> np.ndarray:
    """Multiplier applied to the second and third coordinates, where the
    map acts by a common factor."""
    x4, x5 = v[..., 3], v[..., 4]
    if name == "h2":
        l1, l2 = (float(p) for p in params)
        denom = l2 - l1 - 1.0
        return np.abs(x5) ** (1.0 / denom) / np.abs(x4) ** ((1.0 + l1) / denom)
    if name == "h5":
        return x5 * np.exp(-x4 / x5)
    if name == "h6":
        return 1.0 / np.sqrt(np.abs(x4))
    if name == "h7":
        (lam,) = (float(p) for p in params)
        ratio = lam / (1.0 + lam)
        return np.abs(x5) ** ratio * np.exp(-ratio * x4 / x5)
    if name == "h8":
        (lam,) = (float(p) for p in params)
        main = (x4 != 0) & (x5 != 0)
        angle = np.arctan(np.where(main, x4, 0.0) / np.where(main, x5, 1.0))
        return np.where(main, np.exp(-lam * angle), 1.0)
    if name == "h9":
        l1, l2 = (float(p) for p in params)
        dd = x4 * x4 + x5 * x5
        angle = ratio_angle(x4, x5)
        return dd ** (-0.5 / (1.0 + l1)) * np.exp(l2 * angle / (1.0 + l1))
    raise ValueError(f"{name} is not a scaling map")


def _offsets(name: str, params: tuple[Real, ...], v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Additive offsets to the second and third coordinates, where the map
    acts by translation."""
    x4, x5 = v[..., 3], v[..., 4]
    log4, log5 = _safe_log_abs(x4), _safe_log_abs(x5)
    safe4 = np.where(x4 != 0, x4, 1.0)
    safe5 = np.where(x5 != 0, x5, 1.0)
    if name == "h3":
        return log4, x5 * log5 / safe4
    if name == "h4":
        (lam,) = (float(p) for p in params)
        return -(1.0 + lam) * log4, -(2.0 + lam) * x5 * log5 / safe4
    zero4, zero5 = _v3_branches(v)
    main = ~zero4 & ~zero5
    dd = x4 * x4 + x5 * x5
    dlogd = dd * np.log(np.where(dd > 0, dd, 1.0))
    if name == "h10":
        off2 = np.where(main, dlogd / (2.0 * safe5), np.where(zero4, x5 * log5, 0.0))
        off3 = np.where(zero5, -x4 * log4, 0.0)
        return off2, off3
    if name == "h11":
        (lam,) = (float(p) for p in params)
        angle = ratio_angle(x5, x4)
        off2 = np.where(
            main,
            x4 / 2.0 + angle / 2.0 + lam * dlogd / (2.0 * safe4),
            np.where(zero4, lam * x5 * log5, 0.0),
        )
        off3 = np.where(zero5, -lam * x4 * log4, 0.0)
        return off2, off3
    raise ValueError(f"{name} is not a translation map")


@dataclass(frozen=True)
class LeafMap:
    """One of the eleven closed-form leaf-preserving coordinate maps.

    For h7 and h8 the source is the parameter-zero member of the target's
    own family; h6 carries the same source foliation onto two families at
    once and is recorded against the first of them.
    """

    name: str
    source: str
    target: str
    manifold: Manifold
    params: tuple[Real, ...]

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if not np.all(contains(self.manifold, v)):
            raise DomainError(f"{self.name} needs points of {self.manifold.value}")
        return v

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Forward map, batched over leading axes."""
        v = self._check(v)
        if self.name == "h1":
            return _with_columns(v, c3=v[..., 1] - v[..., 2] * v[..., 3] / v[..., 4])
        if self.name in ("h2", "h5", "h6", "h7", "h8", "h9"):
            m = _scale_factor(self.name, self.params, v)
            return _with_columns(v, c1=v[..., 1] * m, c2=v[..., 2] * m)
        if self.name in ("h3", "h4"):
            off2, off3 = _offsets(self.name, self.params, v)
            return _with_columns(
                v,
                c1=(v[..., 1] + off2) * v[..., 4],
                c2=(v[..., 2] + off3) * v[..., 4],
            )
        off2, off3 = _offsets(self.name, self.params, v)
        return _with_columns(v, c1=v[..., 1] + off2, c2=v[..., 2] + off3)

    def invert(self, v: np.ndarray) -> np.ndarray:
        """Closed-form inverse, batched over leading axes."""
        v = np.asarray(v, dtype=float)
        if self.name == "h1":
            if np.any(v[..., 2] == 0) or np.any(v[..., 4] == 0):
                raise DomainError("h1 inverse needs nonzero third and fifth coordinates")
            return _with_columns(v, c3=(v[..., 1] - v[..., 3]) * v[..., 4] / v[..., 2])
        v = self._check(v)
        if self.name in ("h2", "h5", "h6", "h7", "h8", "h9"):
            m = _scale_factor(self.name, self.params, v)
            return _with_columns(v, c1=v[..., 1] / m, c2=v[..., 2] / m)
        if self.name in ("h3", "h4"):
            off2, off3 = _offsets(self.name, self.params, v)
            return _with_columns(
                v,
                c1=v[..., 1] / v[..., 4] - off2,
                c2=v[..., 2] / v[..., 4] - off3,
            )
        off2, off3 = _offsets(self.name, self.params, v)
        return _with_columns(v, c1=v[..., 1] - off2, c2=v[..., 2] - off3)


def leaf_map(name: str, params: tuple[Real, ...] = ()) -> LeafMap:
    """Construct a leaf map, validating parameters against the target.

    Maps whose formulas carry no parameter take an empty tuple even when
    the target family itself is parameterized.
    """
    if name not in _LEAF_MAP_TABLE:
        raise ValueError(f"unknown leaf map {name!r}")
    source, target, manifold, arity = _LEAF_MAP_TABLE[name]
    params = tuple(params)
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    if arity:
        catalog.validate_params(target, params)
    return LeafMap(name=name, source=source, target=target, manifold=manifold, params=params)
