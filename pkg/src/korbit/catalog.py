"""Catalog of the sixteen seven-dimensional solvable families.

Every family extends the same five-dimensional nilradical, whose only
nonzero brackets are [e1, e2] = e4 and [e1, e3] = e5, by two commuting
derivations (up to a central correction in one family).  Each entry below
records how the two extra generators act on the nilradical, row j giving
the image of nilradical generator j.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Real

from .liecore import DIM, LieAlgebra7, ParameterError, UnsupportedFamilyError

FAMILIES: tuple[str, ...] = tuple(f"G{k}" for k in range(1, 17))

PARAM_ARITY: dict[str, int] = {
    "G1": 1, "G2": 0, "G3": 0, "G4": 2, "G5": 0, "G6": 1, "G7": 0, "G8": 1,
    "G9": 0, "G10": 1, "G11": 0, "G12": 1, "G13": 1, "G14": 2, "G15": 0, "G16": 1,
}

PARAM_NAMES: dict[str, tuple[str, ...]] = {
    "G1": ("λ",), "G4": ("λ1", "λ2"), "G6": ("λ",), "G8": ("λ",), "G10": ("λ",),
    "G12": ("λ",), "G13": ("λ",), "G14": ("λ1", "λ2"), "G16": ("λ",),
}

def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise UnsupportedFamilyError(f"unknown family {family!r}")


def validate_params(family: str, params: tuple[Real, ...]) -> None:
    """Raise ParameterError naming the violated catalog condition."""
    _check_family(family)
    arity = PARAM_ARITY[family]
    if len(params) != arity:
        raise ParameterError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if family == "G4":
        l1, l2 = params
        if l1 == -1 and l2 == 0:
            raise ParameterError("G4 requires (λ1,λ2) ≠ (−1,0)")
        if l2 == l1 + 1:
            raise ParameterError("G4 requires λ2 ≠ λ1 + 1")
    elif family == "G12":
        if params[0] == -1:
            raise ParameterError("G12 requires λ ∈ R \\ {−1}")
    elif family == "G13":
        if params[0] < 0:
            raise ParameterError("G13 requires λ ≥ 0")
    elif family == "G14":
        l1, l2 = params
        if l1 == -1:
            raise ParameterError("G14 requires λ1 ≠ −1")
        if l2 < 0:
            raise ParameterError("G14 requires λ2 ≥ 0")
    elif family == "G16":
        if params[0] < 0:
            raise ParameterError("G16 requires λ ≥ 0")


def _zeros5() -> list[list[Real]]:
    return [[0] * 5 for _ in range(5)]


def _diag(*vals: Real) -> list[list[Real]]:
    m = _zeros5()
    for i, v in enumerate(vals):
        m[i][i] = v
    return m


def _put(m: list[list[Real]], row: int, col: int, val: Real) -> list[list[Real]]:
    m[row - 1][col - 1] = m[row - 1][col - 1] + val
    return m


def _rotation_block(m: list[list[Real]], row: int, a: Real, b: Real) -> list[list[Real]]:
    """Install the 2x2 block [[a, b], [-b, a]] at rows (row, row + 1)."""
    i = row - 1
    m[i][i] = a
    m[i][i + 1] = b
    m[i + 1][i] = -b
    m[i + 1][i + 1] = a
    return m


def derivation_pair(family: str, params: tuple[Real, ...]):
    """Actions of the two extra generators on the nilradical.

    Returns (a, b, central) where a[j][k] is the e_{k+1} coefficient of
    the first generator acting on e_{j+1}, b is the same for the second
    generator, and ``central`` lists the coordinates of their bracket.
    """
    validate_params(family, params)
    central: list[Real] = [0] * 5
    if family == "G1":
        (lam,) = params
        a = _diag(1, -1, 0, 0, 1)
        b = _diag(0, 0, 1, 0, 1)
        central[3] = lam
    elif family == "G2":
        a = _diag(1, 0, 0, 1, 1)
        b = _diag(0, 0, 1, 0, 1)
    elif family == "G3":
        a = _diag(0, 1, 0, 1, 0)
        b = _diag(0, 0, 1, 0, 1)
    elif family == "G4":
        l1, l2 = params
        a = _diag(1, 0, l1, 1, 1 + l1)
        b = _diag(0, 1, l2, 1, l2)
    elif family == "G5":
        a = _diag(0, 0, 1, 0, 1)
        b = _put(_diag(1, 1, 0, 2, 1), 1, 2, 1)
    elif family == "G6":
        (lam,) = params
        a = _diag(1, 1, lam, 2, 1 + lam)
        b = _put(_diag(0, 0, 1, 0, 1), 1, 2, 1)
    elif family == "G7":
        a = _diag(0, 1, 1, 1, 1)
        b = _put(_diag(1, 1, 0, 2, 1), 2, 5, 1)
    elif family == "G8":
        (lam,) = params
        a = _diag(1, 1 + lam, lam, 2 + lam, 1 + lam)
        b = _put(_diag(0, 1, 1, 1, 1), 2, 5, 1)
    elif family == "G9":
        a = _diag(0, 0, 1, 0, 1)
        b = _put(_diag(0, 1, 0, 1, 0), 3, 5, 1)
    elif family == "G10":
        (lam,) = params
        a = _diag(0, 1, lam, 1, lam)
        b = _put(_diag(0, 0, 1, 0, 1), 3, 5, 1)
    elif family == "G11":
        a = _diag(0, 1, 1, 1, 1)
        b = _put(_put(_diag(1, 0, 0, 1, 1), 2, 3, 1), 4, 5, 1)
    elif family == "G12":
        (lam,) = params
        a = _diag(1, lam, lam, 1 + lam, 1 + lam)
        b = _put(_put(_diag(0, 1, 1, 1, 1), 2, 3, 1), 4, 5, 1)
    elif family == "G13":
        (lam,) = params
        a = _diag(0, 1, 1, 1, 1)
        b = _rotation_block(_rotation_block(_diag(lam, 0, 0, 0, 0), 2, 0, 1), 4, lam, 1)
    elif family == "G14":
        l1, l2 = params
        a = _diag(1, l1, l1, 1 + l1, 1 + l1)
        b = _rotation_block(_rotation_block(_zeros5(), 2, l2, 1), 4, l2, 1)
    elif family == "G15":
        a = _rotation_block(_rotation_block(_zeros5(), 2, 0, 1), 4, 0, 1)
        b = _put(_put(_diag(0, 1, 1, 1, 1), 2, 5, 1), 3, 4, -1)
    else:  # G16
        (lam,) = params
        a = _put(_rotation_block(_rotation_block(_zeros5(), 2, 0, 1), 4, 0, 1), 2, 5, 1)
        b = _put(_put(_diag(0, 1, 1, 1, 1), 2, 5, lam), 3, 4, -lam)
    return a, b, central


def build(family: str, params: tuple[Real, ...] = ()) -> LieAlgebra7:
    """Assemble the Lie algebra of a catalog family.

    Pass fractions as parameters to keep the structure constants exact;
    floats are carried through unchanged.
    """
    params = tuple(params)
    a, b, central = derivation_pair(family, params)
    brackets: dict[tuple[int, int], dict[int, Real]] = {
        (0, 1): {3: 1},
        (0, 2): {4: 1},
    }
    for row in range(5):
        img_a = {k: a[row][k] for k in range(5) if a[row][k] != 0}
        img_b = {k: b[row][k] for k in range(5) if b[row][k] != 0}
        if img_a:
            brackets[(row, 5)] = {k: -v for k, v in img_a.items()}
        if img_b:
            brackets[(row, 6)] = {k: -v for k, v in img_b.items()}
    img_c = {k: central[k] for k in range(5) if central[k] != 0}
    if img_c:
        brackets[(5, 6)] = img_c
    return LieAlgebra7(family=family, params=params, brackets=brackets)


_HALF = Fraction(1, 2)
_SCALE = (Fraction(0), _HALF, Fraction(1), Fraction(2))


def default_parameter_grid(family: str) -> tuple[tuple[Fraction, ...], ...]:
    """Exact parameter tuples used by the verification campaigns.

    The two-parameter grids exclude catalog violations, and the first
    family with a rank-degenerate parameter diagonal excludes it as well.
    """
    _check_family(family)
    if family == "G1":
        return ((Fraction(0),), (Fraction(1),))
    if family == "G4":
        return tuple(
            (l1, l2)
            for l1 in _SCALE
            for l2 in _SCALE
            if l2 != l1 + 1 and l1 != l2
        )
    if family in ("G6", "G8", "G10", "G12", "G13", "G16"):
        return tuple((s,) for s in _SCALE)
    if family == "G14":
        return tuple((l1, l2) for l1 in _SCALE for l2 in _SCALE)
    return ((),)


def grid_algebras(family: str) -> tuple[LieAlgebra7, ...]:
    """Algebras for every default parameter choice of a family."""
    return tuple(build(family, p) for p in default_parameter_grid(family))
