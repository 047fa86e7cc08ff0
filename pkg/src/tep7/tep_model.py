"""Tarry-Escott instances and parametric families of degree 7.

An ideal solution of degree 7 is a pair of 8-element integer multisets with
equal power sums for r = 1..7.  Symmetric solutions take the second half of
each side to be the negation of the first, which kills every odd r and
leaves the half system r = 2, 4, 6 on four numbers per side.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from . import fixtures
from .poly import Poly, ZERO, const, content_primitive, evaluate, gcd, power, univariate_coeffs

FULL_DEGREES = frozenset(range(1, 8))
HALF_DEGREES = frozenset({2, 4, 6})


class TepError(ValueError):
    pass


class AllZero(TepError):
    pass


class DegenerateInstance(TepError):
    pass


class FamilyFormatError(TepError):
    pass


@dataclass(frozen=True)
class TepInstance:
    xs: Tuple[int, ...]
    ys: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(int(v) for v in self.xs))
        object.__setattr__(self, "ys", tuple(int(v) for v in self.ys))
        if len(self.xs) != 8 or len(self.ys) != 8:
            raise TepError("a degree-7 instance has exactly 8 numbers per side")

    def to_json(self) -> dict:
        return {"x": list(self.xs), "y": list(self.ys)}


@dataclass(frozen=True)
class HalfInstance:
    xs: Tuple[int, ...]
    ys: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(int(v) for v in self.xs))
        object.__setattr__(self, "ys", tuple(int(v) for v in self.ys))
        if len(self.xs) != 4 or len(self.ys) != 4:
            raise TepError("a half instance has exactly 4 numbers per side")


@dataclass(frozen=True)
class SolutionFamily:
    xs: Tuple[Poly, ...]
    ys: Tuple[Poly, ...]
    label: str = ""
    degrees_claimed: FrozenSet[int] = FULL_DEGREES

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "ys", tuple(self.ys))
        if len(self.xs) != 8 or len(self.ys) != 8:
            raise TepError("a family has exactly 8 entries per side")
        bad = {v for p in self.xs + self.ys for v in p.gens} - {"t"}
        if bad:
            raise TepError(f"family entries must be polynomials in t only, found {sorted(bad)}")

    @property
    def degree(self) -> int:
        return max(p.total_degree() for p in self.xs + self.ys)

    def half(self) -> "HalfFamily":
        return HalfFamily(self.xs[:4], self.ys[:4], self.label)

    def is_symmetric(self) -> bool:
        return all(self.xs[i + 4] == -self.xs[i] and self.ys[i + 4] == -self.ys[i] for i in range(4))


@dataclass(frozen=True)
class HalfFamily:
    xs: Tuple[Poly, ...]
    ys: Tuple[Poly, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "ys", tuple(self.ys))
        if len(self.xs) != 4 or len(self.ys) != 4:
            raise TepError("a half family has exactly 4 entries per side")

    @property
    def degree(self) -> int:
        return max(p.total_degree() for p in self.xs + self.ys)


Instance = Union[TepInstance, HalfInstance]
Family = Union[SolutionFamily, HalfFamily]


def power_sum(obj: Instance, r: int, side: str = "x") -> int:
    if r < 1:
        raise ValueError("r must be positive")
    values = obj.xs if side == "x" else obj.ys
    return sum(v**r for v in values)


def check_multigrade(obj: Instance, degrees: Iterable[int]) -> bool:
    return all(power_sum(obj, r, "x") == power_sum(obj, r, "y") for r in degrees)


def extend_symmetric(h):
    """Append the negated entries to each side."""
    if isinstance(h, HalfInstance):
        return TepInstance(h.xs + tuple(-v for v in h.xs), h.ys + tuple(-v for v in h.ys))
    if isinstance(h, HalfFamily):
        return SolutionFamily(
            h.xs + tuple(-p for p in h.xs), h.ys + tuple(-p for p in h.ys), label=h.label
        )
    raise TypeError(f"cannot extend {type(h).__name__}")


def canonicalize(instance: Instance) -> Instance:
    """Remove the common factor, sort both sides descending and put the
    lexicographically larger side first."""
    values = instance.xs + instance.ys
    g = 0
    for v in values:
        g = math.gcd(g, v)
    if g == 0:
        raise AllZero("all entries are zero")
    xs = tuple(sorted((v // g for v in instance.xs), reverse=True))
    ys = tuple(sorted((v // g for v in instance.ys), reverse=True))
    if ys > xs:
        xs, ys = ys, xs
    return type(instance)(xs, ys)


def is_trivial(instance: Instance) -> bool:
    return Counter(instance.xs) == Counter(instance.ys)


def is_trivial_family(family: Family) -> bool:
    """Equal multisets of entries on both sides (after symmetric extension)."""
    if isinstance(family, HalfFamily):
        family = extend_symmetric(family)
    return Counter(family.xs) == Counter(family.ys)


@dataclass
class FamilyReport:
    label: str
    residuals: Dict[int, Poly]
    trivial: bool

    @property
    def zero(self) -> Dict[int, bool]:
        return {r: not p.terms for r, p in self.residuals.items()}

    @property
    def passed(self) -> bool:
        return all(self.zero.values())

    @property
    def first_failure(self) -> Optional[int]:
        for r in sorted(self.residuals):
            if self.residuals[r].terms:
                return r
        return None

    @property
    def first_residual(self) -> Optional[Poly]:
        r = self.first_failure
        return None if r is None else self.residuals[r]

    def to_json(self) -> dict:
        r = self.first_failure
        return {
            "label": self.label,
            "degrees": {str(k): v for k, v in sorted(self.zero.items())},
            "passed": self.passed,
            "trivial": self.trivial,
            "first_failure": r,
            "residual": None if r is None else str(self.residuals[r]),
        }


def residual(family: Family, r: int) -> Poly:
    """The polynomial ``sum x_i(t)**r - sum y_i(t)**r``."""
    total = ZERO
    for p in family.xs:
        total = total + power(p, r)
    for p in family.ys:
        total = total - power(p, r)
    return total


def verify_family(family: Family, degrees: Iterable[int] = FULL_DEGREES) -> FamilyReport:
    return FamilyReport(
        label=family.label,
        residuals={r: residual(family, r) for r in sorted(set(degrees))},
        trivial=is_trivial_family(family),
    )


def _homogeneous_value(p: Poly, num: int, den: int, d: int) -> int:
    coeffs = univariate_coeffs(p, "t")
    return sum(
        c.constant_value() * num**k * den ** (d - k) for k, c in enumerate(coeffs) if c.terms
    )


def instantiate(family: Family, t0: Union[int, Fraction]) -> Instance:
    """Canonical integer instance of ``family`` at ``t = t0``.

    A rational ``t0 = p/q`` is handled by homogenizing: every entry is scaled
    by ``q**d`` with ``d`` the family degree, which keeps the arithmetic
    integral and does not change the solution up to scaling.
    """
    t0 = Fraction(t0)
    d = max(0, family.degree)
    num, den = t0.numerator, t0.denominator
    xs = [_homogeneous_value(p, num, den, d) for p in family.xs]
    ys = [_homogeneous_value(p, num, den, d) for p in family.ys]
    cls = TepInstance if isinstance(family, SolutionFamily) else HalfInstance
    try:
        return canonicalize(cls(xs, ys))
    except AllZero:
        raise DegenerateInstance(f"every entry vanishes at t = {t0}") from None


# -- builtin families -----------------------------------------------------------


def builtin_half(k: int) -> HalfFamily:
    if not 1 <= k <= len(fixtures.HALF_FAMILIES):
        raise KeyError(f"no builtin family {k}")
    xs, ys = fixtures.HALF_FAMILIES[k - 1]
    return HalfFamily(xs, ys, label=f"builtin:{k}")


def builtin_family(k: int) -> SolutionFamily:
    return extend_symmetric(builtin_half(k))


def builtin_families() -> List[SolutionFamily]:
    return [builtin_family(k) for k in range(1, len(fixtures.HALF_FAMILIES) + 1)]


# -- JSON -------------------------------------------------------------------------


def _coeff_list(p: Poly, width: int) -> List[str]:
    coeffs = univariate_coeffs(p, "t") if p.terms else [ZERO]
    values = [str(c.constant_value()) for c in coeffs]
    return values + ["0"] * (width - len(values))


def family_to_json(family: Family) -> dict:
    if isinstance(family, HalfFamily):
        family = extend_symmetric(family)
    width = max(family.degree, 0) + 1
    return {
        "label": family.label,
        "x": [_coeff_list(p, width) for p in family.xs],
        "y": [_coeff_list(p, width) for p in family.ys],
    }


def _poly_from_coeffs(coeffs: Sequence) -> Poly:
    t = Poly.from_dict({(("t", 1),): 1})
    out = ZERO
    for c in reversed(coeffs):
        out = out * t + const(int(c))
    return out


def family_from_json(data: dict) -> SolutionFamily:
    """Inverse of :func:`family_to_json`; four entries per side are read as
    the first half of a symmetric family."""
    try:
        xs = tuple(_poly_from_coeffs(c) for c in data["x"])
        ys = tuple(_poly_from_coeffs(c) for c in data["y"])
        label = str(data.get("label", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise FamilyFormatError(f"malformed family JSON: {exc}") from None
    if len(xs) == 4 and len(ys) == 4:
        return extend_symmetric(HalfFamily(xs, ys, label))
    if len(xs) == 8 and len(ys) == 8:
        return SolutionFamily(xs, ys, label)
    raise FamilyFormatError("expected 4 or 8 entries per side")


def load_family(path) -> SolutionFamily:
    with open(path) as fh:
        return family_from_json(json.load(fh))


def normalize_family(family: SolutionFamily) -> SolutionFamily:
    """Divide out the polynomial gcd and integer content of all 16 entries."""
    entries = [p for p in family.xs + family.ys if p.terms]
    if not entries:
        return family
    g = ZERO
    for p in entries:
        g = gcd(g, p)
    c = 0
    for p in entries:
        c = math.gcd(c, content_primitive(p // g)[0])
    div = g * c
    return SolutionFamily(
        tuple(p // div for p in family.xs),
        tuple(p // div for p in family.ys),
        family.label,
        family.degrees_claimed,
    )


def scan_line(t: int, instance: TepInstance) -> str:
    return json.dumps({"t": t, "x": list(instance.xs), "y": list(instance.ys)})
