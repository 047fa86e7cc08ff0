"""Quartic ideal solutions of degree 7 by two rounds of discriminant vanishing.

Outline of the construction implemented here:

1. Start from the base solution of the r = 1, 2, 4 half system, which is
   linear homogeneous in (m, n).  Its r = 6 residual factors; the only
   nontrivial factor is ``Q m^2 - P n^2``.  Writing ``m = n y / Q`` turns
   that into ``y^2 = phi = Q P``, a sextic form in (a1, a2, a3).
2. Put ``a2 = f a1 + g a3``.  ``phi`` becomes a binary sextic in (a1, a3)
   whose a1-discriminant is a polynomial in (f, g) with ten linear factors.
   Killing one of them forces a squared factor.
3. The remaining quartic cofactor has a discriminant in the surviving
   parameter; each rational root forces a second squared factor and leaves
   a binary quadratic, i.e. a conic ``y^2 = q(a1, a3)``.
4. A rational point on the conic gives a polynomial parametrization; pushing
   it back through the base solution with ``m = y``, ``n = Q`` and removing
   common factors yields a family of quartic polynomials in t.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import fixtures
from .poly import (
    ONE,
    ZERO,
    Poly,
    PolyError,
    RationalPoly,
    const,
    content_primitive,
    discriminant,
    evaluate,
    exquo,
    gcd,
    is_homogeneous,
    parse,
    poly_sqrt,
    power,
    rational_roots,
    squarefree_split,
    strip_pure_powers,
    substitute,
    substitute_fraction,
    univariate_coeffs,
    var,
)
from .tep_model import (
    DegenerateInstance,
    HalfFamily,
    SolutionFamily,
    extend_symmetric,
    instantiate,
    is_trivial,
    is_trivial_family,
    normalize_family,
    verify_family,
)

log = logging.getLogger(__name__)

A1, A2, A3, M, N, F, G, T, Y = (var(v) for v in ("a1", "a2", "a3", "m", "n", "f", "g", "t", "y"))

Param = Union[int, Fraction, Poly, None]


class PipelineError(Exception):
    pass


class NoSquaredFactor(PipelineError):
    pass


class NoRationalPoint(PipelineError):
    pass


class TrivialFamily(PipelineError):
    pass


class DegenerateBranch(PipelineError):
    pass


# -- stage 0: base solution, r = 6 residual, phi ---------------------------------


def base_solution() -> Tuple[Tuple[Poly, ...], Tuple[Poly, ...]]:
    """The r = 1, 2, 4 solution in (a1, a2, a3, m, n): four x's, four y's."""
    return fixtures.BASE_XS, fixtures.BASE_YS


rmjm_base = base_solution


def power_sum_difference(r: int) -> Poly:
    xs, ys = base_solution()
    total = ZERO
    for p in ys:
        total = total + power(p, r)
    for p in xs:
        total = total - power(p, r)
    return total


@lru_cache(maxsize=None)
def residual_r6() -> Poly:
    """``sum y_i^6 - sum x_i^6`` for the base solution (all terms moved to the
    side that makes the leading constant +12)."""
    return power_sum_difference(6)


@lru_cache(maxsize=None)
def last_factor() -> Poly:
    """The r = 6 residual with every trivial factor divided out."""
    trivial = fixtures.product(fixtures.R6_FACTORS[:-1], fixtures.R6_CONSTANT)
    return exquo(residual_r6(), trivial)


@lru_cache(maxsize=None)
def quadratic_q() -> Poly:
    """Coefficient of m^2 in the last factor."""
    return univariate_coeffs(univariate_coeffs(last_factor(), "m")[2], "n")[0]


@lru_cache(maxsize=None)
def quartic_p() -> Poly:
    """Minus the coefficient of n^2 in the last factor."""
    return -univariate_coeffs(univariate_coeffs(last_factor(), "m")[0], "n")[2]


def solve_m() -> RationalPoly:
    """``m = n y / Q`` zeroes the last factor exactly when ``y^2 = phi``."""
    return RationalPoly(N * Y, quadratic_q())


@lru_cache(maxsize=None)
def phi() -> Poly:
    return quadratic_q() * quartic_p()


# -- stage 1 ----------------------------------------------------------------------


def _as_param(value: Param, name: str) -> Tuple[Poly, int]:
    """(numerator, denominator) for a rational, polynomial or free parameter."""
    if value is None:
        return var(name), 1
    if isinstance(value, Poly):
        return value, 1
    value = Fraction(value)
    return const(value.numerator), value.denominator


def alpha2_of(f: Param, g: Param) -> Tuple[Poly, int]:
    """``a2 = f a1 + g a3`` as (integer numerator, positive denominator)."""
    fn, fd = _as_param(f, "f")
    gn, gd = _as_param(g, "g")
    den = fd * gd // math.gcd(fd, gd)
    return fn * (den // fd) * A1 + gn * (den // gd) * A3, den


def substituted_phi(f: Param = None, g: Param = None) -> Poly:
    """``phi`` with ``a2 = f a1 + g a3``; ``None`` keeps a parameter symbolic.

    Rational parameters are cleared by multiplying with ``den**4``, a square,
    so squareness questions are unaffected.
    """
    num, den = alpha2_of(f, g)
    if den == 1:
        return substitute(phi(), "a2", num)
    return substitute_fraction(phi(), "a2", num, den)


def binary_discriminant(form: Poly) -> Tuple[Poly, Dict[str, int]]:
    """a1-discriminant of a binary form in (a1, a3) with pure powers of a3 and
    a1 stripped first; the dehomogenized (a3 = 1) polynomial is used."""
    stripped = {}
    form, stripped["a3"] = strip_pure_powers(form, "a3")
    form, stripped["a1"] = strip_pure_powers(form, "a1")
    dehom = substitute(form, "a3", ONE)
    disc = discriminant(dehom, "a1")
    return disc, stripped


@lru_cache(maxsize=None)
def first_condition() -> Poly:
    disc, _ = binary_discriminant(substituted_phi())
    return disc


@dataclass(frozen=True)
class BranchChoice:
    """A way through both discriminant conditions.

    ``fixed`` is the parameter eliminated by the chosen linear factor of the
    first condition and ``value`` its expression in the ``free`` parameter.
    ``second_root`` fixes the free parameter once a stage-two root is chosen.
    """

    label: str
    factor: Poly
    fixed: str
    value: Poly
    free: str
    second_root: Optional[Fraction] = None

    def with_root(self, root) -> "BranchChoice":
        return BranchChoice(self.label, self.factor, self.fixed, self.value, self.free, Fraction(root))

    def params(self) -> Tuple[Param, Param]:
        """(f, g) as rationals when both are determined, else with polynomials."""
        if self.second_root is None:
            fixed = self.value
            free = None
        else:
            r = self.second_root
            free = r
            fixed = Fraction(evaluate(self.value, {self.free: r}))
        if self.fixed == "f":
            return fixed, free
        return free, fixed

    @property
    def name(self) -> str:
        if self.second_root is None:
            return f"{self.fixed}={self.value}"
        f, g = self.params()
        return f"f={f},g={g}"


def _solve_linear(factor: Poly) -> Tuple[str, Poly, str]:
    for fixed, free in (("f", "g"), ("g", "f")):
        coeffs = univariate_coeffs(factor, fixed)
        if len(coeffs) == 2 and coeffs[1].is_constant() and abs(coeffs[1].constant_value()) == 1:
            sign = coeffs[1].constant_value()
            return fixed, -coeffs[0] * sign, free
    raise ValueError(f"cannot solve {factor} for f or g with a unit coefficient")


def linear_factor_choices() -> List[BranchChoice]:
    choices = []
    for factor, _ in fixtures.FIRST_LINEAR:
        fixed, value, free = _solve_linear(factor)
        choices.append(BranchChoice(str(factor), factor, fixed, value, free))
    return choices


def choice_for(f: Param, g: Param) -> BranchChoice:
    """A branch choice for an explicit (f, g) request such as f = -2, g free."""
    if f is not None and not isinstance(f, Poly):
        fixed, value, free = "f", const(Fraction(f)), "g"
        if Fraction(f).denominator != 1:
            raise ValueError("a fixed rational f must be an integer here")
    elif g is not None and not isinstance(g, Poly):
        fixed, value, free = "g", const(Fraction(g)), "f"
        if Fraction(g).denominator != 1:
            raise ValueError("a fixed rational g must be an integer here")
    else:
        raise ValueError("fix at least one of f, g")
    factor = var(fixed) - value
    return BranchChoice(str(factor), factor, fixed, value, free)


def branch_sextic(choice: BranchChoice) -> Poly:
    return substituted_phi(*choice.params())


@dataclass
class Reduction:
    square_part: Poly
    cofactor: Poly
    content: Poly
    stripped: Dict[str, int]

    @property
    def cofactor_degree(self) -> int:
        return _form_degree(self.cofactor)

    @property
    def degenerate(self) -> bool:
        return self.cofactor_degree < 4


def _form_degree(p: Poly) -> int:
    if not p.terms:
        return -1
    return max(
        sum(e for v, e in zip(p.gens, exps) if v in ("a1", "a3")) for exps, _ in p.monomials()
    )


def _form_content(p: Poly) -> Poly:
    """gcd of the (a1, a3)-coefficients of ``p`` (a polynomial in parameters)."""
    coeffs = []
    for c1 in univariate_coeffs(p, "a1"):
        coeffs.extend(c for c in univariate_coeffs(c1, "a3") if c.terms)
    g = ZERO
    for c in coeffs:
        g = gcd(g, c)
    return g


def reduce_form(form: Poly) -> Reduction:
    """Split a binary form as ``square_part^2 * content * cofactor``."""
    if not form.terms:
        raise DegenerateBranch("the form vanishes identically")
    stripped = {}
    rest, stripped["a3"] = strip_pure_powers(form, "a3")
    rest, stripped["a1"] = strip_pure_powers(rest, "a1")
    square = power(A3, stripped["a3"] // 2) * power(A1, stripped["a1"] // 2)
    odd = power(A3, stripped["a3"] % 2) * power(A1, stripped["a1"] % 2)
    s, c = squarefree_split(rest, "a1")
    content = _form_content(c)
    cofactor = exquo(c, content) * odd
    s_alpha = _alpha_part(s)
    square = square * s_alpha
    return Reduction(square, cofactor, exquo(s, s_alpha) ** 2 * content, stripped)


def _alpha_part(s: Poly) -> Poly:
    """Drop factors of ``s`` that do not involve a1 or a3."""
    if not s.terms or _form_degree(s) == 0:
        return ONE
    return exquo(s, _form_content(s))


def reduce_once(choice: BranchChoice) -> Reduction:
    red = reduce_form(branch_sextic(choice))
    if _form_degree(red.square_part) == 0:
        raise NoSquaredFactor(f"no squared factor on branch {choice.name}")
    return red


def second_condition(choice: BranchChoice, reduction: Optional[Reduction] = None) -> Poly:
    """Discriminant of the stage-one cofactor, a polynomial in the free parameter.

    When a lone a3 (or a1) had to be stripped, the condition that it also
    divides the rest is restored through the matching end coefficient.
    """
    red = reduction if reduction is not None else reduce_once(choice)
    cof = red.cofactor
    if red.cofactor_degree < 2:
        raise DegenerateBranch(f"cofactor {cof} has degree below 2")
    disc, stripped = binary_discriminant(cof)
    if stripped["a3"]:
        rest = exquo(cof, power(A3, stripped["a3"]))
        disc = disc * power(univariate_coeffs(rest, "a1")[-1], 2)
    if stripped["a1"]:
        rest = exquo(cof, power(A1, stripped["a1"]))
        disc = disc * power(univariate_coeffs(rest, "a3")[-1], 2)
    return disc


def second_roots(condition: Poly) -> List[Fraction]:
    if not condition.terms:
        raise DegenerateBranch("stage-two condition vanishes identically")
    if condition.is_constant():
        return []
    return rational_roots(condition)


# -- stage 3: the conic -----------------------------------------------------------


def _quadratic_coeffs(q: Poly) -> Tuple[int, int, int]:
    def coeff(e1, e3):
        c1 = univariate_coeffs(q, "a1")
        if e1 >= len(c1):
            return 0
        c3 = univariate_coeffs(c1[e1], "a3")
        return c3[e3].constant_value() if e3 < len(c3) and c3[e3].terms else 0

    return coeff(2, 0), coeff(1, 1), coeff(0, 2)


def _isqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


SEARCH_HEIGHT = 40


def rational_point(q: Poly) -> Tuple[int, int, int]:
    """An integer point ``(u, v, w) != 0`` with ``q(u, v) = w^2``.

    Tries the axis points, then the roots of ``q`` when its discriminant is a
    square, then coprime ``(u, v)`` up to ``SEARCH_HEIGHT``.
    """
    a, b, c = _quadratic_coeffs(q)
    w = _isqrt(c)
    if w is not None and c:
        return 0, 1, w
    w = _isqrt(a)
    if w is not None and a:
        return 1, 0, w
    disc = b * b - 4 * a * c
    if a < 0 and disc < 0:
        raise NoRationalPoint(f"{q} is negative definite")
    r = _isqrt(disc)
    if r is not None:
        if a:
            u, v = -b + r, 2 * a
        else:
            u, v = 1, 0
        g = math.gcd(u, v)
        return u // g, v // g, 0
    for h in range(1, SEARCH_HEIGHT + 1):
        for u in range(-h, h + 1):
            for v in (h, -h) if abs(u) < h else range(-h + 1, h):
                if math.gcd(u, v) != 1:
                    continue
                w = _isqrt(a * u * u + b * u * v + c * v * v)
                if w:
                    return u, v, w
    raise NoRationalPoint(f"no rational point of height <= {SEARCH_HEIGHT} on y^2 = {q}")


def parametrize_square(q: Poly) -> Tuple[Poly, Poly, Poly]:
    """Polynomials ``(a1(t), a3(t), y(t))`` with ``q(a1(t), a3(t)) = y(t)^2``.

    Lines through a rational point of the conic ``w^2 = q``; the pencil is
    swept by ``(1, t, 0)`` (or ``(1, t, 1)`` when the point has ``w = 0``).
    """
    if not is_homogeneous(q, ("a1", "a3")) or _form_degree(q) != 2:
        raise ValueError(f"{q} is not a binary quadratic form in a1, a3")
    if set(q.gens) - {"a1", "a3"}:
        raise ValueError("the quadratic must have constant coefficients")
    a, b, c = _quadratic_coeffs(q)
    u, v, w0 = rational_point(q)
    d1, d3, dw = ONE, T, (ONE if w0 == 0 else ZERO)
    qd = a * d1 * d1 + b * d1 * d3 + c * d3 * d3
    # F(X) = w^2 - q(X); X = -F(D) P + 2 B(P, D) D with B the polar form
    f_d = dw * dw - qd
    two_b = 2 * w0 * dw - (2 * a * u * d1 + b * (u * d3 + v * d1) + 2 * c * v * d3)
    a1 = -f_d * u + two_b * d1
    a3 = -f_d * v + two_b * d3
    y = -f_d * w0 + two_b * dw
    common = gcd(gcd(a1, a3), y) if y.terms else gcd(a1, a3)
    if common.terms and common != ONE:
        a1, a3 = exquo(a1, common), exquo(a3, common)
        y = exquo(y, common)
    k = math.gcd(math.gcd(content_primitive(a1)[0], content_primitive(a3)[0]), _content_or_zero(y))
    if k > 1:
        a1, a3, y = exquo(a1, const(k)), exquo(a3, const(k)), exquo(y, const(k))
    check = substitute(substitute(q, "a1", a1), "a3", a3)
    if check != y * y:
        raise PipelineError(f"parametrization of {q} failed its identity check")
    return a1, a3, y


def _content_or_zero(p: Poly) -> int:
    return abs(content_primitive(p)[0]) if p.terms else 0


# -- assembling a family ------------------------------------------------------------


@dataclass
class Assembly:
    """Everything computed on the way from (f, g) to a family."""

    f: Fraction
    g: Fraction
    sextic: Poly
    square_part: Poly
    conic: Poly
    alpha: Tuple[Poly, Poly, Poly]
    y: Poly
    family: SolutionFamily


def _square_free_integer(n: int) -> Tuple[int, int]:
    """``n = k^2 * r``; returns (k, r) using trial division by small squares."""
    k = 1
    d = 2
    while d * d <= abs(n) and d < 10**4:
        while n % (d * d) == 0:
            n //= d * d
            k *= d
        d += 1
    return k, n


def assemble(f, g, label: str = "") -> Assembly:
    """Build the quartic family for rational ``(f, g)``."""
    f, g = Fraction(f), Fraction(g)
    sextic = substituted_phi(f, g)
    if not sextic.terms:
        raise DegenerateBranch(f"phi vanishes identically at f={f}, g={g}")
    s, c = squarefree_split(sextic, "a1")
    deg = _form_degree(c)
    if deg > 2:
        raise DegenerateBranch(f"square-free cofactor of degree {deg} at f={f}, g={g}")
    content, conic = content_primitive(c) if deg == 2 else (c.constant_value(), ONE)
    k, content = _square_free_integer(content)
    s = s * k
    if deg == 2:
        a1_t, a3_t, _ = parametrize_square(conic * content)
    elif _isqrt(content) is not None:
        a1_t, a3_t = T, ONE
    else:
        raise NoRationalPoint(f"{content} is not a square at f={f}, g={g}")
    num, den = alpha2_of(f, g)
    # scale (a1, a3) by den so that a2 stays integral
    alpha = (a1_t * den, substitute(substitute(num, "a1", a1_t), "a3", a3_t), a3_t * den)
    phi_t = _at_alpha(phi(), alpha)
    y = poly_sqrt(phi_t)
    if y is None:
        raise PipelineError(f"phi is not a square along the parametrization at f={f}, g={g}")
    n_t = _at_alpha(quadratic_q(), alpha)
    xs, ys = base_solution()
    subs = {"m": y, "n": n_t}
    half_x = tuple(_at_alpha(p, alpha, subs) for p in xs)
    half_y = tuple(_at_alpha(p, alpha, subs) for p in ys)
    if not any(p.terms for p in half_x + half_y):
        raise DegenerateBranch(f"every entry vanishes at f={f}, g={g}")
    family = normalize_family(extend_symmetric(HalfFamily(half_x, half_y, label)))
    if is_trivial_family(family):
        raise TrivialFamily(f"both sides coincide at f={f}, g={g}")
    return Assembly(f, g, sextic, s, conic if deg == 2 else ONE, alpha, y, family)


def _at_alpha(p: Poly, alpha, extra: Optional[Dict[str, Poly]] = None) -> Poly:
    out = p
    for name, value in zip(("a1", "a2", "a3"), alpha):
        out = substitute(out, name, value)
    for name, value in (extra or {}).items():
        out = substitute(out, name, value)
    return out


def build_family(choice: BranchChoice, label: str = "") -> SolutionFamily:
    f, g = choice.params()
    if isinstance(f, Poly) or isinstance(g, Poly) or f is None or g is None:
        raise ValueError("both f and g must be fixed to build a family")
    return assemble(f, g, label or choice.name).family


# -- equivalence ---------------------------------------------------------------------


def _square_sum(family: SolutionFamily) -> List[Fraction]:
    total = ZERO
    for p in family.xs:
        total = total + p * p
    return [Fraction(c.constant_value()) if c.terms else Fraction(0) for c in univariate_coeffs(total, "t")]


def _rational_root(x: Fraction, k: int) -> List[Fraction]:
    """Rational k-th roots of ``x``."""
    if x == 0:
        return [Fraction(0)]
    sign = 1 if x > 0 else -1
    if sign < 0 and k % 2 == 0:
        return []
    num = _iroot(abs(x.numerator), k)
    den = _iroot(x.denominator, k)
    if num is None or den is None:
        return []
    r = Fraction(num, den) * sign
    return [r, -r] if k % 2 == 0 else [r]


def _iroot(n: int, k: int) -> Optional[int]:
    lo, hi = 0, 1
    while hi**k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**k == n else None


def _reparametrize(p: Poly, a: Fraction, b: Fraction, d: int, c: Fraction = Fraction(0), e: Fraction = Fraction(1)) -> Poly:
    """``(c t + e)^d p((a t + b) / (c t + e))`` scaled to integer coefficients."""
    den = 1
    for x in (a, b, c, e):
        den = den * x.denominator // math.gcd(den, x.denominator)
    num_lin = T * int(a * den) + int(b * den)
    den_lin = T * int(c * den) + int(e * den)
    coeffs = univariate_coeffs(p, "t") if p.terms else [ZERO]
    out = ZERO
    for k, coeff in enumerate(coeffs):
        if coeff.terms:
            out = out + coeff * power(num_lin, k) * power(den_lin, d - k)
    return out


def _entry_key(family: SolutionFamily) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    def side(ps):
        return tuple(sorted(str(-p) if p.leading_coefficient() < 0 else str(p) for p in ps))

    a, b = side(family.xs), side(family.ys)
    return (a, b) if a <= b else (b, a)


def _primitive(family: SolutionFamily) -> SolutionFamily:
    return normalize_family(SolutionFamily(family.xs, family.ys, family.label))


def _moved(A: SolutionFamily, d: int, a, b, c=Fraction(0), e=Fraction(1)) -> SolutionFamily:
    return _primitive(
        SolutionFamily(
            tuple(_reparametrize(p, a, b, d, c, e) for p in A.xs),
            tuple(_reparametrize(p, a, b, d, c, e) for p in A.ys),
        )
    )


def affine_equivalent(A: SolutionFamily, B: SolutionFamily) -> bool:
    """Do ``A`` and ``B`` agree up to ``t -> a t + b``, scaling, permutations
    within a side, swapping sides and signs of symmetric entries?

    The shift and scale are pinned down by the side-independent invariant
    ``sum x_i(t)^2``: its t^7 coefficient fixes the centre and the ratio of
    two further coefficients fixes ``a`` up to a root of unity.
    """
    A, B = _primitive(A), _primitive(B)
    if A.degree != B.degree:
        return False
    d = A.degree
    if d <= 0:
        return _entry_key(A) == _entry_key(B)
    pa, pb = _square_sum(A), _square_sum(B)
    n = len(pa) - 1
    if len(pb) - 1 != n:
        return False
    ca = -pa[n - 1] / (n * pa[n]) if n >= 1 else Fraction(0)
    cb = -pb[n - 1] / (n * pb[n]) if n >= 1 else Fraction(0)
    qa = _shift_coeffs(pa, ca)
    qb = _shift_coeffs(pb, cb)
    candidates = None
    for k in range(n - 2, -1, -1):
        if qa[k] == 0 and qb[k] == 0:
            continue
        if qa[k] == 0 or qb[k] == 0:
            return False
        ratio = (qb[n] * qa[k]) / (qa[n] * qb[k])
        roots = set(_rational_root(ratio, n - k))
        candidates = roots if candidates is None else candidates & roots
    if candidates is None:
        candidates = {Fraction(1), Fraction(-1)}
    target = _entry_key(B)
    for a in sorted(candidates):
        if a == 0:
            continue
        if _entry_key(_moved(A, d, a, ca - a * cb)) == target:
            return True
    return False


INFINITY = None


def _instance_at(family: SolutionFamily, t0):
    """Canonical instance at ``t0``; ``None`` stands for the point at infinity."""
    if t0 is INFINITY:
        d = family.degree
        lead = SolutionFamily(
            tuple(const(_coeff(p, d)) for p in family.xs),
            tuple(const(_coeff(p, d)) for p in family.ys),
        )
        return instantiate(lead, 0)
    return instantiate(family, t0)


def _coeff(p: Poly, k: int) -> int:
    coeffs = univariate_coeffs(p, "t") if p.terms else [ZERO]
    return coeffs[k].constant_value() if k < len(coeffs) and coeffs[k].terms else 0


def _side_sums(family: SolutionFamily) -> Tuple[Poly, Poly]:
    p2 = ZERO
    p4 = ZERO
    for p in family.xs:
        sq = p * p
        p2 = p2 + sq
        p4 = p4 + sq * sq
    return p2, p4


def _preimages(B: SolutionFamily, target, sums: Optional[Tuple[Poly, Poly]] = None) -> List:
    """Parameters ``t'`` (``None`` for infinity) with ``B(t')`` equivalent to ``target``.

    Candidates are the rational roots of ``p4(t) p2(I)^2 - p2(t)^2 p4(I)``, the
    scale-free comparison of the second and fourth power sums, which any
    preimage must satisfy whatever the side or sign arrangement.
    """
    found = []
    try:
        if _instance_at(B, INFINITY) == target:
            found.append(INFINITY)
    except DegenerateInstance:
        pass
    p2, p4 = sums if sums is not None else _side_sums(B)
    s2 = sum(v * v for v in target.xs)
    s4 = sum(v**4 for v in target.xs)
    eq = p4 * (s2 * s2) - p2 * p2 * s4
    if not eq.terms or eq.is_constant():
        return found
    for r in rational_roots(eq):
        try:
            if instantiate(B, r) == target:
                found.append(r)
        except DegenerateInstance:
            pass
    return found


def _mobius_through(points) -> Optional[Tuple[Fraction, Fraction, Fraction, Fraction]]:
    """(a, b, c, e) with (a t + b)/(c t + e) sending each source to its image."""
    rows = []
    for s, img in points:
        if img is INFINITY:
            rows.append([Fraction(0), Fraction(0), Fraction(s), Fraction(1)])
        else:
            rows.append([Fraction(s), Fraction(1), -img * s, -img])
    # null vector of the 3 x 4 system by elimination
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, 3) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(3):
            if i != r and m[i][col] != 0:
                m[i] = [x - m[i][col] * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == 3:
            break
    free = [c for c in range(4) if c not in pivots]
    if len(free) != 1:
        return None
    vec = [Fraction(0)] * 4
    vec[free[0]] = Fraction(1)
    for i, col in enumerate(pivots):
        vec[col] = -m[i][free[0]]
    a, b, c, e = vec
    if a * e - b * c == 0:
        return None
    return a, b, c, e


def projective_equivalent(A: SolutionFamily, B: SolutionFamily, samples: int = 3) -> bool:
    """Equivalence up to ``t -> (a t + b)/(c t + e)`` as well.

    Three nondegenerate instances of ``A`` are located on ``B``; each
    consistent triple of preimages defines a candidate Moebius map that is
    then checked symbolically on all sixteen entries.
    """
    A, B = _primitive(A), _primitive(B)
    if A.degree != B.degree:
        return False
    d = A.degree
    if d <= 0:
        return _entry_key(A) == _entry_key(B)
    sums = _side_sums(B)
    pts = []
    t0 = 0
    while len(pts) < samples and t0 < 200:
        for cand in ((t0,) if t0 == 0 else (t0, -t0)):
            try:
                inst = instantiate(A, cand)
            except DegenerateInstance:
                continue
            if is_trivial(inst) or len(set(map(abs, inst.xs + inst.ys))) < 8:
                continue
            pre = _preimages(B, inst, sums)
            if not pre:
                return False
            pts.append((cand, pre))
            if len(pts) == samples:
                break
        t0 += 1
    if len(pts) < samples:
        return False
    target = _entry_key(A)
    for i1 in pts[0][1]:
        for i2 in pts[1][1]:
            for i3 in pts[2][1]:
                g = _mobius_through([(pts[0][0], i1), (pts[1][0], i2), (pts[2][0], i3)])
                if g is None:
                    continue
                if _entry_key(_moved(B, d, *g)) == target:
                    return True
    return False


def equivalent(A: SolutionFamily, B: SolutionFamily, reparametrization: str = "affine") -> bool:
    """Family equivalence up to rational reparametrization, scaling,
    permutations within a side, side swap and signs.

    The default admits ``t -> a t + b`` only.  ``"projective"`` also admits
    ``t -> (a t + b)/(c t + e)`` (after clearing denominators), which is what
    relates parametrizations of one conic through different rational points.
    """
    if reparametrization not in ("affine", "projective"):
        raise ValueError(f"unknown reparametrization {reparametrization!r}")
    if affine_equivalent(A, B):
        return True
    if reparametrization == "affine":
        return False
    return projective_equivalent(A, B)


def _shift_coeffs(coeffs: Sequence[Fraction], c: Fraction) -> List[Fraction]:
    """Coefficients of ``p(t + c)``."""
    out = [Fraction(0)] * len(coeffs)
    for k, a in enumerate(coeffs):
        if not a:
            continue
        for j in range(k + 1):
            out[j] += a * math.comb(k, j) * c ** (k - j)
    return out


# -- enumeration ---------------------------------------------------------------------


@dataclass
class BranchOutcome:
    choice: BranchChoice
    root: Optional[Fraction]
    status: str
    detail: str = ""
    family: Optional[SolutionFamily] = None


@dataclass
class BranchTrace:
    choice: BranchChoice
    stripped: Dict[str, int] = field(default_factory=dict)
    square_part: Optional[Poly] = None
    cofactor: Optional[Poly] = None
    condition: Optional[Poly] = None
    roots: List[Fraction] = field(default_factory=list)
    outcomes: List[BranchOutcome] = field(default_factory=list)
    status: str = "ok"
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "factor": self.choice.label,
            "substitution": {self.choice.fixed: str(self.choice.value)},
            "free": self.choice.free,
            "status": self.status,
            "detail": self.detail,
            "stripped": self.stripped,
            "square_part": None if self.square_part is None else str(self.square_part),
            "cofactor": None if self.cofactor is None else str(self.cofactor),
            "condition": None if self.condition is None else str(self.condition),
            "roots": [str(r) for r in self.roots],
            "outcomes": [
                {
                    "root": None if o.root is None else str(o.root),
                    "params": o.choice.name,
                    "status": o.status,
                    "detail": o.detail,
                    "family": None if o.family is None else _family_text(o.family),
                }
                for o in self.outcomes
            ],
        }


def _family_text(family: SolutionFamily) -> dict:
    return {"x": [str(p) for p in family.xs[:4]], "y": [str(p) for p in family.ys[:4]]}


def try_root(choice: BranchChoice, root) -> BranchOutcome:
    chosen = choice.with_root(root)
    try:
        fam = build_family(chosen)
    except TrivialFamily as exc:
        return BranchOutcome(chosen, Fraction(root), "trivial", str(exc))
    except NoRationalPoint as exc:
        return BranchOutcome(chosen, Fraction(root), "no-rational-point", str(exc))
    except DegenerateBranch as exc:
        return BranchOutcome(chosen, Fraction(root), "degenerate", str(exc))
    report = verify_family(fam, range(1, 9))
    if not all(report.zero[r] for r in range(1, 8)):
        return BranchOutcome(chosen, Fraction(root), "failed-verification", str(report.first_failure), fam)
    return BranchOutcome(chosen, Fraction(root), "family", f"degree {fam.degree}", fam)


def trace_branch(choice: BranchChoice) -> BranchTrace:
    trace = BranchTrace(choice)
    try:
        red = reduce_once(choice)
    except (NoSquaredFactor, DegenerateBranch) as exc:
        trace.status, trace.detail = "no-squared-factor", str(exc)
        return trace
    trace.stripped = red.stripped
    trace.square_part, trace.cofactor = red.square_part, red.cofactor
    if red.degenerate:
        trace.status = "degenerate"
        trace.detail = f"cofactor degree {red.cofactor_degree}"
        return trace
    trace.condition = second_condition(choice, red)
    try:
        trace.roots = second_roots(trace.condition)
    except DegenerateBranch as exc:
        trace.status, trace.detail = "degenerate", str(exc)
        return trace
    for r in trace.roots:
        outcome = try_root(choice, r)
        log.info("branch %s root %s: %s %s", choice.label, r, outcome.status, outcome.detail)
        trace.outcomes.append(outcome)
    return trace


def enumerate_branches() -> List[BranchTrace]:
    return [trace_branch(choice) for choice in linear_factor_choices()]


def enumerate_families(
    traces: Optional[List[BranchTrace]] = None, reparametrization: str = "affine"
) -> List[SolutionFamily]:
    """One representative per equivalence class, in branch-then-root order."""
    if traces is None:
        traces = enumerate_branches()
    classes: List[SolutionFamily] = []
    for trace in traces:
        for outcome in trace.outcomes:
            if outcome.status != "family":
                continue
            if not any(equivalent(outcome.family, rep, reparametrization) for rep in classes):
                classes.append(outcome.family)
    return classes
