"""Stored polynomial constants for the degree-7 construction.

Everything here is read-only data.  Factor lists are kept as tuples of
``(factor, multiplicity)`` so that products can be rebuilt and compared with
what the pipeline computes.  :func:`checksums` gives a digest of each
serialized fixture so accidental edits are caught by the test-suite.
"""

from __future__ import annotations

import hashlib
from types import MappingProxyType
from typing import Dict, Mapping, Tuple

from .poly import Poly, parse, power, to_text

Factors = Tuple[Tuple[Poly, int], ...]


def _factors(*items) -> Factors:
    return tuple((parse(text), mult) for text, mult in items)


def product(factors: Factors, constant: int = 1) -> Poly:
    out = Poly(constant)
    for p, k in factors:
        out = out * power(p, k)
    return out


# base solution of the r = 1, 2, 4 system, linear homogeneous in (m, n)
BASE_XS = tuple(
    parse(s)
    for s in (
        "a1*m + (a1 + 2*a3)*(a1 + 2*a2 + a3)*n",
        "a2*m - (a1 - a3)*(2*a1 + a2 + 2*a3)*n",
        "a3*m - (2*a1 + a3)*(a1 + 2*a2 + a3)*n",
        "-(a1 + a2 + a3)*m + (a1 - a3)*(a1 - a2 + a3)*n",
    )
)
BASE_YS = tuple(
    parse(s)
    for s in (
        "-a1*m + (a1 + 2*a3)*(a1 + 2*a2 + a3)*n",
        "-a2*m - (a1 - a3)*(2*a1 + a2 + 2*a3)*n",
        "-a3*m - (2*a1 + a3)*(a1 + 2*a2 + a3)*n",
        "(a1 + a2 + a3)*m + (a1 - a3)*(a1 - a2 + a3)*n",
    )
)

# quadratic multiplying m^2 in the last factor of the r = 6 residual
Q_TEXT = "2*a1^2 - a1*a2 + 5*a1*a3 - a2^2 - a2*a3 + 2*a3^2"
# quartic multiplying -n^2 in the same factor
P_TEXT = (
    "2*a1^4 - a1^3*a2 + 9*a1^3*a3 - a1^2*a2^2 + 37*a1^2*a2*a3 + 14*a1^2*a3^2"
    " + 38*a1*a2^2*a3 + 37*a1*a2*a3^2 + 9*a1*a3^3 - a2^2*a3^2 - a2*a3^3 + 2*a3^4"
)
Q = parse(Q_TEXT)
P = parse(P_TEXT)

R6_CONSTANT = 12
R6_FACTORS: Factors = _factors(
    ("m", 1),
    ("n", 1),
    ("a1^2 - a3^2", 1),
    ("a1 + a2", 1),
    ("a1 + 2*a2 + a3", 1),
    ("a2 + a3", 1),
    ("m^2 - 9*(a1 + a3)^2*n^2", 1),
    (f"({Q_TEXT})*m^2 - ({P_TEXT})*n^2", 1),
)

PHI_PRODUCT = Q * P
PHI_COLLECTED = parse(
    "(a1^2 - 38*a1*a3 + a3^2)*a2^4"
    " + 2*(a1 + a3)*(a1^2 - 38*a1*a3 + a3^2)*a2^3"
    " - (3*a1^4 - 26*a1^3*a3 - 98*a1^2*a3^2 - 26*a1*a3^3 + 3*a3^4)*a2^2"
    " - 2*(2*a1 + a3)*(a1 + 2*a3)*(a1 + a3)*(a1^2 - 18*a1*a3 + a3^2)*a2"
    " + (a1 + 2*a3)^2*(2*a1 + a3)^2*(a1 + a3)^2"
)

FIRST_LINEAR = _factors(
    ("f + 2", 2),
    ("f - 1", 2),
    ("f - g", 2),
    ("2*f - g", 2),
    ("f - 2*g", 2),
    ("f + g + 1", 2),
    ("f - 2*g - 1", 2),
    ("2*f - g + 1", 2),
    ("g + 2", 2),
    ("g - 1", 2),
)
FIRST_FACTORS: Factors = FIRST_LINEAR + _factors(
    ("9*f^2 - 22*f*g + 9*g^2 - 2*f - 2*g + 9", 1),
    (
        "f^6 + 114*f^5*g + 4335*f^4*g^2 + 55100*f^3*g^3 + 4335*f^2*g^4 + 114*f*g^5"
        " + g^6 + 60*f^5 + 4620*f^4*g + 91320*f^3*g^2 + 91320*f^2*g^3 + 4620*f*g^4"
        " + 60*g^5 - 20667*f^4 + 48228*f^3*g + 141678*f^2*g^2 + 48228*f*g^3"
        " - 20667*g^4 - 35620*f^3 + 72420*f^2*g + 72420*f*g^2 - 35620*g^3"
        " - 20667*f^2 + 46254*f*g - 20667*g^2 + 60*f + 60*g + 1",
        1,
    ),
)

PHI1_F_MINUS_2 = parse(
    "((3*g + 7)*a1 - (g + 2)*(g - 1)*a3)"
    "*((3*g + 87)*a1^3 - (g^2 + 115*g + 64)*a1^2*a3"
    " + (19*g + 11)*(2*g + 1)*a1*a3^2 - (g + 2)*(g - 1)*a3^3)"
)

SECOND_FACTORS_F_MINUS_2: Factors = _factors(
    ("g - 1", 4),
    ("g + 1", 2),
    ("g + 2", 4),
    ("g + 3", 2),
    ("g + 4", 2),
    ("2*g + 3", 2),
    ("g^4 - 226*g^3 - 300*g^2 - 130*g - 155", 1),
)

# f = -2, g = -1: phi_1 = 4 (2 a1 + a3)^2 (21 a1^2 + 2 a1 a3 + a3^2)
PHI1_WORKED = parse("4*(2*a1 + a3)^2*(21*a1^2 + 2*a1*a3 + a3^2)")
CONIC_WORKED = parse("21*a1^2 + 2*a1*a3 + a3^2")
CONIC_PARAM = (parse("2*t + 2"), parse("t^2 - 21"))
ALPHA2_WORKED = parse("-t^2 - 4*t + 17")
Y_WORKED = parse("t^2 + 2*t + 21")

_FAMILY_TEXT = (
    (
        (
            "t^4 + 6*t^3 - 32*t^2 - 158*t + 279",
            "4*t^3 + 28*t^2 + 4*t - 420",
            "t^4 + 6*t^3 - 4*t^2 - 102*t - 93",
            "t^4 - 50*t^2 - 56*t + 393",
        ),
        (
            "t^4 + 8*t^3 - 26*t^2 - 112*t + 321",
            "t^4 + 2*t^3 - 16*t^2 + 46*t + 63",
            "4*t^3 - 4*t^2 - 60*t + 348",
            "t^4 + 2*t^3 - 44*t^2 - 10*t + 435",
        ),
    ),
    (
        (
            "3*t^4 + 40*t^3 - 274*t^2 + 48*t + 1383",
            "t^4 - 88*t^3 - 214*t^2 + 736*t - 675",
            "7*t^4 + 14*t^3 - 152*t^2 + 962*t + 609",
            "4*t^4 - 70*t^3 + 46*t^2 + 254*t - 1914",
        ),
        (
            "4*t^4 - 6*t^3 - 274*t^2 - 642*t + 1158",
            "3*t^4 - 92*t^3 - 62*t^2 + 676*t + 1155",
            "7*t^4 + 12*t^3 - 14*t^2 - 1124*t - 81",
            "t^4 + 66*t^3 + 184*t^2 + 238*t - 1929",
        ),
    ),
    (
        (
            "2*t^4 + 42*t^3 - 170*t^2 + 942*t - 48",
            "t^4 - 84*t^3 - 242*t^2 - 68*t - 1911",
            "5*t^4 + 12*t^3 - 10*t^2 + 1724*t + 1341",
            "3*t^4 - 58*t^3 + 92*t^2 - 310*t - 1263",
        ),
        (
            "3*t^4 - 16*t^3 - 170*t^2 - 1320*t - 1569",
            "2*t^4 - 86*t^3 - 106*t^2 - 146*t + 1872",
            "5*t^4 + 10*t^3 + 164*t^2 - 1562*t - 921",
            "t^4 + 56*t^3 + 266*t^2 + 928*t - 483",
        ),
    ),
    (
        (
            "4*t^4 + 18*t^3 + 34*t^2 + 526*t + 378",
            "3*t^4 + 16*t^3 - 86*t^2 - 32*t + 579",
            "t^4 - 12*t^3 + 74*t^2 + 1020*t + 1317",
            "2*t^4 + 42*t^3 + 110*t^2 + 230*t + 1056",
        ),
        (
            "4*t^4 + 14*t^3 - 122*t^2 - 958*t - 1338",
            "2*t^4 - 14*t^3 - 242*t^2 - 658*t - 48",
            "3*t^4 + 40*t^3 + 74*t^2 - 696*t - 861",
            "t^4 + 44*t^3 + 202*t^2 + 164*t - 891",
        ),
    ),
)

# half families (x1..x4 | y1..y4), in print order
HALF_FAMILIES = tuple(
    (tuple(parse(s) for s in xs), tuple(parse(s) for s in ys)) for xs, ys in _FAMILY_TEXT
)

# the half instance of family 1 at t = 2, stored with signs dropped
WORKED_INSTANCE = ((101, 268, 249, 97), (73, 123, 244, 271))


def _registry() -> Dict[str, Poly]:
    reg: Dict[str, Poly] = {}
    for i, (x, y) in enumerate(zip(BASE_XS, BASE_YS), start=1):
        reg[f"base.x{i}"] = x
        reg[f"base.y{i}"] = y
    for i, (p, _) in enumerate(R6_FACTORS, start=1):
        reg[f"r6.factor{i}"] = p
    reg["phi.product"] = PHI_PRODUCT
    reg["phi.collected"] = PHI_COLLECTED
    reg["Q"] = Q
    for i, (p, _) in enumerate(FIRST_FACTORS, start=1):
        reg[f"first.factor{i}"] = p
    reg["phi1.f=-2"] = PHI1_F_MINUS_2
    for i, (p, _) in enumerate(SECOND_FACTORS_F_MINUS_2, start=1):
        reg[f"second.factor{i}"] = p
    reg["phi1.worked"] = PHI1_WORKED
    reg["conic.worked"] = CONIC_WORKED
    reg["conic.a1"], reg["conic.a3"] = CONIC_PARAM
    reg["conic.a2"] = ALPHA2_WORKED
    reg["conic.y"] = Y_WORKED
    for k, (xs, ys) in enumerate(HALF_FAMILIES, start=1):
        for i, p in enumerate(xs, start=1):
            reg[f"family{k}.x{i}"] = p
        for i, p in enumerate(ys, start=1):
            reg[f"family{k}.y{i}"] = p
    return reg


FIXTURES: Mapping[str, Poly] = MappingProxyType(_registry())


def checksums() -> Dict[str, str]:
    return {
        name: hashlib.sha256(to_text(p).encode()).hexdigest()[:16]
        for name, p in FIXTURES.items()
    }
