"""Exact sparse multivariate polynomials over the integers.

A :class:`Poly` stores its terms as a dict from a packed monomial key to a
nonzero Python ``int`` coefficient.  Each variable of the polynomial's ``gens``
tuple owns a fixed-width bit field of the key, so multiplying monomials is a
single integer addition.  ``gens`` always lists exactly the variables that
occur, sorted by the global variable order

    a1, a2, a3, m, n, f, g, t, y, <scratch names in alphabetical order>

and terms are printed in graded-lexicographic order with respect to it.

Besides ring arithmetic the module provides the elimination machinery used
by the construction: pseudo-remainders, a fraction-free subresultant
resultant, discriminants, a recursive primitive-PRS gcd, square-free
splitting (Yun) and exact square roots.
"""

from __future__ import annotations

import ast
import json
import math
import operator
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "VAR_ORDER",
    "Poly",
    "RationalPoly",
    "PolyError",
    "MissingVariable",
    "ZeroPolynomial",
    "DegreeTooLow",
    "NotDivisible",
    "var",
    "const",
    "parse",
    "add",
    "mul",
    "power",
    "substitute",
    "substitute_fraction",
    "evaluate",
    "univariate_coeffs",
    "from_univariate",
    "degree",
    "derivative",
    "exquo",
    "gcd",
    "lcm_content",
    "resultant",
    "discriminant",
    "squarefree_split",
    "poly_sqrt",
    "content_primitive",
    "strip_pure_powers",
    "rational_roots",
    "is_homogeneous",
    "to_json",
    "from_json",
]

VAR_ORDER = ("a1", "a2", "a3", "m", "n", "f", "g", "t", "y")
_BASE_RANK = {name: i for i, name in enumerate(VAR_ORDER)}

# exponents must stay below 2**_WIDTH for keys not to carry into the next field
_WIDTH = 32
_MASK = (1 << _WIDTH) - 1

Coeff = Union[int, Fraction]


class PolyError(Exception):
    """Base class for polynomial errors."""


class MissingVariable(PolyError, KeyError):
    pass


class ZeroPolynomial(PolyError, ValueError):
    pass


class DegreeTooLow(PolyError, ValueError):
    pass


class NotDivisible(PolyError, ArithmeticError):
    pass


def var_key(name: str) -> Tuple[int, int, str]:
    rank = _BASE_RANK.get(name)
    if rank is None:
        return (1, 0, name)
    return (0, rank, "")


def _unpack(key: int, n: int) -> Tuple[int, ...]:
    return tuple((key >> (_WIDTH * i)) & _MASK for i in range(n))


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (_WIDTH * i)
    return key


def _build(gens: Tuple[str, ...], terms: Dict[int, int]) -> "Poly":
    """Make a Poly, dropping zero coefficients and unused generators."""
    terms = {k: c for k, c in terms.items() if c}
    if not terms or not gens:
        return Poly._raw((), {0: terms[0]} if terms.get(0) else {})
    used = 0
    for k in terms:
        used |= k
    keep = [i for i in range(len(gens)) if (used >> (_WIDTH * i)) & _MASK]
    if len(keep) == len(gens):
        return Poly._raw(gens, terms)
    new_gens = tuple(gens[i] for i in keep)
    new_terms = {}
    for k, c in terms.items():
        nk = 0
        for j, i in enumerate(keep):
            nk |= ((k >> (_WIDTH * i)) & _MASK) << (_WIDTH * j)
        new_terms[nk] = c
    return Poly._raw(new_gens, new_terms)


def _reembed(p: "Poly", gens: Tuple[str, ...]) -> Dict[int, int]:
    if p.gens == gens:
        return p.terms
    pos = [gens.index(v) for v in p.gens]
    out = {}
    for k, c in p.terms.items():
        nk = 0
        for j, i in enumerate(pos):
            nk |= ((k >> (_WIDTH * j)) & _MASK) << (_WIDTH * i)
        out[nk] = c
    return out


def _unify(p: "Poly", q: "Poly") -> Tuple[Tuple[str, ...], Dict[int, int], Dict[int, int]]:
    if p.gens == q.gens:
        return p.gens, p.terms, q.terms
    gens = tuple(sorted(set(p.gens) | set(q.gens), key=var_key))
    return gens, _reembed(p, gens), _reembed(q, gens)


class Poly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("gens", "terms", "_hash")

    gens: Tuple[str, ...]
    terms: Dict[int, int]

    def __init__(self, value: Union[int, "Poly", Mapping] = 0):
        if isinstance(value, Poly):
            p = value
        elif isinstance(value, int):
            p = const(value)
        elif isinstance(value, Mapping):
            p = Poly.from_dict(value)
        else:
            raise TypeError(f"cannot build Poly from {type(value).__name__}")
        self.gens = p.gens
        self.terms = p.terms
        self._hash = None

    @classmethod
    def _raw(cls, gens: Tuple[str, ...], terms: Dict[int, int]) -> "Poly":
        obj = object.__new__(cls)
        obj.gens = gens
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_dict(cls, mapping: Mapping) -> "Poly":
        """Build from ``{monomial: coeff}`` where a monomial is a mapping or
        iterable of ``(name, exponent)`` pairs."""
        names = set()
        items = []
        for mono, c in mapping.items():
            pairs = dict(mono.items() if isinstance(mono, Mapping) else mono)
            for name, e in pairs.items():
                if e < 0:
                    raise ValueError("negative exponent")
                if e:
                    names.add(name)
            items.append((pairs, int(c)))
        gens = tuple(sorted(names, key=var_key))
        terms: Dict[int, int] = {}
        for pairs, c in items:
            k = _pack(pairs.get(v, 0) for v in gens)
            terms[k] = terms.get(k, 0) + c
        return _build(gens, terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> int:
        if self.gens:
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, 0)

    def monomials(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Terms as ``(exponents, coeff)`` in graded-lex order, largest first."""
        n = len(self.gens)
        items = [(_unpack(k, n), c) for k, c in self.terms.items()]
        items.sort(key=lambda it: (sum(it[0]), it[0]), reverse=True)
        return items

    def leading_term(self) -> Tuple[Tuple[int, ...], int]:
        n = len(self.gens)
        k = max(self.terms, key=lambda k: (sum(_unpack(k, n)), _unpack(k, n)))
        return _unpack(k, n), self.terms[k]

    def leading_coefficient(self) -> int:
        if not self.terms:
            return 0
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        n = len(self.gens)
        return max(sum(_unpack(k, n)) for k in self.terms)

    def degree(self, v: str) -> int:
        if not self.terms:
            return -1
        if v not in self.gens:
            return 0
        shift = _WIDTH * self.gens.index(v)
        return max((k >> shift) & _MASK for k in self.terms)

    def variables(self) -> Tuple[str, ...]:
        return self.gens

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        gens, a, b = _unify(self, other)
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + c
        return _build(gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.gens, {k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return Poly._raw(self.gens, {k: c * other for k, c in self.terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        gens, a, b = _unify(self, other)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return _build(gens, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return power(self, k)

    def __floordiv__(self, other):
        return exquo(self, _coerce(other))

    def __eq__(self, other):
        if isinstance(other, int):
            other = const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __call__(self, **assignment):
        return evaluate(self, assignment)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly({to_text(self)!r})"


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return const(x)
    return NotImplemented


def const(c: int) -> Poly:
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError(f"non-integer constant {c}")
        c = c.numerator
    c = int(c)
    return Poly._raw((), {0: c} if c else {})


def var(name: str) -> Poly:
    return Poly._raw((name,), {1: 1})


ZERO = Poly._raw((), {})
ONE = Poly._raw((), {0: 1})


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def power(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative exponent")
    result = ONE
    base = p
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


# -- text / json serialization ----------------------------------------------


def _mono_text(gens, exps) -> str:
    parts = []
    for v, e in zip(gens, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def to_text(p: Poly) -> str:
    """Canonical text: ``21*a1^2 + 2*a1*a3 + a3^2``."""
    if not p.terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.monomials()):
        mono = _mono_text(p.gens, exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def parse(text: str) -> Poly:
    """Parse a polynomial written with ``+ - * ^`` (``**`` also accepted),
    parentheses, integer literals and identifiers."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return const(node.value)
        if isinstance(node, ast.Name):
            return var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right)
                if not exp.is_constant() or exp.constant_value() < 0:
                    raise ValueError("exponent must be a non-negative integer")
                return power(walk(node.left), exp.constant_value())
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(walk(node.left), walk(node.right))
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    return walk(tree)


def to_json(p: Poly) -> list:
    return [
        {"coeff": str(c), "exps": {v: e for v, e in zip(p.gens, exps) if e}}
        for exps, c in p.monomials()
    ]


def from_json(data: Sequence[Mapping]) -> Poly:
    return Poly.from_dict({tuple(item["exps"].items()): int(item["coeff"]) for item in data})


def dumps(p: Poly) -> str:
    return json.dumps(to_json(p), sort_keys=True)


# -- evaluation and substitution ---------------------------------------------


def evaluate(p: Poly, assignment: Mapping[str, Coeff]):
    """Exact value of ``p`` at the point given by ``assignment``."""
    missing = [v for v in p.gens if v not in assignment]
    if missing:
        raise MissingVariable(f"no value for {', '.join(missing)}")
    n = len(p.gens)
    vals = [assignment[v] for v in p.gens]
    total = 0
    for k, c in p.terms.items():
        term = c
        for i in range(n):
            e = (k >> (_WIDTH * i)) & _MASK
            if e:
                term *= vals[i] ** e
        total += term
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


def univariate_coeffs(p: Poly, v: str) -> List[Poly]:
    """Coefficients of ``v**0, v**1, ...`` as polynomials in the other variables."""
    if not p.terms:
        return [ZERO]
    if v not in p.gens:
        return [p]
    i = p.gens.index(v)
    shift = _WIDTH * i
    low = (1 << shift) - 1
    rest = p.gens[:i] + p.gens[i + 1 :]
    buckets: Dict[int, Dict[int, int]] = {}
    for k, c in p.terms.items():
        e = (k >> shift) & _MASK
        nk = (k & low) | ((k >> (shift + _WIDTH)) << shift)
        buckets.setdefault(e, {})[nk] = c
    d = max(buckets)
    return [_build(rest, buckets[e]) if e in buckets else ZERO for e in range(d + 1)]


def from_univariate(coeffs: Sequence[Poly], v: str) -> Poly:
    x = var(v)
    result = ZERO
    for c in reversed(coeffs):
        result = result * x + c
    return result


def substitute(p: Poly, v: str, q: Poly) -> Poly:
    """Replace every occurrence of ``v`` in ``p`` by ``q`` and expand."""
    q = _coerce(q)
    if v not in p.gens:
        return p
    coeffs = univariate_coeffs(p, v)
    result = ZERO
    for c in reversed(coeffs):
        result = result * q + c
    return result


def substitute_fraction(p: Poly, v: str, num: Poly, den: int) -> Poly:
    """``den**deg_v(p) * p(v = num/den)``, which is again integral."""
    num = _coerce(num)
    coeffs = univariate_coeffs(p, v)
    d = len(coeffs) - 1
    result = ZERO
    for k, c in enumerate(coeffs):
        if c:
            result = result + c * power(num, k) * den ** (d - k)
    return result


def degree(p: Poly, v: str) -> int:
    return p.degree(v)


def derivative(p: Poly, v: str) -> Poly:
    coeffs = univariate_coeffs(p, v)
    return from_univariate([coeffs[k] * k for k in range(1, len(coeffs))], v)


# -- exact division ------------------------------------------------------------


def _int_content(p: Poly) -> int:
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def exquo(p: Poly, q: Poly) -> Poly:
    """Exact quotient ``p / q``; raises :class:`NotDivisible` otherwise."""
    p, q = _coerce(p), _coerce(q)
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return ZERO
    if q.is_constant():
        c = q.constant_value()
        out = {}
        for k, a in p.terms.items():
            quo, rem = divmod(a, c)
            if rem:
                raise NotDivisible(f"{p} is not divisible by {c}")
            out[k] = quo
        return Poly._raw(p.gens, out)
    v = q.gens[0]
    if v not in p.gens:
        raise NotDivisible(f"{p} is not divisible by {q}")
    pc = univariate_coeffs(p, v)
    qc = univariate_coeffs(q, v)
    quo = _uexquo(pc, qc)
    return from_univariate(quo, v)


def _trim(a: List[Poly]) -> List[Poly]:
    while len(a) > 1 and not a[-1].terms:
        a.pop()
    return a


def _uexquo(a: List[Poly], b: List[Poly]) -> List[Poly]:
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(a) - 1 < db:
        if any(c.terms for c in a):
            raise NotDivisible("degree of dividend below divisor")
        return [ZERO]
    quo = [ZERO] * (len(a) - db)
    for d in range(len(a) - 1 - db, -1, -1):
        top = a[d + db]
        if not top.terms:
            continue
        c = exquo(top, lc)
        quo[d] = c
        for j, bj in enumerate(b):
            if bj.terms:
                a[d + j] = a[d + j] - c * bj
    if any(c.terms for c in a):
        raise NotDivisible("nonzero remainder")
    return _trim(quo)


# -- univariate machinery over a polynomial coefficient ring --------------------


def _udeg(a: List[Poly]) -> int:
    if len(a) == 1 and not a[0].terms:
        return -1
    return len(a) - 1


def _prem(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    db = _udeg(b)
    r = list(a)
    lc = b[-1]
    e = len(a) - len(b) + 1
    while _udeg(r) >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lc for c in r]
        for j, bj in enumerate(b):
            if bj.terms:
                r[shift + j] = r[shift + j] - lr * bj
        r.pop()
        _trim(r)
        if not r:
            r = [ZERO]
        e -= 1
        if _udeg(r) < 0:
            break
    if e > 0:
        f = power(lc, e)
        r = [c * f for c in r]
    return _trim(r) if r else [ZERO]


def _ures(a: List[Poly], b: List[Poly]) -> Poly:
    """Resultant of two univariate polynomials with Poly coefficients via the
    subresultant remainder sequence (no content removal, exact divisions)."""
    da, db = _udeg(a), _udeg(b)
    if da < 0 or db < 0:
        return ZERO
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da & 1 and db & 1:
            s = -s
    if db == 0:
        return power(b[0], da) * s
    g = ONE
    h = ONE
    while True:
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        r = _prem(a, b)
        a = b
        if _udeg(r) < 0:
            return ZERO
        div = g * power(h, delta)
        b = [exquo(c, div) for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exquo(power(g, delta), power(h, delta - 1))
        da, db = _udeg(a), _udeg(b)
        if db == 0:
            if da == 1:
                return b[0] * s
            return exquo(power(b[0], da), power(h, da - 1)) * s


def resultant(p: Poly, q: Poly, v: str) -> Poly:
    """Resultant of ``p`` and ``q`` with respect to ``v``.

    Uses the convention ``res(p, q) = lc(p)**deg(q) * prod q(roots of p)``.
    """
    if not p.terms or not q.terms:
        raise ZeroPolynomial("resultant of the zero polynomial")
    return _ures(univariate_coeffs(p, v), univariate_coeffs(q, v))


def discriminant(p: Poly, v: str) -> Poly:
    """``(-1)**(n(n-1)/2) * res(p, dp/dv) / lc_v(p)``."""
    coeffs = univariate_coeffs(p, v)
    n = len(coeffs) - 1
    if n < 2 or not p.terms:
        raise DegreeTooLow(f"discriminant needs degree >= 2 in {v}, got {n}")
    res = _ures(coeffs, [coeffs[k] * k for k in range(1, n + 1)])
    d = exquo(res, coeffs[-1])
    return -d if (n * (n - 1) // 2) & 1 else d


# -- gcd, content and square-free splitting ------------------------------------


def _sign_normalize(p: Poly) -> Poly:
    if p.terms and p.leading_coefficient() < 0:
        return -p
    return p


def _content_in(p: Poly, v: str) -> Poly:
    g = ZERO
    for c in univariate_coeffs(p, v):
        if c.terms:
            g = _gcd_full(g, c)
            if g.is_constant() and abs(g.constant_value()) == 1:
                return ONE
    return g


def _upp(a: List[Poly]) -> List[Poly]:
    g = ZERO
    for c in a:
        if c.terms:
            g = _gcd_full(g, c)
    if g == ONE:
        return a
    return [exquo(c, g) for c in a]


def _gcd_full(p: Poly, q: Poly) -> Poly:
    """Gcd in Z[x1, ..., xn], integer content included, positive leading term."""
    if not p.terms:
        return _sign_normalize(q)
    if not q.terms:
        return _sign_normalize(p)
    if p.is_constant() and q.is_constant():
        return const(math.gcd(p.constant_value(), q.constant_value()))
    if p.is_constant():
        return const(math.gcd(p.constant_value(), _int_content(q)))
    if q.is_constant():
        return const(math.gcd(q.constant_value(), _int_content(p)))
    if p == q:
        return _sign_normalize(p)
    v = min(set(p.gens) | set(q.gens), key=var_key)
    if v not in p.gens:
        return _gcd_full(p, _content_in(q, v))
    if v not in q.gens:
        return _gcd_full(_content_in(p, v), q)
    cp = _content_in(p, v)
    cq = _content_in(q, v)
    a = [exquo(c, cp) for c in univariate_coeffs(p, v)]
    b = [exquo(c, cq) for c in univariate_coeffs(q, v)]
    c = _gcd_full(cp, cq)
    if _udeg(a) < _udeg(b):
        a, b = b, a
    while True:
        r = _prem(a, b)
        if _udeg(r) < 0:
            break
        if _udeg(r) == 0:
            b = [ONE]
            break
        a, b = b, _upp(r)
    g = from_univariate(_upp(b), v)
    return _sign_normalize(c * g)


def gcd(p: Poly, q: Poly) -> Poly:
    """Primitive, sign-normalized gcd; ``gcd(p, 0)`` is the primitive part of ``p``."""
    g = _gcd_full(_coerce(p), _coerce(q))
    if not g.terms:
        return g
    return content_primitive(g)[1]


def content_primitive(p: Poly) -> Tuple[int, Poly]:
    """Split ``p = content * primitive`` with the primitive part's leading
    coefficient positive (so the content carries the sign)."""
    p = _coerce(p)
    if not p.terms:
        raise ZeroPolynomial("content of the zero polynomial")
    c = _int_content(p)
    if p.leading_coefficient() < 0:
        c = -c
    return c, exquo(p, const(c))


def lcm_content(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _yun(p: Poly, v: str) -> List[Poly]:
    """Square-free factors ``a_1, a_2, ...`` of ``p`` (primitive in ``v``),
    with ``p = unit * prod a_i**i``."""
    dp = derivative(p, v)
    a0 = _gcd_full(p, dp)
    b = exquo(p, a0)
    c = exquo(dp, a0)
    d = c - derivative(b, v)
    factors = []
    while b.degree(v) > 0:
        a = _gcd_full(b, d)
        factors.append(a)
        b = exquo(b, a)
        c = exquo(d, a)
        d = c - derivative(b, v)
    return factors


def squarefree_split(p: Poly, v: Optional[str] = None) -> Tuple[Poly, Poly]:
    """Write ``p = s**2 * c`` with ``c`` square-free (integer content kept in ``c``).

    Starts from ``gcd(p, dp/dv)`` in ``v`` and recurses into the content with
    respect to ``v`` so that squared factors free of ``v`` are found too.
    """
    if not p.terms:
        raise ZeroPolynomial("square-free split of the zero polynomial")
    if p.is_constant():
        return ONE, p
    if v is None or v not in p.gens:
        v = p.gens[0]
    cont = _content_in(p, v)
    pp = exquo(p, cont)
    s = ONE
    for i, a in enumerate(_yun(pp, v), start=1):
        if i >= 2:
            s = s * power(a, i // 2)
    if not cont.is_constant():
        s2, _ = squarefree_split(cont)
        s = s * s2
    s = content_primitive(s)[1]
    return s, exquo(p, s * s)


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def poly_sqrt(p: Poly) -> Optional[Poly]:
    """Exact square root with positive leading coefficient, or ``None``."""
    p = _coerce(p)
    if not p.terms:
        return ZERO
    s = _sqrt(p)
    if s is None or s * s != p:
        return None
    return _sign_normalize(s)


def _sqrt(p: Poly) -> Optional[Poly]:
    if p.is_constant():
        r = _isqrt_exact(p.constant_value())
        return None if r is None else const(r)
    v = p.gens[0]
    coeffs = univariate_coeffs(p, v)
    n = len(coeffs) - 1
    if n & 1:
        return None
    low = next(i for i, c in enumerate(coeffs) if c.terms)
    if low & 1:
        return None
    h = n // 2
    top = _sqrt(coeffs[n])
    if top is None:
        return None
    two_top = top * 2
    s = [ZERO] * (h + 1)
    s[h] = top
    for k in range(h - 1, -1, -1):
        # coefficient of v**(h+k) in p - (partial s)**2
        acc = coeffs[h + k]
        for i in range(k + 1, h + 1):
            j = h + k - i
            if k < j <= h:
                acc = acc - s[i] * s[j]
        try:
            s[k] = exquo(acc, two_top)
        except NotDivisible:
            return None
    return from_univariate(s, v)


# -- homogeneous helpers --------------------------------------------------------


def is_homogeneous(p: Poly, gens: Sequence[str]) -> bool:
    """True when every term of ``p`` has the same total degree in ``gens``."""
    degs = set()
    idx = [p.gens.index(v) for v in gens if v in p.gens]
    for k in p.terms:
        degs.add(sum((k >> (_WIDTH * i)) & _MASK for i in idx))
    return len(degs) <= 1


def strip_pure_powers(p: Poly, v: str) -> Tuple[Poly, int]:
    """Remove the largest power ``v**e`` dividing ``p``; return ``(p / v**e, e)``."""
    if not p.terms or v not in p.gens:
        return p, 0
    coeffs = univariate_coeffs(p, v)
    e = next(i for i, c in enumerate(coeffs) if c.terms)
    if e == 0:
        return p, 0
    return from_univariate(coeffs[e:], v), e


# -- rational functions ----------------------------------------------------------


class RationalPoly:
    """Quotient of two polynomials, reduced by gcd and integer content, with a
    denominator whose leading coefficient is positive."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Poly, denominator: Poly = ONE):
        numerator = _coerce(numerator)
        denominator = _coerce(denominator)
        if not denominator.terms:
            raise ZeroDivisionError("zero denominator")
        if not numerator.terms:
            self.numerator, self.denominator = ZERO, ONE
            return
        g = _gcd_full(numerator, denominator)
        num = exquo(numerator, g)
        den = exquo(denominator, g)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        self.numerator = num
        self.denominator = den

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __mul__(self, other):
        if isinstance(other, (Poly, int)):
            other = RationalPoly(_coerce(other))
        return RationalPoly(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def substitute(self, v: str, q: Poly) -> "RationalPoly":
        return RationalPoly(substitute(self.numerator, v, q), substitute(self.denominator, v, q))

    def evaluate(self, assignment: Mapping[str, Coeff]) -> Fraction:
        return Fraction(evaluate(self.numerator, assignment)) / evaluate(self.denominator, assignment)

    def __str__(self):
        if self.denominator == ONE:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def __repr__(self):
        return f"RationalPoly({self})"


# -- rational roots of univariate polynomials -------------------------------------


def _ilist(p: Poly, v: str) -> List[int]:
    return [c.constant_value() for c in univariate_coeffs(p, v)]


def _ieval(a: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _iprem_neg(a: List[int], b: List[int]) -> List[int]:
    """``-rem(a, b)`` scaled by a positive integer, content removed."""
    lc = b[-1]
    scale = abs(lc)
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * scale for c in r]
        f = lr * scale // lc
        for j, bj in enumerate(b):
            r[shift + j] -= f * bj
        r.pop()
        while len(r) > 1 and r[-1] == 0:
            r.pop()
    g = 0
    for c in r:
        g = math.gcd(g, c)
    if g > 1:
        r = [c // g for c in r]
    return [-c for c in r]


def _sturm_chain(a: List[int]) -> List[List[int]]:
    chain = [a, [k * c for k, c in enumerate(a)][1:]]
    while len(chain[-1]) > 1:
        r = _iprem_neg(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(r)
    return chain


def _homog(a: Sequence[int], num: int, den: int) -> int:
    """``den**deg * a(num/den)``: same sign as ``a(num/den)`` since ``den > 0``."""
    acc = 0
    dpow = 1
    for c in reversed(a):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    count = 0
    prev = 0
    for p in chain:
        s = _homog(p, num, den)
        if s:
            s = 1 if s > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def rational_roots(p: Poly, v: Optional[str] = None) -> List[Fraction]:
    """All rational roots of a univariate integer polynomial, ascending.

    The square-free part is isolated with a Sturm sequence; each isolating
    interval is bisected until it is shorter than ``1/lc``, after which the
    only possible rational root ``k/lc`` is tested exactly.
    """
    p = _coerce(p)
    if not p.terms:
        raise ZeroPolynomial("every number is a root of 0")
    if p.is_constant():
        return []
    if len(p.gens) != 1 or (v is not None and p.gens != (v,)):
        raise ValueError(f"expected a univariate polynomial, got variables {p.gens}")
    v = p.gens[0]
    sqf = exquo(p, _gcd_full(p, derivative(p, v)))
    a = _ilist(content_primitive(sqf)[1], v)
    roots: List[Fraction] = []
    if a[0] == 0:
        roots.append(Fraction(0))
        a = a[1:]
    if len(a) == 1:
        return roots
    lc = abs(a[-1])
    bound = Fraction(1 + max(abs(c) for c in a[:-1]) // lc + 1)
    chain = _sturm_chain(a)
    stack = [(-bound, bound, _sign_changes(chain, -bound), _sign_changes(chain, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count <= 0:
            continue
        if count == 1 and (hi - lo) * lc < 1:
            k_lo = math.ceil(lo * lc)
            k_hi = math.floor(hi * lc)
            for k in range(k_lo, k_hi + 1):
                x = Fraction(k, lc)
                if lo < x <= hi and _ieval(a, x) == 0:
                    roots.append(x)
            continue
        mid = (lo + hi) / 2
        vmid = _sign_changes(chain, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    return sorted(roots)
