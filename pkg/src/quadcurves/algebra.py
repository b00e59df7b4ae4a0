"""Exact polynomial algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  :class:`UniPoly` is a dense univariate polynomial in ``x``;
:class:`BiPoly` is a sparse bivariate polynomial in ``x`` and ``y`` keyed by
exponent pairs ``(i, j)`` for ``x**i * y**j``.  Both are immutable.
"""
from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError, ResourceError

MAX_TERMS = 10**6

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: the symbolic path never rounds.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_size(n_terms: int) -> None:
    if n_terms > MAX_TERMS:
        raise ResourceError(f"polynomial with {n_terms} terms exceeds cap of {MAX_TERMS}")


class UniPoly:
    """Dense polynomial in ``x``; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        _check_size(len(c))
        self._c: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> "UniPoly":
        return cls((value,))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def monic(self) -> "UniPoly":
        if not self._c:
            return self
        return self.scale(1 / self.leading)

    def scale(self, s) -> "UniPoly":
        s = as_fraction(s)
        return UniPoly(s * v for v in self._c)

    def derivative(self) -> "UniPoly":
        return UniPoly(k * v for k, v in enumerate(self._c) if k > 0)

    def __call__(self, x):
        """Horner evaluation; exact for Fraction input, float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for v in reversed(self._c):
                acc = acc * x + v
            return acc
        acc = 0.0 * x
        for v in reversed(self._c):
            acc = acc * x + float(v)
        return acc

    def to_bipoly(self) -> "BiPoly":
        return BiPoly({(i, 0): v for i, v in enumerate(self._c)})

    def _coerce(self, other) -> Optional["UniPoly"]:
        if isinstance(other, UniPoly):
            return other
        try:
            return UniPoly.constant(as_fraction(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return UniPoly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-v for v in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return UniPoly()
        _check_size(len(self._c) + len(o._c))
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(o._c):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(("UniPoly", self._c))

    def __repr__(self):
        return f"UniPoly({[str(v) for v in self._c]})"

    def __str__(self):
        return str(self.to_bipoly())


Monomial = Tuple[int, int]


def _grlex_key(m: Monomial) -> Tuple[int, int]:
    # graded lex, x > y
    return (m[0] + m[1], m[0])


class BiPoly:
    """Sparse polynomial in ``x, y`` stored as ``{(i, j): coefficient}``."""

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        t: Dict[Monomial, Fraction] = {}
        if terms:
            for (i, j), v in terms.items():
                if i < 0 or j < 0:
                    raise DomainError(f"negative exponent in monomial {(i, j)}")
                v = as_fraction(v)
                if v != 0:
                    t[(int(i), int(j))] = v
        _check_size(len(t))
        self._t = t

    @classmethod
    def _raw(cls, t: Dict[Monomial, Fraction]) -> "BiPoly":
        # trusted constructor: t already has no zero coefficients
        _check_size(len(t))
        p = cls.__new__(cls)
        p._t = t
        return p

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, value) -> "BiPoly":
        return cls({(0, 0): value})

    @classmethod
    def from_y_coeffs(cls, coeffs: Sequence[UniPoly]) -> "BiPoly":
        """Build ``sum_j coeffs[j](x) * y**j``."""
        t = {}
        for j, u in enumerate(coeffs):
            for i, v in enumerate(u.coeffs):
                if v != 0:
                    t[(i, j)] = v
        return cls._raw(t)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._t)

    def coeff(self, i: int, j: int) -> Fraction:
        return self._t.get((i, j), Fraction(0))

    @property
    def total_degree(self) -> int:
        """Total degree, ``-1`` for zero."""
        return max((i + j for i, j in self._t), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == "x" else 1
        return max((m[k] for m in self._t), default=-1)

    def y_coeff(self, j: int) -> UniPoly:
        """Coefficient of ``y**j`` as a polynomial in ``x``."""
        deg = max((i for (i, jj) in self._t if jj == j), default=-1)
        return UniPoly(self._t.get((i, j), 0) for i in range(deg + 1))

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        m = max(self._t, key=_grlex_key)
        return m, self._t[m]

    def _coerce(self, other) -> Optional["BiPoly"]:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            return other.to_bipoly()
        try:
            return BiPoly.constant(as_fraction(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for m, v in o._t.items():
            s = t.get(m, 0) + v
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return BiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({m: -v for m, v in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "BiPoly":
        s = as_fraction(s)
        if s == 0:
            return BiPoly()
        return BiPoly._raw({m: s * v for m, v in self._t.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        _check_size(len(self._t))
        _check_size(len(o._t))
        t: Dict[Monomial, Fraction] = {}
        for (i1, j1), a in self._t.items():
            for (i2, j2), b in o._t.items():
                m = (i1 + i2, j1 + j2)
                t[m] = t.get(m, 0) + a * b
        return BiPoly._raw({m: v for m, v in t.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power")
        out = BiPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, var: str = "x") -> "BiPoly":
        if var == "x":
            return BiPoly._raw({(i - 1, j): i * v for (i, j), v in self._t.items() if i > 0})
        if var == "y":
            return BiPoly._raw({(i, j - 1): j * v for (i, j), v in self._t.items() if j > 0})
        raise DomainError(f"unknown variable {var!r}")

    def exact_div(self, divisor: "BiPoly") -> Optional["BiPoly"]:
        """Quotient ``q`` with ``self == q * divisor``, or ``None``."""
        return bipoly_exact_div(self, divisor)

    def __call__(self, x, y):
        return bipoly_evaluate(self, x, y)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for m in sorted(self._t, key=_grlex_key, reverse=True):
            v = self._t[m]
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in (("x", m[0]), ("y", m[1]))
                if e > 0
            )
            mag = abs(v)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if v < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = BiPoly.x()
Y = BiPoly.y()


def poly_derivative(f, var: str = "x"):
    """Formal partial derivative of a UniPoly (``x`` only) or BiPoly."""
    if isinstance(f, UniPoly):
        if var != "x":
            raise DomainError("UniPoly only has the variable x")
        return f.derivative()
    return f.derivative(var)


def bipoly_divmod(f: BiPoly, g: BiPoly) -> Tuple[BiPoly, BiPoly]:
    """Graded-lex (x > y) division: ``f == q * g + r`` with no term of ``r``
    divisible by the leading monomial of ``g``."""
    if g.is_zero():
        raise DomainError("division by the zero polynomial")
    (gi, gj), gc = g.leading_term()
    rest = dict(f.items())
    quot: Dict[Monomial, Fraction] = {}
    rem: Dict[Monomial, Fraction] = {}
    g_terms = list(g.items())
    while rest:
        m_r = max(rest, key=_grlex_key)
        ri, rj = m_r
        rc = rest[m_r]
        if ri < gi or rj < gj:
            rem[m_r] = rest.pop(m_r)
            continue
        m = (ri - gi, rj - gj)
        c = rc / gc
        quot[m] = quot.get(m, 0) + c
        for (i, j), v in g_terms:
            key = (i + m[0], j + m[1])
            s = rest.get(key, 0) - c * v
            if s:
                rest[key] = s
            else:
                rest.pop(key, None)
        _check_size(len(rest))
    return BiPoly._raw({m: v for m, v in quot.items() if v}), BiPoly._raw(rem)


def bipoly_exact_div(f: BiPoly, g: BiPoly) -> Optional[BiPoly]:
    """Exact quotient ``f / g`` or ``None`` when ``g`` does not divide ``f``.

    The quotient from graded-lex reduction is confirmed by multiplying back.
    """
    q, r = bipoly_divmod(f, g)
    if not r.is_zero() or q * g != f:
        return None
    return q


def bipoly_evaluate(f: BiPoly, x, y):
    """Evaluate ``f(x, y)``: nested Horner in ``x`` then ``y``.

    Exact when both inputs are ints/Fractions; otherwise coefficients are
    converted to float, so numpy arrays broadcast.
    """
    exact = isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction))
    conv = (lambda v: v) if exact else float
    by_j: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), v in f.items():
        by_j.setdefault(j, {})[i] = v
    zero = Fraction(0) if exact else 0.0 * x * y
    if not by_j:
        return zero
    acc = zero
    for j in range(max(by_j), -1, -1):
        row = by_j.get(j, {})
        inner = zero
        if row:
            for i in range(max(row), -1, -1):
                inner = inner * x + conv(row.get(i, 0))
        acc = acc * y + inner
    return acc


def lie_derivative(P: BiPoly, Q: BiPoly, g: BiPoly) -> BiPoly:
    """``P * dg/dx + Q * dg/dy``."""
    return P * g.derivative("x") + Q * g.derivative("y")


def divergence(P: BiPoly, Q: BiPoly) -> BiPoly:
    return P.derivative("x") + Q.derivative("y")
