"""Exact and approximate scalar rings.

Rationals are :class:`fractions.Fraction`. On top of that this module adds
elements of a quadratic extension ``Q(sqrt d)`` and sparse Laurent
polynomials in one variable ``t``. Complex floats are plain Python
``complex`` values. All rings share the usual arithmetic operators, so the
determinant and Heron code elsewhere is written once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Any, Iterable, Mapping, Union

NEG_INF = -math.inf
"""Top degree of the zero Laurent polynomial."""

COMPLEX_ATOL = 1e-10

Scalar = Union[int, Fraction, complex, "QuadExt", "LaurentPoly"]


class RingError(ArithmeticError):
    """Raised for undefined ring operations (mixed extensions, inexact division)."""


def as_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _squarefree(d: int) -> bool:
    m = abs(d)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


# ---------------------------------------------------------------------------
# Q(sqrt d)
# ---------------------------------------------------------------------------


class QuadExt:
    """Element ``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Any = 0, b: Any = 0, d: int = -15) -> None:
        if d in (0, 1) or not _squarefree(d):
            raise ValueError(f"d must be squarefree and not 0 or 1, got {d}")
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))
        object.__setattr__(self, "d", int(d))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt_of_rational(cls, r: Any, d: int) -> QuadExt:
        """Return ``sqrt(r)`` written as ``c*sqrt(d)``; fails if ``r/d`` is not a rational square."""
        r = as_fraction(r)
        c2 = r / d
        if c2 < 0:
            raise RingError(f"sqrt({r}) is not a rational multiple of sqrt({d})")
        num, den = c2.numerator, c2.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            raise RingError(f"sqrt({r}) is not a rational multiple of sqrt({d})")
        return cls(0, Fraction(rn, rd), d)

    def _coerce(self, other: Any) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise RingError(f"mixed extensions sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __complex__(self) -> complex:
        root = math.sqrt(abs(self.d))
        if self.d < 0:
            return complex(float(self.a), float(self.b) * root)
        return complex(float(self.a) + float(self.b) * root, 0.0)

    def __add__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self) -> QuadExt:
        return self

    def __sub__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + o.a * self.b,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        p = self * o.conjugate()
        return QuadExt(p.a / nrm, p.b / nrm, self.d)

    def __rtruediv__(self, other: Any) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> QuadExt:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d})"


# ---------------------------------------------------------------------------
# Laurent polynomials in t over Q
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k t^k`` with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Any] | Iterable[tuple[int, Any]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = as_fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + c
        object.__setattr__(self, "_terms", {e: c for e, c in sorted(acc.items()) if c})

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def constant(cls, c: Any) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Any, e: int) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def t(cls) -> LaurentPoly:
        return cls({1: 1})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def top_degree(self) -> int | float:
        if not self._terms:
            return NEG_INF
        return max(self._terms)

    def low_degree(self) -> int | float:
        if not self._terms:
            return math.inf
        return min(self._terms)

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[max(self._terms)]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def evaluate(self, t: Any) -> Any:
        return sum((c * t**e for e, c in self._terms.items()), Fraction(0))

    @staticmethod
    def _coerce(other: Any) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other: Any) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> LaurentPoly:
        return self

    def __sub__(self, other: Any) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise RingError("only monomials are invertible in the Laurent ring")
            ((e, c),) = self._terms.items()
            return LaurentPoly({e * k: c**k})
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod_exact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient in ``Q[t, 1/t]``; raises :class:`RingError` on a nonzero remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return self
        # Shift both to genuine polynomials with nonzero constant term.
        a_low, b_low = int(self.low_degree()), int(other.low_degree())
        num = {e - a_low: c for e, c in self._terms.items()}
        den = {e - b_low: c for e, c in other._terms.items()}
        den_deg = max(den)
        den_lead = den[den_deg]
        quot: dict[int, Fraction] = {}
        while num:
            top = max(num)
            if top < den_deg:
                raise RingError(f"inexact Laurent division: {self} / {other}")
            q = num[top] / den_lead
            shift = top - den_deg
            quot[shift] = q
            for e, c in den.items():
                k = e + shift
                v = num.get(k, Fraction(0)) - q * c
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        return LaurentPoly({e + a_low - b_low: c for e, c in quot.items()})

    def __truediv__(self, other: Any) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly({e: c / other for e, c in self._terms.items()})
        if isinstance(other, LaurentPoly):
            return self.divmod_exact(other)
        return NotImplemented

    def __rtruediv__(self, other: Any) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.divmod_exact(self)

    def __eq__(self, other: Any) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.coeff(0))
        return hash(tuple(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def laurent_top_degree(p: LaurentPoly) -> int | float:
    return p.top_degree()


# ---------------------------------------------------------------------------
# ring helpers
# ---------------------------------------------------------------------------


def ring_of(x: Any) -> str:
    if isinstance(x, (bool,)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, QuadExt):
        return "quadext" if not x.is_rational() else "rational"
    if isinstance(x, LaurentPoly):
        return "laurent"
    if isinstance(x, (float, complex)):
        return "complex"
    try:
        import numpy as np

        if isinstance(x, (np.floating, np.complexfloating)):
            return "complex"
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"unsupported scalar {x!r}")


def common_ring(values: Iterable[Any]) -> str:
    """Smallest ring holding all values; quadext and laurent never mix."""
    rings = {ring_of(v) for v in values}
    rings.discard("rational")
    if not rings:
        return "rational"
    if rings == {"complex"} or "complex" in rings and rings <= {"complex", "quadext"}:
        return "complex"
    if len(rings) > 1:
        raise RingError(f"incompatible rings {sorted(rings)}")
    return rings.pop()


def is_exact(x: Any) -> bool:
    return isinstance(x, (int, Fraction, QuadExt, LaurentPoly))


def is_zero(x: Any, atol: float = COMPLEX_ATOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= atol


def scalars_equal(x: Any, y: Any, atol: float = COMPLEX_ATOL) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(complex(x) - complex(y)) <= atol


# ---------------------------------------------------------------------------
# JSON codecs
# ---------------------------------------------------------------------------


def encode_scalar(x: Any) -> Any:
    """JSON encoding: rationals as "p/q" strings, Q(sqrt d) as an object,
    Laurent polynomials as exponent->coefficient maps, complex as [re, im]."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, QuadExt):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    if isinstance(x, LaurentPoly):
        return {str(e): str(c) for e, c in x._terms.items()}
    z = complex(x)
    return [z.real, z.imag]


def decode_scalar(obj: Any, ring: str | None = None) -> Any:
    if ring == "laurent" or (ring is None and isinstance(obj, dict) and "d" not in obj):
        if not isinstance(obj, dict):
            return LaurentPoly.constant(as_fraction(obj))
        return LaurentPoly({int(e): as_fraction(c) for e, c in obj.items()})
    if isinstance(obj, dict):
        return QuadExt(as_fraction(obj["a"]), as_fraction(obj["b"]), int(obj["d"]))
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex scalar must be [re, im], got {obj!r}")
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        value = as_fraction(obj)
        if ring == "quadext":
            return QuadExt(value, 0)
        if ring == "complex":
            return complex(value)
        return value
    if isinstance(obj, float):
        if ring in (None, "complex"):
            return complex(obj)
        raise ValueError(f"float {obj!r} is not allowed in an exact ring")
    raise ValueError(f"cannot decode scalar {obj!r}")
