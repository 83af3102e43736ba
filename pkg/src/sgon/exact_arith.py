"""Exact scalars: rationals, reals over a symbol basis, and real quadratic numbers.

Rationals are :class:`fractions.Fraction` throughout.  A :class:`SymReal` is a
rational coefficient vector over a :class:`SymbolBasis` whose symbols are
*declared* linearly independent over Q.  That declaration is trusted: every
exactness guarantee downstream (zero tests, rational dimensions, kernels) is
conditional on it.  Signs and absolute values of irrational SymReals are
decided numerically with guard digits; a value too close to zero raises
:class:`AmbiguousSign` instead of guessing.

:class:`QuadNum` is a genuine field element ``p + q*sqrt(D)`` with exact
sign, inverse and floor.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import mpmath

from .errors import (
    AmbiguousSign,
    DegenerateNorm,
    DivisionByZero,
    FieldMismatch,
    InsufficientApproximation,
    SchemaError,
)

Rational = Fraction
RationalLike = Union[int, Fraction]

DEFAULT_PRECISION = 50
GUARD_DIGITS = 10

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced Fraction."""
    if isinstance(text, bool):
        raise SchemaError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise SchemaError(f"not a rational string: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise SchemaError(f"not a rational string: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SchemaError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def significant_digits(approx: str) -> int:
    mantissa = approx.strip().lower().split("e")[0].lstrip("+-").replace(".", "")
    return len(mantissa.lstrip("0")) or 1


# 110 significant digits each.
DEFAULT_SYMBOLS: dict[str, str] = {
    "1": "1.0",
    "sqrt2": "1.4142135623730950488016887242096980785696718753769480731766797379907324784621070388503875343276415727350138462",
    "sqrt3": "1.7320508075688772935274463415058723669428052538103806280558069794519330169088000370811461867572485756756261414",
    "sqrt5": "2.2360679774997896964091736687312762354406183596115257242708972454105209256378048994144144083787822749695081762",
    "pi": "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679821480865",
    "e": "2.7182818284590452353602874713526624977572470936999595749669676277240766303535475945713821785251664274274663919",
}


@dataclass(frozen=True)
class SymbolBasis:
    """Ordered symbols ``(name, decimal approximation)``; the first is the constant 1."""

    names: tuple[str, ...]
    approx: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise SchemaError("symbol basis must be nonempty")
        if len(self.names) != len(self.approx):
            raise SchemaError("symbol names and approximations differ in length")
        if self.names[0] != "1":
            raise SchemaError("first symbol must be the constant '1'")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("symbol names must be unique")
        for name, a in zip(self.names, self.approx):
            try:
                mpmath.mpf(a)
            except (ValueError, TypeError) as exc:
                raise SchemaError(f"bad approximation for symbol {name!r}: {a!r}") from exc

    @classmethod
    def from_names(cls, names: Iterable[str], approx: Mapping[str, str] | None = None) -> SymbolBasis:
        """Build a basis from names, looking approximations up in ``approx`` then the default table."""
        table = dict(DEFAULT_SYMBOLS)
        if approx:
            table.update(approx)
        names = list(names)
        if "1" in names:
            names.remove("1")
        names.insert(0, "1")
        missing = [n for n in names if n not in table]
        if missing:
            raise SchemaError(f"no approximation known for symbols {missing}")
        return cls(tuple(names), tuple(table[n] for n in names))

    @classmethod
    def default(cls) -> SymbolBasis:
        return cls(tuple(DEFAULT_SYMBOLS), tuple(DEFAULT_SYMBOLS.values()))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"unknown symbol {name!r}") from None

    def digits(self, i: int) -> int:
        if i == 0:
            return 10**9  # the constant is exact
        return significant_digits(self.approx[i])

    def values(self, precision: int) -> tuple[mpmath.mpf, ...]:
        """Symbol values as mpf at ``precision`` + guard digits."""
        for i in range(1, self.size):
            if self.digits(i) < precision:
                raise InsufficientApproximation(
                    f"symbol {self.names[i]!r} has {self.digits(i)} digits, {precision} requested"
                )
        return _symbol_values(self.approx, precision + GUARD_DIGITS)

    def zero(self) -> SymReal:
        return SymReal((Fraction(0),) * self.size, self)

    def const(self, value: RationalLike) -> SymReal:
        coeffs = [Fraction(0)] * self.size
        coeffs[0] = Fraction(value)
        return SymReal(tuple(coeffs), self)

    def real(self, terms: Mapping[str, RationalLike | str]) -> SymReal:
        """SymReal from ``{symbol name: coefficient}``."""
        coeffs = [Fraction(0)] * self.size
        for name, c in terms.items():
            coeffs[self.index(name)] += parse_rational(c)
        return SymReal(tuple(coeffs), self)

    def from_coeffs(self, coeffs: Sequence[RationalLike | str]) -> SymReal:
        if len(coeffs) != self.size:
            raise SchemaError(f"expected {self.size} coefficients, got {len(coeffs)}")
        return SymReal(tuple(parse_rational(c) for c in coeffs), self)


@lru_cache(maxsize=64)
def _symbol_values(approx: tuple[str, ...], dps: int) -> tuple[mpmath.mpf, ...]:
    with mpmath.workdps(dps):
        return tuple(mpmath.mpf(a) for a in approx)


class SymReal:
    """A real number as a rational combination of basis symbols.

    Only Q-linear operations are supported: addition, negation, and scaling
    by rationals.
    """

    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs: tuple[Fraction, ...], basis: SymbolBasis):
        if len(coeffs) != basis.size:
            raise SchemaError(f"expected {basis.size} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs
        self.basis = basis

    def _check(self, other: SymReal) -> None:
        if other.basis is not self.basis and other.basis != self.basis:
            raise TypeError("SymReals over different symbol bases")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.basis.const(other)
        if not isinstance(other, SymReal):
            return NotImplemented
        self._check(other)
        return SymReal(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.basis)

    __radd__ = __add__

    def __neg__(self):
        return SymReal(tuple(-a for a in self.coeffs), self.basis)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return SymReal(tuple(a * k for a in self.coeffs), self.basis)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        if k == 0:
            raise DivisionByZero("division of SymReal by zero")
        return self * (Fraction(1) / Fraction(k))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.basis.const(other)
        if not isinstance(other, SymReal):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def eval(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Numeric value at ``precision`` digits (computed with guard digits)."""
        if precision < 16:
            raise ValueError("precision must be at least 16 digits")
        need = [i for i in self.support() if i]
        if not need:
            return mpmath.mpf(self.coeffs[0].numerator) / self.coeffs[0].denominator
        vals = self.basis.values(precision)
        with mpmath.workdps(precision + GUARD_DIGITS):
            total = mpmath.mpf(0)
            for i in self.support():
                c = self.coeffs[i]
                total += vals[i] * c.numerator / c.denominator
            return +total

    def sign(self, precision: int = DEFAULT_PRECISION) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        v = self.eval(precision)
        if abs(v) < mpmath.mpf(10) ** (-precision + 5):
            raise AmbiguousSign(f"cannot certify the sign of {self} at {precision} digits")
        return 1 if v > 0 else -1

    def abs_eval(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        if self.is_zero():
            return mpmath.mpf(0)
        self.sign(precision)
        return abs(self.eval(precision))

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        return f"SymReal({self})"

    def __str__(self):
        parts = []
        for name, c in zip(self.basis.names, self.coeffs):
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if name == "1":
                body = format_rational(mag)
            elif mag == 1:
                body = name
            else:
                body = f"{format_rational(mag)}*{name}"
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out


def symreal_eval(x: SymReal, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    return x.eval(precision)


# ---------------------------------------------------------------------------
# Real quadratic fields


@lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if it is not a square."""
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadNum:
    """``p + q*sqrt(D)`` with D squarefree; D = 1 is plain Q (q is folded into p)."""

    p: Fraction
    q: Fraction
    D: int

    def __post_init__(self):
        if not is_squarefree(self.D):
            raise SchemaError(f"D must be a squarefree positive integer, got {self.D}")
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.D == 1 and self.q:
            object.__setattr__(self, "p", self.p + self.q)
            object.__setattr__(self, "q", Fraction(0))

    @classmethod
    def rational(cls, x: RationalLike, D: int = 1) -> QuadNum:
        return cls(Fraction(x), Fraction(0), D)

    @classmethod
    def from_strings(cls, pair: Sequence[str], D: int) -> QuadNum:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"quadratic number must be a pair of rational strings, got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]), D)

    def to_strings(self) -> list[str]:
        return [format_rational(self.p), format_rational(self.q)]

    def _lift(self, other) -> QuadNum:
        if isinstance(other, QuadNum):
            if other.D != self.D:
                if other.q == 0 and other.D == 1:
                    return QuadNum(other.p, 0, self.D)
                if self.q == 0 and self.D == 1:
                    raise _Relift(other.D)
                raise FieldMismatch(f"cannot mix Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(Fraction(other), Fraction(0), self.D)
        raise TypeError

    def _binary(self, other, op):
        try:
            o = self._lift(other)
        except FieldMismatch:
            raise
        except TypeError:
            return NotImplemented
        except _Relift as r:
            return op(QuadNum(self.p, 0, r.D), other)
        return op(self, o)

    def __add__(self, other):
        return self._binary(other, lambda x, y: QuadNum(x.p + y.p, x.q + y.q, x.D))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: QuadNum(x.p - y.p, x.q - y.q, x.D))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadNum(-self.p, -self.q, self.D)

    def __mul__(self, other):
        return self._binary(
            other,
            lambda x, y: QuadNum(x.p * y.p + x.q * y.q * x.D, x.p * y.q + x.q * y.p, x.D),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x * y.inv())

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        out = QuadNum(Fraction(1), Fraction(0), self.D)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.q == 0

    def conj(self) -> QuadNum:
        return QuadNum(self.p, -self.q, self.D)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.D

    def inv(self) -> QuadNum:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.norm()
        if n == 0:
            raise DegenerateNorm(f"p^2 - q^2 D vanished for nonzero {self}")
        return QuadNum(self.p / n, -self.q / n, self.D)

    def sign(self) -> int:
        """Exact sign of ``p + q*sqrt(D)``."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: whichever of p^2, q^2 D is larger wins
        pp, qq = self.p * self.p, self.q * self.q * self.D
        return sp if pp > qq else sq

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadNum):
            if self.D != other.D:
                return self.q == 0 and other.q == 0 and self.p == other.p
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.D))

    def floor(self) -> int:
        """Exact floor, located numerically then confirmed by exact comparisons."""
        if self.q == 0:
            return math.floor(self.p)
        with mpmath.workdps(30):
            guess = int(mpmath.floor(self.to_mpf(30)))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def to_mpf(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mpmath.workdps(precision + GUARD_DIGITS):
            v = mpmath.mpf(self.p.numerator) / self.p.denominator
            if self.q:
                v += mpmath.sqrt(self.D) * self.q.numerator / self.q.denominator
            return +v

    def __float__(self):
        return float(self.to_mpf(16))

    def __repr__(self):
        return f"QuadNum({format_rational(self.p)}, {format_rational(self.q)}, D={self.D})"

    def __str__(self):
        if self.q == 0:
            return format_rational(self.p)
        s = f"sqrt({self.D})" if abs(self.q) == 1 else f"{format_rational(abs(self.q))}*sqrt({self.D})"
        if self.p == 0:
            return ("-" if self.q < 0 else "") + s
        return f"{format_rational(self.p)} {'-' if self.q < 0 else '+'} {s}"


class _Relift(Exception):
    def __init__(self, D: int):
        self.D = D


def quad_inv(x: QuadNum) -> QuadNum:
    return x.inv()


def quad_sign(x: QuadNum) -> int:
    return x.sign()
