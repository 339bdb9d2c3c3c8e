"""Exact rational arithmetic: t-polynomials, truncated power series in x,
and polynomials in the part/first-factor markers u and v.

Scalars are :class:`fractions.Fraction`.  Internally, integral coefficients
are kept as plain ``int`` because that is several times faster; every public
accessor hands back a ``Fraction``.

Three nested containers are provided:

``TPoly``
    polynomial in ``t``.
``Series``
    power series in ``x`` truncated at a fixed order ``N`` (inclusive),
    with ``TPoly`` coefficients.
``UVPoly``
    polynomial in ``u`` and ``v`` with ``Series`` coefficients.  Degrees in
    ``u`` and ``v`` are capped at the truncation order: every part and
    every letter of a first factor contributes at least one ``x``, so
    larger powers cannot reach a coefficient of ``x^n`` with ``n <= N``.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import NonUnitDenominator, NonzeroConstantTerm, OrderMismatchWarning

Rat = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rat",
    "TPoly",
    "Series",
    "UVPoly",
    "series_of_rational",
    "series_exp",
    "uv_derivative",
    "uv_substitute",
]


def _norm(c):
    """Canonical internal form of a scalar: ``int`` when integral."""
    if type(c) is int:
        return c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _is_scalar(obj) -> bool:
    return isinstance(obj, Rational)


# --- raw kernels on tuples of scalars --------------------------------------


def _trim(lst):
    n = len(lst)
    while n and not lst[n - 1]:
        n -= 1
    return tuple(_norm(c) for c in lst[:n])


def _tadd(p, q):
    if len(p) < len(q):
        p, q = q, p
    if not q:
        return p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _tscale(p, c):
    if not c:
        return ()
    if c == 1:
        return p
    return tuple(_norm(a * c) for a in p)


def _tmul(p, q):
    if not p or not q:
        return ()
    if len(p) == 1:
        return _tscale(q, p[0])
    if len(q) == 1:
        return _tscale(p, q[0])
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _accumulate(acc, p, q):
    """acc += p*q, acc a mutable list of scalars grown as needed."""
    need = len(p) + len(q) - 1
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                acc[i + j] += a * b


def _series_mul(a, b, order):
    """Truncated product of two raw series (tuples of raw t-polys)."""
    nz_a = [(i, p) for i, p in enumerate(a) if p]
    nz_b = [(j, q) for j, q in enumerate(b) if q]
    acc = [[] for _ in range(order + 1)]
    for i, p in nz_a:
        for j, q in nz_b:
            n = i + j
            if n > order:
                break
            _accumulate(acc[n], p, q)
    return tuple(_trim(c) for c in acc)


def _series_add(a, b, sign=1):
    out = []
    for p, q in zip(a, b):
        if sign == 1:
            out.append(_tadd(p, q))
        else:
            out.append(_tadd(p, _tscale(q, -1)))
    return tuple(out)


def _min_order(a: int, b: int) -> int:
    if a != b:
        warnings.warn(
            f"combining truncation orders {a} and {b}; result keeps order {min(a, b)}",
            OrderMismatchWarning,
            stacklevel=3,
        )
    return min(a, b)


# --- TPoly -------------------------------------------------------------------


class TPoly:
    """Polynomial in ``t`` with exact rational coefficients. Immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Sequence[Scalar], Mapping[int, Scalar], Scalar] = ()):
        if _is_scalar(coeffs):
            coeffs = (coeffs,)
        if isinstance(coeffs, Mapping):
            if any(d < 0 for d in coeffs):
                raise ValueError("negative t-degree")
            dense = [0] * (max(coeffs, default=-1) + 1)
            for d, c in coeffs.items():
                dense[d] = _norm(c)
            coeffs = dense
        self._c = _trim([_norm(c) for c in coeffs])

    @classmethod
    def _raw(cls, c: tuple) -> "TPoly":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def t(cls) -> "TPoly":
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "TPoly":
        return cls({degree: coeff})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        """Nonzero coefficients keyed by t-degree."""
        return {d: Fraction(c) for d, c in enumerate(self._c) if c}

    @property
    def dense(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self._c)

    @property
    def degree(self) -> float:
        """Degree in t; ``-math.inf`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else -math.inf

    def __getitem__(self, d: int) -> Fraction:
        if 0 <= d < len(self._c):
            return Fraction(self._c[d])
        return Fraction(0)

    @property
    def constant(self) -> Fraction:
        return self[0]

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self):
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, TPoly):
            return other
        if _is_scalar(other):
            return TPoly._raw(_trim([_norm(other)]))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TPoly._raw(_tadd(self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        return TPoly._raw(_tscale(self._c, -1))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TPoly._raw(_tadd(self._c, _tscale(other._c, -1)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            return TPoly._raw(_tscale(self._c, _norm(other)))
        if isinstance(other, TPoly):
            return TPoly._raw(_tmul(self._c, other._c))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return TPoly._raw(_tscale(self._c, _norm(Fraction(1) / Fraction(other))))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = TPoly._raw((1,)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, value):
        """Evaluate at a scalar, or compose with another ``TPoly``."""
        if isinstance(value, TPoly):
            acc = TPoly()
            for c in reversed(self._c):
                acc = acc * value + c
            return acc
        value = _norm(value)
        acc = 0
        for c in reversed(self._c):
            acc = acc * value + c
        return Fraction(acc)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(("TPoly", self._c))

    def __repr__(self):
        return f"TPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for d in range(len(self._c) - 1, -1, -1):
            c = Fraction(self._c[d])
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = "t" if d == 1 else f"t^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_ZERO_T = TPoly._raw(())
_ONE_T = TPoly._raw((1,))


def _as_raw_t(c) -> tuple:
    if isinstance(c, TPoly):
        return c._c
    return _trim([_norm(c)])


# --- Series ------------------------------------------------------------------


class Series:
    """Power series in ``x`` with ``TPoly`` coefficients, truncated at ``order``."""

    __slots__ = ("order", "_c")

    def __init__(self, coeffs: Iterable = (), order: int = None):
        raw = [_as_raw_t(c) for c in coeffs]
        if order is None:
            order = max(len(raw) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        raw = raw[: order + 1] + [()] * (order + 1 - len(raw))
        self.order = order
        self._c = tuple(raw)

    @classmethod
    def _raw(cls, c: tuple, order: int) -> "Series":
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = c
        return obj

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls._raw(((),) * (order + 1), order)

    @classmethod
    def constant(cls, c, order: int) -> "Series":
        return cls([c], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.constant(1, order)

    @classmethod
    def x(cls, order: int) -> "Series":
        return cls.monomial(1, 1, order)

    @classmethod
    def monomial(cls, n: int, coeff, order: int) -> "Series":
        c = [()] * (order + 1)
        if n <= order:
            c[n] = _as_raw_t(coeff)
        return cls._raw(tuple(c), order)

    @classmethod
    def polynomial(cls, coeffs: Mapping[int, object], order: int) -> "Series":
        """Series from a sparse ``{x-degree: coefficient}`` map; terms past ``order`` drop."""
        c = [()] * (order + 1)
        for n, v in coeffs.items():
            if n <= order:
                c[n] = _tadd(c[n], _as_raw_t(v))
        return cls._raw(tuple(c), order)

    @property
    def coeffs(self) -> Tuple[TPoly, ...]:
        return tuple(TPoly._raw(c) for c in self._c)

    def __getitem__(self, n: int) -> TPoly:
        if 0 <= n <= self.order:
            return TPoly._raw(self._c[n])
        raise IndexError(f"x-degree {n} outside truncation order {self.order}")

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return Series._raw(self._c[: order + 1], order)

    def valuation(self) -> float:
        for n, c in enumerate(self._c):
            if c:
                return n
        return math.inf

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_t_free(self) -> bool:
        return all(len(c) <= 1 for c in self._c)

    def is_laguerre_carrier(self) -> bool:
        """True when every coefficient of ``x^j`` has t-degree at most ``j``."""
        return all(len(c) - 1 <= j for j, c in enumerate(self._c))

    def constants(self) -> list:
        """Coefficients of a t-free series as Fractions."""
        if not self.is_t_free():
            raise ValueError("series has t-dependent coefficients")
        return [Fraction(c[0]) if c else Fraction(0) for c in self._c]

    def integers(self) -> list:
        """Coefficients of a t-free series with integral values, as ``int``."""
        out = []
        for c in self.constants():
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(c.numerator)
        return out

    def map(self, fn) -> "Series":
        """Apply ``fn: TPoly -> TPoly`` to every coefficient."""
        return Series([fn(TPoly._raw(c)) for c in self._c], self.order)

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, TPoly) or _is_scalar(other):
            return Series.constant(other, self.order)
        return None

    def __add__(self, other):
        if isinstance(other, UVPoly):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = _min_order(self.order, other.order)
        return Series._raw(_series_add(self._c[: order + 1], other._c[: order + 1]), order)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(tuple(_tscale(c, -1) for c in self._c), self.order)

    def __sub__(self, other):
        if isinstance(other, UVPoly):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = _min_order(self.order, other.order)
        return Series._raw(_series_add(self._c[: order + 1], other._c[: order + 1], -1), order)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            c = _norm(other)
            return Series._raw(tuple(_tscale(p, c) for p in self._c), self.order)
        if isinstance(other, TPoly):
            return Series._raw(tuple(_tmul(p, other._c) for p in self._c), self.order)
        if isinstance(other, Series):
            order = _min_order(self.order, other.order)
            return Series._raw(_series_mul(self._c, other._c, order), order)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, (Series, TPoly)):
            return series_of_rational(self, other, self.order)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other) or isinstance(other, TPoly):
            return series_of_rational(Series.constant(other, self.order), self, self.order)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = Series.one(self.order), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, inner: "Series") -> "Series":
        """Substitute the series ``inner`` (zero constant term) for ``x``."""
        if inner._c[0]:
            raise NonzeroConstantTerm("inner series of a composition must have zero constant term")
        order = _min_order(self.order, inner.order)
        acc = Series.zero(order)
        for c in reversed(self._c[: order + 1]):
            acc = acc * inner + TPoly._raw(c)
        return acc

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.order == other.order and self._c == other._c
        if isinstance(other, TPoly) or _is_scalar(other):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Series", self.order, self._c))

    def __repr__(self):
        return f"Series({self}, order={self.order})"

    def __str__(self):
        parts = []
        for n, c in enumerate(self._c):
            if not c:
                continue
            p = TPoly._raw(c)
            mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
            body = str(p)
            if mono:
                if p == 1:
                    body = mono
                elif len(c) == 1 and c[0] > 0:
                    body = f"{body}*{mono}"
                else:
                    body = f"({body})*{mono}"
            parts.append(body)
        return " + ".join(parts) if parts else "0"


# --- UVPoly ------------------------------------------------------------------


class UVPoly:
    """Polynomial in ``u`` and ``v`` with ``Series`` coefficients.

    ``terms`` maps ``(u-degree, v-degree)`` to the coefficient series.
    Degrees above the truncation order are dropped on construction.
    """

    __slots__ = ("order", "_t")

    def __init__(self, terms: Mapping[Tuple[int, int], object] = None, order: int = None):
        terms = dict(terms or {})
        if order is None:
            orders = [s.order for s in terms.values() if isinstance(s, Series)]
            if not orders:
                raise ValueError("order is required when no Series coefficient is given")
            order = min(orders)
        self.order = order
        clean = {}
        for (a, b), s in terms.items():
            if a < 0 or b < 0:
                raise ValueError("negative u/v degree")
            if a > order or b > order:
                continue
            if not isinstance(s, Series):
                s = Series.constant(s, order)
            elif s.order != order:
                s = s.truncate(order) if s.order > order else s
                if s.order < order:
                    raise ValueError("coefficient series has lower order than the polynomial")
            if any(s._c):
                clean[(a, b)] = s._c
        self._t = clean

    @classmethod
    def _raw(cls, t: dict, order: int) -> "UVPoly":
        obj = cls.__new__(cls)
        obj.order = order
        obj._t = t
        return obj

    @classmethod
    def from_series(cls, s: Series) -> "UVPoly":
        return cls({(0, 0): s}, s.order)

    @classmethod
    def constant(cls, c, order: int) -> "UVPoly":
        return cls({(0, 0): Series.constant(c, order)}, order)

    @classmethod
    def x(cls, order: int) -> "UVPoly":
        return cls({(0, 0): Series.x(order)}, order)

    @classmethod
    def u(cls, order: int) -> "UVPoly":
        return cls({(1, 0): Series.one(order)}, order)

    @classmethod
    def v(cls, order: int) -> "UVPoly":
        return cls({(0, 1): Series.one(order)}, order)

    @property
    def terms(self) -> Dict[Tuple[int, int], Series]:
        return {k: Series._raw(c, self.order) for k, c in sorted(self._t.items())}

    def coefficient(self, a: int, b: int = 0) -> Series:
        c = self._t.get((a, b))
        return Series._raw(c, self.order) if c is not None else Series.zero(self.order)

    def has_v(self) -> bool:
        return any(b for _, b in self._t)

    def is_zero(self) -> bool:
        return not self._t

    def u_degree(self) -> float:
        return max((a for a, _ in self._t), default=-math.inf)

    def _coerce(self, other):
        if isinstance(other, UVPoly):
            return other
        if isinstance(other, Series):
            return UVPoly._raw({(0, 0): other._c} if any(other._c) else {}, other.order)
        if isinstance(other, TPoly) or _is_scalar(other):
            return UVPoly.constant(other, self.order)
        return None

    def _combine(self, other, sign):
        order = _min_order(self.order, other.order)
        out = {}
        for k in set(self._t) | set(other._t):
            p = self._t.get(k, ((),) * (order + 1))[: order + 1]
            q = other._t.get(k, ((),) * (order + 1))[: order + 1]
            s = _series_add(p, q, sign)
            if any(s):
                out[k] = s
        return UVPoly._raw(out, order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self):
        return UVPoly._raw(
            {k: tuple(_tscale(p, -1) for p in s) for k, s in self._t.items()}, self.order
        )

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, TPoly):
            raw = _as_raw_t(other)
            out = {}
            for k, s in self._t.items():
                r = tuple(_tmul(p, raw) for p in s)
                if any(r):
                    out[k] = r
            return UVPoly._raw(out, self.order)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = _min_order(self.order, other.order)
        # Accumulate per (a, b, n) before trimming.
        acc: Dict[Tuple[int, int], list] = {}
        left = [(k, s, _valuation(s)) for k, s in self._t.items()]
        right = [(k, s, _valuation(s)) for k, s in other._t.items()]
        for (a1, b1), s1, v1 in left:
            for (a2, b2), s2, v2 in right:
                a, b = a1 + a2, b1 + b2
                if a > order or b > order or v1 + v2 > order:
                    continue
                slot = acc.get((a, b))
                if slot is None:
                    slot = acc[(a, b)] = [[] for _ in range(order + 1)]
                for i in range(v1, order + 1 - v2):
                    p = s1[i]
                    if not p:
                        continue
                    for j in range(v2, order + 1 - i):
                        q = s2[j]
                        if q:
                            _accumulate(slot[i + j], p, q)
        out = {}
        for k, slot in acc.items():
            s = tuple(_trim(c) for c in slot)
            if any(s):
                out[k] = s
        return UVPoly._raw(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / Fraction(other))
        return series_of_rational(self, other, self.order)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return series_of_rational(other, self, self.order)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = UVPoly.constant(1, self.order), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.order == other.order and self._t == other._t

    def __hash__(self):
        return hash(("UVPoly", self.order, tuple(sorted(self._t.items()))))

    def __repr__(self):
        parts = []
        for (a, b), s in sorted(self._t.items()):
            mono = "".join(
                sym if e == 1 else f"{sym}^{e}" for sym, e in (("u", a), ("v", b)) if e
            )
            body = f"({Series._raw(s, self.order)})"
            parts.append(f"{body}*{mono}" if mono else body)
        return f"UVPoly({' + '.join(parts) or '0'}, order={self.order})"


def _valuation(raw_series) -> int:
    for n, c in enumerate(raw_series):
        if c:
            return n
    return len(raw_series)


# --- operations --------------------------------------------------------------


def _x_slices(p: UVPoly):
    """Split a UVPoly into per-x-degree maps ``{(a, b): raw t-poly}``."""
    slices = [dict() for _ in range(p.order + 1)]
    for k, s in p._t.items():
        for n, c in enumerate(s):
            if c:
                slices[n][k] = c
    return slices


def _slice_mul(f: dict, g: dict, order: int) -> dict:
    out = {}
    for (a1, b1), p in f.items():
        for (a2, b2), q in g.items():
            a, b = a1 + a2, b1 + b2
            if a > order or b > order:
                continue
            slot = out.get((a, b))
            if slot is None:
                slot = out[(a, b)] = []
            _accumulate(slot, p, q)
    return {k: r for k, r in ((k, _trim(v)) for k, v in out.items()) if r}


def _slice_add(f: dict, g: dict, sign: int = 1) -> dict:
    out = dict(f)
    for k, q in g.items():
        p = out.get(k, ())
        r = _tadd(p, q if sign == 1 else _tscale(q, -1))
        if r:
            out[k] = r
        else:
            out.pop(k, None)
    return out


def _slice_inverse(d0: dict, order: int) -> dict:
    """Inverse of an x-free (u, v)-polynomial with nonzero rational constant term."""
    c0 = d0.get((0, 0), ())
    if len(c0) != 1:
        raise NonUnitDenominator(
            "denominator constant term must be a nonzero rational "
            f"(got {TPoly._raw(c0)})"
        )
    inv_c = Fraction(1) / Fraction(c0[0])
    rest = {k: _tscale(p, -inv_c) for k, p in d0.items() if k != (0, 0)}
    if any(len(p) > 1 for p in rest.values()):
        raise NonUnitDenominator("cannot invert a t-dependent x^0 coefficient")
    # 1/d0 = inv_c * sum_j rest^j; every u/v degree is capped at `order`.
    result = {(0, 0): (_norm(inv_c),)}
    power = {(0, 0): (1,)}
    for _ in range(2 * order):
        power = _slice_mul(power, rest, order)
        if not power:
            break
        result = _slice_add(result, {k: _tscale(p, inv_c) for k, p in power.items()})
    return result


def _uv_divide(numer: UVPoly, denom: UVPoly, order: int) -> UVPoly:
    P = _x_slices(numer)[: order + 1]
    D = _x_slices(denom)[: order + 1]
    if not D[0].get((0, 0)):
        raise NonUnitDenominator("denominator has zero constant term")
    const_only = set(D[0]) == {(0, 0)} and len(D[0][(0, 0)]) == 1
    if const_only:
        inv_c = _norm(Fraction(1) / Fraction(D[0][(0, 0)][0]))
        inv0 = None
    else:
        inv0 = _slice_inverse(D[0], order)
    Q = []
    for n in range(order + 1):
        acc = P[n] if n < len(P) else {}
        for i in range(1, n + 1):
            if D[i] and Q[n - i]:
                acc = _slice_add(acc, _slice_mul(D[i], Q[n - i], order), -1)
        if inv0 is None:
            q = {k: _tscale(p, inv_c) for k, p in acc.items()}
        else:
            q = _slice_mul(acc, inv0, order)
        Q.append(q)
    terms: Dict[Tuple[int, int], list] = {}
    for n, q in enumerate(Q):
        for k, p in q.items():
            terms.setdefault(k, [()] * (order + 1))[n] = p
    return UVPoly._raw({k: tuple(v) for k, v in terms.items()}, order)


def _as_uv(obj, order: int) -> UVPoly:
    if isinstance(obj, UVPoly):
        return obj
    if isinstance(obj, Series):
        return UVPoly._raw({(0, 0): obj._c} if any(obj._c) else {}, obj.order)
    return UVPoly.constant(obj, order)


def series_of_rational(numer, denom, order: int):
    """Expand ``numer / denom`` to x-order ``order``.

    Both arguments may be ``Series``, ``UVPoly``, ``TPoly`` or scalars.  The
    result is a ``Series`` when neither argument is a ``UVPoly``.  Raises
    :class:`NonUnitDenominator` if the constant term of ``denom`` vanishes.
    """
    kinds = (type(numer), type(denom))
    n_uv, d_uv = _as_uv(numer, order), _as_uv(denom, order)
    for p in (n_uv, d_uv):
        if p.order < order:
            warnings.warn(
                f"operand of order {p.order} limits requested order {order}",
                OrderMismatchWarning,
                stacklevel=2,
            )
            order = p.order
    result = _uv_divide(n_uv, d_uv, order)
    if UVPoly in kinds:
        return result
    return result.coefficient(0, 0)


def series_exp(s: Series) -> Series:
    """``exp(s)`` for a series with zero constant term.

    Uses ``E' = s' E``, i.e. ``n E_n = sum_k k s_k E_{n-k}``.
    """
    if s._c[0]:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    N = s.order
    E = [(1,)]
    ks = [(k, c) for k, c in enumerate(s._c) if c]
    for n in range(1, N + 1):
        acc = []
        for k, c in ks:
            if k > n:
                break
            e = E[n - k]
            if e:
                _accumulate(acc, _tscale(c, k), e)
        E.append(_trim([Fraction(a) / n for a in acc]))
    return Series._raw(tuple(E), N)


def uv_derivative(p: UVPoly, var: str) -> UVPoly:
    """Formal partial derivative with respect to ``'u'`` or ``'v'``."""
    if var not in ("u", "v"):
        raise ValueError("var must be 'u' or 'v'")
    out = {}
    for (a, b), s in p._t.items():
        e = a if var == "u" else b
        if e == 0:
            continue
        key = (a - 1, b) if var == "u" else (a, b - 1)
        out[key] = tuple(_tscale(c, e) for c in s)
    return UVPoly._raw(out, p.order)


def uv_substitute(p: UVPoly, v_value=1) -> UVPoly:
    """Substitute a scalar for ``v``, eliminating it."""
    val = _norm(v_value)
    acc: Dict[int, tuple] = {}
    zero = ((),) * (p.order + 1)
    for (a, b), s in p._t.items():
        w = val ** b
        scaled = tuple(_tscale(c, w) for c in s)
        acc[a] = _series_add(acc.get(a, zero), scaled)
    return UVPoly._raw({(a, 0): s for a, s in acc.items() if any(s)}, p.order)
