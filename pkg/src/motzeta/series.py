"""Truncated power series over an abstract commutative ring.

A :class:`TruncatedSeries` stores the coefficients of ``t^0 .. t^N`` where
``N`` is the *horizon*. Binary operations truncate at the smaller horizon, so
nothing is ever claimed beyond the precision that was actually computed.

Coefficient rings are described by :class:`Ring` objects. Ring elements are
ordinary Python values that support ``+``, ``-``, ``*`` and multiplication by
``int``; the ring object supplies the constants, unit tests and the JSON
encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Protocol, Sequence

from .errors import NonIntegralCoefficient, NonUnitConstantTerm


class Ring:
    """Coefficient ring interface."""

    name = "ring"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def unit_inverse(self, x):
        raise NotImplementedError

    def coerce(self, x):
        return x

    def dot(self, xs, ys):
        """``sum x*y`` over paired elements; rings may override to accumulate in place."""
        acc = self.zero()
        for x, y in zip(xs, ys):
            acc = acc + x * y
        return acc

    def encode(self, x) -> Any:
        raise NotImplementedError

    def decode(self, obj):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))


class IntegerRing(Ring):
    name = "ZZ"

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_unit(self, x):
        return x in (1, -1)

    def unit_inverse(self, x):
        if not self.is_unit(x):
            raise NonUnitConstantTerm(f"{x} is not a unit of ZZ")
        return x

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise NonIntegralCoefficient(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def encode(self, x):
        return str(x)

    def decode(self, obj):
        return int(obj)


class RationalRing(Ring):
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_unit(self, x):
        return x != 0

    def unit_inverse(self, x):
        if x == 0:
            raise NonUnitConstantTerm("0 is not a unit of QQ")
        return 1 / Fraction(x)

    def coerce(self, x):
        return Fraction(x)

    def encode(self, x):
        return str(Fraction(x))

    def decode(self, obj):
        return Fraction(obj)


ZZ = IntegerRing()
QQ = RationalRing()


@dataclass(frozen=True)
class TruncatedSeries:
    """``coeffs[n]`` is the coefficient of ``t^n`` for ``n <= horizon``."""

    ring: Ring
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def horizon(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return TruncatedSeries(self.ring, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.ring, tuple(c * other for c in self.coeffs))

    def truncate(self, horizon: int) -> TruncatedSeries:
        if horizon > self.horizon:
            raise ValueError(f"cannot extend horizon {self.horizon} to {horizon}")
        return TruncatedSeries(self.ring, self.coeffs[: horizon + 1])

    def map(self, fn, ring: Ring | None = None) -> TruncatedSeries:
        return TruncatedSeries(ring or self.ring, tuple(fn(c) for c in self.coeffs))

    def scale_variable(self, c) -> TruncatedSeries:
        """Substitute ``t -> c*t``."""
        out = []
        power = self.ring.one()
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return TruncatedSeries(self.ring, tuple(out))

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "coeffs": [self.ring.encode(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, ring: Ring, obj: dict) -> TruncatedSeries:
        coeffs = tuple(ring.decode(c) for c in obj["coeffs"])
        if len(coeffs) != int(obj["horizon"]) + 1:
            raise ValueError("horizon does not match number of coefficients")
        return cls(ring, coeffs)

    def __repr__(self):
        return f"TruncatedSeries({self.ring!r}, {list(self.coeffs)!r})"


def from_polynomial(ring: Ring, coeffs: Sequence, horizon: int) -> TruncatedSeries:
    """Embed a polynomial; terms above ``horizon`` are dropped, gaps are zero-filled."""
    out = [ring.coerce(c) for c in coeffs[: horizon + 1]]
    out.extend(ring.zero() for _ in range(horizon + 1 - len(out)))
    return TruncatedSeries(ring, tuple(out))


def one_series(ring: Ring, horizon: int) -> TruncatedSeries:
    return from_polynomial(ring, [ring.one()], horizon)


def _check_rings(a: TruncatedSeries, b: TruncatedSeries):
    if a.ring != b.ring:
        raise TypeError(f"coefficient rings differ: {a.ring!r} vs {b.ring!r}")


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_rings(a, b)
    n = min(a.horizon, b.horizon)
    return TruncatedSeries(a.ring, tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller horizon."""
    _check_rings(a, b)
    n = min(a.horizon, b.horizon)
    ac, bc = a.coeffs, b.coeffs
    out = [a.ring.dot(ac[: k + 1], bc[k::-1]) for k in range(n + 1)]
    return TruncatedSeries(a.ring, tuple(out))


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    ring = a.ring
    c0 = a.coeffs[0]
    if not ring.is_unit(c0):
        raise NonUnitConstantTerm(f"constant term {c0!r} is not a unit of {ring!r}")
    inv0 = ring.unit_inverse(c0)
    out = [inv0]
    for k in range(1, a.horizon + 1):
        acc = ring.dot(a.coeffs[1 : k + 1], out[k - 1 :: -1])
        out.append(-(acc * inv0))
    return TruncatedSeries(ring, tuple(out))


def series_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a**k`` for any integer ``k``; negative powers go through the inverse."""
    if k < 0:
        a, k = series_inverse(a), -k
    result = one_series(a.ring, a.horizon)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def log_derivative(a: TruncatedSeries) -> TruncatedSeries:
    """``t * a'(t) / a(t)``; needs a unit constant term."""
    deriv = [a.ring.zero()] + [a.coeffs[n] * n for n in range(1, a.horizon + 1)]
    return series_mul(TruncatedSeries(a.ring, tuple(deriv)), series_inverse(a))


class LambdaProvider(Protocol):
    """A ring together with its lambda-operations."""

    ring: Ring

    def lambda_series(self, x, horizon: int) -> TruncatedSeries: ...

    def lambda_op(self, n: int, x): ...


def lambda_t(x, lam: LambdaProvider, horizon: int) -> TruncatedSeries:
    """``sum_n lambda^n(x) t^n`` up to ``horizon``."""
    return lam.lambda_series(x, horizon)


def product_of_powers(
    ring: Ring, factors: Iterable[tuple[TruncatedSeries, int]], horizon: int
) -> TruncatedSeries:
    """``prod f**e``; the building block for lambda_t of an integer combination."""
    result = one_series(ring, horizon)
    for series, exponent in factors:
        if exponent:
            result = series_mul(result, series_pow(series.truncate(horizon), exponent))
    return result


def exp_from_log_counts(counts: Sequence[int], horizon: int) -> TruncatedSeries:
    """``exp(sum_m N_m t^m / m)`` with integrality asserted on every coefficient.

    Uses ``n e_n = sum_{m=1}^n N_m e_{n-m}``, the coefficient form of
    ``E' = L' E``.
    """
    if horizon > len(counts):
        raise ValueError(f"horizon {horizon} exceeds the {len(counts)} counts supplied")
    e = [Fraction(1)]
    for n in range(1, horizon + 1):
        acc = sum(Fraction(counts[m - 1]) * e[n - m] for m in range(1, n + 1))
        e.append(acc / n)
    out = []
    for n, c in enumerate(e):
        if c.denominator != 1:
            raise NonIntegralCoefficient(
                f"coefficient {n} is {c}; the counts are not those of a variety"
            )
        out.append(c.numerator)
    return TruncatedSeries(ZZ, tuple(out))


def _trim(coeffs: list) -> tuple:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RationalForm:
    """``numerator / denominator`` with ``denominator[0]`` a unit."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise NonUnitConstantTerm("denominator constant term must be invertible")

    @property
    def degree(self) -> int:
        return max(len(self.numerator), len(self.denominator)) - 1

    def expand(self, horizon: int) -> list[Fraction]:
        num = from_polynomial(QQ, self.numerator, horizon)
        den = from_polynomial(QQ, self.denominator, horizon)
        return list(series_mul(num, series_inverse(den)).coeffs)


def fit_rational_form(coeffs: Sequence, max_deg: int) -> RationalForm | None:
    """Smallest rational form reproducing ``coeffs``, or ``None`` if it needs degree > max_deg.

    Berlekamp-Massey over QQ gives the shortest linear recurrence (length L)
    and its connection polynomial, which becomes the denominator; the
    numerator is the denominator times the series, truncated below ``t^L``.
    """
    s = [Fraction(c) for c in coeffs]
    if not s:
        return None
    conn = [Fraction(1)]
    prev = [Fraction(1)]
    length, shift, prev_disc = 0, 1, Fraction(1)
    for n, sn in enumerate(s):
        disc = sn + sum(conn[i] * s[n - i] for i in range(1, min(length, len(conn) - 1) + 1))
        if disc == 0:
            shift += 1
            continue
        factor = disc / prev_disc
        updated = conn + [Fraction(0)] * max(0, len(prev) + shift - len(conn))
        for i, b in enumerate(prev):
            updated[i + shift] -= factor * b
        if 2 * length <= n:
            prev, prev_disc = conn, disc
            length = n + 1 - length
            shift = 1
        else:
            shift += 1
        conn = updated

    den = _trim(conn[: length + 1] if len(conn) > length + 1 else conn)
    prod = series_mul(from_polynomial(QQ, s, len(s) - 1), from_polynomial(QQ, den, len(s) - 1))
    num = _trim(list(prod.coeffs[: max(length, 1)]))
    form = RationalForm(num, den)
    if form.degree > max_deg:
        return None
    if form.expand(len(s) - 1) != s:
        return None
    return form


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)
