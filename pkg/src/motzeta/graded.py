"""The ring Z[s] of N-graded virtual vector spaces, recorded by dimension.

The coefficient of ``s^p`` is the (possibly negative) dimension of the
degree-``p`` piece. Lambda-operations take symmetric powers of even pieces
and exterior powers of odd pieces, which is the Koszul sign rule for a
super vector space.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .errors import NegativeDimension
from .series import Ring, TruncatedSeries, binomial, log_derivative, one_series, series_inverse, series_mul


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class GradedElement:
    """An element of Z[s]; ``coeffs[p]`` is the dimension in degree ``p``.

    Trailing zeros are stripped, so structural equality is ring equality.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)
        self._hash = hash(self.coeffs)

    @classmethod
    def from_dims(cls, dims: Mapping[int, int]) -> GradedElement:
        if not dims:
            return cls()
        top = max(dims)
        if min(dims) < 0:
            raise ValueError("degrees must be nonnegative")
        out = [0] * (top + 1)
        for p, v in dims.items():
            out[p] += v
        return cls(out)

    @classmethod
    def monomial(cls, p: int, v: int = 1) -> GradedElement:
        return cls([0] * p + [v])

    @property
    def dims(self) -> dict[int, int]:
        return {p: v for p, v in enumerate(self.coeffs) if v}

    @property
    def degree(self) -> int:
        """Top degree with nonzero dimension; -1 for the zero element."""
        return len(self.coeffs) - 1

    def __getitem__(self, p: int) -> int:
        return self.coeffs[p] if 0 <= p < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_dimension(self) -> int:
        return sum(abs(v) for v in self.coeffs)

    def _lift(self, other):
        if isinstance(other, GradedElement):
            return other
        if isinstance(other, int):
            return GradedElement([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return GradedElement(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedElement(c * other for c in self.coeffs)
        if not isinstance(other, GradedElement):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return GradedElement()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return GradedElement(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = GradedElement([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = GradedElement([other])
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for p, v in enumerate(self.coeffs):
            if not v:
                continue
            mono = "" if p == 0 else ("s" if p == 1 else f"s^{p}")
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            elif v == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{v}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict[str, str]:
        return {str(p): str(v) for p, v in self.dims.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> GradedElement:
        return cls.from_dims({int(p): int(v) for p, v in obj.items()})


class GradedRing(Ring):
    name = "Z[s]"

    def zero(self):
        return GradedElement()

    def one(self):
        return GradedElement([1])

    def is_unit(self, x):
        return x == 1 or x == -1

    def unit_inverse(self, x):
        return x

    def coerce(self, x):
        return x if isinstance(x, GradedElement) else GradedElement([x])

    def encode(self, x):
        return x.to_json()

    def decode(self, obj):
        return GradedElement.from_json(obj)


GRADED = GradedRing()
ONE = GradedElement([1])
S = GradedElement([0, 1])


def sym_dim(v: int, i: int) -> int:
    """Dimension of ``Sym^i`` of a ``v``-dimensional space."""
    if v < 0:
        raise NegativeDimension(f"dimension {v} < 0")
    if i == 0:
        return 1
    return binomial(v + i - 1, i)


def ext_dim(v: int, i: int) -> int:
    """Dimension of ``Lambda^i`` of a ``v``-dimensional space."""
    if v < 0:
        raise NegativeDimension(f"dimension {v} < 0")
    return binomial(v, i)


@lru_cache(maxsize=4096)
def _piece_series(p: int, v: int, horizon: int) -> TruncatedSeries:
    # lambda_t of V_p s^p; negative v is the inverse of the |v| series
    dim = sym_dim if p % 2 == 0 else ext_dim
    coeffs = tuple(GradedElement.monomial(i * p, dim(abs(v), i)) for i in range(horizon + 1))
    series = TruncatedSeries(GRADED, coeffs)
    return series_inverse(series) if v < 0 else series


@lru_cache(maxsize=4096)
def lambda_series_graded(x: GradedElement, horizon: int) -> TruncatedSeries:
    result = one_series(GRADED, horizon)
    for p, v in x.dims.items():
        result = series_mul(result, _piece_series(p, v, horizon))
    return result


def lambda_graded(n: int, x: GradedElement) -> GradedElement:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return lambda_series_graded(x, n)[n]


def adams_graded(k: int, x: GradedElement) -> GradedElement:
    """``psi^k(x)``: coefficient of ``t^k`` in ``t d/dt log lambda_t(x)``.

    With Sym on even degrees this fixes the unit and sends ``s^p`` to
    ``(-1)^((k-1) p) s^(kp)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return log_derivative(lambda_series_graded(x, k))[k]


class GradedLambda:
    """Lambda-operation provider for Z[s]."""

    ring = GRADED

    def lambda_series(self, x: GradedElement, horizon: int) -> TruncatedSeries:
        return lambda_series_graded(x, horizon)

    def lambda_op(self, n: int, x: GradedElement) -> GradedElement:
        return lambda_graded(n, x)


GRADED_LAMBDA = GradedLambda()
