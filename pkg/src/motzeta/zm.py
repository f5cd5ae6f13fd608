"""The monoid M of integer polynomials with constant term 1, and its algebra Z[M].

Addition in Z[M] is formal: ``[1+s] + [1+s]`` is ``2*[1+s]``, not
``[(1+s)^2]``. Multiplication of basis elements is polynomial
multiplication. M is free commutative, so equality of fractions in its
group completion reduces to cross-multiplication in Z[s]; nothing here
ever factors a polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .graded import GradedElement, lambda_series_graded
from .series import Ring, TruncatedSeries, product_of_powers


@dataclass(frozen=True)
class MElement:
    poly: GradedElement

    def __post_init__(self):
        if not isinstance(self.poly, GradedElement):
            object.__setattr__(self, "poly", GradedElement(self.poly))
        if self.poly[0] != 1:
            raise ValueError(f"{self.poly} does not have constant term 1")

    @classmethod
    def of(cls, *coeffs: int) -> MElement:
        return cls(GradedElement(coeffs))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.poly.coeffs

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __getitem__(self, r: int) -> int:
        return self.poly[r]

    def __mul__(self, other: MElement) -> MElement:
        return MElement(self.poly * other.poly)

    def __pow__(self, k: int) -> MElement:
        return MElement(self.poly**k)

    def __repr__(self):
        return f"[{self.poly!r}]"


M_ONE = MElement.of(1)


def group_eq_crossmul(a: MElement, b: MElement, c: MElement, d: MElement) -> bool:
    """Whether ``a/b == c/d`` in the group completion of M."""
    return a.poly * d.poly == b.poly * c.poly


class ZMElement:
    """A finite integer combination of basis elements of M."""

    __slots__ = ("terms", "_key")

    def __init__(self, terms: Mapping[MElement, int] | Iterable[tuple[MElement, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[MElement, int] = {}
        for m, c in items:
            acc[m] = acc.get(m, 0) + int(c)
        self.terms = {m: c for m, c in acc.items() if c}
        self._key = frozenset(self.terms.items())

    @classmethod
    def basis(cls, m: MElement | Iterable[int]) -> ZMElement:
        if not isinstance(m, MElement):
            m = MElement(GradedElement(m))
        return cls({m: 1})

    def _lift(self, other):
        if isinstance(other, ZMElement):
            return other
        if isinstance(other, int):
            return ZMElement({M_ONE: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ZMElement(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return ZMElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ZMElement({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ZMElement):
            return NotImplemented
        return ZMElement(
            (a * b, ca * cb) for a, ca in self.terms.items() for b, cb in other.terms.items()
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def coefficient(self, m: MElement) -> int:
        return self.terms.get(m, 0)

    def is_basis(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    def as_basis(self) -> MElement:
        if not self.is_basis():
            raise ValueError(f"{self!r} is not a single basis element")
        return next(iter(self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: kv[0].coeffs):
            parts.append(repr(m) if c == 1 else f"{c}*{m!r}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"basis": [str(c) for c in m.coeffs], "mult": str(c)}
            for m, c in sorted(self.terms.items(), key=lambda kv: kv[0].coeffs)
        ]

    @classmethod
    def from_json(cls, obj: list[dict]) -> ZMElement:
        return cls((MElement(GradedElement(int(c) for c in t["basis"])), int(t["mult"])) for t in obj)


class ZMRing(Ring):
    name = "Z[M]"

    def zero(self):
        return ZMElement()

    def one(self):
        return ZMElement({M_ONE: 1})

    def is_unit(self, x):
        return x == 1 or x == -1

    def unit_inverse(self, x):
        return x

    def coerce(self, x):
        return x if isinstance(x, ZMElement) else ZMElement({M_ONE: int(x)})

    def encode(self, x):
        return x.to_json()

    def decode(self, obj):
        return ZMElement.from_json(obj)


ZM = ZMRing()


@lru_cache(maxsize=2048)
def _basis_series(m: MElement, horizon: int) -> TruncatedSeries:
    graded = lambda_series_graded(m.poly, horizon)
    return TruncatedSeries(ZM, tuple(ZMElement.basis(MElement(c)) for c in graded.coeffs))


def lambda_series_zm(x: ZMElement, horizon: int) -> TruncatedSeries:
    return product_of_powers(
        ZM, ((_basis_series(m, horizon), c) for m, c in x.terms.items()), horizon
    )


def lambda_zm(n: int, x: ZMElement) -> ZMElement:
    """``lambda^n`` on Z[M]; basis elements go to basis elements."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return lambda_series_zm(x, n)[n]


def zm_mul(a: ZMElement, b: ZMElement) -> ZMElement:
    return a * b


class ZMLambda:
    ring = ZM

    def lambda_series(self, x: ZMElement, horizon: int) -> TruncatedSeries:
        return lambda_series_zm(x, horizon)

    def lambda_op(self, n: int, x: ZMElement) -> ZMElement:
        return lambda_zm(n, x)


ZM_LAMBDA = ZMLambda()
