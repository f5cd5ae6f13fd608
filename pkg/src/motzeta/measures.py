"""Hodge-type data of smooth projective varieties and the measures built on it.

``mu1`` records ``dim H^0(X, Omega^i)`` as a polynomial in ``s``. Symmetric
powers are computed through the lambda-structure of Z[s]; the brute-force
oracle in :func:`invariants_dim_bruteforce` computes the same numbers as
``S_m``-invariants of a tensor power with the Koszul sign, by character
averaging over every permutation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError, NegativeDimension, OddProduct, SizeGuardExceeded
from .graded import GradedElement, lambda_graded, lambda_series_graded
from .series import binomial
from .zm import MElement


@dataclass(frozen=True)
class HodgeData:
    """``h0[i] = dim H^0(X, Omega^i_X)``; ``plurigenera[n] = dim H^0(X, omega^n)``."""

    dim: int
    h0: tuple[int, ...]
    plurigenera: Mapping[int, int] | None = None
    name: str = "X"

    def __post_init__(self):
        object.__setattr__(self, "h0", tuple(int(v) for v in self.h0))
        if self.dim < 0:
            raise InputError(f"dim: must be nonnegative, got {self.dim}")
        if len(self.h0) != self.dim + 1:
            raise InputError(f"h0: expected {self.dim + 1} entries for dim {self.dim}, got {len(self.h0)}")
        if self.h0[0] != 1:
            raise InputError(f"h0: h0[0] must be 1 for a connected variety, got {self.h0[0]}")
        if any(v < 0 for v in self.h0):
            raise InputError("h0: entries must be nonnegative")
        if self.plurigenera is not None:
            pg = {int(n): int(p) for n, p in self.plurigenera.items()}
            if any(n < 1 for n in pg):
                raise InputError("plurigenera: indices must be positive")
            if any(p < 0 for p in pg.values()):
                raise InputError("plurigenera: values must be nonnegative")
            object.__setattr__(self, "plurigenera", pg)

    def __hash__(self):
        pg = tuple(sorted(self.plurigenera.items())) if self.plurigenera else None
        return hash((self.dim, self.h0, pg, self.name))

    @classmethod
    def from_json(cls, obj: Mapping) -> HodgeData:
        if not isinstance(obj, Mapping):
            raise InputError("input: expected a JSON object")
        for key in ("dim", "h0"):
            if key not in obj:
                raise InputError(f"{key}: missing required field")
        try:
            dim = int(obj["dim"])
        except (TypeError, ValueError):
            raise InputError(f"dim: not an integer: {obj['dim']!r}") from None
        if not isinstance(obj["h0"], list):
            raise InputError("h0: expected a list of integers")
        try:
            h0 = tuple(int(v) for v in obj["h0"])
        except (TypeError, ValueError):
            raise InputError(f"h0: not a list of integers: {obj['h0']!r}") from None
        pg = obj.get("plurigenera")
        if pg is not None:
            if not isinstance(pg, Mapping):
                raise InputError("plurigenera: expected an object mapping n to P_n")
            try:
                pg = {int(n): int(p) for n, p in pg.items()}
            except (TypeError, ValueError):
                raise InputError("plurigenera: keys and values must be integers") from None
        return cls(dim=dim, h0=h0, plurigenera=pg, name=str(obj.get("name", "X")))

    def to_json(self) -> dict:
        out = {"name": self.name, "dim": self.dim, "h0": list(self.h0)}
        if self.plurigenera is not None:
            out["plurigenera"] = {str(n): p for n, p in sorted(self.plurigenera.items())}
        return out


def mu1(h: HodgeData) -> MElement:
    return MElement(GradedElement(h.h0))


def product_hodge(a: HodgeData, b: HodgeData) -> HodgeData:
    """Kunneth at the level of dimensions: the h0 sequences convolve."""
    h0 = (GradedElement(a.h0) * GradedElement(b.h0)).coeffs
    dim = a.dim + b.dim
    h0 = tuple(h0) + (0,) * (dim + 1 - len(h0))
    pg = None
    if a.plurigenera is not None and b.plurigenera is not None:
        common = set(a.plurigenera) & set(b.plurigenera)
        pg = {n: a.plurigenera[n] * b.plurigenera[n] for n in sorted(common)}
    return HodgeData(dim=dim, h0=h0, plurigenera=pg, name=f"{a.name}x{b.name}")


def mu1_sym(h: HodgeData, m: int) -> MElement:
    """``mu1(Sym^m X)``, computed as ``lambda^m(mu1(X))``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return MElement(lambda_graded(m, mu1(h).poly))


def mu1_sym_sequence(h: HodgeData, horizon: int) -> list[MElement]:
    series = lambda_series_graded(mu1(h).poly, horizon)
    return [MElement(c) for c in series.coeffs]


def mun_sym_leading(P_n: int, d: int, n: int, m: int) -> tuple[int, int]:
    """Leading term ``(degree, coefficient)`` of ``mu_n(Sym^m X)``.

    The top-degree piece is ``Sym^m H^0(X, omega^n)``, which needs ``n*d`` even.
    """
    if (n * d) % 2:
        raise OddProduct(f"n*d = {n * d} is odd; use 2n instead")
    if P_n < 1:
        raise ValueError("P_n must be positive")
    if m < 1 or d < 1 or n < 1:
        raise ValueError("d, n and m must be positive")
    return m * d, binomial(P_n + m - 1, m)


def _koszul_sign(targets: list[int], odd: list[bool]) -> int:
    # bubble-sort factors into their target slots; each adjacent swap of two
    # odd vectors contributes -1
    order = list(range(len(targets)))
    sign = 1
    swapped = True
    while swapped:
        swapped = False
        for a in range(len(order) - 1):
            x, y = order[a], order[a + 1]
            if targets[x] > targets[y]:
                order[a], order[a + 1] = y, x
                if odd[x] and odd[y]:
                    sign = -sign
                swapped = True
    return sign


def invariants_dim_bruteforce(dims: GradedElement, m: int, j: int, max_tuples: int = 10**6) -> int:
    """Dimension of the ``S_m``-invariants in degree ``j`` of ``V^{(x)m}``.

    ``sigma`` moves tensor factor ``a`` to slot ``sigma(a)``, picking up a sign
    for every transposition of two odd vectors. The trace of ``sigma`` is the
    signed count of basis tuples it fixes; averaging over ``S_m`` projects
    onto the invariants.
    """
    if m < 1:
        raise ValueError("m must be positive")
    basis_degrees: list[int] = []
    for p, v in dims.dims.items():
        if v < 0:
            raise NegativeDimension(f"degree {p} has dimension {v}")
        basis_degrees.extend([p] * v)
    n = len(basis_degrees)
    if n**m > max_tuples:
        raise SizeGuardExceeded(f"{n}^{m} basis tuples exceeds guard {max_tuples}")

    tuples = [
        t for t in itertools.product(range(n), repeat=m) if sum(basis_degrees[b] for b in t) == j
    ]
    total = 0
    for sigma in itertools.permutations(range(m)):
        trace = 0
        for t in tuples:
            image = [None] * m
            for a in range(m):
                image[sigma[a]] = t[a]
            if tuple(image) != t:
                continue
            trace += _koszul_sign(list(sigma), [basis_degrees[b] % 2 == 1 for b in t])
        total += trace
    dim, rem = divmod(total, math.factorial(m))
    assert rem == 0, "character average is not an integer"
    return dim


@dataclass(frozen=True)
class Witness:
    """Evidence that ``Sym^m X`` and ``Sym^l X`` are not stably birational.

    ``k`` is the index of the measure used; the two degrees of ``mu_k`` differ.
    """

    k: int
    part: str
    m: int
    l: int
    degree_m: int
    degree_l: int
    details: dict = field(default_factory=dict, compare=False)

    @property
    def degrees(self) -> tuple[int, int]:
        return self.degree_m, self.degree_l

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "part": self.part,
            "m": self.m,
            "l": self.l,
            "degrees": [self.degree_m, self.degree_l],
            "details": self.details,
        }


def distinguish_sym_powers(h: HodgeData, m: int, l: int) -> Witness | None:
    """Try to separate ``Sym^m X`` from ``Sym^l X`` by the degree of some ``mu_k``.

    Holomorphic ``2i``-forms give ``deg mu_1(Sym^m X) >= 2im``, which beats the
    bound ``l*d`` for the other power once ``m > l*d/(2i)``; that route uses
    the exact ``mu_1`` polynomials. Otherwise a nonzero plurigenus (``d > 1``)
    gives leading degree ``m*d`` for ``mu_n``.
    """
    if m == l:
        raise ValueError("m and l must differ")
    if m < 1 or l < 1:
        raise ValueError("m and l must be positive")
    d = h.dim
    big, small = max(m, l), min(m, l)
    form_degrees = [i for i in range(1, d // 2 + 1) if h.h0[2 * i] > 0]
    usable = [i for i in form_degrees if big * 2 * i > small * d]
    if usable:
        i = max(usable)
        deg_m, deg_l = mu1_sym(h, m).degree, mu1_sym(h, l).degree
        if deg_m != deg_l:
            return Witness(
                k=1, part="b", m=m, l=l, degree_m=deg_m, degree_l=deg_l,
                details={"form_degree": 2 * i, "bound": f"{big} > {small}*{d}/{2 * i}"},
            )

    if d > 1 and h.plurigenera:
        positive = sorted(n for n, p in h.plurigenera.items() if p > 0)
        if positive:
            n = positive[0]
            P_n = h.plurigenera[n]
            if (n * d) % 2:
                # the square of a nonzero section of omega^n is a nonzero section of omega^2n
                n = 2 * n
                P_n = max(h.plurigenera.get(n, 1), 1)
            deg_m, coeff_m = mun_sym_leading(P_n, d, n, m)
            deg_l, coeff_l = mun_sym_leading(P_n, d, n, l)
            return Witness(
                k=n, part="a", m=m, l=l, degree_m=deg_m, degree_l=deg_l,
                details={"P_n": P_n, "leading_coefficients": [coeff_m, coeff_l]},
            )
    return None
