"""A symbolic model of the Grothendieck ring of varieties.

Elements are integer combinations of ``L^a * <class>`` where ``L`` is the
class of the affine line and ``<class>`` is a free commutative product of
named generators (the empty product is the point). Symmetric powers of
generators come from user-declared rules; ``Sym^n(L^a g) = L^(na) Sym^n(g)``
and sums expand through the lambda-ring addition rule.

Setting ``L = 0`` lands in the ring of stable birational classes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import InputError, MissingRule, SizeGuardExceeded, UnassignedSymbol
from .series import (
    Ring,
    TruncatedSeries,
    exp_from_log_counts,
    from_polynomial,
    product_of_powers,
    series_mul,
)

Monomial = tuple  # sorted tuple of generator names


def _mono(names: Iterable[str] | str) -> Monomial:
    if isinstance(names, str):
        return (names,)
    return tuple(sorted(names))


class K0Expr:
    """``sum c * L^a * <monomial>``, stored as ``{(monomial, a): c}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Monomial, int], int] = {}
        for (mono, a), c in items:
            if a < 0:
                raise ValueError("L-exponents must be nonnegative")
            key = (_mono(mono), int(a))
            acc[key] = acc.get(key, 0) + int(c)
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def _normalized(cls, terms: dict) -> K0Expr:
        # terms already keyed by sorted monomials; skips revalidation
        out = cls.__new__(cls)
        out.terms = {k: c for k, c in terms.items() if c}
        return out

    @classmethod
    def one(cls) -> K0Expr:
        return cls({((), 0): 1})

    @classmethod
    def zero(cls) -> K0Expr:
        return cls()

    @classmethod
    def lefschetz(cls, a: int = 1) -> K0Expr:
        return cls({((), a): 1})

    @classmethod
    def symbol(cls, *names: str, a: int = 0, coeff: int = 1) -> K0Expr:
        return cls({(_mono(names), a): coeff})

    def _lift(self, other):
        if isinstance(other, K0Expr):
            return other
        if isinstance(other, int):
            return K0Expr({((), 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return K0Expr._normalized(acc)

    __radd__ = __add__

    def __neg__(self):
        return K0Expr._normalized({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return K0Expr._normalized({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, K0Expr):
            return NotImplemented
        acc: dict = {}
        for (m1, a1), c1 in self.terms.items():
            for (m2, a2), c2 in other.terms.items():
                key = (tuple(sorted(m1 + m2)) if m1 and m2 else m1 or m2, a1 + a2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return K0Expr._normalized(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = K0Expr.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def shift_L(self, a: int) -> K0Expr:
        """Multiply by ``L^a``."""
        return K0Expr(((m, e + a), c) for (m, e), c in self.terms.items())

    def min_L_exponent(self) -> int | None:
        return min((a for (_, a) in self.terms), default=None)

    def generators(self) -> set[str]:
        return {g for (m, _) in self.terms for g in m}

    def is_zero(self) -> bool:
        return not self.terms

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, a), c in self._sorted_terms():
            factors = []
            if a:
                factors.append("L" if a == 1 else f"L^{a}")
            factors.extend(f"<{g}>" for g in m)
            body = "*".join(factors) or "1"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            elif body == "1":
                parts.append(str(c))
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"class": list(m), "L": a, "mult": str(c)} for (m, a), c in self._sorted_terms()]

    @classmethod
    def from_json(cls, obj) -> K0Expr:
        if not isinstance(obj, list):
            raise InputError("expr: expected a list of terms")
        terms = []
        for i, t in enumerate(obj):
            if not isinstance(t, Mapping):
                raise InputError(f"expr[{i}]: expected an object")
            cls_ = t.get("class", [])
            if isinstance(cls_, str):
                cls_ = [cls_]
            try:
                a = int(t.get("L", 0))
                c = int(t.get("mult", 1))
            except (TypeError, ValueError):
                raise InputError(f"expr[{i}]: L and mult must be integers") from None
            if a < 0:
                raise InputError(f"expr[{i}].L: must be nonnegative")
            terms.append(((tuple(cls_), a), c))
        return cls(terms)


class K0Ring(Ring):
    name = "K0"

    def zero(self):
        return K0Expr()

    def one(self):
        return K0Expr.one()

    def is_unit(self, x):
        return x == 1 or x == -1

    def unit_inverse(self, x):
        return x

    def coerce(self, x):
        return x if isinstance(x, K0Expr) else K0Expr({((), 0): int(x)})

    def dot(self, xs, ys):
        acc: dict = {}
        for x, y in zip(xs, ys):
            for (m1, a1), c1 in x.terms.items():
                for (m2, a2), c2 in y.terms.items():
                    key = (tuple(sorted(m1 + m2)) if m1 and m2 else m1 or m2, a1 + a2)
                    acc[key] = acc.get(key, 0) + c1 * c2
        return K0Expr._normalized(acc)

    def encode(self, x):
        return x.to_json()

    def decode(self, obj):
        return K0Expr.from_json(obj)


K0 = K0Ring()


def set_L_zero(x: K0Expr) -> K0Expr:
    """Image in ``K0 / (L)``: every term carrying a positive power of ``L`` dies."""
    return K0Expr({k: c for k, c in x.terms.items() if k[1] == 0})


def sym_name(name: str, n: int) -> str:
    return f"Sym^{n}({name})"


class SymRule:
    """``n -> Sym^n(generator)`` as a K0 expression."""

    def __init__(self, generator: Monomial | str):
        self.generator = _mono(generator)

    def __call__(self, n: int) -> K0Expr:
        if n == 0:
            return K0Expr.one()
        if n == 1:
            return K0Expr({(self.generator, 0): 1})
        return self.value(n)

    def value(self, n: int) -> K0Expr:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class FreeSymRule(SymRule):
    """Each ``Sym^n(g)`` for ``n >= 2`` is a new, uninterpreted class."""

    def value(self, n):
        return K0Expr.symbol(sym_name("*".join(self.generator), n))

    def to_json(self):
        return {"kind": "free"}


class PeriodicSymRule(SymRule):
    """``<Sym^(m+d) g> = <Sym^m g>`` with ``<Sym^(kd) g> = 1``: the index-``d`` Severi-Brauer pattern."""

    def __init__(self, generator, period: int):
        super().__init__(generator)
        if period < 2:
            raise ValueError("period must be at least 2 (period 1 means the class is 1)")
        self.period = period

    def __call__(self, n):
        r = n % self.period
        if r == 0:
            return K0Expr.one()
        return super().__call__(r)

    def value(self, n):
        return K0Expr.symbol(sym_name("*".join(self.generator), n))

    def to_json(self):
        return {"kind": "periodic", "period": self.period}


class TableSymRule(SymRule):
    def __init__(self, generator, values: Mapping[int, K0Expr]):
        super().__init__(generator)
        self.values = {int(n): v for n, v in values.items()}
        for n in (0, 1):
            if n in self.values and self.values[n] != super().__call__(n):
                raise ValueError(f"table rule for {generator!r}: Sym^{n} must be the {'unit' if n == 0 else 'generator'}")

    def value(self, n):
        if n not in self.values:
            raise MissingRule(f"{'*'.join(self.generator)} (no table entry for Sym^{n})")
        return self.values[n]

    def to_json(self):
        return {"kind": "table", "values": {str(n): v.to_json() for n, v in sorted(self.values.items())}}


class SymRuleSet:
    """Sym-rules keyed by monomial; a product of generators needs its own rule."""

    def __init__(self, rules: Mapping[Monomial | str, SymRule | Callable[[int], K0Expr]] = ()):
        self.rules = {}
        for key, rule in dict(rules).items():
            mono = _mono(key)
            if rule(0) != K0Expr.one():
                raise ValueError(f"rule for {key!r}: Sym^0 must be 1")
            if rule(1) != K0Expr({(mono, 0): 1}):
                raise ValueError(f"rule for {key!r}: Sym^1 must be the generator itself")
            self.rules[mono] = rule

    def __call__(self, mono: Monomial, n: int) -> K0Expr:
        if not mono:
            return K0Expr.one()
        try:
            rule = self.rules[mono]
        except KeyError:
            raise MissingRule("*".join(mono)) from None
        return rule(n)

    def with_rules(self, extra: Mapping) -> SymRuleSet:
        merged = dict(self.rules)
        merged.update({_mono(k): v for k, v in extra.items()})
        return SymRuleSet(merged)

    @classmethod
    def free(cls, names: Iterable[str]) -> SymRuleSet:
        return cls({n: FreeSymRule(n) for n in names})


def _term_series(mono: Monomial, a: int, rules: SymRuleSet, horizon: int) -> TruncatedSeries:
    return TruncatedSeries(K0, tuple(rules(mono, n).shift_L(n * a) for n in range(horizon + 1)))


def kapranov_zeta(x: K0Expr, rules: SymRuleSet, horizon: int) -> TruncatedSeries:
    """``sum_n [Sym^n X] t^n`` up to ``horizon``."""
    return product_of_powers(
        K0, ((_term_series(m, a, rules, horizon), c) for (m, a), c in x.terms.items()), horizon
    )


def sym_expr(n: int, x: K0Expr, rules: SymRuleSet) -> K0Expr:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return kapranov_zeta(x, rules, n)[n]


class K0Lambda:
    ring = K0

    def __init__(self, rules: SymRuleSet):
        self.rules = rules

    def lambda_series(self, x: K0Expr, horizon: int) -> TruncatedSeries:
        return kapranov_zeta(x, self.rules, horizon)

    def lambda_op(self, n: int, x: K0Expr) -> K0Expr:
        return sym_expr(n, x, self.rules)


def sb_class(i: int, d: int, name: str = "B") -> K0Expr:
    """``<Sym^i B>`` for a Severi-Brauer ``B`` of index ``d``, reduced mod ``d``."""
    r = i % d
    if r == 0:
        return K0Expr.one()
    if r == 1:
        return K0Expr.symbol(name)
    return K0Expr.symbol(sym_name(name, r))


def severi_brauer_zeta(d: int, horizon: int, name: str = "B") -> TruncatedSeries:
    """Kapranov zeta of an index-``d`` Severi-Brauer variety modulo ``L``."""
    if d < 1:
        raise ValueError("index d must be positive")
    if d == 1:
        x, rules = K0Expr.one(), SymRuleSet()
    else:
        x, rules = K0Expr.symbol(name), SymRuleSet({name: PeriodicSymRule(name, d)})
    return kapranov_zeta(x, rules, horizon).map(set_L_zero)


def verify_sb_closed_form(d: int, horizon: int) -> bool:
    """Check ``(1 - t^d) Z(B, t) == sum_{i<d} <Sym^i B> t^i`` up to ``horizon``."""
    if horizon < 2 * d:
        raise ValueError(f"horizon must be at least 2d = {2 * d}")
    zeta = severi_brauer_zeta(d, horizon)
    one_minus = [K0Expr.one()] + [K0Expr()] * (d - 1) + [-K0Expr.one()]
    lhs = series_mul(zeta, from_polynomial(K0, one_minus, horizon))
    rhs = from_polynomial(K0, [sb_class(i, d) for i in range(d)], horizon)
    return lhs == rhs


def counting_specialize(x: K0Expr, assignment: Mapping[str, int], q: int) -> int:
    """Point count: ``L -> q`` and each generator to its assigned count."""
    total = 0
    for (mono, a), c in x.terms.items():
        value = c * q**a
        for g in mono:
            if g not in assignment:
                raise UnassignedSymbol(g)
            value *= assignment[g]
        total += value
    return total


def count_assignment(counts: Mapping[str, list[int]], horizon: int) -> dict[str, int]:
    """Counts over F_q for each generator and its free symmetric powers.

    ``|Sym^n X(F_q)|`` is the ``t^n`` coefficient of ``exp(sum N_m t^m / m)``
    where ``N_m = |X(F_{q^m})|``.
    """
    out = {}
    for name, ns in counts.items():
        series = exp_from_log_counts(ns, min(horizon, len(ns)))
        out[name] = ns[0]
        for n in range(2, series.horizon + 1):
            out[sym_name(name, n)] = series[n]
    return out


def expr_counts(x: K0Expr, counts: Mapping[str, list[int]], q: int, length: int) -> list[int]:
    """``N_m`` of ``x`` for ``m = 1..length``; products of generators multiply."""
    out = []
    for m in range(1, length + 1):
        total = 0
        for (mono, a), c in x.terms.items():
            value = c * q ** (a * m)
            for g in mono:
                if g not in counts:
                    raise UnassignedSymbol(g)
                value *= counts[g][m - 1]
            total += value
        out.append(total)
    return out


def _cycle_count(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if not seen[start]:
            cycles += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = perm[i]
    return cycles


def burnside_multiset_count(N: int, n: int, max_n: int = 8) -> int:
    """Orbits of ``S_n`` on ``N^n`` colourings: ``(1/n!) sum_sigma N^cycles(sigma)``."""
    if N < 0 or n < 0:
        raise ValueError("N and n must be nonnegative")
    if n > max_n:
        raise SizeGuardExceeded(f"n = {n} exceeds enumeration guard {max_n}")
    total = sum(N ** _cycle_count(p) for p in itertools.permutations(range(n)))
    count, rem = divmod(total, math.factorial(n))
    assert rem == 0
    return count


@dataclass(frozen=True)
class Stratum:
    partition: tuple[int, ...]
    multiplicities: dict
    dimension: int
    normalizer_order: int


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def stratify(n: int, k: int) -> list[Stratum]:
    """Strata of ``Sym^n X`` (``dim X = k``) indexed by multiplicity type.

    A point of type ``(1^l1, ..., n^ln)`` has ``r = sum l_i`` distinct support
    points, so its stratum has dimension ``r*k``; the group preserving the
    pattern has order ``prod (i!)^l_i * l_i!``.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    out = []
    for lam in sorted(partitions(n)):
        mult = {i: lam.count(i) for i in sorted(set(lam))}
        order = 1
        for i, l in mult.items():
            order *= math.factorial(i) ** l * math.factorial(l)
        out.append(Stratum(lam, mult, len(lam) * k, order))
    return out
