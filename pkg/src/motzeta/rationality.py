"""Rationality analysis for power series whose coefficients lie in M.

A series ``sum g_i t^i`` with every ``g_i`` in the free abelian group G is
rational exactly when, past some offset, ``g_{i+p} = h_i g_i`` with ``h``
periodic of period ``p``. On a finite window this can only be *consistent*,
never proven. Periodicity of ``h`` is tested without division as
``g_{i+2p} * g_i == g_{i+p}^2``.

The irrationality certificate follows the growth argument: if the degrees of
``g_m`` keep growing, any ratio ``h`` has positive degree, its lowest
nonconstant coefficient forces unbounded coefficients along an arithmetic
progression, and that contradicts the (declared, never inferred) premise that
each fixed-degree coefficient is bounded in ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import HorizonTooSmall
from .zm import MElement

RATIONAL = "RationalConsistent"
IRRATIONAL = "IrrationalCertificate"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class AnalysisContext:
    horizon: int = 60
    p_max: int = 8
    i0_max: int = 12
    bounded_coefficients: bool = False
    growth_constant: float | None = None

    def __post_init__(self):
        if self.p_max < 1:
            raise ValueError("p_max must be at least 1")
        if self.i0_max < 0:
            raise ValueError("i0_max must be nonnegative")
        if 2 * self.p_max + self.i0_max >= self.horizon:
            raise HorizonTooSmall(
                f"horizon {self.horizon} must exceed 2*p_max + i0_max = {2 * self.p_max + self.i0_max}"
            )
        if self.growth_constant is not None and self.growth_constant <= 0:
            raise ValueError("growth_constant must be positive")

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "p_max": self.p_max,
            "i0_max": self.i0_max,
            "bounded_coefficients": self.bounded_coefficients,
            "growth_constant": self.growth_constant,
        }


@dataclass(frozen=True)
class RationalityVerdict:
    kind: str
    p: int | None = None
    i0: int | None = None
    depth: int | None = None
    reason: str = ""
    premises: dict = field(default_factory=dict)
    degrees: tuple[int, ...] = ()
    per_degree_max: tuple[int, ...] = ()
    diagnostics: dict = field(default_factory=dict)

    def summary(self) -> str:
        if self.kind == RATIONAL:
            return (
                f"{RATIONAL}(p={self.p}, i0={self.i0}): periodic ratios verified at "
                f"{self.depth} indices; consistent with a rational function up to this horizon"
            )
        if self.kind == IRRATIONAL:
            return f"{IRRATIONAL}: {self.reason}"
        return f"{INCONCLUSIVE}: {self.reason}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "i0": self.i0,
            "depth": self.depth,
            "reason": self.reason,
            "degrees": list(self.degrees),
            "per_degree_max": list(self.per_degree_max),
            "premises": self.premises,
            "diagnostics": self.diagnostics,
            "summary": self.summary(),
        }


def check_periodic_ratio(g: Sequence[MElement], p: int, i0: int, horizon: int) -> bool:
    """Whether ``g_{i+2p} g_i == g_{i+p}^2`` for every ``i0 <= i <= horizon - 2p``.

    Equivalently ``g_{i0 + jp} = h^j g_{i0}`` along each residue class, the
    form in which the growth argument consumes the relation.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if horizon < i0 + 2 * p + 1:
        raise HorizonTooSmall(f"horizon {horizon} < i0 + 2p + 1 = {i0 + 2 * p + 1}")
    if len(g) < horizon + 1:
        raise HorizonTooSmall(f"only {len(g)} coefficients for horizon {horizon}")
    return _first_failure(g, p, i0, horizon) is None


def _first_failure(g, p, i0, horizon):
    for i in range(i0, horizon - 2 * p + 1):
        if g[i + 2 * p].poly * g[i].poly != g[i + p].poly * g[i + p].poly:
            return i
    return None


def degree_and_bound_profile(g: Sequence[MElement], r_max: int) -> tuple[list[int], list[int]]:
    degrees = [x.degree for x in g]
    per_degree_max = [max((abs(x[r]) for x in g), default=0) for r in range(r_max + 1)]
    return degrees, per_degree_max


def _degrees_grow(degrees: Sequence[int], ctx: AnalysisContext) -> bool:
    # every candidate progression i0 + j*p must climb in degree, i.e. any
    # ratio h along it has positive degree
    for p in range(1, ctx.p_max + 1):
        for i0 in range(ctx.i0_max + 1):
            idx = range(i0, ctx.horizon + 1, p)
            if any(degrees[b] <= degrees[a] for a, b in zip(idx, idx[1:])):
                return False
    return True


def analyze(g: Sequence[MElement], ctx: AnalysisContext) -> RationalityVerdict:
    if len(g) < ctx.horizon + 1:
        raise HorizonTooSmall(f"need {ctx.horizon + 1} coefficients, got {len(g)}")
    g = list(g[: ctx.horizon + 1])
    for i, x in enumerate(g):
        if not isinstance(x, MElement):
            raise TypeError(f"coefficient {i} is not an element of M")

    degrees, per_degree_max = degree_and_bound_profile(g, max(x.degree for x in g))
    profile = {"degrees": tuple(degrees), "per_degree_max": tuple(per_degree_max)}

    failures = {}
    for p in range(1, ctx.p_max + 1):
        for i0 in range(ctx.i0_max + 1):
            bad = _first_failure(g, p, i0, ctx.horizon)
            if bad is None:
                return RationalityVerdict(
                    kind=RATIONAL, p=p, i0=i0, depth=ctx.horizon - 2 * p - i0 + 1,
                    reason="periodic ratio relation holds at every checked index",
                    premises={}, **profile,
                )
            failures[(p, i0)] = bad

    growing = _degrees_grow(degrees, ctx)
    growth_ok = None
    if ctx.growth_constant is not None:
        growth_ok = all(
            degrees[m] >= 2 * m * ctx.growth_constant for m in range(1, ctx.horizon + 1)
        )
    premises = {
        "bounded_coefficients": ctx.bounded_coefficients,
        "bounded_coefficients_source": "declared" if ctx.bounded_coefficients else None,
        "degrees_grow_along_progressions": growing,
        "growth_constant": ctx.growth_constant,
        "growth_bound_verified": growth_ok,
    }
    diagnostics = {
        "candidates_rejected": len(failures),
        "first_failure_index": {f"{p},{i0}": i for (p, i0), i in sorted(failures.items())},
    }

    if ctx.bounded_coefficients and growing and growth_ok is not False:
        ratio_degree = min(
            degrees[i0 + p] - degrees[i0]
            for p in range(1, ctx.p_max + 1)
            for i0 in range(ctx.i0_max + 1)
        )
        diagnostics["min_ratio_degree"] = ratio_degree
        reason = (
            "degrees of g_m grow along every candidate progression, so any periodic "
            f"ratio h would have degree >= {ratio_degree}; its lowest nonconstant "
            "coefficient would make a fixed-degree coefficient of g unbounded, "
            "contradicting the bounded-coefficients premise"
        )
        return RationalityVerdict(
            kind=IRRATIONAL, reason=reason, premises=premises, diagnostics=diagnostics, **profile
        )

    missing = []
    if not ctx.bounded_coefficients:
        missing.append("bounded_coefficients premise not supplied")
    if not growing:
        missing.append("degrees do not grow along every candidate progression")
    if growth_ok is False:
        missing.append("degree lower bound 2mC fails")
    return RationalityVerdict(
        kind=INCONCLUSIVE,
        reason="no periodic ratio in range; " + "; ".join(missing),
        premises=premises, diagnostics=diagnostics, **profile,
    )
