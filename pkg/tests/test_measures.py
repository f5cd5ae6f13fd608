import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motzeta.errors import InputError, NegativeDimension, OddProduct, SizeGuardExceeded
from motzeta.graded import GradedElement, lambda_graded
from motzeta.measures import (
    HodgeData,
    _koszul_sign,
    distinguish_sym_powers,
    invariants_dim_bruteforce,
    mu1,
    mu1_sym,
    mun_sym_leading,
    product_hodge,
)
from motzeta.zm import MElement

G = GradedElement
K3 = HodgeData(dim=2, h0=(1, 0, 1), name="K3")
ELLIPTIC = HodgeData(dim=1, h0=(1, 1), name="E")
POINT = HodgeData(dim=0, h0=(1,), name="pt")
RATIONAL_SURFACE = HodgeData(dim=2, h0=(1, 0, 0), plurigenera={1: 0, 2: 0}, name="P2")


def curve(g):
    return HodgeData(dim=1, h0=(1, g), name=f"C{g}")


def test_oracle_odd_line_square_vanishes():
    assert invariants_dim_bruteforce(G([0, 1]), 2, 2) == 0


def test_oracle_odd_plane_gives_exterior_square():
    assert invariants_dim_bruteforce(G([0, 2]), 2, 2) == 1


def test_oracle_even_plus_odd_line():
    assert invariants_dim_bruteforce(G([1, 1]), 2, 1) == 1


def test_oracle_guard():
    with pytest.raises(SizeGuardExceeded):
        invariants_dim_bruteforce(G([4, 4]), 7, 3)
    with pytest.raises(NegativeDimension):
        invariants_dim_bruteforce(G([1, -1]), 2, 1)


def _cycles(sigma):
    seen, out = set(), []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = sigma[i]
        out.append(cyc)
    return out


@pytest.mark.parametrize("m", range(1, 6))
def test_koszul_sign_matches_cycle_formula(m):
    # on a fixed configuration each cycle carries one vector of parity p and
    # contributes (-1)^(p(c-1))
    for sigma in itertools.permutations(range(m)):
        cycles = _cycles(sigma)
        for parities in itertools.product([0, 1], repeat=len(cycles)):
            odd = [False] * m
            expected = 1
            for cyc, p in zip(cycles, parities):
                for a in cyc:
                    odd[a] = bool(p)
                expected *= (-1) ** (p * (len(cyc) - 1))
            assert _koszul_sign(list(sigma), odd) == expected


def test_mu1_examples():
    assert mu1(K3) == MElement.of(1, 0, 1)
    assert mu1(curve(4)) == MElement.of(1, 4)
    assert mu1(POINT) == MElement.of(1)
    assert mu1(HodgeData(dim=1, h0=(1, 0))) == MElement.of(1)


def test_product_hodge_examples():
    assert product_hodge(ELLIPTIC, ELLIPTIC).h0 == (1, 2, 1)
    assert product_hodge(K3, POINT).h0 == K3.h0
    assert product_hodge(K3, K3).h0 == (1, 0, 2, 0, 1)
    assert product_hodge(K3, K3).dim == 4


hodge_data = st.integers(0, 3).flatmap(
    lambda d: st.lists(st.integers(0, 3), min_size=d, max_size=d).map(
        lambda rest: HodgeData(dim=d, h0=(1, *rest))
    )
)


@given(hodge_data, hodge_data)
def test_mu1_is_multiplicative(a, b):
    assert mu1(product_hodge(a, b)) == mu1(a) * mu1(b)


def test_mu1_sym_examples():
    assert mu1_sym(ELLIPTIC, 5) == MElement.of(1, 1)
    assert mu1_sym(K3, 3) == MElement.of(1, 0, 1, 0, 1, 0, 1)
    assert [invariants_dim_bruteforce(mu1(K3).poly, 3, j) for j in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    assert mu1_sym(curve(3), 0) == MElement.of(1)


def _small_hodge():
    # total basis dimension <= 4, d <= 3
    for d in range(0, 4):
        for rest in itertools.product(range(4), repeat=d):
            if 1 + sum(rest) <= 4:
                yield HodgeData(dim=d, h0=(1, *rest))


@pytest.mark.parametrize("h", list(_small_hodge()), ids=lambda h: "-".join(map(str, h.h0)))
def test_mu1_sym_matches_invariant_oracle(h):
    for m in range(1, 5):
        got = mu1_sym(h, m)
        for j in range(m * h.dim + 1):
            assert got[j] == invariants_dim_bruteforce(mu1(h).poly, m, j)


@pytest.mark.parametrize("h", list(_small_hodge()), ids=lambda h: "-".join(map(str, h.h0)))
def test_degree_bounds(h):
    for m in range(1, 8):
        deg = mu1_sym(h, m).degree
        assert deg <= m * h.dim
        for i in range(1, h.dim // 2 + 1):
            if h.h0[2 * i] > 0:
                assert deg >= 2 * i * m


@pytest.mark.parametrize("g", range(0, 7))
def test_curve_sequences_stabilize(g):
    stable = mu1_sym(curve(g), g)
    assert stable == MElement(G([1, 1]) ** g)
    for m in range(g, g + 10):
        assert mu1_sym(curve(g), m) == stable


def test_mun_leading_examples():
    assert mun_sym_leading(2, 2, 2, 3) == (6, 4)
    assert mun_sym_leading(3, 2, 2, 2) == (4, 6)
    for d, m in [(2, 1), (2, 5), (4, 3), (3, 2)]:
        n = 2
        assert mun_sym_leading(1, d, n, m) == (m * d, 1)


def test_mun_leading_needs_even_product():
    with pytest.raises(OddProduct):
        mun_sym_leading(1, 3, 1, 2)


def test_witness_k3_part_b():
    w = distinguish_sym_powers(K3, 2, 3)
    assert w is not None
    assert (w.k, w.part) == (1, "b")
    assert w.degrees == (4, 6)


def test_witness_general_type_part_a():
    surface = HodgeData(dim=2, h0=(1, 0, 0), plurigenera={2: 2}, name="gt")
    w = distinguish_sym_powers(surface, 4, 7)
    assert w is not None
    assert (w.k, w.part) == (2, "a")
    assert w.degrees == (8, 14)


def test_witness_doubles_odd_plurigenus_index():
    threefold = HodgeData(dim=3, h0=(1, 0, 0, 1), plurigenera={1: 1}, name="CY3")
    w = distinguish_sym_powers(threefold, 2, 5)
    assert w.k == 2 and w.degrees == (6, 15)


@pytest.mark.parametrize("m,l", [(1, 2), (2, 3), (5, 3), (7, 1)])
def test_no_witness_for_rational_surface(m, l):
    assert distinguish_sym_powers(RATIONAL_SURFACE, m, l) is None
    assert distinguish_sym_powers(HodgeData(dim=2, h0=(1, 0, 0)), m, l) is None


def test_no_plurigenus_witness_for_curves():
    # Sym^m of a curve is eventually a projective bundle over its Jacobian
    assert distinguish_sym_powers(HodgeData(dim=1, h0=(1, 2), plurigenera={1: 2}), 5, 7) is None


def test_part_b_bound():
    # d=2, i=1: needs max(m, l) > min(m, l); always true, degrees 2m
    w = distinguish_sym_powers(product_hodge(ELLIPTIC, ELLIPTIC), 3, 2)
    assert w.degrees == (6, 4)
    # d=4 with only a 2-form: needs big > 2*small
    fourfold = HodgeData(dim=4, h0=(1, 0, 1, 0, 0))
    assert distinguish_sym_powers(fourfold, 2, 3) is None
    assert distinguish_sym_powers(fourfold, 2, 5).degrees == (4, 10)


def test_hodge_json_round_trip_and_errors():
    obj = {"name": "K3", "dim": 2, "h0": [1, 0, 1], "plurigenera": {"1": 1, "2": 1}}
    h = HodgeData.from_json(obj)
    assert h.plurigenera == {1: 1, 2: 1}
    assert HodgeData.from_json(h.to_json()) == h
    with pytest.raises(InputError, match="h0"):
        HodgeData.from_json({"dim": 2, "h0": [1, 0]})
    with pytest.raises(InputError, match="dim"):
        HodgeData.from_json({"h0": [1]})
    with pytest.raises(InputError, match="h0"):
        HodgeData.from_json({"dim": 1, "h0": [2, 0]})
    with pytest.raises(InputError, match="plurigenera"):
        HodgeData.from_json({"dim": 1, "h0": [1, 0], "plurigenera": {"1": -1}})


@settings(max_examples=50, deadline=None)
@given(hodge_data, st.integers(0, 6))
def test_mu1_sym_is_lambda(h, m):
    assert mu1_sym(h, m).poly == lambda_graded(m, mu1(h).poly)
