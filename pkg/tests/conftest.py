import random

import pytest
from hypothesis import strategies as st

from motzeta.graded import GradedElement
from motzeta.k0 import K0Expr
from motzeta.zm import MElement, ZMElement


@pytest.fixture
def rng():
    return random.Random(20261015)


def random_graded(rng, max_degree=4, max_dim=3, allow_negative=True):
    lo = -max_dim if allow_negative else 0
    return GradedElement(rng.randint(lo, max_dim) for _ in range(rng.randint(0, max_degree + 1)))


def random_melement(rng, max_degree=3, bound=2):
    return MElement(GradedElement([1] + [rng.randint(-bound, bound) for _ in range(rng.randint(0, max_degree))]))


def random_zm(rng, n_terms=3, max_coeff=2):
    return ZMElement(
        (random_melement(rng), rng.randint(-max_coeff, max_coeff)) for _ in range(rng.randint(0, n_terms))
    )


def random_k0(rng, names=("X", "Y"), n_terms=3, max_L=2, max_coeff=2):
    terms = []
    for _ in range(rng.randint(0, n_terms)):
        mono = rng.choice([(), (rng.choice(names),)])
        terms.append(((mono, rng.randint(0, max_L)), rng.randint(-max_coeff, max_coeff)))
    return K0Expr(terms)


graded_elements = st.lists(st.integers(-3, 3), max_size=5).map(GradedElement)
nonneg_graded = st.lists(st.integers(0, 3), max_size=5).map(GradedElement)


# lines appended by the acceptance suite, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
