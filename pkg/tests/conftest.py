import random

import pytest
from hypothesis import settings, strategies as st

from ordinv.expr import Antichain, CartProd, DirectProd, DisjointSum, LexSum, Multiset, Ord, Rado, Seq, Tree
from ordinv.ordinal import ZERO, Ordinal, add, omega_pow

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def ordinals(depth: int = 1, max_terms: int = 3, max_coeff: int = 4):
    """Ordinals whose exponents nest at most ``depth`` levels."""
    if depth == 0:
        return st.integers(0, max_coeff * 3).map(Ordinal.of)
    exps = st.sets(ordinals(depth - 1, max_terms, max_coeff), max_size=max_terms)

    def build(args):
        es, coeffs = args
        out = ZERO
        for e, c in zip(sorted(es, reverse=True), coeffs):
            out = add(out, omega_pow(e) * Ordinal.of(c))
        return out

    return st.tuples(exps, st.lists(st.integers(1, max_coeff), min_size=max_terms, max_size=max_terms)).map(build)


below_omega_omega = ordinals(1)
small_ordinals = ordinals(2, max_terms=2, max_coeff=3)
positive_small = small_ordinals.filter(bool)
limits = small_ordinals.filter(lambda a: a.is_limit)


def _leaf():
    return st.one_of(
        st.integers(0, 4).map(Ord),
        st.integers(0, 3).map(Antichain),
        ordinals(1, max_terms=2, max_coeff=2).map(Ord),
        st.just(Rado()),
    )


def _extend(children):
    items = st.lists(children, min_size=2, max_size=3)
    return st.one_of(
        items.map(LexSum),
        items.map(DisjointSum),
        items.map(CartProd),
        st.tuples(children, children).map(lambda t: DirectProd(*t)),
        children.map(Multiset),
        children.map(Seq),
        children.map(Tree),
    )


exprs = st.recursive(_leaf(), _extend, max_leaves=5)


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
