import pytest
from hypothesis import given

from conftest import positive_small, small_ordinals
from ordinv.ordinal import OMEGA, Ordinal, heisenberg, hsup, omega_pow, parse_ordinal
from ordinv.sampling import guess_sup, hsup_samples, recursive_heisenberg, sampled_hsup

P = parse_ordinal


@pytest.mark.parametrize(
    "samples,expected",
    [
        (["1", "2", "3"], "w"),
        (["w*2", "w*3", "w*4"], "w^2"),
        (["w^2+1", "w^3+1", "w^4+1"], "w^w"),
        (["w^w+w", "w^w+w^2", "w^w+w^3"], "w^w*2"),
        (["5", "5"], "5"),
    ],
)
def test_guess_sup(samples, expected):
    assert guess_sup([P(s) for s in samples]) == P(expected)


def test_guess_sup_rejects_decreasing():
    with pytest.raises(ValueError):
        guess_sup([P("3"), P("2")])


def test_recursive_heisenberg_examples():
    assert recursive_heisenberg(P("2"), OMEGA) == OMEGA
    assert recursive_heisenberg(OMEGA, P("2")) == P("w*2")


@given(positive_small, small_ordinals)
def test_heisenberg_closed_form(a, b):
    if b < omega_pow(3):
        assert heisenberg(a, b) == recursive_heisenberg(a, b)


@given(positive_small, positive_small)
def test_hsup_closed_form(a, b):
    got = hsup(a, b)
    assert sampled_hsup(a, b) == got
    assert all(s <= got for s in hsup_samples(a, b, range(20)))
