import json
import random

import pytest

from ordinv.expr import Multiset, Ord, Rado, parse_expr
from ordinv.ordinal import OMEGA
from ordinv.oracle import (
    Bounds,
    FinitePoset,
    OracleCapError,
    RealizationError,
    antichain,
    antichain_rank,
    bits,
    chain,
    delete_element,
    downset_height,
    grid,
    height_rank,
    is_augmentation,
    longest_chain,
    max_antichain_size,
    max_linearisation,
    motype_rank,
    random_poset,
    realize,
    reverse,
    width_rank,
)


def ranks(p):
    return width_rank(p), height_rank(p), motype_rank(p)


class TestFinitePoset:
    def test_validation(self):
        with pytest.raises(ValueError):
            FinitePoset.from_relation(2, lambda i, j: True)  # not antisymmetric
        with pytest.raises(ValueError):
            FinitePoset(3, (0b011, 0b110, 0b100))  # not transitive
        with pytest.raises(ValueError):
            FinitePoset(2, (0b10, 0b10))  # not reflexive

    def test_json_round_trip(self):
        p = grid(2, 3)
        for covers in (True, False):
            q = FinitePoset.from_json(json.dumps(p.to_json(covers=covers)))
            assert q.up == p.up
        assert "->" in p.to_dot()


class TestRanks:
    @pytest.mark.parametrize(
        "p,expected",
        [(grid(2, 3), (2, 4, 6)), (chain(5), (1, 5, 5)), (antichain(4), (4, 1, 4)), (chain(0), (0, 0, 0))],
    )
    def test_examples(self, p, expected):
        assert ranks(p) == expected

    def test_antichain_rank(self):
        assert antichain_rank(antichain(3)) == 3
        assert antichain_rank(chain(4)) == 1
        assert antichain_rank(grid(3, 3)) == 3

    def test_characterisations_on_small_examples(self):
        g = grid(2, 2)
        assert longest_chain(g) == 3
        assert downset_height(g) == 5 == motype_rank(g) + 1
        assert downset_height(chain(0)) == 1
        assert max_linearisation(g) == 4

    def test_reverse_and_augmentation(self):
        assert width_rank(reverse(chain(5))) == 1
        assert width_rank(reverse(grid(2, 3))) == 2
        g, c = grid(2, 2), chain(4)
        # relabel the chain along a linear extension of the grid
        order = sorted(range(4), key=lambda i: bin(g.down[i]).count("1"))
        pos = {x: k for k, x in enumerate(order)}
        lin = FinitePoset.from_relation(4, lambda i, j: pos[i] <= pos[j])
        assert is_augmentation(g, lin) and width_rank(lin) <= width_rank(g)
        assert width_rank(c) == 1

    def test_caps(self):
        with pytest.raises(OracleCapError):
            width_rank(antichain(30))
        assert width_rank(antichain(30), cap=40) == 30

    def test_random_properties(self):
        rng = random.Random(3)
        for _ in range(150):
            n = rng.randint(0, 8)
            p = random_poset(rng, n, rng.random())
            w, h, o = ranks(p)
            assert w == antichain_rank(p) == max_antichain_size(p)
            assert h == longest_chain(p)
            assert o == n == max_linearisation(p)
            assert downset_height(p) == o + 1
            assert w <= o <= h * w
            assert width_rank(reverse(p)) == w
            for k in range(n):
                q = delete_element(p, k)
                assert all(a <= b for a, b in zip(ranks(q), (w, h, o)))


class TestRealize:
    def test_grid(self):
        p = realize(parse_expr("2 x 3"))
        assert p.n == 6 and ranks(p) == (2, 4, 6)

    def test_multiset_antichain(self):
        p = realize(Multiset(parse_expr("A2")), Bounds(bag_cut=2))
        assert p.n == 6
        assert sorted(map(tuple, p.labels)) == sorted([(), (0,), (1,), (0, 0), (0, 1), (1, 1)])

    def test_rado_truncation(self):
        # pairs a < b < cut
        assert realize(Rado(), Bounds(omega_cut=3)).n == 3
        prev = (0, 0, 0)
        for cut in range(2, 10):
            p = realize(Rado(), Bounds(omega_cut=cut))
            cur = (width_rank(p, cap=100), height_rank(p), motype_rank(p, cap=100))
            assert all(a <= b for a, b in zip(prev, cur))
            w, h, o = cur
            assert w <= o <= h * w
            prev = cur

    def test_rejections_name_the_subexpression(self):
        with pytest.raises(RealizationError, match=r"w\^2"):
            realize(parse_expr("A2 x w^2"))
        with pytest.raises(RealizationError, match="Tree"):
            realize(parse_expr("Tree(2)"))
        with pytest.raises(RealizationError, match="cap"):
            realize(parse_expr("A100 x A100"), Bounds(max_elements=5000))

    def test_truncation_is_a_substructure(self):
        small = realize(parse_expr("M(w)"), Bounds(omega_cut=2, bag_cut=2))
        big = realize(parse_expr("M(w)"), Bounds(omega_cut=3, bag_cut=2))
        assert all(a <= b for a, b in zip(ranks(small), ranks(big)))

    def test_multiset_height_dominates_power(self):
        # height of the size-n slice of M(Q) is at least height(Q^n)
        for q, n in [("A2", 2), ("2", 2), ("A2", 3), ("2 U 1", 2)]:
            p = realize(parse_expr(f"M({q})"), Bounds(bag_cut=n))
            size_n = [i for i in range(p.n) if len(p.labels[i]) == n]
            mask = sum(1 << i for i in size_n)
            sub = FinitePoset.from_relation(
                len(size_n), lambda i, j: p.leq(size_n[i], size_n[j])
            )
            power = realize(parse_expr(" x ".join([f"({q})"] * n)))
            assert height_rank(sub) >= height_rank(power)
            assert mask


def test_bits():
    assert list(bits(0b10110)) == [1, 2, 4]
