import random

import pytest
from hypothesis import given, strategies as st

from conftest import below_omega_omega, exprs, positive_small, small_ordinals
from ordinv.corpus import finitary_corpus
from ordinv.expr import Antichain, CartProd, DisjointSum, Multiset, Ord, Rado, Seq, Tree, format_expr, parse_expr
from ordinv.invariants import (
    Exact,
    InconsistentInvariants,
    InvariantTriple,
    Opaque,
    Range,
    bounded,
    check_triple,
    construct_poset_with_width,
    h_star,
    invariants,
    is_epsilon_number,
    is_transferable,
    kt_refine,
    seq_motype,
    value_to_json,
    width_cart,
    wprod2,
)
from ordinv.ordinal import OMEGA, ONE, ZERO, Ordinal, is_additively_principal, add, hsup, nat_sum, omega_pow, parse_ordinal, to_json
from ordinv.oracle import height_rank, max_antichain_size, realize

P = parse_ordinal


def E(s):
    return Exact(P(s))


def inv(text):
    return invariants(parse_expr(text))


class TestValues:
    def test_bounded_normalises(self):
        assert bounded(OMEGA, OMEGA) == Exact(OMEGA)
        assert isinstance(bounded(ONE, OMEGA), Range)
        with pytest.raises(InconsistentInvariants):
            bounded(OMEGA, ONE)
        with pytest.raises(ValueError):
            Range(OMEGA, OMEGA)

    def test_json(self):
        t = inv("Tree(2)")
        assert t.to_json()["o"] == {"theta_of": to_json(2)}
        assert t.to_json()["h"] == {"exact": to_json(OMEGA)}
        assert value_to_json(bounded(1, OMEGA)) == {"range": [to_json(1), to_json(OMEGA)]}
        assert "opaque" in value_to_json(inv("Tree(1) x w").o)

    def test_text(self):
        t = inv("w x w x w")
        assert str(t) == "{o: w^3, h: w, w: w^2}"
        assert "w: exact w^2" in t.describe()
        assert "w: range [w^3, w^4]" in inv("w x w x w x w").describe()
        assert "o: opaque theta(w^w * (w + 1))" in inv("Tree(w+1)").describe()


class TestTable:
    @pytest.mark.parametrize(
        "text,o,h,w",
        [
            ("1", "1", "1", "1"),
            ("w", "w", "w", "1"),
            ("w^2+3", "w^2+3", "w^2+3", "1"),
            ("A1", "1", "1", "1"),
            ("A5", "5", "1", "5"),
            ("Rado", "w^2", "w", "w"),
            ("M(A3)", "w^3", "w", "w^2"),
            ("M(1)", "w", "w", "1"),
            ("Seq(1)", "w", "w", "1"),
            ("Seq(2)", "w^w", "w", "w^w"),
            ("Seq(w)", "w^w^w", "w", "w^w^w"),
            ("M(w)", "w^w", "w", "w^w"),
            ("w x w x w", "w^3", "w", "w^2"),
            ("A2 . w", "w", "w", "2"),
            ("w . A2", "w*2", "w", "2"),
            ("w U w", "w*2", "w", "2"),
            ("w ++ A2", "w+2", "w+1", "2"),
            ("M(A0)", "1", "1", "1"),
            ("0", "0", "0", "0"),
            ("A0 U 0", "0", "0", "0"),
        ],
    )
    def test_rows(self, text, o, h, w):
        assert inv(text) == InvariantTriple(E(o), E(h), E(w))

    def test_trees(self):
        t = inv("Tree(2)")
        assert t.o == t.w == Opaque("theta(w^w * 2)", P("2"))
        assert t.h == Exact(OMEGA)
        assert inv("Tree(0)") == InvariantTriple(E("0"), E("0"), E("0"))

    def test_empty_poset(self):
        assert inv("A0") == InvariantTriple(E("0"), E("0"), E("0"))


class TestScalarRules:
    @pytest.mark.parametrize("h,expected", [("w", "w"), ("w+1", "w^2"), ("1", "w"), ("0", "0"), ("w^w", "w^w"), ("w*2", "w^2")])
    def test_h_star(self, h, expected):
        assert h_star(P(h)) == P(expected)

    @pytest.mark.parametrize(
        "a,b,expected",
        [("w", "w^2", "w^2"), ("w^2", "w^2", "w^3"), ("w^w", "w^w", "w^(w*2)"), ("3", "w+1", "3"), ("w+1", "w+1", "w+2")],
    )
    def test_wprod2(self, a, b, expected):
        assert wprod2(P(a), P(b)) == P(expected)

    @given(small_ordinals, small_ordinals)
    def test_wprod2_laws(self, a, b):
        assert wprod2(a, b) == wprod2(b, a)
        assert wprod2(OMEGA, a) == a
        if not a.is_finite:
            assert wprod2(a, add(b, 1)) == add(wprod2(a, b), 1)

    def test_epsilon_branch_is_unreachable(self):
        rng = random.Random(5)
        from ordinv.corpus import random_ordinal

        assert not any(is_epsilon_number(random_ordinal(rng, 2)) for _ in range(500))
        assert seq_motype(P("w")) == omega_pow(omega_pow(OMEGA))
        assert seq_motype(P("w+3")) == omega_pow(omega_pow(P("w+3")))
        assert seq_motype(3) == omega_pow(omega_pow(2))


class TestCartesian:
    def test_three_omegas(self):
        assert width_cart([Ord(OMEGA)] * 3) == Exact(omega_pow(2))

    def test_transferable_times_finite(self):
        e = [CartProd([Ord(OMEGA), Ord(OMEGA)]), Ord(3)]
        assert width_cart(e) == E("w*3")

    def test_four_omegas_is_an_honest_range(self):
        w = width_cart([Ord(OMEGA)] * 4)
        assert isinstance(w, Range)
        assert omega_pow(2) <= w.lo <= w.hi <= omega_pow(4)
        assert w == Range(omega_pow(3), omega_pow(4))

    def test_antichain_factor(self):
        assert inv("w^2 x w x A3").w == E("w^2*3")
        assert inv("Rado x A2").w == E("w*2")

    def test_height_of_products(self):
        for a, b in [("w", "w"), ("w+1", "w^2"), ("3", "w+2")]:
            assert inv(f"({a}) x ({b})").h == Exact(hsup(P(a), P(b)))
        assert inv("Rado x M(A2)").h == Exact(hsup(OMEGA, OMEGA))

    def test_bounds_of_general_products_are_sound(self):
        # every realised truncation is a substructure, so its width is below hi
        for text in ["Rado x w", "M(2) x 2", "w^2 x w x w"]:
            w = inv(text).w
            assert isinstance(w, (Exact, Range))

    @pytest.mark.parametrize(
        "e,expected",
        [
            (CartProd([Ord(omega_pow(2)), Ord(OMEGA)]), True),
            (Ord(OMEGA), True),
            (Antichain(2), False),
            (Ord(5), False),
            (CartProd([Ord(OMEGA), Ord(2)]), False),
            (Rado(), False),
        ],
    )
    def test_is_transferable(self, e, expected):
        assert is_transferable(e) is expected


class TestRefinement:
    def test_multiplicatively_principal(self):
        t = InvariantTriple(E("w^w"), E("w"), bounded(1, P("w^w*2")))
        assert kt_refine(t).w == E("w^w")

    def test_interval_narrowing(self):
        t = InvariantTriple(E("w^2"), E("w"), bounded(1, P("w^3")))
        assert kt_refine(t).w == Range(OMEGA, omega_pow(2))

    def test_fixpoint_and_opaque(self):
        t = InvariantTriple(E("w^3"), E("w"), E("w^2"))
        assert kt_refine(t) == t
        t = inv("Tree(3)")
        assert kt_refine(t) == t

    def test_never_widens(self):
        t = InvariantTriple(E("w^2"), E("w"), bounded(P("w+1"), P("w*2")))
        r = kt_refine(t).w
        assert r.lo >= P("w+1") and r.hi <= P("w*2")

    def test_inconsistency_raises(self):
        with pytest.raises(InconsistentInvariants):
            check_triple(InvariantTriple(E("w"), E("1"), E("w^2")))


class TestProperties:
    @given(exprs)
    def test_total_and_consistent(self, e):
        t = invariants(e)
        check_triple(t)
        for v in (t.o, t.h, t.w):
            if isinstance(v, Range):
                assert v.lo < v.hi
        assert not isinstance(t.h, Opaque) or isinstance(t.o, Opaque) or True
        if not any(isinstance(x, Tree) for x in _nodes(e)):
            assert not any(isinstance(v, Opaque) for v in (t.o, t.h, t.w))

    @given(exprs)
    def test_adding_a_point(self, e):
        w = invariants(e).w
        if isinstance(w, Exact):
            assert invariants(DisjointSum([e, Antichain(1)])).w == Exact(nat_sum(w.value, ONE))

    @given(exprs)
    def test_sequences_and_multisets(self, e):
        o = invariants(e).o
        if isinstance(o, Exact) and o.value > 1:
            s = invariants(Seq(e))
            assert s.w == s.o
            if is_additively_principal(o.value):
                m = invariants(Multiset(e))
                assert m.w == m.o
            assert invariants(Tree(e)).h == Exact(h_star(invariants(e).h.value))

    def test_finitary_corpus_matches_oracle(self):
        for e in finitary_corpus(150, seed=11):
            t = invariants(e)
            p = realize(e)
            assert t == InvariantTriple(
                Exact(Ordinal.of(p.n)), Exact(Ordinal.of(height_rank(p))), Exact(Ordinal.of(max_antichain_size(p)))
            ), format_expr(e)

    def test_grids(self):
        for n in range(1, 6):
            for m in range(1, 6):
                assert inv(f"{n} x {m}") == InvariantTriple(
                    Exact(Ordinal.of(n * m)), Exact(Ordinal.of(n + m - 1)), Exact(Ordinal.of(min(n, m)))
                )


class TestWitness:
    @pytest.mark.parametrize("a", ["0", "3", "w", "w^2+2", "w^w*2+w+5", "w^(w+1)"])
    def test_examples(self, a):
        e = construct_poset_with_width(P(a))
        assert invariants(e).w == E(a)

    def test_shapes(self):
        assert construct_poset_with_width(ZERO) == DisjointSum([])
        assert construct_poset_with_width(P("3")) == Antichain(3)
        assert format_expr(construct_poset_with_width(P("w^2+2"))) == "(w^2 x w) U A2"

    @given(below_omega_omega)
    def test_random(self, a):
        assert invariants(construct_poset_with_width(a)).w == Exact(a)


def _nodes(e):
    yield e
    for k in getattr(e, "items", ()) or [getattr(e, a) for a in ("p", "q") if hasattr(e, a)]:
        yield from _nodes(k)
