import pytest
from hypothesis import given
from hypothesis import strategies as st

from pik.endos import compose, identity_endo, tau, y_gen
from pik.magnus import (
    MagnusError,
    NcPoly,
    NotIAError,
    gamma_degree,
    ia_degree,
    johnson_additive_check,
    johnson_image,
    magnus_expand,
)
from pik.words import commutator, gen, parse_x_word, word


def w(s, rank=2):
    return parse_x_word(s, rank)


class TestNcPoly:
    def test_no_zero_terms_stored(self):
        p = NcPoly(2, 3, {(1,): 1})
        q = p.sub(p)
        assert q.is_zero and q.terms == {}

    def test_truncation(self):
        x = NcPoly.variable(2, 2, 1)
        cube = x.mul(x).mul(x)
        assert cube.is_zero

    def test_mul_noncommutative(self):
        x, y = NcPoly.variable(2, 2, 1), NcPoly.variable(2, 2, 2)
        assert x.mul(y) != y.mul(x)

    def test_sorted_terms_order(self):
        p = NcPoly(2, 3, {(2, 1): 1, (1,): 2, (1, 1, 2): 3, (2,): -1})
        assert [m for m, _ in p.sorted_terms()] == [(1,), (2,), (2, 1), (1, 1, 2)]

    def test_invalid_monomial(self):
        with pytest.raises(MagnusError):
            NcPoly(2, 3, {(5,): 1})


class TestMagnusExpand:
    def test_single_letter(self):
        p = magnus_expand(w("x1"), 2)
        assert p.terms == {(): 1, (1,): 1}

    def test_homomorphism_trivial(self):
        assert magnus_expand(w("x1 x1^-1"), 3).terms == {(): 1}

    def test_commutator_expansion(self):
        # direct expansion of (1+X1)(1+X2)(1-X1+X1^2)(1-X2+X2^2), frozen
        p = magnus_expand(w("x1 x2 x1^-1 x2^-1"), 2)
        assert p.terms == {(): 1, (1, 2): 1, (2, 1): -1}

    def test_inverse_letter_series(self):
        p = magnus_expand(w("x1^-1"), 3)
        assert p.terms == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}

    @given(
        st.lists(st.tuples(st.integers(1, 2), st.sampled_from([1, -1])), max_size=8),
        st.lists(st.tuples(st.integers(1, 2), st.sampled_from([1, -1])), max_size=8),
    )
    def test_multiplicative(self, ls1, ls2):
        u, v = word(2, ls1), word(2, ls2)
        from pik.words import multiply

        lhs = magnus_expand(multiply(u, v), 3)
        rhs = magnus_expand(u, 3).mul(magnus_expand(v, 3))
        assert lhs == rhs


class TestGammaDegree:
    def test_generator(self):
        assert gamma_degree(w("x1"), 5) == 1

    def test_commutator(self):
        assert gamma_degree(w("x1 x2 x1^-1 x2^-1"), 5) == 2

    def test_weight_three(self):
        c = commutator(commutator(gen(2, 1), gen(2, 2)), gen(2, 1))
        assert gamma_degree(c, 5) == 3

    def test_identity_is_beyond_horizon(self):
        assert gamma_degree(word(2, []), 4) == 5

    def test_weight_commutators_lower_bound(self):
        # products of weight-c commutators sit at depth >= c; basic ones exactly c
        for c, builder in [
            (2, lambda a, b: commutator(a, b)),
            (3, lambda a, b: commutator(commutator(a, b), a)),
            (4, lambda a, b: commutator(commutator(commutator(a, b), a), b)),
        ]:
            v = builder(gen(3, 1), gen(3, 2))
            assert gamma_degree(v, 5) == c

    def test_random_commutator_products(self):
        # random products of weight-c left-normed commutators, c <= 4, n <= 4
        from pik.prng import Lcg
        from pik.words import multiply_all, word

        rng = Lcg(136)
        for _ in range(40):
            n = 2 + rng.below(3)
            c = 2 + rng.below(3)
            factors = []
            for _ in range(1 + rng.below(3)):
                letters = [1 + rng.below(n) for _ in range(c)]
                v = gen(n, letters[0])
                for l in letters[1:]:
                    v = commutator(v, gen(n, l))
                factors.append(v)
            prod = multiply_all(n, factors)
            assert gamma_degree(prod, 5) >= min(c, 6)

    def test_basic_commutators_distinct_generators_exact(self):
        for n in (2, 3, 4):
            v = commutator(gen(n, 1), gen(n, 2))
            assert gamma_degree(v, 5) == 2
        v = commutator(commutator(gen(3, 1), gen(3, 2)), gen(3, 3))
        assert gamma_degree(v, 5) == 3


class TestIaDegree:
    def test_identity(self):
        assert ia_degree(identity_endo(3), 4) == 5

    def test_inner_generator(self):
        assert ia_degree(tau(gen(2, 1)), 4) == 2

    def test_inner_commutator(self):
        g = commutator(gen(2, 1), gen(2, 2))
        assert ia_degree(tau(g), 5) == 3

    def test_non_ia_rejected(self):
        from pik.endos import EndoF

        f = EndoF(2, (w("x1 x1"), w("x2")))
        with pytest.raises(NotIAError):
            ia_degree(f, 4)

    def test_filtration_law_samples(self):
        # [I_t A, I_s A] <= I_{t+s-1} A on inner automorphisms
        from pik.endos import commutator_endo

        f = tau(gen(3, 1))  # level 2
        g = tau(parse_x_word("x1 x2 x1^-1 x2^-1", 3))  # level 3
        t, s = ia_degree(f, 6), ia_degree(g, 6)
        com = commutator_endo(f, g)
        assert ia_degree(com, 6) >= t + s - 1

    def test_filtration_law_random(self):
        # the same law on random IA automorphisms built from partial inners
        from pik.endos import commutator_endo, compose
        from pik.fuzz import random_ielem
        from pik.igroup import to_endo
        from pik.prng import Lcg

        rng = Lcg(4321)
        D = 5
        for _ in range(25):
            f = to_endo(random_ielem(rng, 3, 5))
            g = to_endo(random_ielem(rng, 3, 5))
            from pik.endos import is_identity

            if is_identity(f) or is_identity(g):
                continue
            t, s = min(ia_degree(f, D), D), min(ia_degree(g, D), D)
            com = commutator_endo(f, g)
            assert ia_degree(com, D) >= min(t + s - 1, D + 1)


class TestJohnson:
    def test_partial_conjugation_image(self):
        ji = johnson_image(y_gen(3, 2, 1), 2, 4)
        assert ji[0].is_zero and ji[2].is_zero
        assert ji[1].terms == {(2, 1): 1, (1, 2): -1}

    def test_identity_image_zero(self):
        ji = johnson_image(identity_endo(3), 2, 4)
        assert all(p.is_zero for p in ji)

    def test_inner_image(self):
        ji = johnson_image(tau(gen(2, 1)), 2, 4)
        assert ji[0].is_zero
        assert ji[1].terms == {(1, 2): 1, (2, 1): -1}

    def test_precondition(self):
        with pytest.raises(NotIAError):
            johnson_image(tau(gen(2, 1)), 3, 5)  # tau_x1 is only at level 2

    def test_additive_on_products(self):
        f = y_gen(3, 2, 1)
        g = y_gen(3, 3, 2)
        assert johnson_additive_check(f, g, 2, 4)
        h = compose(y_gen(4, 4, 1), y_gen(4, 2, 2))
        assert johnson_additive_check(h, y_gen(4, 3, 3), 2, 4)
