import pytest

from pik.decomp import (
    DecompError,
    alphabet_size,
    build_psi,
    build_relators,
    gr_rank_table,
    ideal_graded_piece,
    ideal_rows_by_degree,
    letter,
    level_letters,
    pair_bracket,
    presentation_check,
    psi_image,
    t_r_rows,
    upper_letters,
    verify_psi_automorphism,
    verify_theorem_th1,
    verify_tilde_T,
)
from pik.lie import (
    bracket,
    coordinate_row,
    lattice_equal,
    lattice_of,
    lie_generator,
    lyndon_index,
    witt,
)


def brute_relator_index_sets(n):
    """Oracle: enumerate the three families straight from their side conditions."""
    ones, twos, threes = set(), set(), set()
    for r in range(2, n + 1):
        for m in range(2, n + 1):
            for i in range(1, n + 1):
                if 2 <= r < m <= n and i <= r:
                    ones.add((m, i, r, i))
                for j in range(1, n + 1):
                    if 2 <= r < i <= m <= n and 1 <= j <= r:
                        twos.add((m, i, r, j))
                    if (
                        2 <= r < m <= n
                        and 1 <= i <= r
                        and 1 <= j <= r
                        and j != i
                    ):
                        threes.add((m, i, r, j))
    return ones, twos, threes


class TestAlphabet:
    def test_size(self):
        assert alphabet_size(3) == 5
        assert alphabet_size(4) == 9
        assert alphabet_size(5) == 14

    def test_letter_order(self):
        assert [letter(3, m, i) for m in (2, 3) for i in range(1, m + 1)] == [1, 2, 3, 4, 5]

    def test_blocks(self):
        assert level_letters(4, 3) == [3, 4, 5]
        assert upper_letters(4, 3) == [3, 4, 5, 6, 7, 8, 9]


class TestRelators:
    def test_counts_n3(self):
        rels = build_relators(3)
        assert len(rels.relators) == 6
        assert [len(rels.of_kind(k)) for k in (1, 2, 3)] == [2, 2, 2]

    def test_counts_against_brute_force(self):
        for n in (3, 4, 5):
            ones, twos, threes = brute_relator_index_sets(n)
            rels = build_relators(n)
            assert {(r.m, r.i, r.r, r.j) for r in rels.of_kind(1)} == ones
            assert {(r.m, r.i, r.r, r.j) for r in rels.of_kind(2)} == twos
            assert {(r.m, r.i, r.r, r.j) for r in rels.of_kind(3)} == threes

    def test_empty_for_n2(self):
        assert build_relators(2).relators == ()

    def test_span_rank(self):
        rels = build_relators(3)
        lat = lattice_of(rels.elems(), 2)
        assert lat.rank == 6 == witt(5, 2) - witt(2, 2) - witt(3, 2)

    def test_all_degree_two(self):
        for rel in build_relators(4).relators:
            assert rel.elem.degree == 2


class TestPsi:
    def test_f1(self):
        img = psi_image(3, 2, 3, 1, 1)
        assert img == pair_bracket(3, 3, 1, 2, 1)

    def test_f2(self):
        img = psi_image(3, 2, 3, 3, 1)
        assert img == pair_bracket(3, 3, 3, 2, 1)

    def test_f3(self):
        img = psi_image(3, 2, 3, 1, 2)
        want = pair_bracket(3, 3, 1, 2, 2).coords.sub(pair_bracket(3, 3, 1, 3, 2).coords)
        assert img.coords == want

    def test_domain_covers_pairs(self):
        psi = build_psi(4, 2)
        assert len(psi.domain) == len(upper_letters(4, 3)) * 2  # |U_3| x |Y_2|

    def test_image_span_is_relator_span_per_r(self):
        # the per-level images and the relator families cut out the same span
        for n in (3, 4):
            rels = build_relators(n)
            all_images = [e for r in range(2, n) for e in build_psi(n, r).images]
            assert lattice_equal(lattice_of(all_images, 2), lattice_of(rels.elems(), 2))

    def test_image_set_equals_relators_per_r_block(self):
        # stronger: for each r the psi images coincide, up to sign, with the
        # relators whose lower index is r
        for n in (3, 4):
            rels = build_relators(n)
            for r in range(2, n):
                block = {tuple(sorted(rel.elem.lyndon)) for rel in rels.relators if rel.r == r}
                imgs = set()
                for e in build_psi(n, r).images:
                    imgs.add(tuple(sorted(e.lyndon)))
                    imgs.add(tuple(sorted((w, -c) for w, c in e.lyndon)))
                assert block <= imgs
                assert len(build_psi(n, r).images) == len(
                    [rel for rel in rels.relators if rel.r == r]
                )

    @pytest.mark.parametrize("n,r", [(3, 2), (4, 2), (4, 3), (5, 4)])
    def test_psi_automorphism(self, n, r):
        rep = verify_psi_automorphism(n, r)
        assert rep.block_is_identity and rep.block_unimodular and rep.injective

    def test_bad_r(self):
        with pytest.raises(DecompError):
            build_psi(3, 3)


class TestIdeal:
    def test_rank_anchors(self):
        rels = build_relators(3)
        assert ideal_graded_piece(rels, 2).rank == 6
        assert ideal_graded_piece(rels, 3).rank == 30 == witt(5, 3) - witt(2, 3) - witt(3, 3)

    def test_rank_n4(self):
        rels = build_relators(4)
        assert ideal_graded_piece(rels, 2).rank == 26 == witt(9, 2) - 1 - 3 - 6

    def test_ideal_property(self):
        # bracketing J^m with any generator lands in J^{m+1}
        rels = build_relators(3)
        rows = ideal_rows_by_degree(rels, 4)
        k = alphabet_size(3)
        for m in (2, 3):
            nxt = lattice_of(rows[m + 1], m + 1)
            index = lyndon_index(k, m + 1)
            dim = len(index)
            for e in rows[m][:6]:
                for a in range(1, k + 1):
                    v = bracket(e, lie_generator(k, a))
                    if not v.is_zero:
                        assert nxt.lattice.contains(coordinate_row(v, index, dim))


class TestTheoremDecomposition:
    def test_n3(self):
        rep = verify_theorem_th1(3, 4)
        assert rep.ok
        by_m = {d.m: d for d in rep.degrees}
        assert by_m[2].rank_j == 6 and by_m[2].ranks_y == (1, 3)
        assert by_m[3].rank_j == 30 and by_m[3].ranks_y == (2, 8)
        assert by_m[4].rank_j == 129 and by_m[4].ranks_y == (3, 18)

    def test_n4_low_degrees(self):
        rep = verify_theorem_th1(4, 3)
        assert rep.ok
        assert rep.degrees[0].rank_j == 26

    def test_negative_control_drop_type3(self):
        rels = build_relators(3)
        for victim in rels.of_kind(3):
            rep = verify_theorem_th1(3, 2, relators=rels.without(victim))
            assert not rep.ok
            fail = rep.first_failure()
            assert fail.m == 2
            assert fail.witt_rank - fail.direct_sum.rank_sum == 1

    def test_requires_n3(self):
        with pytest.raises(DecompError):
            verify_theorem_th1(2, 3)


class TestTildeT:
    def test_n3(self):
        rep = verify_tilde_T(3, 3)
        assert rep.ok
        assert rep.degrees[0].t_ranks == (6,)

    def test_n4_block_ranks(self):
        rep = verify_tilde_T(4, 2)
        assert rep.ok
        assert rep.degrees[0].t_ranks == (14, 12)
        assert rep.degrees[0].rank_j == 26

    def test_t_rows_degree2_counts(self):
        assert len(t_r_rows(4, 2, 2)) == 14
        assert len(t_r_rows(4, 3, 2)) == 12


class TestRankTable:
    def test_n3_values(self):
        rows = gr_rank_table(3, 3)
        assert [(r.c, r.via_factors) for r in rows] == [(1, 5), (2, 4), (3, 10)]
        assert all(r.ok for r in rows)

    def test_n4_values(self):
        rows = gr_rank_table(4, 2)
        assert [(r.c, r.via_factors) for r in rows] == [(1, 9), (2, 10)]
        assert all(r.ok for r in rows)


class TestPresentation:
    @pytest.mark.parametrize("n", [3, 4])
    def test_presentation_check(self, n):
        rep = presentation_check(n)
        assert rep.relators_in_j and rep.factor_pairs_form_basis

    @pytest.mark.parametrize("n", [3, 4])
    def test_group_relators_match_lie_relators(self, n):
        # the group-theoretic relator words, read over the flat alphabet, sit
        # at lower-central depth exactly 2 and their degree-2 Magnus part is
        # the corresponding Lie relator
        from pik.magnus import gamma_degree, magnus_expand
        from pik.words import commutator, gen, invert, multiply

        k = alphabet_size(n)
        for rel in build_relators(n).relators:
            ym = gen(k, letter(n, rel.m, rel.i))
            yr = gen(k, letter(n, rel.r, rel.j))
            word = commutator(ym, yr)
            if rel.kind == 3:
                ymj = gen(k, letter(n, rel.m, rel.j))
                word = multiply(word, invert(commutator(ym, ymj)))
            assert gamma_degree(word, 4) == 2, rel.label
            deg2 = magnus_expand(word, 2).homogeneous(2)
            assert deg2.terms == rel.elem.coords.terms, rel.label
