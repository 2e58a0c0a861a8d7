import math

import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from clifford import blade_sign
from clifford import Multivector
from clifford import relative_sign
from trackgroup import all_perms
from trackgroup import block_shuffle
from trackgroup import CLIFFORD_CHECK_DEGREE
from trackgroup import cocycle_table
from trackgroup import cross_perm
from trackgroup import DegreeMismatch
from trackgroup import EXHAUSTIVE_TRACK_DEGREE
from trackgroup import from_word
from trackgroup import GeneratorIndexError
from trackgroup import parse_word
from trackgroup import Perm
from trackgroup import reduced_word
from trackgroup import shuffle_lift
from trackgroup import suspend_left
from trackgroup import suspend_right
from trackgroup import track_group
from trackgroup import verify_track_laws

words = st.lists(st.sampled_from([1, 2, 3, 4, "w"]), max_size=10)


def w(n):
    return track_group(n).omega()


def one(n):
    return track_group(n).identity()


class TestClifford(object):
    @pytest.mark.parametrize("a,b,sign", ((1, 1, 1), (2, 1, -1), (1, 2, 1), (6, 1, 1), (3, 6, 1), (4, 1, -1)))
    def test_blade_sign(self, a, b, sign):
        assert blade_sign(a, b) == sign

    def test_generator_squares_to_one(self):
        g = Multivector.generator(1)
        assert g * g == Multivector.one()

    def test_distant_generators_anticommute(self):
        a, b = Multivector.generator(1), Multivector.generator(3)
        assert a * b == -(b * a)

    def test_braid(self):
        assert Multivector.product_of([1, 2, 1]) == Multivector.product_of([2, 1, 2])

    def test_relative_sign(self):
        g = Multivector.generator(2)
        assert relative_sign(Multivector.one(), g, g) == 1
        assert relative_sign(-Multivector.one(), g, g) == -1


class TestPerm(object):
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Perm([0, 0])

    def test_composition(self):
        assert Perm.simple(3, 1) * Perm.simple(3, 2) == Perm([1, 2, 0])

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            Perm.identity(2) * Perm.identity(3)

    @pytest.mark.parametrize("perm,sign", (([0, 1, 2], 1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 1, 0], -1)))
    def test_sign(self, perm, sign):
        assert Perm(perm).sign() == sign

    def test_block_shuffle(self):
        assert block_shuffle(1, 1) == Perm([1, 0])
        assert block_shuffle(2, 1) == Perm([1, 2, 0])
        assert block_shuffle(0, 3) == Perm.identity(3)

    def test_cross_perm(self):
        assert cross_perm(Perm.identity(2), Perm.simple(2, 1)) == Perm.simple(4, 3)

    def test_reduced_word_length_is_inversions(self):
        for p in all_perms(4):
            assert len(reduced_word(p)) == p.inversions()

    def test_one_line(self):
        assert str(Perm.from_one_line([2, 3, 1])) == "231"


class TestTrackGroup(object):
    @pytest.mark.parametrize("n", range(6))
    def test_order(self, n):
        G = track_group(n)
        elements = set(G.elements())
        assert len(elements) == 2 * math.factorial(n)
        assert G.identity() in elements
        for g in G.generators() + [G.omega()]:
            assert {x * g for x in elements} == elements

    def test_distant_generators(self):
        G = track_group(4)
        t1, t3 = G.generator(1), G.generator(3)
        assert t1 * t3 == w(4) * (t3 * t1)

    def test_involution(self):
        t1 = track_group(3).generator(1)
        assert t1 * t1 == one(3)

    def test_braid_words(self):
        assert from_word(3, [1, 2, 1]) == from_word(3, [2, 1, 2])

    def test_empty_word(self):
        assert from_word(2, []) == one(2)
        assert from_word(0, []).is_identity()

    def test_commutator_word(self):
        assert from_word(4, [1, 3, 1, 3]) == w(4)

    def test_index_out_of_range(self):
        with pytest.raises(GeneratorIndexError):
            from_word(3, [3])
        with pytest.raises(GeneratorIndexError):
            track_group(2).generator(2)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            track_group(2).generator(1) * track_group(3).generator(1)

    def test_epsilon_and_delta(self):
        t = from_word(3, ["w", 1, 2])
        assert t.epsilon() == 1
        assert t.delta() == Perm([1, 2, 0])
        assert str(t) == "w t1 t2"

    @pytest.mark.parametrize(
        "text,word",
        (("t1 t3 w", [1, 3, "w"]), ("1", []), ("t2*ω", [2, "w"]), ("omega t1", ["w", 1])),
    )
    def test_parse_word(self, text, word):
        assert parse_word(text) == word

    def test_parse_word_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_word("t1 x")

    @settings(max_examples=60)
    @given(words, words)
    def test_words_multiply(self, a, b):
        assert from_word(5, a + b) == from_word(5, a) * from_word(5, b)

    @settings(max_examples=60)
    @given(words, words)
    def test_delta_and_epsilon_are_homomorphisms(self, a, b):
        x, y = from_word(5, a), from_word(5, b)
        assert (x * y).delta() == x.delta() * y.delta()
        assert (x * y).epsilon() == x.epsilon() * y.epsilon()

    @settings(max_examples=60)
    @given(words)
    def test_inverse_and_centrality(self, a):
        x = from_word(5, a)
        assert x * x.inverse() == one(5)
        assert x * w(5) == w(5) * x


class TestShuffleAndSuspension(object):
    def test_shuffle_lifts(self):
        assert shuffle_lift(1, 1) == track_group(2).generator(1)
        assert shuffle_lift(0, 3) == one(3)
        assert shuffle_lift(2, 1) == from_word(3, [1, 2])

    @pytest.mark.parametrize("n,m", ((1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)))
    def test_shuffle_lift_covers_block_shuffle(self, n, m):
        assert shuffle_lift(n, m).delta() == block_shuffle(n, m)

    def test_middle_shuffle_squares_to_omega(self):
        tau = shuffle_lift(2, 2)
        assert tau * tau == w(4)

    def test_reverse_shuffles_cancel(self):
        assert shuffle_lift(1, 3) * shuffle_lift(3, 1) == one(4)

    def test_suspend_left(self):
        t1 = track_group(2).generator(1)
        assert suspend_left(1, t1) == track_group(3).generator(2)
        assert suspend_left(3, w(1)) == w(4)
        assert suspend_left(2, from_word(3, [1, 2])) == from_word(5, [3, 4])

    def test_suspend_right(self):
        t1 = track_group(2).generator(1)
        assert suspend_right(t1, 2) == track_group(4).generator(1)
        assert suspend_right(w(2), 2) == w(4)
        assert suspend_right(from_word(3, [1, 2]), 1) == from_word(4, [1, 2])

    def test_cambio_with_omega(self):
        tau = shuffle_lift(1, 1)
        assert suspend_left(1, w(1)) * tau == tau * suspend_right(w(1), 1)


class TestCocycle(object):
    def test_degree_two_is_trivial(self):
        perms, table = cocycle_table(2)
        assert [str(p) for p in perms] == ["12", "21"]
        assert table == [[0, 0], [0, 0]]

    def test_degree_four_is_not_trivial(self):
        perms, table = cocycle_table(4)
        s1, s3 = perms.index(Perm.simple(4, 1)), perms.index(Perm.simple(4, 3))
        assert table[s1][s3] == 0
        assert table[s3][s1] == 1


class TestVerifyTrackLaws(object):
    def test_small_degrees(self):
        report = verify_track_laws(4, clifford_nmax=3)
        assert report.passed, report.failures()
        assert {"ORDER", "R1", "R5", "CAMBIO", "RECHO1", "RECHO2", "TAUSQ", "FAST"} <= set(report.law_ids())

    def test_associativity_is_exhaustive(self):
        law = verify_track_laws(4, laws="ASSOC").law("ASSOC")
        assert law.passed
        assert law.tuples_checked == sum(math.factorial(n) ** 3 for n in range(5))

    @pytest.mark.slow
    def test_associativity_sampled_above_five(self):
        law = verify_track_laws(6, laws="ASSOC", max_tuples=200).law("ASSOC")
        assert law.passed
        assert law.tuples_checked == sum(math.factorial(n) ** 3 for n in range(6)) + 200

    def test_fast_path_covers_every_pair(self):
        law = verify_track_laws(4, laws="FAST").law("FAST")
        assert law.tuples_checked == sum((2 * math.factorial(n)) ** 2 for n in range(5))

    def test_defaults_reach_degree_six(self):
        assert EXHAUSTIVE_TRACK_DEGREE == CLIFFORD_CHECK_DEGREE == 6

    @pytest.mark.slow
    def test_default_degrees(self):
        report = verify_track_laws()
        assert report.passed, report.failures()
        assert report.law("RECHO2").tuples_checked > 0
        assert report.law("FAST").tuples_checked == sum((2 * math.factorial(n)) ** 2 for n in range(7))

    def test_law_selection(self):
        assert verify_track_laws(3, laws="R*").law_ids() == ["R1", "R2", "R3", "R4", "R5"]

    def test_bound(self):
        with pytest.raises(ValueError):
            verify_track_laws(9)
