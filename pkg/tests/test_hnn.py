import random

import pytest

from hnnmem import (
    HnnExtension,
    hnn_reduce,
    scramble,
    to_block_form,
    validate_extension,
    words_equal,
)
from hnnmem.hnn import BlockWord, is_hnn_reduced
from hnnmem.words import Word, letter

from conftest import W, identity_extension, random_flat_word, random_identity_extension


class TestValidate:
    def test_pipeline_extension_is_valid(self, ex_open_case):
        assert validate_extension(ex_open_case.extension) == []

    def test_phi_image_outside_ub(self, ex_two_layer):
        e = ex_two_layer
        bad_phi = dict(e.phi)
        a = letter("a")
        bad_phi[a] = a  # image not in UB
        broken = HnnExtension(e.ambient, e.stable, e.basis, e.ua, e.ub, bad_phi)
        assert any("image is not exactly UB" in p for p in validate_extension(broken))

    def test_ua_not_inversion_closed(self, ex_two_layer):
        e = ex_two_layer
        broken = HnnExtension(e.ambient, e.stable, e.basis, {letter("a")}, e.ub, e.phi)
        assert any("not closed under inversion" in p for p in validate_extension(broken))

    def test_stable_collision(self, ex_two_layer):
        e = ex_two_layer
        broken = HnnExtension(e.ambient, "a", e.basis, e.ua, e.ub, e.phi)
        assert any("collides" in p for p in validate_extension(broken))


class TestBlockForm:
    def test_worked_example(self, ex_two_layer):
        bw = to_block_form(W("b t' t' a t' a"), ex_two_layer)
        assert bw.n0 == 0
        assert [(u.name, n) for u, n in bw.blocks] == [("b", -2), ("a", -1), ("a", 0)]

    def test_empty(self, ex_two_layer):
        bw = to_block_form(Word(), ex_two_layer)
        assert bw.is_empty()

    def test_stable_power(self, ex_two_layer):
        bw = to_block_form(W("t t"), ex_two_layer)
        assert bw == BlockWord(2, ())

    def test_merges_stable_runs(self, ex_two_layer):
        assert to_block_form(W("t t' a"), ex_two_layer) == to_block_form(W("a"), ex_two_layer)

    def test_unknown_letter(self, ex_two_layer):
        with pytest.raises(ValueError):
            to_block_form(W("z"), ex_two_layer)

    def test_flatten_round_trip(self, ex_two_layer):
        rng = random.Random(5)
        for _ in range(100):
            w = random_flat_word(rng, ex_two_layer)
            bw = to_block_form(w, ex_two_layer)
            assert to_block_form(bw.flatten("t"), ex_two_layer) == bw


class TestHnnReduce:
    def test_pinch_then_cancellation(self, ex_open_case):
        # t' g0_m1 t pinches to g0_0, which cancels with the trailing g0_0'
        e = ex_open_case.extension
        assert hnn_reduce(W("t' g0_m1 t g0_0'"), e).is_empty()

    def test_reduced_fixpoint(self, ex_two_layer):
        e = ex_two_layer
        bw = hnn_reduce(W("b t' t' a t' a"), e)
        assert bw == to_block_form(W("b t' t' a t' a"), e)

    def test_b_side_pinch(self, ex_open_case):
        e = ex_open_case.extension
        assert hnn_reduce(W("t g1_0 t'"), e) == to_block_form(W("g1_0'"), e)

    def test_accepts_ambient_letters(self, ex_open_case):
        e = ex_open_case.extension
        assert hnn_reduce(W("b[0]"), e) == to_block_form(W("g0_0"), e)
        assert hnn_reduce(W("b[0] a[1]"), e) == to_block_form(W("g1_0"), e)

    def test_output_never_pinched(self):
        rng = random.Random(17)
        for _ in range(30):
            e = random_identity_extension(rng)
            for _ in range(40):
                w = random_flat_word(rng, e, max_letters=5, max_t=4)
                assert is_hnn_reduced(hnn_reduce(w, e), e)

    def test_soundness_against_equality(self):
        rng = random.Random(19)
        for _ in range(25):
            e = random_identity_extension(rng)
            for _ in range(40):
                w = random_flat_word(rng, e)
                assert words_equal(w, hnn_reduce(w, e).flatten(e.stable), e)

    def test_stable_exponent_sum_invariant(self):
        rng = random.Random(29)
        for _ in range(25):
            e = random_identity_extension(rng)
            for _ in range(40):
                w = random_flat_word(rng, e)
                before = sum(l.sign for l in w if e.is_stable(l))
                assert sum(hnn_reduce(w, e).exponents()) == before


class TestWordsEqual:
    def test_worked_chain_pairwise(self, ex_two_layer):
        e = ex_two_layer
        w1, w2, w3 = W("b t' t' a t' a"), W("b t' b t' t' a"), W("t' a b t' t' a")
        assert words_equal(w1, w2, e)
        assert words_equal(w2, w3, e)
        assert words_equal(w1, w3, e)

    def test_reflexive(self, ex_two_layer):
        rng = random.Random(31)
        for _ in range(20):
            w = random_flat_word(rng, ex_two_layer)
            assert words_equal(w, w, ex_two_layer)

    def test_distinct_basis_letters(self, ex_open_case):
        e = ex_open_case.extension
        assert not words_equal(W("g0_0"), W("g1_0"), e)

    def test_britton_signature_law(self):
        # equal reduced words carry the same sequence of stable-letter signs
        rng = random.Random(37)
        for trial in range(60):
            e = random_identity_extension(rng)
            w = random_flat_word(rng, e)
            w2 = scramble(w, e, seed=trial, steps=rng.randint(0, 5))
            assert words_equal(w, w2, e)
            assert hnn_reduce(w, e).stable_signature() == hnn_reduce(w2, e).stable_signature()
