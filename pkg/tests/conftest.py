import random

import pytest

from hnnmem import (
    FreeBasis,
    HnnExtension,
    Word,
    build_pipeline,
    hnn_reduce,
    parse_word,
    validate_extension,
    validate_wtw,
)
from hnnmem.words import SignedLetter, letter


def W(text: str) -> Word:
    return parse_word(text)


def identity_extension(names, ua_names, ub_names, phi_pairs, stable="t") -> HnnExtension:
    """Extension over a free group with the ambient letters as their own basis.

    phi_pairs maps positive letter names to signed letters, e.g.
    [("a", "b", 1)] for a -> b, [("a", "a", -1)] for a -> a'.
    """
    ambient = [(n, None) for n in names]
    fb = FreeBasis([(n, Word([letter(n)])) for n in names], ambient)
    phi = {}
    for src, dst, sign in phi_pairs:
        s, d = letter(src), letter(dst, sign=sign)
        phi[s] = d
        phi[s.inverse()] = d.inverse()
    ua = frozenset(phi)
    ub = frozenset(phi.values())
    assert {u.name for u in ua} == set(ua_names)
    assert {u.name for u in ub} == set(ub_names)
    e = HnnExtension(ambient, stable, fb, ua, ub, phi)
    assert validate_extension(e) == []
    return e


@pytest.fixture(scope="session")
def ex_two_layer():
    """Free base on {a, b}, phi: a -> b; the two-semicommutation worked example."""
    return identity_extension(["a", "b"], ["a"], ["b"], [("a", "b", 1)])


@pytest.fixture(scope="session")
def ex_open_case():
    """The pipeline for w = b t' a, the previously unresolved prefix problem."""
    return build_pipeline(validate_wtw(W("b t' a")))


def random_identity_extension(rng: random.Random, max_rank: int = 3) -> HnnExtension:
    rank = rng.randint(2, max_rank)
    names = [f"u{i}" for i in range(1, rank + 1)]
    na = rng.randint(0, rank)
    src_names = rng.sample(names, na)
    dst_names = rng.sample(names, na)
    pairs = [(s, d, rng.choice([1, -1])) for s, d in zip(src_names, dst_names)]
    ambient = [(n, None) for n in names]
    fb = FreeBasis([(n, Word([letter(n)])) for n in names], ambient)
    phi = {}
    for src, dst, sign in pairs:
        s, d = letter(src), letter(dst, sign=sign)
        phi[s] = d
        phi[s.inverse()] = d.inverse()
    e = HnnExtension(ambient, "t", fb, frozenset(phi), frozenset(phi.values()), phi)
    assert validate_extension(e) == []
    return e


def random_flat_word(rng: random.Random, e: HnnExtension, max_letters: int = 4, max_t: int = 3) -> Word:
    """A random word over the basis letters and the stable letter."""
    pool = sorted(e.basis.signed_letters())
    out = []
    n_letters = rng.randint(0, max_letters)
    n_t = rng.randint(0, max_t)
    slots = ["u"] * n_letters + ["t"] * n_t
    rng.shuffle(slots)
    for kind in slots:
        if kind == "u":
            out.append(pool[rng.randrange(len(pool))])
        else:
            out.append(SignedLetter(e.stable, None, rng.choice([1, -1])))
    return Word(out)


def random_reduced_block(rng: random.Random, e: HnnExtension, max_letters: int = 4, max_t: int = 3):
    return hnn_reduce(random_flat_word(rng, e, max_letters, max_t), e)


def random_wtw_spec(rng: random.Random, max_k: int = 3, max_run: int = 3):
    """A random valid defining word for the prefix pipeline."""
    names = ["a", "b", "c", "d", "e"]
    while True:
        k = rng.randint(1, max_k)
        runs = [rng.randint(-max_run, max_run) for _ in range(k)]
        if sum(runs) == 0:
            continue
        letters = []
        for i in range(k + 1):
            letters.append(letter(names[i], sign=rng.choice([1, -1])))
            if i < k:
                n = runs[i]
                letters.extend([letter("t", sign=1 if n > 0 else -1)] * abs(n))
        return validate_wtw(Word(letters))
