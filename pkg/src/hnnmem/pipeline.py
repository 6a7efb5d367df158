"""Prefix membership for one-relator groups on relators w t^{-2s} w.

Here w spells pairwise-distinct base letters separated by stable-letter
runs, s is the stable-letter exponent sum of w, and s != 0.  The group on
the relator w t^{-2s} w is an HNN extension of a free group: rewriting
the relator into layered letters leaves a one-relator presentation whose
relator mentions each letter once, so the layered group is free, and the
telescoping products

    gamma_{i,j} = x_0[j_0 + j] x_1[j_1 + j] ... x_i[j_i + j]

(one per base letter x_i and layer offset j between 0 and s) form, minus
the single redundant gamma_{k,s} = gamma_{k,0}^-1, a free basis on which
the layer shift acts letter to letter.  The prefix monoid of the group
pulls back to Mon<UQ, t, t^-1> for a letter set UQ on that basis, which
the membership module decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .basis import FreeBasis, Symbol, verify_free_basis
from .elementary import InternalCheckError
from .hnn import HnnExtension, hnn_reduce, validate_extension
from .membership import SubmonoidSpec, check_compatibility, decide_membership
from .moldavanskii import rho_t
from .words import SignedLetter, Word, free_reduce


@dataclass(frozen=True)
class WtwSpec:
    """A word x_0^e0 t^{n_1} x_1^e1 ... t^{n_k} x_k^ek with the x_i distinct
    and nonzero stable-letter exponent sum."""

    word: Word
    stable: str
    base: tuple[SignedLetter, ...]
    runs: tuple[int, ...]
    sigma: int
    layers: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.base) - 1


def validate_wtw(w: Word, stable: str = "t") -> WtwSpec:
    """Parse w into the required shape or fail naming the violated condition."""
    reduced = free_reduce(w)
    if not reduced:
        raise ValueError("word is empty")
    base: list[SignedLetter] = []
    runs: list[int] = []
    pending = 0
    for l in reduced:
        if l.name == stable and l.index is None:
            if not base:
                raise ValueError("word must begin with a non-stable letter")
            pending += l.sign
        else:
            if l.index is not None:
                raise ValueError(f"base letter {l} must be unindexed")
            if l.name == stable:
                raise ValueError(f"letter {l} collides with the stable letter name")
            if base:
                runs.append(pending)
            base.append(l)
            pending = 0
    if pending != 0:
        raise ValueError("word must end with a non-stable letter")
    names = [l.name for l in base]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise ValueError(f"base letter {dup} repeats (letters must be pairwise distinct)")
    sigma = sum(runs)
    if sigma == 0:
        raise ValueError("stable-letter exponent sum of the word is zero")
    partial = 0
    layers = [0]
    for n in runs:
        partial += n
        layers.append(-partial)
    return WtwSpec(
        word=reduced,
        stable=stable,
        base=tuple(base),
        runs=tuple(runs),
        sigma=sigma,
        layers=tuple(layers),
    )


def _gamma_name(i: int, j: int) -> str:
    return f"g{i}_{j}" if j >= 0 else f"g{i}_m{-j}"


@dataclass(frozen=True)
class PipelineData:
    spec: WtwSpec
    relator: Word
    offsets: tuple[int, ...]
    gamma: dict[tuple[int, int], Word]
    extension: HnnExtension
    uq: SubmonoidSpec
    translation: dict[str, Word] = field(repr=False)

    def gamma_rep(self, i: int, j: int) -> SignedLetter:
        """The signed basis letter standing for gamma_{i,j}."""
        k, sigma = self.spec.k, self.spec.sigma
        if (i, j) == (k, sigma):
            return SignedLetter(_gamma_name(k, 0), None, -1)
        return SignedLetter(_gamma_name(i, j), None, 1)

    def letter_words(self, letters) -> list[Word]:
        """Expand signed basis letters to their defining words over the layers."""
        out = []
        for u in letters:
            w = self.extension.basis.defining_word(u.name)
            out.append(w if u.sign > 0 else w.inverse())
        return out


def build_pipeline(spec: WtwSpec) -> PipelineData:
    """Construct and verify the whole decision apparatus for the relator.

    Every structural claim used on the way (the gamma words form a free
    basis, the shifted letters define a valid extension, the prefix
    generating set is compatible) is checked mechanically and a failure is
    an internal error, never a silent fallback.
    """
    k, sigma, stable = spec.k, spec.sigma, spec.stable
    step = 1 if sigma > 0 else -1
    offsets = tuple(range(0, sigma + step, step))

    tback = SignedLetter(stable, None, -1 if sigma > 0 else 1)
    relator = Word(spec.word.letters + (tback,) * (2 * abs(sigma)) + spec.word.letters)

    rho = rho_t(relator, stable)
    gamma: dict[tuple[int, int], Word] = {}
    for i in range(k + 1):
        for j in offsets:
            gamma[(i, j)] = Word(
                SignedLetter(spec.base[l].name, spec.layers[l] + j, spec.base[l].sign)
                for l in range(i + 1)
            )
    want_xi = {
        (spec.base[i].name, spec.layers[i] + j) for i in range(k + 1) for j in offsets
    }
    if rho.xiw != frozenset(want_xi):
        raise InternalCheckError("layer alphabet disagrees with the rewritten relator")

    elim: Symbol = (spec.base[k].name, spec.layers[k] + sigma)
    ambient = frozenset(want_xi - {elim})
    elements = [
        (_gamma_name(i, j), gamma[(i, j)])
        for i in range(k + 1)
        for j in offsets
        if (i, j) != (k, sigma)
    ]
    fb = FreeBasis(elements, ambient)
    if not verify_free_basis(fb):
        raise InternalCheckError("gamma words failed the free basis check")

    def rep(i: int, j: int) -> SignedLetter:
        if (i, j) == (k, sigma):
            return SignedLetter(_gamma_name(k, 0), None, -1)
        return SignedLetter(_gamma_name(i, j), None, 1)

    phi: dict[SignedLetter, SignedLetter] = {}
    offset_set = set(offsets)
    for i in range(k + 1):
        for j in offsets:
            if j + 1 in offset_set:
                a, b = rep(i, j), rep(i, j + 1)
                phi[a] = b
                phi[a.inverse()] = b.inverse()
    ext = HnnExtension(ambient, stable, fb, frozenset(phi), frozenset(phi.values()), phi)
    problems = validate_extension(ext)
    if problems:
        raise InternalCheckError("derived extension is invalid: " + "; ".join(problems))

    # The prefix monoid pulls back to Mon<UQ, t, t'>.  UQ holds every
    # positive basis letter plus the inverses of the bottom row
    # gamma_{k,j}; each of those equals a t-conjugate of gamma_{k,s} =
    # gamma_{k,0}^-1, so the monoid is unchanged, and the set is closed
    # under the layer shift wherever the shift is defined, which is what
    # the compatibility check below needs.
    uq_letters = {rep(i, j) for i in range(k + 1) for j in offsets if (i, j) != (k, sigma)}
    uq_letters |= {rep(k, j).inverse() for j in offsets}
    uq = SubmonoidSpec(frozenset(uq_letters))
    ok, bad = check_compatibility(uq, ext)
    if not ok:
        raise InternalCheckError(f"prefix generating set fails compatibility at {bad}")

    translation: dict[str, Word] = {}
    for i in range(k + 1):
        inner = [rep(i, 0)] if i == 0 else [rep(i - 1, 0).inverse(), rep(i, 0)]
        if spec.base[i].sign < 0:
            inner = [u.inverse() for u in reversed(inner)]
        j_i = spec.layers[i]
        tpos = SignedLetter(stable, None, 1)
        tneg = SignedLetter(stable, None, -1)
        conj = [tpos if j_i > 0 else tneg] * abs(j_i)
        conj_back = [tneg if j_i > 0 else tpos] * abs(j_i)
        translation[spec.base[i].name] = free_reduce(Word(conj + inner + conj_back))

    data = PipelineData(
        spec=spec,
        relator=relator,
        offsets=offsets,
        gamma=gamma,
        extension=ext,
        uq=uq,
        translation=translation,
    )
    if not hnn_reduce(translate_query(relator, data), ext).is_empty():
        raise InternalCheckError("the relator does not translate to the identity")
    return data


def prefix_generators(spec: WtwSpec) -> list[Word]:
    """Prefixes of w ending at a base letter, plus the stable letter and its
    inverse; prefixes ending inside a stable run are redundant alongside
    those."""
    out = []
    letters: list[SignedLetter] = []
    tpos = SignedLetter(spec.stable, None, 1)
    tneg = SignedLetter(spec.stable, None, -1)
    for i, x in enumerate(spec.base):
        if i > 0:
            n = spec.runs[i - 1]
            letters.extend([tpos if n > 0 else tneg] * abs(n))
        letters.append(x)
        out.append(Word(letters))
    out.append(Word([tpos]))
    out.append(Word([tneg]))
    return out


def translate_query(v: Word, p: PipelineData) -> Word:
    """Rewrite a word over the base letters and t into the extension's alphabet."""
    out: list[SignedLetter] = []
    for l in v:
        if l.name == p.spec.stable and l.index is None:
            out.append(l)
        elif l.index is None and l.name in p.translation:
            w = p.translation[l.name]
            out.extend(w.letters if l.sign > 0 else w.inverse().letters)
        else:
            raise ValueError(f"letter {l} does not occur in the defining word")
    return free_reduce(Word(out))


def prefix_member(v: Word, p: PipelineData) -> tuple[bool, Optional[Word]]:
    """Decide membership of v in the prefix monoid of the relator group."""
    return decide_membership(translate_query(v, p), p.uq, p.extension)
