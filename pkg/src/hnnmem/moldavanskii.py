"""Exponent-sum-zero rewriting into layered letters.

A word w over X and a distinguished letter t with zero t-exponent-sum
rewrites into a word over indexed letters x[i], where an occurrence of x
after a prefix with t-exponent-sum s lands on layer -s.  The one-relator
group on w is then an HNN extension of the one-relator group on the
rewritten word, with the stable letter shifting every layer up by one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import Symbol
from .words import (
    SignedLetter,
    Word,
    cyclic_reduce,
    exponent_sum,
    free_reduce,
)


@dataclass(frozen=True)
class RhoData:
    source: Word
    stable: str
    image: Word
    bounds: dict[str, tuple[int, int]]
    xiw: frozenset[Symbol]

    def xi_bounds(self, name: str) -> tuple[int, int]:
        """Min and max layer of the letter in the image; (0, 0) if absent."""
        return self.bounds.get(name, (0, 0))


def rho_t(w: Word, t: str) -> RhoData:
    """Delete stable letters and re-index the rest by prefix t-sums."""
    if exponent_sum(w, t) != 0:
        raise ValueError(f"word has nonzero {t}-exponent sum; cannot rewrite")
    conj, _ = cyclic_reduce(w)
    if free_reduce(w) != w or conj:
        raise ValueError("word must be cyclically reduced")
    for l in w:
        if l.index is not None:
            raise ValueError(f"input letter {l} is already indexed")
    image = []
    s = 0
    for l in w:
        if l.name == t:
            s += l.sign
        else:
            image.append(SignedLetter(l.name, -s, l.sign))
    bounds: dict[str, tuple[int, int]] = {}
    for l in image:
        lo, hi = bounds.get(l.name, (l.index, l.index))
        bounds[l.name] = (min(lo, l.index), max(hi, l.index))
    xiw = frozenset(
        (name, i) for name, (lo, hi) in bounds.items() for i in range(lo, hi + 1)
    )
    return RhoData(source=w, stable=t, image=Word(image), bounds=bounds, xiw=xiw)


def rho_inverse(v: Word, t: str) -> Word:
    """Send each x[i] back to t^-i x t^i and freely reduce."""
    out: list[SignedLetter] = []
    tpos = SignedLetter(t, None, 1)
    tneg = SignedLetter(t, None, -1)
    for l in v:
        i = l.index or 0
        out.extend([tneg if i > 0 else tpos] * abs(i))
        out.append(SignedLetter(l.name, None, l.sign))
        out.extend([tpos if i > 0 else tneg] * abs(i))
    return free_reduce(Word(out))


def xi_bounds(d: RhoData, name: str) -> tuple[int, int]:
    return d.xi_bounds(name)


@dataclass(frozen=True)
class MoldavanskiiData:
    """Presentation data of the base group of the induced HNN extension.

    The base is presented on the layered letters with the rewritten word
    as sole relator; the associated subgroups drop the top (resp. bottom)
    layer of each letter and the isomorphism shifts layers up by one.
    This is presentation data only: the base need not be free, so no
    extension object is built here.
    """

    relator: Word
    generators: frozenset[Symbol]
    a_gens: frozenset[Symbol]
    b_gens: frozenset[Symbol]
    phi: dict[Symbol, Symbol]


def moldavanskii_extension_data(w: Word, t: str) -> MoldavanskiiData:
    d = rho_t(w, t)
    conj, _ = cyclic_reduce(d.image)
    if free_reduce(d.image) != d.image or conj:
        raise ValueError("rewritten relator is not cyclically reduced")
    top = {(name, hi) for name, (_, hi) in d.bounds.items()}
    bottom = {(name, lo) for name, (lo, _) in d.bounds.items()}
    phi = {
        (name, i): (name, i + 1)
        for name, (lo, hi) in d.bounds.items()
        for i in range(lo, hi)
    }
    return MoldavanskiiData(
        relator=d.image,
        generators=d.xiw,
        a_gens=d.xiw - top,
        b_gens=d.xiw - bottom,
        phi=phi,
    )
