"""Elementary operations on block words and the most-reduced-form set.

Three moves act on words over the basis letters and the stable letter:
inserting a cancelling pair u u', removing one, and semicommutation,
which trades a letter of UA (resp. UB) with an adjacent stable letter
through phi.  Words reachable from each other by semicommutations alone
form a finite class; repeatedly cancelling wherever the class allows it
terminates in the most-reduced-form set, a finite normal-form set for
equality in the extension.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Union

from .hnn import BlockWord, HnnExtension, hnn_reduce, is_hnn_reduced, to_block_form
from .words import SignedLetter, Word


class InternalCheckError(RuntimeError):
    """A structural fact the theory guarantees failed to hold at runtime."""


def _letter_key(u: SignedLetter):
    return (u.name, u.index is not None, u.index or 0, u.sign)


def block_key(bw: BlockWord):
    """A total order on block words, for deterministic choices."""
    return (bw.n0, tuple((_letter_key(u), n) for u, n in bw.blocks))


def semicommutation_moves(w: BlockWord, e: HnnExtension) -> list[BlockWord]:
    """All block words one semicommutation away from w, still in reduced form.

    The move at block j replaces t^{n_{j-1}} u_j t^{n_j} with
    t^{n_{j-1}+1} phi(u_j) t^{n_j-1} (u_j in UA) or the mirror image
    through phi^-1 (u_j in UB); replacements leaving reduced form are not
    semicommutations and are dropped.
    """
    out = []
    for j, (u, n) in enumerate(w.blocks):
        for table, delta in ((e.phi, 1), (e.phi_inv, -1)):
            if u not in table:
                continue
            blocks = list(w.blocks)
            blocks[j] = (table[u], n - delta)
            if j > 0:
                pu, pn = blocks[j - 1]
                blocks[j - 1] = (pu, pn + delta)
                cand = BlockWord(w.n0, tuple(blocks))
            else:
                cand = BlockWord(w.n0 + delta, tuple(blocks))
            if is_hnn_reduced(cand, e):
                out.append(cand)
    return out


def semicommutation_class(w: BlockWord, e: HnnExtension) -> frozenset[BlockWord]:
    """BFS closure of w under single semicommutations."""
    if not is_hnn_reduced(w, e):
        raise ValueError("input is not in HNN reduced form")
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for m in semicommutation_moves(v, e):
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
        frontier = nxt
    return frozenset(seen)


def cancellation_sites(w: BlockWord) -> list[int]:
    """Positions m (1-based) where u_{m+1} = u_m^-1 with no t between."""
    return [
        m + 1
        for m in range(len(w.blocks) - 1)
        if w.blocks[m][1] == 0 and w.blocks[m + 1][0] == w.blocks[m][0].inverse()
    ]


def cancel_at(w: BlockWord, m: int) -> BlockWord:
    """Remove the cancelling pair at site m and merge the flanking exponents."""
    if m not in cancellation_sites(w):
        raise ValueError(f"position {m} is not a cancellation site")
    merged = w.blocks[m][1]  # n_{m+1}; n_m is 0 at a site
    if m == 1:
        n0 = w.n0 + merged
        blocks = w.blocks[2:]
    else:
        n0 = w.n0
        u_prev, n_prev = w.blocks[m - 2]
        blocks = w.blocks[: m - 2] + ((u_prev, n_prev + merged),) + w.blocks[m + 1 :]
    return BlockWord(n0, blocks)


class MrfSet:
    """The finite set of most reduced forms of a word, closed under ~."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable[BlockWord]):
        self.members = frozenset(members)
        if not self.members:
            raise InternalCheckError("a most-reduced-form set cannot be empty")
        for v in self.members:
            if cancellation_sites(v):
                raise InternalCheckError("most-reduced-form member admits a cancellation")

    def representative(self) -> BlockWord:
        return min(self.members, key=block_key)

    def __eq__(self, other) -> bool:
        return isinstance(other, MrfSet) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, bw: BlockWord) -> bool:
        return bw in self.members


def mrf(
    w: Union[Word, BlockWord],
    e: HnnExtension,
    rng: Optional[random.Random] = None,
) -> MrfSet:
    """Compute the most-reduced-form set of w.

    Loop: enumerate the semicommutation class; if any member admits a
    cancellation, perform one and start over; otherwise the class is the
    answer.  Which site gets cancelled is immaterial (the sets are
    confluent); pass ``rng`` to randomise the choice, e.g. in tests.
    """
    if isinstance(w, BlockWord):
        current = hnn_reduce(w.flatten(e.stable), e)
    else:
        current = hnn_reduce(w, e)
    while True:
        cls = semicommutation_class(current, e)
        candidates = [(v, m) for v in cls for m in cancellation_sites(v)]
        if not candidates:
            return MrfSet(cls)
        if rng is None:
            member, site = min(candidates, key=lambda c: (block_key(c[0]), c[1]))
        else:
            member, site = rng.choice(sorted(candidates, key=lambda c: (block_key(c[0]), c[1])))
        # The site seen through the class pins down the letters of the word
        # we started from: u_{m+1} must be phi^{n_m}(u_m^{-1}) there.
        u_m, n_m = current.blocks[site - 1]
        expected = e.phi_power(u_m.inverse(), n_m)
        if current.blocks[site][0] != expected:
            raise InternalCheckError(
                f"cancellation at {site} found through the class, but the source word "
                f"violates the shift law: {current.blocks[site][0]} != phi^{n_m}({u_m.inverse()})"
            )
        nxt = cancel_at(member, site)
        if not is_hnn_reduced(nxt, e):
            nxt = hnn_reduce(nxt.flatten(e.stable), e)
        current = nxt


def mrf_restricted(
    w: BlockWord, v_letters: Iterable[SignedLetter], e: HnnExtension
) -> BlockWord:
    """A most reduced form of w using only the given signed letters.

    Such a member always exists when w itself is over the given letters;
    failing to find one is an internal-consistency failure, reported
    separately from a violated precondition.
    """
    allowed = frozenset(v_letters)
    if not w.support() <= allowed:
        stray = sorted(str(u) for u in w.support() - allowed)
        raise ValueError(f"input uses letters outside the allowed set: {', '.join(stray)}")
    found = [v for v in mrf(w, e) if v.support() <= allowed]
    if not found:
        raise InternalCheckError("no most reduced form over the allowed letters exists")
    return min(found, key=block_key)


def words_equal_via_mrf(w1: Word, w2: Word, e: HnnExtension) -> bool:
    """Equality through normal-form sets: equal iff the sets meet (iff equal)."""
    return bool(mrf(w1, e).members & mrf(w2, e).members)
