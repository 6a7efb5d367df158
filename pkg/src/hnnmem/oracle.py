"""Independent verification engines.

Three deliberately separate routes to the answers the main modules
compute: rational-subset membership in a free group by automaton
saturation, bounded brute-force product search in the extension, and an
equality-preserving scrambler that mass-produces equal word pairs for
property tests.  None of these share code with the procedures they check.
"""

from __future__ import annotations

import random
from itertools import count
from typing import Iterable, Optional

from .hnn import HnnExtension, hnn_reduce
from .words import SignedLetter, Word, free_reduce


class SaturatedAutomaton:
    """Flower automaton of Mon<gens> closed under cancellation shortcuts.

    Whenever two states are joined by a path reading x x^-1 (through
    epsilon edges), an epsilon edge is added; at the fixpoint the
    automaton accepts every freely reduced word representing an element
    of the generated submonoid.
    """

    def __init__(self, gens: Iterable[Word]):
        self.edges: dict[tuple[int, SignedLetter], set[int]] = {}
        self.eps: dict[int, set[int]] = {}
        fresh = count(1)
        for g in gens:
            g = free_reduce(g)
            prev = 0
            for i, l in enumerate(g):
                nxt = 0 if i == len(g) - 1 else next(fresh)
                self.edges.setdefault((prev, l), set()).add(nxt)
                prev = nxt
        self._saturate()

    def _closure(self, states: set[int]) -> set[int]:
        out = set(states)
        todo = list(states)
        while todo:
            s = todo.pop()
            for t in self.eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    todo.append(t)
        return out

    def _saturate(self) -> None:
        while True:
            added = False
            for (p, l), mids in list(self.edges.items()):
                for mid in self._closure(set(mids)):
                    for r in self.edges.get((mid, l.inverse()), ()):
                        if r not in self.eps.get(p, set()):
                            self.eps.setdefault(p, set()).add(r)
                            added = True
            if not added:
                return

    def accepts(self, w: Word) -> bool:
        """Whether the freely reduced form of w is readable base to base."""
        current = self._closure({0})
        for l in free_reduce(w):
            step: set[int] = set()
            for s in current:
                step |= self.edges.get((s, l), set())
            if not step:
                return False
            current = self._closure(step)
        return 0 in current


def benois_member(w: Word, gens: Iterable[Word]) -> bool:
    """Does w lie in the submonoid of the free group generated by gens?"""
    return SaturatedAutomaton(gens).accepts(w)


def bfs_member(
    w: Word, gens: Iterable[Word], e: HnnExtension, max_len: int
) -> bool:
    """Search products of at most max_len generators for one equal to w.

    True confirms membership; False only means the bound was exhausted,
    never that w is outside the submonoid.
    """
    gens = [g for g in gens]
    target_inv = w.inverse()

    def equals_target(prod: Word) -> bool:
        return hnn_reduce(free_reduce(prod * target_inv), e).is_empty()

    def canon(prod: Word):
        return hnn_reduce(prod, e)

    frontier: list[Word] = [Word()]
    seen = {canon(Word())}
    for _ in range(max_len + 1):
        for prod in frontier:
            if equals_target(prod):
                return True
        nxt: list[Word] = []
        for prod in frontier:
            for g in gens:
                ext = free_reduce(prod * g)
                key = canon(ext)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key.flatten(e.stable))
        frontier = nxt
    return False


def scramble(w: Word, e: HnnExtension, seed: int, steps: int) -> Word:
    """Apply random elementary additions and semicommutations to w.

    The result is equal to w in the extension by construction; with
    steps = 0 the word is returned unchanged.
    """
    rng = random.Random(seed)
    letters = list(w.letters)
    basis_letters = sorted(e.basis.signed_letters())
    for _ in range(steps):
        moves = []
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if e.is_stable(b) and a in e.ua:
                if b.sign > 0:
                    moves.append((i, [b, e.phi_apply(a)]))
            elif e.is_stable(a) and b in e.ua and a.sign < 0:
                moves.append((i, [e.phi_apply(b), a]))
            if e.is_stable(a) and b in e.ub and a.sign > 0:
                moves.append((i, [e.phi_unapply(b), a]))
            elif e.is_stable(b) and a in e.ub and b.sign < 0:
                moves.append((i, [b, e.phi_unapply(a)]))
        if moves and rng.random() < 0.7:
            i, repl = moves[rng.randrange(len(moves))]
            letters[i : i + 2] = repl
        else:
            u = basis_letters[rng.randrange(len(basis_letters))]
            pos = rng.randrange(len(letters) + 1)
            letters[pos:pos] = [u, u.inverse()]
    return Word(letters)
