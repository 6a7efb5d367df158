"""Verified free bases of free groups, and rewriting over them.

A candidate basis is a list of named words over an ambient alphabet.  We
check it really is a free basis by Stallings folding: the candidate
generates the whole free group iff its folded subgroup graph is the
bouquet on the ambient alphabet, and a generating set whose size equals
the rank is automatically a basis.

Folding is done with provenance: every edge carries a word over the
candidate's names such that reading any closed path at the base vertex
yields, through those words, the unique expression of the path's label
over the candidate.  This gives the membership certificate and the
rewriting map in one pass.
"""

from __future__ import annotations

from typing import Optional

from .words import EMPTY, SignedLetter, Word, format_word, free_reduce, is_reduced, letter

Symbol = tuple[str, Optional[int]]


def _red(letters: tuple[SignedLetter, ...]) -> tuple[SignedLetter, ...]:
    stack: list[SignedLetter] = []
    for l in letters:
        if stack and stack[-1] == l.inverse():
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


def _inv(letters: tuple[SignedLetter, ...]) -> tuple[SignedLetter, ...]:
    return tuple(l.inverse() for l in reversed(letters))


class FreeBasis:
    """A named candidate basis of the free group on ``ambient``."""

    def __init__(self, elements: list[tuple[str, Word]], ambient):
        self.elements: tuple[tuple[str, Word], ...] = tuple((n, w) for n, w in elements)
        self.ambient: frozenset[Symbol] = frozenset(ambient)
        names = [n for n, _ in self.elements]
        if len(set(names)) != len(names):
            raise ValueError("basis letter names must be pairwise distinct")
        for n, w in self.elements:
            letter(n)  # validates the name grammar
            if not w:
                raise ValueError(f"defining word of {n} is empty")
            if free_reduce(w) != w:
                raise ValueError(f"defining word of {n} is not freely reduced: {format_word(w)}")
            for l in w:
                if l.symbol not in self.ambient:
                    raise ValueError(f"defining word of {n} uses {l.symbol} outside the ambient alphabet")
        self.names: tuple[str, ...] = tuple(names)
        self._by_name = {n: w for n, w in self.elements}
        self.verified = False
        self._rewriter: Optional[BasisRewriter] = None

    def defining_word(self, name: str) -> Word:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"unknown basis letter {name!r}") from None

    def is_basis_letter(self, l: SignedLetter) -> bool:
        return l.index is None and l.name in self._by_name

    def signed_letters(self) -> frozenset[SignedLetter]:
        out = set()
        for n in self.names:
            out.add(SignedLetter(n, None, 1))
            out.add(SignedLetter(n, None, -1))
        return frozenset(out)

    def rewriter(self) -> "BasisRewriter":
        if self._rewriter is None:
            if not verify_free_basis(self):
                raise ValueError("candidate is not a free basis; cannot build a rewriter")
            self._rewriter = BasisRewriter(self)
        return self._rewriter


class _Graph:
    """Inverse-automaton flower over the ambient alphabet, with provenance."""

    BASE = 0

    def __init__(self, basis: FreeBasis, with_gamma: bool):
        self.with_gamma = with_gamma
        self.next_vertex = 1
        # edge: [src, dst, symbol, gamma]; gamma reads the edge forward
        self.edges: list[Optional[list]] = []
        for name, w in basis.elements:
            prev = self.BASE
            for j, l in enumerate(w):
                nxt = self.BASE if j == len(w) - 1 else self._new_vertex()
                gamma: tuple[SignedLetter, ...] = ()
                if with_gamma and j == 0:
                    gamma = (SignedLetter(name, None, 1),)
                if l.sign > 0:
                    self.edges.append([prev, nxt, l.symbol, gamma])
                else:
                    self.edges.append([nxt, prev, l.symbol, _inv(gamma)])
                prev = nxt

    def _new_vertex(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        return v

    def _live(self):
        return [e for e in self.edges if e is not None]

    def _merge(self, keep: int, go: int, tau: tuple[SignedLetter, ...]) -> None:
        # Re-root every edge at `go` onto `keep`; tau transfers provenance so
        # that values of closed base paths are preserved.
        tau_inv = _inv(tau)
        for e in self._live():
            if e[0] == go and e[1] == go:
                e[0] = e[1] = keep
                if self.with_gamma:
                    e[3] = _red(tau + e[3] + tau_inv)
            elif e[0] == go:
                e[0] = keep
                if self.with_gamma:
                    e[3] = _red(tau + e[3])
            elif e[1] == go:
                e[1] = keep
                if self.with_gamma:
                    e[3] = _red(e[3] + tau_inv)

    def fold(self) -> bool:
        """Fold to a deterministic inverse automaton.

        Returns True iff no rank-dropping identification of parallel edges
        occurred (which cannot happen for a genuine basis).
        """
        rank_kept = True
        while True:
            live = self._live()
            index: dict[tuple[int, Symbol, int], int] = {}
            pair = None
            for i, e in enumerate(self.edges):
                if e is None:
                    continue
                for key in ((e[0], e[2], 1), (e[1], e[2], -1)):
                    if key in index:
                        pair = (index[key], i, key[2])
                        break
                    index[key] = i
                if pair:
                    break
            if pair is None:
                return rank_kept
            i1, i2, direction = pair
            e1, e2 = self.edges[i1], self.edges[i2]
            if direction > 0:
                p, q = e1[1], e2[1]  # same source, same label: merge targets
                tau = _red(_inv(e1[3]) + e2[3])
            else:
                p, q = e1[0], e2[0]  # same target, same label: merge sources
                tau = _red(e1[3] + _inv(e2[3]))
            if p == q:
                rank_kept = False
                self.edges[i2] = None
                continue
            if q == self.BASE:
                p, q = q, p
                tau = _inv(tau)
                i1, i2 = i2, i1
                e1, e2 = e2, e1
            self._merge(p, q, tau)
            if self.with_gamma and not (e2[0] == e1[0] and e2[1] == e1[1] and e2[3] == e1[3]):
                raise AssertionError("provenance bookkeeping out of sync during folding")
            self.edges[i2] = None

    def trim(self) -> None:
        while True:
            degree: dict[int, int] = {}
            for e in self._live():
                degree[e[0]] = degree.get(e[0], 0) + 1
                degree[e[1]] = degree.get(e[1], 0) + 1
            spurs = {v for v, d in degree.items() if d == 1 and v != self.BASE}
            if not spurs:
                return
            for i, e in enumerate(self.edges):
                if e is not None and (e[0] in spurs or e[1] in spurs):
                    self.edges[i] = None

    def is_bouquet(self, ambient: frozenset[Symbol]) -> bool:
        live = self._live()
        if any(e[0] != self.BASE or e[1] != self.BASE for e in live):
            return False
        return {e[2] for e in live} == ambient and len(live) == len(ambient)


def verify_free_basis(candidate: FreeBasis) -> bool:
    """True iff the candidate is a free basis of the free group on its ambient.

    Size must equal the rank and the folded subgroup graph must be the
    bouquet on the ambient alphabet; a full-rank generating set of a free
    group is always a basis.
    """
    if len(candidate.elements) != len(candidate.ambient):
        return False
    g = _Graph(candidate, with_gamma=False)
    if not g.fold():
        return False
    g.trim()
    ok = g.is_bouquet(candidate.ambient)
    if ok:
        candidate.verified = True
    return ok


class BasisRewriter:
    """Folded automaton giving the unique rewriting over a verified basis."""

    def __init__(self, basis: FreeBasis):
        if not basis.verified:
            raise ValueError("basis must be verified before building a rewriter")
        self.basis = basis
        g = _Graph(basis, with_gamma=True)
        if not g.fold():
            raise AssertionError("verified basis folded with a rank drop")
        g.trim()
        if not g.is_bouquet(basis.ambient):
            raise AssertionError("verified basis did not fold to the bouquet")
        self.letter_expr: dict[Symbol, tuple[SignedLetter, ...]] = {
            e[2]: e[3] for e in g.edges if e is not None
        }

    def rewrite(self, w: Word) -> Word:
        out: list[SignedLetter] = []
        for l in free_reduce(w):
            try:
                expr = self.letter_expr[l.symbol]
            except KeyError:
                raise ValueError(f"letter {l} is not over the ambient alphabet") from None
            out.extend(expr if l.sign > 0 else _inv(expr))
        return Word(_red(tuple(out)))


def rewrite_to_basis(w: Word, basis: FreeBasis) -> Word:
    """The unique reduced word over the basis letters equal to w."""
    return basis.rewriter().rewrite(w)


def expand_from_basis(v: Word, basis: FreeBasis) -> Word:
    """Substitute defining words for basis letters and freely reduce."""
    out: list[SignedLetter] = []
    for l in v:
        if l.index is not None:
            raise ValueError(f"{l} is not a basis letter (basis letters are unindexed)")
        w = basis.defining_word(l.name)
        out.extend(w.letters if l.sign > 0 else w.inverse().letters)
    return free_reduce(Word(out))
