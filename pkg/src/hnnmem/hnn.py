"""HNN extensions of free groups with letter-bijective associated subgroups.

The base group H is free on a verified basis; the associated subgroups A
and B are generated by subsets of the basis letters, and the defining
isomorphism phi is a sign-respecting bijection between the signed letter
sets.  Words in the extension are handled in block form

    t^{n_0} u_1 t^{n_1} ... u_k t^{n_k}

with each u_i a signed basis letter.  Equality is decided by Britton
reduction: a word equals the identity iff eliminating pinches
(t^-1 a t with a in A, t b t^-1 with b in B) empties it.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .basis import FreeBasis, Symbol, _red, expand_from_basis
from .words import SignedLetter, Word, free_reduce


class ValidationError(ValueError):
    """An HNN extension violating one of its structural invariants."""


class HnnExtension:
    def __init__(
        self,
        ambient,
        stable: str,
        basis: FreeBasis,
        ua,
        ub,
        phi: dict[SignedLetter, SignedLetter],
    ):
        self.ambient: frozenset[Symbol] = frozenset(ambient)
        self.stable = stable
        self.basis = basis
        self.ua: frozenset[SignedLetter] = frozenset(ua)
        self.ub: frozenset[SignedLetter] = frozenset(ub)
        self.phi = dict(phi)
        self.phi_inv = {v: k for k, v in self.phi.items()}

    def stable_letter(self, sign: int = 1) -> SignedLetter:
        return SignedLetter(self.stable, None, sign)

    def is_stable(self, l: SignedLetter) -> bool:
        return l.index is None and l.name == self.stable

    def phi_apply(self, u: SignedLetter) -> SignedLetter:
        return self.phi[u]

    def phi_unapply(self, u: SignedLetter) -> SignedLetter:
        return self.phi_inv[u]

    def phi_power(self, u: SignedLetter, z: int) -> Optional[SignedLetter]:
        """Apply phi z times (phi^-1 for negative z); None when undefined."""
        for _ in range(abs(z)):
            table = self.phi if z > 0 else self.phi_inv
            if u not in table:
                return None
            u = table[u]
        return u


def validate_extension(e: HnnExtension) -> list[str]:
    """All violated invariants, in checking order; empty means valid."""
    problems: list[str] = []
    if (e.stable, None) in e.ambient or e.stable in e.basis.names:
        problems.append(f"stable letter {e.stable!r} collides with the ambient alphabet or basis")
    if not e.basis.verified:
        from .basis import verify_free_basis

        if not verify_free_basis(e.basis):
            problems.append("basis is not a free basis of the ambient free group")
    signed = e.basis.signed_letters()
    for label, s in (("UA", e.ua), ("UB", e.ub)):
        bad = sorted(str(u) for u in s - signed)
        if bad:
            problems.append(f"{label} contains non-basis letters: {', '.join(bad)}")
        open_ = sorted(str(u) for u in s if u.inverse() not in s)
        if open_:
            problems.append(f"{label} is not closed under inversion: {', '.join(open_)}")
    if set(e.phi) != set(e.ua):
        problems.append("phi's domain is not exactly UA")
    if set(e.phi.values()) != set(e.ub):
        problems.append("phi's image is not exactly UB")
    if len(set(e.phi.values())) != len(e.phi):
        problems.append("phi is not injective")
    for u, v in e.phi.items():
        if e.phi.get(u.inverse()) != v.inverse():
            problems.append(f"phi does not respect inversion at {u}")
            break
    return problems


def ensure_valid(e: HnnExtension) -> None:
    problems = validate_extension(e)
    if problems:
        raise ValidationError("; ".join(problems))


class BlockWord(NamedTuple):
    """t^{n0} u_1 t^{n_1} ... u_k t^{n_k} with single-letter u_i."""

    n0: int
    blocks: tuple[tuple[SignedLetter, int], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def is_empty(self) -> bool:
        return self.n0 == 0 and not self.blocks

    def letters(self) -> tuple[SignedLetter, ...]:
        return tuple(u for u, _ in self.blocks)

    def exponents(self) -> tuple[int, ...]:
        return (self.n0,) + tuple(n for _, n in self.blocks)

    def support(self) -> frozenset[SignedLetter]:
        return frozenset(u for u, _ in self.blocks)

    def flatten(self, stable: str) -> Word:
        out: list[SignedLetter] = []
        tpos = SignedLetter(stable, None, 1)
        tneg = SignedLetter(stable, None, -1)

        def run(n: int) -> None:
            out.extend([tpos if n > 0 else tneg] * abs(n))

        run(self.n0)
        for u, n in self.blocks:
            out.append(u)
            run(n)
        return Word(out)

    def stable_signature(self) -> tuple[int, ...]:
        """The sequence of stable-letter signs, left to right."""
        sig: list[int] = []
        for n in self.exponents():
            sig.extend([1 if n > 0 else -1] * abs(n))
        return tuple(sig)


EMPTY_BLOCK = BlockWord(0, ())


def to_block_form(w: Word, e: HnnExtension) -> BlockWord:
    """Group a word over the basis letters and the stable letter into blocks.

    Adjacent stable-letter powers merge; everything else is preserved.
    """
    n0 = 0
    blocks: list[tuple[SignedLetter, int]] = []
    for l in w:
        if e.is_stable(l):
            if blocks:
                u, n = blocks[-1]
                blocks[-1] = (u, n + l.sign)
            else:
                n0 += l.sign
        elif e.basis.is_basis_letter(l):
            blocks.append((l, 0))
        else:
            raise ValueError(f"letter {l} is neither the stable letter nor a basis letter")
    return BlockWord(n0, tuple(blocks))


def _segments(bw: BlockWord):
    """Alternating view (runs, segs): segs[i] sits between runs[i] and runs[i+1].

    A zero run means the word boundary; interior runs are nonzero.
    """
    runs = [bw.n0]
    segs: list[list[SignedLetter]] = []
    cur: list[SignedLetter] = []
    for u, n in bw.blocks:
        cur.append(u)
        if n != 0:
            segs.append(cur)
            cur = []
            runs.append(n)
    if cur:
        segs.append(cur)
        runs.append(0)
    return runs, segs


def _pinch_kind(e: HnnExtension, left: int, right: int, seg: list[SignedLetter]) -> Optional[int]:
    """+1 for an A-pinch (t^- seg t^+), -1 for a B-pinch, None otherwise."""
    if left < 0 and right > 0:
        if all(u in e.ua for u in _red(tuple(seg))):
            return 1
    elif left > 0 and right < 0:
        if all(u in e.ub for u in _red(tuple(seg))):
            return -1
    return None


def is_hnn_reduced(bw: BlockWord, e: HnnExtension) -> bool:
    runs, segs = _segments(bw)
    for i, seg in enumerate(segs):
        if _pinch_kind(e, runs[i], runs[i + 1], seg) is not None:
            return False
    return True


def _flat_over_basis(w: Word, e: HnnExtension) -> tuple[SignedLetter, ...]:
    """Rewrite every stable-letter-free segment over the basis letters.

    Accepts words mixing basis letters, ambient letters and the stable
    letter; mixed segments go through the ambient free group.
    """
    out: list[SignedLetter] = []
    seg: list[SignedLetter] = []
    seg_has_ambient = False

    def close_segment() -> None:
        nonlocal seg, seg_has_ambient
        if not seg:
            return
        if seg_has_ambient:
            ambient_word: list[SignedLetter] = []
            for l in seg:
                if e.basis.is_basis_letter(l):
                    ambient_word.extend(expand_from_basis(Word([l]), e.basis))
                else:
                    ambient_word.append(l)
            out.extend(e.basis.rewriter().rewrite(Word(ambient_word)))
        else:
            out.extend(seg)
        seg = []
        seg_has_ambient = False

    for l in w:
        if e.is_stable(l):
            close_segment()
            out.append(l)
        elif e.basis.is_basis_letter(l):
            seg.append(l)
        elif l.symbol in e.ambient:
            seg.append(l)
            seg_has_ambient = True
        else:
            raise ValueError(f"letter {l} is not over the extension's alphabet")
    close_segment()
    return _red(tuple(out))


def hnn_reduce(w: Word, e: HnnExtension) -> BlockWord:
    """Britton reduction to a pinch-free block word equal to w.

    Pinches are eliminated leftmost first; each elimination rewrites the
    pinched segment letterwise through phi and drops a t t^-1 pair, so the
    loop terminates.  Segments stay freely reduced over the basis
    throughout, which lets the subgroup tests work on letter support.
    """
    flat = _flat_over_basis(w, e)
    while True:
        bw = to_block_form(Word(flat), e)
        runs, segs = _segments(bw)
        hit = None
        for i, seg in enumerate(segs):
            kind = _pinch_kind(e, runs[i], runs[i + 1], seg)
            if kind is not None:
                hit = (i, kind)
                break
        if hit is None:
            return bw
        i, kind = hit
        reduced_seg = _red(tuple(segs[i]))
        image = tuple((e.phi_apply if kind > 0 else e.phi_unapply)(u) for u in reduced_seg)
        runs[i] += kind
        runs[i + 1] -= kind
        rebuilt: list[SignedLetter] = []
        tpos = e.stable_letter(1)
        tneg = e.stable_letter(-1)
        for j, n in enumerate(runs):
            rebuilt.extend([tpos if n > 0 else tneg] * abs(n))
            if j < len(segs):
                rebuilt.extend(image if j == i else segs[j])
        flat = _red(tuple(rebuilt))


def words_equal(w1: Word, w2: Word, e: HnnExtension) -> bool:
    """Britton's criterion: w1 = w2 in the extension iff w1 w2^-1 reduces away."""
    return hnn_reduce(free_reduce(w1 * w2.inverse()), e).is_empty()
