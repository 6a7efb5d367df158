"""Words over signed, optionally indexed alphabets.

A letter is a triple (name, index, sign): ``a`` is ``("a", None, 1)``,
``b[-1]'`` is ``("b", -1, -1)``.  Words are finite tuples of letters and
represent elements of the free group on the underlying symbols; the empty
word is the identity.

Text syntax (used by every other module and by the CLI): whitespace
separated tokens, where a token is NAME, NAME', NAME[INT] or NAME[INT]',
NAME matching ``[a-z][a-z0-9_]*`` and a trailing apostrophe marking the
inverse.  The empty word prints and parses as ``1``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Optional


class SignedLetter(NamedTuple):
    name: str
    index: Optional[int]
    sign: int

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.name, self.index, -self.sign)

    @property
    def symbol(self) -> tuple[str, Optional[int]]:
        """The unsigned symbol (name, index) this letter is a power of."""
        return (self.name, self.index)

    def __str__(self) -> str:
        base = self.name if self.index is None else f"{self.name}[{self.index}]"
        return base if self.sign > 0 else base + "'"


_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"([a-z][a-z0-9_]*)(?:\[(-?\d+)\])?(')?\Z")


def letter(name: str, index: Optional[int] = None, sign: int = 1) -> SignedLetter:
    """Build a validated letter."""
    if not _NAME_RE.match(name):
        raise ValueError(f"bad letter name {name!r}: want [a-z][a-z0-9_]*")
    if sign not in (1, -1):
        raise ValueError(f"bad sign {sign!r}: want +1 or -1")
    if index is not None and not isinstance(index, int):
        raise ValueError(f"bad index {index!r}: want an integer or None")
    return SignedLetter(name, index, sign)


class Word:
    """An immutable sequence of signed letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[SignedLetter] = ()):
        self.letters: tuple[SignedLetter, ...] = tuple(letters)

    @staticmethod
    def parse(text: str) -> "Word":
        return parse_word(text)

    def inverse(self) -> "Word":
        return Word(l.inverse() for l in reversed(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[SignedLetter]:
        return iter(self.letters)

    def __getitem__(self, i):
        got = self.letters[i]
        return Word(got) if isinstance(i, slice) else got

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EMPTY = Word()


def parse_word(text: str) -> Word:
    """Parse the word text syntax; raises ValueError naming the bad token."""
    text = text.strip()
    if text == "1":
        return EMPTY
    if not text:
        raise ValueError("empty input: the empty word is written '1'")
    out = []
    for pos, tok in enumerate(text.split()):
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad token {tok!r} at position {pos + 1}")
        name, idx, inv = m.groups()
        out.append(SignedLetter(name, None if idx is None else int(idx), -1 if inv else 1))
    return Word(out)


def format_word(w: Word) -> str:
    return " ".join(str(l) for l in w.letters) if w.letters else "1"


def free_reduce(w: Word) -> Word:
    """The unique freely reduced word equal to w: cancel adjacent l l'."""
    stack: list[SignedLetter] = []
    for l in w:
        if stack and stack[-1] == l.inverse():
            stack.pop()
        else:
            stack.append(l)
    return Word(stack)


def is_reduced(w: Word) -> bool:
    return all(w.letters[i + 1] != w.letters[i].inverse() for i in range(len(w) - 1))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w into (c, u) with w = c u c^-1 freely and u cyclically reduced.

    The conjugator is returned rather than discarded so callers can insist
    on inputs that are already cyclically reduced.
    """
    core = free_reduce(w)
    conj: list[SignedLetter] = []
    while len(core) >= 2 and core.letters[0] == core.letters[-1].inverse():
        conj.append(core.letters[0])
        core = Word(core.letters[1:-1])
    return Word(conj), core


def is_cyclically_reduced(w: Word) -> bool:
    c, _ = cyclic_reduce(w)
    return free_reduce(w) == w and not c


def exponent_sum(w: Word, name: str, index: Optional[int] = None) -> int:
    """Signed count of occurrences of the symbol (name, index) in w."""
    return sum(l.sign for l in w if l.name == name and l.index == index)


def prefixes(w: Word) -> list[Word]:
    """All literal prefixes of w, from the empty word to w itself."""
    return [Word(w.letters[:i]) for i in range(len(w) + 1)]
