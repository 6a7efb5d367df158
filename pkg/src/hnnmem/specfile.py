"""Line-oriented extension files.

    # comments and blank lines are skipped
    letters: a b            ambient alphabet, word-syntax tokens (unsigned)
    stable: t
    basis: g1 = a b         one line per basis letter
    UA: g2 g2' g3 g3'       signed basis letters, closed under inversion
    UB: g1 g1' g2 g2'
    phi: g3 -> g1           closed under inversion automatically
    UQ: g1 g2 g3 g2'        optional; a membership generating set

Parse errors carry the line number; serialising a parsed file and parsing
it again round-trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .basis import FreeBasis
from .hnn import HnnExtension
from .words import SignedLetter, Word, format_word, parse_word


class SpecFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class SpecFile:
    extension: HnnExtension
    uq: Optional[frozenset[SignedLetter]] = None


def _parse_signed_letters(text: str, line: int) -> list[SignedLetter]:
    try:
        return list(parse_word(text)) if text.strip() != "" else []
    except ValueError as err:
        raise SpecFileError(line, str(err)) from None


def parse_spec(text: str) -> SpecFile:
    letters: Optional[list] = None
    stable: Optional[str] = None
    basis_lines: list[tuple[str, Word]] = []
    ua: list[SignedLetter] = []
    ub: list[SignedLetter] = []
    phi_pairs: list[tuple[SignedLetter, SignedLetter]] = []
    uq: Optional[list[SignedLetter]] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SpecFileError(lineno, f"expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "letters":
            if letters is not None:
                raise SpecFileError(lineno, "duplicate letters line")
            got = _parse_signed_letters(value, lineno)
            if any(l.sign < 0 for l in got):
                raise SpecFileError(lineno, "ambient letters must be unsigned")
            letters = [l.symbol for l in got]
        elif key == "stable":
            if stable is not None:
                raise SpecFileError(lineno, "duplicate stable line")
            stable = value
        elif key == "basis":
            if "=" not in value:
                raise SpecFileError(lineno, "expected 'basis: NAME = WORD'")
            name, _, word_text = value.partition("=")
            try:
                basis_lines.append((name.strip(), parse_word(word_text)))
            except ValueError as err:
                raise SpecFileError(lineno, str(err)) from None
        elif key == "UA":
            ua.extend(_parse_signed_letters(value, lineno))
        elif key == "UB":
            ub.extend(_parse_signed_letters(value, lineno))
        elif key == "phi":
            if "->" not in value:
                raise SpecFileError(lineno, "expected 'phi: LETTER -> LETTER'")
            src_text, _, dst_text = value.partition("->")
            src = _parse_signed_letters(src_text, lineno)
            dst = _parse_signed_letters(dst_text, lineno)
            if len(src) != 1 or len(dst) != 1:
                raise SpecFileError(lineno, "phi maps a single letter to a single letter")
            phi_pairs.append((src[0], dst[0]))
        elif key == "UQ":
            uq = (uq or []) + _parse_signed_letters(value, lineno)
        else:
            raise SpecFileError(lineno, f"unknown key {key!r}")

    if letters is None:
        raise SpecFileError(0, "missing letters line")
    if stable is None:
        raise SpecFileError(0, "missing stable line")
    try:
        fb = FreeBasis(basis_lines, letters)
    except ValueError as err:
        raise SpecFileError(0, str(err)) from None
    phi: dict[SignedLetter, SignedLetter] = {}
    for src, dst in phi_pairs:
        phi[src] = dst
        phi[src.inverse()] = dst.inverse()
    ext = HnnExtension(letters, stable, fb, ua, ub, phi)
    return SpecFile(extension=ext, uq=None if uq is None else frozenset(uq))


def _fmt_symbol(sym) -> str:
    name, index = sym
    return name if index is None else f"{name}[{index}]"


def _letter_sort_key(l: SignedLetter):
    return (l.name, l.index is not None, l.index or 0, l.sign)


def serialize_spec(sf: SpecFile, header: Optional[list[str]] = None) -> str:
    e = sf.extension
    lines = [f"# {h}" for h in header or []]
    lines.append("letters: " + " ".join(sorted(_fmt_symbol(s) for s in e.ambient)))
    lines.append(f"stable: {e.stable}")
    for name, w in e.basis.elements:
        lines.append(f"basis: {name} = {format_word(w)}")
    lines.append("UA: " + " ".join(str(u) for u in sorted(e.ua, key=_letter_sort_key)))
    lines.append("UB: " + " ".join(str(u) for u in sorted(e.ub, key=_letter_sort_key)))
    for src in sorted(e.phi, key=_letter_sort_key):
        if src.sign > 0:
            lines.append(f"phi: {src} -> {e.phi[src]}")
    if sf.uq is not None:
        lines.append("UQ: " + " ".join(str(u) for u in sorted(sf.uq, key=_letter_sort_key)))
    return "\n".join(lines) + "\n"
