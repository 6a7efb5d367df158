"""Deciding membership in submonoids Mon<UQ, t, t^-1> of the extension.

UQ is a set of signed basis letters; the procedure is sound exactly when
phi matches the part of Mon<UQ> inside A with the part inside B, which
for letter generating sets comes down to the finite check
phi(UQ n UA) = UQ n UB.  Under that hypothesis a word belongs to the
submonoid iff some most reduced form of it spells only UQ letters and
stable letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .elementary import block_key, mrf
from .hnn import HnnExtension, hnn_reduce
from .words import SignedLetter, Word


class CompatibilityError(ValueError):
    """The submonoid fails phi(Q n A) = Q n B; the procedure does not apply."""


@dataclass(frozen=True)
class SubmonoidSpec:
    """Monoid generating set UQ, a set of signed basis letters.

    Not required to be closed under inversion.
    """

    uq: frozenset[SignedLetter]

    @staticmethod
    def of(letters) -> "SubmonoidSpec":
        return SubmonoidSpec(frozenset(letters))


def check_compatibility(
    q: SubmonoidSpec, e: HnnExtension
) -> tuple[bool, Optional[SignedLetter]]:
    """Check phi(UQ n UA) = UQ n UB; on failure return a witnessing letter."""
    stray = q.uq - e.basis.signed_letters()
    if stray:
        raise ValueError(f"UQ contains non-basis letters: {sorted(str(u) for u in stray)}")
    lhs = q.uq & e.ua
    rhs = q.uq & e.ub
    key = lambda u: (u.name, u.index is not None, u.index or 0, u.sign)
    for u in sorted(lhs, key=key):
        if e.phi_apply(u) not in rhs:
            return False, u
    for v in sorted(rhs, key=key):
        if e.phi_unapply(v) not in lhs:
            return False, v
    return True, None


def decide_membership(
    w: Word, q: SubmonoidSpec, e: HnnExtension
) -> tuple[bool, Optional[Word]]:
    """Is w in Mon<UQ, t, t^-1> inside the extension?

    Returns (verdict, witness); the witness is a most reduced form of w
    spelled entirely over UQ and the stable letter, so it can be re-checked
    against w independently.  Refuses to run when the compatibility
    hypothesis fails, since then the support test proves nothing.
    """
    ok, bad = check_compatibility(q, e)
    if not ok:
        raise CompatibilityError(
            f"phi(UQ n UA) != UQ n UB (letter {bad} witnesses the asymmetry); "
            "membership in Mon<UQ, t, t^-1> is not covered by this procedure"
        )
    reduced = hnn_reduce(w, e)
    fitting = [v for v in mrf(reduced, e) if v.support() <= q.uq]
    if fitting:
        return True, min(fitting, key=block_key).flatten(e.stable)
    return False, None
