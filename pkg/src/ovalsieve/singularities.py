"""Even singular points, their Arf invariants, and congruences for plane
curves of even degree ``2k`` whose singular points are all imaginary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import EvenSequence, InputError, NonOrientablePlus
from .verdict import Reason, Status, Verdict, combine

# Arf invariant of an ordinary cusp
CUSP_ARF = 1


class PlaneClass(str, enum.Enum):
    M = "M"
    M1 = "M-1"
    M2_TYPE_II = "M-2-typeII"
    TYPE_I = "typeI"


@dataclass(frozen=True)
class MultiplicitySequence:
    """Intersection numbers ``s_j`` of the exceptional curve of the j-th blow-up with the strict transform."""

    s: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(x, int) or x < 1 for x in self.s):
            raise InputError(f"multiplicity sequence entries must be positive integers, got {list(self.s)}")

    @classmethod
    def parse(cls, text: str) -> "MultiplicitySequence":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError:
            raise InputError(f"cannot read multiplicity sequence {text!r}") from None


def _seq(ms) -> MultiplicitySequence:
    return ms if isinstance(ms, MultiplicitySequence) else MultiplicitySequence(tuple(ms))


def is_odd_sequence(ms: MultiplicitySequence | Sequence[int]) -> bool:
    """Every round sum is odd; such points have even links."""
    return all(x % 2 for x in _seq(ms).s)


def arf_of_sequence(ms: MultiplicitySequence | Sequence[int]) -> int:
    ms = _seq(ms)
    if not is_odd_sequence(ms):
        raise EvenSequence(f"Arf formula needs every s_j odd, got {list(ms.s)}")
    return sum((x * x - 1) // 8 for x in ms.s) % 2


def rokhlin_residue(ms: MultiplicitySequence | Sequence[int]) -> int:
    """``sum_j (1 - s_j^2) mod 16``, which equals ``8 Arf`` for odd sequences."""
    return sum(1 - x * x for x in _seq(ms).s) % 16


def sum_arf(pairs: Sequence[MultiplicitySequence | Sequence[int] | int]) -> int:
    """``Ar``: one Arf invariant per conjugate pair (a bare int is taken as the Arf value itself)."""
    total = 0
    for p in pairs:
        total += p if isinstance(p, int) else arf_of_sequence(p)
    return total % 2


@dataclass(frozen=True)
class A1Input:
    k: int
    chi_plus: int
    plus_orientable: bool
    curve_class: PlaneClass
    ar: int = 0


def _residues_a1(k: int, ar: int, cls: PlaneClass) -> tuple[int, set[int]]:
    base = k * k + 4 * ar
    if cls is PlaneClass.M:
        return 8, {base % 8}
    if cls is PlaneClass.M1:
        return 8, {(base + e) % 8 for e in (1, -1)}
    if cls is PlaneClass.M2_TYPE_II:
        return 8, {(base + e) % 8 for e in (0, 2, -2)}
    return 4, {k * k % 4}


def prop_a1_verdict(inp: A1Input) -> Verdict:
    if not inp.plus_orientable:
        raise NonOrientablePlus("the half RP^2_+ must be orientable")
    cls = PlaneClass(inp.curve_class)
    mod, allowed = _residues_a1(inp.k, inp.ar % 2, cls)
    ok = inp.chi_plus % mod in allowed
    return combine([Reason(f"A1.{cls.value}", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": mod, "allowed": sorted(allowed), "chi_plus": inp.chi_plus})])


_A2_CLAUSES = {"a": PlaneClass.M, "b": PlaneClass.M1, "c": PlaneClass.M2_TYPE_II, "d": PlaneClass.TYPE_I}


def prop_a2_required_residues(k: int, beta_tilde: int, b_tilde: int, ar: int, clause: str) -> tuple[int, set[int]]:
    """``(modulus, allowed residues)`` with the Brown invariant and correction term supplied by the caller."""
    if clause not in _A2_CLAUSES:
        raise InputError(f"clause must be one of a, b, c, d; got {clause!r}")
    shift = beta_tilde + b_tilde
    if clause == "d":
        return 4, {(k * k + shift) % 4}
    mod, allowed = _residues_a1(k, ar % 2, _A2_CLAUSES[clause])
    return mod, {(x + shift) % mod for x in allowed}


def prop_a2_verdict(k: int, chi_plus: int, beta_tilde: int, b_tilde: int, ar: int, clause: str) -> Verdict:
    mod, allowed = prop_a2_required_residues(k, beta_tilde, b_tilde, ar, clause)
    ok = chi_plus % mod in allowed
    return combine([Reason(f"A2.{clause}", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": mod, "allowed": sorted(allowed), "chi_plus": chi_plus})])
