"""Congruence verdicts for curves of bidegree (d, d) on an ellipsoid.

Odd ``d``: restrictions on M-, (M-1)- and (M-2)-curves and on curves of
type I.  Even ``d``: restrictions on M-curves whose B1 has only
even-characteristic components, and on type I curves with a given
complex orientation.  ``NoConstraint`` only means the scheme survived
this battery; nothing here claims realizability.
"""

from __future__ import annotations

import enum
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .enumerator import DEFAULT_CAP, FilterConfig, apply_filters, canonical_strings, harnack_bound
from .errors import EvenDegree, ExceedsHarnack, InputError, NotMCurve, OddDegree, OddOvalCount
from .scheme import (
    OrientedScheme,
    PartLabeling,
    SphereScheme,
    euler_parts,
    induced_sign,
    labelings,
    parse_scheme,
    render_canonical,
    x_of_oval,
)
from .verdict import Reason, Status, Verdict, combine, congruent


class CurveType(str, enum.Enum):
    I = "I"
    II = "II"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CharacteristicNumbers:
    w_self: int
    w1_self: int


def characteristic_numbers(s: SphereScheme, d: int, labeling: PartLabeling | None = None) -> CharacteristicNumbers:
    """Self-intersections ``d^2 - 2 chi(B0)`` and ``d^2 - chi(B1)``."""
    lab = labeling or euler_parts(s)
    return CharacteristicNumbers(d * d - 2 * lab.chi0, d * d - lab.chi1)


def _parts(labs: list[PartLabeling]) -> list[list[int]]:
    return [[lab.chi0, lab.chi1] for lab in labs]


def theorem1_verdict(s: SphereScheme, d: int, claimed_type: CurveType | str = CurveType.UNKNOWN) -> Verdict:
    if d % 2 == 0:
        raise EvenDegree(f"odd-degree congruences need odd d, got {d}")
    claimed_type = CurveType(claimed_type)
    h = harnack_bound(d)
    if s.l > h:
        raise ExceedsHarnack(f"l={s.l} exceeds the Harnack bound {h} for d={d}")
    k = h - s.l
    labs = labelings(s)
    dd = d * d
    reasons = []

    if k == 0:
        r = (dd + 1) // 2 % 8
        ok = any(congruent(lab.chi0, r, 8) and congruent(lab.chi1, r, 8) for lab in labs)
        reasons.append(Reason("thm1.a", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                              {"modulus": 8, "required": [r], "parts": _parts(labs)[0]}))
    elif k == 1:
        lab = labs[0]
        r0, r1 = (dd - 1) // 2 % 8, (dd + 3) // 2 % 8
        ok = congruent(lab.chi0, r0, 8) and congruent(lab.chi1, r1, 8)
        reasons.append(Reason("thm1.b", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                              {"modulus": 8, "required_chi0": r0, "required_chi1": r1,
                               "chi0": lab.chi0, "chi1": lab.chi1}))
    elif k == 2:
        r = (dd - 7) // 2 % 8
        hit = any(congruent(lab.chi0, r, 8) for lab in labs)
        if hit and claimed_type is CurveType.II:
            status = Status.PROHIBITED
        elif hit:
            status = Status.TYPE_I_ONLY
        else:
            status = Status.NO_CONSTRAINT
        reasons.append(Reason("thm1.c", status,
                              {"modulus": 8, "trigger": r, "applies": hit, "parts": _parts(labs)[0]}))
    else:
        reasons.append(Reason("thm1", Status.NO_CONSTRAINT, {"deficiency": k}))

    if claimed_type is CurveType.I:
        ok = any(congruent(lab.chi0, 1, 4) and congruent(lab.chi1, 1, 4) for lab in labs)
        reasons.append(Reason("thm1.d", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                              {"modulus": 4, "required": [1], "parts": _parts(labs)[0]}))
    return combine(reasons)


def theorem1_with_brown(s: SphereScheme, d: int, beta: int) -> Verdict:
    """``chi(B0) = (d^2 + 1)/2 + beta (mod 8)`` for a supplied Brown invariant ``beta``."""
    if d % 2 == 0:
        raise EvenDegree(f"odd-degree congruences need odd d, got {d}")
    r = ((d * d + 1) // 2 + beta) % 8
    labs = labelings(s)
    ok = any(congruent(lab.chi0, r, 8) for lab in labs)
    return combine([Reason("thm1.brown", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": 8, "beta": beta % 8, "required": [r],
                            "chi0": [lab.chi0 for lab in labs]})])


def theorem2a_verdict(s: SphereScheme, d: int) -> Verdict:
    if d % 2:
        raise OddDegree(f"even-degree congruences need even d, got {d}")
    h = harnack_bound(d)
    if s.l != h:
        raise NotMCurve(f"l={s.l} but an M-curve of bidegree ({d},{d}) has {h} ovals")
    lab = euler_parts(s)
    odd = [x for x in lab.components1 if x % 2]
    if odd:
        return combine([Reason("thm2.a", Status.HYPOTHESIS_NOT_SATISFIED,
                               {"odd_b1_components": sorted(odd)})])
    r0, r1 = d * d % 16, (2 - d * d) % 16
    ok = congruent(lab.chi0, r0, 16) and congruent(lab.chi1, r1, 16)
    return combine([Reason("thm2.a", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": 16, "required_chi0": r0, "required_chi1": r1,
                            "chi0": lab.chi0, "chi1": lab.chi1,
                            "chi0_mod": lab.chi0 % 16, "chi1_mod": lab.chi1 % 16})])


def b0_orientation_search(o: OrientedScheme) -> dict[int, int] | None:
    """An orientation of the B0 components for which every disorienting oval has x = 0.

    Each oval borders exactly one B0 component, so components can be
    decided independently.  Returns ``None`` if some component admits
    neither sign.
    """
    s = o.base
    lab = euler_parts(s)
    x = [x_of_oval(s, i, lab) for i in range(s.l)]
    choice = {}
    for region in lab.regions(0):
        boundary = [i for nb, i in s.adjacency[region]]
        for sign in (1, -1):
            if all(x[i] == 0 for i in boundary if o.signs[i] != induced_sign(s, i, region, sign)):
                choice[region] = sign
                break
        else:
            return None
    return choice


def theorem2b_verdict(o: OrientedScheme, d: int) -> Verdict:
    s = o.base
    if d % 2:
        raise OddDegree(f"even-degree congruences need even d, got {d}")
    if s.l % 2:
        raise OddOvalCount(f"type I curves of even bidegree have an even number of ovals, got l={s.l}")
    witness = b0_orientation_search(o)
    if witness is None:
        return combine([Reason("thm2.b", Status.HYPOTHESIS_NOT_SATISFIED, {"vacuous": False})])
    lab = euler_parts(s)
    r0, r1 = d * d % 8, (2 - d * d) % 8
    ok = congruent(lab.chi0, r0, 8) and congruent(lab.chi1, r1, 8)
    return combine([Reason("thm2.b", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": 8, "required_chi0": r0, "required_chi1": r1,
                            "chi0": lab.chi0, "chi1": lab.chi1, "vacuous": s.l == 0,
                            "b0_orientation": {str(k): v for k, v in sorted(witness.items())}})])


# --------------------------------------------------------------------------
# classification pipeline


@dataclass(frozen=True)
class Row:
    scheme: str
    l: int
    chi0: int
    chi1: int
    ambiguous: bool
    verdict: Verdict
    instance: str | None = None

    @property
    def status(self) -> Status:
        return self.verdict.status

    def to_json(self) -> dict:
        out = {
            "scheme": self.scheme,
            "l": self.l,
            "chi0": self.chi0,
            "chi1": self.chi1,
            "ambiguous": self.ambiguous,
            "status": self.status.value,
            "verdicts": self.verdict.to_json(),
        }
        if self.instance is not None:
            out["instance"] = self.instance
        return out


def scheme_verdicts(s: SphereScheme, d: int) -> list[Reason]:
    """Every scheme-only theorem applicable at bidegree (d, d)."""
    h = harnack_bound(d)
    if s.l > h:
        return []
    if d % 2:
        return list(theorem1_verdict(s, d).reasons)
    if s.l == h:
        return list(theorem2a_verdict(s, d).reasons)
    return []


def classify_scheme(
    s: SphereScheme,
    d: int,
    cfg: FilterConfig | None = None,
    instance: str | None = None,
    name: str | None = None,
) -> Row:
    """Filters plus scheme-only theorems; ``name`` skips re-rendering a known canonical string."""
    cfg = cfg or FilterConfig(d)
    report = apply_filters(s, cfg)
    reasons = [Reason("filter." + f, Status.PROHIBITED, dict(w)) for f, w in report.failures]
    reasons.extend(scheme_verdicts(s, d))
    lab = euler_parts(s)
    return Row(name or render_canonical(s), s.l, lab.chi0, lab.chi1, lab.ambiguous, combine(reasons), instance)


def _classify_chunk(args) -> list[Row]:
    names, d, cfg = args
    return [classify_scheme(parse_scheme(n), d, cfg, name=n) for n in names]


def classify(
    d: int,
    ovals: Iterable[int],
    cfg: FilterConfig | None = None,
    cap: int = DEFAULT_CAP,
    cache_dir=None,
    workers: int = 1,
    chunk: int = 2000,
) -> Iterator[Row]:
    """Rows for every scheme with an oval count in ``ovals``, in canonical order."""
    if d < 1:
        raise InputError(f"d must be >= 1, got {d}")
    cfg = cfg or FilterConfig(d)
    for l in ovals:
        names = canonical_strings(l, cap, cache_dir)
        jobs = [(names[i:i + chunk], d, cfg) for i in range(0, len(names), chunk)]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for rows in pool.map(_classify_chunk, jobs):
                    yield from rows
        else:
            for job in jobs:
                yield from _classify_chunk(job)


_VAR = re.compile(r"[A-Za-z_]\w*")


def family_instances(pattern: str, l: int) -> Iterator[tuple[dict[str, int], str]]:
    """Instances of a notation template like ``"a+1<b>"`` with exactly ``l`` ovals.

    A variable that is the whole content of a pair of brackets ranges over
    positive integers, every other variable over non-negative ones.
    Assignments are produced in lexicographic order of the variable values
    (variables taken in order of first appearance).
    """
    names = list(dict.fromkeys(_VAR.findall(pattern)))
    if not names:
        raise InputError(f"family pattern {pattern!r} has no variables")
    squeezed = pattern.replace(" ", "")
    low = {v: 1 if re.search(r"<" + v + r">", squeezed) else 0 for v in names}

    def assign(i, values):
        if i == len(names):
            text = _VAR.sub(lambda m: str(values[m.group(0)]), pattern)
            s = parse_scheme(text)
            if s.l == l:
                yield dict(values), text
            return
        for v in range(low[names[i]], l + 1):
            values[names[i]] = v
            yield from assign(i + 1, values)
        del values[names[i]]

    yield from assign(0, {})


def classify_family(d: int, pattern: str, l: int, cfg: FilterConfig | None = None) -> Iterator[tuple[dict[str, int], Row]]:
    for values, text in family_instances(pattern, l):
        yield values, classify_scheme(parse_scheme(text), d, cfg, instance=text)
