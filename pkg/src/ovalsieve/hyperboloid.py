"""Oriented curves on the torus of a hyperboloid and the congruences that
constrain them, plus evaluators for separation-type congruences on
general real surfaces.

An arrangement has ``n`` parallel nonshrinking components of class
``(s, t)`` cutting the torus into ``n`` annuli ``a0 .. a{n-1}``; component
``i`` runs between ``a{i-1}`` (on its right) and ``a{i}`` (on its left).
With ``n = 0`` there is a single toral region ``a0``.  Each annulus holds
a forest of signed ovals in the oriented notation of
:mod:`ovalsieve.scheme`; the region enclosed by the ``j``-th top-level
oval of ``a0`` is ``a0/j``, the one inside its ``k``-th child is
``a0/j/k`` and so on.

The index function jumps by +1 when crossing an oriented curve from its
right to its left; the base region carries index 0.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Sequence

from .errors import (
    ArrangementError,
    DivisibilityViolated,
    ExceedsHarnack,
    IndexInconsistent,
    InputError,
    NonBipartite,
    NotSpin,
    OddBidegree,
)
from .scheme import Oval, parse_ovals
from .verdict import Reason, Status, Verdict, combine, congruent

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TorusArrangement:
    s: int
    t: int
    components: tuple[int, ...]
    annuli: tuple[tuple[Oval, ...], ...]
    d: int
    r: int
    base: str = "a0"
    curve_type: str = "unknown"

    def __post_init__(self):
        n = len(self.components)
        if any(c not in (1, -1) for c in self.components):
            raise ArrangementError("component orientations must be +1 or -1")
        if len(self.annuli) != max(n, 1):
            raise ArrangementError(f"{n} nonshrinking components need {max(n, 1)} annuli, got {len(self.annuli)}")
        if self.s < 0 or self.t < 0:
            raise ArrangementError("class coordinates must be non-negative")
        if n and (self.s, self.t) == (0, 0):
            raise ArrangementError("nonshrinking components cannot have class (0, 0)")
        if n and math.gcd(self.s, self.t) != 1:
            raise ArrangementError(f"class ({self.s}, {self.t}) of an embedded circle must be primitive")
        if self.d < 0 or self.r < 0:
            raise ArrangementError("bidegree must be non-negative")
        if self.curve_type not in ("I", "II", "unknown"):
            raise ArrangementError(f"curve_type must be I, II or unknown, got {self.curve_type!r}")
        if self.base not in self.regions:
            raise ArrangementError(f"unknown base region {self.base!r}")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def l_prime(self) -> int:
        return sum(self.components)

    @property
    def oval_count(self) -> int:
        return len(self._graph[1]) - self.n

    @property
    def l(self) -> int:
        """Total number of real components."""
        return self.n + self.oval_count

    @property
    def regions(self) -> dict[str, int]:
        """Region id -> Euler characteristic."""
        return self._graph[0]

    @property
    def edges(self) -> list[tuple[str, str, int, str]]:
        """``(right, left, jump, curve label)``: index(left) = index(right) + jump."""
        return self._graph[1]

    @cached_property
    def _graph(self):
        return _build_graph(self)


def _build_graph(arr: TorusArrangement):
    chi: dict[str, int] = {}
    edges: list[tuple[str, str, int, str]] = []
    n = len(arr.components)
    for i, forest in enumerate(arr.annuli):
        name = f"a{i}"
        chi[name] = -len(forest)
        stack = [(name, j, o) for j, o in enumerate(forest)]
        while stack:
            outer, j, oval = stack.pop()
            inner = f"{outer}/{j}"
            chi[inner] = 1 - len(oval.inside)
            edges.append((outer, inner, oval.sign, f"oval {inner}"))
            stack.extend((inner, k, child) for k, child in enumerate(oval.inside))
    for i, sign in enumerate(arr.components):
        edges.append((f"a{(i - 1) % n}", f"a{i}", sign, f"component {i}"))
    return chi, edges


def make_arrangement(
    class_st: Sequence[int] = (0, 0),
    components: Sequence[int] = (),
    annuli: Sequence[str] = ("0",),
    bidegree: Sequence[int] = (0, 0),
    base: str = "a0",
    curve_type: str = "unknown",
) -> TorusArrangement:
    forests = tuple(parse_ovals(a, signed=True) for a in annuli)
    s, t = class_st
    d, r = bidegree
    return TorusArrangement(int(s), int(t), tuple(int(c) for c in components), forests, int(d), int(r), base, curve_type)


def _schema() -> dict:
    return json.loads(resources.files("ovalsieve").joinpath("arrangement.schema.json").read_text(encoding="utf-8"))


def arrangement_from_json(data: dict) -> TorusArrangement:
    import jsonschema

    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise ArrangementError(f"arrangement file invalid at {where}: {exc.message}") from None
    annuli = data.get("annuli")
    if annuli is None:
        annuli = [data.get("ovals_notation", "0")]
    return make_arrangement(
        data.get("class", [0, 0]),
        data.get("components", []),
        annuli,
        data["bidegree"],
        data.get("base", "a0"),
        data.get("curve_type", "unknown"),
    )


def load_arrangement(path: str | Path) -> TorusArrangement:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ArrangementError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return arrangement_from_json(data)


# --------------------------------------------------------------------------
# index function and the Euler integral


@dataclass(frozen=True)
class IndexAssignment:
    ind: dict[str, int]
    l_prime: int


def index_function(arr: TorusArrangement) -> IndexAssignment:
    adj: dict[str, list[tuple[str, int, str]]] = {r: [] for r in arr.regions}
    for right, left, jump, label in arr.edges:
        adj[right].append((left, jump, label))
        adj[left].append((right, -jump, label))
    ind = {arr.base: 0}
    parent: dict[str, str | None] = {arr.base: None}
    queue = deque([arr.base])
    while queue:
        u = queue.popleft()
        for v, jump, label in adj[u]:
            want = (ind[u] + jump) % 4
            if v not in ind:
                ind[v] = want
                parent[v] = u
                queue.append(v)
            elif ind[v] != want:
                raise IndexInconsistent(f"index jumps inconsistently across {label}", _cycle(parent, u, v))
    return IndexAssignment(ind, arr.l_prime)


def _cycle(parent, u, v) -> list[str]:
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pv = path(u), path(v)
    common = set(pu) & set(pv)
    head = [x for x in pu if x not in common]
    tail = [x for x in pv if x not in common]
    meet = next(x for x in pu if x in common)
    return [meet] + list(reversed(head)) + tail + [meet]


def representative(value: int, symmetric: bool = False) -> int:
    """Integer representative of a Z/4 value: {0,1,2,3} by default, {-1,0,1,2} if ``symmetric``."""
    value %= 4
    return value - 4 if symmetric and value == 3 else value


def euler_integral(arr: TorusArrangement, ia: IndexAssignment | None = None, symmetric: bool = False) -> int:
    """``sum over regions of ind(R)^2 chi(R)``."""
    ia = ia or index_function(arr)
    return sum(representative(ia.ind[r], symmetric) ** 2 * chi for r, chi in arr.regions.items())


# --------------------------------------------------------------------------
# integral congruences


@dataclass(frozen=True)
class PropCheck:
    prop: str
    applicable: bool
    passed: bool | None
    residues: dict

    def to_json(self) -> dict:
        return {"prop": self.prop, "applicable": self.applicable, "passed": self.passed, "residues": self.residues}


def check_b4_b7(arr: TorusArrangement, ia: IndexAssignment | None = None, symmetric: bool = False) -> list[PropCheck]:
    ia = ia or index_function(arr)
    integral = euler_integral(arr, ia, symmetric)
    lp = ia.l_prime
    twist = arr.d * arr.s + arr.r * arr.t
    dr = arr.d * arr.r
    rules = [
        ("B4", lp % 4 == 0 and twist % 4 == 0, 0, 8),
        ("B5", lp % 8 == 4 and twist % 4 == 2, 4, 8),
        ("B6", lp % 8 == 0, 0, 8),
        ("B7", lp % 8 == 0 and twist % 4 == 0, 0, 16),
    ]
    out = []
    for name, hyp, shift, mod in rules:
        info = {"integral": integral, "l_prime": lp, "ds_plus_rt": twist, "modulus": mod}
        if hyp and dr % 2:
            info["note"] = "dr is odd"
            hyp = False
        if not hyp:
            out.append(PropCheck(name, False, None, info))
            continue
        target = (dr // 2 + shift) % mod
        info["required"] = target
        out.append(PropCheck(name, True, congruent(integral, target, mod), info))
    return out


def _two_coloring(arr: TorusArrangement) -> dict[str, int]:
    if arr.n % 2:
        raise NonBipartite(f"{arr.n} nonshrinking components: the complement is not two-colourable")
    color = {arr.base: 0}
    queue = deque([arr.base])
    adj: dict[str, list[str]] = {r: [] for r in arr.regions}
    for a, b, _, _ in arr.edges:
        adj[a].append(b)
        adj[b].append(a)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in color:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                raise NonBipartite(f"regions {u} and {v} are adjacent but equally coloured")
    return color


def torus_harnack(d: int, r: int) -> int:
    """``(d-1)(r-1) + 1``, the maximal number of components in bidegree (d, r)."""
    return (d - 1) * (r - 1) + 1


def check_b10(arr: TorusArrangement, labeling_choice: int | None = None) -> Verdict:
    """Even-bidegree congruences for ``chi(B+)``.

    ``labeling_choice`` picks which colour class is B+ (the class of the
    base region is 0); ``None`` checks both and passes if either does.
    """
    d, r, s, t = arr.d, arr.r, arr.s, arr.t
    if d % 2 or r % 2:
        raise OddBidegree(f"bidegree ({d},{r}) is not even")
    color = _two_coloring(arr)
    parity = (d // 2 * t + r // 2 * s + s + t) % 2
    if parity != 1:
        return combine([Reason("B10", Status.HYPOTHESIS_NOT_SATISFIED, {"parity": parity})])
    parts = [sum(chi for reg, chi in arr.regions.items() if color[reg] == c) for c in (0, 1)]
    choices = [parts[labeling_choice]] if labeling_choice is not None else parts
    m = torus_harnack(d, r)
    k = m - arr.l
    if k < 0:
        raise ExceedsHarnack(f"{arr.l} components exceed the bound {m} for bidegree ({d},{r})")
    half = d * r // 2
    info = {"parts": parts, "deficiency": k, "modulus": 8}
    reasons = []
    if k in (0, 1):
        allowed = {half % 8} if k == 0 else {(half + 1) % 8, (half - 1) % 8}
        hits = [x % 8 in allowed for x in choices]
        info.update(allowed=sorted(allowed), labelings_disagree=len(set(hits)) > 1)
        reasons.append(Reason("B10.a" if k == 0 else "B10.b", Status.NO_CONSTRAINT if any(hits) else Status.PROHIBITED, info))
    elif k == 2:
        trigger = (half + 4) % 8
        hits = [x % 8 == trigger for x in choices]
        info.update(trigger=trigger, labelings_disagree=len(set(hits)) > 1)
        if any(hits):
            status = Status.PROHIBITED if arr.curve_type == "II" else Status.TYPE_I_ONLY
        else:
            status = Status.NO_CONSTRAINT
        reasons.append(Reason("B10.c", status, info))
    if arr.curve_type == "I":
        hits = [x % 4 == 0 for x in choices]
        reasons.append(Reason("B10.d", Status.NO_CONSTRAINT if any(hits) else Status.PROHIBITED,
                              {"parts": parts, "modulus": 4, "allowed": [0], "labelings_disagree": len(set(hits)) > 1}))
    if not reasons:
        reasons.append(Reason("B10", Status.NO_CONSTRAINT, {"parts": parts, "deficiency": k}))
    return combine(reasons)


# --------------------------------------------------------------------------
# separation congruences on real surfaces


@dataclass(frozen=True)
class SeparationInput:
    chi_RB: int
    sigma_CB: int
    chi_part: int | None = None
    beta: int | None = None
    e_A: int | None = None
    connected: bool = False


def _quarter(value: int, name: str) -> int:
    if value % 4:
        raise DivisibilityViolated(f"{name} = {value} is not divisible by 4")
    return value // 4


def eval_separation(inp: SeparationInput, mode: str) -> Verdict:
    mode = mode.upper()
    chi, sigma = inp.chi_RB, inp.sigma_CB
    if mode == "B2":
        if not inp.connected:
            return combine([Reason("B2", Status.HYPOTHESIS_NOT_SATISFIED, {"connected": False})])
        ok = congruent(chi, sigma, 32)
        return combine([Reason("B2", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                               {"modulus": 32, "chi": chi, "sigma": sigma})])
    if mode == "B3":
        ok = congruent(chi, sigma, 8)
        return combine([Reason("B3", Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                               {"modulus": 8, "chi": chi, "sigma": sigma})])
    if mode not in ("B1", "B8"):
        raise InputError(f"unknown mode {mode!r}; expected B1, B2, B3 or B8")
    if inp.chi_part is None or inp.beta is None:
        raise InputError(f"{mode} needs chi_part and beta")
    target = _quarter(chi - sigma, "chi(RB) - sigma(CB)") + inp.beta
    if mode == "B8":
        if inp.e_A is None:
            raise InputError("B8 needs the normal Euler number e_A")
        target += _quarter(inp.e_A, "e_A")
    target %= 8
    ok = congruent(inp.chi_part, target, 8)
    return combine([Reason(mode, Status.NO_CONSTRAINT if ok else Status.PROHIBITED,
                           {"modulus": 8, "required": target, "chi_part": inp.chi_part})])


@dataclass(frozen=True)
class B11Input:
    m: tuple[int, ...]
    k: int
    d_rank: int
    chi_plus: int
    type_condition: bool = True
    b_plus_in_one_half: bool = True
    inj_zero: bool = True
    b_minus_contractible: bool | None = None
    type_I: bool = False
    b_plus_orientable: bool = False


def b11_constant(m: Sequence[int]) -> int:
    """``m_1 ... m_{s-1} m_s^2 / 4``."""
    if not m:
        raise InputError("need at least one degree")
    if m[-1] % 2:
        raise DivisibilityViolated(f"the last degree m_s = {m[-1]} must be even")
    return math.prod(m[:-1]) * m[-1] ** 2 // 4


def eval_b11(inp: B11Input) -> Verdict:
    F = b11_constant(inp.m)
    missing = [name for name in ("type_condition", "b_plus_in_one_half", "inj_zero") if not getattr(inp, name)]
    if inp.m[-1] % 4 == 2 and not inp.b_minus_contractible:
        missing.append("b_minus_contractible")
    if missing:
        return combine([Reason("B11", Status.HYPOTHESIS_NOT_SATISFIED, {"failed": missing})])
    j = inp.d_rank + inp.k
    x = inp.chi_plus
    reasons = []
    if j == 0:
        reasons.append(Reason("B11.a", Status.NO_CONSTRAINT if congruent(x, F, 8) else Status.PROHIBITED,
                              {"modulus": 8, "allowed": [F % 8], "chi_plus": x}))
    elif j == 1:
        allowed = sorted({(F + 1) % 8, (F - 1) % 8})
        reasons.append(Reason("B11.b", Status.NO_CONSTRAINT if x % 8 in allowed else Status.PROHIBITED,
                              {"modulus": 8, "allowed": allowed, "chi_plus": x}))
    elif j == 2:
        hit = congruent(x, F + 4, 8)
        reasons.append(Reason("B11.c", Status.TYPE_I_ONLY if hit else Status.NO_CONSTRAINT,
                              {"modulus": 8, "trigger": (F + 4) % 8, "chi_plus": x,
                               "implies_orientable_b_plus": hit}))
    if inp.type_I and inp.b_plus_orientable:
        reasons.append(Reason("B11.d", Status.NO_CONSTRAINT if congruent(x, F, 4) else Status.PROHIBITED,
                              {"modulus": 4, "allowed": [F % 4], "chi_plus": x}))
    if not reasons:
        reasons.append(Reason("B11", Status.NO_CONSTRAINT, {"j": j}))
    return combine(reasons)


def netsvetaev_b12(m: Sequence[int]) -> int:
    """Coefficient of the restricted hyperplane class in the Z/2 Netsvetaev class."""
    total = sum(x - 1 for x in m)
    if total % 2 == 0:
        raise NotSpin(f"sum of (m_j - 1) = {total} is even; the complexification is not spin")
    return (1 + total) // 2 % 2
