"""Real schemes on the sphere and on the projective plane.

A scheme on the sphere is a free tree: vertices are the complementary
regions, edges are the ovals.  The notation is the usual nested one with
ASCII substitutes::

    scheme := term ("+" term)*
    term   := INT | INT "<" scheme ">" | "<" scheme ">"

``"+"`` stands for the disjoint union, ``INT<S>`` for INT ovals each
enclosing a copy of ``S`` and ``"0"`` for the empty curve.  The unicode
forms ``⊔``, ``⟨`` and ``⟩`` are accepted on input.  A bare ``<S>`` is the
same as ``S`` (so ``<10>`` reads as ten empty ovals).

Oriented notation (used for complex orientations and torus arrangements)
allows a sign suffix after the count: ``1^+<2^->``.  Unsigned terms are
positive.  A positive oval is oriented as the boundary of the disk it
encloses (the "inner" side in the notation), with the ambient surface
orientation fixed once and for all.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    InvalidScheme,
    InvariantBreach,
    MissingOrientation,
    OddOvalCount,
    SchemeSyntaxError,
    SchemeTooLarge,
)

MAX_OVALS = 100_000
MAX_NESTING = 200

_UNICODE = str.maketrans({"⊔": "+", "⟨": "<", "⟩": ">", "〈": "<", "〉": ">"})


class Oval(NamedTuple):
    """One oval of a parsed notation, with the ovals it encloses."""

    sign: int
    inside: tuple


# --------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, signed: bool):
        self.src = text
        self.text = text.translate(_UNICODE)
        self.pos = 0
        self.signed = signed
        self.depth = 0
        self.spaces = any(c.isspace() for c in self.text)

    def fail(self, message: str):
        raise SchemeSyntaxError(message, self.src, self.pos)

    def skip(self):
        if not self.spaces:
            return
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek()
            self.fail(f"expected {ch!r}, found {found!r}" if found else f"expected {ch!r}, found end of input")
        self.pos += 1

    def parse(self) -> tuple:
        ovals, _ = self.scheme()
        if self.peek():
            self.fail(f"unexpected character {self.peek()!r}")
        return tuple(ovals)

    def scheme(self) -> tuple[list, int]:
        out, size = self.term()
        while self.peek() == "+":
            self.pos += 1
            more, extra = self.term()
            out.extend(more)
            size += extra
            if size > MAX_OVALS:
                raise SchemeTooLarge(f"scheme has more than {MAX_OVALS} ovals")
        return out, size

    def nested(self) -> tuple[list, int]:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise SchemeTooLarge(f"nesting deeper than {MAX_NESTING}")
        self.pos += 1  # consume "<"
        inner = self.scheme()
        self.expect(">")
        self.depth -= 1
        return inner

    def term(self) -> tuple[list, int]:
        c = self.peek()
        if c == "<":
            return self.nested()
        if not c.isdigit():
            self.fail(f"expected integer or '<', found {c!r}" if c else "expected integer or '<', found end of input")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if len(digits) > 9 or int(digits) > MAX_OVALS:
            raise SchemeTooLarge(f"integer {digits} at position {start} exceeds the cap of {MAX_OVALS} ovals")
        n = int(digits)
        sign = 1
        if self.peek() == "^":
            if not self.signed:
                self.fail("orientation suffix not allowed here")
            self.pos += 1
            s = self.peek()
            if not s or s not in "+-":
                self.fail("expected '+' or '-' after '^'")
            sign = 1 if s == "+" else -1
            self.pos += 1
        elif self.signed and n:
            self.fail("every oval needs an orientation suffix ^+ or ^-")
        inside: tuple = ()
        inner_size = 0
        if self.peek() == "<":
            inner, inner_size = self.nested()
            inside = tuple(inner)
        size = n * (1 + inner_size)
        if size > MAX_OVALS:
            raise SchemeTooLarge(f"scheme has more than {MAX_OVALS} ovals")
        return [Oval(sign, inside)] * n, size


def parse_ovals(text: str, signed: bool = False) -> tuple:
    """Parse notation into a tuple of top-level :class:`Oval` nodes."""
    return _Parser(text, signed).parse()


def _flatten(ovals: tuple):
    """Preorder numbering: region 0 is the root, oval ``i`` bounds region ``i + 1``."""
    parent = [-1]
    signs = []
    stack = [(o, 0) for o in reversed(ovals)]
    while stack:
        oval, outer = stack.pop()
        region = len(parent)
        parent.append(outer)
        signs.append(oval.sign)
        stack.extend((child, region) for child in reversed(oval.inside))
    return parent, signs


# --------------------------------------------------------------------------
# sphere schemes


@dataclass(frozen=True)
class SphereScheme:
    """Free tree of regions; ``ovals[i] = (inner, outer)`` region ids.

    The inner/outer distinction only fixes the reference orientation of
    each oval; it carries no topological meaning on the sphere.
    """

    n_regions: int
    ovals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_regions != len(self.ovals) + 1:
            raise InvalidScheme(f"{len(self.ovals)} ovals need {len(self.ovals) + 1} regions, got {self.n_regions}")
        root = list(range(self.n_regions))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        for a, b in self.ovals:
            if not (0 <= a < self.n_regions and 0 <= b < self.n_regions):
                raise InvalidScheme(f"oval ({a}, {b}) refers to a missing region")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise InvalidScheme(f"oval ({a}, {b}) closes a cycle; regions must form a tree")
            root[ra] = rb

    @classmethod
    def from_parents(cls, parent) -> "SphereScheme":
        return cls(len(parent), tuple((r, parent[r]) for r in range(1, len(parent))))

    @property
    def l(self) -> int:
        return len(self.ovals)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[r]`` lists ``(neighbour, oval)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_regions)]
        for i, (a, b) in enumerate(self.ovals):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return tuple(tuple(x) for x in adj)

    def degree(self, region: int) -> int:
        return len(self.adjacency[region])

    def region_chi(self, region: int) -> int:
        return 2 - self.degree(region)

    def side(self, oval: int, inner: bool = True) -> frozenset[int]:
        """Regions on one side of an oval (the disk containing its inner region by default)."""
        a, b = self.ovals[oval]
        start = a if inner else b
        seen = {start}
        queue = deque([start])
        while queue:
            r = queue.popleft()
            for nb, o in self.adjacency[r]:
                if o != oval and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return frozenset(seen)

    def __str__(self) -> str:
        return render_canonical(self)


def parse_scheme(text: str) -> SphereScheme:
    """Parse notation into a sphere scheme rooted at an auxiliary outer region (then forgotten)."""
    parent, _ = _flatten(parse_ovals(text))
    return SphereScheme.from_parents(parent)


def _bfs(adj, root: int):
    order = [root]
    parent = {root: -1}
    for v in order:
        for nb, _ in adj[v]:
            if nb not in parent:
                parent[nb] = v
                order.append(nb)
    return order, parent


def render_rooted(s: SphereScheme, root: int) -> tuple[int, str]:
    """Render ``s`` with ``root`` as the outer region; returns ``(height, notation)``.

    Children are sorted so the string is a complete invariant of the rooted tree.
    """
    adj = s.adjacency
    order, parent = _bfs(adj, root)
    text: dict[int, str] = {}
    height: dict[int, int] = {}
    for v in reversed(order):
        empty = 0
        nests = []
        h = 0
        for nb, _ in adj[v]:
            if nb == parent[v]:
                continue
            h = max(h, height[nb] + 1)
            if text[nb] == "0":
                empty += 1
            else:
                nests.append("1<" + text[nb] + ">")
        nests.sort()
        if empty:
            nests.insert(0, str(empty))
        text[v] = "+".join(nests) if nests else "0"
        height[v] = h
    return height[root], text[root]


def centers(s: SphereScheme) -> list[int]:
    """The one or two regions of minimal eccentricity."""
    n = s.n_regions
    if n <= 2:
        return list(range(n))
    deg = [s.degree(r) for r in range(n)]
    layer = [r for r in range(n) if deg[r] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for nb, _ in s.adjacency[v]:
                deg[nb] -= 1
                if deg[nb] == 1:
                    nxt.append(nb)
        layer = nxt
    return sorted(layer)


def canonical_root(s: SphereScheme) -> int:
    best = min((render_rooted(s, c), c) for c in centers(s))
    return best[1]


def render_canonical(s: SphereScheme) -> str:
    """Canonical notation: the rooting minimising ``(height, string)``.

    Only centres can reach minimal height, so only they are rendered.
    Two schemes are isomorphic iff their canonical strings agree.
    """
    return min(render_rooted(s, c) for c in centers(s))[1]


def depth(s: SphereScheme) -> int:
    """Smallest possible maximal nesting depth over all choices of outer region (the tree radius)."""
    return min(render_rooted(s, c)[0] for c in centers(s))


def nest_count(s: SphereScheme) -> int:
    """Number of ovals with other ovals on both sides."""
    return sum(1 for a, b in s.ovals if s.degree(a) > 1 and s.degree(b) > 1)


# --------------------------------------------------------------------------
# the two halves B0 / B1


@dataclass(frozen=True)
class PartLabeling:
    color: tuple[int, ...]
    region_chi: tuple[int, ...]
    b0_color: int
    ambiguous: bool

    def part_chi(self, c: int) -> int:
        return sum(x for x, col in zip(self.region_chi, self.color) if col == c)

    @property
    def chi0(self) -> int:
        return self.part_chi(self.b0_color)

    @property
    def chi1(self) -> int:
        return self.part_chi(1 - self.b0_color)

    def regions(self, part: int) -> list[int]:
        """Regions of B0 (``part=0``) or B1 (``part=1``)."""
        c = self.b0_color if part == 0 else 1 - self.b0_color
        return [r for r, col in enumerate(self.color) if col == c]

    @property
    def components0(self) -> list[int]:
        return [self.region_chi[r] for r in self.regions(0)]

    @property
    def components1(self) -> list[int]:
        return [self.region_chi[r] for r in self.regions(1)]

    def in_b0(self, region: int) -> bool:
        return self.color[region] == self.b0_color

    def swapped(self) -> "PartLabeling":
        return PartLabeling(self.color, self.region_chi, 1 - self.b0_color, self.ambiguous)


def euler_parts(s: SphereScheme) -> PartLabeling:
    """Two-colour the regions and pick B0.

    For an even number of ovals B0 is the half with Euler characteristic
    divisible by 4.  For an odd number the choice is free; the returned
    labeling is marked ``ambiguous`` and :func:`labelings` gives both.
    """
    order, parent = _bfs(s.adjacency, 0)
    color = [0] * s.n_regions
    for v in order[1:]:
        color[v] = 1 - color[parent[v]]
    chi = tuple(s.region_chi(r) for r in range(s.n_regions))
    lab = PartLabeling(tuple(color), chi, 0, s.l % 2 == 1)
    if lab.chi0 + lab.chi1 != 2:
        raise InvariantBreach(f"part characteristics {lab.chi0}, {lab.chi1} do not sum to 2")
    if s.l % 2 == 0:
        good = [c for c in (0, 1) if lab.part_chi(c) % 4 == 0]
        if len(good) != 1:
            raise InvariantBreach(f"expected exactly one half with chi = 0 mod 4, got {good}")
        lab = PartLabeling(lab.color, chi, good[0], False)
    return lab


def labelings(s: SphereScheme) -> list[PartLabeling]:
    lab = euler_parts(s)
    return [lab, lab.swapped()] if lab.ambiguous else [lab]


def x_sides(s: SphereScheme, oval: int, labeling: PartLabeling | None = None) -> tuple[int, int]:
    """``chi(B1 ∩ D) mod 2`` for the disk on each side of ``oval``."""
    lab = labeling or euler_parts(s)
    inner = s.side(oval)
    b1 = set(lab.regions(1))
    x_in = sum(lab.region_chi[r] for r in inner if r in b1) % 2
    x_out = sum(lab.region_chi[r] for r in range(s.n_regions) if r not in inner and r in b1) % 2
    return x_in, x_out


def x_of_oval(s: SphereScheme, oval: int, labeling: PartLabeling | None = None) -> int:
    if s.l % 2:
        raise OddOvalCount(f"x(C) is undefined for an odd number of ovals (l={s.l})")
    x_in, x_out = x_sides(s, oval, labeling)
    if x_in != x_out:
        raise InvariantBreach(f"x differs on the two sides of oval {oval}: {x_in} vs {x_out}")
    return x_in


# --------------------------------------------------------------------------
# orientations


@dataclass(frozen=True)
class OrientedScheme:
    """A scheme with a candidate complex orientation, one sign per oval."""

    base: SphereScheme
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != self.base.l or any(x not in (1, -1) for x in self.signs):
            raise InvalidScheme("need one sign in {+1, -1} per oval")

    def reversed(self) -> "OrientedScheme":
        return OrientedScheme(self.base, tuple(-x for x in self.signs))


def parse_oriented_scheme(text: str) -> OrientedScheme:
    parent, signs = _flatten(parse_ovals(text, signed=True))
    return OrientedScheme(SphereScheme.from_parents(parent), tuple(signs))


def induced_sign(s: SphereScheme, oval: int, region: int, region_sign: int) -> int:
    """Sign of the boundary orientation induced on ``oval`` by ``region`` oriented with ``region_sign``."""
    inner, outer = s.ovals[oval]
    if region == inner:
        return region_sign
    if region == outer:
        return -region_sign
    raise InvalidScheme(f"region {region} is not adjacent to oval {oval}")


def boundary_orientation(s: SphereScheme, region_signs: Mapping[int, int]) -> tuple[int, ...]:
    """Orient every oval as the boundary of its neighbour listed in ``region_signs``."""
    signs = []
    for i, (a, b) in enumerate(s.ovals):
        r = a if a in region_signs else b
        if r not in region_signs:
            raise MissingOrientation(f"oval {i} has no oriented neighbour")
        signs.append(induced_sign(s, i, r, region_signs[r]))
    return tuple(signs)


def disorienting_set(
    o: OrientedScheme,
    b0_orient: Mapping[int, int],
    labeling: PartLabeling | None = None,
) -> frozenset[int]:
    """Ovals whose assigned orientation disagrees with the one induced from their B0 side."""
    s = o.base
    if labeling is None:
        if s.l % 2:
            raise OddOvalCount("B0 is not fixed for an odd number of ovals; pass a labeling")
        labeling = euler_parts(s)
    out = set()
    for i, (a, b) in enumerate(s.ovals):
        r = a if labeling.in_b0(a) else b
        if r not in b0_orient:
            raise MissingOrientation(f"no orientation sign for B0 component (region {r})")
        if o.signs[i] != induced_sign(s, i, r, b0_orient[r]):
            out.add(i)
    return frozenset(out)


# --------------------------------------------------------------------------
# plane schemes


@dataclass(frozen=True)
class PlaneScheme:
    """Rooted forest of ovals in RP^2; region 0 is the non-orientable outer region."""

    parent: tuple[int, ...]

    @property
    def l(self) -> int:
        return len(self.parent) - 1

    @cached_property
    def children(self) -> tuple[int, ...]:
        count = [0] * len(self.parent)
        for p in self.parent[1:]:
            count[p] += 1
        return tuple(count)

    @cached_property
    def depth_of(self) -> tuple[int, ...]:
        d = [0] * len(self.parent)
        for r in range(1, len(self.parent)):
            d[r] = d[self.parent[r]] + 1  # preorder: parents come first
        return tuple(d)

    def region_chi(self, region: int) -> int:
        return 1 - self.children[region]


@dataclass(frozen=True)
class PlanePart:
    chi: int
    orientable: bool
    regions: tuple[int, ...]


def parse_plane_scheme(text: str) -> PlaneScheme:
    parent, _ = _flatten(parse_ovals(text))
    return PlaneScheme(tuple(parent))


def plane_euler_parts(p: PlaneScheme) -> tuple[PlanePart, PlanePart]:
    """The two halves of RP^2 cut by the curve: ``(non-orientable, orientable)``."""
    parts = []
    for parity in (0, 1):
        regions = tuple(r for r in range(len(p.parent)) if p.depth_of[r] % 2 == parity)
        parts.append(PlanePart(sum(p.region_chi(r) for r in regions), parity == 1, regions))
    if parts[0].chi + parts[1].chi != 1:
        raise InvariantBreach("plane parts do not sum to chi(RP^2) = 1")
    return parts[0], parts[1]


def render_plane(p: PlaneScheme) -> str:
    s = SphereScheme.from_parents(p.parent)
    return render_rooted(s, 0)[1]


def iter_reroots(s: SphereScheme) -> Iterable[str]:
    """Notation of ``s`` read from every region as the outer one."""
    for r in range(s.n_regions):
        yield render_rooted(s, r)[1]
