"""Enumeration of sphere schemes and structural admissibility filters.

Free trees on ``l + 1`` vertices are generated as level sequences with
the Wright-Richmond-Odlyzko-McKay successor rule, which visits each
isomorphism class exactly once.  Each tree is then rendered in canonical
notation and the stream is emitted in sorted canonical order.
"""

from __future__ import annotations

import bisect
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import CapExceeded, InputError
from .scheme import SphereScheme, depth, nest_count, parse_scheme, render_canonical

DEFAULT_CAP = 20


def harnack_bound(d: int) -> int:
    """Maximal number of ovals of a curve of bidegree (d, d) on an ellipsoid."""
    if d < 1:
        raise InputError(f"bidegree must be positive, got {d}")
    return (d - 1) ** 2 + 1


# --------------------------------------------------------------------------
# level sequences


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Beyer-Hedetniemi successor of a rooted level sequence."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Left subtree of the root, and the tree with that subtree removed."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _next_free(seq: list[int]) -> list[int] | None:
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    valid = rh >= lh
    if valid and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            valid = False
    if valid:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is not None and seq[p] > 2:
        new_left, _ = _split(nxt)
        suffix = list(range(1, max(new_left) + 2))
        nxt[-len(suffix):] = suffix
    return nxt


def free_level_sequences(n: int) -> Iterator[list[int]]:
    """One level sequence per free tree on ``n`` vertices (centre-rooted)."""
    if n <= 0:
        return
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        if seq is not None:
            yield seq
            seq = _next_rooted(seq)


def level_to_parents(seq: list[int]) -> list[int]:
    parent = [-1] * len(seq)
    last = {}
    for i, lev in enumerate(seq):
        if lev:
            parent[i] = last[lev - 1]
        last[lev] = i
    return parent


# --------------------------------------------------------------------------
# enumeration


def _check_cap(l: int, cap: int):
    if l < 0:
        raise InputError(f"oval count must be non-negative, got {l}")
    if l > cap:
        raise CapExceeded(f"enumeration of l={l} exceeds the configured cap of {cap}")


def canonical_strings(l: int, cap: int = DEFAULT_CAP, cache_dir: str | os.PathLike | None = None) -> list[str]:
    """Sorted canonical notations of all sphere schemes with ``l`` ovals.

    With ``cache_dir`` the list is read from / written to ``schemes-l{l}.txt``
    (one string per line, sorted).
    """
    _check_cap(l, cap)
    path = Path(cache_dir) / f"schemes-l{l}.txt" if cache_dir is not None else None
    if path is not None and path.exists():
        return path.read_text(encoding="utf-8").split()
    out = sorted(
        render_canonical(SphereScheme.from_parents(level_to_parents(seq)))
        for seq in free_level_sequences(l + 1)
    )
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text("".join(x + "\n" for x in out), encoding="utf-8")
        tmp.replace(path)
    return out


def enumerate_schemes(
    l: int,
    cap: int = DEFAULT_CAP,
    start_after: str | None = None,
    cache_dir: str | os.PathLike | None = None,
) -> Iterator[SphereScheme]:
    """Stream one canonical scheme per isomorphism class, in canonical-string order.

    ``start_after`` resumes the stream after the given canonical string.
    """
    names = canonical_strings(l, cap, cache_dir)
    start = bisect.bisect_right(names, start_after) if start_after is not None else 0
    for name in names[start:]:
        yield parse_scheme(name)


# --------------------------------------------------------------------------
# filters


def _farthest(adj, sources) -> tuple[list[int], int]:
    dist = [-1] * len(adj)
    queue = list(sources)
    for v in queue:
        dist[v] = 0
    for v in queue:
        for nb, _ in adj[v]:
            if dist[nb] < 0:
                dist[nb] = dist[v] + 1
                queue.append(nb)
    far = max(range(len(adj)), key=dist.__getitem__)
    return dist, far


def bezout_triple(s: SphereScheme) -> tuple[int, tuple[int, ...]]:
    """Largest number of ovals separating three regions, with a witness triple.

    The ovals separating a triple are exactly the edges of the subtree
    spanned by it.  The largest such subtree extends a diameter by the
    region farthest from it.
    """
    n = s.n_regions
    if n < 3:
        return 0, ()
    adj = s.adjacency
    _, a = _farthest(adj, [0])
    dist_a, b = _farthest(adj, [a])
    path = [b]
    while path[-1] != a:
        v = path[-1]
        path.append(next(nb for nb, _ in adj[v] if dist_a[nb] == dist_a[v] - 1))
    dist_path, c = _farthest(adj, path)
    if c in path:
        c = next(v for v in range(n) if v not in (a, b))
    return dist_a[b] + dist_path[c], tuple(sorted((a, b, c)))


def bezout_triple_bound(s: SphereScheme) -> int:
    return bezout_triple(s)[0]


@dataclass(frozen=True)
class FilterConfig:
    d: int
    use_harnack: bool = True
    use_bezout_triple: bool = True
    max_depth: int | None = None
    max_nests: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise InputError(f"d must be >= 1, got {self.d}")
        for name in ("max_depth", "max_nests"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise InputError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class FilterReport:
    scheme: SphereScheme
    failures: tuple[tuple[str, object], ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures


def apply_filters(s: SphereScheme, cfg: FilterConfig) -> FilterReport:
    failures = []
    if cfg.use_harnack and s.l > harnack_bound(cfg.d):
        failures.append(("harnack", {"l": s.l, "bound": harnack_bound(cfg.d)}))
    if cfg.use_bezout_triple:
        count, triple = bezout_triple(s)
        if count > cfg.d:
            failures.append(("bezout", {"separating_ovals": count, "regions": list(triple), "d": cfg.d}))
    if cfg.max_depth is not None:
        dep = depth(s)
        if dep > cfg.max_depth:
            failures.append(("depth", {"depth": dep, "max": cfg.max_depth}))
    if cfg.max_nests is not None:
        nests = nest_count(s)
        if nests > cfg.max_nests:
            failures.append(("nests", {"nests": nests, "max": cfg.max_nests}))
    return FilterReport(s, tuple(failures))
