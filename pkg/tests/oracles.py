"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the package: each oracle recomputes its quantity from
first principles so that agreement is evidence, not tautology.
"""

from __future__ import annotations

from itertools import combinations, product


# -- trees ----------------------------------------------------------------


def adjacency(parent: list[int]) -> list[list[int]]:
    adj = [[] for _ in parent]
    for v, p in enumerate(parent):
        if p >= 0:
            adj[v].append(p)
            adj[p].append(v)
    return adj


def _rooted_key(adj, v, p):
    return tuple(sorted(_rooted_key(adj, u, v) for u in adj[v] if u != p))


def tree_key(parent: list[int]):
    """Isomorphism invariant of a free tree: the least rooted encoding over all roots."""
    adj = adjacency(parent)
    return min(_rooted_key(adj, r, -1) for r in range(len(parent)))


def brute_free_trees(edges: int) -> dict:
    """All free trees with ``edges`` edges, grown leaf by leaf and deduplicated by key."""
    level = {tree_key([-1]): [-1]}
    for _ in range(edges):
        nxt = {}
        for parent in level.values():
            for v in range(len(parent)):
                grown = parent + [v]
                nxt.setdefault(tree_key(grown), grown)
        level = nxt
    return level


def rooted_tree_counts(n: int) -> list[int]:
    """Rooted unlabeled trees on 0..n vertices via the Euler transform recurrence."""
    a = [0, 1] + [0] * max(0, n - 1)
    for m in range(2, n + 1):
        total = 0
        for k in range(1, m):
            s = sum(d * a[d] for d in range(1, k + 1) if k % d == 0)
            total += s * a[m - k]
        a[m] = total // (m - 1)
    return a[: n + 1]


def free_tree_count(vertices: int) -> int:
    """Otter's dissimilarity formula."""
    if vertices == 0:
        return 1
    a = rooted_tree_counts(vertices)
    pairs = sum(a[i] * a[vertices - i] for i in range(1, vertices))
    if vertices % 2 == 0:
        pairs -= a[vertices // 2]
    return a[vertices] - pairs // 2


def path(adj, u, v) -> list[int]:
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    out = [v]
    while out[-1] != u:
        out.append(prev[out[-1]])
    return out


def max_triple_separation(parent: list[int]) -> int:
    """Largest number of ovals separating some three regions, by checking every triple."""
    adj = adjacency(parent)
    n = len(parent)
    if n < 3:
        return 0
    best = 0
    for a, b, c in combinations(range(n), 3):
        edges = set()
        for x, y in ((a, b), (b, c), (a, c)):
            p = path(adj, x, y)
            edges.update(frozenset(e) for e in zip(p, p[1:]))
        best = max(best, len(edges))
    return best


def sphere_parts(parent: list[int]) -> tuple[int, int]:
    """(chi(B0), chi(B1)) by depth-parity colouring; for odd oval count B0 is the first colour class."""
    adj = adjacency(parent)
    depth = [0] * len(parent)
    for v in range(1, len(parent)):
        depth[v] = len(path(adj, 0, v)) - 1
    chi = [0, 0]
    for v in range(len(parent)):
        chi[depth[v] % 2] += 2 - len(adj[v])
    if chi[0] % 4 != 0 and chi[1] % 4 == 0:
        chi.reverse()
    return chi[0], chi[1]


# -- Z/4 forms -------------------------------------------------------------


def form_value(bilinear, q_basis, x) -> int:
    """q(sum x_i e_i) = sum x_i q(e_i) + 2 sum_{i<j} x_i x_j b(e_i, e_j) (mod 4)."""
    n = len(q_basis)
    v = sum(x[i] * q_basis[i] for i in range(n))
    v += 2 * sum(x[i] * x[j] * bilinear[i][j] for i in range(n) for j in range(i + 1, n))
    return v % 4


def brute_gauss(bilinear, q_basis) -> complex:
    n = len(q_basis)
    return sum(1j ** form_value(bilinear, q_basis, x) for x in product((0, 1), repeat=n))


def brute_brown(bilinear, q_basis) -> int | None:
    """Read beta off the phase of the Gauss sum, or None when the sum vanishes."""
    g = brute_gauss(bilinear, q_basis)
    g = complex(round(g.real), round(g.imag))
    if g == 0:
        return None
    root = complex(1, 1) / abs(complex(1, 1))
    for beta in range(8):
        w = g / (root ** beta)
        if abs(w.imag) < 1e-9 and w.real > 0:
            return beta
    raise AssertionError(f"Gauss sum {g} is not on an eighth-root ray")


def brute_radical_rank(bilinear) -> int:
    n = len(bilinear)
    count = 0
    for x in product((0, 1), repeat=n):
        if all(sum(x[i] * bilinear[i][j] for i in range(n)) % 2 == 0 for j in range(n)):
            count += 1
    return count.bit_length() - 1



def parents_from_edges(n: int, edges) -> list[int]:
    """Parent list of the tree on ``n`` vertices with the given edges, rooted at 0."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = [-1] * n
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                stack.append(u)
    return parent
