"""Z/4-valued quadratic forms on finite Z/2 vector spaces.

A form is stored by its symmetric Z/2 bilinear matrix and its values on
the basis vectors; the value on any vector follows from

    q(x + y) = q(x) + q(y) + 2 (x . y)   (mod 4).

Vectors are tuples of bits or, internally, integers whose bit ``i`` is the
``i``-th coordinate.  The Brown invariant is read off the Gauss sum
``sum_x i^q(x)`` with exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DegenerateForm,
    DimensionMismatch,
    FormError,
    InconsistentInduced,
    NotEven,
    NotIsotropic,
)

MAX_DIM = 24
# below this size the pure-Python value table beats numpy's call overhead
_SMALL = 10


@dataclass(frozen=True)
class Z4Form:
    n: int
    bilinear: tuple[tuple[int, ...], ...]
    q_basis: tuple[int, ...]

    def __post_init__(self):
        b = self.bilinear
        if len(b) != self.n or any(len(row) != self.n for row in b) or len(self.q_basis) != self.n:
            raise DimensionMismatch(f"form of dimension {self.n} needs an {self.n}x{self.n} matrix and {self.n} values")
        for i in range(self.n):
            for j in range(self.n):
                if b[i][j] not in (0, 1):
                    raise FormError(f"bilinear entry ({i},{j}) = {b[i][j]} is not a bit")
                if b[i][j] != b[j][i]:
                    raise FormError(f"bilinear matrix is not symmetric at ({i},{j})")
            if self.q_basis[i] not in (0, 1, 2, 3):
                raise FormError(f"q value {self.q_basis[i]} not in Z/4")
            if self.q_basis[i] % 2 != b[i][i]:
                raise FormError(f"q(e{i}) = {self.q_basis[i]} does not reduce to e{i}.e{i} = {b[i][i]} mod 2")

    @classmethod
    def make(cls, bilinear: Sequence[Sequence[int]], q_basis: Sequence[int]) -> "Z4Form":
        return cls(len(q_basis), tuple(tuple(int(x) for x in row) for row in bilinear), tuple(int(x) % 4 for x in q_basis))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "Z4Form":
        values = [v % 4 for v in values]
        n = len(values)
        return cls.make([[values[i] % 2 if i == j else 0 for j in range(n)] for i in range(n)], values)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Row ``i`` of the bilinear matrix as a bit mask."""
        return tuple(sum(bit << j for j, bit in enumerate(row)) for row in self.bilinear)

    def dot(self, x: int, y: int) -> int:
        m = self.masks
        acc = 0
        i = 0
        while x:
            if x & 1:
                acc ^= m[i] & y
            x >>= 1
            i += 1
        return acc.bit_count() & 1

    def value(self, x: int) -> int:
        m = self.masks
        total = 0
        for i in range(self.n):
            if x >> i & 1:
                total += self.q_basis[i] + 2 * ((m[i] & x & ((1 << i) - 1)).bit_count())
        return total % 4

    def negate(self) -> "Z4Form":
        return Z4Form(self.n, self.bilinear, tuple((-v) % 4 for v in self.q_basis))

    def radical(self) -> list[int]:
        """Basis of the radical of the bilinear form, as bit masks."""
        return nullspace(list(self.masks), self.n)

    def is_nondegenerate(self) -> bool:
        return not self.radical()


def _to_mask(x: Sequence[int] | int, n: int) -> int:
    if isinstance(x, int):
        if x < 0 or x >> n:
            raise DimensionMismatch(f"vector {x} does not fit dimension {n}")
        return x
    if len(x) != n:
        raise DimensionMismatch(f"vector of length {len(x)} for a form of dimension {n}")
    return sum((int(b) & 1) << i for i, b in enumerate(x))


def _to_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple(x >> i & 1 for i in range(n))


def evaluate(f: Z4Form, x: Sequence[int] | int) -> int:
    return f.value(_to_mask(x, f.n))


def value_table(f: Z4Form) -> Sequence[int]:
    """``q(x)`` for every ``x`` in ``0 .. 2^n - 1``, built one coordinate at a time."""
    if f.n > MAX_DIM:
        raise CapExceeded(f"exhaustive evaluation is capped at dimension {MAX_DIM}, got {f.n}")
    masks = f.masks
    if f.n <= _SMALL:
        vals = [0]
        for m in range(f.n):
            low = masks[m] & ((1 << m) - 1)
            qm = f.q_basis[m]
            if low:
                flip = qm + 2
                vals += [(v + (flip if (x & low).bit_count() & 1 else qm)) & 3 for x, v in enumerate(vals)]
            else:
                vals += [(v + qm) & 3 for v in vals]
        return vals
    vals = np.zeros(1, dtype=np.uint8)
    for m in range(f.n):
        low = masks[m] & ((1 << m) - 1)
        idx = np.arange(len(vals), dtype=np.uint32)
        par = np.bitwise_count(idx & np.uint32(low)).astype(np.uint8) & 1
        vals = np.concatenate([vals, (vals + f.q_basis[m] + 2 * par) % 4])
    return vals


def gauss_sum(f: Z4Form) -> tuple[int, int]:
    """``(a, b)`` with ``a + b i = sum_x i^q(x)``."""
    vals = value_table(f)
    if isinstance(vals, np.ndarray):
        c = np.bincount(vals, minlength=4)
        counts = [int(x) for x in c]
    else:
        counts = [0, 0, 0, 0]
        for v in vals:
            counts[v] += 1
    return counts[0] - counts[2], counts[1] - counts[3]


_OCTANT = {(1, 0): 0, (1, 1): 1, (0, 1): 2, (-1, 1): 3, (-1, 0): 4, (-1, -1): 5, (0, -1): 6, (1, -1): 7}


def brown_from_gauss(a: int, b: int, n: int) -> int | None:
    """Phase in eighths of a turn, or ``None`` unless ``|a + b i| = 2^(n/2)``."""
    if n % 2 == 0:
        r = 1 << (n // 2)
        on_axis, diag = (a, b), None
    else:
        r = 1 << ((n - 1) // 2)
        on_axis, diag = None, (a, b)
    pair = on_axis or diag
    if any(v not in (0, r, -r) for v in pair) or pair == (0, 0):
        return None
    unit = (pair[0] // r, pair[1] // r)
    if (diag is not None) != (unit[0] != 0 and unit[1] != 0):
        return None
    return _OCTANT[unit]


def brown_invariant(f: Z4Form) -> int | None:
    """Brown invariant mod 8, or ``None`` for a degenerate form."""
    a, b = gauss_sum(f)
    return brown_from_gauss(a, b, f.n)


def direct_sum(f: Z4Form, g: Z4Form) -> Z4Form:
    n = f.n + g.n
    rows = [tuple(row) + (0,) * g.n for row in f.bilinear]
    rows += [(0,) * f.n + tuple(row) for row in g.bilinear]
    return Z4Form(n, tuple(rows), f.q_basis + g.q_basis)


# --------------------------------------------------------------------------
# linear algebra over Z/2 on bit masks


def row_reduce(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span, pivots on the lowest set bit, sorted by pivot."""
    basis: dict[int, int] = {}
    for v in vectors:
        for p, b in basis.items():
            if v >> p & 1:
                v ^= b
        if v:
            p = (v & -v).bit_length() - 1
            for q in list(basis):
                if basis[q] >> p & 1:
                    basis[q] ^= v
            basis[p] = v
    return [basis[p] for p in sorted(basis)]


def nullspace(rows: list[int], n: int) -> list[int]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    red = row_reduce(rows)
    pivots = {(r & -r).bit_length() - 1: r for r in red}
    free = [j for j in range(n) if j not in pivots]
    out = []
    for j in free:
        x = 1 << j
        for p, r in pivots.items():
            if r >> j & 1:
                x |= 1 << p
        out.append(x)
    return out


def _span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def isotropic_reduce(f: Z4Form, subspace: Iterable[Sequence[int] | int]) -> Z4Form:
    """The form induced on ``L^perp / L`` for a totally isotropic ``L`` with ``q|_L = 0``.

    The quotient basis is the reduced echelon basis of ``L^perp`` with the
    vectors whose pivots are taken by ``L`` removed, after reducing
    modulo ``L``.
    """
    lbasis = row_reduce(_to_mask(v, f.n) for v in subspace)
    for i, u in enumerate(lbasis):
        if f.value(u):
            raise NotIsotropic("q does not vanish on the subspace", _to_bits(u, f.n))
        for w in lbasis[i:]:
            if f.dot(u, w):
                raise NotIsotropic("subspace is not isotropic for the bilinear form", _to_bits(u ^ w if u != w else u, f.n))
    masks = f.masks
    perp_rows = [sum(((masks[i] & u).bit_count() & 1) << i for i in range(f.n)) for u in lbasis]
    perp = nullspace(perp_rows, f.n)
    lpivots = {(u & -u).bit_length() - 1: u for u in lbasis}
    reps = []
    for v in row_reduce(perp):
        for p, u in lpivots.items():
            if v >> p & 1:
                v ^= u
        if v:
            reps.append(v)
    reps = [v for v in row_reduce(reps)]
    for v in reps:
        for u in lbasis:
            if f.value(v ^ u) != f.value(v):
                raise InconsistentInduced(f"q is not constant on the coset {_to_bits(v, f.n)} + L")
    m = len(reps)
    bil = tuple(tuple(f.dot(reps[i], reps[j]) for j in range(m)) for i in range(m))
    return Z4Form(m, bil, tuple(f.value(v) for v in reps))


def isotropic_vectors(f: Z4Form) -> list[int]:
    return [x for x, v in enumerate(value_table(f)) if x and v == 0]


def maximal_isotropic_subspaces(f: Z4Form) -> Iterator[list[int]]:
    """Every maximal subspace on which q vanishes (each yielded once, as an echelon basis)."""
    iso = isotropic_vectors(f)
    seen = set()

    def grow(basis: list[int], span: set[int]):
        extended = False
        for v in iso:
            if v in span or any(f.dot(v, u) for u in basis):
                continue
            extended = True
            nb = row_reduce(basis + [v])
            key = tuple(nb)
            if key in seen:
                continue
            seen.add(key)
            yield from grow(nb, set(_span(nb)))
        if not extended:
            yield basis

    seen.add(())
    yield from grow([], {0})


# --------------------------------------------------------------------------
# even forms


def is_even(f: Z4Form) -> bool:
    """All values lie in {0, 2} (equivalently every basis value is even)."""
    return all(v % 2 == 0 for v in f.q_basis)


def arf_of_even(f: Z4Form) -> int:
    """Arf invariant of ``q / 2`` for an even nondegenerate form: the majority value."""
    if not is_even(f):
        raise NotEven("form takes odd values")
    if not f.is_nondegenerate():
        raise DegenerateForm("Arf invariant needs a nondegenerate form")
    vals = value_table(f)
    twos = sum(1 for v in vals if v == 2)
    return int(twos > len(vals) // 2)


# --------------------------------------------------------------------------
# named forms and enumeration


def plus_one() -> Z4Form:
    return Z4Form.diagonal([1])


def minus_one() -> Z4Form:
    return Z4Form.diagonal([3])


def hyperbolic() -> Z4Form:
    return Z4Form.make([[0, 1], [1, 0]], [0, 0])


def even_anisotropic() -> Z4Form:
    return Z4Form.make([[0, 1], [1, 0]], [2, 2])


def all_forms(n: int) -> Iterator[Z4Form]:
    """Every form of dimension ``n`` (symmetric matrix and lifts of its diagonal)."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in itertools.product((0, 1), repeat=len(cells)):
        b = [[0] * n for _ in range(n)]
        for (i, j), x in zip(cells, bits):
            b[i][j] = b[j][i] = x
        for lifts in itertools.product((0, 2), repeat=n):
            yield Z4Form.make(b, [b[i][i] + lifts[i] for i in range(n)])


def change_basis(f: Z4Form, columns: Sequence[int]) -> Z4Form:
    """The same form in the basis ``columns`` (bit masks; must be invertible)."""
    if len(row_reduce(columns)) != f.n:
        raise FormError("basis change is not invertible")
    n = f.n
    bil = tuple(tuple(f.dot(columns[i], columns[j]) for j in range(n)) for i in range(n))
    return Z4Form(n, bil, tuple(f.value(c) for c in columns))


# --------------------------------------------------------------------------
# text format


def parse_form(text: str) -> Z4Form:
    """``dim n`` / n rows of bits / ``q: v1 ... vn``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("dim"):
        raise FormError("line 1: expected 'dim n'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormError("line 1: expected 'dim n'") from None
    if n < 0:
        raise FormError("line 1: dimension must be non-negative")
    if len(lines) != n + 2:
        raise FormError(f"expected {n} matrix rows and a 'q:' line, got {len(lines) - 1} lines")
    rows = []
    for k, ln in enumerate(lines[1:n + 1], start=2):
        try:
            row = [int(t) for t in ln.split()]
        except ValueError:
            raise FormError(f"line {k}: non-integer entry") from None
        if len(row) != n:
            raise FormError(f"line {k}: expected {n} entries, got {len(row)}")
        rows.append(row)
    last = lines[-1]
    if not last.startswith("q:"):
        raise FormError(f"line {n + 2}: expected 'q: v1 ... vn'")
    try:
        q = [int(t) for t in last[2:].split()]
    except ValueError:
        raise FormError(f"line {n + 2}: non-integer q value") from None
    if len(q) != n or any(v not in (0, 1, 2, 3) for v in q):
        raise FormError(f"line {n + 2}: need {n} values in 0..3")
    return Z4Form(n, tuple(tuple(r) for r in rows), tuple(q))


def format_form(f: Z4Form) -> str:
    lines = [f"dim {f.n}"]
    lines += [" ".join(map(str, row)) for row in f.bilinear]
    lines.append("q:" + "".join(" " + str(v) for v in f.q_basis))
    return "\n".join(lines) + "\n"


def load_form(path: str | Path) -> Z4Form:
    return parse_form(Path(path).read_text(encoding="utf-8"))
