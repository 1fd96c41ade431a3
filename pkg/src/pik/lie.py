"""Free Lie algebra over Z realized inside the truncated tensor algebra.

Homogeneous Lie elements are stored through their tensor-algebra image; the
coordinates in the Lyndon basis are extracted by the triangular rewrite
(the standard bracketing of a Lyndon word is the word itself plus
lexicographically larger words).  Spans of homogeneous elements become
integer lattices, with rank / Hermite form / fullness computed exactly.

All integer linear algebra is fraction-free.  Large eliminations run on an
int64 fast path with an overflow guard and fall back to exact big-integer
arithmetic when the guard trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .magnus import NcPoly

Word = tuple[int, ...]


class LieError(ValueError):
    pass


class NotLieElement(LieError):
    """Tensor polynomial outside the free Lie subspace."""


# ---------------------------------------------------------------------------
# Lyndon words and their standard bracketings.
# ---------------------------------------------------------------------------


def is_lyndon(w: Word) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lyndon_words(nvars: int, m: int) -> tuple[Word, ...]:
    """All Lyndon words of length exactly m over 1..nvars, lexicographic.

    Duval's generation of the Lyndon words of length <= m, filtered.
    """
    if nvars < 1 or m < 1:
        raise LieError("need nvars >= 1 and m >= 1")
    out: list[Word] = []
    w = [1]
    while w:
        if len(w) == m:
            out.append(tuple(w))
        # extend periodically to length m, then increment the tail
        prefix = list(w)
        while len(w) < m:
            w.append(w[len(w) - len(prefix)])
        while w and w[-1] == nvars:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the lexicographically least proper suffix (both Lyndon)."""
    if len(w) < 2:
        raise LieError("factorization needs length >= 2")
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def _tensor_commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a.mul(b).sub(b.mul(a))


@lru_cache(maxsize=None)
def _lyndon_bracket_terms(nvars: int, w: Word) -> tuple[tuple[Word, int], ...]:
    """Tensor terms of the standard bracketing of the Lyndon word w."""
    p = _lyndon_bracket_poly(nvars, w, len(w))
    return tuple(sorted(p.terms.items()))


def _lyndon_bracket_poly(nvars: int, w: Word, maxdeg: int) -> NcPoly:
    if len(w) == 1:
        return NcPoly.variable(nvars, maxdeg, w[0])
    u, v = standard_factorization(w)
    return _tensor_commutator(
        _lyndon_bracket_poly(nvars, u, maxdeg), _lyndon_bracket_poly(nvars, v, maxdeg)
    )


def lyndon_bracket(nvars: int, w: Word, maxdeg: Optional[int] = None) -> NcPoly:
    """Standard bracketing of a Lyndon word as a tensor polynomial."""
    if not is_lyndon(w):
        raise LieError(f"{w} is not a Lyndon word")
    D = maxdeg if maxdeg is not None else len(w)
    return NcPoly(nvars, D, dict(_lyndon_bracket_terms(nvars, w)))


def lyndon_coordinates(nvars: int, degree: int, terms: dict[Word, int]) -> dict[Word, int]:
    """Coordinates of a homogeneous Lie element in the degree Lyndon basis.

    Triangular rewrite: repeatedly strip the lexicographically least monomial,
    which for a Lie element must be Lyndon with its own coefficient.  Raises
    NotLieElement when the residual ever leads with a non-Lyndon word.
    """
    work = dict(terms)
    coords: dict[Word, int] = {}
    while work:
        u = min(work)
        if len(u) != degree:
            raise LieError(f"inhomogeneous input: found degree {len(u)}, expected {degree}")
        if not is_lyndon(u):
            raise NotLieElement(f"leading monomial {u} is not Lyndon")
        c = work[u]
        coords[u] = c
        for mono, k in _lyndon_bracket_terms(nvars, u):
            acc = work.get(mono, 0) - c * k
            if acc:
                work[mono] = acc
            else:
                work.pop(mono, None)
    return coords


# ---------------------------------------------------------------------------
# Lie elements.
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LieElem:
    """Homogeneous free-Lie element; coords is its tensor-algebra image."""

    nvars: int
    degree: int
    coords: NcPoly
    lyndon: tuple[tuple[Word, int], ...]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LieElem)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.coords == other.coords
        )

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero


def lie_from_tensor(nvars: int, degree: int, p: NcPoly) -> LieElem:
    """Wrap a tensor polynomial, verifying it lies in the Lie subspace."""
    coords = lyndon_coordinates(nvars, degree, p.terms)
    return LieElem(nvars, degree, p, tuple(sorted(coords.items())))


def lie_generator(nvars: int, i: int) -> LieElem:
    return lie_from_tensor(nvars, 1, NcPoly.variable(nvars, 1, i))


def bracket(a: LieElem, b: LieElem) -> LieElem:
    """Lie bracket ab - ba in tensor coordinates; degrees add."""
    if a.nvars != b.nvars:
        raise LieError("alphabet size mismatch")
    d = a.degree + b.degree
    pa = NcPoly(a.nvars, d, a.coords.terms)
    pb = NcPoly(b.nvars, d, b.coords.terms)
    return lie_from_tensor(a.nvars, d, _tensor_commutator(pa, pb))


def bracket_word(nvars: int, letters: Sequence[int]) -> LieElem:
    """Left-normed bracket [y_{l1}, y_{l2}, ..., y_{lk}] of generators."""
    acc = lie_generator(nvars, letters[0])
    for l in letters[1:]:
        acc = bracket(acc, lie_generator(nvars, l))
    return acc


def lyndon_basis(nvars: int, m: int) -> list[LieElem]:
    """Standard-bracketed Lyndon words of degree m, in lexicographic order."""
    out = []
    for w in lyndon_words(nvars, m):
        p = lyndon_bracket(nvars, w)
        out.append(LieElem(nvars, m, p, ((w, 1),)))
    return out


def _mobius(d: int) -> int:
    mu = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            mu = -mu
        p += 1
    if d > 1:
        mu = -mu
    return mu


def witt(nvars: int, c: int) -> int:
    """Rank of the degree-c homogeneous component: (1/c) sum_{d|c} mu(d) N^{c/d}."""
    if nvars < 1 or c < 1:
        raise LieError("need nvars >= 1 and c >= 1")
    total = sum(_mobius(d) * nvars ** (c // d) for d in range(1, c + 1) if c % d == 0)
    assert total % c == 0
    return total // c


# ---------------------------------------------------------------------------
# Exact integer lattices (row spans in Z^dim).
# ---------------------------------------------------------------------------

_INT64_GUARD = 1 << 60
_NUMPY_THRESHOLD = 30_000


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


class IntLattice:
    """Row span of integer vectors in Z^dim, kept in echelon form over Z."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivot_col: list[int] = []  # pivot column of each row, increasing
        self._col_of: dict[int, int] = {}  # pivot column -> row index

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec: Sequence[int]) -> bool:
        """Insert a vector; returns True when the lattice grew or changed."""
        v = list(vec)
        if len(v) != self.dim:
            raise LieError(f"vector length {len(v)} != dim {self.dim}")
        changed = False
        j = 0
        while j < self.dim:
            if not v[j]:
                j += 1
                continue
            p = self._col_of.get(j)
            if p is None:
                from bisect import bisect_left

                where = bisect_left(self.pivot_col, j)
                self.rows.insert(where, v)
                self.pivot_col.insert(where, j)
                self._col_of = {c: k for k, c in enumerate(self.pivot_col)}
                return True
            row = self.rows[p]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, self.dim):
                    v[jj] -= q * row[jj]
            else:
                x, y, g = _xgcd(a, b)
                ag, mbg = a // g, -(b // g)
                for jj in range(j, self.dim):
                    aa, bb = row[jj], v[jj]
                    row[jj] = x * aa + y * bb
                    v[jj] = mbg * aa + ag * bb
                changed = True
        return changed

    def add_all(self, vecs: Iterable[Sequence[int]]) -> None:
        for v in vecs:
            self.add(v)

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        if len(v) != self.dim:
            raise LieError(f"vector length {len(v)} != dim {self.dim}")
        for j in range(self.dim):
            if not v[j]:
                continue
            p = self._col_of.get(j)
            if p is None:
                return False
            row = self.rows[p]
            if v[j] % row[j]:
                return False
            q = v[j] // row[j]
            for jj in range(j, self.dim):
                v[jj] -= q * row[jj]
        return True

    def hnf(self) -> tuple[tuple[int, ...], ...]:
        """Canonical row Hermite form: positive pivots, entries above reduced."""
        rows = [list(r) for r in self.rows]
        for i in range(len(rows) - 1, -1, -1):
            c = self.pivot_col[i]
            if rows[i][c] < 0:
                rows[i] = [-x for x in rows[i]]
            piv = rows[i][c]
            for k in range(i):
                q = rows[k][c] // piv
                if q:
                    rows[k] = [a - q * b for a, b in zip(rows[k], rows[i])]
        return tuple(tuple(r) for r in rows)

    def pivots(self) -> list[int]:
        return [abs(self.rows[i][c]) for i, c in enumerate(self.pivot_col)]

    def is_full_unimodular(self) -> bool:
        """True iff the lattice is all of Z^dim (Hermite form the identity)."""
        return self.rank == self.dim and all(p == 1 for p in self.pivots())


def _echelon_numpy(mat: np.ndarray) -> tuple[int, list[int], np.ndarray]:
    """In-place integer row echelon; raises OverflowError near int64 limits."""
    rows, cols = mat.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        col = mat[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        while nz.size > 1:
            sel = nz[np.argmin(np.abs(col[nz]))]
            piv = int(col[sel])
            others = nz[nz != sel]
            q = col[others] // piv
            bound = np.abs(mat[r + others]).max() + (np.abs(q).max() + 1) * np.abs(
                mat[r + sel]
            ).max()
            if bound > _INT64_GUARD:
                raise OverflowError("int64 elimination guard tripped")
            mat[r + others] -= q[:, None] * mat[r + sel]
            col = mat[r:, c]
            nz = np.flatnonzero(col)
        sel = int(nz[0])
        if sel != 0:
            mat[[r, r + sel]] = mat[[r + sel, r]]
        if mat[r, c] < 0:
            mat[r] = -mat[r]
        pivots.append(c)
        r += 1
    return r, pivots, mat


def lattice_from_rows(rows: Sequence[Sequence[int]], dim: int) -> IntLattice:
    """Build an echelonized lattice, on the int64 fast path when it pays off."""
    nrows = len(rows)
    lat = IntLattice(dim)
    if nrows * dim >= _NUMPY_THRESHOLD:
        try:
            mat = np.array(rows, dtype=np.int64)
            if nrows and np.abs(mat).max() <= _INT64_GUARD:
                rank, pivcols, mat = _echelon_numpy(mat)
                for i in range(rank):
                    lat.rows.append([int(x) for x in mat[i]])
                lat.pivot_col = pivcols
                lat._col_of = {c: k for k, c in enumerate(pivcols)}
                return lat
        except OverflowError:
            lat = IntLattice(dim)
    lat.add_all(rows)
    return lat


# ---------------------------------------------------------------------------
# Graded lattices of homogeneous Lie elements.
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GradedLattice:
    """Span of homogeneous degree-m Lie elements in Lyndon coordinates."""

    nvars: int
    degree: int
    lattice: IntLattice

    @property
    def rank(self) -> int:
        return self.lattice.rank


def lyndon_index(nvars: int, m: int) -> dict[Word, int]:
    return {w: k for k, w in enumerate(lyndon_words(nvars, m))}


def coordinate_row(e: LieElem, index: dict[Word, int], dim: int) -> list[int]:
    row = [0] * dim
    for w, c in e.lyndon:
        row[index[w]] = c
    return row


def lattice_of(spanning: Sequence[LieElem], m: int) -> GradedLattice:
    """The integer lattice spanned by homogeneous degree-m elements."""
    if not spanning:
        raise LieError("need at least one element to fix the alphabet")
    nvars = spanning[0].nvars
    index = lyndon_index(nvars, m)
    dim = len(index)
    rows = []
    for e in spanning:
        if e.nvars != nvars:
            raise LieError("alphabet size mismatch in spanning set")
        if not e.is_zero and e.degree != m:
            raise LieError(f"inhomogeneous input: degree {e.degree}, expected {m}")
        if not e.is_zero:
            rows.append(coordinate_row(e, index, dim))
    return GradedLattice(nvars, m, lattice_from_rows(rows, dim))


def lattice_rank(lat: GradedLattice) -> int:
    return lat.rank


def lattice_equal(a: GradedLattice, b: GradedLattice) -> bool:
    if a.nvars != b.nvars or a.degree != b.degree:
        return False
    return a.lattice.hnf() == b.lattice.hnf()


@dataclass(frozen=True)
class DirectSumReport:
    degree: int
    part_ranks: tuple[int, ...]
    rank_sum: int
    witt_rank: int
    stacked_unimodular: bool

    @property
    def ok(self) -> bool:
        return self.rank_sum == self.witt_rank and self.stacked_unimodular

    def as_dict(self) -> dict:
        return {
            "m": self.degree,
            "part_ranks": list(self.part_ranks),
            "rank_sum": self.rank_sum,
            "witt": self.witt_rank,
            "snf_ones": self.stacked_unimodular,
            "direct_sum": self.ok,
        }


def lattice_direct_sum_is_whole(parts: Sequence[Sequence[LieElem]], nvars: int, m: int) -> DirectSumReport:
    """Certificate that the given spans form a direct sum equal to all of L^m.

    Checks rank additivity against the Witt rank and that the stacked
    spanning set generates the full integer lattice (Hermite pivots all 1,
    equivalently Smith normal form all ones) -- a Z-direct-sum certificate,
    not merely one over Q.
    """
    index = lyndon_index(nvars, m)
    dim = len(index)
    part_ranks = []
    stacked_rows: list[list[int]] = []
    for part in parts:
        rows = [coordinate_row(e, index, dim) for e in part if not e.is_zero]
        part_ranks.append(lattice_from_rows(rows, dim).rank)
        stacked_rows.extend(rows)
    stacked = lattice_from_rows(stacked_rows, dim)
    return DirectSumReport(
        degree=m,
        part_ranks=tuple(part_ranks),
        rank_sum=sum(part_ranks),
        witt_rank=witt(nvars, m),
        stacked_unimodular=stacked.is_full_unimodular(),
    )


# ---------------------------------------------------------------------------
# Generic elimination: splitting off the subalgebra on a letter subset.
# ---------------------------------------------------------------------------


def wreath_generators(
    nvars: int, u_letters: Sequence[int], v_letters: Sequence[int], max_deg: int
) -> list[LieElem]:
    """The natural free generating set of the complement subalgebra.

    For a split of the alphabet into U and V, the complement of L(U) is free
    on the left-normed brackets [v, u_1, ..., u_a] with v in V and u_i in U,
    listed here up to degree max_deg.
    """
    import itertools as _it

    if set(u_letters) & set(v_letters):
        raise LieError("letter blocks must be disjoint")
    out = [lie_generator(nvars, v) for v in v_letters]
    for a in range(1, max_deg):
        for v in v_letters:
            for us in _it.product(u_letters, repeat=a):
                out.append(bracket_word(nvars, [v, *us]))
    return out


def elimination_certificate(
    nvars: int, u_letters: Sequence[int], v_letters: Sequence[int], m: int
) -> DirectSumReport:
    """Degree-m certificate that L splits as L(U) plus the wreath complement.

    The complement's degree-m piece is spanned by left-normed products of the
    wreath generators; the certificate stacks it against the Lyndon basis of
    L^m(U) and checks rank additivity plus Z-fullness.
    """
    import itertools as _it

    u_part = []
    for w in lyndon_words(len(u_letters), m):
        flat = tuple(u_letters[a - 1] for a in w)
        u_part.append(lie_from_tensor(nvars, m, lyndon_bracket(nvars, flat)))
    gens = wreath_generators(nvars, u_letters, v_letters, m)
    by_deg: dict[int, list[LieElem]] = {}
    for e in gens:
        by_deg.setdefault(e.degree, []).append(e)

    def compositions(total: int, min_part: int = 1):
        if total == 0:
            yield ()
            return
        for first in range(min_part, total + 1):
            for rest in compositions(total - first, min_part):
                yield (first,) + rest

    wreath_rows: list[LieElem] = []
    for comp in compositions(m):
        if not all(d in by_deg for d in comp):
            continue
        for combo in _it.product(*(by_deg[d] for d in comp)):
            e = combo[0]
            for t in combo[1:]:
                e = bracket(e, t)
            if not e.is_zero:
                wreath_rows.append(e)
    return lattice_direct_sum_is_whole([u_part, wreath_rows], nvars, m)


def smith_diagonal(rows: Sequence[Sequence[int]], dim: int) -> list[int]:
    """Exact Smith normal form diagonal of the row matrix (small inputs)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    diag: list[int] = []
    top = 0
    ncols = dim
    while top < nrows and top < ncols:
        # find a nonzero entry at or below/right of (top, top)
        found = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if mat[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i0, j0 = found
        mat[top], mat[i0] = mat[i0], mat[top]
        for row in mat:
            row[top], row[j0] = row[j0], row[top]
        while True:
            # clear column with row ops
            again = False
            for i in range(top + 1, nrows):
                if mat[i][top]:
                    if mat[i][top] % mat[top][top] == 0:
                        q = mat[i][top] // mat[top][top]
                        mat[i] = [a - q * b for a, b in zip(mat[i], mat[top])]
                    else:
                        x, y, g = _xgcd(mat[top][top], mat[i][top])
                        ag, bg = mat[top][top] // g, mat[i][top] // g
                        r_top = mat[top][:]
                        r_i = mat[i][:]
                        mat[top] = [x * a + y * b for a, b in zip(r_top, r_i)]
                        mat[i] = [-bg * a + ag * b for a, b in zip(r_top, r_i)]
                        again = True
            # clear row with column ops
            for j in range(top + 1, ncols):
                if mat[top][j]:
                    if mat[top][j] % mat[top][top] == 0:
                        q = mat[top][j] // mat[top][top]
                        for row in mat:
                            row[j] -= q * row[top]
                    else:
                        x, y, g = _xgcd(mat[top][top], mat[top][j])
                        ag, bg = mat[top][top] // g, mat[top][j] // g
                        for row in mat:
                            a, b = row[top], row[j]
                            row[top] = x * a + y * b
                            row[j] = -bg * a + ag * b
                        again = True
            if not again and all(not mat[i][top] for i in range(top + 1, nrows)) and all(
                not mat[top][j] for j in range(top + 1, ncols)
            ):
                break
        diag.append(abs(mat[top][top]))
        top += 1
    # enforce divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b and b % a:
                g = _gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return [d for d in diag if d]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
