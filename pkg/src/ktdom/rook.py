"""0/1-matrix machinery for domination on products of two complete graphs.

A vertex subset of K_n x K_m is a 0/1 matrix M. The coverage a cell (i,j)
receives from the set is kappa(i,j) = rowsum_i + colsum_j - 2*M[i][j], so
M encodes a k-tuple total dominating set iff kappa >= k everywhere. On top
of that view this module provides: the component structure linking ones
that share a row or column, the canonical small matrices used as building
blocks, component switching, the closed formula for k = 2 with a matching
constructive builder, the exact solver delegation, and a canonical form
under row/column permutations (plus transposition).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from ._search import bits_of
from .domination import (
    BNB_CAP,
    DominationResult,
    Infeasible,
    SizeCapExceeded,
    _cover_masks,
    _gamma_bnb_cases,
    _lex_min_certificate,
)
from .graphs import cartesian_product, complete

__all__ = [
    "ZeroOneMatrix",
    "ComponentProfile",
    "Gamma2CaseId",
    "Gamma2Case",
    "PreconditionViolated",
    "NoConstructionFound",
    "kappa",
    "is_ktds_matrix",
    "matrix_to_set",
    "set_to_matrix",
    "make_J",
    "make_A",
    "make_B",
    "make_C",
    "component_graph",
    "switch_components",
    "gamma_rook_manycols",
    "rook_upper_bound",
    "gamma2_rook_formula",
    "build_min_2tds",
    "gamma_rook_exact",
    "canonicalize",
]

CANONICALIZE_CAP = 8


class PreconditionViolated(ValueError):
    """A switch precondition failed; the message names the clause."""


class NoConstructionFound(RuntimeError):
    """The block inventory covers no layout for this cell (a defect, not an
    expected outcome)."""


class ZeroOneMatrix:
    """Immutable rectangular 0/1 matrix with cached line sums."""

    __slots__ = ("n", "m", "_rows", "_row_sums", "_col_sums", "_ones")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rws = tuple(tuple(int(x) for x in row) for row in rows)
        if not rws or not rws[0]:
            raise ValueError("matrix needs at least one row and one column")
        m = len(rws[0])
        for row in rws:
            if len(row) != m:
                raise ValueError("rows have unequal lengths")
            for x in row:
                if x not in (0, 1):
                    raise ValueError(f"entries must be 0 or 1, got {x}")
        self._rows = rws
        self.n = len(rws)
        self.m = m
        self._row_sums = tuple(sum(row) for row in rws)
        self._col_sums = tuple(sum(row[j] for row in rws) for j in range(m))
        self._ones = sum(self._row_sums)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def row_sums(self) -> tuple[int, ...]:
        return self._row_sums

    @property
    def col_sums(self) -> tuple[int, ...]:
        return self._col_sums

    @property
    def ones(self) -> int:
        return self._ones

    def entry(self, i: int, j: int) -> int:
        return self._rows[i][j]

    def ones_cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j) for i in range(self.n) for j in range(self.m) if self._rows[i][j]
        )

    def transpose(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix(tuple(zip(*self._rows)))

    # --- text forms -------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join("".join("#" if x else "." for x in row) for row in self._rows)

    @classmethod
    def from_text(cls, text: str) -> "ZeroOneMatrix":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines:
            raise ValueError("empty matrix text")
        rows = []
        for ln in lines:
            row = []
            for ch in ln:
                if ch == "#":
                    row.append(1)
                elif ch == ".":
                    row.append(0)
                else:
                    raise ValueError(f"matrix text admits only '#' and '.', got {ch!r}")
            rows.append(row)
        return cls(rows)

    def to_compact(self) -> str:
        """'n m: hex,hex,...' with each row packed little-endian (bit j = column j)."""
        width = (self.m + 3) // 4
        packed = []
        for row in self._rows:
            val = 0
            for j, x in enumerate(row):
                val |= x << j
            packed.append(f"{val:0{width}x}")
        return f"{self.n} {self.m}: " + ",".join(packed)

    @classmethod
    def from_compact(cls, text: str) -> "ZeroOneMatrix":
        head, _, body = text.partition(":")
        parts = head.split()
        if len(parts) != 2 or not body:
            raise ValueError(f"bad compact matrix {text!r}")
        n, m = int(parts[0]), int(parts[1])
        hexes = [h.strip() for h in body.split(",")]
        if len(hexes) != n:
            raise ValueError(f"compact matrix {text!r} has {len(hexes)} rows, expected {n}")
        rows = []
        for h in hexes:
            val = int(h, 16)
            if val >> m:
                raise ValueError(f"row {h!r} has bits beyond column {m - 1}")
            rows.append([(val >> j) & 1 for j in range(m)])
        return cls(rows)

    # --- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZeroOneMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"ZeroOneMatrix({self.n}x{self.m}, ones={self._ones})"


# --- coverage arithmetic -----------------------------------------------------


def kappa(mat: ZeroOneMatrix, i: int, j: int) -> int:
    """Coverage of cell (i,j): ones sharing its row or column, excluding the
    cell itself twice if it is a one."""
    return mat.row_sums[i] + mat.col_sums[j] - 2 * mat.entry(i, j)


def is_ktds_matrix(mat: ZeroOneMatrix, k: int) -> bool:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    for i in range(mat.n):
        ri = mat.row_sums[i]
        for j in range(mat.m):
            if ri + mat.col_sums[j] - 2 * mat.rows[i][j] < k:
                return False
    return True


def matrix_to_set(mat: ZeroOneMatrix) -> tuple[int, ...]:
    """Vertex ids in K_n x K_m (row-major: cell (i,j) -> i*m + j)."""
    m = mat.m
    return tuple(i * m + j for (i, j) in mat.ones_cells())


def set_to_matrix(s: Iterable[int], n: int, m: int) -> ZeroOneMatrix:
    rows = [[0] * m for _ in range(n)]
    for x in set(s):
        if not (0 <= x < n * m):
            raise ValueError(f"vertex {x} out of range for a {n}x{m} grid")
        rows[x // m][x % m] = 1
    return ZeroOneMatrix(rows)


# --- canonical building blocks ----------------------------------------------


def make_J(x: int, y: int) -> ZeroOneMatrix:
    """All-ones x by y block, x,y >= 1."""
    if x < 1 or y < 1:
        raise ValueError(f"J needs x,y >= 1, got ({x},{y})")
    return ZeroOneMatrix([[1] * y for _ in range(x)])


def make_A(y: int) -> ZeroOneMatrix:
    """2 by y, y >= 6: first row covers columns 0..2, second row the rest."""
    if y < 6:
        raise ValueError(f"A needs y >= 6, got {y}")
    row0 = [1, 1, 1] + [0] * (y - 3)
    row1 = [0, 0, 0] + [1] * (y - 3)
    return ZeroOneMatrix([row0, row1])


def make_B(x: int, y: int) -> ZeroOneMatrix:
    """x by y, x,y >= 3: full first row and full first column."""
    if x < 3 or y < 3:
        raise ValueError(f"B needs x,y >= 3, got ({x},{y})")
    rows = [[1] * y]
    for _ in range(x - 1):
        rows.append([1] + [0] * (y - 1))
    return ZeroOneMatrix(rows)


def make_C(x: int, y: int) -> ZeroOneMatrix:
    """x by y, x,y >= 4: hollow cross, first row and first column full except
    the shared corner."""
    if x < 4 or y < 4:
        raise ValueError(f"C needs x,y >= 4, got ({x},{y})")
    rows = [[0] + [1] * (y - 1)]
    for _ in range(x - 1):
        rows.append([1] + [0] * (y - 1))
    return ZeroOneMatrix(rows)


# --- component structure ------------------------------------------------------


@dataclass(frozen=True)
class ComponentProfile:
    """One component of the ones of a matrix under the share-a-line relation."""

    cells: tuple[tuple[int, int], ...]
    x: int  # distinct rows spanned
    y: int  # distinct columns spanned
    ones: int

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]]) -> "ComponentProfile":
        cs = tuple(sorted(cells))
        return cls(
            cells=cs,
            x=len({i for i, _ in cs}),
            y=len({j for _, j in cs}),
            ones=len(cs),
        )


def component_graph(mat: ZeroOneMatrix) -> tuple[ComponentProfile, ...]:
    """Components of the ones, where two ones are linked when they share a row
    or a column. Computed by union-find over row and column co-occurrence."""
    cells = mat.ones_cells()
    parent = list(range(len(cells)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    first_in_row: dict[int, int] = {}
    first_in_col: dict[int, int] = {}
    for idx, (i, j) in enumerate(cells):
        if i in first_in_row:
            union(first_in_row[i], idx)
        else:
            first_in_row[i] = idx
        if j in first_in_col:
            union(first_in_col[j], idx)
        else:
            first_in_col[j] = idx

    groups: dict[int, list[tuple[int, int]]] = {}
    for idx, cell in enumerate(cells):
        groups.setdefault(find(idx), []).append(cell)
    comps = [ComponentProfile.from_cells(g) for g in groups.values()]
    comps.sort(key=lambda c: c.cells[0])
    return tuple(comps)


def _no_zero_lines(mat: ZeroOneMatrix) -> bool:
    return all(r > 0 for r in mat.row_sums) and all(c > 0 for c in mat.col_sums)


def switch_components(
    mat: ZeroOneMatrix,
    selected: Sequence[ComponentProfile],
    replacement: ZeroOneMatrix,
) -> ZeroOneMatrix:
    """Replace a union of whole components spanning x rows and y columns by an
    x by y block with the same guarantees.

    Preconditions (violations raise PreconditionViolated naming the clause):
    the host matrix is 2-tuple total with no all-0 row or column; `selected`
    consists of whole components of the host; the replacement is 2-tuple
    total, has no all-0 row or column, and its shape matches the rows and
    columns spanned by the selection. The result is again 2-tuple total.
    """
    if not is_ktds_matrix(mat, 2):
        raise PreconditionViolated("host matrix is not 2-tuple total")
    if not _no_zero_lines(mat):
        raise PreconditionViolated("host matrix has an all-0 row or column")
    if not selected:
        raise PreconditionViolated("no components selected")
    actual = {c.cells for c in component_graph(mat)}
    seen: set[tuple[tuple[int, int], ...]] = set()
    for comp in selected:
        if comp.cells not in actual:
            raise PreconditionViolated("selection is not a whole component of the host")
        if comp.cells in seen:
            raise PreconditionViolated("component selected twice")
        seen.add(comp.cells)
    sel_cells = [cell for comp in selected for cell in comp.cells]
    rows_spanned = sorted({i for i, _ in sel_cells})
    cols_spanned = sorted({j for _, j in sel_cells})
    if (replacement.n, replacement.m) != (len(rows_spanned), len(cols_spanned)):
        raise PreconditionViolated(
            f"replacement is {replacement.n}x{replacement.m}, selection spans "
            f"{len(rows_spanned)}x{len(cols_spanned)}"
        )
    if not is_ktds_matrix(replacement, 2):
        raise PreconditionViolated("replacement is not 2-tuple total")
    if not _no_zero_lines(replacement):
        raise PreconditionViolated("replacement has an all-0 row or column")

    grid = [list(row) for row in mat.rows]
    for i, j in sel_cells:
        grid[i][j] = 0
    for a, i in enumerate(rows_spanned):
        for b, j in enumerate(cols_spanned):
            if replacement.entry(a, b):
                grid[i][j] = 1
    return ZeroOneMatrix(grid)


# --- closed-form values --------------------------------------------------------


def _normalized(n: int, m: int) -> tuple[int, int, bool]:
    if n < 1 or m < 1:
        raise ValueError(f"need n,m >= 1, got ({n},{m})")
    if n <= m:
        return n, m, False
    return m, n, True


def gamma_rook_manycols(n: int, m: int, k: int) -> int | None:
    """Exact value when one side is much wider: k+1 for a single row with
    m >= k+1 columns; k*n when m >= n >= 2 and m >= k*n - 1. None when the
    shape is outside both regimes."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    a, b, _ = _normalized(n, m)
    if a == 1:
        return k + 1 if b >= k + 1 else None
    if b >= k * a - 1:
        return k * a
    return None


def rook_upper_bound(n: int, m: int, k: int) -> int | None:
    """k*min(n,m) is achievable (k full columns) when min >= 2 and max >= k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    a, b, _ = _normalized(n, m)
    if a >= 2 and b >= k:
        return k * a
    return None


class Gamma2CaseId(enum.Enum):
    UNDEFINED = "undefined"
    N1 = "n1"
    WIDE_2N = "wide_2n"
    MOD8_PLUS1 = "mod8_plus1"
    CEIL34 = "ceil34"


@dataclass(frozen=True)
class Gamma2Case:
    case_id: Gamma2CaseId
    value: int | None


def _wide_threshold(n: int) -> int:
    """Smallest m for which the 2n branch fires."""
    return (5 * n - 4) // 3 + 1


def gamma2_rook_formula(n: int, m: int) -> Gamma2Case:
    """Closed formula for the minimum 2-tuple total value on K_n x K_m.

    Undefined for the two degenerate shapes without any valid set. Symmetric
    in n, m.
    """
    a, b, _ = _normalized(n, m)
    if (a, b) in ((1, 1), (1, 2)):
        return Gamma2Case(Gamma2CaseId.UNDEFINED, None)
    if a == 1:
        return Gamma2Case(Gamma2CaseId.N1, 3)
    if b >= _wide_threshold(a):
        return Gamma2Case(Gamma2CaseId.WIDE_2N, 2 * a)
    base = -(-3 * (a + b) // 4)
    if b % 8 == (3 * a + 4) % 8:
        return Gamma2Case(Gamma2CaseId.MOD8_PLUS1, base + 1)
    return Gamma2Case(Gamma2CaseId.CEIL34, base)


# --- constructive minimum for k = 2 -------------------------------------------

# Placement inventory for the block-diagonal branch: (rows, cols, ones, blocks)
# per optional special prefix, tried in this order; every remaining row/column
# is consumed by 3x1 and 1x3 all-ones blocks.
_SPECIAL_OPTIONS: list[tuple[int, int, int, tuple[tuple[int, int], ...]]] = [(0, 0, 0, ())]
_SPECIAL_OPTIONS += [(x, 1, x, ((x, 1),)) for x in range(4, 8)]
_SPECIAL_OPTIONS += [(1, y, y, ((1, y),)) for y in range(4, 8)]
_SPECIAL_OPTIONS += [
    (x + 1, y + 1, x + y, ((x, 1), (1, y))) for x in (4, 5) for y in (4, 5)
]


def _build_block_diagonal(n: int, m: int, target: int) -> ZeroOneMatrix | None:
    for rx, cy, ones0, blocks in _SPECIAL_OPTIONS:
        np_, mp = n - rx, m - cy
        if np_ < 0 or mp < 0:
            continue
        s, t = 3 * np_ - mp, 3 * mp - np_
        if s < 0 or t < 0 or s % 8 or t % 8:
            continue
        a, b = s // 8, t // 8
        if ones0 + 3 * (a + b) != target:
            continue
        grid = [[0] * m for _ in range(n)]
        r = c = 0
        layout = list(blocks) + [(3, 1)] * a + [(1, 3)] * b
        for bx, by in layout:
            for i in range(bx):
                for j in range(by):
                    grid[r + i][c + j] = 1
            r += bx
            c += by
        if (r, c) != (n, m):
            raise AssertionError("block layout does not tile the grid")
        return ZeroOneMatrix(grid)
    return None


def build_min_2tds(n: int, m: int) -> ZeroOneMatrix:
    """A minimum 2-tuple total matrix for the n by m grid, matching the closed
    formula's value; raises Infeasible on the degenerate shapes and
    NoConstructionFound if the inventory cannot tile a cell (a defect)."""
    a, b, swapped = _normalized(n, m)
    case = gamma2_rook_formula(a, b)
    if case.value is None:
        raise Infeasible(f"no 2-tuple total set exists on a {n}x{m} grid")
    target = case.value
    if (a, b) == (2, 2):
        out = make_J(2, 2)
    elif (a, b) == (3, 3):
        out = make_B(3, 3)
    elif a == 1:
        out = ZeroOneMatrix([[1, 1, 1] + [0] * (b - 3)])
    elif b >= _wide_threshold(a):
        out = ZeroOneMatrix([[1, 1] + [0] * (b - 2) for _ in range(a)])
    else:
        built = _build_block_diagonal(a, b, target)
        if built is None:
            raise NoConstructionFound(f"no block layout for ({a},{b}) hits {target} ones")
        out = built
    if out.ones != target:
        raise NoConstructionFound(
            f"layout for ({a},{b}) has {out.ones} ones, formula says {target}"
        )
    return out.transpose() if swapped else out


# --- exact solver delegation ----------------------------------------------------


def _symmetry_cases(n: int, m: int, k: int) -> list[tuple[int, int]]:
    """Exhaustive-up-to-symmetry seeds for searching K_n x K_m (cell (i,j) is
    vertex i*m+j). Any total solution S has at least two elements (a lone
    vertex cannot totally dominate itself; at least k+1 in general), the
    graph is vertex transitive, and row/column permutations fixing earlier
    choices act transitively on each remaining region. So up to symmetry
    (0,0) is in S and the second element is (0,1), or (1,0) with row 0
    otherwise empty, or (1,1) with row 0 and column 0 otherwise empty.

    For k >= 2 the first case splits once more on the third element: it is
    (0,2), or (1,0) with the rest of row 0 empty (the column swap 0<->1
    keeps the seed pair fixed as a set), or (1,2) with the rest of row 0 and
    all of columns 0,1 below row 0 empty. Cases likely to contain an optimum
    come first so later, more constrained cases inherit a tight incumbent."""
    cell = lambda i, j: 1 << (i * m + j)
    if n == 1 or m == 1:
        length = max(n, m)
        if length == 1:
            return [(0, 0)]
        line = [cell(0, j) for j in range(m)] if m > 1 else [cell(i, 0) for i in range(n)]
        # a single line: any min(k+1, length) solution elements can be
        # permuted onto the first positions
        forced = line[: min(k + 1, length)]
        seed = 0
        for b in forced:
            seed |= b
        return [(seed, 0)]
    row0_tail = sum(cell(0, j) for j in range(1, m))
    row0_tail2 = sum(cell(0, j) for j in range(2, m))
    col0_tail = sum(cell(i, 0) for i in range(1, n))
    cols01_low = sum(cell(i, j) for i in range(1, n) for j in range(2) if j < m)
    pair_row = cell(0, 0) | cell(0, 1)
    cases: list[tuple[int, int]] = []
    if k >= 2:
        if m >= 3:
            cases.append((pair_row | cell(0, 2), 0))
        cases.append((pair_row | cell(1, 0), row0_tail2))
        if m >= 3:
            cases.append((pair_row | cell(1, 2), row0_tail2 | cols01_low))
    else:
        cases.append((pair_row, 0))
    cases.append((cell(0, 0) | cell(1, 0), row0_tail))
    cases.append((cell(0, 0) | cell(1, 1), row0_tail | col0_tail))
    return cases


@lru_cache(maxsize=None)
def gamma_rook_exact(n: int, m: int, k: int, canonical: bool = False) -> DominationResult:
    """Exact minimum by the general branch-and-bound on K_n x K_m.

    The search is split into row/column-symmetry cases (see _symmetry_cases)
    so the branch-and-bound never re-proves permutation-equivalent subtrees;
    the returned certificate is still a concrete optimal set. canonical=True
    recomputes the certificate as the lexicographically least optimum."""
    if n < 1 or m < 1:
        raise ValueError(f"need n,m >= 1, got ({n},{m})")
    g = cartesian_product(complete(n), complete(m))
    if g.n > BNB_CAP:
        raise SizeCapExceeded(f"graph has {g.n} vertices, branch-and-bound cap is {BNB_CAP}")
    value, mask = _gamma_bnb_cases(g, k, _symmetry_cases(n, m, k))
    if canonical:
        cert = _lex_min_certificate(_cover_masks(g, True), k, value)
    else:
        cert = bits_of(mask)
    return DominationResult(value, cert, "total", k)


# --- canonical form ---------------------------------------------------------------


def _min_permuted_form(rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    m = len(rows[0])
    best: tuple[tuple[int, ...], ...] | None = None
    for perm in permutations(range(n)):
        permuted = [rows[i] for i in perm]
        cols = sorted(tuple(permuted[i][j] for i in range(n)) for j in range(m))
        cand = tuple(tuple(col[i] for col in cols) for i in range(n))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def canonicalize(mat: ZeroOneMatrix, cap: int = CANONICALIZE_CAP) -> ZeroOneMatrix:
    """Representative of the matrix's class under row permutations, column
    permutations, and transposition. The result always has n <= m; two
    matrices are equivalent iff their canonical forms are equal."""
    if min(mat.n, mat.m) > cap:
        raise SizeCapExceeded(
            f"canonicalize handles min(n,m) <= {cap}, got {mat.n}x{mat.m}"
        )
    if mat.n > mat.m:
        mat = mat.transpose()
    forms = [_min_permuted_form(mat.rows)]
    if mat.n == mat.m:
        forms.append(_min_permuted_form(mat.transpose().rows))
    return ZeroOneMatrix(min(forms))
