"""Exact integer linear algebra for finitely generated abelian groups.

Vectors are rows. A matrix with ``rows`` x ``cols`` entries describes the map
Z^rows -> Z^cols, x -> x.A, and the relations of a presentation are the rows of
its relation matrix. Everything is computed with Python integers.
"""

from __future__ import annotations

import itertools
import math
import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from sympy import factorint

from mackeycalc.common import get_logger
from mackeycalc.common.errors import IllDefinedHomError

log = get_logger(__name__)

Vector = tuple[int, ...]


def unit(i: int, n: int) -> Vector:
    """The i-th standard basis vector of Z^n."""
    return tuple(1 if k == i else 0 for k in range(n))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


# =============================================================================
# Matrices
# =============================================================================


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored as a tuple of row tuples."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise ValueError(f"Matrix data does not match shape {self.rows}x{self.cols}")
        for row in self.data:
            for entry in row:
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise ValueError(f"Matrix entries must be integers, got {entry!r}")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> IntMatrix:
        """Build a matrix from nested iterables; ``cols`` is required when there are no rows."""
        data = tuple(tuple(operator.index(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("Column count is required for a matrix without rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(unit(i, n) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls(n, n, tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence[IntMatrix]) -> IntMatrix:
        cols = sum(b.cols for b in blocks)
        rows: list[tuple[int, ...]] = []
        offset = 0
        for block in blocks:
            for row in block.data:
                rows.append((0,) * offset + row + (0,) * (cols - offset - block.cols))
            offset += block.cols
        return cls.of(rows, cols=cols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self.data
        )
        return IntMatrix(self.rows, other.cols, data)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(vec_scale(k, row) for row in self.data))

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def select_rows(self, indices: Sequence[int]) -> IntMatrix:
        return IntMatrix(len(indices), self.cols, tuple(self.data[i] for i in indices))

    def select_cols(self, indices: Sequence[int]) -> IntMatrix:
        return IntMatrix(self.rows, len(indices), tuple(tuple(row[j] for j in indices) for row in self.data))

    def apply(self, vector: Sequence[int]) -> Vector:
        """Row vector times matrix."""
        if len(vector) != self.rows:
            raise ValueError(f"Vector of length {len(vector)} cannot act on {self.rows}x{self.cols}")
        out = [0] * self.cols
        for coeff, row in zip(vector, self.data):
            if coeff:
                for j, entry in enumerate(row):
                    if entry:
                        out[j] += coeff * entry
        return tuple(out)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.data]

    def _check_same_shape(self, other: IntMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __str__(self) -> str:
        if not self.rows:
            return f"[] (0x{self.cols})"
        width = max(len(str(x)) for row in self.data for x in row) if self.cols else 1
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in row) + "]" for row in self.data)


# =============================================================================
# Smith and Hermite normal forms
# =============================================================================


def _add_row(mat: list[list[int]], dst: int, src: int, k: int) -> None:
    mat[dst] = [a + k * b for a, b in zip(mat[dst], mat[src])]


def _add_col(mat: list[list[int]], dst: int, src: int, k: int) -> None:
    for row in mat:
        row[dst] += k * row[src]


def _swap_rows(mat: list[list[int]], i: int, j: int) -> None:
    if i != j:
        mat[i], mat[j] = mat[j], mat[i]


def _swap_cols(mat: list[list[int]], i: int, j: int) -> None:
    if i != j:
        for row in mat:
            row[i], row[j] = row[j], row[i]


def _min_entry(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = abs(row[j])
            if x and (best is None or x < best_abs):
                best, best_abs = (i, j), x
                if x == 1:
                    return best
    return best


def _identity_lists(n: int) -> list[list[int]]:
    return [list(unit(i, n)) for i in range(n)]


def _smith(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Smith form U.M.V = D together with V^-1."""
    r, c = m.rows, m.cols
    a = [list(row) for row in m.data]
    u = _identity_lists(r)
    v = _identity_lists(c)
    vi = _identity_lists(c)

    def move_pivot(t: int, i: int, j: int) -> None:
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        _swap_rows(vi, t, j)

    t = 0
    while t < min(r, c):
        pivot = _min_entry(a, t)
        if pivot is None:
            break
        move_pivot(t, *pivot)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)
                    _add_row(vi, t, j, q)
                if a[t][j]:
                    clean = False
            if not clean:
                pivot = _min_entry(a, t)
                assert pivot is not None
                move_pivot(t, *pivot)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(a, t, bad, 1)
            _add_row(u, t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (
        IntMatrix.of(u, cols=r),
        IntMatrix.of(a, cols=c),
        IntMatrix.of(v, cols=c),
        IntMatrix.of(vi, cols=c),
    )


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U.M.V = D, U and V unimodular, D diagonal with d1 | d2 | ..."""
    u, d, v, _ = _smith(m)
    return u, d, v


class Lattice:
    """Sublattice of Z^dim kept in echelon form and grown one vector at a time.

    Insertion merges pivots with the extended Euclidean algorithm, so the stored
    rows always form a basis. ``basis()`` returns the canonical Hermite normal form.
    """

    def __init__(self, dim: int, vectors: Iterable[Sequence[int]] = ()) -> None:
        self.dim = dim
        self._rows: dict[int, list[int]] = {}
        self._canonical: list[Vector] | None = None
        for vector in vectors:
            self.add(vector)

    def _check(self, vector: Sequence[int]) -> list[int]:
        if len(vector) != self.dim:
            raise ValueError(f"Vector of length {len(vector)} does not live in Z^{self.dim}")
        return list(vector)

    def add(self, vector: Sequence[int]) -> bool:
        """Insert a vector; return True if the lattice grew."""
        v = self._check(vector)
        grew = False
        for col in range(self.dim):
            x = v[col]
            if x == 0:
                continue
            row = self._rows.get(col)
            if row is None:
                if x < 0:
                    v = [-y for y in v]
                self._rows[col] = v
                self._canonical = None
                return True
            p = row[col]
            if x % p == 0:
                q = x // p
                v = [a - q * b for a, b in zip(v, row)]
                continue
            g, s, t = xgcd(p, x)
            merged = [s * b + t * a for a, b in zip(v, row)]
            v = [(x // g) * b - (p // g) * a for a, b in zip(v, row)]
            self._rows[col] = merged
            self._canonical = None
            grew = True
        return grew

    def extend(self, vectors: Iterable[Sequence[int]]) -> bool:
        grew = False
        for vector in vectors:
            grew = self.add(vector) or grew
        return grew

    def __contains__(self, vector: object) -> bool:
        if not isinstance(vector, Sequence):
            return False
        v = self._check(vector)
        for col in range(self.dim):
            x = v[col]
            if x == 0:
                continue
            row = self._rows.get(col)
            if row is None or x % row[col]:
                return False
            q = x // row[col]
            v = [a - q * b for a, b in zip(v, row)]
        return True

    def reduce(self, vector: Sequence[int]) -> Vector:
        """Canonical representative of the coset vector + lattice."""
        v = self._check(vector)
        for col in sorted(self._rows):
            row = self._rows[col]
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> list[Vector]:
        """Hermite normal form basis, ordered by pivot column."""
        if self._canonical is None:
            cols = sorted(self._rows)
            rows = {c: list(self._rows[c]) for c in cols}
            for idx in range(len(cols) - 1, -1, -1):
                c = cols[idx]
                for c2 in cols[idx + 1 :]:
                    q = rows[c][c2] // rows[c2][c2]
                    if q:
                        rows[c] = [a - q * b for a, b in zip(rows[c], rows[c2])]
            # keep the reduced rows; they span the same lattice
            self._rows = rows
            self._canonical = [tuple(rows[c]) for c in cols]
        return list(self._canonical)

    def coordinates(self, vector: Sequence[int]) -> Vector:
        """Coefficients of ``vector`` in ``basis()``; ValueError if it is not a member."""
        v = self._check(vector)
        coeffs: list[int] = []
        for row, col in zip(self.basis(), self.pivots()):
            x = v[col]
            if x % row[col]:
                raise ValueError(f"Vector {tuple(vector)} is not in the lattice")
            q = x // row[col]
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            raise ValueError(f"Vector {tuple(vector)} is not in the lattice")
        return tuple(coeffs)

    def copy(self) -> Lattice:
        other = Lattice(self.dim)
        other._rows = {c: list(r) for c, r in self._rows.items()}
        return other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.basis() == other.basis()

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.basis())))

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, rank={self.rank})"


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form of the row span (zero rows dropped)."""
    return IntMatrix.of(Lattice(m.cols, m.data).basis(), cols=m.cols)


def _augmented(rows: Sequence[Sequence[int]], width: int) -> Lattice:
    """Lattice spanned by (row_i | e_i), used for kernels and integer solving."""
    m = len(rows)
    return Lattice(width + m, (tuple(row) + unit(i, m) for i, row in enumerate(rows)))


def left_kernel(m: IntMatrix) -> IntMatrix:
    """Basis (as rows) of {x in Z^rows : x.M = 0}."""
    lattice = _augmented(m.data, m.cols)
    kernel_rows = [
        vec[m.cols :] for vec, col in zip(lattice.basis(), lattice.pivots()) if col >= m.cols
    ]
    return IntMatrix.of(kernel_rows, cols=m.rows)


def _solve_with(lattice: Lattice, width: int, target: Sequence[int]) -> Vector | None:
    extra = lattice.dim - width
    reduced = lattice.reduce(tuple(target) + (0,) * extra)
    if any(reduced[:width]):
        return None
    return tuple(-x for x in reduced[width:])


def solve_integer(m: IntMatrix, target: Sequence[int]) -> Vector | None:
    """An integer x with x.M = target, or None when no solution exists."""
    if len(target) != m.cols:
        raise ValueError(f"Target of length {len(target)} does not match {m.cols} columns")
    return _solve_with(_augmented(m.data, m.cols), m.cols, target)


# =============================================================================
# Presentations, elements and homomorphisms
# =============================================================================


@dataclass(frozen=True)
class AbPresentation:
    """Finitely generated abelian group Z^n / (row span of ``relations``)."""

    generator_count: int
    relations: IntMatrix
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.relations.cols != self.generator_count:
            raise ValueError(
                f"Relations have {self.relations.cols} columns for {self.generator_count} generators"
            )
        if self.labels and len(self.labels) != self.generator_count:
            raise ValueError("One label per generator is required")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> AbPresentation:
        return cls(0, IntMatrix.zeros(0, 0))

    @classmethod
    def free(cls, n: int) -> AbPresentation:
        return cls(n, IntMatrix.zeros(0, n))

    @classmethod
    def from_relations(
        cls, n: int, rows: Iterable[Sequence[int]], labels: Sequence[str] = ()
    ) -> AbPresentation:
        return cls(n, IntMatrix.of(rows, cols=n), tuple(labels))

    @classmethod
    def from_divisors(cls, divisors: Sequence[int], labels: Sequence[str] = ()) -> AbPresentation:
        """Direct sum of cyclic groups Z/d (d = 0 meaning Z)."""
        n = len(divisors)
        rows = [tuple(d if i == j else 0 for j in range(n)) for i, d in enumerate(divisors) if d != 0]
        return cls.from_relations(n, rows, labels)

    @classmethod
    def cyclic(cls, d: int) -> AbPresentation:
        return cls.from_divisors([d])

    # -- element arithmetic ---------------------------------------------------

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice(self.generator_count, self.relations.data)

    def _check(self, vector: Sequence[int]) -> None:
        if len(vector) != self.generator_count:
            raise ValueError(
                f"Vector of length {len(vector)} for a group with {self.generator_count} generators"
            )

    def reduce(self, vector: Sequence[int]) -> Vector:
        self._check(vector)
        return self.lattice.reduce(vector)

    def is_zero(self, vector: Sequence[int]) -> bool:
        self._check(vector)
        return tuple(vector) in self.lattice

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(u, v, strict=True)))

    def element(self, vector: Sequence[int]) -> AbElement:
        return AbElement(self, tuple(vector))

    def generator(self, i: int) -> AbElement:
        return AbElement(self, unit(i, self.generator_count))

    def zero_vector(self) -> Vector:
        return (0,) * self.generator_count

    # -- invariants -----------------------------------------------------------

    @cached_property
    def _smith(self) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
        return _smith(self.relations)

    def _diagonal(self) -> list[int]:
        _, d, _, _ = self._smith
        diag = [d[i, i] for i in range(min(d.rows, d.cols))]
        return diag + [0] * (self.generator_count - len(diag))

    def elementary_divisors(self) -> list[int]:
        """Invariant factors d1 | d2 | ... (units dropped), free summands as 0 listed last."""
        diag = self._diagonal()
        return sorted(x for x in diag if x > 1) + [0 for x in diag if x == 0]

    def primary_decomposition(self) -> list[int]:
        """Prime-power cyclic summands (sorted), free summands as 0 listed last."""
        powers: list[int] = []
        free = 0
        for d in self.elementary_divisors():
            if d == 0:
                free += 1
                continue
            powers.extend(p**e for p, e in factorint(d).items())
        return sorted(powers) + [0] * free

    @property
    def free_rank(self) -> int:
        return self.elementary_divisors().count(0)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return not self.elementary_divisors()

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError(f"Group {self.describe()} is infinite")
        return math.prod(self.elementary_divisors())

    def exponent(self) -> int:
        """Largest invariant factor (0 for infinite groups, 1 for the trivial group)."""
        divisors = self.elementary_divisors()
        if not divisors:
            return 1
        return 0 if divisors[-1] == 0 else divisors[-1]

    # -- normal forms ---------------------------------------------------------

    @cached_property
    def _simplified(self) -> tuple[AbPresentation, AbHom, AbHom]:
        _, _, v, vi = self._smith
        diag = self._diagonal()
        keep = [i for i, x in enumerate(diag) if x != 1]
        simple = AbPresentation.from_divisors([diag[i] for i in keep])
        to_simple = AbHom(self, simple, v.select_cols(keep))
        from_simple = AbHom(simple, self, vi.select_rows(keep))
        return simple, to_simple, from_simple

    def simplify(self) -> tuple[AbPresentation, AbHom, AbHom]:
        """Smith-diagonal presentation S with mutually inverse isomorphisms to and from S."""
        return self._simplified

    def is_diagonal(self) -> bool:
        """True when every relation is a multiple of a single distinct generator."""
        seen: set[int] = set()
        for row in self.relations.data:
            support = [j for j, x in enumerate(row) if x]
            if len(support) != 1 or support[0] in seen:
                return False
            seen.add(support[0])
        return True

    def diagonal_orders(self) -> list[int]:
        """Orders of the generators of a diagonal presentation (0 for free generators)."""
        if not self.is_diagonal():
            raise ValueError("Presentation is not diagonal")
        orders = [0] * self.generator_count
        for row in self.relations.data:
            j = next(k for k, x in enumerate(row) if x)
            orders[j] = abs(row[j])
        return orders

    def elements(self) -> list[Vector]:
        """Canonical representatives of every element of a finite group."""
        if not self.is_finite():
            raise ValueError(f"Cannot enumerate the infinite group {self.describe()}")
        simple, _, from_simple = self._simplified
        divisors = simple.elementary_divisors()
        ranges = [range(d) for d in divisors]
        return [self.reduce(from_simple.matrix.apply(coeffs)) for coeffs in itertools.product(*ranges)]

    def direct_sum(self, *others: AbPresentation) -> AbPresentation:
        parts = (self, *others)
        labels: tuple[str, ...] = ()
        if all(p.labels for p in parts):
            labels = tuple(label for p in parts for label in p.labels)
        return AbPresentation(
            sum(p.generator_count for p in parts),
            IntMatrix.block_diagonal([p.relations for p in parts]),
            labels,
        )

    def describe(self) -> str:
        """Human-readable isomorphism type, e.g. ``Z/8 + Z/2 + Z/2``."""
        divisors = self.elementary_divisors()
        if not divisors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in divisors)


@dataclass(frozen=True)
class AbElement:
    """Element of a presented group, stored in canonical (reduced) coordinates."""

    group: AbPresentation
    coefficients: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", self.group.reduce(self.coefficients))

    def __add__(self, other: AbElement) -> AbElement:
        return AbElement(self.group, vec_add(self.coefficients, other.coefficients))

    def __neg__(self) -> AbElement:
        return AbElement(self.group, vec_scale(-1, self.coefficients))

    def __sub__(self, other: AbElement) -> AbElement:
        return self + (-other)

    def __rmul__(self, k: int) -> AbElement:
        return AbElement(self.group, vec_scale(k, self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism of presented groups given on generators: x -> x.matrix."""

    source: AbPresentation
    target: AbPresentation
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.source.generator_count or self.matrix.cols != self.target.generator_count:
            raise ValueError(
                f"Matrix {self.matrix.rows}x{self.matrix.cols} does not fit "
                f"{self.source.generator_count} -> {self.target.generator_count} generators"
            )

    @classmethod
    def identity(cls, p: AbPresentation) -> AbHom:
        return cls(p, p, IntMatrix.identity(p.generator_count))

    @classmethod
    def zero(cls, source: AbPresentation, target: AbPresentation) -> AbHom:
        return cls(source, target, IntMatrix.zeros(source.generator_count, target.generator_count))

    @classmethod
    def from_rows(
        cls, source: AbPresentation, target: AbPresentation, rows: Iterable[Sequence[int]]
    ) -> AbHom:
        return cls(source, target, IntMatrix.of(rows, cols=target.generator_count))

    def violations(self) -> list[int]:
        """Indices of source relations whose image is nonzero in the target."""
        return [
            i
            for i, rel in enumerate(self.source.relations.data)
            if not self.target.is_zero(self.matrix.apply(rel))
        ]

    def is_well_defined(self) -> bool:
        return not self.violations()

    def validate(self) -> AbHom:
        bad = self.violations()
        if bad:
            rel = self.source.relations.row(bad[0])
            raise IllDefinedHomError(
                f"Relation {rel} of {self.source.describe()} maps to "
                f"{self.matrix.apply(rel)}, which is nonzero in {self.target.describe()}"
            )
        return self

    def apply(self, vector: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix.apply(vector))

    __call__ = apply

    def then(self, other: AbHom) -> AbHom:
        """The composite ``other o self``."""
        if self.target.generator_count != other.source.generator_count:
            raise ValueError("Composable homomorphisms need matching generator counts")
        return AbHom(self.source, other.target, self.matrix @ other.matrix)

    def __add__(self, other: AbHom) -> AbHom:
        return AbHom(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> AbHom:
        return AbHom(self.source, self.target, -self.matrix)

    def __sub__(self, other: AbHom) -> AbHom:
        return self + (-other)

    def scale(self, k: int) -> AbHom:
        return AbHom(self.source, self.target, self.matrix.scale(k))

    def canonical(self) -> AbHom:
        """Same map with every generator image reduced in the target."""
        return AbHom.from_rows(self.source, self.target, (self.apply(row) for row in self.matrix.data))

    def is_zero(self) -> bool:
        return all(self.target.is_zero(row) for row in self.matrix.data)

    def equals(self, other: AbHom) -> bool:
        return (self - other).is_zero()

    @cached_property
    def _preimage_lattice(self) -> Lattice:
        stacked = list(self.matrix.data) + list(self.target.relations.data)
        return _augmented(stacked, self.target.generator_count)

    def preimage(self, vector: Sequence[int]) -> Vector | None:
        """Some source element mapping to ``vector``, or None outside the image."""
        self.target._check(vector)
        solution = _solve_with(self._preimage_lattice, self.target.generator_count, vector)
        if solution is None:
            return None
        return self.source.reduce(solution[: self.source.generator_count])

    def lift_through(self, inclusion: AbHom) -> AbHom:
        """The map g with inclusion o g = self, for an injective ``inclusion``."""
        rows = []
        for i, row in enumerate(self.matrix.data):
            lifted = inclusion.preimage(row)
            if lifted is None:
                raise ValueError(f"Image of generator {i} does not factor through the inclusion")
            rows.append(lifted)
        return AbHom.from_rows(self.source, inclusion.source, rows)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


# =============================================================================
# Kernels, cokernels, images, homology
# =============================================================================


def _kernel_lattice(h: AbHom) -> Lattice:
    """{x : x.H lies in the target relations} as a sublattice of the source free module."""
    a = h.source.generator_count
    stacked = IntMatrix.of(
        list(h.matrix.data) + list(h.target.relations.data), cols=h.target.generator_count
    )
    null = left_kernel(stacked)
    return Lattice(a, (row[:a] for row in null.data))


def kernel(h: AbHom) -> tuple[AbPresentation, AbHom]:
    """Kernel of a well-defined homomorphism with its inclusion into the source."""
    h.validate()
    a = h.source.generator_count
    lattice = _kernel_lattice(h)
    basis = lattice.basis()
    s = len(basis)
    relations = [lattice.coordinates(rel) for rel in h.source.relations.data]
    presentation = AbPresentation.from_relations(s, relations)
    inclusion = AbHom(presentation, h.source, IntMatrix.of(basis, cols=a))
    return presentation, inclusion


def cokernel(h: AbHom) -> tuple[AbPresentation, AbHom]:
    """Cokernel of a well-defined homomorphism with the projection from the target."""
    h.validate()
    b = h.target.generator_count
    relations = list(h.target.relations.data) + list(h.matrix.data)
    presentation = AbPresentation.from_relations(b, relations, h.target.labels)
    return presentation, AbHom(h.target, presentation, IntMatrix.identity(b))


def image(h: AbHom) -> AbPresentation:
    """The image subgroup, presented as source generators modulo the kernel."""
    h.validate()
    lattice = _kernel_lattice(h)
    return AbPresentation.from_relations(h.source.generator_count, lattice.basis())


def iso_test(p: AbPresentation, q: AbPresentation) -> bool:
    """Decide whether two presentations define isomorphic groups."""
    return p.elementary_divisors() == q.elementary_divisors()


@dataclass(frozen=True)
class HomologyGroup:
    """Homology of C' -> C -> C'' at C, with the cycle group and class bookkeeping."""

    group: AbPresentation
    cycles: AbHom
    to_group: AbHom
    representatives: IntMatrix

    def representative(self, vector: Sequence[int]) -> Vector:
        """A cycle of the chain group representing the class ``vector``."""
        return self.cycles.target.reduce(self.representatives.apply(vector))

    def class_of(self, cycle: Sequence[int]) -> Vector:
        coords = self.cycles.preimage(cycle)
        if coords is None:
            raise ValueError(f"Vector {tuple(cycle)} is not a cycle")
        return self.to_group.apply(coords)


def homology(
    chain: AbPresentation, outgoing: AbHom | None = None, incoming: AbHom | None = None
) -> HomologyGroup:
    """ker(outgoing) / im(incoming) for a chain group with its two differentials."""
    if outgoing is None:
        outgoing = AbHom.zero(chain, AbPresentation.zero())
    cycles_pres, cycles = kernel(outgoing)
    if incoming is None:
        quotient, projection = cycles_pres, AbHom.identity(cycles_pres)
    else:
        quotient, projection = cokernel(incoming.lift_through(cycles))
    simple, to_simple, from_simple = quotient.simplify()
    to_group = AbHom(cycles_pres, simple, (projection.matrix @ to_simple.matrix))
    representatives = from_simple.matrix @ cycles.matrix
    return HomologyGroup(simple, cycles, to_group, representatives)


# =============================================================================
# Pontryagin duality
# =============================================================================


def dual_presentation(p: AbPresentation) -> AbPresentation:
    """Pontryagin dual of a finite group, presented on the dual of its Smith basis."""
    if not p.is_finite():
        raise ValueError(f"Pontryagin duality needs a finite group, got {p.describe()}")
    return p.simplify()[0]


def dual_hom(h: AbHom) -> AbHom:
    """Dual map dual(target) -> dual(source) in the Smith bases of both groups."""
    source_simple, _, from_source = h.source.simplify()
    target_simple, to_target, _ = h.target.simplify()
    if not (source_simple.is_finite() and target_simple.is_finite()):
        raise ValueError("Pontryagin duality needs finite groups")
    ds = source_simple.elementary_divisors()
    es = target_simple.elementary_divisors()
    f = from_source.matrix @ h.matrix @ to_target.matrix
    rows = []
    for j, e in enumerate(es):
        row = []
        for i, d in enumerate(ds):
            entry = (f[i, j] % e) * d
            if entry % e:
                raise IllDefinedHomError(f"Map is not well defined on Z/{d} -> Z/{e}")
            row.append((entry // e) % d)
        rows.append(row)
    return AbHom.from_rows(target_simple, source_simple, rows)
