"""Finite-dimensional Lie algebras over the exact scalar field.

An algebra is a table of structure constants against a fixed labelled basis.
Elements are coordinate tuples of Scalars.  Subspaces are kept in reduced
row echelon form, which makes span equality, membership, and coordinate
extraction exact and canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .field import ONE, ZERO, Scalar, scalar

Vector = tuple[Scalar, ...]
Matrix = list[list[Scalar]]


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def to_vector(entries: Iterable) -> Vector:
    return tuple(scalar(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vector) -> Vector:
    c = scalar(c)
    return tuple(c * x for x in a)


def is_zero_vector(a: Vector) -> bool:
    return not any(a)


# ---------------------------------------------------------------------------
# exact Gaussian elimination
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form with deterministic first-nonzero pivoting.

    Returns the nonzero rows and their pivot columns.
    """
    work = [list(to_vector(r)) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(work)):
            if work[r][col]:
                sel = r
                break
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [inv * x for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return [tuple(row) for row in work[:rank]], pivots


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Canonical basis of {x : M x = 0} for M given by its rows."""
    rr, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [ZERO] * ncols
        x[free] = ONE
        for i, p in enumerate(pivots):
            x[p] = -rr[i][free]
        basis.append(tuple(x))
    return basis


def solve_columns(
    columns: Sequence[Vector], rhs: Vector
) -> tuple[list[Scalar] | None, int, int]:
    """Solve sum_j x_j * columns[j] = rhs exactly.

    Returns (solution with free variables set to zero, rank of the column
    matrix, rank of the augmented matrix).  The solution is None when the
    system is inconsistent.
    """
    m = len(rhs)
    n = len(columns)
    aug = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    rr, pivots = rref(aug)
    rank_aug = len(rr)
    if n in pivots:
        return None, rank_aug - 1, rank_aug
    x = [ZERO] * n
    for i, p in enumerate(pivots):
        x[p] = rr[i][n]
    return x, rank_aug, rank_aug


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n held as canonical RREF rows."""

    ambient_dim: int
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        vecs = [to_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dim")
        rr, piv = rref(vecs)
        return cls(ambient_dim, tuple(rr), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(
            ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)]
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[Vector, ...]:
        return self.rows

    def is_zero(self) -> bool:
        return not self.rows

    def residual(self, v: Vector) -> Vector:
        """v minus its projection onto the span along pivot coordinates;
        zero exactly when v lies in the subspace."""
        w = list(to_vector(v))
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [x - c * y for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Vector) -> bool:
        return is_zero_vector(self.residual(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords(self, v: Vector) -> list[Scalar]:
        """Coordinates of v against the RREF basis rows."""
        v = to_vector(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Subspace.from_vectors(self.ambient_dim, self.rows + other.rows)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Exact intersection via membership constraints on coordinates."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        # x = sum_t y_t * rows[t]; require residual_other(x) = 0 (linear in y).
        images = [other.residual(r) for r in self.rows]
        constraint_rows = [
            [images[t][c] for t in range(self.dim)]
            for c in range(self.ambient_dim)
        ]
        sols = kernel_basis(constraint_rows, self.dim)
        vectors = []
        for y in sols:
            v = zero_vector(self.ambient_dim)
            for c, row in zip(y, self.rows):
                if c:
                    v = vec_add(v, vec_scale(c, row))
            vectors.append(v)
        return Subspace.from_vectors(self.ambient_dim, vectors)

    def __str__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def span_of(ambient_dim: int, vectors: Iterable) -> Subspace:
    return Subspace.from_vectors(ambient_dim, vectors)


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants against a fixed labelled basis.

    table[i][j] lists (k, c) pairs with [e_i, e_j] = sum c * e_k.
    form is the invariant negative-definite symmetric form used for all
    orthogonality and metric constructions.  killing_scale, when set, is the
    rational ratio between the raw trace form and the stored form.
    """

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[tuple[tuple[int, Scalar], ...], ...], ...]
    form: tuple[Vector, ...]
    killing_scale: Fraction | None = None
    _label_index: dict = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_label_index", {lab: i for i, lab in enumerate(self.labels)}
        )

    @classmethod
    def from_bracket_function(
        cls,
        name: str,
        labels: Sequence[str],
        bracket_fn: Callable[[int, int], dict[int, Scalar]],
        form: Sequence[Sequence],
        killing_scale: Fraction | None = None,
    ) -> "LieAlgebra":
        n = len(labels)
        table = tuple(
            tuple(
                tuple(sorted((k, c) for k, c in bracket_fn(i, j).items() if c))
                for j in range(n)
            )
            for i in range(n)
        )
        form_rows = tuple(to_vector(r) for r in form)
        return cls(name, tuple(labels), table, form_rows, killing_scale)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._label_index[label]

    def basis_vector(self, label_or_index) -> Vector:
        i = (
            label_or_index
            if isinstance(label_or_index, int)
            else self.index(label_or_index)
        )
        return unit_vector(self.dim, i)

    def element(self, coeffs: dict) -> Vector:
        """Build a vector from {label: coefficient}."""
        v = [ZERO] * self.dim
        for lab, c in coeffs.items():
            v[self.index(lab)] = v[self.index(lab)] + scalar(c)
        return tuple(v)

    def describe(self, v: Vector) -> str:
        parts = []
        for i, c in enumerate(v):
            if c:
                parts.append(f"({c})*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    # -- bracket and adjoint ---------------------------------------------

    def bracket(self, v: Vector, w: Vector) -> Vector:
        acc = [ZERO] * self.dim
        for i, a in enumerate(v):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(w):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    acc[k] = acc[k] + ab * c
        return tuple(acc)

    def ad(self, v: Vector) -> Matrix:
        """Matrix of ad(v): column j holds the coordinates of [v, e_j]."""
        n = self.dim
        cols = [self.bracket(v, unit_vector(n, j)) for j in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace_form(self, v: Vector, w: Vector) -> Scalar:
        """Raw trace form tr(ad v . ad w), computed from scratch."""
        a = self.ad(v)
        b = self.ad(w)
        n = self.dim
        total = ZERO
        for i in range(n):
            for j in range(n):
                if a[i][j] and b[j][i]:
                    total = total + a[i][j] * b[j][i]
        return total

    def killing(self, v: Vector, w: Vector) -> Scalar:
        """Trace form, divided by the stored scale when one is known."""
        t = self.trace_form(v, w)
        if self.killing_scale is None:
            return t
        return t * scalar(Fraction(1, 1) / self.killing_scale)

    def form_value(self, v: Vector, w: Vector) -> Scalar:
        total = ZERO
        for i, a in enumerate(v):
            if not a:
                continue
            row = self.form[i]
            for j, b in enumerate(w):
                if b and row[j]:
                    total = total + a * b * row[j]
        return total

    def full_subspace(self) -> Subspace:
        return Subspace.full(self.dim)

    def jacobi_defect(self, u: Vector, v: Vector, w: Vector) -> Vector:
        return vec_add(
            vec_add(
                self.bracket(u, self.bracket(v, w)),
                self.bracket(v, self.bracket(w, u)),
            ),
            self.bracket(w, self.bracket(u, v)),
        )


def bracket(L: LieAlgebra, v: Vector, w: Vector) -> Vector:
    return L.bracket(v, w)


def ad(L: LieAlgebra, v: Vector) -> Matrix:
    return L.ad(v)


def killing(L: LieAlgebra, v: Vector, w: Vector) -> Scalar:
    return L.killing(v, w)


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def su2(prefix: str = "") -> LieAlgebra:
    """The compact three-dimensional algebra with basis iH, F, G and
    relations [iH, F] = 2G, [iH, G] = -2F, [F, G] = 2iH."""
    labels = (f"{prefix}iH", f"{prefix}F", f"{prefix}G")
    two = scalar(2)

    def br(i: int, j: int) -> dict[int, Scalar]:
        if i == j:
            return {}
        if (i, j) == (0, 1):
            return {2: two}
        if (i, j) == (1, 0):
            return {2: -two}
        if (i, j) == (0, 2):
            return {1: -two}
        if (i, j) == (2, 0):
            return {1: two}
        if (i, j) == (1, 2):
            return {0: two}
        return {0: -two}

    m4 = scalar(-4)
    form = [
        [m4 if i == j else ZERO for j in range(3)] for i in range(3)
    ]
    return LieAlgebra.from_bracket_function("su2", labels, br, form, Fraction(2))


def abelian(labels: Sequence[str], form_diagonal: Sequence) -> LieAlgebra:
    n = len(labels)
    diag = [scalar(x) for x in form_diagonal]
    form = [[diag[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    return LieAlgebra.from_bracket_function(
        "abelian", labels, lambda i, j: {}, form, None
    )


def direct_sum(name: str, *parts: LieAlgebra) -> LieAlgebra:
    labels: list[str] = []
    for part in parts:
        labels.extend(part.labels)
    if len(set(labels)) != len(labels):
        raise ValueError("direct sum needs distinct basis labels")
    n = len(labels)
    offsets = []
    off = 0
    for part in parts:
        offsets.append(off)
        off += part.dim

    def br(i: int, j: int) -> dict[int, Scalar]:
        for part, o in zip(parts, offsets):
            if o <= i < o + part.dim and o <= j < o + part.dim:
                return {
                    k + o: c for k, c in part.table[i - o][j - o]
                }
        return {}

    form = [[ZERO] * n for _ in range(n)]
    for part, o in zip(parts, offsets):
        for i in range(part.dim):
            for j in range(part.dim):
                form[o + i][o + j] = part.form[i][j]
    scales = {part.killing_scale for part in parts}
    scale = scales.pop() if len(scales) == 1 else None
    return LieAlgebra.from_bracket_function(name, labels, br, form, scale)


# ---------------------------------------------------------------------------
# structural subspaces
# ---------------------------------------------------------------------------

def centralizer_in(L: LieAlgebra, sub: Subspace, within: Subspace) -> Subspace:
    """{x in `within` : [x, s] = 0 for all s in `sub`}."""
    if within.is_zero():
        return within
    if sub.is_zero():
        return within
    bracket_images = [
        [L.bracket(b, s) for s in sub.rows] for b in within.rows
    ]
    constraint_rows = []
    for s_idx in range(sub.dim):
        for c in range(L.dim):
            constraint_rows.append(
                [bracket_images[t][s_idx][c] for t in range(within.dim)]
            )
    sols = kernel_basis(constraint_rows, within.dim)
    vectors = []
    for y in sols:
        v = zero_vector(L.dim)
        for c, row in zip(y, within.rows):
            if c:
                v = vec_add(v, vec_scale(c, row))
        vectors.append(v)
    return Subspace.from_vectors(L.dim, vectors)


def normalizer(L: LieAlgebra, sub: Subspace) -> Subspace:
    """{x in L : [x, sub] is contained in sub}."""
    if sub.is_zero():
        return L.full_subspace()
    constraint_rows = []
    per_basis_images = [
        [L.bracket(unit_vector(L.dim, i), s) for i in range(L.dim)]
        for s in sub.rows
    ]
    for images in per_basis_images:
        residuals = [sub.residual(img) for img in images]
        for c in range(L.dim):
            constraint_rows.append([residuals[i][c] for i in range(L.dim)])
    sols = kernel_basis(constraint_rows, L.dim)
    return Subspace.from_vectors(L.dim, sols)


def orth_complement(
    L: LieAlgebra, sub: Subspace, within: Subspace | None = None
) -> Subspace:
    """Orthogonal complement under the algebra's stored invariant form."""
    if within is None:
        within = L.full_subspace()
    if sub.is_zero():
        return within
    if within.is_zero():
        return within
    constraint_rows = []
    for s in sub.rows:
        constraint_rows.append(
            [L.form_value(b, s) for b in within.rows]
        )
    sols = kernel_basis(constraint_rows, within.dim)
    vectors = []
    for y in sols:
        v = zero_vector(L.dim)
        for c, row in zip(y, within.rows):
            if c:
                v = vec_add(v, vec_scale(c, row))
        vectors.append(v)
    return Subspace.from_vectors(L.dim, vectors)


def subalgebra_closure(L: LieAlgebra, vectors: Iterable) -> Subspace:
    """Smallest Lie subalgebra containing the given vectors."""
    span = Subspace.from_vectors(L.dim, vectors)
    while True:
        new_vectors = list(span.rows)
        grown = False
        for i, a in enumerate(span.rows):
            for b in span.rows[i:]:
                w = L.bracket(a, b)
                if not span.contains(w):
                    new_vectors.append(w)
                    grown = True
        if not grown:
            return span
        span = Subspace.from_vectors(L.dim, new_vectors)


def _ideal_closure(L: LieAlgebra, algebra: Subspace, v: Vector) -> Subspace:
    """Smallest ideal of the subalgebra `algebra` containing v."""
    span = Subspace.from_vectors(L.dim, [v])
    while True:
        new_vectors = list(span.rows)
        grown = False
        for b in algebra.rows:
            for w in span.rows:
                u = L.bracket(b, w)
                if not span.contains(u):
                    new_vectors.append(u)
                    grown = True
        if not grown:
            return span
        span = Subspace.from_vectors(L.dim, new_vectors)


def _operator_eigen_split(
    L: LieAlgebra, part: Subspace, op_rows: list[list[Scalar]]
) -> list[Subspace]:
    """Split `part` into eigenspaces of an operator given on part's basis."""
    coeffs = minimal_polynomial(op_rows)
    roots = rational_roots(coeffs)
    pieces = []
    d = part.dim
    for lam in sorted(roots):
        shifted = [
            [
                op_rows[i][j] - (scalar(lam) if i == j else ZERO)
                for j in range(d)
            ]
            for i in range(d)
        ]
        vecs = []
        for y in kernel_basis(shifted, d):
            v = zero_vector(L.dim)
            for c, row in zip(y, part.rows):
                if c:
                    v = vec_add(v, vec_scale(c, row))
            vecs.append(v)
        piece = Subspace.from_vectors(L.dim, vecs)
        if not piece.is_zero():
            pieces.append(piece)
    return pieces


def _commutant_split(L: LieAlgebra, derived: Subspace) -> list[Subspace]:
    """Fallback ideal split: simultaneous eigenspaces of the commutant of the
    adjoint action of `derived` on itself."""
    d = derived.dim
    ad_mats = []
    for b in derived.rows:
        cols = [derived.coords(L.bracket(b, w)) for w in derived.rows]
        ad_mats.append([[cols[j][i] for j in range(d)] for i in range(d)])
    # Unknown T is d x d; require T A = A T for all A.
    constraint_rows = []
    for A in ad_mats:
        for i in range(d):
            for j in range(d):
                row = [ZERO] * (d * d)
                for k in range(d):
                    # (T A)_{ij} gets T_{ik} A_{kj}; (A T)_{ij} gets A_{ik} T_{kj}
                    row[i * d + k] = row[i * d + k] + A[k][j]
                    row[k * d + j] = row[k * d + j] - A[i][k]
                constraint_rows.append(row)
    parts = [derived]
    for t_flat in kernel_basis(constraint_rows, d * d):
        t_rows = [
            [t_flat[i * d + j] for j in range(d)] for i in range(d)
        ]
        refined: list[Subspace] = []
        for part in parts:
            if part.dim <= 1:
                refined.append(part)
                continue
            # Restrict T to the part (T preserves it: it commutes with the
            # action and the part is a sum of ideals).
            pd = part.dim
            cols = []
            for w in part.rows:
                img = zero_vector(L.dim)
                coords_w = derived.coords(w)
                for i in range(d):
                    acc = ZERO
                    for j in range(d):
                        if t_rows[i][j] and coords_w[j]:
                            acc = acc + t_rows[i][j] * coords_w[j]
                    if acc:
                        img = vec_add(img, vec_scale(acc, derived.rows[i]))
                cols.append(part.coords(img))
            op = [[cols[j][i] for j in range(pd)] for i in range(pd)]
            refined.extend(_operator_eigen_split(L, part, op))
        parts = refined
    return parts


def _split_semisimple(L: LieAlgebra, derived: Subspace) -> list[Subspace]:
    if derived.is_zero():
        return []
    for v in derived.rows:
        ideal = _ideal_closure(L, derived, v)
        if ideal.dim < derived.dim:
            comp = orth_complement(L, ideal, within=derived)
            if ideal.dim + comp.dim != derived.dim:
                raise ArithmeticError(
                    "orthogonal complement of an ideal has unexpected dimension"
                )
            return _split_semisimple(L, ideal) + _split_semisimple(L, comp)
    # Every basis vector generates the whole space: either simple, or an
    # unlucky basis; decide with the commutant.
    parts = _commutant_split(L, derived)
    if len(parts) == 1:
        return parts
    out = []
    for p in parts:
        out.extend(_split_semisimple(L, p))
    return out


def ideal_decomposition(
    L: LieAlgebra, sub: Subspace | None = None
) -> tuple[Subspace, list[Subspace]]:
    """Split a compact subalgebra into its center and simple ideals.

    Returns (center, [simple ideals]), ideals sorted by dimension then by
    their RREF rows for determinism.
    """
    S = sub if sub is not None else L.full_subspace()
    center = centralizer_in(L, S, S)
    derived_vectors = []
    for i, a in enumerate(S.rows):
        for b in S.rows[i + 1:]:
            derived_vectors.append(L.bracket(a, b))
    derived = Subspace.from_vectors(L.dim, derived_vectors)
    if center.dim + derived.dim != S.dim:
        raise ArithmeticError(
            "center and derived subalgebra do not complement; "
            "the subalgebra is not compact-reductive"
        )
    ideals = _split_semisimple(L, derived)
    ideals.sort(key=lambda p: (p.dim, [str(x) for r in p.rows for x in r]))
    return center, ideals


# ---------------------------------------------------------------------------
# operators on subspaces, minimal polynomials, rational spectra
# ---------------------------------------------------------------------------

def operator_on_subspace(
    apply_fn: Callable[[Vector], Vector], sub: Subspace
) -> list[list[Scalar]]:
    """Matrix (in sub's basis) of a linear map that preserves sub."""
    cols = [sub.coords(apply_fn(b)) for b in sub.rows]
    d = sub.dim
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    inner_dim = len(b)
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        for k in range(inner_dim):
            if not a[i][k]:
                continue
            aik = a[i][k]
            for j in range(m):
                if b[k][j]:
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def identity_matrix(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    c = scalar(c)
    return [[c * x for x in row] for row in a]


def mat_transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_apply(a: Matrix, v: Vector) -> Vector:
    return tuple(
        sum((row[j] * v[j] for j in range(len(v)) if v[j]), ZERO) for row in a
    )


def mat_inverse(mat: Matrix) -> Matrix:
    """Exact inverse; raises ArithmeticError when the matrix is singular."""
    n = len(mat)
    augmented = [
        tuple(mat[i]) + unit_vector(n, i) for i in range(n)
    ]
    rows, pivots = rref(augmented)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix is not invertible")
    return [[rows[i][n + j] for j in range(n)] for i in range(n)]


def gram_matrix(L: LieAlgebra, vectors: Sequence[Vector]) -> Matrix:
    """Gram matrix of -form on the given vectors (positive definite when
    the vectors are independent, since the stored form is negative definite)."""
    return [[-L.form_value(v, w) for w in vectors] for v in vectors]


def is_positive_definite(mat: Matrix) -> bool:
    """Exact Sylvester test via Gaussian pivots of a symmetric matrix."""
    n = len(mat)
    work = [list(row) for row in mat]
    for k in range(n):
        piv = work[k][k]
        if piv.sign() <= 0:
            return False
        for i in range(k + 1, n):
            if work[i][k]:
                factor = work[i][k] / piv
                for j in range(k, n):
                    work[i][j] = work[i][j] - factor * work[k][j]
    return True


def minimal_polynomial(op: Matrix) -> list[Fraction]:
    """Monic minimal polynomial of a square matrix, low degree first.

    Uses flattened Krylov powers.  Raises if any coefficient is irrational.
    """
    n = len(op)
    power = identity_matrix(n)
    flats: list[Vector] = []
    while True:
        flat = tuple(power[i][j] for i in range(n) for j in range(n))
        sol, _, _ = solve_columns(flats, flat)
        if sol is not None:
            coeffs = [-c for c in sol] + [ONE]
            out = []
            for c in coeffs:
                if not c.is_rational:
                    raise ArithmeticError(
                        "minimal polynomial has an irrational coefficient"
                    )
                out.append(c.as_fraction())
            return out
        flats.append(flat)
        power = mat_mul(power, op)
        if len(flats) > n + 1:  # pragma: no cover - cannot happen
            raise ArithmeticError("minimal polynomial search did not terminate")


def rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All roots of a monic rational polynomial that factors into rational
    linear pieces; raises otherwise.  Roots are listed with multiplicity."""
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    # Clear denominators to integers.
    den = 1
    for q in coeffs:
        den = den * q.denominator // _gcd(den, q.denominator)
    poly = [int(q * den) for q in coeffs]
    roots: list[Fraction] = []
    while len(poly) > 1:
        if all(c == 0 for c in poly[:-1]):
            roots.extend([Fraction(0)] * (len(poly) - 1))
            break
        # Strip factors of x.
        if poly[0] == 0:
            poly = poly[1:]
            roots.append(Fraction(0))
            continue
        lead, const = poly[-1], poly[0]
        found = None
        for p in _divisors(abs(const)):
            for q in _divisors(abs(lead)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(poly, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise ArithmeticError(
                "polynomial does not split into rational linear factors"
            )
        roots.append(found)
        poly = _deflate(poly, found)
    return sorted(roots)


def eigenspace_in(
    L: LieAlgebra, part: Subspace, op: Matrix, lam: Fraction
) -> Subspace:
    """Kernel of (op - lam) inside `part`, with op given on part's basis."""
    d = part.dim
    lam_s = scalar(lam)
    shifted = [
        [op[i][j] - (lam_s if i == j else ZERO) for j in range(d)]
        for i in range(d)
    ]
    vecs = []
    for y in kernel_basis(shifted, d):
        v = zero_vector(L.dim)
        for c, row in zip(y, part.rows):
            if c:
                v = vec_add(v, vec_scale(c, row))
        vecs.append(v)
    return Subspace.from_vectors(L.dim, vecs)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _poly_eval(poly: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _deflate(poly: list[int], root: Fraction) -> list[int]:
    """Divide an integer polynomial by (x - root), root = p/q exact."""
    # Synthetic division by (q x - p) then renormalize: poly = (x - p/q) * g.
    out: list[Fraction] = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for i in range(len(poly) - 1, 0, -1):
        carry = Fraction(poly[i]) + carry
        out[i - 1] = carry
        carry = carry * root
    # Remainder check.
    if Fraction(poly[0]) + carry != 0:
        raise ArithmeticError("deflation by a non-root")
    den = 1
    for q in out:
        den = den * q.denominator // _gcd(den, q.denominator)
    ints = [int(q * den) for q in out]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints
