"""Isotypic decomposition of the isotropy action and its exact commutant.

The subalgebra h of a catalogued space acts on the complement m by the
bracket.  This module splits m into the joint eigenspaces of the Casimir
operator of that action (refined by squared central generators when h has a
center), annotates every component with its multiplicity data, and solves
exactly for the commutant of the action together with its symmetric part,
which parameterizes all invariant metric endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .embed import CatalogSpace
from .field import ONE, ZERO, Scalar, scalar
from .liealg import (
    LieAlgebra,
    Matrix,
    Subspace,
    Vector,
    centralizer_in,
    eigenspace_in,
    gram_matrix,
    identity_matrix,
    is_positive_definite,
    kernel_basis,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_scale,
    mat_transpose,
    minimal_polynomial,
    normalizer,
    operator_on_subspace,
    rational_roots,
    vec_add,
    vec_scale,
    zero_vector,
)


@dataclass(frozen=True)
class IsotypicComponent:
    """One isotypic piece of the isotropy action on m."""

    subspace: Subspace
    casimir_eigenvalue: Fraction
    refinement: tuple[Fraction, ...]
    multiplicity: int
    irreducible_dim: int
    division_type: str
    commutant_dim: int
    symmetric_commutant_dim: int

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def is_trivial(self) -> bool:
        return self.casimir_eigenvalue == 0 and all(
            r == 0 for r in self.refinement
        )

    @property
    def is_irreducible(self) -> bool:
        return self.multiplicity == 1


@dataclass(frozen=True)
class IsotypicDecomposition:
    """All components of a space, smallest dimension first."""

    space: CatalogSpace
    components: tuple[IsotypicComponent, ...]
    trivial_index: int | None

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.components)

    @property
    def trivial_subspace(self) -> Subspace:
        if self.trivial_index is None:
            return Subspace.zero(self.space.algebra.dim)
        return self.components[self.trivial_index].subspace

    @property
    def invariant_metric_dim(self) -> int:
        return sum(c.symmetric_commutant_dim for c in self.components)


# ---------------------------------------------------------------------------
# the casimir operator of the isotropy action
# ---------------------------------------------------------------------------

def _ad_on(L: LieAlgebra, a: Vector, part: Subspace) -> Matrix:
    return operator_on_subspace(lambda v: L.bracket(a, v), part)


def casimir(space: CatalogSpace) -> Matrix:
    """Casimir of the h-action on m, as a matrix in the basis of m.

    C = sum_ij (G^-1)_ij ad(e_i)|_m ad(e_j)|_m for a basis {e_i} of h and
    G_ij = -form(e_i, e_j).  Exactly symmetric for the invariant form and
    commuting with the action; both are verified before returning.
    """
    L = space.algebra
    G = gram_matrix(L, space.h.rows)
    if not is_positive_definite(G):
        raise ArithmeticError(
            "invariant form is degenerate or not negative definite on h"
        )
    Ginv = mat_inverse(G)
    ads = [_ad_on(L, a, space.m) for a in space.h.rows]
    n = space.m.dim
    C = [[ZERO] * n for _ in range(n)]
    for i, Ai in enumerate(ads):
        for j, Aj in enumerate(ads):
            if Ginv[i][j]:
                C = mat_add(C, mat_scale(Ginv[i][j], mat_mul(Ai, Aj)))
    S = gram_matrix(L, space.m.rows)
    SC = mat_mul(S, C)
    if SC != mat_transpose(SC):
        raise ArithmeticError("casimir is not symmetric for the form")
    for A in ads:
        if mat_mul(C, A) != mat_mul(A, C):
            raise ArithmeticError("casimir does not commute with the action")
    return C


def trivial_component(space: CatalogSpace) -> Subspace:
    """Fixed vectors of h on m, cross-checked against the normalizer.

    Computes the centralizer of h in m and, independently, normalizer(h)
    intersected with m; raises if the two disagree.
    """
    L = space.algebra
    cent = centralizer_in(L, space.h, space.m)
    via_normalizer = normalizer(L, space.h).intersection(space.m)
    if cent != via_normalizer:
        raise ArithmeticError(
            "internal consistency error: centralizer of h in m differs "
            "from normalizer(h) intersected with m"
        )
    return cent


# ---------------------------------------------------------------------------
# commutant solves (per component)
# ---------------------------------------------------------------------------

def _flatten(mat: Matrix, d: int) -> Vector:
    return tuple(mat[i][j] for i in range(d) for j in range(d))

def _unflatten(flat: Vector, d: int) -> Matrix:
    return [[flat[i * d + j] for j in range(d)] for i in range(d)]


def _commuting_operators(ads: list[Matrix], d: int) -> list[Matrix]:
    """Basis of {T : TA = AT for every A in ads}, in component coordinates."""
    rows = []
    for A in ads:
        for i in range(d):
            for j in range(d):
                row = [ZERO] * (d * d)
                for q in range(d):
                    row[i * d + q] = row[i * d + q] + A[q][j]
                for p in range(d):
                    row[p * d + j] = row[p * d + j] - A[i][p]
                if any(row):
                    rows.append(row)
    return [_unflatten(t, d) for t in kernel_basis(rows, d * d)]


def _symmetric_span(mats: list[Matrix], S: Matrix, d: int) -> list[Matrix]:
    """The subspace of span(mats) symmetric with respect to the form S."""
    if not mats:
        return []
    defects = []
    for M in mats:
        SM = mat_mul(S, M)
        defects.append(
            _flatten([[SM[i][j] - SM[j][i] for j in range(d)] for i in range(d)], d)
        )
    rows = [
        [defects[r][pos] for r in range(len(mats))] for pos in range(d * d)
    ]
    out = []
    for coeffs in kernel_basis(rows, len(mats)):
        M = [[ZERO] * d for _ in range(d)]
        for c, T in zip(coeffs, mats):
            if c:
                M = mat_add(M, mat_scale(c, T))
        out.append(M)
    return out


def _multiplicity_annotation(
    dim: int, commutant_dim: int, symmetric_dim: int
) -> tuple[int, int, str]:
    """(multiplicity, irreducible_dim, division_type) from commutant sizes.

    An isotypic component of l equivalent irreducible real submodules with
    endomorphism division algebra D has commutant dimension l^2 dim(D) and
    symmetric part l(l+1)/2, l^2, or l(2l-1) for D = R, C, H respectively.
    The pair determines (l, D) uniquely.
    """
    matches = []
    for dim_d, name in ((1, "R"), (2, "C"), (4, "H")):
        if commutant_dim % dim_d:
            continue
        l = isqrt(commutant_dim // dim_d)
        if l == 0 or l * l * dim_d != commutant_dim:
            continue
        expected = {
            "R": l * (l + 1) // 2,
            "C": l * l,
            "H": l * (2 * l - 1),
        }[name]
        if expected == symmetric_dim and dim % l == 0:
            matches.append((l, dim // l, name))
    if len(matches) != 1:
        raise ArithmeticError(
            f"cannot classify component: dim {dim}, commutant "
            f"{commutant_dim}, symmetric part {symmetric_dim}"
        )
    return matches[0]


# ---------------------------------------------------------------------------
# the decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Analysis:
    decomposition: IsotypicDecomposition
    projections: tuple[Matrix, ...]
    symmetric_basis: tuple[Matrix, ...]
    m_gram: Matrix


_CACHE: dict[str, tuple[CatalogSpace, _Analysis]] = {}


def _split_by_casimir(space: CatalogSpace, C: Matrix) -> list[Subspace]:
    L = space.algebra
    roots = sorted(set(rational_roots(minimal_polynomial(C))))
    pieces = []
    for lam in roots:
        piece = eigenspace_in(L, space.m, C, lam)
        if piece.is_zero():
            raise ArithmeticError("minimal polynomial root with empty eigenspace")
        pieces.append(piece)
    if sum(p.dim for p in pieces) != space.m.dim:
        raise ArithmeticError(
            "casimir eigenspaces do not fill m: an eigenvalue is irrational"
        )
    return pieces


def _refine_by_center(
    space: CatalogSpace, pieces: list[Subspace]
) -> list[tuple[Subspace, tuple[Fraction, ...]]]:
    """Split casimir eigenspaces by the squared action of central elements."""
    L = space.algebra
    center = centralizer_in(L, space.h, space.h)
    tagged: list[tuple[Subspace, tuple[Fraction, ...]]] = [
        (p, ()) for p in pieces
    ]
    for z in center.rows:
        def sq(v, z=z):
            return L.bracket(z, L.bracket(z, v))

        refined = []
        for piece, tags in tagged:
            R = operator_on_subspace(sq, piece)
            for mu in sorted(set(rational_roots(minimal_polynomial(R)))):
                part = eigenspace_in(L, piece, R, mu)
                if not part.is_zero():
                    refined.append((part, tags + (mu,)))
        if sum(p.dim for p, _ in refined) != space.m.dim:
            raise ArithmeticError("central refinement lost dimensions")
        tagged = refined
    return tagged


def _analyze(space: CatalogSpace) -> _Analysis:
    L = space.algebra
    C = casimir(space)

    # eigenvalue of C on each piece, recovered from matrix action
    pieces = _refine_by_center(space, _split_by_casimir(space, C))

    records = []
    for piece, tags in pieces:
        Cp = operator_on_subspace(
            lambda v: _apply_in_m(space, C, v), piece
        )
        lam = _scalar_eigenvalue(Cp)
        ads = [_ad_on(L, a, piece) for a in space.h.rows]
        commuting = _commuting_operators(ads, piece.dim)
        S = gram_matrix(L, piece.rows)
        symmetric = _symmetric_span(commuting, S, piece.dim)
        mult, irr_dim, division = _multiplicity_annotation(
            piece.dim, len(commuting), len(symmetric)
        )
        records.append(
            {
                "piece": piece,
                "lam": lam,
                "tags": tags,
                "mult": mult,
                "irr_dim": irr_dim,
                "division": division,
                "commutant_dim": len(commuting),
                "symmetric": symmetric,
            }
        )

    records.sort(
        key=lambda r: (
            r["piece"].dim,
            -r["lam"],
            tuple(-t for t in r["tags"]),
        )
    )

    components = tuple(
        IsotypicComponent(
            subspace=r["piece"],
            casimir_eigenvalue=r["lam"],
            refinement=r["tags"],
            multiplicity=r["mult"],
            irreducible_dim=r["irr_dim"],
            division_type=r["division"],
            commutant_dim=r["commutant_dim"],
            symmetric_commutant_dim=len(r["symmetric"]),
        )
        for r in records
    )

    # invariants: mutual orthogonality and invariance under the action
    for i, ci in enumerate(components):
        for a in space.h.rows:
            for b in ci.subspace.rows:
                if not ci.subspace.contains(L.bracket(a, b)):
                    raise ArithmeticError("component is not invariant")
        for cj in components[i + 1 :]:
            for b in ci.subspace.rows:
                for b2 in cj.subspace.rows:
                    if L.form_value(b, b2):
                        raise ArithmeticError("components are not orthogonal")

    # the trivial component must be exactly the fixed-vector space
    fixed = trivial_component(space)
    trivial_index: int | None = None
    for i, c in enumerate(components):
        if c.is_trivial:
            if c.subspace != fixed:
                raise ArithmeticError(
                    "internal consistency error: zero-eigenvalue component "
                    "differs from the fixed-vector space"
                )
            trivial_index = i
    if trivial_index is None and not fixed.is_zero():
        raise ArithmeticError(
            "internal consistency error: fixed vectors exist but no "
            "component has zero eigenvalues"
        )

    decomposition = IsotypicDecomposition(
        space=space, components=components, trivial_index=trivial_index
    )

    # adapted-basis change for projections and commutant embedding
    n = space.m.dim
    adapted: list[Vector] = []
    for c in components:
        adapted.extend(c.subspace.rows)
    T = [[ZERO] * n for _ in range(n)]
    for j, vec in enumerate(adapted):
        coords = space.m.coords(vec)
        for i in range(n):
            T[i][j] = coords[i]
    Tinv = mat_inverse(T)

    projections = []
    offset = 0
    for c in components:
        d = c.dim
        block = [[ZERO] * n for _ in range(n)]
        for k in range(d):
            block[offset + k][offset + k] = ONE
        projections.append(mat_mul(mat_mul(T, block), Tinv))
        offset += d

    symmetric_basis = []
    offset = 0
    for r, c in zip(records, components):
        d = c.dim
        for M in r["symmetric"]:
            block = [[ZERO] * n for _ in range(n)]
            for i in range(d):
                for j in range(d):
                    block[offset + i][offset + j] = M[i][j]
            symmetric_basis.append(mat_mul(mat_mul(T, block), Tinv))
        offset += d

    return _Analysis(
        decomposition=decomposition,
        projections=tuple(projections),
        symmetric_basis=tuple(symmetric_basis),
        m_gram=gram_matrix(L, space.m.rows),
    )


def _apply_in_m(space: CatalogSpace, mat_on_m: Matrix, v: Vector) -> Vector:
    """Apply a matrix given in m-coordinates to an ambient vector of m."""
    coords = space.m.coords(v)
    n = space.m.dim
    out_coords = [
        sum((mat_on_m[i][j] * coords[j] for j in range(n) if coords[j]), ZERO)
        for i in range(n)
    ]
    out = zero_vector(space.algebra.dim)
    for c, row in zip(out_coords, space.m.rows):
        if c:
            out = vec_add(out, vec_scale(c, row))
    return out


def _scalar_eigenvalue(op: Matrix) -> Fraction:
    """The single rational eigenvalue of a scalar operator."""
    d = len(op)
    lam = None
    for i in range(d):
        if not op[i][i].is_rational:
            raise ArithmeticError("eigenvalue is irrational")
        if lam is None:
            lam = op[i][i].as_fraction()
        elif op[i][i].as_fraction() != lam:
            raise ArithmeticError("operator is not scalar on the component")
        for j in range(d):
            if i != j and op[i][j]:
                raise ArithmeticError("operator is not scalar on the component")
    return lam


def _analysis(space: CatalogSpace) -> _Analysis:
    key = space.space_id
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is space:
        return hit[1]
    result = _analyze(space)
    _CACHE[key] = (space, result)
    return result


def isotypic_decompose(space: CatalogSpace) -> IsotypicDecomposition:
    """Decompose m into isotypic components of the h-action."""
    return _analysis(space).decomposition


def commutant_symmetric_basis(space: CatalogSpace) -> list[Matrix]:
    """Exact basis, in m-coordinates, of all form-symmetric operators on m
    commuting with the h-action.  Invariant metrics are exactly the positive
    definite combinations of these."""
    return list(_analysis(space).symmetric_basis)


def component_projections(space: CatalogSpace) -> list[Matrix]:
    """Projections onto each isotypic component, in m-coordinates."""
    return list(_analysis(space).projections)


def m_gram(space: CatalogSpace) -> Matrix:
    """Positive definite Gram matrix of -form on the basis of m."""
    return [list(row) for row in _analysis(space).m_gram]


def decomposition_summary(space: CatalogSpace) -> dict:
    """JSON-ready description of the decomposition."""
    dec = isotypic_decompose(space)
    return {
        "space": space.space_id,
        "dim_m": space.dim_m,
        "profile": list(dec.profile),
        "trivial_index": dec.trivial_index,
        "invariant_metric_dim": dec.invariant_metric_dim,
        "components": [
            {
                "dim": c.dim,
                "casimir_eigenvalue": str(c.casimir_eigenvalue),
                "refinement": [str(t) for t in c.refinement],
                "multiplicity": c.multiplicity,
                "irreducible_dim": c.irreducible_dim,
                "irreducible": c.is_irreducible,
                "division_type": c.division_type,
                "commutant_dim": c.commutant_dim,
                "symmetric_commutant_dim": c.symmetric_commutant_dim,
            }
            for c in dec.components
        ],
    }
