"""Tests for the isotypic decomposition and the equivariant commutant."""

import json
from fractions import Fraction

import pytest

from rank2go.embed import CATALOG_IDS, catalog_space
from rank2go.field import ZERO
from rank2go.isotypic import (
    casimir,
    commutant_symmetric_basis,
    component_projections,
    decomposition_summary,
    isotypic_decompose,
    m_gram,
    trivial_component,
)
from rank2go.liealg import (
    Subspace,
    abelian,
    centralizer_in,
    eigenspace_in,
    kernel_basis,
    mat_mul,
    mat_transpose,
    minimal_polynomial,
    operator_on_subspace,
    rational_roots,
    solve_columns,
    subalgebra_closure,
)
from rank2go.embed import CatalogSpace

# Frozen expectations, one tuple per component in decomposition order:
# (dim, casimir eigenvalue, refinement, multiplicity, irreducible_dim,
#  division_type, commutant_dim, symmetric_commutant_dim).
#
# Every casimir eigenvalue below was re-derived by hand from the trace
# identity: on an isotypic block of a normalized su(2) triple (u, v, w) with
# -form(u,u) = g, the Casimir acts by 3 * tr(ad(w)^2 | block) / (g * dim),
# and tr(ad(w)^2) is minus the sum of squared integer weights.  For spaces
# whose h has a center the central charge contributes ad(z)^2 / (-form(z,z)).
F = Fraction
EXPECTED_COMPONENTS = {
    "a2.1": (
        (1, F(0), (), 1, 1, "R", 1, 1),
        (4, F(-3, 4), (), 1, 4, "H", 4, 1),
    ),
    "a2.2": ((5, F(-3, 2), (), 1, 5, "R", 1, 1),),
    "a1a1.1": ((3, F(0), (), 3, 1, "R", 9, 6),),
    "a1a1.2": ((3, F(0), (), 3, 1, "R", 9, 6),),
    "a1a1.3": ((3, F(-1), (), 1, 3, "R", 1, 1),),
    "c2.1": (
        (3, F(0), (), 3, 1, "R", 9, 6),
        (4, F(-3, 4), (), 1, 4, "H", 4, 1),
    ),
    "c2.2": (
        (1, F(0), (), 1, 1, "R", 1, 1),
        (6, F(-1), (), 2, 3, "R", 4, 3),
    ),
    "c2.3": ((7, F(-6, 5), (), 1, 7, "R", 1, 1),),
    "g2.1": (
        (3, F(0), (), 3, 1, "R", 9, 6),
        (8, F(-15, 4), (), 1, 8, "H", 4, 1),
    ),
    "g2.2": (
        (3, F(0), (), 3, 1, "R", 9, 6),
        (8, F(-9, 4), (), 2, 4, "H", 16, 6),
    ),
    "g2.3": (
        (5, F(-9, 2), (), 1, 5, "R", 1, 1),
        (6, F(-3, 2), (), 2, 3, "R", 4, 3),
    ),
    "g2.4": ((11, F(-45, 14), (), 1, 11, "R", 1, 1),),
    "berger": (
        (1, F(0), (F(0),), 1, 1, "R", 1, 1),
        (2, F(-1, 2), (F(-4),), 1, 2, "C", 2, 1),
    ),
    "cp3": (
        (2, F(-1), (F(-4),), 1, 2, "C", 2, 1),
        (4, F(-1), (F(-1),), 1, 4, "C", 2, 1),
    ),
}

EXPECTED_TRIVIAL_INDEX = {
    "a2.1": 0, "a2.2": None,
    "a1a1.1": 0, "a1a1.2": 0, "a1a1.3": None,
    "c2.1": 0, "c2.2": 0, "c2.3": None,
    "g2.1": 0, "g2.2": 0, "g2.3": None, "g2.4": None,
    "berger": 0, "cp3": None,
}


@pytest.mark.parametrize("space_id", CATALOG_IDS)
def test_component_data_matches_frozen_expectations(space_id):
    dec = isotypic_decompose(catalog_space(space_id))
    got = tuple(
        (
            c.dim,
            c.casimir_eigenvalue,
            c.refinement,
            c.multiplicity,
            c.irreducible_dim,
            c.division_type,
            c.commutant_dim,
            c.symmetric_commutant_dim,
        )
        for c in dec.components
    )
    assert got == EXPECTED_COMPONENTS[space_id]
    assert dec.trivial_index == EXPECTED_TRIVIAL_INDEX[space_id]
    assert sum(c.dim for c in dec.components) == catalog_space(space_id).dim_m


@pytest.mark.parametrize("space_id", CATALOG_IDS)
def test_components_orthogonal_invariant_and_exhaustive(space_id):
    sp = catalog_space(space_id)
    dec = isotypic_decompose(sp)
    L = sp.algebra
    total = Subspace.zero(L.dim)
    for c in dec.components:
        total = total.add(c.subspace)
        assert sp.m.contains_subspace(c.subspace)
        for a in sp.h.rows:
            for b in c.subspace.rows:
                assert c.subspace.contains(L.bracket(a, b))
    assert total == sp.m
    for i, ci in enumerate(dec.components):
        for cj in dec.components[i + 1:]:
            for x in ci.subspace.rows:
                for y in cj.subspace.rows:
                    assert not L.form_value(x, y)


def test_exact_component_spans():
    # a2.1: the fixed line and the sum of the two simple root spaces.
    sp = catalog_space("a2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == Subspace.from_vectors(
        cf.dim, [cf.algebra.element({"iH[a]": 1, "iH[b]": -1})]
    )
    assert dec.components[1].subspace == cf.root_space((1, 0)).add(
        cf.root_space((0, 1))
    )

    # c2.1: fixed part is a 3-dim subalgebra, the rest is 4-dim.
    sp = catalog_space("c2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    expected_p = Subspace.from_vectors(
        cf.dim,
        [cf.algebra.basis_vector("iH[a]")] + list(cf.root_space((1, 0)).rows),
    )
    assert dec.components[0].subspace == expected_p
    assert subalgebra_closure(cf.algebra, expected_p.rows) == expected_p
    assert dec.components[1].subspace == cf.root_space((0, 1)).add(
        cf.root_space((1, 1))
    )

    # c2.2: fixed line along the short simple coroot; 6-dim remainder.
    sp = catalog_space("c2.2")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == Subspace.from_vectors(
        cf.dim, [cf.algebra.basis_vector("iH[b]")]
    )
    assert dec.components[1].subspace == (
        cf.root_space((1, 0)).add(cf.root_space((0, 1))).add(cf.root_space((1, 2)))
    )

    # g2.1 and g2.2: trivial components along the orthogonal long/short root.
    sp = catalog_space("g2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == Subspace.from_vectors(
        cf.dim,
        [cf.ih_vector((3, 2))] + list(cf.root_space((3, 2)).rows),
    )
    sp = catalog_space("g2.2")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == Subspace.from_vectors(
        cf.dim,
        [cf.ih_vector((2, 1))] + list(cf.root_space((2, 1)).rows),
    )

    # g2.3: 5-dim piece spanned by the anti-balanced partner triple plus the
    # (3,1) root space; 6-dim piece from the three remaining root spaces.
    sp = catalog_space("g2.3")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    from rank2go.field import SQRT2
    from rank2go.liealg import vec_add, vec_scale

    partner = [
        vec_add(
            vec_scale(SQRT2, cf.f_vector((3, 2))),
            vec_scale(SQRT2, cf.f_vector((0, 1))),
        ),
        vec_add(
            vec_scale(SQRT2, cf.g_vector((3, 2))),
            vec_scale(-SQRT2, cf.g_vector((0, 1))),
        ),
        cf.ih_vector((1, 1), 2),
    ]
    expected_5 = Subspace.from_vectors(
        cf.dim, partner + list(cf.root_space((3, 1)).rows)
    )
    assert dec.components[0].subspace == expected_5
    assert dec.components[1].subspace == (
        cf.root_space((1, 0)).add(cf.root_space((1, 1))).add(cf.root_space((2, 1)))
    )

    # cp3: fiber root space, then the two remaining root spaces.
    sp = catalog_space("cp3")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == cf.root_space((1, 0))
    assert dec.components[1].subspace == cf.root_space((0, 1)).add(
        cf.root_space((1, 1))
    )

    # berger: fixed line and the rotating plane.
    sp = catalog_space("berger")
    L = sp.algebra
    dec = isotypic_decompose(sp)
    assert dec.components[0].subspace == Subspace.from_vectors(
        L.dim, [L.element({"iH": 1, "Z": -1})]
    )
    assert dec.components[1].subspace == Subspace.from_vectors(
        L.dim, [L.basis_vector("F"), L.basis_vector("G")]
    )


@pytest.mark.parametrize("space_id", CATALOG_IDS)
def test_casimir_commutes_is_symmetric_and_kills_fixed_vectors(space_id):
    sp = catalog_space(space_id)
    L = sp.algebra
    C = casimir(sp)
    S = [[-L.form_value(v, w) for w in sp.m.rows] for v in sp.m.rows]
    SC = mat_mul(S, C)
    assert SC == mat_transpose(SC)
    for a in sp.h.rows:
        A = operator_on_subspace(lambda v: L.bracket(a, v), sp.m)
        assert mat_mul(C, A) == mat_mul(A, C)
    fixed = centralizer_in(L, sp.h, sp.m)
    for v in fixed.rows:
        coords = sp.m.coords(v)
        n = sp.m.dim
        image = [
            sum((C[i][j] * coords[j] for j in range(n) if coords[j]), ZERO)
            for i in range(n)
        ]
        assert not any(image)


def test_casimir_distinct_eigenvalue_counts():
    C = casimir(catalog_space("c2.1"))
    roots = set(rational_roots(minimal_polynomial(C)))
    assert len(roots) == 2
    C = casimir(catalog_space("g2.3"))
    roots = sorted(set(rational_roots(minimal_polynomial(C))))
    assert len(roots) == 2
    dims = [
        eigenspace_in(
            catalog_space("g2.3").algebra, catalog_space("g2.3").m, C, lam
        ).dim
        for lam in roots
    ]
    assert sorted(dims) == [5, 6]


def test_casimir_rejects_non_negative_definite_form():
    L = abelian(("X",), (4,))  # positive form: -form is not positive definite
    bad = CatalogSpace(
        space_id="bad-form",
        description="synthetic space with a positive form on h",
        algebra=L,
        h=Subspace.full(1),
        m=Subspace.zero(1),
    )
    with pytest.raises(ArithmeticError):
        casimir(bad)


@pytest.mark.parametrize("space_id", CATALOG_IDS)
def test_trivial_component_three_ways(space_id):
    sp = catalog_space(space_id)
    fixed = trivial_component(sp)
    assert fixed == centralizer_in(sp.algebra, sp.h, sp.m)
    dec = isotypic_decompose(sp)
    assert fixed == dec.trivial_subspace


@pytest.mark.parametrize("space_id", CATALOG_IDS)
def test_commutant_basis_is_symmetric_equivariant_and_blockwise(space_id):
    sp = catalog_space(space_id)
    L = sp.algebra
    basis = commutant_symmetric_basis(sp)
    dec = isotypic_decompose(sp)
    assert len(basis) == dec.invariant_metric_dim
    S = m_gram(sp)
    ads = [
        operator_on_subspace(lambda v, a=a: L.bracket(a, v), sp.m)
        for a in sp.h.rows
    ]
    projections = component_projections(sp)
    n = sp.dim_m
    psum = [[ZERO] * n for _ in range(n)]
    for P in projections:
        assert mat_mul(P, P) == P
        psum = [[psum[i][j] + P[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert psum[i][j] == (1 if i == j else 0)
    for B in basis:
        SB = mat_mul(S, B)
        assert SB == mat_transpose(SB)
        for A in ads:
            assert mat_mul(B, A) == mat_mul(A, B)
        for k, Pk in enumerate(projections):
            for l, Pl in enumerate(projections):
                if k != l:
                    prod = mat_mul(mat_mul(Pk, B), Pl)
                    assert all(not x for row in prod for x in row)


@pytest.mark.parametrize(
    "space_id",
    [sid for sid in CATALOG_IDS if catalog_space(sid).dim_m <= 7],
)
def test_commutant_against_naive_full_solve(space_id):
    # Independent oracle: solve the full symmetric-commutant system on m in
    # one shot, with no component knowledge, and compare with the blockwise
    # basis.
    sp = catalog_space(space_id)
    L = sp.algebra
    n = sp.dim_m
    ads = [
        operator_on_subspace(lambda v, a=a: L.bracket(a, v), sp.m)
        for a in sp.h.rows
    ]
    S = m_gram(sp)
    rows = []
    for A in ads:
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for q in range(n):
                    row[i * n + q] = row[i * n + q] + A[q][j]
                for p in range(n):
                    row[p * n + j] = row[p * n + j] - A[i][p]
                rows.append(row)
    # symmetry of S*T: for i < j require (S T)[i][j] - (S T)[j][i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            row = [ZERO] * (n * n)
            for q in range(n):
                row[q * n + j] = row[q * n + j] + S[i][q]
            for q in range(n):
                row[q * n + i] = row[q * n + i] - S[j][q]
            rows.append(row)
    naive = kernel_basis(rows, n * n)
    blockwise = commutant_symmetric_basis(sp)
    assert len(naive) == len(blockwise)
    flat_cols = [
        tuple(B[i][j] for i in range(n) for j in range(n)) for B in blockwise
    ]
    for t in naive:
        sol, _, _ = solve_columns(flat_cols, tuple(t))
        assert sol is not None


@pytest.mark.parametrize("space_id", ["c2.2", "g2.3"])
def test_multiplicity_two_blocks_split_into_equivalent_submodules(space_id):
    # The six-dimensional blocks contain two equivalent three-dimensional
    # submodules; exhibit a proper invariant submodule by eigen-splitting a
    # non-scalar commutant element.
    sp = catalog_space(space_id)
    L = sp.algebra
    dec = isotypic_decompose(sp)
    comp = dec.components[-1]
    assert comp.dim == 6 and comp.multiplicity == 2
    ads = [
        operator_on_subspace(lambda v, a=a: L.bracket(a, v), comp.subspace)
        for a in sp.h.rows
    ]
    d = comp.dim
    rows = []
    for A in ads:
        for i in range(d):
            for j in range(d):
                row = [ZERO] * (d * d)
                for q in range(d):
                    row[i * d + q] = row[i * d + q] + A[q][j]
                for p in range(d):
                    row[p * d + j] = row[p * d + j] - A[i][p]
                rows.append(row)
    found_proper_submodule = False
    for t in kernel_basis(rows, d * d):
        T = [[t[i * d + j] for j in range(d)] for i in range(d)]
        try:
            lams = sorted(set(rational_roots(minimal_polynomial(T))))
        except ArithmeticError:
            continue
        if len(lams) < 2:
            continue
        part = eigenspace_in(L, comp.subspace, T, lams[0])
        if 0 < part.dim < d:
            for a in sp.h.rows:
                for b in part.rows:
                    assert part.contains(L.bracket(a, b))
            found_proper_submodule = True
            break
    assert found_proper_submodule


def test_summary_is_json_ready():
    for space_id in ("a2.1", "g2.2", "cp3", "berger"):
        summary = decomposition_summary(catalog_space(space_id))
        text = json.dumps(summary, sort_keys=True)
        assert json.loads(text) == summary
        assert summary["profile"] == [
            c[0] for c in EXPECTED_COMPONENTS[space_id]
        ]
        assert summary["invariant_metric_dim"] == sum(
            c[7] for c in EXPECTED_COMPONENTS[space_id]
        )
