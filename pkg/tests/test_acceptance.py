"""Acceptance suite: nine criteria, one test per criterion.

Each test is self-contained and asserts the full stated requirement,
including the stated time bounds.  The terminal summary prints one
pass/fail line per criterion (see conftest.py).
"""

import json
import random
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner

from rank2go.chevalley import build_compact_form
from rank2go.cli import main
from rank2go.embed import (
    CATALOG_IDS,
    ROW_IDS,
    catalog_space,
    compactify_sl2_triple,
    sl2_triple_for_row,
    su2_embedding_space,
)
from rank2go.field import ZERO, parse_scalar, scalar
from rank2go.gocheck import (
    Witness,
    biinvariance_filter,
    explicit_metric,
    fibration_metric,
    find_witness,
    go_sample_check,
    metric_from_blocks,
    normalizer_filter,
    standard_metric,
    verify_witness,
)
from rank2go.isotypic import isotypic_decompose
from rank2go.liealg import (
    Subspace,
    centralizer_in,
    gram_matrix,
    is_positive_definite,
    mat_inverse,
    mat_mul,
    normalizer,
    orth_complement,
    subalgebra_closure,
    vec_add,
    vec_scale,
)
from rank2go.rootsys import inner, parse_root


def test_criterion_1_compact_algebras():
    start = time.perf_counter()
    build_compact_form.cache_clear()
    expected_dims = {"a2": 8, "a1a1": 6, "c2": 10, "g2": 14}
    for family, dim in expected_dims.items():
        cf = build_compact_form(family)
        L = cf.algebra
        assert L.dim == dim
        basis = [L.basis_vector(i) for i in range(dim)]
        for u in basis:
            for v in basis:
                for w in basis:
                    assert not any(L.jacobi_defect(u, v, w))
        rs = cf.root_system
        long_norm = max(inner(rs, g, g) for g in rs.positive_roots)
        for i, label in enumerate(L.labels):
            if label.startswith("iH["):
                root = parse_root(label[3:-1])
            else:
                root = parse_root(label[2:-1])
            norm = inner(rs, root, root)
            if family == "a2":
                expected = Fraction(-4)
            elif family == "a1a1":
                expected = Fraction(-4)
            elif family == "c2":
                expected = Fraction(-4) if norm == long_norm else Fraction(-8)
            else:
                expected = Fraction(-4, 3) if norm == long_norm else Fraction(-4)
            assert L.form[i][i] == expected, (family, label)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"construction and checks took {elapsed:.2f}s"


def test_criterion_2_catalog_rows():
    for row in range(1, len(ROW_IDS) + 1):
        sp = su2_embedding_space(row)
        L = sp.algebra
        h = sp.h
        assert h.dim == 3
        assert subalgebra_closure(L, h.rows) == h
        assert is_positive_definite(gram_matrix(L, h.rows))
        brackets = [L.bracket(a, b) for a in h.rows for b in h.rows]
        assert Subspace.from_vectors(L.dim, brackets) == h
        assert sp.m == orth_complement(L, h)
        for a in h.rows:
            for x in sp.m.rows:
                assert sp.m.contains(L.bracket(a, x))
        cf, e, f, hh = sl2_triple_for_row(row)
        u, v, w = compactify_sl2_triple(cf, e, f, hh)
        assert Subspace.from_vectors(L.dim, [u, v, w]) == h


def test_criterion_3_isotypic_profiles_and_spans():
    failures = []

    def check(cond, message):
        if not cond:
            failures.append(message)

    # a2.1: profile (1, 4) with exact spans.
    sp = catalog_space("a2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    check(dec.profile == (1, 4), "a2.1 profile is not (1, 4)")
    check(
        dec.components[0].subspace
        == Subspace.from_vectors(
            cf.dim, [cf.algebra.element({"iH[a]": 1, "iH[b]": -1})]
        ),
        "a2.1 fixed line is not the stated span",
    )
    check(
        dec.components[1].subspace
        == cf.root_space((1, 0)).add(cf.root_space((0, 1))),
        "a2.1 4-dim component is not the stated span",
    )

    # a2.2: one 5-dim irreducible component.
    dec = isotypic_decompose(catalog_space("a2.2"))
    check(
        dec.profile == (5,) and dec.components[0].is_irreducible,
        "a2.2 is not a single 5-dim irreducible component",
    )

    # a1a1.3: one 3-dim irreducible component.
    dec = isotypic_decompose(catalog_space("a1a1.3"))
    check(
        dec.profile == (3,) and dec.components[0].is_irreducible,
        "a1a1.3 is not a single 3-dim irreducible component",
    )

    # c2.1: 3-dim fixed subalgebra of su(2) type plus 4-dim irreducible.
    sp = catalog_space("c2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    check(dec.profile == (3, 4), "c2.1 profile is not (3, 4)")
    p = dec.components[0].subspace
    expected_p = Subspace.from_vectors(
        cf.dim,
        [cf.algebra.basis_vector("iH[a]")] + list(cf.root_space((1, 0)).rows),
    )
    check(p == expected_p, "c2.1 fixed part is not the stated span")
    check(
        subalgebra_closure(sp.algebra, p.rows) == p,
        "c2.1 fixed part is not closed",
    )
    bracket_span = Subspace.from_vectors(
        sp.algebra.dim,
        [sp.algebra.bracket(a, b) for a in p.rows for b in p.rows],
    )
    check(
        bracket_span == p,
        "c2.1 fixed part is not of su(2) type (derived algebra is smaller)",
    )
    check(
        dec.components[1].is_irreducible,
        "c2.1 4-dim component is not irreducible",
    )
    check(
        dec.components[1].subspace
        == cf.root_space((0, 1)).add(cf.root_space((1, 1))),
        "c2.1 4-dim component is not the stated span",
    )

    # c2.2: profile (1, 6), both components irreducible.
    dec = isotypic_decompose(catalog_space("c2.2"))
    check(dec.profile == (1, 6), "c2.2 profile is not (1, 6)")
    check(
        dec.components[0].is_irreducible,
        "c2.2 1-dim component is not irreducible",
    )
    check(
        dec.components[1].is_irreducible,
        "c2.2 6-dim component is not irreducible "
        f"(multiplicity {dec.components[1].multiplicity})",
    )

    # c2.3: one 7-dim irreducible component.
    dec = isotypic_decompose(catalog_space("c2.3"))
    check(
        dec.profile == (7,) and dec.components[0].is_irreducible,
        "c2.3 is not a single 7-dim irreducible component",
    )

    # g2.1, g2.2: exact fixed-part spans.
    sp = catalog_space("g2.1")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    check(
        dec.trivial_subspace
        == Subspace.from_vectors(
            cf.dim, [cf.ih_vector((3, 2))] + list(cf.root_space((3, 2)).rows)
        ),
        "g2.1 fixed part is not the stated span",
    )
    sp = catalog_space("g2.2")
    cf = sp.compact
    dec = isotypic_decompose(sp)
    check(
        dec.trivial_subspace
        == Subspace.from_vectors(
            cf.dim, [cf.ih_vector((2, 1))] + list(cf.root_space((2, 1)).rows)
        ),
        "g2.2 fixed part is not the stated span",
    )

    # g2.3: profile (5, 6), both components irreducible.
    dec = isotypic_decompose(catalog_space("g2.3"))
    check(dec.profile == (5, 6), "g2.3 profile is not (5, 6)")
    check(
        dec.components[0].is_irreducible,
        "g2.3 5-dim component is not irreducible",
    )
    check(
        dec.components[1].is_irreducible,
        "g2.3 6-dim component is not irreducible "
        f"(multiplicity {dec.components[1].multiplicity})",
    )

    # g2.4: one 11-dim irreducible component.
    dec = isotypic_decompose(catalog_space("g2.4"))
    check(
        dec.profile == (11,) and dec.components[0].is_irreducible,
        "g2.4 is not a single 11-dim irreducible component",
    )

    assert not failures, "; ".join(failures)


def test_criterion_4_centralizer_equals_normalizer_in_m():
    for space_id in CATALOG_IDS:
        sp = catalog_space(space_id)
        L = sp.algebra
        fixed = centralizer_in(L, sp.h, sp.m)
        assert fixed == normalizer(L, sp.h).intersection(sp.m), space_id


@pytest.fixture(scope="module")
def sampled_pool():
    start = time.perf_counter()
    results = {}
    for space_id in CATALOG_IDS:
        sp = catalog_space(space_id)
        metric = standard_metric(sp)
        results[(space_id, "standard")] = (
            sp,
            metric,
            go_sample_check(sp, metric, samples=200, seed=42),
        )
    for space_id in ("a2.1", "c2.1", "cp3", "berger"):
        sp = catalog_space(space_id)
        for lam_text in ("1/3", "1/2", "2", "5"):
            metric = fibration_metric(sp, "hopf", parse_scalar(lam_text))
            results[(space_id, f"fib:hopf:{lam_text}")] = (
                sp,
                metric,
                go_sample_check(sp, metric, samples=200, seed=42),
            )
    return results, time.perf_counter() - start


def test_criterion_5_sampling_standard_and_scaled_families(sampled_pool):
    results, elapsed = sampled_pool
    assert len(results) == len(CATALOG_IDS) + 16
    for key, (_sp, _metric, verdict) in results.items():
        assert verdict.status == "go_sampled", key
        assert verdict.seed == 42
        assert verdict.samples_run >= 200
    assert elapsed < 120.0, f"sampling took {elapsed:.1f}s"


def test_criterion_6_refutations_with_replayable_witnesses():
    cases = [
        ("c2.2", (2, 1)),
        ("g2.1", (2, 1)),
        ("g2.2", (3, 1)),
        ("g2.3", (2, 1)),
    ]
    for space_id, coeffs in cases:
        sp = catalog_space(space_id)
        metric = metric_from_blocks(sp, coeffs)
        verdict = find_witness(sp, metric, budget=50, seed=42)
        assert verdict.status == "not_go_certified", space_id
        assert verdict.samples_run <= 50, space_id
        blob = json.dumps(verdict.to_dict(), sort_keys=True)
        witness = Witness.from_dict(json.loads(blob)["witness"])
        assert witness.rank_augmented == witness.rank_map + 1
        assert verify_witness(sp, metric, witness), space_id


def test_criterion_7_filters(sampled_pool):
    # Part 1: every non-scalar operator on the fixed su(2) part of c2.1 is
    # rejected by the bi-invariance filter.
    sp = catalog_space("c2.1")
    dec = isotypic_decompose(sp)
    p = dec.trivial_subspace
    rest = [
        r
        for comp in dec.components
        if not comp.is_trivial
        for r in comp.subspace.rows
    ]
    cols = [sp.m.coords(v) for v in list(p.rows) + rest]
    n = sp.dim_m
    T = [[cols[j][i] for j in range(n)] for i in range(n)]
    Tinv = mat_inverse(T)

    def fixed_part_metric(p_matrix):
        diag = [[ZERO] * n for _ in range(n)]
        for i in range(3):
            for j in range(3):
                diag[i][j] = scalar(p_matrix[i][j])
        for i in range(3, n):
            diag[i][i] = scalar(1)
        return explicit_metric(sp, mat_mul(T, mat_mul(diag, Tinv)))

    rng = random.Random(42)
    rejected = 0
    for _ in range(12):
        entries = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                entries[i][j] = entries[j][i] = rng.randrange(-3, 4)
        for i in range(3):
            entries[i][i] += 8  # keep the block positive definite
        is_scalar = all(
            entries[i][j] == (entries[0][0] if i == j else 0)
            for i in range(3)
            for j in range(3)
        )
        if is_scalar:
            continue
        metric = fixed_part_metric(entries)
        assert not biinvariance_filter(sp, metric), entries
        rejected += 1
    assert rejected >= 8
    for explicit in (
        [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
        [[2, 1, 0], [1, 2, 0], [0, 0, 2]],
    ):
        assert not biinvariance_filter(sp, fixed_part_metric(explicit))
    assert biinvariance_filter(
        sp, fixed_part_metric([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    )

    # Part 2: no metric that passed 200-sample checking fails either filter.
    results, _elapsed = sampled_pool
    for key, (space, metric, verdict) in results.items():
        if verdict.status == "go_sampled":
            assert normalizer_filter(space, metric), key
            assert biinvariance_filter(space, metric), key


def test_criterion_8_classification(tmp_path):
    start = time.perf_counter()
    runner = CliRunner()
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["classify", "--all", "--out", str(out)])
    elapsed = time.perf_counter() - start
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["flagged"] == ["a2.1", "c2.1", "berger", "cp3"]
    assert report["mismatches"] == []
    for entry in report["results"]:
        if not entry["space"].startswith("g2."):
            continue
        assert entry["verdict"] in (
            "all_metrics_normal",
            "isotropy_irreducible",
        ), entry["space"]
        for run in entry.get("evidence", {}).get("candidates", []):
            if run["status"] == "go_sampled":
                assert run["metric"] == {"kind": "blocks", "coeffs": ["1", "1"]}, (
                    entry["space"],
                    run["metric"],
                )
    assert elapsed < 300.0, f"classification took {elapsed:.1f}s"


def test_criterion_9_homothety_invariance():
    rng = random.Random(42)
    coefficient_pool = ("1/3", "1/2", "1", "2", "3", "5")
    checked = 0
    while checked < 20:
        space_id = CATALOG_IDS[rng.randrange(len(CATALOG_IDS))]
        sp = catalog_space(space_id)
        k = len(isotypic_decompose(sp).components)
        coeffs = [
            parse_scalar(coefficient_pool[rng.randrange(len(coefficient_pool))])
            for _ in range(k)
        ]
        metric = metric_from_blocks(sp, coeffs)
        scaled = metric.scaled(3)
        v1 = go_sample_check(sp, metric, samples=30, seed=42)
        v2 = go_sample_check(sp, scaled, samples=30, seed=42)
        assert v1.status == v2.status, (space_id, coeffs)
        assert v1.witness == v2.witness, (space_id, coeffs)
        assert v1.samples_run == v2.samples_run, (space_id, coeffs)
        assert v1.filters == v2.filters, (space_id, coeffs)
        checked += 1
    assert checked == 20
