"""Invariant metrics and the geodesic-orbit property checker.

An invariant metric on a catalogued space is encoded by its metric
endomorphism: an operator on the transverse part m that is symmetric for
the invariant form, positive definite, and commutes with the isotropy
action.  The geodesic-orbit test for a direction X asks for a compensator
a in h with [a, MX] = [MX, X]; the space is geodesic-orbit for M exactly
when every X admits one.  This module solves that linear problem exactly,
samples it over structured and random directions, and applies two
necessary-condition filters that rule metrics out without sampling.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from .embed import CatalogSpace, fibration_split, named_subalgebra
from .field import ONE, ZERO, Scalar, parse_scalar, scalar
from .isotypic import (
    commutant_symmetric_basis,
    component_projections,
    isotypic_decompose,
    m_gram,
)
from .liealg import (
    Matrix,
    Vector,
    gram_matrix,
    ideal_decomposition,
    identity_matrix,
    is_positive_definite,
    kernel_basis,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_scale,
    mat_transpose,
    operator_on_subspace,
    solve_columns,
    subalgebra_closure,
    vec_add,
    vec_scale,
    zero_vector,
)

DEFAULT_SEED = 42
STATUS_GO_SAMPLED = "go_sampled"
STATUS_NOT_GO = "not_go_certified"
STATUS_FILTERED = "filtered_out"


# -- metric endomorphisms -----------------------------------------------------

@dataclass(frozen=True)
class MetricEndomorphism:
    """A validated invariant-metric operator on m, in m-coordinates.

    provenance is one of "standard", "block_coeffs", "fibration",
    "explicit"; params carries the defining data as exact strings.
    """

    space: CatalogSpace
    matrix: Matrix
    provenance: str
    params: tuple[str, ...]

    def apply(self, v: Vector) -> Vector:
        """Apply to an ambient vector lying in m; returns an ambient vector."""
        space = self.space
        coords = space.m.coords(v)
        n = space.dim_m
        out = zero_vector(space.algebra.dim)
        for i in range(n):
            c = sum(
                (self.matrix[i][j] * coords[j] for j in range(n) if coords[j]),
                ZERO,
            )
            if c:
                out = vec_add(out, vec_scale(c, space.m.rows[i]))
        return out

    def scaled(self, c) -> "MetricEndomorphism":
        """The homothetic metric c * M (c must be positive)."""
        c = scalar(c)
        if c.sign() <= 0:
            raise ValueError("a homothety factor must be positive")
        return _validated(
            self.space,
            mat_scale(c, self.matrix),
            self.provenance,
            self.params + (c.exact_str(),),
        )


def _validated(
    space: CatalogSpace,
    matrix: Matrix,
    provenance: str,
    params: tuple[str, ...],
) -> MetricEndomorphism:
    n = space.dim_m
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"metric matrix must be {n}x{n} for {space.space_id}")
    mat = [[scalar(x) for x in row] for row in matrix]
    S = m_gram(space)
    SM = mat_mul(S, mat)
    if SM != mat_transpose(SM):
        raise ValueError("metric operator is not symmetric for the invariant form")
    L = space.algebra
    for a in space.h.rows:
        A = operator_on_subspace(lambda v, a=a: L.bracket(a, v), space.m)
        if mat_mul(mat, A) != mat_mul(A, mat):
            raise ValueError("metric operator does not commute with the isotropy action")
    if not is_positive_definite(SM):
        raise ValueError("metric operator is not positive definite")
    return MetricEndomorphism(
        space=space, matrix=mat, provenance=provenance, params=params
    )


def standard_metric(space: CatalogSpace) -> MetricEndomorphism:
    """The normal metric: the identity operator on m."""
    return _validated(space, identity_matrix(space.dim_m), "standard", ())


def metric_from_blocks(space: CatalogSpace, coeffs: Sequence) -> MetricEndomorphism:
    """Build a metric from block coefficients.

    When one coefficient is given per isotypic component, the metric is the
    corresponding combination of component projections.  Otherwise the
    length must match the symmetric commutant basis, and the coefficients
    combine that basis directly.  When both readings apply (every component
    contributes one commutant direction) they agree, and the per-component
    reading is used.
    """
    cs = [scalar(c) for c in coeffs]
    dec = isotypic_decompose(space)
    n_components = len(dec.components)
    basis = commutant_symmetric_basis(space)
    if len(cs) == n_components:
        mats = component_projections(space)
    elif len(cs) == len(basis):
        mats = basis
    else:
        raise ValueError(
            f"expected {n_components} per-component coefficients or "
            f"{len(basis)} commutant coefficients, got {len(cs)}"
        )
    n = space.dim_m
    out = [[ZERO] * n for _ in range(n)]
    for c, B in zip(cs, mats):
        out = mat_add(out, mat_scale(c, B))
    return _validated(
        space, out, "block_coeffs", tuple(c.exact_str() for c in cs)
    )


def fibration_metric(
    space: CatalogSpace, subalgebra_name: str, lam
) -> MetricEndomorphism:
    """Scale the fiber directions of a named intermediate subalgebra by lam.

    The operator is the identity on the base directions and lam times the
    identity on the fiber directions; lam must be positive.
    """
    lam = scalar(lam)
    if lam.sign() <= 0:
        raise ValueError("the fiber scaling must be positive")
    K = named_subalgebra(space, subalgebra_name)
    fiber, base = fibration_split(space, K)
    n = space.dim_m
    cols = [space.m.coords(v) for v in list(fiber.rows) + list(base.rows)]
    T = [[cols[j][i] for j in range(n)] for i in range(n)]
    diag = [
        [
            (lam if i < fiber.dim else ONE) if i == j else ZERO
            for j in range(n)
        ]
        for i in range(n)
    ]
    mat = mat_mul(T, mat_mul(diag, mat_inverse(T)))
    return _validated(
        space, mat, "fibration", (subalgebra_name, lam.exact_str())
    )


def explicit_metric(space: CatalogSpace, matrix: Matrix) -> MetricEndomorphism:
    """Validate an arbitrary operator given in m-coordinates."""
    return _validated(space, matrix, "explicit", ())


# -- the compensator equation -------------------------------------------------

def solve_compensator(
    space: CatalogSpace, metric: MetricEndomorphism, x: Vector
) -> tuple[Vector | None, int, int]:
    """Solve [a, MX] = [MX, X] for a in h, exactly.

    Returns (a, rank_map, rank_augmented).  a is None exactly when the
    system is inconsistent; then rank_augmented exceeds rank_map and the
    pair certifies the refutation.  When the system is underdetermined the
    solution of least norm for the positive form on h is returned, so the
    output is canonical.
    """
    L = space.algebra
    y = metric.apply(x)
    rhs = L.bracket(y, x)
    if not space.m.contains(rhs):
        raise ArithmeticError(
            "[MX, X] left the transverse part; the metric operator is not equivariant"
        )
    columns = [L.bracket(a, y) for a in space.h.rows]
    sol, rank_map, rank_aug = solve_columns(columns, rhs)
    if sol is None:
        return None, rank_map, rank_aug
    dim_h = space.dim_h
    if rank_map < dim_h:
        null = kernel_basis(
            [[col[j] for col in columns] for j in range(len(columns[0]))]
            if columns
            else [],
            dim_h,
        )
        G = gram_matrix(L, space.h.rows)
        Ga0 = [
            sum((G[i][j] * sol[j] for j in range(dim_h) if sol[j]), ZERO)
            for i in range(dim_h)
        ]
        k = len(null)
        NtGa0 = [
            sum((nu[i] * Ga0[i] for i in range(dim_h) if nu[i]), ZERO)
            for nu in null
        ]
        NtGN = [
            [
                sum(
                    (
                        null[r][i] * G[i][j] * null[c][j]
                        for i in range(dim_h)
                        for j in range(dim_h)
                        if null[r][i] and null[c][j]
                    ),
                    ZERO,
                )
                for c in range(k)
            ]
            for r in range(k)
        ]
        u = mat_mul(mat_inverse(NtGN), [[t] for t in NtGa0])
        sol = tuple(
            sol[j] - sum((null[r][j] * u[r][0] for r in range(k)), ZERO)
            for j in range(dim_h)
        )
    a = zero_vector(L.dim)
    for c, basis_vec in zip(sol, space.h.rows):
        if c:
            a = vec_add(a, vec_scale(c, basis_vec))
    if L.bracket(a, y) != rhs:
        raise ArithmeticError("compensator verification failed")
    return a, rank_map, rank_aug


# -- filters ------------------------------------------------------------------

def normalizer_filter(space: CatalogSpace, metric: MetricEndomorphism) -> bool:
    """Necessary condition: the operator commutes with every fixed-vector
    action.  Vectors of m that centralize h generate extra isometries, and a
    geodesic-orbit metric must commute with each of their actions on m."""
    L = space.algebra
    fixed = isotypic_decompose(space).trivial_subspace
    for w in fixed.rows:
        A = operator_on_subspace(lambda v, w=w: L.bracket(w, v), space.m)
        if mat_mul(metric.matrix, A) != mat_mul(A, metric.matrix):
            return False
    return True


def biinvariance_filter(space: CatalogSpace, metric: MetricEndomorphism) -> bool:
    """Necessary condition on the fixed part p of m.

    For X in p the compensator equation degenerates to [MX, X] = 0, which
    holds for every X in p exactly when M preserves p, restricts to a
    scalar on each simple ideal of p, and is arbitrary (symmetric positive
    definite) on the center.  True when p is zero.
    """
    p = isotypic_decompose(space).trivial_subspace
    if p.dim == 0:
        return True
    L = space.algebra
    if subalgebra_closure(L, p.rows) != p:
        raise ValueError("the fixed part of m is not a subalgebra")
    for r in p.rows:
        if not p.contains(metric.apply(r)):
            return False
    _center, ideals = ideal_decomposition(L, p)
    for ideal in ideals:
        if not all(ideal.contains(metric.apply(r)) for r in ideal.rows):
            return False
        M = operator_on_subspace(metric.apply, ideal)
        d = ideal.dim
        c = M[0][0]
        for i in range(d):
            for j in range(d):
                if M[i][j] != (c if i == j else 0):
                    return False
    return True


FILTER_NAMES = ("normalizer", "biinvariance")

_FILTERS = {
    "normalizer": normalizer_filter,
    "biinvariance": biinvariance_filter,
}


def _filter_results(
    space: CatalogSpace, metric: MetricEndomorphism
) -> tuple[tuple[str, bool], ...]:
    return tuple(
        (name, _FILTERS[name](space, metric)) for name in FILTER_NAMES
    )


# -- sampling -----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A refuting direction X, by exact coordinates in the basis of m,
    together with the rank pair certifying the inconsistency."""

    coords: tuple[Scalar, ...]
    rank_map: int
    rank_augmented: int

    def vector(self, space: CatalogSpace) -> Vector:
        x = zero_vector(space.algebra.dim)
        for c, row in zip(self.coords, space.m.rows):
            if c:
                x = vec_add(x, vec_scale(c, row))
        return x

    def to_dict(self) -> dict:
        return {
            "coords": [c.exact_str() for c in self.coords],
            "rank_map": self.rank_map,
            "rank_augmented": self.rank_augmented,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Witness":
        return cls(
            coords=tuple(parse_scalar(t) for t in data["coords"]),
            rank_map=int(data["rank_map"]),
            rank_augmented=int(data["rank_augmented"]),
        )


@dataclass(frozen=True)
class GoVerdict:
    """Outcome of a geodesic-orbit check for one space and metric."""

    status: str
    samples_run: int
    seed: int
    witness: Witness | None
    filter_name: str | None
    filters: tuple[tuple[str, bool], ...]
    elapsed_s: float

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "status": self.status,
            "seed": self.seed,
            "samples_run": self.samples_run,
            "witness": self.witness.to_dict() if self.witness else None,
            "filter_name": self.filter_name,
            "filters": {name: ok for name, ok in self.filters},
        }
        if include_time:
            out["elapsed_s"] = self.elapsed_s
        return out


def structured_directions(space: CatalogSpace) -> list[tuple[Scalar, ...]]:
    """The deterministic first batch: each block basis direction of every
    isotypic component, then every pairwise sum of two of them.  Sums that
    mix components are the classic way block-skewed metrics fail, so these
    run before any random draw."""
    dec = isotypic_decompose(space)
    singles = [
        tuple(space.m.coords(r))
        for comp in dec.components
        for r in comp.subspace.rows
    ]
    batch = list(singles)
    for i in range(len(singles)):
        for j in range(i + 1, len(singles)):
            batch.append(
                tuple(a + b for a, b in zip(singles[i], singles[j]))
            )
    return batch


def _random_direction(rng: random.Random, n: int) -> tuple[Scalar, ...]:
    values = [k for k in range(-9, 10) if k != 0]
    return tuple(Scalar.from_int(rng.choice(values)) for _ in range(n))


def _check_direction(
    space: CatalogSpace,
    metric: MetricEndomorphism,
    coords: tuple[Scalar, ...],
) -> Witness | None:
    x = zero_vector(space.algebra.dim)
    for c, row in zip(coords, space.m.rows):
        if c:
            x = vec_add(x, vec_scale(c, row))
    sol, rank_map, rank_aug = solve_compensator(space, metric, x)
    if sol is None:
        return Witness(coords=coords, rank_map=rank_map, rank_augmented=rank_aug)
    return None


def go_sample_check(
    space: CatalogSpace,
    metric: MetricEndomorphism,
    samples: int = 200,
    seed: int = DEFAULT_SEED,
    apply_filters: bool = True,
) -> GoVerdict:
    """Run the filters, the structured batch, then seeded random directions.

    Random directions draw every coordinate uniformly from the nonzero
    integers in [-9, 9].  The first direction with no compensator stops the
    run with a witness.  samples counts the random draws; samples_run in
    the verdict counts every direction actually checked.
    """
    start = time.perf_counter()
    filters = _filter_results(space, metric)
    if apply_filters:
        for name, ok in filters:
            if not ok:
                return GoVerdict(
                    status=STATUS_FILTERED,
                    samples_run=0,
                    seed=seed,
                    witness=None,
                    filter_name=name,
                    filters=filters,
                    elapsed_s=time.perf_counter() - start,
                )
    run = 0
    for coords in structured_directions(space):
        run += 1
        witness = _check_direction(space, metric, coords)
        if witness is not None:
            return GoVerdict(
                status=STATUS_NOT_GO,
                samples_run=run,
                seed=seed,
                witness=witness,
                filter_name=None,
                filters=filters,
                elapsed_s=time.perf_counter() - start,
            )
    rng = random.Random(seed)
    n = space.dim_m
    for _ in range(samples):
        run += 1
        witness = _check_direction(space, metric, _random_direction(rng, n))
        if witness is not None:
            return GoVerdict(
                status=STATUS_NOT_GO,
                samples_run=run,
                seed=seed,
                witness=witness,
                filter_name=None,
                filters=filters,
                elapsed_s=time.perf_counter() - start,
            )
    return GoVerdict(
        status=STATUS_GO_SAMPLED,
        samples_run=run,
        seed=seed,
        witness=None,
        filter_name=None,
        filters=filters,
        elapsed_s=time.perf_counter() - start,
    )


def find_witness(
    space: CatalogSpace,
    metric: MetricEndomorphism,
    budget: int = 50,
    seed: int = DEFAULT_SEED,
) -> GoVerdict:
    """Search for a refuting direction: structured batch first, then up to
    budget random draws.  The budget counts random draws only; the
    structured batch always runs in full if no witness appears sooner."""
    start = time.perf_counter()
    filters = _filter_results(space, metric)
    run = 0
    for coords in structured_directions(space):
        run += 1
        witness = _check_direction(space, metric, coords)
        if witness is not None:
            return GoVerdict(
                status=STATUS_NOT_GO,
                samples_run=run,
                seed=seed,
                witness=witness,
                filter_name=None,
                filters=filters,
                elapsed_s=time.perf_counter() - start,
            )
    rng = random.Random(seed)
    n = space.dim_m
    for _ in range(budget):
        run += 1
        witness = _check_direction(space, metric, _random_direction(rng, n))
        if witness is not None:
            return GoVerdict(
                status=STATUS_NOT_GO,
                samples_run=run,
                seed=seed,
                witness=witness,
                filter_name=None,
                filters=filters,
                elapsed_s=time.perf_counter() - start,
            )
    return GoVerdict(
        status=STATUS_GO_SAMPLED,
        samples_run=run,
        seed=seed,
        witness=None,
        filter_name=None,
        filters=filters,
        elapsed_s=time.perf_counter() - start,
    )


def verify_witness(
    space: CatalogSpace, metric: MetricEndomorphism, witness: Witness
) -> bool:
    """Re-run the compensator solve on a (possibly deserialized) witness and
    confirm it still refutes with the same rank pair."""
    sol, rank_map, rank_aug = solve_compensator(
        space, metric, witness.vector(space)
    )
    return (
        sol is None
        and rank_map == witness.rank_map
        and rank_aug == witness.rank_augmented
    )
