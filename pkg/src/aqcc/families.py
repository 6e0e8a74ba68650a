"""Parameterized AQCC families built from BCH, RS, and GRS parity rows.

Every family follows the same recipe: take the parity-check matrix of a
block code whose rows come in per-exponent groups, assign each group to a
delay power, and split the result into an outer/inner generator pair.
The pair layouts below fix which group lands where; the counting facts
they rely on (group sizes, window coverage, containment of the inner row
set in the outer one) are all re-verified downstream by the certifier,
so a layout here is a plan, not a trusted claim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .block import BlockCode, bch_parity, grs_build, rs_parity
from .convo import PolyMatrix, split_to_generator
from .errors import (
    IndependenceViolated,
    ParamOutOfRange,
    PartitionInvalid,
    ZeroLogicalDimension,
)
from .gf import FiniteField
from .matrix import MatrixGF, field_from_order, vstack

FAMILIES = (
    "I",
    "II-T2",
    "II-T3a",
    "II-T3b",
    "II-T4a",
    "II-T4b",
    "III-T5a",
    "III-T5b",
    "III-T6",
    "III-T8",
)


@dataclass(frozen=True)
class FamilyParams:
    """One point in a family's parameter grid."""

    family: str
    q: int
    i: int | None = None
    t: int | None = None
    n: int | None = None
    k: int | None = None
    partition: tuple[int, ...] | None = None

    def label(self) -> str:
        parts = [f"q={self.q}"]
        for name in ("n", "k", "i", "t"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v}")
        if self.partition is not None:
            parts.append(f"partition={list(self.partition)}")
        return f"{self.family}({', '.join(parts)})"


@dataclass(frozen=True)
class ExpectedTuple:
    """Closed-form parameters a family instance is supposed to hit.

    dz_stated / dx_stated keep the orientation the formulas are written
    in; dz_bound / dx_bound apply the convention that the larger bound is
    reported as the Z distance.
    """

    n: int
    k_formula: int
    gamma_formula: int
    dz_stated: int | None = None
    dx_stated: int | None = None

    @property
    def dz_bound(self) -> int | None:
        if self.dz_stated is None or self.dx_stated is None:
            return self.dz_stated
        return max(self.dz_stated, self.dx_stated)

    @property
    def dx_bound(self) -> int | None:
        if self.dz_stated is None or self.dx_stated is None:
            return self.dx_stated
        return min(self.dz_stated, self.dx_stated)


@dataclass(frozen=True)
class LayoutPlan:
    """Split plan for one family instance, ready for split_to_generator.

    chain_designed holds certified lower bounds for the three slice codes
    of the inner generator (degree-0 slice, top-degree slice, and the
    stack of all slices); v1_designed is a certified lower bound for the
    code spanned by every outer coefficient row.  Both feed the free
    distance search as trusted floors.
    """

    params: FamilyParams
    expected: ExpectedTuple
    field: FiniteField
    source: BlockCode
    blocks1: tuple[MatrixGF, ...]
    placements1: tuple[tuple[int, ...], ...] | None
    blocks2: tuple[MatrixGF, ...]
    placements2: tuple[tuple[int, ...], ...] | None
    v1_designed: int
    chain_designed: tuple[int, int, int]
    v1_stated: int | None
    v2perp_stated: int | None
    notes: tuple[str, ...] = ()

    def generators(self) -> tuple[PolyMatrix, PolyMatrix]:
        g1 = split_to_generator(self.blocks1, self.placements1)
        g2 = split_to_generator(self.blocks2, self.placements2)
        return g1, g2


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParamOutOfRange(f"q = {q} is not a prime power")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    l, m = 0, q
    while m % p == 0:
        m //= p
        l += 1
    if m != 1 or l == 0:
        raise ParamOutOfRange(f"q = {q} is not a prime power")
    return p, l


def _family_field_ok(family: str, q: int) -> bool:
    """Does GF(q) satisfy the family's standing field assumption?"""
    p, l = _prime_power(q)
    if family in ("II-T2", "II-T3a", "II-T3b"):
        return p == 2 and l >= 4
    if family in ("II-T4a", "II-T4b"):
        return p != 2 and l >= 2
    if family in ("III-T5a", "III-T5b"):
        return q >= 8
    if family in ("III-T6", "III-T8"):
        return q >= 5
    raise ValueError(f"unknown family {family!r}")


def validate_params(params: FamilyParams) -> None:
    """Raise ParamOutOfRange naming the first violated precondition."""
    fam, q = params.family, params.q
    if fam not in FAMILIES:
        raise ValueError(f"unknown family {fam!r}")
    if fam == "I":
        return  # construction I is validated against its explicit partition
    if not _family_field_ok(fam, q):
        need = {
            "II-T2": "q = 2^s with s >= 4",
            "II-T3a": "q = 2^s with s >= 4",
            "II-T3b": "q = 2^s with s >= 4",
            "II-T4a": "q = p^l with p odd and l >= 2",
            "II-T4b": "q = p^l with p odd and l >= 2",
            "III-T5a": "a prime power q >= 8",
            "III-T5b": "a prime power q >= 8",
            "III-T6": "a prime power q >= 5",
            "III-T8": "a prime power q >= 5",
        }[fam]
        raise ParamOutOfRange(f"{fam} needs {need}, got q = {q}")
    i, t, n, k = params.i, params.t, params.n, params.k
    if fam in ("II-T2", "II-T3a", "II-T3b", "II-T4a", "II-T4b"):
        a = q // 2 if fam.startswith("II-T2") or fam.startswith("II-T3") else (q + 1) // 2
        if fam == "II-T2":
            if i is None:
                raise ParamOutOfRange(f"{fam} needs i")
            if not 3 <= i <= a - 1:
                raise ParamOutOfRange(f"{fam} needs 3 <= i <= {a - 1}, got i = {i}")
            return
        if i is None or t is None:
            raise ParamOutOfRange(f"{fam} needs both i and t")
        lo_i, t_hi = (3, i - 2) if fam.endswith("a") else (2, i - 1)
        if not lo_i <= i <= a - 1:
            raise ParamOutOfRange(f"{fam} needs {lo_i} <= i <= {a - 1}, got i = {i}")
        if not 1 <= t <= t_hi:
            raise ParamOutOfRange(f"{fam} needs 1 <= t <= i - {i - t_hi}, got t = {t}")
        return
    if fam in ("III-T5a", "III-T5b"):
        if i is None or t is None:
            raise ParamOutOfRange(f"{fam} needs both i and t")
        lo_i, t_hi = (3, i - 2) if fam.endswith("a") else (2, i - 1)
        if not lo_i <= i <= q - 3:
            raise ParamOutOfRange(f"{fam} needs {lo_i} <= i <= q - 3 = {q - 3}, got i = {i}")
        if not 1 <= t <= t_hi:
            raise ParamOutOfRange(f"{fam} needs 1 <= t <= i - {i - t_hi}, got t = {t}")
        return
    # III-T6 / III-T8
    if n is None or k is None or t is None:
        raise ParamOutOfRange(f"{fam} needs n, k and t")
    if not 5 <= n <= q:
        raise ParamOutOfRange(f"{fam} needs 5 <= n <= q = {q}, got n = {n}")
    if not 1 <= k <= n - 4:
        raise ParamOutOfRange(f"{fam} needs 1 <= k <= n - 4 = {n - 4}, got k = {k}")
    t_hi = n - k - 2 if fam == "III-T6" else n - k - 1
    if not 1 <= t <= t_hi:
        raise ParamOutOfRange(f"{fam} needs 1 <= t <= {t_hi}, got t = {t}")


def expected_tuple(params: FamilyParams) -> ExpectedTuple:
    """Closed-form (n, k, gamma, dz, dx) for a validated parameter point."""
    validate_params(params)
    fam, q, i, t = params.family, params.q, params.i, params.t
    if fam == "II-T2":
        n = q + 1
        return ExpectedTuple(n, 2 * i - 4, 6, n - 2 * i - 1, 3)
    if fam == "II-T3a":
        n = q + 1
        return ExpectedTuple(n, 2 * i - 2 * t - 2, 6, n - 2 * i - 1, 2 * t + 3)
    if fam == "II-T3b":
        n = q + 1
        return ExpectedTuple(n, 2 * i - 2 * t, 4, n - 2 * i - 1, 2 * t + 3)
    if fam == "II-T4a":
        n = q + 1
        return ExpectedTuple(n, 2 * i - 2 * t - 2, 6, n - 2 * i, 2 * t + 2)
    if fam == "II-T4b":
        n = q + 1
        return ExpectedTuple(n, 2 * i - 2 * t, 4, n - 2 * i, 2 * t + 2)
    if fam == "III-T5a":
        return ExpectedTuple(q - 1, i - t - 1, 3, q - i - 1, t + 2)
    if fam == "III-T5b":
        return ExpectedTuple(q - 1, i - t, 2, q - i - 1, t + 2)
    n, k = params.n, params.k
    if fam == "III-T6":
        return ExpectedTuple(n, n - k - t - 2, 3, t + 2, k + 1)
    if fam == "III-T8":
        return ExpectedTuple(n, n - k - t - 1, 2, t + 2, k + 1)
    raise ValueError(f"no closed-form tuple for family {fam!r}")


def enumerate_family(family: str, q: int, ranges: dict | None = None):
    """All (params, expected) points of a family over GF(q).

    Returns an empty list when q falls outside the family's field
    assumption, and raises ParamOutOfRange only when q is not a prime
    power at all.  Points whose logical dimension formula gives zero are
    included; building them is what fails.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "I":
        raise ValueError("construction I has no parameter grid to enumerate")
    _prime_power(q)
    if not _family_field_ok(family, q):
        return []
    ranges = ranges or {}

    def span(name: str, lo: int, hi: int):
        lo2, hi2 = ranges.get(name, (lo, hi))
        return range(max(lo, lo2), min(hi, hi2) + 1)

    out = []

    def emit(**kw):
        p = FamilyParams(family=family, q=q, **kw)
        out.append((p, expected_tuple(p)))

    if family in ("II-T2", "II-T3a", "II-T3b", "II-T4a", "II-T4b"):
        a = (q + 1) // 2 if family.startswith("II-T4") else q // 2
        if family == "II-T2":
            for i in span("i", 3, a - 1):
                emit(i=i)
            return out
        lo_i = 3 if family.endswith("a") else 2
        for i in span("i", lo_i, a - 1):
            t_hi = i - 2 if family.endswith("a") else i - 1
            for t in span("t", 1, t_hi):
                emit(i=i, t=t)
        return out
    if family in ("III-T5a", "III-T5b"):
        lo_i = 3 if family.endswith("a") else 2
        for i in span("i", lo_i, q - 3):
            t_hi = i - 2 if family.endswith("a") else i - 1
            for t in span("t", 1, t_hi):
                emit(i=i, t=t)
        return out
    for n in span("n", 5, q):
        for k in span("k", 1, n - 4):
            t_hi = n - k - 2 if family == "III-T6" else n - k - 1
            for t in span("t", 1, t_hi):
                emit(n=n, k=k, t=t)
    return out


def _as_blocks(field: FiniteField, stacks: list[list[np.ndarray]]) -> tuple[MatrixGF, ...]:
    return tuple(vstack([MatrixGF(field, a) for a in rows]) for rows in stacks)


def _pair_layout(field, groups, pairs, singles1, pairs2, singles2):
    """Blocks for the standard layout: paired groups first, then singles.

    pairs are (constant exponent, delay exponent); the default placement
    already lines each delay group up with its partner because the paired
    constant groups sit at the top of the generator.
    """
    b1 = _as_blocks(field, [
        [groups[c] for c, _ in pairs] + [groups[s] for s in singles1],
        [groups[d] for _, d in pairs],
    ])
    b2 = _as_blocks(field, [
        [groups[c] for c, _ in pairs2] + [groups[s] for s in singles2],
        [groups[d] for _, d in pairs2],
    ])
    return b1, None, b2, None


def _everywhere_nonzero(row: np.ndarray) -> bool:
    return bool(np.all(row != 0))


def _split_degenerate_partner(field: FiniteField, group: np.ndarray):
    """Basis (p0, p1) of a two-row group with p1 free of zero coordinates.

    p1 becomes the top-degree slice of the merged generator row, and a
    zero coordinate there would cost the slice code a distance unit, so
    try the plain rows first and then the r0 + c*r1 line.
    """
    r0, r1 = group[0], group[1]
    candidates = [(r0, r1), (r1, r0)]
    for c in range(1, field.q):
        candidates.append((r0, field.add(r0, field.mul(c, r1))))
    for p0, p1 in candidates:
        if _everywhere_nonzero(p1):
            return np.array(p0), np.array(p1), ()
    return np.array(r0), np.array(r1), ("top-degree slice of the merged row has a zero coordinate",)


def _layout_bch_pairs(params: FamilyParams) -> LayoutPlan:
    """Families II-T2, II-T3a, II-T3b over GF(2^s), length q + 1."""
    fam, q, i, t = params.family, params.q, params.i, params.t
    field = field_from_order(q)
    n, a = q + 1, q // 2
    struct = bch_parity(field, n, i + 2, b=a - i)
    groups = struct.row_groups
    if fam == "II-T2":
        pairs1 = [(a - i + 2, a - i + 1), (a, a - i)]
        singles1 = list(range(a - 1, a - i + 2, -1))
        pairs2, singles2 = [(a - i + 2, a - i + 1)], []
        chain = (2, 2, 3)
    elif fam == "II-T3a":
        pairs1 = [(a - t - 1, a - i), (a, a - t)]
        singles1 = list(range(a - 1, a - t, -1)) + list(range(a - t - 2, a - i, -1))
        pairs2 = [(a, a - t)]
        singles2 = list(range(a - 1, a - t, -1))
        chain = (2 * t + 1, 2, 2 * t + 3)
    else:
        pairs1 = [(a, a - t)]
        singles1 = list(range(a - 1, a - t, -1)) + list(range(a - t - 1, a - i - 1, -1))
        pairs2 = [(a, a - t)]
        singles2 = list(range(a - 1, a - t, -1))
        chain = (2 * t + 1, 2, 2 * t + 3)
    b1, p1, b2, p2 = _pair_layout(field, groups, pairs1, singles1, pairs2, singles2)
    expected = expected_tuple(params)
    return LayoutPlan(
        params=params,
        expected=expected,
        field=field,
        source=struct.code,
        blocks1=b1,
        placements1=p1,
        blocks2=b2,
        placements2=p2,
        v1_designed=n - 2 * i - 1,
        chain_designed=chain,
        v1_stated=expected.dz_stated,
        v2perp_stated=expected.dx_stated,
    )


def _layout_bch_merged(params: FamilyParams) -> LayoutPlan:
    """Families II-T4a, II-T4b over odd GF(p^l), length q + 1.

    n is even here, so the exponent a = n/2 contributes a single parity
    row; its pair partner is spread over delays one and two instead,
    giving one generator row of degree two in both the outer and inner
    matrices.
    """
    fam, q, i, t = params.family, params.q, params.i, params.t
    field = field_from_order(q)
    n = q + 1
    a = n // 2
    struct = bch_parity(field, n, i + 2, b=a - i)
    groups = struct.row_groups
    if groups[a].shape[0] != 1:
        raise AssertionError("exponent n/2 should expand to a single row")
    p0, p1, notes = _split_degenerate_partner(field, groups[a - t])
    merged_const = groups[a]
    if fam == "II-T4a":
        head = [groups[a - t - 1], merged_const]
        singles1 = list(range(a - 1, a - t, -1)) + list(range(a - t - 2, a - i, -1))
        d_rows = [groups[a - i], p0[None, :]]
        merged_at = 2  # after the two rows of the leading pair
    else:
        head = [merged_const]
        singles1 = list(range(a - 1, a - t, -1)) + list(range(a - t - 1, a - i - 1, -1))
        d_rows = [p0[None, :]]
        merged_at = 0
    const1 = head + [groups[s] for s in singles1]
    k1 = sum(m.shape[0] for m in const1)
    blocks1 = _as_blocks(field, [const1, d_rows, [p1[None, :]]])
    placements1 = (
        tuple(range(k1)),
        tuple(range(sum(m.shape[0] for m in d_rows))),
        (merged_at,),
    )
    singles2 = list(range(a - 1, a - t, -1))
    const2 = [merged_const] + [groups[s] for s in singles2]
    blocks2 = _as_blocks(field, [const2, [p0[None, :]], [p1[None, :]]])
    d2_top = 2 if _everywhere_nonzero(p1) else 1
    expected = expected_tuple(params)
    return LayoutPlan(
        params=params,
        expected=expected,
        field=field,
        source=struct.code,
        blocks1=blocks1,
        placements1=placements1,
        blocks2=blocks2,
        placements2=None,
        v1_designed=n - 2 * i,
        chain_designed=(2 * t, d2_top, 2 * t + 2),
        v1_stated=expected.dz_stated,
        v2perp_stated=expected.dx_stated,
        notes=("layout-reconstructed",) + notes,
    )


def _layout_rs_pairs(params: FamilyParams) -> LayoutPlan:
    """Families III-T5a, III-T5b: Reed-Solomon rows, length q - 1."""
    fam, q, i, t = params.family, params.q, params.i, params.t
    field = field_from_order(q)
    n = q - 1
    struct = rs_parity(field, n, i + 2, b=0)
    groups = struct.row_groups
    if fam == "III-T5a":
        pairs1 = [(i - t - 1, 0), (i, i - t)]
        singles1 = list(range(i - 1, i - t, -1)) + list(range(i - t - 2, 0, -1))
    else:
        pairs1 = [(i, i - t)]
        singles1 = list(range(i - 1, i - t, -1)) + list(range(i - t - 1, -1, -1))
    pairs2 = [(i, i - t)]
    singles2 = list(range(i - 1, i - t, -1))
    b1, p1, b2, p2 = _pair_layout(field, groups, pairs1, singles1, pairs2, singles2)
    expected = expected_tuple(params)
    return LayoutPlan(
        params=params,
        expected=expected,
        field=field,
        source=struct.code,
        blocks1=b1,
        placements1=p1,
        blocks2=b2,
        placements2=p2,
        v1_designed=n - i,
        chain_designed=(t + 1, 2, t + 2),
        v1_stated=expected.dz_stated,
        v2perp_stated=expected.dx_stated,
    )


def default_grs_points(field: FiniteField, n: int) -> tuple[int, ...]:
    """Zero followed by the first n - 1 powers of the field generator."""
    return (0,) + tuple(field.exp(j) for j in range(n - 1))


def _layout_grs(params: FamilyParams) -> LayoutPlan:
    """Families III-T6, III-T8: GRS parity rows, one per degree r."""
    fam, q, n, k, t = params.family, params.q, params.n, params.k, params.t
    field = field_from_order(q)
    grs = grs_build(field, default_grs_points(field, n), (1,) * n, k)
    groups = grs.row_groups
    r_top = n - k - 1
    if fam == "III-T6":
        if n - k - 2 - t <= 0:
            raise ZeroLogicalDimension(
                f"t = {t} leaves no logical stream at n = {n}, k = {k}"
            )
        lead = n - k - 3 if t != n - k - 3 else n - k - 2
        pairs1 = [(lead, r_top), (0, t)]
        singles1 = list(range(1, t)) + [r for r in range(t + 1, r_top) if r != lead]
    else:
        if n - k - 1 - t <= 0:
            raise ZeroLogicalDimension(
                f"t = {t} leaves no logical stream at n = {n}, k = {k}"
            )
        pairs1 = [(0, t)]
        singles1 = list(range(1, t)) + list(range(t + 1, r_top + 1))
    pairs2 = [(0, t)]
    singles2 = list(range(1, t))
    b1, p1, b2, p2 = _pair_layout(field, groups, pairs1, singles1, pairs2, singles2)
    # the slice through delay one is the lone row t; its distance is two
    # exactly when that row has no zero coordinate (point zero kills it
    # for t >= 1, which the chain bound absorbs without loss)
    row_t = grs.code.parity.a[t]
    d_mid = 2 if _everywhere_nonzero(row_t) else 1
    expected = expected_tuple(params)
    return LayoutPlan(
        params=params,
        expected=expected,
        field=field,
        source=grs.code,
        blocks1=b1,
        placements1=p1,
        blocks2=b2,
        placements2=p2,
        v1_designed=k + 1,
        chain_designed=(t + 1, d_mid, t + 2),
        v1_stated=expected.dx_stated,
        v2perp_stated=expected.dz_stated,
    )


def layout(params: FamilyParams) -> LayoutPlan:
    """Split plan for a validated parameter point.

    Raises ZeroLogicalDimension for grid points whose logical dimension
    formula is zero or negative; they enumerate fine but cannot build.
    """
    validate_params(params)
    fam = params.family
    if fam == "I":
        raise ValueError("construction I builds from explicit vectors, not a grid point")
    if expected_tuple(params).k_formula <= 0:
        raise ZeroLogicalDimension(f"{params.label()} has logical dimension <= 0")
    if fam in ("II-T2", "II-T3a", "II-T3b"):
        return _layout_bch_pairs(params)
    if fam in ("II-T4a", "II-T4b"):
        return _layout_bch_merged(params)
    if fam in ("III-T5a", "III-T5b"):
        return _layout_rs_pairs(params)
    return _layout_grs(params)


def construction_i_plan(field: FiniteField, vectors, partition) -> LayoutPlan:
    """Split plan from explicit parity rows and an interleaved partition.

    partition lists row counts (|H_0|, |H_0'|, |H_1|, |H_1'|, ...); the
    outer generator stacks sum(H_i D^i) over sum(H_i' D^i) and the inner
    generator keeps only the auxiliary band.  Requires equal |H_i|,
    nonincreasing |H_i'| with at least one row each, and independent rows
    overall.
    """
    m = vectors if isinstance(vectors, MatrixGF) else MatrixGF(field, np.asarray(vectors))
    sizes = [int(s) for s in partition]
    if len(sizes) < 4 or len(sizes) % 2:
        raise PartitionInvalid(
            f"partition needs 2(mu + 1) >= 4 interleaved sizes, got {len(sizes)}"
        )
    if any(s < 0 for s in sizes):
        raise PartitionInvalid("partition sizes must be nonnegative")
    if sum(sizes) != m.rows:
        raise PartitionInvalid(
            f"partition covers {sum(sizes)} rows but {m.rows} were given"
        )
    kappas = sizes[0::2]
    primes = sizes[1::2]
    mu = len(kappas) - 1
    kappa = kappas[0]
    if kappa < 1:
        raise PartitionInvalid("the main blocks need at least one row")
    if any(s != kappa for s in kappas):
        raise PartitionInvalid(f"main block sizes {kappas} must all equal {kappa}")
    if any(p < 1 for p in primes):
        raise PartitionInvalid("every auxiliary block needs at least one row")
    if any(primes[j] < primes[j + 1] for j in range(mu)):
        raise PartitionInvalid(f"auxiliary sizes {primes} must be nonincreasing")
    if m.rank() != m.rows:
        raise IndependenceViolated("the supplied rows are linearly dependent")
    cuts = np.cumsum([0] + sizes)
    part = [m.a[cuts[j]:cuts[j + 1]] for j in range(len(sizes))]
    mains = part[0::2]
    auxes = part[1::2]
    blocks1 = _as_blocks(
        field, [[mains[j]] + ([auxes[j]] if auxes[j].shape[0] else []) for j in range(mu + 1)]
    )
    placements1 = tuple(
        tuple(range(kappa)) + tuple(range(kappa, kappa + primes[j]))
        for j in range(mu + 1)
    )
    blocks2 = _as_blocks(field, [[a] for a in auxes])
    aux_total = sum(primes[1:])
    expected = ExpectedTuple(
        n=m.cols,
        k_formula=kappa,
        gamma_formula=mu * kappa + 2 * aux_total,
    )
    params = FamilyParams(family="I", q=field.q, n=m.cols, partition=tuple(sizes))
    return LayoutPlan(
        params=params,
        expected=expected,
        field=field,
        source=BlockCode(field, m, name=f"seed rows ({m.rows} x {m.cols})"),
        blocks1=blocks1,
        placements1=placements1,
        blocks2=blocks2,
        placements2=None,
        v1_designed=1,
        chain_designed=(1, 1, 1),
        v1_stated=None,
        v2perp_stated=None,
    )


def demo_vectors(field: FiniteField, n: int, partition, seed: int = 0) -> MatrixGF:
    """Deterministic independent rows for construction I demonstrations."""
    import random

    total = sum(int(s) for s in partition)
    if total > n:
        raise PartitionInvalid(f"{total} independent rows cannot fit in length {n}")
    rng = random.Random(seed)
    for _ in range(256):
        a = np.array(
            [[rng.randrange(field.q) for _ in range(n)] for _ in range(total)],
            dtype=np.int32,
        )
        m = MatrixGF(field, a)
        if m.rank() == total:
            return m
    raise IndependenceViolated(f"could not draw {total} independent rows of length {n}")
