"""Stabilizer assembly for CSS-type convolutional codes.

A nested pair V2 <= V1 of classical convolutional codes yields a
quantum convolutional code: one block of stabilizer rows carries a
parity check of V1 on one Pauli side, the other carries a generator of
V2 on the opposite side.  Symplectic self-orthogonality of the
assembled matrix is equivalent to the containment V2 <= V1, and this
module verifies it explicitly instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convo import (
    PolyMatrix,
    contains,
    degree_accounting,
    dual_generator,
    is_reduced,
    rank_poly,
    reduce,
)
from .errors import (
    ContainmentUnverified,
    FieldMismatch,
    RankDeficient,
    SymplecticViolation,
    TooFewFrames,
    ZeroLogicalDimension,
)
from .matrix import MatrixGF
from .trellis import FreeDistanceResult


def symplectic_residual(x_part: PolyMatrix, z_part: PolyMatrix) -> PolyMatrix:
    """X(D) rev(Z)^T - Z(D) rev(X)^T, both reversed at a common degree.

    The result is zero exactly when every pair of rows of (X|Z) is
    orthogonal under the symplectic pairing summed over all time shifts.
    """
    if x_part.field != z_part.field:
        raise FieldMismatch("X and Z parts live over different fields")
    if x_part.shape != z_part.shape:
        raise ValueError(
            f"X part is {x_part.shape}, Z part is {z_part.shape}"
        )
    mu = max(x_part.max_degree, z_part.max_degree, 0)
    return x_part @ z_part.reverse(mu).T - z_part @ x_part.reverse(mu).T


def check_symplectic(x_part: PolyMatrix, z_part: PolyMatrix) -> bool:
    return symplectic_residual(x_part, z_part).is_zero()


@dataclass(frozen=True)
class StabilizerMatrix:
    """Polynomial stabilizer matrix split into its X and Z halves."""

    x_part: PolyMatrix
    z_part: PolyMatrix

    def __post_init__(self):
        if self.x_part.shape != self.z_part.shape:
            raise ValueError("X and Z parts must share a shape")
        if self.x_part.field != self.z_part.field:
            raise FieldMismatch("X and Z parts live over different fields")

    @property
    def field(self):
        return self.x_part.field

    @property
    def n(self) -> int:
        return self.x_part.cols

    @property
    def rows(self) -> int:
        return self.x_part.rows

    @property
    def mu_star(self) -> int:
        return max(self.x_part.max_degree, self.z_part.max_degree, 0)

    @property
    def row_degrees(self) -> tuple[int, ...]:
        xd = self.x_part.row_degrees
        zd = self.z_part.row_degrees
        return tuple(max(a, b, 0) for a, b in zip(xd, zd))

    @property
    def gamma(self) -> int:
        return sum(self.row_degrees)


def _stack(top: PolyMatrix, bottom: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(top.field, top.e + bottom.e, cols=top.cols)


def assemble_stabilizer(
    h1: PolyMatrix, g2: PolyMatrix, *, orientation: str = "standard"
) -> StabilizerMatrix:
    """Build the block-diagonal stabilizer from a parity check and a generator.

    ``standard`` places h1 on the X side and g2 on the Z side; ``swapped``
    exchanges the two.  Both orientations are symplectic together, so the
    choice only relabels the Pauli types.  Raises SymplecticViolation when
    the two inputs fail the orthogonality check, which happens exactly when
    the code g2 generates is not inside the code h1 checks.
    """
    if orientation not in ("standard", "swapped"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if h1.field != g2.field:
        raise FieldMismatch("parity check and generator fields differ")
    if h1.cols != g2.cols:
        raise ValueError(f"column counts differ: {h1.cols} vs {g2.cols}")
    f = h1.field
    n = h1.cols
    if orientation == "swapped":
        h1, g2 = g2, h1
    x_part = _stack(h1, PolyMatrix.zeros(f, g2.rows, n))
    z_part = _stack(PolyMatrix.zeros(f, h1.rows, n), g2)
    res = symplectic_residual(x_part, z_part)
    if not res.is_zero():
        for i, row in enumerate(res.e):
            for j, p in enumerate(row):
                if p:
                    raise SymplecticViolation(
                        f"rows {i} and {j} have pairing {list(p)}"
                    )
    return StabilizerMatrix(x_part, z_part)


@dataclass(frozen=True)
class ExpandedStabilizer:
    """Scalar truncation of the semi-infinite stabilizer matrix."""

    matrix: MatrixGF
    frames: int
    rank: int
    defect: int


def semi_infinite_expand(stab: StabilizerMatrix, frames: int) -> ExpandedStabilizer:
    """Unroll the stabilizer over a finite window of frames.

    Block row t holds the stabilizer rows started at time t; columns are
    frame-major with the X half before the Z half inside each frame.
    Rows whose band would extend past the window are truncated, so the
    reported defect counts dependencies among truncated rows as well.
    """
    mu = stab.mu_star
    if frames < mu + 1:
        raise TooFewFrames(f"window of {frames} frames cannot hold degree {mu}")
    f = stab.field
    r, n = stab.rows, stab.n
    coeffs = [
        np.hstack([stab.x_part.coefficient(d).a, stab.z_part.coefficient(d).a])
        for d in range(mu + 1)
    ]
    big = np.zeros((frames * r, frames * 2 * n), dtype=np.int32)
    for t in range(frames):
        for d in range(mu + 1):
            if t + d < frames:
                big[t * r : (t + 1) * r, (t + d) * 2 * n : (t + d + 1) * 2 * n] = coeffs[d]
    m = MatrixGF(f, big)
    rk = m.rank()
    return ExpandedStabilizer(m, frames, rk, frames * r - rk)


@dataclass(frozen=True)
class NestedPair:
    """Two full-rank generators with rowspace(inner) inside rowspace(outer)."""

    outer: PolyMatrix
    inner: PolyMatrix
    witness: PolyMatrix

    @property
    def field(self):
        return self.outer.field

    @property
    def n(self) -> int:
        return self.outer.cols


def build_nested_pair(outer: PolyMatrix, inner: PolyMatrix) -> NestedPair:
    if outer.field != inner.field:
        raise FieldMismatch("outer and inner generators live over different fields")
    if outer.cols != inner.cols:
        raise ValueError(f"column counts differ: {outer.cols} vs {inner.cols}")
    if inner.rows == 0:
        raise ValueError("inner generator needs at least one row")
    if rank_poly(outer) != outer.rows:
        raise RankDeficient("outer generator has dependent rows")
    if rank_poly(inner) != inner.rows:
        raise RankDeficient("inner generator has dependent rows")
    witness = contains(outer, inner)
    if witness @ outer != inner:
        raise ContainmentUnverified("witness does not reproduce the inner generator")
    return NestedPair(outer, inner, witness)


@dataclass(frozen=True)
class AqccParameters:
    """Derived data of the quantum code attached to a nested pair."""

    n: int
    logical: int
    gamma: int
    mu_star: int
    stabilizer: StabilizerMatrix
    pair: NestedPair
    h1: PolyMatrix
    v2_dual: PolyMatrix
    dz: FreeDistanceResult | None = None
    dx: FreeDistanceResult | None = None
    dz_side: str | None = None


def derive_aqcc(
    pair: NestedPair,
    *,
    orientation: str = "standard",
    v1_distance: FreeDistanceResult | None = None,
    v2perp_distance: FreeDistanceResult | None = None,
) -> AqccParameters:
    """Assemble the stabilizer of a nested pair and collect its parameters.

    Distances are optional: when both sides are supplied, the larger one
    is reported as dz and the smaller as dx, matching the convention that
    the Z distance carries the heavier protection.
    """
    k1, k2 = pair.outer.rows, pair.inner.rows
    logical = k1 - k2
    if logical <= 0:
        raise ZeroLogicalDimension(f"k1 = {k1} and k2 = {k2} leave no logical stream")
    h1 = dual_generator(pair.outer)
    g2 = pair.inner if is_reduced(pair.inner) else reduce(pair.inner)
    v2_dual = dual_generator(pair.inner)
    stab = assemble_stabilizer(h1, g2, orientation=orientation)
    gamma = 0
    if h1.rows:
        gamma += degree_accounting(h1).gamma
    gamma += degree_accounting(g2).gamma
    if (v1_distance is None) != (v2perp_distance is None):
        raise ValueError("supply both side distances or neither")
    dz = dx = dz_side = None
    if v1_distance is not None:
        key = lambda r: (r.lower, r.upper)
        if key(v1_distance) >= key(v2perp_distance):
            dz, dx, dz_side = v1_distance, v2perp_distance, "v1"
        else:
            dz, dx, dz_side = v2perp_distance, v1_distance, "v2perp"
    return AqccParameters(
        n=pair.n,
        logical=logical,
        gamma=gamma,
        mu_star=stab.mu_star,
        stabilizer=stab,
        pair=pair,
        h1=h1,
        v2_dual=v2_dual,
        dz=dz,
        dx=dx,
        dz_side=dz_side,
    )
