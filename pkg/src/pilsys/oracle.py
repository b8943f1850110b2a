"""Independent brute-force verification paths.

The membership oracles here deliberately avoid the simplex solver: they
decide feasibility by Fourier-Motzkin elimination only, so agreement with the
LP-based membership tests is a meaningful cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exact import (AffineSolutionSet, Polyhedron, Q, UniqueSolution,
                    Vector, fm_feasible, lin_solve, zeros)
from .membership import (member_ae, member_kernel, member_tolerable,
                         member_united)
from .model import (ParametricSystem, QuantifierAssignment, TolerableSystem,
                    residual_vectors)

_FM_CAP = 12


def _p_polyhedron(sys: ParametricSystem, residuals: list[Vector],
                  indices: Sequence[int], rhs: Vector) -> Polyhedron:
    dim = len(indices)
    C, d = [], []
    for col, k in enumerate(indices):
        iv = sys.params[k].interval
        row = zeros(dim)
        row[col] = Q(1)
        C.append(row)
        d.append(iv.hi)
        row = zeros(dim)
        row[col] = Q(-1)
        C.append(row)
        d.append(-iv.lo)
    E = [[residuals[k + 1][i] for k in indices] for i in range(sys.m)]
    return Polyhedron(C, d, E, rhs[:], dim)


def fm_member_oracle(sys: ParametricSystem, x: Sequence[Q]) -> bool:
    """United membership decided purely by Fourier-Motzkin elimination."""
    if sys.K > _FM_CAP:
        raise ValueError(f"K = {sys.K} exceeds the FM oracle cap of {_FM_CAP}")
    residuals = residual_vectors(sys, x)
    rhs = [-residuals[0][i] for i in range(sys.m)]
    P = _p_polyhedron(sys, residuals, list(range(sys.K)), rhs)
    return fm_feasible(P)


def ae_vertex_oracle(sys: ParametricSystem, quant: QuantifierAssignment,
                     x: Sequence[Q]) -> bool:
    """AE membership by universal vertex enumeration over an FM inner oracle."""
    quant.validate_for(sys.K)
    forall = sorted(quant.forall_set)
    exists = sorted(quant.exists_set)
    if len(forall) > _FM_CAP or len(exists) > _FM_CAP:
        raise ValueError("quantifier block exceeds the FM oracle cap")
    residuals = residual_vectors(sys, x)
    for vertex in _vertices(sys, forall):
        rhs = [-residuals[0][i] for i in range(sys.m)]
        for k, pk in zip(forall, vertex):
            rhs = [r - pk * residuals[k + 1][i] for i, r in enumerate(rhs)]
        P = _p_polyhedron(sys, residuals, exists, rhs)
        if not fm_feasible(P):
            return False
    return True


def _vertices(sys: ParametricSystem, indices: Sequence[int]):
    if not indices:
        yield []
        return
    k, rest = indices[0], indices[1:]
    iv = sys.params[k].interval
    ends = [iv.lo] if iv.lo == iv.hi else [iv.lo, iv.hi]
    for v in ends:
        for tail in _vertices(sys, rest):
            yield [v] + tail


def sample_solution_cloud(sys: ParametricSystem, grid_per_param: int = 5,
                          seed: int = 0) -> list[Vector]:
    """Unique solutions of A(p) x = b(p) on a uniform rational grid over the box.

    Parameter values where the system is singular or inconsistent are skipped.
    Deterministic; the seed is accepted for interface stability only.
    """
    if grid_per_param < 2:
        raise ValueError("grid_per_param must be at least 2")
    points: list[Vector] = []
    seen = set()
    for p in _grid(sys, grid_per_param):
        res = lin_solve(sys.A_at(p), sys.b_at(p))
        if isinstance(res, UniqueSolution):
            key = tuple(res.point)
            if key not in seen:
                seen.add(key)
                points.append(res.point)
    return points


def _grid(sys: ParametricSystem, steps: int):
    def axis(k: int):
        iv = sys.params[k].interval
        if iv.lo == iv.hi:
            return [iv.lo]
        return [iv.lo + Q(i, steps - 1) * (iv.hi - iv.lo) for i in range(steps)]

    def rec(k: int):
        if k == sys.K:
            yield []
            return
        for v in axis(k):
            for tail in rec(k + 1):
                yield [v] + tail

    yield from rec(0)


UNITED = "UNITED"
AE = "AE"
TOLERABLE = "TOLERABLE"
KERNEL = "KERNEL"


def rasterize(sys: ParametricSystem, quant: Optional[QuantifierAssignment],
              window: tuple[Q, Q, Q, Q], resolution: int,
              which: str = UNITED,
              tolerable: Optional[TolerableSystem] = None) -> list[list[bool]]:
    """Exact membership on a rational grid over a 2-D window (row-major)."""
    if sys.n != 2:
        raise ValueError("rasterization requires n = 2")
    if not 2 <= resolution <= 512:
        raise ValueError("resolution must be between 2 and 512")
    x_lo, x_hi, y_lo, y_hi = (Q(v) for v in window)

    def coords(lo: Q, hi: Q):
        return [lo + Q(i, resolution - 1) * (hi - lo) for i in range(resolution)]

    def member(pt: Vector) -> bool:
        if which == UNITED:
            return member_united(sys, pt)[0]
        if which == KERNEL:
            return member_kernel(sys, pt)[0]
        if which == AE:
            if quant is None:
                raise ValueError("AE raster needs a quantifier assignment")
            return member_ae(sys, quant, pt)[0]
        if which == TOLERABLE:
            if tolerable is None:
                raise ValueError("TOLERABLE raster needs a tolerable view")
            return member_tolerable(tolerable, pt)[0]
        raise ValueError(f"unknown set {which!r}")

    xs = coords(x_lo, x_hi)
    ys = coords(y_lo, y_hi)
    return [[member([x1, x2]) for x2 in ys] for x1 in xs]


def raster_csv(sys: ParametricSystem, quant: Optional[QuantifierAssignment],
               window: tuple[Q, Q, Q, Q], resolution: int,
               which: str = UNITED,
               tolerable: Optional[TolerableSystem] = None) -> str:
    """CSV serialization: header x1,x2,member; rationals as num/den; 0/1 flags."""
    grid = rasterize(sys, quant, window, resolution, which, tolerable)
    x_lo, x_hi, y_lo, y_hi = (Q(v) for v in window)

    def coords(lo: Q, hi: Q):
        return [lo + Q(i, resolution - 1) * (hi - lo) for i in range(resolution)]

    def fmt(v: Q) -> str:
        return f"{v.numerator}/{v.denominator}"

    lines = ["x1,x2,member"]
    xs = coords(x_lo, x_hi)
    ys = coords(y_lo, y_hi)
    for i, x1 in enumerate(xs):
        for j, x2 in enumerate(ys):
            lines.append(f"{fmt(x1)},{fmt(x2)},{1 if grid[i][j] else 0}")
    return "\n".join(lines) + "\n"
