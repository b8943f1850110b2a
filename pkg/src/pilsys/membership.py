"""Membership tests for united, AE, and tolerable solution sets and their
kernels, with machine-checkable certificates.

A positive answer carries a witness parameter vector that re-substitutes to an
exact equality.  A negative answer carries a separating vector w for which the
characterization inequality

    w.(A(mid p) x - b(mid p))
        <= sum_{k existential} rad(p_k) |w.(A^(k) x - b^(k))|
         - sum_{k universal}   rad(p_k) |w.(A^(k) x - b^(k))|

fails strictly; validate_certificate re-checks that violation exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (FarkasCertificate, Feasible, Infeasible, Polyhedron, Q,
                    Vector, dot, lp_feasible, lp_maximize, vec_add, vec_scale,
                    zeros)
from .model import (ParametricSystem, QuantifierAssignment, TolerableSystem,
                    residual_vectors)


class CertKind(Enum):
    WITNESS = "WITNESS"
    SEPARATOR = "SEPARATOR"


@dataclass(frozen=True)
class Certificate:
    kind: CertKind
    witness_p: Optional[Vector] = None
    separator: Optional[FarkasCertificate] = None

    @staticmethod
    def witness(p: Vector) -> "Certificate":
        return Certificate(CertKind.WITNESS, witness_p=p)

    @staticmethod
    def separator(fc: FarkasCertificate) -> "Certificate":
        return Certificate(CertKind.SEPARATOR, separator=fc)


def _exists_polyhedron(sys: ParametricSystem, residuals: list[Vector],
                       exists: Sequence[int], rhs: Vector) -> Polyhedron:
    """{p_E in box_E : sum_{k in E} p_k v^(k) = rhs} over the listed indices."""
    dim = len(exists)
    C, d = [], []
    for col, k in enumerate(exists):
        iv = sys.params[k].interval
        row = zeros(dim)
        row[col] = Q(1)
        C.append(row)
        d.append(iv.hi)
        row = zeros(dim)
        row[col] = Q(-1)
        C.append(row)
        d.append(-iv.lo)
    E = [[residuals[k + 1][i] for k in exists] for i in range(sys.m)]
    return Polyhedron(C, d, E, rhs[:], dim)


def _separator_from_farkas(sys: ParametricSystem, residuals: list[Vector],
                           exists: Sequence[int],
                           eq_mult: Vector) -> FarkasCertificate:
    """Canonical complementary certificate (w, u, v) from equality multipliers."""
    w = eq_mult[:]
    u, v = [], []
    for k in exists:
        t = dot(w, residuals[k + 1])
        u.append(max(-t, Q(0)))
        v.append(max(t, Q(0)))
    return FarkasCertificate(w, u, v)


def member_united(sys: ParametricSystem, x: Sequence[Q]) -> tuple[bool, Certificate]:
    """Is x in the united solution set?"""
    residuals = residual_vectors(sys, x)
    exists = list(range(sys.K))
    rhs = [-residuals[0][i] for i in range(sys.m)]
    P = _exists_polyhedron(sys, residuals, exists, rhs)
    res = lp_feasible(P)
    if isinstance(res, Feasible):
        return True, Certificate.witness(res.point)
    fc = _separator_from_farkas(sys, residuals, exists, res.eq_mult)
    return False, Certificate.separator(fc)


def member_kernel(sys: ParametricSystem, y: Sequence[Q]) -> tuple[bool, Certificate]:
    """Is y in the united kernel, i.e. A(p) y = 0 for some admissible p?"""
    return member_united(sys.homogenized(), y)


def member_ae(sys: ParametricSystem, quant: QuantifierAssignment,
              x: Sequence[Q]) -> tuple[bool, Certificate]:
    """Is x in the AE solution set for the given quantifier assignment?

    The admissible universal parameters form a convex set (projection of a
    polyhedron), so containment of the whole universal box is decided at its
    vertices.  The vertex enumeration is capped at 20 universal parameters.
    """
    quant.validate_for(sys.K)
    forall = sorted(quant.forall_set)
    exists = sorted(quant.exists_set)
    if len(forall) > 20:
        raise ValueError("more than 20 universal parameters")
    residuals = residual_vectors(sys, x)

    witness: Optional[Vector] = None
    for vertex in _box_vertices(sys, forall):
        rhs = [-residuals[0][i] for i in range(sys.m)]
        for k, pk in zip(forall, vertex):
            rhs = [r - pk * residuals[k + 1][i] for i, r in enumerate(rhs)]
        P = _exists_polyhedron(sys, residuals, exists, rhs)
        res = lp_feasible(P)
        if isinstance(res, Infeasible):
            fc = _separator_from_farkas(sys, residuals, exists, res.eq_mult)
            return False, Certificate.separator(fc)
        if witness is None:
            p_full = zeros(sys.K)
            for k, pk in zip(forall, vertex):
                p_full[k] = pk
            for k, pk in zip(exists, res.point):
                p_full[k] = pk
            witness = p_full
    assert witness is not None
    return True, Certificate.witness(witness)


def _box_vertices(sys: ParametricSystem, indices: Sequence[int]):
    """Vertices of the sub-box over the given parameter indices (lex order)."""
    if not indices:
        yield []
        return
    k, rest = indices[0], indices[1:]
    iv = sys.params[k].interval
    ends = [iv.lo] if iv.is_thin() else [iv.lo, iv.hi]
    for v in ends:
        for tail in _box_vertices(sys, rest):
            yield [v] + tail


def member_ae_kernel(sys: ParametricSystem, quant: QuantifierAssignment,
                     y: Sequence[Q]) -> tuple[bool, Certificate]:
    """AE membership of the homogenized system."""
    return member_ae(sys.homogenized(), quant, y)


def member_tolerable(tsys: TolerableSystem,
                     x: Sequence[Q]) -> tuple[bool, Certificate]:
    """Is x in the tolerable solution set?"""
    combined, quant = tsys.combined()
    return member_ae(combined, quant, x)


def kernel_tolerable(tsys: TolerableSystem, y: Sequence[Q]) -> bool:
    """A(p) y = 0 for *all* p in the box: an exact finite test.

    The condition is affine in p, so it holds on the box iff it holds at the
    midpoint and every generator direction vanishes.
    """
    sys = tsys.base
    if len(y) != sys.n:
        raise ValueError(f"direction has length {len(y)}, expected {sys.n}")
    mid = sys.A_at(sys.midpoint())
    if any(dot(row, y) != 0 for row in mid):
        return False
    for par in sys.params:
        if par.interval.rad != 0:
            if any(dot(row, y) != 0 for row in par.A):
                return False
    return True


def strict_kernel_member(sys: ParametricSystem,
                         y: Sequence[Q]) -> tuple[bool, Q]:
    """Does 0 lie in the interior of the zonotope Z(y) = {A(p) y : p in box}?

    Decided by 2m exact LPs: for each coordinate direction +-e_i, maximize
    eps with eps*(+-e_i) in Z(y).  The minimum of the maxima is returned; it
    is positive exactly when 0 is interior.
    """
    if len(y) != sys.n:
        raise ValueError(f"direction has length {len(y)}, expected {sys.n}")
    m = sys.m
    center = sys.A_at(sys.midpoint())
    c = [dot(row, y) for row in center]
    gens = [[dot(row, y) for row in par.A] for par in sys.params]
    rads = [par.interval.rad for par in sys.params]

    best: Optional[Q] = None
    for i in range(m):
        for sign in (Q(1), Q(-1)):
            val = _zonotope_reach(c, gens, rads, i, sign, m)
            if val is None or val <= 0:
                return False, val if val is not None else Q(0)
            if best is None or val < best:
                best = val
    if best is None:  # m == 0
        best = Q(1)
    return best > 0, best


def strict_kernel_member_ae(sys: ParametricSystem, quant: QuantifierAssignment,
                            y: Sequence[Q]) -> tuple[bool, Q]:
    """Strict form of AE kernel membership.

    The characterization inequality must hold strictly for every nonzero w,
    which is equivalent to containment of the universally-shifted center in
    the interior of the existential generator zonotope; that containment is
    decided at the vertices of the universal box.
    """
    quant.validate_for(sys.K)
    if len(y) != sys.n:
        raise ValueError(f"direction has length {len(y)}, expected {sys.n}")
    m = sys.m
    center = sys.A_at(sys.midpoint())
    c = [dot(row, y) for row in center]
    gens_all = [[dot(row, y) for row in par.A] for par in sys.params]
    forall = sorted(quant.forall_set)
    exists = sorted(quant.exists_set)
    e_gens = [gens_all[k] for k in exists]
    e_rads = [sys.params[k].interval.rad for k in exists]

    best: Optional[Q] = None
    for deviations in _deviation_vertices(sys, forall):
        q = c[:]
        for k, t in zip(forall, deviations):
            q = [a + t * g for a, g in zip(q, gens_all[k])]
        for i in range(m):
            for sign in (Q(1), Q(-1)):
                val = _zonotope_reach(q, e_gens, e_rads, i, sign, m)
                if val is None or val <= 0:
                    return False, val if val is not None else Q(0)
                if best is None or val < best:
                    best = val
    if best is None:  # m == 0
        best = Q(1)
    return best > 0, best


def _deviation_vertices(sys: ParametricSystem, indices: Sequence[int]):
    """Vertices of the universal box as deviations from the midpoint."""
    if not indices:
        yield []
        return
    k, rest = indices[0], indices[1:]
    rad = sys.params[k].interval.rad
    ends = [Q(0)] if rad == 0 else [-rad, rad]
    for t in ends:
        for tail in _deviation_vertices(sys, rest):
            yield [t] + tail


def _zonotope_reach(c: Vector, gens: list[Vector], rads: list[Q],
                    coord: int, sign: Q, m: int) -> Optional[Q]:
    """max eps with c + sum t_k g^(k) = eps*sign*e_coord, |t_k| <= rad_k."""
    K = len(gens)
    dim = K + 1  # t_1..t_K, eps
    C, d = [], []
    for k in range(K):
        row = zeros(dim)
        row[k] = Q(1)
        C.append(row)
        d.append(rads[k])
        row = zeros(dim)
        row[k] = Q(-1)
        C.append(row)
        d.append(rads[k])
    E, f = [], []
    for i in range(m):
        row = [gens[k][i] for k in range(K)]
        row.append(-sign if i == coord else Q(0))
        E.append(row)
        f.append(-c[i])
    P = Polyhedron(C, d, E, f, dim)
    obj = zeros(dim)
    obj[K] = Q(1)
    status, value, _ = lp_maximize(P, obj)
    if status != "optimal":
        return None  # infeasible cannot reach the axis; unbounded cannot occur
    return value


def member_first_class(sys: ParametricSystem, x: Sequence[Q]) -> bool:
    """First-class characterization: |A(mid)x - b(mid)| <= sum rad |A^(k)x - b^(k)|."""
    from .model import FIRST_CLASS, classify
    if FIRST_CLASS not in classify(sys):
        raise ValueError("system is not of the first class")
    residuals = residual_vectors(sys, x)
    mid = residuals[0][:]
    for par, v in zip(sys.params, residuals[1:]):
        mid = vec_add(mid, vec_scale(par.interval.mid, v))
    for i in range(sys.m):
        rhs_i = sum((par.interval.rad * abs(residuals[k + 1][i])
                     for k, par in enumerate(sys.params)), Q(0))
        if abs(mid[i]) > rhs_i:
            return False
    return True


def validate_certificate(sys: ParametricSystem,
                         quant: Optional[QuantifierAssignment],
                         x: Sequence[Q], cert: Certificate) -> bool:
    """Check a SEPARATOR exactly: the characterization inequality must fail."""
    if cert.kind is not CertKind.SEPARATOR:
        raise ValueError("only SEPARATOR certificates can be validated")
    if quant is None:
        quant = QuantifierAssignment.all_exists(sys.K)
    w = cert.separator.w
    residuals = residual_vectors(sys, x)
    mid = residuals[0][:]
    for par, v in zip(sys.params, residuals[1:]):
        mid = vec_add(mid, vec_scale(par.interval.mid, v))
    lhs = dot(w, mid)
    rhs = Q(0)
    for k, par in enumerate(sys.params):
        term = par.interval.rad * abs(dot(w, residuals[k + 1]))
        rhs += term if k in quant.exists_set else -term
    return lhs > rhs


def witness_resubstitutes(sys: ParametricSystem, x: Sequence[Q],
                          cert: Certificate) -> bool:
    """Check a WITNESS exactly: A(p) x = b(p) and p inside the box."""
    if cert.kind is not CertKind.WITNESS:
        raise ValueError("not a WITNESS certificate")
    p = cert.witness_p
    if len(p) != sys.K:
        return False
    if not all(par.interval.contains(pk) for pk, par in zip(p, sys.params)):
        return False
    A = sys.A_at(p)
    b = sys.b_at(p)
    return all(dot(row, x) == bi for row, bi in zip(A, b))
