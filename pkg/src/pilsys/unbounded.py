"""Three-tier decision of unbounded directions.

The kernel is necessary for unboundedness; strict kernel membership plus a
base point is sufficient; for ordinary and class-C systems the kernel pieces
characterize unboundedness exactly.  Everything else is probed along the ray
and reported honestly as UNKNOWN with the probe trace as evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import (AffineSolutionSet, Q, UniqueSolution, Vector, lin_solve,
                    vec_add, vec_scale, zeros)
from .membership import (Certificate, member_ae, member_ae_kernel,
                         member_kernel, member_tolerable, member_united,
                         strict_kernel_member, kernel_tolerable)
from .model import (CLASS_C, ORDINARY, ParametricSystem, QuantifierAssignment,
                    TolerableSystem, classify)


class Status(Enum):
    CERTIFIED_YES = "CERTIFIED_YES"
    CERTIFIED_NO = "CERTIFIED_NO"
    UNKNOWN = "UNKNOWN"


class Rule(Enum):
    THM2 = "THM2"
    THM3 = "THM3"
    PROP1 = "PROP1"
    PROP2 = "PROP2"
    THM7 = "THM7"
    PROBE = "PROBE"


@dataclass
class ProbeReport:
    base_point: Vector
    direction: Vector
    alphas_tested: list[Q]
    first_exit: Optional[Q]
    exhausted: bool


@dataclass
class UnboundedVerdict:
    status: Status
    rule: Rule
    evidence: object  # Certificate | ProbeReport | list[ProbeReport] | piece ref
    detail: str = ""


def _membership_fn(quant: Optional[QuantifierAssignment]):
    def member(sys: ParametricSystem, x: Sequence[Q]) -> bool:
        if quant is None or not quant.forall_set:
            return member_united(sys, x)[0]
        return member_ae(sys, quant, x)[0]
    return member


def find_base_points(sys: ParametricSystem,
                     quant: Optional[QuantifierAssignment] = None,
                     budget: int = 16, seed: int = 0) -> list[Vector]:
    """Member points found by solving the system at sampled parameter values.

    Candidates come from the box midpoint, box vertices, and seeded random
    box points; each is kept only if it passes the exact membership test.
    Deterministic for a fixed seed.
    """
    member = _membership_fn(quant)
    rng = random.Random(seed)
    samples: list[Vector] = [sys.midpoint()]
    for vertex in _vertex_stream(sys, budget):
        samples.append(vertex)
    for _ in range(budget):
        p = []
        for par in sys.params:
            lo, hi = par.interval.lo, par.interval.hi
            t = Q(rng.randint(0, 8), 8)
            p.append(lo + t * (hi - lo))
        samples.append(p)

    points: list[Vector] = []
    seen = set()
    for p in samples[: 2 * budget + 1]:
        res = lin_solve(sys.A_at(p), sys.b_at(p))
        if isinstance(res, (UniqueSolution, AffineSolutionSet)):
            x = res.point
            key = tuple(x)
            if key not in seen and member(sys, x):
                seen.add(key)
                points.append(x)
        if len(points) >= budget:
            break
    return points


def _vertex_stream(sys: ParametricSystem, limit: int):
    if sys.K == 0:
        return
    count = 0
    for mask in range(2 ** sys.K):
        if count >= limit:
            return
        p = []
        for k, par in enumerate(sys.params):
            p.append(par.interval.hi if (mask >> k) & 1 else par.interval.lo)
        yield p
        count += 1


def probe_ray(sys: ParametricSystem, quant: Optional[QuantifierAssignment],
              x0: Sequence[Q], y: Sequence[Q],
              max_doublings: int = 20) -> ProbeReport:
    """Test membership of x0 + alpha*y at alpha = 0, 1, 2, 4, ..., 2^max_doublings."""
    member = _membership_fn(quant)
    if not member(sys, list(x0)):
        raise ValueError("probe base point is not a member")
    alphas = [Q(0)] + [Q(2) ** i for i in range(max_doublings + 1)]
    tested: list[Q] = []
    first_exit: Optional[Q] = None
    for a in alphas:
        tested.append(a)
        pt = vec_add(list(x0), vec_scale(a, list(y)))
        if not member(sys, pt):
            first_exit = a
            break
    return ProbeReport(list(x0), list(y), tested, first_exit,
                       exhausted=first_exit is None)


def decide_unbounded(sys: ParametricSystem,
                     quant: Optional[QuantifierAssignment],
                     y: Sequence[Q], budget: int = 8, seed: int = 0,
                     max_doublings: int = 20) -> UnboundedVerdict:
    """Decision cascade for 'is y an unbounded direction of the solution set'."""
    y = list(y)
    have_forall = quant is not None and bool(quant.forall_set)

    # (i) kernel membership is necessary
    if have_forall:
        in_kernel, cert = member_ae_kernel(sys, quant, y)
    else:
        in_kernel, cert = member_kernel(sys, y)
    if not in_kernel:
        return UnboundedVerdict(Status.CERTIFIED_NO, Rule.THM2, cert,
                                "direction is not in the kernel")

    base_points = find_base_points(sys, quant, budget=budget, seed=seed)

    # (ii) strict kernel membership plus a base point is sufficient
    if have_forall:
        from .membership import strict_kernel_member_ae
        strict, eps = strict_kernel_member_ae(sys, quant, y)
    else:
        strict, eps = strict_kernel_member(sys, y)
    if strict and base_points:
        # The unbounded ray emerges beyond some threshold shift along y, so
        # slide the reported base point up the ray until its probe is clean.
        base = _ray_base_point(sys, quant, base_points, y, max_doublings)
        return UnboundedVerdict(
            Status.CERTIFIED_YES, Rule.THM3, base,
            f"strict kernel membership (eps = {eps}) with a base point")

    # (iii) special classes: kernel pieces characterize unboundedness
    if not have_forall:
        flags = classify(sys)
        if ORDINARY in flags or CLASS_C in flags:
            from .cones import decompose
            dec = decompose(sys)
            if any(p.nonempty for p in dec.pieces):
                for piece in dec.pieces:
                    if piece.nonempty and piece.kernel_piece.contains(y):
                        rule = Rule.PROP1 if dec.mode == "ORTHANT" else Rule.PROP2
                        return UnboundedVerdict(
                            Status.CERTIFIED_YES, rule, piece,
                            f"kernel piece {piece.sign} with nonempty solution piece")

    # (iv) probing fallback
    reports = []
    for x0 in base_points:
        rep = probe_ray(sys, quant, x0, y, max_doublings)
        reports.append(rep)
        if rep.exhausted:
            return UnboundedVerdict(
                Status.UNKNOWN, Rule.PROBE, rep,
                f"no exit through alpha = 2^{max_doublings} from base "
                f"{tuple(x0)}; kernel: yes; strict: no")
    detail = "no base point found" if not reports else \
        "every probe exits; kernel: yes; strict: no"
    return UnboundedVerdict(Status.UNKNOWN, Rule.PROBE, reports, detail)


def _ray_base_point(sys: ParametricSystem,
                    quant: Optional[QuantifierAssignment],
                    base_points: list[Vector], y: Vector,
                    max_doublings: int) -> Vector:
    """A member point on the ray whose forward probe along y never exits.

    Membership along the ray is guaranteed only beyond a threshold shift, so
    candidate base points x0 + s*y are tried for doubling shifts s.  Falls
    back to the first base point if no clean probe is found in budget.
    """
    member = _membership_fn(quant)
    shifts = [Q(0)] + [Q(2) ** i for i in range(max_doublings + 1)]
    for x0 in base_points:
        for s in shifts:
            x1 = vec_add(x0, vec_scale(s, y))
            if not member(sys, x1):
                continue
            if probe_ray(sys, quant, x1, y, max_doublings).exhausted:
                return x1
    return base_points[0]


def decide_unbounded_tolerable(tsys: TolerableSystem, y: Sequence[Q],
                               budget: int = 8,
                               seed: int = 0) -> UnboundedVerdict:
    """For tolerable systems with a base point, the kernel decides exactly."""
    y = list(y)
    combined, quant = tsys.combined()
    base_points = find_base_points(combined, quant, budget=budget, seed=seed)
    if not base_points:
        return UnboundedVerdict(Status.UNKNOWN, Rule.THM7, None,
                                "no base point of the tolerable set found")
    if kernel_tolerable(tsys, y):
        return UnboundedVerdict(Status.CERTIFIED_YES, Rule.THM7,
                                base_points[0], "tolerable kernel holds")
    return UnboundedVerdict(Status.CERTIFIED_NO, Rule.THM7, base_points[0],
                            "tolerable kernel fails")
