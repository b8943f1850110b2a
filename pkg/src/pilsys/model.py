"""Domain model: intervals, parametric systems, quantifier assignments,
structural classification, and the on-disk JSON format.

A system is the family A(p) x = b(p) with

    A(p) = A0 + sum_k p_k A^(k),    b(p) = b0 + sum_k p_k b^(k),

p ranging over a box of intervals.  The constant term (A0, b0) is explicit;
every formula treats it as a parameter fixed at 1 with radius 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (Matrix, Q, Vector, mat_vec, qmat, qvec, vec_add, vec_scale,
                    vec_sub, zeros)


class SystemFormatError(ValueError):
    """Raised for malformed system documents, with a location hint."""


@dataclass(frozen=True)
class Interval:
    lo: Q
    hi: Q

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise SystemFormatError(f"interval [{self.lo}, {self.hi}] has lo > hi")

    @property
    def mid(self) -> Q:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Q:
        return (self.hi - self.lo) / 2

    def contains(self, x: Q) -> bool:
        return self.lo <= x <= self.hi

    def is_thin(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class Parameter:
    name: str
    interval: Interval
    A: Matrix  # m x n generator
    b: Vector  # length-m generator


@dataclass
class ParametricSystem:
    m: int
    n: int
    A0: Matrix
    b0: Vector
    params: list[Parameter]

    def __post_init__(self) -> None:
        def check_mat(M: Matrix, what: str) -> None:
            if len(M) != self.m or any(len(row) != self.n for row in M):
                raise SystemFormatError(f"{what} is not {self.m}x{self.n}")

        def check_vec(v: Vector, what: str) -> None:
            if len(v) != self.m:
                raise SystemFormatError(f"{what} does not have length {self.m}")

        check_mat(self.A0, "constant matrix")
        check_vec(self.b0, "constant rhs")
        names = set()
        for par in self.params:
            if par.name in names:
                raise SystemFormatError(f"duplicate parameter name {par.name!r}")
            names.add(par.name)
            check_mat(par.A, f"matrix of parameter {par.name!r}")
            check_vec(par.b, f"rhs of parameter {par.name!r}")

    @property
    def K(self) -> int:
        return len(self.params)

    @property
    def box(self) -> list[Interval]:
        return [par.interval for par in self.params]

    def A_at(self, p: Sequence[Q]) -> Matrix:
        A = [row[:] for row in self.A0]
        for pk, par in zip(p, self.params):
            for i in range(self.m):
                for j in range(self.n):
                    A[i][j] += pk * par.A[i][j]
        return A

    def b_at(self, p: Sequence[Q]) -> Vector:
        b = self.b0[:]
        for pk, par in zip(p, self.params):
            b = vec_add(b, vec_scale(pk, par.b))
        return b

    def midpoint(self) -> Vector:
        return [par.interval.mid for par in self.params]

    def homogenized(self) -> "ParametricSystem":
        """Same matrix family with every right-hand side zeroed."""
        return ParametricSystem(
            self.m, self.n, [row[:] for row in self.A0], zeros(self.m),
            [Parameter(par.name, par.interval, [r[:] for r in par.A], zeros(self.m))
             for par in self.params])


@dataclass(frozen=True)
class QuantifierAssignment:
    forall_set: frozenset[int]
    exists_set: frozenset[int]

    def __post_init__(self) -> None:
        if self.forall_set & self.exists_set:
            raise SystemFormatError("quantifier sets overlap")

    @staticmethod
    def all_exists(K: int) -> "QuantifierAssignment":
        return QuantifierAssignment(frozenset(), frozenset(range(K)))

    @staticmethod
    def all_forall(K: int) -> "QuantifierAssignment":
        return QuantifierAssignment(frozenset(range(K)), frozenset())

    def validate_for(self, K: int) -> None:
        if self.forall_set | self.exists_set != set(range(K)):
            raise SystemFormatError("quantifier sets do not partition the parameters")


@dataclass(frozen=True)
class RhsParameter:
    name: str
    interval: Interval
    d: Vector


@dataclass
class TolerableSystem:
    """A(p) x = b(p) + sum_l q_l d^(l) with p universal and q existential."""

    base: ParametricSystem
    rhs_params: list[RhsParameter]

    def combined(self) -> tuple[ParametricSystem, QuantifierAssignment]:
        """One parametric system: base parameters forall, rhs parameters exists."""
        sys = self.base
        params = list(sys.params)
        zero = [[Q(0)] * sys.n for _ in range(sys.m)]
        for rp in self.rhs_params:
            params.append(Parameter(rp.name, rp.interval,
                                    [row[:] for row in zero], rp.d[:]))
        combined = ParametricSystem(sys.m, sys.n, [row[:] for row in sys.A0],
                                    sys.b0[:], params)
        quant = QuantifierAssignment(
            frozenset(range(sys.K)),
            frozenset(range(sys.K, sys.K + len(self.rhs_params))))
        return combined, quant


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

ORDINARY = "ORDINARY"
FIRST_CLASS = "FIRST_CLASS"
CLASS_C = "CLASS_C"
TOLERABLE_FORM = "TOLERABLE_FORM"
GENERAL = "GENERAL"


@dataclass(frozen=True)
class SystemClass:
    flags: frozenset[str]

    def __contains__(self, flag: str) -> bool:
        return flag in self.flags

    def __str__(self) -> str:
        order = [ORDINARY, FIRST_CLASS, CLASS_C, TOLERABLE_FORM, GENERAL]
        return ",".join(f for f in order if f in self.flags)


def _fold_thin_params(sys: ParametricSystem) -> ParametricSystem:
    """Fold radius-0 parameters into the constant term."""
    if not any(par.interval.is_thin() for par in sys.params):
        return sys
    A0 = [row[:] for row in sys.A0]
    b0 = sys.b0[:]
    kept = []
    for par in sys.params:
        if par.interval.is_thin():
            c = par.interval.lo
            for i in range(sys.m):
                for j in range(sys.n):
                    A0[i][j] += c * par.A[i][j]
            b0 = vec_add(b0, vec_scale(c, par.b))
        else:
            kept.append(par)
    return ParametricSystem(sys.m, sys.n, A0, b0, kept)


def _nonzero_positions(par: Parameter, m: int, n: int) -> list[tuple[int, int]]:
    """Nonzero coefficient positions in the augmented generator (A^(k) | b^(k))."""
    pos = [(i, j) for i in range(m) for j in range(n) if par.A[i][j] != 0]
    pos += [(i, n) for i in range(m) if par.b[i] != 0]
    return pos


def _nonzero_rows(par: Parameter, m: int, n: int) -> set[int]:
    return {i for i, j in _nonzero_positions(par, m, n)}


def classify(sys: ParametricSystem,
             quant: Optional[QuantifierAssignment] = None) -> SystemClass:
    """Structural class flags of a parametric system.

    Thin parameters are folded into the constant term first, so a degenerate
    [c, c] parameter cannot spoil the special-class structure.
    """
    folded = _fold_thin_params(sys)
    m, n = folded.m, folded.n
    flags: set[str] = set()

    first_class = all(len(_nonzero_rows(par, m, n)) <= 1 for par in folded.params)
    if first_class:
        flags.add(FIRST_CLASS)

    positions = [_nonzero_positions(par, m, n) for par in folded.params]
    ordinary = all(len(pos) == 1 for pos in positions)
    if ordinary:
        flat = [pos[0] for pos in positions]
        ordinary = len(flat) == len(set(flat))
    if ordinary:
        flags.add(ORDINARY)

    def matrix_only(par: Parameter) -> bool:
        return all(x == 0 for x in par.b) and len(_nonzero_rows(par, m, n)) <= 1

    def rhs_only(par: Parameter) -> bool:
        return all(x == 0 for row in par.A for x in row) and \
            sum(1 for x in par.b if x != 0) <= 1

    if all(matrix_only(par) or rhs_only(par) for par in folded.params):
        flags.add(CLASS_C)

    if quant is not None:
        quant.validate_for(sys.K)
        if all(all(x == 0 for row in sys.params[k].A for x in row)
               for k in quant.exists_set):
            flags.add(TOLERABLE_FORM)

    if not flags:
        flags.add(GENERAL)
    return SystemClass(frozenset(flags))


def as_tolerable(sys: ParametricSystem,
                 quant: QuantifierAssignment) -> Optional[TolerableSystem]:
    """Tolerable view when every existential parameter is rhs-only."""
    for k in quant.exists_set:
        if any(x != 0 for row in sys.params[k].A for x in row):
            return None
    base_params = [sys.params[k] for k in sorted(quant.forall_set)]
    base = ParametricSystem(sys.m, sys.n, [row[:] for row in sys.A0],
                            sys.b0[:], base_params)
    rhs = [RhsParameter(sys.params[k].name, sys.params[k].interval,
                        sys.params[k].b[:])
           for k in sorted(quant.exists_set)]
    return TolerableSystem(base, rhs)


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------

def residual_vectors(sys: ParametricSystem, x: Sequence[Q]) -> list[Vector]:
    """v^(k) = A^(k) x - b^(k) for k = 0..K; index 0 is the constant term."""
    if len(x) != sys.n:
        raise ValueError(f"point has length {len(x)}, expected {sys.n}")
    out = [vec_sub(mat_vec(sys.A0, x), sys.b0)]
    for par in sys.params:
        out.append(vec_sub(mat_vec(par.A, x), par.b))
    return out


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Q:
    """Exact rational from an integer, decimal, or num/den literal."""
    try:
        return Q(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemFormatError(f"bad number literal {text!r}: {exc}") from None


def _parse_matrix(obj, m: int, n: int, where: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != m:
        raise SystemFormatError(f"{where}: expected {m} rows")
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise SystemFormatError(f"{where}, row {i}: expected {n} entries")
        out.append([parse_rational(x) for x in row])
    return out


def _parse_vector(obj, m: int, where: str) -> Vector:
    if not isinstance(obj, list) or len(obj) != m:
        raise SystemFormatError(f"{where}: expected {m} entries")
    return [parse_rational(x) for x in obj]


@dataclass
class ParsedSystem:
    system: ParametricSystem
    quant: QuantifierAssignment
    explicit_quantifiers: bool
    tolerable: Optional[TolerableSystem]


def parse_system(text: str) -> ParsedSystem:
    """Parse the JSON system document.

    Quantifiers default to existential (the united solution set) when the
    document omits them.  A tolerable view is attached when the existential
    parameters touch only the right-hand side.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SystemFormatError("top level must be an object")
    for key in ("m", "n"):
        if not isinstance(doc.get(key), int) or doc[key] < 1:
            raise SystemFormatError(f"{key!r} must be a positive integer")
    m, n = doc["m"], doc["n"]

    const = doc.get("constant", {})
    A0 = _parse_matrix(const["A"], m, n, "constant.A") if "A" in const \
        else [[Q(0)] * n for _ in range(m)]
    b0 = _parse_vector(const["b"], m, "constant.b") if "b" in const \
        else zeros(m)

    params: list[Parameter] = []
    forall: set[int] = set()
    explicit = False
    for k, pdoc in enumerate(doc.get("parameters", [])):
        where = f"parameters[{k}]"
        if not isinstance(pdoc, dict):
            raise SystemFormatError(f"{where}: expected an object")
        name = pdoc.get("name", f"p{k + 1}")
        iv = pdoc.get("interval")
        if not isinstance(iv, list) or len(iv) != 2:
            raise SystemFormatError(f"{where}.interval: expected [lo, hi]")
        interval = Interval(parse_rational(iv[0]), parse_rational(iv[1]))
        A = _parse_matrix(pdoc["A"], m, n, f"{where}.A") if "A" in pdoc \
            else [[Q(0)] * n for _ in range(m)]
        b = _parse_vector(pdoc["b"], m, f"{where}.b") if "b" in pdoc \
            else zeros(m)
        quant = pdoc.get("quantifier", "exists")
        if quant not in ("forall", "exists"):
            raise SystemFormatError(f"{where}.quantifier: must be forall or exists")
        if "quantifier" in pdoc:
            explicit = True
        if quant == "forall":
            forall.add(k)
        params.append(Parameter(name, interval, A, b))

    system = ParametricSystem(m, n, A0, b0, params)
    quant = QuantifierAssignment(frozenset(forall),
                                 frozenset(range(system.K)) - frozenset(forall))
    tolerable = as_tolerable(system, quant) if explicit else None
    return ParsedSystem(system, quant, explicit, tolerable)


def serialize_system(parsed: ParsedSystem) -> str:
    """Inverse of parse_system on the semantic content."""
    sys = parsed.system

    def fmt(x: Q) -> str:
        return str(x)

    doc = {
        "m": sys.m,
        "n": sys.n,
        "constant": {"A": [[fmt(x) for x in row] for row in sys.A0],
                     "b": [fmt(x) for x in sys.b0]},
        "parameters": [],
    }
    for k, par in enumerate(sys.params):
        pdoc = {
            "name": par.name,
            "interval": [fmt(par.interval.lo), fmt(par.interval.hi)],
            "A": [[fmt(x) for x in row] for row in par.A],
            "b": [fmt(x) for x in par.b],
        }
        if parsed.explicit_quantifiers:
            pdoc["quantifier"] = "forall" if k in parsed.quant.forall_set else "exists"
        doc["parameters"].append(pdoc)
    return json.dumps(doc, indent=1)
