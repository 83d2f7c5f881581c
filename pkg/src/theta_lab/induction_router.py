"""Inductive short paths in Theta_5 with auditable certificates.

For a pair (a, b) that is not an edge, c is a's cone neighbour towards b and
d is b's cone neighbour towards a.  The position of c and d decides which of
three inequalities drives the induction:

    A:  |ac| + K|cb|         <= K|ab|   recurse on (c, b)
    B:  |bd| + K|da|         <= K|ab|   recurse on (d, a)
    C:  |ac| + K|cd| + |db|  <= K|ab|   recurse on (c, d)

Every step is recorded so the resulting path can be re-checked without
trusting this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import InductionError, PreconditionError
from .geometry import (
    CanonicalFrame,
    Pentagon,
    Point,
    cone_index,
    dist,
    normalize_pair,
    orient,
    pentagon_pab,
    point_in_triangle,
    segments_cross,
)
from .theta_graph import ThetaGraph

K_THEOREM = 5.70
STEP_RTOL = 1e-9
SIDE_TOL = 1e-12


class CaseLabel(str, Enum):
    DIRECT_EDGE = "DIRECT_EDGE"
    C_RIGHT_AB = "C_RIGHT_AB"
    D_RIGHT_AB = "D_RIGHT_AB"
    C_IN_TBA = "C_IN_TBA"
    C_NOT_IN_PAB = "C_NOT_IN_PAB"
    D_RIGHT_AM = "D_RIGHT_AM"
    D_LEFT_AM_ABOVE_C = "D_LEFT_AM_ABOVE_C"
    D_BELOW_C_NOT_IN_PAB = "D_BELOW_C_NOT_IN_PAB"
    BOTH_IN_PAB_CROSSING = "BOTH_IN_PAB_CROSSING"


# case -> (lemma number, inequality, constant the lemma is proved for)
CASE_TABLE = {
    CaseLabel.C_RIGHT_AB: (8, "A", 4.53),
    CaseLabel.D_RIGHT_AB: (9, "B", 4.53),
    CaseLabel.C_IN_TBA: (10, "A", 5.70),
    CaseLabel.C_NOT_IN_PAB: (11, "A", 4.53),
    CaseLabel.D_RIGHT_AM: (12, "B", 3.24),
    CaseLabel.D_LEFT_AM_ABOVE_C: (13, "C", 4.53),
    CaseLabel.D_BELOW_C_NOT_IN_PAB: (14, "B", 5.70),
    CaseLabel.BOTH_IN_PAB_CROSSING: (15, "C", 6.16),
}


def _right_of(p: Point, q: Point, x: Point) -> bool:
    return orient(p, q, x) < -SIDE_TOL * dist(p, q) ** 2


def classify_case(frame: CanonicalFrame, c: Point, d: Point, pab: Pentagon) -> CaseLabel:
    """Place (c, d) in the eight-way case breakdown.

    All points are in the normalized frame.  ``c == b`` or ``d == a`` would
    mean ab is an edge, which the caller must handle first.
    """
    a, b = frame.a, frame.b
    if c is None or d is None or c == b or d == a:
        raise PreconditionError("classify_case needs c and d with ab not an edge")
    if _right_of(a, b, c):
        return CaseLabel.C_RIGHT_AB
    if _right_of(a, b, d):
        return CaseLabel.D_RIGHT_AB
    if point_in_triangle(c, frame.t_ba):
        return CaseLabel.C_IN_TBA
    if not pab.contains(c):
        return CaseLabel.C_NOT_IN_PAB
    if _right_of(a, frame.m, d):
        return CaseLabel.D_RIGHT_AM
    if d.y > c.y:
        return CaseLabel.D_LEFT_AM_ABOVE_C
    if not pab.contains(d):
        return CaseLabel.D_BELOW_C_NOT_IN_PAB
    return CaseLabel.BOTH_IN_PAB_CROSSING


def inequality_sides(kind: str, a, b, c, d, K: float) -> tuple[float, float]:
    """(lhs, rhs) of inequality A, B or C for the given points."""
    rhs = K * dist(a, b)
    if kind == "A":
        return dist(a, c) + K * dist(c, b), rhs
    if kind == "B":
        return dist(b, d) + K * dist(d, a), rhs
    if kind == "C":
        return dist(a, c) + K * dist(c, d) + dist(d, b), rhs
    raise ValueError(f"unknown inequality {kind!r}")


@dataclass(frozen=True)
class Step:
    label: CaseLabel
    pair: tuple[int, int]
    c: Optional[int] = None
    d: Optional[int] = None
    sub_pair: Optional[tuple[int, int]] = None
    kind: Optional[str] = None
    lhs: float = 0.0
    rhs: float = 0.0
    holds: bool = True
    holds_at_case_K: bool = True
    alpha: Optional[float] = None
    swapped: bool = False
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "pair": list(self.pair),
            "c": self.c,
            "d": self.d,
            "sub_pair": None if self.sub_pair is None else list(self.sub_pair),
            "inequality": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "holds_at_case_K": self.holds_at_case_K,
            "alpha": self.alpha,
            "swapped": self.swapped,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class PathCertificate:
    pair: tuple[int, int]
    path: tuple[int, ...]
    steps: tuple[Step, ...]
    total_length: float
    K: float
    bound: float
    problems: tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "path": list(self.path),
            "total_length": self.total_length,
            "K": self.K,
            "bound": self.bound,
            "valid": self.valid,
            "problems": list(self.problems),
            "steps": [s.to_dict() for s in self.steps],
        }


class InductiveRouter:
    """Builds certificates for one graph, sharing sub-results between pairs."""

    def __init__(self, g: ThetaGraph, K: float = K_THEOREM):
        if g.k != 5:
            raise PreconditionError("the inductive construction is specific to Theta_5")
        self.g = g
        self.K = K
        self._memo: dict[tuple[int, int], tuple[tuple[int, ...], tuple[Step, ...]]] = {}

    def _step(self, a: int, b: int) -> tuple[Step, Optional[tuple[int, int]], str]:
        g, pts = self.g, self.g.points
        if g.has_edge(a, b):
            return Step(CaseLabel.DIRECT_EDGE, (a, b)), None, "E"
        iso, frame = normalize_pair(pts[a], pts[b])
        A, B = (b, a) if iso.swapped else (a, b)
        ci = g.cone_target[A][cone_index(pts[A], pts[B], 5)]
        di = g.cone_target[B][cone_index(pts[B], pts[A], 5)]
        c, d = iso.apply(pts[ci]), iso.apply(pts[di])
        pab = pentagon_pab(frame)
        label = classify_case(frame, c, d, pab)
        _, kind, case_K = CASE_TABLE[label]
        fa, fb = frame.a, frame.b
        lhs, rhs = inequality_sides(kind, fa, fb, c, d, self.K)
        lhs_case, rhs_case = inequality_sides(kind, fa, fb, c, d, case_K)
        tol = STEP_RTOL * dist(fa, fb)
        flags = []
        if kind == "A":
            sub = (ci, B)
        elif kind == "B":
            sub = (A, di)
        elif ci == di:
            sub = None
            flags.append("c_equals_d")
        else:
            sub = (ci, di)
        if label is CaseLabel.BOTH_IN_PAB_CROSSING and not segments_cross(fa, c, fb, d):
            flags.append("ac_bd_do_not_cross")
        step = Step(
            label=label,
            pair=(A, B),
            c=ci,
            d=di,
            sub_pair=sub,
            kind=kind,
            lhs=lhs,
            rhs=rhs,
            holds=lhs <= rhs + tol,
            holds_at_case_K=lhs_case <= rhs_case + tol,
            alpha=frame.alpha,
            swapped=iso.swapped,
            flags=tuple(flags),
        )
        if sub is not None and not dist(pts[sub[0]], pts[sub[1]]) < dist(pts[a], pts[b]):
            raise InductionError(
                f"pair {sub} is not shorter than {(a, b)}: counterexample candidate",
                pair=(a, b),
                step=step,
            )
        return step, sub, kind

    def solve(self, a: int, b: int) -> tuple[tuple[int, ...], tuple[Step, ...]]:
        """Path from a to b and the step chain that justifies it."""
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        if (b, a) in self._memo:
            path, steps = self._memo[(b, a)]
            return tuple(reversed(path)), steps
        step, sub, kind = self._step(a, b)
        A, B = step.pair
        if kind == "E":
            path, rest = (a, b), ()
        else:
            if kind == "A":
                sp, rest = self.solve(step.c, B)
                fwd = (A,) + sp
            elif kind == "B":
                sp, rest = self.solve(A, step.d)
                fwd = sp + (B,)
            elif sub is None:
                fwd, rest = (A, step.c, B), ()
            else:
                sp, rest = self.solve(step.c, step.d)
                fwd = (A,) + sp + (B,)
            path = fwd if A == a else tuple(reversed(fwd))
        result = (path, (step,) + rest)
        self._memo[key] = result
        return result

    def certificate(self, a: int, b: int) -> PathCertificate:
        if a == b:
            raise PreconditionError("certificate of a vertex to itself")
        path, steps = self.solve(a, b)
        pts = self.g.points
        total = sum(dist(pts[u], pts[v]) for u, v in zip(path, path[1:]))
        bound = self.K * dist(pts[a], pts[b])
        cert = PathCertificate(pair=(a, b), path=path, steps=steps, total_length=total, K=self.K, bound=bound)
        problems = validate_certificate(cert, self.g)
        if problems:
            cert = PathCertificate(
                pair=(a, b), path=path, steps=steps, total_length=total, K=self.K, bound=bound,
                problems=tuple(problems),
            )
        return cert


def inductive_path(g: ThetaGraph, a: int, b: int, K: float = K_THEOREM) -> PathCertificate:
    """Certificate for one pair; see :class:`InductiveRouter` for many pairs."""
    if K < K_THEOREM:
        raise PreconditionError(f"K must be at least {K_THEOREM}")
    return InductiveRouter(g, K).certificate(a, b)


def certify_all(g: ThetaGraph, K: float = K_THEOREM) -> list[PathCertificate]:
    if K < K_THEOREM:
        raise PreconditionError(f"K must be at least {K_THEOREM}")
    router = InductiveRouter(g, K)
    return [router.certificate(a, b) for a in range(g.n) for b in range(a + 1, g.n)]


def validate_certificate(cert: PathCertificate, g: ThetaGraph) -> list[str]:
    """Re-check a certificate from coordinates alone; returns the problems found."""
    pts = g.points
    a, b = cert.pair
    ab = dist(pts[a], pts[b])
    tol = STEP_RTOL * ab
    problems = []
    path = cert.path
    if not path or path[0] != a or path[-1] != b:
        problems.append("path does not run from a to b")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            problems.append(f"({u}, {v}) is not an edge")
    total = sum(dist(pts[u], pts[v]) for u, v in zip(path, path[1:]))
    if abs(total - cert.total_length) > tol:
        problems.append("total_length does not match the path")
    if cert.total_length > cert.K * ab + tol:
        problems.append(f"total_length {cert.total_length} exceeds K|ab| = {cert.K * ab}")
    prev_sub = None
    for i, st in enumerate(cert.steps):
        pair_len = dist(pts[st.pair[0]], pts[st.pair[1]])
        if i > 0 and (prev_sub is None or set(st.pair) != set(prev_sub)):
            problems.append(f"step {i} does not continue the previous sub-pair")
        if st.label is CaseLabel.DIRECT_EDGE:
            if not g.has_edge(*st.pair):
                problems.append(f"step {i} claims a direct edge that is absent")
            prev_sub = None
            continue
        A, B = st.pair
        lhs, rhs = inequality_sides(st.kind, pts[A], pts[B], pts[st.c], pts[st.d], cert.K)
        if lhs > rhs + STEP_RTOL * pair_len:
            problems.append(f"step {i} ({st.label.value}): inequality {st.kind} fails, {lhs} > {rhs}")
        if st.sub_pair is not None:
            sub_len = dist(pts[st.sub_pair[0]], pts[st.sub_pair[1]])
            if not sub_len < pair_len:
                problems.append(f"step {i}: sub-pair is not shorter")
        prev_sub = st.sub_pair
    if prev_sub is not None:
        problems.append("step chain ends before reaching an edge")
    return problems


def path_length(g: ThetaGraph, path) -> float:
    return sum(dist(g.points[u], g.points[v]) for u, v in zip(path, path[1:])) if path else math.inf
