"""Branch-and-bound certification that a C1 function stays below a bound.

The enclosure of func over a box X is the intersection of the direct
interval value with the mean-value form F(x0) + (X - x0) F'(X) around the
midpoint.  A box is verified when the enclosure's upper end is below the
bound, refuted when the midpoint *point value* already exceeds it (a true
witness), and split otherwise.  Below ``min_width`` one further split pair
is attempted before giving up.  The result "verified" is one-sided: it is a
mathematical guarantee; "not_verified" carries a witness box but no claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .rigor import RS, RigorousScalar, get_precision

__all__ = ["BoundQuery", "BoundReport", "certify_below"]

_MAX_DEPTH = 60


@dataclass
class BoundQuery:
    func: Callable[[RigorousScalar], RigorousScalar]
    deriv: Optional[Callable[[RigorousScalar], RigorousScalar]]
    bound: RigorousScalar
    domain: RigorousScalar
    min_width: float = 1e-6


@dataclass
class BoundReport:
    verified: bool
    boxes: int = 0
    witness: Optional[RigorousScalar] = None
    sup_enclosure: Optional[RigorousScalar] = None  # highest enclosure seen

    def __bool__(self):
        return self.verified


def _enclose(q: BoundQuery, X: RigorousScalar) -> RigorousScalar:
    v = q.func(X)
    if not v.valid:
        return v
    if q.deriv is not None and not X.is_point():
        x0 = X.mid()
        f0 = q.func(x0)
        d = q.deriv(X)
        if f0.valid and d.valid:
            mv = f0 + (X - x0) * d
            v = v.intersect(mv) if v.overlaps(mv) else v
    return v


def certify_below(q: BoundQuery, prec=None) -> BoundReport:
    """True only if sup of func over the domain is certainly < bound."""
    p = prec if prec is not None else get_precision()
    bound = RS(q.bound, p)
    report = BoundReport(True)
    stack = [(RS(q.domain, p), 0, False)]
    while stack:
        X, depth, last_chance = stack.pop()
        v = _enclose(q, X)
        report.boxes += 1
        if not v.valid:
            return BoundReport(False, report.boxes, X, report.sup_enclosure)
        if report.sup_enclosure is None or v.upper_float() > report.sup_enclosure.upper_float():
            report.sup_enclosure = v
        if v.lt(bound):
            continue
        mid_val = q.func(X.mid())
        if mid_val.valid and mid_val.gt(bound):
            return BoundReport(False, report.boxes, X, report.sup_enclosure)
        if depth >= _MAX_DEPTH:
            return BoundReport(False, report.boxes, X, report.sup_enclosure)
        if X.width_float() < q.min_width:
            if last_chance:
                return BoundReport(False, report.boxes, X, report.sup_enclosure)
            a, b = X.split_mid()
            stack.append((a, depth + 1, True))
            stack.append((b, depth + 1, True))
            continue
        a, b = X.split_mid()
        stack.append((a, depth + 1, False))
        stack.append((b, depth + 1, False))
    return report
