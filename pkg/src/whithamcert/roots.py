"""Sign-based root isolation, bisection refinement, and interval Newton.

The three stages: (1) isolate boxes that contain exactly one root, attested
by an endpoint sign change together with a sign-definite derivative;
(2) shrink each box by rigorous bisection to hand Newton a comfortable
basin; (3) contract with the interval Newton operator

    N(X) = x0 - f(x0) / f'(X)  intersected with  X,

whose strict containment N(X) in the interior of X certifies existence and
uniqueness of the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

from .rigor import RS, RigorousScalar, get_precision

__all__ = ["RootBox", "isolate_roots", "bisect_refine", "newton_refine", "IsolationError"]


class IsolationError(RuntimeError):
    """Raised when the isolation budget runs out with unresolved boxes."""

    def __init__(self, unresolved):
        super().__init__(f"{len(unresolved)} unresolved boxes")
        self.unresolved = unresolved


@dataclass
class RootBox:
    box: RigorousScalar
    contracted: bool = False  # interval-Newton contraction observed


def _sign_at(f, x: RigorousScalar) -> int:
    v = f(x)
    if not v.valid:
        return 0
    if v.is_positive():
        return 1
    if v.is_negative():
        return -1
    return 0


def isolate_roots(f, fprime, domain, budget: int = 4000, prec=None) -> List[RigorousScalar]:
    """Boxes each containing exactly one simple root of f on the domain."""
    p = prec if prec is not None else get_precision()
    out: List[RigorousScalar] = []
    work = [RS(domain, p)]
    unresolved = []
    steps = 0
    while work:
        steps += 1
        if steps > budget:
            unresolved.extend(work)
            raise IsolationError(unresolved)
        X = work.pop()
        v = f(X)
        if v.valid and not v.contains_zero():
            continue  # sign-definite: no root here
        s_lo = _sign_at(f, X.lower_part())
        s_hi = _sign_at(f, X.upper_part())
        d = fprime(X)
        if s_lo and s_hi and s_lo != s_hi and d.valid and not d.contains_zero():
            out.append(X)
            continue
        if s_lo and s_hi and s_lo == s_hi and d.valid and not d.contains_zero():
            continue  # monotone without sign change: no root
        a, b = X.split_mid()
        work.append(a)
        work.append(b)
    out.sort(key=lambda X: X.lower_float())
    return out


def bisect_refine(f, box: RigorousScalar, target_width: float = 1e-3, prec=None) -> RigorousScalar:
    """Shrink a sign-change box by bisection, keeping the sign change."""
    p = prec if prec is not None else get_precision()
    X = RS(box, p)
    s_lo = _sign_at(f, X.lower_part())
    s_hi = _sign_at(f, X.upper_part())
    if not (s_lo and s_hi and s_lo != s_hi):
        return X
    while X.width_float() > target_width:
        mid = X.mid()
        s_m = _sign_at(f, mid)
        if s_m == 0:
            break
        if s_m == s_lo:
            X = RigorousScalar.from_endpoints(mid, X.upper_part(), p)
        else:
            X = RigorousScalar.from_endpoints(X.lower_part(), mid, p)
    return X


def newton_refine(
    f,
    fprime,
    box: RigorousScalar,
    target_width: float = 1e-30,
    max_iter: int = 60,
    prec=None,
) -> RootBox:
    """Interval-Newton contraction to the target width.

    Returns the final box; ``contracted`` records whether a strict
    contraction N(X) inside X was observed (certifying a unique root).  On
    non-contraction the last sound box is returned with the flag down.
    """
    p = prec if prec is not None else get_precision()
    X = RS(box, p)
    contracted = False
    for _ in range(max_iter):
        if X.width_float() <= target_width:
            break
        d = fprime(X)
        if not d.valid or d.contains_zero():
            return RootBox(X, contracted)
        x0 = X.mid()
        N = x0 - f(x0) / d
        if not N.valid:
            return RootBox(X, contracted)
        if X.contains(N) and N.width_float() < X.width_float():
            contracted = True
        nxt = N.intersect(X)
        if not nxt.valid:
            # Newton step excluded the whole box: no root; report as-is
            return RootBox(X, False)
        if nxt.width_float() >= X.width_float() * 0.999:
            a, b = X.split_mid()
            va, vb = f(a), f(b)
            if va.valid and not va.contains_zero():
                nxt = b
            elif vb.valid and not vb.contains_zero():
                nxt = a
            else:
                return RootBox(X, contracted)
        X = nxt
    return RootBox(X, contracted)
