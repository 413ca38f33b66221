"""Exact-sign numerics on the diagonal pencil.

Three certified quantities live here:

- the left endpoint of the PSD interval of a diagonal pencil, found by
  bisection where every step is decided by the exact rational PSD test
  (entries grow like 8^n, so floating eigensolvers lose certification
  long before the desk-scale range ends; exact sign tests do not);
- an approximate kernel vector of the pencil at that boundary, computed
  with extended-precision floats;
- enclosures of the extreme (leftmost / rightmost) real roots of a
  real-rooted univariate polynomial, via exact root isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy.polys.domains import ZZ
from sympy.polys.rootisolation import dup_isolate_real_roots_sqf
from sympy.polys.sqfreetools import dup_sqf_part

from .enclosure import DEFAULT_PREC, AlgebraicBound
from .eulerian import UnivariatePolynomial
from .pencil import DiagonalPencil, psd_certificate

__all__ = [
    "KernelVector",
    "psd_interval_left",
    "boundary_kernel_vector",
    "extreme_roots",
    "DEFAULT_PREC",
]

# Doubling the bracket below -2^64 without leaving the PSD region means
# the pencil is PSD far beyond any Eulerian boundary.
_UNBOUNDED_GUARD = Fraction(-(2**64))


def _is_psd_at(p: DiagonalPencil, x: Fraction) -> bool:
    return psd_certificate(p.at(x)).is_psd


def psd_interval_left(p: DiagonalPencil, prec: int = DEFAULT_PREC) -> AlgebraicBound:
    """Enclose x_min = inf{x : A0 + x A_sum is PSD} to width 2**-prec.

    Maintains a bracket [lo, hi] with the pencil not PSD at lo and PSD at
    hi, so the endpoint lies in (lo, hi]; each midpoint is decided
    exactly.
    """
    if prec < 16:
        raise ValueError("prec must be >= 16")
    if not _is_psd_at(p, Fraction(0)):
        raise ValueError("A0 is not PSD")
    hi = Fraction(0)
    lo = Fraction(-1)
    while _is_psd_at(p, lo):
        hi = lo
        lo *= 2
        if lo < _UNBOUNDED_GUARD:
            raise ValueError("unbounded below: pencil PSD past the guard bound")
    tol = Fraction(1, 2**prec)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _is_psd_at(p, mid):
            hi = mid
        else:
            lo = mid
    return AlgebraicBound(lo, hi)


@dataclass(frozen=True)
class KernelVector:
    """Approximate null vector of the pencil at its PSD boundary.

    Entries are extended-precision floats; ``normalization`` records
    whether the final entry was scaled to 1 or, when that entry is
    negligible, the vector was scaled by its sup norm with the last
    nonzero entry positive.  ``degenerate`` flags numerical corank > 1.
    """

    entries: tuple[mpmath.mpf, ...]
    normalization: str
    degenerate: bool
    residual: mpmath.mpf
    prec: int


def _refine_boundary(
    p: DiagonalPencil, x: AlgebraicBound, width: Fraction
) -> AlgebraicBound:
    lo, hi = x.lo, x.hi
    if hi - lo <= width:
        return x
    if _is_psd_at(p, lo) or not _is_psd_at(p, hi):
        raise ValueError("x does not bracket the PSD boundary")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _is_psd_at(p, mid):
            hi = mid
        else:
            lo = mid
    return AlgebraicBound(lo, hi)


def boundary_kernel_vector(
    p: DiagonalPencil, x: AlgebraicBound, prec: int = DEFAULT_PREC
) -> KernelVector:
    """Kernel direction of A0 + x A_sum at the enclosed boundary point.

    The enclosure is first tightened until the distance to the true
    boundary cannot push the smallest singular value above the residual
    target 2**(-prec/2); the singular triple is then computed at 2*prec
    working bits.
    """
    s = p.size
    norm_bound = s * max(Fraction(1), p.a_sum.max_abs_entry())
    target = Fraction(1, 2 ** (prec // 2))
    x = _refine_boundary(p, x, target / (4 * norm_bound))
    mid = x.midpoint
    matrix = p.at(mid)
    scale = s * (
        p.a0.max_abs_entry() + abs(mid) * p.a_sum.max_abs_entry()
    )

    with mpmath.workprec(2 * prec + 32):
        a = mpmath.matrix(s, s)
        for i in range(s):
            for j in range(s):
                e = matrix.entry(i, j)
                a[i, j] = mpmath.mpf(e.numerator) / mpmath.mpf(e.denominator)
        _, sigma, vt = mpmath.svd_r(a)
        order = sorted(range(s), key=lambda k: abs(sigma[k]))
        scale_mp = mpmath.mpf(scale.numerator) / mpmath.mpf(scale.denominator)
        null_tol = max(scale_mp, mpmath.mpf(1)) * mpmath.mpf(2) ** (-(prec // 4))
        degenerate = s > 1 and abs(sigma[order[1]]) < null_tol
        v = [vt[order[0], j] for j in range(s)]

        sup = max(abs(c) for c in v)
        if abs(v[-1]) >= sup * mpmath.mpf(2) ** (-(prec // 4)):
            v = [c / v[-1] for c in v]
            normalization = "last-entry"
        else:
            last_nonzero = max(
                (j for j in range(s) if abs(v[j]) > sup * mpmath.mpf(2) ** (-prec)),
                default=s - 1,
            )
            sign = mpmath.mpf(1) if v[last_nonzero] >= 0 else mpmath.mpf(-1)
            v = [c / (sign * sup) for c in v]
            normalization = "sup"

        residual = mpmath.norm(a * mpmath.matrix(v)) / mpmath.norm(mpmath.matrix(v))
        if residual > mpmath.mpf(2) ** (-(prec // 2)):
            raise ArithmeticError(
                f"kernel residual {mpmath.nstr(residual, 8)} exceeds 2^-{prec // 2}"
            )
        return KernelVector(
            entries=tuple(v),
            normalization=normalization,
            degenerate=bool(degenerate),
            residual=residual,
            prec=prec,
        )


def _descending_integer_coeffs(p: UnivariatePolynomial) -> list[int]:
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in reversed(p.coeffs)]


def _sign_at(desc: list[int], point: Fraction) -> int:
    # Sign of p(num/den) from the integer value p(num/den) * den^deg.
    num, den = point.numerator, point.denominator
    acc = desc[0]
    dpow = 1
    for c in desc[1:]:
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def _deflate(desc: list[int], root: Fraction) -> list[int]:
    # Exact synthetic division by (x - root); the remainder must vanish.
    quot: list[Fraction] = []
    acc = Fraction(0)
    for c in desc:
        acc = acc * root + c
        quot.append(acc)
    if quot.pop() != 0:
        raise ValueError(f"{root} is not a root")
    lcm = 1
    for c in quot:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in quot]


def _refine_root(
    desc: list[int], lo: Fraction, hi: Fraction, tol: Fraction
) -> AlgebraicBound:
    # Bisect a bracket around the single root inside the open isolating
    # interval.  An endpoint may be a *different* root of the polynomial
    # (isolating intervals share endpoints); deflating it restores a
    # clean sign change.  The bisection path is deterministic, so
    # enclosures at higher precision nest inside earlier ones.
    if lo == hi:
        return AlgebraicBound.exact(lo)
    while _sign_at(desc, lo) == 0:
        desc = _deflate(desc, lo)
    while _sign_at(desc, hi) == 0:
        desc = _deflate(desc, hi)
    slo = _sign_at(desc, lo)
    if slo == _sign_at(desc, hi):
        raise ValueError("interval endpoints do not bracket a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        smid = _sign_at(desc, mid)
        if smid == 0:
            return AlgebraicBound.exact(mid)
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return AlgebraicBound(lo, hi)


def extreme_roots(
    p: UnivariatePolynomial, prec: int = DEFAULT_PREC
) -> tuple[AlgebraicBound, AlgebraicBound]:
    """Enclosures of the leftmost and rightmost real roots.

    The input must be real-rooted with every root negative (the Eulerian
    situation).  Disjoint isolating intervals come from exact
    continued-fraction isolation of the squarefree part; the extreme ones
    are then narrowed to 2**-prec by sign bisection with exact
    big-integer evaluation, so the enclosures are certified.
    """
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    desc = _descending_integer_coeffs(p)
    if desc[-1] == 0:
        raise ValueError("roots are not all negative: 0 is a root")
    f = [ZZ(c) for c in desc]
    fs = dup_sqf_part(f, ZZ)
    intervals = dup_isolate_real_roots_sqf(fs, ZZ, fast=True)
    if len(intervals) != len(fs) - 1:
        raise ValueError(
            f"not real-rooted: {len(intervals)} distinct real roots, "
            f"squarefree degree {len(fs) - 1}"
        )
    desc_sqf = [int(c) for c in fs]
    tol = Fraction(1, 2**prec)

    def to_fraction(q) -> Fraction:
        return Fraction(int(q.numerator), int(q.denominator))

    la, lb = intervals[0]
    ra, rb = intervals[-1]
    left = _refine_root(desc_sqf, to_fraction(la), to_fraction(lb), tol)
    right = _refine_root(desc_sqf, to_fraction(ra), to_fraction(rb), tol)
    if right.hi > 0:
        raise ValueError("roots are not all negative")
    return left, right
