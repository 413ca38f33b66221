"""Exact Eulerian combinatorics.

Univariate Eulerian polynomials via their derivative recurrence, their
multivariate multi-affine lifting via the homogeneous pair-variable
recursion, descent-top statistics of permutations, and three independent
ways to count the permutations of [n+1] whose descent-top set is exactly
a given value set X:

- brute-force enumeration of the symmetric group (the normative oracle),
- an inclusion-exclusion over the complement of X,
- an alternating sum over deletions from X,

plus closed forms for |X| <= 3.  Everything here is exact integer /
rational arithmetic; no floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "UnivariatePolynomial",
    "MultiAffinePolynomial",
    "polynomialize",
    "univariate_eulerian",
    "multivariate_eulerian",
    "is_permutation",
    "descent_top_set",
    "descent_top_counts",
    "count_exact_bruteforce",
    "count_formula",
    "closed_form_R",
    "BRUTE_FORCE_MAX_N",
]

# S_{n+1} enumeration is kept at desk scale; 10! = 3.6M permutations.
BRUTE_FORCE_MAX_N = 9


@dataclass(frozen=True)
class UnivariatePolynomial:
    """A univariate polynomial with exact rational coefficients.

    ``coeffs[k]`` holds the coefficient of x^k.  Trailing zeros are
    stripped on construction; the zero polynomial is stored as ``(0,)``.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(values: Iterable) -> "UnivariatePolynomial":
        cs = [Fraction(v) for v in values]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return UnivariatePolynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariatePolynomial":
        if len(self.coeffs) == 1:
            return UnivariatePolynomial((Fraction(0),))
        return UnivariatePolynomial.from_coeffs(
            k * c for k, c in enumerate(self.coeffs) if k > 0
        )

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)


def polynomialize(seq: Sequence) -> UnivariatePolynomial:
    """Turn a finite sequence s(0), ..., s(k) into the polynomial sum s(i) x^i.

    >>> polynomialize([1, 2, 1]).coeffs
    (Fraction(1, 1), Fraction(2, 1), Fraction(1, 1))
    """
    values = list(seq)
    if not values:
        raise ValueError("empty sequence")
    return UnivariatePolynomial.from_coeffs(values)


@lru_cache(maxsize=None)
def univariate_eulerian(n: int) -> UnivariatePolynomial:
    """The n-th Eulerian polynomial A_n, with A_0 = 1.

    Built from the recurrence A_n = (n+1) x A_{n-1} + (1-x) (x A_{n-1})'.
    Coefficients are the Eulerian numbers; they are positive, palindromic
    and sum to (n+1)!.

    >>> [int(c) for c in univariate_eulerian(4).coeffs]
    [1, 26, 66, 26, 1]
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return UnivariatePolynomial((Fraction(1),))
    prev = univariate_eulerian(n - 1).coeffs
    g = [Fraction(0)] + list(prev)              # x * A_{n-1}
    dg = [k * c for k, c in enumerate(g)][1:]   # (x A_{n-1})'
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(g):
        out[k] += (n + 1) * c
    for k, c in enumerate(dg):
        out[k] += c
        out[k + 1] -= c
    return UnivariatePolynomial.from_coeffs(out)


@dataclass(frozen=True)
class MultiAffinePolynomial:
    """A multi-affine polynomial in n variables with integer coefficients.

    Monomials are square-free, so each is a subset of [n]; ``coeffs`` maps
    the subset bitmask (bit i-1 set means variable x_i present) to its
    coefficient.  Missing masks mean coefficient zero.
    """

    n: int
    coeffs: dict[int, int]

    def coefficient(self, variables: Iterable[int]) -> int:
        mask = 0
        for v in variables:
            if not 1 <= v <= self.n:
                raise ValueError(f"variable index {v} out of range [1, {self.n}]")
            mask |= 1 << (v - 1)
        return self.coeffs.get(mask, 0)

    def coefficient_sum(self) -> int:
        return sum(self.coeffs.values())

    def diagonal(self) -> UnivariatePolynomial:
        """Substitute x_i := x for every i (grouping monomials by size)."""
        out = [0] * (self.n + 1)
        for mask, c in self.coeffs.items():
            out[mask.bit_count()] += c
        return UnivariatePolynomial.from_coeffs(out)

    def level_sums(self) -> tuple[int, ...]:
        """Sum of coefficients of all monomials of each total degree."""
        return tuple(int(c) for c in self.diagonal().coeffs)


def _iter_bits(mask: int):
    while mask:
        bit = mask & -mask
        yield bit
        mask ^= bit


def multivariate_eulerian(n: int) -> MultiAffinePolynomial:
    """The multi-affine multivariate Eulerian polynomial A_n(x, 1).

    Runs the homogeneous recursion over 2n paired variables (x_i, y_i),

        H_k = (x_k + y_k) H_{k-1} + x_k y_k * sum_i (d/dx_i + d/dy_i) H_{k-1},

    then substitutes y_i := 1 throughout.  Variables are labelled so that
    the coefficient of the singleton {i} is 2^i - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    # Terms keyed by (xmask, ymask); multi-affinity lets a derivative just
    # drop a bit.
    terms: dict[tuple[int, int], int] = {(0, 0): 1}
    for k in range(1, n + 1):
        bit = 1 << (k - 1)
        new: dict[tuple[int, int], int] = {}
        for (xm, ym), c in terms.items():
            key = (xm | bit, ym)
            new[key] = new.get(key, 0) + c
            key = (xm, ym | bit)
            new[key] = new.get(key, 0) + c
            for b in _iter_bits(xm):
                key = ((xm ^ b) | bit, ym | bit)
                new[key] = new.get(key, 0) + c
            for b in _iter_bits(ym):
                key = (xm | bit, (ym ^ b) | bit)
                new[key] = new.get(key, 0) + c
        terms = new
    dehom: dict[int, int] = {}
    for (xm, _), c in terms.items():
        dehom[xm] = dehom.get(xm, 0) + c
    result = MultiAffinePolynomial(n, dehom)
    assert result.coefficient(()) == 1
    assert result.coefficient_sum() == math.factorial(n + 1)
    assert all(result.coefficient([i]) == 2**i - 1 for i in range(1, n + 1))
    return result


# ---------------------------------------------------------------------------
# Permutation statistics


def is_permutation(image: Sequence[int]) -> bool:
    """Check that ``image`` is a bijection on {1, ..., len(image)}."""
    return sorted(image) == list(range(1, len(image) + 1))


def descent_top_set(sigma: Sequence[int]) -> frozenset[int]:
    """The descent-top set: the larger value of each descent pair.

    >>> sorted(descent_top_set((3, 2, 1)))
    [2, 3]
    >>> sorted(descent_top_set((2, 3, 1)))
    [3]
    """
    if not is_permutation(sigma):
        raise ValueError("not a permutation of 1..k")
    return frozenset(sigma[i] for i in range(len(sigma) - 1) if sigma[i] > sigma[i + 1])


@lru_cache(maxsize=None)
def _descent_top_mask_counts(n: int) -> dict[int, int]:
    # Mask uses the top VALUE as bit index; 1 is never a top.
    counts: dict[int, int] = {}
    for perm in itertools.permutations(range(1, n + 2)):
        mask = 0
        for i in range(n):
            if perm[i] > perm[i + 1]:
                mask |= 1 << perm[i]
        counts[mask] = counts.get(mask, 0) + 1
    return counts


def descent_top_counts(n: int) -> dict[frozenset[int], int]:
    """Counts of every descent-top set over S_{n+1}; values sum to (n+1)!."""
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError("enumeration too large")
    out = {}
    for mask, c in _descent_top_mask_counts(n).items():
        out[frozenset(v for v in range(2, n + 2) if mask >> v & 1)] = c
    return out


def _validated_tops(n: int, X: Iterable[int]) -> tuple[int, ...]:
    xs = tuple(sorted(set(X)))
    if any(not 2 <= v <= n + 1 for v in xs):
        raise ValueError(f"descent tops must lie in {{2, ..., {n + 1}}}, got {xs}")
    return xs

def count_exact_bruteforce(n: int, X: Iterable[int]) -> int:
    """|{sigma in S_{n+1} : descent_top_set(sigma) = X}| by enumeration."""
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError("enumeration too large")
    xs = _validated_tops(n, X)
    mask = 0
    for v in xs:
        mask |= 1 << v
    return _descent_top_mask_counts(n).get(mask, 0)


def _complement_count(top: int, xs: tuple[int, ...]) -> int:
    # Inclusion-exclusion over subsets of the complement of X inside [top]:
    # sum over S of (-1)^|S| (top - |X u S|)! prod_i (chain_i - i).
    complement = [v for v in range(1, top + 1) if v not in xs]
    total = 0
    for r in range(len(complement) + 1):
        for S in itertools.combinations(complement, r):
            chain = sorted(xs + S)
            prod = 1
            for i, v in enumerate(chain, start=1):
                prod *= v - i
                if prod == 0:
                    break
            total += (-1) ** r * math.factorial(top - len(chain)) * prod
    return total


def _deletion_count(xs: tuple[int, ...]) -> int:
    # Alternating sum over subsets J of X of the factorial-power weight of
    # the gap tuple alpha(J) = (j_1 - 1, j_2 - j_1, ...); independent of n.
    s = len(xs)
    total = 0
    for r in range(s + 1):
        for J in itertools.combinations(xs, r):
            weight = 1
            prev = 1
            for t, v in enumerate(J, start=1):
                weight *= (r + 2 - t) ** (v - prev)
                prev = v
            total += (-1) ** (s - r) * weight
    return total


def count_formula(n: int, X: Iterable[int], method: str = "complement") -> int:
    """|R(n, X)| by formula instead of enumeration.

    Both formulas are stated for value sets inside [k] counting
    permutations of S_k; matching the brute-force convention over S_{n+1}
    fixes the offset at k = n + 1 (calibrated against enumeration for all
    n <= 6 and frozen here).

    ``method`` is "complement" (inclusion-exclusion over [n+1] \\ X; work
    grows as 2^(n+1-|X|)) or "deletion" (alternating sum over subsets of
    X; 2^|X| terms, independent of n).
    """
    xs = _validated_tops(n, X)
    if method == "complement":
        return _complement_count(n + 1, xs)
    if method == "deletion":
        return _deletion_count(xs)
    raise ValueError(f"unknown method {method!r}")


def closed_form_R(X: Iterable[int]) -> int:
    """R(X) for |X| in {1, 2, 3} from the printed closed forms.

    The value does not depend on the ambient symmetric group, only on the
    sorted top values.

    >>> closed_form_R({3})
    3
    >>> closed_form_R({2, 3})
    1
    """
    xs = tuple(sorted(set(X)))
    if any(v < 2 for v in xs):
        raise ValueError("descent tops must be >= 2")
    if len(xs) == 1:
        (a,) = xs
        return 2 ** (a - 1) - 1
    if len(xs) == 2:
        a, b = xs
        return 3 ** (a - 1) * 2 ** (b - a) - (2 ** (a - 1) + 2 ** (b - 1)) + 1
    if len(xs) == 3:
        a, b, c = xs
        return (
            4 ** (a - 1) * 3 ** (b - a) * 2 ** (c - b)
            - (
                3 ** (a - 1) * 2 ** (b - a)
                + 3 ** (b - 1) * 2 ** (c - b)
                + 3 ** (a - 1) * 2 ** (c - a)
            )
            + (2 ** (a - 1) + 2 ** (b - 1) + 2 ** (c - 1))
            - 1
        )
    raise ValueError("no closed form")
