"""Certified PSD endpoints, boundary kernel vectors, extreme roots."""

from fractions import Fraction

import mpmath
import pytest

from eulerian_bounds.enclosure import sqrt_enclosure
from eulerian_bounds.eulerian import polynomialize, univariate_eulerian
from eulerian_bounds.pencil import (
    DiagonalPencil,
    SymmetricRationalMatrix,
    eulerian_diagonal_pencil,
)
from eulerian_bounds.spectra import (
    boundary_kernel_vector,
    extreme_roots,
    psd_interval_left,
)


def diag_pencil(a0_rows, sum_rows) -> DiagonalPencil:
    return DiagonalPencil(
        a0=SymmetricRationalMatrix.from_rows(a0_rows),
        a_sum=SymmetricRationalMatrix.from_rows(sum_rows),
    )


def overlaps(a, b) -> bool:
    return a.lo <= b.hi and b.lo <= a.hi


class TestPsdIntervalLeft:
    def test_diagonal_toy(self):
        enc = psd_interval_left(diag_pencil([[1, 0], [0, 1]], [[1, 0], [0, 2]]), 64)
        assert enc.contains(Fraction(-1, 2))
        assert enc.width <= Fraction(1, 2**64)

    def test_n1_eulerian(self):
        enc = psd_interval_left(eulerian_diagonal_pencil(1), 96)
        assert enc.contains(-1)

    def test_n2_matches_true_root(self):
        enc = psd_interval_left(eulerian_diagonal_pencil(2), 128)
        target = sqrt_enclosure(3, 140) - 2
        assert overlaps(enc, target)

    @pytest.mark.parametrize("n", (3, 5, 7, 9, 11, 13, 15))
    def test_containment_against_rightmost_root(self, n):
        # Even n up to 16 are exercised by the acceptance chain; the odd
        # ones complete the containment invariant.
        enc = psd_interval_left(eulerian_diagonal_pencil(n), 96)
        _, q_right = extreme_roots(univariate_eulerian(n), 96)
        assert enc.possibly_leq(q_right)

    def test_min_precision(self):
        with pytest.raises(ValueError):
            psd_interval_left(eulerian_diagonal_pencil(1), 8)

    def test_a0_must_be_psd(self):
        with pytest.raises(ValueError, match="A0 is not PSD"):
            psd_interval_left(diag_pencil([[-1, 0], [0, 1]], [[1, 0], [0, 1]]), 32)

    def test_unbounded_below(self):
        with pytest.raises(ValueError, match="unbounded below"):
            psd_interval_left(diag_pencil([[1, 0], [0, 1]], [[0, 0], [0, 0]]), 32)

    def test_enclosures_nest_when_prec_doubles(self):
        dp = eulerian_diagonal_pencil(5)
        wide = psd_interval_left(dp, 64)
        tight = psd_interval_left(dp, 128)
        assert wide.encloses(tight)


class TestKernelVector:
    def test_n1_degenerate(self):
        dp = eulerian_diagonal_pencil(1)
        kv = boundary_kernel_vector(dp, psd_interval_left(dp, 128), 128)
        assert kv.degenerate
        norm = mpmath.norm(mpmath.matrix(kv.entries))
        assert norm > 0

    def test_n10_structure(self):
        dp = eulerian_diagonal_pencil(10)
        kv = boundary_kernel_vector(dp, psd_interval_left(dp, 128), 128)
        assert not kv.degenerate
        assert kv.normalization == "last-entry"
        entries = [float(e) for e in kv.entries]
        assert entries[-1] == pytest.approx(1.0)
        # Tail stabilizes toward 1, head dives negative.
        assert all(0.7 <= e <= 1.3 for e in entries[6:])
        assert entries[1] < -1

    def test_residual_contract(self):
        dp = eulerian_diagonal_pencil(6)
        kv = boundary_kernel_vector(dp, psd_interval_left(dp, 96), 96)
        assert kv.residual <= mpmath.mpf(2) ** (-48)

    def test_wide_enclosure_gets_refined(self):
        dp = eulerian_diagonal_pencil(4)
        rough = psd_interval_left(dp, 16)
        kv = boundary_kernel_vector(dp, rough, 96)
        assert kv.residual <= mpmath.mpf(2) ** (-48)

    def test_non_boundary_enclosure_rejected(self):
        dp = eulerian_diagonal_pencil(4)
        # A wide bracket away from the boundary fails the endpoint check;
        # a narrow one survives refinement but trips the residual guard.
        wide = psd_interval_left(dp, 16) - Fraction(1, 2)
        with pytest.raises(ValueError, match="bracket"):
            boundary_kernel_vector(dp, wide, 96)
        narrow = psd_interval_left(dp, 64) - Fraction(1, 2)
        with pytest.raises(ArithmeticError, match="residual"):
            boundary_kernel_vector(dp, narrow, 64)


class TestExtremeRoots:
    def test_a1_double_point(self):
        left, right = extreme_roots(univariate_eulerian(1), 128)
        assert left.contains(-1) and right.contains(-1)

    def test_a2_quadratic_formula(self):
        left, right = extreme_roots(univariate_eulerian(2), 128)
        s3 = sqrt_enclosure(3, 140)
        assert overlaps(left, -2 - s3)
        assert overlaps(right, s3 - 2)

    def test_a3_factored_form(self):
        # A_3 = (1+x)(1+10x+x^2); extremes are -5 -+ 2 sqrt(6), and the
        # interior rational root -1 must not be mistaken for an extreme.
        left, right = extreme_roots(univariate_eulerian(3), 128)
        s6 = sqrt_enclosure(6, 140)
        assert overlaps(left, -5 - 2 * s6)
        assert overlaps(right, 2 * s6 - 5)

    @pytest.mark.parametrize("n", range(2, 17))
    def test_palindromic_reciprocity(self, n):
        left, right = extreme_roots(univariate_eulerian(n), 128)
        product = left * right
        assert product.contains(1) or abs(product.midpoint - 1) < Fraction(
            1, 2**100
        )

    def test_enclosure_width(self):
        left, right = extreme_roots(univariate_eulerian(9), 128)
        assert left.width <= Fraction(1, 2**128)
        assert right.width <= Fraction(1, 2**128)

    def test_enclosures_nest_when_prec_doubles(self):
        wide = extreme_roots(univariate_eulerian(9), 64)
        tight = extreme_roots(univariate_eulerian(9), 128)
        assert wide[0].encloses(tight[0])
        assert wide[1].encloses(tight[1])

    def test_rejects_complex_roots(self):
        with pytest.raises(ValueError, match="not real-rooted"):
            extreme_roots(polynomialize([1, 1, 1]), 64)

    def test_rejects_positive_roots(self):
        with pytest.raises(ValueError, match="not all negative"):
            extreme_roots(polynomialize([-2, 1, 1]), 64)

    def test_rejects_constants(self):
        with pytest.raises(ValueError):
            extreme_roots(polynomialize([5]), 64)

    def test_repeated_roots_squarefree_part(self):
        # (1+x)^2 (2+x): all roots negative, one repeated.
        p = polynomialize([2, 5, 4, 1])
        left, right = extreme_roots(p, 96)
        assert left.contains(-2)
        assert right.contains(-1)
