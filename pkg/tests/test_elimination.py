"""Fourier-Motzkin steps, feasibility solvers, and certificates."""

import random
from fractions import Fraction
from itertools import product

import pytest

from signedtrop.elimination import (
    AffineRow,
    ResolutionError,
    farkas,
    fm_step_nonstrict,
    fm_step_strict,
    nnker_solve,
    parse_halfspace_system,
    prune_rows,
    resolve_balanced_nonstrict,
    sep_solve,
    seq_system_solve_bruteforce,
    verify_kernel,
    verify_separator,
)
from signedtrop.linalg import SymMatrix, mat_vec, parse_matrix, vec_mat
from signedtrop.semiring import SymNum, ZERO, teq

from conftest import P, N, B, Z, five_grid


class TestFmStepStrict:
    def test_worked_example(self, first_hull_matrix):
        result = fm_step_strict(first_hull_matrix, 0)
        assert result == SymMatrix(1, 2, [P(0), P(0)])

    def test_single_row_mixed_signs(self):
        out = fm_step_strict(SymMatrix(1, 2, [P(3), N(3)]), 0)
        assert out.rows == 0 and out.cols == 1

    def test_single_row_uniform_sign(self):
        out = fm_step_strict(SymMatrix(1, 2, [P(3), P(5)]), 0)
        assert out.rows == 0 and out.cols == 0

    def test_zero_row_passthrough(self):
        a = SymMatrix.from_rows([(Z, Z), (P(1), N(2))])
        out = fm_step_strict(a, 0)
        assert out == SymMatrix(1, 2, [P(1), N(2)])

    def test_projection_grid_equivalence(self):
        rng = random.Random(99)

        def rand():
            k = rng.randrange(4)
            if k == 3:
                return Z
            return SymNum((1, -1, 0)[k], Fraction(rng.randint(-3, 3)))

        for _ in range(60):
            a = SymMatrix(3, 4, [rand() for _ in range(12)])
            feasible = sep_solve(a) is not None
            for i in range(3):
                assert (sep_solve(fm_step_strict(a, i)) is not None) == feasible


class TestSepSolve:
    def test_worked_example_feasible(self, first_hull_matrix):
        y = sep_solve(first_hull_matrix)
        assert y is not None
        assert verify_separator(first_hull_matrix, y)

    def test_opposite_pair_infeasible(self):
        assert sep_solve(SymMatrix(1, 2, [P(3), N(3)])) is None

    def test_single_positive_column(self):
        y = sep_solve(SymMatrix(2, 1, [P(2), P(7)]))
        assert y is not None and verify_separator(SymMatrix(2, 1, [P(2), P(7)]), y)

    def test_balanced_column_infeasible(self):
        assert sep_solve(SymMatrix(1, 1, [B(0)])) is None

    def test_all_negative_row(self):
        a = SymMatrix(1, 2, [N(1), N(5)])
        y = sep_solve(a)
        assert y is not None and verify_separator(a, y)


class TestNnkerSolve:
    def test_opposite_pair(self):
        a = SymMatrix(1, 2, [P(3), N(3)])
        x = nnker_solve(a)
        assert x == (P(0), P(0))
        assert verify_kernel(a, x)

    def test_unequal_magnitudes_scale(self):
        a = SymMatrix(1, 2, [P(3), N(1)])
        x = nnker_solve(a)
        assert verify_kernel(a, x)

    def test_all_positive_absent(self):
        assert nnker_solve(SymMatrix(2, 2, [P(0), P(1), P(2), P(3)])) is None

    def test_zero_column(self):
        a = SymMatrix(2, 1, [Z, Z])
        x = nnker_solve(a)
        assert x is not None and verify_kernel(a, x)

    def test_recursive_case(self, first_hull_matrix):
        # separator exists, so the kernel must be empty
        assert nnker_solve(first_hull_matrix) is None


class TestFarkas:
    def test_base_kernel(self):
        cert = farkas(parse_matrix("3 ~3"))
        assert cert.kind == "kernel"
        assert cert.vector == (P(0), P(0))

    def test_single_positive_column_separator(self):
        cert = farkas(SymMatrix(3, 1, [P(1), P(2), P(0)]))
        assert cert.kind == "separator"

    def test_membership_fixture_kernel(self):
        # augmented matrix deciding that (0, ~0) lies in the box hull
        b = (P(0), N(0))
        g = parse_matrix("~2 2; ~1 1")
        rows = [g.row(0) + (-b[0],), g.row(1) + (-b[1],), (P(0), P(0), N(0))]
        cert = farkas(SymMatrix.from_rows(rows))
        assert cert.kind == "kernel"

    def test_certificate_json(self):
        cert = farkas(parse_matrix("3 ~3"))
        assert cert.to_json() == {
            "kind": "kernel",
            "vector": ["0", "0"],
            "check": ["*3"],
        }

    def test_exclusivity_small_grid(self):
        # spot version of the exhaustive acceptance sweep: 1x3 matrices
        for combo in product(five_grid(), repeat=3):
            a = SymMatrix(1, 3, combo)
            x, y = nnker_solve(a), sep_solve(a)
            kernel_ok = x is not None and verify_kernel(a, x)
            sep_ok = y is not None and verify_separator(a, y)
            assert kernel_ok != sep_ok

    def test_exclusivity_with_balanced_entries(self):
        # the alternative also holds over matrices with balanced entries
        grid = [Z, P(0), N(0), B(0), P(1)]
        for combo in product(grid, repeat=4):
            a = SymMatrix(2, 2, combo)
            x, y = nnker_solve(a), sep_solve(a)
            kernel_ok = x is not None and verify_kernel(a, x)
            sep_ok = y is not None and verify_separator(a, y)
            assert kernel_ok != sep_ok, str(a)


class TestUnsolvableSystemFixture:
    A = parse_matrix("0 0; ~0 0; 0 ~0; ~0 ~0")
    b = (N(0), N(0), N(0), N(0))

    def test_no_signed_solution_on_grid(self):
        assert seq_system_solve_bruteforce(self.A, self.b) is None

    def test_extension_has_all_zero_kernel_point(self):
        ext = parse_matrix(
            "0 0 ~0 ~0 0 _ _ _;"
            "~0 0 0 ~0 _ 0 _ _;"
            "0 ~0 ~0 0 _ _ 0 _;"
            "~0 ~0 0 0 _ _ _ 0"
        )
        x = (P(0),) * 8
        prod = mat_vec(ext, x)
        assert all(teq(bi, pi) and teq(pi, bi) for bi, pi in zip(self.b, prod))

    def test_relaxed_grid_still_infeasible(self):
        assert (
            seq_system_solve_bruteforce(self.A, self.b, extra_mags=[Fraction(1, 2)])
            is None
        )


class TestFmStepNonstrict:
    def segment_system(self):
        return [
            AffineRow((Z, N(0), P(1), N(0))),
            AffineRow((Z, P(0), N(1), P(0))),
            AffineRow((N(0), P(0), P(0), Z)),
            AffineRow((P(0), N(0), N(0), Z)),
            AffineRow((Z, P(0), Z, Z)),
            AffineRow((Z, Z, P(0), Z)),
        ]

    def test_worked_example_first_step(self):
        out = fm_step_nonstrict(self.segment_system(), 1)
        got = {str(r) for r in out}
        assert got == {
            "_ *1 *0 >=",
            "~0 1 ~0 >=",
            "_ 1 ~0 >=",
            "0 ~1 0 >=",
            "*0 *0 _ >=",
            "0 ~0 _ >=",
            "_ 0 _ >=",
        }

    def test_balanced_coefficient_rejected(self):
        rows = [AffineRow((Z, B(1), P(0)))]
        with pytest.raises(ValueError):
            fm_step_nonstrict(rows, 1)

    def test_empty_input(self):
        assert fm_step_nonstrict([], 1) == []

    def test_projection_is_exact_on_grid(self):
        # random small signed systems: grid point satisfies the projection
        # iff it extends over the eliminated variable
        rng = random.Random(4)

        def rand():
            k = rng.randrange(4)
            if k == 3:
                return Z
            return SymNum((1, -1)[k % 2], Fraction(rng.randint(-2, 2)))

        zvals = [Z] + [SymNum(s, Fraction(m)) for m in range(-5, 6) for s in (1, -1)]
        # the eliminated variable may need magnitudes past the query grid:
        # one pairing can add two coefficient magnitudes to a query magnitude
        wvals = [Z] + [SymNum(s, Fraction(m)) for m in range(-10, 11) for s in (1, -1)]
        for _ in range(25):
            rows = [
                AffineRow(tuple(rand() for _ in range(3)))
                for _ in range(rng.randint(1, 4))
            ]
            try:
                projected = fm_step_nonstrict(rows, 2)
            except ValueError:
                continue
            if any(c.sign == 0 for r in projected for c in r.coeffs):
                continue  # balanced output needs resolution, checked elsewhere
            for z in zvals:
                left = all(r.satisfied_by((z,)) for r in projected)
                right = any(
                    all(r.satisfied_by((z, w)) for r in rows) for w in wvals
                )
                assert left == right, (str(z), [str(r) for r in rows])

    def test_projection_exact_three_variables(self):
        rng = random.Random(8)

        def rand():
            k = rng.randrange(4)
            if k == 3:
                return Z
            return SymNum((1, -1)[k % 2], Fraction(rng.randint(-1, 1)))

        zvals = [Z] + [SymNum(s, Fraction(m)) for m in range(-3, 4) for s in (1, -1)]
        wvals = [Z] + [SymNum(s, Fraction(m)) for m in range(-6, 7) for s in (1, -1)]
        done = 0
        while done < 12:
            rows = [
                AffineRow(tuple(rand() for _ in range(4)))
                for _ in range(rng.randint(2, 5))
            ]
            projected = fm_step_nonstrict(rows, 3)
            if any(c.sign == 0 for r in projected for c in r.coeffs):
                continue
            done += 1
            for z in product(zvals, repeat=2):
                left = all(r.satisfied_by(z) for r in projected)
                right = any(
                    all(r.satisfied_by(z + (w,)) for r in rows) for w in wvals
                )
                assert left == right, ([str(v) for v in z], [str(r) for r in rows])


class TestResolveBalanced:
    def test_constant_slot_takes_absolute_value(self):
        v = parse_matrix("1 ~1; 0 ~0")
        row = AffineRow((B(5), P(0), P(0)))
        out = resolve_balanced_nonstrict(row, v)
        assert out.coeffs[0] == P(5)

    def test_tautology_chain(self):
        v = parse_matrix("2 ~2 2 ~2; 2 ~2 ~2 2")
        row = AffineRow((B(0), B(-1), B(-1)))
        out = resolve_balanced_nonstrict(row, v)
        assert str(out) == "0 _ _ >="

    def test_interpolating_coefficient_stays_in_box(self):
        v = parse_matrix("1 ~1 3; 0 ~0 2")
        row = AffineRow((P(0), N(-1), B(2)))
        out = resolve_balanced_nonstrict(row, v)
        b = out.coeffs[2]
        assert b.is_signed
        assert b.sign is None or abs(b.mag) <= 2
        from signedtrop.convexity import sample_hull_points

        for p in sample_hull_points(v):
            assert out.satisfied_by(p)

    def test_violating_row_is_an_error(self):
        v = parse_matrix("0; 5")  # a point strictly outside the halfspace below
        row = AffineRow((Z, B(0), N(0)))
        assert not row.satisfied_by((P(0), P(5)))
        with pytest.raises(ResolutionError):
            resolve_balanced_nonstrict(row, v)


class TestRowUtilities:
    def test_prune_drops_tautologies_and_duplicates(self):
        rows = [
            AffineRow((P(0), Z, Z)),
            AffineRow((Z, P(1), Z)),
            AffineRow((Z, P(1), Z)),
        ]
        out = prune_rows(rows)
        assert [str(r) for r in out] == ["_ 1 _ >="]

    def test_parse_round_trip(self):
        text = "~0 0 0 >=; 1 ~1 _ >"
        rows = parse_halfspace_system(text)
        assert [str(r) for r in rows] == ["~0 0 0 >=", "1 ~1 _ >"]
        assert rows[1].strict

    def test_eval_and_satisfaction(self):
        row = AffineRow((N(0), P(0), P(0)))
        assert row.satisfied_by((N(1), P(1)))
        assert not row.satisfied_by((Z, Z))
