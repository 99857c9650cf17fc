import random
from fractions import Fraction

import pytest

from conftest import planted_quartic_point_model, random_rational_matrix

from fano212.cyclotomic import Cyclotomic, cyc
from fano212.groebner import hilbert_polynomial, qp_eval
from fano212.linalg import proj_equal
from fano212.model import (
    InvalidModel,
    ModelTriple,
    Side,
    bilinear_forms,
    coeff_matrix,
    curve_point_to_quartic_point,
    determinantal_quartic,
    fiber_section,
    full_smoothness,
    minor_cubics,
    model_from_matrices,
    quartic_point_to_curve_point,
    quartic_smooth,
    rank_locus_check,
    sample_curve_points,
    validate_model,
)
from fano212.multipoly import MultiPoly


def e_matrix(i, j):
    m = [[0] * 4 for _ in range(4)]
    m[i][j] = 1
    return m


def identity4():
    return [[1 if i == j else 0 for j in range(4)] for i in range(4)]


class TestValidation:
    def test_wrong_shape(self):
        with pytest.raises(InvalidModel) as exc:
            model_from_matrices([identity4(), identity4(), [[1] * 4] * 3])
        assert exc.value.code == "matrix-shape"

    def test_dependent_forms_rejected(self):
        m = model_from_matrices([identity4(), identity4(), e_matrix(0, 0)])
        with pytest.raises(InvalidModel) as exc:
            validate_model(m)
        assert exc.value.code == "dependent-forms"


class TestBilinearForms:
    def test_identity_gives_trace_form(self):
        m = model_from_matrices([identity4(), e_matrix(0, 1), e_matrix(2, 3)])
        forms = bilinear_forms(m)
        expected = MultiPoly(
            8,
            {
                tuple(1 if v in (j, 4 + j) else 0 for v in range(8)): 1
                for j in range(4)
            },
        )
        assert forms[0] == expected

    def test_transpose_swaps_arguments(self):
        rng = random.Random(3)
        m = model_from_matrices([random_rational_matrix(rng) for _ in range(3)])
        forms = bilinear_forms(m)
        forms_t = bilinear_forms(m.transposed())
        swap = {i: MultiPoly.variable((i + 4) % 8, 8) for i in range(8)}
        for f, ft in zip(forms, forms_t):
            assert ft == f.substitute(swap)

    def test_coefficients_match_entries(self):
        rng = random.Random(4)
        grids = [random_rational_matrix(rng) for _ in range(3)]
        m = model_from_matrices(grids)
        forms = bilinear_forms(m)
        for grid, f in zip(grids, forms):
            for j in range(4):
                for k in range(4):
                    exps = [0] * 8
                    exps[j] = 1
                    exps[4 + k] = 1
                    assert f.coefficient(exps) == cyc(grid[j][k])


class TestCoeffMatrix:
    def test_elementary_matrices(self):
        m = model_from_matrices([e_matrix(1, 0), e_matrix(1, 1), e_matrix(1, 2)])
        rows = coeff_matrix(m, Side.FIRST)
        x1 = MultiPoly.variable(1, 4)
        for i in range(3):
            for j in range(4):
                assert rows[i][j] == (x1 if j == i else MultiPoly.zero(4))

    def test_evaluation_recovers_forms(self):
        rng = random.Random(5)
        m = model_from_matrices([random_rational_matrix(rng) for _ in range(3)])
        forms = bilinear_forms(m)
        xs = [cyc(v) for v in (1, -2, 3, Fraction(1, 2))]
        ys = [cyc(v) for v in (2, 0, -1, 1)]
        rows = coeff_matrix(m, Side.FIRST)
        for i in range(3):
            value = sum(
                (rows[i][j].evaluate(xs) * ys[j] for j in range(4)), cyc(0)
            )
            assert value == forms[i].evaluate(xs + ys)

    def test_second_side_is_transposed_triple(self):
        rng = random.Random(6)
        m = model_from_matrices([random_rational_matrix(rng) for _ in range(3)])
        assert coeff_matrix(m, Side.SECOND) == coeff_matrix(m.transposed(), Side.FIRST)


class TestMinorCubics:
    def test_degenerate_rank_rejected(self):
        # all matrices supported on the first two columns: generic rank 2
        grids = []
        rng = random.Random(7)
        for _ in range(3):
            g = [[0] * 4 for _ in range(4)]
            for r in range(4):
                g[r][0] = rng.randint(-2, 2)
                g[r][1] = rng.randint(-2, 2)
            grids.append(g)
        m = model_from_matrices(grids)
        with pytest.raises(InvalidModel) as exc:
            minor_cubics(m, Side.FIRST)
        assert exc.value.code == "degenerate-rank"

    def test_cofactor_vector_in_kernel(self, planted_model):
        m, _ = planted_model
        rows = coeff_matrix(m, Side.FIRST)
        minors = minor_cubics(m, Side.FIRST).generators
        point = [cyc(v) for v in (1, 2, -1, 3)]
        kernel = [
            minors[0].evaluate(point),
            -minors[1].evaluate(point),
            minors[2].evaluate(point),
            -minors[3].evaluate(point),
        ]
        for i in range(3):
            total = sum(
                (rows[i][j].evaluate(point) * kernel[j] for j in range(4)), cyc(0)
            )
            assert total.is_zero()

    def test_hilbert_polynomial_of_centre(self, planted_model):
        m, _ = planted_model
        hp = hilbert_polynomial(minor_cubics(m, Side.FIRST))
        assert hp == (Fraction(-2), Fraction(6))  # 6t - 2
        # degree from the leading coefficient, arithmetic genus from t = 0
        assert qp_eval(hp, 1) - qp_eval(hp, 0) == 6
        assert 1 - qp_eval(hp, 0) == 3


class TestFiberSection:
    def test_satisfies_all_forms(self, planted_model):
        m, _ = planted_model
        forms = bilinear_forms(m)
        point = [cyc(v) for v in (1, 1, -2, 3)]
        fib = fiber_section(m, Side.FIRST, point)
        assert all(
            f.evaluate(point + list(fib)).is_zero() for f in forms
        )

    def test_second_side(self, planted_model):
        m, _ = planted_model
        forms = bilinear_forms(m)
        point = [cyc(v) for v in (2, -1, 1, 1)]
        fib = fiber_section(m, Side.SECOND, point)
        assert all(
            f.evaluate(list(fib) + point).is_zero() for f in forms
        )

    def test_cubic_scaling(self, planted_model):
        m, _ = planted_model
        point = [cyc(v) for v in (1, 2, -1, 3)]
        scaled = [v * 2 for v in point]
        fib = fiber_section(m, Side.FIRST, point)
        fib_scaled = fiber_section(m, Side.FIRST, scaled)
        assert all(
            (a * 8 - b).is_zero() for a, b in zip(fib, fib_scaled)
        )
        assert proj_equal(list(fib), list(fib_scaled))

    def test_point_on_centre_rejected(self, planted_model):
        m, p = planted_model
        centre = quartic_point_to_curve_point(m, p, Side.FIRST)
        with pytest.raises(InvalidModel) as exc:
            fiber_section(m, Side.FIRST, list(centre))
        assert exc.value.code == "point-on-centre"


class TestDeterminantalQuartic:
    def test_identity_pencil(self):
        m = model_from_matrices([identity4(), e_matrix(0, 1), e_matrix(0, 2)])
        q = determinantal_quartic(m)
        x = MultiPoly.variable(0, 3)
        assert q == x**4

    def test_transpose_invariance(self, planted_model):
        m, _ = planted_model
        assert determinantal_quartic(m) == determinantal_quartic(m.transposed())

    def test_degenerate_pencil_rejected(self):
        # common left kernel: first rows all zero
        grids = []
        rng = random.Random(9)
        for _ in range(3):
            g = random_rational_matrix(rng)
            g[0] = [0, 0, 0, 0]
            grids.append(g)
        m = model_from_matrices(grids)
        with pytest.raises(InvalidModel) as exc:
            determinantal_quartic(m)
        assert exc.value.code == "degenerate-pencil"


class TestQuarticSmooth:
    def test_fermat(self):
        x, y, z = [MultiPoly.variable(i, 3) for i in range(3)]
        assert quartic_smooth(x**4 + y**4 + z**4) is True

    def test_fourth_power(self):
        x = MultiPoly.variable(0, 3)
        assert quartic_smooth(x**4) is False

    def test_klein(self):
        x, y, z = [MultiPoly.variable(i, 3) for i in range(3)]
        assert quartic_smooth(x**3 * y + y**3 * z + z**3 * x) is True

    def test_wrong_degree(self):
        x = MultiPoly.variable(0, 3)
        with pytest.raises(ValueError):
            quartic_smooth(x**3)


class TestRankLocus:
    def test_smooth_instance(self, planted_model):
        m, _ = planted_model
        assert rank_locus_check(m, Side.FIRST) is True

    def test_rank_one_at_vertex(self):
        # zero second and third rows of the linear-form matrix at x = e0:
        # M_2, M_3 with zero first row leave only one independent row there
        rng = random.Random(31)
        g1 = random_rational_matrix(rng)
        g2 = random_rational_matrix(rng)
        g3 = random_rational_matrix(rng)
        g2[0] = [0, 0, 0, 0]
        g3[0] = [0, 0, 0, 0]
        m = model_from_matrices([g1, g2, g3])
        assert rank_locus_check(m, Side.FIRST) is False

    def test_degenerate_triple(self):
        m = model_from_matrices([identity4(), e_matrix(0, 0), e_matrix(1, 1)])
        assert rank_locus_check(m, Side.FIRST) is False


class TestCurveQuarticMaps:
    def test_roundtrips_and_incidence(self, planted_model):
        m, p = planted_model
        q = determinantal_quartic(m)
        for side in (Side.FIRST, Side.SECOND):
            c = quartic_point_to_curve_point(m, p, side)
            cubics = minor_cubics(m, side).generators
            assert all(f.evaluate(list(c)).is_zero() for f in cubics)
            back = curve_point_to_quartic_point(m, c, side)
            assert proj_equal(list(back), list(p))
            assert q.evaluate(list(back)).is_zero()

    def test_side_symmetry(self, planted_model):
        m, p = planted_model
        c_second = quartic_point_to_curve_point(m, p, Side.SECOND)
        c_via_transpose = quartic_point_to_curve_point(
            m.transposed(), p, Side.FIRST
        )
        assert proj_equal(list(c_second), list(c_via_transpose))

    def test_point_off_quartic_rejected(self, planted_model):
        m, _ = planted_model
        q = determinantal_quartic(m)
        point = [cyc(1), cyc(0), cyc(0)]
        if not q.evaluate(point).is_zero():
            with pytest.raises(ValueError):
                quartic_point_to_curve_point(m, point, Side.FIRST)

    def test_point_off_centre_rejected(self, planted_model):
        m, _ = planted_model
        with pytest.raises(ValueError):
            curve_point_to_quartic_point(m, [cyc(1), cyc(2), cyc(-1), cyc(3)], Side.FIRST)


class TestSampleCurvePoints:
    def test_planted_point_found_and_roundtrips(self):
        # the planted construction puts a rational point on the second-side
        # centre; hyperplanes with small coefficients hit it within a few draws
        m, p = planted_quartic_point_model(seed=7)
        expected = quartic_point_to_curve_point(m, p, Side.SECOND)
        points = sample_curve_points(m, Side.SECOND, seed=2, attempts=20)
        assert points, "sampler found no representable point on a planted instance"
        assert any(proj_equal(list(c), list(expected)) for c in points)
        for c in points:
            cubics = minor_cubics(m, Side.SECOND).generators
            assert all(f.evaluate(list(c)).is_zero() for f in cubics)
            back = curve_point_to_quartic_point(m, c, Side.SECOND)
            q = determinantal_quartic(m)
            assert q.evaluate(list(back)).is_zero()

    def test_empty_result_is_reported_not_raised(self):
        rng = random.Random(40)
        m = model_from_matrices([random_rational_matrix(rng) for _ in range(3)])
        points = sample_curve_points(m, Side.FIRST, seed=1, attempts=4)
        assert isinstance(points, list)


@pytest.mark.slow
class TestFullSmoothness:
    def test_coherence_of_smoothness_checks(self):
        # a verified-smooth instance passes all four checks at once
        rng = random.Random(7)
        m = model_from_matrices(
            [random_rational_matrix(rng, -1, 1) for _ in range(3)]
        )
        validate_model(m)
        q = determinantal_quartic(m)
        assert quartic_smooth(q)
        assert rank_locus_check(m, Side.FIRST)
        assert hilbert_polynomial(minor_cubics(m, Side.FIRST)) == (
            Fraction(-2),
            Fraction(6),
        )
        assert full_smoothness(m) is True

    def test_singular_quartic_forces_singular_intersection(self, singular_model):
        q = determinantal_quartic(singular_model)
        assert quartic_smooth(q) is False
        assert full_smoothness(singular_model) is False

    def test_dependent_forms_rejected_before_charts(self):
        m = model_from_matrices([identity4(), identity4(), e_matrix(0, 0)])
        with pytest.raises(InvalidModel):
            full_smoothness(m)
