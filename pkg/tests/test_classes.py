import pytest

from confan.classes import (
    BiDegree,
    a_invariant,
    chow_bidegree,
    cohomology_basis,
    is_truncation_boundary,
    motivic_class,
    resolution_betti,
    x_motivic_example,
)
from confan.config import psi_basis_expansion
from confan.errors import Degenerate, HasLoops, NotConnected, NotRound
from confan.matroid import (
    ClassPoly,
    matroid_from_bases,
    uniform_matroid,
)

from .oracles import biprojective_incidence_count, projective_hypersurface_count


class TestMotivicClass:
    def test_square_chord_frozen(self, square_chord_matroid):
        assert motivic_class(square_chord_matroid) == ClassPoly([1, 2, 4, 1], "L")

    def test_round_case_is_product_of_projective_spaces(self):
        # for round matroids the class collapses to [P^(r-1)] x [P^(n-r-1)]
        for r, n in ((2, 3), (2, 5), (3, 5), (3, 6)):
            m = uniform_matroid(r, n)
            expected = ClassPoly([1] * r, "L") * ClassPoly([1] * (n - r), "L")
            assert motivic_class(m) == expected

    def test_nonround_differs_from_product(self, square_chord_matroid):
        product = ClassPoly([1, 1, 1], "L") * ClassPoly([1, 1], "L")
        assert motivic_class(square_chord_matroid) != product

    def test_rejects_loops_and_disconnected(self):
        with pytest.raises(HasLoops):
            motivic_class(matroid_from_bases(3, [(1,), (2,)]))
        with pytest.raises(NotConnected):
            motivic_class(matroid_from_bases(4, [(1, 3), (1, 4), (2, 3), (2, 4)]))

    @pytest.mark.parametrize("q", [2, 3])
    def test_point_count_specialization_square_chord(self, square_chord_matrix, square_chord_matroid, q):
        # evaluating the class at q counts F_q points of the incidence locus
        rows = [list(map(int, row)) for row in square_chord_matrix.rows]
        assert motivic_class(square_chord_matroid).evaluate(q) == (
            biprojective_incidence_count(rows, q)
        )

    @pytest.mark.parametrize(
        "rows,q",
        [
            (((1, 0, 1), (0, 1, 1)), 2),           # U_{2,3}
            (((1, 0, 1), (0, 1, 1)), 3),
            (((1, 0, 1, 1), (0, 1, 1, 2)), 3),     # U_{2,4}
            (((1, 0, 1, 1, 1), (0, 1, 1, 2, 3)), 5),  # U_{2,5}
        ],
    )
    def test_point_count_specialization_uniform(self, rows, q):
        from itertools import combinations

        from confan.arith import Matrix
        from confan.matroid import matroid_from_matrix

        m = matroid_from_matrix(Matrix(rows))
        # columns stay pairwise independent mod q, so the matroid survives
        r, n = len(rows), len(rows[0])
        assert all(
            _det_mod(rows, cols, q) != 0
            for cols in combinations(range(n), r)
        )
        assert motivic_class(m).evaluate(q) == (
            biprojective_incidence_count([list(r) for r in rows], q)
        )


def _det_mod(rows, cols, q):
    sub = [[rows[i][j] for j in cols] for i in range(len(rows))]
    assert len(sub) == 2
    return (sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]) % q


class TestXMotivicExample:
    def test_frozen_polynomial(self):
        assert x_motivic_example() == ClassPoly([1, 1, 2, 1], "L")

    def test_f2_count_matches_hypersurface(self, square_chord_config):
        # [X] at q counts projective F_q points of the vanishing locus
        psi = psi_basis_expansion(square_chord_config)

        def ev(point):
            return int(psi.evaluate([int(x) for x in point]))

        for q in (2, 3):
            assert x_motivic_example().evaluate(q) == (
                projective_hypersurface_count(ev, 5, q)
            )

    def test_lambda_value_at_two(self, square_chord_matroid):
        assert motivic_class(square_chord_matroid).evaluate(2) == 29
        assert x_motivic_example().evaluate(2) == 19


class TestChowBidegree:
    def test_square_chord(self):
        bd = chow_bidegree(5, 3)
        assert bd == BiDegree({(5, 0): 1, (4, 1): 3, (3, 2): 3, (2, 3): 1})
        assert str(bd) == "H^5+3H^4H*+3H^3H*^2+H^2H*^3"

    def test_total_is_power_of_two(self):
        for r, n in ((2, 4), (3, 5), (2, 5)):
            assert chow_bidegree(n, r).total() == 2 ** r

    def test_json_shape(self):
        data = chow_bidegree(4, 2).to_json()
        assert all(set(e) == {"h", "hstar", "coeff"} for e in data)
        assert data[0] == {"h": 4, "hstar": 0, "coeff": 1}


class TestCohomology:
    def test_u25(self):
        assert cohomology_basis(uniform_matroid(2, 5)) == (1, 2, 2, 1)

    def test_u23_boundary(self):
        m = uniform_matroid(2, 3)
        assert is_truncation_boundary(m)
        assert cohomology_basis(m) == (1, 1)

    def test_u35(self):
        m = uniform_matroid(3, 5)
        assert is_truncation_boundary(m)
        assert cohomology_basis(m) == (1, 2, 2, 1)

    def test_total_rank(self):
        # the quotient has rank r * (n - r)
        for r, n in ((2, 4), (2, 5), (3, 5), (3, 6), (2, 6)):
            assert sum(cohomology_basis(uniform_matroid(r, n))) == r * (n - r)

    def test_rejects_nonround(self, square_chord_matroid):
        with pytest.raises(NotRound):
            cohomology_basis(square_chord_matroid)

    def test_rejects_rank_one(self):
        with pytest.raises(Degenerate):
            cohomology_basis(uniform_matroid(1, 3))


class TestBetti:
    def test_square_chord_shape(self):
        t = resolution_betti(5, 3)
        assert t.rows[0] == ((0, 1),)
        assert t.rows[1] == ((-2, 3), (-3, 1))
        assert t.rows[2] == ((-4, 3), (-4, 3))
        assert t.rows[3] == ((-5, 3),)
        assert t.type() == 3
        assert str(t).splitlines()[0] == "F0 = R(0)^1"

    @pytest.mark.parametrize("r,n", [(1, 2), (2, 4), (3, 5), (4, 7), (5, 9)])
    def test_euler_characteristic_vanishes(self, r, n):
        t = resolution_betti(n, r)
        assert len(t.rows) == r + 1
        assert t.alternating_sum() == 0
        assert t.type() == r

    def test_first_syzygies_count(self):
        # F1 always has rank C(r,1) + C(r,0) = r + 1: the r quadrics plus psi
        for r, n in ((2, 4), (3, 5), (4, 6)):
            assert resolution_betti(n, r).rank(1) == r + 1

    def test_degenerate(self):
        with pytest.raises(Degenerate):
            resolution_betti(3, 3)


class TestAInvariant:
    def test_values(self):
        assert a_invariant(5, 3) == -3
        assert a_invariant(4, 2) == -3
        assert a_invariant(5, 2) == -4

    def test_degenerate(self):
        with pytest.raises(Degenerate):
            a_invariant(2, 2)
