import pytest

from lforge.fields import GF
from lforge.ideals import (
    Ideal,
    eliminate,
    image_ideal,
    intersect,
    irrelevant_ideal,
    jacobian,
    linear_section_reduce,
    matrix_det,
    minors_ideal,
    quotient,
    saturate,
    saturate_irrelevant,
    singular_locus,
    zero_dim_reduced_check,
)
from lforge.mpoly import PolynomialRing
from lforge.rng import Rng

F17 = GF(17)
R3 = PolynomialRing(F17, ("x", "y", "z"))
x, y, z = R3.gens()


def test_ideal_basics():
    I = Ideal(R3, [x**2 - y * z, R3.zero])
    assert len(I.gens) == 1
    assert I.contains(x**2 - y * z)
    assert I.contains((x**2 - y * z) * y)
    assert not I.contains(x)
    assert I.contains(R3.zero)
    Z = Ideal(R3, [])
    assert Z.is_zero_ideal()
    assert not Z.contains(x)


def test_ideal_equality():
    I = Ideal(R3, [x, y])
    J = Ideal(R3, [x + y, y])
    K = Ideal(R3, [x])
    assert I == J
    assert I != K


def test_eliminate_conic():
    R = PolynomialRing(F17, ("s", "t", "x", "y", "z"))
    s, t, X, Y, Z = R.gens()
    I = Ideal(R, [X - s**2, Y - s * t, Z - t**2])
    E = eliminate(I, 2)
    assert E.ring.names == ("x", "y", "z")
    small = E.ring
    xx, yy, zz = small.gens()
    assert Ideal(small, [xx * zz - yy**2]) == E


def test_eliminate_zero_vars():
    I = Ideal(R3, [x])
    assert eliminate(I, 0) is I
    with pytest.raises(ValueError):
        eliminate(I, 3)


def test_intersect_principal():
    I = Ideal(R3, [x])
    J = Ideal(R3, [y])
    K = intersect(I, J)
    assert K == Ideal(R3, [x * y])
    assert intersect(I, Ideal(R3, [])) .is_zero_ideal()


def test_intersect_contained_in_both():
    rng = Rng(11)
    for trial in range(5):
        I = Ideal(R3, [R3.random_form(2, rng.fork(trial * 2))])
        J = Ideal(R3, [R3.random_form(2, rng.fork(trial * 2 + 1)),
                       R3.random_form(1, rng.fork(trial + 100))])
        K = intersect(I, J)
        for g in K.gens:
            assert I.contains(g)
            assert J.contains(g)


def test_quotient_trivial():
    I = Ideal(R3, [x**2, x * y])
    Q = quotient(I, Ideal(R3, [x]))
    assert Q == Ideal(R3, [x, y])
    with pytest.raises(ValueError):
        quotient(I, Ideal(R3, []))


def test_quotient_properties():
    rng = Rng(23)
    for trial in range(4):
        I = Ideal(R3, [R3.random_form(2, rng.fork(trial)),
                       R3.random_form(3, rng.fork(trial + 50))])
        J = Ideal(R3, [R3.random_form(1, rng.fork(trial + 200))])
        Q = quotient(I, J)
        # I <= I:J and (I:J)*J <= I
        for g in I.gens:
            assert Q.contains(g)
        for q in Q.gens:
            for j in J.gens:
                assert I.contains(q * j)


def test_saturate_fixed_point():
    R2 = PolynomialRing(F17, ("x", "y"))
    X, Y = R2.gens()
    m = irrelevant_ideal(R2)
    I = Ideal(R2, [X * X, X * Y])  # (x) * m
    S = saturate(I, m)
    assert S == Ideal(R2, [X])
    assert saturate(S, m) == S


def test_saturate_irrelevant_matches_quotient_route():
    R2 = PolynomialRing(F17, ("x", "y"))
    X, Y = R2.gens()
    I = Ideal(R2, [X * X, X * Y])
    assert saturate_irrelevant(I) == Ideal(R2, [X])
    rng = Rng(7)
    for trial in range(3):
        f = R3.random_form(2, rng.fork(trial))
        g = R3.random_form(1, rng.fork(trial + 10))
        I = Ideal(R3, [f * g_ for g_ in (x, y, z)])  # f * m is unsaturated
        fast = saturate_irrelevant(I)
        slow = saturate(I, irrelevant_ideal(R3))
        assert fast == slow == Ideal(R3, [f])


def test_hilbert_twisted_cubic():
    R4 = PolynomialRing(F17, ("x", "y", "z", "w"))
    X, Y, Z, W = R4.gens()
    I = Ideal(R4, [X * Z - Y * Y, X * W - Y * Z, Y * W - Z * Z])
    assert I.dim_degree() == (1, 3)


def test_hilbert_complete_intersection():
    R4 = PolynomialRing(F17, ("a", "b", "c", "d"))
    rng = Rng(3)
    q1 = R4.random_form(2, rng.fork(0))
    q2 = R4.random_form(2, rng.fork(1))
    I = Ideal(R4, [q1, q2])
    assert I.dim_degree() == (1, 4)


def test_hilbert_irrelevant_and_errors():
    assert irrelevant_ideal(R3).dim_degree()[0] == -1
    assert irrelevant_ideal(R3).is_empty()
    with pytest.raises(ValueError):
        Ideal(R3, [x + x * y]).hilbert()


def test_graded_piece_dim():
    R2 = PolynomialRing(F17, ("x", "y"))
    X, Y = R2.gens()
    I = Ideal(R2, [X * X])
    assert I.graded_piece_dim(2) == 1
    assert I.graded_piece_dim(3) == 2  # x^2*x, x^2*y
    assert I.graded_piece_dim(1) == 0
    assert Ideal(R2, []).graded_piece_dim(5) == 0


def test_matrix_det_and_minors():
    R4 = PolynomialRing(F17, ("x", "y", "z", "w"))
    X, Y, Z, W = R4.gens()
    M = [[X, Y, Z], [Y, Z, W]]
    I = minors_ideal(M, 2)
    assert len(I.gens) == 3
    assert I.dim_degree() == (1, 3)
    with pytest.raises(ValueError):
        minors_ideal(M, 3)
    # determinant vs direct expansion on a 3x3
    N = [[X, Y, Z], [Y, Z, W], [Z, W, X]]
    d = matrix_det(N)
    expect = (
        X * (Z * X - W * W) - Y * (Y * X - W * Z) + Z * (Y * W - Z * Z)
    )
    assert d == expect


def test_jacobian():
    J = jacobian([x**2 + y * z])
    assert J == [[2 * x, z, y]]


def test_singular_locus_smooth_quadric():
    R6 = PolynomialRing(F17, ("x0", "x1", "x2", "x3", "x4", "x5"))
    g = R6.gens()
    q = g[0] * g[1] + g[2] * g[3] + g[4] * g[5]
    S = singular_locus(Ideal(R6, [q]), 1)
    assert S.is_empty()


def test_singular_locus_cuspidal_cubic():
    f = z * y**2 - x**3
    S = singular_locus(Ideal(R3, [f]), 1)
    # supported at the single cusp point (0:0:1), with multiplicity 2
    assert S.dim_degree() == (0, 2)
    point = Ideal(R3, [x, y])
    for g in S.gens:
        assert point.contains(g)
    out = zero_dim_reduced_check(S, seed=3)
    assert out["reduced"] is False


def test_singular_locus_nodal_cubic():
    # node at (0:0:1): the Jacobian scheme there is one reduced point
    f = z * y**2 - x**3 - x**2 * z
    S = singular_locus(Ideal(R3, [f]), 1)
    assert S.dim_degree() == (0, 1)
    assert S == Ideal(R3, [x, y])


def test_singular_locus_codim_mismatch():
    with pytest.raises(ValueError):
        singular_locus(Ideal(R3, [x + y]), 3)


def test_image_ideal_conic_both_methods():
    S = PolynomialRing(F17, ("s", "t"))
    s, t = S.gens()
    T = PolynomialRing(F17, ("x", "y", "z"))
    forms = [s**2, s * t, t**2]
    res = image_ideal(forms, T, method="graded", bound=3)
    X, Y, Z = T.gens()
    assert res.ideal == Ideal(T, [X * Z - Y * Y])
    assert res.h0 == {1: 0, 2: 1, 3: 3}
    assert res.stable
    res2 = image_ideal(forms, T, method="elimination")
    assert res2.ideal == res.ideal


def test_image_ideal_validation():
    S = PolynomialRing(F17, ("s", "t"))
    s, t = S.gens()
    T = PolynomialRing(F17, ("x", "y", "z"))
    with pytest.raises(ValueError):
        image_ideal([s, t], T, method="graded", bound=2)
    with pytest.raises(ValueError):
        image_ideal([s**2, s * t, t], T, method="graded", bound=2)
    with pytest.raises(ValueError):
        image_ideal([s**2, s * t, t**2], T, method="graded")


def test_zero_dim_reduced_two_points():
    I = Ideal(R3, [z, x * y])
    out = zero_dim_reduced_check(I, seed=5)
    assert out["status"] == "ok"
    assert out["degree"] == 2
    assert out["reduced"] is True


def test_zero_dim_not_reduced_double_point():
    I = Ideal(R3, [x**2, y])
    out = zero_dim_reduced_check(I, seed=5)
    assert out["degree"] == 2
    assert out["reduced"] is False
    assert out["status"] == "ok"


def test_zero_dim_reduced_many_points():
    # 4 coordinate-ish points in P^2: V(xy, xz... ) build via intersection
    pts = [Ideal(R3, [x, y]), Ideal(R3, [y, z]), Ideal(R3, [x, z]),
           Ideal(R3, [x - y, y - z])]
    I = pts[0]
    for P in pts[1:]:
        I = intersect(I, P)
    out = zero_dim_reduced_check(I, seed=9)
    assert out == {**out, "reduced": True, "degree": 4}


def test_zero_dim_check_rejects_positive_dim():
    with pytest.raises(ValueError):
        zero_dim_reduced_check(Ideal(R3, [x]), seed=0)


def test_linear_section_reduce_trivial():
    I = Ideal(R3, [x])
    S = linear_section_reduce(I, [x])
    assert S.is_zero_ideal()
    assert S.ring.names == ("y", "z")


def test_linear_section_reduce_conic():
    # restrict the conic xz - y^2 to the line z = x: x^2 - y^2, two points
    I = Ideal(R3, [x * z - y**2])
    S = linear_section_reduce(I, [z - x])
    assert S.ring.nvars == 2
    assert S.dim_degree() == (0, 2)


def test_linear_section_dependent_forms():
    with pytest.raises(ValueError):
        linear_section_reduce(Ideal(R3, [x]), [x + y, 2 * x + 2 * y])
    with pytest.raises(ValueError):
        linear_section_reduce(Ideal(R3, [x]), [x, y, z])
    with pytest.raises(ValueError):
        linear_section_reduce(Ideal(R3, [x]), [x**2])
