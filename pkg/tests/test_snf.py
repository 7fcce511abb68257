from fractions import Fraction

import pytest

from lforge.fields import GF, QQ
from lforge.rng import Rng
from lforge.snf import (
    PolyMatrix,
    SnfError,
    is_irreducible_ff,
    mod_reduce,
    root_scan_ff,
    smith_normal_form,
    unipoly_factor_ff,
)
from lforge.unipoly import UniPoly, gcd

F17 = GF(17)
LAM = UniPoly.x(F17)
ONE = UniPoly.one(F17)
ZERO = UniPoly.zero(F17)


def test_snf_already_diagonal():
    M = PolyMatrix([[LAM, ZERO], [ZERO, LAM * LAM]])
    res = smith_normal_form(M)
    assert res.verified
    assert [d.to_string() for d in res.diagonal()] == ["lambda", "lambda^2"]


def test_snf_jordan_block():
    # d1 = gcd of entries = 1, d1*d2 = det = lambda^2
    M = PolyMatrix([[LAM, ONE], [ZERO, LAM]])
    res = smith_normal_form(M)
    assert [d.to_string() for d in res.diagonal()] == ["1", "lambda^2"]


def _rand_poly(rng, deg):
    return UniPoly(F17, [rng.randrange(17) for _ in range(deg + 1)])


def _rand_matrix(rng, n, m, deg=2):
    return PolyMatrix([[_rand_poly(rng, rng.randrange(deg + 1))
                        for _ in range(m)] for _ in range(n)])


def test_snf_random_square_det_oracle():
    rng = Rng(3)
    for _ in range(20):
        n = 2 + rng.randrange(4)
        M = _rand_matrix(rng, n, n)
        res = smith_normal_form(M)  # verifies S1 M S2 = D internally
        prod = ONE
        for d in res.diagonal():
            prod = prod * d
        det = M.determinant()
        if det.is_zero():
            assert prod.is_zero()
        else:
            assert prod == det.monic()


def test_snf_divisibility_chain_and_gcd():
    rng = Rng(8)
    for _ in range(10):
        M = _rand_matrix(rng, 3 + rng.randrange(3), 3 + rng.randrange(3))
        res = smith_normal_form(M)
        diag = res.diagonal()
        for a, b in zip(diag, diag[1:]):
            if not b.is_zero():
                assert b.divmod(a)[1].is_zero()
        # d1 is the gcd of all entries
        g = ZERO
        for row in M.entries:
            for e in row:
                g = gcd(g, e) if not g.is_zero() else e
        if not g.is_zero():
            assert diag[0] == g.monic()


def test_snf_over_rationals():
    lam = UniPoly.x(QQ)
    one = UniPoly.one(QQ)
    M = PolyMatrix([[lam * lam - one, lam + one],
                    [lam - one, one]])
    res = smith_normal_form(M)
    assert res.verified
    d = res.diagonal()
    assert d[0].degree <= d[1].degree or d[1].is_zero()


def test_snf_transforms_unimodular():
    rng = Rng(5)
    M = _rand_matrix(rng, 4, 4)
    res = smith_normal_form(M)
    for S in (res.S1, res.S2):
        det = S.determinant()
        assert det.degree == 0 and not det.is_zero()


def test_factor_difference_of_squares():
    f = LAM * LAM - ONE
    out = unipoly_factor_ff(f, 1)
    assert [(g.to_string(), m) for g, m in out] == [
        ("lambda + 1", 1), ("lambda + 16", 1)]


def test_factor_sum_of_squares():
    # 4^2 = 16 = -1 mod 17
    f = LAM * LAM + ONE
    out = unipoly_factor_ff(f, 1)
    assert [(g.to_string(), m) for g, m in out] == [
        ("lambda + 4", 1), ("lambda + 13", 1)]


def test_factor_roundtrip_random():
    rng = Rng(10)
    for _ in range(50):
        f = _rand_poly(rng, 1 + rng.randrange(8))
        while f.degree < 1:
            f = _rand_poly(rng, 1 + rng.randrange(8))
        factors = unipoly_factor_ff(f, rng)
        back = ONE
        for g, m in factors:
            assert is_irreducible_ff(g)
            back = back * g ** m
        assert back == f.monic()


def test_factor_with_multiplicities():
    f = (LAM + ONE) ** 3 * (LAM * LAM + ONE)
    out = unipoly_factor_ff(f, 2)
    as_pairs = {(g.to_string(), m) for g, m in out}
    assert as_pairs == {("lambda + 1", 3), ("lambda + 4", 1),
                        ("lambda + 13", 1)}


def test_factor_zero_rejected():
    with pytest.raises(SnfError):
        unipoly_factor_ff(ZERO, 1)


def test_root_scan():
    assert root_scan_ff(LAM * LAM + ONE) == [4, 13]
    irr = LAM * LAM + LAM + UniPoly.const(F17, 3)
    assert is_irreducible_ff(irr)
    assert root_scan_ff(irr) == []


def test_is_irreducible_ff():
    assert is_irreducible_ff(LAM + ONE)
    assert not is_irreducible_ff(LAM * LAM - ONE)
    assert not is_irreducible_ff(ONE)


def test_mod_reduce():
    f = UniPoly(QQ, [3, Fraction(1, 2)])
    assert mod_reduce(f, 17).to_string() == "9*lambda + 3"
    bad = UniPoly(QQ, [Fraction(1, 17)])
    with pytest.raises(SnfError):
        mod_reduce(bad, 17)
    M = PolyMatrix([[f, f]], QQ)
    R = mod_reduce(M, 17)
    assert R[0, 0].to_string() == "9*lambda + 3"


def test_polymatrix_validation_and_text():
    with pytest.raises(SnfError):
        PolyMatrix([[LAM], [LAM, ONE]])
    M = PolyMatrix([[LAM, ONE], [ZERO, LAM * LAM]])
    assert PolyMatrix.from_text(M.to_text(), F17) == M
