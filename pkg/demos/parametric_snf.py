"""Smith normal form over F_17[lambda] and what its last diagonal entry
knows.

A matrix whose entries depend polynomially on a parameter drops rank
exactly at the roots of the last diagonal entry of its Smith normal form.
This demo diagonalizes a small parametric matrix, factors that entry with
Cantor-Zassenhaus, and checks the transforms by multiplication.  The same
pipeline runs on the pinned 55x56 interpolation matrix via
`lforge run ln-snf` (a couple of minutes), where the entry has degree 150.

Run: python3 demos/parametric_snf.py
"""

from lforge.fields import GF
from lforge.snf import (
    PolyMatrix,
    root_scan_ff,
    smith_normal_form,
    unipoly_factor_ff,
)
from lforge.unipoly import UniPoly

F = GF(17)


def P(*coeffs):
    return UniPoly(F, list(coeffs))


def main():
    lam = UniPoly.x(F)
    one = UniPoly.one(F)
    M = PolyMatrix([
        [one, lam, P(0, 0, 1)],
        [lam, P(1, 1), P(0, 2)],
        [P(0, 0, 1), P(0, 2), P(3, 0, 0, 1)],
    ])
    res = smith_normal_form(M)  # verify=True re-multiplies S1 M S2
    print("diagonal of the Smith normal form:")
    for d in res.diagonal():
        print("  ", d.to_string())
    p = res.diagonal()[-1]
    print("transforms verified:", res.verified)
    print()
    print(f"last entry has degree {p.degree}; its roots are where the")
    print("matrix drops rank:")
    print("  roots in F_17:", root_scan_ff(p))
    print("  factorization:",
          " * ".join(f"({g.to_string()})^{m}" if m > 1 else
                     f"({g.to_string()})"
                     for g, m in unipoly_factor_ff(p)))
    for r in root_scan_ff(p):
        vals = [[e(F.of(r)) for e in row] for row in M.entries]
        from lforge.linalg import rank_mod
        print(f"  rank at lambda={r}:", rank_mod(vals, 17),
              "(full rank is 3)")


if __name__ == "__main__":
    main()
