"""Smith normal form over k[lambda] for a field k, with tracked unimodular
transforms, plus univariate factorization over prime fields (squarefree,
distinct-degree, Cantor-Zassenhaus) and direct root scanning.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import GF, PrimeField, is_prime
from .rng import as_rng
from .unipoly import UniPoly, gcd, squarefree_decomposition


class SnfError(ValueError):
    pass


class PolyMatrix:
    """Rectangular matrix of UniPoly over one field and variable."""

    def __init__(self, entries, field=None, var=None):
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.ncols:
                raise SnfError("ragged matrix")
        first = self.entries[0][0] if self.entries else None
        self.field = field if field is not None else first.field
        self.var = var if var is not None else first.var
        for row in self.entries:
            for e in row:
                if e.field != self.field or e.var != self.var:
                    raise SnfError("mixed fields or variables")

    @classmethod
    def identity(cls, n, field, var="lambda"):
        one = UniPoly.one(field, var)
        zero = UniPoly.zero(field, var)
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)], field, var)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix)
                and self.entries == other.entries)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise SnfError("shape mismatch")
        zero = UniPoly.zero(self.field, self.var)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.field, self.var)

    def determinant(self) -> UniPoly:
        """Expansion by minors with memoization; fine through 8x8."""
        if self.nrows != self.ncols:
            raise SnfError("determinant of a non-square matrix")
        zero = UniPoly.zero(self.field, self.var)
        memo = {}

        def rec(rows, cols):
            if not rows:
                return UniPoly.one(self.field, self.var)
            key = (rows, cols)
            if key in memo:
                return memo[key]
            i = rows[0]
            rest = rows[1:]
            acc = zero
            for t, j in enumerate(cols):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                sub = rec(rest, tuple(c for c in cols if c != j))
                term = e * sub
                acc = acc + term if t % 2 == 0 else acc - term
            memo[key] = acc
            return acc

        return rec(tuple(range(self.nrows)), tuple(range(self.ncols)))

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.var}"]
        for row in self.entries:
            for e in row:
                lines.append(e.to_string())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field) -> "PolyMatrix":
        lines = [ln for ln in (l.split("#", 1)[0].strip()
                               for l in text.splitlines()) if ln]
        r, c, var = lines[0].split()
        r, c = int(r), int(c)
        entries = []
        it = iter(lines[1:])
        for i in range(r):
            entries.append([_parse_unipoly(next(it), field, var)
                            for _ in range(c)])
        return cls(entries, field, var)


def _parse_unipoly(text: str, field, var: str) -> UniPoly:
    from .mpoly import PolynomialRing
    from .textio import parse_poly

    ring = PolynomialRing(field, (var,))
    f = parse_poly(text, ring)
    coeffs = [field.zero] * (1 + max(
        (ring.code.unpack(m)[0] for m, _ in f.terms), default=0))
    for m, c in f.terms:
        coeffs[ring.code.unpack(m)[0]] = c
    return UniPoly(field, coeffs, var)


def mod_reduce(x, p: int):
    """Reduce a rational UniPoly or PolyMatrix mod p."""
    if isinstance(x, PolyMatrix):
        return PolyMatrix([[mod_reduce(e, p) for e in row]
                           for row in x.entries], GF(p), x.var)
    field = GF(p)
    out = []
    for c in x.coeffs:
        frac = Fraction(c)
        if frac.denominator % p == 0:
            raise SnfError(f"denominator of {c} vanishes mod {p}")
        out.append(field.mul(field.of(frac.numerator % p),
                             field.inv(field.of(frac.denominator % p))))
    return UniPoly(field, out, x.var)


class SNFResult:
    def __init__(self, D: PolyMatrix, S1: PolyMatrix, S2: PolyMatrix,
                 verified: bool):
        self.D = D
        self.S1 = S1
        self.S2 = S2
        self.verified = verified

    def diagonal(self):
        n = min(self.D.nrows, self.D.ncols)
        return [self.D[i, i] for i in range(n)]


def _coeff_height(f: UniPoly) -> int:
    h = 0
    for c in f.coeffs:
        frac = Fraction(c)
        h = max(h, abs(frac.numerator), frac.denominator)
    return h


def smith_normal_form(M: PolyMatrix, verify: bool = True) -> SNFResult:
    """Diagonalize M by unimodular row/column operations over field[var].

    Pivot choice: minimal degree, then (over the rationals) minimal
    coefficient height, then position.  Returns D with monic diagonal in a
    divisibility chain and the transforms with S1 M S2 = D, re-verified by
    explicit multiplication unless verify=False.
    """
    field, var = M.field, M.var
    A = [list(row) for row in M.entries]
    r, c = M.nrows, M.ncols
    S1 = PolyMatrix.identity(r, field, var).entries
    S2 = PolyMatrix.identity(c, field, var).entries
    rational = not isinstance(field, PrimeField)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        S1[i], S1[j] = S1[j], S1[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in S2:
            row[i], row[j] = row[j], row[i]

    def row_op(i, j, q):
        # row i -= q * row j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        S1[i] = [a - q * b for a, b in zip(S1[i], S1[j])]

    def col_op(i, j, q):
        # col i -= q * col j
        for row in A:
            row[i] = row[i] - q * row[j]
        for row in S2:
            row[i] = row[i] - q * row[j]

    def pick_pivot(k):
        best = None
        for i in range(k, r):
            for j in range(k, c):
                e = A[i][j]
                if e.is_zero():
                    continue
                key = (e.degree, _coeff_height(e) if rational else 0, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        return best

    k = 0
    n = min(r, c)
    while k < n:
        best = pick_pivot(k)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(k, pi)
        swap_cols(k, pj)
        dirty = False
        for i in range(k + 1, r):
            if A[i][k].is_zero():
                continue
            q, rem = A[i][k].divmod(A[k][k])
            row_op(i, k, q)
            if not rem.is_zero():
                dirty = True
        for j in range(k + 1, c):
            if A[k][j].is_zero():
                continue
            q, rem = A[k][j].divmod(A[k][k])
            col_op(j, k, q)
            if not rem.is_zero():
                dirty = True
        if dirty:
            continue
        # pivot must divide the remaining block for the chain to work
        offender = None
        for i in range(k + 1, r):
            for j in range(k + 1, c):
                if not A[i][j].divmod(A[k][k])[1].is_zero():
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            # fold the offending row into row k and re-run the step
            A[k] = [a + b for a, b in zip(A[k], A[offender])]
            S1[k] = [a + b for a, b in zip(S1[k], S1[offender])]
            continue
        k += 1

    # monic diagonal
    for i in range(min(r, c)):
        d = A[i][i]
        if not d.is_zero() and d.lc != field.one:
            u = field.inv(d.lc)
            A[i] = [e.scale(u) for e in A[i]]
            S1[i] = [e.scale(u) for e in S1[i]]

    D = PolyMatrix(A, field, var)
    S1m = PolyMatrix(S1, field, var)
    S2m = PolyMatrix(S2, field, var)
    verified = True
    if verify:
        verified = S1m.mul(M).mul(S2m) == D
        for i in range(min(r, c) - 1):
            a, b = D[i, i], D[i + 1, i + 1]
            if b.is_zero():
                continue
            if a.is_zero() or not b.divmod(a)[1].is_zero():
                verified = False
        if not verified:
            raise SnfError("transform or divisibility verification failed")
    return SNFResult(D, S1m, S2m, verified)


# -- factorization over prime fields -----------------------------------


def _powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.one(base.field, base.var)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def distinct_degree_split(f: UniPoly):
    """[(product of irreducible factors of degree d, d)] for monic
    squarefree f."""
    p = f.field.p
    x = UniPoly.x(f.field, f.var)
    out = []
    h = x
    d = 0
    rest = f.monic()
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = _powmod(h, p, rest)
        g = gcd(h - x, rest)
        if g.degree > 0:
            out.append((g.monic(), d))
            rest = rest.exact_div(g).monic()
            h = h % rest
    return out


def _equal_degree_split(f: UniPoly, d: int, rng):
    """Cantor-Zassenhaus: split monic squarefree f whose irreducible
    factors all have degree d."""
    if f.degree == d:
        return [f]
    p = f.field.p
    field = f.field
    e = (p ** d - 1) // 2
    while True:
        a = UniPoly(field, [rng.randrange(p) for _ in range(f.degree)], f.var)
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < f.degree:
            left, right = g.monic(), f.exact_div(g).monic()
        else:
            b = _powmod(a, e, f) - UniPoly.one(field, f.var)
            g = gcd(b, f)
            if not (0 < g.degree < f.degree):
                continue
            left, right = g.monic(), f.exact_div(g).monic()
        return (_equal_degree_split(left, d, rng)
                + _equal_degree_split(right, d, rng))


def unipoly_factor_ff(f: UniPoly, seed_or_rng=0):
    """Full factorization over a prime field: list of (monic irreducible,
    multiplicity), unit absorbed by monic scaling."""
    if f.is_zero():
        raise SnfError("cannot factor the zero polynomial")
    if not isinstance(f.field, PrimeField):
        raise SnfError("finite-field factorization needs a prime field")
    rng = as_rng(seed_or_rng)
    out = []
    for sq, mult in squarefree_decomposition(f.monic()):
        for block, d in distinct_degree_split(sq):
            for irr in _equal_degree_split(block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def is_irreducible_ff(f: UniPoly) -> bool:
    """gcd(x^(p^k) - x, f) pattern test for monic f over a prime field."""
    if f.degree < 1:
        return False
    f = f.monic()
    p = f.field.p
    x = UniPoly.x(f.field, f.var)
    h = _powmod(x, p ** f.degree, f)
    if h != x % f:
        return False
    # no factor of degree properly dividing deg f
    n = f.degree
    for q in {d for d in range(2, n + 1) if n % d == 0 and is_prime(d)}:
        h = _powmod(x, p ** (n // q), f)
        if gcd(h - x, f).degree > 0:
            return False
    return True


def root_scan_ff(f: UniPoly):
    """All roots in the prime field by direct evaluation."""
    if not isinstance(f.field, PrimeField):
        raise SnfError("root scan needs a prime field")
    p = f.field.p
    if p >= 1 << 20:
        raise SnfError("field too large to enumerate")
    field = f.field
    return [a for a in range(p) if field.is_zero(f(field.of(a)))]
