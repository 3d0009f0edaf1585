"""Exact linear algebra for even positive-definite lattices.

Everything here runs over Python integers and fractions.Fraction; no floating
point is used anywhere. Vectors are tuples of Fractions holding coordinates
with respect to the lattice basis, so the Gram matrix is the single source of
truth for all inner products. Enumeration of short vectors uses an exact
rational Cholesky decomposition with branch and bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, isqrt

from .errors import (
    DimensionMismatch,
    NotEven,
    NotInDualLattice,
    NotPositiveDefinite,
    NotSymmetric,
)

Vector = tuple[Fraction, ...]


def to_vector(coords) -> Vector:
    """Coerce an iterable of numbers into a tuple of exact Fractions."""
    return tuple(Fraction(c) for c in coords)


def integer_determinant(matrix) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (diag, u, v) where u * matrix * v is diagonal with nonnegative
    entries diag[0] | diag[1] | ... and u, v are unimodular.
    """
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    m = len(a[0]) if n else 0
    u = _identity(n)
    v = _identity(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(n, m)):
        while True:
            pivot = None
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            if a[t][t] < 0:
                negate_row(t)
            cleared = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    cleared = False
            for j in range(t + 1, m):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    cleared = False
            if not cleared:
                continue  # remainders are strictly smaller pivot candidates
            offender = None
            for i in range(t + 1, n):
                if any(a[i][j] % a[t][t] for j in range(t + 1, m)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
    diag = [a[i][i] for i in range(min(n, m))]
    return diag, u, v


def _invert(matrix):
    """Exact inverse of a nonsingular square matrix, as rows of Fractions."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _ldl(matrix):
    """Decompose a symmetric matrix as R^T D R with R unit upper triangular.

    Returns (d, r) such that x^T A x = sum_i d[i] * (x_i + sum_{j>i} r[i][j] x_j)^2.
    Raises NotPositiveDefinite at the first nonpositive pivot.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    d = [Fraction(0)] * n
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise NotPositiveDefinite(f"leading principal minor {i + 1} is not positive")
        r[i][i] = Fraction(1)
        for j in range(i + 1, n):
            r[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= d[i] * r[i][k] * r[i][l]
                a[l][k] = a[k][l]
    return d, r


def _sqrt_upper(x: Fraction) -> Fraction:
    # sqrt(p/q) = sqrt(p*q)/q <= (isqrt(p*q) + 1)/q
    return Fraction(isqrt(x.numerator * x.denominator) + 1, x.denominator)


def _enumerate_affine(d, r, offset, bound):
    """All integer x with sum_i d[i]*(y_i + sum_{j>i} r[i][j] y_j)^2 <= bound,
    where y = x + offset. Branch and bound over exact rationals."""
    n = len(d)
    out = []
    if bound < 0:
        return out
    y = [Fraction(0)] * n
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            out.append(tuple(x))
            return
        c = sum((r[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        center = -offset[i] - c
        s = _sqrt_upper(remaining / d[i])
        lo = ceil(center - s)
        hi = floor(center + s)
        for xi in range(lo, hi + 1):
            yi = xi + offset[i]
            term = d[i] * (yi + c) ** 2
            if term <= remaining:
                x[i] = xi
                y[i] = yi
                rec(i - 1, remaining - term)

    rec(n - 1, Fraction(bound))
    return out


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite quotient L'/L with its invariant factors.

    representatives are all cosets, reduced componentwise into [0, 1) and
    sorted lexicographically; order equals the Gram determinant.
    """

    elementary_divisors: tuple[int, ...]
    representatives: tuple[Vector, ...]
    order: int


class EvenLattice:
    """Even positive-definite lattice presented by an integer Gram matrix.

    Instances are immutable; derived data (dual basis, discriminant group,
    short-vector enumerations) are computed on demand and cached.
    """

    def __init__(self, gram):
        rows = [list(row) for row in gram]
        n = len(rows)
        if n == 0:
            raise NotPositiveDefinite("Gram matrix is empty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise NotSymmetric(
                    f"Gram matrix is not square: row {i} has {len(row)} entries, expected {n}")
            for j, entry in enumerate(row):
                if isinstance(entry, bool) or not isinstance(entry, int):
                    raise TypeError(f"Gram entry ({i}, {j}) is not an integer: {entry!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetric(
                        f"Gram entry ({i}, {j}) = {rows[i][j]} differs from ({j}, {i}) = {rows[j][i]}")
        for i in range(n):
            if rows[i][i] % 2:
                raise NotEven(f"diagonal Gram entry ({i}, {i}) = {rows[i][i]} is odd")
        self.gram: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in rows)
        self.rank: int = n
        self._gram_ldl = _ldl(self.gram)
        det = Fraction(1)
        for piv in self._gram_ldl[0]:
            det *= piv
        self.det: int = int(det)
        self._dual_basis = None
        self._dual_ldl = None
        self._disc = None
        self._minima = None

    def __eq__(self, other):
        return isinstance(other, EvenLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"EvenLattice(rank={self.rank}, det={self.det})"

    def _vec(self, v) -> Vector:
        w = to_vector(v)
        if len(w) != self.rank:
            raise DimensionMismatch(
                f"vector has length {len(w)}, lattice rank is {self.rank}")
        return w

    # -- bilinear data ----------------------------------------------------

    def bilinear_value(self, v, w) -> Fraction:
        """<v, w> = v^T * gram * w, exactly."""
        v = self._vec(v)
        w = self._vec(w)
        total = Fraction(0)
        for i in range(self.rank):
            if v[i]:
                total += v[i] * sum(self.gram[i][j] * w[j] for j in range(self.rank))
        return total

    def quadratic_value(self, v) -> Fraction:
        """Q(v) = <v, v> / 2, exactly."""
        return self.bilinear_value(v, v) / 2

    def dual_basis(self):
        """Inverse Gram matrix; its columns are the dual basis vectors
        written in lattice coordinates."""
        if self._dual_basis is None:
            self._dual_basis = _invert(self.gram)
        return self._dual_basis

    def is_dual_vector(self, v) -> bool:
        """Whether v pairs integrally with every lattice vector."""
        v = self._vec(v)
        return all(
            sum(self.gram[i][j] * v[j] for j in range(self.rank)).denominator == 1
            for i in range(self.rank))

    def reduce_mod1(self, v) -> Vector:
        """Reduce coordinates componentwise into [0, 1)."""
        return tuple(c - floor(c) for c in self._vec(v))

    def q_mod1(self, gamma) -> Fraction:
        """Q(gamma) mod 1; well defined on cosets of the lattice."""
        gamma = self._vec(gamma)
        if not self.is_dual_vector(gamma):
            raise NotInDualLattice(f"{gamma} does not pair integrally with the lattice")
        return self.quadratic_value(gamma) % 1

    def gcd_inner_products(self) -> int:
        """gcd of all inner products of lattice vectors (= gcd of the Gram
        entries, since every inner product is an integer combination of them
        and each entry is attained)."""
        g = 0
        for row in self.gram:
            for x in row:
                g = gcd(g, x)
        return g

    # -- enumeration ------------------------------------------------------

    def enumerate_coset(self, gamma, bound) -> list[Vector]:
        """All vectors in gamma + Z^rank with Q <= bound, sorted
        lexicographically by coordinates."""
        bound = Fraction(bound)
        if bound < 0:
            return []
        gamma = self._vec(gamma)
        d, r = self._gram_ldl
        xs = _enumerate_affine(d, r, gamma, 2 * bound)
        return sorted(tuple(g + xi for g, xi in zip(gamma, x)) for x in xs)

    def enumerate_dual_vectors(self, bound) -> list[Vector]:
        """All dual vectors with Q <= bound, each exactly once, sorted
        lexicographically by coordinates."""
        bound = Fraction(bound)
        if bound < 0:
            return []
        if self._dual_ldl is None:
            self._dual_ldl = _ldl(self.dual_basis())
        d, r = self._dual_ldl
        zero = (Fraction(0),) * self.rank
        inv = self.dual_basis()
        vecs = []
        for m in _enumerate_affine(d, r, zero, 2 * bound):
            vecs.append(tuple(
                sum((inv[i][j] * m[j] for j in range(self.rank)), Fraction(0))
                for i in range(self.rank)))
        return sorted(vecs)

    def coset_minima(self) -> dict[Vector, Fraction]:
        """Minimal Q value on every coset of the dual quotient, keyed by the
        reduced representative. Computed by one enumeration up to the
        componentwise covering bound sum|gram| / 8."""
        if self._minima is None:
            mu = Fraction(sum(abs(x) for row in self.gram for x in row), 8)
            minima: dict[Vector, Fraction] = {}
            for v in self.enumerate_dual_vectors(mu):
                key = self.reduce_mod1(v)
                q = self.quadratic_value(v)
                if key not in minima or q < minima[key]:
                    minima[key] = q
            if len(minima) != self.det:
                raise AssertionError("covering bound missed a coset")
            self._minima = minima
        return self._minima

    def min_coset_value(self, gamma) -> Fraction:
        """Minimal Q over the coset gamma + Z^rank."""
        gamma = self._vec(gamma)
        if not self.is_dual_vector(gamma):
            raise NotInDualLattice(f"{gamma} does not pair integrally with the lattice")
        return self.coset_minima()[self.reduce_mod1(gamma)]

    # -- discriminant group ------------------------------------------------

    def discriminant_group(self) -> DiscriminantGroup:
        if self._disc is None:
            diag, _, v = smith_normal_form(self.gram)
            order = 1
            for x in diag:
                order *= x
            if order != self.det:
                raise AssertionError("Smith form does not multiply to the determinant")
            reps = set()
            for ks in itertools.product(*(range(di) for di in diag)):
                vec = tuple(
                    sum(Fraction(v[i][j] * ks[j], diag[j]) for j in range(self.rank)) % 1
                    for i in range(self.rank))
                reps.add(vec)
            if len(reps) != order:
                raise AssertionError("coset representatives are not distinct")
            self._disc = DiscriminantGroup(
                elementary_divisors=tuple(x for x in diag if x != 1),
                representatives=tuple(sorted(reps)),
                order=order)
        return self._disc


def validate_gram(matrix) -> EvenLattice:
    """Build an EvenLattice, raising NotSymmetric / NotEven /
    NotPositiveDefinite with the first offending index."""
    return EvenLattice(matrix)


def direct_sum(k1: EvenLattice, k2: EvenLattice) -> EvenLattice:
    """Orthogonal direct sum: block-diagonal Gram matrix."""
    n1, n2 = k1.rank, k2.rank
    gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = k1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = k2.gram[i][j]
    return EvenLattice(gram)
