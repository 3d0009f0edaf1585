"""Multiplicative lift data derived from a weight-0 input form: principal
parts, lift and singular weights, the mod-24 congruence, the inner-product
divisibility criterion, Weyl vectors, and truncated product expansions.

The product attached to an input with coefficients c(n, l) is

    q^A r^B s^C  prod_{(n, l, m) > 0} (1 - q^n r^l s^m)^{c(nm, l)} ,

where the positivity condition is fixed by a generic chamber vector w0:
(n, l, m) > 0 means m > 0, or m = 0 and n > 0, or n = m = 0 and <l, w0> < 0.
Expansions are formal and truncated by total degree n + m; whether the lift
is holomorphic is not decided here, and expansions carry the disclaimer
field holomorphic = "unknown".

The Weyl vector formula implemented by weyl_vector,

    A = (1/24) sum_l c(0, l)
    B = (1/2)  sum_{<l, w0> > 0} c(0, l) l
    C = (1/(2 rank)) sum_l c(0, l) <l, l> ,

is pinned by a classical rank-1 sanity value in the test suite (the input
with q^0 part 10 + zeta + zeta^-1 must give A = C = 1/2 and B pairing 1/2)
before anything else relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    CongruenceFailed,
    FormClassError,
    InsufficientInputPrecision,
    NonGenericChamber,
    PrecisionTooSmall,
    UnboundedExpansion,
)
from .lattice import EvenLattice, Vector, to_vector
from .series import WEAK_JACOBI, JacobiSeries, VectorValuedForm


# -- principal parts ----------------------------------------------------------


@dataclass
class PrincipalPart:
    """Negative-exponent tail of a vector-valued form plus its c(0,0).

    terms maps (reduced coset representative, negative exponent) to the
    integer coefficient.
    """

    lattice: EvenLattice
    constant_term: int
    terms: dict[tuple[Vector, Fraction], int]

    def __post_init__(self):
        for (gamma, e), c in self.terms.items():
            if e >= 0:
                raise ValueError(f"principal part exponent {e} at {gamma} is not negative")


def principal_part(form: VectorValuedForm) -> PrincipalPart:
    """Extract all (gamma, exponent < 0) coefficients and the constant term
    of the zero component."""
    lat = form.lattice
    zero = (Fraction(0),) * lat.rank
    if form.precisions.get(zero, Fraction(0)) <= 0:
        raise PrecisionTooSmall("the zero component does not reach exponent 0")
    constant = form.components.get(zero, {}).get(Fraction(0), 0)
    terms = {}
    for gamma, fg in form.components.items():
        for e, c in fg.items():
            if e < 0 and c:
                terms[(gamma, e)] = c
    return PrincipalPart(lat, constant, terms)


def lift_weight(pp: PrincipalPart) -> Fraction:
    """Weight of the product attached to this input: c(0,0) / 2."""
    return Fraction(pp.constant_term, 2)


def is_half_integral(pp: PrincipalPart) -> bool:
    return pp.constant_term % 2 != 0


def singular_weight(lattice: EvenLattice) -> Fraction:
    """The singular weight rank/2 for the ambient signature
    (rank + 2, 2) quadratic space."""
    return Fraction(lattice.rank, 2)


def is_singular_weight(pp: PrincipalPart) -> bool:
    return lift_weight(pp) == singular_weight(pp.lattice)


# -- arithmetic obstructions ------------------------------------------------------


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of the mod-24 check N * sum_l c(0, l) = 0 (mod 24), where N
    is the gcd of all inner products of the index lattice."""

    gcd_inner_products: int
    q0_sum: int
    residue: int
    passes: bool


def congruence_check(phi: JacobiSeries) -> CongruenceReport:
    if phi.form_class != WEAK_JACOBI or phi.weight != 0:
        raise FormClassError("the congruence check expects a weight-0 weak Jacobi form")
    if phi.prec <= 0:
        raise PrecisionTooSmall("the q^0 row is outside the stored window")
    n = phi.lattice.gcd_inner_products()
    total = sum(phi.q_row(0).values())
    residue = (n * total) % 24
    return CongruenceReport(n, total, residue, residue == 0)


def admits_half_integral_weight(lattice: EvenLattice) -> bool:
    """Divisibility criterion: every inner product of lattice vectors is a
    multiple of 8. Exactly these index lattices carry holomorphic products
    of half-integral weight."""
    return lattice.gcd_inner_products() % 8 == 0


# -- Weyl data -----------------------------------------------------------------


@dataclass(frozen=True)
class WeylData:
    """Prefactor exponents (A, B, C) of q^A r^B s^C together with the
    chamber vector that fixed the positivity condition."""

    a: Fraction
    b: Vector
    c: Fraction
    chamber_vector: Vector


def default_chamber_vector(rank: int) -> Vector:
    """(1, 1/10, 1/100, ...): generic for every q^0 support met in practice;
    genericity is still checked, never assumed."""
    return tuple(Fraction(1, 10 ** i) for i in range(rank))


def weyl_vector(phi: JacobiSeries, w0=None) -> WeylData:
    """Evaluate the Weyl vector formula on the q^0 row of phi for the chamber
    containing w0. Raises NonGenericChamber when some supported label pairs
    to zero with w0."""
    if phi.form_class != WEAK_JACOBI or phi.weight != 0:
        raise FormClassError("Weyl data expects a weight-0 weak Jacobi form")
    if phi.prec <= 0:
        raise PrecisionTooSmall("the q^0 row is outside the stored window")
    lat = phi.lattice
    w0 = default_chamber_vector(lat.rank) if w0 is None else to_vector(w0)
    row = phi.q_row(0)
    zero = (Fraction(0),) * lat.rank
    a = Fraction(0)
    b = [Fraction(0)] * lat.rank
    c = Fraction(0)
    for l, coef in row.items():
        pairing = lat.bilinear_value(l, w0)
        if pairing == 0 and l != zero:
            raise NonGenericChamber(
                f"chamber vector {w0} pairs to zero with supported label {l}")
        a += coef
        c += coef * lat.bilinear_value(l, l)
        if pairing > 0:
            for i in range(lat.rank):
                b[i] += Fraction(coef) * l[i]
    return WeylData(a / 24, tuple(x / 2 for x in b), c / (2 * lat.rank), w0)


# -- truncated product expansion ---------------------------------------------------


@dataclass
class OrthogonalExpansion:
    """Truncated coefficients of the product expansion, graded by n + m.

    coeffs maps monomials (n, l, m) with integer n, m >= 0 to integer
    coefficients of the product itself; the Weyl prefactor q^A r^B s^C is
    carried separately in weyl. Holomorphy of the underlying lift is not
    decided by this package.
    """

    lattice: EvenLattice
    weyl: WeylData
    weight: Fraction
    coeffs: dict[tuple[int, Vector, int], int]
    total_prec: Fraction
    holomorphic: str = field(default="unknown")


def _factor_powers(c: int, grade: int, total_prec: Fraction):
    """Exponents and coefficients of (1 - X)^c as a list of (k, coef) with
    k * grade < total_prec; grade-0 factors must have c >= 0 and expand to the
    full binomial polynomial."""
    if grade == 0:
        if c < 0:
            raise UnboundedExpansion(
                "a factor of degree zero in q and s has negative exponent")
        return [(k, (-1) ** k * comb(c, k)) for k in range(c + 1)]
    terms = []
    k = 0
    while Fraction(k * grade) < total_prec and (c < 0 or k <= c):
        if c >= 0:
            terms.append((k, (-1) ** k * comb(c, k)))
        else:
            terms.append((k, comb(k - c - 1, k)))
        k += 1
    return terms


def _positive_indices(total_prec: Fraction):
    """Integer pairs (n, m) != (0, 0) with n, m >= 0 and n + m < total_prec."""
    top = int(total_prec) if total_prec == int(total_prec) else int(total_prec) + 1
    for m in range(0, top):
        for n in range(0, top - m):
            if (n, m) != (0, 0) and Fraction(n + m) < total_prec:
                yield n, m


def _expansion_preamble(phi: JacobiSeries, total_prec, w0):
    total_prec = Fraction(total_prec)
    if total_prec <= 0:
        raise ValueError("total_prec must be positive")
    if phi.prec < total_prec * total_prec / 4:
        raise InsufficientInputPrecision(
            f"input precision {phi.prec} is below the required bound "
            f"{total_prec * total_prec / 4} for total_prec {total_prec}")
    report = congruence_check(phi)
    if not report.passes:
        raise CongruenceFailed(
            f"{report.gcd_inner_products} * {report.q0_sum} = "
            f"{report.residue} (mod 24), expected 0")
    weyl = weyl_vector(phi, w0)  # raises NonGenericChamber if w0 is bad
    return total_prec, weyl


def _zero_grade_factors(phi: JacobiSeries, weyl: WeylData):
    lat = phi.lattice
    for l, c in sorted(phi.q_row(0).items()):
        if lat.bilinear_value(l, weyl.chamber_vector) < 0:
            yield l, c


def lift_expansion(phi: JacobiSeries, total_prec, w0=None) -> OrthogonalExpansion:
    """Expand the product over all factor indices with n + m < total_prec,
    reading the exponent of the (n, l, m) factor from c(nm, l).

    Negative exponents are expanded through geometric series; every factor
    with n + m > 0 is 1 + higher order, so the truncation by total degree is
    exact and all output coefficients are integers by construction.
    """
    total_prec, weyl = _expansion_preamble(phi, total_prec, w0)
    lat = phi.lattice
    zero = (Fraction(0),) * lat.rank
    acc: dict[tuple[int, Vector, int], int] = {(0, zero, 0): 1}

    def multiply(n, l, m, c):
        nonlocal acc
        grade = n + m
        powers = _factor_powers(c, grade, total_prec)
        out: dict[tuple[int, Vector, int], int] = {}
        for (an, al, am), v in acc.items():
            for k, w in powers:
                if w == 0:
                    continue
                bn, bm = an + k * n, am + k * m
                if Fraction(bn + bm) >= total_prec:
                    continue
                key = (bn, tuple(x + k * y for x, y in zip(al, l)), bm)
                new = out.get(key, 0) + v * w
                if new:
                    out[key] = new
                elif key in out:
                    del out[key]
        acc = out

    for l, c in _zero_grade_factors(phi, weyl):
        multiply(0, l, 0, c)
    for n, m in _positive_indices(total_prec):
        for l, c in phi.q_row(Fraction(n * m)).items():
            multiply(n, l, m, c)
    if acc.get((0, zero, 0)) != 1:
        raise ArithmeticError("constant coefficient of the product is not 1")
    weight = Fraction(phi.q_row(0).get(zero, 0), 2)
    return OrthogonalExpansion(lat, weyl, weight, acc, total_prec)


def lift_expansion_log_exp(phi: JacobiSeries, total_prec, w0=None) -> OrthogonalExpansion:
    """Second route to the same expansion: exponentiate
    - sum_{(n,l,m)>0, n+m>0} c(nm, l) sum_k (1/k) q^{kn} r^{kl} s^{km}
    grade by grade over exact rationals, then multiply in the finitely many
    degree-zero binomial factors. The result must come out integral."""
    total_prec, weyl = _expansion_preamble(phi, total_prec, w0)
    lat = phi.lattice
    zero = (Fraction(0),) * lat.rank
    top = int(total_prec) if total_prec == int(total_prec) else int(total_prec) + 1

    log_by_grade: dict[int, dict[tuple[int, Vector, int], Fraction]] = {}
    for n, m in _positive_indices(total_prec):
        row = phi.q_row(Fraction(n * m))
        grade = n + m
        k = 1
        while Fraction(k * grade) < total_prec:
            bucket = log_by_grade.setdefault(k * grade, {})
            for l, c in row.items():
                key = (k * n, tuple(k * x for x in l), k * m)
                bucket[key] = bucket.get(key, Fraction(0)) - Fraction(c, k)
            k += 1

    exp_by_grade: dict[int, dict[tuple[int, Vector, int], Fraction]] = {
        0: {(0, zero, 0): Fraction(1)}}
    for g in range(1, top):
        if Fraction(g) >= total_prec:
            break
        bucket: dict[tuple[int, Vector, int], Fraction] = {}
        for h in range(1, g + 1):
            for (sn, sl, sm), sv in log_by_grade.get(h, {}).items():
                weighted = h * sv
                for (en, el, em), ev in exp_by_grade[g - h].items():
                    key = (sn + en, tuple(x + y for x, y in zip(sl, el)), sm + em)
                    bucket[key] = bucket.get(key, Fraction(0)) + weighted * ev
        exp_by_grade[g] = {k: v / g for k, v in bucket.items() if v}

    series: dict[tuple[int, Vector, int], Fraction] = {}
    for bucket in exp_by_grade.values():
        series.update(bucket)

    for l, c in _zero_grade_factors(phi, weyl):
        powers = _factor_powers(c, 0, total_prec)
        out: dict[tuple[int, Vector, int], Fraction] = {}
        for (an, al, am), v in series.items():
            for k, w in powers:
                if w == 0:
                    continue
                key = (an, tuple(x + k * y for x, y in zip(al, l)), am)
                new = out.get(key, Fraction(0)) + v * w
                if new:
                    out[key] = new
                elif key in out:
                    del out[key]
        series = out

    coeffs: dict[tuple[int, Vector, int], int] = {}
    for key, v in series.items():
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {v} at {key}")
        coeffs[key] = int(v)
    weight = Fraction(phi.q_row(0).get(zero, 0), 2)
    return OrthogonalExpansion(lat, weyl, weight, coeffs, total_prec)


# -- diagnostics for principal parts -------------------------------------------------


@dataclass
class PrincipalPartReport:
    """Per-check outcome of validate_principal_part; offender lists hold the
    (gamma, exponent) keys that failed."""

    exponent_class_ok: bool
    exponent_class_offenders: list
    symmetry_ok: bool
    symmetry_offenders: list
    weight_ok: bool
    weight: Fraction
    half_integral: bool
    singular_weight: Fraction
    is_singular: bool

    @property
    def passed(self) -> bool:
        return self.exponent_class_ok and self.symmetry_ok and self.weight_ok


def validate_principal_part(pp: PrincipalPart, claimed_weight=None) -> PrincipalPartReport:
    """Diagnostics, not exceptions: (1) every exponent is congruent to
    -Q(gamma) mod 1; (2) coefficients are symmetric under gamma -> -gamma;
    (3) the constant term matches the claimed weight (skipped when no weight
    is claimed); plus the resulting lift weight and singular weight."""
    lat = pp.lattice
    class_offenders = []
    symmetry_offenders = []
    for (gamma, e), c in sorted(pp.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if (e + lat.quadratic_value(gamma)).denominator != 1:
            class_offenders.append((gamma, e))
        partner = lat.reduce_mod1(tuple(-x for x in gamma))
        if pp.terms.get((partner, e), 0) != c:
            symmetry_offenders.append((gamma, e))
    weight = lift_weight(pp)
    weight_ok = True
    if claimed_weight is not None:
        weight_ok = Fraction(claimed_weight) == weight
    return PrincipalPartReport(
        exponent_class_ok=not class_offenders,
        exponent_class_offenders=class_offenders,
        symmetry_ok=not symmetry_offenders,
        symmetry_offenders=symmetry_offenders,
        weight_ok=weight_ok,
        weight=weight,
        half_integral=is_half_integral(pp),
        singular_weight=singular_weight(lat),
        is_singular=is_singular_weight(pp),
    )
