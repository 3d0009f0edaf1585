"""Sparse exact Fourier expansions for Jacobi forms of lattice index.

A series is a finite sum  sum c(n, l) q^n zeta^l  with rational q-exponents n,
elliptic labels l stored as vectors in lattice-basis coordinates, and integer
coefficients. zeta^l abbreviates e(<l, z>), so pairing values rather than raw
coordinates play the role of classical elliptic exponents; on the rank-1
lattice with Gram matrix [[8]] the classical zeta = e(z) is the label l = 1/8
and the half-integral powers of the odd theta function live on l in (1/16)Z.

Two classes of series are tracked. "raw" building blocks (theta functions)
may use fractional q-exponents and half-lattice labels; "weak_jacobi" series
promise integer q-exponents, labels in the dual lattice and the elliptic
shift invariance, which theta_decompose verifies before trusting it.

Every series carries a truncation bound prec: coefficients are stored, and
trusted, exactly for q-exponents strictly below prec. Binary operations
return the minimum of the input precisions (adjusted downward when a factor
has negative exponents). Comparison looks only at the common window.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    DimensionMismatch,
    FormClassError,
    IncompatiblePrecision,
    NotInDualLattice,
    PrecisionTooSmall,
    ResourceLimit,
    ShiftInvarianceViolated,
)
from .lattice import EvenLattice, Vector, direct_sum, to_vector

RAW = "raw"
WEAK_JACOBI = "weak_jacobi"

_THETA_LATTICE_GRAM = ((8,),)


def _lcm(a, b):
    return a * b // gcd(a, b)


class JacobiSeries:
    """Truncated Fourier expansion sum c(n, l) q^n zeta^l with exact data."""

    __slots__ = ("lattice", "weight", "prec", "q_den", "form_class", "coeffs")

    def __init__(self, lattice, weight, prec, coeffs, q_den=None, form_class=RAW):
        if form_class not in (RAW, WEAK_JACOBI):
            raise FormClassError(f"unknown form class {form_class!r}")
        self.lattice = lattice
        self.weight = Fraction(weight)
        if self.weight.denominator > 2:
            raise ValueError(f"weight {self.weight} does not have denominator <= 2")
        self.prec = Fraction(prec)
        clean = {}
        den = 1
        for (n, l), c in coeffs.items():
            c = int(c)
            if c == 0:
                continue
            n = Fraction(n)
            if n >= self.prec:
                continue
            l = to_vector(l)
            if len(l) != lattice.rank:
                raise DimensionMismatch(
                    f"label {l} has length {len(l)}, lattice rank is {lattice.rank}")
            den = _lcm(den, n.denominator)
            clean[(n, l)] = c
        if q_den is None:
            q_den = den
        else:
            q_den = int(q_den)
            if q_den < 1:
                raise ValueError(f"q_den must be a positive integer, got {q_den}")
            if any((n * q_den).denominator != 1 for (n, _) in clean):
                raise ValueError(f"a q-exponent does not lie in (1/{q_den})Z")
        self.q_den = q_den
        self.form_class = form_class
        self.coeffs = clean

    # -- inspection --------------------------------------------------------

    @property
    def min_exp(self) -> Fraction:
        """Smallest stored q-exponent (0 for the zero series)."""
        return min((n for (n, _) in self.coeffs), default=Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, n, l) -> int:
        """Stored coefficient; exponents below prec that are absent are 0."""
        return self.coeffs.get((Fraction(n), to_vector(l)), 0)

    def q_row(self, n) -> dict[Vector, int]:
        """All labels at the given q-exponent. Raises if n is outside the
        stored window."""
        n = Fraction(n)
        if n >= self.prec:
            raise PrecisionTooSmall(
                f"q-exponent {n} is not below the stored precision {self.prec}")
        return {l: c for (m, l), c in self.coeffs.items() if m == n}

    def support(self):
        """Stored terms in canonical (n, lex l) order."""
        return sorted(self.coeffs.items(), key=lambda item: item[0])

    def __repr__(self):
        return (f"JacobiSeries(weight={self.weight}, rank={self.lattice.rank}, "
                f"terms={len(self.coeffs)}, prec={self.prec}, {self.form_class})")

    def __eq__(self, other):
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        if self.lattice != other.lattice or self.weight != other.weight:
            return False
        window = min(self.prec, other.prec)
        mine = {k: c for k, c in self.coeffs.items() if k[0] < window}
        theirs = {k: c for k, c in other.coeffs.items() if k[0] < window}
        return mine == theirs

    __hash__ = None

    # -- ring operations ----------------------------------------------------

    def _require_same_lattice(self, other):
        if self.lattice != other.lattice:
            raise DimensionMismatch("series live on different lattices")

    def __add__(self, other):
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        self._require_same_lattice(other)
        if self.weight != other.weight:
            raise ValueError("cannot add series of different weights")
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        cls = WEAK_JACOBI if self.form_class == other.form_class == WEAK_JACOBI else RAW
        return JacobiSeries(self.lattice, self.weight, min(self.prec, other.prec),
                            out, q_den=_lcm(self.q_den, other.q_den), form_class=cls)

    def __neg__(self):
        return JacobiSeries(self.lattice, self.weight, self.prec,
                            {k: -c for k, c in self.coeffs.items()},
                            q_den=self.q_den, form_class=self.form_class)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return JacobiSeries(self.lattice, self.weight, self.prec,
                                {k: other * c for k, c in self.coeffs.items()},
                                q_den=self.q_den, form_class=self.form_class)
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        self._require_same_lattice(other)
        prec = min(self.prec + min(other.min_exp, 0),
                   other.prec + min(self.min_exp, 0))
        out = {}
        for (a, l1), c1 in self.coeffs.items():
            for (b, l2), c2 in other.coeffs.items():
                n = a + b
                if n >= prec:
                    continue
                key = (n, tuple(x + y for x, y in zip(l1, l2)))
                out[key] = out.get(key, 0) + c1 * c2
        cls = WEAK_JACOBI if self.form_class == other.form_class == WEAK_JACOBI else RAW
        return JacobiSeries(self.lattice, self.weight + other.weight, prec, out,
                            q_den=_lcm(self.q_den, other.q_den), form_class=cls)

    __rmul__ = __mul__

    def truncate(self, prec) -> "JacobiSeries":
        prec = Fraction(prec)
        if prec > self.prec:
            raise PrecisionTooSmall(
                f"cannot extend precision {self.prec} to {prec} by truncation")
        return JacobiSeries(self.lattice, self.weight, prec, self.coeffs,
                            q_den=self.q_den, form_class=self.form_class)


# -- theta building blocks ---------------------------------------------------


def theta_lattice() -> EvenLattice:
    """The rank-1 lattice with Gram matrix [[8]] that the scalar theta
    quotient machinery lives on."""
    return EvenLattice([row[:] for row in map(list, _THETA_LATTICE_GRAM)])


def theta_sum(prec) -> JacobiSeries:
    """Odd Jacobi theta function as a character sum: the term for odd n sits
    at q^(n^2/8) with label n/16 and coefficient +1 for n = 1 mod 4, -1 for
    n = 3 mod 4."""
    prec = Fraction(prec)
    coeffs = {}
    n = 1
    while Fraction(n * n, 8) < prec:
        for s in (n, -n):
            coeffs[(Fraction(s * s, 8), (Fraction(s, 16),))] = 1 if s % 4 == 1 else -1
        n += 2
    return JacobiSeries(theta_lattice(), Fraction(1, 2), prec, coeffs,
                        q_den=8, form_class=RAW)


def theta_triple_product(prec) -> JacobiSeries:
    """The same theta function computed from its infinite-product form
    q^(1/8) (zeta^(1/2) - zeta^(-1/2)) prod (1-q^n zeta)(1-q^n zeta^-1)(1-q^n).

    Only factors with n + 1/8 < prec can touch the stored window, so the
    product is finite and the truncation exact.
    """
    prec = Fraction(prec)
    lat = theta_lattice()
    acc = JacobiSeries(lat, Fraction(1, 2), prec,
                       {(Fraction(1, 8), (Fraction(1, 16),)): 1,
                        (Fraction(1, 8), (Fraction(-1, 16),)): -1},
                       q_den=8, form_class=RAW)
    zero = (Fraction(0),)
    n = 1
    while n + Fraction(1, 8) < prec:
        for label in (Fraction(1, 8), Fraction(-1, 8), Fraction(0)):
            factor = JacobiSeries(lat, 0, prec,
                                  {(Fraction(0), zero): 1, (Fraction(n), (label,)): -1},
                                  q_den=1, form_class=RAW)
            acc = acc * factor
        n += 1
    return acc


def rescale_elliptic(phi: JacobiSeries, a: int) -> JacobiSeries:
    """Substitute z -> a*z: every label l becomes a*l, q-exponents unchanged."""
    a = int(a)
    if a < 1:
        raise ValueError("rescaling factor must be a positive integer")
    if a == 1:
        return phi
    coeffs = {(n, tuple(a * x for x in l)): c for (n, l), c in phi.coeffs.items()}
    return JacobiSeries(phi.lattice, phi.weight, phi.prec, coeffs,
                        q_den=phi.q_den, form_class=phi.form_class)


def phi04(prec) -> JacobiSeries:
    """The weight-0 weak Jacobi form on the [[8]] lattice whose q^0 part is
    zeta + 1 + zeta^-1, built as a theta quotient without any series
    division.

    The two theta prefactors cancel to the exact three-term Laurent
    polynomial (zeta^(3/2) - zeta^(-3/2)) / (zeta^(1/2) - zeta^(-1/2))
    = zeta + 1 + zeta^-1, the (1 - q^n) factors cancel completely, and each
    remaining factor (1 - q^n zeta^(+-1))^-1 is 1 + O(q^n), so its geometric
    expansion truncates exactly. The defining identity
    phi04 * theta(z) = theta(3z) is re-checked on every call.
    """
    prec = Fraction(prec)
    if prec < 1:
        raise PrecisionTooSmall(f"phi04 needs precision >= 1, got {prec}")
    lat = theta_lattice()
    zero = (Fraction(0),)
    acc = JacobiSeries(lat, 0, prec,
                       {(Fraction(0), (Fraction(1, 8),)): 1,
                        (Fraction(0), zero): 1,
                        (Fraction(0), (Fraction(-1, 8),)): 1},
                       q_den=1, form_class=RAW)
    n = 1
    while n < prec:
        # (1 - q^n zeta^3)(1 - q^n zeta^-3), already multiplied out
        numer = {(Fraction(0), zero): 1,
                 (Fraction(n), (Fraction(3, 8),)): -1,
                 (Fraction(n), (Fraction(-3, 8),)): -1,
                 (Fraction(2 * n), zero): 1}
        acc = acc * JacobiSeries(lat, 0, prec, numer, form_class=RAW)
        for sign in (1, -1):
            geom = {(Fraction(k * n), (Fraction(sign * k, 8),)): 1
                    for k in range(0, int(-(-prec // n)) + 1) if k * n < prec}
            acc = acc * JacobiSeries(lat, 0, prec, geom, form_class=RAW)
        n += 1
    result = JacobiSeries(lat, 0, prec, acc.coeffs, q_den=1, form_class=WEAK_JACOBI)
    theta = theta_sum(prec)
    if result * theta != rescale_elliptic(theta, 3):
        raise ArithmeticError("theta quotient failed its defining identity")
    return result


# -- products over several lattice factors ------------------------------------


def direct_product(phi1: JacobiSeries, phi2: JacobiSeries,
                   max_terms: int | None = None) -> JacobiSeries:
    """Series on the direct sum of the two index lattices with
    c(n, (l1, l2)) = sum over a + b = n of c1(a, l1) * c2(b, l2)."""
    for phi in (phi1, phi2):
        if phi.q_den != 1:
            raise FormClassError("direct products need integer q-exponents")
    prec = min(phi1.prec + min(phi2.min_exp, 0), phi2.prec + min(phi1.min_exp, 0))
    if prec <= 0:
        raise IncompatiblePrecision(
            f"truncations {phi1.prec} and {phi2.prec} leave no usable window")
    out = {}
    for (a, l1), c1 in phi1.coeffs.items():
        for (b, l2), c2 in phi2.coeffs.items():
            n = a + b
            if n >= prec:
                continue
            key = (n, l1 + l2)
            out[key] = out.get(key, 0) + c1 * c2
            if max_terms is not None and len(out) > max_terms:
                raise ResourceLimit(
                    f"direct product exceeded the {max_terms}-coefficient budget")
    cls = WEAK_JACOBI if phi1.form_class == phi2.form_class == WEAK_JACOBI else RAW
    return JacobiSeries(direct_sum(phi1.lattice, phi2.lattice),
                        phi1.weight + phi2.weight, prec, out, q_den=1, form_class=cls)


DEFAULT_BUDGET = 10_000_000


def phi_n(n: int, prec, budget: int = DEFAULT_BUDGET) -> JacobiSeries:
    """n-fold direct product of phi04 with itself, a weight-0 weak Jacobi
    form on the lattice with Gram matrix diag(8, ..., 8)."""
    n = int(n)
    if n < 1:
        raise ValueError("the number of factors must be a positive integer")
    base = phi04(prec)
    acc = base
    for _ in range(n - 1):
        acc = direct_product(acc, base, max_terms=budget)
    if len(acc.coeffs) > budget:
        raise ResourceLimit(f"series exceeded the {budget}-coefficient budget")
    return acc


# -- theta components and the decomposition ----------------------------------


def theta_component(lattice: EvenLattice, gamma, prec) -> JacobiSeries:
    """Coset theta series: one term q^Q(l) zeta^l for every l in gamma + Z^rank
    with Q(l) < prec."""
    gamma = to_vector(gamma)
    if not lattice.is_dual_vector(gamma):
        raise NotInDualLattice(f"{gamma} does not pair integrally with the lattice")
    prec = Fraction(prec)
    coeffs = {}
    for l in lattice.enumerate_coset(gamma, prec):
        q = lattice.quadratic_value(l)
        if q < prec:
            coeffs[(q, l)] = 1
    return JacobiSeries(lattice, Fraction(lattice.rank, 2), prec, coeffs,
                        form_class=RAW)


class VectorValuedForm:
    """Components f_gamma of the theta decomposition, one sparse q-series per
    coset of the discriminant group.

    components maps each reduced representative to {exponent: coefficient};
    precisions records how far each component is determined. Exponents of
    f_gamma lie in -Q(gamma) + Z.
    """

    def __init__(self, lattice, weight, components, precisions):
        self.lattice = lattice
        self.weight = Fraction(weight)
        self.components = components
        self.precisions = precisions

    def component(self, gamma) -> dict[Fraction, int]:
        return self.components[self.lattice.reduce_mod1(gamma)]

    def precision(self, gamma) -> Fraction:
        return self.precisions[self.lattice.reduce_mod1(gamma)]

    def __repr__(self):
        nonzero = sum(1 for c in self.components.values() if c)
        return (f"VectorValuedForm(weight={self.weight}, components="
                f"{len(self.components)}, nonzero={nonzero})")

    def __eq__(self, other):
        if not isinstance(other, VectorValuedForm):
            return NotImplemented
        return (self.lattice == other.lattice and self.weight == other.weight
                and self.components == other.components
                and self.precisions == other.precisions)

    __hash__ = None


def theta_decompose(phi: JacobiSeries) -> VectorValuedForm:
    """Split a weight-0 weak Jacobi form as sum f_gamma * Theta_gamma.

    The coefficient of f_gamma at exponent e is c(e + Q(l), l) for any l in
    the coset; the function checks that every stored witness of a class
    agrees and that no witness inside the window is silently missing, and
    raises ShiftInvarianceViolated otherwise. Component gamma is determined
    for exponents below prec - min Q on its coset.
    """
    if phi.form_class != WEAK_JACOBI:
        raise FormClassError("theta decomposition expects a weak_jacobi series")
    if phi.weight != 0:
        raise FormClassError(f"theta decomposition expects weight 0, got {phi.weight}")
    if phi.q_den != 1:
        raise FormClassError("theta decomposition expects integer q-exponents")
    lat = phi.lattice
    disc = lat.discriminant_group()
    groups: dict[tuple[Vector, Fraction], tuple[int, int]] = {}
    for (n, l), c in phi.coeffs.items():
        if not lat.is_dual_vector(l):
            raise NotInDualLattice(f"label {l} is not in the dual lattice")
        key = (lat.reduce_mod1(l), n - lat.quadratic_value(l))
        value, count = groups.get(key, (c, 0))
        if value != c:
            raise ShiftInvarianceViolated(
                f"coefficients at class gamma={key[0]}, exponent {key[1]} "
                f"disagree: {value} vs {c}")
        groups[key] = (c, count + 1)
    by_gamma: dict[Vector, list[tuple[Fraction, int, int]]] = {}
    for (gamma, e), (value, count) in groups.items():
        by_gamma.setdefault(gamma, []).append((e, value, count))
    components = {g: {} for g in disc.representatives}
    for gamma, entries in by_gamma.items():
        max_bound = phi.prec - min(e for e, _, _ in entries)
        norms = [lat.quadratic_value(l) for l in lat.enumerate_coset(gamma, max_bound)]
        for e, value, count in entries:
            expected = sum(1 for q in norms if e + q < phi.prec)
            if expected != count:
                raise ShiftInvarianceViolated(
                    f"class gamma={gamma}, exponent {e} has {count} stored "
                    f"witnesses but {expected} lattice translates in the window")
            components[gamma][e] = value
    minima = lat.coset_minima()
    precisions = {g: phi.prec - minima[g] for g in disc.representatives}
    return VectorValuedForm(lat, Fraction(-lat.rank, 2), components, precisions)


def recompose(form: VectorValuedForm, prec) -> JacobiSeries:
    """Expand sum f_gamma * Theta_gamma back into a Jacobi series.

    The output window is capped at the precision the components support:
    min over gamma of precision(gamma) + min Q on the coset.
    """
    lat = form.lattice
    minima = lat.coset_minima()
    out_prec = Fraction(prec)
    for gamma, p in form.precisions.items():
        out_prec = min(out_prec, p + minima[lat.reduce_mod1(gamma)])
    coeffs: dict[tuple[Fraction, Vector], int] = {}
    for gamma, fg in form.components.items():
        if not fg:
            continue
        bound = out_prec - min(fg)
        pairs = [(l, lat.quadratic_value(l)) for l in lat.enumerate_coset(gamma, bound)]
        for e, c in fg.items():
            if c == 0:
                continue
            for l, q in pairs:
                n = e + q
                if n < out_prec:
                    coeffs[(n, l)] = coeffs.get((n, l), 0) + c
    weight = form.weight + Fraction(lat.rank, 2)
    series = JacobiSeries(lat, weight, out_prec, coeffs, form_class=RAW)
    if series.q_den == 1 and weight.denominator == 1:
        series = JacobiSeries(lat, weight, out_prec, coeffs, q_den=1,
                              form_class=WEAK_JACOBI)
    return series
