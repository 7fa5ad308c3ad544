"""Galois groups of real abelian fields, their characters, and group-ring
elements with rational or p-adic coefficients.

This module supplies the algebra every verification routine combines:

* `GaloisGroup` presents Gal(k/Q) on cosets of the defining subgroup,
  with multiplication/inversion tables and subgroup utilities.
* `characters` enumerates the character group with conductors and kernels.
* `GroupRingElement` is a dense group-ring element whose coefficients may be
  ints, Fractions, or `PadicElement`s from one ring (duck-typed; all
  arithmetic is coefficientwise plus convolution).
* `ramification` packages the Frobenius coset and inertia subgroup at a
  rational prime, with the averaged idempotent-style factors built from them.
* `galois_log` is the logarithm map x -> sum_g log_p(x^g) g^{-1}; the
  quadratic-field convenience wrapper fixes the embedding of sqrt(D).
* `lseries_derivative` evaluates the derivative at zero of the p-adic
  L-series of a nontrivial even character by its finite cyclotomic sum, and
  `lseries_derivative_element` assembles the group-ring element carrying one
  such value on each nontrivial character component.
* `norm_log_factor` / `euler_twist` / `unit_log_factor` build the rational
  group-ring coefficients that express logarithms of the modified cyclotomic
  numbers at composite levels through the L-value element.
* `residue_euler_element` carries the Euler-type factors (ell - chi(ell))
  of the residue modules, and `ray_annihilator` combines everything into the
  annihilator element used by the index and structure checks.

Conventions: group element 0 is the identity; a character's value at a prime
is zero unless inertia lies in its kernel; scalars multiply group-ring
elements from either side, but p-adic scalars must be written on the right
(``x * scalar``) because `PadicElement` does not defer to unknown operands.
"""

import itertools
import math
from fractions import Fraction

from .cyclo import units_mod
from .nt import (
    crt,
    divisors,
    euler_phi,
    factorize,
    moebius,
    prime_factors,
    primitive_root,
    valuation,
)
from .padics import PadicElement

__all__ = [
    "GaloisGroup",
    "Character",
    "characters",
    "GroupRingElement",
    "one_element",
    "basis_element",
    "embed_group_ring",
    "integer_coefficients",
    "char_idempotent",
    "frobenius_orbits",
    "orbit_idempotent",
    "RamificationData",
    "ramification",
    "galois_log",
    "galois_log_quad",
    "lseries_derivative",
    "lseries_derivative_element",
    "norm_log_factor",
    "euler_twist",
    "unit_log_factor",
    "residue_euler_element",
    "chi_component",
    "ray_annihilator",
    "radical",
]


def radical(n):
    """Product of the distinct primes dividing n (1 for n = 1)."""
    return math.prod(prime_factors(n))


class GaloisGroup:
    """Gal(k/Q) for the real abelian field cut out by a `FieldSpec`.

    Elements are indexed 0..order-1; index i is the coset ``self.cosets[i]``
    of H in (Z/m)^*, and index 0 is the identity.  `mult` and `inv` are the
    multiplication and inversion tables on indices.
    """

    __slots__ = ("spec", "m", "cosets", "order", "exponent", "mult", "inv", "_index")

    def __init__(self, spec):
        self.spec = spec
        self.m = spec.m
        self.cosets = spec.cosets()
        self.order = len(self.cosets)
        self._index = {}
        for i, cs in enumerate(self.cosets):
            for a in cs:
                self._index[a] = i
        assert self._index[1 % self.m] == 0, "identity coset must come first"
        self.mult = [
            [self._index[(ci[0] * cj[0]) % self.m] for cj in self.cosets]
            for ci in self.cosets
        ]
        self.inv = [row.index(0) for row in self.mult]
        exponent = 1
        for i in range(self.order):
            exponent = math.lcm(exponent, self.element_order(i))
        self.exponent = exponent

    def coset_of(self, a):
        """Index of the element that the unit a mod m restricts to."""
        a %= self.m
        assert math.gcd(a, self.m) == 1, "not a unit at this level"
        return self._index[a]

    def element_order(self, i):
        j = i
        k = 1
        while j != 0:
            j = self.mult[j][i]
            k += 1
        return k

    def subfield_fixer(self, n):
        """Indices of the subgroup fixing k intersect Q(zeta_n), sorted."""
        L = math.lcm(self.m, n)
        out = {self.coset_of(a % self.m) for a in units_mod(L) if a % n == 1 % n}
        return tuple(sorted(out))

    def subgroup_sum(self, indices, one=Fraction(1)):
        """Group-ring sum of the given element indices (with multiplicity 1)."""
        zero = one * 0
        coeffs = [zero] * self.order
        for i in indices:
            coeffs[i] = coeffs[i] + one
        return GroupRingElement(self, coeffs)

    def __repr__(self):
        return "GaloisGroup(%r, order=%d)" % (self.spec, self.order)

    def __eq__(self, other):
        return isinstance(other, GaloisGroup) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


def _prime_power_unit_basis(q, e):
    """Generators (residue mod q^e, order) of the unit group of Z/q^e."""
    if q == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(2**e - 1, 2), (5, 2 ** (e - 2))]
    g = primitive_root(q)
    if e > 1 and pow(g, q - 1, q * q) == 1:
        g += q
    return [(g % q**e, (q - 1) * q ** (e - 1))]


def _unit_group_basis(m):
    """Independent generators (residue mod m, order) of (Z/m)^*."""
    assert m >= 1
    basis = []
    for q, e in factorize(m):
        qe = q**e
        rest = m // qe
        for g, n in _prime_power_unit_basis(q, e):
            lifted = crt([g, 1], [qe, rest]) if rest > 1 else g
            basis.append((lifted % m, n))
    return basis


def _unit_dlog_table(m):
    """(basis, table) with table[residue] = exponent tuple over the basis."""
    basis = _unit_group_basis(m)
    table = {}
    for combo in itertools.product(*(range(n) for _, n in basis)):
        r = 1 % m
        for (g, _), j in zip(basis, combo):
            r = r * pow(g, j, m) % m
        assert r not in table, "unit-group basis is not independent"
        table[r] = combo
    assert len(table) == euler_phi(m), "unit-group basis does not span"
    return basis, table


class Character:
    """A character of a `GaloisGroup`, valued in roots of unity.

    `exps[g]` is the exponent e with chi(g) = zeta_W^e, W = group.exponent.
    `conductor` is the smallest level f | m through which chi factors; the
    primitive-level value at an integer a (``prim_exp``) is None exactly when
    gcd(a, f) > 1, which downstream sums treat as the value zero.
    """

    __slots__ = ("group", "exps", "order", "conductor")

    def __init__(self, group, exps):
        W = group.exponent
        self.group = group
        self.exps = tuple(e % W for e in exps)
        assert len(self.exps) == group.order
        order = 1
        for e in self.exps:
            if e:
                order = math.lcm(order, W // math.gcd(W, e))
        self.order = order
        self.conductor = self._conductor()

    def _conductor(self):
        m = self.group.m
        for f in divisors(m):
            if all(
                self.exps[self.group.coset_of(a)] == 0
                for a in units_mod(m)
                if a % f == 1 % f
            ):
                return f
        raise AssertionError("unreachable: every character factors through m")

    @property
    def is_trivial(self):
        return self.order == 1

    def kernel(self):
        """Element indices on which the character is 1."""
        return tuple(i for i, e in enumerate(self.exps) if e == 0)

    def value(self, ring, g):
        """chi(g) as an element of the p-adic ring."""
        e = self.exps[g]
        if e == 0:
            return ring.one()
        return ring.cyclotomic_root(self.group.exponent) ** e

    def conj_value(self, ring, g):
        return self.value(ring, self.group.inv[g])

    def prim_exp(self, a):
        """Exponent of the primitive-level value at the integer a, or None.

        None signals gcd(a, conductor) > 1, where the value is zero by
        convention.  Otherwise the value is zeta_W^(returned exponent).
        """
        f = self.conductor
        if f == 1:
            return 0
        if math.gcd(a % f, f) != 1:
            return None
        residues = []
        moduli = []
        for q, e in factorize(self.group.m):
            qe = q**e
            residues.append(a if f % q == 0 else 1)
            moduli.append(qe)
        b = crt(residues, moduli)
        return self.exps[self.group.coset_of(b)]

    def prime_value(self, ring, ram):
        """Value at a prime: chi(Frobenius) if inertia is in the kernel, else 0."""
        if any(self.exps[i] for i in ram.inertia):
            return ring.zero()
        return self.value(ring, ram.frobenius)

    def power(self, k):
        return Character(self.group, tuple(k * e for e in self.exps))

    def conjugate(self):
        return self.power(-1)

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.group.spec == other.group.spec
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.group.spec, self.exps))

    def __repr__(self):
        return "Character(order=%d, conductor=%d, exps=%s)" % (
            self.order,
            self.conductor,
            list(self.exps),
        )


def characters(group):
    """All characters of the group, trivial first, in a deterministic order."""
    m = group.m
    W = group.exponent
    basis, table = _unit_dlog_table(m)
    H = group.spec.H

    def angle(a, combo):
        # character angle in Q/Z at the unit a, for the given basis exponents
        js = table[a % m]
        return sum(
            (Fraction(e * j, n) for (_, n), e, j in zip(basis, combo, js)),
            start=Fraction(0),
        )

    seen = set()
    for combo in itertools.product(*(range(n) for _, n in basis)):
        if any(angle(h, combo) % 1 != 0 for h in H):
            continue
        exps = []
        for cs in group.cosets:
            t = (angle(cs[0], combo) % 1) * W
            assert t.denominator == 1, "descended character order exceeds group exponent"
            exps.append(int(t) % W)
        seen.add(tuple(exps))
    assert len(seen) == group.order, "character count must equal the group order"
    return [Character(group, exps) for exps in sorted(seen)]


class GroupRingElement:
    """Dense group-ring element: coefficient tuple indexed by group element.

    Coefficients may be ints, Fractions, or `PadicElement`s of one ring;
    arithmetic only requires them to support +, -, * among themselves.
    Multiplying two elements convolves along the group's multiplication
    table; multiplying by anything that is not a `GroupRingElement` scales
    every coefficient.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        self.group = group
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == group.order

    def coefficient(self, i):
        return self.coeffs[i]

    def __add__(self, other):
        assert self.group == other.group
        return GroupRingElement(
            self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        assert self.group == other.group
        return GroupRingElement(
            self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return GroupRingElement(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            assert self.group == other.group
            mult = self.group.mult
            zero = self.coeffs[0] * 0
            out = [zero] * self.group.order
            for i, a in enumerate(self.coeffs):
                row = mult[i]
                for j, b in enumerate(other.coeffs):
                    out[row[j]] = out[row[j]] + a * b
            return GroupRingElement(self.group, out)
        return GroupRingElement(self.group, tuple(a * other for a in self.coeffs))

    def __rmul__(self, other):
        # only reached for int/Fraction scalars (they defer to us)
        return GroupRingElement(self.group, tuple(other * a for a in self.coeffs))

    def __pow__(self, k):
        assert k >= 0
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            raise ValueError("use one_element for the empty power")
        return result

    def apply(self, g):
        """Right-translate by group element g: x -> x * g."""
        out = [None] * self.group.order
        for i, a in enumerate(self.coeffs):
            out[self.group.mult[i][g]] = a
        return GroupRingElement(self.group, out)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.group == other.group
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        return "GroupRingElement(%s)" % (list(self.coeffs),)


def one_element(group, one=Fraction(1)):
    """The identity of the group ring, with the given coefficient `one`."""
    zero = one * 0
    return GroupRingElement(
        group, tuple(one if i == 0 else zero for i in range(group.order))
    )


def basis_element(group, g, one=Fraction(1)):
    """The group element g as a group-ring element."""
    zero = one * 0
    return GroupRingElement(
        group, tuple(one if i == g else zero for i in range(group.order))
    )


def embed_group_ring(x, ring):
    """Map int/Fraction coefficients into the p-adic ring, coefficientwise."""
    coeffs = []
    for c in x.coeffs:
        if isinstance(c, PadicElement):
            coeffs.append(c)
        else:
            coeffs.append(ring.from_fraction(Fraction(c)))
    return GroupRingElement(x.group, coeffs)


def integer_coefficients(theta):
    """Integer lifts of all coefficients (exact ints for rational input)."""
    out = []
    for c in theta.coeffs:
        if isinstance(c, PadicElement):
            out.append(c.lift_int())
        else:
            fr = Fraction(c)
            assert fr.denominator == 1, "coefficient is not integral"
            out.append(int(fr))
    return out


def char_idempotent(chi, ring):
    """e_chi = (1/|G|) sum_g chi(g) g^{-1}, with p-adic coefficients."""
    group = chi.group
    inv_order = ring.from_fraction(Fraction(1, group.order))
    coeffs = [chi.conj_value(ring, g) * inv_order for g in range(group.order)]
    return GroupRingElement(group, coeffs)


def frobenius_orbits(chars, p):
    """Orbits of the nontrivial characters under chi -> chi^p.

    Deterministic: orbits appear in the order their first member appears in
    `chars`, and each orbit is listed starting from that member.
    """
    group = chars[0].group
    W = group.exponent
    assert math.gcd(p, W) == 1, "p must be coprime to the character orders"
    by_exps = {c.exps: c for c in chars}
    seen = set()
    orbits = []
    for c in chars:
        if c.is_trivial or c.exps in seen:
            continue
        orbit = []
        cur = c
        while cur.exps not in seen:
            seen.add(cur.exps)
            orbit.append(cur)
            cur = by_exps[tuple(p * e % W for e in cur.exps)]
        orbits.append(tuple(orbit))
    return orbits


def orbit_idempotent(orbit, ring):
    """Sum of the character idempotents over one Frobenius orbit.

    The result has coefficients fixed by the ring's Frobenius (they are
    integral over Z_p), which is what makes the orbit projector compatible
    with modules that only carry Z_p structure.
    """
    acc = None
    for chi in orbit:
        e = char_idempotent(chi, ring)
        acc = e if acc is None else acc + e
    return acc


class RamificationData:
    """Frobenius coset and inertia subgroup at a rational prime ell.

    `frobenius` is one valid element index (well-defined modulo inertia);
    `inertia` is the sorted tuple of inertia element indices.
    """

    __slots__ = ("group", "ell", "frobenius", "inertia")

    def __init__(self, group, ell, frobenius, inertia):
        self.group = group
        self.ell = ell
        self.frobenius = frobenius
        self.inertia = inertia

    def inertia_size(self):
        return len(self.inertia)

    def inertia_sum(self):
        """Sum of the inertia elements, with Fraction coefficients."""
        return self.group.subgroup_sum(self.inertia)

    def average(self):
        """The idempotent (1/|I|) sum_{tau in I} tau."""
        return self.inertia_sum() * Fraction(1, len(self.inertia))

    def frob_average(self):
        """Frobenius times the inertia average; independent of the chosen lift."""
        return basis_element(self.group, self.frobenius) * self.average()

    def unit_adjusted(self):
        """1 - Frobenius^{-1} times the inertia average."""
        group = self.group
        return one_element(group) - basis_element(
            group, group.inv[self.frobenius]
        ) * self.average()

    def residue_degree_order(self):
        """Multiplicative order of Frobenius in the quotient by inertia.

        Equals the residue degree of the primes over ell in the field.
        """
        group = self.group
        inertia = set(self.inertia)
        k = 1
        g = self.frobenius
        while g not in inertia:
            g = group.mult[g][self.frobenius]
            k += 1
        return k

    def __repr__(self):
        return "RamificationData(ell=%d, frobenius=%d, inertia=%s)" % (
            self.ell,
            self.frobenius,
            list(self.inertia),
        )


def ramification(group, ell):
    """Frobenius and inertia data at the rational prime ell."""
    m = group.m
    v = valuation(m, ell)
    if v == 0:
        return RamificationData(group, ell, group.coset_of(ell), (0,))
    mprime = m // ell**v
    inertia = tuple(
        sorted({group.coset_of(a) for a in units_mod(m) if a % mprime == 1 % mprime})
    )
    if mprime == 1:
        frob = 0
    else:
        frob = group.coset_of(crt([ell % mprime, 1], [mprime, ell**v]))
    return RamificationData(group, ell, frob, inertia)


def galois_log(group, ring, values):
    """The log map: sum_g log_p(values[g]) g^{-1}.

    `values[g]` must be the image of x under group element g, already
    embedded into the ring (any nonzero element; p-power parts and roots of
    unity are discarded by the ring's logarithm).
    """
    assert len(values) == group.order
    coeffs = [None] * group.order
    for g in range(group.order):
        coeffs[group.inv[g]] = ring.iwasawa_log(values[g])
    return GroupRingElement(group, coeffs)


def galois_log_quad(group, ring, z, sqrt_img=None):
    """The log map for an element of a real quadratic field.

    The embedding sends sqrt(D) to `sqrt_img` (default: the ring's canonical
    Gauss-sum image, the one shared with the cyclotomic L-value sums).
    """
    D = z.field.D
    assert group.order == 2 and group.m == D, "group must match the quadratic field"
    if sqrt_img is None:
        sqrt_img = ring.sqrt_disc(D)
    vals = [
        ring.embed_quadratic(z.x, z.y, sqrt_img),
        ring.embed_quadratic(z.x, -z.y, sqrt_img),
    ]
    return galois_log(group, ring, vals)


def lseries_derivative(chi, ring):
    """Derivative at zero of the p-adic L-series of a nontrivial character.

    Evaluates the finite sum of log_p(1 - zeta_f^a) against the conjugate
    character over primitive-level units a, f the conductor.  Requires p
    not dividing f (all summands are then logs of units).
    """
    assert not chi.is_trivial, "the trivial character has no such value"
    f = chi.conductor
    assert f % ring.p != 0, "p must not divide the conductor"
    rho = ring.cyclotomic_root(f)
    W = chi.group.exponent
    one = ring.one()
    acc = ring.zero()
    for a in units_mod(f):
        e = chi.prim_exp(a)
        assert e is not None
        term = ring.iwasawa_log(one - rho**a)
        if e:
            zeta = ring.cyclotomic_root(W)
            term = term * zeta ** ((-e) % W)
        acc = acc + term
    return acc


def lseries_derivative_element(group, ring, chars=None):
    """sum over nontrivial chi of L'-value(chi) e_chi, as a group-ring element."""
    assert group.order % ring.p != 0, "p must not divide the degree"
    assert group.m % ring.p != 0, "p must not divide the conductor"
    if chars is None:
        chars = characters(group)
    acc = None
    for chi in chars:
        if chi.is_trivial:
            continue
        term = char_idempotent(chi, ring) * lseries_derivative(chi, ring)
        acc = term if acc is None else acc + term
    return acc


def norm_log_factor(group, n, t):
    """Rational group-ring factor for the log of a level-(n/t) norm product.

    For t a proper divisor of n this is the degree [Q(zeta_n) : k^n
    Q(zeta_{n/t})] times the sum over the subgroup fixing k intersect
    Q(zeta_{n/t}), times the product over primes ell | n/t of
    (1 - Frobenius^{-1} inertia-average).
    """
    assert t >= 1 and n % t == 0 and t < n, "t must be a proper divisor of n"
    level = n // t
    S = set(group.spec.fixing_subgroup_at(n))
    K = {a for a in units_mod(n) if a % level == 1 % level}
    deg = len(S & K)
    acc = group.subgroup_sum(group.subfield_fixer(level))
    for ell in prime_factors(level):
        acc = acc * ramification(group, ell).unit_adjusted()
    return deg * acc


def euler_twist(group, t):
    """Product over primes ell | t of (ell - Frobenius * inertia-average)."""
    acc = one_element(group)
    for ell in prime_factors(t):
        acc = acc * (ell * one_element(group) - ramification(group, ell).frob_average())
    return acc


def unit_log_factor(group, n, d):
    """Rational coefficient element for the level-n modified cyclotomic number.

    Defined for n > 1 not dividing the radical of d; combines the Moebius
    sum of `norm_log_factor` over common divisors with the Euler twist at
    the primes of the radical away from n and the scalar d/radical(d).
    """
    assert n > 1, "level must exceed 1"
    dbar = radical(d)
    assert dbar % n != 0, "levels dividing the radical are excluded"
    g = math.gcd(dbar, n)
    acc = None
    for t in divisors(g):
        term = Fraction(moebius(t) * g, t) * norm_log_factor(group, n, t)
        acc = term if acc is None else acc + term
    return Fraction(d, dbar) * (euler_twist(group, dbar // g) * acc)


def residue_euler_element(group, ring, dprime, chars=None):
    """sum over nontrivial chi of prod_{ell | dprime} (ell - chi(ell)) e_chi.

    For dprime = 1 this is 1 - e_1, the projector away from the trivial
    character.
    """
    if chars is None:
        chars = characters(group)
    rams = [ramification(group, ell) for ell in prime_factors(dprime)]
    acc = None
    for chi in chars:
        if chi.is_trivial:
            continue
        val = ring.one()
        for ram in rams:
            val = val * (ring.from_int(ram.ell) - chi.prime_value(ring, ram))
        term = char_idempotent(chi, ring) * val
        acc = term if acc is None else acc + term
    return acc


def chi_component(theta, chi, ring):
    """sum_g coeff(g) chi(g): the scalar by which theta acts on the chi-part."""
    acc = ring.zero()
    for g, c in enumerate(theta.coeffs):
        if not isinstance(c, PadicElement):
            c = ring.from_fraction(Fraction(c))
        acc = acc + c * chi.value(ring, g)
    return acc


def _exact_divide(num, den, ring):
    """num / den in the ring, requiring the quotient to be integral."""
    v = den.valuation()
    if den.is_zero() or v >= den.prec:
        raise ValueError(
            "division by a group-ring component that vanishes at this precision; "
            "increase the precision"
        )
    if v > 0:
        if num.valuation() < v:
            raise ValueError("quotient is not integral at this precision")
        num = num.divide_exact(ring.p**v)
        den = den.divide_exact(ring.p**v)
    return num * den.inverse()


def ray_annihilator(group, ring, d, rho, upsilon, chars=None):
    """The annihilator element for the ray modulus d.

    Per nontrivial character the component is
        upsilon_chi^{-1} rho_chi^{-1} L'-value(chi) (d/radical(d))
        prod_{ell | radical(d)} (ell - chi(ell)),
    assembled over the character idempotents (the trivial component is 0).

    `rho` is the `galois_log` of the chosen fundamental unit; `upsilon` is
    either a single scalar (int or PadicElement) or a dict keyed by
    character, giving the relative index of the congruence-unit generator.
    Raises ValueError when a divisor vanishes at the working precision.
    """
    if chars is None:
        chars = characters(group)
    dbar = radical(d)
    scalar = ring.from_fraction(Fraction(d, dbar))
    rams = [ramification(group, ell) for ell in prime_factors(dbar)]
    acc = None
    for chi in chars:
        if chi.is_trivial:
            continue
        num = lseries_derivative(chi, ring) * scalar
        for ram in rams:
            num = num * (ring.from_int(ram.ell) - chi.prime_value(ring, ram))
        rho_chi = chi_component(rho, chi, ring)
        comp = _exact_divide(num, rho_chi, ring)
        u = upsilon[chi] if isinstance(upsilon, dict) else upsilon
        if not isinstance(u, PadicElement):
            u = ring.from_int(int(u))
        comp = _exact_divide(comp, u, ring)
        term = char_idempotent(chi, ring) * comp
        acc = term if acc is None else acc + term
    return acc
