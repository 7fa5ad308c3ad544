"""Explicit constructions in k(zeta_ell) over a real quadratic field k.

Three tools live here, all exact:

* arithmetic in the composite field k(zeta_ell) for a prime ell that does
  not ramify in k, with coefficients in the quadratic field;
* norm-one units attached to a cyclotomic level (n, d), produced by pushing
  the two-variable product over (zeta_ell^t - zeta_n^t) down to the
  subfield cut out by the quadratic field, together with a fully exact
  certificate: integrality, unit norm, relative norm one, congruence to 1
  modulo d, and residue agreement with the cyclotomic number of the same
  level at every prime over ell;
* a constructive Hilbert-90 witness: for a unit eps of relative norm one,
  an explicit nonzero alpha with alpha = eps * tau(alpha), where tau
  generates the Galois group of k(zeta_ell)/k;
* discrete-logarithm vectors of a quadratic-field number at the primes over
  a split rational prime, packaged as group-ring annihilator coefficients.
"""

from fractions import Fraction

from .cyclo import FieldSpec, subgroup_product_polynomial, to_quadratic
from .grouprings import radical
from .nt import divisors, is_prime, moebius, primitive_root
from .quadratic import QuadElement
from .units import cyclotomic_number


class CycQuadElement:
    """Element of k(zeta_ell): coefficients of 1, zeta, ..., zeta^(ell-2).

    `coeffs` is a list of ell-1 QuadElements; the power basis is reduced by
    the relation 1 + zeta + ... + zeta^(ell-1) = 0.  ell must be a prime
    that is unramified in k, so that the representation is unique.
    """

    __slots__ = ("field", "ell", "coeffs")

    def __init__(self, field, ell, coeffs):
        assert is_prime(ell) and field.D % ell != 0
        assert len(coeffs) == ell - 1
        self.field = field
        self.ell = ell
        self.coeffs = coeffs

    # -- constructors

    @classmethod
    def from_quad(cls, field, ell, z):
        if not isinstance(z, QuadElement):
            z = field.element(z)
        coeffs = [z] + [field.zero()] * (ell - 2)
        return cls(field, ell, coeffs)

    @classmethod
    def zero(cls, field, ell):
        return cls(field, ell, [field.zero()] * (ell - 1))

    @classmethod
    def one(cls, field, ell):
        return cls.from_quad(field, ell, field.one())

    @classmethod
    def from_full(cls, field, ell, full):
        """Build from a length-ell list of coefficients of 1, ..., zeta^(ell-1)."""
        assert len(full) == ell
        top = full[ell - 1]
        return cls(field, ell, [full[j] - top for j in range(ell - 1)])

    @classmethod
    def zeta_power(cls, field, ell, j):
        full = [field.zero()] * ell
        full[j % ell] = field.one()
        return cls.from_full(field, ell, full)

    # -- ring operations

    def _coerce(self, other):
        if isinstance(other, CycQuadElement):
            assert other.field is self.field and other.ell == self.ell
            return other
        if isinstance(other, (int, Fraction, QuadElement)):
            return CycQuadElement.from_quad(self.field, self.ell, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycQuadElement(
            self.field,
            self.ell,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
        )

    __radd__ = __add__

    def __neg__(self):
        return CycQuadElement(self.field, self.ell, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElement)):
            return CycQuadElement(
                self.field, self.ell, [a * other for a in self.coeffs]
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ell = self.ell
        full = [self.field.zero()] * ell
        for i, a in enumerate(self.coeffs):
            if a.x == 0 and a.y == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b.x == 0 and b.y == 0:
                    continue
                k = i + j
                if k >= ell:
                    k -= ell
                full[k] = full[k] + a * b
        return CycQuadElement.from_full(self.field, ell, full)

    __rmul__ = __mul__

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        out = CycQuadElement.one(self.field, self.ell)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return "CycQuadElement(ell=%d, D=%d)" % (self.ell, self.field.D)

    def is_zero(self):
        return all(a.x == 0 and a.y == 0 for a in self.coeffs)

    # -- Galois actions

    def galois_zeta(self, s):
        """The automorphism zeta -> zeta^s, trivial on the quadratic field."""
        ell = self.ell
        assert s % ell != 0
        full = [self.field.zero()] * ell
        for j, a in enumerate(self.coeffs):
            full[(j * s) % ell] = full[(j * s) % ell] + a
        return CycQuadElement.from_full(self.field, ell, full)

    def conj_field(self):
        """The automorphism fixing zeta and conjugating the quadratic field."""
        return CycQuadElement(self.field, self.ell, [a.conj() for a in self.coeffs])

    def shift(self, e):
        """Multiplication by zeta^e."""
        ell = self.ell
        full = [self.field.zero()] * ell
        for j, a in enumerate(self.coeffs):
            full[(j + e) % ell] = a
        return CycQuadElement.from_full(self.field, ell, full)

    # -- norms, integrality, residues

    def norm_to_quad(self):
        """Norm down to the quadratic field: the product of all zeta -> zeta^s."""
        acc = self
        for s in range(2, self.ell):
            acc = acc * self.galois_zeta(s)
        for a in acc.coeffs[1:]:
            assert a.x == 0 and a.y == 0, "norm failed to land in the base field"
        return acc.coeffs[0]

    def inverse(self):
        co = None
        for s in range(2, self.ell):
            g = self.galois_zeta(s)
            co = g if co is None else co * g
        if co is None:  # ell == 2 never occurs (ell odd prime), keep safe
            co = CycQuadElement.one(self.field, self.ell)
        nrm = self * co
        for a in nrm.coeffs[1:]:
            assert a.x == 0 and a.y == 0, "inverse of a non-invertible element"
        scalar = nrm.coeffs[0]
        assert not (scalar.x == 0 and scalar.y == 0), "inverse of zero"
        return co * scalar.inverse()

    def absolute_norm(self):
        """Norm down to Q, a Fraction."""
        return self.norm_to_quad().norm()

    def is_integral(self):
        return all(a.is_integral() for a in self.coeffs)

    def divisible_by_int(self, d):
        """True when every coefficient lies in d * (ring of integers)."""
        for a in self.coeffs:
            u, v = a.omega_coords()
            if (u / d).denominator != 1 or (v / d).denominator != 1:
                return False
        return True

    def residue_at(self, root):
        """Image in F_ell under zeta -> 1 and omega -> root."""
        total = self.field.zero()
        for a in self.coeffs:
            total = total + a
        return quad_residue(total, self.ell, root)


def quad_residue(z, ell, root):
    """Image of a quadratic-field number in F_ell, sending omega -> root.

    `root` must satisfy root^2 - tr(omega) root + norm(omega) = 0 mod ell;
    the denominators of z must be prime to ell.
    """
    D = z.field.D
    t = (2 * root - (D % 2)) % ell  # image of sqrt(D)
    assert (t * t - D) % ell == 0, "root does not define a prime over ell"
    assert z.x.denominator % ell != 0 and z.y.denominator % ell != 0
    xr = z.x.numerator * pow(z.x.denominator, -1, ell)
    yr = z.y.numerator * pow(z.y.denominator, -1, ell)
    return (xr + t * yr) % ell


# ----------------------------------------------------------------------
# Norm-one units at a cyclotomic level


def special_prime_candidates(field, n, d, count=3):
    """The first `count` odd primes, split in the field, coprime to n*d."""
    out = []
    q = 2
    while len(out) < count:
        q += 1
        if not is_prime(q):
            continue
        if field.chi(q) == 1 and (n * d) % q != 0:
            out.append(q)
    return out


def special_unit(field, n, d, ell):
    """The level-(n, d) norm-one element of k^n(zeta_ell).

    Built as the product over squarefree t | rad(d) of F_t(zeta_ell^t) to
    the power mu(t) d/t, where F_t is the monic polynomial whose roots are
    the orbit of zeta_n^t under the subgroup fixing k^n.  Requires n > 1,
    n not dividing rad(d), and an odd prime ell, split in the field and
    coprime to n*d.
    """
    dbar = radical(d)
    assert n > 1 and dbar % n != 0
    assert is_prime(ell) and ell % 2 == 1
    assert field.chi(ell) == 1 and (n * d) % ell != 0
    spec = FieldSpec.quadratic(field.D)
    S = sorted(spec.fixing_subgroup_at(n))
    num = CycQuadElement.one(field, ell)
    den = CycQuadElement.one(field, ell)
    for t in divisors(dbar):
        mu = moebius(t)
        if mu == 0:
            continue
        poly = subgroup_product_polynomial(n, S, t)
        quads = [field.element(*to_quadratic(c, field.D)) for c in poly]
        full = [field.zero()] * ell
        for i, c in enumerate(quads):
            k = (t * i) % ell
            full[k] = full[k] + c
        value = CycQuadElement.from_full(field, ell, full)
        e = mu * (d // t)
        if e > 0:
            num = num * value**e
        else:
            den = den * value ** (-e)
    return num * den.inverse()


def special_unit_certificate(field, n, d, ell):
    """Exact certificate for the level-(n, d) unit at the auxiliary prime ell.

    Verifies, with no rounding anywhere:
      * integrality and absolute norm +-1 (the element is a unit),
      * relative norm down to the quadratic field exactly 1,
      * a sign choice making the element congruent to 1 modulo d,
      * at every prime over ell the element reduces (zeta -> 1) to the
        cyclotomic number of the same level.
    """
    eps = special_unit(field, n, d, ell)
    delta = cyclotomic_number(field, n, d)
    nrm = eps.norm_to_quad()
    abs_norm = nrm.norm()
    is_unit = eps.is_integral() and abs(abs_norm) == 1
    norm_one = nrm == field.one()

    if (eps - 1).divisible_by_int(d):
        sign = 1
    elif (eps + 1).divisible_by_int(d):
        sign = -1
    else:
        sign = 0
    congruent = sign != 0

    roots = field.prime_roots(ell)
    residues = {}
    matches = True
    for r in roots:
        e_res = eps.residue_at(r)
        d_res = quad_residue(delta, ell, r)
        residues[r] = (e_res, d_res)
        if e_res != d_res:
            matches = False

    return {
        "discriminant": field.D,
        "level": n,
        "twist": d,
        "aux_prime": ell,
        "is_unit": is_unit,
        "norm_one": norm_one,
        "congruent_one_mod_d": congruent,
        "sign": sign,
        "matches_cyclotomic_residues": matches,
        "residues": residues,
        "absolute_norm": abs_norm,
    }


# ----------------------------------------------------------------------
# Constructive Hilbert 90


def hilbert90_witness(eps):
    """A nonzero alpha with alpha = eps * tau(alpha), built explicitly.

    tau is the generator zeta -> zeta^s of Gal(k(zeta_ell)/k), s the
    smallest primitive root mod ell.  alpha is the alternating-free sum
    -sum_i zeta^(g s^i) eps^(1 + tau + ... + tau^(i-1)); the exponent g
    walks 1, 2, ... until alpha is nonzero (guaranteed within ell - 1).

    Requires eps integral with norm one down to the quadratic field.
    Returns a dict with alpha, the chosen g, s, and the exact flags.
    """
    field, ell = eps.field, eps.ell
    s = primitive_root(ell)
    nrm = eps.norm_to_quad()
    assert nrm == field.one(), "witness requires relative norm one"

    partial = [CycQuadElement.one(field, ell)]
    for i in range(1, ell - 1):
        conj = eps.galois_zeta(pow(s, i - 1, ell))
        partial.append(partial[-1] * conj)

    alpha = None
    g_used = None
    for g in range(1, ell):
        acc = CycQuadElement.zero(field, ell)
        for i in range(ell - 1):
            acc = acc + partial[i].shift((g * pow(s, i, ell)) % ell)
        acc = -acc
        if not acc.is_zero():
            alpha = acc
            g_used = g
            break
    assert alpha is not None, "no nonzero witness among all root choices"

    identity = alpha == eps * alpha.galois_zeta(s)
    stable = identity and alpha.is_integral() and eps.is_integral() and abs(
        eps.absolute_norm()
    ) == 1
    return {
        "alpha": alpha,
        "root_exponent": g_used,
        "primitive_root": s,
        "nonzero": True,
        "cocycle_identity": identity,
        "ideal_stable": stable,
    }


# ----------------------------------------------------------------------
# Discrete-log annihilator coefficients


def residue_dlogs(field, z, ell):
    """Discrete logs of z at the two primes over a split odd prime ell.

    Returns (s, {root: dlog}) where s is the chosen primitive root mod ell
    and z = s^dlog at each reduction omega -> root.
    """
    assert is_prime(ell) and ell % 2 == 1 and field.chi(ell) == 1
    s = primitive_root(ell)
    table = {}
    acc = 1
    for e in range(ell - 1):
        table[acc] = e
        acc = (acc * s) % ell
    out = {}
    for r in field.prime_roots(ell):
        v = quad_residue(z, ell, r)
        assert v != 0, "number is not a unit at ell"
        out[r] = table[v]
    return s, out


def dlog_annihilator_coefficients(field, group, z, ell, n_exp):
    """Group-ring coefficients sum_sigma a_sigma sigma^(-1) from residues of z.

    a_sigma is minus the discrete log of z at the prime indexed by sigma
    (identity: the first root in sorted order; the nontrivial element: the
    second), reduced modulo ell - 1.  Requires ell odd, split, and
    ell = 1 mod n_exp so the reduction mod n_exp is meaningful.
    """
    assert (ell - 1) % n_exp == 0
    s, dlogs = residue_dlogs(field, z, ell)
    roots = field.prime_roots(ell)
    ident = group.coset_of(1)
    other = 1 - ident  # two-element group
    coeffs = [0, 0]
    coeffs[ident] = (-dlogs[roots[0]]) % (ell - 1)
    coeffs[other] = (-dlogs[roots[1]]) % (ell - 1)
    return {
        "primitive_root": s,
        "coefficients": coeffs,
        "coefficients_mod_n": [c % n_exp for c in coeffs],
        "dlogs": dlogs,
        "roots": roots,
    }
