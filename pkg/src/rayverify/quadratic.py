"""Real quadratic fields: exact elements, units, ideals, class data.

A QuadField is keyed by its fundamental discriminant D > 0; elements are
pairs of Fractions (x, y) meaning x + y sqrt(D).  The ring of integers is
Z[omega] with omega = (1 + sqrt D)/2 for odd D and sqrt(D)/2 for even D.

The class group is computed from scratch: relations among the primes
below the Minkowski bound are harvested from elements of smooth norm, the
Smith form is stabilized under a growing search box, and the order is
cross-checked against the analytic class number formula (the only place
floating point appears, and only as an oracle).  Every relation row keeps
the element that witnessed it, so principality questions reduce to exact
integer linear algebra plus an explicit generator.

Residue rings O/(M) for integer moduli M come with a deterministic
generator/discrete-log table and a triangular relation matrix, which is
what the ray class layer consumes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .intmat import smith_diagonal, solve, transpose
from .nt import is_prime, kronecker, squarefree_part, valuation


def _is_fundamental(D):
    if D % 4 == 1:
        return squarefree_part(D) == D
    if D % 4 == 0:
        d0 = D // 4
        return squarefree_part(d0) == d0 and d0 % 4 in (2, 3)
    return False


class QuadElement:
    """x + y sqrt(D) with exact rational coordinates."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field, x, y):
        self.field = field
        self.x = Fraction(x)
        self.y = Fraction(y)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            assert other.field.D == self.field.D
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.field, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadElement(self.field, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        D = self.field.D
        return QuadElement(
            self.field,
            self.x * other.x + D * self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
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
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.field.D, self.x, self.y))

    def __repr__(self):
        return "QuadElement(%s + %s*sqrt(%d))" % (self.x, self.y, self.field.D)

    def conj(self):
        return QuadElement(self.field, self.x, -self.y)

    def norm(self):
        return self.x * self.x - self.field.D * self.y * self.y

    def trace(self):
        return 2 * self.x

    def inverse(self):
        n = self.norm()
        assert n != 0, "inverse of zero"
        return QuadElement(self.field, self.x / n, -self.y / n)

    def omega_coords(self):
        """(a, b) with self = a + b omega; Fractions, integers iff integral."""
        b = 2 * self.y
        a = self.x - (self.field.D % 2) * self.y
        return a, b

    def is_integral(self):
        a, b = self.omega_coords()
        return a.denominator == 1 and b.denominator == 1

    def is_unit(self):
        return self.is_integral() and abs(self.norm()) == 1

    def is_rational(self):
        return self.y == 0

    def sign(self):
        """Sign of the real number x + y sqrt(D), exactly."""
        x, y = self.x, self.y
        if x == 0 and y == 0:
            return 0
        if x >= 0 and y >= 0:
            return 1
        if x <= 0 and y <= 0:
            return -1
        # opposite signs: compare x^2 against D y^2
        big_x = x * x > self.field.D * y * y
        if x > 0:
            return 1 if big_x else -1
        return -1 if big_x else 1

    def __gt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() > 0

    def __lt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() < 0


class QuadField:
    """Q(sqrt(D)) for a positive fundamental discriminant D."""

    _cache = {}

    def __new__(cls, D):
        if D in cls._cache:
            return cls._cache[D]
        self = super().__new__(cls)
        cls._cache[D] = self
        return self

    def __init__(self, D):
        if hasattr(self, "D"):
            return
        assert D > 4 and _is_fundamental(D), "need a positive fundamental discriminant"
        self.D = D
        self.d0 = squarefree_part(D)
        if D % 2:
            self.omega_trace, self.omega_norm = 1, (1 - D) // 4
        else:
            self.omega_trace, self.omega_norm = 0, -self.d0
        self._unit = None
        self._classgroup = None

    def element(self, x, y=0):
        return QuadElement(self, x, y)

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def sqrt_disc(self):
        return self.element(0, 1)

    def omega(self):
        if self.D % 2:
            return self.element(Fraction(1, 2), Fraction(1, 2))
        return self.element(0, Fraction(1, 2))

    def from_omega_coords(self, a, b):
        return a + b * self.omega()

    def chi(self, a):
        return kronecker(self.D, a)

    # -- units

    def fundamental_unit(self):
        """The fundamental unit > 1, by the continued fraction of sqrt(d0)
        plus a bounded scan for a half-integral cube root when D is odd."""
        if self._unit is not None:
            return self._unit
        x, y, _ = _pell_fundamental(self.d0)
        if self.D % 2 == 0:
            eps = self.element(x, Fraction(y, 2))  # x + y sqrt(d0)
        else:
            eps0 = self.element(x, y)
            eps = eps0
            bound = _icbrt(2 * x + 2) // math.isqrt(self.D) + 2
            for b in range(1, bound + 1):
                hit = None
                for s in (-4, 4):
                    t = self.D * b * b + s
                    if t > 0:
                        a = math.isqrt(t)
                        if a * a == t and (a - b) % 2 == 0:
                            hit = self.element(Fraction(a, 2), Fraction(b, 2))
                            break
                if hit is not None:
                    # must generate eps0 up to sign: index 1 or 3
                    if hit == eps0 or hit**3 in (eps0, -eps0):
                        eps = hit
                        break
        assert eps.is_unit() and eps > 1
        self._unit = eps
        return eps

    def regulator_float(self):
        eps = self.fundamental_unit()
        return math.log(float(eps.x) + float(eps.y) * math.sqrt(self.D))

    # -- primes

    def split_type(self, p):
        chi = self.chi(p)
        return {1: "split", -1: "inert", 0: "ramified"}[chi]

    def prime_roots(self, p):
        """Roots mod p of the minimal polynomial of omega: one per prime over p."""
        T, Nm = self.omega_trace, self.omega_norm
        return sorted(r for r in range(p) if (r * r - T * r + Nm) % p == 0)

    def prime_root_lifted(self, p, r, k):
        """The root of omega's minimal polynomial mod p^k lifting r (r simple)."""
        T, Nm = self.omega_trace, self.omega_norm
        M = p**k
        x = r % p
        # Newton; the derivative 2x - T is a unit mod p for unramified p
        assert (2 * r - T) % p != 0, "needs a simple root"
        for _ in range(k.bit_length() + 1):
            fx = (x * x - T * x + Nm) % M
            dfx = (2 * x - T) % M
            x = (x - fx * pow(dfx, -1, M)) % M
        assert (x * x - T * x + Nm) % M == 0
        return x

    def prime_valuation(self, z, p, r):
        """v at the prime (p, omega - r) of an integral element z."""
        a, b = z.omega_coords()
        assert a.denominator == 1 and b.denominator == 1
        a, b = int(a), int(b)
        nrm = z.norm()
        assert nrm != 0
        etot = valuation(int(nrm), p)
        if etot == 0:
            return 0
        if self.chi(p) == 0:
            return etot  # ramified: v at the unique prime equals v_p of the norm
        assert len(self.prime_roots(p)) == 2, "split prime expected"
        rlift = self.prime_root_lifted(p, r, etot + 1)
        val = (a + b * rlift) % p ** (etot + 1)
        if val == 0:
            return etot
        return min(valuation(val, p), etot)

    # -- class group

    def class_group(self):
        if self._classgroup is None:
            self._classgroup = ClassGroup(self)
        return self._classgroup


def _pell_fundamental(n):
    """Fundamental solution of x^2 - n y^2 = +-1 over Z[sqrt(n)], by the
    continued fraction of sqrt(n).  Returns (x, y, norm)."""
    s = math.isqrt(n)
    assert s * s != n
    P, Q, a = 0, 1, s
    h_prev, h_cur = 1, s
    k_prev, k_cur = 0, 1
    i = 0
    while True:
        i += 1
        P = a * Q - P
        Q = (n - P * P) // Q
        assert Q > 0
        a = (s + P) // Q
        if Q == 1:
            return h_cur, k_cur, (-1) ** i
        h_prev, h_cur = h_cur, a * h_cur + h_prev
        k_prev, k_cur = k_cur, a * k_cur + k_prev


def _icbrt(n):
    x = int(round(n ** (1.0 / 3))) + 1
    while x * x * x > n:
        x -= 1
    return x


def analytic_class_number(D):
    """Dirichlet's formula for h(D), floating point, oracle use only."""
    field = QuadField(D)
    reg = field.regulator_float()
    total = 0.0
    for a in range(1, D):
        chi = kronecker(D, a)
        if chi:
            total -= chi * math.log(2 * math.sin(math.pi * a / D))
    return total / (2 * reg)


class ClassGroup:
    """Ideal class group presented on the primes below the Minkowski bound.

    gens: list of (p, r) pairs for the prime (p, omega - r) (r = None marks
    nothing; ramified primes appear once, split primes twice).  relations:
    integer rows in those generators; witnesses[i] is an explicit field
    element generating the ideal prod gens^relations[i].
    """

    def __init__(self, field):
        self.field = field
        D = field.D
        mink = math.isqrt(D) // 2
        base = []
        for p in range(2, mink + 1):
            if not is_prime(p):
                continue
            if field.chi(p) == -1:
                continue
            for r in field.prime_roots(p):
                base.append((p, r))
        self.gens = base
        self.relations = []
        self.witnesses = []
        if not base:
            self.invariants = []
            self.order = 1
            self._check_analytic()
            return
        self._harvest()
        self._check_analytic()

    def _factor_vector(self, z):
        """Exponent vector of (z) over the base, or None if not smooth."""
        nrm = abs(int(z.norm()))
        assert nrm != 0
        rem = nrm
        for p in {p for p, _ in self.gens}:
            while rem % p == 0:
                rem //= p
        if rem != 1:
            return None
        vec = [0] * len(self.gens)
        for i, (p, r) in enumerate(self.gens):
            if nrm % p == 0:
                vec[i] = self.field.prime_valuation(z, p, r)
        return vec

    def _harvest(self):
        field = self.field
        seen_orders = []
        bound = 8
        for _ in range(10):
            rows, wits = [], []
            # rational relations: (p) as a product of the primes above p
            for p in sorted({p for p, _ in self.gens}):
                z = field.element(p)
                vec = self._factor_vector(z)
                assert vec is not None
                rows.append(vec)
                wits.append(z)
            for b in range(1, bound + 1):
                for a in range(-bound, bound + 1):
                    z = field.from_omega_coords(a, b)
                    if z.norm() == 0:
                        continue
                    vec = self._factor_vector(z)
                    if vec is not None:
                        rows.append(vec)
                        wits.append(z)
            diag = smith_diagonal(rows) if rows else []
            h = 1
            full_rank = len(diag) == len(self.gens)
            for d in diag:
                h *= d
            seen_orders.append(h if full_rank else None)
            if full_rank and len(seen_orders) >= 2 and seen_orders[-2] == h:
                self.relations = rows
                self.witnesses = wits
                self.invariants = [d for d in diag if d != 1]
                self.order = h
                return
            bound *= 2
        raise AssertionError("class group relations did not stabilize")

    def _check_analytic(self):
        approx = analytic_class_number(self.field.D)
        assert abs(approx - self.order) < 0.05, (
            "class number %d disagrees with analytic %f" % (self.order, approx)
        )

    def prime_vector(self, p, r):
        """Unit vector of the base prime (p, omega - r)."""
        i = self.gens.index((p, r))
        vec = [0] * len(self.gens)
        vec[i] = 1
        return vec

    def conjugate_index(self):
        """Index of the conjugate prime for each generator (self for ramified)."""
        out = []
        for i, (p, r) in enumerate(self.gens):
            partners = [j for j, (q, s) in enumerate(self.gens) if q == p and s != r]
            out.append(partners[0] if partners else i)
        return out

    def principalize(self, vec):
        """A field element generating prod gens^vec, or None if non-principal."""
        if not self.gens:
            return self.field.one()
        x = solve(transpose(self.relations), vec)
        if x is None:
            return None
        z = self.field.one()
        for c, w in zip(x, self.witnesses):
            if c:
                z = z * w**c
        return z

    def class_order_of(self, vec):
        """Order of the ideal class of prod gens^vec."""
        n = 1
        cur = list(vec)
        while self.principalize(cur) is None:
            n += 1
            cur = [a + b for a, b in zip(cur, vec)]
            assert n <= self.order
        return n


def unit_exponent(field, u):
    """Write a unit of O as +-eps^k; returns (sign, k).  Exact descent:
    multiply by eps^(+-1) until hitting +-1, deciding direction by the
    exact sign test |u| > 1 iff u^2 - 1 > 0."""
    eps = field.fundamental_unit()
    assert isinstance(u, QuadElement) and u.is_unit(), "not a unit"
    k = 0
    cur = u
    eps_inv = eps.inverse()
    while cur != 1 and cur != -1:
        if cur * cur > 1:
            cur = cur * eps_inv
            k += 1
        else:
            cur = cur * eps
            k -= 1
    return (1 if cur == 1 else -1), k


class ResidueRing:
    """O/(M) for a positive integer modulus M, with unit-group structure.

    Elements are pairs (a, b) meaning a + b omega mod M.  The unit group
    comes with deterministic generators, a triangular relation matrix and
    a full discrete-log dictionary (the group is tiny in engine use).
    """

    _BUDGET = 10**6

    def __init__(self, field, M):
        assert M >= 1
        assert M * M <= self._BUDGET, "residue ring too large to enumerate"
        self.field = field
        self.M = M
        self._structure = None

    def one(self):
        return (1 % self.M, 0)

    def mul(self, u, v):
        a, b = u
        c, d = v
        M = self.M
        T, Nm = self.field.omega_trace, self.field.omega_norm
        # (a + b w)(c + d w), w^2 = T w - Nm
        bd = b * d
        return ((a * c - bd * Nm) % M, (a * d + b * c + bd * T) % M)

    def pow(self, u, e):
        e = int(e)
        if e < 0:
            return self.pow(self.inverse(u), -e)
        out = self.one()
        base = u
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def norm_lift(self, u):
        a, b = u
        T, Nm = self.field.omega_trace, self.field.omega_norm
        return a * a + a * b * T + b * b * Nm

    def is_unit(self, u):
        return math.gcd(self.norm_lift(u) % self.M, self.M) == 1

    def inverse(self, u):
        a, b = u
        T = self.field.omega_trace
        conj = ((a + b * T) % self.M, (-b) % self.M)  # a + b(T - w)
        n = self.norm_lift(u) % self.M
        ninv = pow(n, -1, self.M)
        c, d = conj
        return (c * ninv % self.M, d * ninv % self.M)

    def conj(self, u):
        a, b = u
        T = self.field.omega_trace
        return ((a + b * T) % self.M, (-b) % self.M)

    def reduce(self, z):
        """Image of an integral QuadElement."""
        a, b = z.omega_coords()
        assert a.denominator == 1 and b.denominator == 1, "not integral"
        return (int(a) % self.M, int(b) % self.M)

    def units(self):
        M = self.M
        return [
            (a, b) for a in range(M) for b in range(M) if self.is_unit((a, b))
        ]

    def structure(self):
        """(gens, relations, dlog): deterministic presentation of (O/M)^*."""
        if self._structure is not None:
            return self._structure
        gens = []
        rels = []
        dlog = {self.one(): ()}
        M = self.M
        for a in range(M):
            for b in range(M):
                x = (a, b)
                if x in dlog or not self.is_unit(x):
                    continue
                k = len(gens)
                gens.append(x)
                # order of x relative to the current span
                o = 1
                pw = x
                while pw not in dlog:
                    o += 1
                    pw = self.mul(pw, x)
                row = [0] * (k + 1)
                row[k] = o
                old = dlog[pw]
                for i, c in enumerate(old):
                    row[i] -= c
                rels.append(row)
                new = {}
                pw = self.one()
                for j in range(o):
                    for y, v in dlog.items():
                        new[self.mul(y, pw)] = v + (j,)
                    pw = self.mul(pw, x)
                assert len(new) == len(dlog) * o, "coset collision"
                dlog = new
        width = len(gens)
        rels = [row + [0] * (width - len(row)) for row in rels]
        dlog = {y: tuple(v) + (0,) * (width - len(v)) for y, v in dlog.items()}
        self._structure = (gens, rels, dlog)
        return self._structure

    def unit_count(self):
        _, rels, dlog = self.structure()
        return len(dlog)

    def dlog(self, u):
        _, _, dl = self.structure()
        return list(dl[u])
