"""Finite modules over a Galois group, and the ray class groups built on them.

A `FiniteGModule` is a finite abelian group with an action of a
`GaloisGroup`, presented by integer data: k abstract generators, a full-rank
integer relation lattice (rows), and one k-by-k integer matrix per group
element giving the action on generators.  Everything downstream is exact
integer linear algebra: orders and invariants come from Smith forms,
canonical element forms from the Hermite form of the relation lattice, and
submodules/quotients/annihilators from stacked-kernel computations.

On top of that sit the two concrete constructions the verification engine
compares:

* `residue_galois_module` presents the unit group of O/(M) for a real
  quadratic field with its conjugation action, and
  `residue_structure_target` builds the predicted Sylow-p structure of such
  a module from Frobenius/inertia data alone.  `isomorphism_certificate`
  decides whether two modules are isomorphic with an explicit certificate
  (orders, invariants, cyclic generators and equal annihilator lattices),
  answering "inconclusive" rather than guessing when no decision procedure
  applies.
* `RayClassGroup` presents the ray class group of a real quadratic field
  modulo a positive integer, as an extension of the ideal class group by
  the residue units modulo global units, with exact principalization
  witnesses for every relation, the connecting map from residue units, and
  the class-of-a-prime section used by the annihilation checks.
"""

import math
from fractions import Fraction

from .grouprings import basis_element, one_element, ramification
from .intmat import (
    hnf,
    identity,
    preimage_lattice,
    smith_diagonal,
    solve,
    transpose,
)
from .nt import factorize, is_prime, valuation
from .quadratic import ResidueRing

__all__ = [
    "FiniteGModule",
    "isomorphism_certificate",
    "residue_galois_module",
    "residue_structure_target",
    "lift_coefficients_mod",
    "RayClassGroup",
]

_ENUM_BUDGET = 200_000


def _in_lattice(v, rows):
    if not rows:
        return all(x == 0 for x in v)
    return solve(transpose([list(r) for r in rows]), list(v)) is not None


class FiniteGModule:
    """A finite abelian group with Galois action, presented by integers.

    `relations` rows span the full relation lattice of the `ngens`
    generators (the quotient Z^k / lattice is the underlying group, so the
    lattice must have full rank k).  `action[g]` is a k-by-k matrix whose
    row i expresses g . gen_i in the generators.  Elements are integer
    vectors of length k; `reduce` puts them in the canonical box cut out by
    the Hermite form of the relation lattice.
    """

    def __init__(self, group, ngens, relations, action):
        self.group = group
        self.ngens = ngens
        self.relations = [list(map(int, row)) for row in relations]
        assert all(len(row) == ngens for row in self.relations)
        self.action = action
        assert len(action) == group.order
        self._hnf = hnf(self.relations) if ngens else []
        assert len(self._hnf) == ngens, "relation lattice must have full rank"
        for i in range(ngens):
            assert self._hnf[i][i] > 0 and all(
                self._hnf[i][j] == 0 for j in range(i)
            ), "unexpected Hermite shape"
        self.diagonal = [self._hnf[i][i] for i in range(ngens)]

    # ----- underlying group

    def order(self):
        return math.prod(self.diagonal)

    def invariants(self):
        """Elementary divisors > 1, in the divisibility chain order."""
        if self.ngens == 0:
            return []
        return [d for d in smith_diagonal(self.relations) if d > 1]

    def exponent(self):
        inv = self.invariants()
        return inv[-1] if inv else 1

    # ----- elements

    def zero(self):
        return (0,) * self.ngens

    def gen(self, i):
        return self.reduce([1 if j == i else 0 for j in range(self.ngens)])

    def reduce(self, v):
        v = list(map(int, v))
        assert len(v) == self.ngens
        for i in range(self.ngens):
            q = v[i] // self._hnf[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, self._hnf[i])]
        return tuple(v)

    def add(self, u, v):
        return self.reduce([a + b for a, b in zip(u, v)])

    def neg(self, v):
        return self.reduce([-a for a in v])

    def scale(self, c, v):
        return self.reduce([c * a for a in v])

    def is_zero(self, v):
        return all(a == 0 for a in self.reduce(v))

    def elements(self, budget=_ENUM_BUDGET):
        """All elements in canonical form, deterministic order."""
        assert self.order() <= budget, "module too large to enumerate"
        out = [()]
        for d in self.diagonal:
            out = [t + (a,) for t in out for a in range(d)]
        return out

    def element_order(self, v):
        v = self.reduce(v)
        n = 1
        cur = v
        while not self.is_zero(cur):
            cur = self.add(cur, v)
            n += 1
            assert n <= self.order()
        return n

    # ----- Galois action

    def act(self, g, v):
        mat = self.action[g]
        out = [0] * self.ngens
        for c, row in zip(v, mat):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return self.reduce(out)

    def apply_coeffs(self, coeffs, v):
        """Apply an integer group-ring element given as a coefficient list."""
        assert len(coeffs) == self.group.order
        out = self.zero()
        for g, c in enumerate(coeffs):
            if c:
                out = self.add(out, self.scale(c, self.act(g, v)))
        return out

    def annihilated_by(self, coeffs):
        """(True, None) or (False, witness dict) for a coefficient list."""
        for i in range(self.ngens):
            img = self.apply_coeffs(coeffs, self.gen(i))
            if not self.is_zero(img):
                return False, {"generator": i, "image": list(img)}
        return True, None

    # ----- structural constructions

    def sylow(self, p):
        """The p-primary component, on the same generators."""
        q = p ** valuation(self.exponent(), p)
        rows = [row[:] for row in self.relations]
        for i in range(self.ngens):
            rows.append([q if j == i else 0 for j in range(self.ngens)])
        return FiniteGModule(self.group, self.ngens, rows, self.action)

    def submodule(self, vectors):
        """The G-submodule generated by the vectors (must be G-stable).

        Returns (module, V): the rows of V are the vectors, reused as the
        new module's generators.
        """
        V = [list(map(int, v)) for v in vectors]
        s = len(V)
        rel = preimage_lattice(V, self.relations)
        table = transpose(V + self.relations)
        action = []
        for g in range(self.group.order):
            mat = []
            for v in V:
                x = solve(table, list(self.act(g, v)))
                assert x is not None, "submodule is not Galois stable"
                mat.append(x[:s])
            action.append(mat)
        return FiniteGModule(self.group, s, rel, action), V

    def quotient(self, vectors):
        """Quotient by the G-submodule generated by the vectors."""
        rows = [row[:] for row in self.relations]
        for g in range(self.group.order):
            for v in vectors:
                rows.append(list(self.act(g, v)))
        return FiniteGModule(self.group, self.ngens, rows, self.action)

    def contains(self, v, vectors):
        """Is v in the subgroup generated by the vectors (no G-closure)?"""
        return _in_lattice(list(v), [list(w) for w in vectors] + self.relations)

    def rho_component(self, proj_coeffs):
        """Image of an integer-lifted idempotent projector, as a submodule."""
        vectors = [
            self.apply_coeffs(proj_coeffs, self.gen(i)) for i in range(self.ngens)
        ]
        return self.submodule(vectors)

    # ----- annihilators and cyclicity

    def annihilator_lattice(self, v):
        """Canonical (Hermite) basis of {c in Z^|G| : sum_g c_g g.v = 0}."""
        rows = [list(self.act(g, v)) for g in range(self.group.order)]
        return hnf(preimage_lattice(rows, self.relations))

    def module_annihilator(self):
        """Canonical basis of the annihilator of the whole module."""
        n = self.group.order
        k = self.ngens
        if k == 0:
            return hnf(identity(n))
        big = []
        for g in range(n):
            row = []
            for i in range(k):
                row.extend(self.act(g, self.gen(i)))
            big.append(row)
        relblock = []
        for i in range(k):
            for r in self.relations:
                row = [0] * (k * k)
                row[i * k : (i + 1) * k] = list(r)
                relblock.append(row)
        return hnf(preimage_lattice(big, relblock))

    def find_generator(self, budget=_ENUM_BUDGET):
        """A cyclic generator in canonical form, or None if none exists.

        Exhaustive over all elements (so a None answer proves the module is
        not cyclic over the group ring); asserts the order is within budget.
        """
        if self.order() == 1:
            return self.zero()
        for v in self.elements(budget):
            rows = [list(self.act(g, v)) for g in range(self.group.order)]
            if math.prod(smith_diagonal(rows + self.relations)) == 1:
                return v
        return None

    def __repr__(self):
        return "FiniteGModule(order=%d, invariants=%s)" % (
            self.order(),
            self.invariants(),
        )


def lift_coefficients_mod(theta, modulus):
    """Integer lift of a rational-coefficient group-ring element, mod modulus.

    Denominators must be invertible modulo `modulus`.
    """
    out = []
    for c in theta.coeffs:
        fr = Fraction(c)
        out.append(fr.numerator * pow(fr.denominator, -1, modulus) % modulus)
    return out


def isomorphism_certificate(left, right, budget=_ENUM_BUDGET):
    """Decide whether two FiniteGModules over one group are G-isomorphic.

    Returns a dict with status "isomorphic", "not-isomorphic", or
    "inconclusive" plus witness data.  "isomorphic" is only ever reported
    with a complete certificate: equal orders and invariants, and either
    both modules trivial, or exhibited cyclic generators whose annihilator
    lattices in the group ring coincide (which pins the isomorphism class
    of a cyclic module over the commutative group ring).
    """
    assert left.group == right.group
    lo, ro = left.order(), right.order()
    if lo != ro:
        return {
            "status": "not-isomorphic",
            "reason": "orders differ",
            "orders": [lo, ro],
        }
    li, ri = left.invariants(), right.invariants()
    if li != ri:
        return {
            "status": "not-isomorphic",
            "reason": "abelian invariants differ",
            "invariants": [li, ri],
        }
    if lo == 1:
        return {"status": "isomorphic", "reason": "both trivial", "order": 1}
    if lo > budget:
        return {"status": "inconclusive", "reason": "order exceeds search budget"}
    gl = left.find_generator(budget)
    gr = right.find_generator(budget)
    if (gl is None) != (gr is None):
        return {
            "status": "not-isomorphic",
            "reason": "exactly one side is cyclic over the group ring",
            "cyclic": [gl is not None, gr is not None],
        }
    if gl is None:
        return {
            "status": "inconclusive",
            "reason": "neither module is cyclic; no decision procedure applies",
        }
    al = left.annihilator_lattice(gl)
    ar = right.annihilator_lattice(gr)
    if al == ar:
        return {
            "status": "isomorphic",
            "reason": "cyclic with equal annihilator lattices",
            "order": lo,
            "invariants": li,
            "generators": [list(gl), list(gr)],
            "annihilator_hnf": [list(r) for r in al],
        }
    return {
        "status": "not-isomorphic",
        "reason": "annihilator lattices of cyclic generators differ",
        "annihilator_hnf": [[list(r) for r in al], [list(r) for r in ar]],
    }


# --------------------------------------------------------------------------
# residue modules and their predicted structure


def residue_galois_module(field, group, M):
    """(module, ring): the units of O/(M) with the conjugation action."""
    assert group.order == 2, "residue Galois modules are built for quadratic fields"
    res = ResidueRing(field, M)
    gens, rels, _ = res.structure()
    k = len(gens)
    conj_rows = [res.dlog(res.conj(g)) for g in gens]
    module = FiniteGModule(group, k, [list(r) for r in rels], [identity(k), conj_rows])
    return module, res


def _permutation_action(group):
    n = group.order
    action = []
    for g in range(n):
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            mat[i][group.mult[g][i]] = 1
        action.append(mat)
    return action


def residue_structure_target(group, ell, p, e=1):
    """Predicted Sylow-p structure of the units of O/(ell^e), as a module.

    Presented as the free rank-one module over the group ring, modulo the
    structural relation ideal at ell: for ell != p the ideal generated by
    p^v, (ell - Frobenius) and (1 - inertia average), where p^v is the
    p-part of ell^f - 1 and f the residue degree; for ell = p (which must
    be unramified here) the ideal generated by p^(e-1).
    """
    n = group.order
    assert group.order % p != 0, "p must not divide the degree"
    ram = ramification(group, ell)
    action = _permutation_action(group)

    def element_rows(theta, pk):
        coeffs = lift_coefficients_mod(theta, pk)
        rows = []
        for g in range(n):
            row = [0] * n
            for h, c in enumerate(coeffs):
                row[group.mult[h][g]] += c
            rows.append(row)
        return rows

    if ell != p:
        f = ram.residue_degree_order()
        v = valuation(ell**f - 1, p)
        rows = [[p**v if j == i else 0 for j in range(n)] for i in range(n)]
        if v > 0:
            frob = basis_element(group, ram.frobenius)
            rows += element_rows(ell * one_element(group) - frob, p**v)
            rows += element_rows(one_element(group) - ram.average(), p**v)
    else:
        assert ram.inertia == (0,), "the residue prime must be unramified"
        assert e >= 1
        rows = [[p ** (e - 1) if j == i else 0 for j in range(n)] for i in range(n)]
    return FiniteGModule(group, n, rows, action)


# --------------------------------------------------------------------------
# ray class groups of real quadratic fields


def _prime_smooth_vector(field, q, r):
    """(vec, z): a field element z (possibly fractional) whose ideal equals
    the prime (q, omega - r) times prod(base^vec) over the class-group base
    generators, with vec zero at the generators above q itself.

    Scans small integral candidates in the prime whose norm is supported on
    the base primes and q, then strips rational powers of q so the named
    prime appears with exponent exactly one.
    """
    cl = field.class_group()
    base_primes = sorted({p for p, _ in cl.gens})
    ramified = field.chi(q) == 0
    for bound in (12, 24, 48, 192):
        for b in range(0, bound + 1):
            for a in range(-bound, bound + 1):
                if a == 0 and b == 0:
                    continue
                if (a + b * r) % q != 0:
                    continue
                z = field.from_omega_coords(a, b)
                nrm = abs(int(z.norm()))
                if nrm == 0:
                    continue
                tot = valuation(nrm, q)
                rest = nrm // q**tot
                for p in base_primes:
                    if p != q:
                        while rest % p == 0:
                            rest //= p
                if rest != 1:
                    continue
                if ramified:
                    if tot % 2 == 0:
                        continue
                    drop = (tot - 1) // 2
                else:
                    e = field.prime_valuation(z, q, r)
                    if 2 * e - tot != 1:
                        continue
                    drop = tot - e
                vec = [
                    0 if p == q else field.prime_valuation(z, p, rp)
                    for p, rp in cl.gens
                ]
                if drop:
                    z = z / field.element(q**drop)
                check = q * math.prod(p**k for (p, _), k in zip(cl.gens, vec))
                assert check == nrm // q ** (2 * drop), (
                    "prime factorization of the witness is off"
                )
                return vec, z
    raise AssertionError(
        "no smooth witness found for the prime (%d, w - %d)" % (q, r)
    )


def _residue_of_fraction(res, z):
    """Image in O/(M) of a field element whose ideal is coprime to M."""
    a, b = z.omega_coords()
    den = math.lcm(a.denominator, b.denominator)
    assert math.gcd(den, res.M) == 1, "denominator shares a factor with the modulus"
    num = res.reduce(z * den)
    return res.mul(num, res.inverse((den % res.M, 0)))


class RayClassGroup:
    """The ray class group of a real quadratic field modulo a positive integer.

    Generators of the underlying module: first the images of the residue
    unit generators under the connecting map u -> class of (alpha_u), then
    the classes of chosen coprime prime ideals generating the ideal class
    group.  All relations carry exact principalization witnesses; the
    constructor recounts the order against
    h * |(O/M)^*| / |image of the global units| and asserts agreement.
    """

    def __init__(self, field, group, modulus):
        assert group.order == 2
        assert group.m == field.D, "group must be built on the field discriminant"
        assert modulus >= 1
        self.field = field
        self.group = group
        self.modulus = modulus
        self.cl = field.class_group()
        self.residue = ResidueRing(field, modulus)
        self.res_gens, res_rels, _ = self.residue.structure()
        t = len(self.res_gens)

        self.class_primes = self._choose_class_primes()
        s = len(self.class_primes)
        self._vec_rows = [list(vec) for (_, _, vec, _) in self.class_primes]

        rows = [list(r) + [0] * s for r in res_rels]
        for u in (field.element(-1), field.fundamental_unit()):
            rows.append(self._residue_dlog(u) + [0] * s)

        # relations among the chosen prime classes, with exact witnesses
        self.class_relations = []
        if s:
            for r in preimage_lattice(self._vec_rows, self.cl.relations):
                w = self._class_relation_witness(r)
                self.class_relations.append((list(r), w))
                rows.append([-c for c in self._residue_dlog(w)] + list(r))

        action = [identity(t + s), self._conj_action(t, s)]
        self.module = FiniteGModule(group, t + s, rows, action)
        self._recount()

    # ----- construction helpers

    def _choose_class_primes(self):
        """Split primes coprime to the modulus whose classes generate Cl."""
        if self.cl.order == 1:
            return []
        field = self.field
        L = [list(r) for r in self.cl.relations]
        chosen = []
        vecs = []
        q = 2
        while q < 1000:
            if math.gcd(q, self.modulus) == 1 and field.chi(q) == 1:
                r = field.prime_roots(q)[0]
                vec, z = _prime_smooth_vector(field, q, r)
                if not _in_lattice(vec, vecs + L):
                    chosen.append((q, r, vec, z))
                    vecs.append(list(vec))
                    if math.prod(smith_diagonal(vecs + L)) == 1:
                        return chosen
            q += 1
            while not is_prime(q):
                q += 1
        raise AssertionError("could not generate the class group with coprime primes")

    def _class_relation_witness(self, r):
        """Exact generator of prod(primes^r) for a class relation row r."""
        lam = [0] * len(self.cl.gens)
        w = self.field.one()
        for coeff, (q, root, vec, z) in zip(r, self.class_primes):
            if coeff:
                w = w * z**coeff
                lam = [a - coeff * b for a, b in zip(lam, vec)]
        head = self.cl.principalize(lam)
        assert head is not None, "relation row is not actually a relation"
        return w * head

    def _residue_dlog(self, z):
        return list(self.residue.dlog(_residue_of_fraction(self.residue, z)))

    def _conj_action(self, t, s):
        res = self.residue
        rows = []
        for g in self.res_gens:
            rows.append(list(res.dlog(res.conj(g))) + [0] * s)
        for j, (q, root, vec, z) in enumerate(self.class_primes):
            row = self._residue_dlog(self.field.element(q)) + [0] * s
            row[t + j] -= 1
            rows.append(row)
        return rows

    def _recount(self):
        res = self.residue
        rels = [list(r) for r in res.structure()[1]]
        if not self.res_gens:
            unit_image = 1
        else:
            urows = [
                self._residue_dlog(self.field.element(-1)),
                self._residue_dlog(self.field.fundamental_unit()),
            ]
            K = hnf(preimage_lattice(urows, rels))
            assert len(K) == 2
            unit_image = K[0][0] * K[1][1]
        assert res.unit_count() % unit_image == 0
        expected = self.cl.order * res.unit_count() // unit_image
        got = self.module.order()
        assert got == expected, (
            "ray class order recount failed: module says %d, counting says %d"
            % (got, expected)
        )

    # ----- maps in and out

    def connecting(self, u):
        """Module vector of the class of (alpha) for alpha with residue u."""
        s = len(self.class_primes)
        return self.module.reduce(list(self.residue.dlog(u)) + [0] * s)

    def principal_vector(self, z):
        """Module vector of the class of the principal ideal (z)."""
        return self.connecting(_residue_of_fraction(self.residue, z))

    def prime_class(self, q, r=None):
        """Module vector of the class of a prime over q (coprime to the modulus).

        For split or ramified q, r names the prime (q, omega - r); for
        inert q, r is ignored and the class is that of (q).
        """
        field = self.field
        assert math.gcd(q, self.modulus) == 1, "prime must be coprime to the modulus"
        if field.chi(q) == -1:
            return self.principal_vector(field.element(q))
        assert r is not None, "a root selecting the prime is required"
        vec, z = _prime_smooth_vector(field, q, r)
        s = len(self.class_primes)
        if s:
            x = solve(transpose(self._vec_rows + [list(r_) for r_ in self.cl.relations]), list(vec))
            assert x is not None
            x = x[:s]
        else:
            x = []
        mu = [-a for a in vec]
        w = z
        for xi, (_, _, vj, zj) in zip(x, self.class_primes):
            if xi:
                mu = [a + xi * b for a, b in zip(mu, vj)]
                w = w * zj**-xi
        head = self.cl.principalize(mu)
        assert head is not None
        w = w * head
        base = self.principal_vector(w)
        tail = [0] * len(self.res_gens) + list(x)
        return self.module.add(base, tail)

    def prime_class_of_norm_factorization(self, z):
        """Sum of prime-class vectors over the factorization of (z).

        For elements coprime to the modulus; must agree with
        `principal_vector(z)` (used as a consistency check on the section).
        """
        field = self.field
        total = self.module.zero()
        nrm = abs(int(z.norm()))
        assert nrm != 0
        for p, e in factorize(nrm):
            assert math.gcd(p, self.modulus) == 1
            ch = field.chi(p)
            if ch == -1:
                assert e % 2 == 0
                total = self.module.add(
                    total, self.module.scale(e // 2, self.prime_class(p))
                )
            elif ch == 0:
                root = field.prime_roots(p)[0]
                total = self.module.add(
                    total, self.module.scale(e, self.prime_class(p, root))
                )
            else:
                r1, r2 = field.prime_roots(p)
                v1 = field.prime_valuation(z, p, r1)
                for mult, root in ((v1, r1), (e - v1, r2)):
                    if mult:
                        total = self.module.add(
                            total, self.module.scale(mult, self.prime_class(p, root))
                        )
        return total

    def __repr__(self):
        return "RayClassGroup(D=%d, modulus=%d, order=%d)" % (
            self.field.D,
            self.modulus,
            self.module.order(),
        )
