"""Effective torsion theory: decision, annihilators, kernels, enumeration.

Torsion points can only have poles inside the bad set S, with order at most
floor(-min{0, M_v}) at each v in S (a deeper pole escapes under phi_t and
forces a positive local height).  That pole lattice is a finite-dimensional
F_q-space, which makes everything here exact linear algebra:

* the torsion decision tests F_q-linear dependence of the first
  r N |S| + 1 iterates of x (leaving the lattice proves non-torsion early);
* kernel_in_K solves phi_b = 0 on a basis of the lattice.
"""

import math

from drinheights import gf
from drinheights.errors import InseparableKernelError
from drinheights.places import FinitePlace, is_constant
from drinheights.ratfunc import Poly, RatFunc, irreducible_monics

_lcm_cache = {}


def torsion_lattice(module):
    """(Q, m_inf): torsion points are n(t)/Q with deg n <= deg Q + m_inf.

    Q collects P^m over the finite bad places, m = floor(-min{0, M_v}); m_inf
    is the matching bound at infinity (0 when infinity has good reduction).
    """
    module._require_monic()
    Q = Poly.one(module.field)
    m_inf = 0
    for v in module.bad_reduction_set():
        lam = min(0, module.reduction_data(v).M)
        m = math.floor(-lam)
        if isinstance(v, FinitePlace):
            Q = Q * v.P**m
        else:
            m_inf = m
    return Q, m_inf


def in_torsion_lattice(module, y, lattice=None):
    if y.is_zero():
        return True
    Q, m_inf = lattice if lattice is not None else torsion_lattice(module)
    if not (Q % y.den).is_zero():
        return False
    return y.num.degree <= y.den.degree + m_inf


def _dependence_coeffs(vectors, field, ncols):
    """None if the vectors are independent, else (c_0..c_k) with
    sum c_j vectors[j] = 0, c_k = 1, k minimal (so all earlier are independent)."""
    echelon = []  # (pivot index, vector, combination)
    for j, vec in enumerate(vectors):
        vec = list(vec)
        comb = [0] * len(vectors)
        comb[j] = 1
        for pidx, pvec, pcomb in echelon:
            c = vec[pidx]
            if c:
                vec = [field.sub(a, field.mul(c, b)) for a, b in zip(vec, pvec)]
                comb = [field.sub(a, field.mul(c, b)) for a, b in zip(comb, pcomb)]
        pivot = next((i for i, a in enumerate(vec) if a), None)
        if pivot is None:
            return comb[:j + 1]
        inv = field.inv(vec[pivot])
        vec = [field.mul(inv, a) for a in vec]
        comb = [field.mul(inv, a) for a in comb]
        echelon.append((pivot, vec, comb))
    return None


def annihilator_of(module, x, max_degree=None):
    """Minimal monic annihilator b with phi_b(x) = 0, or None if non-torsion.

    With S nonempty the decision is F_q-linear dependence of the iterates
    x, phi_t(x), ..., phi_{t^D}(x) with D = r N |S| (both directions are part
    of the height gap theorem); the first dependence is the minimal monic
    annihilator since the annihilator ideal of x is principal.
    """
    module._require_monic()
    field = module.field
    S = module.bad_reduction_set()
    if not S:
        # torsion = constants here
        if not is_constant(x):
            return None
        if x.is_zero():
            return Poly.one(field)
        mu = module.phi_t(RatFunc.one(field)).constant_value()
        return Poly(field, [field.neg(mu), 1])

    D = max_degree if max_degree is not None else module.r * module.N_phi * len(S)
    lattice = torsion_lattice(module)
    Q, m_inf = lattice
    if not in_torsion_lattice(module, x, lattice):
        return None
    width = (Q.degree + m_inf if not Q.is_zero() else m_inf) + 1
    phi_t = module.phi_t
    iterates = []
    y = x
    for _ in range(D + 1):
        num = y.num * (Q // y.den)
        vec = list(num.coeffs) + [0] * (width - len(num.coeffs))
        iterates.append(vec)
        dep = _dependence_coeffs(iterates, field, width)
        if dep is not None:
            return Poly(field, dep)
        y = phi_t(y)
        if not in_torsion_lattice(module, y, lattice):
            return None
    return None


class TorsionCertificate:
    """Decision for one point: its minimal annihilator, or a height witness."""

    __slots__ = ("point", "annihilator", "witness")

    def __init__(self, point, annihilator, witness):
        self.point = point
        self.annihilator = annihilator
        self.witness = witness

    @property
    def torsion(self):
        return self.annihilator is not None

    def __repr__(self):
        if self.torsion:
            return "TorsionCertificate(torsion, b = %s)" % self.annihilator
        return "TorsionCertificate(non-torsion, %r)" % self.witness


def is_torsion(module, x, n_max=None):
    from drinheights.heights import DEFAULT_N_MAX, check_t2mwg
    b = annihilator_of(module, x)
    if b is not None:
        return TorsionCertificate(x, b, None)
    witness = check_t2mwg(module, x, n_max if n_max is not None else DEFAULT_N_MAX)
    return TorsionCertificate(x, None, witness)


class AnnihilatorBound:
    """Corollary data: the universal annihilator of all rational torsion."""

    __slots__ = ("constants_only", "D", "b_lcm")

    def __init__(self, constants_only, D, b_lcm):
        self.constants_only = constants_only
        self.D = D
        self.b_lcm = b_lcm

    def __repr__(self):
        if self.constants_only:
            return "AnnihilatorBound(torsion = constants F_q)"
        return "AnnihilatorBound(D=%d, b_lcm=%s)" % (self.D, self.b_lcm)


def annihilator_bound(module):
    """D = r N |S| and the lcm of all monic polynomials of degree <= D.

    With S empty the torsion module is exactly the constants F_q, and that
    description is returned instead.
    """
    module._require_monic()
    S = module.bad_reduction_set()
    if not S:
        return AnnihilatorBound(True, None, None)
    D = module.r * module.N_phi * len(S)
    key = (module.field, D)
    if key not in _lcm_cache:
        b = Poly.one(module.field)
        for d in range(1, D + 1):
            for P in irreducible_monics(module.field, d):
                b = b * P**(D // d)
        _lcm_cache[key] = b
    return AnnihilatorBound(False, D, _lcm_cache[key])


def kernel_in_K(module, b):
    """All roots in K of the additive polynomial phi_b, as a sorted list.

    Roots are torsion, so they lie in the pole lattice; solving on a lattice
    basis by linear algebra over F_q is complete.  The inseparable case
    (constant term b(a_0) = 0) is rejected.
    """
    module._require_monic()
    if b.is_zero():
        raise ValueError("kernel of phi_0 is everything")
    field = module.field
    c0 = b.subs(module.coeffs[0])
    if c0.is_zero():
        raise InseparableKernelError(
            "phi_b has constant term b(a_0) = 0, so it is inseparable "
            "(finite characteristic with t | b); its kernel in K is not "
            "computed here")
    Q, m_inf = torsion_lattice(module)
    basis = [RatFunc(Poly.x(field)**i, Q) for i in range(Q.degree + m_inf + 1)]
    images = [module.act(b, e) for e in basis]
    # write the images over one common denominator and read off coefficients
    den = Poly.one(field)
    for z in images:
        den = den * (z.den // den.gcd(z.den))
    vecs = []
    width = 0
    for z in images:
        num = z.num * (den // z.den)
        vecs.append(list(num.coeffs))
        width = max(width, len(num.coeffs))
    for vec in vecs:
        vec.extend([0] * (width - len(vec)))
    rows = [[vecs[j][i] for j in range(len(basis))] for i in range(width)]
    kernel = gf.kernel_basis(rows, field, len(basis))
    gens = []
    for coeffs in kernel:
        num = Poly(field, coeffs)
        gens.append(RatFunc(num, Q))
    roots = set()
    stack = [RatFunc.zero(field)]
    for g in gens:
        scaled = [g.scale(c) for c in field.elements()]
        stack = [s + gc for s in stack for gc in scaled]
    roots.update(stack)
    for x in roots:
        if not module.act(b, x).is_zero():
            raise AssertionError("kernel solution fails verification")
    return sorted(roots, key=lambda r: r.sort_key())


def torsion_enumerate(module):
    """The full rational torsion submodule, verified point by point."""
    module._require_monic()
    bound = annihilator_bound(module)
    if bound.constants_only:
        pts = [RatFunc.const(module.field, c) for c in module.field.elements()]
    else:
        pts = kernel_in_K(module, bound.b_lcm)
    pool = set(pts)
    phi_t = module.phi_t
    for x in pts:
        if annihilator_of(module, x) is None:
            raise AssertionError("enumerated point fails the torsion decision")
        for y in pts:
            if x + y not in pool:
                raise AssertionError("torsion module not closed under addition")
        if phi_t(x) not in pool:
            raise AssertionError("torsion module not closed under phi_t")
    return sorted(pool, key=lambda r: r.sort_key())
