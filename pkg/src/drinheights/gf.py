"""Exact arithmetic in F_q = F_{p^k} and in finite extensions F_{q^m}.

Field elements are canonically encoded as ints in ``[0, order)``: the digits
of the int in base ``|base field|`` are the coordinates with respect to the
power basis of the defining modulus.  The thin :class:`FqElem` wrapper adds
operators on top of the int encoding; polynomial coefficient lists stay raw
ints throughout the package.

Extensions can be towered (e.g. residue fields of places over F_9 are
extensions with base F_9), and the Frobenius used by additive polynomials is
always x -> x^q with q the order of the *base* of the element's field.
"""

from drinheights import _polycore

# fields larger than this are refused: every residue computation here is
# desk-scale and silent overflow of packed encodings must never happen
ORDER_CAP = 2**31


class FieldError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


class FqElem:
    """An element of a finite field, wrapping the canonical int encoding."""

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        self.field = field
        self.val = val

    def _coerce(self, other):
        # raw ints act through the canonical ring map Z -> F_q
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.val
        if isinstance(other, int):
            return other % self.field.char
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.div(self.val, v))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.val))

    def __pow__(self, e):
        return FqElem(self.field, self.field.pow_(self.val, e))

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.val))

    def frobenius(self, e=1):
        """self**(q**e) where q is the order of the field's base."""
        return FqElem(self.field, self.field.frobenius(self.val, e))

    def coords(self):
        """Coordinates over the base field, lowest power first."""
        return self.field.coords(self.val)

    def __str__(self):
        return self.field.elem_str(self.val)

    def __repr__(self):
        return "FqElem(%s, %r)" % (self.field, str(self))


class _Field:
    """Shared behaviour of PrimeField and ExtensionField."""

    def element(self, v):
        """Wrap a canonical int encoding (0 <= v < order) as an element."""
        if isinstance(v, FqElem):
            if v.field != self:
                raise FieldError("element of a different field")
            return v
        if not 0 <= v < self.order:
            raise FieldError("encoding %r out of range for %s" % (v, self))
        return FqElem(self, v)

    def from_int(self, n):
        """Image of the integer n under the ring map Z -> F_q."""
        return FqElem(self, n % self.char)

    @property
    def zero(self):
        return FqElem(self, 0)

    @property
    def one(self):
        return FqElem(self, 1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 0 if e else 1
        e %= self.order - 1
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return self is other or (isinstance(other, _Field) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())


class PrimeField(_Field):
    """The prime field F_p; it is its own base with extension degree 1."""

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError("p = %d is not prime" % p)
        self.p = p
        self.char = p
        self.order = p
        self.dim = 1
        self.base = self

    def _key(self):
        return ("prime", self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def frobenius(self, a, e=1):
        return a % self.p

    def coords(self, a):
        return [a]

    def from_coords(self, coords):
        return coords[0] % self.p if coords else 0

    def elem_str(self, a):
        return str(a)

    # dense polynomial ops over this field (coefficient lists of ints)
    def poly_mul(self, a, b):
        return _polycore.poly_mul(a, b, self.p)

    def poly_divmod(self, a, b):
        return _polycore.poly_divmod(a, b, self.p)

    def poly_gcd(self, a, b):
        return _polycore.poly_gcd(a, b, self.p)

    def poly_powmod(self, a, e, mod):
        return _polycore.poly_powmod(a, e, mod, self.p)

    def __repr__(self):
        return "GF(%d)" % self.p


class ExtensionField(_Field):
    """F_{q^m} presented as base[x]/(modulus), elements packed base-q."""

    def __init__(self, base, modulus, gen_name="g"):
        # modulus: monic coefficient list over base, degree >= 1
        modulus = _trim(list(modulus))
        m = len(modulus) - 1
        if m < 1:
            raise FieldError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if base.order**m >= ORDER_CAP:
            raise FieldError("field order %d**%d exceeds the supported range" % (base.order, m))
        if not _poly_is_irreducible(modulus, base):
            raise FieldError("reducible modulus")
        self.base = base
        self.modulus = tuple(modulus)
        self.dim = m
        self.char = base.char
        self.order = base.order**m
        self.gen_name = gen_name

    def _key(self):
        return ("ext", self.base._key(), self.modulus)

    @property
    def gen(self):
        """The class of x, i.e. the power-basis generator."""
        if self.dim > 1:
            return FqElem(self, self.base.order)
        return FqElem(self, self.base.neg(self.modulus[0]))

    def coords(self, a):
        q = self.base.order
        out = []
        for _ in range(self.dim):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def from_coords(self, coords):
        q = self.base.order
        a = 0
        for c in reversed(list(coords)):
            a = a * q + c
        return a

    def add(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords([self.base.add(x, y) for x, y in zip(ca, cb)])

    def sub(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords([self.base.sub(x, y) for x, y in zip(ca, cb)])

    def neg(self, a):
        return self.from_coords([self.base.neg(x) for x in self.coords(a)])

    def mul(self, a, b):
        prod = self.base.poly_mul(_trim(self.coords(a)), _trim(self.coords(b)))
        _, rem = self.base.poly_divmod(prod, list(self.modulus))
        return self.from_coords(rem + [0] * (self.dim - len(rem)))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self)
        return self.pow_(a, self.order - 2)

    def frobenius(self, a, e=1):
        return self.pow_(a, self.base.order**(e % self.dim))

    def elem_str(self, a):
        coords = self.coords(a)
        terms = []
        for i in range(self.dim - 1, -1, -1):
            c = coords[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c) + "*"
                terms.append(head + (self.gen_name if i == 1 else "%s^%d" % (self.gen_name, i)))
        return "+".join(terms) if terms else "0"

    # generic dense polynomial ops over this field
    def poly_mul(self, a, b):
        a, b = _trim(a), _trim(b)
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = self.add(out[i + j], self.mul(ai, bj))
        return _trim(out)

    def poly_divmod(self, a, b):
        b = _trim(b)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = _trim(list(a))
        db = len(b) - 1
        if len(r) - 1 < db:
            return [], r
        inv_lead = self.inv(b[-1])
        q = [0] * (len(r) - db)
        while r and len(r) - 1 >= db:
            c = self.mul(r[-1], inv_lead)
            k = len(r) - 1 - db
            q[k] = c
            for j in range(db + 1):
                r[k + j] = self.sub(r[k + j], self.mul(c, b[j]))
            r = _trim(r)
        return _trim(q), r

    def poly_gcd(self, a, b):
        a, b = _trim(list(a)), _trim(list(b))
        while b:
            a, b = b, self.poly_divmod(a, b)[1]
        if a and a[-1] != 1:
            inv = self.inv(a[-1])
            a = [self.mul(c, inv) for c in a]
        return a

    def poly_powmod(self, a, e, mod):
        if len(_trim(list(mod))) <= 1:
            return []
        result = [1]
        base = self.poly_divmod(a, mod)[1]
        while e > 0:
            if e & 1:
                result = self.poly_divmod(self.poly_mul(result, base), mod)[1]
            e >>= 1
            if e:
                base = self.poly_divmod(self.poly_mul(base, base), mod)[1]
        return result

    def __repr__(self):
        return "GF(%d)" % self.order


def _sub_x(xq, field):
    # xq - x as a coefficient list
    diff = list(xq) + [0] * (2 - len(xq))
    diff[1] = field.sub(diff[1], 1)
    return _trim(diff)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_is_irreducible(coeffs, field):
    """Rabin's test over `field` for a monic-or-not coefficient list."""
    coeffs = _trim(list(coeffs))
    n = len(coeffs) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    q = field.order
    x = [0, 1]
    if _sub_x(field.poly_powmod(x, q**n, coeffs), field):
        return False
    for ell in _prime_divisors(n):
        diff = _sub_x(field.poly_powmod(x, q**(n // ell), coeffs), field)
        if len(field.poly_gcd(diff, coeffs)) - 1 != 0:
            return False
    return True


def _default_modulus(base, k):
    """First irreducible monic of degree k over base, in counter order."""
    q = base.order
    for idx in range(q**k):
        coeffs = []
        v = idx
        for _ in range(k):
            v, r = divmod(v, q)
            coeffs.append(r)
        coeffs.append(1)
        if _poly_is_irreducible(coeffs, base):
            return coeffs
    raise FieldError("no irreducible modulus found")  # unreachable


def finite_field(p, k=1, modulus=None):
    """Create F_{p^k}; `modulus` is a coefficient list over F_p (monic, deg k).

    Without a modulus the deterministic smallest irreducible (lexicographic in
    the coefficient counter order) is selected, so residues are reproducible.
    """
    if not _is_prime(p):
        raise FieldError("p = %d is not prime" % p)
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k >= ORDER_CAP:
        raise FieldError("field order %d**%d exceeds the supported range" % (p, k))
    prime = PrimeField(p)
    if modulus is not None:
        mod = [c % p for c in modulus]
        if len(_trim(mod)) - 1 != k:
            raise FieldError("modulus degree does not match k = %d" % k)
        if k == 1:
            return prime
        return ExtensionField(prime, mod)
    if k == 1:
        return prime
    return ExtensionField(prime, _default_modulus(prime, k))


# --- linear algebra over a finite field (small dense systems) ---

def rref(rows, field, ncols):
    """Row-reduce in place; returns (reduced rows, pivot column list)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def kernel_basis(rows, field, ncols):
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    reduced, pivots = rref(rows, field, ncols)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(reduced[i][fc])
        basis.append(vec)
    return basis


def solve_linear(rows, rhs, field, ncols):
    """One solution of A x = rhs, or None if the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, field, ncols + 1)
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i][ncols]
    return x


# --- additive (F_q-linear) polynomial equations over F_{q^m} ---

def _additive_matrix(coeffs, field):
    """Matrix over field.base of X -> sum c_j X^(q^i_j) in power-basis coords."""
    m = field.dim
    cols = []
    for s in range(m):
        e_s = field.from_coords([1 if i == s else 0 for i in range(m)])
        acc = 0
        for c, i in coeffs:
            acc = field.add(acc, field.mul(c.val, field.frobenius(e_s, i)))
        cols.append(field.coords(acc))
    return [[cols[s][t] for s in range(m)] for t in range(m)]


def _check_additive_args(coeffs):
    if not coeffs:
        raise ValueError("no coefficients given")
    field = coeffs[0][0].field
    for c, i in coeffs:
        if c.field is not field:
            raise FieldError("coefficients from different fields")
        if i < 0:
            raise ValueError("Frobenius exponent must be >= 0")
    if all(c.val == 0 for c, _ in coeffs):
        raise ValueError("all coefficients are zero")
    return field


def additive_kernel(coeffs):
    """F_q-basis of the solutions of sum_j c_j X^(q^i_j) = 0 in F_{q^m}.

    `coeffs` is a sequence of (FqElem, exponent) pairs, all in one field;
    q is the order of that field's base.
    """
    field = _check_additive_args(coeffs)
    rows = _additive_matrix(coeffs, field)
    basis = kernel_basis(rows, field.base, field.dim)
    return [field.element(field.from_coords(v)) for v in basis]


def span(field, basis):
    """All F_q-combinations of basis elements (including 0).

    Base scalars c < q coincide with their canonical encoding in the
    extension, so field.mul applies them directly.
    """
    elems = [field.element(0)]
    for b in basis:
        scalars = [field.element(field.mul(b.val, c)) for c in field.base.elements()]
        elems = [e + s for e in elems for s in scalars]
    return elems


def additive_preimages(coeffs, target):
    """All solutions of sum_j c_j X^(q^i_j) = target in F_{q^m} (may be [])."""
    field = _check_additive_args(coeffs)
    if target.field is not field:
        raise FieldError("target from a different field")
    rows = _additive_matrix(coeffs, field)
    part = solve_linear(rows, target.coords(), field.base, field.dim)
    if part is None:
        return []
    x0 = field.element(field.from_coords(part))
    kernel = additive_kernel(coeffs)
    return sorted((x0 + k for k in span(field, kernel)), key=lambda e: e.val)


def frobenius(a, e=1):
    """a**(q**e) for a in F_{q^m}, with q the order of the field's base."""
    return a.frobenius(e)
