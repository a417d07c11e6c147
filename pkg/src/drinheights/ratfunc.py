"""Exact univariate polynomials and rational functions over F_q.

Coefficients are canonical int encodings of field elements (see
:mod:`drinheights.gf`); a :class:`Poly` keeps them trimmed, constant term
first.  A :class:`RatFunc` is always reduced with a monic denominator, and 0
is represented as 0/1.  Factorization into irreducibles (squarefree split +
distinct degree + Cantor-Zassenhaus equal degree) is the engine behind the
finite places of F_q(t).
"""

import math
import random

NEG_INF = float("-inf")


class Poly:
    """Dense polynomial over a finite field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:n])

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (len(self.coeffs), self.coeffs)

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __sub__(self, other):
        f = self.field
        out = [f.neg(c) for c in other.coeffs]
        if len(out) < len(self.coeffs):
            out.extend([0] * (len(self.coeffs) - len(out)))
        for i, c in enumerate(self.coeffs):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.field.char
            return self.scale(c)
        return Poly(self.field, self.field.poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by the field element with encoding c."""
        if c == 0:
            return Poly.zero(self.field)
        f = self.field
        return Poly(f, [f.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other):
        q, r = self.field.poly_divmod(list(self.coeffs), list(other.coeffs))
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def gcd(self, other):
        return Poly(self.field, self.field.poly_gcd(list(self.coeffs), list(other.coeffs)))

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        inv = self.field.inv(self.lc)
        return self.scale(inv)

    def shift(self, n):
        """Multiply by x**n."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def reverse(self):
        """Reciprocal polynomial x^deg * f(1/x)."""
        return Poly(self.field, tuple(reversed(self.coeffs)))

    def derivative(self):
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f.mul(i % f.char, self.coeffs[i]))
        return Poly(f, out)

    def eval_fq(self, a):
        """Evaluate at the field element with encoding a; returns an encoding."""
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def subs(self, value):
        """Evaluate at a Poly or RatFunc by Horner."""
        if isinstance(value, Poly):
            acc = Poly.zero(self.field)
            for c in reversed(self.coeffs):
                acc = acc * value + Poly.const(self.field, c)
            return acc
        acc = RatFunc.zero(self.field)
        const = RatFunc.const
        for c in reversed(self.coeffs):
            acc = acc * value + const(self.field, c)
        return acc

    def spread(self, e):
        """f(x^(q^e)), which equals f**(q^e) since the coefficients lie in F_q."""
        if e == 0 or self.is_zero():
            return self
        step = self.field.order**e
        out = [0] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[step * i] = c
        return Poly(self.field, out)

    def pth_root(self):
        """Inverse of f -> f**p; requires all exponents divisible by p."""
        f = self.field
        p = f.char
        e = f.order // p
        out = []
        for i in range(0, len(self.coeffs), p):
            out.append(f.pow_(self.coeffs[i], e))
        return Poly(f, out)

    def to_string(self, var="t"):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xpow = var if i == 1 else "%s^%d" % (var, i)
                terms.append(xpow if c == 1 else "%d*%s" % (c, xpow))
        return "+".join(terms)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "Poly(%s)" % self.to_string()


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.field)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
                if not den.is_monic():
                    inv = num.field.inv(den.lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field), Poly.one(field), _reduced=True)

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field), Poly.one(field), _reduced=True)

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c), Poly.one(field), _reduced=True)

    @classmethod
    def x(cls, field):
        return cls(Poly.x(field), Poly.one(field), _reduced=True)

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.one(p.field), _reduced=True)

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("%s is not constant" % self)
        return self.num.coeffs[0] if self.num.coeffs else 0

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def _add_reduced(self, other, sign):
        # a/b + c/d with g = gcd(b, d): the only possible common factor of
        # a d' + c b' and b d' is inside g, so one small gcd finishes the job
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b.is_one():
            g = None
        else:
            g = b.gcd(d)
        if g is None or g.is_one():
            num = a * d + c * b if sign > 0 else a * d - c * b
            return RatFunc(num, b * d, _reduced=True) if num else RatFunc.zero(self.field)
        b1 = b // g
        d1 = d // g
        num = a * d1 + c * b1 if sign > 0 else a * d1 - c * b1
        if num.is_zero():
            return RatFunc.zero(self.field)
        h = num.gcd(g)
        if h.is_one():
            return RatFunc(num, b * d1, _reduced=True)
        return RatFunc(num // h, (b // h) * d1, _reduced=True)

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.field, other % self.field.char)
        return self._add_reduced(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.field, other % self.field.char)
        return self._add_reduced(other, -1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.field.char
            return self.scale(c)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.field)
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = a.gcd(d) if not d.is_one() else None
        if g1 is not None and not g1.is_one():
            a, d = a // g1, d // g1
        g2 = c.gcd(b) if not b.is_one() else None
        if g2 is not None and not g2.is_one():
            c, b = c // g2, b // g2
        num = a * c
        den = b * d
        if not num.is_zero() and not den.is_monic():
            inv = self.field.inv(den.lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        inv = self.field.inv(self.num.lc)
        return RatFunc(self.den.scale(inv), self.num.scale(inv), _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, int):
            c = pow(other % self.field.char, -1, self.field.char)
            return self.scale(c)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den**(-e), self.num**(-e))
        return RatFunc(self.num**e, self.den**e, _reduced=True) if e != 1 else self

    def scale(self, c):
        """Multiply by the field element with encoding c."""
        if c == 0:
            return RatFunc.zero(self.field)
        return RatFunc(self.num.scale(c), self.den, _reduced=True)

    def pow_q(self, e):
        """self**(q^e) via exponent spreading; stays reduced."""
        return RatFunc(self.num.spread(e), self.den.spread(e), _reduced=True)

    def subs(self, value):
        """Substitute a RatFunc for the variable."""
        num = self.num.subs(value)
        den = self.den.subs(value)
        if den.is_zero():
            raise ZeroDivisionError("substitution maps denominator to zero")
        return num / den

    def weil_height(self):
        """max(deg num, deg den); 0 for the zero function."""
        if self.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    def to_string(self, var="t"):
        if self.den.is_one():
            return self.num.to_string(var)
        ns = self.num.to_string(var)
        ds = self.den.to_string(var)
        if len(self.num.coeffs) - self.num.coeffs.count(0) > 1:
            ns = "(%s)" % ns
        if len(self.den.coeffs) - self.den.coeffs.count(0) > 1:
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "RatFunc(%s)" % self.to_string()


# --- parsing ---

class ParseError(ValueError):
    pass


def _tokenize(s):
    tokens = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("int", int(s[i:j]), i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            tokens.append(("name", s[i:j], i))
            i = j
        elif c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
        else:
            raise ParseError("unexpected character %r at position %d" % (c, i))
    tokens.append(("end", None, len(s)))
    return tokens


class _Parser:
    def __init__(self, field, var, s):
        self.field = field
        self.var = var
        self.tokens = _tokenize(s)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r at position %d" % (kind, tok[2]))
        return tok

    def parse(self):
        value = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input at position %d" % tok[2])
        return value

    def sum(self):
        if self.peek()[0] == "-":
            self.next()
            value = -self.product()
        else:
            value = self.product()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self):
        value = self.power()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero")
                value = value / rhs
        return value

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            neg = False
            if self.peek()[0] == "-":
                self.next()
                neg = True
            tok = self.expect("int")
            e = -tok[1] if neg else tok[1]
            return base**e
        return base

    def atom(self):
        tok = self.next()
        if tok[0] == "int":
            # literals are canonical encodings 0..q-1 (for prime fields this
            # is the usual residue 0..p-1)
            return RatFunc.const(self.field, tok[1] % self.field.order)
        if tok[0] == "name":
            if tok[1] != self.var:
                raise ParseError("unknown symbol %r at position %d (variable is %r)"
                                 % (tok[1], tok[2], self.var))
            return RatFunc.x(self.field)
        if tok[0] == "(":
            value = self.sum()
            self.expect(")")
            return value
        raise ParseError("unexpected token at position %d" % tok[2])


def parse_ratfunc(field, s, var="t"):
    """Parse strings like "t^2+2*t+1" or "(t^2+1)/t^3" into a RatFunc."""
    return _Parser(field, var, s).parse()


def parse_poly(field, s, var="t"):
    r = parse_ratfunc(field, s, var)
    if not r.is_polynomial():
        raise ParseError("%r is not a polynomial" % s)
    return r.num


# --- factorization ---

def is_irreducible(f):
    from drinheights.gf import _poly_is_irreducible
    return _poly_is_irreducible(list(f.coeffs), f.field)


def _squarefree_decomposition(f):
    """Multiset {squarefree monic: multiplicity} for monic f, char-p aware."""
    field = f.field
    p = field.char
    out = {}
    if f.degree == 0:
        return out
    d = f.derivative()
    if d.is_zero():
        for g, m in _squarefree_decomposition(f.pth_root()).items():
            out[g] = out.get(g, 0) + p * m
        return out
    c = f.gcd(d)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if not fac.is_one():
            out[fac] = out.get(fac, 0) + i
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, m in _squarefree_decomposition(c.pth_root()).items():
            out[g] = out.get(g, 0) + p * m
    return out


def _distinct_degree(f):
    """Split squarefree monic f into [(product of its degree-d factors, d)]."""
    field = f.field
    q = field.order
    out = []
    x = Poly.x(field)
    h = x
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = Poly(field, field.poly_powmod(list(h.coeffs), q, list(rest.coeffs)))
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest if rest.degree > 0 else h
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f, d, rng):
    """One nontrivial monic factor of f, a product of >= 2 irreducibles of degree d."""
    field = f.field
    q = field.order
    n = f.degree
    x = Poly.x(field)
    while True:
        a = Poly(field, [rng.randrange(q) for _ in range(n)])
        if a.degree <= 0:
            continue
        g = f.gcd(a)
        if not g.is_one() and g.degree < n:
            return g
        if q % 2 == 1:
            b = Poly(field, field.poly_powmod(list(a.coeffs), (q**d - 1) // 2,
                                              list(f.coeffs)))
            g = f.gcd(b - Poly.one(field))
        else:
            # char 2: use the absolute trace map of F_{q^d} over F_2
            k = q.bit_length() - 1
            tr = Poly.zero(field)
            b = a % f
            for _ in range(k * d):
                tr = (tr + b) % f
                b = Poly(field, field.poly_powmod(list(b.coeffs), 2, list(f.coeffs)))
            g = f.gcd(tr)
        if not g.is_one() and g.degree < n:
            return g


def _equal_degree(f, d, rng):
    if f.degree == d:
        return [f]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f):
    """Factor a nonzero Poly: returns (unit encoding, [(irreducible monic, mult)]).

    The factor list is sorted; splitting randomness is seeded per call, so the
    whole computation is reproducible.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc
    f = f.monic()
    rng = random.Random(0x5EED ^ hash(f.coeffs) & 0xFFFFFFFF)
    out = []
    for sqf, mult in _squarefree_decomposition(f).items():
        for prod, d in _distinct_degree(sqf):
            for irr in _equal_degree(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: t[0].sort_key())
    return unit, out


def ord_at(f, P):
    """Largest e with P**e dividing f, for f != 0 and irreducible monic P."""
    if f.is_zero():
        raise ValueError("ord of the zero polynomial")
    e = 0
    while True:
        q, r = divmod(f, P)
        if not r.is_zero():
            return e
        f = q
        e += 1


def monic_polys(field, degree):
    """All monic polynomials of the given degree, in counter order."""
    q = field.order
    for idx in range(q**degree):
        coeffs = []
        v = idx
        for _ in range(degree):
            v, r = divmod(v, q)
            coeffs.append(r)
        coeffs.append(1)
        yield Poly(field, coeffs)


def irreducible_monics(field, degree):
    for f in monic_polys(field, degree):
        if is_irreducible(f):
            yield f
