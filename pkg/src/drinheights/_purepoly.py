"""Dense polynomial arithmetic over a prime field, pure-Python backend.

A polynomial is a list of ints in ``[0, p)``, constant term first; the zero
polynomial is the empty list.  Every function accepts untrimmed input and
returns a trimmed list.  This module mirrors the API of the compiled
``_fastpoly`` extension and is used when the extension is unavailable (or
when ``DRINHEIGHTS_PURE`` is set).
"""

BACKEND = "python"


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    del c[n:]
    return c


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    for k in range(len(out)):
        out[k] %= p
    return _trim(out)


def poly_divmod(a, b, p):
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db)
    while len(r) - 1 >= db and r:
        c = (r[-1] * inv_lead) % p
        k = len(r) - 1 - db
        q[k] = c
        for j in range(db + 1):
            r[k + j] = (r[k + j] - c * b[j]) % p
        _trim(r)
    return _trim(q), r


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a and a[-1] != 1:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def poly_powmod(a, e, mod, p):
    """a**e modulo mod, for arbitrarily large integer e >= 0."""
    if len(_trim(list(mod))) <= 1:
        return []
    result = [1]
    base = poly_mod(a, mod, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result
