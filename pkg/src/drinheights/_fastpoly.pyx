# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense polynomial arithmetic over a prime field, compiled backend.

Same contract as ``_purepoly``: coefficient lists of ints in ``[0, p)``,
constant term first, empty list for zero, trimmed output.  Coefficients must
fit a C long long; the library caps field sizes well below that.
"""

from libc.stdlib cimport malloc, free

BACKEND = "c"

ctypedef long long ll

# products are < p*p <= 2**40 for the documented field cap (q < 2**20), so a
# signed 64-bit accumulator can absorb ~2**22 terms before a reduction is due
DEF ACC_GUARD = 4611686018427387904  # 2**62


cdef ll* _to_c(list a, Py_ssize_t* n) except NULL:
    cdef Py_ssize_t i, m = len(a)
    while m and a[m - 1] == 0:
        m -= 1
    n[0] = m
    cdef ll* buf = <ll*> malloc((m if m else 1) * sizeof(ll))
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        buf[i] = a[i]
    return buf


cdef list _to_py(ll* a, Py_ssize_t n):
    while n and a[n - 1] == 0:
        n -= 1
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = a[i]
    return out


def poly_mul(list a, list b, long long p):
    cdef Py_ssize_t na, nb, i, j
    cdef ll ai
    cdef ll* ca = _to_c(a, &na)
    cdef ll* cb
    cdef ll* out
    try:
        cb = _to_c(b, &nb)
    except:
        free(ca)
        raise
    if na == 0 or nb == 0:
        free(ca); free(cb)
        return []
    out = <ll*> malloc((na + nb - 1) * sizeof(ll))
    if out == NULL:
        free(ca); free(cb)
        raise MemoryError()
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        ai = ca[i]
        if ai != 0:
            for j in range(nb):
                out[i + j] += ai * cb[j]
                if out[i + j] >= ACC_GUARD:
                    out[i + j] %= p
    for i in range(na + nb - 1):
        out[i] %= p
    result = _to_py(out, na + nb - 1)
    free(ca); free(cb); free(out)
    return result


cdef ll _invmod(ll a, ll p):
    # Fermat inverse via binary exponentiation
    cdef ll result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef Py_ssize_t _divmod_inplace(ll* r, Py_ssize_t nr, ll* b, Py_ssize_t nb,
                                ll* q, long long p):
    # reduces r in place, fills q (length nr-nb+1) when q != NULL,
    # returns the trimmed length of the remainder
    cdef Py_ssize_t k, j
    cdef ll c, inv_lead = _invmod(b[nb - 1], p)
    while nr >= nb:
        c = (r[nr - 1] * inv_lead) % p
        k = nr - nb
        if q != NULL:
            q[k] = c
        if c != 0:
            for j in range(nb):
                r[k + j] = (r[k + j] - c * b[j]) % p
                if r[k + j] < 0:
                    r[k + j] += p
        nr -= 1
        while nr and r[nr - 1] == 0:
            nr -= 1
    return nr


def poly_divmod(list a, list b, long long p):
    cdef Py_ssize_t na, nb, nr
    cdef ll* cb = _to_c(b, &nb)
    if nb == 0:
        free(cb)
        raise ZeroDivisionError("polynomial division by zero")
    cdef ll* cr = _to_c(a, &na)
    cdef ll* cq = NULL
    if na < nb:
        rem = _to_py(cr, na)
        free(cb); free(cr)
        return [], rem
    cq = <ll*> malloc((na - nb + 1) * sizeof(ll))
    if cq == NULL:
        free(cb); free(cr)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(na - nb + 1):
        cq[i] = 0
    nr = _divmod_inplace(cr, na, cb, nb, cq, p)
    quo = _to_py(cq, na - nb + 1)
    rem = _to_py(cr, nr)
    free(cb); free(cr); free(cq)
    return quo, rem


def poly_mod(list a, list b, long long p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(list a, list b, long long p):
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    cdef Py_ssize_t na, nb
    cdef ll* ca = _to_c(a, &na)
    cdef ll* cb
    try:
        cb = _to_c(b, &nb)
    except:
        free(ca)
        raise
    cdef ll* tmp
    cdef Py_ssize_t ntmp
    cdef ll inv
    cdef Py_ssize_t i
    while nb:
        na = _divmod_inplace(ca, na, cb, nb, NULL, p)
        tmp = ca; ca = cb; cb = tmp
        ntmp = na; na = nb; nb = ntmp
    if na and ca[na - 1] != 1:
        inv = _invmod(ca[na - 1], p)
        for i in range(na):
            ca[i] = (ca[i] * inv) % p
    result = _to_py(ca, na)
    free(ca); free(cb)
    return result


def poly_powmod(list a, object e, list mod, long long p):
    """a**e modulo mod, for arbitrarily large integer e >= 0."""
    cdef list result = [1]
    cdef list base = poly_mod(a, mod, p)
    cdef Py_ssize_t nm = len(mod)
    while nm and mod[nm - 1] == 0:
        nm -= 1
    if nm <= 1:
        return []
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result
