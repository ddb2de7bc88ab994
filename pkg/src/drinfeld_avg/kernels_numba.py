"""JIT kernels for the hot loops (prime enumeration, batch charpolys,
isomorphism orbits, class-number sweeps).

All kernels work on integer codes: an F_q element is an int in [0, q) acted
on through the q-by-q operation tables, a polynomial over F_q is either a
little-endian int16 digit array or its base-q int64 packing, and an element
of A/pA is the packing of its representative of degree < deg p.

The numpy backend mirrors every signature bit-for-bit.
"""

from __future__ import annotations

import numpy as np
from numba import njit

JIT_OPTS = dict(cache=True, nogil=True)


# ---------------------------------------------------------------------------
# digit-array polynomial helpers over F_q


@njit(**JIT_OPTS)
def _decode(code, q, out):
    """Write base-q digits of code into out; return the degree (-1 for 0)."""
    n = out.shape[0]
    for i in range(n):
        out[i] = 0
    d = -1
    i = 0
    while code > 0:
        out[i] = code % q
        code //= q
        if out[i] != 0:
            d = i
        i += 1
    return d


@njit(**JIT_OPTS)
def _encode(dig, deg, q):
    c = np.int64(0)
    for i in range(deg, -1, -1):
        c = c * q + dig[i]
    return c


@njit(**JIT_OPTS)
def _deg_of(dig, upto):
    for i in range(upto, -1, -1):
        if dig[i] != 0:
            return i
    return -1


@njit(**JIT_OPTS)
def _reduce_inplace(rem, dr, f, df, add_t, mul_t, neg_t, inv_t):
    """rem <- rem mod f (f of degree df >= 0); returns new degree of rem."""
    linv = inv_t[f[df]]
    for k in range(dr, df - 1, -1):
        c = rem[k]
        if c != 0:
            fac = mul_t[c, linv]
            nf = neg_t[fac]
            for j in range(df + 1):
                rem[k - df + j] = add_t[rem[k - df + j], mul_t[nf, f[j]]]
    return _deg_of(rem, min(dr, df - 1) if df > 0 else -1)


@njit(**JIT_OPTS)
def _mulmod(a, da, b, db, f, df, out, add_t, mul_t, neg_t, inv_t):
    """out <- a*b mod f; returns degree of out.  Buffers must not alias."""
    for i in range(out.shape[0]):
        out[i] = 0
    if da < 0 or db < 0:
        return -1
    for i in range(da + 1):
        ai = a[i]
        if ai != 0:
            for j in range(db + 1):
                bj = b[j]
                if bj != 0:
                    out[i + j] = add_t[out[i + j], mul_t[ai, bj]]
    return _reduce_inplace(out, da + db, f, df, add_t, mul_t, neg_t, inv_t)


@njit(**JIT_OPTS)
def _gcd_deg(a, da, b, db, add_t, mul_t, neg_t, inv_t):
    """Degree of gcd(a, b); destroys both buffers."""
    if da < 0:
        return db
    if db < 0:
        return da
    while db >= 0:
        da = _reduce_inplace(a, da, b, db, add_t, mul_t, neg_t, inv_t)
        ta, tda = a, da
        a, da = b, db
        b, db = ta, tda
    return da


@njit(**JIT_OPTS)
def _powmod(base, dbase, e, f, df, out, tmp, add_t, mul_t, neg_t, inv_t):
    """out <- base^e mod f for e >= 1; returns degree of out."""
    for i in range(out.shape[0]):
        out[i] = 0
    out[0] = 1
    dout = 0
    nbits = 0
    ee = e
    while ee > 0:
        nbits += 1
        ee >>= 1
    for bit in range(nbits - 1, -1, -1):
        dout = _mulmod(out, dout, out, dout, f, df, tmp, add_t, mul_t, neg_t, inv_t)
        for i in range(out.shape[0]):
            out[i] = tmp[i]
        if (e >> bit) & 1:
            dout = _mulmod(out, dout, base, dbase, f, df, tmp, add_t, mul_t, neg_t, inv_t)
            for i in range(out.shape[0]):
                out[i] = tmp[i]
    return dout


# ---------------------------------------------------------------------------
# prime enumeration (x-th power Frobenius criterion)


@njit(**JIT_OPTS)
def primes_of_degree(add_t, mul_t, neg_t, inv_t, q, x, checkpoints):
    """Codes of all monic irreducibles of degree x, ascending."""
    out = np.empty(q**x, np.int64)
    cnt = 0
    f = np.zeros(x + 1, np.int16)
    r = np.zeros(2 * x + 1, np.int16)
    rq = np.zeros(2 * x + 1, np.int16)
    scratch = np.zeros(2 * x + 1, np.int16)
    g1 = np.zeros(x + 1, np.int16)
    g2 = np.zeros(x + 1, np.int16)
    lo = np.int64(q) ** x
    for code in range(lo, 2 * lo):
        df = _decode(code, q, f)
        if x > 1 and f[0] == 0:
            continue
        # r = T^(q^k) mod f, advanced one q-power at a time
        for i in range(r.shape[0]):
            r[i] = 0
        r[1] = 1
        dr = 1
        ok = True
        for k in range(1, x + 1):
            dr = _powmod(r, dr, q, f, df, rq, scratch, add_t, mul_t, neg_t, inv_t)
            for i in range(r.shape[0]):
                r[i] = rq[i]
            hit_checkpoint = False
            for c in checkpoints:
                if k == c:
                    hit_checkpoint = True
            if hit_checkpoint:
                # gcd(r - T, f) must be constant
                for i in range(x + 1):
                    g1[i] = 0
                for i in range(dr + 1):
                    g1[i] = r[i]
                g1[1] = add_t[g1[1], neg_t[1]]
                d1 = _deg_of(g1, x)
                for i in range(x + 1):
                    g2[i] = f[i]
                if _gcd_deg(g1, d1, g2, df, add_t, mul_t, neg_t, inv_t) != 0:
                    ok = False
                    break
        if not ok:
            continue
        # T^(q^x) must equal T mod f (T reduces to -f[0] when x = 1)
        if x == 1:
            good = r[0] == neg_t[f[0]] and dr <= 0
        else:
            good = dr == 1 and r[0] == 0 and r[1] == 1
        if good:
            out[cnt] = code
            cnt += 1
    return out[:cnt]


# ---------------------------------------------------------------------------
# smallest-prime-factor sieve over monic polynomials


@njit(**JIT_OPTS)
def spf_sieve(add_t, mul_t, q, prime_codes, prime_degs, max_deg):
    """For every monic n with 1 <= deg n <= max_deg: an index into prime_codes
    of some prime factor of n, and the code of the monic cofactor n/prime."""
    size = q ** (max_deg + 1)
    spf = np.full(size, -1, np.int32)
    cof = np.zeros(size, np.int64)
    ell = np.zeros(max_deg + 1, np.int16)
    m = np.zeros(max_deg + 1, np.int16)
    prod = np.zeros(2 * max_deg + 1, np.int16)
    for pi in range(prime_codes.shape[0]):
        e = prime_degs[pi]
        if e > max_deg:
            continue
        _decode(prime_codes[pi], q, ell)
        for md in range(0, max_deg - e + 1):
            mlo = np.int64(q) ** md
            for mcode in range(mlo, 2 * mlo):
                dm = _decode(mcode, q, m)
                for i in range(prod.shape[0]):
                    prod[i] = 0
                for i in range(e + 1):
                    if ell[i] != 0:
                        for j in range(dm + 1):
                            if m[j] != 0:
                                prod[i + j] = add_t[prod[i + j], mul_t[ell[i], m[j]]]
                n = _encode(prod, e + dm, q)
                if spf[n] < 0:
                    spf[n] = pi
                    cof[n] = mcode
    return spf, cof


# ---------------------------------------------------------------------------
# quadratic character tables mod a prime ell (Euler criterion by squaring)


@njit(**JIT_OPTS)
def quad_char_table(add_t, mul_t, neg_t, inv_t, q, ell_code, e):
    """int8 table t of size q^e with t[r] = chi(r): 0 at r = 0, +1 on nonzero
    squares mod ell, -1 otherwise."""
    size = q**e
    ell = np.zeros(e + 1, np.int16)
    _decode(ell_code, q, ell)
    table = np.full(size, -1, np.int8)
    table[0] = 0
    mu = np.zeros(e + 1, np.int16)
    sq = np.zeros(2 * e + 1, np.int16)
    for code in range(1, size):
        dm = _decode(code, q, mu)
        dsq = _mulmod(mu, dm, mu, dm, ell, e, sq, add_t, mul_t, neg_t, inv_t)
        table[_encode(sq, dsq, q)] = 1
    return table


# ---------------------------------------------------------------------------
# batch Frobenius characteristic polynomials


@njit(**JIT_OPTS)
def _fp_add(a, b, q, x, add_t):
    """Coordinatewise addition of two A/pA codes."""
    out = np.int64(0)
    mult = np.int64(1)
    for _ in range(x):
        out += np.int64(add_t[a % q, b % q]) * mult
        a //= q
        b //= q
        mult *= q
    return out


@njit(**JIT_OPTS)
def charpoly_batch(add_t, mul_t, neg_t, inv_t, q, x, w, tcode, p_fq, fp_mul, frob_pows, gammas, deltas):
    """Solve tau^{2x} = phi_a tau^x - u phi_p for (a, u) over each module.

    p_fq: F_q digit array of p (length x+1, monic).  fp_mul: full
    multiplication table of A/pA.  frob_pows[i][c] = c^(q^i).  Unknowns are
    the w+1 coefficients of a and u; the F_q-linear system is solved by
    Gaussian elimination.  status: 0 solved, 1 inconsistent, 2 not unique.
    """
    n = gammas.shape[0]
    a_codes = np.zeros(n, np.int64)
    u_codes = np.zeros(n, np.int16)
    status = np.zeros(n, np.int8)
    ncols = w + 2
    nrows = x * (2 * x + 1)
    M = np.zeros((nrows, ncols + 1), np.int16)
    pw = np.zeros((x + 1, 2 * x + 1), np.int64)
    phip = np.zeros(2 * x + 1, np.int64)
    nxt = np.zeros(2 * x + 1, np.int64)
    qpows = np.zeros(x, np.int64)
    qpows[0] = 1
    for i in range(1, x):
        qpows[i] = qpows[i - 1] * q
    for idx in range(n):
        g = gammas[idx]
        d = deltas[idx]
        # powers of phi_T in the twisted ring; pw[i][k] = coeff of tau^k
        for i in range(x + 1):
            for k in range(2 * x + 1):
                pw[i][k] = 0
        pw[0][0] = 1
        for i in range(1, x + 1):
            for k in range(2 * x + 1):
                nxt[k] = 0
            for k in range(2 * (i - 1) + 1):
                c = pw[i - 1][k]
                if c != 0:
                    # (c tau^k)(b_j tau^j) = c * b_j^(q^k) tau^(k+j)
                    nxt[k] = _fp_add(nxt[k], fp_mul[c, frob_pows[k][tcode]], q, x, add_t)
                    nxt[k + 1] = _fp_add(nxt[k + 1], fp_mul[c, frob_pows[k][g]], q, x, add_t)
                    nxt[k + 2] = _fp_add(nxt[k + 2], fp_mul[c, frob_pows[k][d]], q, x, add_t)
            for k in range(2 * x + 1):
                pw[i][k] = nxt[k]
        # phi_p = sum p_i phi_T^i  (p_i are F_q scalars, embedded as codes)
        for k in range(2 * x + 1):
            phip[k] = 0
        for i in range(x + 1):
            c = p_fq[i]
            if c != 0:
                for k in range(2 * i + 1):
                    phip[k] = _fp_add(phip[k], fp_mul[c, pw[i][k]], q, x, add_t)
        # assemble the F_q system: sum_i a_i P_i[j-x] - u phip[j] = [tau^2x]_j
        row = 0
        for j in range(2 * x + 1):
            for dd in range(x):
                for col in range(w + 1):
                    if j - x >= 0:
                        M[row, col] = (pw[col][j - x] // qpows[dd]) % q
                    else:
                        M[row, col] = 0
                M[row, w + 1] = neg_t[(phip[j] // qpows[dd]) % q]
                M[row, ncols] = 1 if (j == 2 * x and dd == 0) else 0
                row += 1
        # Gaussian elimination over F_q
        st = 0
        rank = 0
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if M[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                st = 2
                break
            if piv != rank:
                for cc in range(ncols + 1):
                    t = M[rank, cc]
                    M[rank, cc] = M[piv, cc]
                    M[piv, cc] = t
            pinv = inv_t[M[rank, col]]
            for cc in range(col, ncols + 1):
                M[rank, cc] = mul_t[M[rank, cc], pinv]
            for r in range(nrows):
                if r != rank and M[r, col] != 0:
                    f = neg_t[M[r, col]]
                    for cc in range(col, ncols + 1):
                        M[r, cc] = add_t[M[r, cc], mul_t[f, M[rank, cc]]]
            rank += 1
        if st == 0:
            for r in range(rank, nrows):
                if M[r, ncols] != 0:
                    st = 1
                    break
        if st != 0:
            status[idx] = st
            continue
        acode = np.int64(0)
        for i in range(w, -1, -1):
            acode = acode * q + M[i, ncols]
        a_codes[idx] = acode
        u_codes[idx] = M[w + 1, ncols]
        status[idx] = 0
    return a_codes, u_codes, status


# ---------------------------------------------------------------------------
# isomorphism orbits of (gamma, delta) pairs under mu-conjugation


@njit(**JIT_OPTS)
def orbit_partition(fp_mul, s1, s2, P):
    """Partition {(gamma, delta): delta != 0} into orbits of
    (gamma, delta) ~ (s*gamma, s^(q+1)*delta) for s in s1 (s2 = s^(q+1)).

    Returns representative pairs (first in code order) and orbit sizes,
    ordered by representative."""
    visited = np.zeros(P * P, np.uint8)
    maxn = P * (P - 1)
    rep_g = np.empty(maxn, np.int64)
    rep_d = np.empty(maxn, np.int64)
    sizes = np.empty(maxn, np.int64)
    cnt = 0
    ns = s1.shape[0]
    for g in range(P):
        for d in range(1, P):
            if visited[g * P + d]:
                continue
            size = 0
            for t in range(ns):
                g2 = fp_mul[s1[t], g]
                d2 = fp_mul[s2[t], d]
                pos = g2 * P + d2
                if not visited[pos]:
                    visited[pos] = 1
                    size += 1
            rep_g[cnt] = g
            rep_d[cnt] = d
            sizes[cnt] = size
            cnt += 1
    return rep_g[:cnt].copy(), rep_d[:cnt].copy(), sizes[:cnt].copy()


# ---------------------------------------------------------------------------
# batch class-number masses H_p = sum over f^2 | d of h(d / f^2)


@njit(**JIT_OPTS)
def hurwitz_batch(add_t, mul_t, neg_t, inv_t, q, p0, x, a2_dig, fu, p_codes,
                  ell_codes, ell_degs, qr_flat, qr_offs, spf, cof, z):
    """Fast path of the mass computation for d = a^2 - 4*u*p squarefree.

    a2_dig: digits of a^2 (length x+1); fu: F_q code of 4u.  For each prime
    code, evaluates h(d) through the finite L-sum h = q^((x-1)/2) * L(1,chi_d)
    (odd x) or h = 2 q^(x/2)/(q+1) * L (even x), with chi_d extended
    multiplicatively from the per-prime tables via the spf sieve.  Entries
    with squareful d, or whose division is not exact, are flagged slow and
    left to the object-level route.
    """
    n = p_codes.shape[0]
    H = np.zeros(n, np.int64)
    slow = np.zeros(n, np.uint8)
    nell = ell_codes.shape[0]
    chi_ell = np.zeros(nell, np.int8)
    nmonic = q ** (z + 1) if z >= 0 else 1
    chi = np.zeros(nmonic, np.int8)
    ck = np.zeros(x, np.int64)
    pdig = np.zeros(x + 1, np.int16)
    ddig = np.zeros(x + 1, np.int16)
    der = np.zeros(x + 1, np.int16)
    wk1 = np.zeros(x + 1, np.int16)
    wk2 = np.zeros(x + 1, np.int16)
    ell = np.zeros(x + 1, np.int16)
    rem = np.zeros(x + 1, np.int16)
    base = np.zeros(x + 1, np.int16)
    pw = np.zeros(2 * x + 3, np.int16)
    tmp = np.zeros(2 * x + 3, np.int16)
    negone = neg_t[1]
    for i in range(n):
        _decode(p_codes[i], q, pdig)
        # d = a^2 - (4u) p, degree exactly x
        for k in range(x + 1):
            ddig[k] = add_t[a2_dig[k], neg_t[mul_t[fu, pdig[k]]]]
        # squarefree test: gcd(d, d') constant
        for k in range(x):
            m = (k + 1) % p0
            der[k] = mul_t[m, ddig[k + 1]] if m != 0 else 0
        dd = _deg_of(der, x - 1)
        for k in range(x + 1):
            wk1[k] = ddig[k]
            wk2[k] = der[k]
        if _gcd_deg(wk1, x, wk2, dd, add_t, mul_t, neg_t, inv_t) != 0:
            slow[i] = 1
            continue
        # chi_d at each small prime
        for li in range(nell):
            e = ell_degs[li]
            _decode(ell_codes[li], q, ell)
            for k in range(x + 1):
                rem[k] = ddig[k]
            dr = _reduce_inplace(rem, x, ell, e, add_t, mul_t, neg_t, inv_t)
            if dr < 0:
                chi_ell[li] = 0
                continue
            if qr_offs[li] >= 0:
                chi_ell[li] = qr_flat[qr_offs[li] + _encode(rem, dr, q)]
            else:
                # Euler criterion by exponentiation
                for k in range(x + 1):
                    base[k] = rem[k]
                E = (np.int64(q) ** e - 1) // 2
                dres = _powmod(base, dr, E, ell, e, pw, tmp, add_t, mul_t, neg_t, inv_t)
                rc = _encode(pw, dres, q)
                chi_ell[li] = 1 if rc == 1 else (-1 if rc == negone else 0)
        # c_k = sum of chi_d over monic polynomials of degree k
        for k in range(x):
            ck[k] = 0
        ck[0] = 1
        if z >= 1:
            chi[1] = 1
            code_lo = np.int64(q)
            for k in range(1, z + 1):
                s = np.int64(0)
                hi = code_lo * q
                for code in range(code_lo, hi):
                    v = chi_ell[spf[code]] * chi[cof[code]]
                    chi[code] = v
                    s += v
                ck[k] = s
                code_lo = hi
        # num / q^(x-1) = L(1, chi_d) as an exact rational
        num = np.int64(0)
        qp = np.int64(1)
        for k in range(x - 1, -1, -1):
            num += ck[k] * qp
            qp *= q
        if x % 2 == 1:
            den = np.int64(q) ** ((x - 1) // 2)
            if num <= 0 or num % den != 0:
                slow[i] = 1
                continue
            H[i] = num // den
        else:
            den = (q + 1) * np.int64(q) ** ((x - 2) // 2)
            if 2 * num <= 0 or (2 * num) % den != 0:
                slow[i] = 1
                continue
            H[i] = (2 * num) // den
    return H, slow
