"""Pure-numpy fallbacks for the JIT kernels.

Same signatures and bit-identical outputs as kernels_numba, vectorised over
the bulk axis (candidates, module pairs, primes) with table fancy-indexing
instead of per-element loops.  Prime enumeration uses a trial-division sieve
here; the degree-by-degree survivors match the Frobenius-criterion output
and the equality is pinned by tests.
"""

from __future__ import annotations

import numpy as np


def _digit_matrix(codes, q, ncols):
    qp = q ** np.arange(ncols, dtype=np.int64)
    return ((np.asarray(codes, dtype=np.int64)[:, None] // qp[None, :]) % q).astype(np.int16)


def _encode_matrix(dig, q):
    qp = q ** np.arange(dig.shape[1], dtype=np.int64)
    return (dig.astype(np.int64) * qp[None, :]).sum(axis=1)


def _reduce_rows(R, f_dig, e, add_t, mul_t, neg_t):
    """In-place remainder of every row of R modulo the monic f of degree e."""
    L = R.shape[1]
    for pos in range(L - 1, e - 1, -1):
        fac = neg_t[R[:, pos]]
        for j in range(e):
            fj = int(f_dig[j])
            if fj:
                R[:, pos - e + j] = add_t[R[:, pos - e + j], mul_t[fac, fj]]
        R[:, pos] = 0
    return R


def _mul_rows(A, B, add_t, mul_t):
    """Row-wise polynomial product of two digit matrices."""
    n = A.shape[0]
    out = np.zeros((n, A.shape[1] + B.shape[1] - 1), np.int16)
    for i in range(A.shape[1]):
        ai = A[:, i]
        for j in range(B.shape[1]):
            out[:, i + j] = add_t[out[:, i + j], mul_t[ai, B[:, j]]]
    return out


def _powmod_rows(base, expo, f_dig, e, add_t, mul_t, neg_t):
    """Row-wise base^expo mod f (f monic of degree e), expo >= 1."""
    n = base.shape[0]
    acc = np.zeros((n, e if e > 0 else 1), np.int16)
    acc[:, 0] = 1
    for bit in range(expo.bit_length() - 1, -1, -1):
        acc = _reduce_rows(_mul_rows(acc, acc, add_t, mul_t), f_dig, e, add_t, mul_t, neg_t)[:, :e]
        if (expo >> bit) & 1:
            acc = _reduce_rows(_mul_rows(acc, base, add_t, mul_t), f_dig, e, add_t, mul_t, neg_t)[:, :e]
    return acc


# ---------------------------------------------------------------------------


def primes_of_degree(add_t, mul_t, neg_t, inv_t, q, x, checkpoints):
    """Codes of all monic irreducibles of degree x, ascending (trial division)."""
    q = int(q)
    known: list[np.ndarray] = []  # prime digit matrices per degree 1..x-1
    for d in range(1, x + 1):
        codes = np.arange(q**d, 2 * q**d, dtype=np.int64)
        dig = _digit_matrix(codes, q, d + 1)
        alive = np.ones(codes.shape[0], bool)
        if d > 1:
            alive &= dig[:, 0] != 0
        for e in range(1, d // 2 + 1):
            for ell in known[e - 1]:
                if not alive.any():
                    break
                R = dig[alive].copy()
                _reduce_rows(R, ell, e, add_t, mul_t, neg_t)
                sub = np.where(alive)[0]
                alive[sub[(R[:, :e] == 0).all(axis=1)]] = False
            # compact after each divisor degree
            codes, dig = codes[alive], dig[alive]
            alive = np.ones(codes.shape[0], bool)
        codes, dig = codes[alive], dig[alive]
        if d < x:
            known.append(dig)
        else:
            return codes
    return np.empty(0, np.int64)  # x >= 1 always returns in the loop


def spf_sieve(add_t, mul_t, q, prime_codes, prime_degs, max_deg):
    q = int(q)
    size = q ** (max_deg + 1)
    spf = np.full(size, -1, np.int32)
    cof = np.zeros(size, np.int64)
    for pi in range(prime_codes.shape[0]):
        e = int(prime_degs[pi])
        if e > max_deg:
            continue
        ell = _digit_matrix(np.array([prime_codes[pi]]), q, e + 1)[0]
        for md in range(0, max_deg - e + 1):
            mcodes = np.arange(q**md, 2 * q**md, dtype=np.int64)
            M = _digit_matrix(mcodes, q, md + 1)
            prod = _mul_rows(np.broadcast_to(ell[None, :], (M.shape[0], e + 1)), M, add_t, mul_t)
            n = _encode_matrix(prod, q)
            unset = spf[n] < 0
            spf[n[unset]] = pi
            cof[n[unset]] = mcodes[unset]
    return spf, cof


def quad_char_table(add_t, mul_t, neg_t, inv_t, q, ell_code, e):
    q = int(q)
    size = q**e
    ell = _digit_matrix(np.array([ell_code]), q, e + 1)[0]
    mu = _digit_matrix(np.arange(1, size, dtype=np.int64), q, e)
    sq = _reduce_rows(_mul_rows(mu, mu, add_t, mul_t), ell, e, add_t, mul_t, neg_t)
    table = np.full(size, -1, np.int8)
    table[0] = 0
    table[_encode_matrix(sq[:, :e], q)] = 1
    return table


# ---------------------------------------------------------------------------


def _fp_add_vec(a, b, q, x, add_t):
    da = _digit_matrix(a, q, x)
    db = _digit_matrix(b, q, x)
    return _encode_matrix(add_t[da, db], q)


_CHARPOLY_CHUNK = 1 << 16


def charpoly_batch(add_t, mul_t, neg_t, inv_t, q, x, w, tcode, p_fq, fp_mul, frob_pows, gammas, deltas):
    outs_a, outs_u, outs_s = [], [], []
    for lo in range(0, gammas.shape[0], _CHARPOLY_CHUNK):
        a, u, s = _charpoly_chunk(add_t, mul_t, neg_t, inv_t, q, x, w, tcode, p_fq,
                                  fp_mul, frob_pows, gammas[lo:lo + _CHARPOLY_CHUNK],
                                  deltas[lo:lo + _CHARPOLY_CHUNK])
        outs_a.append(a)
        outs_u.append(u)
        outs_s.append(s)
    return np.concatenate(outs_a), np.concatenate(outs_u), np.concatenate(outs_s)


def _charpoly_chunk(add_t, mul_t, neg_t, inv_t, q, x, w, tcode, p_fq, fp_mul, frob_pows, gammas, deltas):
    q = int(q)
    n = gammas.shape[0]
    ncols = w + 2
    nrows = x * (2 * x + 1)
    # powers of phi_T, coefficients as A/pA codes, vectorised over modules
    pw = [np.zeros((n, 2 * x + 1), np.int64) for _ in range(x + 1)]
    pw[0][:, 0] = 1
    bj = [np.full(n, tcode, np.int64), np.asarray(gammas, np.int64), np.asarray(deltas, np.int64)]
    for i in range(1, x + 1):
        prev = pw[i - 1]
        cur = pw[i]
        for k in range(2 * (i - 1) + 1):
            c = prev[:, k]
            for j in range(3):
                term = fp_mul[c, frob_pows[k][bj[j]]]
                cur[:, k + j] = _fp_add_vec(cur[:, k + j], term, q, x, add_t)
    phip = np.zeros((n, 2 * x + 1), np.int64)
    for i in range(x + 1):
        c = int(p_fq[i])
        if c:
            for k in range(2 * i + 1):
                phip[:, k] = _fp_add_vec(phip[:, k], fp_mul[c, pw[i][:, k]], q, x, add_t)
    # F_q linear system per module
    M = np.zeros((n, nrows, ncols + 1), np.int16)
    qpows = q ** np.arange(x, dtype=np.int64)
    row = 0
    for j in range(2 * x + 1):
        for dd in range(x):
            if j - x >= 0:
                for col in range(w + 1):
                    M[:, row, col] = (pw[col][:, j - x] // qpows[dd]) % q
            M[:, row, w + 1] = neg_t[(phip[:, j] // qpows[dd]) % q]
            if j == 2 * x and dd == 0:
                M[:, row, ncols] = 1
            row += 1
    # Gaussian elimination with per-module pivoting
    status = np.zeros(n, np.int8)
    idx = np.arange(n)
    for rank in range(ncols):
        col = rank
        sub = M[:, rank:, col] != 0
        has = sub.any(axis=1)
        status[(~has) & (status == 0)] = 2
        piv = rank + sub.argmax(axis=1)
        tmp = M[idx, piv].copy()
        M[idx, piv] = M[idx, rank]
        M[idx, rank] = tmp
        pinv = inv_t[M[:, rank, col]]
        M[:, rank, :] = mul_t[M[:, rank, :], pinv[:, None]]
        factors = M[:, :, col].copy()
        factors[:, rank] = 0
        nf = neg_t[factors]
        M = add_t[M, mul_t[nf[:, :, None], M[:, rank:rank + 1, :]]]
    bad = (M[:, ncols:, ncols] != 0).any(axis=1)
    status[bad & (status == 0)] = 1
    qp = np.int64(1)
    a_codes = np.zeros(n, np.int64)
    for i in range(w + 1):
        a_codes += M[:, i, ncols].astype(np.int64) * qp
        qp *= q
    u_codes = M[:, w + 1, ncols].astype(np.int16)
    ok = status == 0
    a_codes[~ok] = 0
    u_codes[~ok] = 0
    return a_codes, u_codes, status


def orbit_partition(fp_mul, s1, s2, P):
    P = int(P)
    G = np.repeat(np.arange(P, dtype=np.int64), P - 1)
    D = np.tile(np.arange(1, P, dtype=np.int64), P)
    best = G * P + D
    for t in range(s1.shape[0]):
        key = fp_mul[s1[t], G].astype(np.int64) * P + fp_mul[s2[t], D]
        np.minimum(best, key, out=best)
    reps, sizes = np.unique(best, return_counts=True)
    return reps // P, reps % P, sizes.astype(np.int64)


# ---------------------------------------------------------------------------


_HURWITZ_CHUNK = 256


def hurwitz_batch(add_t, mul_t, neg_t, inv_t, q, p0, x, a2_dig, fu, p_codes,
                  ell_codes, ell_degs, qr_flat, qr_offs, spf, cof, z):
    outs_H, outs_s = [], []
    for lo in range(0, p_codes.shape[0], _HURWITZ_CHUNK):
        H, s = _hurwitz_chunk(add_t, mul_t, neg_t, inv_t, q, p0, x, a2_dig, fu,
                              p_codes[lo:lo + _HURWITZ_CHUNK], ell_codes, ell_degs,
                              qr_flat, qr_offs, spf, cof, z)
        outs_H.append(H)
        outs_s.append(s)
    return np.concatenate(outs_H), np.concatenate(outs_s)


def _gcd_deg_list(a, b, q, add_t, mul_t, neg_t, inv_t):
    """Degree of gcd of two little-endian digit lists (python ints)."""
    def deg(v):
        for i in range(len(v) - 1, -1, -1):
            if v[i]:
                return i
        return -1

    da, db = deg(a), deg(b)
    while db >= 0:
        linv = int(inv_t[b[db]])
        for k in range(da, db - 1, -1):
            c = a[k]
            if c:
                f = int(neg_t[mul_t[c, linv]])
                for j in range(db + 1):
                    a[k - db + j] = int(add_t[a[k - db + j], mul_t[f, b[j]]])
        a, b = b, a
        da, db = db, deg(a)
    return da


def _hurwitz_chunk(add_t, mul_t, neg_t, inv_t, q, p0, x, a2_dig, fu, p_codes,
                   ell_codes, ell_degs, qr_flat, qr_offs, spf, cof, z):
    q = int(q)
    n = p_codes.shape[0]
    H = np.zeros(n, np.int64)
    slow = np.zeros(n, np.uint8)
    pdig = _digit_matrix(p_codes, q, x + 1)
    ddig = add_t[np.asarray(a2_dig, np.int16)[None, :], neg_t[mul_t[int(fu), pdig]]].astype(np.int16)
    # squarefree test per prime (cheap next to the chi sweep below)
    for i in range(n):
        drow = [int(c) for c in ddig[i]]
        der = [int(mul_t[(k + 1) % p0, drow[k + 1]]) if (k + 1) % p0 else 0 for k in range(x)]
        if _gcd_deg_list(drow, der, q, add_t, mul_t, neg_t, inv_t) != 0:
            slow[i] = 1
    nell = ell_codes.shape[0]
    chi_ell = np.zeros((n, nell), np.int8)
    negone = int(neg_t[1])
    for li in range(nell):
        e = int(ell_degs[li])
        ell = _digit_matrix(np.array([ell_codes[li]]), q, e + 1)[0]
        R = ddig.copy()
        _reduce_rows(R, ell, e, add_t, mul_t, neg_t)
        rcodes = _encode_matrix(R[:, :e], q)
        if qr_offs[li] >= 0:
            chi_ell[:, li] = qr_flat[qr_offs[li] + rcodes]
        else:
            E = (q**e - 1) // 2
            res = _powmod_rows(R[:, :e], E, ell, e, add_t, mul_t, neg_t)
            res_codes = _encode_matrix(res, q)
            v = np.zeros(n, np.int8)
            v[res_codes == 1] = 1
            v[res_codes == negone] = -1
            chi_ell[:, li] = v
            chi_ell[rcodes == 0, li] = 0
    # multiplicative extension over monic polynomials, degree by degree
    ck = np.zeros((n, x), np.int64)
    ck[:, 0] = 1
    if z >= 1:
        chi = np.zeros((n, q ** (z + 1)), np.int8)
        chi[:, 1] = 1
        for k in range(1, z + 1):
            blk = np.arange(q**k, q ** (k + 1))
            vals = chi_ell[:, spf[blk]] * chi[:, cof[blk]]
            chi[:, blk] = vals
            ck[:, k] = vals.sum(axis=1, dtype=np.int64)
    qpow = q ** np.arange(x - 1, -1, -1, dtype=np.int64)
    num = (ck * qpow[None, :]).sum(axis=1)
    if x % 2 == 1:
        den = q ** ((x - 1) // 2)
        bad = (num <= 0) | (num % den != 0)
        H = np.where(bad, 0, num // max(den, 1))
        slow |= bad.astype(np.uint8)
    else:
        den = (q + 1) * q ** ((x - 2) // 2)
        bad = (2 * num <= 0) | ((2 * num) % den != 0)
        H = np.where(bad, 0, (2 * num) // den)
        slow |= bad.astype(np.uint8)
    H[slow == 1] = 0
    return H, slow
