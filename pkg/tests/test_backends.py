"""The numba kernels and the numpy fallbacks must agree bit-for-bit."""

import numpy as np
import pytest

from drinfeld_avg import GF, parse_poly
from drinfeld_avg import kernels_numpy
from drinfeld_avg.backend import active_backend, use_backend
from drinfeld_avg.factorization import spf_tables
from drinfeld_avg.primes import prime_codes
from drinfeld_avg.quadratic import _qr_table_pack
from drinfeld_avg.residue import residue_field

kernels_numba = pytest.importorskip("drinfeld_avg.kernels_numba")

K3 = GF(3)
K5 = GF(5)
K9 = GF(9)


def _tables(ctx):
    return ctx.kernel_tables()


@pytest.mark.parametrize("q,x", [(3, 1), (3, 4), (3, 6), (5, 3), (5, 5), (9, 2), (9, 3)])
def test_primes_of_degree(q, x):
    ctx = GF(q)
    checkpoints = np.array(sorted({x // ell for ell in (2, 3, 5, 7) if x % ell == 0}), np.int64)
    a = kernels_numba.primes_of_degree(*_tables(ctx), q, x, checkpoints)
    b = kernels_numpy.primes_of_degree(*_tables(ctx), q, x, checkpoints)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("q,maxdeg", [(3, 4), (5, 3)])
def test_spf_sieve(q, maxdeg):
    ctx = GF(q)
    codes, degs = [], []
    for d in range(1, maxdeg + 1):
        for c in prime_codes(ctx, d):
            codes.append(int(c))
            degs.append(d)
    pc = np.array(codes, np.int64)
    pd = np.array(degs, np.int32)
    add_t, mul_t, _, _ = _tables(ctx)
    s1, c1 = kernels_numba.spf_sieve(add_t, mul_t, q, pc, pd, maxdeg)
    s2, c2 = kernels_numpy.spf_sieve(add_t, mul_t, q, pc, pd, maxdeg)
    assert np.array_equal(s1, s2) and np.array_equal(c1, c2)


@pytest.mark.parametrize("q,deg", [(3, 1), (3, 2), (3, 3), (5, 2), (9, 1)])
def test_quad_char_table(q, deg):
    ctx = GF(q)
    for code in prime_codes(ctx, deg)[:4]:
        a = kernels_numba.quad_char_table(*_tables(ctx), q, int(code), deg)
        b = kernels_numpy.quad_char_table(*_tables(ctx), q, int(code), deg)
        assert np.array_equal(a, b)


@pytest.mark.parametrize("ps,q", [("T", 3), ("T^2+1", 3), ("T^3+2*T+1", 3), ("T^2+2", 5)])
def test_charpoly_batch(ps, q):
    ctx = GF(q)
    F = residue_field(parse_poly(ctx, ps))
    pairs = [(g, d) for g in range(F.size) for d in range(1, F.size)]
    G = np.array([p[0] for p in pairs], np.int64)
    D = np.array([p[1] for p in pairs], np.int64)
    add_t, mul_t, neg_t, inv_t = _tables(ctx)
    p_fq = np.zeros(F.x + 1, np.int16)
    for i, c in enumerate(F.p.coeffs):
        p_fq[i] = c
    args = (add_t, mul_t, neg_t, inv_t, q, F.x, F.x // 2, F.tcode, p_fq,
            F.ensure_mul_table(), F.frob_pow_table(2 * F.x), G, D)
    a1, u1, s1 = kernels_numba.charpoly_batch(*args)
    a2, u2, s2 = kernels_numpy.charpoly_batch(*args)
    assert np.array_equal(a1, a2) and np.array_equal(u1, u2) and np.array_equal(s1, s2)
    assert not s1.any()


@pytest.mark.parametrize("ps,q", [("T^2+1", 3), ("T^2+2", 5), ("T^3+2*T+2", 3)])
def test_orbit_partition(ps, q):
    ctx = GF(q)
    F = residue_field(parse_poly(ctx, ps))
    from drinfeld_avg.drinfeld import _power_cosets

    s1v, s2v = _power_cosets(F)
    fp_mul = F.ensure_mul_table()
    g1, d1, z1 = kernels_numba.orbit_partition(fp_mul, s1v, s2v, F.size)
    g2, d2, z2 = kernels_numpy.orbit_partition(fp_mul, s1v, s2v, F.size)
    assert np.array_equal(g1, g2) and np.array_equal(d1, d2) and np.array_equal(z1, z2)


@pytest.mark.parametrize("q,x,acode,u", [(3, 1, 1, 2), (3, 2, 1, 1), (3, 3, 2, 1),
                                         (5, 2, 3, 2), (5, 3, 1, 1)])
def test_hurwitz_batch(q, x, acode, u):
    from drinfeld_avg.poly import Poly

    ctx = GF(q)
    a = Poly.from_code(ctx, acode)
    add_t, mul_t, neg_t, inv_t = _tables(ctx)
    a2 = a * a
    a2_dig = np.zeros(x + 1, np.int16)
    for i, c in enumerate(a2.coeffs):
        a2_dig[i] = c
    fu = ctx.mul(ctx.embed_int(4), u)
    z = x - 1
    ell_codes, ell_degs, qr_flat, qr_offs = _qr_table_pack(ctx, z)
    if z >= 1:
        spf, cof, _, _ = spf_tables(ctx, z)
    else:
        spf = np.zeros(q, np.int32)
        cof = np.zeros(q, np.int64)
    pc = np.ascontiguousarray(prime_codes(ctx, x), np.int64)
    args = (add_t, mul_t, neg_t, inv_t, q, ctx.p0, x, a2_dig, fu, pc,
            ell_codes, ell_degs, qr_flat, qr_offs, spf, cof, z)
    H1, s1 = kernels_numba.hurwitz_batch(*args)
    H2, s2 = kernels_numpy.hurwitz_batch(*args)
    assert np.array_equal(H1, H2) and np.array_equal(s1, s2)


def test_modexp_fallback_path_agrees():
    # shrink the table budget to force the in-kernel Euler exponentiation
    import drinfeld_avg.quadratic as qd
    from drinfeld_avg.poly import Poly

    ctx = K5
    old = qd.QR_TABLE_MEMORY_BUDGET
    try:
        ell_codes, ell_degs, qr_flat, qr_offs = _qr_table_pack.__wrapped__(ctx, 2) if hasattr(_qr_table_pack, "__wrapped__") else _qr_table_pack(ctx, 2)
        qd.QR_TABLE_MEMORY_BUDGET = 6  # only a couple of degree-1 tables fit
        lean = qd._qr_table_pack(ctx, 2)
        assert (lean[3] < 0).any()
        add_t, mul_t, neg_t, inv_t = _tables(ctx)
        a = Poly.from_code(ctx, 1)
        a2_dig = np.zeros(4, np.int16)
        a2_dig[0] = 1
        fu = ctx.mul(ctx.embed_int(4), 1)
        spf, cof, _, _ = spf_tables(ctx, 2)
        pc = np.ascontiguousarray(prime_codes(ctx, 3), np.int64)
        full_args = (add_t, mul_t, neg_t, inv_t, 5, 5, 3, a2_dig, fu, pc,
                     ell_codes, ell_degs, qr_flat, qr_offs, spf, cof, 2)
        lean_args = (add_t, mul_t, neg_t, inv_t, 5, 5, 3, a2_dig, fu, pc,
                     lean[0], lean[1], lean[2], lean[3], spf, cof, 2)
        for mod in (kernels_numba, kernels_numpy):
            Hf, sf = mod.hurwitz_batch(*full_args)
            Hl, sl = mod.hurwitz_batch(*lean_args)
            assert np.array_equal(Hf, Hl) and np.array_equal(sf, sl)
    finally:
        qd.QR_TABLE_MEMORY_BUDGET = old


def test_use_backend_context():
    with use_backend("numpy"):
        assert active_backend() == "numpy"
    with use_backend("numba"):
        assert active_backend() == "numba"
