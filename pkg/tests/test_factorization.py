import random

import pytest

from drinfeld_avg import GF, Poly, parse_poly
from drinfeld_avg.factorization import (euler_phi, factor, spf_tables, square_divisors,
                                        squarefree_decompose)
from drinfeld_avg.primes import enumerate_primes

K3 = GF(3)


def P(s):
    return parse_poly(K3, s)


def test_factor_examples():
    assert factor(P("T^2+2*T")) == (1, ((P("T"), 1), (P("T+2"), 1)))
    assert factor(P("2*T^2")) == (2, ((P("T"), 2),))
    assert factor(P("T^2+1")) == (1, ((P("T^2+1"), 1),))
    with pytest.raises(ValueError):
        factor(Poly.zero(K3))


def test_factor_multiply_roundtrip_randomized():
    rng = random.Random(1234)
    primes = [p for d in (1, 2, 3) for p in enumerate_primes(K3, d)]
    for _ in range(120):
        unit = rng.choice((1, 2))
        chosen = rng.sample(primes, rng.randint(1, 3))
        prod = Poly.constant(K3, unit)
        expected = []
        for p in sorted(chosen, key=Poly.sort_key):
            e = rng.randint(1, 2)
            expected.append((p, e))
            prod = prod * p**e
        assert factor(prod) == (unit, tuple(expected))


def brute_phi(a: Poly) -> int:
    # direct count of units in A/aA
    return sum(
        1
        for code in range(a.norm)
        if Poly.from_code(K3, code).gcd(a).deg == 0
    )


@pytest.mark.parametrize("s,expect", [("T", 2), ("T^2", 6)])
def test_phi_examples(s, expect):
    assert euler_phi(P(s)) == expect


def test_phi_matches_brute_count():
    for code in range(1, 3**4):
        a = Poly.from_code(K3, code)
        assert euler_phi(a) == brute_phi(a)


def test_phi_product_identity_exhaustive():
    # phi(vw) = phi(v) phi(w) gcd/phi(gcd) for all nonzero v, w of degree <= 3
    polys = [Poly.from_code(K3, c) for c in range(1, 3**4)]
    for v in polys[:40]:
        for w in polys:
            g = v.gcd(w)
            lhs = euler_phi(v * w)
            rhs = euler_phi(v) * euler_phi(w) * g.norm // euler_phi(g)
            assert lhs == rhs


def test_phi_multiplicative_on_coprime():
    rng = random.Random(99)
    polys = [Poly.from_code(K3, c) for c in range(1, 3**4)]
    for _ in range(200):
        v, w = rng.choice(polys), rng.choice(polys)
        if v.gcd(w).deg == 0:
            assert euler_phi(v * w) == euler_phi(v) * euler_phi(w)


def test_squarefree_decompose():
    unit, f, d0 = squarefree_decompose(P("2*T^2"))
    assert (unit, f, d0) == (2, P("T"), P("1"))
    unit, f, d0 = squarefree_decompose(P("T^3"))
    assert (unit, f, d0) == (1, P("T"), P("T"))


def test_square_divisors():
    d = P("T^2") * P("T+1") ** 3
    fs = square_divisors(d)
    assert fs == sorted(fs, key=Poly.sort_key)
    for f in fs:
        assert (d % (f * f)).is_zero
    assert len(fs) == 4  # {1, T, T+1, T(T+1)}


def test_spf_tables_factor_completely():
    spf, cof, pcodes, pdegs = spf_tables(K3, 3)
    for code in range(3, 3**4):
        n = Poly.from_code(K3, code)
        if not n.is_monic or n.deg < 1:
            continue
        parts = []
        cur = code
        while cur != 1:
            pi = int(spf[cur])
            assert pi >= 0
            parts.append(Poly.from_code(K3, int(pcodes[pi])))
            cur = int(cof[cur])
        prod = Poly.one(K3)
        for p in parts:
            prod = prod * p
        assert prod == n
