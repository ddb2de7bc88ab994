import pytest

from drinfeld_avg import GF, Poly, parse_poly
from drinfeld_avg.primes import count_primes_in_ap, enumerate_primes, is_irreducible

K3 = GF(3)


def moebius(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    return -out if n > 1 else out


def necklace_count(q: int, x: int) -> int:
    # independent oracle for the number of monic irreducibles of degree x
    return sum(moebius(d) * q ** (x // d) for d in range(1, x + 1) if x % d == 0) // x


@pytest.mark.parametrize("q", [3, 5])
@pytest.mark.parametrize("x", range(1, 7))
def test_enumeration_matches_necklace_oracle(q, x):
    ps = enumerate_primes(GF(q), x)
    assert len(ps) == necklace_count(q, x)
    assert len(set(ps)) == len(ps)
    assert all(p.is_monic and p.deg == x for p in ps)


def test_degree_one_and_two_examples():
    assert [str(p) for p in enumerate_primes(K3, 1)] == ["T", "T+1", "T+2"]
    deg2 = enumerate_primes(K3, 2)
    assert len(deg2) == 3
    assert parse_poly(K3, "T^2+1") in deg2


def test_deg2_by_trial_division_oracle():
    # brute force: a monic quadratic is prime iff it has no root in F_3
    brute = []
    for code in range(9, 18):
        f = Poly.from_code(K3, code)
        if all(f.evaluate(c) != 0 for c in range(3)):
            brute.append(f)
    assert list(enumerate_primes(K3, 2)) == brute


def test_canonical_order():
    for x in (1, 2, 3, 4):
        codes = [p.code for p in enumerate_primes(K3, x)]
        assert codes == sorted(codes)


def test_is_irreducible_matches_enumeration():
    prime_set = set(enumerate_primes(K3, 3))
    for code in range(27, 54):
        f = Poly.from_code(K3, code)
        assert is_irreducible(f) == (f in prime_set)
    assert not is_irreducible(parse_poly(K3, "2"))
    assert not is_irreducible(Poly.zero(K3))


def test_count_in_progressions_examples():
    # x=1, m=T, a=1: only T+1
    assert count_primes_in_ap(K3, 1, parse_poly(K3, "T"), parse_poly(K3, "1")) == 1
    # x=2, m=T+1, a=1: evaluate each degree-2 prime at T = -1
    m = parse_poly(K3, "T+1")
    expect = sum(1 for p in enumerate_primes(K3, 2) if p.evaluate(2) == 1)
    assert expect == 1
    assert count_primes_in_ap(K3, 2, m, parse_poly(K3, "1")) == 1


def test_count_in_progressions_errors():
    T = parse_poly(K3, "T")
    with pytest.raises(ValueError):
        count_primes_in_ap(K3, 1, T, T)
    with pytest.raises(ValueError):
        count_primes_in_ap(K3, 1, Poly.zero(K3), T)


def test_progression_counts_partition_everything():
    m = parse_poly(K3, "T^2+1")
    for x in (2, 3, 4):
        total = sum(
            count_primes_in_ap(K3, x, m, Poly.from_code(K3, a))
            for a in range(9)
            if m.gcd(Poly.from_code(K3, a)).deg == 0
        )
        skipped = sum(1 for p in enumerate_primes(K3, x) if (p % m).gcd(m).deg != 0)
        assert total + skipped == len(enumerate_primes(K3, x))
