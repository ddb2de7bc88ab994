import random

import pytest

from drinfeld_avg import GF, Poly, parse_poly
from drinfeld_avg.drinfeld import (FiniteDrinfeldModule, charpoly_by_search,
                                   class_count_by_charpoly, enumerate_iso_classes,
                                   frobenius_charpoly, iso_equivalent,
                                   iso_test_via_residues, phi_image,
                                   verify_frobenius_identity)
from drinfeld_avg.residue import residue_field
from drinfeld_avg.twisted import TwistedPoly

K3 = GF(3)
FT = residue_field(parse_poly(K3, "T"))
F21 = residue_field(parse_poly(K3, "T^2+1"))


def P(s):
    return parse_poly(K3, s)


class TestPhiImage:
    def test_constants_map_to_themselves(self):
        M = FiniteDrinfeldModule(F21, 1, 1)
        for c in range(3):
            assert phi_image(M, Poly.constant(K3, c)) == TwistedPoly.scalar(F21, c)

    def test_image_of_T(self):
        M = FiniteDrinfeldModule(F21, F21.tcode, 2)
        assert phi_image(M, P("T")) == TwistedPoly(F21, (F21.tcode, F21.tcode, 2))

    def test_image_of_T_squared_by_twisted_multiplication(self):
        M = FiniteDrinfeldModule(F21, 2, 1)
        pt = phi_image(M, P("T"))
        assert phi_image(M, P("T^2")) == pt * pt
        assert phi_image(M, P("T^2")).deg == 4

    def test_ring_homomorphism_on_random_inputs(self):
        rng = random.Random(3)
        M = FiniteDrinfeldModule(F21, 1, F21.tcode)
        polys = [Poly.from_code(K3, c) for c in range(1, 3**3)]
        for _ in range(25):
            m, n = rng.choice(polys), rng.choice(polys)
            assert phi_image(M, m * n) == phi_image(M, m) * phi_image(M, n)
            assert phi_image(M, m + n) == phi_image(M, m) + phi_image(M, n)


class TestCharpoly:
    def test_spec_examples_degree_one(self):
        cp = frobenius_charpoly(FiniteDrinfeldModule(FT, 0, 1))
        assert cp.a.is_zero and cp.u == 2
        cp = frobenius_charpoly(FiniteDrinfeldModule(FT, 1, 1))
        assert (str(cp.a), cp.u) == ("2", 2)

    def test_search_oracle_agrees_exhaustively(self):
        for ps in ("T", "T+1", "T+2", "T^2+1", "T^2+T+2", "T^2+2*T+2"):
            F = residue_field(P(ps))
            for gamma in range(F.size):
                for delta in range(1, F.size):
                    M = FiniteDrinfeldModule(F, gamma, delta)
                    assert charpoly_by_search(M) == frobenius_charpoly(M)

    def test_identity_and_degree_bound_random_x3(self):
        rng = random.Random(17)
        from drinfeld_avg.primes import enumerate_primes

        primes = list(enumerate_primes(K3, 3))
        for _ in range(60):
            F = residue_field(rng.choice(primes))
            M = FiniteDrinfeldModule(F, rng.randrange(F.size), rng.randrange(1, F.size))
            cp = frobenius_charpoly(M)
            assert verify_frobenius_identity(M, cp.a, cp.u)
            assert 2 * cp.a.deg <= 3
            assert cp.u != 0

    def test_rank_two_required(self):
        with pytest.raises(ValueError):
            frobenius_charpoly(FiniteDrinfeldModule(FT, 1, 0))

    def test_wrong_pair_fails_identity(self):
        M = FiniteDrinfeldModule(F21, F21.tcode, 1)
        cp = frobenius_charpoly(M)
        assert not verify_frobenius_identity(M, cp.a + Poly.one(K3), cp.u)


class TestIsomorphism:
    def test_reflexive(self):
        M = FiniteDrinfeldModule(FT, 1, 1)
        assert iso_equivalent(M, M)

    def test_constructed_isomorphic_pairs(self):
        # (1,1) ~ (mu^2, mu^8) over p = T^2+1 for each unit mu
        F = F21
        M1 = FiniteDrinfeldModule(F, 1, 1)
        for mu in range(1, F.size):
            M2 = FiniteDrinfeldModule(F, F.pow(mu, 2), F.pow(mu, 8))
            assert iso_equivalent(M1, M2)

    def test_residue_test_agrees_with_mu_search_exhaustively(self):
        F = F21
        q = 3

        def mu_oracle(M1, M2):
            return any(
                (M2.gamma, M2.delta)
                == (F.mul(F.pow(mu, q - 1), M1.gamma), F.mul(F.pow(mu, q * q - 1), M1.delta))
                for mu in range(1, F.size)
            )

        for g1 in range(1, F.size):
            for d1 in range(1, F.size):
                M1 = FiniteDrinfeldModule(F, g1, d1)
                for g2 in range(1, F.size):
                    for d2 in range(1, F.size):
                        M2 = FiniteDrinfeldModule(F, g2, d2)
                        assert iso_test_via_residues(M1, M2) == mu_oracle(M1, M2)

    def test_residue_test_rejects_zero_gamma(self):
        with pytest.raises(ValueError):
            iso_test_via_residues(FiniteDrinfeldModule(F21, 0, 1), FiniteDrinfeldModule(F21, 1, 1))

    def test_mixed_zero_gamma_never_isomorphic(self):
        assert not iso_equivalent(FiniteDrinfeldModule(F21, 0, 1), FiniteDrinfeldModule(F21, 1, 1))

    def test_equivalence_relation_random(self):
        rng = random.Random(23)
        mods = [FiniteDrinfeldModule(F21, rng.randrange(9), rng.randrange(1, 9)) for _ in range(40)]
        for _ in range(150):
            a, b, c = rng.choice(mods), rng.choice(mods), rng.choice(mods)
            assert iso_equivalent(a, a)
            assert iso_equivalent(a, b) == iso_equivalent(b, a)
            if iso_equivalent(a, b) and iso_equivalent(b, c):
                assert iso_equivalent(a, c)

    def test_charpoly_constant_on_classes(self):
        rng = random.Random(29)
        for _ in range(60):
            M1 = FiniteDrinfeldModule(F21, rng.randrange(9), rng.randrange(1, 9))
            M2 = FiniteDrinfeldModule(F21, rng.randrange(9), rng.randrange(1, 9))
            if iso_equivalent(M1, M2):
                assert frobenius_charpoly(M1) == frobenius_charpoly(M2)


class TestClassEnumeration:
    def test_degree_one_classes_are_singletons(self):
        cls = enumerate_iso_classes(FT)
        assert len(cls) == 6
        assert all(c.size == 1 for c in cls)

    def test_total_and_sizes_match_classification(self):
        # sum of sizes = |p|(|p|-1); gamma != 0 classes have size (|p|-1)/(q-1),
        # gamma = 0 classes (x even) size (|p|-1)/(q^2-1)
        cls = enumerate_iso_classes(F21)
        assert sum(c.size for c in cls) == 9 * 8
        for c in cls:
            assert c.size == (1 if c.gamma == 0 else 4)
        assert sum(1 for c in cls if c.gamma == 0) <= 8

    def test_representatives_minimal_and_consistent(self):
        for c in enumerate_iso_classes(F21):
            M = FiniteDrinfeldModule(F21, c.gamma, c.delta)
            assert frobenius_charpoly(M) == c.charpoly
            assert verify_frobenius_identity(M, c.charpoly.a, c.charpoly.u)

    def test_class_members_counted_once(self):
        # regroup all pairs by iso_equivalent against the representatives
        cls = enumerate_iso_classes(F21)
        total = 0
        for gamma in range(9):
            for delta in range(1, 9):
                M = FiniteDrinfeldModule(F21, gamma, delta)
                owners = [c for c in cls
                          if iso_equivalent(M, FiniteDrinfeldModule(F21, c.gamma, c.delta))]
                assert len(owners) == 1
                total += 1
        assert total == 72

    def test_guard(self):
        with pytest.raises(ValueError):
            enumerate_iso_classes(F21, max_pairs=10)

    def test_odd_degree_gamma_zero_class_sizes(self):
        # x odd: gamma = 0 classes have the common size (|p|-1)/(q-1)
        F = residue_field(P("T^3+2*T+1"))
        for c in enumerate_iso_classes(F):
            assert c.size == (27 - 1) // 2
