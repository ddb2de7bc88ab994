from fractions import Fraction

import pytest

from drinfeld_avg import GF, Poly, parse_poly
from drinfeld_avg.drinfeld import class_count_by_charpoly
from drinfeld_avg.experiment import (BoxSpec, ExperimentConfig, classnumber_S,
                                     classnumber_S_lform, empirical_counts_by_charpoly,
                                     empirical_S, exact_identity_check, per_u_slices,
                                     report_to_csv, report_to_json, run_experiment)
from drinfeld_avg.primes import enumerate_primes
from drinfeld_avg.quadratic import admissible_pair
from drinfeld_avg.residue import residue_field

K3 = GF(3)


def P(s, ctx=K3):
    return parse_poly(ctx, s)


class TestClassnumberRoute:
    def test_spec_example_x1(self):
        # each of the three primes contributes H_p = 1
        assert classnumber_S(K3, 1, P("0"), 1) == Fraction(1, 2)

    def test_lform_matches_for_odd_x(self):
        for x in (1, 3):
            for acode in range(3):
                for u in (1, 2):
                    a = P(str(acode))
                    if not admissible_pair(K3, x, a, u)[0]:
                        continue
                    assert classnumber_S_lform(K3, x, a, u) == classnumber_S(K3, x, a, u)

    def test_lform_rejects_even_x(self):
        with pytest.raises(ValueError):
            classnumber_S_lform(K3, 2, P("0"), 1)

    def test_inadmissible_rejected(self):
        with pytest.raises(ValueError):
            classnumber_S(K3, 2, P("0"), 2)  # -4u = 1, a square
        with pytest.raises(ValueError):
            classnumber_S(K3, 2, P("T"), 1)  # deg a = x/2

    def test_per_u_uniformity_x1_a0(self):
        slices = per_u_slices(K3, 1, P("0"))
        assert set(slices) == {1, 2}
        assert slices[1] == slices[2]

    def test_constant_D_case_included(self):
        # x=2, a=1, u=1 passes through H_{T^2+1} = 2
        v = classnumber_S(K3, 2, P("1"), 1)
        assert v == Fraction(6, 18)


class TestEmpiricalRoute:
    def test_full_box_odd_x_equals_classnumber(self):
        for x in (1, 3):
            for acode in range(3 if x == 1 else 9):
                a = Poly.from_code(K3, acode)
                for u in (1, 2):
                    if not admissible_pair(K3, x, a, u)[0]:
                        continue
                    emp = empirical_S(K3, x, BoxSpec(x, x), a, u)
                    assert emp == classnumber_S(K3, x, a, u)

    def test_even_x_gamma_zero_correction(self):
        # at (a,u) = (1,1) some classes have a gamma = 0 representative with
        # the small class size, so the box average undershoots exactly
        emp = empirical_S(K3, 2, BoxSpec(2, 2), P("1"), 1)
        cls = classnumber_S(K3, 2, P("1"), 1)
        assert emp < cls
        assert emp == Fraction(5, 24)

    def test_a0_even_x_equal(self):
        assert empirical_S(K3, 2, BoxSpec(2, 2), P("0"), 1) == classnumber_S(K3, 2, P("0"), 1)

    def test_oversized_box_multiplicities(self):
        base = empirical_S(K3, 1, BoxSpec(1, 1), P("0"), 1)
        # growing the g side scales counts and box size together
        for A in (2, 3):
            assert empirical_S(K3, 1, BoxSpec(A, 1), P("0"), 1) == base
        # growing the Delta side adds bad-reduction pairs that count zero but
        # stay in the denominator: exact dilution (q^B - q^(B-x))/(q^B - 1)
        for B in (2, 3):
            got = empirical_S(K3, 1, BoxSpec(1, B), P("0"), 1)
            expect = base * Fraction(2 * 3 ** (B - 1), 3**B - 1)
            assert got == expect

    def test_sum_over_u_partitions_trace_count(self):
        # summing the u-slices counts every pair whose trace is a, any unit
        for x in (1, 2):
            box = BoxSpec(x, x)
            a = P("0")
            total = sum(empirical_S(K3, x, box, a, u) for u in (1, 2))
            by_hand = 0
            for p in enumerate_primes(K3, x):
                counts = empirical_counts_by_charpoly(residue_field(p), box)
                by_hand += sum(v for (ac, _), v in counts.items() if ac == a.code)
            assert total == Fraction(by_hand, box.size(3))

    def test_precondition_errors(self):
        with pytest.raises(ValueError):
            empirical_S(K3, 1, BoxSpec(1, 1), P("T"), 1)  # deg a too big
        with pytest.raises(ValueError):
            empirical_S(K3, 1, BoxSpec(1, 1), P("0"), 0)
        with pytest.raises(ValueError):
            empirical_S(K3, 4, BoxSpec(4, 4), P("0"), 1, guard=10)


class TestExactIdentity:
    def test_all_admissible_small(self):
        for x in (1, 2):
            for acode in range(3):
                for u in (1, 2):
                    a = P(str(acode))
                    if not admissible_pair(K3, x, a, u)[0]:
                        continue
                    assert exact_identity_check(K3, x, a, u)

    def test_box_must_be_full(self):
        with pytest.raises(ValueError):
            exact_identity_check(K3, 1, P("0"), 1, BoxSpec(2, 1))

    def test_boundary_pair_with_gamma_zero_classes(self):
        # (a, u) = (1, 1) at x = 2: identity holds including the size-1 classes
        assert exact_identity_check(K3, 2, P("1"), 1)
        # and the class list really does carry a gamma = 0 class for it
        F = residue_field(P("T^2+1"))
        n_cls, n_pairs = class_count_by_charpoly(F)[(P("1").code, 1)]
        assert (n_cls, n_pairs) == (2, 5)


class TestReports:
    def test_report_deterministic_and_schema(self):
        cfg = ExperimentConfig(q=3, x_values=(1, 2), a_text="0", u=1)
        r1 = run_experiment(cfg)
        r2 = run_experiment(cfg)
        assert report_to_json(r1) == report_to_json(r2)
        assert r1["schema"] == 1
        row = r1["rows"][0]
        assert row["empirical_equals_classnumber"] is True
        assert row["flags"]["q_at_least_17"] is False

    def test_q17_flag(self):
        cfg = ExperimentConfig(q=17, x_values=(1,), a_text="0", u=1,
                               routes=("main",))
        rep = run_experiment(cfg)
        assert rep["rows"][0]["flags"]["q_at_least_17"] is True

    def test_inadmissible_row_marked(self):
        cfg = ExperimentConfig(q=5, x_values=(2,), a_text="0", u=1,
                               routes=("classnumber", "main"))
        rep = run_experiment(cfg)
        row = rep["rows"][0]
        assert row["admissible"] is False
        assert "classnumber_S" not in row
        assert "main_term" in row

    def test_csv_columns(self):
        cfg = ExperimentConfig(q=3, x_values=(1,), a_text="0", u=1)
        csv = report_to_csv(run_experiment(cfg))
        lines = csv.strip().splitlines()
        assert lines[0] == "x,route,num,den,half_power,decimal"
        routes = {line.split(",")[1] for line in lines[1:]}
        assert {"empirical", "classnumber", "main"} <= routes

    def test_guarded_empirical_skipped_not_fatal(self):
        cfg = ExperimentConfig(q=3, x_values=(5,), a_text="0", u=1, guard=100,
                               routes=("empirical", "main"))
        rep = run_experiment(cfg)
        assert rep["rows"][0]["empirical_skipped"]

    def test_threads_do_not_change_report(self):
        cfg1 = ExperimentConfig(q=3, x_values=(3,), a_text="0", u=1, threads=1)
        cfg4 = ExperimentConfig(q=3, x_values=(3,), a_text="0", u=1, threads=4)
        r1, r4 = run_experiment(cfg1), run_experiment(cfg4)
        assert r1["rows"] == r4["rows"]
