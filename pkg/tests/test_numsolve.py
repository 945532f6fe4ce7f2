import math

import numpy as np
import pytest

from gburgers.ansatz import RiccatiBranch, SolutionField, build_solution, xi_solution
from gburgers.catalog import get_case
from gburgers.jets import Region, ScalarField
from gburgers.numsolve import (BlowUpError, IbvpSpec, WellPosednessError, compare,
                               convergence_study, solve_ibvp)

F_MINUS_ONE = ScalarField(lambda T, X: -1.0, name="-1")


def tanh_front_spec(n_x=64, region=Region(0.0, 1.0, -2.0, 2.0)):
    entry = get_case(2)
    sol = build_solution(entry, RiccatiBranch(-1.0, 1.0, 1.0))
    return IbvpSpec(f=entry.f, region=region, n_x=n_x, exact=sol), sol


class TestSpecValidation:
    def test_small_grid_rejected(self):
        with pytest.raises(ValueError):
            IbvpSpec(f=F_MINUS_ONE, region=Region(0, 1, 0, 1), n_x=4,
                     exact=xi_solution(get_case(2)))

    def test_dt_safety_range(self):
        for bad in (0.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                IbvpSpec(f=F_MINUS_ONE, region=Region(0, 1, 0, 1), n_x=16,
                         dt_safety=bad, exact=xi_solution(get_case(2)))

    def test_exactly_one_data_source(self):
        with pytest.raises(ValueError):
            IbvpSpec(f=F_MINUS_ONE, region=Region(0, 1, 0, 1), n_x=16)
        with pytest.raises(ValueError):
            IbvpSpec(f=F_MINUS_ONE, region=Region(0, 1, 0, 1), n_x=16,
                     exact=xi_solution(get_case(2)),
                     initial=lambda xs: 0 * xs, left=lambda t: 0.0, right=lambda t: 0.0)


class TestSolve:
    def test_manufactured_tanh_front(self):
        spec, sol = tanh_front_spec(n_x=64)
        num = solve_ibvp(spec)
        max_err, l2_err = compare(num, sol)
        assert max_err <= 1e-3
        assert l2_err <= max_err
        assert num.values.shape == (len(num.ts), 65)
        assert num.ts[0] == 0.0 and num.ts[-1] == pytest.approx(1.0)

    def test_positive_f_rejected(self):
        f_plus = ScalarField(lambda T, X: 1.0)
        spec = IbvpSpec(f=f_plus, region=Region(0, 1, -1, 1), n_x=16,
                        initial=lambda xs: 0 * xs, left=lambda t: 0.0,
                        right=lambda t: 0.0)
        with pytest.raises(WellPosednessError) as err:
            solve_ibvp(spec)
        assert "strictly negative" in str(err.value)

    def test_sign_indefinite_f_rejected_with_location(self):
        f_mixed = ScalarField(lambda T, X: X)  # positive for x > 0
        spec = IbvpSpec(f=f_mixed, region=Region(0, 1, -2, 2), n_x=16,
                        initial=lambda xs: 0 * xs, left=lambda t: 0.0,
                        right=lambda t: 0.0)
        with pytest.raises(WellPosednessError) as err:
            solve_ibvp(spec)
        assert "(0, 2)" in str(err.value)  # names the offending point

    def test_zero_data_stays_zero_for_many_steps(self):
        # >= 1e4 steps without drift above 1e-12
        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 0.8, -1.0, 1.0), n_x=16,
                        dt_safety=0.01,
                        initial=lambda xs: 0.0 * xs, left=lambda t: 0.0,
                        right=lambda t: 0.0)
        num = solve_ibvp(spec)
        assert len(num.ts) - 1 >= 10_000
        assert float(np.max(np.abs(num.values))) <= 1e-12

    def test_deterministic(self):
        spec, _ = tanh_front_spec(n_x=32)
        a = solve_ibvp(spec)
        b = solve_ibvp(spec)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.ts, b.ts)
        assert a.scheme_metadata == b.scheme_metadata

    def test_blow_up_detected(self):
        # boundary data with a spike between the pre-step probe samples
        # (multiples of 1/64) but wider than dt: overflow mid-integration
        def spiky_left(t):
            return 1e200 if 0.408 < t < 0.420 else 0.0

        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 1.0, -1.0, 1.0), n_x=16,
                        initial=lambda xs: 0.0 * xs, left=spiky_left,
                        right=lambda t: 0.0)
        with pytest.raises(BlowUpError) as err:
            solve_ibvp(spec)
        assert 0.0 <= err.value.last_stable_time <= 0.45

    def test_absurd_step_counts_rejected(self):
        huge = 1e160
        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 1.0, -1.0, 1.0), n_x=16,
                        initial=lambda xs: huge * xs, left=lambda t: -huge,
                        right=lambda t: huge)
        with pytest.raises(ValueError, match="intractable"):
            solve_ibvp(spec)

    def test_csv_export_shape(self):
        spec, _ = tanh_front_spec(n_x=8, region=Region(0.0, 0.01, -1.0, 1.0))
        num = solve_ibvp(spec)
        lines = num.to_csv().strip().split("\n")
        assert lines[0] == "t,x,u"
        assert len(lines) == 1 + len(num.ts) * 9
        # row-major by time then space
        first = lines[1].split(",")
        assert float(first[0]) == 0.0 and float(first[1]) == -1.0


class TestCompare:
    def test_compare_zero_to_zero(self):
        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 0.1, -1.0, 1.0), n_x=16,
                        initial=lambda xs: 0.0 * xs, left=lambda t: 0.0,
                        right=lambda t: 0.0)
        num = solve_ibvp(spec)
        zero_sol = SolutionField(u=ScalarField(lambda T, X: 0.0), f=F_MINUS_ONE,
                                 provenance="zero", valid=lambda p: True)
        assert compare(num, zero_sol) == (0.0, 0.0)

    def test_self_comparison_is_discretization_error(self):
        spec, sol = tanh_front_spec(n_x=32)
        num = solve_ibvp(spec)
        max_err, _ = compare(num, sol)
        assert 0.0 < max_err < 1e-2


class TestConvergence:
    def test_case2_second_order(self):
        spec, _ = tanh_front_spec(n_x=32)
        rep = convergence_study(spec, [32, 64, 128])
        assert 1.7 <= rep.observed_order <= 2.3
        assert not rep.degenerate
        assert not rep.non_monotone
        assert rep.max_errors[-1] <= 5e-4

    def test_zero_solution_degenerate(self):
        zero_sol = SolutionField(u=ScalarField(lambda T, X: 0.0), f=F_MINUS_ONE,
                                 provenance="zero", valid=lambda p: True)
        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 0.1, -1.0, 1.0), n_x=8,
                        exact=zero_sol)
        rep = convergence_study(spec, [8, 16, 32])
        assert rep.degenerate
        assert math.isnan(rep.observed_order)

    def test_case7_advection_only_profile(self):
        # u = x/t has u_xx = 0; order comes out high or degenerate
        entry = get_case(7)
        spec = IbvpSpec(f=entry.f, region=Region(1.0, 1.5, 1.0, 3.0), n_x=32,
                        exact=xi_solution(entry))
        rep = convergence_study(spec, [32, 64, 128])
        assert rep.degenerate or rep.observed_order >= 1.7

    def test_resolution_validation(self):
        spec, _ = tanh_front_spec(n_x=16)
        with pytest.raises(ValueError):
            convergence_study(spec, [16, 32])
        with pytest.raises(ValueError):
            convergence_study(spec, [16, 24, 48])

    def test_requires_exact_solution(self):
        spec = IbvpSpec(f=F_MINUS_ONE, region=Region(0.0, 0.1, -1.0, 1.0), n_x=8,
                        initial=lambda xs: 0 * xs, left=lambda t: 0.0,
                        right=lambda t: 0.0)
        with pytest.raises(ValueError):
            convergence_study(spec, [8, 16, 32])

    def test_report_serialization(self):
        spec, _ = tanh_front_spec(n_x=16, region=Region(0.0, 0.1, -1.0, 1.0))
        rep = convergence_study(spec, [16, 32, 64])
        d = rep.to_dict()
        assert d["resolutions"] == [16, 32, 64]
        assert len(d["max_errors"]) == 3

    def test_jobs_do_not_change_the_report(self):
        spec, _ = tanh_front_spec(n_x=16, region=Region(0.0, 0.1, -1.0, 1.0))
        a = convergence_study(spec, [16, 32, 64], jobs=1)
        b = convergence_study(spec, [16, 32, 64], jobs=3)
        assert a == b
