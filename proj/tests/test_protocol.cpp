#include <doctest.h>

#include <array>
#include <cmath>

#include "ngbs/protocol.hpp"

using namespace ngbs;

namespace {

// Interaction times for N = 10, frozen from a 50-digit evaluation of the same
// closed forms.
constexpr std::array<double, 10> kGoldenTimes{
    4.71238898038468986,  5.49778714378213817,  11.7837572378186971, 0.605133056276500679,
    0.566904115853819543, 0.530807273828763583, 0.499881206529307509, 0.473552330222141974,
    0.450942074256395052, 0.431305969448529873};

// Effective coefficients after the tenth step, same provenance.
constexpr std::array<double, 11> kGoldenCoefficients{
    1.0,
    3.07148692238640913,
    6.36673011234551719,
    10.2288505303104697,
    13.4134529997560282,
    14.6799954366955054,
    13.4835303172704257,
    10.2937109750612587,
    6.32678793470114419,
    2.89080463340537343,
    0.773362621139817181};

Real overlap_magnitude(const FockVector& a, const FockVector& b) {
    return std::abs(inner_product(a, b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("first step is exact") {
    auto [a, c] = step_coefficients({1.0}, 3 * kPi / 2, 0.0);
    REQUIRE(a.size() == 1);
    REQUIRE(c.size() == 2);
    CHECK(std::abs(a[0]) < 1e-15);  // cos(3pi/2), zero up to machine epsilon
    CHECK(c[0] == 1.0);
    CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("second step kills the n=1 residual and reproduces the quoted c") {
    auto [a, c] = step_coefficients({1.0, 1.0}, 7 * kPi / 4, 0.0);
    REQUIRE(a.size() == 2);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(a[0]) < 1e-15);  // cos + sin vanish at 7pi/4
    CHECK(c[0] == 1.0);
    CHECK(c[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(c[2] - -(1 - 3.114e-3)) < 1e-6);
}

TEST_CASE("sign-flip steps reduce to the explicit two-term form") {
    const std::vector<Real> prev{1.0, 1.7, 1.7, 0.99};
    const Real gT = 0.61;
    auto [a, c] = step_coefficients(prev, gT, kPi);
    for (int n = 0; n <= 4; ++n) {
        const Real cn = n < 4 ? prev[n] : 0.0;
        const Real cl = n - 1 >= 0 ? prev[n - 1] : 0.0;
        const Real theta = gT * std::sqrt(Real(n));
        CHECK(c[n] == doctest::Approx(cn * std::cos(theta) + cl * std::sin(theta)).epsilon(1e-15));
    }
    for (int n = 1; n <= 4; ++n) {
        const Real cn = n < 4 ? prev[n] : 0.0;
        const Real cl = prev[n - 1];
        const Real theta = gT * std::sqrt(Real(n));
        CHECK(a[n - 1] == doctest::Approx(cl * std::cos(theta) - cn * std::sin(theta)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(step_coefficients({1.0}, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("planned times: exact constants, quoted third time, golden sequence") {
    const ProtocolPlan plan = plan_times(10, 0.0);
    CHECK(plan.gT[0] == 3 * kPi / 2);
    CHECK(plan.gT[1] == 7 * kPi / 4);
    CHECK(std::abs(plan.gT[2] - 11.784) < 1e-3);
    for (int k = 0; k < 10; ++k)
        CHECK(plan.gT[k] == doctest::Approx(kGoldenTimes[k]).epsilon(1e-12));
    CHECK_FALSE(plan.time_out_of_range);
}

TEST_CASE("plan phases follow the step convention") {
    const Real varphi1 = 0.4;
    const ProtocolPlan plan = plan_times(6, varphi1);
    for (int k = 1; k <= 3; ++k) {
        CHECK(plan.varphi[k - 1] == varphi1);
        CHECK(plan.Phi[k - 1] == 0.0);
    }
    for (int k = 4; k <= 6; ++k) {
        CHECK(plan.varphi[k - 1] == doctest::Approx(reduce_phase(kPi + varphi1)).epsilon(1e-15));
        CHECK(plan.Phi[k - 1] == kPi);
    }
    CHECK_THROWS_AS(plan_times(0, 0.0), std::invalid_argument);
}

TEST_CASE("final coefficients match the golden tenth row") {
    const GenerationReport report = run_protocol(10, 0.5, 0.0);
    const auto& c = report.steps.back().c;
    for (int n = 0; n <= 10; ++n)
        CHECK(c[n] == doctest::Approx(kGoldenCoefficients[n]).epsilon(1e-12));
}

TEST_CASE("extended-precision recursion agrees with the golden data") {
    const auto plan = detail::plan_recursion<long double>(10, {});
    for (int k = 0; k < 10; ++k)
        CHECK(static_cast<double>(plan.gT[k]) == doctest::Approx(kGoldenTimes[k]).epsilon(1e-15));
    for (int n = 0; n <= 10; ++n)
        CHECK(static_cast<double>(plan.c_history[10][n]) ==
              doctest::Approx(kGoldenCoefficients[n]).epsilon(1e-15));
}

TEST_CASE("targeted residual vanishes at every planned step") {
    const GenerationReport report = run_protocol(10, 0.5, 0.0);
    for (const StepRecord& step : report.steps) {
        const int target = std::max(1, step.k - 1);
        CHECK(std::abs(step.a_residual[target - 1]) < 1e-12);
        CHECK(step.c[0] == 1.0);
    }
    // the first two steps are exact to machine precision
    CHECK(std::abs(report.steps[0].a_residual[0]) < 1e-15);
    CHECK(std::abs(report.steps[1].a_residual[0]) < 1e-15);
}

TEST_CASE("sign convention at the planned times") {
    const ProtocolPlan plan = plan_times(10, 0.0);
    for (int k = 1; k <= 10; ++k) {
        const int target = std::max(1, k - 1);
        const Real theta = plan.gT[k - 1] * std::sqrt(Real(target));
        if (plan.Phi[k - 1] == 0.0) {
            CHECK(std::sin(theta) <= 1e-15);  // negative-sine branch
        } else {
            CHECK(std::sin(theta) >= 0.0);  // principal branch keeps both signs positive
            CHECK(std::cos(theta) >= 0.0);
        }
    }
}

TEST_CASE("branch override moves a time by whole periods") {
    const ProtocolPlan base = plan_times(4, 0.0);
    const ProtocolPlan moved = plan_times(4, 0.0, {1, 2, 5, 1});
    CHECK(moved.branch[3] == 1);
    CHECK(moved.gT[3] == doctest::Approx(base.gT[3] + kPi / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("negative coefficients entering a later time solve are flagged") {
    CHECK_FALSE(plan_times(10, 0.0).negative_coefficient);
    // the off-branch fourth step drives the whole row negative, which the
    // fifth step's principal-branch solve then flags
    CHECK(plan_times(5, 0.0, {1, 2, 5, 1}).negative_coefficient);
}

TEST_CASE("short-time warning flag for large N") {
    // times decay like (pi/2)/sqrt(k); they drop below 1e-1 around k = 248
    const ProtocolPlan plan = plan_times(250, 0.0);
    CHECK(plan.time_out_of_range);
    CHECK(plan.gT.back() < 0.1);
    CHECK_FALSE(plan_times(10, 0.0).time_out_of_range);
}

TEST_CASE("step probabilities") {
    const GenerationReport r2 = run_protocol(2, 0.5, 0.0);
    CHECK(r2.steps[0].probability == doctest::Approx(1.0).epsilon(1e-14));

    for (Real p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const GenerationReport r = run_protocol(3, p, 0.0);
        CHECK(std::abs(r.steps[1].probability - (1 - 6.22e-3 * p * p)) < 5e-5);
        const Real quoted3 = 1 - 8e-2 * p * (1 - p) * (1 - p) / (1 - 6e-3 * p * p);
        CHECK(std::abs(r.steps[2].probability - quoted3) < 5e-3);
        for (const StepRecord& s : r.steps) {
            CHECK(s.probability > 0.0);
            CHECK(s.probability <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("one-photon run is exact") {
    const GenerationReport report = run_protocol(1, 0.37, 0.9);
    CHECK(report.total_probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(overlap_magnitude(report.final_state, binomial_state({1, 0.37, 0.9})) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(report.mismatch[0] == 0.0);
    CHECK(std::abs(report.mismatch[1]) < 1e-15);
}

TEST_CASE("three-photon headline numbers") {
    const GenerationReport report = run_protocol(3, 0.5, 0.0);
    CHECK(std::abs(report.fidelity - (1 - 3.9e-5)) < 1e-5);
    CHECK(report.total_probability > 0.98);
    CHECK(report.mismatch[1] == doctest::Approx(1.391e-2).epsilon(2e-2));
    CHECK(report.mismatch[3] == doctest::Approx(3.167e-3).epsilon(2e-2));
}

TEST_CASE("degenerate p values") {
    const GenerationReport vac = run_protocol(5, 0.0, 0.3);
    CHECK(vac.total_probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(vac.final_state[0] - Complex{1, 0}) < 1e-14);
    CHECK(vac.final_state.tail(5).norm() < 1e-14);
    CHECK(vac.fidelity == doctest::Approx(1.0).epsilon(1e-14));

    const GenerationReport top = run_protocol(5, 1.0, 0.0);
    CHECK(std::abs(std::abs(top.final_state[5]) - 1.0) < 1e-14);
    CHECK(top.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    // success probability collapses to the squared top coefficient
    const Real c5 = top.steps.back().c[5];
    CHECK(top.total_probability == doctest::Approx(c5 * c5).epsilon(1e-12));
}

TEST_CASE("phase factorizes out of the final state") {
    for (int N : {2, 5, 9}) {
        const Real phi = 1.3;
        const GenerationReport with_phase = run_protocol(N, 0.4, phi);
        const GenerationReport no_phase = run_protocol(N, 0.4, 0.0);
        for (int n = 0; n <= N; ++n) {
            const Complex expected = no_phase.final_state[n] * std::polar(Real{1}, n * phi);
            CHECK(std::abs(with_phase.final_state[n] - expected) < 1e-12);
        }
        CHECK(with_phase.fidelity == doctest::Approx(no_phase.fidelity).epsilon(1e-12));
        CHECK(with_phase.total_probability == doctest::Approx(no_phase.total_probability).epsilon(1e-12));
    }
}

TEST_CASE("coefficients below the top stay positive for the default plan") {
    const GenerationReport report = run_protocol(10, 0.5, 0.0);
    for (const StepRecord& step : report.steps)
        for (int n = 0; n < step.k; ++n) CHECK(step.c[n] > 0.0);
}

TEST_CASE("fidelity tends to one as p goes to zero") {
    // The infidelity at p = 1e-3 ranges from 5.8e-7 (N=3) to 8.2e-6 (N=10),
    // scaling like N p delta_1^2, plus an N=2 outlier at 4.0e-6.
    for (int N = 1; N <= 10; ++N) {
        const GenerationReport report = run_protocol(N, 1e-3, 0.0);
        if (N != 2 && N <= 4) CHECK(report.fidelity >= 1 - 1e-6);
        CHECK(report.fidelity >= 1 - 1e-5);
        CHECK(report.fidelity >= run_protocol(N, 1e-2, 0.0).fidelity);
    }
}

TEST_CASE("report fidelity equals the closed-form coefficient ratio") {
    for (int N : {3, 7}) {
        for (Real p : {0.2, 0.5, 0.8}) {
            const GenerationReport report = run_protocol(N, p, 0.0);
            const auto& c = report.steps.back().c;
            Real numerator = 0, denominator = 0;
            for (int n = 0; n <= N; ++n) {
                const Real w = std::pow(p, n) * std::pow(1 - p, N - n);
                numerator += binomial_coefficient(N, n) * c[n] * w;
                denominator += c[n] * c[n] * w;
            }
            CHECK(report.fidelity == doctest::Approx(numerator * numerator / denominator).epsilon(1e-12));
        }
    }
}

TEST_CASE("full simulation reproduces the recursion") {
    for (int N = 1; N <= 10; ++N) {
        for (int ip = 1; ip <= 9; ip += 2) {
            const Real p = ip / 10.0;
            const GenerationReport rec = run_protocol(N, p, 1.1);
            const GenerationReport sim = run_protocol_full_sim(N, p, 1.1);
            CHECK(overlap_magnitude(rec.final_state, sim.final_state) >= 1 - 1e-10);
            for (int k = 0; k < N; ++k)
                CHECK(std::abs(rec.steps[k].probability - sim.steps[k].probability) <= 1e-10);
            CHECK(std::abs(rec.total_probability - sim.total_probability) <= 1e-10);
        }
    }
}

TEST_CASE("full simulation of one step matches exactly") {
    const GenerationReport rec = run_protocol(1, 0.6, 0.2);
    const GenerationReport sim = run_protocol_full_sim(1, 0.6, 0.2);
    CHECK(overlap_magnitude(rec.final_state, sim.final_state) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sim.total_probability == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("full simulation handles the degenerate p values") {
    const GenerationReport vac = run_protocol_full_sim(6, 0.0, 0.4);
    CHECK(vac.total_probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(std::abs(vac.final_state[0]) - 1.0) < 1e-14);

    const GenerationReport top = run_protocol_full_sim(6, 1.0, 0.0);
    const GenerationReport rec = run_protocol(6, 1.0, 0.0);
    CHECK(std::abs(std::abs(top.final_state[6]) - 1.0) < 1e-12);
    CHECK(top.total_probability == doctest::Approx(rec.total_probability).epsilon(1e-12));
}

TEST_CASE("exact-condition identity closes to machine precision") {
    CHECK(exact_condition_identity_error(30) < 1e-12);
    CHECK(exact_condition_identity_error(1) < 1e-15);
}

TEST_CASE("conditional-scheme baseline") {
    CHECK(conditional_scheme_baseline(1) == 0.5);
    CHECK(conditional_scheme_baseline(3) == 0.125);
    CHECK(conditional_scheme_baseline(4) == 0.0625);
    CHECK_THROWS_AS(conditional_scheme_baseline(0), std::invalid_argument);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(run_protocol(0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(run_protocol(3, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(run_protocol(3, -0.1, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
