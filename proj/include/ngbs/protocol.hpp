#pragma once

// Sequential-atom generation of N-photon generalized binomial states.
//
// Each step injects one Ramsey-prepared atom, lets it interact resonantly for
// a planned dimensionless time gT_k, and post-selects the atom in the ground
// state. The effective field coefficients obey a two-term recursion; the
// interaction times are chosen so that the dominant excited-branch residual
// (index n = k-1) vanishes exactly at every step. run_protocol executes the
// coefficient recursion, run_protocol_full_sim executes the same plan as a
// literal joint-state simulation and serves as its end-to-end oracle.

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ngbs/fock.hpp"
#include "ngbs/jc.hpp"
#include "ngbs/types.hpp"

namespace ngbs {

// Planned interaction times and atomic phases for generating an N-photon state.
struct ProtocolPlan {
    int max_photons = 0;          // N
    Real varphi1 = 0;             // free base phase of the first atom
    std::vector<Real> gT;         // dimensionless interaction times, k = 1..N
    std::vector<Real> varphi;     // atomic relative phases varphi_k
    std::vector<Real> Phi;        // sign-convention phases Phi_k, 0 or pi
    std::vector<int> branch;      // arctan branch offset per step
    bool time_out_of_range = false;  // some gT_k left [1e-1, 1e2]
    // The principal-branch rule for the later steps assumes positive
    // coefficients; a negative one entering a time solution is flagged, not
    // silently accepted.
    bool negative_coefficient = false;
};

struct StepRecord {
    int k = 0;
    Real gT = 0;
    std::vector<Real> c;           // effective coefficients c_n, n = 0..k
    std::vector<Real> a_residual;  // excited-branch residuals a_n, n = 1..k
    Real probability = 0;          // ground-state detection probability at the run's p
};

struct GenerationReport {
    ProtocolPlan plan;
    Real p = 0;
    Real phi = 0;
    std::vector<StepRecord> steps;
    FockVector final_state;         // dim N+1, normalized
    Real total_probability = 0;     // product of the step probabilities
    Real fidelity = 0;              // against the ideal |N,p,phi>
    std::vector<Real> mismatch;     // delta_n = 1 - c_n/b_n, n = 0..N
};

namespace detail {

// Default branch offsets m_k of the per-step time solution
// theta_k = arctan(ratio) + m_k*pi: 1, 2, 5 for the first three steps
// (where the negative-sine convention applies), then the principal branch.
inline int default_branch(int k) {
    switch (k) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 5;
        default: return 0;
    }
}

template <typename Scalar>
Scalar step_sign(Scalar Phi) {
    if (std::abs(Phi) < Scalar(1e-9)) return Scalar(1);
    if (std::abs(Phi - pi_v<Scalar>) < Scalar(1e-9)) return Scalar(-1);
    throw std::invalid_argument("Phi_k must be 0 or pi");
}

// One recursion step: residuals a_n (n = 1..k) and next coefficients c_n
// (n = 0..k), with the overall sign flipped on Phi_k = pi so c_0 keeps its
// sign. Out-of-range previous coefficients count as zero.
template <typename Scalar>
std::pair<std::vector<Scalar>, std::vector<Scalar>> step_coefficients_impl(
    std::span<const Scalar> prev_c, Scalar gT_k, Scalar sigma) {
    const int k = static_cast<int>(prev_c.size());  // prev_c covers n = 0..k-1
    auto at = [&](int n) { return n >= 0 && n < k ? prev_c[n] : Scalar(0); };
    std::vector<Scalar> a(k), c(k + 1);
    for (int n = 1; n <= k; ++n) {
        const Scalar theta = gT_k * std::sqrt(Scalar(n));
        a[n - 1] = at(n - 1) * std::cos(theta) + sigma * at(n) * std::sin(theta);
    }
    for (int n = 0; n <= k; ++n) {
        const Scalar theta = gT_k * std::sqrt(Scalar(n));
        c[n] = sigma * (sigma * at(n) * std::cos(theta) - at(n - 1) * std::sin(theta));
    }
    return {std::move(a), std::move(c)};
}

// Dimensionless time for step k: kills the excited-branch residual at
// n = k-1 (n = 1 for the first step). The first two steps with default
// branches are the exact closed-form constants 3pi/2 and 7pi/4.
template <typename Scalar>
Scalar solve_step_time(std::span<const Scalar> prev_c, int k, Scalar sigma, int branch_m) {
    if (k == 1 && branch_m == default_branch(1)) return 3 * pi_v<Scalar> / 2;
    if (k == 2 && branch_m == default_branch(2)) return 7 * pi_v<Scalar> / 4;
    const int target = std::max(1, k - 1);
    const Scalar c_lo = target - 1 < static_cast<int>(prev_c.size()) ? prev_c[target - 1] : Scalar(0);
    const Scalar c_hi = target < static_cast<int>(prev_c.size()) ? prev_c[target] : Scalar(0);
    Scalar theta;
    if (c_hi == Scalar(0)) {
        theta = pi_v<Scalar> / 2 + branch_m * pi_v<Scalar>;
    } else {
        theta = std::atan(-c_lo / (sigma * c_hi)) + branch_m * pi_v<Scalar>;
    }
    return theta / std::sqrt(Scalar(target));
}

template <typename Scalar>
struct PlanData {
    std::vector<Scalar> gT;
    std::vector<Scalar> Phi;
    std::vector<std::vector<Scalar>> c_history;  // c_history[k] = coefficients after step k
    bool out_of_range = false;
    bool negative_coefficient = false;
};

// Times and running coefficients are built together: each step's time depends
// on the previous step's effective coefficients.
template <typename Scalar>
PlanData<Scalar> plan_recursion(int max_photons, std::span<const int> branches) {
    if (max_photons < 1) throw std::invalid_argument("plan: N must be >= 1");
    PlanData<Scalar> plan;
    plan.c_history.push_back({Scalar(1)});
    for (int k = 1; k <= max_photons; ++k) {
        const Scalar Phi = k <= 3 ? Scalar(0) : pi_v<Scalar>;
        const Scalar sigma = step_sign(Phi);
        const int m = k - 1 < static_cast<int>(branches.size()) ? branches[k - 1] : default_branch(k);
        const std::vector<Scalar>& prev = plan.c_history.back();
        if (k >= 4 && (prev[k - 2] < Scalar(0) || prev[k - 1] < Scalar(0)))
            plan.negative_coefficient = true;
        const Scalar gT = solve_step_time<Scalar>(prev, k, sigma, m);
        if (gT < Scalar(0.1) || gT > Scalar(100)) plan.out_of_range = true;
        plan.gT.push_back(gT);
        plan.Phi.push_back(Phi);
        plan.c_history.push_back(step_coefficients_impl<Scalar>(prev, gT, sigma).second);
    }
    return plan;
}

}  // namespace detail

/// Residuals and next effective coefficients for one step.
inline std::pair<std::vector<Real>, std::vector<Real>> step_coefficients(
    const std::vector<Real>& prev_c, Real gT_k, Real Phi_k) {
    return detail::step_coefficients_impl<Real>(prev_c, gT_k, detail::step_sign(Phi_k));
}

/// Interaction times and atomic phases for the N-step generation sequence.
/// branches overrides the arctan branch per step; entries beyond its length
/// use the default choice.
inline ProtocolPlan plan_times(int max_photons, Real varphi1, const std::vector<int>& branches = {}) {
    const auto data = detail::plan_recursion<Real>(max_photons, branches);
    ProtocolPlan plan;
    plan.max_photons = max_photons;
    plan.varphi1 = varphi1;
    plan.gT = data.gT;
    plan.Phi = data.Phi;
    plan.time_out_of_range = data.out_of_range;
    plan.negative_coefficient = data.negative_coefficient;
    for (int k = 1; k <= max_photons; ++k) {
        plan.varphi.push_back(k <= 3 ? varphi1 : reduce_phase(kPi + varphi1));
        plan.branch.push_back(k - 1 < static_cast<int>(branches.size()) ? branches[k - 1]
                                                                        : detail::default_branch(k));
    }
    return plan;
}

namespace detail {

// Squared normalization constant of the effective state with coefficients c
// over the k-photon binomial weight.
template <typename Scalar>
Scalar norm_squared(std::span<const Scalar> c, Scalar p) {
    const int k = static_cast<int>(c.size()) - 1;
    Scalar acc = 0;
    for (int n = 0; n <= k; ++n) acc += c[n] * c[n] * std::pow(p, n) * std::pow(1 - p, k - n);
    return acc;
}

}  // namespace detail

/// Ground-state detection probability of one step, as the ratio of squared
/// normalization constants. The ratio form avoids the cancellation of the
/// equivalent expanded expression.
inline Real step_probability(const std::vector<Real>& c_k, const std::vector<Real>& c_km1, Real p) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("step_probability: p must be in [0,1]");
    return detail::norm_squared<Real>(c_k, p) / detail::norm_squared<Real>(c_km1, p);
}

/// Success-probability baseline of conditional schemes that require all atoms
/// to be detected in the ground state without tuned interaction times.
inline Real conditional_scheme_baseline(int max_photons) {
    if (max_photons < 1) throw std::invalid_argument("conditional_scheme_baseline: N must be >= 1");
    return std::pow(2.0, -max_photons);
}

/// Max deviation, over 1 <= n <= k <= k_max, of the exact-condition closure:
/// substituting the trig values that solve each per-n condition reproduces the
/// next row of binomial coefficients, sqrt(b_(n-1)^2 + b_n^2) = b_n at order k.
/// Both sign conventions (negative-sine and positive-sine) are checked.
/// Evaluated in extended precision; the coefficients reach ~1e4 by k = 30 and
/// the deviation is an absolute one.
inline Real exact_condition_identity_error(int k_max) {
    if (k_max < 1) throw std::invalid_argument("exact_condition_identity_error: k_max must be >= 1");
    using Wide = long double;
    Wide worst = 0;
    for (int k = 1; k <= k_max; ++k) {
        for (int n = 1; n <= k; ++n) {
            const Wide b_lo = binomial_coefficient<Wide>(k - 1, n - 1);
            const Wide b_hi = binomial_coefficient<Wide>(k - 1, n);
            const Wide r = std::sqrt(b_lo * b_lo + b_hi * b_hi);
            const Wide b_next = binomial_coefficient<Wide>(k, n);
            // negative-sine assignment: sin = -b_lo/r, cos = b_hi/r
            const Wide minus = b_hi * (b_hi / r) - b_lo * (-b_lo / r);
            // positive-sine variant: sin = +b_lo/r, cos = +b_hi/r
            const Wide plus = b_hi * (b_hi / r) + b_lo * (b_lo / r);
            worst = std::max({worst, std::abs(minus - b_next), std::abs(plus - b_next)});
        }
    }
    return static_cast<Real>(worst);
}

namespace detail {

inline GenerationReport make_report_shell(int max_photons, Real p, Real phi) {
    if (max_photons < 1) throw std::invalid_argument("run_protocol: N must be >= 1");
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("run_protocol: p must be in [0,1]");
    GenerationReport report;
    report.plan = plan_times(max_photons, -phi);  // final mean phase is -varphi1
    report.p = p;
    report.phi = reduce_phase(phi);
    return report;
}

inline void finish_report(GenerationReport& report, const std::vector<Real>& final_c) {
    const int N = report.plan.max_photons;
    if (!final_c.empty()) {
        report.mismatch.resize(N + 1);
        for (int n = 0; n <= N; ++n)
            report.mismatch[n] = 1 - final_c[n] / binomial_coefficient(N, n);
    }
    report.fidelity = fidelity(binomial_state({N, report.p, report.phi}), report.final_state);
}

}  // namespace detail

/// Runs the coefficient recursion for the full N-step plan and reports step
/// probabilities, the final state, its fidelity to the ideal target and the
/// per-coefficient mismatches.
inline GenerationReport run_protocol(int max_photons, Real p, Real phi) {
    GenerationReport report = detail::make_report_shell(max_photons, p, phi);
    std::vector<Real> c{1.0};
    report.total_probability = 1;
    for (int k = 1; k <= max_photons; ++k) {
        auto [a, next_c] = step_coefficients(c, report.plan.gT[k - 1], report.plan.Phi[k - 1]);
        const Real prob = step_probability(next_c, c, p);
        report.steps.push_back({k, report.plan.gT[k - 1], next_c, std::move(a), prob});
        report.total_probability *= prob;
        c = std::move(next_c);
    }
    FockVector state(max_photons + 1);
    for (int n = 0; n <= max_photons; ++n) {
        const Real w = std::sqrt(std::pow(p, n) * std::pow(1 - p, max_photons - n));
        state[n] = c[n] * w * std::polar(Real{1}, n * report.phi);
    }
    report.final_state = state / state.norm();
    detail::finish_report(report, c);
    return report;
}

/// Same plan executed as a literal joint-state simulation: Ramsey-prepared
/// atom, exact resonant evolution, projective ground-state post-selection at
/// every step. Coefficient-level fields (c, a_residual, mismatch) stay empty;
/// this run exists to cross-check final states and probabilities.
inline GenerationReport run_protocol_full_sim(int max_photons, Real p, Real phi) {
    GenerationReport report = detail::make_report_shell(max_photons, p, phi);
    FockVector field = FockVector::Zero(1);
    field[0] = 1;
    report.total_probability = 1;
    for (int k = 1; k <= max_photons; ++k) {
        const AtomState atom = ramsey_prepare(p, report.plan.varphi[k - 1]);
        const JointState evolved = evolve_resonant(tensor(atom, field), report.plan.gT[k - 1]);
        const Projection ground = project_atom(evolved, AtomLevel::ground);
        report.steps.push_back({k, report.plan.gT[k - 1], {}, {}, ground.probability});
        report.total_probability *= ground.probability;
        field = ground.field;
    }
    report.final_state = FockVector::Zero(max_photons + 1);
    report.final_state.head(field.size()) = field;
    detail::finish_report(report, {});
    return report;
}

}  // namespace ngbs
