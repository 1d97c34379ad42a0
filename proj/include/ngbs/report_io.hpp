#pragma once

// JSON and CSV serialization of the report types. JSON carries full double
// precision and round-trips; CSV uses a fixed header row, comma separators
// and '.' decimals regardless of locale.

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>

#include "ngbs/feasibility.hpp"
#include "ngbs/protocol.hpp"

namespace ngbs {

using nlohmann::json;

inline void to_json(json& j, const ProtocolPlan& plan) {
    j = json{{"max_photons", plan.max_photons}, {"varphi1", plan.varphi1},
             {"gT", plan.gT},                   {"varphi", plan.varphi},
             {"Phi", plan.Phi},                 {"branch", plan.branch},
             {"time_out_of_range", plan.time_out_of_range},
             {"negative_coefficient", plan.negative_coefficient}};
}

inline void from_json(const json& j, ProtocolPlan& plan) {
    j.at("max_photons").get_to(plan.max_photons);
    j.at("varphi1").get_to(plan.varphi1);
    j.at("gT").get_to(plan.gT);
    j.at("varphi").get_to(plan.varphi);
    j.at("Phi").get_to(plan.Phi);
    j.at("branch").get_to(plan.branch);
    j.at("time_out_of_range").get_to(plan.time_out_of_range);
    j.at("negative_coefficient").get_to(plan.negative_coefficient);
}

inline void to_json(json& j, const StepRecord& step) {
    j = json{{"k", step.k},
             {"gT", step.gT},
             {"c", step.c},
             {"a_residual", step.a_residual},
             {"probability", step.probability}};
}

inline void from_json(const json& j, StepRecord& step) {
    j.at("k").get_to(step.k);
    j.at("gT").get_to(step.gT);
    j.at("c").get_to(step.c);
    j.at("a_residual").get_to(step.a_residual);
    j.at("probability").get_to(step.probability);
}

inline void to_json(json& j, const GenerationReport& report) {
    std::vector<Real> re(report.final_state.size()), im(report.final_state.size());
    for (Eigen::Index n = 0; n < report.final_state.size(); ++n) {
        re[n] = report.final_state[n].real();
        im[n] = report.final_state[n].imag();
    }
    j = json{{"plan", report.plan},
             {"p", report.p},
             {"phi", report.phi},
             {"steps", report.steps},
             {"final_state", json{{"re", re}, {"im", im}}},
             {"total_probability", report.total_probability},
             {"fidelity", report.fidelity},
             {"mismatch", report.mismatch}};
}

inline void from_json(const json& j, GenerationReport& report) {
    j.at("plan").get_to(report.plan);
    j.at("p").get_to(report.p);
    j.at("phi").get_to(report.phi);
    j.at("steps").get_to(report.steps);
    const auto re = j.at("final_state").at("re").get<std::vector<Real>>();
    const auto im = j.at("final_state").at("im").get<std::vector<Real>>();
    report.final_state.resize(static_cast<Eigen::Index>(re.size()));
    for (std::size_t n = 0; n < re.size(); ++n)
        report.final_state[static_cast<Eigen::Index>(n)] = Complex{re[n], im[n]};
    j.at("total_probability").get_to(report.total_probability);
    j.at("fidelity").get_to(report.fidelity);
    j.at("mismatch").get_to(report.mismatch);
}

inline void to_json(json& j, const LifetimeStepCheck& check) {
    j = json{{"k", check.k},
             {"interaction_time_s", check.interaction_time},
             {"within_atom_lifetime", check.within_atom_lifetime},
             {"within_cavity_lifetime", check.within_cavity_lifetime},
             {"within_decoherence_time", check.within_decoherence_time}};
}

inline void to_json(json& j, const LifetimeReport& report) {
    j = json{{"steps", report.steps},
             {"decoherence_time_s", report.decoherence_time_s},
             {"all_ok", report.all_ok}};
}

inline void to_json(json& j, const ExperimentParams& params) {
    j = json{{"g_rad_per_s", params.g},
             {"tau_atom_s", params.tau_atom},
             {"tau_cavity_s", params.tau_cavity},
             {"rel_time_err", params.rel_time_err},
             {"quality_factor", params.quality_factor}};
}

inline void to_json(json& j, const FeasibilityReport& report) {
    j = json{{"params", report.params},
             {"max_photons", report.max_photons},
             {"gT", report.gT},
             {"lifetimes", report.lifetimes},
             {"timing_mismatch_estimate", report.timing_mismatch_estimate},
             {"timing_mismatch_estimate_kind", "order-of-magnitude"},
             {"infidelity_estimate", report.infidelity_estimate},
             {"max_photons_g_angular", report.max_photons_g_angular},
             {"max_photons_g_cycles", report.max_photons_g_cycles},
             {"detector_efficiency", json{{"low", report.detector_efficiency_low},
                                          {"high", report.detector_efficiency_high}}}};
}

inline void to_json(json& j, const JitterStats& stats) {
    j = json{{"trials", stats.trials},
             {"seed", stats.seed},
             {"rel_sigma", stats.rel_sigma},
             {"mean_fidelity", stats.mean_fidelity},
             {"min_fidelity", stats.min_fidelity},
             {"mean_probability", stats.mean_probability}};
}

/// Coefficient table of one generation run: one row per photon number.
inline void write_generation_csv(std::ostream& os, const GenerationReport& report) {
    const int N = report.plan.max_photons;
    os << "n,c,b,delta\n";
    for (int n = 0; n <= N; ++n) {
        const Real b = binomial_coefficient(N, n);
        const Real c = report.steps.back().c[n];
        os << n << ',' << c << ',' << b << ',' << report.mismatch[n] << '\n';
    }
}

inline std::string format_real(Real value, int significant = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, value);
    return buf;
}

}  // namespace ngbs
