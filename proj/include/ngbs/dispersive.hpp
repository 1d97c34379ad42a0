#pragma once

// Quantum-computation layer on top of generated binomial states: dispersive
// photon-number phase shifts, the pi dispersive interaction, a logical qubit
// encoded in an orthogonal state pair, probabilistic superposition
// preparation and the CNOT gate with an atomic control.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "ngbs/fock.hpp"
#include "ngbs/types.hpp"

namespace ngbs {

// Effective two-level description of the dispersively coupled atom; the far
// upper level is adiabatically eliminated and never populated.
struct ThreeLevelAtomState {
    Complex g;  // ground amplitude
    Complex e;  // excited amplitude
};

// Logical qubit basis |0_L> = |N,1/2,phi>, |1_L> = |N,1/2,phi+pi>; p is fixed
// at 1/2 so the pair is exactly orthogonal.
struct LogicalQubitSpec {
    int max_photons = 1;
    Real phi = 0;
};

inline FockVector logical_zero(const LogicalQubitSpec& spec) {
    return binomial_state({spec.max_photons, 0.5, spec.phi});
}

inline FockVector logical_one(const LogicalQubitSpec& spec) {
    return binomial_state({spec.max_photons, 0.5, reduce_phase(spec.phi + kPi)});
}

/// Photon-number-dependent phase: amplitude_n -> amplitude_n e^(-i n theta).
/// This is the entire effect of the dispersive coupling on the excited
/// branch; the ground branch sees the identity.
inline FockVector dispersive_phase(FockVector field, Real theta) {
    for (Eigen::Index n = 0; n < field.size(); ++n)
        field[n] *= std::polar(Real{1}, -Real(n) * theta);
    return field;
}

// Atom-field joint state for the dispersive gates.
struct AtomFieldState {
    FockVector g;
    FockVector e;

    Real squared_norm() const { return g.squaredNorm() + e.squaredNorm(); }
};

/// The pi dispersive interaction: keeps the field on the ground branch,
/// applies the theta = pi number phase on the excited branch. Linear in both
/// arguments; on |N,1/2,phi> it maps the excited branch to |N,1/2,phi+pi>.
inline AtomFieldState pi_di(const ThreeLevelAtomState& atom, const FockVector& field) {
    return {atom.g * field, atom.e * dispersive_phase(field, kPi)};
}

/// pi/2 pulse with the convention |g> -> (|g>+|e>)/sqrt(2),
/// |e> -> (|e>-|g>)/sqrt(2).
inline ThreeLevelAtomState ramsey_pi_half(const ThreeLevelAtomState& atom) {
    const Real inv_sqrt2 = Real{1} / std::sqrt(Real{2});
    return {(atom.g - atom.e) * inv_sqrt2, (atom.g + atom.e) * inv_sqrt2};
}

enum class DispersiveOutcome { ground, excited };

struct QubitPreparation {
    DispersiveOutcome outcome;
    FockVector field;
    Real probability;  // Born probability of the realized outcome
};

/// Prepares a|0_L> + b|1_L> in the cavity: Ramsey-prepare the atom as
/// a|g> + b|e>, run the pi dispersive interaction, apply the pi/2 pulse,
/// measure the atom. The excited outcome yields a|0_L> + b|1_L>, the ground
/// outcome a|0_L> - b|1_L>; both occur with probability exactly 1/2 for any
/// normalized (a, b). The measurement draw comes from the caller's generator.
inline QubitPreparation prepare_qubit_superposition(Complex a, Complex b, const LogicalQubitSpec& spec,
                                                    std::mt19937_64& rng) {
    if (std::abs(std::norm(a) + std::norm(b) - 1) > 1e-12)
        throw std::invalid_argument("prepare_qubit_superposition: (a,b) must be normalized");
    const AtomFieldState after_di = pi_di({a, b}, logical_zero(spec));
    // pi/2 pulse on the atomic part of the entangled state: the |g> branch
    // feeds (|g>+|e>)/sqrt(2), the |e> branch (|e>-|g>)/sqrt(2).
    const Real inv_sqrt2 = Real{1} / std::sqrt(Real{2});
    const FockVector g_branch = (after_di.g - after_di.e) * inv_sqrt2;
    const FockVector e_branch = (after_di.g + after_di.e) * inv_sqrt2;
    const Real p_excited = e_branch.squaredNorm();
    const Real u = Real(rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
    if (u < p_excited) return {DispersiveOutcome::excited, e_branch / std::sqrt(p_excited), p_excited};
    const Real p_ground = g_branch.squaredNorm();
    return {DispersiveOutcome::ground, g_branch / std::sqrt(p_ground), p_ground};
}

struct LogicalAmplitudes {
    Complex on_zero;     // <0_L|field>
    Complex on_one;      // <1_L|field>
    Real residual_norm;  // norm of the component outside the logical span
};

/// Projects a field onto the logical basis; the basis is exactly orthonormal,
/// so the residual measures how far the field leaves the logical span.
inline LogicalAmplitudes logical_decompose(const FockVector& field, const LogicalQubitSpec& spec) {
    const FockVector zero = logical_zero(spec);
    const FockVector one = logical_one(spec);
    const Complex alpha = inner_product(zero, field);
    const Complex beta = inner_product(one, field);
    const Eigen::Index dim = std::max(field.size(), zero.size());
    FockVector residual = FockVector::Zero(dim);
    residual.head(field.size()) = field;
    residual.head(zero.size()) -= alpha * zero + beta * one;
    return {alpha, beta, residual.norm()};
}

/// CNOT with the atom as control (|g> = |0_c>, |e> = |1_c>) and the logical
/// field qubit as target, realized by the pi dispersive interaction. The
/// target must lie in the logical span; anything else is rejected rather than
/// silently phase-shifted.
inline AtomFieldState cnot(const ThreeLevelAtomState& control, const FockVector& target,
                           const LogicalQubitSpec& spec) {
    if (logical_decompose(target, spec).residual_norm >= 1e-10)
        throw std::invalid_argument("cnot: target field lies outside the logical span");
    return pi_di(control, target);
}

}  // namespace ngbs
