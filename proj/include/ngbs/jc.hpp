#pragma once

// Exact resonant Jaynes-Cummings evolution of a two-level atom coupled to the
// cavity mode, worked in the interaction picture. Time only ever enters as the
// dimensionless product g*t. The closed-form blockwise rotation is paired with
// an independent dense matrix-exponential oracle.

#include <cmath>
#include <stdexcept>

#include "ngbs/fock.hpp"
#include "ngbs/types.hpp"

namespace ngbs {

enum class AtomLevel { excited, ground };  // |up>, |down>

struct AtomState {
    Complex up;    // amplitude on the excited level
    Complex down;  // amplitude on the ground level
};

// Product-space amplitudes: up[n] on |excited,n>, down[n] on |ground,n>.
struct JointState {
    FockVector up;
    FockVector down;

    Eigen::Index dim() const { return up.size(); }
    Real squared_norm() const { return up.squaredNorm() + down.squaredNorm(); }
};

/// sqrt(p)|up> + e^(i varphi) sqrt(1-p)|down>, the Ramsey-zone superposition.
inline AtomState ramsey_prepare(Real p, Real varphi) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("ramsey_prepare: p must be in [0,1]");
    return {Complex{std::sqrt(p), 0}, std::polar(std::sqrt(1 - p), varphi)};
}

inline JointState tensor(const AtomState& atom, const FockVector& field) {
    return {atom.up * field, atom.down * field};
}

/// Exact resonant evolution by the dimensionless time gt: each pair
/// (|up,n>, |down,n+1>) rotates by the angle gt*sqrt(n+1); |down,0> is
/// stationary. Norm is preserved exactly.
///
/// A nonzero amplitude on the top |up,n> slot would transfer out of the
/// truncated space; by default the state grows by one slot to absorb it,
/// with allow_grow = false that situation throws instead.
inline JointState evolve_resonant(JointState state, Real gt, bool allow_grow = true) {
    Eigen::Index d = state.dim();
    if (d < 1) throw std::invalid_argument("evolve_resonant: empty state");
    if (state.up[d - 1] != Complex{0, 0}) {
        if (!allow_grow) throw std::runtime_error("evolve_resonant: truncation violated (no headroom on top excited amplitude)");
        state.up.conservativeResize(d + 1);
        state.down.conservativeResize(d + 1);
        state.up[d] = state.down[d] = Complex{0, 0};
        ++d;
    }
    for (Eigen::Index n = 0; n + 1 < d; ++n) {
        const Real theta = gt * std::sqrt(Real(n + 1));
        const Real c = std::cos(theta), s = std::sin(theta);
        const Complex u = state.up[n], v = state.down[n + 1];
        state.up[n] = c * u + s * v;
        state.down[n + 1] = -s * u + c * v;
    }
    return state;
}

struct Projection {
    FockVector field;  // renormalized field conditioned on the outcome
    Real probability;  // Born probability of that outcome
};

/// Projective, ideal atomic measurement.
inline Projection project_atom(const JointState& state, AtomLevel outcome) {
    const FockVector& branch = outcome == AtomLevel::excited ? state.up : state.down;
    const Real prob = branch.squaredNorm();
    if (prob < 1e-15) throw std::runtime_error("project_atom: outcome probability is zero");
    return {branch / std::sqrt(prob), prob};
}

/// Verification oracle: dense interaction-picture generator over the truncated
/// space, exponentiated by scaling-and-squaring Taylor summation (tolerance
/// 1e-13). Shares no code with the blockwise closed form above.
inline JointState jc_unitary_oracle(JointState state, Real gt, bool allow_grow = true) {
    Eigen::Index d = state.dim();
    if (d < 1) throw std::invalid_argument("jc_unitary_oracle: empty state");
    if (state.up[d - 1] != Complex{0, 0}) {
        if (!allow_grow) throw std::runtime_error("jc_unitary_oracle: truncation violated");
        state.up.conservativeResize(d + 1);
        state.down.conservativeResize(d + 1);
        state.up[d] = state.down[d] = Complex{0, 0};
        ++d;
    }

    // Basis ordering [up_0..up_(d-1), down_0..down_(d-1)]:
    // d/dt up_(n-1) = +gt sqrt(n) down_n,  d/dt down_n = -gt sqrt(n) up_(n-1).
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    for (Eigen::Index n = 1; n < d; ++n) {
        const Real w = gt * std::sqrt(Real(n));
        a(n - 1, d + n) = w;
        a(d + n, n - 1) = -w;
    }

    int squarings = 0;
    Real norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    while (norm1 > 0.5) {
        norm1 /= 2;
        ++squarings;
    }
    const Eigen::MatrixXd scaled = a / std::pow(2.0, squarings);
    Eigen::MatrixXd expm = Eigen::MatrixXd::Identity(2 * d, 2 * d);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(2 * d, 2 * d);
    for (int k = 1; k <= 40; ++k) {
        term = (term * scaled / Real(k)).eval();
        expm += term;
        if (term.cwiseAbs().maxCoeff() < 1e-13) break;
    }
    for (int i = 0; i < squarings; ++i) expm = (expm * expm).eval();

    Eigen::VectorXcd stacked(2 * d);
    stacked << state.up, state.down;
    const Eigen::VectorXcd out = expm.cast<Complex>() * stacked;
    return {out.head(d), out.tail(d)};
}

}  // namespace ngbs
