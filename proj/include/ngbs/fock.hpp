#pragma once

// Truncated single-mode Fock-space states: generalized binomial states,
// coherent states, inner products and fidelities.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ngbs/types.hpp"

namespace ngbs {

// Parameters of the N-photon generalized binomial state
// |N,p,phi> = sum_n sqrt(C(N,n)) [p^n (1-p)^(N-n)]^(1/2) e^(i n phi) |n>.
struct BinomialStateSpec {
    int max_photons = 0;  // N
    Real p = 0;           // single-photon occurrence probability, in [0,1]
    Real phi = 0;         // mean phase, reduced to (-pi, pi]

    BinomialStateSpec() = default;
    BinomialStateSpec(int max_photons_, Real p_, Real phi_)
        : max_photons(max_photons_), p(p_), phi(reduce_phase(phi_)) {
        if (max_photons < 0) throw std::invalid_argument("BinomialStateSpec: N must be >= 0");
        if (!(p >= 0 && p <= 1)) throw std::invalid_argument("BinomialStateSpec: p must be in [0,1]");
    }
};

/// sqrt(C(N,n)). Zero for n outside 0..N (the recursion relies on that).
/// Exact integer arithmetic up to N = 61 (the largest N whose intermediate
/// product c*(N-k+i) still fits in 64 bits), log-gamma beyond.
template <typename Scalar = Real>
Scalar binomial_coefficient(int max_photons, int n) {
    const int N = max_photons;
    if (n < 0 || n > N) return Scalar{0};
    const int k = std::min(n, N - n);
    if (N <= 61) {
        // C(N,i) stays integral at every intermediate step and fits in 64 bits.
        std::uint64_t c = 1;
        for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(N - k + i) / i;
        return std::sqrt(static_cast<Scalar>(c));
    }
    const Scalar lg = std::lgamma(Scalar(N + 1)) - std::lgamma(Scalar(n + 1)) - std::lgamma(Scalar(N - n + 1));
    return std::exp(lg / 2);
}

/// Builds |N,p,phi> over dim amplitudes (dim >= N+1); 0^0 := 1 so the p=0 and
/// p=1 limits come out as |0> and |N> exactly.
inline FockVector binomial_state(const BinomialStateSpec& spec, Eigen::Index dim) {
    const int N = spec.max_photons;
    if (dim < N + 1) throw std::invalid_argument("binomial_state: dim must be at least N+1");
    FockVector v = FockVector::Zero(dim);
    for (int n = 0; n <= N; ++n) {
        const Real w = std::sqrt(std::pow(spec.p, n) * std::pow(1 - spec.p, N - n));
        v[n] = binomial_coefficient(N, n) * w * std::polar(Real{1}, n * spec.phi);
    }
    v /= v.norm();
    return v;
}

inline FockVector binomial_state(const BinomialStateSpec& spec) {
    return binomial_state(spec, spec.max_photons + 1);
}

/// <a|b> with implicit zero-padding to the larger dimension.
template <typename DerivedA, typename DerivedB>
Complex inner_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    const Eigen::Index m = std::min(a.size(), b.size());
    return a.head(m).dot(b.head(m));  // Eigen's dot conjugates the left argument
}

/// |<a|b>|^2 / (|a|^2 |b|^2); symmetric, in [0,1].
template <typename DerivedA, typename DerivedB>
Real fidelity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    const Real na = a.squaredNorm();
    const Real nb = b.squaredNorm();
    if (na == 0 || nb == 0) throw std::invalid_argument("fidelity: zero vector");
    return std::norm(inner_product(a, b)) / (na * nb);
}

/// Truncation size that keeps coherent-state tail mass below ~1e-10.
inline Eigen::Index coherent_dim(Complex alpha) {
    const Real m = std::abs(alpha);
    return static_cast<Eigen::Index>(std::ceil(m * m + 8 * m + 10));
}

/// Normalized coherent state e^(-|a|^2/2) a^n / sqrt(n!) on 0..dim-1.
inline FockVector coherent_state(Complex alpha, Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("coherent_state: dim must be positive");
    FockVector v(dim);
    Complex amp = std::exp(Complex{-std::norm(alpha) / 2, 0});
    Real mass = 0;
    for (Eigen::Index n = 0; n < dim; ++n) {
        if (n > 0) amp *= alpha / std::sqrt(Real(n));
        v[n] = amp;
        mass += std::norm(amp);
    }
    if (1 - mass >= 1e-10) throw std::runtime_error("coherent_state: dim too small, tail mass above 1e-10");
    return v;
}

inline FockVector coherent_state(Complex alpha) { return coherent_state(alpha, coherent_dim(alpha)); }

/// (N, 1-p, phi+pi): the unique orthogonal partner within the same N. Involution.
inline BinomialStateSpec orthogonal_partner(const BinomialStateSpec& spec) {
    return {spec.max_photons, 1 - spec.p, reduce_phase(spec.phi + kPi)};
}

template <typename Derived>
Real mean_photon_number(const Eigen::MatrixBase<Derived>& v) {
    Real acc = 0;
    for (Eigen::Index n = 0; n < v.size(); ++n) acc += Real(n) * std::norm(Complex(v[n]));
    return acc / v.squaredNorm();
}

}  // namespace ngbs
