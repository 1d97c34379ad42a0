#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace ngbs {

using Real = double;
using Complex = std::complex<Real>;

// Cavity field state: complex amplitudes indexed by photon number 0..dim-1.
using FockVector = Eigen::VectorXcd;

template <typename Scalar>
inline constexpr Scalar pi_v = static_cast<Scalar>(3.14159265358979323846264338327950288L);

inline constexpr Real kPi = pi_v<Real>;

/// Reduce an angle to (-pi, pi].
template <typename Scalar>
Scalar reduce_phase(Scalar phi) {
    const Scalar two_pi = 2 * pi_v<Scalar>;
    Scalar r = std::fmod(phi, two_pi);
    if (r <= -pi_v<Scalar>) r += two_pi;
    if (r > pi_v<Scalar>) r -= two_pi;
    return r;
}

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& v, Real tol = 1e-12) {
    return std::abs(v.squaredNorm() - Real{1}) <= tol;
}

}  // namespace ngbs
