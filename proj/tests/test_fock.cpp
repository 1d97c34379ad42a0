#include <doctest.h>

#include <cmath>
#include <random>

#include "ngbs/fock.hpp"

using namespace ngbs;

TEST_SUITE("fock") {

TEST_CASE("binomial coefficient basics") {
    CHECK(binomial_coefficient(3, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(binomial_coefficient(5, 0) == 1.0);
    CHECK(binomial_coefficient(4, 5) == 0.0);
    CHECK(binomial_coefficient(4, -1) == 0.0);
    CHECK(binomial_coefficient(10, 5) == doctest::Approx(std::sqrt(252.0)).epsilon(1e-15));
}

TEST_CASE("binomial coefficient stays stable up to N = 200") {
    // against the log-gamma evaluation directly
    for (int N : {50, 60, 61, 62, 120, 200}) {
        for (int n = 0; n <= N; n += 7) {
            const double lg = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
            CHECK(binomial_coefficient(N, n) == doctest::Approx(std::exp(lg / 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pascal closure of the squared coefficients") {
    for (int k = 1; k <= 30; ++k) {
        for (int n = 1; n <= k; ++n) {
            const Real lhs = std::sqrt(std::pow(binomial_coefficient(k - 1, n - 1), 2) +
                                       std::pow(binomial_coefficient(k - 1, n), 2));
            CHECK(std::abs(lhs - binomial_coefficient(k, n)) < 1e-12);
        }
    }
}

TEST_CASE("binomial state limits") {
    const FockVector vac = binomial_state({4, 0.0, 0.7}, 5);
    CHECK(std::abs(vac[0] - Complex{1, 0}) < 1e-15);
    CHECK(vac.tail(4).norm() == 0.0);

    const FockVector top = binomial_state({4, 1.0, 0.0}, 5);
    CHECK(std::abs(top[4] - Complex{1, 0}) < 1e-15);
    CHECK(top.head(4).norm() == 0.0);

    const FockVector one = binomial_state({1, 0.5, kPi / 3}, 2);
    CHECK(std::abs(one[0] - Complex{1 / std::sqrt(2.0), 0}) < 1e-15);
    CHECK(std::abs(one[1] - std::polar(1 / std::sqrt(2.0), kPi / 3)) < 1e-15);
}

TEST_CASE("binomial state is normalized over N and p grids") {
    for (int N = 1; N <= 50; ++N) {
        for (int ip = 0; ip <= 10; ++ip) {
            CHECK(is_normalized(binomial_state({N, ip / 10.0, 0.3 * ip})));
        }
    }
}

TEST_CASE("binomial state rejects too-small dim") {
    CHECK_THROWS_AS(binomial_state({4, 0.5, 0.0}, 4), std::invalid_argument);
}

TEST_CASE("mean photon number is N p") {
    for (int N : {1, 5, 20, 50}) {
        for (int ip = 0; ip <= 10; ++ip) {
            const Real p = ip / 10.0;
            CHECK(std::abs(mean_photon_number(binomial_state({N, p, 1.2})) - N * p) < 1e-10);
        }
    }
}

TEST_CASE("inner products") {
    FockVector two = FockVector::Zero(5);
    two[2] = 1;
    CHECK(std::abs(inner_product(two, two) - Complex{1, 0}) < 1e-15);

    const FockVector a = binomial_state({3, 0.3, 0.0});
    CHECK(std::abs(inner_product(a, a) - Complex{1, 0}) < 1e-12);

    // zero-padding across different dims
    FockVector padded = FockVector::Zero(9);
    padded[2] = 1;
    CHECK(std::abs(inner_product(two, padded) - Complex{1, 0}) < 1e-15);
}

TEST_CASE("orthogonal partner pairs have zero overlap") {
    for (int N = 1; N <= 20; ++N) {
        for (int ip = 1; ip <= 9; ++ip) {
            const BinomialStateSpec spec{N, ip / 10.0, 0.4};
            const Complex ov = inner_product(binomial_state(spec), binomial_state(orthogonal_partner(spec)));
            CHECK(std::abs(ov) < 1e-12);
        }
    }
}

TEST_CASE("orthogonal partner mapping and involution") {
    const BinomialStateSpec s = orthogonal_partner({3, 0.2, 0.0});
    CHECK(s.max_photons == 3);
    CHECK(s.p == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(s.phi == doctest::Approx(kPi).epsilon(1e-15));

    const BinomialStateSpec twice = orthogonal_partner(orthogonal_partner({5, 0.7, 1.0}));
    CHECK(twice.p == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(twice.phi == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("fidelity") {
    const FockVector a = binomial_state({3, 0.5, 0.2});
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));

    const FockVector b = binomial_state(orthogonal_partner({3, 0.5, 0.2}));
    CHECK(fidelity(a, b) < 1e-24);

    // symmetric and normalization-independent
    const FockVector c = binomial_state({3, 0.3, 0.0});
    CHECK(fidelity(a, c) == doctest::Approx(fidelity(c, a)).epsilon(1e-14));
    CHECK(fidelity(a, FockVector(3 * c)) == doctest::Approx(fidelity(a, c)).epsilon(1e-13));

    CHECK_THROWS_AS(fidelity(a, FockVector(FockVector::Zero(4))), std::invalid_argument);
}

TEST_CASE("coherent state") {
    const FockVector ground = coherent_state(Complex{0, 0}, 5);
    CHECK(std::abs(ground[0] - Complex{1, 0}) < 1e-15);

    const FockVector alpha1 = coherent_state(Complex{1, 0}, 40);
    for (int n = 0; n < 6; ++n) {
        const Real expected = std::exp(-0.5) / std::sqrt(std::tgamma(n + 1.0));
        CHECK(std::abs(alpha1[n] - Complex{expected, 0}) < 1e-14);
    }
    CHECK(std::abs(alpha1.squaredNorm() - 1.0) < 1e-10);

    // the default truncation keeps the tail below the threshold
    for (Real mag : {0.5, 1.0, 3.0}) {
        const FockVector v = coherent_state(Complex{mag, 0});
        CHECK(v.size() == coherent_dim(Complex{mag, 0}));
        CHECK(std::abs(v.squaredNorm() - 1.0) < 1e-10);
    }

    CHECK_THROWS_AS(coherent_state(Complex{3, 0}, 5), std::runtime_error);
}

TEST_CASE("binomial states approach the coherent state at fixed alpha") {
    const FockVector target = coherent_state(Complex{1, 0}, 60);
    Real prev = 0;
    for (int N : {10, 20, 40}) {
        const Real f = fidelity(binomial_state({N, 1.0 / N, 0.0}, 60), target);
        CHECK(f > prev);
        prev = f;
    }
    CHECK(prev > 0.9999);
}

TEST_CASE("phase reduction") {
    CHECK(reduce_phase(kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(reduce_phase(-kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(reduce_phase(3 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(reduce_phase(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(reduce_phase(2 * kPi)) < 1e-15);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(BinomialStateSpec(3, 1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BinomialStateSpec(-1, 0.5, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
