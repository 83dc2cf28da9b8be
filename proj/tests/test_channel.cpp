#include <doctest.h>

#include <jcqt/channel.hpp>
#include <jcqt/random_family.hpp>

#include <random>

using namespace jcqt;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("coherent_weight") {
    CHECK(coherent_weight(0.0, 0) == 1.0);
    CHECK(coherent_weight(0.0, 1) == 0.0);

    double sum = 0;
    for (int k = 0; k <= 60; ++k) sum += coherent_weight(2.0, k) * coherent_weight(2.0, k);
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    // P_k^2 = e^-nbar nbar^k / k! directly, small k
    CHECK(coherent_weight(2.0, 3) == doctest::Approx(std::sqrt(std::exp(-2.0) * 8.0 / 6.0)).epsilon(1e-14));

    SUBCASE("large nbar stays finite and keeps the Poisson ratio") {
        for (int n = 1; n <= 5; ++n) {
            const double lo = log_coherent_weight_sq(1000.0, n);
            const double hi = log_coherent_weight_sq(1000.0, n + 1);
            CHECK(std::isfinite(lo));
            const double ratio = std::exp(hi - lo);
            CHECK(std::abs(ratio / (1000.0 / (n + 1)) - 1.0) <= 1e-12);
        }
        CHECK(std::isfinite(coherent_weight(1000.0, 1000)));
        CHECK(coherent_weight(1000.0, 1000) > 0.0);
    }

    CHECK_THROWS_AS(coherent_weight(-1.0, 2), ValidationError);
    CHECK_THROWS_AS(coherent_weight(1.0, -1), ValidationError);
}

TEST_CASE("rabi") {
    CHECK(rabi(0.0, 4.0) == 2.0);
    CHECK(rabi(3.0, 0.0) == 3.0);
    CHECK(rabi(0.5, 3.0) == doctest::Approx(std::sqrt(3.25)).epsilon(1e-15));
    CHECK_THROWS_AS(rabi(0.1, -1.0), ValidationError);
}

TEST_CASE("alpha_set at tau = 0") {
    const auto a = alpha_set({2, 2.0, 0.7, 0.0});
    CHECK(a.a1 == 0.0);
    CHECK(a.a4 == 0.0);
    CHECK(a.a3 == std::complex<double>(0.0));
    // P_k^2 proportional to nbar^k / k!: 2 and 4/3
    CHECK(a.a2 == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(a.a5 == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("alpha_set at the resonant quarter period") {
    const auto a = alpha_set({2, 3.0, 0.0, kPi / (2 * std::sqrt(3.0))});
    CHECK(std::abs(a.a2) < 1e-15);
    CHECK(std::abs(a.a3) < 1e-15);
}

// Reference values from a 50-digit evaluation of the coefficient formulas.
TEST_CASE("alpha_set regression against high-precision reference") {
    const ChannelParams p{2, 4.0, 0.3, 1.7};
    const auto a = alpha_set(p);
    CHECK(std::abs(a.a1 - 0.076585542038718003562) < 1e-14);
    CHECK(std::abs(a.a2 - 0.39186090470447453532) < 1e-14);
    CHECK(std::abs(a.a3 - std::complex<double>(-0.027725873803521107223, -0.052786115777189456203)) < 1e-14);
    CHECK(std::abs(a.a4 - 0.0090723469841747473509) < 1e-14);
    CHECK(std::abs(a.a5 - 0.52248120627263271376) < 1e-14);
    CHECK(std::abs(a.norm - 0.36546011210778723439) < 1e-14);

    const auto al = alpha_set<long double>(p);
    CHECK(std::abs(double(al.a2) - 0.39186090470447453532) < 1e-16);
    CHECK(std::abs(double(al.a5) - 0.52248120627263271376) < 1e-16);

    const auto at09 = alpha_set({2, 4.0, 0.0, 0.9});
    CHECK(std::abs(at09.a1 - 0.3135681011093004052) < 1e-14);
    CHECK(std::abs(at09.a3 - std::complex<double>(0, 0.0082009304508164594604)) < 1e-14);
}

TEST_CASE("alpha identities on a random grid") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_channel_params(rng);
        const auto a = alpha_set(p);
        CHECK(std::abs(a.a1 + a.a2 + a.a4 + a.a5 - 1.0) <= 1e-12);
        CHECK(std::abs(std::norm(a.a3) - a.a2 * a.a4) <= 1e-12);
        CHECK(std::min({a.a1, a.a2, a.a4, a.a5}) >= -1e-14);
        CHECK(std::isfinite(a.log_norm));
    }
}

TEST_CASE("a3 is purely imaginary at resonance") {
    for (int k = 0; k < 100; ++k) {
        const auto a = alpha_set({3, 5.0, 0.0, 0.37 * k});
        CHECK(a.a3.real() == 0.0);
    }
}

// The (n+1)-block numerators a_i * N are periodic in tau with period
// 2 pi / sqrt(n+1) at resonance. N itself also carries the a1 term, which
// oscillates at sqrt(n), so the normalized a_i are not.
TEST_CASE("resonance periodicity of the (n+1)-block numerators") {
    for (int n = 1; n <= 4; ++n) {
        const double period = 2 * kPi / std::sqrt(n + 1.0);
        for (double tau : {0.1, 0.77, 2.3, 5.0}) {
            const auto a = alpha_set({n, 4.0, 0.0, tau});
            const auto b = alpha_set({n, 4.0, 0.0, tau + period});
            CHECK(std::abs(a.a2 * a.norm - b.a2 * b.norm) <= 1e-10);
            CHECK(std::abs(a.a3 * a.norm - b.a3 * b.norm) <= 1e-10);
            CHECK(std::abs(a.a4 * a.norm - b.a4 * b.norm) <= 1e-10);
            CHECK(std::abs(a.a5 * a.norm - b.a5 * b.norm) <= 1e-10);
        }
    }
}

TEST_CASE("alpha_set edge cases") {
    SUBCASE("n = 0 has no lower neighbour") {
        const auto a = alpha_set({0, 2.0, 0.2, 1.3});
        CHECK(a.a1 == 0.0);
        CHECK(std::abs(a.a2 + a.a4 + a.a5 - 1.0) <= 1e-12);
    }
    SUBCASE("vacuum field with n = 0") {
        const auto a = alpha_set({0, 0.0, 0.0, 0.4});
        CHECK(a.a5 == 0.0);
        CHECK(std::abs(a.a2 + a.a4 - 1.0) <= 1e-15);
    }
    SUBCASE("vacuum field with n >= 2 has no weight in the subspace") {
        CHECK_THROWS_AS(alpha_set({2, 0.0, 0.0, 1.0}), NumericError);
    }
    SUBCASE("nbar = 1000 is representable") {
        const auto a = alpha_set({2, 1000.0, 0.0, 3.1});
        CHECK(std::abs(a.a1 + a.a2 + a.a4 + a.a5 - 1.0) <= 1e-12);
        CHECK(a.log_norm < -900.0);
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(alpha_set({-1, 2.0, 0.0, 1.0}), ValidationError);
        CHECK_THROWS_AS(alpha_set({2, -2.0, 0.0, 1.0}), ValidationError);
        CHECK_THROWS_AS(alpha_set({2, 2.0, 0.0, -1.0}), ValidationError);
        CHECK_THROWS_AS(alpha_set({2, 2.0, std::nan(""), 1.0}), ValidationError);
    }
}

TEST_CASE("channel_state layout and validity") {
    const auto a = alpha_set({2, 4.0, 0.3, 1.7});
    const auto rho = channel_state(a);
    CHECK(rho(0, 0).real() == a.a1);
    CHECK(rho(1, 1).real() == a.a2);
    CHECK(rho(2, 2).real() == a.a4);
    CHECK(rho(3, 3).real() == a.a5);
    CHECK(rho(1, 2) == a.a3);
    CHECK(rho(2, 1) == std::conj(a.a3));
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);

    // pure |n,e>, |n+1,g> block
    const auto det = rho(1, 1) * rho(2, 2) - rho(1, 2) * rho(2, 1);
    CHECK(std::abs(det) <= 1e-12);

    SUBCASE("tau = 0 is diagonal with rank <= 2") {
        const auto r0 = channel_state<double>(ChannelParams{2, 2.0, 0.0, 0.0});
        CHECK((r0 - DensityMatrix4<double>(r0.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
        const auto s = eigh(r0);
        CHECK(s.eigenvalues(0) == 0.0);
        CHECK(s.eigenvalues(1) == 0.0);
    }
    SUBCASE("PSD on a random grid") {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 300; ++i)
            CHECK(eigh(channel_state<double>(random_channel_params(rng))).eigenvalues.minCoeff() >= -1e-10);
    }
}
