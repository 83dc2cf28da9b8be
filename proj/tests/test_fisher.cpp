#include <doctest.h>

#include <jcqt/fisher.hpp>
#include <jcqt/random_family.hpp>

#include <random>

using namespace jcqt;
using C = std::complex<double>;
using M4 = DensityMatrix4<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const M4& m) { return m.cwiseAbs().maxCoeff(); }

// theta -> |psi(theta, phi)><psi|
DensityFamily<double> pure_theta_family(double phi) {
    DensityFamily<double> f;
    f.evaluator = [phi](double t) { return input_density(InputState{t, phi}); };
    return f;
}

struct PureFamily {
    Eigen::Vector4cd psi, dpsi;
    M4 rho, drho;
};

// psi(xi) = u(xi) / |u(xi)|, u = v0 + xi v1, at xi = 0
PureFamily random_pure_family(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::Vector4cd v0, v1;
    for (int i = 0; i < 4; ++i) {
        v0(i) = C(g(rng), g(rng));
        v1(i) = C(g(rng), g(rng));
    }
    const double nrm = v0.norm();
    PureFamily out;
    out.psi = v0 / nrm;
    out.dpsi = v1 / nrm - v0 * (v0.dot(v1).real() / (nrm * nrm * nrm));
    out.rho = out.psi * out.psi.adjoint();
    out.drho = out.dpsi * out.psi.adjoint() + out.psi * out.dpsi.adjoint();
    return out;
}

}  // namespace

TEST_CASE("finite-difference derivative") {
    DensityFamily<double> constant;
    constant.evaluator = [](double) { return M4(M4::Identity() / 4.0); };
    CHECK(max_abs(rho_derivative_fd(constant, 0.3)) == 0.0);

    DensityFamily<double> diag;
    diag.evaluator = [](double t) {
        M4 m = M4::Zero();
        m(0, 0) = std::cos(t) * std::cos(t);
        m(1, 1) = std::sin(t) * std::sin(t);
        return m;
    };
    const auto d = rho_derivative_fd(diag, kPi / 4);
    CHECK(std::abs(d(0, 0) - C(-1)) < 1e-8);
    CHECK(std::abs(d(1, 1) - C(1)) < 1e-8);
    const auto dr = rho_derivative_fd(diag, kPi / 4, {1e-3, true});
    CHECK(std::abs(dr(0, 0) - C(-1)) < 1e-11);

    diag.lo = 0;
    diag.hi = kPi;
    CHECK_THROWS_AS(rho_derivative_fd(diag, 1e-5), ValidationError);
    CHECK_THROWS_AS(rho_derivative_fd(diag, 1.0, {-1e-5, false}), ValidationError);
}

TEST_CASE("analytic derivative") {
    const auto a = alpha_set({2, 4.0, 0.3, 1.7});
    SUBCASE("theta = 0 single-copy coherence") {
        const InputState s{0.0, 0.9};
        const auto d = rho_derivative_analytic(Protocol::FTP, a, s);
        const double t = bob_state_ftp(a, s).raw_trace;
        const double re2 = 4 * a.a3.real() * a.a3.real();
        CHECK(std::abs(d(0, 3) - re2 * std::polar(1.0, 0.45) / t) < 1e-14);
    }
    SUBCASE("traceless, Hermitian, matches finite differences") {
        std::mt19937_64 rng(31);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const auto ai = alpha_set(random_channel_params(rng));
            const auto s = random_input_state(rng);
            for (auto protocol : {Protocol::FTP, Protocol::STP}) {
                const auto d = rho_derivative_analytic(protocol, ai, s);
                CHECK(std::abs(d.trace()) <= 1e-12);
                CHECK(hermiticity_error(d) <= 1e-14);
                const auto fd = rho_derivative_fd(bob_theta_family(protocol, ai, s.phi), s.theta,
                                                  {1e-4, true});
                worst = std::max(worst, max_abs(d - fd));
            }
        }
        CHECK(worst <= 1e-7);
    }
}

TEST_CASE("QFI of pure states") {
    SUBCASE("theta family gives 4") {
        for (double t : {0.3, 0.9, 1.4}) {
            const auto rho = input_density(InputState{t, 0.5});
            const auto drho = rho_derivative_fd(pure_theta_family(0.5), t, {1e-4, true});
            CHECK(std::abs(qfi_matrix_form(rho, drho).value - 4.0) <= 1e-8);
            CHECK(std::abs(qfi_sld(rho, drho).value - 4.0) <= 1e-8);
            CHECK_THROWS_AS(qfi_spectral_eq7(rho, drho), DegenerateSpectrumError);
        }
    }
    SUBCASE("phi family gives sin^2(2 theta) / 4") {
        // the phase enters as exp(-i phi / 2)
        for (double t : {kPi / 4, 0.4}) {
            DensityFamily<double> f;
            f.evaluator = [t](double phi) { return input_density(InputState{t, phi}); };
            const auto drho = rho_derivative_fd(f, 1.0, {1e-4, true});
            const double expected = std::pow(std::sin(2 * t), 2) / 4;
            CHECK(std::abs(qfi_matrix_form(input_density(InputState{t, 1.0}), drho).value - expected) <= 1e-8);
        }
    }
    SUBCASE("random pure families reduce to the state-vector formula") {
        std::mt19937_64 rng(32);
        for (int i = 0; i < 200; ++i) {
            const auto fam = random_pure_family(rng);
            const double expected = pure_state_qfi(fam.psi, fam.dpsi);
            CHECK(std::abs(qfi_matrix_form(fam.rho, fam.drho).value - expected) <= 1e-10 * std::max(1.0, expected));
            CHECK(std::abs(qfi_sld(fam.rho, fam.drho).value - expected) <= 1e-10 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("QFI of the maximally mixed state") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 50; ++i) {
        M4 h = random_density_pair<double>(rng).drho;
        h.diagonal().array() -= h.trace() / 4.0;
        const M4 rho = M4::Identity() / 4.0;
        const double expected = 4 * h.squaredNorm();
        CHECK(std::abs(qfi_matrix_form(rho, h).value - expected) <= 1e-12 * expected);
        CHECK(std::abs(qfi_sld(rho, h).value - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("engines agree on random full-rank families") {
    std::mt19937_64 rng(34);
    int eq7_checked = 0;
    for (int i = 0; i < 500; ++i) {
        const auto pair = random_density_pair<double>(rng, 1 + i % 4);
        const double f = qfi_matrix_form(pair.rho, pair.drho).value;
        CHECK(f >= -1e-12);
        CHECK(std::abs(qfi_sld(pair.rho, pair.drho).value - f) <= 1e-9 * std::max(1.0, f));
        try {
            const auto r = qfi_spectral_eq7(pair.rho, pair.drho);
            CHECK(std::abs(r.value - f) <= 1e-8 * std::max(1.0, f));
            CHECK(std::abs(r.term_classical + r.term_pure + r.term_mixed - r.value) <= 1e-12 * std::max(1.0, f));
            ++eq7_checked;
        } catch (const DegenerateSpectrumError& e) {
            CHECK(e.gap() <= kGapTol);
        }
    }
    // ranks 1 and 2 always carry a repeated zero eigenvalue
    CHECK(eq7_checked == 250);
}

TEST_CASE("SLD operator") {
    std::mt19937_64 rng(35);
    const auto pair = random_density_pair<double>(rng);
    const M4 l = sld_operator(pair.rho, pair.drho);
    CHECK(hermiticity_error(l) <= 1e-12);
    CHECK(max_abs((l * pair.rho + pair.rho * l) / 2.0 - pair.drho) <= 1e-10);

    CHECK(max_abs(sld_operator(pair.rho, M4(M4::Zero()))) == 0.0);
    CHECK(qfi_sld(pair.rho, M4(M4::Zero())).value == 0.0);
}

TEST_CASE("input validation") {
    M4 bad = M4::Identity() / 4.0;
    const M4 zero = M4::Zero();
    CHECK_THROWS_AS(qfi_matrix_form(M4(M4::Identity()), zero), ValidationError);
    M4 skew = M4::Zero();
    skew(0, 1) = 1;
    CHECK_THROWS_AS(qfi_matrix_form(bad, skew), ValidationError);
    M4 traced = M4::Zero();
    traced(0, 0) = 1;
    CHECK_THROWS_AS(qfi_matrix_form(bad, traced), ValidationError);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(qfi_matrix_form(bad, zero), NumericError);
}

TEST_CASE("teleported QFI") {
    const ChannelParams p{2, 4.0, 0.3, 1.3};
    const InputState s{0.7, 0.0};
    const auto a = alpha_set(p);

    SUBCASE("spectral form agrees with the matrix form") {
        TeleportedQfiOptions e;
        e.engine = QfiEngine::SPECTRAL_EQ7;
        const double fm = teleported_qfi_result(Protocol::FTP, a, s).value;
        const auto fe = teleported_qfi_result(Protocol::FTP, a, s, e);
        CHECK(std::abs(fe.value - fm) <= 1e-8 * std::max(1.0, fm));
        CHECK(fe.term_classical >= 0);
        // the two-copy state repeats g2 on its diagonal
        CHECK_THROWS_AS(teleported_qfi_result(Protocol::STP, a, s, e), DegenerateSpectrumError);
    }
    SUBCASE("analytic and finite-difference derivatives agree") {
        std::mt19937_64 rng(36);
        for (int i = 0; i < 100; ++i) {
            const auto pi = random_channel_params(rng);
            InputState si = random_input_state(rng);
            TeleportedQfiOptions fd;
            fd.derivative = DerivativeMethod::FD;
            fd.fd = {1e-4, true};
            for (auto protocol : {Protocol::FTP, Protocol::STP}) {
                const double fa = teleported_qfi(protocol, pi, si);
                const double ff = teleported_qfi(protocol, pi, si, fd);
                CHECK(std::abs(fa - ff) <= 1e-6 * std::max(1.0, fa));
            }
        }
    }
    SUBCASE("reparameterization xi = 2 theta scales by 1/4") {
        for (auto protocol : {Protocol::FTP, Protocol::STP}) {
            DensityFamily<double> in_xi;
            const auto family = bob_theta_family(protocol, a, s.phi);
            in_xi.evaluator = [family](double xi) { return family(xi / 2); };
            const double xi = 2 * s.theta;
            const M4 rho = in_xi(xi);
            const double f_xi = qfi_matrix_form(rho, rho_derivative_fd(in_xi, xi, {1e-4, true})).value;
            const double f_theta = teleported_qfi(protocol, p, s);
            CHECK(std::abs(f_xi - f_theta / 4) <= 1e-8 * std::max(1.0, f_theta));
        }
    }
    SUBCASE("tau = 0 is purely classical") {
        // Eigenbasis |00>, |11>, (|01> +- |10>)/sqrt2 does not move with
        // theta; the support eigenvalues are b1/T, b4/T and b3/T.
        const auto a0 = alpha_set({2, 2.0, 0.0, 0.0});
        const auto support = [&](double t) {
            const auto b = ftp_coefficients(a0, InputState{t, 0.0});
            const double tr = b.b1 + b.b4;
            return std::array<double, 3>{b.b1 / tr, b.b4 / tr, b.b3 / tr};
        };
        for (double t : {0.3, 0.8, 1.2}) {
            const double h = 1e-5;
            const auto lp = support(t + h), lm = support(t - h), l0 = support(t);
            double classical = 0;
            for (int k = 0; k < 3; ++k) {
                const double dl = (lp[k] - lm[k]) / (2 * h);
                classical += dl * dl / l0[k];
            }
            const auto r = teleported_qfi_result(Protocol::FTP, a0, InputState{t, 0.0});
            CHECK(std::abs(r.value - classical) <= 1e-8 * std::max(1.0, classical));
            CHECK(std::abs(r.term_pure) <= 1e-12);
        }
    }
    SUBCASE("nonnegative along a figure grid") {
        for (int k = 0; k <= 400; ++k) {
            const ChannelParams pk{2, 4.0, 0.0, 0.05 * k};
            for (double t : {0.0, kPi / 4, kPi / 2}) {
                CHECK(teleported_qfi(Protocol::FTP, pk, {t, 0.0}) >= -1e-12);
                CHECK(teleported_qfi(Protocol::STP, pk, {t, 0.0}) >= -1e-12);
            }
        }
    }
    SUBCASE("stable under a tiny full-rank perturbation") {
        std::mt19937_64 rng(37);
        for (int i = 0; i < 50; ++i) {
            const auto pair = random_density_pair<double>(rng);
            const double f = qfi_matrix_form(pair.rho, pair.drho).value;
            const M4 nudged = (pair.rho + 1e-15 * M4::Identity()) / (1 + 4e-15);
            CHECK(std::abs(qfi_matrix_form(nudged, pair.drho).value - f) <= 1e-6 * std::max(1.0, f));
        }
    }
}
