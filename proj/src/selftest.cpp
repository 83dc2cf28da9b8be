#include <jcqt/selftest.hpp>

#include <jcqt/fisher.hpp>
#include <jcqt/random_family.hpp>
#include <jcqt/teleport.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace jcqt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kSeed = 20240611;

SelfTestCheck bounded(std::string name, double residual, double tol, std::string note = {}) {
    return {std::move(name), std::isfinite(residual) && residual <= tol, residual, tol,
            std::move(note)};
}

SelfTestCheck alpha_trace_identity(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = alphas(random_channel_params(rng));
        worst = std::max(worst, std::abs(a.a1 + a.a2 + a.a4 + a.a5 - 1.0));
    }
    return bounded("alpha_trace_identity", worst, 1e-12, "a1+a2+a4+a5 = 1, 1000 draws");
}

SelfTestCheck alpha_pure_block(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = alphas(random_channel_params(rng));
        worst = std::max(worst, std::abs(std::norm(a.a3) - a.a2 * a.a4));
    }
    return bounded("alpha_pure_block", worst, 1e-12, "|a3|^2 = a2 a4, 1000 draws");
}

SelfTestCheck channel_state_validity(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto rho = channel_state(alphas(random_channel_params(rng)));
        const auto spec = eigh(rho);
        worst = std::max({worst, hermiticity_error(rho), std::abs(rho.trace().real() - 1.0),
                          -spec.eigenvalues.minCoeff()});
    }
    return bounded("channel_state_validity", worst, 1e-10,
                   "Hermitian, unit trace, min eigenvalue >= -1e-10");
}

SelfTestCheck eigh_reconstruction(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 2);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto rho = channel_state(alphas(random_channel_params(rng)));
        const auto spec = eigh(rho);
        const auto& v = spec.eigenvectors;
        const ComplexMatrix<double> rebuilt = v * spec.eigenvalues.asDiagonal() * v.adjoint();
        const ComplexMatrix<double> gram = v.adjoint() * v;
        worst = std::max({worst, (rebuilt - rho).cwiseAbs().maxCoeff(),
                          (gram - ComplexMatrix<double>::Identity(4, 4)).cwiseAbs().maxCoeff()});
    }
    return bounded("eigh_reconstruction", worst, 1e-10, "Jacobi reconstruction and orthonormality");
}

SelfTestCheck bell_completeness() {
    const auto e = bell_projectors<double>();
    DensityMatrix4<double> sum = DensityMatrix4<double>::Zero();
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
        sum += e[i];
        for (int j = 0; j < 4; ++j) {
            const DensityMatrix4<double> expect = i == j ? e[i] : DensityMatrix4<double>::Zero();
            worst = std::max(worst, (e[i] * e[j] - expect).cwiseAbs().maxCoeff());
        }
    }
    worst = std::max(worst, (sum - DensityMatrix4<double>::Identity()).cwiseAbs().maxCoeff());
    return bounded("bell_completeness", worst, 1e-14, "sum E = I, E_i E_j = delta_ij E_i");
}

SelfTestCheck outcome_normalization(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 3);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        const auto d = outcome_distribution(qubit_embedding(channel_state(alphas(random_channel_params(rng)))));
        worst = std::max({worst, std::abs(d.p.sum() - 1.0), -d.p.minCoeff()});
    }
    return bounded("outcome_normalization", worst, 1e-12, "sum P_ij = 1, P_ij >= 0");
}

SelfTestCheck hermitian_channel_validity() {
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0, min_eig = 0;
    for (int i = 0; i < 300; ++i) {
        Eigen::Vector4d m;
        for (int k = 0; k < 4; ++k) m(k) = u(rng);
        m /= m.sum();
        OutcomeDistribution<double> d;
        d.p = m * m.transpose();
        const auto out = apply_pauli_channel(input_density<double>(random_input_state(rng)), d);
        worst = std::max({worst, hermiticity_error(out), std::abs(out.trace().real() - 1.0)});
        min_eig = std::min(min_eig, eigh(out).eigenvalues.minCoeff());
    }
    auto c = bounded("hermitian_channel_validity", worst, 1e-12,
                     "Hermitian and unit trace within 1e-12, PSD within 1e-9");
    c.passed = c.passed && min_eig >= -1e-9;
    return c;
}

SelfTestCheck ftp_fidelity_consistency(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 5);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        const auto a = alphas(random_channel_params(rng));
        const auto s = random_input_state(rng);
        const double overlap = expectation(input_state_vector<double>(s), ftp_raw_matrix(a, s)).real();
        worst = std::max(worst, std::abs(fidelity_closed_ftp(a, s) - overlap));
    }
    return bounded("ftp_fidelity_consistency", worst, 1e-12,
                   "closed-form FTP fidelity = <psi|raw beta matrix|psi>, 500 points");
}

SelfTestCheck ftp_beta2_resonance(const AlphaProvider& alphas) {
    double worst = 0;
    for (double nbar : {2.0, 4.0, 6.0})
        for (int k = 0; k < 200; ++k) {
            const double tau = 20.0 * k / 199;
            const auto a = alphas({2, nbar, 0.0, tau});
            worst = std::max(worst, std::abs(ftp_coefficients(a, {0.7, 1.1}).b2));
        }
    return bounded("ftp_beta2_resonance", worst, 1e-14, "beta2 vanishes at delta = 0");
}

// Frozen from a 50-digit evaluation of the closed forms.
SelfTestCheck ftp_beta2_off_resonance(const AlphaProvider& alphas) {
    const std::complex<double> expected(0.0014848771837373515723, 0.0003009995066414161325);
    const auto a = alphas({2, 4.0, 0.3, 1.7});
    const auto b2 = ftp_coefficients(a, {0.7, 0.4}).b2;
    return bounded("ftp_beta2_off_resonance", std::abs(b2 - expected), 1e-12,
                   "beta2 at n=2 nbar=4 delta=0.3 tau=1.7 theta=0.7 phi=0.4 vs reference");
}

SelfTestCheck resonance_phi_independence(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 6);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        auto p = random_channel_params(rng);
        p.delta = 0.0;
        const auto a = alphas(p);
        const double theta = random_input_state(rng).theta;
        const InputState ref{theta, 0.0};
        const double f0 = fidelity_overlap(bob_state_ftp(a, ref).rho, ref);
        const double q0 = teleported_qfi_result(Protocol::FTP, a, ref).value;
        for (double phi : {kPi / 3, kPi}) {
            const InputState s{theta, phi};
            worst = std::max({worst, std::abs(fidelity_overlap(bob_state_ftp(a, s).rho, s) - f0),
                              std::abs(teleported_qfi_result(Protocol::FTP, a, s).value - q0)});
        }
    }
    return bounded("resonance_phi_independence", worst, 1e-12,
                   "FTP fidelity and QFI(theta) equal for phi in {0, pi/3, pi} at delta = 0");
}

SelfTestCheck qfi_engine_triangle() {
    std::mt19937_64 rng(kSeed + 7);
    double worst_sld = 0, worst_eq7 = 0;
    int eq7_used = 0;
    for (int i = 0; i < 500; ++i) {
        const int rank = i % 10 == 0 ? 3 : i % 10 == 1 ? 2 : 4;
        const auto pair = random_density_pair<double>(rng, rank);
        const double m = qfi_matrix_form(pair.rho, pair.drho).value;
        worst_sld = std::max(worst_sld, std::abs(qfi_sld(pair.rho, pair.drho).value - m));
        try {
            worst_eq7 = std::max(worst_eq7, std::abs(qfi_spectral_eq7(pair.rho, pair.drho).value - m));
            ++eq7_used;
        } catch (const DegenerateSpectrumError&) {
        }
    }
    auto check = bounded("qfi_engine_triangle", std::max(worst_sld, worst_eq7), 1e-8);
    check.passed = check.passed && worst_sld <= 1e-9;
    std::ostringstream note;
    note << "matrix-vs-sld " << worst_sld << " (tol 1e-9), matrix-vs-eq7 " << worst_eq7
         << " (tol 1e-8) over " << eq7_used << " non-degenerate of 500";
    check.note = note.str();
    return check;
}

SelfTestCheck qfi_pure_state() {
    double worst = 0;
    for (double theta : {0.0, 0.3, kPi / 4, 1.2, kPi / 2, 2.5}) {
        const InputState s{theta, 0.8};
        const StateVector<double> psi = input_state_vector<double>(s);
        StateVector<double> dpsi = StateVector<double>::Zero(4);
        dpsi(0) = -std::sin(theta);
        dpsi(3) = std::polar(1.0, -s.phi / 2) * std::cos(theta);
        const DensityMatrix4<double> rho = psi * psi.adjoint();
        const DensityMatrix4<double> drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
        const double expected = pure_state_qfi(psi, dpsi);
        worst = std::max({worst, std::abs(expected - 4.0),
                          std::abs(qfi_matrix_form(rho, drho).value - expected),
                          std::abs(qfi_sld(rho, drho).value - expected)});
    }
    return bounded("qfi_pure_state", worst, 1e-9, "input-state family in theta has QFI 4");
}

SelfTestCheck derivative_analytic_vs_fd(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 8);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto a = alphas(random_channel_params(rng));
        const auto s = random_input_state(rng);
        for (Protocol protocol : {Protocol::FTP, Protocol::STP}) {
            const auto analytic = rho_derivative_analytic(protocol, a, s);
            const auto fd = rho_derivative_fd(bob_theta_family(protocol, a, s.phi), s.theta,
                                              {kDefaultFdStep, true});
            worst = std::max(worst, (analytic - fd).cwiseAbs().maxCoeff());
        }
    }
    return bounded("derivative_analytic_vs_fd", worst, 1e-6,
                   "d rho / d theta, both protocols, Richardson h = 1e-5");
}

SelfTestCheck oracle_fidelity_bounds(const AlphaProvider& alphas) {
    std::mt19937_64 rng(kSeed + 9);
    double worst = 0;
    for (int i = 0; i < 300; ++i) {
        const auto a = alphas(random_channel_params(rng));
        const auto s = random_input_state(rng);
        const double f = fidelity_overlap(bob_state_ftp(a, s, Construction::CHANNEL_ORACLE).rho, s);
        const double g = fidelity_overlap(bob_state_stp(a, s).rho, s);
        for (double v : {f, g}) worst = std::max({worst, -v, v - 1.0});
    }
    return bounded("normalized_fidelity_bounds", std::max(worst, 0.0), 1e-10,
                   "FTP channel-oracle and STP fidelities in [0, 1]");
}

// The printed two-copy fidelity and the overlap of the printed two-copy
// state differ in their cross term; both are reported, agreement is not
// required.
SelfTestCheck stp_fidelity_report(const AlphaProvider& alphas) {
    bool finite = true;
    double max_diff = 0;
    std::ostringstream note;
    note << std::setprecision(6);
    for (int k = 0; k < 10; ++k) {
        const ChannelParams p{2, 4.0, 0.1 * k, 0.5 + 1.5 * k};
        const InputState s{0.15 + 0.3 * k, 0.6 * k};
        const auto a = alphas(p);
        const double literal = fidelity_closed_stp(a, s);
        const double overlap = fidelity_overlap(bob_state_stp(a, s).rho, s);
        finite = finite && std::isfinite(literal) && std::isfinite(overlap);
        max_diff = std::max(max_diff, std::abs(literal - overlap));
        if (k < 3) note << "[" << literal << " vs " << overlap << "] ";
    }
    note << "max |printed - overlap| = " << max_diff << " (agreement not expected)";
    SelfTestCheck c{"stp_fidelity_report", finite, max_diff, 0.0, note.str()};
    return c;
}

}  // namespace

bool SelfTestReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const SelfTestCheck* SelfTestReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

AlphaProvider default_alpha_provider() {
    return [](const ChannelParams& p) { return alpha_set<double>(p); };
}

SelfTestReport run_self_test(const AlphaProvider& alphas) {
    SelfTestReport r;
    // A check that throws is a failed check, not an aborted run.
    const auto run = [&r](const char* name, auto&& fn) {
        try {
            r.checks.push_back(fn());
        } catch (const std::exception& e) {
            r.checks.push_back({name, false, std::numeric_limits<double>::infinity(), 0.0,
                                std::string("threw: ") + e.what()});
        }
    };
    run("alpha_trace_identity", [&] { return alpha_trace_identity(alphas); });
    run("alpha_pure_block", [&] { return alpha_pure_block(alphas); });
    run("channel_state_validity", [&] { return channel_state_validity(alphas); });
    run("eigh_reconstruction", [&] { return eigh_reconstruction(alphas); });
    run("bell_completeness", [&] { return bell_completeness(); });
    run("outcome_normalization", [&] { return outcome_normalization(alphas); });
    run("hermitian_channel_validity", [&] { return hermitian_channel_validity(); });
    run("ftp_fidelity_consistency", [&] { return ftp_fidelity_consistency(alphas); });
    run("ftp_beta2_resonance", [&] { return ftp_beta2_resonance(alphas); });
    run("ftp_beta2_off_resonance", [&] { return ftp_beta2_off_resonance(alphas); });
    run("resonance_phi_independence", [&] { return resonance_phi_independence(alphas); });
    run("qfi_engine_triangle", [&] { return qfi_engine_triangle(); });
    run("qfi_pure_state", [&] { return qfi_pure_state(); });
    run("derivative_analytic_vs_fd", [&] { return derivative_analytic_vs_fd(alphas); });
    run("normalized_fidelity_bounds", [&] { return oracle_fidelity_bounds(alphas); });
    run("stp_fidelity_report", [&] { return stp_fidelity_report(alphas); });
    return r;
}

void print_report(const SelfTestReport& report, std::ostream& os) {
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
        passed += c.passed;
        os << (c.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(28) << c.name
           << " residual=" << std::scientific << std::setprecision(3) << c.residual;
        if (c.tolerance > 0) os << " tol=" << c.tolerance;
        os << std::defaultfloat;
        if (!c.note.empty()) os << "  " << c.note;
        os << '\n';
    }
    os << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace jcqt
