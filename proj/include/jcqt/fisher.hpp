#pragma once

// Quantum Fisher information of a one-parameter density family.
//
// Three engines share one contract (rho, d rho / d xi) -> QfiResult:
//   MATRIX_FORM   sum_{k,l} 2 |<k|drho|l>|^2 / (l_k + l_l) over the support
//   SLD           Tr[rho L^2] with drho = (L rho + rho L) / 2
//   SPECTRAL_EQ7  classical + pure-state + mixed-correction terms built from
//                 first-order eigenvalue / eigenvector perturbation theory;
//                 requires a non-degenerate spectrum.

#include <jcqt/linalg.hpp>
#include <jcqt/teleport.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace jcqt {

enum class QfiEngine { SPECTRAL_EQ7, MATRIX_FORM, SLD };
enum class DerivativeMethod { ANALYTIC, FD };

inline constexpr double kSupportTol = 1e-12;
inline constexpr double kGapTol = 1e-8;
inline constexpr double kDefaultFdStep = 1e-5;

/// For SPECTRAL_EQ7 the three terms sum to `value`. MATRIX_FORM and SLD
/// report the diagonal (k = l) part as term_classical and the off-diagonal
/// part as term_pure; term_mixed is zero.
template <typename Scalar>
struct QfiResult {
    Scalar value{};
    Scalar term_classical{};
    Scalar term_pure{};
    Scalar term_mixed{};
    QfiEngine engine{};
};

/// rho(xi) on the closed interval [lo, hi].
template <typename Scalar>
struct DensityFamily {
    std::function<DensityMatrix4<Scalar>(Scalar)> evaluator;
    Scalar lo = -std::numeric_limits<Scalar>::infinity();
    Scalar hi = std::numeric_limits<Scalar>::infinity();

    DensityMatrix4<Scalar> operator()(Scalar xi) const { return evaluator(xi); }
};

struct FdOptions {
    double h = kDefaultFdStep;
    bool richardson = false;
};

/// Central difference of the family, Hermitian-symmetrized. The Richardson
/// variant is the fourth-order five-point stencil.
template <typename Scalar>
DensityMatrix4<Scalar> rho_derivative_fd(const DensityFamily<Scalar>& f, Scalar xi,
                                         FdOptions opts = {}) {
    const Scalar h = Scalar(opts.h);
    if (!(h > Scalar(0))) throw ValidationError("rho_derivative_fd: step must be positive");
    if (xi - 2 * h < f.lo || xi + 2 * h > f.hi)
        throw ValidationError("rho_derivative_fd: stencil [" + std::to_string(double(xi - 2 * h)) +
                              ", " + std::to_string(double(xi + 2 * h)) +
                              "] leaves the family domain");
    const DensityMatrix4<Scalar> d1 = (f(xi + h) - f(xi - h)) / (Scalar(2) * h);
    DensityMatrix4<Scalar> d = d1;
    if (opts.richardson) {
        const DensityMatrix4<Scalar> d2 = (f(xi + 2 * h) - f(xi - 2 * h)) / (Scalar(4) * h);
        d = (Scalar(4) * d1 - d2) / Scalar(3);
    }
    return (d + d.adjoint()) / Scalar(2);
}

// ---------------------------------------------------------------------------
// Analytic theta-derivatives of the normalized closed-form Bob states

namespace detail {

template <typename Scalar>
DensityMatrix4<Scalar> quotient_derivative(const DensityMatrix4<Scalar>& raw,
                                           const DensityMatrix4<Scalar>& draw) {
    const Scalar t = raw.trace().real();
    const Scalar dt = draw.trace().real();
    if (!(t > Scalar(kTraceFloor)))
        throw NumericError("rho_derivative_analytic: raw trace " + std::to_string(double(t)) +
                           " below floor");
    return draw / t - raw * (dt / (t * t));
}

}  // namespace detail

template <typename Scalar>
DensityMatrix4<Scalar> rho_derivative_analytic(Protocol protocol, const AlphaSet<Scalar>& a,
                                               const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar sin2t = sin(Scalar(2) * Scalar(s.theta));
    const Scalar cos2t = cos(Scalar(2) * Scalar(s.theta));
    const auto sq = [](Scalar x) { return x * x; };

    if (protocol == Protocol::FTP) {
        FtpCoefficients<Scalar> db;
        db.b1 = (sq(a.a1 + a.a5) - sq(a.a2 + a.a4)) * sin2t;
        db.b2 = sq(Scalar(2) * a.a3.real()) * cos2t *
                std::polar(Scalar(1), Scalar(s.phi) / Scalar(2));
        db.b3 = 0;
        db.b4 = (sq(a.a1 + a.a4) - sq(a.a2 + a.a5)) * sin2t;
        return detail::quotient_derivative(ftp_raw_matrix(a, s), ftp_matrix(db));
    }
    StpCoefficients<Scalar> dg;
    dg.g1 = (sq(a.a4) - sq(a.a1)) * sin2t;
    dg.g2 = (a.a4 * a.a5 - a.a1 * a.a2) * sin2t;
    dg.g3 = (sq(a.a5) - sq(a.a2)) * sin2t;
    dg.g4 = cos2t * std::polar(Scalar(1), -Scalar(s.phi) / Scalar(2)) * std::norm(a.a3);
    return detail::quotient_derivative(stp_raw_matrix(a, s), stp_matrix(dg));
}

template <typename Scalar = double>
DensityMatrix4<Scalar> rho_derivative_analytic(Protocol protocol, const ChannelParams& p,
                                               const InputState& s) {
    return rho_derivative_analytic(protocol, alpha_set<Scalar>(p), s);
}

/// theta -> normalized closed-form Bob state, phi held fixed. Defined on
/// the whole real line since the closed forms are trigonometric in theta.
template <typename Scalar>
DensityFamily<Scalar> bob_theta_family(Protocol protocol, const AlphaSet<Scalar>& a, double phi) {
    DensityFamily<Scalar> f;
    f.evaluator = [protocol, a, phi](Scalar theta) -> DensityMatrix4<Scalar> {
        const InputState s{double(theta), phi};
        return protocol == Protocol::FTP ? bob_state_ftp(a, s).rho : bob_state_stp(a, s).rho;
    };
    return f;
}

// ---------------------------------------------------------------------------
// Engines

namespace detail {

template <typename Scalar>
void check_qfi_inputs(const DensityMatrix4<Scalar>& rho, const DensityMatrix4<Scalar>& drho) {
    if (!all_finite(rho) || !all_finite(drho)) throw NumericError("qfi: non-finite input");
    if (std::abs(rho.trace() - std::complex<Scalar>(1)) > Scalar(kHermitianTol))
        throw ValidationError("qfi: rho must have unit trace");
    if (hermiticity_error(drho) > Scalar(kHermitianTol))
        throw ValidationError("qfi: drho must be Hermitian");
    if (std::abs(drho.trace()) > Scalar(kHermitianTol))
        throw ValidationError("qfi: drho must be traceless");
}

// drho expressed in the eigenbasis of rho.
template <typename Scalar>
struct EigenFrame {
    SpectralDecomp<Scalar> spectrum;
    ComplexMatrix<Scalar> d;
};

template <typename Scalar>
EigenFrame<Scalar> eigen_frame(const DensityMatrix4<Scalar>& rho,
                               const DensityMatrix4<Scalar>& drho) {
    check_qfi_inputs(rho, drho);
    auto spectrum = eigh(rho);
    ComplexMatrix<Scalar> d = spectrum.eigenvectors.adjoint() * drho * spectrum.eigenvectors;
    return {std::move(spectrum), std::move(d)};
}

}  // namespace detail

/// Pairs with l_k + l_l <= tol fall outside the support and are dropped.
template <typename Scalar>
QfiResult<Scalar> qfi_matrix_form(const DensityMatrix4<Scalar>& rho,
                                  const DensityMatrix4<Scalar>& drho,
                                  Scalar tol = Scalar(kSupportTol)) {
    const auto frame = detail::eigen_frame(rho, drho);
    const auto& lam = frame.spectrum.eigenvalues;
    QfiResult<Scalar> r;
    r.engine = QfiEngine::MATRIX_FORM;
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        for (Eigen::Index l = 0; l < lam.size(); ++l) {
            const Scalar sum = lam(k) + lam(l);
            if (sum <= tol) continue;
            const Scalar term = Scalar(2) * std::norm(frame.d(k, l)) / sum;
            (k == l ? r.term_classical : r.term_pure) += term;
        }
    r.value = r.term_classical + r.term_pure;
    return r;
}

/// Symmetric logarithmic derivative in the original basis:
/// L_kl = 2 drho_kl / (l_k + l_l) on the support, zero elsewhere.
template <typename Scalar>
DensityMatrix4<Scalar> sld_operator(const DensityMatrix4<Scalar>& rho,
                                    const DensityMatrix4<Scalar>& drho,
                                    Scalar tol = Scalar(kSupportTol)) {
    const auto frame = detail::eigen_frame(rho, drho);
    const auto& lam = frame.spectrum.eigenvalues;
    ComplexMatrix<Scalar> l_eig = ComplexMatrix<Scalar>::Zero(lam.size(), lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        for (Eigen::Index l = 0; l < lam.size(); ++l) {
            const Scalar sum = lam(k) + lam(l);
            if (sum > tol) l_eig(k, l) = Scalar(2) * frame.d(k, l) / sum;
        }
    const auto& v = frame.spectrum.eigenvectors;
    return v * l_eig * v.adjoint();
}

template <typename Scalar>
QfiResult<Scalar> qfi_sld(const DensityMatrix4<Scalar>& rho, const DensityMatrix4<Scalar>& drho,
                          Scalar tol = Scalar(kSupportTol)) {
    const DensityMatrix4<Scalar> l = sld_operator(rho, drho, tol);
    const DensityMatrix4<Scalar> rho_l = rho * l;
    QfiResult<Scalar> r;
    r.engine = QfiEngine::SLD;
    // Tr[rho L^2] split by the diagonal of L in the eigenbasis of rho.
    r.value = (rho_l * l).trace().real();
    const auto spectrum = eigh(rho);
    const ComplexMatrix<Scalar> l_eig =
        spectrum.eigenvectors.adjoint() * l * spectrum.eigenvectors;
    for (Eigen::Index k = 0; k < l_eig.rows(); ++k)
        r.term_classical += spectrum.eigenvalues(k) * std::norm(l_eig(k, k));
    r.term_pure = r.value - r.term_classical;
    return r;
}

/// Literal three-term spectral form with the parallel-transport gauge
/// <psi_k|d psi_k> = 0. Throws DegenerateSpectrumError when two eigenvalues
/// are closer than kGapTol, since the eigenvector derivatives blow up there.
template <typename Scalar>
QfiResult<Scalar> qfi_spectral_eq7(const DensityMatrix4<Scalar>& rho,
                                   const DensityMatrix4<Scalar>& drho,
                                   Scalar tol = Scalar(kSupportTol)) {
    const auto frame = detail::eigen_frame(rho, drho);
    const auto& lam = frame.spectrum.eigenvalues;
    const Eigen::Index n = lam.size();

    Scalar min_gap = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index k = 0; k + 1 < n; ++k) min_gap = std::min(min_gap, lam(k + 1) - lam(k));
    if (min_gap <= Scalar(kGapTol))
        throw DegenerateSpectrumError(
            "qfi_spectral_eq7: eigenvalue gap " + std::to_string(double(min_gap)) +
                " too small; use the matrix-form engine",
            double(min_gap));

    // <psi_k | d psi_l> for k != l
    const auto overlap = [&](Eigen::Index k, Eigen::Index l) {
        return frame.d(k, l) / (lam(l) - lam(k));
    };

    QfiResult<Scalar> r;
    r.engine = QfiEngine::SPECTRAL_EQ7;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (lam(k) > tol) {
            const Scalar dlam = frame.d(k, k).real();
            r.term_classical += dlam * dlam / lam(k);
        }
        Scalar dpsi_norm = 0;  // <d psi_k | d psi_k>
        for (Eigen::Index l = 0; l < n; ++l)
            if (l != k) dpsi_norm += std::norm(overlap(l, k));
        r.term_pure += Scalar(4) * lam(k) * dpsi_norm;
        for (Eigen::Index l = 0; l < n; ++l) {
            if (l == k) continue;
            const Scalar sum = lam(k) + lam(l);
            if (sum <= tol) continue;
            r.term_mixed -= Scalar(8) * lam(k) * lam(l) / sum * std::norm(overlap(k, l));
        }
    }
    r.value = r.term_classical + r.term_pure + r.term_mixed;
    return r;
}

template <typename Scalar>
QfiResult<Scalar> qfi(QfiEngine engine, const DensityMatrix4<Scalar>& rho,
                      const DensityMatrix4<Scalar>& drho, Scalar tol = Scalar(kSupportTol)) {
    switch (engine) {
        case QfiEngine::SPECTRAL_EQ7: return qfi_spectral_eq7(rho, drho, tol);
        case QfiEngine::SLD: return qfi_sld(rho, drho, tol);
        case QfiEngine::MATRIX_FORM: break;
    }
    return qfi_matrix_form(rho, drho, tol);
}

/// 4 (<d psi|d psi> - |<psi|d psi>|^2) for a normalized pure state.
template <typename DerivedA, typename DerivedB>
RealOf<DerivedA> pure_state_qfi(const Eigen::MatrixBase<DerivedA>& psi,
                                const Eigen::MatrixBase<DerivedB>& dpsi) {
    using Scalar = RealOf<DerivedA>;
    return Scalar(4) * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

struct TeleportedQfiOptions {
    QfiEngine engine = QfiEngine::MATRIX_FORM;
    DerivativeMethod derivative = DerivativeMethod::ANALYTIC;
    FdOptions fd{};
};

/// QFI with respect to theta of the normalized closed-form Bob state.
template <typename Scalar>
QfiResult<Scalar> teleported_qfi_result(Protocol protocol, const AlphaSet<Scalar>& a,
                                        const InputState& s, const TeleportedQfiOptions& opts = {}) {
    const DensityMatrix4<Scalar> rho =
        protocol == Protocol::FTP ? bob_state_ftp(a, s).rho : bob_state_stp(a, s).rho;
    const DensityMatrix4<Scalar> drho =
        opts.derivative == DerivativeMethod::ANALYTIC
            ? rho_derivative_analytic(protocol, a, s)
            : rho_derivative_fd(bob_theta_family(protocol, a, s.phi), Scalar(s.theta), opts.fd);
    return qfi(opts.engine, rho, drho);
}

template <typename Scalar = double>
Scalar teleported_qfi(Protocol protocol, const ChannelParams& p, const InputState& s,
                      const TeleportedQfiOptions& opts = {}) {
    return teleported_qfi_result(protocol, alpha_set<Scalar>(p), s, opts).value;
}

}  // namespace jcqt
