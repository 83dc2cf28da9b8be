#pragma once

// Dense complex kernel for the 2x2 and 4x4 Hermitian matrices used
// throughout the library. Everything is templated on the real scalar so
// the same code runs in double and long double.

#include <jcqt/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

namespace jcqt {

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

template <typename Scalar>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

/// 4x4 Hermitian, PSD, unit trace. Not enforced by the type; see
/// is_density_matrix().
template <typename Scalar>
using DensityMatrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceFloor = 1e-12;
inline constexpr double kJacobiOffDiagTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kPhaseTieTol = 1e-12;

template <typename Scalar>
struct SpectralDecomp {
    RealVector<Scalar> eigenvalues;      // ascending
    ComplexMatrix<Scalar> eigenvectors;  // orthonormal columns
};

template <typename Scalar>
struct TraceNormalized {
    ComplexMatrix<Scalar> matrix;
    Scalar raw_trace;
};

template <typename Derived>
void require_supported_dim(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4))
        throw ValidationError("matrix must be 2x2 or 4x4, got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const auto z = std::complex<RealOf<Derived>>(m(i, j));
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

/// max |m_ij - conj(m_ji)|
template <typename Derived>
RealOf<Derived> hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
ComplexMatrix<RealOf<Derived>> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = RealOf<Derived>;
    return (m + m.adjoint()) / Scalar(2);
}

template <typename DerivedA, typename DerivedB>
ComplexMatrix<RealOf<DerivedA>> mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
    require_supported_dim(a);
    require_supported_dim(b);
    if (a.rows() != b.rows())
        throw ValidationError("mat_mul: dimension mismatch " + std::to_string(a.rows()) + " vs " +
                              std::to_string(b.rows()));
    return a * b;
}

template <typename Derived>
std::complex<RealOf<Derived>> trace(const Eigen::MatrixBase<Derived>& m) {
    return m.trace();
}

/// psi^dagger M psi
template <typename DerivedV, typename DerivedM>
std::complex<RealOf<DerivedM>> expectation(const Eigen::MatrixBase<DerivedV>& psi,
                                           const Eigen::MatrixBase<DerivedM>& m) {
    require_supported_dim(m);
    if (psi.cols() != 1 || psi.rows() != m.rows())
        throw ValidationError("expectation: state of size " + std::to_string(psi.rows()) +
                              " against " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + " matrix");
    return psi.dot(m * psi);
}

/// Divides by the trace. The trace must be real (within kHermitianTol) and
/// above kTraceFloor, otherwise the state is treated as degenerate.
template <typename Derived>
TraceNormalized<RealOf<Derived>> normalize_trace(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = RealOf<Derived>;
    require_supported_dim(m);
    const std::complex<Scalar> tr = m.trace();
    if (std::abs(tr.imag()) > Scalar(kHermitianTol))
        throw NumericError("normalize_trace: trace has imaginary part " +
                           std::to_string(double(tr.imag())));
    if (!(tr.real() > Scalar(kTraceFloor)))
        throw NumericError("normalize_trace: trace " + std::to_string(double(tr.real())) +
                           " below floor, degenerate state");
    return {ComplexMatrix<Scalar>(m / tr.real()), tr.real()};
}

namespace detail {

template <typename Scalar>
Scalar max_off_diagonal(const ComplexMatrix<Scalar>& a) {
    Scalar off = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) off = std::max(off, std::abs(a(i, j)));
    return off;
}

// One complex Jacobi rotation zeroing a(p, q). The unitary is D*R where
// D = diag(1, conj(e)) removes the phase e of a(p, q) and R is the real
// symmetric Jacobi rotation of the resulting 2x2 block.
template <typename Scalar>
void jacobi_rotate(ComplexMatrix<Scalar>& a, ComplexMatrix<Scalar>& v, Eigen::Index p,
                   Eigen::Index q) {
    using C = std::complex<Scalar>;
    const C apq = a(p, q);
    const Scalar g = std::abs(apq);
    if (g == Scalar(0)) return;
    const C e = apq / g;
    const Scalar theta = (a(q, q).real() - a(p, p).real()) / (Scalar(2) * g);
    const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                     (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
    const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
    const Scalar s = t * c;
    const C se = s * std::conj(e);
    const C ce = c * std::conj(e);

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const C akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - se * akq;
        a(k, q) = s * akp + ce * akq;
        const C vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - se * vkq;
        v(k, q) = s * vkp + ce * vkq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const C apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * e * aqk;
        a(q, k) = s * apk + c * e * aqk;
    }
    a(p, q) = C(0);
    a(q, p) = C(0);
    a(p, p) = C(a(p, p).real(), 0);
    a(q, q) = C(a(q, q).real(), 0);
}

// Largest-magnitude component made real and nonnegative; near-ties go to
// the lowest index.
template <typename Scalar>
void fix_phase(StateVector<Scalar>& col) {
    const Scalar largest = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.rows(); ++i) {
        if (std::abs(col(i)) >= largest - Scalar(kPhaseTieTol)) {
            if (std::abs(col(i)) > Scalar(0)) col *= std::conj(col(i)) / std::abs(col(i));
            col(i) = std::complex<Scalar>(std::abs(col(i)), 0);
            return;
        }
    }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian within kHermitianTol; its Hermitian part
/// (M + M^dagger)/2 is what gets diagonalized. Sweeps stop once every
/// off-diagonal magnitude is below kJacobiOffDiagTol * max(1, |M|_F), or
/// throw ConvergenceError after kJacobiMaxSweeps. Eigenvalues come back
/// ascending; equal eigenvalues keep their diagonal order.
template <typename Derived>
SpectralDecomp<RealOf<Derived>> eigh(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = RealOf<Derived>;
    require_supported_dim(m);
    if (!all_finite(m)) throw NumericError("eigh: non-finite entry");
    const Scalar herm = hermiticity_error(m);
    if (herm > Scalar(kHermitianTol))
        throw ValidationError("eigh: matrix is not Hermitian (max asymmetry " +
                              std::to_string(double(herm)) + ")");

    ComplexMatrix<Scalar> a = hermitian_part(m);
    const Eigen::Index n = a.rows();
    ComplexMatrix<Scalar> v = ComplexMatrix<Scalar>::Identity(n, n);
    const Scalar tol = Scalar(kJacobiOffDiagTol) * std::max(Scalar(1), a.norm());

    Scalar off = detail::max_off_diagonal(a);
    for (int sweep = 0; sweep < kJacobiMaxSweeps && off >= tol; ++sweep) {
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
        off = detail::max_off_diagonal(a);
    }
    if (off >= tol)
        throw ConvergenceError("eigh: Jacobi did not converge in " +
                                   std::to_string(kJacobiMaxSweeps) + " sweeps",
                               double(off));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    SpectralDecomp<Scalar> out{RealVector<Scalar>(n), ComplexMatrix<Scalar>(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        StateVector<Scalar> col = v.col(src);
        detail::fix_phase(col);
        out.eigenvectors.col(k) = col;
    }
    return out;
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> tol) {
    return eigh(m).eigenvalues.minCoeff() >= -tol;
}

/// Hermitian, unit trace and PSD within the given tolerances.
template <typename Derived>
bool is_density_matrix(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> trace_tol = 1e-12,
                       RealOf<Derived> psd_tol = 1e-10) {
    using Scalar = RealOf<Derived>;
    if (hermiticity_error(m) > Scalar(kHermitianTol)) return false;
    if (std::abs(m.trace() - std::complex<Scalar>(1)) > trace_tol) return false;
    return is_psd(m, psd_tol);
}

template <typename DerivedA, typename DerivedB>
ComplexMatrix<RealOf<DerivedA>> kron(const Eigen::MatrixBase<DerivedA>& a,
                                     const Eigen::MatrixBase<DerivedB>& b) {
    ComplexMatrix<RealOf<DerivedA>> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace jcqt
