#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "core.hpp"
#include "optim.hpp"
#include "state.hpp"

namespace qwit::witness {

// All witnesses live on the 3x3 correlation square R = T^T T. Its spectrum
// r1 >= r2 >= r3 in [0,1] carries the Bell measure M = r1 + r2 - 1, the
// optimal CHSH value 2*sqrt(r1 + r2) and the fully entangled fraction
// F = (sqrt(r1) + sqrt(r2) + sqrt(r3) - 1)/2.
using RMatrix = Mat3;

inline RMatrix r_matrix(const Mat3& T) {
    Mat3 r = T.transpose() * T;
    return 0.5 * (r + r.transpose());
}

inline RMatrix r_matrix(const state::DensityMatrix& rho) {
    return r_matrix(state::bloch_decompose(rho).T);
}

inline Vec3 r_spectrum_descending(const RMatrix& r) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(r, Eigen::EigenvaluesOnly);
    Vec3 e = es.eigenvalues();  // ascending
    return Vec3(e(2), e(1), e(0));
}

inline double bell_M(const RMatrix& r) {
    Vec3 e = r_spectrum_descending(r);
    return e(0) + e(1) - 1.0;
}

inline double bell_B(double m) {
    return std::sqrt(std::max(m, 0.0));
}

inline double chsh_max(const RMatrix& r) {
    Vec3 e = r_spectrum_descending(r);
    return 2.0 * std::sqrt(std::max(e(0) + e(1), 0.0));
}

inline double fef_F(const RMatrix& r) {
    Vec3 e = r_spectrum_descending(r);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::sqrt(std::max(e(i), 0.0));
    return 0.5 * (s - 1.0);
}

inline double entropic_E(const state::DensityMatrix& rho) {
    Mat2 ra = state::partial_trace(rho, state::Subsystem::a);
    Mat2 rb = state::partial_trace(rho, state::Subsystem::b);
    double pa = (ra * ra).trace().real();
    double pb = (rb * rb).trace().real();
    return 2.0 * (rho.purity() - std::min(pa, pb));
}

inline double negativity(const state::DensityMatrix& rho) {
    Mat4 pt = state::partial_transpose(rho, state::Subsystem::b);
    Eigen::SelfAdjointEigenSolver<Mat4> es(pt, Eigen::EigenvaluesOnly);
    return 2.0 * std::max(0.0, -es.eigenvalues().minCoeff());
}

namespace detail {

inline Mat4 hermitian_sqrt(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d e = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

inline double concurrence(const state::DensityMatrix& rho) {
    const Mat4 yy = state::kron(state::pauli(2), state::pauli(2));
    Eigen::SelfAdjointEigenSolver<Mat4> spec(rho.entries());
    if (1.0 - spec.eigenvalues()(3) <= 1e-12) {
        // Square roots of the noise eigenvalues of rho*tilde(rho) sit at ~1e-8, which
        // would leak into the sum below. C is Lipschitz in rho, so deflating a
        // numerically pure state to its dominant eigenvector loses nothing.
        Vec4c psi = spec.eigenvectors().col(3);
        return std::abs(psi.dot(yy * psi.conjugate()));
    }
    Mat4 tilde = yy * rho.entries().conjugate() * yy;
    Mat4 root = detail::hermitian_sqrt(rho.entries());
    // eig(rho * tilde) equals eig of the Hermitian product sqrt(rho) tilde sqrt(rho)
    Mat4 h = root * tilde * root;
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();  // ascending
    return std::max(0.0, lam(3) - lam(2) - lam(1) - lam(0));
}

namespace detail {

inline Mat2 qubit_unitary(double a, double b, double c) {
    auto rz = [](double t) {
        Mat2 m;
        m << std::exp(cplx(0, -t / 2)), 0, 0, std::exp(cplx(0, t / 2));
        return m;
    };
    Mat2 ry;
    ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
    return rz(a) * ry * rz(c);
}

inline double max_entangled_overlap(const state::DensityMatrix& rho, double a, double b,
                                    double c) {
    Vec4c e = state::kron(qubit_unitary(a, b, c), Mat2::Identity()) * state::phi_plus();
    return (e.adjoint() * rho.entries() * e)(0).real();
}

}  // namespace detail

// Direct numerical maximization of <e|rho|e> over maximally entangled |e>.
// Every such state is (U x I)|Phi+> for a single-qubit unitary U, so three
// angles suffice. Sixteen fixed restarts defeat local maxima; the result is
// rescaled to 2f - 1 for comparison with fef_F.
inline double fef_oracle(const state::DensityMatrix& rho) {
    auto objective = [&rho](const Eigen::VectorXd& v) {
        return -detail::max_entangled_overlap(rho, v(0), v(1), v(2));
    };
    const double pi = 3.14159265358979323846;
    double best = 2.0;  // objective is in [-1, 0]
    bool any_converged = false;
    for (int ia = 0; ia < 4; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ic = 0; ic < 2; ++ic) {
                Eigen::VectorXd x0(3);
                x0 << ia * pi / 2, pi / 4 + ib * pi / 2, ic * pi;
                auto rep = optim::pattern_search(objective, x0, pi / 8, 1e-7, 4000, 1e-10);
                optim::polish_parabolic(objective, rep.x, rep.value, 1e-4, 4);
                any_converged = any_converged || rep.converged;
                if (rep.value < best) best = rep.value;
            }
    if (!any_converged)
        throw optimizer_error("fef_oracle: no restart converged", 2.0 * (-best) - 1.0);
    return 2.0 * (-best) - 1.0;
}

struct WitnessReport {
    double M;
    double B;
    double chsh_max;
    double F;
    double E;
    double N;
    double C;
    Vec3 eigs;  // descending spectrum of R
    std::optional<double> oracle_F;
};

inline WitnessReport report(const state::DensityMatrix& rho, bool with_oracle = false) {
    RMatrix r = r_matrix(rho);
    WitnessReport w;
    w.eigs = r_spectrum_descending(r);
    w.M = w.eigs(0) + w.eigs(1) - 1.0;
    w.B = bell_B(w.M);
    w.chsh_max = chsh_max(r);
    w.F = fef_F(r);
    w.E = entropic_E(rho);
    w.N = negativity(rho);
    w.C = concurrence(rho);
    if (with_oracle) w.oracle_F = fef_oracle(rho);
    return w;
}

}  // namespace qwit::witness
