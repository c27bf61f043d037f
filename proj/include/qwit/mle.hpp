#pragma once

#include <algorithm>
#include <cmath>

#include "core.hpp"
#include "optim.hpp"

namespace qwit::mle {

// Weighted least-squares reconstruction of a physical correlation square:
// maximize logL = -sum_{i<=j} ((R_exp - R)/dR)^2 over symmetric R with
// spectrum in [0,1].
struct LikelihoodProblem {
    Mat3 R_exp;
    Mat3 dR;

    LikelihoodProblem(const Mat3& r_exp, const Mat3& dr) : R_exp(r_exp), dR(dr) {
        if ((R_exp - R_exp.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("LikelihoodProblem: R_exp must be symmetric");
        if ((dR - dR.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("LikelihoodProblem: dR must be symmetric");
        if (dR.minCoeff() <= 0.0)
            throw std::invalid_argument("LikelihoodProblem: dR entries must be positive");
        // overconfident weights are floored to keep the objective finite
        dR = dR.cwiseMax(1e-6);
    }
};

struct MLResult {
    Mat3 R_phys;
    double logL = 0.0;
    Vec3 eigs = Vec3::Zero();  // descending
    long iterations = 0;
    double shift_fraction = 0.0;
};

struct ml_diagnostic_error : optimizer_error {
    ml_diagnostic_error(const std::string& what, const MLResult& candidate)
        : optimizer_error(what, candidate.logL), best(candidate) {}
    MLResult best;
};

namespace detail {

inline Mat3 rotation_xyz(double a, double b, double c) {
    Mat3 rx, ry, rz;
    rx << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    ry << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
    rz << std::cos(c), -std::sin(c), 0, std::sin(c), std::cos(c), 0, 0, 0, 1;
    return rx * ry * rz;
}

// Feasible-by-construction parameterization: R = O diag(sin^2 phi) O^T.
inline Mat3 build_r(const Eigen::VectorXd& v) {
    Mat3 o = rotation_xyz(v(0), v(1), v(2));
    Vec3 d(std::pow(std::sin(v(3)), 2), std::pow(std::sin(v(4)), 2),
           std::pow(std::sin(v(5)), 2));
    Mat3 r = o * d.asDiagonal() * o.transpose();
    return 0.5 * (r + r.transpose());
}

inline double chi2(const Mat3& r, const LikelihoodProblem& p) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double z = (p.R_exp(i, j) - r(i, j)) / p.dR(i, j);
            s += z * z;
        }
    return s;
}

// Euler angles of a proper rotation under the Rx*Ry*Rz convention.
inline Vec3 euler_xyz(Mat3 o) {
    if (o.determinant() < 0) o.col(2) *= -1.0;
    double b = std::asin(std::clamp(o(0, 2), -1.0, 1.0));
    double a = std::atan2(-o(1, 2), o(2, 2));
    double c = std::atan2(-o(0, 1), o(0, 0));
    return Vec3(a, b, c);
}

}  // namespace detail

inline double shift_diagnostic(const LikelihoodProblem& p, const MLResult& r) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) s += std::abs(r.R_phys(i, j) - p.R_exp(i, j)) / p.dR(i, j);
    return s / 6.0;
}

inline MLResult ml_reconstruct(const LikelihoodProblem& p) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(p.R_exp);
    Vec3 lam = es.eigenvalues();  // ascending

    MLResult out;
    if (lam.minCoeff() >= -1e-12 && lam.maxCoeff() <= 1.0 + 1e-12) {
        // already physical: the data are their own maximum likelihood estimate
        out.R_phys = p.R_exp;
        out.logL = 0.0;
        out.eigs = Vec3(lam(2), lam(1), lam(0));
        out.iterations = 0;
        out.shift_fraction = 0.0;
        return out;
    }

    auto objective = [&p](const Eigen::VectorXd& v) { return detail::chi2(detail::build_r(v), p); };

    // start from the clipped eigendecomposition, then eight fixed perturbations
    Vec3 angles = detail::euler_xyz(es.eigenvectors());
    Eigen::VectorXd x0(6);
    x0 << angles(0), angles(1), angles(2),
        std::asin(std::sqrt(std::clamp(lam(0), 0.0, 1.0))),
        std::asin(std::sqrt(std::clamp(lam(1), 0.0, 1.0))),
        std::asin(std::sqrt(std::clamp(lam(2), 0.0, 1.0)));
    static const double offsets[8][6] = {
        {1, 1, 1, 1, 1, 1},   {-1, 1, -1, 1, -1, 1}, {1, -1, -1, 1, 1, -1},
        {-1, -1, 1, 1, -1, 1}, {1, 1, -1, -1, -1, 1}, {-1, 1, 1, -1, 1, -1},
        {1, -1, 1, -1, -1, -1}, {-1, -1, -1, -1, 1, 1}};

    const long budget = 100000;
    long evals = 0;
    bool have_best = false;
    Eigen::VectorXd best_x;
    double best_val = 0.0;
    for (int s = 0; s < 9 && evals < budget; ++s) {
        Eigen::VectorXd x = x0;
        if (s > 0)
            for (int i = 0; i < 6; ++i) x(i) += 0.4 * offsets[s - 1][i];
        auto rep = optim::pattern_search(objective, x, 0.5, 1e-9, (budget - evals) / (9 - s),
                                         1e-12);
        evals += rep.evals;
        evals += optim::polish_parabolic(objective, rep.x, rep.value, 1e-4, 6);
        if (!have_best || rep.value < best_val) {
            have_best = true;
            best_val = rep.value;
            best_x = rep.x;
        }
    }
    out.iterations = evals;
    if (!have_best) {
        out.R_phys = p.R_exp;
        out.logL = -detail::chi2(p.R_exp, p);
        throw ml_diagnostic_error("ml_reconstruct: optimizer produced no candidate", out);
    }
    out.R_phys = detail::build_r(best_x);
    out.logL = -best_val;
    Eigen::SelfAdjointEigenSolver<Mat3> es2(out.R_phys, Eigen::EigenvaluesOnly);
    out.eigs = Vec3(es2.eigenvalues()(2), es2.eigenvalues()(1), es2.eigenvalues()(0));
    out.shift_fraction = shift_diagnostic(p, out);
    return out;
}

// Spectrum interpolation for experimentally prepared Werner states built by
// time-mixing a singlet-like state with a maximally mixed one.
inline Vec3 werner_spectrum_model(double p_mix, const Vec3& eigs_ent, const Vec3& eigs_mix) {
    if (!(p_mix >= 0.0 && p_mix <= 1.0))
        throw std::invalid_argument("werner_spectrum_model: p must lie in [0,1]");
    return p_mix * p_mix * eigs_ent + (1.0 - p_mix) * (1.0 - p_mix) * eigs_mix;
}

}  // namespace qwit::mle
