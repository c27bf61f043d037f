#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

namespace qwit::optim {

struct SearchReport {
    Eigen::VectorXd x;
    double value = 0.0;
    long evals = 0;
    bool converged = false;
};

// Compass search: poll +-h along every coordinate, move to the best improving
// point, halve the mesh when a full poll fails to improve by more than
// improvement_tol. Minimizes f. Deterministic for a fixed starting point.
template <typename F>
SearchReport pattern_search(F&& f, Eigen::VectorXd x, double step, double min_step,
                            long eval_budget, double improvement_tol) {
    SearchReport rep;
    const int n = static_cast<int>(x.size());
    double fx = f(x);
    ++rep.evals;
    double h = step;
    while (h >= min_step && rep.evals < eval_budget) {
        int best_dir = -1;
        double best_val = fx;
        for (int k = 0; k < 2 * n && rep.evals < eval_budget; ++k) {
            Eigen::VectorXd y = x;
            y(k / 2) += (k % 2 == 0) ? h : -h;
            double fy = f(y);
            ++rep.evals;
            if (fy < best_val) {
                best_val = fy;
                best_dir = k;
            }
        }
        if (best_dir >= 0 && fx - best_val > improvement_tol) {
            x(best_dir / 2) += (best_dir % 2 == 0) ? h : -h;
            fx = best_val;
        } else {
            h *= 0.5;
        }
    }
    rep.converged = (h < min_step);
    rep.x = std::move(x);
    rep.value = fx;
    return rep;
}

// Cyclic one-dimensional parabolic refinement. Each pass fits a quadratic
// through (x-h, x, x+h) per coordinate and jumps to its vertex when that
// improves. The probe width shrinks tenfold per pass.
template <typename F>
long polish_parabolic(F&& f, Eigen::VectorXd& x, double& fx, double h0, int passes) {
    const int n = static_cast<int>(x.size());
    long evals = 0;
    double h = h0;
    for (int pass = 0; pass < passes; ++pass, h *= 0.1) {
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd y = x;
            y(i) = x(i) - h;
            double fm = f(y);
            y(i) = x(i) + h;
            double fp = f(y);
            evals += 2;
            double denom = fp - 2.0 * fx + fm;
            if (!(denom > 0.0)) continue;
            double delta = 0.5 * h * (fm - fp) / denom;
            if (std::abs(delta) > 4.0 * h) continue;
            y(i) = x(i) + delta;
            double fv = f(y);
            ++evals;
            if (fv < fx) {
                x(i) = y(i);
                fx = fv;
            }
        }
    }
    return evals;
}

}  // namespace qwit::optim
