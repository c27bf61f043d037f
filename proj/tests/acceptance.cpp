// End-to-end acceptance suite. Each numbered criterion prints one PASS/FAIL
// line with its measured values and wall time; the exit status is the number
// of failed criteria.

#include <qwit/qwit.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace qwit;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Mat3 sym6(double a, double b, double c, double d, double e, double f) {
    Mat3 m;
    m << a, b, c, b, d, e, c, e, f;
    return m;
}

struct Fixture {
    const char* name;
    Mat3 R_exp, dR, printed;
    Vec3 spectrum;  // descending
    double shift_printed;
};

std::vector<Fixture> fixtures() {
    return {
        {"sep", sym6(-0.099, -0.088, -0.124, -0.034, -0.113, 0.980),
         sym6(0.108, 0.109, 0.109, 0.108, 0.108, 0.147),
         sym6(0.008, 0.008, -0.086, 0.008, -0.091, 0.982), Vec3(0.998, 0.0, 0.0), 0.19},
        {"mix", sym6(0.017, 0.006, -0.007, 0.013, 0.016, 0.006),
         sym6(0.031, 0.031, 0.031, 0.033, 0.033, 0.029),
         sym6(0.018, 0.004, -0.004, 0.015, 0.011, 0.010), Vec3(0.024, 0.019, 0.0), 0.02},
        {"ent", sym6(0.990, 0.077, 0.008, 0.985, -0.013, 0.959),
         sym6(0.115, 0.087, 0.087, 0.110, 0.110, 0.079),
         sym6(0.963, 0.038, 0.010, 0.961, -0.012, 0.959), Vec3(1.000, 0.965, 0.919), 0.07},
    };
}

Mat2 random_unitary(std::mt19937_64& eng) {
    std::normal_distribution<double> g;
    Mat2 z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = cplx(g(eng), g(eng));
    Eigen::HouseholderQR<Mat2> qr(z);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

Mat2 random_qubit_density(std::mt19937_64& eng) {
    std::normal_distribution<double> g;
    Mat2 z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = cplx(g(eng), g(eng));
    Mat2 m = z * z.adjoint();
    return m / m.trace().real();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(QWIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<montecarlo::ScatterRecord> big_scatter;  // shared by criteria 5 and 8

// 1. Theory values for the three reference states
Outcome criterion_table() {
    struct Row {
        state::DensityMatrix rho;
        double M, E, F;
    };
    std::vector<Row> rows{
        {state::make_family({state::Family::werner, 1.0}), 1.0, 1.0, 1.0},
        {state::make_family({state::Family::pure, 0.0}), 0.0, 0.0, 0.0},
        {state::make_family({state::Family::werner, 0.0}), -1.0, -0.5, -0.5},
    };
    double worst = 0.0;
    for (const auto& row : rows) {
        auto w = witness::report(row.rho);
        worst = std::max({worst, std::abs(w.M - row.M), std::abs(w.E - row.E),
                          std::abs(w.F - row.F)});
    }
    return {worst <= 1e-10, "max |deviation| = " + fmt(worst)};
}

// 2. Collective two-copy identity against T^T T
Outcome criterion_collective() {
    auto eng = rng::substream(1002, 0);
    auto measure = state::RandomStateMeasure::hilbert_schmidt();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        auto rho = state::random_state(measure, eng);
        Mat3 r = witness::r_matrix(rho);
        for (const auto& s : swap::settings())
            worst = std::max(worst,
                             std::abs(swap::collective_R_exact(rho, rho, s) -
                                      r(s.i - 1, s.j - 1)));
    }
    return {worst <= 1e-10, "1000 states, max |gap| = " + fmt(worst)};
}

// 3. Werner sign changes located by the CLI scan
Outcome criterion_scan() {
    char tmpl[] = "/tmp/qwit-accept-XXXXXX";
    if (!mkdtemp(tmpl)) return {false, "mkdtemp failed"};
    std::string path = std::string(tmpl) + "/werner.csv";
    int code = run_cli("family-scan --family werner --steps 10000 --out " + path);
    if (code != 0) return {false, "family-scan exited with " + std::to_string(code)};

    auto curve = io::read_curve(path);
    const double step = 1.0 / 9999.0;
    auto crossing = [&](auto value) {
        for (std::size_t k = 1; k < curve.size(); ++k)
            if (value(curve[k - 1]) < 0.0 && value(curve[k]) >= 0.0) return curve[k].p;
        return -1.0;
    };
    double p_f = crossing([](const montecarlo::CurvePoint& c) { return c.F; });
    double p_e = crossing([](const montecarlo::CurvePoint& c) { return c.E; });
    double p_m = crossing([](const montecarlo::CurvePoint& c) { return c.M; });
    double g_f = std::abs(p_f - 1.0 / 3.0);
    double g_e = std::abs(p_e - 1.0 / std::sqrt(3.0));
    double g_m = std::abs(p_m - 1.0 / std::sqrt(2.0));
    bool ok = g_f <= step + 1e-12 && g_e <= step + 1e-12 && g_m <= step + 1e-12;
    return {ok, "crossings at p = " + fmt(p_f) + ", " + fmt(p_e) + ", " + fmt(p_m) +
                    " (gaps " + fmt(g_f) + ", " + fmt(g_e) + ", " + fmt(g_m) + ")"};
}

// 4. Analytic threshold negativities from the family curves
Outcome criterion_thresholds() {
    auto nm = montecarlo::family_threshold(state::Family::werner, montecarlo::WitnessKind::M);
    auto ne = montecarlo::family_threshold(state::Family::horodecki, montecarlo::WitnessKind::E);
    auto nf = montecarlo::family_threshold(state::Family::horodecki, montecarlo::WitnessKind::F);
    double g_m = std::abs(nm.N - (3.0 / std::sqrt(2.0) - 1.0) / 2.0);
    double g_e = std::abs(ne.N - (std::sqrt(5.0) - 1.0) / 3.0);
    double g_f = std::abs(nf.N - (std::sqrt(2.0) - 1.0) / 2.0);
    bool ok = g_m <= 5e-4 && g_e <= 5e-4 && g_f <= 5e-4;
    return {ok, "N_M = " + fmt(nm.N) + ", N_E = " + fmt(ne.N) + ", N_F = " + fmt(nf.N)};
}

// 5. Full-size scatter: one-sided thresholds and detection-count ordering
Outcome criterion_scatter() {
    big_scatter = montecarlo::scatter(100000, state::RandomStateMeasure::hilbert_schmidt(), 5);
    const double n_m = (3.0 / std::sqrt(2.0) - 1.0) / 2.0 + 5e-3;
    const double n_e = (std::sqrt(5.0) - 1.0) / 3.0 + 5e-3;
    const double n_f = (std::sqrt(2.0) - 1.0) / 2.0 + 5e-3;
    long long bad = 0, count_m = 0, count_e = 0, count_f = 0;
    for (const auto& rec : big_scatter) {
        if (rec.N > n_m && rec.M < 0.0) ++bad;
        if (rec.N > n_e && rec.E < 0.0) ++bad;
        if (rec.N > n_f && rec.F < 0.0) ++bad;
        count_m += rec.det_M;
        count_e += rec.det_E;
        count_f += rec.det_F;
    }
    bool ordered = count_f >= count_e && count_e >= count_m;
    return {bad == 0 && ordered,
            "violations = " + std::to_string(bad) + "; detects F/E/M = " +
                std::to_string(count_f) + "/" + std::to_string(count_e) + "/" +
                std::to_string(count_m)};
}

// 6. Reference ML fixtures: printed estimates, spectra, shift fractions
Outcome criterion_ml() {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& fx : fixtures()) {
        auto result = mle::ml_reconstruct(mle::LikelihoodProblem(fx.R_exp, fx.dR));
        double entry_gap = (result.R_phys - fx.printed).cwiseAbs().maxCoeff();
        double spec_gap = (result.eigs - fx.spectrum).cwiseAbs().maxCoeff();
        double shift_gap = std::abs(result.shift_fraction - fx.shift_printed);
        bool entry_ok = entry_gap <= 0.005;
        bool spec_ok = spec_gap <= 0.01;
        bool shift_ok = shift_gap <= 0.05;
        ok = ok && entry_ok && spec_ok && shift_ok;
        detail << fx.name << ": entries " << fmt(entry_gap) << (entry_ok ? "" : " (>0.005)")
               << ", spectrum " << fmt(spec_gap) << (spec_ok ? "" : " (>0.01)") << ", shift "
               << fmt(result.shift_fraction) << " vs " << fmt(fx.shift_printed)
               << (shift_ok ? "" : " (gap >0.05)") << "; ";
    }
    return {ok, detail.str()};
}

// 7. Noisy round trip on the singlet plus error-bar calibration
Outcome criterion_roundtrip() {
    auto rho = state::make_family({state::Family::werner, 1.0});
    auto table = swap::simulate_counts(rho, 0.1, 100000, 7);
    auto measured = swap::estimate_R(table);
    auto result = mle::ml_reconstruct(mle::LikelihoodProblem(measured.R_exp, measured.dR));
    double m = witness::bell_M(result.R_phys);
    double f = witness::fef_F(result.R_phys);

    double sum = 0.0, sq = 0.0;
    long n = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto est = swap::estimate_R(swap::simulate_counts(rho, 0.1, 100000, seed));
        for (const auto& s : swap::settings()) {
            double truth = (s.i == s.j) ? 1.0 : 0.0;
            double z = (est.R_exp(s.i - 1, s.j - 1) - truth) / est.dR(s.i - 1, s.j - 1);
            sum += z;
            sq += z * z;
            ++n;
        }
    }
    double mean = sum / n;
    double sd = std::sqrt(sq / n - mean * mean);
    bool ok = m >= 0.95 && f >= 0.95 && sd >= 0.8 && sd <= 1.25;
    return {ok, "M = " + fmt(m) + ", F = " + fmt(f) + ", residual std = " + fmt(sd)};
}

// 8. Property battery
Outcome criterion_properties() {
    std::ostringstream detail;
    bool ok = true;

    auto eng = rng::substream(1008, 0);
    auto measure = state::RandomStateMeasure::hilbert_schmidt();
    double drift = 0.0;
    for (int k = 0; k < 500; ++k) {
        auto rho = state::random_state(measure, eng);
        Mat4 u = state::kron(random_unitary(eng), random_unitary(eng));
        state::DensityMatrix rotated(u * rho.entries() * u.adjoint());
        auto a = witness::report(rho);
        auto b = witness::report(rotated);
        drift = std::max({drift, std::abs(a.M - b.M), std::abs(a.B - b.B),
                          std::abs(a.chsh_max - b.chsh_max), std::abs(a.F - b.F),
                          std::abs(a.E - b.E), std::abs(a.N - b.N), std::abs(a.C - b.C)});
    }
    bool lu_ok = drift <= 1e-10;
    ok = ok && lu_ok;
    detail << "LU drift " << fmt(drift) << (lu_ok ? "" : " (>1e-10)") << "; ";

    std::uniform_int_distribution<int> n_terms(1, 4);
    std::exponential_distribution<double> weight(1.0);
    long long sep_bad = 0;
    for (int k = 0; k < 10000; ++k) {
        Mat4 m = Mat4::Zero();
        int terms = n_terms(eng);
        double total = 0.0;
        for (int t = 0; t < terms; ++t) {
            double w = weight(eng);
            m += w * state::kron(random_qubit_density(eng), random_qubit_density(eng));
            total += w;
        }
        auto w = witness::report(state::DensityMatrix(Mat4(m / total)));
        if (w.M > 1e-9 || w.E > 1e-9 || w.F > 1e-9 || w.N > 1e-9) ++sep_bad;
    }
    ok = ok && sep_bad == 0;
    detail << "separable violations " << sep_bad << "; ";

    long long order_bad = 0;
    for (const auto& rec : big_scatter)
        if (rec.M > 0.0 && !(rec.F > 0.0)) ++order_bad;
    ok = ok && order_bad == 0;
    detail << "M>0 without F>0: " << order_bad << "; ";

    double fef_gap = 0.0;
    for (int k = 0; k <= 20; ++k) {
        auto rho = state::make_family({state::Family::werner, k / 20.0});
        fef_gap = std::max(fef_gap, std::abs(witness::fef_F(witness::r_matrix(rho)) -
                                             witness::fef_oracle(rho)));
    }
    for (int k = 0; k <= 10; ++k) {
        auto rho = state::make_family({state::Family::horodecki, k / 20.0});
        fef_gap = std::max(fef_gap, std::abs(witness::fef_F(witness::r_matrix(rho)) -
                                             witness::fef_oracle(rho)));
    }
    bool fef_ok = fef_gap <= 1e-6;
    ok = ok && fef_ok;
    detail << "fef gap " << fmt(fef_gap) << " (det T <= 0 branch)" << (fef_ok ? "" : " (>1e-6)")
           << "; ";

    double pure_gap = 0.0;
    for (int k = 0; k <= 100; ++k) {
        auto w = witness::report(state::make_family({state::Family::pure, k / 100.0}));
        pure_gap = std::max({pure_gap, std::abs(w.N - w.C), std::abs(w.B - w.N)});
    }
    bool pure_ok = pure_gap <= 1e-10;
    ok = ok && pure_ok;
    detail << "pure N=C=B gap " << fmt(pure_gap) << (pure_ok ? "" : " (>1e-10)");

    return {ok, detail.str()};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*fn)();
        double budget;
    };
    const Entry entries[] = {
        {"1. reference-state theory values (tol 1e-10)", criterion_table, 1.0},
        {"2. collective identity vs T^T T (tol 1e-10)", criterion_collective, 30.0},
        {"3. Werner crossings from a 10^4-point CLI scan", criterion_scan, 10.0},
        {"4. analytic threshold negativities (tol 5e-4)", criterion_thresholds, 10.0},
        {"5. 10^5-sample scatter: one-sided thresholds, count order", criterion_scatter, 300.0},
        {"6. ML fixtures: entries 0.005, spectra 0.01, shifts 0.05", criterion_ml, 10.0},
        {"7. singlet round trip (M, F >= 0.95; residual std)", criterion_roundtrip, 120.0},
        {"8. invariance, soundness, hierarchy, FEF, pure-state ties", criterion_properties, 300.0},
    };

    int failures = 0;
    for (const auto& e : entries) {
        double t0 = now_seconds();
        Outcome out = e.fn();
        double dt = now_seconds() - t0;
        bool in_budget = dt < e.budget;
        bool pass = out.pass && in_budget;
        failures += !pass;
        std::printf("[%s] %s: %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", e.name,
                    out.detail.c_str(), dt, in_budget ? "" : ", over budget");
    }
    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
