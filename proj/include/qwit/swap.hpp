#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "core.hpp"
#include "rng.hpp"
#include "state.hpp"

namespace qwit::swap {

// Two copies of the state enter the apparatus. Alice holds one qubit from
// each copy (slots a1, a2), Bob the other two (b1, b2). Alice's beam splitter
// either interferes her pair (on mode, POVM element (r/2) I + (1-r) |Psi-><Psi-|
// with r the non-interfering fraction) or passes it through (off mode, element
// I/2), while Bob projects onto the product eigenbasis of sigma_i x sigma_j.
// The product state rho x rho is ordered (a1, b1, a2, b2), so aligning it with
// the operator ordering (a1, a2, b1, b2) takes the slot permutation below.

inline constexpr std::array<int, 4> collective_slot_order{0, 2, 1, 3};

inline Mat4 singlet_projector() {
    Vec4c s = state::psi_minus();
    return s * s.adjoint();
}

struct MeasurementSetting {
    int i;
    int j;

    MeasurementSetting(int i_, int j_) : i(i_), j(j_) {
        if (i < 1 || i > 3 || j < 1 || j > 3 || i < j)
            throw std::invalid_argument("MeasurementSetting: need 1 <= j <= i <= 3");
    }
};

inline const std::array<MeasurementSetting, 6>& settings() {
    static const std::array<MeasurementSetting, 6> s{
        MeasurementSetting{1, 1}, MeasurementSetting{2, 1}, MeasurementSetting{2, 2},
        MeasurementSetting{3, 1}, MeasurementSetting{3, 2}, MeasurementSetting{3, 3}};
    return s;
}

enum class Mode { on = 0, off = 1 };

struct AlicePovm {
    double r;
    Mode mode;

    AlicePovm(double r_, Mode mode_) : r(r_), mode(mode_) {
        if (!(r >= 0.0 && r <= 1.0))
            throw std::invalid_argument("AlicePovm: r must lie in [0,1]");
    }

    Mat4 element() const {
        if (mode == Mode::off) return 0.5 * Mat4::Identity();
        return (r / 2.0) * Mat4::Identity() + (1.0 - r) * singlet_projector();
    }
};

// Bob outcome convention: b enumerates the sign pairs (+,+), (+,-), (-,+),
// (-,-) of the sigma_i and sigma_j eigenbases; lambda_b is the product of the
// two signs.
inline constexpr std::array<double, 4> lambda_b{+1.0, -1.0, -1.0, +1.0};
inline constexpr const char* outcome_convention =
    "b=(++,+-,-+,--);lambda=(+1,-1,-1,+1)";

inline std::array<Mat4, 4> bob_projectors(const MeasurementSetting& s) {
    const Mat2 id = Mat2::Identity();
    std::array<Mat4, 4> out;
    int b = 0;
    for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
            Mat2 pi = 0.5 * (id + si * state::pauli(s.i));
            Mat2 pj = 0.5 * (id + sj * state::pauli(s.j));
            out[b++] = state::kron(pi, pj);
        }
    return out;
}

namespace detail {

inline Mat16 kron44(const Mat4& a, const Mat4& b) {
    Mat16 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

}  // namespace detail

// Exact collective average: one element of R obtained from two state copies
// with the operator S = I - 4 |Psi-><Psi-| on Alice's pair and sigma_i x sigma_j
// on Bob's. Serves as the oracle the sampled estimator must reproduce.
inline double collective_R_exact(const state::DensityMatrix& rho1,
                                 const state::DensityMatrix& rho2,
                                 const MeasurementSetting& s) {
    Mat16 w = state::tensor_and_permute(rho1, rho2, collective_slot_order);
    Mat4 alice = Mat4::Identity() - 4.0 * singlet_projector();
    Mat4 bob = state::kron(state::pauli(s.i), state::pauli(s.j));
    return (w * detail::kron44(alice, bob)).trace().real();
}

// Probabilities of the eight exclusive outcomes per mode: Alice click with Bob
// outcome b (cells 0..3) and Alice no-click with Bob outcome b (cells 4..7).
inline std::array<double, 8> joint_outcome_distribution(const state::DensityMatrix& rho,
                                                        const MeasurementSetting& s,
                                                        const AlicePovm& povm) {
    Mat16 w = state::tensor_and_permute(rho, rho, collective_slot_order);
    Mat4 a = povm.element();
    Mat4 a_bar = Mat4::Identity() - a;
    auto bob = bob_projectors(s);
    std::array<double, 8> q{};
    for (int b = 0; b < 4; ++b) {
        q[b] = std::max(0.0, (w * detail::kron44(a, bob[b])).trace().real());
        q[4 + b] = std::max(0.0, (w * detail::kron44(a_bar, bob[b])).trace().real());
    }
    return q;
}

struct CoincidenceTable {
    double r = 0.0;
    std::uint64_t seed = 0;
    // indexed [setting][mode] with settings() order and Mode values
    std::array<std::array<long long, 2>, 6> shots{};
    std::array<std::array<std::array<long long, 4>, 2>, 6> counts{};
};

struct MeasuredR {
    Mat3 R_exp;
    Mat3 dR;
};

namespace detail {

template <std::size_t N>
inline std::array<long long, N> multinomial(std::mt19937_64& engine,
                                            const std::array<double, N>& probs,
                                            long long trials) {
    std::array<long long, N> out{};
    double remaining_p = 0.0;
    for (double p : probs) remaining_p += p;
    long long remaining = trials;
    for (std::size_t c = 0; c + 1 < N && remaining > 0; ++c) {
        double frac = (remaining_p > 0.0) ? std::clamp(probs[c] / remaining_p, 0.0, 1.0) : 0.0;
        std::binomial_distribution<long long> bin(remaining, frac);
        out[c] = bin(engine);
        remaining -= out[c];
        remaining_p -= probs[c];
    }
    if (remaining > 0) out[N - 1] = remaining;
    return out;
}

}  // namespace detail

inline CoincidenceTable simulate_counts(const state::DensityMatrix& rho, double r,
                                        long long shots_per_setting_mode, std::uint64_t seed) {
    if (shots_per_setting_mode < 1)
        throw std::invalid_argument("simulate_counts: shots must be >= 1");
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("simulate_counts: r must lie in [0,1]");
    CoincidenceTable table;
    table.r = r;
    table.seed = seed;
    for (std::size_t si = 0; si < settings().size(); ++si) {
        for (Mode mode : {Mode::on, Mode::off}) {
            int mi = static_cast<int>(mode);
            auto q = joint_outcome_distribution(rho, settings()[si], AlicePovm(r, mode));
            auto engine = rng::substream(seed, 2 * si + static_cast<std::size_t>(mi));
            auto cells = detail::multinomial(engine, q, shots_per_setting_mode);
            table.shots[si][mi] = shots_per_setting_mode;
            for (int b = 0; b < 4; ++b) table.counts[si][mi][b] = cells[b];
        }
    }
    return table;
}

// Two-run estimator. Off mode gives the Bob marginal, P(b) = 2 freq_off(b);
// on mode isolates the singlet component, P(Psi-, b) = (freq_on(b) -
// (r/2) P(b)) / (1 - r); the R entry is sum_b lambda_b (P(b) - 4 P(Psi-, b)).
// Standard errors follow from first-order propagation of the multinomial
// covariance of the click frequencies, with empty cells replaced by the
// rule-of-three surrogate 1/(3 shots).
inline MeasuredR estimate_R(const CoincidenceTable& table, double r) {
    if (r == 1.0)
        throw degenerate_calibration_error("estimate_R: r = 1 leaves no interference signal");
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("estimate_R: r must lie in [0,1)");
    const double c_off = (2.0 + 2.0 * r) / (1.0 - r);
    const double c_on = 4.0 / (1.0 - r);
    MeasuredR out;
    for (std::size_t si = 0; si < settings().size(); ++si) {
        const auto& s = settings()[si];
        double value = 0.0;
        double variance = 0.0;
        for (Mode mode : {Mode::on, Mode::off}) {
            int mi = static_cast<int>(mode);
            long long n = table.shots[si][mi];
            if (n <= 0)
                throw insufficient_data_error("estimate_R: zero shots for a setting/mode");
            double coef = (mode == Mode::off) ? c_off : -c_on;
            std::array<double, 4> f{}, fv{};
            for (int b = 0; b < 4; ++b) {
                f[b] = static_cast<double>(table.counts[si][mi][b]) / static_cast<double>(n);
                fv[b] = (table.counts[si][mi][b] == 0) ? 1.0 / (3.0 * static_cast<double>(n))
                                                       : f[b];
            }
            double lf = 0.0, lfv = 0.0, l2fv = 0.0;
            for (int b = 0; b < 4; ++b) {
                lf += lambda_b[b] * f[b];
                lfv += lambda_b[b] * fv[b];
                l2fv += lambda_b[b] * lambda_b[b] * fv[b];
            }
            value += coef * lf;
            variance += coef * coef * (l2fv - lfv * lfv) / static_cast<double>(n);
        }
        out.R_exp(s.i - 1, s.j - 1) = value;
        out.R_exp(s.j - 1, s.i - 1) = value;
        double sigma = std::sqrt(variance);
        out.dR(s.i - 1, s.j - 1) = sigma;
        out.dR(s.j - 1, s.i - 1) = sigma;
    }
    return out;
}

inline MeasuredR estimate_R(const CoincidenceTable& table) { return estimate_R(table, table.r); }

}  // namespace qwit::swap
