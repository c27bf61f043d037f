#pragma once

#include <cstdint>
#include <vector>

#include "core.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "witness.hpp"

namespace qwit::montecarlo {

// Sign convention: a witness detects entanglement when its value is
// nonnegative. Threshold estimates therefore collect the entangled states a
// witness misses (value strictly negative).

struct ScatterRecord {
    double N;
    double M;
    double E;
    double F;
    bool det_M;
    bool det_E;
    bool det_F;
};

struct ThresholdReport {
    double N_M = 0.0;
    double N_E = 0.0;
    double N_F = 0.0;
    long long sample_count = 0;
    state::RandomStateMeasure measure = state::RandomStateMeasure::hilbert_schmidt();
};

inline ScatterRecord record_for(const state::DensityMatrix& rho) {
    witness::WitnessReport w = witness::report(rho);
    return ScatterRecord{w.N, w.M, w.E, w.F, w.M >= 0.0, w.E >= 0.0, w.F >= 0.0};
}

// Each sample index draws from its own substream of the master seed, so the
// output is identical no matter how the index range is partitioned.
inline std::vector<ScatterRecord> scatter(long long n, const state::RandomStateMeasure& measure,
                                          std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("scatter: need n >= 1");
    std::vector<ScatterRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        auto engine = rng::substream(seed, static_cast<std::uint64_t>(i));
        out.push_back(record_for(state::random_state(measure, engine)));
    }
    return out;
}

inline ThresholdReport thresholds(const std::vector<ScatterRecord>& records,
                                  const state::RandomStateMeasure& measure =
                                      state::RandomStateMeasure::hilbert_schmidt()) {
    if (records.empty()) throw std::invalid_argument("thresholds: empty record list");
    ThresholdReport rep;
    rep.sample_count = static_cast<long long>(records.size());
    rep.measure = measure;
    for (const auto& rec : records) {
        if (rec.N <= 1e-9) continue;
        if (rec.M < 0.0 && rec.N > rep.N_M) rep.N_M = rec.N;
        if (rec.E < 0.0 && rec.N > rep.N_E) rep.N_E = rec.N;
        if (rec.F < 0.0 && rec.N > rep.N_F) rep.N_F = rec.N;
    }
    return rep;
}

struct CurvePoint {
    double p;
    double N;
    double M;
    double E;
    double F;
};

inline std::vector<CurvePoint> family_curve(state::Family family, double from, double to,
                                            int steps) {
    if (steps < 2) throw std::invalid_argument("family_curve: need steps >= 2");
    if (!(from >= 0.0 && from <= to && to <= 1.0))
        throw std::invalid_argument("family_curve: need 0 <= from <= to <= 1");
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        double p = from + (to - from) * static_cast<double>(k) / (steps - 1);
        state::DensityMatrix rho = state::make_family({family, p});
        witness::WitnessReport w = witness::report(rho);
        out.push_back(CurvePoint{p, w.N, w.M, w.E, w.F});
    }
    return out;
}

inline std::vector<CurvePoint> family_curve(state::Family family, int grid_points) {
    return family_curve(family, 0.0, 1.0, grid_points);
}

enum class WitnessKind { M, E, F };

struct FamilyThreshold {
    double p;
    double N;
};

namespace detail {

inline double witness_value(state::Family family, WitnessKind kind, double p) {
    state::DensityMatrix rho = state::make_family({family, p});
    switch (kind) {
        case WitnessKind::M:
            return witness::bell_M(witness::r_matrix(rho));
        case WitnessKind::E:
            return witness::entropic_E(rho);
        case WitnessKind::F:
            return witness::fef_F(witness::r_matrix(rho));
    }
    throw std::invalid_argument("witness_value: unknown witness kind");
}

}  // namespace detail

// Locates the detection boundary of one witness along a one-parameter family
// by bisecting the predicate "witness exceeds numerical zero". Works for
// witnesses that touch zero without a sign change (the fidelity witness is
// clamped at zero on part of the Horodecki family), where root bracketing on
// the raw value would fail.
inline FamilyThreshold family_threshold(state::Family family, WitnessKind kind) {
    const double tol = 1e-12;
    auto detected = [&](double p) { return detail::witness_value(family, kind, p) > tol; };
    bool at_lo = detected(0.0);
    bool at_hi = detected(1.0);
    if (at_lo == at_hi)
        throw std::invalid_argument(
            "family_threshold: witness does not change detection status on this family");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (detected(mid) == at_lo)
            lo = mid;
        else
            hi = mid;
    }
    double p_star = 0.5 * (lo + hi);
    double n_star = witness::negativity(state::make_family({family, p_star}));
    return FamilyThreshold{p_star, n_star};
}

}  // namespace qwit::montecarlo
