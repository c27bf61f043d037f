#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "mle.hpp"
#include "montecarlo.hpp"
#include "state.hpp"
#include "swap.hpp"

namespace qwit::io {

// Files carry full double precision; the CLI prints 6 significant digits.
inline std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace detail {

inline double to_double(const std::string& tok, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw parse_error("");
        return v;
    } catch (const std::exception&) {
        throw parse_error(context + ": expected a number, got '" + tok + "'");
    }
}

inline long long to_ll(const std::string& tok, const std::string& context) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw parse_error("");
        return v;
    } catch (const std::exception&) {
        throw parse_error(context + ": expected an integer, got '" + tok + "'");
    }
}

inline std::uint64_t to_u64(const std::string& tok, const std::string& context) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw parse_error("");
        return v;
    } catch (const std::exception&) {
        throw parse_error(context + ": expected an unsigned integer, got '" + tok + "'");
    }
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct TextFile {
    std::map<std::string, std::string> meta;  // from "# key: value" lines
    std::vector<std::string> data;            // non-empty, non-comment lines
};

inline TextFile read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    TextFile tf;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string body = trim(t.substr(1));
            std::size_t colon = body.find(':');
            if (colon != std::string::npos)
                tf.meta[trim(body.substr(0, colon))] = trim(body.substr(colon + 1));
            continue;
        }
        tf.data.push_back(t);
    }
    return tf;
}

inline void require_format(const TextFile& tf, const std::string& expected,
                           const std::string& path) {
    auto it = tf.meta.find("format");
    if (it == tf.meta.end())
        throw parse_error(path + ": missing '# format:' header line");
    if (it->second != expected)
        throw parse_error(path + ": expected format '" + expected + "', found '" + it->second +
                          "'");
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    return out;
}

inline int setting_index(int i, int j, const std::string& context) {
    if (i < 1 || i > 3 || j < 1 || j > i)
        throw parse_error(context + ": setting indices must satisfy 1 <= j <= i <= 3");
    return i * (i - 1) / 2 + (j - 1);
}

}  // namespace detail

// First "# format:" header value of a text artifact, used to dispatch readers.
inline std::string peek_format(const std::string& path) {
    auto tf = detail::read_text(path);
    auto it = tf.meta.find("format");
    if (it == tf.meta.end())
        throw parse_error(path + ": missing '# format:' header line");
    return it->second;
}

// ---------------------------------------------------------------------------
// Family and measure literals

inline std::string family_name(state::Family f) {
    switch (f) {
        case state::Family::werner: return "werner";
        case state::Family::horodecki: return "horodecki";
        case state::Family::pure: return "pure";
    }
    throw std::invalid_argument("family_name: unknown family");
}

inline state::Family parse_family(const std::string& name) {
    if (name == "werner") return state::Family::werner;
    if (name == "horodecki") return state::Family::horodecki;
    if (name == "pure") return state::Family::pure;
    throw std::invalid_argument("unknown state family: " + name);
}

inline bool is_family_literal(const std::string& spec) {
    for (const char* prefix : {"werner:", "horodecki:", "pure:"})
        if (spec.rfind(prefix, 0) == 0) return true;
    return false;
}

inline state::StateFamily parse_family_literal(const std::string& spec) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw parse_error("family literal must look like name:p=<value>: " + spec);
    state::Family kind = parse_family(spec.substr(0, colon));
    std::string rest = spec.substr(colon + 1);
    if (rest.rfind("p=", 0) != 0)
        throw parse_error("family literal must look like name:p=<value>: " + spec);
    double p = detail::to_double(rest.substr(2), "family literal '" + spec + "'");
    return state::StateFamily{kind, p};
}

inline std::string measure_name(const state::RandomStateMeasure& m) {
    switch (m.kind) {
        case state::RandomStateMeasure::Kind::haar_pure: return "haar-pure";
        case state::RandomStateMeasure::Kind::hilbert_schmidt: return "hilbert-schmidt";
        case state::RandomStateMeasure::Kind::induced:
            return "induced:" + std::to_string(m.ancilla_dim);
    }
    throw std::invalid_argument("measure_name: unknown measure");
}

inline state::RandomStateMeasure parse_measure(const std::string& name) {
    if (name == "haar-pure") return state::RandomStateMeasure::haar_pure();
    if (name == "hilbert-schmidt") return state::RandomStateMeasure::hilbert_schmidt();
    if (name.rfind("induced:", 0) == 0) {
        long long k = detail::to_ll(name.substr(8), "measure '" + name + "'");
        return state::RandomStateMeasure::induced(static_cast<int>(k));
    }
    throw std::invalid_argument("unknown random-state measure: " + name);
}

// ---------------------------------------------------------------------------
// Density-matrix files: JSON object with basis, re, im

inline void write_state(const std::string& path, const state::DensityMatrix& rho) {
    nlohmann::json j;
    j["format"] = std::string(artifact_version) + " state";
    j["basis"] = "HH,HV,VH,VV";
    const Mat4& m = rho.entries();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        j["re"].push_back(re_row);
        j["im"].push_back(im_row);
    }
    detail::open_out(path) << j.dump(2) << "\n";
}

inline state::DensityMatrix read_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("basis") || !j.contains("re") || !j.contains("im"))
        throw parse_error(path + ": state object needs fields basis, re, im");
    if (j["basis"] != "HH,HV,VH,VV")
        throw parse_error(path + ": unsupported basis '" + j["basis"].dump() +
                          "', expected \"HH,HV,VH,VV\"");
    Mat4 m;
    for (const char* part : {"re", "im"}) {
        const auto& arr = j[part];
        if (!arr.is_array() || arr.size() != 4)
            throw parse_error(path + ": field '" + part + "' must be a 4x4 array");
        for (int r = 0; r < 4; ++r) {
            if (!arr[r].is_array() || arr[r].size() != 4)
                throw parse_error(path + ": field '" + part + "' row " + std::to_string(r) +
                                  " must have 4 entries");
            for (int c = 0; c < 4; ++c) {
                if (!arr[r][c].is_number())
                    throw parse_error(path + ": field '" + part + "' entry (" +
                                      std::to_string(r) + "," + std::to_string(c) +
                                      ") is not a number");
                double v = arr[r][c].get<double>();
                if (part[0] == 'r')
                    m(r, c) = cplx(v, 0.0);
                else
                    m(r, c) += cplx(0.0, v);
            }
        }
    }
    return state::DensityMatrix(m);  // may throw not_a_state_error
}

// State spec: either a family literal like werner:p=0.5 or a file path.
inline state::DensityMatrix load_state_spec(const std::string& spec) {
    if (is_family_literal(spec)) return state::make_family(parse_family_literal(spec));
    return read_state(spec);
}

// ---------------------------------------------------------------------------
// Coincidence tables: one record per (i, j, mode, b)

inline void write_coincidence_table(const std::string& path, const swap::CoincidenceTable& t) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " coincidence-table\n";
    out << "# convention: " << swap::outcome_convention << "\n";
    out << "# r: " << fmt_full(t.r) << "\n";
    out << "# seed: " << t.seed << "\n";
    out << "# columns: i j mode b count shots\n";
    for (std::size_t si = 0; si < swap::settings().size(); ++si) {
        const auto& s = swap::settings()[si];
        for (swap::Mode mode : {swap::Mode::on, swap::Mode::off}) {
            int mi = static_cast<int>(mode);
            for (int b = 0; b < 4; ++b)
                out << s.i << " " << s.j << " " << (mode == swap::Mode::on ? "on" : "off") << " "
                    << (b + 1) << " " << t.counts[si][mi][b] << " " << t.shots[si][mi] << "\n";
        }
    }
}

inline swap::CoincidenceTable read_coincidence_table(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " coincidence-table", path);
    if (auto it = tf.meta.find("convention");
        it != tf.meta.end() && it->second != swap::outcome_convention)
        throw parse_error(path + ": unsupported outcome convention '" + it->second + "'");
    swap::CoincidenceTable t;
    if (auto it = tf.meta.find("r"); it != tf.meta.end())
        t.r = detail::to_double(it->second, path + ": header r");
    else
        throw parse_error(path + ": missing '# r:' header line");
    if (auto it = tf.meta.find("seed"); it != tf.meta.end())
        t.seed = detail::to_u64(it->second, path + ": header seed");
    bool seen[6][2][4] = {};
    long long shots[6][2] = {};
    for (std::size_t ln = 0; ln < tf.data.size(); ++ln) {
        std::string ctx = path + ": record " + std::to_string(ln + 1);
        auto tok = detail::split_ws(tf.data[ln]);
        if (tok.size() != 6) throw parse_error(ctx + ": expected 6 fields (i j mode b count shots)");
        int i = static_cast<int>(detail::to_ll(tok[0], ctx));
        int j = static_cast<int>(detail::to_ll(tok[1], ctx));
        int si = detail::setting_index(i, j, ctx);
        int mi;
        if (tok[2] == "on")
            mi = static_cast<int>(swap::Mode::on);
        else if (tok[2] == "off")
            mi = static_cast<int>(swap::Mode::off);
        else
            throw parse_error(ctx + ": mode must be 'on' or 'off'");
        long long b = detail::to_ll(tok[3], ctx);
        if (b < 1 || b > 4) throw parse_error(ctx + ": outcome b must lie in 1..4");
        long long count = detail::to_ll(tok[4], ctx);
        long long n = detail::to_ll(tok[5], ctx);
        if (count < 0 || n < 1 || count > n)
            throw parse_error(ctx + ": need 0 <= count <= shots and shots >= 1");
        if (seen[si][mi][b - 1]) throw parse_error(ctx + ": duplicate (setting, mode, outcome)");
        if (shots[si][mi] != 0 && shots[si][mi] != n)
            throw parse_error(ctx + ": inconsistent shots within a (setting, mode) block");
        seen[si][mi][b - 1] = true;
        shots[si][mi] = n;
        t.counts[si][mi][b - 1] = count;
        t.shots[si][mi] = n;
    }
    for (int si = 0; si < 6; ++si)
        for (int mi = 0; mi < 2; ++mi) {
            long long sum = 0;
            for (int b = 0; b < 4; ++b) {
                if (!seen[si][mi][b])
                    throw parse_error(path + ": missing record for setting (" +
                                      std::to_string(swap::settings()[si].i) + "," +
                                      std::to_string(swap::settings()[si].j) + ") mode " +
                                      (mi == 0 ? "on" : "off") + " outcome " +
                                      std::to_string(b + 1));
                sum += t.counts[si][mi][b];
            }
            if (sum > t.shots[si][mi])
                throw parse_error(path + ": click counts exceed shots for one (setting, mode)");
        }
    return t;
}

// ---------------------------------------------------------------------------
// Measured R: six (i, j, value, sigma) records, i >= j

inline void write_measured_r(const std::string& path, const swap::MeasuredR& m) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " measured-r\n";
    out << "# columns: i j value sigma\n";
    for (const auto& s : swap::settings())
        out << s.i << " " << s.j << " " << fmt_full(m.R_exp(s.i - 1, s.j - 1)) << " "
            << fmt_full(m.dR(s.i - 1, s.j - 1)) << "\n";
}

namespace detail {

// Shared by measured-r (4 columns) and ml-result (3 columns) readers.
inline void read_six_records(const TextFile& tf, const std::string& path, bool with_sigma,
                             Mat3& values, Mat3* sigmas,
                             std::vector<std::string>* extra_lines) {
    bool seen[6] = {};
    int record = 0;
    for (const auto& line : tf.data) {
        if (!std::isdigit(static_cast<unsigned char>(line[0]))) {
            if (extra_lines) {
                extra_lines->push_back(line);
                continue;
            }
            throw parse_error(path + ": unexpected non-record line '" + line + "'");
        }
        ++record;
        std::string ctx = path + ": record " + std::to_string(record);
        auto tok = split_ws(line);
        std::size_t want = with_sigma ? 4 : 3;
        if (tok.size() != want)
            throw parse_error(ctx + ": expected " + std::to_string(want) + " fields");
        int i = static_cast<int>(to_ll(tok[0], ctx));
        int j = static_cast<int>(to_ll(tok[1], ctx));
        int si = setting_index(i, j, ctx);
        if (seen[si]) throw parse_error(ctx + ": duplicate (i, j) pair");
        seen[si] = true;
        double v = to_double(tok[2], ctx);
        values(i - 1, j - 1) = v;
        values(j - 1, i - 1) = v;
        if (with_sigma) {
            double s = to_double(tok[3], ctx);
            if (!(s > 0.0)) throw parse_error(ctx + ": sigma must be positive");
            (*sigmas)(i - 1, j - 1) = s;
            (*sigmas)(j - 1, i - 1) = s;
        }
    }
    for (int si = 0; si < 6; ++si)
        if (!seen[si])
            throw parse_error(path + ": missing record for (i, j) = (" +
                              std::to_string(swap::settings()[si].i) + "," +
                              std::to_string(swap::settings()[si].j) + ")");
}

}  // namespace detail

inline swap::MeasuredR read_measured_r(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " measured-r", path);
    swap::MeasuredR m;
    detail::read_six_records(tf, path, true, m.R_exp, &m.dR, nullptr);
    return m;
}

// ---------------------------------------------------------------------------
// ML results: the six-record layout plus eigs, logL, iterations, shift_fraction

inline void write_ml_result(const std::string& path, const mle::MLResult& r) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " ml-result\n";
    out << "# columns: i j value\n";
    for (const auto& s : swap::settings())
        out << s.i << " " << s.j << " " << fmt_full(r.R_phys(s.i - 1, s.j - 1)) << "\n";
    out << "eigs " << fmt_full(r.eigs(0)) << " " << fmt_full(r.eigs(1)) << " "
        << fmt_full(r.eigs(2)) << "\n";
    out << "logL " << fmt_full(r.logL) << "\n";
    out << "iterations " << r.iterations << "\n";
    out << "shift_fraction " << fmt_full(r.shift_fraction) << "\n";
}

inline mle::MLResult read_ml_result(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " ml-result", path);
    mle::MLResult r;
    std::vector<std::string> extra;
    detail::read_six_records(tf, path, false, r.R_phys, nullptr, &extra);
    bool have_eigs = false;
    for (const auto& line : extra) {
        auto tok = detail::split_ws(line);
        std::string ctx = path + ": field '" + tok[0] + "'";
        if (tok[0] == "eigs" && tok.size() == 4) {
            for (int k = 0; k < 3; ++k) r.eigs(k) = detail::to_double(tok[k + 1], ctx);
            have_eigs = true;
        } else if (tok[0] == "logL" && tok.size() == 2) {
            r.logL = detail::to_double(tok[1], ctx);
        } else if (tok[0] == "iterations" && tok.size() == 2) {
            r.iterations = detail::to_ll(tok[1], ctx);
        } else if (tok[0] == "shift_fraction" && tok.size() == 2) {
            r.shift_fraction = detail::to_double(tok[1], ctx);
        } else {
            throw parse_error(path + ": unrecognized line '" + line + "'");
        }
    }
    if (!have_eigs) throw parse_error(path + ": missing 'eigs' line");
    return r;
}

// ---------------------------------------------------------------------------
// Scatter files: CSV with detection flags

inline void write_scatter(const std::string& path,
                          const std::vector<montecarlo::ScatterRecord>& records) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " scatter\n";
    out << "N,M,E,F,detM,detE,detF\n";
    for (const auto& r : records)
        out << fmt_full(r.N) << "," << fmt_full(r.M) << "," << fmt_full(r.E) << ","
            << fmt_full(r.F) << "," << (r.det_M ? 1 : 0) << "," << (r.det_E ? 1 : 0) << ","
            << (r.det_F ? 1 : 0) << "\n";
}

inline std::vector<montecarlo::ScatterRecord> read_scatter(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " scatter", path);
    if (tf.data.empty() || tf.data[0] != "N,M,E,F,detM,detE,detF")
        throw parse_error(path + ": missing scatter header row N,M,E,F,detM,detE,detF");
    std::vector<montecarlo::ScatterRecord> out;
    out.reserve(tf.data.size() - 1);
    for (std::size_t ln = 1; ln < tf.data.size(); ++ln) {
        std::string ctx = path + ": row " + std::to_string(ln);
        auto tok = detail::split_csv(tf.data[ln]);
        if (tok.size() != 7) throw parse_error(ctx + ": expected 7 comma-separated fields");
        montecarlo::ScatterRecord r;
        r.N = detail::to_double(tok[0], ctx);
        r.M = detail::to_double(tok[1], ctx);
        r.E = detail::to_double(tok[2], ctx);
        r.F = detail::to_double(tok[3], ctx);
        bool* flags[3] = {&r.det_M, &r.det_E, &r.det_F};
        for (int k = 0; k < 3; ++k) {
            const std::string& f = tok[4 + k];
            if (f != "0" && f != "1") throw parse_error(ctx + ": detection flags must be 0 or 1");
            *flags[k] = (f == "1");
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Threshold reports: flat key-value record

inline void write_threshold_report(const std::string& path,
                                   const montecarlo::ThresholdReport& rep) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " threshold-report\n";
    out << "N_M " << fmt_full(rep.N_M) << "\n";
    out << "N_E " << fmt_full(rep.N_E) << "\n";
    out << "N_F " << fmt_full(rep.N_F) << "\n";
    out << "sample_count " << rep.sample_count << "\n";
    out << "measure " << measure_name(rep.measure) << "\n";
}

inline montecarlo::ThresholdReport read_threshold_report(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " threshold-report", path);
    montecarlo::ThresholdReport rep;
    bool have[4] = {};
    for (const auto& line : tf.data) {
        auto tok = detail::split_ws(line);
        if (tok.size() != 2) throw parse_error(path + ": malformed key-value line '" + line + "'");
        std::string ctx = path + ": field '" + tok[0] + "'";
        if (tok[0] == "N_M") {
            rep.N_M = detail::to_double(tok[1], ctx);
            have[0] = true;
        } else if (tok[0] == "N_E") {
            rep.N_E = detail::to_double(tok[1], ctx);
            have[1] = true;
        } else if (tok[0] == "N_F") {
            rep.N_F = detail::to_double(tok[1], ctx);
            have[2] = true;
        } else if (tok[0] == "sample_count") {
            rep.sample_count = detail::to_ll(tok[1], ctx);
            have[3] = true;
        } else if (tok[0] == "measure") {
            try {
                rep.measure = parse_measure(tok[1]);
            } catch (const std::invalid_argument& e) {
                throw parse_error(ctx + ": " + e.what());
            }
        } else {
            throw parse_error(path + ": unrecognized key '" + tok[0] + "'");
        }
    }
    for (bool h : have)
        if (!h) throw parse_error(path + ": threshold report is missing a required field");
    return rep;
}

// ---------------------------------------------------------------------------
// Family curves: CSV rows (p, N, M, E, F)

inline void write_curve(const std::string& path,
                        const std::vector<montecarlo::CurvePoint>& curve) {
    auto out = detail::open_out(path);
    out << "# format: " << artifact_version << " family-curve\n";
    out << "p,N,M,E,F\n";
    for (const auto& c : curve)
        out << fmt_full(c.p) << "," << fmt_full(c.N) << "," << fmt_full(c.M) << ","
            << fmt_full(c.E) << "," << fmt_full(c.F) << "\n";
}

inline std::vector<montecarlo::CurvePoint> read_curve(const std::string& path) {
    auto tf = detail::read_text(path);
    detail::require_format(tf, std::string(artifact_version) + " family-curve", path);
    if (tf.data.empty() || tf.data[0] != "p,N,M,E,F")
        throw parse_error(path + ": missing curve header row p,N,M,E,F");
    std::vector<montecarlo::CurvePoint> out;
    out.reserve(tf.data.size() - 1);
    for (std::size_t ln = 1; ln < tf.data.size(); ++ln) {
        std::string ctx = path + ": row " + std::to_string(ln);
        auto tok = detail::split_csv(tf.data[ln]);
        if (tok.size() != 5) throw parse_error(ctx + ": expected 5 comma-separated fields");
        montecarlo::CurvePoint c;
        c.p = detail::to_double(tok[0], ctx);
        c.N = detail::to_double(tok[1], ctx);
        c.M = detail::to_double(tok[2], ctx);
        c.E = detail::to_double(tok[3], ctx);
        c.F = detail::to_double(tok[4], ctx);
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run manifests: JSON sidecar next to each artifact

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

inline std::string manifest_path(const std::string& artifact_path) {
    return artifact_path + ".manifest.json";
}

inline void write_manifest(const std::string& artifact_path, const RunManifest& m) {
    nlohmann::json j;
    j["artifact_version"] = artifact_version;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["duration_seconds"] = m.duration_seconds;
    detail::open_out(manifest_path(artifact_path)) << j.dump(2) << "\n";
}

inline RunManifest read_manifest(const std::string& artifact_path) {
    std::string path = manifest_path(artifact_path);
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": invalid JSON: " + e.what());
    }
    RunManifest m;
    try {
        m.command = j.at("command").get<std::string>();
        m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.duration_seconds = j.at("duration_seconds").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": manifest field error: " + e.what());
    }
    return m;
}

}  // namespace qwit::io
