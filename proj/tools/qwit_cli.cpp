#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <qwit/qwit.hpp>

namespace {

using namespace qwit;

// Exit statuses, one per error class.
constexpr int exit_ok = 0;
constexpr int exit_invalid_argument = 2;
constexpr int exit_parse = 3;
constexpr int exit_not_a_state = 4;
constexpr int exit_insufficient_data = 5;
constexpr int exit_optimizer = 6;

using Record = std::vector<std::pair<std::string, std::string>>;

void print_record(const Record& rec, const std::string& format) {
    if (format == "csv") {
        for (std::size_t k = 0; k < rec.size(); ++k)
            std::cout << rec[k].first << (k + 1 < rec.size() ? "," : "\n");
        for (std::size_t k = 0; k < rec.size(); ++k)
            std::cout << rec[k].second << (k + 1 < rec.size() ? "," : "\n");
    } else {
        for (const auto& [key, value] : rec) std::cout << key << " " << value << "\n";
    }
}

void write_record_file(const std::string& path, const std::string& kind, const Record& rec,
                       const std::string& format) {
    auto out = io::detail::open_out(path);
    out << "# format: " << artifact_version << " " << kind << "\n";
    if (format == "csv") {
        for (std::size_t k = 0; k < rec.size(); ++k)
            out << rec[k].first << (k + 1 < rec.size() ? "," : "\n");
        for (std::size_t k = 0; k < rec.size(); ++k)
            out << rec[k].second << (k + 1 < rec.size() ? "," : "\n");
    } else {
        for (const auto& [key, value] : rec) out << key << " " << value << "\n";
    }
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void emit_manifests(const std::string& command,
                    const std::map<std::string, std::string>& parameters, std::uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const Timer& timer) {
    io::RunManifest m;
    m.command = command;
    m.parameters = parameters;
    m.seed = seed;
    m.inputs = inputs;
    m.outputs = outputs;
    m.duration_seconds = timer.seconds();
    for (const auto& path : outputs) io::write_manifest(path, m);
}

Record witness_record(const witness::WitnessReport& w, bool full_precision) {
    auto fmt = full_precision ? io::fmt_full : io::fmt_short;
    Record rec{{"M", fmt(w.M)},
               {"B", fmt(w.B)},
               {"chsh_max", fmt(w.chsh_max)},
               {"F", fmt(w.F)},
               {"E", fmt(w.E)},
               {"N", fmt(w.N)},
               {"C", fmt(w.C)},
               {"eig1", fmt(w.eigs(0))},
               {"eig2", fmt(w.eigs(1))},
               {"eig3", fmt(w.eigs(2))}};
    if (w.oracle_F) rec.emplace_back("oracle_F", fmt(*w.oracle_F));
    return rec;
}

struct AnalyzeArgs {
    std::string state_spec;
    bool oracle = false;
};

int run_analyze(const AnalyzeArgs& a, std::uint64_t seed, const std::string& out,
                const std::string& format) {
    Timer timer;
    state::DensityMatrix rho = io::load_state_spec(a.state_spec);
    witness::WitnessReport w = witness::report(rho, a.oracle);
    print_record(witness_record(w, false), format);
    if (!out.empty()) {
        write_record_file(out, "witness-report", witness_record(w, true), format);
        emit_manifests("analyze",
                       {{"state", a.state_spec}, {"oracle", a.oracle ? "true" : "false"},
                        {"format", format}},
                       seed, io::is_family_literal(a.state_spec) ? std::vector<std::string>{}
                                                                 : std::vector<std::string>{a.state_spec},
                       {out}, timer);
    }
    return exit_ok;
}

Record r_only_record(const Mat3& r, bool full_precision) {
    auto fmt = full_precision ? io::fmt_full : io::fmt_short;
    Vec3 eigs = witness::r_spectrum_descending(r);
    double m = witness::bell_M(r);
    return Record{{"M", fmt(m)},
                  {"B", fmt(witness::bell_B(m))},
                  {"chsh_max", fmt(witness::chsh_max(r))},
                  {"F", fmt(witness::fef_F(r))},
                  {"E_equal_purity", fmt(0.5 * (r.trace() - 1.0))},
                  {"eig1", fmt(eigs(0))},
                  {"eig2", fmt(eigs(1))},
                  {"eig3", fmt(eigs(2))}};
}

int run_analyze_from_r(const std::string& input, std::uint64_t seed, const std::string& out,
                       const std::string& format) {
    Timer timer;
    std::string kind = io::peek_format(input);
    Mat3 r;
    if (kind == std::string(artifact_version) + " measured-r")
        r = io::read_measured_r(input).R_exp;
    else if (kind == std::string(artifact_version) + " ml-result")
        r = io::read_ml_result(input).R_phys;
    else
        throw parse_error(input + ": expected a measured-r or ml-result file, found '" + kind +
                          "'");
    print_record(r_only_record(r, false), format);
    if (!out.empty()) {
        write_record_file(out, "witness-report-from-r", r_only_record(r, true), format);
        emit_manifests("analyze-from-R", {{"input", input}, {"format", format}}, seed, {input},
                       {out}, timer);
    }
    return exit_ok;
}

struct SimulateArgs {
    std::string state_spec;
    double r = 0.0;
    long long shots = 0;
};

int run_simulate(const SimulateArgs& a, std::uint64_t seed, const std::string& out,
                 const std::string& format) {
    Timer timer;
    state::DensityMatrix rho = io::load_state_spec(a.state_spec);
    swap::CoincidenceTable table = swap::simulate_counts(rho, a.r, a.shots, seed);
    swap::MeasuredR measured = swap::estimate_R(table);
    Record rec;
    for (const auto& s : swap::settings()) {
        std::string key = "R" + std::to_string(s.i) + std::to_string(s.j);
        rec.emplace_back(key, io::fmt_short(measured.R_exp(s.i - 1, s.j - 1)));
        rec.emplace_back("d" + key, io::fmt_short(measured.dR(s.i - 1, s.j - 1)));
    }
    print_record(rec, format);
    std::string counts_path = out + ".coincidences.txt";
    std::string measured_path = out + ".measured-r.txt";
    io::write_coincidence_table(counts_path, table);
    io::write_measured_r(measured_path, measured);
    emit_manifests("simulate",
                   {{"state", a.state_spec}, {"r", io::fmt_full(a.r)},
                    {"shots", std::to_string(a.shots)}, {"format", format}},
                   seed,
                   io::is_family_literal(a.state_spec) ? std::vector<std::string>{}
                                                       : std::vector<std::string>{a.state_spec},
                   {counts_path, measured_path}, timer);
    return exit_ok;
}

int run_reconstruct(const std::string& input, std::uint64_t seed, const std::string& out,
                    const std::string& format) {
    Timer timer;
    swap::MeasuredR measured = io::read_measured_r(input);
    mle::LikelihoodProblem problem(measured.R_exp, measured.dR);
    mle::MLResult result = mle::ml_reconstruct(problem);
    Record rec{{"eig1", io::fmt_short(result.eigs(0))},
               {"eig2", io::fmt_short(result.eigs(1))},
               {"eig3", io::fmt_short(result.eigs(2))},
               {"logL", io::fmt_short(result.logL)},
               {"iterations", std::to_string(result.iterations)},
               {"shift_fraction", io::fmt_short(result.shift_fraction)}};
    print_record(rec, format);
    io::write_ml_result(out, result);
    emit_manifests("reconstruct", {{"input", input}, {"format", format}}, seed, {input}, {out},
                   timer);
    return exit_ok;
}

struct MontecarloArgs {
    long long samples = 0;
    std::string measure = "hilbert-schmidt";
};

int run_montecarlo(const MontecarloArgs& a, std::uint64_t seed, const std::string& out,
                   const std::string& format) {
    Timer timer;
    state::RandomStateMeasure measure = io::parse_measure(a.measure);
    auto records = montecarlo::scatter(a.samples, measure, seed);
    montecarlo::ThresholdReport rep = montecarlo::thresholds(records, measure);
    Record rec{{"N_M", io::fmt_short(rep.N_M)},
               {"N_E", io::fmt_short(rep.N_E)},
               {"N_F", io::fmt_short(rep.N_F)},
               {"sample_count", std::to_string(rep.sample_count)},
               {"measure", io::measure_name(rep.measure)}};
    print_record(rec, format);
    std::string scatter_path = out + ".scatter.csv";
    std::string thresholds_path = out + ".thresholds.txt";
    io::write_scatter(scatter_path, records);
    io::write_threshold_report(thresholds_path, rep);
    emit_manifests("montecarlo",
                   {{"samples", std::to_string(a.samples)}, {"measure", a.measure},
                    {"format", format}},
                   seed, {}, {scatter_path, thresholds_path}, timer);
    return exit_ok;
}

struct FamilyScanArgs {
    std::string family;
    double from = 0.0;
    double to = 1.0;
    int steps = 101;
};

int run_family_scan(const FamilyScanArgs& a, std::uint64_t seed, const std::string& out,
                    const std::string& format) {
    Timer timer;
    state::Family family = io::parse_family(a.family);
    auto curve = montecarlo::family_curve(family, a.from, a.to, a.steps);
    Record rec{{"family", a.family},
               {"rows", std::to_string(curve.size())},
               {"p_first", io::fmt_short(curve.front().p)},
               {"p_last", io::fmt_short(curve.back().p)}};
    print_record(rec, format);
    io::write_curve(out, curve);
    emit_manifests("family-scan",
                   {{"family", a.family}, {"from", io::fmt_full(a.from)},
                    {"to", io::fmt_full(a.to)}, {"steps", std::to_string(a.steps)},
                    {"format", format}},
                   seed, {}, {out}, timer);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomography-free two-qubit entanglement and nonlocality witnesses"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string out;
    std::string format = "kv";
    app.add_option("--seed", seed, "master seed for all randomized steps");
    app.add_option("--out", out, "output path (or path prefix for multi-file commands)");
    app.add_option("--format", format, "stdout record format")
        ->check(CLI::IsMember({"kv", "csv"}));

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand(
        "analyze", "witness report for a state file or family literal (werner:p=0.5, ...)");
    analyze->add_option("state", analyze_args.state_spec, "state file or family literal")
        ->required();
    analyze->add_flag("--oracle", analyze_args.oracle,
                      "also maximize the entangled-fraction objective directly");

    std::string from_r_input;
    auto* analyze_from_r = app.add_subcommand(
        "analyze-from-R", "witness report from a measured-r or ml-result file, no state needed");
    analyze_from_r->add_option("input", from_r_input, "measured-r or ml-result file")->required();

    SimulateArgs simulate_args;
    auto* simulate =
        app.add_subcommand("simulate", "simulate the collective-measurement coincidence counts");
    simulate->add_option("state", simulate_args.state_spec, "state file or family literal")
        ->required();
    simulate->add_option("--r", simulate_args.r, "non-interfering fraction of Alice's pairs")
        ->required();
    simulate->add_option("--shots", simulate_args.shots, "trials per (setting, mode)")
        ->required();

    std::string reconstruct_input;
    auto* reconstruct =
        app.add_subcommand("reconstruct", "maximum-likelihood physical R from a measured-r file");
    reconstruct->add_option("input", reconstruct_input, "measured-r file")->required();

    MontecarloArgs montecarlo_args;
    auto* montecarlo_cmd =
        app.add_subcommand("montecarlo", "random-state scatter and detection thresholds");
    montecarlo_cmd->add_option("--samples", montecarlo_args.samples, "number of random states")
        ->required();
    montecarlo_cmd->add_option("--measure", montecarlo_args.measure,
                               "haar-pure | hilbert-schmidt | induced:<K>");

    FamilyScanArgs scan_args;
    auto* family_scan =
        app.add_subcommand("family-scan", "witness curve along a one-parameter family");
    family_scan->add_option("--family", scan_args.family, "werner | horodecki | pure")
        ->required();
    family_scan->add_option("--from", scan_args.from, "lower end of the p grid");
    family_scan->add_option("--to", scan_args.to, "upper end of the p grid");
    family_scan->add_option("--steps", scan_args.steps, "number of grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_argument;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_args, seed, out, format);
        if (analyze_from_r->parsed()) return run_analyze_from_r(from_r_input, seed, out, format);
        if (simulate->parsed()) {
            if (out.empty()) throw std::invalid_argument("simulate requires --out");
            return run_simulate(simulate_args, seed, out, format);
        }
        if (reconstruct->parsed()) {
            if (out.empty()) throw std::invalid_argument("reconstruct requires --out");
            return run_reconstruct(reconstruct_input, seed, out, format);
        }
        if (montecarlo_cmd->parsed()) {
            if (out.empty()) throw std::invalid_argument("montecarlo requires --out");
            return run_montecarlo(montecarlo_args, seed, out, format);
        }
        if (family_scan->parsed()) {
            if (out.empty()) throw std::invalid_argument("family-scan requires --out");
            return run_family_scan(scan_args, seed, out, format);
        }
        std::cerr << "error: no subcommand selected\n";
        return exit_invalid_argument;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const not_a_state_error& e) {
        std::cerr << "not a state: " << e.what() << " (offending value " << e.offending_value
                  << ")\n";
        return exit_not_a_state;
    } catch (const insufficient_data_error& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return exit_insufficient_data;
    } catch (const mle::ml_diagnostic_error& e) {
        std::cerr << "optimizer diagnostic: " << e.what() << " (best value " << e.best_value
                  << ")\n";
        return exit_optimizer;
    } catch (const optimizer_error& e) {
        std::cerr << "optimizer diagnostic: " << e.what() << " (best value " << e.best_value
                  << ")\n";
        return exit_optimizer;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return exit_invalid_argument;
    }
}
