#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flukin/config.hpp"
#include "flukin/spectrum.hpp"
#include "flukin/surface.hpp"
#include "flukin/sweep.hpp"
#include "flukin/validation.hpp"

using namespace flukin;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kSuiteFailure = 1, kConfigInvalid = 2, kNumericFailure = 3, kBlowUp = 4 };

struct Options {
    std::string config_path;
    bool json_output = false;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    bool nonnegative = false;
};

void report_error(const json& j) { std::cerr << j.dump() << '\n'; }

RunConfig read_config(const Options& o, bool required) {
    if (o.config_path.empty()) {
        if (required) throw ValidationError({"--config is required for this subcommand"});
        return {};
    }
    return load_config(o.config_path);
}

void require_nonnegative(const StateVector& s) {
    const auto names = StateVector::component_names(s.n_E(), s.n_I());
    std::vector<std::string> problems;
    for (int k = 0; k < s.size(); ++k) {
        if (s.values()[k] < 0.0) problems.push_back("initial_state " + names[k] + " is negative");
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

double default_window(const GridSpec& g) { return 0.5 * (g.t_span.to - g.t_span.from); }

int cmd_analyze(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, true);
    const ModelParams& params = cfg.require_params();
    require_valid(params);
    const double T = cfg.require_T();
    AnalysisOptions opts;
    opts.root_tol = cfg.tolerances.root *
                    std::max(1.0, params.c + derived_rates(params).c_I + params.beta * T * params.p);
    out << to_json(analyze(params, T, opts)).dump(2) << '\n';
    return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, true);
    const ModelParams& params = cfg.require_params();
    require_valid(params);
    const SweepSpec& s = cfg.require_sweep();
    const auto Ts = linspace(s.from, s.to, s.steps);
    write_csv(out, sweep_threshold(params, Ts));
    return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, true);
    const ModelParams& params = cfg.require_params();
    const StateVector& s0 = cfg.require_initial_state();
    if (!s0.matches(params)) throw ValidationError({"initial_state dimensions do not match n_E and n_I"});
    if (o.nonnegative) require_nonnegative(s0);
    const GridSpec& g = cfg.require_grid();
    const FieldCoefficients coeffs = cfg.coefficients();
    const Trajectory traj = cfg.linearized
                                ? integrate_linearized(params, coeffs, cfg.require_T(), s0.block(), g.t_span, g.h_t)
                                : integrate_t(params, coeffs, s0, g.t_span, g.h_t);
    write_csv(out, traj, g.x_span.from);
    std::cerr << to_json(asymptotics(traj, cfg.window.value_or(default_window(g)))).dump() << '\n';
    return kOk;
}

int cmd_surface(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, true);
    const ModelParams& params = cfg.require_params();
    const StateVector& s0 = cfg.require_initial_state();
    if (!s0.matches(params)) throw ValidationError({"initial_state dimensions do not match n_E and n_I"});
    if (o.nonnegative) require_nonnegative(s0);
    const GridSpec& g = cfg.require_grid();
    const SurfaceGrid grid = trace_surface(params, cfg.coefficients(), s0, g.x_span, g.t_span, g.h_x, g.h_t);
    write_csv(out, grid);

    Trajectory column{grid.n_E, grid.n_I, grid.t_nodes, grid.states.front()};
    json footer = to_json(asymptotics(column, cfg.window.value_or(default_window(g))));
    double worst = 0.0;
    for (const auto& col : grid.mismatch) {
        for (double m : col) worst = std::max(worst, m);
    }
    footer["max_mismatch"] = worst;
    footer["far_corner_mismatch"] = grid.mismatch.back().back();
    footer["corner_path_gap"] = grid.corner_path_gap;
    std::cerr << footer.dump() << '\n';
    return kOk;
}

int cmd_field(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, true);
    const ModelParams& params = cfg.require_params();
    require_valid(params);
    if (params.n_E != 0) throw ValidationError({"field sketch needs n_E = 0"});
    write_csv(out, field_sketch(params, cfg.coefficients(), cfg.sketch), params.n_E, params.n_I);
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const RunConfig cfg = read_config(o, false);
    ValidationOptions opts;
    opts.seed = o.seed.value_or(cfg.seed);
    opts.tol = cfg.tolerances;
    const auto results = run_validation(opts);
    bool all = true;
    for (const auto& r : results) all = all && r.passed();
    if (o.json_output) {
        json j = to_json(results);
        j["seed"] = opts.seed;
        out << j.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checked << " checked, "
                << r.failed << " failed\n";
            if (!r.first_failure.empty()) out << "  first failure: " << r.first_failure << '\n';
        }
        out << (all ? "all suites passed" : "validation failed") << " (seed " << opts.seed << ")\n";
    }
    return all ? kOk : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear analysis and integral surfaces for the within-host influenza model"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config_path, "JSON run configuration");
    app.add_flag("--json", o.json_output, "Machine-readable summary (validate)");
    app.add_option("--seed", o.seed, "Seed for the randomized suites");
    app.add_option("--out", o.out_path, "Output file (default standard output)");
    app.add_flag("--nonnegative", o.nonnegative, "Reject negative initial state components");

    using Handler = int (*)(const Options&, std::ostream&);
    Handler handler = nullptr;
    auto sub = [&](const char* name, const char* help, Handler h) {
        app.add_subcommand(name, help)->callback([&handler, h] { handler = h; });
    };
    sub("analyze", "Spectrum report at one T (JSON)", cmd_analyze);
    sub("sweep", "Spectral abscissa over a T sweep (CSV)", cmd_sweep);
    sub("simulate", "Time integration from the initial state (CSV)", cmd_simulate);
    sub("surface", "Integral surface over the x-t grid (CSV)", cmd_surface);
    sub("field", "Field samples on eigen-planes below, at and above T* (CSV)", cmd_field);
    sub("validate", "Run the oracle suites", cmd_validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error({{"error", "config_invalid"}, {"problems", {e.what()}}});
        return kConfigInvalid;
    }

    try {
        std::ofstream file;
        if (!o.out_path.empty()) {
            file.open(o.out_path, std::ios::binary);
            if (!file) throw ValidationError({"cannot open output '" + o.out_path + "'"});
        }
        std::ostream& out = o.out_path.empty() ? std::cout : file;
        return handler(o, out);
    } catch (const BlowUpError& e) {
        report_error({{"error", "blow_up"},
                      {"message", e.what()},
                      {"last_time", e.last_time()},
                      {"last_good_rows", e.good_rows()},
                      {"node_x", e.node_x()},
                      {"node_t", e.node_t()}});
        return kBlowUp;
    } catch (const ValidationError& e) {
        report_error({{"error", "config_invalid"}, {"problems", e.problems()}});
        return kConfigInvalid;
    } catch (const std::invalid_argument& e) {
        report_error({{"error", "config_invalid"}, {"problems", {e.what()}}});
        return kConfigInvalid;
    } catch (const std::exception& e) {
        report_error({{"error", "numeric_failure"}, {"message", e.what()}});
        return kNumericFailure;
    }
}
