#include "flukin/config.hpp"

#include <fstream>
#include <set>

namespace flukin {

namespace {

Span span_from_json(const nlohmann::json& j, const char* name, std::vector<std::string>& problems) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        problems.push_back(std::string(name) + " must be a [from, to] pair");
        return {};
    }
    Span s{j[0].get<double>(), j[1].get<double>()};
    if (!(s.to >= s.from)) problems.push_back(std::string(name) + " needs from <= to");
    return s;
}

double positive(const nlohmann::json& j, const char* key, double fallback,
                std::vector<std::string>& problems) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number() || !(j.at(key).get<double>() > 0.0)) {
        problems.push_back(std::string(key) + " must be a positive number");
        return fallback;
    }
    return j.at(key).get<double>();
}

}  // namespace

const ModelParams& RunConfig::require_params() const {
    if (!params) throw ValidationError({"config needs 'params'"});
    return *params;
}

FieldCoefficients RunConfig::coefficients() const {
    return coeffs ? *coeffs : FieldCoefficients::defaults(require_params());
}

double RunConfig::require_T() const {
    if (!T) throw ValidationError({"config needs a numeric 'T'"});
    return *T;
}

const SweepSpec& RunConfig::require_sweep() const {
    if (!sweep) throw ValidationError({"config needs 'T' as a sweep {from, to, steps}"});
    return *sweep;
}

const StateVector& RunConfig::require_initial_state() const {
    if (!initial_state) throw ValidationError({"config needs 'initial_state'"});
    return *initial_state;
}

const GridSpec& RunConfig::require_grid() const {
    if (!grid) throw ValidationError({"config needs 'grid'"});
    return *grid;
}

RunConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"params", "coeffs",    "T",      "initial_state",
                                                "grid",   "tolerances", "seed",  "linearized",
                                                "window", "field"};
    if (!j.is_object()) throw ValidationError({"config must be a JSON object"});
    std::vector<std::string> problems;
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) problems.push_back("unknown config key '" + key + "'");
    }

    RunConfig cfg;
    auto guarded = [&](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        } catch (const nlohmann::json::exception& e) {
            problems.emplace_back(e.what());
        } catch (const std::invalid_argument& e) {
            problems.emplace_back(e.what());
        }
    };

    if (j.contains("params")) guarded([&] { cfg.params = params_from_json(j.at("params"), Strictness::field); });
    if (j.contains("coeffs")) {
        guarded([&] {
            if (!cfg.params) throw ValidationError({"'coeffs' needs valid 'params'"});
            cfg.coeffs = coeffs_from_json(j.at("coeffs"), *cfg.params);
        });
    }
    if (j.contains("T")) {
        const auto& t = j.at("T");
        if (t.is_number()) {
            cfg.T = t.get<double>();
        } else if (t.is_object()) {
            guarded([&] {
                SweepSpec s;
                s.from = t.at("from").get<double>();
                s.to = t.at("to").get<double>();
                s.steps = t.at("steps").get<int>();
                if (s.steps < 2) problems.emplace_back("sweep steps must be >= 2");
                if (!(s.from < s.to)) problems.emplace_back("sweep needs from < to");
                cfg.sweep = s;
            });
        } else {
            problems.emplace_back("'T' must be a number or {from, to, steps}");
        }
    }
    if (j.contains("initial_state")) {
        guarded([&] {
            cfg.initial_state = StateVector::from_json(j.at("initial_state"));
            if (cfg.params && !cfg.initial_state->matches(*cfg.params)) {
                problems.emplace_back("initial_state dimensions do not match n_E and n_I");
            }
        });
    }
    if (j.contains("grid")) {
        guarded([&] {
            const auto& g = j.at("grid");
            GridSpec spec;
            if (g.contains("x_span")) spec.x_span = span_from_json(g.at("x_span"), "x_span", problems);
            if (g.contains("t_span")) spec.t_span = span_from_json(g.at("t_span"), "t_span", problems);
            spec.h_x = positive(g, "h_x", spec.h_x, problems);
            spec.h_t = positive(g, "h_t", spec.h_t, problems);
            cfg.grid = spec;
        });
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) {
            problems.emplace_back("'tolerances' must be an object");
        } else {
            static const std::set<std::string> tol_keys = {"charpoly", "eigenvector", "zero", "root"};
            for (const auto& [key, _] : t.items()) {
                if (!tol_keys.count(key)) problems.push_back("unknown tolerance '" + key + "'");
            }
            cfg.tolerances.charpoly = positive(t, "charpoly", cfg.tolerances.charpoly, problems);
            cfg.tolerances.eigenvector = positive(t, "eigenvector", cfg.tolerances.eigenvector, problems);
            cfg.tolerances.zero = positive(t, "zero", cfg.tolerances.zero, problems);
            cfg.tolerances.root = positive(t, "root", cfg.tolerances.root, problems);
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() &&
                                                    j.at("seed").get<long long>() >= 0)) {
            problems.emplace_back("'seed' must be a nonnegative integer");
        } else {
            cfg.seed = j.at("seed").get<std::uint64_t>();
        }
    }
    if (j.contains("linearized")) {
        if (!j.at("linearized").is_boolean()) {
            problems.emplace_back("'linearized' must be a boolean");
        } else {
            cfg.linearized = j.at("linearized").get<bool>();
        }
    }
    if (j.contains("window")) cfg.window = positive(j, "window", 1.0, problems);
    if (j.contains("field")) {
        const auto& f = j.at("field");
        cfg.sketch.below = positive(f, "below", cfg.sketch.below, problems);
        cfg.sketch.above = positive(f, "above", cfg.sketch.above, problems);
        cfg.sketch.extent = positive(f, "extent", cfg.sketch.extent, problems);
        if (f.contains("points")) {
            if (!f.at("points").is_number_integer() || f.at("points").get<int>() < 2) {
                problems.emplace_back("field points must be an integer >= 2");
            } else {
                cfg.sketch.points = f.at("points").get<int>();
            }
        }
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError({"cannot open config '" + path + "'"});
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError({std::string("config is not valid JSON: ") + e.what()});
    }
    return config_from_json(j);
}

}  // namespace flukin
