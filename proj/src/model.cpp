#include "flukin/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace flukin {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::ostringstream os;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << "; ";
        os << items[i];
    }
    return os.str();
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}

std::vector<std::string> validate(const ModelParams& params, Strictness mode) {
    std::vector<std::string> out;
    if (!finite(params.beta) || params.beta < 0.0 ||
        (mode == Strictness::strict && params.beta == 0.0)) {
        out.emplace_back(mode == Strictness::strict ? "beta must be > 0" : "beta must be >= 0");
    }
    if (!finite(params.p) || params.p <= 0.0) out.emplace_back("p must be > 0");
    if (!finite(params.c) || params.c <= 0.0) out.emplace_back("c must be > 0");
    if (params.n_E < 0) out.emplace_back("n_E must be >= 0");
    if (params.n_I < 1) out.emplace_back("n_I must be >= 1");
    if (params.n_E > 0 && (!params.tau_E || !finite(*params.tau_E) || *params.tau_E <= 0.0)) {
        out.emplace_back("tau_E must be > 0 when n_E > 0");
    }
    if (!finite(params.tau_I) || params.tau_I <= 0.0) out.emplace_back("tau_I must be > 0");
    if (!finite(params.D_PCF) || params.D_PCF < 0.0) out.emplace_back("D_PCF must be >= 0");
    if (!finite(params.v_a)) out.emplace_back("v_a must be finite");
    if (!finite(params.a)) out.emplace_back("a must be finite");
    if (out.empty() && mode == Strictness::strict) {
        const double t_star = params.c / (params.tau_I * params.p * params.beta);
        if (!finite(t_star) || t_star <= 0.0) {
            out.emplace_back("threshold c/(tau_I p beta) must be finite and > 0");
        }
    }
    return out;
}

void require_valid(const ModelParams& params, Strictness mode) {
    auto problems = validate(params, mode);
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

DerivedRates derived_rates(const ModelParams& params) {
    require_valid(params, Strictness::field);
    DerivedRates r;
    r.c_I = params.n_I / params.tau_I;
    r.c_E = params.n_E > 0 ? params.n_E / *params.tau_E : 0.0;
    return r;
}

double eclipse_gain(const ModelParams& params) {
    if (params.n_E == 0) return 1.0;
    return std::pow(derived_rates(params).c_E, params.n_E);
}

double threshold_T(const ModelParams& params) {
    require_valid(params);
    return params.c / (params.tau_I * params.p * params.beta);
}

ModelParams params_from_json(const nlohmann::json& j, Strictness mode) {
    static const std::set<std::string> known = {"beta", "p", "c", "n_E", "n_I",
                                                "tau_E", "tau_I", "D_PCF", "v_a", "a"};
    if (!j.is_object()) throw ValidationError({"params must be a JSON object"});
    std::vector<std::string> problems;
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) problems.push_back("unknown parameter key '" + key + "'");
    }
    ModelParams out;
    auto number = [&](const char* key, double& dst) {
        if (!j.contains(key)) {
            problems.push_back(std::string("missing parameter '") + key + "'");
        } else if (!j.at(key).is_number()) {
            problems.push_back(std::string("parameter '") + key + "' must be a number");
        } else {
            dst = j.at(key).get<double>();
        }
    };
    auto integer = [&](const char* key, int& dst) {
        if (!j.contains(key)) {
            problems.push_back(std::string("missing parameter '") + key + "'");
        } else if (!j.at(key).is_number_integer()) {
            problems.push_back(std::string("parameter '") + key + "' must be an integer");
        } else {
            dst = j.at(key).get<int>();
        }
    };
    number("beta", out.beta);
    number("p", out.p);
    number("c", out.c);
    integer("n_E", out.n_E);
    integer("n_I", out.n_I);
    number("tau_I", out.tau_I);
    number("D_PCF", out.D_PCF);
    number("v_a", out.v_a);
    number("a", out.a);
    if (j.contains("tau_E") && !j.at("tau_E").is_null()) {
        if (!j.at("tau_E").is_number()) {
            problems.emplace_back("parameter 'tau_E' must be a number");
        } else {
            out.tau_E = j.at("tau_E").get<double>();
        }
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    require_valid(out, mode);
    return out;
}

nlohmann::json params_to_json(const ModelParams& params) {
    nlohmann::json j = {{"beta", params.beta}, {"p", params.p},       {"c", params.c},
                        {"n_E", params.n_E},   {"n_I", params.n_I},   {"tau_I", params.tau_I},
                        {"D_PCF", params.D_PCF}, {"v_a", params.v_a}, {"a", params.a}};
    if (params.tau_E) j["tau_E"] = *params.tau_E;
    return j;
}

StateVector::StateVector(int n_E, int n_I)
    : StateVector(n_E, n_I, Eigen::VectorXd::Zero(n_E + n_I + 3)) {}

StateVector::StateVector(int n_E, int n_I, Eigen::VectorXd values)
    : n_E_(n_E), n_I_(n_I), values_(std::move(values)) {
    if (n_E < 0 || n_I < 1) throw std::invalid_argument("state needs n_E >= 0 and n_I >= 1");
    if (values_.size() != n_E + n_I + 3) {
        throw std::invalid_argument("state dimension " + std::to_string(values_.size()) +
                                    " does not match n_E + n_I + 3 = " +
                                    std::to_string(n_E + n_I + 3));
    }
}

std::vector<std::string> StateVector::component_names(int n_E, int n_I) {
    std::vector<std::string> names{"T"};
    for (int i = 1; i <= n_E; ++i) names.push_back("E" + std::to_string(i));
    for (int j = 1; j <= n_I; ++j) names.push_back("I" + std::to_string(j));
    names.emplace_back("V");
    names.emplace_back("W");
    return names;
}

nlohmann::json StateVector::to_json() const {
    nlohmann::json e = nlohmann::json::array();
    nlohmann::json i = nlohmann::json::array();
    for (int k = 1; k <= n_E_; ++k) e.push_back(E(k));
    for (int k = 1; k <= n_I_; ++k) i.push_back(I(k));
    return {{"T", T()}, {"E", e}, {"I", i}, {"V", V()}, {"W", W()}};
}

StateVector StateVector::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError({"state must be a JSON object"});
    for (const char* key : {"T", "E", "I", "V", "W"}) {
        if (!j.contains(key)) throw ValidationError({std::string("state is missing '") + key + "'"});
    }
    const auto& e = j.at("E");
    const auto& i = j.at("I");
    if (!e.is_array() || !i.is_array()) throw ValidationError({"state E and I must be arrays"});
    if (i.empty()) throw ValidationError({"state needs at least one I component"});
    StateVector s(static_cast<int>(e.size()), static_cast<int>(i.size()));
    s.T() = j.at("T").get<double>();
    for (std::size_t k = 0; k < e.size(); ++k) s.E(static_cast<int>(k) + 1) = e[k].get<double>();
    for (std::size_t k = 0; k < i.size(); ++k) s.I(static_cast<int>(k) + 1) = i[k].get<double>();
    s.V() = j.at("V").get<double>();
    s.W() = j.at("W").get<double>();
    return s;
}

FieldCoefficients FieldCoefficients::defaults(const ModelParams& params) {
    return FieldCoefficients{std::vector<double>(params.matrix_dim(), 1.0), 0.0};
}

std::vector<std::string> validate(const FieldCoefficients& coeffs, const ModelParams& params) {
    std::vector<std::string> out;
    if (static_cast<int>(coeffs.r.size()) != params.matrix_dim()) {
        out.push_back("r must have n_E + n_I + 2 = " + std::to_string(params.matrix_dim()) +
                      " entries");
    } else {
        for (std::size_t k = 0; k < coeffs.r.size(); ++k) {
            if (!finite(coeffs.r[k]) || coeffs.r[k] <= 0.0) {
                out.push_back("r_" + std::to_string(k + 1) + " must be > 0");
            }
        }
        if (coeffs.r.back() != 1.0) out.emplace_back("last entry of r must equal 1");
    }
    if (!finite(coeffs.psi)) out.emplace_back("psi must be finite");
    return out;
}

void require_valid(const FieldCoefficients& coeffs, const ModelParams& params) {
    auto problems = validate(coeffs, params);
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

FieldCoefficients coeffs_from_json(const nlohmann::json& j, const ModelParams& params) {
    FieldCoefficients out = FieldCoefficients::defaults(params);
    if (j.contains("r")) out.r = j.at("r").get<std::vector<double>>();
    if (j.contains("psi")) out.psi = j.at("psi").get<double>();
    require_valid(out, params);
    return out;
}

}  // namespace flukin
