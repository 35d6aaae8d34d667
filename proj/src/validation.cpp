#include "flukin/validation.hpp"

#include <cmath>
#include <sstream>

#include "flukin/charpoly.hpp"
#include "flukin/spectrum.hpp"

namespace flukin {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double sample_T(std::mt19937_64& rng, const ModelParams& params) {
    return std::uniform_real_distribution<double>(0.0, 2.0 * threshold_T(params))(rng);
}

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

void record(SuiteResult& r, bool ok, const std::string& what) {
    ++r.checked;
    if (ok) return;
    ++r.failed;
    if (r.first_failure.empty()) r.first_failure = what;
}

std::string describe(const ModelParams& params, double T) {
    std::ostringstream os;
    os << params_to_json(params).dump() << " T=" << format_double(T);
    return os.str();
}

// Separate streams per suite so each suite reproduces on its own.
std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t suite) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite)};
    return std::mt19937_64(seq);
}

}  // namespace

ModelParams sample_params(std::mt19937_64& rng, int n_E, int n_I) {
    ModelParams p;
    p.n_E = n_E;
    p.n_I = n_I;
    p.beta = log_uniform(rng, 0.1, 10.0);
    p.p = log_uniform(rng, 0.1, 10.0);
    p.c = log_uniform(rng, 0.1, 10.0);
    const double c_E = log_uniform(rng, 0.1, 10.0);
    const double c_I = log_uniform(rng, 0.1, 10.0);
    if (n_E > 0) p.tau_E = n_E / c_E;
    p.tau_I = n_I / c_I;
    p.v_a = log_uniform(rng, 0.1, 10.0);
    p.D_PCF = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    p.a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return p;
}

ModelParams table_cell_params(int n_I, int row, int column) {
    if (n_I < 1 || row < 0 || row > 2 || column < 0 || column > 2) {
        throw std::invalid_argument("table cell needs n_I >= 1 and row, column in {0, 1, 2}");
    }
    // β = p = T = 1, so βTp = 1 and the rows compare u = c c_I against n_I.
    const double u = row == 0 ? 0.5 * n_I : row == 1 ? n_I : 2.0 * n_I;
    const double cI2 = column == 0 ? 2.0 * (u + 1.0) : column == 1 ? u + 1.0 : 0.5 * (u + 1.0);
    const double c_I = std::sqrt(cI2);
    ModelParams p;
    p.beta = 1.0;
    p.p = 1.0;
    p.n_E = 0;
    p.n_I = n_I;
    p.tau_I = n_I / c_I;
    p.c = row == 1 ? p.beta * 1.0 * p.p * p.tau_I : u / c_I;
    p.v_a = 1.0;
    p.D_PCF = 0.5;
    p.a = 0.2;
    return p;
}

std::vector<double> real_parts_of_real(const std::vector<std::complex<double>>& spectrum,
                                       double imag_tol) {
    std::vector<double> out;
    for (auto z : spectrum) {
        if (std::abs(z.imag()) <= imag_tol) out.push_back(z.real());
    }
    return out;
}

SuiteResult charpoly_oracle_suite(const ValidationOptions& opts) {
    SuiteResult r;
    r.name = "charpoly_oracle";
    auto rng = suite_rng(opts.seed, 1);
    const double tol = opts.tol.charpoly;
    for (int set = 0; set < opts.charpoly_sets; ++set) {
        const ModelParams params = sample_params(rng, uniform_int(rng, 0, 3), uniform_int(rng, 1, 6));
        const double T = sample_T(rng, params);
        const auto rates = derived_rates(params);
        const double reach = 2.0 * (rates.c_E + rates.c_I + params.c);
        std::uniform_real_distribution<double> lam(-reach, reach);
        for (int k = 0; k < opts.lambda_samples; ++k) {
            const double l = lam(rng);
            const double direct = charpoly_direct(params, T, l);
            const double bound = tol * (1.0 + std::abs(direct));
            const std::string where = describe(params, T) + " lambda=" + format_double(l);
            record(r, std::abs(charpoly_closed(params, T, l) - direct) <= bound, "closed form: " + where);
            record(r, std::abs(charpoly_sum_form(params, T, l) - direct) <= bound, "sum form: " + where);
            for (int m = 2; m <= params.n_I; ++m) {
                const double rec = detB_recursive(params, l, m);
                const double det = log_determinant(minor_B(params, l, m)).value();
                record(r, std::abs(rec - det) <= tol * (1.0 + std::abs(det)),
                       "B_" + std::to_string(m) + " recursion: " + where);
            }
        }
    }
    return r;
}

SuiteResult eigenvector_residual_suite(const ValidationOptions& opts) {
    SuiteResult r;
    r.name = "eigenvector_residual";
    auto rng = suite_rng(opts.seed, 2);
    for (int set = 0; set < opts.eigenvector_sets; ++set) {
        const ModelParams params = sample_params(rng, 0, uniform_int(rng, 1, 6));
        const double T = sample_T(rng, params);
        const auto A = assemble_A(params, T);
        const double root_tol =
            opts.tol.root * std::max(1.0, params.c + derived_rates(params).c_I + params.beta * T * params.p);
        for (double l : real_roots(params, T, root_tol)) {
            const Eigen::VectorXd v = eigenvector(params, T, l, 1.0);
            const double residual = (A.entries * v - l * v).cwiseAbs().maxCoeff();
            record(r, residual <= opts.tol.eigenvector * v.cwiseAbs().maxCoeff(),
                   describe(params, T) + " lambda=" + format_double(l) +
                       " residual=" + format_double(residual));
        }
    }
    return r;
}

SuiteResult sign_pattern_suite(const ValidationOptions& opts) {
    SuiteResult r;
    r.name = "sign_pattern";
    auto check = [&](const ModelParams& params, double T) {
        const double norm = inf_norm(assemble_A(params, T).entries);
        const double zero_tol = opts.tol.zero * norm;
        const auto reals = real_parts_of_real(full_spectrum_numeric(params, T), zero_tol);
        const auto pattern = predicted_sign_pattern(params, T);
        const double c_I = derived_rates(params).c_I;
        record(r, pattern.admits(reals, c_I, zero_tol),
               describe(params, T) + " cell " + pattern.label());
        int positive = 0;
        for (double l : reals) positive += l > zero_tol;
        const Regime kind = classify(params, T).kind;
        const int expected = kind == Regime::indefinite ? 1 : 0;
        record(r, positive == expected, describe(params, T) + " positive count " + std::to_string(positive));
    };
    for (int n_I : {2, 4, 3, 5}) {
        for (int row = 0; row < 3; ++row) {
            for (int column = 0; column < 3; ++column) check(table_cell_params(n_I, row, column), 1.0);
        }
    }
    auto rng = suite_rng(opts.seed, 3);
    for (int set = 0; set < opts.random_pattern_sets; ++set) {
        const ModelParams params = sample_params(rng, 0, uniform_int(rng, 1, 6));
        check(params, sample_T(rng, params));
    }
    return r;
}

SuiteResult multiplicity_suite(const ValidationOptions& opts) {
    SuiteResult r;
    r.name = "multiplicity";
    auto check = [&](const ModelParams& params, double T) {
        const auto A = assemble_A(params, T);
        const bool critical = classify(params, T).kind == Regime::critical;
        const double root_tol =
            opts.tol.root * std::max(1.0, params.c + derived_rates(params).c_I + params.beta * T * params.p);
        for (double l : real_roots(params, T, root_tol)) {
            const std::string where = describe(params, T) + " lambda=" + format_double(l);
            int geometric = -1;
            try {
                geometric = geometric_multiplicity(A, l);
            } catch (const std::domain_error&) {
            }
            record(r, geometric == 1, "geometric: " + where);
            const int expected = l == 0.0 && critical ? 2 : 1;
            record(r, algebraic_multiplicity(params, T, l) == expected, "algebraic: " + where);
        }
    };
    for (int n_I : {1, 2, 3, 4, 5, 6}) {
        for (int row = 0; row < 3; ++row) {
            for (int column = 0; column < 3; ++column) check(table_cell_params(n_I, row, column), 1.0);
        }
    }
    auto rng = suite_rng(opts.seed, 4);
    for (int set = 0; set < opts.eigenvector_sets; ++set) {
        const ModelParams params = sample_params(rng, 0, uniform_int(rng, 1, 6));
        check(params, sample_T(rng, params));
    }
    return r;
}

std::vector<SuiteResult> run_validation(const ValidationOptions& opts) {
    return {charpoly_oracle_suite(opts), eigenvector_residual_suite(opts), sign_pattern_suite(opts),
            multiplicity_suite(opts)};
}

nlohmann::json to_json(const std::vector<SuiteResult>& results) {
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const auto& s : results) {
        all = all && s.passed();
        nlohmann::json j{{"name", s.name},
                         {"checked", s.checked},
                         {"failed", s.failed},
                         {"passed", s.passed()}};
        j["first_failure"] = s.first_failure.empty() ? nlohmann::json(nullptr) : nlohmann::json(s.first_failure);
        suites.push_back(std::move(j));
    }
    return {{"passed", all}, {"suites", suites}};
}

}  // namespace flukin
