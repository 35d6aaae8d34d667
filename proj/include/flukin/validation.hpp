#ifndef FLUKIN_VALIDATION_HPP
#define FLUKIN_VALIDATION_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "flukin/config.hpp"
#include "flukin/model.hpp"

namespace flukin {

/// Random parameter set: β, p, c, c_E, c_I and v_a log-uniform in [0.1, 10],
/// τ = n/c for each phase, D_PCF and a uniform in [0, 1].
ModelParams sample_params(std::mt19937_64& rng, int n_E, int n_I);

/// Parameters (with T = 1) landing in one cell of the sign table for n_I.
/// row: 0 c < βTpτ_I, 1 equal, 2 greater; column: 0 c_I² − c c_I > βTp,
/// 1 equal, 2 less. The equality cases are built exactly.
ModelParams table_cell_params(int n_I, int row, int column);

/// Eigenvalues whose imaginary part is within imag_tol, as real numbers.
std::vector<double> real_parts_of_real(const std::vector<std::complex<double>>& spectrum,
                                       double imag_tol);

struct SuiteResult {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::string first_failure;

    bool passed() const { return failed == 0 && checked > 0; }
};

struct ValidationOptions {
    std::uint64_t seed = 0;
    Tolerances tol;
    int charpoly_sets = 200;
    int lambda_samples = 20;
    int eigenvector_sets = 50;
    int random_pattern_sets = 100;
};

SuiteResult charpoly_oracle_suite(const ValidationOptions& opts);
SuiteResult eigenvector_residual_suite(const ValidationOptions& opts);
SuiteResult sign_pattern_suite(const ValidationOptions& opts);
SuiteResult multiplicity_suite(const ValidationOptions& opts);

/// All four suites in a fixed order.
std::vector<SuiteResult> run_validation(const ValidationOptions& opts);

nlohmann::json to_json(const std::vector<SuiteResult>& results);

}  // namespace flukin

#endif  // FLUKIN_VALIDATION_HPP
