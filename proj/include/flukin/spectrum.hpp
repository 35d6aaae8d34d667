#ifndef FLUKIN_SPECTRUM_HPP
#define FLUKIN_SPECTRUM_HPP

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "flukin/charpoly.hpp"
#include "flukin/model.hpp"

namespace flukin {

/// Relative window inside which c and βTpτ_I count as equal.
inline constexpr double kClassTolerance = 1e-10;

enum class Regime { definite, indefinite, critical };

std::string to_string(Regime r);

struct Classification {
    Regime kind = Regime::definite;
    double T_star = 0.0;
    double margin = 0.0;  // c − βTpτ_I
};

/// Definite iff c > βTpτ_I, Indefinite iff c < βTpτ_I, Critical inside kClassTolerance.
Classification classify(const ModelParams& params, double T);

struct QuadraticRoots {
    double lo = 0.0;
    double hi = 0.0;
};

/// Roots of λ² + cλ − βTp; lo < 0 < hi whenever βTp > 0.
QuadraticRoots quadratic_roots(const ModelParams& params, double T);

/// Critical points of the n_E = 0 polynomial: −c_I (when n_I ≥ 2) and the
/// real roots of (n_I+2)λ² + (c n_I + c + 2c_I)λ + c c_I − βTp n_I, ascending.
std::vector<double> critical_points(const ModelParams& params, double T);

/// Exact derivative of the n_E = 0 polynomial,
/// (c_I+λ)^{n_I−1} ((n_I+2)λ² + (c n_I + c + 2c_I)λ + c c_I − βTp n_I).
double charpoly_derivative(const ModelParams& params, double T, double lambda);

/// All real roots for n_E = 0, bracketed between consecutive critical
/// points and refined by bisection to |Δλ| ≤ tol, then up to three Newton
/// steps that stay inside the bracket. Always contains 0 exactly.
std::vector<double> real_roots(const ModelParams& params, double T, double tol);

/// Sign classes of a real eigenvalue relative to −c_I.
enum class SignClass { below_minus_cI, between, zero, positive };

std::string to_string(SignClass s);

SignClass sign_class(double lambda, double c_I, double zero_tol);

struct PatternEntry {
    SignClass cls;
    bool optional = false;
};

struct SignPattern {
    int table = 1;   // 1 for even n_I, 2 for odd n_I
    int row = 0;     // 0: c < βTpτ_I, 1: c = βTpτ_I, 2: c > βTpτ_I
    int column = 0;  // 0: c_I² − c c_I > βTp, 1: equal, 2: less
    std::vector<PatternEntry> entries;

    /// Printed form of the table cell, e.g. "(-, -), -, 0".
    std::string label() const;

    /// Whether a list of real eigenvalues (with repetition) fits this cell.
    /// Values within zero_tol of 0 collapse into the single 0 entry; the
    /// optional pair below −c_I may be absent as a whole.
    bool admits(std::span<const double> real_eigenvalues, double c_I, double zero_tol) const;
};

struct RegimeKey {
    bool n_I_even = true;
    int curvature_sign = 0;  // sign of c_I² − c c_I − βTp
    int threshold_sign = 0;  // sign of c − βTpτ_I
};

RegimeKey regime_key(const ModelParams& params, double T);

/// The sign-table cell selected by the regime key (n_E = 0).
SignPattern predicted_sign_pattern(const ModelParams& params, double T);

/// All n_E + n_I + 2 eigenvalues of A from a dense general eigensolver.
std::vector<std::complex<double>> full_spectrum_numeric(const ModelParams& params, double T);

/// Eigenvalues of A with the structural zero from the zero W row removed,
/// i.e. the spectrum of the leading (n−1)×(n−1) block.
std::vector<std::complex<double>> nontrivial_spectrum(const ModelParams& params, double T);

/// Closed-form eigenvector in n_E = 0 layout (I_1..I_{n_I}, V, W) with V = V_scale.
Eigen::VectorXd eigenvector(const ModelParams& params, double T, double lambda,
                            double V_scale);

/// n − rank(A − λI) with rank counted above 1e−8 σ_max. Throws
/// std::domain_error when λ is not an eigenvalue (σ_min above that cut).
int geometric_multiplicity(const Eigen::MatrixXd& A, double lambda);
int geometric_multiplicity(const SystemMatrix& A, double lambda);

/// Smallest m ≥ 1 whose m-th central difference of the polynomial at λ is
/// significant against the rounding scale (n_E = 0).
int algebraic_multiplicity(const ModelParams& params, double T, double lambda);

struct EigenspaceDecomposition {
    std::vector<double> negative_values;
    std::vector<Eigen::VectorXd> negative;  // V⁻
    std::vector<double> positive_values;
    std::vector<Eigen::VectorXd> positive;  // V⁺
    std::vector<Eigen::VectorXd> zero;      // V⁰
    /// Real and imaginary parts of one eigenvector per complex pair,
    /// together with the pair's real part.
    std::vector<std::pair<double, std::pair<Eigen::VectorXd, Eigen::VectorXd>>> complex_pairs;

    int dimension() const {
        return static_cast<int>(negative.size() + positive.size() + zero.size() +
                                2 * complex_pairs.size());
    }
};

/// Groups eigenvectors of A by the sign of their eigenvalue (n_E = 0).
EigenspaceDecomposition eigenspace_decomposition(const ModelParams& params, double T);

struct RealEigenvalue {
    double value = 0.0;
    SignClass cls = SignClass::zero;
    int algebraic_multiplicity = 1;
    int geometric_multiplicity = 1;
    Eigen::VectorXd eigenvector;
};

struct SpectrumReport {
    bool analytic = true;
    double T = 0.0;
    Classification classification;
    RegimeKey regime;
    std::optional<SignPattern> predicted_pattern;
    std::optional<QuadraticRoots> quadratic;
    std::vector<double> critical;
    std::vector<RealEigenvalue> real_eigenvalues;
    std::vector<std::complex<double>> spectrum;
    int complex_pair_count = 0;
    int dim_negative = 0;
    int dim_positive = 0;
    int dim_zero = 0;
};

struct AnalysisOptions {
    double root_tol = 0.0;  // 0 selects 1e−13 max(1, c + c_I + βTp)
};

/// Full analysis at T. For n_E > 0 only the numeric parts are filled and
/// `analytic` is false.
SpectrumReport analyze(const ModelParams& params, double T, const AnalysisOptions& opts = {});

nlohmann::json to_json(const SpectrumReport& report);
nlohmann::json to_json(const SignPattern& pattern);

}  // namespace flukin

#endif  // FLUKIN_SPECTRUM_HPP
