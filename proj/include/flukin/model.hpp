#ifndef FLUKIN_MODEL_HPP
#define FLUKIN_MODEL_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace flukin {

/// Rate constants and age-class counts of the within-host influenza model.
///
/// The state is (T, E_1..E_nE, I_1..I_nI, V, W): target-cell fraction,
/// eclipse classes, infectious classes, virus concentration and its
/// spatial derivative. ∂xx V is frozen to the constant `a`.
struct ModelParams {
    double beta = 1.0;             // infection rate
    double p = 1.0;                // virion production rate
    double c = 1.0;                // viral clearance rate
    int n_E = 0;                   // eclipse age classes
    int n_I = 1;                   // infectious age classes
    std::optional<double> tau_E;   // mean eclipse duration, needed iff n_E > 0
    double tau_I = 1.0;            // mean infectious duration
    double D_PCF = 0.0;            // diffusion rate in the periciliary fluid
    double v_a = 0.0;              // upward advection speed
    double a = 0.0;                // constant stand-in for ∂xx V

    /// Dimension of the coefficient matrix: n_E + n_I + 2.
    int matrix_dim() const { return n_E + n_I + 2; }
    /// Dimension of the full phase space: n_E + n_I + 3.
    int state_dim() const { return n_E + n_I + 3; }
};

struct DerivedRates {
    double c_E = 0.0;
    double c_I = 0.0;
};

/// `strict` enforces every positivity constraint. `field` relaxes beta > 0
/// to beta >= 0 so the uncoupled (linear) reduction can be evaluated by the
/// field and surface diagnostics; nothing in those paths divides by beta.
enum class Strictness { strict, field };

class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Every violated invariant, in field order. Empty means valid.
std::vector<std::string> validate(const ModelParams& params,
                                  Strictness mode = Strictness::strict);

/// Throws ValidationError carrying the full list from validate().
void require_valid(const ModelParams& params, Strictness mode = Strictness::strict);

/// (n_E/tau_E, n_I/tau_I), with c_E = 0 when n_E = 0.
DerivedRates derived_rates(const ModelParams& params);

/// c_E^{n_E}, defined as 1 when n_E = 0.
double eclipse_gain(const ModelParams& params);

/// T* = c / (tau_I p beta).
double threshold_T(const ModelParams& params);

ModelParams params_from_json(const nlohmann::json& j, Strictness mode = Strictness::strict);
nlohmann::json params_to_json(const ModelParams& params);

/// One point of phase space with fixed layout (T, E.., I.., V, W).
class StateVector {
public:
    StateVector(int n_E, int n_I);
    explicit StateVector(const ModelParams& params) : StateVector(params.n_E, params.n_I) {}
    StateVector(int n_E, int n_I, Eigen::VectorXd values);

    int n_E() const { return n_E_; }
    int n_I() const { return n_I_; }
    int size() const { return static_cast<int>(values_.size()); }

    double T() const { return values_[0]; }
    double& T() { return values_[0]; }
    /// Eclipse class i, 1-based.
    double E(int i) const { return values_[i]; }
    double& E(int i) { return values_[i]; }
    /// Infectious class j, 1-based.
    double I(int j) const { return values_[n_E_ + j]; }
    double& I(int j) { return values_[n_E_ + j]; }
    double V() const { return values_[n_E_ + n_I_ + 1]; }
    double& V() { return values_[n_E_ + n_I_ + 1]; }
    double W() const { return values_[n_E_ + n_I_ + 2]; }
    double& W() { return values_[n_E_ + n_I_ + 2]; }

    const Eigen::VectorXd& values() const { return values_; }
    Eigen::VectorXd& values() { return values_; }

    /// The (E, I, V, W) block acted on by the coefficient matrix.
    Eigen::VectorXd block() const { return values_.tail(values_.size() - 1); }

    bool matches(const ModelParams& params) const {
        return n_E_ == params.n_E && n_I_ == params.n_I;
    }

    /// Component names in storage order, e.g. T,E1,I1,I2,V,W.
    static std::vector<std::string> component_names(int n_E, int n_I);

    nlohmann::json to_json() const;
    static StateVector from_json(const nlohmann::json& j);

private:
    int n_E_;
    int n_I_;
    Eigen::VectorXd values_;
};

/// Coefficients of the x-direction field: (−r_1 W, r_2 W, …, r_{n-1} W, W, a).
struct FieldCoefficients {
    std::vector<double> r;  // length n_E + n_I + 2, last entry exactly 1
    double psi = 0.0;       // constant stand-in for ∂xt V

    static FieldCoefficients defaults(const ModelParams& params);
};

std::vector<std::string> validate(const FieldCoefficients& coeffs, const ModelParams& params);
void require_valid(const FieldCoefficients& coeffs, const ModelParams& params);

FieldCoefficients coeffs_from_json(const nlohmann::json& j, const ModelParams& params);

}  // namespace flukin

#endif  // FLUKIN_MODEL_HPP
