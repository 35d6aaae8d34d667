#ifndef FLUKIN_DYNAMICS_HPP
#define FLUKIN_DYNAMICS_HPP

#include <string>

#include <Eigen/Dense>

#include "flukin/model.hpp"

namespace flukin {

/// The two column fields bound to validated parameters; the free functions
/// below construct one per call, integrators hold one for the whole run.
class Fields {
public:
    Fields(const ModelParams& params, const FieldCoefficients& coeffs);

    Eigen::VectorXd time(const Eigen::VectorXd& s) const;
    Eigen::VectorXd x(const Eigen::VectorXd& s) const;

    const ModelParams& params() const { return params_; }
    const FieldCoefficients& coeffs() const { return coeffs_; }
    int dim() const { return params_.state_dim(); }

private:
    void check(const Eigen::VectorXd& s) const;

    ModelParams params_;
    FieldCoefficients coeffs_;
    double c_E_ = 0.0;
    double c_I_ = 0.0;
};

/// Right-hand side of the time-direction equations, last component ψ.
Eigen::VectorXd time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                           const StateVector& s);

/// Same, on a raw vector in state layout. Throws std::invalid_argument on a
/// dimension mismatch.
Eigen::VectorXd time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                           const Eigen::VectorXd& s);

/// x-direction field (−r_1 W, r_2 W, …, r_{n−1} W, W, a).
Eigen::VectorXd x_field(const ModelParams& params, const FieldCoefficients& coeffs,
                        const StateVector& s);
Eigen::VectorXd x_field(const ModelParams& params, const FieldCoefficients& coeffs,
                        const Eigen::VectorXd& s);

struct FieldSample {
    StateVector at;
    Eigen::VectorXd d_dt;
    Eigen::VectorXd d_dx;
};

FieldSample sample_fields(const ModelParams& params, const FieldCoefficients& coeffs,
                          const StateVector& s);

enum class FieldRank { full_rank_2, degenerate };

std::string to_string(FieldRank r);

/// sin² of the angle between the two fields; 0 when either vanishes.
double field_independence(const Eigen::VectorXd& x, const Eigen::VectorXd& t);

/// full_rank_2 when the normalized Gram determinant exceeds tol.
FieldRank rank_check(const ModelParams& params, const FieldCoefficients& coeffs,
                     const StateVector& s, double tol = 1e-12);

}  // namespace flukin

#endif  // FLUKIN_DYNAMICS_HPP
