#include "flukin/dynamics.hpp"

#include <stdexcept>

namespace flukin {

Fields::Fields(const ModelParams& params, const FieldCoefficients& coeffs)
    : params_(params), coeffs_(coeffs) {
    require_valid(params_, Strictness::field);
    require_valid(coeffs_, params_);
    const auto rates = derived_rates(params_);
    c_E_ = rates.c_E;
    c_I_ = rates.c_I;
}

void Fields::check(const Eigen::VectorXd& s) const {
    if (s.size() != params_.state_dim()) {
        throw std::invalid_argument("state has dimension " + std::to_string(s.size()) +
                                    ", expected n_E + n_I + 3 = " +
                                    std::to_string(params_.state_dim()));
    }
}

Eigen::VectorXd Fields::time(const Eigen::VectorXd& s) const {
    check(s);
    const int nE = params_.n_E;
    const int nI = params_.n_I;
    const int iV = nE + nI + 1;
    const int iW = nE + nI + 2;
    const double infection = params_.beta * s[0] * s[iV];

    Eigen::VectorXd out(s.size());
    out[0] = -infection;
    double inflow = infection;
    for (int i = 1; i <= nE; ++i) {
        out[i] = inflow - c_E_ * s[i];
        inflow = c_E_ * s[i];
    }
    double virions = 0.0;
    for (int j = 1; j <= nI; ++j) {
        out[nE + j] = inflow - c_I_ * s[nE + j];
        inflow = c_I_ * s[nE + j];
        virions += s[nE + j];
    }
    out[iV] = params_.p * virions - params_.c * s[iV] + params_.D_PCF * params_.a +
              params_.v_a * s[iW];
    out[iW] = coeffs_.psi;
    return out;
}

Eigen::VectorXd Fields::x(const Eigen::VectorXd& s) const {
    check(s);
    const int n = params_.state_dim();
    const double W = s[n - 1];
    Eigen::VectorXd out(n);
    out[0] = -coeffs_.r[0] * W;
    for (int k = 1; k < n - 1; ++k) out[k] = coeffs_.r[k] * W;
    out[n - 1] = params_.a;
    return out;
}

Eigen::VectorXd time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                           const Eigen::VectorXd& s) {
    return Fields(params, coeffs).time(s);
}

Eigen::VectorXd time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                           const StateVector& s) {
    return time_field(params, coeffs, s.values());
}

Eigen::VectorXd x_field(const ModelParams& params, const FieldCoefficients& coeffs,
                        const Eigen::VectorXd& s) {
    return Fields(params, coeffs).x(s);
}

Eigen::VectorXd x_field(const ModelParams& params, const FieldCoefficients& coeffs,
                        const StateVector& s) {
    return x_field(params, coeffs, s.values());
}

FieldSample sample_fields(const ModelParams& params, const FieldCoefficients& coeffs,
                          const StateVector& s) {
    const Fields f(params, coeffs);
    return FieldSample{s, f.time(s.values()), f.x(s.values())};
}

std::string to_string(FieldRank r) {
    return r == FieldRank::full_rank_2 ? "full-rank-2" : "degenerate";
}

double field_independence(const Eigen::VectorXd& x, const Eigen::VectorXd& t) {
    const double xx = x.squaredNorm();
    const double tt = t.squaredNorm();
    if (xx == 0.0 || tt == 0.0) return 0.0;
    const double xt = x.dot(t);
    // Gram determinant divided by |x|²|t|².
    return std::max(0.0, 1.0 - (xt / xx) * (xt / tt));
}

FieldRank rank_check(const ModelParams& params, const FieldCoefficients& coeffs,
                     const StateVector& s, double tol) {
    const Fields f(params, coeffs);
    const double g = field_independence(f.x(s.values()), f.time(s.values()));
    return g > tol ? FieldRank::full_rank_2 : FieldRank::degenerate;
}

}  // namespace flukin
