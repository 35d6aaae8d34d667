#include "flukin/charpoly.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flukin {

namespace {

double ipow(double x, int n) {
    double out = 1.0;
    for (int k = 0; k < n; ++k) out *= x;
    return out;
}

double sign_of_order(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

SystemMatrix assemble_A(const ModelParams& params, double T) {
    require_valid(params, Strictness::field);
    const auto [c_E, c_I] = derived_rates(params);
    SystemMatrix A;
    A.n_E = params.n_E;
    A.n_I = params.n_I;
    A.T_value = T;
    const int n = params.matrix_dim();
    A.entries = Eigen::MatrixXd::Zero(n, n);
    auto& m = A.entries;

    for (int i = 1; i <= params.n_E; ++i) {
        m(A.row_E(i), A.row_E(i)) = -c_E;
        if (i > 1) m(A.row_E(i), A.row_E(i - 1)) = c_E;
    }
    for (int j = 1; j <= params.n_I; ++j) {
        m(A.row_I(j), A.row_I(j)) = -c_I;
        if (j > 1) m(A.row_I(j), A.row_I(j - 1)) = c_I;
    }
    if (params.n_E > 0) m(A.row_I(1), A.row_E(params.n_E)) = c_E;

    // Infection enters the first compartment row: E_1, or I_1 when n_E = 0.
    m(0, A.row_V()) = params.beta * T;

    for (int j = 1; j <= params.n_I; ++j) m(A.row_V(), A.row_I(j)) = params.p;
    m(A.row_V(), A.row_V()) = -params.c;
    m(A.row_V(), A.row_W()) = params.v_a;
    return A;
}

double charpoly_closed(const ModelParams& params, double T, double lambda) {
    const auto [c_E, c_I] = derived_rates(params);
    const double gain = params.beta * T * eclipse_gain(params) * params.p;
    const double lead = ipow(c_E + lambda, params.n_E) * ipow(c_I + lambda, params.n_I) *
                        (params.c + lambda) * lambda;
    return lead + gain * (ipow(c_I, params.n_I) - ipow(c_I + lambda, params.n_I));
}

double charpoly_sum_form(const ModelParams& params, double T, double lambda) {
    const auto [c_E, c_I] = derived_rates(params);
    const double gain = params.beta * T * eclipse_gain(params) * params.p;
    const double lead = ipow(c_E + lambda, params.n_E) * ipow(c_I + lambda, params.n_I) *
                        (params.c + lambda) * lambda;
    double sum = 0.0;
    for (int j = 0; j < params.n_I; ++j) {
        sum += ipow(c_I, j) * ipow(c_I + lambda, params.n_I - 1 - j);
    }
    // + 0.0 folds a negative zero into +0 so λ = 0 gives bitwise zero.
    return lead + gain * (-lambda) * sum + 0.0;
}

double charpoly(const ModelParams& params, double T, double lambda) {
    const auto rates = derived_rates(params);
    if (std::abs(lambda) < 1e-6 * (rates.c_I + params.c)) {
        return charpoly_sum_form(params, T, lambda);
    }
    return charpoly_closed(params, T, lambda);
}

double charpoly_scale(const ModelParams& params, double T, double lambda) {
    const auto [c_E, c_I] = derived_rates(params);
    const double gain = std::abs(params.beta * T * eclipse_gain(params) * params.p);
    const double lead = std::abs(ipow(c_E + lambda, params.n_E) * ipow(c_I + lambda, params.n_I) *
                                 (params.c + lambda) * lambda);
    double sum = 0.0;
    for (int j = 0; j < params.n_I; ++j) {
        sum += std::abs(ipow(c_I, j) * ipow(c_I + lambda, params.n_I - 1 - j));
    }
    return lead + gain * std::abs(lambda) * sum;
}

double detB_recursive(const ModelParams& params, double lambda, int k) {
    if (params.n_I < 2) throw std::out_of_range("det B_k needs n_I >= 2");
    if (k < 2 || k > params.n_I) {
        throw std::out_of_range("det B_k: k must lie in [2, n_I]");
    }
    const double c_I = derived_rates(params).c_I;
    const double off = -c_I - lambda;
    double det = c_I * params.p - params.p * off;
    for (int m = 3; m <= k; ++m) {
        det = c_I * det + sign_of_order(m + 1) * params.p * ipow(off, m - 1);
    }
    return det;
}

Eigen::MatrixXd minor_B(const ModelParams& params, double lambda, int k) {
    if (k < 2) throw std::out_of_range("B_k needs k >= 2");
    const double c_I = derived_rates(params).c_I;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
    for (int r = 0; r < k - 1; ++r) {
        b(r, r) = c_I;
        b(r, r + 1) = -c_I - lambda;
    }
    b.row(k - 1).setConstant(params.p);
    return b;
}

double LogDeterminant::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogDeterminant log_determinant(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    LogDeterminant out;
    if (m.rows() == 0) {
        out.sign = 1;
        return out;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::MatrixXd& u = lu.matrixLU();
    int sign = static_cast<int>(lu.permutationP().determinant());
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double d = u(i, i);
        if (d == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    out.log_abs = log_abs;
    out.sign = sign;
    return out;
}

double charpoly_direct(const ModelParams& params, double T, double lambda) {
    const SystemMatrix A = assemble_A(params, T);
    const Eigen::MatrixXd shifted =
        A.entries - lambda * Eigen::MatrixXd::Identity(A.n(), A.n());
    return sign_of_order(params.n_E + params.n_I) * log_determinant(shifted).value();
}

}  // namespace flukin
