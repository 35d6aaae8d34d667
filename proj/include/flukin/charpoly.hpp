#ifndef FLUKIN_CHARPOLY_HPP
#define FLUKIN_CHARPOLY_HPP

#include <Eigen/Dense>

#include "flukin/model.hpp"

namespace flukin {

/// Coefficient matrix of the linear part acting on (E.., I.., V, W) at a
/// frozen target-cell fraction T. The W row is identically zero.
struct SystemMatrix {
    Eigen::MatrixXd entries;
    double T_value = 0.0;
    int n_E = 0;
    int n_I = 1;

    int n() const { return static_cast<int>(entries.rows()); }
    int row_I(int j) const { return n_E + j - 1; }  // 1-based class index
    int row_E(int i) const { return i - 1; }
    int row_V() const { return n_E + n_I; }
    int row_W() const { return n_E + n_I + 1; }
};

SystemMatrix assemble_A(const ModelParams& params, double T);

/// (−1)^{n_E+n_I} det(A − λI) in product form:
/// (c_E+λ)^{n_E}(c_I+λ)^{n_I}(c+λ)λ + βT c_E^{n_E} p (c_I^{n_I} − (c_I+λ)^{n_I}).
double charpoly_closed(const ModelParams& params, double T, double lambda);

/// Same polynomial with the difference of powers telescoped into
/// −λ Σ_j c_I^j (c_I+λ)^{n_I−1−j}; exactly zero at λ = 0.
double charpoly_sum_form(const ModelParams& params, double T, double lambda);

/// The sum form for |λ| < 1e−6 (c_I + c), the closed form elsewhere.
double charpoly(const ModelParams& params, double T, double lambda);

/// Sum of the magnitudes of the terms of the sum form at λ; the natural
/// scale for rounding error in either evaluation.
double charpoly_scale(const ModelParams& params, double T, double lambda);

/// det B_k of the minor used in the cofactor expansion, by the recursion
/// det B_k = c_I det B_{k−1} + (−1)^{k+1} p (−c_I − λ)^{k−1}, k in [2, n_I].
double detB_recursive(const ModelParams& params, double lambda, int k);

/// The k×k matrix B_k itself, for checking the recursion against a determinant.
Eigen::MatrixXd minor_B(const ModelParams& params, double lambda, int k);

struct LogDeterminant {
    double log_abs = 0.0;  // log |det|, −inf for a singular matrix
    int sign = 0;          // −1, 0 or +1

    double value() const;
};

/// Determinant by LU with partial pivoting, accumulated as log-magnitude and sign.
LogDeterminant log_determinant(const Eigen::MatrixXd& m);

/// (−1)^{n_E+n_I} det(A − λI) from the assembled matrix. Cross-validation only.
double charpoly_direct(const ModelParams& params, double T, double lambda);

}  // namespace flukin

#endif  // FLUKIN_CHARPOLY_HPP
