#ifndef FLUKIN_SURFACE_HPP
#define FLUKIN_SURFACE_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "flukin/dynamics.hpp"
#include "flukin/model.hpp"

namespace flukin {

enum class Execution { serial, parallel };

/// Any component above this magnitude aborts an integration.
inline constexpr double kBlowUpThreshold = 1e12;

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double last_time, int good_rows, int node_x = -1,
                int node_t = -1)
        : std::runtime_error(what),
          last_time_(last_time),
          good_rows_(good_rows),
          node_x_(node_x),
          node_t_(node_t) {}

    double last_time() const { return last_time_; }
    int good_rows() const { return good_rows_; }
    int node_x() const { return node_x_; }
    int node_t() const { return node_t_; }

private:
    double last_time_;
    int good_rows_;
    int node_x_;
    int node_t_;
};

struct Span {
    double from = 0.0;
    double to = 0.0;
};

/// Number of steps that tile the span, and the step that tiles it exactly.
struct StepPlan {
    long steps = 0;
    double h = 0.0;
};

StepPlan plan_steps(Span span, double h);

/// One classical fourth-order Runge–Kutta step of y' = f(y).
template <class F>
Eigen::VectorXd rk4_step(const F& f, const Eigen::VectorXd& y, double h) {
    const Eigen::VectorXd k1 = f(y);
    const Eigen::VectorXd k2 = f(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Trajectory {
    int n_E = 0;
    int n_I = 1;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;  // full state layout
};

/// Fixed-step RK4 of the time field over t_span. The step is shrunk so the
/// span is tiled exactly. Throws BlowUpError past kBlowUpThreshold.
Trajectory integrate_t(const ModelParams& params, const FieldCoefficients& coeffs,
                       const StateVector& s0, Span t_span, double h_t);

/// A·s + (0, …, 0, D_PCF a, ψ) on the (E, I, V, W) block at frozen T.
Eigen::VectorXd linearized_time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                                      double T_frozen, const Eigen::VectorXd& block);

/// RK4 of the linearized field. States are stored in full layout with the
/// T slot pinned to T_frozen.
Trajectory integrate_linearized(const ModelParams& params, const FieldCoefficients& coeffs,
                                double T_frozen, const Eigen::VectorXd& block0, Span t_span,
                                double h_t);

struct SurfaceGrid {
    int n_E = 0;
    int n_I = 1;
    std::vector<double> x_nodes;
    std::vector<double> t_nodes;
    /// states[ix][it], traced x first along t_0 and then up each column.
    std::vector<std::vector<Eigen::VectorXd>> states;
    /// mismatch[ix][it]: gap between the x-then-t and t-then-x single steps
    /// across the lattice cell ending at the node; zero on the t_0 row and
    /// the x_0 column where no cell ends.
    std::vector<std::vector<double>> mismatch;
    double h_x = 0.0;
    double h_t = 0.0;
    /// ∞-norm gap at the far corner between the full x-then-t trace and the
    /// full t-then-x trace.
    double corner_path_gap = 0.0;
};

SurfaceGrid trace_surface(const ModelParams& params, const FieldCoefficients& coeffs,
                          const StateVector& s0, Span x_span, Span t_span, double h_x,
                          double h_t, Execution exec = Execution::parallel);

struct LieBracket {
    Eigen::VectorXd bracket;
    double defect = 0.0;
};

/// [X, Y] = DY·X − DX·Y with X the x-field, Y the time field and both
/// Jacobians from central differences of step h. The defect is the distance
/// of the bracket from span{X, Y}; 0 when the fields are degenerate.
LieBracket lie_bracket(const ModelParams& params, const FieldCoefficients& coeffs,
                       const StateVector& s, double h);

/// Central-difference Jacobian of a field.
template <class F>
Eigen::MatrixXd numeric_jacobian(const F& f, const Eigen::VectorXd& s, double h) {
    const Eigen::Index n = s.size();
    Eigen::MatrixXd J(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd up = s;
        Eigen::VectorXd down = s;
        up[k] += h;
        down[k] -= h;
        J.col(k) = (f(up) - f(down)) / (2.0 * h);
    }
    return J;
}

enum class AsymptoticKind { converging, diverging, undetermined };

std::string to_string(AsymptoticKind k);

struct AsymptoticsVerdict {
    AsymptoticKind kind = AsymptoticKind::undetermined;
    double rate = 0.0;      // fitted exponential rate per unit time
    double window = 0.0;    // trailing span examined
    double r_squared = 0.0; // quality of the log-linear fit
    int samples = 0;        // points that entered the fit
};

/// Fits log‖s(t_{k+1}) − s(t_k)‖∞ against t over the trailing window. The
/// increments carry the dominant exponential rate without needing the limit
/// state. Converging: non-increasing increments and rate < 0 (or identically
/// zero). Diverging: rate > 0 with R² ≥ 0.99.
AsymptoticsVerdict asymptotics(const Trajectory& trajectory, double window);

nlohmann::json to_json(const AsymptoticsVerdict& v);

/// Header `x,t,T,E1..,I1..,V,W,mismatch`.
std::string csv_header(int n_E, int n_I);

/// One row per node, x-major, 17 significant digits.
void write_csv(std::ostream& os, const SurfaceGrid& grid);

/// One row per sample at the fixed position x, mismatch column 0.
void write_csv(std::ostream& os, const Trajectory& trajectory, double x = 0.0);

/// printf-style %.17g.
std::string format_double(double v);

}  // namespace flukin

#endif  // FLUKIN_SURFACE_HPP
