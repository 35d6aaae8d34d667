#include "flukin/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include "flukin/charpoly.hpp"

namespace flukin {

namespace {

bool blown_up(const Eigen::VectorXd& s) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i]) || std::abs(s[i]) > kBlowUpThreshold) return true;
    }
    return false;
}

void check_step(double h, const char* name) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument(std::string(name) + " must be a finite positive step");
    }
}

template <class F>
Trajectory run_rk4(const F& f, const Eigen::VectorXd& y0, Span span, double h, int n_E,
                   int n_I) {
    const StepPlan plan = plan_steps(span, h);
    Trajectory out;
    out.n_E = n_E;
    out.n_I = n_I;
    out.times.reserve(plan.steps + 1);
    out.states.reserve(plan.steps + 1);
    out.times.push_back(span.from);
    out.states.push_back(y0);
    Eigen::VectorXd y = y0;
    for (long k = 1; k <= plan.steps; ++k) {
        y = rk4_step(f, y, plan.h);
        if (blown_up(y)) {
            throw BlowUpError("integration blew up after t = " +
                                  format_double(out.times.back()),
                              out.times.back(), static_cast<int>(out.states.size()));
        }
        out.times.push_back(span.from + k * plan.h);
        out.states.push_back(y);
    }
    return out;
}

struct LineFit {
    double slope = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    if (sxx == 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));
    return fit;
}

}  // namespace

StepPlan plan_steps(Span span, double h) {
    check_step(h, "step");
    const double length = span.to - span.from;
    if (!std::isfinite(length) || length < 0.0) {
        throw std::invalid_argument("span must be finite with from <= to");
    }
    if (length == 0.0) return {0, h};
    const long steps = std::max(1L, std::lround(length / h));
    return {steps, length / static_cast<double>(steps)};
}

Trajectory integrate_t(const ModelParams& params, const FieldCoefficients& coeffs,
                       const StateVector& s0, Span t_span, double h_t) {
    check_step(h_t, "h_t");
    if (!s0.matches(params)) throw std::invalid_argument("initial state does not match params");
    const Fields fields(params, coeffs);
    auto f = [&](const Eigen::VectorXd& y) { return fields.time(y); };
    return run_rk4(f, s0.values(), t_span, h_t, params.n_E, params.n_I);
}

Eigen::VectorXd linearized_time_field(const ModelParams& params, const FieldCoefficients& coeffs,
                                      double T_frozen, const Eigen::VectorXd& block) {
    const SystemMatrix A = assemble_A(params, T_frozen);
    require_valid(coeffs, params);
    if (block.size() != A.n()) {
        throw std::invalid_argument("linearized state must have dimension n_E + n_I + 2");
    }
    Eigen::VectorXd out = A.entries * block;
    out[A.row_V()] += params.D_PCF * params.a;
    out[A.row_W()] += coeffs.psi;
    return out;
}

Trajectory integrate_linearized(const ModelParams& params, const FieldCoefficients& coeffs,
                                double T_frozen, const Eigen::VectorXd& block0, Span t_span,
                                double h_t) {
    check_step(h_t, "h_t");
    const SystemMatrix A = assemble_A(params, T_frozen);
    require_valid(coeffs, params);
    if (block0.size() != A.n()) {
        throw std::invalid_argument("linearized state must have dimension n_E + n_I + 2");
    }
    Eigen::VectorXd forcing = Eigen::VectorXd::Zero(A.n());
    forcing[A.row_V()] = params.D_PCF * params.a;
    forcing[A.row_W()] = coeffs.psi;
    auto f = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd { return A.entries * y + forcing; };
    Trajectory block_run = run_rk4(f, block0, t_span, h_t, params.n_E, params.n_I);
    for (auto& s : block_run.states) {
        Eigen::VectorXd full(s.size() + 1);
        full[0] = T_frozen;
        full.tail(s.size()) = s;
        s = std::move(full);
    }
    return block_run;
}

SurfaceGrid trace_surface(const ModelParams& params, const FieldCoefficients& coeffs,
                          const StateVector& s0, Span x_span, Span t_span, double h_x,
                          double h_t, Execution exec) {
    check_step(h_x, "h_x");
    check_step(h_t, "h_t");
    if (!s0.matches(params)) throw std::invalid_argument("initial state does not match params");
    const Fields fields(params, coeffs);
    auto fx = [&](const Eigen::VectorXd& y) { return fields.x(y); };
    auto ft = [&](const Eigen::VectorXd& y) { return fields.time(y); };

    const StepPlan px = plan_steps(x_span, h_x);
    const StepPlan pt = plan_steps(t_span, h_t);
    const long nx = px.steps + 1;
    const long nt = pt.steps + 1;

    SurfaceGrid grid;
    grid.n_E = params.n_E;
    grid.n_I = params.n_I;
    grid.h_x = px.h;
    grid.h_t = pt.h;
    for (long i = 0; i < nx; ++i) grid.x_nodes.push_back(x_span.from + i * px.h);
    for (long j = 0; j < nt; ++j) grid.t_nodes.push_back(t_span.from + j * pt.h);
    grid.states.assign(nx, std::vector<Eigen::VectorXd>(nt));
    grid.mismatch.assign(nx, std::vector<double>(nt, 0.0));

    grid.states[0][0] = s0.values();
    for (long i = 1; i < nx; ++i) {
        grid.states[i][0] = rk4_step(fx, grid.states[i - 1][0], px.h);
        if (blown_up(grid.states[i][0])) {
            throw BlowUpError("surface trace blew up on the t_0 fiber", t_span.from,
                              static_cast<int>(i), static_cast<int>(i), 0);
        }
    }

    // Columns are independent once the t_0 fiber exists; each writes only its own slot.
    std::vector<std::optional<BlowUpError>> failures(nx);
    auto column = [&](long i) {
        auto& col = grid.states[i];
        for (long j = 1; j < nt; ++j) {
            col[j] = rk4_step(ft, col[j - 1], pt.h);
            if (blown_up(col[j])) {
                failures[i].emplace("surface trace blew up at node (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")",
                                    grid.t_nodes[j - 1], static_cast<int>(i * nt + j),
                                    static_cast<int>(i), static_cast<int>(j));
                return;
            }
        }
    };
    // Cell (i−1, j−1) → (i, j) stepped both ways from its lower-left node.
    auto cell_mismatch = [&](long i) {
        for (long j = 1; j < nt; ++j) {
            const Eigen::VectorXd& base = grid.states[i - 1][j - 1];
            const Eigen::VectorXd xt = rk4_step(ft, rk4_step(fx, base, px.h), pt.h);
            const Eigen::VectorXd tx = rk4_step(fx, rk4_step(ft, base, pt.h), px.h);
            grid.mismatch[i][j] = (xt - tx).lpNorm<Eigen::Infinity>();
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < nx; ++i) column(i);
    } else {
        for (long i = 0; i < nx; ++i) column(i);
    }
    for (const auto& f : failures) {
        if (f) throw *f;
    }
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 1; i < nx; ++i) cell_mismatch(i);
    } else {
        for (long i = 1; i < nx; ++i) cell_mismatch(i);
    }

    Eigen::VectorXd opposite = s0.values();
    for (long j = 1; j < nt; ++j) opposite = rk4_step(ft, opposite, pt.h);
    for (long i = 1; i < nx; ++i) opposite = rk4_step(fx, opposite, px.h);
    grid.corner_path_gap = (grid.states[nx - 1][nt - 1] - opposite).lpNorm<Eigen::Infinity>();
    if (!std::isfinite(grid.corner_path_gap)) {
        grid.corner_path_gap = std::numeric_limits<double>::infinity();
    }
    return grid;
}

LieBracket lie_bracket(const ModelParams& params, const FieldCoefficients& coeffs,
                       const StateVector& s, double h) {
    check_step(h, "h");
    const Fields fields(params, coeffs);
    auto fx = [&](const Eigen::VectorXd& y) { return fields.x(y); };
    auto ft = [&](const Eigen::VectorXd& y) { return fields.time(y); };
    const Eigen::VectorXd X = fx(s.values());
    const Eigen::VectorXd Y = ft(s.values());
    const Eigen::MatrixXd DX = numeric_jacobian(fx, s.values(), h);
    const Eigen::MatrixXd DY = numeric_jacobian(ft, s.values(), h);

    LieBracket out;
    out.bracket = DY * X - DX * Y;
    if (field_independence(X, Y) <= 1e-12) {
        out.defect = 0.0;
        return out;
    }
    Eigen::MatrixXd basis(X.size(), 2);
    basis.col(0) = X;
    basis.col(1) = Y;
    const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(out.bracket);
    out.defect = (out.bracket - basis * coef).norm();
    return out;
}

std::string to_string(AsymptoticKind k) {
    switch (k) {
        case AsymptoticKind::converging: return "Converging";
        case AsymptoticKind::diverging: return "Diverging";
        case AsymptoticKind::undetermined: return "Undetermined";
    }
    return "?";
}

AsymptoticsVerdict asymptotics(const Trajectory& trajectory, double window) {
    const auto& t = trajectory.times;
    const auto& s = trajectory.states;
    if (t.size() < 2) throw std::invalid_argument("asymptotics needs at least two samples");
    const double total = t.back() - t.front();
    if (!(window > 0.0) || window > total * (1.0 + 1e-12)) {
        throw std::invalid_argument("asymptotics window must be positive and within the trajectory");
    }
    AsymptoticsVerdict v;
    v.window = window;

    std::size_t first = 0;
    while (first + 1 < t.size() && t[first] < t.back() - window * (1.0 + 1e-12)) ++first;

    double magnitude = 0.0;
    for (std::size_t k = first; k < s.size(); ++k) {
        magnitude = std::max(magnitude, s[k].lpNorm<Eigen::Infinity>());
    }
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * magnitude;

    std::vector<double> times;
    std::vector<double> logs;
    std::vector<double> steps;
    for (std::size_t k = first; k + 1 < s.size(); ++k) {
        const double d = (s[k + 1] - s[k]).lpNorm<Eigen::Infinity>();
        steps.push_back(d);
        if (d > floor) {
            times.push_back(0.5 * (t[k] + t[k + 1]));
            logs.push_back(std::log(d));
        }
    }

    bool non_increasing = true;
    for (std::size_t k = 1; k < steps.size(); ++k) {
        if (steps[k] > steps[k - 1] * (1.0 + 1e-9) + floor) {
            non_increasing = false;
            break;
        }
    }

    v.samples = static_cast<int>(times.size());
    if (times.size() < 3) {
        // Settled below the rounding floor: nothing left to fit.
        v.kind = non_increasing ? AsymptoticKind::converging : AsymptoticKind::undetermined;
        v.rate = 0.0;
        v.r_squared = 1.0;
        return v;
    }
    const LineFit fit = fit_line(times, logs);
    v.rate = fit.slope;
    v.r_squared = fit.r_squared;
    if (non_increasing && fit.slope < 0.0) {
        v.kind = AsymptoticKind::converging;
    } else if (fit.slope > 0.0 && fit.r_squared >= 0.99) {
        v.kind = AsymptoticKind::diverging;
    } else {
        v.kind = AsymptoticKind::undetermined;
    }
    return v;
}

nlohmann::json to_json(const AsymptoticsVerdict& v) {
    return {{"kind", to_string(v.kind)},
            {"rate", v.rate},
            {"window", v.window},
            {"r_squared", v.r_squared},
            {"samples", v.samples}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_header(int n_E, int n_I) {
    std::string out = "x,t";
    for (const auto& name : StateVector::component_names(n_E, n_I)) out += "," + name;
    out += ",mismatch";
    return out;
}

void write_csv(std::ostream& os, const SurfaceGrid& grid) {
    os << csv_header(grid.n_E, grid.n_I) << '\n';
    for (std::size_t i = 0; i < grid.x_nodes.size(); ++i) {
        for (std::size_t j = 0; j < grid.t_nodes.size(); ++j) {
            os << format_double(grid.x_nodes[i]) << ',' << format_double(grid.t_nodes[j]);
            const auto& s = grid.states[i][j];
            for (Eigen::Index k = 0; k < s.size(); ++k) os << ',' << format_double(s[k]);
            os << ',' << format_double(grid.mismatch[i][j]) << '\n';
        }
    }
}

void write_csv(std::ostream& os, const Trajectory& trajectory, double x) {
    os << csv_header(trajectory.n_E, trajectory.n_I) << '\n';
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        os << format_double(x) << ',' << format_double(trajectory.times[k]);
        const auto& s = trajectory.states[k];
        for (Eigen::Index i = 0; i < s.size(); ++i) os << ',' << format_double(s[i]);
        os << ",0\n";
    }
}

}  // namespace flukin
