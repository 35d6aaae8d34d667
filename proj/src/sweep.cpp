#include "flukin/sweep.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "flukin/dynamics.hpp"

namespace flukin {

std::vector<double> linspace(double from, double to, int steps) {
    if (steps < 2) throw std::invalid_argument("linspace needs at least two points");
    std::vector<double> out(steps);
    const double h = (to - from) / (steps - 1);
    for (int k = 0; k < steps; ++k) out[k] = from + k * h;
    out.back() = to;
    return out;
}

namespace {

SweepRow sweep_point(const ModelParams& params, double T) {
    SweepRow row;
    row.T = T;
    row.kind = classify(params, T).kind;
    const SystemMatrix A = assemble_A(params, T);
    const double norm = A.entries.cwiseAbs().rowwise().sum().maxCoeff();
    const double zero_tol = 1e-8 * norm;
    row.max_real_eig = -std::numeric_limits<double>::infinity();
    for (auto z : nontrivial_spectrum(params, T)) {
        row.max_real_eig = std::max(row.max_real_eig, z.real());
        if (std::abs(z.imag()) <= 1e-12 * norm && z.real() > zero_tol) ++row.n_positive;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_threshold(const ModelParams& params, std::span<const double> Ts,
                                      Execution exec) {
    require_valid(params);
    std::vector<SweepRow> rows(Ts.size());
    const long n = static_cast<long>(Ts.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < n; ++k) rows[k] = sweep_point(params, Ts[k]);
    } else {
        for (long k = 0; k < n; ++k) rows[k] = sweep_point(params, Ts[k]);
    }
    return rows;
}

std::string sweep_csv_header() { return "T,classification,max_real_eig,n_positive"; }

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << sweep_csv_header() << '\n';
    for (const auto& r : rows) {
        os << format_double(r.T) << ',' << to_string(r.kind) << ','
           << format_double(r.max_real_eig) << ',' << r.n_positive << '\n';
    }
}

namespace {

Eigen::VectorXd stable_axis(const EigenspaceDecomposition& d) {
    if (!d.negative.empty()) {
        const auto it = std::max_element(d.negative_values.begin(), d.negative_values.end());
        return d.negative[it - d.negative_values.begin()];
    }
    for (const auto& [re, vecs] : d.complex_pairs) {
        if (re < 0.0) {
            const Eigen::VectorXd v = vecs.first;
            const double n = v.norm();
            return n > 0.0 ? Eigen::VectorXd(v / n) : v;
        }
    }
    throw std::runtime_error("field sketch: no stable direction at this T");
}

FieldPanel make_panel(const ModelParams& params, const Fields& fields, const std::string& name,
                      double T, const SketchOptions& opts, Execution exec) {
    const auto d = eigenspace_decomposition(params, T);
    FieldPanel panel;
    panel.name = name;
    panel.T = T;
    panel.axis_u = "V-";
    panel.u = stable_axis(d);
    if (name == "above") {
        if (d.positive.empty()) throw std::runtime_error("field sketch: no unstable direction above T*");
        panel.axis_w = "V+";
        panel.w = d.positive.front();
    } else {
        panel.axis_w = name == "at" ? "V0'" : "V0";
        panel.w = d.zero.front();
    }
    panel.coords = linspace(-opts.extent, opts.extent, opts.points);
    const long n = opts.points;
    panel.d_dt.resize(n * n);
    panel.d_dx.resize(n * n);
    auto sample = [&](long k) {
        const double a = panel.coords[k / n];
        const double b = panel.coords[k % n];
        Eigen::VectorXd s(params.state_dim());
        s[0] = T;
        s.tail(params.matrix_dim()) = a * panel.u + b * panel.w;
        panel.d_dt[k] = fields.time(s);
        panel.d_dx[k] = fields.x(s);
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for
        for (long k = 0; k < n * n; ++k) sample(k);
    } else {
        for (long k = 0; k < n * n; ++k) sample(k);
    }
    return panel;
}

}  // namespace

std::vector<FieldPanel> field_sketch(const ModelParams& params, const FieldCoefficients& coeffs,
                                     const SketchOptions& opts, Execution exec) {
    require_valid(params);
    if (params.n_E != 0) throw std::domain_error("field sketch is only available for n_E = 0");
    if (opts.points < 2 || !(opts.extent > 0.0) || !(opts.below > 0.0 && opts.below < 1.0) ||
        !(opts.above > 1.0)) {
        throw std::invalid_argument("field sketch needs points >= 2, extent > 0, below in (0,1), above > 1");
    }
    const Fields fields(params, coeffs);
    const double t_star = threshold_T(params);
    return {make_panel(params, fields, "below", opts.below * t_star, opts, exec),
            make_panel(params, fields, "at", t_star, opts, exec),
            make_panel(params, fields, "above", opts.above * t_star, opts, exec)};
}

std::string field_csv_header(int n_E, int n_I) {
    std::string out = "panel,T,axis_u,axis_w,x_proj,t_proj";
    const auto names = StateVector::component_names(n_E, n_I);
    for (const auto& name : names) out += ",dt_" + name;
    for (const auto& name : names) out += ",dx_" + name;
    out += ",dt_along_u,dt_along_w";
    return out;
}

void write_csv(std::ostream& os, const std::vector<FieldPanel>& panels, int n_E, int n_I) {
    os << field_csv_header(n_E, n_I) << '\n';
    for (const auto& p : panels) {
        const long n = static_cast<long>(p.coords.size());
        Eigen::MatrixXd basis(p.u.size(), 2);
        basis.col(0) = p.u;
        basis.col(1) = p.w;
        const auto qr = basis.colPivHouseholderQr();
        for (long k = 0; k < n * n; ++k) {
            os << p.name << ',' << format_double(p.T) << ',' << p.axis_u << ',' << p.axis_w << ','
               << format_double(p.coords[k / n]) << ',' << format_double(p.coords[k % n]);
            for (Eigen::Index i = 0; i < p.d_dt[k].size(); ++i) os << ',' << format_double(p.d_dt[k][i]);
            for (Eigen::Index i = 0; i < p.d_dx[k].size(); ++i) os << ',' << format_double(p.d_dx[k][i]);
            const Eigen::VectorXd along = qr.solve(Eigen::VectorXd(p.d_dt[k].tail(p.u.size())));
            os << ',' << format_double(along[0]) << ',' << format_double(along[1]) << '\n';
        }
    }
}

}  // namespace flukin
