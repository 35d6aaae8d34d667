#include "flukin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flukin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_no_eclipse(const ModelParams& params, const char* what) {
    if (params.n_E != 0) {
        throw std::domain_error(std::string(what) + " is only available for n_E = 0");
    }
}

void require_nonnegative_T(double T, const char* what) {
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw std::domain_error(std::string(what) + " needs a finite T >= 0");
    }
}

double ipow(double x, int n) {
    double out = 1.0;
    for (int k = 0; k < n; ++k) out *= x;
    return out;
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// m-th central difference of the polynomial at x with step h (not divided by h^m).
double central_difference(const ModelParams& params, double T, double x, double h, int m) {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double offset = (0.5 * m - k) * h;
        const double w = ((k % 2) ? -1.0 : 1.0) * binomial(m, k);
        acc += w * charpoly_closed(params, T, x + offset);
    }
    return acc;
}

double stencil_scale(const ModelParams& params, double T, double x, double h, int m) {
    double s = 0.0;
    for (int k = 0; k <= m; ++k) {
        s = std::max(s, charpoly_scale(params, T, x + (0.5 * m - k) * h));
    }
    return s;
}

// Unit vectors spanning the numerical null space of m, smallest singular values first.
std::vector<Eigen::VectorXcd> null_vectors(const Eigen::MatrixXcd& m, int count) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::MatrixXcd& v = svd.matrixV();
    std::vector<Eigen::VectorXcd> out;
    for (int k = 0; k < count; ++k) out.push_back(v.col(v.cols() - 1 - k));
    return out;
}

Eigen::VectorXd real_direction(const Eigen::VectorXcd& v) {
    // Rotate the phase so the largest component is real, then drop the imaginary part.
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    const std::complex<double> phase = std::abs(v[idx]) > 0 ? v[idx] / std::abs(v[idx]) : 1.0;
    Eigen::VectorXd out = (v / phase).real();
    const double norm = out.norm();
    return norm > 0 ? Eigen::VectorXd(out / norm) : out;
}

struct RealCluster {
    double value;
    int count;
};

std::vector<RealCluster> cluster_real(std::vector<double> values, double tol) {
    std::sort(values.begin(), values.end());
    std::vector<RealCluster> out;
    for (double v : values) {
        if (!out.empty() && std::abs(v - out.back().value) <= tol) {
            auto& c = out.back();
            c.value = (c.value * c.count + v) / (c.count + 1);
            ++c.count;
        } else {
            out.push_back({v, 1});
        }
    }
    return out;
}

bool is_real(std::complex<double> z, double scale) { return std::abs(z.imag()) <= 1e-12 * scale; }

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::definite: return "Definite";
        case Regime::indefinite: return "Indefinite";
        case Regime::critical: return "Critical";
    }
    return "?";
}

Classification classify(const ModelParams& params, double T) {
    Classification out;
    out.T_star = threshold_T(params);
    const double drive = params.beta * T * params.p * params.tau_I;
    out.margin = params.c - drive;
    const double tol = kClassTolerance * std::max(params.c, std::abs(drive));
    if (std::abs(out.margin) <= tol) {
        out.kind = Regime::critical;
    } else {
        out.kind = out.margin > 0 ? Regime::definite : Regime::indefinite;
    }
    return out;
}

QuadraticRoots quadratic_roots(const ModelParams& params, double T) {
    require_valid(params);
    require_nonnegative_T(T, "quadratic_roots");
    const double k = params.beta * T * params.p;
    const double lo = 0.5 * (-params.c - std::sqrt(params.c * params.c + 4.0 * k));
    // Product of the roots is −k; this avoids cancelling −c against the root.
    const double hi = -k / lo + 0.0;
    return {lo, hi};
}

std::vector<double> critical_points(const ModelParams& params, double T) {
    require_valid(params);
    require_no_eclipse(params, "critical_points");
    const double c_I = derived_rates(params).c_I;
    const double k = params.beta * T * params.p;
    const int n = params.n_I;
    const double qa = n + 2.0;
    const double qb = params.c * n + params.c + 2.0 * c_I;
    const double qc = params.c * c_I - k * n;

    std::vector<double> out;
    if (n >= 2) out.push_back(-c_I);
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
        const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
        out.push_back(q / qa);
        out.push_back(q != 0.0 ? qc / q : 0.0);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double charpoly_derivative(const ModelParams& params, double T, double lambda) {
    require_no_eclipse(params, "charpoly_derivative");
    const double c_I = derived_rates(params).c_I;
    const double k = params.beta * T * params.p;
    const int n = params.n_I;
    const double q = (n + 2.0) * lambda * lambda +
                     (params.c * n + params.c + 2.0 * c_I) * lambda + params.c * c_I - k * n;
    return ipow(c_I + lambda, n - 1) * q;
}

std::vector<double> real_roots(const ModelParams& params, double T, double tol) {
    require_valid(params);
    require_no_eclipse(params, "real_roots");
    require_nonnegative_T(T, "real_roots");
    if (!(tol > 0.0)) throw std::invalid_argument("real_roots: tol must be > 0");

    auto P = [&](double x) { return charpoly_sum_form(params, T, x); };
    auto is_root_at = [&](double x, double fx) {
        return fx == 0.0 || std::abs(fx) <= 64.0 * kEps * charpoly_scale(params, T, x);
    };

    std::vector<double> points = critical_points(params, T);
    points.push_back(0.0);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // Monotone beyond the outermost critical points, so one bracket each side
    // with the limiting sign suffices.
    const double c_I = derived_rates(params).c_I;
    const double start = params.c + c_I + params.beta * T * params.p + 1.0;
    const int left_sign = (params.n_I % 2 == 0) ? 1 : -1;
    double left = -start;
    for (int it = 0; it < 2000 && (left >= points.front() || sgn(P(left)) != left_sign); ++it) {
        left *= 2.0;
    }
    double right = start;
    for (int it = 0; it < 2000 && (right <= points.back() || sgn(P(right)) != 1); ++it) {
        right *= 2.0;
    }
    points.insert(points.begin(), left);
    points.push_back(right);

    std::vector<double> roots;
    std::vector<double> values(points.size());
    std::vector<bool> at_root(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        values[i] = P(points[i]);
        at_root[i] = is_root_at(points[i], values[i]);
        if (at_root[i]) roots.push_back(points[i]);
    }

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (at_root[i] || at_root[i + 1]) continue;
        if (sgn(values[i]) * sgn(values[i + 1]) >= 0) continue;
        double a = points[i];
        double b = points[i + 1];
        double fa = values[i];
        double root = std::numeric_limits<double>::quiet_NaN();
        while (b - a > tol) {
            const double m = a + 0.5 * (b - a);
            if (m <= a || m >= b) break;
            const double fm = P(m);
            if (fm == 0.0) {
                root = m;
                break;
            }
            if (sgn(fm) == sgn(fa)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        if (std::isnan(root)) {
            root = a + 0.5 * (b - a);
            double f = P(root);
            for (int step = 0; step < 3 && f != 0.0; ++step) {
                const double d = charpoly_derivative(params, T, root);
                if (d == 0.0 || !std::isfinite(d)) break;
                const double next = root - f / d;
                if (!(next >= a && next <= b)) break;
                const double fn = P(next);
                if (std::abs(fn) >= std::abs(f)) break;
                root = next;
                f = fn;
            }
        }
        roots.push_back(root);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() && std::abs(r - merged.back()) <= 2.0 * tol) {
            if (r == 0.0) merged.back() = 0.0;
            continue;
        }
        merged.push_back(r);
    }
    for (double& r : merged) {
        if (std::abs(r) <= 2.0 * tol) r = 0.0;
    }
    return merged;
}

std::string to_string(SignClass s) {
    switch (s) {
        case SignClass::below_minus_cI: return "negative_below_minus_c_I";
        case SignClass::between: return "negative_above_minus_c_I";
        case SignClass::zero: return "zero";
        case SignClass::positive: return "positive";
    }
    return "?";
}

SignClass sign_class(double lambda, double c_I, double zero_tol) {
    if (std::abs(lambda) <= zero_tol) return SignClass::zero;
    if (lambda > 0.0) return SignClass::positive;
    if (lambda < -c_I) return SignClass::below_minus_cI;
    return SignClass::between;
}

std::string SignPattern::label() const {
    std::string out;
    auto symbol = [](SignClass s) -> const char* {
        switch (s) {
            case SignClass::zero: return "0";
            case SignClass::positive: return "+";
            default: return "-";
        }
    };
    bool in_group = false;
    bool first = true;
    for (const auto& e : entries) {
        if (e.optional && !in_group) {
            if (!first) out += ", ";
            out += "(";
            in_group = true;
        } else if (!e.optional && in_group) {
            out += "), ";
            in_group = false;
        } else if (!first) {
            out += ", ";
        }
        out += symbol(e.cls);
        first = false;
    }
    if (in_group) out += ")";
    return out;
}

bool SignPattern::admits(std::span<const double> real_eigenvalues, double c_I,
                         double zero_tol) const {
    int want[4] = {0, 0, 0, 0};
    int optional_below = 0;
    for (const auto& e : entries) {
        if (e.optional) {
            ++optional_below;
        } else {
            ++want[static_cast<int>(e.cls)];
        }
    }
    int got[4] = {0, 0, 0, 0};
    for (double v : real_eigenvalues) ++got[static_cast<int>(sign_class(v, c_I, zero_tol))];
    const int zero = static_cast<int>(SignClass::zero);
    got[zero] = got[zero] > 0 ? 1 : 0;

    const int below = static_cast<int>(SignClass::below_minus_cI);
    for (int k = 0; k < 4; ++k) {
        if (k == below) continue;
        if (got[k] != want[k]) return false;
    }
    return got[below] == want[below] || got[below] == want[below] + optional_below;
}

RegimeKey regime_key(const ModelParams& params, double T) {
    const double c_I = derived_rates(params).c_I;
    const double k = params.beta * T * params.p;
    RegimeKey key;
    key.n_I_even = params.n_I % 2 == 0;
    const double lhs = c_I * c_I - params.c * c_I;
    const double tol = kClassTolerance * std::max({c_I * c_I, params.c * c_I, std::abs(k)});
    key.curvature_sign = std::abs(lhs - k) <= tol ? 0 : sgn(lhs - k);
    switch (classify(params, T).kind) {
        case Regime::definite: key.threshold_sign = 1; break;
        case Regime::indefinite: key.threshold_sign = -1; break;
        case Regime::critical: key.threshold_sign = 0; break;
    }
    return key;
}

SignPattern predicted_sign_pattern(const ModelParams& params, double T) {
    require_valid(params);
    require_no_eclipse(params, "predicted_sign_pattern");
    const RegimeKey key = regime_key(params, T);
    SignPattern out;
    out.table = key.n_I_even ? 1 : 2;
    out.row = key.threshold_sign + 1;       // −1 → 0 (c smaller), 0 → 1, +1 → 2
    out.column = 1 - key.curvature_sign;  // +1 → 0, 0 → 1, −1 → 2

    auto& e = out.entries;
    using S = SignClass;
    if (key.n_I_even) {
        if (out.column == 2) {
            e.push_back({S::below_minus_cI, true});
            e.push_back({S::below_minus_cI, true});
        }
    } else {
        e.push_back({S::below_minus_cI, false});
    }
    if (out.row == 2) e.push_back({S::between, false});
    e.push_back({S::zero, false});
    if (out.row == 0) e.push_back({S::positive, false});
    return out;
}

std::vector<std::complex<double>> full_spectrum_numeric(const ModelParams& params, double T) {
    const SystemMatrix A = assemble_A(params, T);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A.entries, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<std::complex<double>> nontrivial_spectrum(const ModelParams& params, double T) {
    const SystemMatrix A = assemble_A(params, T);
    const int m = A.n() - 1;
    Eigen::EigenSolver<Eigen::MatrixXd> es(A.entries.topLeftCorner(m, m), false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Eigen::VectorXd eigenvector(const ModelParams& params, double T, double lambda, double V_scale) {
    require_valid(params);
    require_no_eclipse(params, "eigenvector");
    if (V_scale == 0.0) throw std::domain_error("eigenvector: V_scale must be nonzero");
    const double c_I = derived_rates(params).c_I;
    if (std::abs(c_I + lambda) <= 1e-14 * c_I) {
        throw std::domain_error("eigenvector: lambda = -c_I is a pole of the formula");
    }
    const int n = params.n_I;
    const double bt_v = params.beta * T * V_scale;
    Eigen::VectorXd v(n + 2);
    v[n] = V_scale;
    if (std::abs(lambda) <= 1e-12 * (c_I + params.c)) {
        if (params.v_a == 0.0) {
            throw std::domain_error("eigenvector: the lambda = 0 formula needs v_a != 0");
        }
        for (int k = 0; k < n; ++k) v[k] = bt_v / c_I;
        v[n + 1] = (params.beta * T * params.p * params.tau_I - params.c) * V_scale / (-params.v_a);
    } else {
        double denom = c_I + lambda;
        double ratio = 1.0;
        for (int k = 0; k < n; ++k) {
            v[k] = ratio * bt_v / denom;
            ratio *= c_I;
            denom *= (c_I + lambda);
        }
        v[n + 1] = 0.0;
    }
    return v;
}

int geometric_multiplicity(const Eigen::MatrixXd& A, double lambda) {
    const Eigen::Index n = A.rows();
    const Eigen::MatrixXd shifted = A - lambda * Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    if (smax == 0.0) return static_cast<int>(n);
    const double cut = 1e-8 * smax;
    if (s[s.size() - 1] > cut) {
        throw std::domain_error("geometric_multiplicity: lambda is not an eigenvalue");
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) rank += s[i] > cut;
    return static_cast<int>(n) - rank;
}

int geometric_multiplicity(const SystemMatrix& A, double lambda) {
    return geometric_multiplicity(A.entries, lambda);
}

int algebraic_multiplicity(const ModelParams& params, double T, double lambda) {
    require_valid(params);
    require_no_eclipse(params, "algebraic_multiplicity");
    const int degree = params.n_I + 2;
    const double h = 1e-3 * std::max(1.0, std::abs(lambda));
    constexpr double kDerivTol = 1e-8;
    for (int m = 1; m < degree; ++m) {
        const double coarse = central_difference(params, T, lambda, h, m) / std::pow(h, m);
        const double fine =
            central_difference(params, T, lambda, 0.5 * h, m) / std::pow(0.5 * h, m);
        const double deriv = (4.0 * fine - coarse) / 3.0;
        const double scale = stencil_scale(params, T, lambda, h, m);
        if (std::abs(deriv) * std::pow(h, m) > kDerivTol * scale) return m;
    }
    return degree;
}

EigenspaceDecomposition eigenspace_decomposition(const ModelParams& params, double T) {
    require_valid(params);
    require_no_eclipse(params, "eigenspace_decomposition");
    const SystemMatrix A = assemble_A(params, T);
    const double norm = inf_norm(A.entries);
    const double zero_tol = 1e-8 * norm;
    const int n = A.n();

    std::vector<double> reals{0.0};  // the zero W row contributes an exact 0
    std::vector<std::complex<double>> upper;
    for (auto z : nontrivial_spectrum(params, T)) {
        if (is_real(z, norm)) {
            reals.push_back(std::abs(z.real()) <= zero_tol ? 0.0 : z.real());
        } else if (z.imag() > 0.0) {
            upper.push_back(z);
        }
    }

    EigenspaceDecomposition out;
    const Eigen::MatrixXcd Ac = A.entries.cast<std::complex<double>>();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& cluster : cluster_real(reals, zero_tol)) {
        const double value = std::abs(cluster.value) <= zero_tol ? 0.0 : cluster.value;
        // Eigenvector first, then the rest of the generalized eigenspace.
        Eigen::MatrixXcd shifted = Ac - value * I;
        std::vector<Eigen::VectorXd> basis{real_direction(null_vectors(shifted, 1).front())};
        if (cluster.count > 1) {
            Eigen::MatrixXcd power = shifted;
            for (int k = 1; k < cluster.count; ++k) power = power * shifted;
            for (const auto& g : null_vectors(power, cluster.count)) {
                Eigen::VectorXd v = real_direction(g);
                for (const auto& b : basis) v -= v.dot(b) * b;
                if (v.norm() > 1e-6 && static_cast<int>(basis.size()) < cluster.count) {
                    basis.push_back(v / v.norm());
                }
            }
        }
        for (auto& b : basis) {
            if (value == 0.0) {
                out.zero.push_back(b);
            } else if (value < 0.0) {
                out.negative_values.push_back(value);
                out.negative.push_back(b);
            } else {
                out.positive_values.push_back(value);
                out.positive.push_back(b);
            }
        }
    }
    for (auto z : upper) {
        const Eigen::VectorXcd v = null_vectors(Ac - z * I, 1).front();
        out.complex_pairs.push_back({z.real(), {v.real(), v.imag()}});
    }
    return out;
}

SpectrumReport analyze(const ModelParams& params, double T, const AnalysisOptions& opts) {
    require_valid(params);
    SpectrumReport rep;
    rep.T = T;
    rep.analytic = params.n_E == 0;
    rep.classification = classify(params, T);
    rep.regime = regime_key(params, T);
    rep.spectrum = full_spectrum_numeric(params, T);

    const SystemMatrix A = assemble_A(params, T);
    const double norm = inf_norm(A.entries);
    const double zero_tol = 1e-8 * norm;
    const double c_I = derived_rates(params).c_I;

    int nonreal = 0;
    std::vector<double> numeric_reals{0.0};
    for (auto z : nontrivial_spectrum(params, T)) {
        if (is_real(z, norm)) {
            numeric_reals.push_back(std::abs(z.real()) <= zero_tol ? 0.0 : z.real());
        } else {
            ++nonreal;
        }
    }
    rep.complex_pair_count = nonreal / 2;

    if (rep.analytic) {
        require_nonnegative_T(T, "analyze");
        const double tol = opts.root_tol > 0.0
                               ? opts.root_tol
                               : 1e-13 * std::max(1.0, params.c + c_I + params.beta * T * params.p);
        rep.predicted_pattern = predicted_sign_pattern(params, T);
        rep.quadratic = quadratic_roots(params, T);
        rep.critical = critical_points(params, T);
        for (double root : real_roots(params, T, tol)) {
            RealEigenvalue ev;
            ev.value = root;
            ev.cls = sign_class(root, c_I, 0.0);
            ev.algebraic_multiplicity = algebraic_multiplicity(params, T, root);
            ev.geometric_multiplicity = geometric_multiplicity(A, root);
            const bool pole = std::abs(c_I + root) <= 1e-14 * c_I;
            const bool zero_without_advection = root == 0.0 && params.v_a == 0.0;
            if (!pole && !zero_without_advection) {
                ev.eigenvector = eigenvector(params, T, root, 1.0);
            } else {
                Eigen::MatrixXcd shifted = A.entries.cast<std::complex<double>>() -
                                           std::complex<double>(root) *
                                               Eigen::MatrixXcd::Identity(A.n(), A.n());
                ev.eigenvector = real_direction(null_vectors(shifted, 1).front());
            }
            rep.real_eigenvalues.push_back(std::move(ev));
        }
        const auto spaces = eigenspace_decomposition(params, T);
        rep.dim_negative = static_cast<int>(spaces.negative.size());
        rep.dim_positive = static_cast<int>(spaces.positive.size());
        rep.dim_zero = static_cast<int>(spaces.zero.size());
    } else {
        for (const auto& cluster : cluster_real(numeric_reals, zero_tol)) {
            RealEigenvalue ev;
            ev.value = std::abs(cluster.value) <= zero_tol ? 0.0 : cluster.value;
            ev.cls = sign_class(ev.value, c_I, 0.0);
            ev.algebraic_multiplicity = cluster.count;
            ev.geometric_multiplicity = geometric_multiplicity(A, ev.value);
            Eigen::MatrixXcd shifted = A.entries.cast<std::complex<double>>() -
                                       std::complex<double>(ev.value) *
                                           Eigen::MatrixXcd::Identity(A.n(), A.n());
            ev.eigenvector = real_direction(null_vectors(shifted, 1).front());
            if (ev.value < 0.0) rep.dim_negative += cluster.count;
            if (ev.value > 0.0) rep.dim_positive += cluster.count;
            if (ev.value == 0.0) rep.dim_zero += cluster.count;
            rep.real_eigenvalues.push_back(std::move(ev));
        }
    }
    return rep;
}

nlohmann::json to_json(const SignPattern& pattern) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : pattern.entries) {
        entries.push_back({{"class", to_string(e.cls)}, {"optional", e.optional}});
    }
    return {{"table", pattern.table},
            {"row", pattern.row},
            {"column", pattern.column},
            {"label", pattern.label()},
            {"entries", entries}};
}

nlohmann::json to_json(const SpectrumReport& report) {
    nlohmann::json j;
    j["analytic"] = report.analytic;
    if (!report.analytic) {
        j["notice"] = "n_E > 0: numeric spectrum only, no analytic root classification";
    }
    j["T"] = report.T;
    j["T_star"] = report.classification.T_star;
    j["classification"] = to_string(report.classification.kind);
    j["margin"] = report.classification.margin;
    j["regime"] = {{"n_I_parity", report.regime.n_I_even ? "even" : "odd"},
                   {"curvature_sign", report.regime.curvature_sign},
                   {"threshold_sign", report.regime.threshold_sign}};
    j["predicted_pattern"] =
        report.predicted_pattern ? to_json(*report.predicted_pattern) : nlohmann::json(nullptr);
    j["quadratic_roots"] = report.quadratic
                               ? nlohmann::json::array({report.quadratic->lo, report.quadratic->hi})
                               : nlohmann::json(nullptr);
    j["critical_points"] = report.critical;

    nlohmann::json reals = nlohmann::json::array();
    for (const auto& ev : report.real_eigenvalues) {
        std::vector<double> vec(ev.eigenvector.data(), ev.eigenvector.data() + ev.eigenvector.size());
        reals.push_back({{"value", ev.value},
                         {"sign_class", to_string(ev.cls)},
                         {"algebraic_multiplicity", ev.algebraic_multiplicity},
                         {"geometric_multiplicity", ev.geometric_multiplicity},
                         {"eigenvector", vec}});
    }
    j["real_eigenvalues"] = reals;
    int positive = 0;
    for (const auto& ev : report.real_eigenvalues) positive += ev.cls == SignClass::positive;
    j["n_positive"] = positive;

    nlohmann::json spec = nlohmann::json::array();
    for (auto z : report.spectrum) spec.push_back({z.real(), z.imag()});
    j["spectrum"] = spec;
    j["complex_pair_count"] = report.complex_pair_count;
    j["eigenspaces"] = {{"negative", report.dim_negative},
                        {"positive", report.dim_positive},
                        {"zero", report.dim_zero},
                        {"complex_pairs", report.complex_pair_count}};
    return j;
}

}  // namespace flukin
