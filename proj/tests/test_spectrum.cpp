#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "flukin/spectrum.hpp"
#include "flukin/validation.hpp"
#include "oracles.hpp"

using namespace flukin;

namespace {

ModelParams make(double c, double tau_I, int n_I, double beta = 1.0, double p = 1.0) {
    ModelParams m;
    m.beta = beta;
    m.p = p;
    m.c = c;
    m.n_E = 0;
    m.n_I = n_I;
    m.tau_I = tau_I;
    m.v_a = 1.0;
    return m;
}

double root_tol(const ModelParams& m, double T) {
    return 1e-13 * std::max(1.0, m.c + m.n_I / m.tau_I + m.beta * T * m.p);
}

std::vector<double> numeric_reals(const ModelParams& m, double T) {
    const double norm = oracle::inf_norm(oracle::model_matrix(m, T));
    std::vector<double> out;
    for (auto z : full_spectrum_numeric(m, T)) {
        if (std::abs(z.imag()) <= 1e-8 * norm) out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("classification by c against βTpτ_I") {
    CHECK(classify(make(3, 2, 2), 1.0).kind == Regime::definite);
    CHECK(classify(make(1, 4, 2), 1.0).kind == Regime::indefinite);
    CHECK(classify(make(2, 2, 2), 1.0).kind == Regime::critical);
    CHECK(classify(make(3, 2, 2), 1.0).T_star == doctest::Approx(1.5));
    CHECK(to_string(Regime::definite) == "Definite");
    CHECK(to_string(Regime::indefinite) == "Indefinite");
    CHECK(to_string(Regime::critical) == "Critical");

    // c c_I = βTp n_I is the same boundary.
    std::mt19937_64 rng(2);
    for (int k = 0; k < 200; ++k) {
        const ModelParams m = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(m))(rng);
        const double cI = m.n_I / m.tau_I;
        const double lhs = m.c * cI, rhs = m.beta * T * m.p * m.n_I;
        if (std::abs(lhs - rhs) < 1e-6 * std::max(lhs, rhs)) continue;
        CHECK((classify(m, T).kind == Regime::definite) == (lhs > rhs));
    }
}

TEST_CASE("roots of λ² + cλ − βTp") {
    auto q = quadratic_roots(make(3, 2, 2), 0.0);
    CHECK(q.lo == doctest::Approx(-3.0));
    CHECK(q.hi == 0.0);
    q = quadratic_roots(make(2, 2, 2, 3.0), 1.0);
    CHECK(q.lo == doctest::Approx(-3.0));
    CHECK(q.hi == doctest::Approx(1.0));

    std::mt19937_64 rng(9);
    for (int k = 0; k < 300; ++k) {
        const ModelParams m = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(1e-3, 2.0 * oracle::threshold(m))(rng);
        const auto r = quadratic_roots(m, T);
        CHECK(r.lo < 0.0);
        CHECK(r.hi > 0.0);
        CHECK(r.hi > -m.n_I / m.tau_I);
    }
}

TEST_CASE("critical points of the n_E = 0 polynomial") {
    const auto pts = critical_points(make(3, 2, 2), 1.0);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == doctest::Approx((-11.0 - std::sqrt(105.0)) / 8.0));
    CHECK(pts[1] == -1.0);
    CHECK(pts[2] == doctest::Approx((-11.0 + std::sqrt(105.0)) / 8.0));

    // c c_I = βTp n_I puts a critical point at zero.
    const auto at = critical_points(make(2, 2, 2), 1.0);
    CHECK(std::any_of(at.begin(), at.end(), [](double x) { return std::abs(x) < 1e-14; }));

    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        const ModelParams m = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(m))(rng);
        const auto cps = critical_points(m, T);
        CHECK(std::is_sorted(cps.begin(), cps.end()));
        for (double x : cps) {
            const double h = std::max(1e-6, 1e-6 * std::abs(x));
            const double d = static_cast<double>((oracle::charpoly(m, T, x + h) - oracle::charpoly(m, T, x - h)) /
                                                 (2.0L * h));
            CHECK(std::abs(d) <= 1e-8 * charpoly_scale(m, T, x) / std::max(1.0, std::abs(x)) + 1e-8);
            CHECK(std::abs(charpoly_derivative(m, T, x)) <= 1e-12 * charpoly_scale(m, T, x) + 1e-14);
        }
        const double l = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        const double h = 1e-5;
        const double fd = static_cast<double>((oracle::charpoly(m, T, l + h) - oracle::charpoly(m, T, l - h)) /
                                              (2.0L * h));
        CHECK(charpoly_derivative(m, T, l) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("real roots: worked cases") {
    // Critical row, even n_I, c_I² − c c_I > βTp: only zero (plus an optional pair below −c_I).
    const ModelParams crit = table_cell_params(2, 1, 0);
    const auto rc = real_roots(crit, 1.0, root_tol(crit, 1.0));
    const double cI = 2.0 / crit.tau_I;
    for (double r : rc) CHECK((r == 0.0 || r < -cI));
    CHECK(std::count(rc.begin(), rc.end(), 0.0) == 1);

    const ModelParams ind = make(1, 4, 2);
    const auto ri = real_roots(ind, 1.0, root_tol(ind, 1.0));
    CHECK(std::count(ri.begin(), ri.end(), 0.0) == 1);
    CHECK(std::count_if(ri.begin(), ri.end(), [](double r) { return r > 0.0; }) == 1);

    const ModelParams def = make(3, 2, 2);
    const auto rd = real_roots(def, 1.0, root_tol(def, 1.0));
    CHECK(std::count(rd.begin(), rd.end(), 0.0) == 1);
    CHECK(std::any_of(rd.begin(), rd.end(), [](double r) { return r > -1.0 && r < 0.0; }));
    CHECK(std::none_of(rd.begin(), rd.end(), [](double r) { return r > 0.0; }));

    CHECK_THROWS_AS(real_roots(def, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("real roots: containment, oracle agreement and positive-root count") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        const ModelParams m = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(m))(rng);
        const auto roots = real_roots(m, T, root_tol(m, T));
        CHECK(std::is_sorted(roots.begin(), roots.end()));
        CHECK(std::count(roots.begin(), roots.end(), 0.0) == 1);
        for (double r : roots) CHECK(std::abs(charpoly_sum_form(m, T, r)) <= 1e-8 * charpoly_scale(m, T, r));

        const int positive = static_cast<int>(std::count_if(roots.begin(), roots.end(), [](double r) { return r > 0.0; }));
        CHECK(positive == (classify(m, T).kind == Regime::indefinite ? 1 : 0));

        const auto reals = numeric_reals(m, T);
        REQUIRE(reals.size() == roots.size());
        for (std::size_t i = 0; i < reals.size(); ++i) CHECK(std::abs(reals[i] - roots[i]) <= 1e-7);

        // −c_I is never a root: P(−c_I) = βTp c_I^{n_I} > 0 for T > 0.
        const double cI = m.n_I / m.tau_I;
        if (T > 0.0) CHECK(charpoly_closed(m, T, -cI) > 0.0);
    }
}

TEST_CASE("predicted sign-table cells") {
    // Even n_I, c > βTpτ_I, c_I² − c c_I < βTp.
    auto pat = predicted_sign_pattern(make(3, 2, 2), 1.0);
    CHECK(pat.table == 1);
    CHECK(pat.label() == "(-, -), -, 0");
    // Odd n_I, c < βTpτ_I.
    for (int column = 0; column < 3; ++column) {
        pat = predicted_sign_pattern(table_cell_params(3, 0, column), 1.0);
        CHECK(pat.table == 2);
        CHECK(pat.label() == "-, 0, +");
    }
    // Even n_I, critical row, c_I² − c c_I > βTp.
    pat = predicted_sign_pattern(table_cell_params(4, 1, 0), 1.0);
    CHECK(pat.label() == "0");

    const std::vector<std::vector<std::string>> table1 = {
        {"0, +", "0, +", "(-, -), 0, +"}, {"0", "0", "(-, -), 0"}, {"-, 0", "-, 0", "(-, -), -, 0"}};
    const std::vector<std::vector<std::string>> table2 = {
        {"-, 0, +", "-, 0, +", "-, 0, +"}, {"-, 0", "-, 0", "-, 0"}, {"-, -, 0", "-, -, 0", "-, -, 0"}};
    for (int n_I : {1, 2, 3, 4, 5, 6}) {
        for (int row = 0; row < 3; ++row) {
            for (int column = 0; column < 3; ++column) {
                const ModelParams m = table_cell_params(n_I, row, column);
                const auto p = predicted_sign_pattern(m, 1.0);
                CHECK(p.row == row);
                CHECK(p.column == column);
                CHECK(p.label() == (n_I % 2 == 0 ? table1 : table2)[row][column]);
            }
        }
    }
}

TEST_CASE("pattern matching allows the optional pair to be absent as a whole") {
    const auto pat = predicted_sign_pattern(make(3, 2, 2), 1.0);
    const double cI = 1.0;
    const std::vector<double> without{-0.5, 0.0};
    const std::vector<double> with{-3.0, -2.0, -0.5, 0.0};
    const std::vector<double> one_only{-3.0, -0.5, 0.0};
    const std::vector<double> positive{-0.5, 0.0, 0.1};
    CHECK(pat.admits(without, cI, 1e-10));
    CHECK(pat.admits(with, cI, 1e-10));
    CHECK_FALSE(pat.admits(one_only, cI, 1e-10));
    CHECK_FALSE(pat.admits(positive, cI, 1e-10));
}

TEST_CASE("numeric spectrum of the 3x3 example") {
    const auto spec = full_spectrum_numeric(make(3, 1, 1), 1.0);
    REQUIRE(spec.size() == 3);
    std::vector<double> re;
    for (auto z : spec) {
        CHECK(std::abs(z.imag()) < 1e-12);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    // λ[(1+λ)(3+λ) − 1] = 0.
    CHECK(re[0] == doctest::Approx(-2.0 - std::sqrt(2.0)));
    CHECK(re[1] == doctest::Approx(-2.0 + std::sqrt(2.0)));
    CHECK(std::abs(re[2]) < 1e-12);

    const auto nt = nontrivial_spectrum(make(3, 1, 1), 1.0);
    CHECK(nt.size() == 2);
}

TEST_CASE("eigenvector formulas") {
    ModelParams m = make(3, 1, 1);
    const Eigen::VectorXd v0 = eigenvector(m, 1.0, 0.0, 1.0);
    REQUIRE(v0.size() == 3);
    CHECK(v0[0] == doctest::Approx(1.0));
    CHECK(v0[1] == 1.0);
    CHECK(v0[2] == doctest::Approx(2.0));

    std::mt19937_64 rng(41);
    for (int k = 0; k < 100; ++k) {
        const ModelParams r = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(r))(rng);
        const auto A = assemble_A(r, T);
        for (double l : real_roots(r, T, root_tol(r, T))) {
            const Eigen::VectorXd v = eigenvector(r, T, l, 1.0);
            CHECK((A.entries * v - l * v).lpNorm<Eigen::Infinity>() <= 1e-8 * v.lpNorm<Eigen::Infinity>());
            if (l != 0.0) CHECK(v[v.size() - 1] == 0.0);
            const Eigen::VectorXd w = eigenvector(r, T, l, 2.0);
            for (Eigen::Index i = 0; i < v.size(); ++i) CHECK(w[i] == 2.0 * v[i]);
        }
    }

    CHECK_THROWS(eigenvector(m, 1.0, -1.0, 1.0));
    CHECK_THROWS(eigenvector(m, 1.0, 0.0, 0.0));
}

TEST_CASE("geometric multiplicity") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 1.0;
    CHECK(geometric_multiplicity(d, 1.0) == 2);
    CHECK(geometric_multiplicity(d, 0.0) == 1);
    CHECK_THROWS_AS(geometric_multiplicity(d, 0.5), std::domain_error);

    std::mt19937_64 rng(43);
    for (int k = 0; k < 100; ++k) {
        const ModelParams r = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(r))(rng);
        const auto A = assemble_A(r, T);
        for (double l : real_roots(r, T, root_tol(r, T))) CHECK(geometric_multiplicity(A, l) == 1);
    }
}

TEST_CASE("algebraic multiplicity") {
    CHECK(algebraic_multiplicity(make(3, 2, 2), 1.0, 0.0) == 1);
    CHECK(algebraic_multiplicity(make(1, 4, 2), 1.0, 0.0) == 1);
    for (int n_I = 1; n_I <= 6; ++n_I) {
        for (int column = 0; column < 3; ++column) {
            CHECK(algebraic_multiplicity(table_cell_params(n_I, 1, column), 1.0, 0.0) == 2);
        }
    }
    const ModelParams m = make(3, 2, 2);
    for (double l : real_roots(m, 1.0, root_tol(m, 1.0))) CHECK(algebraic_multiplicity(m, 1.0, l) == 1);
}

TEST_CASE("eigenspace decomposition and report invariants") {
    const auto def = eigenspace_decomposition(make(3, 2, 2), 1.0);
    CHECK(def.positive.empty());
    CHECK(def.dimension() == 4);
    const auto ind = eigenspace_decomposition(make(1, 4, 2), 1.0);
    CHECK(ind.positive.size() == 1);
    CHECK(ind.dimension() == 4);

    std::mt19937_64 rng(47);
    for (int k = 0; k < 100; ++k) {
        const ModelParams r = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(r))(rng);
        const auto d = eigenspace_decomposition(r, T);
        CHECK(d.dimension() == r.n_I + 2);
        CHECK(d.positive.size() == (classify(r, T).kind == Regime::indefinite ? 1u : 0u));

        const auto rep = analyze(r, T);
        CHECK(rep.analytic);
        int zeros = 0, total = 2 * rep.complex_pair_count;
        for (const auto& e : rep.real_eigenvalues) {
            zeros += e.value == 0.0;
            total += e.algebraic_multiplicity;
        }
        CHECK(zeros == 1);
        CHECK(total == r.n_I + 2);
    }
}

TEST_CASE("eclipse classes give a numeric-only report") {
    ModelParams m = make(3, 2, 2);
    m.n_E = 2;
    m.tau_E = 4.0;
    const auto rep = analyze(m, 1.0);
    CHECK_FALSE(rep.analytic);
    CHECK(rep.spectrum.size() == 6);
    const auto j = to_json(rep);
    CHECK(j.at("analytic") == false);
    CHECK(j.contains("notice"));
}

TEST_CASE("report JSON") {
    const auto j = to_json(analyze(make(3, 2, 2), 1.0));
    CHECK(j.at("classification") == "Definite");
    CHECK(j.at("n_positive") == 0);
    const auto k = to_json(analyze(make(1, 4, 2), 1.0));
    CHECK(k.at("classification") == "Indefinite");
    CHECK(k.at("n_positive") == 1);
    for (const auto& z : k.at("spectrum")) CHECK(z.size() == 2);
}
