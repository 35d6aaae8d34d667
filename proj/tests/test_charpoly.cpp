#include <doctest.h>

#include <cmath>
#include <random>

#include "flukin/charpoly.hpp"
#include "oracles.hpp"

using namespace flukin;

namespace {

// c_I = 1, c = 3, βT = 1, p = 1, v_a = 1.
ModelParams small(int n_I) {
    ModelParams m;
    m.beta = 1.0;
    m.p = 1.0;
    m.c = 3.0;
    m.n_E = 0;
    m.n_I = n_I;
    m.tau_I = n_I;
    m.v_a = 1.0;
    return m;
}

}  // namespace

TEST_CASE("assembled matrix matches the model equations") {
    const auto A = assemble_A(small(1), 1.0);
    Eigen::Matrix3d expected;
    expected << -1, 1, 0, 1, -3, 1, 0, 0, 0;
    CHECK(A.entries == Eigen::MatrixXd(expected));
    CHECK(A.T_value == 1.0);

    ModelParams m = small(1);
    m.n_E = 1;
    m.tau_E = 0.25;
    const auto B = assemble_A(m, 1.0);
    CHECK(B.n() == 4);
    CHECK(B.entries(1, 0) == 4.0);
    CHECK(B.entries(0, B.row_V()) == 1.0);

    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const ModelParams r = oracle::random_params(rng, k % 4, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const auto S = assemble_A(r, T);
        CHECK(S.entries.row(S.row_W()).isZero(0.0));
        const auto ref = oracle::model_matrix(r, T);
        for (int i = 0; i < S.n(); ++i) {
            for (int j = 0; j < S.n(); ++j) {
                CHECK(S.entries(i, j) == doctest::Approx(static_cast<double>(ref[i][j])).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("characteristic polynomial at worked points") {
    CHECK(charpoly_closed(small(1), 1.0, 1.0) == doctest::Approx(7.0));
    CHECK(charpoly_sum_form(small(1), 1.0, 1.0) == doctest::Approx(7.0));
    CHECK(charpoly_direct(small(1), 1.0, 1.0) == doctest::Approx(7.0));
    CHECK(static_cast<double>(oracle::charpoly(small(1), 1.0, 1.0)) == doctest::Approx(7.0));

    CHECK(charpoly_closed(small(2), 1.0, -1.0) == doctest::Approx(1.0));
    CHECK(charpoly_sum_form(small(2), 1.0, -1.0) == doctest::Approx(1.0));
    CHECK(charpoly_direct(small(2), 1.0, -1.0) == doctest::Approx(1.0));
    CHECK(static_cast<double>(oracle::charpoly(small(2), 1.0, -1.0)) == doctest::Approx(1.0));
}

TEST_CASE("zero is always a root; the sum form is exactly zero there") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        const ModelParams m = oracle::random_params(rng, k % 4, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(m))(rng);
        const double s = charpoly_sum_form(m, T, 0.0);
        CHECK(std::signbit(s) == false);
        CHECK(s == 0.0);
        CHECK(charpoly(m, T, 0.0) == 0.0);
        CHECK(charpoly_closed(m, T, 0.0) == doctest::Approx(0.0));
        CHECK(charpoly_direct(m, T, 0.0) == 0.0);
    }
}

TEST_CASE("closed, sum and determinant forms agree with the extended-precision oracle") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 400; ++k) {
        const ModelParams m = oracle::random_params(rng, k % 4, 1 + (k / 4) % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0 * oracle::threshold(m))(rng);
        const double cE = m.n_E > 0 ? m.n_E / *m.tau_E : 0.0;
        const double reach = 2.0 * (cE + m.n_I / m.tau_I + m.c);
        const double l = std::uniform_real_distribution<double>(-reach, reach)(rng);
        const double ref = static_cast<double>(oracle::charpoly(m, T, l));
        const double tol = 1e-9 * (1.0 + std::abs(ref));
        CHECK(std::abs(charpoly_closed(m, T, l) - ref) <= tol);
        CHECK(std::abs(charpoly_sum_form(m, T, l) - ref) <= tol);
        CHECK(std::abs(charpoly_direct(m, T, l) - ref) <= tol);
    }
}

TEST_CASE("with no eclipse classes the polynomial reduces to the n_E = 0 form") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) {
        const ModelParams m = oracle::random_params(rng, 0, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        const double l = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        const double cI = m.n_I / m.tau_I;
        const double K = m.beta * T * m.p;
        const double expected = std::pow(cI + l, m.n_I) * (m.c + l) * l +
                                K * (std::pow(cI, m.n_I) - std::pow(cI + l, m.n_I));
        CHECK(charpoly_closed(m, T, l) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("det B_k recursion") {
    ModelParams m = small(8);
    m.tau_I = 8.0;  // c_I = 1
    CHECK(detB_recursive(m, 0.0, 2) == doctest::Approx(2.0));
    CHECK(detB_recursive(m, 1.0, 3) == doctest::Approx(7.0));
    CHECK(log_determinant(minor_B(m, 1.0, 3)).value() == doctest::Approx(7.0));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams r = oracle::random_params(rng, 0, 8);
        const double cI = 8.0 / r.tau_I;
        for (int k = 2; k <= 8; ++k) {
            const double at_zero = k * r.p * std::pow(cI, k - 1);
            CHECK(detB_recursive(r, 0.0, k) == doctest::Approx(at_zero).epsilon(1e-12));
            const double l = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
            const Eigen::MatrixXd B = minor_B(r, l, k);
            oracle::Matrix ref(k, std::vector<long double>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) ref[i][j] = B(i, j);
            const double d = static_cast<double>(oracle::determinant(ref));
            CHECK(std::abs(detB_recursive(r, l, k) - d) <= 1e-10 * (1.0 + std::abs(d)));
        }
    }

    CHECK_THROWS_AS(detB_recursive(m, 0.0, 1), std::out_of_range);
    CHECK_THROWS_AS(detB_recursive(m, 0.0, 9), std::out_of_range);
    CHECK_THROWS_AS(detB_recursive(small(1), 0.0, 2), std::out_of_range);
}

TEST_CASE("log-determinant keeps sign and survives large magnitudes") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    m(0, 0) = -2.0;
    const auto d = log_determinant(m);
    CHECK(d.sign == -1);
    CHECK(d.value() == doctest::Approx(-2.0));

    const Eigen::MatrixXd big = 1e200 * Eigen::MatrixXd::Identity(4, 4);
    const auto b = log_determinant(big);
    CHECK(b.sign == 1);
    CHECK(b.log_abs == doctest::Approx(800.0 * std::log(10.0)));

    Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
    CHECK(log_determinant(singular).value() == 0.0);
}

TEST_CASE("charpoly_scale bounds the rounding error of the closed form") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 200; ++k) {
        const ModelParams m = oracle::random_params(rng, k % 4, 1 + k % 6);
        const double T = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        const double l = std::uniform_real_distribution<double>(-4.0, 4.0)(rng);
        const double ref = static_cast<double>(oracle::charpoly(m, T, l));
        CHECK(std::abs(charpoly(m, T, l) - ref) <= 1e-12 * charpoly_scale(m, T, l) + 1e-300);
    }
}
