#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "segstd/errors.hpp"
#include "segstd/regression.hpp"

using namespace segstd;

namespace {

using Points = std::vector<std::pair<double, double>>;

// Reference fit straight from the raw normal equations, Gauss-Jordan with
// partial pivoting. Deliberately a different code path from the library's
// centered solve.
struct RawFit {
    std::array<double, 3> beta;
    std::array<double, 3> se;
};

std::array<std::array<double, 3>, 3> invert3(std::array<std::array<double, 3>, 3> a) {
    std::array<std::array<double, 3>, 3> inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double p = a[col][col];
        for (int c = 0; c < 3; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (int c = 0; c < 3; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

RawFit raw_hc1_fit(const Points& pts) {
    const std::size_t n = pts.size();
    std::array<std::array<double, 3>, 3> xtx{};
    std::array<double, 3> xty{};
    for (const auto& [x, y] : pts) {
        const std::array<double, 3> row{1.0, x, x * x};
        for (int i = 0; i < 3; ++i) {
            xty[i] += row[i] * y;
            for (int j = 0; j < 3; ++j) xtx[i][j] += row[i] * row[j];
        }
    }
    const auto inv = invert3(xtx);
    RawFit fit{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) fit.beta[i] += inv[i][j] * xty[j];

    std::array<std::array<double, 3>, 3> meat{};
    for (const auto& [x, y] : pts) {
        const std::array<double, 3> row{1.0, x, x * x};
        const double e = y - (fit.beta[0] + fit.beta[1] * x + fit.beta[2] * x * x);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) meat[i][j] += e * e * row[i] * row[j];
    }
    const double dof = static_cast<double>(n) / (static_cast<double>(n) - 3.0);
    for (int i = 0; i < 3; ++i) {
        double v = 0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) v += inv[i][j] * meat[j][k] * inv[k][i];
        fit.se[i] = std::sqrt(std::max(0.0, v * dof));
    }
    return fit;
}

}  // namespace

TEST_CASE("an exact quadratic is recovered with zero residual") {
    Points pts;
    for (int i = 0; i < 12; ++i) {
        const double x = 5.0 + 0.6 * i;
        pts.push_back({x, 2.0 + 3.0 * x - 0.5 * x * x});
    }
    const RegressionFit fit = regress_quadratic(pts);
    CHECK(fit.n == 12);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.coefficients[2] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    for (double se : fit.robust_ses) CHECK(std::abs(se) <= 1e-8);
}

TEST_CASE("a constant outcome fits with zero slope and zero r-squared") {
    Points pts;
    for (int i = 0; i < 9; ++i) pts.push_back({1.0 + i, 4.25});
    const RegressionFit fit = regress_quadratic(pts);
    CHECK(fit.coefficients[0] == doctest::Approx(4.25).epsilon(1e-12));
    CHECK(std::abs(fit.coefficients[1]) <= 1e-12);
    CHECK(std::abs(fit.coefficients[2]) <= 1e-12);
    CHECK(fit.r_squared == 0.0);
}

TEST_CASE("centered solve matches the raw normal equations") {
    std::mt19937 g(501);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 10 + static_cast<int>(g() % 51);
        Points pts;
        for (int i = 0; i < n; ++i) {
            const double x = urand(g, 5, 12);
            const double noise = urand(g, -0.1, 0.1) * (1 + 0.3 * std::abs(x - 8));
            pts.push_back({x, 0.8 - 0.12 * x + 0.004 * x * x + noise});
        }
        const RegressionFit fit = regress_quadratic(pts);
        const RawFit raw = raw_hc1_fit(pts);
        for (int i = 0; i < 3; ++i) {
            const double tol_b = 2e-7 * std::max(1.0, std::abs(raw.beta[i]));
            REQUIRE(std::abs(fit.coefficients[i] - raw.beta[i]) <= tol_b);
            const double tol_s = 2e-7 * std::max(1.0, std::abs(raw.se[i]));
            REQUIRE(std::abs(fit.robust_ses[i] - raw.se[i]) <= tol_s);
        }
        REQUIRE(fit.r_squared >= 0.0);
        REQUIRE(fit.r_squared <= 1.0);
    }
}

TEST_CASE("degenerate designs are rejected") {
    Points same_x;
    for (int i = 0; i < 8; ++i) same_x.push_back({3.0, 1.0 * i});
    CHECK_THROWS_AS(regress_quadratic(same_x), RankDeficient);

    Points two_x;
    for (int i = 0; i < 8; ++i) two_x.push_back({i % 2 ? 3.0 : 5.0, 1.0 * i});
    CHECK_THROWS_AS(regress_quadratic(two_x), RankDeficient);

    const Points three = {{1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(regress_quadratic(three), TooFewPoints);
    CHECK_THROWS_AS(regress_quadratic(Points{}), TooFewPoints);
}
