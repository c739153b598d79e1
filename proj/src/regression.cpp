#include "segstd/regression.hpp"

#include <algorithm>
#include <cmath>

#include "segstd/errors.hpp"

namespace segstd {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m, double det) {
    const auto cof = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    Mat3 inv;
    inv[0][0] = cof(1, 2, 1, 2) / det;
    inv[0][1] = -cof(0, 2, 1, 2) / det;
    inv[0][2] = cof(0, 1, 1, 2) / det;
    inv[1][0] = -cof(1, 2, 0, 2) / det;
    inv[1][1] = cof(0, 2, 0, 2) / det;
    inv[1][2] = -cof(0, 1, 0, 2) / det;
    inv[2][0] = cof(1, 2, 0, 1) / det;
    inv[2][1] = -cof(0, 2, 0, 1) / det;
    inv[2][2] = cof(0, 1, 0, 1) / det;
    return inv;
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Vec3 matvec(const Mat3& a, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += a[i][j] * v[j];
    return r;
}

double row_norm(const Mat3& m, int i) {
    return std::sqrt(m[i][0] * m[i][0] + m[i][1] * m[i][1] + m[i][2] * m[i][2]);
}

}  // namespace

RegressionFit regress_quadratic(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 4) throw TooFewPoints("regress_quadratic: need at least 4 points");

    double xbar = 0;
    for (const auto& [x, y] : points) xbar += x;
    xbar /= static_cast<double>(n);

    // Moment matrix of (1, z, z^2) with z = x - xbar, and its y-moments.
    Mat3 m{};
    Vec3 b{};
    for (const auto& [x, y] : points) {
        const double z = x - xbar;
        const double z2 = z * z;
        m[0][0] += 1;
        m[0][1] += z;
        m[0][2] += z2;
        m[1][2] += z * z2;
        m[2][2] += z2 * z2;
        b[0] += y;
        b[1] += z * y;
        b[2] += z2 * y;
    }
    m[1][0] = m[0][1];
    m[1][1] = m[0][2];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];

    const double det = det3(m);
    const double scale = row_norm(m, 0) * row_norm(m, 1) * row_norm(m, 2);
    if (!(std::abs(det) > 1e-12 * scale))
        throw RankDeficient("regress_quadratic: design matrix is numerically singular");

    const Mat3 minv = inverse3(m, det);
    const Vec3 gamma = matvec(minv, b);

    // Residuals, fit quality, and the HC1 meat in centered coordinates.
    Mat3 meat{};
    double ssr = 0, sst = 0;
    const double ybar = b[0] / static_cast<double>(n);
    for (const auto& [x, y] : points) {
        const double z = x - xbar;
        const double e = y - (gamma[0] + gamma[1] * z + gamma[2] * z * z);
        const double e2 = e * e;
        const Vec3 u{1, z, z * z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) meat[i][j] += e2 * u[i] * u[j];
        ssr += e2;
        sst += (y - ybar) * (y - ybar);
    }

    Mat3 cov_gamma = matmul(matmul(minv, meat), minv);
    const double dof = static_cast<double>(n) / static_cast<double>(n - 3);

    // Map back to raw coordinates: beta = A gamma, cov_beta = A cov A'.
    const Mat3 a{{{1, -xbar, xbar * xbar}, {0, 1, -2 * xbar}, {0, 0, 1}}};
    Mat3 at{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) at[i][j] = a[j][i];
    const Mat3 cov_beta = matmul(matmul(a, cov_gamma), at);
    const Vec3 beta = matvec(a, gamma);

    RegressionFit fit{};
    fit.n = n;
    for (int i = 0; i < 3; ++i) {
        fit.coefficients[i] = beta[i];
        fit.robust_ses[i] = std::sqrt(std::max(0.0, cov_beta[i][i] * dof));
    }
    fit.r_squared = sst == 0 ? 0.0 : std::clamp(1.0 - ssr / sst, 0.0, 1.0);
    return fit;
}

}  // namespace segstd
