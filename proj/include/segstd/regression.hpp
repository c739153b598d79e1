#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>

namespace segstd {

struct RegressionFit {
    std::array<double, 3> coefficients;  // intercept, linear, quadratic
    std::array<double, 3> robust_ses;    // HC1 standard errors, same order
    double r_squared;                    // 1 - SSR/SST, 0 when SST = 0
    std::size_t n;
};

// OLS for y = b0 + b1 x + b2 x^2 with HC1 heteroskedasticity-robust
// standard errors ((X'X)^-1 X'diag(e^2)X (X'X)^-1 scaled by n/(n-3)).
// Solved by normal equations after centering x, which keeps the 3x3 solve
// well conditioned for x far from 0. Throws TooFewPoints for n < 4 and
// RankDeficient when the centered design is numerically singular (e.g. all
// x equal).
RegressionFit regress_quadratic(std::span<const std::pair<double, double>> points);

}  // namespace segstd
