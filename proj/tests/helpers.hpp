#pragma once

#include <random>
#include <vector>

#include "segstd/classify.hpp"
#include "segstd/ipf.hpp"
#include "segstd/table.hpp"

// Shared generators for the property tests. Every test seeds its own
// engine so failures reproduce.

inline double urand(std::mt19937& g, double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(g);
}

inline segstd::Table2x2 random_positive_table(std::mt19937& g, double lo = 0.05, double hi = 10.0) {
    return {urand(g, lo, hi), urand(g, lo, hi), urand(g, lo, hi), urand(g, lo, hi)};
}

inline segstd::Table2x2 random_symmetric_table(std::mt19937& g) {
    const double diag = urand(g, 0.05, 10.0);
    const double off = urand(g, 0.05, 10.0);
    return {diag, off, off, diag};
}

inline segstd::TargetMarginals random_targets(std::mt19937& g) {
    return segstd::TargetMarginals::from_shares(urand(g, 0.1, 0.9), urand(g, 0.1, 0.9));
}

// k x 2 occupation table with integer-ish masses; when `with_ties` some
// rows share the composition of earlier rows (engineered cutoff ties).
inline segstd::OccupationTable random_occupation_table(std::mt19937& g, int k, bool with_ties) {
    std::vector<segstd::OccupationRow> rows;
    rows.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        // row 0 keeps both sexes populated so F > 0 and M > 0
        double f = std::floor(urand(g, i == 0 ? 1.0 : 0.0, 200.0));
        double m = std::floor(urand(g, i == 0 ? 1.0 : 0.0, 200.0));
        if (f == 0 && m == 0) f = 1;
        if (with_ties && i > 0 && urand(g, 0, 1) < 0.3) {
            // same composition as a previous row, doubled mass
            const auto& prev = rows[static_cast<std::size_t>(
                std::uniform_int_distribution<int>(0, i - 1)(g))];
            f = prev.f * 2;
            m = prev.m * 2;
        }
        rows.push_back({"c" + std::to_string(i), f, m});
    }
    return segstd::OccupationTable(std::move(rows));
}
