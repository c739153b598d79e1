#include "segstd/ipf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace segstd {

namespace {

void validate_pair(std::pair<double, double> p, const char* what) {
    if (!(p.first >= 0) || !(p.second >= 0) || !std::isfinite(p.first) || !std::isfinite(p.second))
        throw std::invalid_argument(std::string(what) + ": shares must be non-negative and finite");
    if (std::abs(p.first + p.second - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": shares must sum to 1");
}

}  // namespace

TargetMarginals::TargetMarginals(std::pair<double, double> rows, std::pair<double, double> cols)
    : row_shares(rows), col_shares(cols) {
    validate_pair(rows, "TargetMarginals rows");
    validate_pair(cols, "TargetMarginals columns");
}

TargetMarginals TargetMarginals::uniform() {
    return TargetMarginals({0.5, 0.5}, {0.5, 0.5});
}

TargetMarginals TargetMarginals::from_shares(double row_female, double col_female) {
    return TargetMarginals({row_female, 1.0 - row_female}, {col_female, 1.0 - col_female});
}

bool check_feasibility(const Table2x2& t, const TargetMarginals& targets) {
    const auto mismatched = [](double mass, double target) {
        return (mass == 0) != (target == 0);
    };
    return !mismatched(t.female_occ(), targets.row_shares.first) &&
           !mismatched(t.male_occ(), targets.row_shares.second) &&
           !mismatched(t.women(), targets.col_shares.first) &&
           !mismatched(t.men(), targets.col_shares.second);
}

namespace {

double max_deviation(const Table2x2& t, const TargetMarginals& g) {
    const double dr1 = std::abs(t.female_occ() - g.row_shares.first);
    const double dr2 = std::abs(t.male_occ() - g.row_shares.second);
    const double dc1 = std::abs(t.women() - g.col_shares.first);
    const double dc2 = std::abs(t.men() - g.col_shares.second);
    return std::max({dr1, dr2, dc1, dc2});
}

void fit_rows(Table2x2& t, const TargetMarginals& g) {
    if (const double nf = t.female_occ(); nf > 0) {
        const double k = g.row_shares.first / nf;
        t.ff *= k;
        t.mf *= k;
    }
    if (const double nm = t.male_occ(); nm > 0) {
        const double k = g.row_shares.second / nm;
        t.fm *= k;
        t.mm *= k;
    }
}

void fit_cols(Table2x2& t, const TargetMarginals& g) {
    if (const double f = t.women(); f > 0) {
        const double k = g.col_shares.first / f;
        t.ff *= k;
        t.fm *= k;
    }
    if (const double m = t.men(); m > 0) {
        const double k = g.col_shares.second / m;
        t.mf *= k;
        t.mm *= k;
    }
}

}  // namespace

IpfResult ipf_standardize(const Table2x2& t, const TargetMarginals& targets,
                          const IpfSettings& settings) {
    if (!(settings.tolerance > 0))
        throw std::invalid_argument("ipf_standardize: tolerance must be > 0");
    if (settings.max_iterations < 1)
        throw std::invalid_argument("ipf_standardize: max_iterations must be >= 1");
    if (!check_feasibility(t, targets))
        throw InfeasibleTarget(
            "ipf_standardize: a zero marginal faces a positive target (or vice versa)");

    std::optional<double> or_in;
    if (t.ff > 0 && t.mf > 0 && t.fm > 0 && t.mm > 0) {
        if (const double v = odds_ratio(t); std::isfinite(v) && v > 0) or_in = v;
    }

    Table2x2 work = t.normalized();
    IpfResult res{work, 0, false, max_deviation(work, targets), std::nullopt};

    while (res.max_deviation > settings.tolerance) {
        if (res.iterations >= settings.max_iterations) {
            res.table = work;
            throw NotConverged("ipf_standardize: no convergence after " +
                                   std::to_string(res.iterations) + " iterations",
                               res);
        }
        if (settings.start_with_columns) {
            fit_cols(work, targets);
            fit_rows(work, targets);
        } else {
            fit_rows(work, targets);
            fit_cols(work, targets);
        }
        ++res.iterations;
        res.max_deviation = max_deviation(work, targets);
    }

    res.table = work;
    res.converged = true;
    if (or_in) {
        const double or_out = odds_ratio(res.table);
        res.or_drift = std::abs(or_out - *or_in) / *or_in;
    }
    return res;
}

}  // namespace segstd
