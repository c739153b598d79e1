#pragma once

#include <optional>
#include <string>
#include <utility>

#include "segstd/table.hpp"

namespace segstd {

// Target marginal shares for standardization. `row_shares` is the desired
// (female-category, male-category) split of the workforce, `col_shares`
// the desired (women, men) split. Each pair must be non-negative and sum
// to 1 within 1e-12.
struct TargetMarginals {
    std::pair<double, double> row_shares;
    std::pair<double, double> col_shares;

    TargetMarginals(std::pair<double, double> rows, std::pair<double, double> cols);

    // (1/2, 1/2) rows and columns.
    static TargetMarginals uniform();

    // Shorthand: rows (rf, 1-rf), columns (cf, 1-cf).
    static TargetMarginals from_shares(double row_female, double col_female);
};

struct IpfSettings {
    double tolerance = 1e-12;  // max marginal deviation at convergence
    int max_iterations = 10000;
    bool start_with_columns = false;  // fit columns before rows in each sweep
};

struct IpfResult {
    Table2x2 table;        // fitted table, total mass 1
    int iterations = 0;    // full row+column sweeps performed
    bool converged = false;
    double max_deviation = 0;  // largest |marginal - target| at exit
    // Relative drift of the odds ratio through the fit; absent when the
    // input's odds ratio is not finite and positive.
    std::optional<double> or_drift;
};

// Thrown when the iteration cap is reached; carries the partial fit.
struct NotConverged : Error {
    IpfResult partial;
    NotConverged(const std::string& what_, IpfResult partial_)
        : Error(what_), partial(std::move(partial_)) {}
};

// False iff a zero row/column of t faces a positive target share, or a
// positive row/column faces a zero target.
bool check_feasibility(const Table2x2& t, const TargetMarginals& targets);

// Scale rows and columns of t alternately until both marginals match the
// targets within settings.tolerance. The fitted table keeps the input's
// odds ratio (zero cells stay zero). Throws InfeasibleTarget when
// check_feasibility fails, NotConverged past the iteration cap.
IpfResult ipf_standardize(const Table2x2& t, const TargetMarginals& targets,
                          const IpfSettings& settings = {});

}  // namespace segstd
