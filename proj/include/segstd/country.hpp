#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "segstd/metrics.hpp"
#include "segstd/records.hpp"

namespace segstd {

// A named standardization target, e.g. "uniform" or "uganda".
struct Scenario {
    std::string name;
    TargetMarginals targets;
};

// rows (row_female, 1-row_female), columns (col_female, 1-col_female).
Scenario make_scenario(std::string name, double row_female, double col_female);

// The (1/2, 1/2) scenario used by default.
Scenario uniform_scenario();

// Marginal profiles of a poor, a middle-income and a rich country, rounded
// to two decimals: uganda (N_f=0.79, F=0.45), bolivia (0.41, 0.40),
// switzerland (0.43, 0.42).
const std::vector<Scenario>& preset_scenarios();
std::optional<Scenario> find_preset(std::string_view name);

// Everything computed for one population.
struct CountryResult {
    std::string country;
    int year;
    OccupationTable occupation_table;
    MarginalShares marginals;  // of the basic table: (N_f/N, F/N)
    double crude_id;
    double conventional_id;
    std::map<std::string, StandardizedId> sids;  // scenario name -> SID
    double mm_value;
    MMDiagnostics mm_diagnostics;
    std::optional<double> log_gdp_pc;  // set by join_covariates
};

// Compute indices for every population under every scenario. Fails fast on
// the first population/scenario pair that cannot be standardized.
std::vector<CountryResult> compute_results(const std::map<PopulationKey, OccupationTable>& tables,
                                           const std::vector<Scenario>& scenarios,
                                           const IpfSettings& settings = {});

struct JoinOutcome {
    std::vector<CountryResult> results;     // populations with a covariate match
    std::vector<PopulationKey> unmatched;   // populations without one
};

// Inner join on (country, year); sets log_gdp_pc = ln(gdp_pc). Throws
// DuplicateCovariate when two covariate rows share a key.
JoinOutcome join_covariates(std::vector<CountryResult> results,
                            const std::vector<CountryCovariates>& covariates);

// CSV of per-population indices with columns country,year,log_gdp_pc,
// female_share_workforce,share_in_female_categories,crude_id,
// conventional_id,mm_value,mm_mismatch_share,sid_<scenario>... SID columns
// in scenario-name order; all results must share one scenario set. Numbers
// are written with `sig` significant digits.
void write_country_results(std::ostream& out, std::span<const CountryResult> results, int sig);

}  // namespace segstd
