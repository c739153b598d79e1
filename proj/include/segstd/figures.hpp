#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "segstd/country.hpp"

namespace segstd {

// Write the plot-ready CSV behind the cross-country figures: one row per
// population with columns
//   country,year,log_gdp_pc,female_share_workforce,share_in_female_categories,
//   crude_id,sid_<scenario>...
// SID columns appear in scenario-name order; every result must carry the
// same scenario set. log_gdp_pc is left empty when the population was not
// joined with covariates. Values are written with 15 significant digits so
// the file round-trips numerically.
void emit_figure_data(std::span<const CountryResult> results, std::ostream& out);

// Same, to a file; I/O failures are reported as Error with the OS message.
void emit_figure_data(std::span<const CountryResult> results, const std::string& path);

}  // namespace segstd
