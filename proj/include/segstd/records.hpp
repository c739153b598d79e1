#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "segstd/classify.hpp"

namespace segstd {

enum class Sex { Female, Male };

// One person-level microdata record. Optional fields that are absent mean
// the corresponding sample filter does not apply to this record.
struct WorkerRecord {
    std::string country;
    int year = 0;
    Sex sex = Sex::Female;
    std::string category;
    std::optional<int> age;
    std::optional<bool> employed;
    std::optional<bool> group_quarters;
    std::optional<bool> armed_forces;
    double weight = 1.0;
};

// Which sample restrictions to apply. Each filter only fires when the
// record carries the field it looks at.
struct FilterSettings {
    bool working_age = true;            // keep 15 <= age <= 64
    bool employed_only = true;          // keep employed
    bool exclude_group_quarters = true; // drop group-quarters residents
    bool exclude_armed_forces = true;   // drop armed-forces members
};

bool passes_filters(const WorkerRecord& r, const FilterSettings& f);

struct CountryCovariates {
    std::string country;
    int year = 0;
    double gdp_pc = 0;  // > 0
};

struct PopulationKey {
    std::string country;
    int year = 0;

    auto operator<=>(const PopulationKey&) const = default;
    std::string str() const { return country + ":" + std::to_string(year); }
};

// Streaming weighted aggregation of records into per-population occupation
// tables. Feed records with add(), then call finish() once.
class WorkerAggregator {
public:
    explicit WorkerAggregator(FilterSettings filters = {}) : filters_(filters) {}

    void add(const WorkerRecord& r);

    // Build the occupation tables. Throws EmptyAfterFilters naming every
    // population whose records were all filtered out or add up to zero
    // mass. An empty stream yields an empty map.
    std::map<PopulationKey, OccupationTable> finish() const;

    std::size_t records_seen() const { return seen_; }
    std::size_t records_kept() const { return kept_; }

private:
    FilterSettings filters_;
    std::size_t seen_ = 0;
    std::size_t kept_ = 0;
    // population -> category -> (female mass, male mass)
    std::map<PopulationKey, std::map<std::string, std::pair<double, double>>> acc_;
};

// Parse a workers CSV (header: country,year,sex,category,age,employed,
// group_quarters,armed_forces,weight) and aggregate it. sex is F or M,
// booleans are 0/1, empty optional fields mean "not applicable", empty
// weight defaults to 1. Throws MalformedRecord with a 1-based line number
// on any bad row or header.
std::map<PopulationKey, OccupationTable> ingest_workers(std::istream& src,
                                                        const FilterSettings& filters = {});

// Same, but exposes the aggregator so callers can read the counters.
void ingest_workers_into(std::istream& src, WorkerAggregator& agg);

// Parse a covariates CSV (header: country,year,gdp_pc; gdp_pc > 0).
// Throws MalformedRecord; duplicate keys are left for join_covariates.
std::vector<CountryCovariates> read_covariates(std::istream& src);

// Parse an occupation-table CSV (header: country,year,category,
// female_mass,male_mass) as written by the aggregate subcommand.
std::map<PopulationKey, OccupationTable> read_occupation_tables(std::istream& src);

// Inverse of read_occupation_tables; masses are written with `sig`
// significant digits.
void write_occupation_tables(std::ostream& out,
                             const std::map<PopulationKey, OccupationTable>& tables, int sig);

}  // namespace segstd
