#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "segstd/records.hpp"
#include "segstd/table.hpp"

namespace segstd {

// Blueprint for one synthetic labor market. The generator builds a basic
// table with the requested marginals and odds ratio, gives every category
// on the same side of the gender split the same female share, and samples
// workers from it.
struct CountrySpec {
    std::string country;
    int year = 2000;
    std::int64_t workers = 0;      // > 0
    double female_share = 0;       // F/N, in (0,1)
    double female_occ_share = 0;   // N_f/N, workforce share of the female-side categories, in (0,1)
    double odds_ratio = 1;         // target basic-table odds ratio, > 0
    int female_categories = 4;     // >= 1
    int male_categories = 8;       // >= 1
    // Optional lumpy sector: the first female-side category alone holds
    // this share of the whole workforce (must be <= female_occ_share).
    std::optional<double> lumpy_share;
};

struct SimulationSpec {
    std::vector<CountrySpec> countries;
};

// What the generator promised and what it actually produced.
struct CountryTruth {
    PopulationKey key;
    OccupationTable intended;  // exact masses realizing the spec
    Table2x2 intended_basic;   // the basic table the spec encodes
    OccupationTable realized;  // tally of the emitted records
};

// Sample every country of the spec, streaming records into `sink` in a
// deterministic order for a fixed seed. Throws InfeasibleSpec for
// impossible blueprints.
std::vector<CountryTruth> simulate_countries(
    const SimulationSpec& spec, std::uint64_t seed,
    const std::function<void(const WorkerRecord&)>& sink);

struct SimulationOutput {
    std::vector<WorkerRecord> records;
    std::vector<CountryTruth> truth;
};

// Convenience wrapper that collects the records in memory.
SimulationOutput simulate_countries(const SimulationSpec& spec, std::uint64_t seed);

// Load a spec from JSON: {"countries": [{"country": "A", "year": 2000,
// "workers": 100000, "female_share": 0.45, "female_occ_share": 0.4,
// "odds_ratio": 6.0, "female_categories": 4, "male_categories": 8,
// "lumpy_share": 0.3}, ...]}. year and the category counts are optional.
// Throws Error on malformed JSON, InfeasibleSpec on bad values.
SimulationSpec load_simulation_spec(std::istream& src);

}  // namespace segstd
