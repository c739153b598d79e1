#include "segstd/country.hpp"

#include <cmath>
#include <ostream>
#include <utility>

#include "segstd/csv.hpp"

namespace segstd {

Scenario make_scenario(std::string name, double row_female, double col_female) {
    if (name.empty()) throw std::invalid_argument("make_scenario: empty name");
    return Scenario{std::move(name), TargetMarginals::from_shares(row_female, col_female)};
}

Scenario uniform_scenario() {
    return Scenario{"uniform", TargetMarginals::uniform()};
}

const std::vector<Scenario>& preset_scenarios() {
    static const std::vector<Scenario> presets = {
        make_scenario("uganda", 0.79, 0.45),
        make_scenario("bolivia", 0.41, 0.40),
        make_scenario("switzerland", 0.43, 0.42),
    };
    return presets;
}

std::optional<Scenario> find_preset(std::string_view name) {
    for (const auto& p : preset_scenarios())
        if (p.name == name) return p;
    return std::nullopt;
}

std::vector<CountryResult> compute_results(const std::map<PopulationKey, OccupationTable>& tables,
                                           const std::vector<Scenario>& scenarios,
                                           const IpfSettings& settings) {
    std::vector<CountryResult> out;
    out.reserve(tables.size());
    for (const auto& [key, table] : tables) {
        const Classification cls = basic_classification(table);
        std::map<std::string, StandardizedId> sids;
        for (const auto& sc : scenarios)
            sids.emplace(sc.name, standardized_id(cls.basic, sc.targets, settings));
        auto [mm_value, mm_diag] = mm_measure(table);
        out.push_back(CountryResult{key.country, key.year, table, marginal_shares(cls.basic),
                                    dissimilarity_2x2(cls.basic), conventional_id(table),
                                    std::move(sids), mm_value, mm_diag, std::nullopt});
    }
    return out;
}

JoinOutcome join_covariates(std::vector<CountryResult> results,
                            const std::vector<CountryCovariates>& covariates) {
    std::map<PopulationKey, double> gdp;
    for (const auto& c : covariates)
        if (!gdp.emplace(PopulationKey{c.country, c.year}, c.gdp_pc).second)
            throw DuplicateCovariate("duplicate covariate row for " +
                                     PopulationKey{c.country, c.year}.str());

    JoinOutcome out;
    for (auto& r : results) {
        const auto it = gdp.find(PopulationKey{r.country, r.year});
        if (it == gdp.end()) {
            out.unmatched.push_back(PopulationKey{r.country, r.year});
            continue;
        }
        r.log_gdp_pc = std::log(it->second);
        out.results.push_back(std::move(r));
    }
    return out;
}

void write_country_results(std::ostream& out, std::span<const CountryResult> results, int sig) {
    std::vector<std::string> names;
    if (!results.empty())
        for (const auto& [name, sid] : results.front().sids) names.push_back(name);
    for (const auto& r : results) {
        bool same = r.sids.size() == names.size();
        for (const auto& name : names) same = same && r.sids.count(name);
        if (!same)
            throw std::invalid_argument("write_country_results: results carry different scenario sets");
    }

    out << "country,year,log_gdp_pc,female_share_workforce,share_in_female_categories,"
           "crude_id,conventional_id,mm_value,mm_mismatch_share";
    for (const auto& name : names) out << ",sid_" << name;
    out << '\n';
    for (const auto& r : results) {
        out << r.country << ',' << r.year << ',';
        if (r.log_gdp_pc) out << format_g(*r.log_gdp_pc, sig);
        out << ',' << format_g(r.marginals.col_female_share, sig) << ','
            << format_g(r.marginals.row_female_share, sig) << ','
            << format_g(r.crude_id, sig) << ',' << format_g(r.conventional_id, sig) << ','
            << format_g(r.mm_value, sig) << ',' << format_g(r.mm_diagnostics.mismatch_share, sig);
        for (const auto& name : names) out << ',' << format_g(r.sids.at(name).value, sig);
        out << '\n';
    }
}

}  // namespace segstd
