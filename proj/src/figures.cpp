#include "segstd/figures.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "segstd/csv.hpp"

namespace segstd {

void emit_figure_data(std::span<const CountryResult> results, std::ostream& out) {
    if (results.empty()) throw std::invalid_argument("emit_figure_data: no results");

    std::vector<std::string> scenario_names;
    for (const auto& [name, sid] : results.front().sids) scenario_names.push_back(name);
    for (const auto& r : results) {
        if (r.sids.size() != scenario_names.size())
            throw std::invalid_argument("emit_figure_data: results carry different scenario sets");
        for (const auto& name : scenario_names)
            if (!r.sids.count(name))
                throw std::invalid_argument("emit_figure_data: results carry different scenario sets");
    }

    out << "country,year,log_gdp_pc,female_share_workforce,share_in_female_categories,crude_id";
    for (const auto& name : scenario_names) out << ",sid_" << name;
    out << '\n';

    constexpr int kSig = 15;
    for (const auto& r : results) {
        out << r.country << ',' << r.year << ',';
        if (r.log_gdp_pc) out << format_g(*r.log_gdp_pc, kSig);
        out << ',' << format_g(r.marginals.col_female_share, kSig) << ','
            << format_g(r.marginals.row_female_share, kSig) << ','
            << format_g(r.crude_id, kSig);
        for (const auto& name : scenario_names)
            out << ',' << format_g(r.sids.at(name).value, kSig);
        out << '\n';
    }
}

void emit_figure_data(std::span<const CountryResult> results, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "': " + std::strerror(errno));
    emit_figure_data(results, out);
    out.flush();
    if (!out) throw Error("error writing '" + path + "': " + std::strerror(errno));
}

}  // namespace segstd
