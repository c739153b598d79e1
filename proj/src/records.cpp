#include "segstd/records.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "segstd/csv.hpp"
#include "segstd/errors.hpp"

namespace segstd {

bool passes_filters(const WorkerRecord& r, const FilterSettings& f) {
    if (f.working_age && r.age && (*r.age < 15 || *r.age > 64)) return false;
    if (f.employed_only && r.employed && !*r.employed) return false;
    if (f.exclude_group_quarters && r.group_quarters && *r.group_quarters) return false;
    if (f.exclude_armed_forces && r.armed_forces && *r.armed_forces) return false;
    return true;
}

void WorkerAggregator::add(const WorkerRecord& r) {
    ++seen_;
    auto& pop = acc_[PopulationKey{r.country, r.year}];  // seen even if filtered
    if (!passes_filters(r, filters_)) return;
    ++kept_;
    auto& cell = pop[r.category];
    if (r.sex == Sex::Female)
        cell.first += r.weight;
    else
        cell.second += r.weight;
}

std::map<PopulationKey, OccupationTable> WorkerAggregator::finish() const {
    std::map<PopulationKey, OccupationTable> out;
    std::string empty;
    for (const auto& [key, cats] : acc_) {
        double mass = 0;
        std::vector<OccupationRow> rows;
        rows.reserve(cats.size());
        for (const auto& [cat, fm] : cats) {
            rows.push_back(OccupationRow{cat, fm.first, fm.second});
            mass += fm.first + fm.second;
        }
        if (rows.empty() || mass == 0) {
            if (!empty.empty()) empty += ", ";
            empty += key.str();
            continue;
        }
        out.emplace(key, OccupationTable(std::move(rows)));
    }
    if (!empty.empty())
        throw EmptyAfterFilters("no records with positive mass survive the filters for: " +
                                empty);
    return out;
}

namespace {

void require_header(const std::vector<std::string>& fields, const std::string& expected) {
    if (join_csv(fields) != expected)
        throw MalformedRecord(1, "expected header '" + expected + "'");
}

// Reads lines, splits them, and hands them to `row` with a 1-based line
// number; skips blank lines.
template <typename RowFn>
void for_each_row(std::istream& src, const std::string& header, RowFn row) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(src, line)) throw MalformedRecord(1, "empty input, header expected");
    ++lineno;
    require_header(split_csv(line), header);
    while (std::getline(src, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        row(split_csv(line), lineno);
    }
}

WorkerRecord parse_worker(const std::vector<std::string>& f, std::size_t line) {
    if (f.size() != 9) throw MalformedRecord(line, "expected 9 fields, got " + std::to_string(f.size()));
    WorkerRecord r;
    r.country = f[0];
    if (r.country.empty()) throw MalformedRecord(line, "empty country");
    const auto year = parse_int(f[1]);
    if (!year) throw MalformedRecord(line, "bad year '" + f[1] + "'");
    r.year = *year;
    if (f[2] == "F")
        r.sex = Sex::Female;
    else if (f[2] == "M")
        r.sex = Sex::Male;
    else
        throw MalformedRecord(line, "sex must be F or M, got '" + f[2] + "'");
    r.category = f[3];
    if (r.category.empty()) throw MalformedRecord(line, "empty category");
    if (!f[4].empty()) {
        const auto age = parse_int(f[4]);
        if (!age || *age < 0) throw MalformedRecord(line, "bad age '" + f[4] + "'");
        r.age = *age;
    }
    const auto opt_bool = [&](const std::string& s, const char* name) -> std::optional<bool> {
        if (s.empty()) return std::nullopt;
        const auto b = parse_bool01(s);
        if (!b) throw MalformedRecord(line, std::string("bad ") + name + " '" + s + "' (want 0/1)");
        return b;
    };
    r.employed = opt_bool(f[5], "employed");
    r.group_quarters = opt_bool(f[6], "group_quarters");
    r.armed_forces = opt_bool(f[7], "armed_forces");
    if (f[8].empty()) {
        r.weight = 1.0;
    } else {
        const auto w = parse_double(f[8]);
        if (!w || !(*w >= 0) || !std::isfinite(*w))
            throw MalformedRecord(line, "bad weight '" + f[8] + "'");
        r.weight = *w;
    }
    return r;
}

}  // namespace

void ingest_workers_into(std::istream& src, WorkerAggregator& agg) {
    for_each_row(src, "country,year,sex,category,age,employed,group_quarters,armed_forces,weight",
                 [&](const std::vector<std::string>& f, std::size_t line) {
                     agg.add(parse_worker(f, line));
                 });
}

std::map<PopulationKey, OccupationTable> ingest_workers(std::istream& src,
                                                        const FilterSettings& filters) {
    WorkerAggregator agg(filters);
    ingest_workers_into(src, agg);
    return agg.finish();
}

std::vector<CountryCovariates> read_covariates(std::istream& src) {
    std::vector<CountryCovariates> out;
    for_each_row(src, "country,year,gdp_pc", [&](const std::vector<std::string>& f, std::size_t line) {
        if (f.size() != 3) throw MalformedRecord(line, "expected 3 fields, got " + std::to_string(f.size()));
        if (f[0].empty()) throw MalformedRecord(line, "empty country");
        const auto year = parse_int(f[1]);
        if (!year) throw MalformedRecord(line, "bad year '" + f[1] + "'");
        const auto gdp = parse_double(f[2]);
        if (!gdp || !(*gdp > 0) || !std::isfinite(*gdp))
            throw MalformedRecord(line, "gdp_pc must be positive, got '" + f[2] + "'");
        out.push_back(CountryCovariates{f[0], *year, *gdp});
    });
    return out;
}

std::map<PopulationKey, OccupationTable> read_occupation_tables(std::istream& src) {
    std::map<PopulationKey, std::vector<OccupationRow>> rows;
    for_each_row(src, "country,year,category,female_mass,male_mass",
                 [&](const std::vector<std::string>& f, std::size_t line) {
                     if (f.size() != 5)
                         throw MalformedRecord(line, "expected 5 fields, got " + std::to_string(f.size()));
                     if (f[0].empty()) throw MalformedRecord(line, "empty country");
                     const auto year = parse_int(f[1]);
                     if (!year) throw MalformedRecord(line, "bad year '" + f[1] + "'");
                     if (f[2].empty()) throw MalformedRecord(line, "empty category");
                     const auto fm = parse_double(f[3]);
                     const auto mm = parse_double(f[4]);
                     if (!fm || !(*fm >= 0)) throw MalformedRecord(line, "bad female_mass '" + f[3] + "'");
                     if (!mm || !(*mm >= 0)) throw MalformedRecord(line, "bad male_mass '" + f[4] + "'");
                     rows[PopulationKey{f[0], *year}].push_back(OccupationRow{f[2], *fm, *mm});
                 });
    std::map<PopulationKey, OccupationTable> out;
    for (auto& [key, rs] : rows) {
        try {
            out.emplace(key, OccupationTable(std::move(rs)));
        } catch (const std::invalid_argument& e) {
            throw Error("population " + key.str() + ": " + e.what());
        }
    }
    return out;
}

void write_occupation_tables(std::ostream& out,
                             const std::map<PopulationKey, OccupationTable>& tables, int sig) {
    out << "country,year,category,female_mass,male_mass\n";
    for (const auto& [key, table] : tables)
        for (const auto& r : table.rows())
            out << key.country << ',' << key.year << ',' << r.category_id << ','
                << format_g(r.f, sig) << ',' << format_g(r.m, sig) << '\n';
}

}  // namespace segstd
