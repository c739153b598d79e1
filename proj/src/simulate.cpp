#include "segstd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <random>

#include <json.hpp>

#include "segstd/errors.hpp"

namespace segstd {

namespace {

// Share of the workforce in the (female category, female sex) cell of a
// 2x2 table with row share sf, column share phi and odds ratio omega. The
// interior root of (1-w)t^2 + (1 - sf - phi + w(sf+phi))t - w*sf*phi = 0
// always exists for sf, phi in (0,1), omega > 0.
double top_left_share(double sf, double phi, double omega) {
    if (omega == 1.0) return sf * phi;
    const double a = 1.0 - omega;
    const double b = 1.0 - sf - phi + omega * (sf + phi);
    const double c = -omega * sf * phi;
    const double disc = b * b - 4.0 * a * c;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double lo = std::max(0.0, sf + phi - 1.0);
    const double hi = std::min(sf, phi);
    for (const double t : {q / a, c / q})
        if (t > lo && t < hi) return t;
    throw InfeasibleSpec("no interior solution for the requested odds ratio");
}

void validate(const CountrySpec& cs) {
    const auto fail = [&](const std::string& msg) {
        throw InfeasibleSpec("country '" + cs.country + "': " + msg);
    };
    if (cs.country.empty()) fail("empty country code");
    if (cs.workers < 1) fail("workers must be >= 1");
    if (!(cs.female_share > 0 && cs.female_share < 1)) fail("female_share must be in (0,1)");
    if (!(cs.female_occ_share > 0 && cs.female_occ_share < 1))
        fail("female_occ_share must be in (0,1)");
    if (!(cs.odds_ratio > 0) || !std::isfinite(cs.odds_ratio)) fail("odds_ratio must be positive");
    if (cs.female_categories < 1 || cs.male_categories < 1) fail("need >= 1 category per side");
    if (cs.lumpy_share) {
        if (!(*cs.lumpy_share > 0)) fail("lumpy_share must be positive");
        if (*cs.lumpy_share > cs.female_occ_share)
            fail("lumpy_share cannot exceed female_occ_share");
        if (cs.female_categories > 1 && !(*cs.lumpy_share < cs.female_occ_share))
            fail("lumpy_share leaves nothing for the other female categories");
        if (cs.female_categories == 1 && *cs.lumpy_share != cs.female_occ_share)
            fail("with one female category, lumpy_share must equal female_occ_share");
    }
}

std::string category_name(char side, int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%03d", side, i + 1);
    return buf;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<CountryTruth> simulate_countries(
    const SimulationSpec& spec, std::uint64_t seed,
    const std::function<void(const WorkerRecord&)>& sink) {
    for (const auto& cs : spec.countries) validate(cs);

    std::mt19937_64 rng(seed);
    std::vector<CountryTruth> truth;
    truth.reserve(spec.countries.size());

    for (const auto& cs : spec.countries) {
        const double sf = cs.female_occ_share;
        const double phi = cs.female_share;
        const double t = top_left_share(sf, phi, cs.odds_ratio);
        const double p_female_side = t / sf;                  // female share within female categories
        const double p_male_side = (phi - t) / (1.0 - sf);    // ... within male categories

        // Category workforce shares, female side first.
        const int k = cs.female_categories + cs.male_categories;
        std::vector<std::string> names(static_cast<std::size_t>(k));
        std::vector<double> sizes(static_cast<std::size_t>(k));
        for (int i = 0; i < cs.female_categories; ++i) {
            names[i] = category_name('f', i);
            if (cs.lumpy_share)
                sizes[i] = i == 0 ? *cs.lumpy_share
                                  : (sf - *cs.lumpy_share) / (cs.female_categories - 1);
            else
                sizes[i] = sf / cs.female_categories;
        }
        for (int i = 0; i < cs.male_categories; ++i) {
            names[cs.female_categories + i] = category_name('m', i);
            sizes[cs.female_categories + i] = (1.0 - sf) / cs.male_categories;
        }

        std::vector<double> cum(sizes.size());
        std::partial_sum(sizes.begin(), sizes.end(), cum.begin());
        cum.back() = 1.0;

        // Exact masses the sampler is aiming at.
        std::vector<OccupationRow> intended;
        intended.reserve(sizes.size());
        const auto w = static_cast<double>(cs.workers);
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            const double p = i < static_cast<std::size_t>(cs.female_categories) ? p_female_side
                                                                                : p_male_side;
            intended.push_back(OccupationRow{names[i], w * sizes[i] * p, w * sizes[i] * (1 - p)});
        }
        const Table2x2 intended_basic(w * t, w * (sf - t), w * (phi - t),
                                      w * (1 - sf - phi + t));

        std::vector<std::pair<double, double>> tally(sizes.size(), {0.0, 0.0});
        WorkerRecord rec;
        rec.country = cs.country;
        rec.year = cs.year;
        rec.weight = 1.0;
        for (std::int64_t i = 0; i < cs.workers; ++i) {
            const double u = uniform01(rng);
            const auto ci = static_cast<std::size_t>(
                std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
            const double p = ci < static_cast<std::size_t>(cs.female_categories) ? p_female_side
                                                                                 : p_male_side;
            const bool female = uniform01(rng) < p;
            rec.sex = female ? Sex::Female : Sex::Male;
            rec.category = names[ci];
            sink(rec);
            if (female)
                tally[ci].first += 1;
            else
                tally[ci].second += 1;
        }

        std::vector<OccupationRow> realized;
        realized.reserve(tally.size());
        for (std::size_t i = 0; i < tally.size(); ++i)
            realized.push_back(OccupationRow{names[i], tally[i].first, tally[i].second});

        truth.push_back(CountryTruth{PopulationKey{cs.country, cs.year},
                                     OccupationTable(std::move(intended)), intended_basic,
                                     OccupationTable(std::move(realized))});
    }
    return truth;
}

SimulationOutput simulate_countries(const SimulationSpec& spec, std::uint64_t seed) {
    SimulationOutput out;
    out.truth = simulate_countries(
        spec, seed, [&](const WorkerRecord& r) { out.records.push_back(r); });
    return out;
}

SimulationSpec load_simulation_spec(std::istream& src) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(src);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("simulation spec: ") + e.what());
    }
    SimulationSpec spec;
    try {
        if (!j.is_object() || !j.contains("countries") || !j["countries"].is_array())
            throw Error("simulation spec: expected an object with a 'countries' array");
        for (const auto& c : j["countries"]) {
            CountrySpec cs;
            cs.country = c.at("country").get<std::string>();
            cs.year = c.value("year", 2000);
            cs.workers = c.at("workers").get<std::int64_t>();
            cs.female_share = c.at("female_share").get<double>();
            cs.female_occ_share = c.at("female_occ_share").get<double>();
            cs.odds_ratio = c.at("odds_ratio").get<double>();
            cs.female_categories = c.value("female_categories", 4);
            cs.male_categories = c.value("male_categories", 8);
            if (c.contains("lumpy_share") && !c["lumpy_share"].is_null())
                cs.lumpy_share = c["lumpy_share"].get<double>();
            spec.countries.push_back(std::move(cs));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("simulation spec: ") + e.what());
    }
    return spec;
}

}  // namespace segstd
