// segstd: margin-invariant gender-segregation measures from microdata.
//
// Subcommands: aggregate, indices, decompose, regress, simulate, figures.
// Exit codes: 0 success, 2 input or validation error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "segstd/country.hpp"
#include "segstd/csv.hpp"
#include "segstd/figures.hpp"
#include "segstd/metrics.hpp"
#include "segstd/records.hpp"
#include "segstd/regression.hpp"
#include "segstd/simulate.hpp"

namespace {

using namespace segstd;

constexpr int kDefaultSig = 6;
constexpr int kFullSig = 17;

// ---------------------------------------------------------------------------
// small CLI helpers

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

// Returns an ostream writing to `path`, or to stdout when path is "-".
std::unique_ptr<std::ostream> open_output(const std::string& path) {
    if (path == "-") {
        struct Tee : std::ostream {
            Tee() : std::ostream(std::cout.rdbuf()) {}
        };
        return std::make_unique<Tee>();
    }
    auto out = std::make_unique<std::ofstream>(path);
    if (!*out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

void finish_output(std::ostream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error("error writing '" + path + "'");
}

PopulationKey parse_pop(const std::string& s) {
    const auto pos = s.find_last_of(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw std::invalid_argument("population must look like COUNTRY:YEAR, got '" + s + "'");
    const auto year = parse_int(std::string_view(s).substr(pos + 1));
    if (!year) throw std::invalid_argument("bad year in population '" + s + "'");
    return PopulationKey{s.substr(0, pos), *year};
}

// Shared scenario flags: uniform by default, plus presets and name=rf,cf.
struct ScenarioFlags {
    std::vector<std::string> customs;
    std::vector<std::string> presets;
    bool no_uniform = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--scenario", customs,
                        "extra target marginals as name=row_female,col_female (repeatable)");
        cmd->add_option("--preset", presets,
                        "named preset marginals: uganda, bolivia or switzerland (repeatable)");
        cmd->add_flag("--no-uniform", no_uniform, "drop the default uniform (1/2,1/2) scenario");
    }

    std::vector<Scenario> build() const {
        std::vector<Scenario> out;
        if (!no_uniform) out.push_back(uniform_scenario());
        for (const auto& p : presets) {
            auto sc = find_preset(p);
            if (!sc) throw std::invalid_argument("unknown preset '" + p + "'");
            out.push_back(std::move(*sc));
        }
        for (const auto& c : customs) {
            const auto eq = c.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("scenario must look like name=rf,cf, got '" + c + "'");
            const std::string name = c.substr(0, eq);
            const auto parts = split_csv(std::string_view(c).substr(eq + 1));
            const auto rf = parts.size() == 2 ? parse_double(parts[0]) : std::nullopt;
            const auto cf = parts.size() == 2 ? parse_double(parts[1]) : std::nullopt;
            if (!rf || !cf)
                throw std::invalid_argument("scenario must look like name=rf,cf, got '" + c + "'");
            out.push_back(make_scenario(name, *rf, *cf));
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j)
                if (out[i].name == out[j].name)
                    throw std::invalid_argument("duplicate scenario name '" + out[i].name + "'");
        if (out.empty())
            throw std::invalid_argument("no scenarios left; drop --no-uniform or add some");
        return out;
    }
};

struct IpfFlags {
    IpfSettings settings;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ipf-tol", settings.tolerance, "IPF convergence tolerance")
            ->capture_default_str();
        cmd->add_option("--ipf-max-iter", settings.max_iterations, "IPF iteration cap")
            ->capture_default_str();
    }
};

// ---------------------------------------------------------------------------
// subcommand bodies

struct AggregateArgs {
    std::string workers, out = "-";
    FilterSettings filters;
    bool full_precision = false;
};

int run_aggregate(const AggregateArgs& a) {
    auto in = open_input(a.workers);
    WorkerAggregator agg(a.filters);
    ingest_workers_into(in, agg);
    const auto tables = agg.finish();
    auto out = open_output(a.out);
    write_occupation_tables(*out, tables, a.full_precision ? kFullSig : kDefaultSig);
    finish_output(*out, a.out);
    std::cerr << "aggregate: " << agg.records_seen() << " records read, " << agg.records_kept()
              << " kept, " << tables.size() << " population(s)\n";
    return 0;
}

struct IndicesArgs {
    std::string tables, covariates, out = "-";
    ScenarioFlags scenarios;
    IpfFlags ipf;
    bool full_precision = false;
};

int run_indices(const IndicesArgs& a) {
    auto in = open_input(a.tables);
    const auto tables = read_occupation_tables(in);
    auto results = compute_results(tables, a.scenarios.build(), a.ipf.settings);
    if (!a.covariates.empty()) {
        auto cov_in = open_input(a.covariates);
        auto joined = join_covariates(std::move(results), read_covariates(cov_in));
        for (const auto& key : joined.unmatched)
            std::cerr << "indices: no covariates for " << key.str() << ", dropped\n";
        results = std::move(joined.results);
    }
    auto out = open_output(a.out);
    write_country_results(*out, results, a.full_precision ? kFullSig : kDefaultSig);
    finish_output(*out, a.out);
    return 0;
}

struct DecomposeArgs {
    std::string tables, pop_a, pop_b;
    std::string direction = "b-to-a", form = "additive";
    ScenarioFlags scenarios;
    IpfFlags ipf;
    bool full_precision = false;
};

int run_decompose(const DecomposeArgs& a) {
    auto in = open_input(a.tables);
    const auto tables = read_occupation_tables(in);
    const auto pick = [&](const std::string& s) -> const OccupationTable& {
        const auto key = parse_pop(s);
        const auto it = tables.find(key);
        if (it == tables.end()) throw Error("population " + key.str() + " not in input");
        return it->second;
    };
    const OccupationTable& ta = pick(a.pop_a);
    const OccupationTable& tb = pick(a.pop_b);
    const int sig = a.full_precision ? kFullSig : kDefaultSig;
    const auto fmt = [&](double v) { return format_g(v, sig); };

    const Classification cls_a = basic_classification(ta);
    const Classification cls_b = basic_classification(tb);
    const double id_a = dissimilarity_2x2(cls_a.basic);
    const double id_b = dissimilarity_2x2(cls_b.basic);
    std::cout << "pop_a = " << a.pop_a << "  crude_id = " << fmt(id_a) << '\n';
    std::cout << "pop_b = " << a.pop_b << "  crude_id = " << fmt(id_b) << '\n';

    const auto print_parts = [&](const DecompositionResult& d) {
        std::cout << "total = " << fmt(d.total) << '\n';
        std::cout << "segregation_component = " << fmt(d.segregation_component);
        if (d.total != 0)
            std::cout << "  (share " << fmt(d.segregation_component / d.total) << ')';
        std::cout << '\n';
        std::cout << "marginal_component = " << fmt(d.marginal_component);
        if (d.total != 0)
            std::cout << "  (share " << fmt(d.marginal_component / d.total) << ')';
        std::cout << '\n';
    };

    if (a.form == "log") {
        if (a.direction == "neutral")
            throw std::invalid_argument("--form log supports a-to-b or b-to-a only");
        std::cout << "form = log, direction = " << a.direction << '\n';
        print_parts(a.direction == "a-to-b" ? decompose_log(cls_a.basic, cls_b.basic)
                                            : decompose_log(cls_b.basic, cls_a.basic));
        return 0;
    }
    if (a.form != "additive")
        throw std::invalid_argument("--form must be additive or log, got '" + a.form + "'");

    if (a.direction == "neutral") {
        std::vector<TargetMarginals> targets;
        std::vector<std::string> names;
        for (const auto& sc : a.scenarios.build()) {
            names.push_back(sc.name);
            targets.push_back(sc.targets);
        }
        const ScenarioAverage avg = scenario_average(ta, tb, targets, a.ipf.settings);
        std::cout << "form = additive, direction = neutral\n";
        for (std::size_t i = 0; i < avg.scenarios.size(); ++i) {
            std::cout << "scenario " << names[i] << ":\n";
            print_parts(avg.scenarios[i].second);
        }
        std::cout << "mean_segregation_share = " << fmt(avg.mean_segregation_share) << '\n';
        std::cout << "mean_marginal_share = " << fmt(avg.mean_marginal_share) << '\n';
        std::cout << "mean_sid_a = " << fmt(avg.mean_sid_pair.first)
                  << "  mean_sid_b = " << fmt(avg.mean_sid_pair.second) << '\n';
        return 0;
    }

    if (a.direction == "b-to-a") {
        const auto shares = marginal_shares(cls_a.basic);
        const TargetMarginals at_a =
            TargetMarginals::from_shares(shares.row_female_share, shares.col_female_share);
        const double sid = standardized_id(cls_b.basic, at_a, a.ipf.settings).value;
        std::cout << "form = additive, direction = b-to-a\n";
        std::cout << "sid_b_at_a = " << fmt(sid) << '\n';
        print_parts(decompose_additive(id_a, sid, id_b, Direction::BtoA));
    } else if (a.direction == "a-to-b") {
        const auto shares = marginal_shares(cls_b.basic);
        const TargetMarginals at_b =
            TargetMarginals::from_shares(shares.row_female_share, shares.col_female_share);
        const double sid = standardized_id(cls_a.basic, at_b, a.ipf.settings).value;
        std::cout << "form = additive, direction = a-to-b\n";
        std::cout << "sid_a_at_b = " << fmt(sid) << '\n';
        print_parts(decompose_additive(id_b, sid, id_a, Direction::AtoB));
    } else {
        throw std::invalid_argument("--direction must be a-to-b, b-to-a or neutral, got '" +
                                    a.direction + "'");
    }
    return 0;
}

struct RegressArgs {
    std::string input, measure = "crude";
    bool full_precision = false;
};

int run_regress(const RegressArgs& a) {
    std::string ycol;
    if (a.measure == "crude")
        ycol = "crude_id";
    else if (a.measure.rfind("sid:", 0) == 0 && a.measure.size() > 4)
        ycol = "sid_" + a.measure.substr(4);
    else
        throw std::invalid_argument("--measure must be crude or sid:<scenario>, got '" +
                                    a.measure + "'");

    auto in = open_input(a.input);
    std::string line;
    if (!std::getline(in, line)) throw MalformedRecord(1, "empty input, header expected");
    const auto header = split_csv(line);
    std::size_t xi = header.size(), yi = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "log_gdp_pc") xi = i;
        if (header[i] == ycol) yi = i;
    }
    if (xi == header.size()) throw Error("input has no log_gdp_pc column");
    if (yi == header.size()) throw Error("input has no " + ycol + " column");

    std::vector<std::pair<double, double>> points;
    std::size_t skipped = 0, lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw MalformedRecord(lineno, "expected " + std::to_string(header.size()) +
                                              " fields, got " + std::to_string(fields.size()));
        if (fields[xi].empty()) {
            ++skipped;
            continue;
        }
        const auto x = parse_double(fields[xi]);
        const auto y = parse_double(fields[yi]);
        if (!x) throw MalformedRecord(lineno, "bad log_gdp_pc '" + fields[xi] + "'");
        if (!y) throw MalformedRecord(lineno, "bad " + ycol + " '" + fields[yi] + "'");
        points.emplace_back(*x, *y);
    }
    if (skipped) std::cerr << "regress: skipped " << skipped << " row(s) without log_gdp_pc\n";

    const RegressionFit fit = regress_quadratic(points);
    const int sig = a.full_precision ? kFullSig : kDefaultSig;
    std::cout << "measure = " << a.measure << "  n = " << fit.n << '\n';
    const char* names[] = {"intercept", "log_gdp_pc", "log_gdp_pc_sq"};
    for (int i = 0; i < 3; ++i)
        std::cout << names[i] << " = " << format_g(fit.coefficients[i], sig)
                  << "  (robust se " << format_g(fit.robust_ses[i], sig) << ")\n";
    std::cout << "r_squared = " << format_g(fit.r_squared, sig) << '\n';
    return 0;
}

struct SimulateArgs {
    std::string spec, out = "-", truth;
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& a) {
    auto spec_in = open_input(a.spec);
    const SimulationSpec spec = load_simulation_spec(spec_in);
    auto out = open_output(a.out);
    *out << "country,year,sex,category,age,employed,group_quarters,armed_forces,weight\n";
    const auto truth = simulate_countries(spec, a.seed, [&](const WorkerRecord& r) {
        *out << r.country << ',' << r.year << ',' << (r.sex == Sex::Female ? 'F' : 'M') << ','
             << r.category << ",,,,," << format_g(r.weight, kFullSig) << '\n';
    });
    finish_output(*out, a.out);
    if (!a.truth.empty()) {
        std::map<PopulationKey, OccupationTable> intended;
        for (const auto& t : truth) intended.emplace(t.key, t.intended);
        auto tout = open_output(a.truth);
        write_occupation_tables(*tout, intended, kFullSig);
        finish_output(*tout, a.truth);
    }
    std::cerr << "simulate: " << truth.size() << " countries, seed " << a.seed << '\n';
    return 0;
}

struct FiguresArgs {
    std::string tables, covariates, out;
    ScenarioFlags scenarios;
    IpfFlags ipf;
};

int run_figures(const FiguresArgs& a) {
    auto in = open_input(a.tables);
    const auto tables = read_occupation_tables(in);
    auto results = compute_results(tables, a.scenarios.build(), a.ipf.settings);
    if (!a.covariates.empty()) {
        auto cov_in = open_input(a.covariates);
        auto joined = join_covariates(std::move(results), read_covariates(cov_in));
        for (const auto& key : joined.unmatched)
            std::cerr << "figures: no covariates for " << key.str() << ", dropped\n";
        results = std::move(joined.results);
    }
    emit_figure_data(results, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"margin-invariant gender-segregation measures"};
    app.require_subcommand(1);

    AggregateArgs agg;
    auto* cmd_agg = app.add_subcommand("aggregate", "aggregate a workers CSV into occupation tables");
    cmd_agg->add_option("--workers", agg.workers, "workers CSV")->required();
    cmd_agg->add_option("--out", agg.out, "output path, - for stdout");
    cmd_agg->add_flag("--no-age-filter", [&agg](std::int64_t) { agg.filters.working_age = false; },
                      "keep records outside ages 15-64");
    cmd_agg->add_flag("--no-employed-filter",
                      [&agg](std::int64_t) { agg.filters.employed_only = false; },
                      "keep non-employed records");
    cmd_agg->add_flag("--no-group-quarters-filter",
                      [&agg](std::int64_t) { agg.filters.exclude_group_quarters = false; },
                      "keep group-quarters residents");
    cmd_agg->add_flag("--no-armed-forces-filter",
                      [&agg](std::int64_t) { agg.filters.exclude_armed_forces = false; },
                      "keep armed-forces members");
    cmd_agg->add_flag("--full-precision", agg.full_precision, "write 17 significant digits");

    IndicesArgs ind;
    auto* cmd_ind = app.add_subcommand("indices", "compute per-population segregation indices");
    cmd_ind->add_option("--tables", ind.tables, "occupation-table CSV")->required();
    cmd_ind->add_option("--covariates", ind.covariates, "covariates CSV (country,year,gdp_pc)");
    cmd_ind->add_option("--out", ind.out, "output path, - for stdout");
    cmd_ind->add_flag("--full-precision", ind.full_precision, "write 17 significant digits");
    ind.scenarios.attach(cmd_ind);
    ind.ipf.attach(cmd_ind);

    DecomposeArgs dec;
    auto* cmd_dec = app.add_subcommand("decompose", "decompose a two-population ID difference");
    cmd_dec->add_option("--tables", dec.tables, "occupation-table CSV")->required();
    cmd_dec->add_option("--pop-a", dec.pop_a, "first population as COUNTRY:YEAR")->required();
    cmd_dec->add_option("--pop-b", dec.pop_b, "second population as COUNTRY:YEAR")->required();
    cmd_dec->add_option("--direction", dec.direction, "a-to-b, b-to-a or neutral")
        ->capture_default_str();
    cmd_dec->add_option("--form", dec.form, "additive or log")->capture_default_str();
    cmd_dec->add_flag("--full-precision", dec.full_precision, "write 17 significant digits");
    dec.scenarios.attach(cmd_dec);
    dec.ipf.attach(cmd_dec);

    RegressArgs reg;
    auto* cmd_reg = app.add_subcommand("regress", "quadratic fit of a measure on log GDP pc");
    cmd_reg->add_option("--input", reg.input, "indices CSV (needs log_gdp_pc)")->required();
    cmd_reg->add_option("--measure", reg.measure, "crude or sid:<scenario>")->capture_default_str();
    cmd_reg->add_flag("--full-precision", reg.full_precision, "write 17 significant digits");

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "generate synthetic worker microdata");
    cmd_sim->add_option("--spec", sim.spec, "simulation spec JSON")->required();
    cmd_sim->add_option("--seed", sim.seed, "PRNG seed")->capture_default_str();
    cmd_sim->add_option("--out", sim.out, "workers CSV path, - for stdout");
    cmd_sim->add_option("--truth", sim.truth, "write the intended occupation tables here");

    FiguresArgs fig;
    auto* cmd_fig = app.add_subcommand("figures", "emit plot-ready per-population data");
    cmd_fig->add_option("--tables", fig.tables, "occupation-table CSV")->required();
    cmd_fig->add_option("--covariates", fig.covariates, "covariates CSV");
    cmd_fig->add_option("--out", fig.out, "output CSV path")->required();
    fig.scenarios.attach(cmd_fig);
    fig.ipf.attach(cmd_fig);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_agg->parsed()) return run_aggregate(agg);
        if (cmd_ind->parsed()) return run_indices(ind);
        if (cmd_dec->parsed()) return run_decompose(dec);
        if (cmd_reg->parsed()) return run_regress(reg);
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_fig->parsed()) return run_figures(fig);
    } catch (const NotConverged& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const RankDeficient& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
