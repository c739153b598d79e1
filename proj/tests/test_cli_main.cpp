#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// End-to-end tests of the segstd binary, located via the SEGSTD_CLI
// environment variable set by CTest.

namespace {

std::string cli_path() {
    const char* p = std::getenv("SEGSTD_CLI");
    return p ? std::string(p) : std::string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Temp files under the test working directory, removed on scope exit.
struct Workdir {
    std::vector<std::string> paths;

    std::string file(const std::string& stem, const std::string& body = "") {
        static int counter = 0;
        std::string path = "./cli_" + std::to_string(::getpid()) + "_" +
                           std::to_string(++counter) + "_" + stem;
        paths.push_back(path);
        if (!body.empty()) {
            std::ofstream f(path);
            f << body;
        }
        return path;
    }

    ~Workdir() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

struct RunResult {
    int code = -1;
    std::string out, err;
};

RunResult run_cli(Workdir& wd, const std::string& args) {
    RunResult r;
    const std::string out = wd.file("stdout"), err = wd.file("stderr");
    const std::string cmd = "\"" + cli_path() + "\" " + args + " >" + out + " 2>" + err;
    const int rc = std::system(cmd.c_str());
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const char* kWorkersBody =
    "country,year,sex,category,age,employed,group_quarters,armed_forces,weight\n"
    "AA,2000,F,occ1,30,1,0,0,1.5\n"
    "AA,2000,F,occ1,41,1,0,0,0.5\n"
    "AA,2000,M,occ1,35,1,0,0,\n"
    "AA,2000,F,occ2,22,1,0,0,0.5\n"
    "AA,2000,M,occ2,50,1,0,0,3\n";

const char* kPairTables =
    "country,year,category,female_mass,male_mass\n"
    "A,2000,f,310,120\n"
    "A,2000,m,110,460\n"
    "B,2000,f,400,385\n"
    "B,2000,m,45,170\n";

}  // namespace

TEST_CASE("help exits zero and lists the subcommands") {
    Workdir wd;
    const RunResult r = run_cli(wd, "--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("aggregate") != std::string::npos);
    CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("bad usage exits 2") {
    Workdir wd;
    CHECK(run_cli(wd, "frobnicate").code == 2);
    CHECK(run_cli(wd, "indices").code == 2);              // missing --tables
    CHECK(run_cli(wd, "aggregate --bogus x").code == 2);  // unknown flag
    CHECK(run_cli(wd, "aggregate --workers ./does_not_exist.csv").code == 2);
}

TEST_CASE("aggregate writes per-category masses") {
    Workdir wd;
    const std::string workers = wd.file("workers.csv", kWorkersBody);
    const std::string tables = wd.file("tables.csv");
    const RunResult r = run_cli(wd, "aggregate --workers " + workers + " --out " + tables);
    REQUIRE(r.code == 0);
    CHECK(r.err.find("5 records read, 5 kept, 1 population(s)") != std::string::npos);
    CHECK(slurp(tables) ==
          "country,year,category,female_mass,male_mass\n"
          "AA,2000,occ1,2,1\n"
          "AA,2000,occ2,0.5,3\n");
}

TEST_CASE("aggregate filter flags are wired through") {
    Workdir wd;
    const std::string workers = wd.file(
        "workers.csv",
        "country,year,sex,category,age,employed,group_quarters,armed_forces,weight\n"
        "AA,2000,F,occ1,14,1,0,0,1\n"
        "AA,2000,M,occ1,14,1,0,0,1\n");
    const std::string out = wd.file("tables.csv");
    // Every record is under working age: the population empties out.
    CHECK(run_cli(wd, "aggregate --workers " + workers + " --out " + out).code == 2);
    const RunResult keep =
        run_cli(wd, "aggregate --no-age-filter --workers " + workers + " --out " + out);
    CHECK(keep.code == 0);
    CHECK(slurp(out).find("AA,2000,occ1,1,1") != std::string::npos);
}

TEST_CASE("indices joins covariates and emits one sid column per scenario") {
    Workdir wd;
    const std::string tables = wd.file("tables.csv",
                                       "country,year,category,female_mass,male_mass\n"
                                       "AA,2000,a,3,1\n"
                                       "AA,2000,b,1,4\n"
                                       "BB,1990,a,5,2\n"
                                       "BB,1990,b,2,6\n");
    const std::string covs = wd.file("covs.csv", "country,year,gdp_pc\nAA,2000,1000\n");
    const std::string out = wd.file("indices.csv");
    const RunResult r = run_cli(wd, "indices --tables " + tables + " --covariates " + covs +
                                        " --preset bolivia --out " + out);
    REQUIRE(r.code == 0);
    CHECK(r.err.find("no covariates for BB:1990") != std::string::npos);
    std::istringstream lines(slurp(out));
    std::string header, row;
    REQUIRE(std::getline(lines, header));
    CHECK(header ==
          "country,year,log_gdp_pc,female_share_workforce,share_in_female_categories,"
          "crude_id,conventional_id,mm_value,mm_mismatch_share,sid_bolivia,sid_uniform");
    REQUIRE(std::getline(lines, row));
    CHECK(row.substr(0, 8) == "AA,2000,");
    CHECK_FALSE(std::getline(lines, row));  // BB dropped: no covariate match

    CHECK(run_cli(wd, "indices --tables " + tables + " --preset atlantis").code == 2);
    CHECK(run_cli(wd, "indices --tables " + tables + " --no-uniform").code == 2);
}

TEST_CASE("decompose splits the crude gap") {
    Workdir wd;
    const std::string tables = wd.file("tables.csv", kPairTables);
    const std::string base = "decompose --tables " + tables + " --pop-a A:2000 --pop-b B:2000";

    const RunResult fwd = run_cli(wd, base);
    REQUIRE(fwd.code == 0);
    CHECK(fwd.out.find("pop_a = A:2000  crude_id = 0.531199") != std::string::npos);
    CHECK(fwd.out.find("pop_b = B:2000  crude_id = 0.205183") != std::string::npos);
    CHECK(fwd.out.find("form = additive, direction = b-to-a") != std::string::npos);
    CHECK(fwd.out.find("sid_b_at_a = 0.326276") != std::string::npos);
    CHECK(fwd.out.find("total = 0.326016") != std::string::npos);
    CHECK(fwd.out.find("segregation_component = 0.204922") != std::string::npos);
    CHECK(fwd.out.find("marginal_component = 0.121094") != std::string::npos);

    const RunResult rev = run_cli(wd, base + " --direction a-to-b");
    REQUIRE(rev.code == 0);
    CHECK(rev.out.find("sid_a_at_b = 0.302053") != std::string::npos);

    const RunResult log = run_cli(wd, base + " --form log --direction a-to-b");
    REQUIRE(log.code == 0);
    CHECK(log.out.find("form = log, direction = a-to-b") != std::string::npos);
    CHECK(log.out.find("segregation_component = 0.910859") != std::string::npos);
    CHECK(log.out.find("marginal_component = 0.10188") != std::string::npos);
    CHECK(log.out.find("total = 1.01274") != std::string::npos);

    const RunResult neutral = run_cli(wd, base + " --direction neutral --preset uganda");
    REQUIRE(neutral.code == 0);
    CHECK(neutral.out.find("scenario uniform:") != std::string::npos);
    CHECK(neutral.out.find("scenario uganda:") != std::string::npos);
    CHECK(neutral.out.find("mean_segregation_share = ") != std::string::npos);
    CHECK(neutral.out.find("mean_sid_a = ") != std::string::npos);

    const RunResult bad = run_cli(wd, base + " --form log --direction neutral");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") != std::string::npos);
    CHECK(run_cli(wd, base + " --form quux").code == 2);
    CHECK(run_cli(wd, base + " --direction sideways").code == 2);
    CHECK(run_cli(wd, "decompose --tables " + tables +
                          " --pop-a A:2000 --pop-b Z:1900")
              .code == 2);
}

TEST_CASE("a structurally stuck standardization exits 3") {
    Workdir wd;
    const std::string tables = wd.file("tables.csv",
                                       "country,year,category,female_mass,male_mass\n"
                                       "DD,2000,w,10,0\n"
                                       "DD,2000,m,0,10\n");
    const RunResult r =
        run_cli(wd, "indices --tables " + tables + " --no-uniform --preset uganda");
    CHECK(r.code == 3);
    CHECK(r.err.find("numerical failure:") != std::string::npos);
}

TEST_CASE("regress fits the quadratic and reports robust errors") {
    Workdir wd;
    std::string body = "country,year,log_gdp_pc,crude_id,sid_uniform\n";
    for (int i = 0; i < 6; ++i) {
        const double x = 6.0 + i;
        const double y = 0.1 + 0.02 * x - 0.001 * x * x;
        body += "C" + std::to_string(i) + ",2000," + std::to_string(x) + "," +
                std::to_string(y) + ",0.4\n";
    }
    body += "C9,2000,,0.3,0.4\n";  // no covariate: skipped
    const std::string input = wd.file("indices.csv", body);

    const RunResult r = run_cli(wd, "regress --input " + input);
    REQUIRE(r.code == 0);
    CHECK(r.err.find("skipped 1 row(s)") != std::string::npos);
    CHECK(r.out.find("measure = crude  n = 6") != std::string::npos);
    CHECK(r.out.find("intercept = 0.1") != std::string::npos);
    CHECK(r.out.find("log_gdp_pc = 0.02") != std::string::npos);
    CHECK(r.out.find("log_gdp_pc_sq = -0.001") != std::string::npos);
    CHECK(r.out.find("r_squared = 1\n") != std::string::npos);

    // The constant sid_uniform column regresses to a flat line.
    const RunResult flat = run_cli(wd, "regress --input " + input + " --measure sid:uniform");
    REQUIRE(flat.code == 0);
    CHECK(flat.out.find("r_squared = 0\n") != std::string::npos);

    CHECK(run_cli(wd, "regress --input " + input + " --measure sid:nope").code == 2);
    CHECK(run_cli(wd, "regress --input " + input + " --measure conventional").code == 2);

    // Identical regressor everywhere: the design is singular.
    const std::string degenerate = wd.file("deg.csv",
                                           "country,year,log_gdp_pc,crude_id\n"
                                           "A,2000,7,0.1\nB,2000,7,0.2\n"
                                           "C,2000,7,0.3\nD,2000,7,0.4\n");
    const RunResult sing = run_cli(wd, "regress --input " + degenerate);
    CHECK(sing.code == 3);
    CHECK(sing.err.find("numerical failure:") != std::string::npos);
}

TEST_CASE("simulate is reproducible and feeds the pipeline") {
    Workdir wd;
    const std::string spec = wd.file("spec.json", R"({"countries": [
        {"country": "SA", "workers": 1500, "female_share": 0.45,
         "female_occ_share": 0.4, "odds_ratio": 6.0},
        {"country": "SB", "workers": 1000, "female_share": 0.35,
         "female_occ_share": 0.5, "odds_ratio": 2.0}
    ]})");
    const std::string w1 = wd.file("w1.csv"), w2 = wd.file("w2.csv"), w3 = wd.file("w3.csv");
    const std::string t1 = wd.file("t1.csv");

    REQUIRE(run_cli(wd, "simulate --spec " + spec + " --seed 7 --out " + w1 +
                            " --truth " + t1)
                .code == 0);
    REQUIRE(run_cli(wd, "simulate --spec " + spec + " --seed 7 --out " + w2).code == 0);
    REQUIRE(run_cli(wd, "simulate --spec " + spec + " --seed 8 --out " + w3).code == 0);
    const std::string run1 = slurp(w1);
    CHECK(run1 == slurp(w2));
    CHECK(run1 != slurp(w3));
    CHECK(run1.substr(0, run1.find('\n')) ==
          "country,year,sex,category,age,employed,group_quarters,armed_forces,weight");
    CHECK(slurp(t1).find("SA,2000,f001,") != std::string::npos);

    // The generated microdata aggregates and scores cleanly.
    const std::string tables = wd.file("tables.csv");
    REQUIRE(run_cli(wd, "aggregate --workers " + w1 + " --out " + tables).code == 0);
    const RunResult ind = run_cli(wd, "indices --tables " + tables);
    REQUIRE(ind.code == 0);
    CHECK(ind.out.find("SA,2000,") != std::string::npos);
    CHECK(ind.out.find("SB,2000,") != std::string::npos);

    CHECK(run_cli(wd, "simulate --spec " + wd.file("bad.json", "{nope") + " --out " + w1)
              .code == 2);
    CHECK(run_cli(wd, "simulate --spec " +
                          wd.file("zero.json",
                                  R"({"countries": [{"country": "X", "workers": 0,
                                      "female_share": 0.4, "female_occ_share": 0.4,
                                      "odds_ratio": 1.0}]})") +
                          " --out " + w1)
              .code == 2);
}

TEST_CASE("figures writes the plot-ready csv") {
    Workdir wd;
    const std::string tables = wd.file("tables.csv", kPairTables);
    const std::string covs = wd.file("covs.csv",
                                     "country,year,gdp_pc\nA,2000,1500\nB,2000,22000\n");
    const std::string out = wd.file("figures.csv");
    const RunResult r = run_cli(wd, "figures --tables " + tables + " --covariates " + covs +
                                        " --preset switzerland --out " + out);
    REQUIRE(r.code == 0);
    std::istringstream lines(slurp(out));
    std::string header, row;
    REQUIRE(std::getline(lines, header));
    CHECK(header ==
          "country,year,log_gdp_pc,female_share_workforce,share_in_female_categories,"
          "crude_id,sid_switzerland,sid_uniform");
    int rows = 0;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 2);
}
