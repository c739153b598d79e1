#pragma once

#include <utility>
#include <vector>

#include "segstd/classify.hpp"
#include "segstd/ipf.hpp"

namespace segstd {

// A standardized dissimilarity index: the crude index of the basic table
// after IPF to the scenario's target marginals.
struct StandardizedId {
    double value;
    TargetMarginals scenario;
    IpfResult ipf;
};

// Which table was standardized to whose marginals.
enum class Direction { AtoB, BtoA, BothToNeutral };
enum class DecompositionForm { Additive, Log };

struct DecompositionResult {
    double total;
    double segregation_component;
    double marginal_component;
    Direction direction;
    DecompositionForm form;
};

// Per-scenario decompositions plus their scenario means. Shares are
// component/total, so they are NaN when a scenario's total difference is 0.
struct ScenarioAverage {
    std::vector<std::pair<TargetMarginals, DecompositionResult>> scenarios;
    double mean_segregation_share;
    double mean_marginal_share;
    std::pair<double, double> mean_sid_pair;  // (mean SID_A, mean SID_B)
};

// Dissimilarity of the basic-classification table. In [0, 1]: the cutoff
// rule puts the female-leaning categories in the female row. Throws
// EmptySexGroup when a sex has zero mass.
double crude_id(const OccupationTable& t);

// The k-category form (1/2) * sum_i |F_i/F - M_i/M|. Agrees with crude_id
// identically. Throws EmptySexGroup.
double conventional_id(const OccupationTable& t);

// Standardize the basic-classification table to the target marginals and
// take its dissimilarity. A degenerate classification (one gendered row
// empty) short-circuits to value 0 without running IPF: positive targets
// would be infeasible for the zero row, but the association is
// unambiguously null. Propagates EmptySexGroup, InfeasibleTarget,
// NotConverged.
StandardizedId standardized_id(const OccupationTable& t, const TargetMarginals& targets,
                               const IpfSettings& settings = {});

// Same, starting from an already-built basic table.
StandardizedId standardized_id(const Table2x2& basic, const TargetMarginals& targets,
                               const IpfSettings& settings = {});

// Dissimilarity of the marginal-matching table plus its diagnostics. The
// value is unreliable when diagnostics.mismatch_share is material (lumpy
// categories); callers decide what to make of it.
std::pair<double, MMDiagnostics> mm_measure(const OccupationTable& t);

// Additive decomposition of a cross-population dissimilarity difference:
// total = id_a - id_b, segregation component = id_a - sid_b_at_a, marginal
// component = sid_b_at_a - id_b, where sid_b_at_a is population B's index
// standardized to A's marginals. The total is computed as the exact sum of
// the two components. `direction` only records which argument order the
// caller used (swap the populations for the reverse decomposition).
DecompositionResult decompose_additive(double id_a, double sid_b_at_a, double id_b,
                                       Direction direction = Direction::BtoA);

// Log-form decomposition of 2x2 tables x = (a b; c d), y = (p q; r s):
//   segregation component  D1 = ln a - ln b - ln p + ln q
//   marginal component     D2 = ln(p+r) - ln(q+s) - ln(a+c) + ln(b+d)
// The total is the log of the ratio form of the dissimilarity gap,
// ln(a/(a+c)) - ln(b/(b+d)) minus the same for y, computed term by term so
// that total = D1 + D2 holds to rounding. Note D1 is margin-free for the
// ratio a/b, not for the dissimilarity index itself. Requires all eight
// cells positive (NonPositiveCell) and both dissimilarities positive
// (NonPositiveId).
DecompositionResult decompose_log(const Table2x2& x, const Table2x2& y);

// Standardize BOTH populations to each scenario's targets and decompose:
// segregation component = SID_A - SID_B, marginal component = the rest of
// the crude gap. Fails fast on the first scenario that cannot be
// standardized. Requires at least one scenario.
ScenarioAverage scenario_average(const OccupationTable& t_a, const OccupationTable& t_b,
                                 const std::vector<TargetMarginals>& scenarios,
                                 const IpfSettings& settings = {});

}  // namespace segstd
