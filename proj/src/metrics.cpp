#include "segstd/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace segstd {

double crude_id(const OccupationTable& t) {
    return dissimilarity_2x2(basic_classification(t).basic);
}

double conventional_id(const OccupationTable& t) {
    const double f = t.total_f(), m = t.total_m();
    if (f == 0 || m == 0)
        throw EmptySexGroup("conventional_id: a sex has zero total mass");
    double acc = 0;
    for (const auto& r : t.rows()) acc += std::abs(r.f / f - r.m / m);
    return 0.5 * acc;
}

namespace {

double deviation_from(const Table2x2& t, const TargetMarginals& g) {
    return std::max({std::abs(t.female_occ() - g.row_shares.first),
                     std::abs(t.male_occ() - g.row_shares.second),
                     std::abs(t.women() - g.col_shares.first),
                     std::abs(t.men() - g.col_shares.second)});
}

}  // namespace

StandardizedId standardized_id(const Table2x2& basic, const TargetMarginals& targets,
                               const IpfSettings& settings) {
    if (basic.female_occ() == 0 || basic.male_occ() == 0) {
        // One gendered row is empty: no association to standardize.
        Table2x2 norm = basic.normalized();
        return StandardizedId{0.0, targets,
                              IpfResult{norm, 0, false, deviation_from(norm, targets), {}}};
    }
    IpfResult fit = ipf_standardize(basic, targets, settings);
    const double value = dissimilarity_2x2(fit.table);
    return StandardizedId{value, targets, std::move(fit)};
}

StandardizedId standardized_id(const OccupationTable& t, const TargetMarginals& targets,
                               const IpfSettings& settings) {
    const Classification cls = basic_classification(t);
    if (cls.degenerate) {
        Table2x2 norm = cls.basic.normalized();
        return StandardizedId{0.0, targets,
                              IpfResult{norm, 0, false, deviation_from(norm, targets), {}}};
    }
    return standardized_id(cls.basic, targets, settings);
}

std::pair<double, MMDiagnostics> mm_measure(const OccupationTable& t) {
    auto [cls, diag] = mm_classification(t);
    return {dissimilarity_2x2(cls.basic), diag};
}

DecompositionResult decompose_additive(double id_a, double sid_b_at_a, double id_b,
                                       Direction direction) {
    const double seg = id_a - sid_b_at_a;
    const double marg = sid_b_at_a - id_b;
    return DecompositionResult{seg + marg, seg, marg, direction, DecompositionForm::Additive};
}

DecompositionResult decompose_log(const Table2x2& x, const Table2x2& y) {
    const auto positive = [](const Table2x2& t) {
        return t.ff > 0 && t.mf > 0 && t.fm > 0 && t.mm > 0;
    };
    if (!positive(x) || !positive(y))
        throw NonPositiveCell("decompose_log: every cell must be strictly positive");
    if (!(dissimilarity_2x2(x) > 0) || !(dissimilarity_2x2(y) > 0))
        throw NonPositiveId("decompose_log: both dissimilarity indices must be positive");

    const double a = x.ff, b = x.mf, c = x.fm, d = x.mm;
    const double p = y.ff, q = y.mf, r = y.fm, s = y.mm;
    const double d1 = std::log(a) - std::log(b) - std::log(p) + std::log(q);
    const double d2 =
        std::log(p + r) - std::log(q + s) - std::log(a + c) + std::log(b + d);
    const double total = std::log(a) - std::log(a + c) - std::log(b) + std::log(b + d) -
                         std::log(p) + std::log(p + r) + std::log(q) - std::log(q + s);
    return DecompositionResult{total, d1, d2, Direction::AtoB, DecompositionForm::Log};
}

ScenarioAverage scenario_average(const OccupationTable& t_a, const OccupationTable& t_b,
                                 const std::vector<TargetMarginals>& scenarios,
                                 const IpfSettings& settings) {
    if (scenarios.empty())
        throw std::invalid_argument("scenario_average: at least one scenario required");

    const Classification cls_a = basic_classification(t_a);
    const Classification cls_b = basic_classification(t_b);
    const double id_a = dissimilarity_2x2(cls_a.basic);
    const double id_b = dissimilarity_2x2(cls_b.basic);

    ScenarioAverage out{{}, 0, 0, {0, 0}};
    for (const auto& sc : scenarios) {
        const StandardizedId sid_a = standardized_id(cls_a.basic, sc, settings);
        const StandardizedId sid_b = standardized_id(cls_b.basic, sc, settings);
        const double seg = sid_a.value - sid_b.value;
        const double marg = (id_a - id_b) - seg;
        DecompositionResult dec{seg + marg, seg, marg, Direction::BothToNeutral,
                                DecompositionForm::Additive};
        out.mean_segregation_share += dec.segregation_component / dec.total;
        out.mean_marginal_share += dec.marginal_component / dec.total;
        out.mean_sid_pair.first += sid_a.value;
        out.mean_sid_pair.second += sid_b.value;
        out.scenarios.emplace_back(sc, dec);
    }
    const auto k = static_cast<double>(scenarios.size());
    out.mean_segregation_share /= k;
    out.mean_marginal_share /= k;
    out.mean_sid_pair.first /= k;
    out.mean_sid_pair.second /= k;
    return out;
}

}  // namespace segstd
