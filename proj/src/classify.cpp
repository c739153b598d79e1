#include "segstd/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace segstd {

OccupationTable::OccupationTable(std::vector<OccupationRow> rows) {
    std::set<std::string> seen;
    for (auto& r : rows) {
        if (!(r.f >= 0) || !(r.m >= 0) || !std::isfinite(r.f) || !std::isfinite(r.m))
            throw std::invalid_argument("OccupationTable: masses must be non-negative and finite");
        if (!seen.insert(r.category_id).second)
            throw std::invalid_argument("OccupationTable: duplicate category id '" + r.category_id + "'");
        if (r.total() == 0) {
            ++dropped_;
            continue;
        }
        total_f_ += r.f;
        total_m_ += r.m;
        rows_.push_back(std::move(r));
    }
    if (rows_.empty())
        throw std::invalid_argument("OccupationTable: no category has positive mass");
}

namespace {

// Exact comparison of female shares f_a/n_a > f_b/n_b by cross-multiplying;
// totals are positive for every surviving row.
bool share_greater(const OccupationRow& a, const OccupationRow& b) {
    return a.f * b.total() > b.f * a.total();
}

Classification build(const OccupationTable& t, const std::vector<bool>& is_female) {
    double ff = 0, mf = 0, fm = 0, mm = 0;
    std::map<std::string, GenderLabel> labels;
    std::size_t n_female = 0;
    for (std::size_t i = 0; i < t.rows().size(); ++i) {
        const auto& r = t.rows()[i];
        if (is_female[i]) {
            labels.emplace(r.category_id, GenderLabel::Female);
            ff += r.f;
            mf += r.m;
            ++n_female;
        } else {
            labels.emplace(r.category_id, GenderLabel::Male);
            fm += r.f;
            mm += r.m;
        }
    }
    const bool degenerate = n_female == 0 || n_female == t.rows().size();
    return Classification{std::move(labels), Table2x2(ff, mf, fm, mm), degenerate};
}

}  // namespace

Classification basic_classification(const OccupationTable& t) {
    const double f = t.total_f(), n = t.total();
    if (f == 0 || t.total_m() == 0)
        throw EmptySexGroup("basic_classification: a sex has zero total mass");
    std::vector<bool> is_female(t.rows().size());
    for (std::size_t i = 0; i < t.rows().size(); ++i) {
        const auto& r = t.rows()[i];
        // F_i/N_i > F/N, cross-multiplied so ties resolve exactly.
        is_female[i] = r.f * n > f * r.total();
    }
    return build(t, is_female);
}

std::pair<Classification, MMDiagnostics> mm_classification(const OccupationTable& t) {
    const double f = t.total_f(), n = t.total();
    if (f == 0 || t.total_m() == 0)
        throw EmptySexGroup("mm_classification: a sex has zero total mass");

    std::vector<std::size_t> order(t.rows().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = t.rows()[a];
        const auto& rb = t.rows()[b];
        if (share_greater(ra, rb)) return true;
        if (share_greater(rb, ra)) return false;
        if (ra.f != rb.f) return ra.f > rb.f;
        return ra.category_id < rb.category_id;
    });

    std::vector<bool> is_female(t.rows().size(), false);
    MMDiagnostics diag;
    diag.nf_target = f;
    double cum = 0;
    for (std::size_t idx : order) {
        const double ni = t.rows()[idx].total();
        if (cum + ni <= f) {
            is_female[idx] = true;
            cum = cum + ni;
        } else {
            diag.boundary_category = t.rows()[idx].category_id;
            break;
        }
    }
    diag.nf_achieved = cum;
    diag.mismatch = f - cum;
    diag.mismatch_share = diag.mismatch / n;
    return {build(t, is_female), diag};
}

}  // namespace segstd
