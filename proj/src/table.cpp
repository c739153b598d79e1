#include "segstd/table.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace segstd {

Table2x2::Table2x2(double ff_, double mf_, double fm_, double mm_)
    : ff(ff_), mf(mf_), fm(fm_), mm(mm_) {
    if (!(ff >= 0 && mf >= 0 && fm >= 0 && mm >= 0))
        throw std::invalid_argument("Table2x2: cells must be non-negative and finite");
    if (!(total() > 0) || !std::isfinite(total()))
        throw std::invalid_argument("Table2x2: total mass must be positive and finite");
}

Table2x2 Table2x2::normalized() const {
    return scaled(1.0 / total());
}

Table2x2 Table2x2::scaled(double k) const {
    if (!(k > 0) || !std::isfinite(k))
        throw std::invalid_argument("Table2x2::scaled: factor must be positive and finite");
    return Table2x2(ff * k, mf * k, fm * k, mm * k);
}

MarginalShares marginal_shares(const Table2x2& t) {
    const double n = t.total();
    return {t.female_occ() / n, t.women() / n};
}

double odds_ratio(const Table2x2& t) {
    const int zeros = (t.ff == 0) + (t.mf == 0) + (t.fm == 0) + (t.mm == 0);
    if (zeros >= 2)
        throw DegenerateTable("odds_ratio: two or more zero cells");
    if (t.mf == 0 || t.fm == 0)
        return std::numeric_limits<double>::infinity();
    return (t.ff * t.mm) / (t.mf * t.fm);
}

double dissimilarity_2x2(const Table2x2& t) {
    const double f = t.women(), m = t.men();
    if (f == 0 || m == 0)
        throw EmptySexGroup("dissimilarity_2x2: a sex column has zero mass");
    return t.ff / f - t.mf / m;
}

double phi_coefficient(const Table2x2& t) {
    const double nf = t.female_occ(), nm = t.male_occ();
    const double f = t.women(), m = t.men();
    if (nf == 0 || nm == 0 || f == 0 || m == 0)
        throw DegenerateMarginal("phi_coefficient: a marginal has zero mass");
    return (t.ff * t.mm - t.mf * t.fm) / std::sqrt(nf * nm * f * m);
}

double gini_2x2(const Table2x2& t) {
    const double f = t.women(), m = t.men();
    if (f == 0 || m == 0)
        throw EmptySexGroup("gini_2x2: a sex column has zero mass");
    return std::abs(t.ff * t.mm - t.fm * t.mf) / (f * m);
}

bool is_symmetric(const Table2x2& t, double tol) {
    if (!(tol >= 0))
        throw std::invalid_argument("is_symmetric: tol must be >= 0");
    const double slack = tol * t.total();
    return std::abs(t.ff - t.mm) <= slack && std::abs(t.mf - t.fm) <= slack;
}

}  // namespace segstd
